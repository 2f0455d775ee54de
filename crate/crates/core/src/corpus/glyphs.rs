//! Embedded 8x16 lowercase glyph bitmaps, one byte per row, MSB leftmost.
//!
//! Generated by tools/gen_glyphs.py. Font A is rasterized from DejaVu Sans,
//! font B from DejaVu Sans Mono (Bitstream Vera derived, free license).

pub(crate) const FONT_A: [[u8; 16]; 26] = [
    // 'a'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x3c, 0x06, 0x02, 0x3e, 0x42, 0x46, 0x7e, 0x10, 0x00, 0x00, 0x00],
    // 'b'
    [0x00, 0x00, 0x40, 0x40, 0x40, 0x7c, 0x66, 0x62, 0x43, 0x43, 0x62, 0x7e, 0x08, 0x00, 0x00, 0x00],
    // 'c'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x20, 0x40, 0x40, 0x40, 0x60, 0x3e, 0x08, 0x00, 0x00, 0x00],
    // 'd'
    [0x00, 0x00, 0x02, 0x02, 0x02, 0x3e, 0x66, 0x42, 0x42, 0x42, 0x62, 0x3e, 0x10, 0x00, 0x00, 0x00],
    // 'e'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x22, 0x43, 0x7f, 0x40, 0x60, 0x3e, 0x08, 0x00, 0x00, 0x00],
    // 'f'
    [0x00, 0x00, 0x18, 0x30, 0x20, 0x78, 0x30, 0x20, 0x20, 0x20, 0x20, 0x20, 0x00, 0x00, 0x00, 0x00],
    // 'g'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x3e, 0x66, 0x42, 0x42, 0x42, 0x62, 0x3e, 0x02, 0x06, 0x3c, 0x00],
    // 'h'
    [0x00, 0x00, 0x40, 0x40, 0x40, 0x7c, 0x66, 0x62, 0x42, 0x42, 0x42, 0x42, 0x00, 0x00, 0x00, 0x00],
    // 'i'
    [0x00, 0x00, 0x40, 0x40, 0x00, 0x40, 0x40, 0x40, 0x40, 0x40, 0x40, 0x40, 0x00, 0x00, 0x00, 0x00],
    // 'j'
    [0x00, 0x00, 0x10, 0x10, 0x00, 0x10, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x60, 0x00],
    // 'k'
    [0x00, 0x00, 0x40, 0x40, 0x40, 0x42, 0x4c, 0x58, 0x70, 0x78, 0x4c, 0x46, 0x00, 0x00, 0x00, 0x00],
    // 'l'
    [0x00, 0x00, 0x40, 0x40, 0x40, 0x40, 0x40, 0x40, 0x40, 0x40, 0x40, 0x40, 0x00, 0x00, 0x00, 0x00],
    // 'm'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x76, 0x49, 0x49, 0x49, 0x49, 0x49, 0x49, 0x00, 0x00, 0x00, 0x00],
    // 'n'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x5c, 0x66, 0x62, 0x42, 0x42, 0x42, 0x42, 0x00, 0x00, 0x00, 0x00],
    // 'o'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x3c, 0x66, 0x42, 0x43, 0x42, 0x62, 0x3e, 0x08, 0x00, 0x00, 0x00],
    // 'p'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x5c, 0x66, 0x62, 0x43, 0x43, 0x62, 0x7e, 0x48, 0x40, 0x40, 0x00],
    // 'q'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x3e, 0x66, 0x42, 0x42, 0x42, 0x62, 0x3e, 0x12, 0x02, 0x02, 0x00],
    // 'r'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x58, 0x60, 0x60, 0x40, 0x40, 0x40, 0x40, 0x00, 0x00, 0x00, 0x00],
    // 's'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x3c, 0x40, 0x40, 0x38, 0x0c, 0x04, 0x7c, 0x10, 0x00, 0x00, 0x00],
    // 't'
    [0x00, 0x00, 0x00, 0x20, 0x20, 0x78, 0x20, 0x20, 0x20, 0x20, 0x20, 0x38, 0x00, 0x00, 0x00, 0x00],
    // 'u'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x42, 0x42, 0x42, 0x42, 0x42, 0x42, 0x3e, 0x10, 0x00, 0x00, 0x00],
    // 'v'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x41, 0x23, 0x22, 0x32, 0x14, 0x1c, 0x1c, 0x00, 0x00, 0x00, 0x00],
    // 'w'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x49, 0x49, 0x58, 0x36, 0x36, 0x36, 0x36, 0x00, 0x00, 0x00, 0x00],
    // 'x'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x62, 0x26, 0x1c, 0x18, 0x1c, 0x36, 0x62, 0x00, 0x00, 0x00, 0x00],
    // 'y'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x41, 0x23, 0x22, 0x36, 0x14, 0x1c, 0x0c, 0x08, 0x18, 0x30, 0x00],
    // 'z'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x7e, 0x06, 0x0c, 0x18, 0x10, 0x20, 0x7e, 0x00, 0x00, 0x00, 0x00],
];

pub(crate) const FONT_B: [[u8; 16]; 26] = [
    // 'a'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x3c, 0x06, 0x02, 0x3e, 0x62, 0x46, 0x7e, 0x10, 0x00, 0x00, 0x00],
    // 'b'
    [0x00, 0x00, 0x40, 0x40, 0x40, 0x7c, 0x64, 0x46, 0x42, 0x46, 0x66, 0x7c, 0x00, 0x00, 0x00, 0x00],
    // 'c'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x20, 0x40, 0x40, 0x40, 0x60, 0x3e, 0x08, 0x00, 0x00, 0x00],
    // 'd'
    [0x00, 0x00, 0x02, 0x02, 0x02, 0x3e, 0x66, 0x42, 0x42, 0x42, 0x66, 0x3e, 0x10, 0x00, 0x00, 0x00],
    // 'e'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x22, 0x42, 0x7e, 0x40, 0x60, 0x3e, 0x08, 0x00, 0x00, 0x00],
    // 'f'
    [0x00, 0x00, 0x0c, 0x18, 0x10, 0x7c, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x00, 0x00, 0x00, 0x00],
    // 'g'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x3e, 0x66, 0x42, 0x42, 0x42, 0x66, 0x3e, 0x02, 0x06, 0x3c, 0x00],
    // 'h'
    [0x00, 0x00, 0x40, 0x40, 0x40, 0x5c, 0x64, 0x44, 0x44, 0x44, 0x44, 0x44, 0x00, 0x00, 0x00, 0x00],
    // 'i'
    [0x00, 0x00, 0x08, 0x08, 0x00, 0x38, 0x18, 0x18, 0x18, 0x18, 0x18, 0x7e, 0x00, 0x00, 0x00, 0x00],
    // 'j'
    [0x00, 0x00, 0x08, 0x08, 0x00, 0x38, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x18, 0x70, 0x00],
    // 'k'
    [0x00, 0x00, 0x40, 0x40, 0x40, 0x44, 0x48, 0x50, 0x70, 0x48, 0x4c, 0x46, 0x00, 0x00, 0x00, 0x00],
    // 'l'
    [0x00, 0x00, 0x70, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1c, 0x00, 0x00, 0x00, 0x00],
    // 'm'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x7e, 0x6b, 0x49, 0x49, 0x49, 0x49, 0x49, 0x00, 0x00, 0x00, 0x00],
    // 'n'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x5c, 0x64, 0x44, 0x44, 0x44, 0x44, 0x44, 0x00, 0x00, 0x00, 0x00],
    // 'o'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x3c, 0x26, 0x62, 0x42, 0x42, 0x62, 0x3c, 0x08, 0x00, 0x00, 0x00],
    // 'p'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x7c, 0x64, 0x46, 0x46, 0x46, 0x46, 0x7c, 0x40, 0x40, 0x40, 0x00],
    // 'q'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x3e, 0x26, 0x62, 0x42, 0x42, 0x66, 0x3e, 0x12, 0x02, 0x02, 0x00],
    // 'r'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x5c, 0x60, 0x40, 0x40, 0x40, 0x40, 0x40, 0x00, 0x00, 0x00, 0x00],
    // 's'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x3c, 0x60, 0x60, 0x38, 0x0c, 0x04, 0x7c, 0x10, 0x00, 0x00, 0x00],
    // 't'
    [0x00, 0x00, 0x00, 0x10, 0x10, 0x7e, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1e, 0x00, 0x00, 0x00, 0x00],
    // 'u'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x44, 0x44, 0x44, 0x44, 0x44, 0x44, 0x7c, 0x10, 0x00, 0x00, 0x00],
    // 'v'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x42, 0x22, 0x22, 0x36, 0x14, 0x1c, 0x18, 0x00, 0x00, 0x00, 0x00],
    // 'w'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x41, 0x41, 0x69, 0x2a, 0x36, 0x36, 0x36, 0x00, 0x00, 0x00, 0x00],
    // 'x'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x22, 0x36, 0x1c, 0x08, 0x1c, 0x36, 0x22, 0x00, 0x00, 0x00, 0x00],
    // 'y'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x42, 0x62, 0x26, 0x24, 0x14, 0x1c, 0x18, 0x18, 0x10, 0x70, 0x00],
    // 'z'
    [0x00, 0x00, 0x00, 0x00, 0x00, 0x7c, 0x04, 0x08, 0x18, 0x30, 0x20, 0x7c, 0x00, 0x00, 0x00, 0x00],
];
