"""Regenerates src/corpus/glyphs.rs from the DejaVu TrueType fonts.

Usage: python3 tools/gen_glyphs.py > src/corpus/glyphs.rs
       python3 tools/gen_glyphs.py show

Each glyph is rendered at 4x, condensed horizontally if wider than seven
pixels, box-downsampled into an 8x16 cell and thresholded.
"""
import sys
import numpy as np
from PIL import Image, ImageDraw, ImageFont

CHARS = "abcdefghijklmnopqrstuvwxyz"
UP = 4

def glyph(path, size, ch, dy, thr):
    f = ImageFont.truetype(path, size * UP)
    im = Image.new("L", (48 * UP, 16 * UP), 0)
    ImageDraw.Draw(im).text((4 * UP, dy * UP), ch, font=f, fill=255)
    a = np.array(im).astype(float) / 255.0
    cols = np.where(a.max(0) > 0.2)[0]
    a = a[:, cols.min():cols.max() + 1]
    w = a.shape[1]
    target = min(w, 8 * UP - UP)  # leave one px of bearing
    if w > target:
        img = Image.fromarray((a * 255).astype(np.uint8)).resize((target, a.shape[0]), Image.BILINEAR)
        a = np.array(img).astype(float) / 255.0
        w = target
    cell = np.zeros((16 * UP, 8 * UP))
    x0 = UP
    cell[:, x0:x0 + w] = a
    small = cell.reshape(16, UP, 8, UP).mean(axis=(1, 3))
    return small >= thr

def font(path, size, dy, thr):
    out = {}
    for c in CHARS:
        g = glyph(path, size, c, dy, thr)
        out[c] = g
    return out

def show(f):
    for chunk in (CHARS[:13], CHARS[13:]):
        for y in range(16):
            print("  ".join("".join("#" if f[c][y, x] else "." for x in range(8)) for c in chunk))
        print()

def rust(name, f):
    lines = [f"pub(crate) const {name}: [[u8; 16]; 26] = ["]
    for c in CHARS:
        rows = []
        for y in range(16):
            v = 0
            for x in range(8):
                if f[c][y, x]:
                    v |= 0x80 >> x
            rows.append(f"0x{v:02x}")
        lines.append(f"    // '{c}'")
        lines.append("    [" + ", ".join(rows) + "],")
    lines.append("];")
    return "\n".join(lines)

if __name__ == "__main__":
    a = font("/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf", 13, 0, 0.45)
    b = font("/usr/share/fonts/truetype/dejavu/DejaVuSansMono.ttf", 13, 0, 0.45)
    if sys.argv[1:] == ["show"]:
        show(a); show(b)
    else:
        print("//! Embedded 8x16 lowercase glyph bitmaps, one byte per row, MSB leftmost.")
        print("//!")
        print("//! Generated by tools/gen_glyphs.py. Font A is rasterized from DejaVu Sans,")
        print("//! font B from DejaVu Sans Mono (Bitstream Vera derived, free license).")
        print()
        print(rust("FONT_A", a)); print(); print(rust("FONT_B", b))
