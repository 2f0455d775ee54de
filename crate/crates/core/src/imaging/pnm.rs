//! Netpbm reading (P1, P2, P4, P5) and writing (P1, P4, P5).
//!
//! Header grammar, shared by every variant:
//!
//! ```text
//! magic     := "P1" | "P2" | "P4" | "P5"
//! header    := magic sep width sep height [sep maxval] single-ws payload
//! sep       := (whitespace | comment)+
//! comment   := "#" <anything up to and including "\n">
//! ```
//!
//! `maxval` is absent for PBM and must be in `1..=65535` for PGM. Binary
//! payloads start right after the single whitespace byte that ends the
//! header. P4 rows are packed MSB-first and padded to a whole byte; a set
//! bit is black. P5 samples are one byte when `maxval < 256`, otherwise two
//! bytes big-endian. PGM samples are rescaled to `0..=255` with rounding.
//! In P1 the `0`/`1` digits may be run together without separators.

use std::path::Path;

use super::{BinaryImage, GrayImage};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Raster {
    Gray(GrayImage),
    Binary(BinaryImage),
}

impl Raster {
    /// Binary view of the raster: PBM as-is, PGM through Otsu.
    pub fn into_binary(self) -> BinaryImage {
        match self {
            Raster::Binary(b) => b,
            Raster::Gray(g) => super::otsu_binarize(&g),
        }
    }
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Pnm {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_separators(&mut self) -> Result<()> {
        let start = self.pos;
        loop {
            match self.data.get(self.pos) {
                Some(b) if b.is_ascii_whitespace() => self.pos += 1,
                Some(b'#') => {
                    while let Some(&b) = self.data.get(self.pos) {
                        self.pos += 1;
                        if b == b'\n' {
                            break;
                        }
                    }
                }
                Some(_) if self.pos > start => return Ok(()),
                Some(_) => return Err(self.err("expected whitespace")),
                None => return Err(self.err("unexpected end of header")),
            }
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected decimal number"));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Pnm {
                offset: start,
                message: "number out of range".into(),
            })
    }

    fn single_whitespace(&mut self) -> Result<()> {
        match self.data.get(self.pos) {
            Some(b) if b.is_ascii_whitespace() => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(self.err("expected whitespace after header")),
            None => Err(self.err("truncated payload")),
        }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.data.len() - self.pos < n {
            return Err(Error::Pnm {
                offset: self.data.len(),
                message: format!("truncated payload: need {n} bytes from offset {}", self.pos),
            });
        }
        let out = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    /// Next ASCII token for P2 as `(offset, value)`, after optional whitespace/comments.
    fn ascii_sample(&mut self) -> Result<(usize, usize)> {
        if self.data.get(self.pos).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
            self.skip_separators()?;
        }
        if self.pos >= self.data.len() {
            return Err(self.err("truncated payload"));
        }
        let at = self.pos;
        Ok((at, self.number()?))
    }

    fn ascii_bit(&mut self) -> Result<bool> {
        loop {
            match self.data.get(self.pos) {
                Some(b'0') => {
                    self.pos += 1;
                    return Ok(false);
                }
                Some(b'1') => {
                    self.pos += 1;
                    return Ok(true);
                }
                Some(b) if b.is_ascii_whitespace() => self.pos += 1,
                Some(b'#') => self.skip_separators()?,
                Some(_) => return Err(self.err("expected '0' or '1'")),
                None => return Err(self.err("truncated payload")),
            }
        }
    }
}

fn rescale(v: usize, maxval: usize) -> u8 {
    ((v * 255 + maxval / 2) / maxval) as u8
}

/// Decodes an in-memory netpbm file.
pub fn decode(data: &[u8]) -> Result<Raster> {
    let mut cur = Cursor { data, pos: 0 };
    let magic = cur.take(2).map_err(|_| Error::Pnm {
        offset: 0,
        message: "missing magic number".into(),
    })?;
    let kind = match magic {
        b"P1" | b"P2" | b"P4" | b"P5" => magic[1],
        _ => {
            return Err(Error::Pnm {
                offset: 0,
                message: format!("unsupported magic {:?}", String::from_utf8_lossy(magic)),
            })
        }
    };
    cur.skip_separators()?;
    let width = cur.number()?;
    cur.skip_separators()?;
    let height = cur.number()?;
    if width == 0 || height == 0 {
        return Err(cur.err("zero image dimension"));
    }
    let n = width
        .checked_mul(height)
        .ok_or_else(|| cur.err("image dimensions overflow"))?;
    let maxval = if matches!(kind, b'2' | b'5') {
        cur.skip_separators()?;
        let m = cur.number()?;
        if !(1..=65535).contains(&m) {
            return Err(cur.err(format!("maxval {m} outside 1..=65535")));
        }
        m
    } else {
        1
    };

    match kind {
        b'1' => {
            cur.single_whitespace()?;
            let ink = (0..n).map(|_| cur.ascii_bit()).collect::<Result<Vec<_>>>()?;
            Ok(Raster::Binary(BinaryImage::from_ink(width, height, ink)?))
        }
        b'4' => {
            cur.single_whitespace()?;
            let stride = width.div_ceil(8);
            let payload = cur.take(stride * height)?;
            let mut img = BinaryImage::new(width, height);
            for y in 0..height {
                let row = &payload[y * stride..(y + 1) * stride];
                for x in 0..width {
                    if row[x / 8] & (0x80 >> (x % 8)) != 0 {
                        img.set(x, y, true);
                    }
                }
            }
            Ok(Raster::Binary(img))
        }
        b'2' => {
            cur.single_whitespace()?;
            let mut px = Vec::with_capacity(n);
            for _ in 0..n {
                let (at, v) = cur.ascii_sample()?;
                if v > maxval {
                    return Err(Error::Pnm {
                        offset: at,
                        message: format!("sample {v} exceeds maxval {maxval}"),
                    });
                }
                px.push(rescale(v, maxval));
            }
            Ok(Raster::Gray(GrayImage::new(width, height, px)?))
        }
        _ => {
            cur.single_whitespace()?;
            let bytes_per = if maxval < 256 { 1 } else { 2 };
            let start = cur.pos;
            let payload = cur.take(n * bytes_per)?;
            let mut px = Vec::with_capacity(n);
            for i in 0..n {
                let v = if bytes_per == 1 {
                    payload[i] as usize
                } else {
                    (payload[2 * i] as usize) << 8 | payload[2 * i + 1] as usize
                };
                if v > maxval {
                    return Err(Error::Pnm {
                        offset: start + i * bytes_per,
                        message: format!("sample {v} exceeds maxval {maxval}"),
                    });
                }
                px.push(rescale(v, maxval));
            }
            Ok(Raster::Gray(GrayImage::new(width, height, px)?))
        }
    }
}

/// Raw PBM (P4) encoding.
pub fn encode_pbm(img: &BinaryImage) -> Vec<u8> {
    let stride = img.width().div_ceil(8);
    let mut out = format!("P4\n{} {}\n", img.width(), img.height()).into_bytes();
    for y in 0..img.height() {
        let mut row = vec![0u8; stride];
        for (x, _) in img.row(y).iter().enumerate().filter(|(_, &b)| b) {
            row[x / 8] |= 0x80 >> (x % 8);
        }
        out.extend_from_slice(&row);
    }
    out
}

/// Plain PBM (P1) encoding, one text row per image row.
pub fn encode_pbm_ascii(img: &BinaryImage) -> Vec<u8> {
    let mut out = format!("P1\n{} {}\n", img.width(), img.height());
    for y in 0..img.height() {
        let row: Vec<&str> = img.row(y).iter().map(|&b| if b { "1" } else { "0" }).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.into_bytes()
}

/// Raw PGM (P5) encoding with maxval 255.
pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn read_image(path: impl AsRef<Path>) -> Result<Raster> {
    let path = path.as_ref();
    let data = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&data)
}

/// Writes a binary image as raw PBM (P4).
pub fn write_pbm(img: &BinaryImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, encode_pbm(img)).map_err(|e| Error::io(path, e))
}

pub fn write_pgm(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, encode_pgm(img)).map_err(|e| Error::io(path, e))
}
