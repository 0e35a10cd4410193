//! PPM image input/output: reads P3 and P6 with maxval up to 65535, writes P6
//! with maxval 255.

use crate::error::Error;
use crate::raster::Framebuffer;
use crate::texture::Image;

/// A decoded PPM image: RGB samples row-major, top row first.
#[derive(Debug, Clone, PartialEq)]
pub struct Ppm {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub samples: Vec<u16>,
}

impl Ppm {
    /// Samples rescaled to 8-bit channels, `round(s * 255 / maxval)`.
    pub fn to_rgb8(&self) -> Vec<u8> {
        self.samples
            .iter()
            .map(|&s| ((s as f64 * 255.0 / self.maxval as f64).round()).clamp(0.0, 255.0) as u8)
            .collect()
    }

    /// Normalized texel grid for texture sampling.
    pub fn to_image(&self) -> Result<Image, Error> {
        let m = self.maxval as f64;
        let texels = self
            .samples
            .chunks_exact(3)
            .map(|c| [c[0] as f64 / m, c[1] as f64 / m, c[2] as f64 / m])
            .collect();
        Image::new(self.width, self.height, texels)
    }
}

struct Header {
    binary: bool,
    width: usize,
    height: usize,
    maxval: u16,
    payload_start: usize,
}

pub fn read_ppm(bytes: &[u8]) -> Result<Ppm, Error> {
    let header = read_header(bytes)?;
    let n = header.width * header.height * 3;
    let mut samples = Vec::with_capacity(n);

    if header.binary {
        let per = if header.maxval > 255 { 2 } else { 1 };
        let payload = &bytes[header.payload_start..];
        if payload.len() < n * per {
            return Err(Error::TruncatedData);
        }
        if per == 1 {
            samples.extend(payload[..n].iter().map(|&b| b as u16));
        } else {
            for pair in payload[..n * 2].chunks_exact(2) {
                samples.push(u16::from_be_bytes([pair[0], pair[1]]));
            }
        }
    } else {
        let mut lexer = Lexer { bytes, pos: header.payload_start };
        for _ in 0..n {
            match lexer.token() {
                Some(tok) => {
                    let text = std::str::from_utf8(tok).map_err(|_| malformed("non-ASCII sample"))?;
                    let value: u32 =
                        text.parse().map_err(|_| malformed(&format!("bad sample '{text}'")))?;
                    if value > header.maxval as u32 {
                        return Err(malformed(&format!(
                            "sample {value} exceeds maxval {}",
                            header.maxval
                        )));
                    }
                    samples.push(value as u16);
                }
                None => return Err(Error::TruncatedData),
            }
        }
    }

    Ok(Ppm { width: header.width, height: header.height, maxval: header.maxval, samples })
}

fn read_header(bytes: &[u8]) -> Result<Header, Error> {
    let mut lexer = Lexer { bytes, pos: 0 };
    let magic = lexer.token().ok_or_else(|| malformed("empty input"))?;
    let binary = match magic {
        b"P3" => false,
        b"P6" => true,
        other => {
            return Err(malformed(&format!(
                "unsupported magic '{}'",
                String::from_utf8_lossy(other)
            )))
        }
    };
    let mut dim = |what: &str| -> Result<usize, Error> {
        let tok = lexer.token().ok_or_else(|| malformed(&format!("missing {what}")))?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| malformed(&format!("bad {what}")))
    };
    let width = dim("width")?;
    let height = dim("height")?;
    let maxval = dim("maxval")?;
    if width == 0 || height == 0 {
        return Err(malformed("zero dimension"));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(malformed(&format!("maxval {maxval} out of range 1..=65535")));
    }
    let mut payload_start = lexer.pos;
    if binary {
        // Exactly one whitespace byte separates the maxval from the payload.
        if payload_start >= bytes.len() || !bytes[payload_start].is_ascii_whitespace() {
            return Err(malformed("missing whitespace before binary payload"));
        }
        payload_start += 1;
    }
    Ok(Header { binary, width, height, maxval: maxval as u16, payload_start })
}

fn malformed(message: &str) -> Error {
    Error::MalformedHeader { message: message.into() }
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn token(&mut self) -> Option<&'a [u8]> {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
        if self.pos >= self.bytes.len() {
            return None;
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        Some(&self.bytes[start..self.pos])
    }
}

/// Encodes a framebuffer as binary P6 with maxval 255.
pub fn write_ppm(fb: &Framebuffer) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", fb.width(), fb.height()).into_bytes();
    out.extend(fb.to_rgb8());
    out
}

/// Channel-difference metrics between two images of equal dimensions,
/// computed on 8-bit rescaled channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareReport {
    pub max_abs: u32,
    pub mean_abs: f64,
    pub differing_pixels: u64,
}

pub fn compare_images(a: &Ppm, b: &Ppm) -> Result<CompareReport, Error> {
    if a.width != b.width || a.height != b.height {
        return Err(Error::DimensionMismatch {
            a: (a.width, a.height),
            b: (b.width, b.height),
        });
    }
    let a8 = a.to_rgb8();
    let b8 = b.to_rgb8();
    let mut max_abs = 0u32;
    let mut sum_abs = 0u64;
    let mut differing = 0u64;
    for (pa, pb) in a8.chunks_exact(3).zip(b8.chunks_exact(3)) {
        let mut any = false;
        for (&ca, &cb) in pa.iter().zip(pb) {
            let d = (ca as i32 - cb as i32).unsigned_abs();
            max_abs = max_abs.max(d);
            sum_abs += d as u64;
            any |= d != 0;
        }
        if any {
            differing += 1;
        }
    }
    Ok(CompareReport {
        max_abs,
        mean_abs: sum_abs as f64 / a8.len() as f64,
        differing_pixels: differing,
    })
}
