//! PGM (P5 binary / P2 ASCII) with maxval 255.

use std::fs;
use std::path::Path;

use crate::error::{Error, PgmError, Result};
use crate::image::GrayImage;

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&'a [u8]> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self
            .data
            .get(self.pos)
            .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.data[start..self.pos])
    }

    fn number(&mut self, what: &'static str) -> Result<u32, PgmError> {
        let tok = self.token().ok_or(PgmError::MalformedHeader(what))?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(PgmError::MalformedHeader(what))
    }
}

/// Decode a PGM byte stream.
pub fn decode(data: &[u8]) -> Result<GrayImage> {
    let mut cur = Cursor { data, pos: 0 };
    let magic = cur.token().ok_or(PgmError::MalformedHeader("missing magic"))?;
    let binary = match magic {
        b"P5" => true,
        b"P2" => false,
        other => return Err(PgmError::BadMagic(String::from_utf8_lossy(other).into_owned()).into()),
    };
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval = cur.number("maxval")?;
    if maxval != 255 {
        return Err(PgmError::UnsupportedMaxval(maxval).into());
    }
    let expected = width * height;

    let pixels = if binary {
        // exactly one whitespace byte separates the header from the raster
        match data.get(cur.pos) {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            _ => return Err(PgmError::MalformedHeader("missing raster separator").into()),
        }
        let raster = &data[cur.pos..];
        if raster.len() < expected {
            return Err(PgmError::Truncated {
                expected,
                found: raster.len(),
            }
            .into());
        }
        raster[..expected].to_vec()
    } else {
        let mut pixels = Vec::with_capacity(expected);
        while pixels.len() < expected {
            match cur.token() {
                None => {
                    return Err(PgmError::Truncated {
                        expected,
                        found: pixels.len(),
                    }
                    .into())
                }
                Some(tok) => {
                    let v: u32 = std::str::from_utf8(tok)
                        .ok()
                        .and_then(|s| s.parse().ok())
                        .ok_or(PgmError::MalformedHeader("non-numeric sample"))?;
                    if v > 255 {
                        return Err(PgmError::SampleOutOfRange(v).into());
                    }
                    pixels.push(v as u8);
                }
            }
        }
        pixels
    };
    GrayImage::new(width, height, pixels)
}

/// Binary P5 encoding.
pub fn encode(image: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend_from_slice(image.pixels());
    out
}

/// ASCII P2 encoding, mostly useful for fixtures.
pub fn encode_ascii(image: &GrayImage) -> String {
    let mut out = format!("P2\n{} {}\n255\n", image.width(), image.height());
    for y in 0..image.height() {
        let row: Vec<String> = image.row(y).iter().map(u8::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let data = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&data)
}

pub fn store_image(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode(image)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn all_zero_ascii() {
        let img = decode(b"P2\n3 3\n255\n0 0 0\n0 0 0\n0 0 0\n").unwrap();
        assert_eq!(img, GrayImage::filled(3, 3, 0));
    }

    #[test]
    fn comments_in_header() {
        let mut data = b"P5\n# made by hand\n2 1\n# depth\n255\n".to_vec();
        data.extend_from_slice(&[7, 200]);
        let img = decode(&data).unwrap();
        assert_eq!(img.pixels(), &[7, 200]);
    }

    #[test]
    fn rejects_16_bit() {
        let err = decode(b"P5\n1 1\n65535\n\0\0").unwrap_err();
        assert!(matches!(err, Error::Pgm(PgmError::UnsupportedMaxval(65535))));
        assert!(err.to_string().contains("unsupported maxval"));
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(
            decode(b"P6\n1 1\n255\n\0\0\0").unwrap_err(),
            Error::Pgm(PgmError::BadMagic(_))
        ));
        assert!(matches!(
            decode(b"P5\n3 x\n255\n").unwrap_err(),
            Error::Pgm(PgmError::MalformedHeader(_))
        ));
        assert!(matches!(
            decode(b"P5\n3 3\n255\n\x01\x02").unwrap_err(),
            Error::Pgm(PgmError::Truncated { expected: 9, found: 2 })
        ));
        assert!(matches!(
            decode(b"P2\n2 1\n255\n1").unwrap_err(),
            Error::Pgm(PgmError::Truncated { expected: 2, found: 1 })
        ));
        assert!(matches!(
            decode(b"P2\n1 1\n255\n300").unwrap_err(),
            Error::Pgm(PgmError::SampleOutOfRange(300))
        ));
    }

    #[test]
    fn raster_may_start_with_whitespace_byte() {
        let mut data = b"P5\n2 1\n255\n".to_vec();
        data.extend_from_slice(b" \n");
        assert_eq!(decode(&data).unwrap().pixels(), b" \n");
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.pgm");
        let img = GrayImage::from_fn(9, 9, |x, y| (x * 29 + y * 7) as u8);
        store_image(&img, &path).unwrap();
        assert_eq!(load_image(&path).unwrap(), img);
        assert!(matches!(
            load_image(dir.path().join("missing.pgm")),
            Err(Error::Io { .. })
        ));
    }

    proptest! {
        #[test]
        fn round_trip(w in 1usize..20, h in 1usize..20, seed: u64) {
            let img = GrayImage::from_fn(w, h, |x, y| {
                (seed.wrapping_add((y * w + x) as u64).wrapping_mul(6364136223846793005) >> 56) as u8
            });
            prop_assert_eq!(decode(&encode(&img)).unwrap(), img.clone());
            prop_assert_eq!(decode(encode_ascii(&img).as_bytes()).unwrap(), img);
        }
    }
}
