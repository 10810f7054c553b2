//! Binary container.
//!
//! ```text
//! magic    4 bytes   "CZ78" | "CZLW"
//! version  1 byte    FORMAT_VERSION
//! n        varint    element count (unsigned LEB128)
//! ZL78, per element:  varint reference, flag byte (1 = label present), [label byte]
//! ZLW,  per element:  varint reference
//! ZLW trailer:        flag byte, 1 iff the final element has no label (n > 0)
//! ```

use super::{CompressedString, CompressionElement, Scheme};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u8 = 1;

const MAX_VARINT_BYTES: usize = 10;

fn put_varint(out: &mut Vec<u8>, mut v: u64) {
    while v >= 0x80 {
        out.push((v as u8) | 0x80);
        v >>= 7;
    }
    out.push(v as u8);
}

pub fn write_compressed(z: &CompressedString) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + 3 * z.len());
    out.extend_from_slice(z.scheme().magic());
    out.push(FORMAT_VERSION);
    put_varint(&mut out, z.len() as u64);
    for e in z.elements() {
        put_varint(&mut out, e.reference as u64);
        if z.scheme() == Scheme::Zl78 {
            match e.label {
                Some(b) => out.extend_from_slice(&[1, b]),
                None => out.push(0),
            }
        }
    }
    if z.scheme() == Scheme::Zlw {
        out.push(u8::from(!z.is_empty()));
    }
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn byte(&mut self) -> Option<u8> {
        let b = *self.buf.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    /// `Ok(None)` on clean end of input, `Err` on overlong encodings.
    fn varint(&mut self) -> Result<Option<u64>> {
        let start = self.pos;
        let mut v: u64 = 0;
        for i in 0..MAX_VARINT_BYTES {
            let Some(b) = self.byte() else {
                return Ok(None);
            };
            let bits = (b & 0x7f) as u64;
            if i == MAX_VARINT_BYTES - 1 && bits > 1 {
                return Err(Error::format(start, "varint overflows 64 bits"));
            }
            v |= bits << (7 * i);
            if b & 0x80 == 0 {
                return Ok(Some(v));
            }
        }
        Err(Error::format(start, "varint longer than 10 bytes"))
    }
}

/// Parses and validates a container produced by [`write_compressed`].
pub fn read_compressed(buf: &[u8]) -> Result<CompressedString> {
    if buf.len() < 4 {
        return Err(Error::format(0, "missing magic bytes"));
    }
    let scheme = match &buf[..4] {
        b"CZ78" => Scheme::Zl78,
        b"CZLW" => Scheme::Zlw,
        _ => return Err(Error::format(0, "unknown magic bytes")),
    };
    let mut r = Reader { buf, pos: 4 };
    match r.byte() {
        Some(FORMAT_VERSION) => {}
        Some(v) => return Err(Error::format(4, format!("unsupported format version {v}"))),
        None => return Err(Error::format(4, "missing format version")),
    }
    let count_at = r.pos;
    let n = r
        .varint()?
        .ok_or_else(|| Error::format(count_at, "missing element count"))?;
    // Every element takes at least one byte; reject absurd counts before
    // allocating.
    let remaining = (buf.len() - r.pos) as u64;
    if n > remaining {
        return Err(Error::Truncated {
            index: remaining as usize + 1,
            count: n as usize,
            offset: buf.len(),
        });
    }
    let n = n as usize;
    let truncated = |index: usize, offset: usize| Error::Truncated {
        index,
        count: n,
        offset,
    };

    let mut elements = Vec::with_capacity(n);
    for index in 1..=n {
        let at = r.pos;
        let reference = r.varint()?.ok_or_else(|| truncated(index, buf.len()))?;
        let max_ref = match scheme {
            Scheme::Zl78 => index as u64 - 1,
            Scheme::Zlw => super::LZW_ALPHABET as u64 - 1 + index as u64,
        };
        if reference > max_ref || (scheme == Scheme::Zlw && reference == 0) {
            return Err(Error::BadReference { index, reference });
        }
        let label = match scheme {
            Scheme::Zl78 => match r.byte().ok_or_else(|| truncated(index, buf.len()))? {
                1 => Some(r.byte().ok_or_else(|| truncated(index, buf.len()))?),
                0 => None,
                f => {
                    return Err(Error::format(
                        r.pos - 1,
                        format!("element {index}: invalid label flag {f}"),
                    ))
                }
            },
            Scheme::Zlw => None,
        };
        if scheme == Scheme::Zl78 && label.is_none() && (index != n || reference == 0) {
            return Err(Error::format(
                at,
                format!("element {index}: label may only be absent on a final repeat"),
            ));
        }
        elements.push(CompressionElement {
            reference: reference as u32,
            label,
        });
    }
    if scheme == Scheme::Zlw {
        let at = r.pos;
        let flag = r
            .byte()
            .ok_or_else(|| Error::format(at, "missing trailing phrase flag"))?;
        if flag != u8::from(n > 0) {
            return Err(Error::format(
                at,
                format!("invalid trailing phrase flag {flag}"),
            ));
        }
    }
    if r.pos != buf.len() {
        return Err(Error::format(r.pos, "trailing bytes after last element"));
    }
    CompressedString::new(scheme, elements)
}
