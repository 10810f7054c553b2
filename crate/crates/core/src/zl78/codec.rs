use std::collections::HashMap;

use super::{CompressedString, CompressionElement, Scheme, LZW_ALPHABET};

/// Greedy left-to-right parse of `text`.
///
/// ZL78 extends the longest dictionary phrase by one character per element;
/// if the input ends inside a known phrase the final element repeats it with
/// no label. ZLW emits the code of the longest dictionary phrase and adds
/// that phrase extended by the next input byte.
pub fn compress(text: &[u8], scheme: Scheme) -> CompressedString {
    let elements = match scheme {
        Scheme::Zl78 => compress_zl78(text),
        Scheme::Zlw => compress_zlw(text),
    };
    CompressedString { scheme, elements }
}

fn compress_zl78(text: &[u8]) -> Vec<CompressionElement> {
    let mut children: HashMap<(u32, u8), u32> = HashMap::new();
    let mut elements = Vec::new();
    let mut pos = 0;
    while pos < text.len() {
        let mut node = 0u32;
        while pos < text.len() {
            match children.get(&(node, text[pos])) {
                Some(&child) => {
                    node = child;
                    pos += 1;
                }
                None => break,
            }
        }
        if pos == text.len() {
            elements.push(CompressionElement {
                reference: node,
                label: None,
            });
            break;
        }
        let label = text[pos];
        pos += 1;
        elements.push(CompressionElement::new(node, label));
        children.insert((node, label), elements.len() as u32);
    }
    elements
}

fn compress_zlw(text: &[u8]) -> Vec<CompressionElement> {
    let Some((&first, rest)) = text.split_first() else {
        return Vec::new();
    };
    let mut children: HashMap<(u32, u8), u32> = HashMap::new();
    let mut elements = Vec::new();
    let mut node = first as u32 + 1;
    for &b in rest {
        if let Some(&child) = children.get(&(node, b)) {
            node = child;
            continue;
        }
        elements.push(CompressionElement {
            reference: node,
            label: None,
        });
        children.insert((node, b), (LZW_ALPHABET + elements.len()) as u32);
        node = b as u32 + 1;
    }
    elements.push(CompressionElement {
        reference: node,
        label: None,
    });
    elements
}

/// Reconstructs the text in `O(u)` by copying each referenced phrase from
/// where it was first written.
pub fn decompress(z: &CompressedString) -> Vec<u8> {
    match z.scheme {
        Scheme::Zl78 => decompress_zl78(z),
        Scheme::Zlw => decompress_zlw(z),
    }
}

fn decompress_zl78(z: &CompressedString) -> Vec<u8> {
    // (start, len) of every phrase in the output
    let mut spans: Vec<(usize, usize)> = Vec::with_capacity(z.len() + 1);
    spans.push((0, 0));
    let mut out = Vec::new();
    for e in &z.elements {
        let (src, len) = spans[e.reference as usize];
        let start = out.len();
        out.extend_from_within(src..src + len);
        if let Some(label) = e.label {
            out.push(label);
        }
        spans.push((start, out.len() - start));
    }
    out
}

fn decompress_zlw(z: &CompressedString) -> Vec<u8> {
    // Node 256 + j spans the j-th phrase plus the first byte of the next one,
    // which is exactly where it sits in the output.
    let mut starts: Vec<usize> = Vec::with_capacity(z.len());
    let mut lens: Vec<usize> = Vec::with_capacity(z.len());
    let mut out = Vec::new();
    for e in &z.elements {
        let code = e.reference as usize;
        let start = out.len();
        if code <= LZW_ALPHABET {
            out.push((code - 1) as u8);
        } else {
            let j = code - LZW_ALPHABET - 1;
            let (src, len) = (starts[j], lens[j] + 1);
            // KwKwK: the source overlaps the bytes being written
            for t in 0..len {
                let b = out[src + t];
                out.push(b);
            }
        }
        starts.push(start);
        lens.push(out.len() - start);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig3_parse() {
        let z = compress(b"ananasbananer", Scheme::Zl78);
        let pairs: Vec<_> = z
            .elements()
            .iter()
            .map(|e| (e.reference, e.label.unwrap()))
            .collect();
        assert_eq!(
            pairs,
            [
                (0, b'a'),
                (0, b'n'),
                (1, b'n'),
                (1, b's'),
                (0, b'b'),
                (3, b'a'),
                (2, b'e'),
                (0, b'r')
            ]
        );
        assert_eq!(decompress(&z), b"ananasbananer");
    }

    #[test]
    fn empty_input() {
        for scheme in [Scheme::Zl78, Scheme::Zlw] {
            let z = compress(b"", scheme);
            assert!(z.is_empty());
            assert_eq!(decompress(&z), b"");
        }
    }

    #[test]
    fn final_repeat() {
        let z = compress(b"aaaa", Scheme::Zl78);
        assert_eq!(
            z.elements(),
            [
                CompressionElement::new(0, b'a'),
                CompressionElement::new(1, b'a'),
                CompressionElement {
                    reference: 1,
                    label: None
                }
            ]
        );
        assert_eq!(decompress(&z), b"aaaa");
    }

    #[test]
    fn zlw_classic_example() {
        // ab ab aba b -> codes a, b, 257 (ab), 259 (aba), b
        let z = compress(b"abababab", Scheme::Zlw);
        let codes: Vec<_> = z.elements().iter().map(|e| e.reference).collect();
        assert_eq!(codes, [98, 99, 257, 259, 99]);
        assert_eq!(decompress(&z), b"abababab");
    }

    #[test]
    fn zlw_kwkwk() {
        let z = compress(b"aaaaaaa", Scheme::Zlw);
        let codes: Vec<_> = z.elements().iter().map(|e| e.reference).collect();
        assert_eq!(codes, [98, 257, 258, 98]);
        assert_eq!(decompress(&z), b"aaaaaaa");
    }
}
