//! LZ78 ("ZL78") and LZW ("ZLW") compressed strings.
//!
//! A ZL78 compressed string is a sequence of elements `z_1 .. z_n`, each a
//! pair `(reference, label)`. Element `z_i` stands for the phrase
//! `phrase(z_reference) . label`, with the implicit root `z_0` standing for
//! the empty string. The references form a trie (the dictionary) whose node
//! `i` is element `z_i`, so the label of any root path can be read straight
//! off the element sequence, one element per character.
//!
//! A ZLW compressed string stores references only. Its dictionary starts with
//! one entry per byte (nodes `1..=256`, byte `b` at node `b + 1`), and the
//! `j`-th code creates node `256 + j` once the first byte of the following
//! phrase is known. Labels are therefore only available after a left-to-right
//! pass, which [`DictionaryTrie::build`] performs.

mod codec;
mod format;
mod trie;

use std::fmt;

pub use codec::{compress, decompress};
pub use format::{read_compressed, write_compressed, FORMAT_VERSION};
pub use trie::DictionaryTrie;

use crate::error::{Error, Result};

/// Number of single-byte entries an LZW dictionary starts with.
pub const LZW_ALPHABET: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Zl78,
    Zlw,
}

impl Scheme {
    pub fn magic(self) -> &'static [u8; 4] {
        match self {
            Scheme::Zl78 => b"CZ78",
            Scheme::Zlw => b"CZLW",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Zl78 => "zl78",
            Scheme::Zlw => "zlw",
        })
    }
}

/// One `(reference, label)` pair.
///
/// In ZL78 the label is absent only on a final element whose phrase is an
/// existing dictionary entry (the input ended mid-match). In ZLW labels are
/// never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CompressionElement {
    pub reference: u32,
    pub label: Option<u8>,
}

impl CompressionElement {
    pub fn new(reference: u32, label: u8) -> Self {
        CompressionElement {
            reference,
            label: Some(label),
        }
    }
}

/// A validated element sequence `z_1 .. z_n`. The root `z_0` is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedString {
    scheme: Scheme,
    elements: Vec<CompressionElement>,
}

impl CompressedString {
    pub fn new(scheme: Scheme, elements: Vec<CompressionElement>) -> Result<Self> {
        let n = elements.len();
        for (pos, e) in elements.iter().enumerate() {
            let index = pos + 1;
            let bad = Error::BadReference {
                index,
                reference: e.reference as u64,
            };
            match scheme {
                Scheme::Zl78 => {
                    if e.reference as usize >= index {
                        return Err(bad);
                    }
                    if e.label.is_none() && (index != n || e.reference == 0) {
                        return Err(Error::format(
                            0,
                            format!("element {index} has no label but is not a final repeat"),
                        ));
                    }
                }
                Scheme::Zlw => {
                    if e.label.is_some() {
                        return Err(Error::format(
                            0,
                            format!("ZLW element {index} carries a label"),
                        ));
                    }
                    if e.reference == 0 || e.reference as usize > LZW_ALPHABET - 1 + index {
                        return Err(bad);
                    }
                }
            }
        }
        Ok(CompressedString { scheme, elements })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn elements(&self) -> &[CompressionElement] {
        &self.elements
    }

    /// `n`, the number of stored elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Element `z_i` for `1 <= i <= n`.
    pub fn element(&self, i: usize) -> CompressionElement {
        self.elements[i - 1]
    }

    /// Whether the last ZL78 element repeats an existing phrase.
    pub fn has_incomplete_tail(&self) -> bool {
        self.scheme == Scheme::Zl78 && self.elements.last().is_some_and(|e| e.label.is_none())
    }

    /// Trie view over a ZL78 string without building anything.
    ///
    /// ZLW strings have no stored labels, so they need an explicit
    /// [`DictionaryTrie`] instead.
    pub fn zl78_view(&self) -> Result<Zl78View<'_>> {
        match self.scheme {
            Scheme::Zl78 => Ok(Zl78View {
                z: self,
                nodes: self.elements.len() + 1 - usize::from(self.has_incomplete_tail()),
            }),
            Scheme::Zlw => Err(Error::Unsupported(
                "ZLW labels are implicit; build the explicit dictionary trie first".into(),
            )),
        }
    }
}

/// Prints the elements as `(r,α)` pairs, e.g. `(0,a)(0,n)(1,n)`.
///
/// A ZL78 final repeat prints as `(r,)` and ZLW codes as `(r)`. Bytes outside
/// printable ASCII are escaped as `\xHH`.
impl fmt::Display for CompressedString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elements {
            match (self.scheme, e.label) {
                (Scheme::Zlw, _) => write!(f, "({})", e.reference)?,
                (Scheme::Zl78, None) => write!(f, "({},)", e.reference)?,
                (Scheme::Zl78, Some(b)) if b.is_ascii_graphic() || b == b' ' => {
                    write!(f, "({},{})", e.reference, b as char)?
                }
                (Scheme::Zl78, Some(b)) => write!(f, "({},\\x{:02x})", e.reference, b)?,
            }
        }
        Ok(())
    }
}

/// Read access to a dictionary trie plus the sequence of text pieces.
///
/// Nodes are numbered in creation order, so `parent(x) < x` for every
/// non-root node and node `0` is the root. The text is the concatenation of
/// the phrases of `piece(1) .. piece(piece_count())`.
pub trait PhraseSource {
    /// Number of trie nodes, root included.
    fn node_count(&self) -> usize;

    fn parent(&self, node: usize) -> usize;

    fn label(&self, node: usize) -> u8;

    fn piece_count(&self) -> usize;

    /// Trie node spelling the `index`-th text piece, `1 <= index <= piece_count()`.
    fn piece(&self, index: usize) -> usize;

    /// Pushes the labels on the path from `node` towards the root, nearest
    /// first, stopping after `max` labels or at the root. Returns the number
    /// of labels pushed.
    fn push_path_labels(&self, node: usize, max: usize, out: &mut Vec<u8>) -> usize {
        let mut x = node;
        let mut pushed = 0;
        while pushed < max && x != 0 {
            out.push(self.label(x));
            x = self.parent(x);
            pushed += 1;
        }
        pushed
    }

    /// The last `count` characters of `phrase(node)` in text order, or the
    /// whole phrase if it is shorter.
    fn path_label(&self, node: usize, count: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(count);
        self.push_path_labels(node, count, &mut out);
        out.reverse();
        out
    }

    /// Depth of `node` by walking to the root.
    fn walk_depth(&self, node: usize) -> usize {
        let mut x = node;
        let mut depth = 0;
        while x != 0 {
            x = self.parent(x);
            depth += 1;
        }
        depth
    }
}

/// Implicit trie of a ZL78 string: node `i` is element `z_i`.
#[derive(Debug, Clone, Copy)]
pub struct Zl78View<'a> {
    z: &'a CompressedString,
    nodes: usize,
}

impl PhraseSource for Zl78View<'_> {
    fn node_count(&self) -> usize {
        self.nodes
    }

    fn parent(&self, node: usize) -> usize {
        self.z.elements[node - 1].reference as usize
    }

    fn label(&self, node: usize) -> u8 {
        self.z.elements[node - 1]
            .label
            .expect("trie nodes always carry a label")
    }

    fn piece_count(&self) -> usize {
        self.z.elements.len()
    }

    fn piece(&self, index: usize) -> usize {
        let e = self.z.elements[index - 1];
        match e.label {
            Some(_) => index,
            None => e.reference as usize,
        }
    }
}

/// Length of the `i`-th phrase; `i = 0` is the empty root phrase.
///
/// Walks references, so it costs `O(depth)`. ZLW codes are followed through
/// the implicit dictionary without needing labels.
pub fn phrase_length(z: &CompressedString, i: usize) -> Result<usize> {
    if i > z.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: z.len(),
        });
    }
    if i == 0 {
        return Ok(0);
    }
    match z.scheme {
        Scheme::Zl78 => {
            let view = z.zl78_view()?;
            Ok(view.walk_depth(view.piece(i)))
        }
        Scheme::Zlw => {
            let mut node = z.element(i).reference as usize;
            let mut length = 0;
            while node > LZW_ALPHABET {
                node = z.element(node - LZW_ALPHABET).reference as usize;
                length += 1;
            }
            Ok(length + 1)
        }
    }
}

/// The last `count` characters of `phrase(z_i)`, decoded by walking from
/// `z_i` towards the root and returned in text order.
pub fn decode_path_label(z: &CompressedString, i: usize, count: usize) -> Result<Vec<u8>> {
    let view = z.zl78_view()?;
    if i > z.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: z.len(),
        });
    }
    let node = if i == 0 { 0 } else { view.piece(i) };
    let mut out = Vec::with_capacity(count);
    let got = view.push_path_labels(node, count, &mut out);
    if got < count {
        return Err(Error::parameter(format!(
            "cannot decode {count} characters from element {i} of depth {got}"
        )));
    }
    out.reverse();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> CompressedString {
        compress(b"ananasbananer", Scheme::Zl78)
    }

    #[test]
    fn display_matches_pair_notation() {
        assert_eq!(
            fig3().to_string(),
            "(0,a)(0,n)(1,n)(1,s)(0,b)(3,a)(2,e)(0,r)"
        );
        assert_eq!(
            compress(b"aaaa", Scheme::Zl78).to_string(),
            "(0,a)(1,a)(1,)"
        );
    }

    #[test]
    fn phrase_lengths() {
        let z = fig3();
        let lengths: Vec<_> = (0..=8).map(|i| phrase_length(&z, i).unwrap()).collect();
        assert_eq!(lengths, [0, 1, 1, 2, 2, 1, 3, 2, 1]);
        assert!(matches!(
            phrase_length(&z, 9),
            Err(Error::IndexOutOfRange { index: 9, max: 8 })
        ));
    }

    #[test]
    fn zlw_phrase_lengths_follow_codes() {
        let text = b"ananasbananer";
        let z = compress(text, Scheme::Zlw);
        let total: usize = (1..=z.len()).map(|i| phrase_length(&z, i).unwrap()).sum();
        assert_eq!(total, text.len());
    }

    #[test]
    fn path_labels() {
        let z = fig3();
        assert_eq!(decode_path_label(&z, 7, 2).unwrap(), b"ne");
        assert_eq!(decode_path_label(&z, 6, 2).unwrap(), b"na");
        assert_eq!(decode_path_label(&z, 6, 0).unwrap(), b"");
        assert!(decode_path_label(&z, 6, 4).is_err());
        assert!(decode_path_label(&z, 0, 1).is_err());
    }

    #[test]
    fn validation_rejects_forward_references() {
        let bad = vec![
            CompressionElement::new(0, b'a'),
            CompressionElement::new(2, b'b'),
        ];
        assert_eq!(
            CompressedString::new(Scheme::Zl78, bad),
            Err(Error::BadReference {
                index: 2,
                reference: 2
            })
        );
        let mid_gap = vec![
            CompressionElement::new(0, b'a'),
            CompressionElement {
                reference: 1,
                label: None,
            },
            CompressionElement::new(0, b'b'),
        ];
        assert!(CompressedString::new(Scheme::Zl78, mid_gap).is_err());
        let root_repeat = vec![CompressionElement {
            reference: 0,
            label: None,
        }];
        assert!(CompressedString::new(Scheme::Zl78, root_repeat).is_err());
    }

    #[test]
    fn zlw_has_no_sparse_view() {
        let z = compress(b"abab", Scheme::Zlw);
        assert!(matches!(z.zl78_view(), Err(Error::Unsupported(_))));
        assert!(matches!(
            decode_path_label(&z, 1, 1),
            Err(Error::Unsupported(_))
        ));
    }
}
