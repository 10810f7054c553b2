use super::{CompressedString, PhraseSource, Scheme, LZW_ALPHABET};

/// Explicit dictionary trie, `Ω(n)` space.
///
/// For ZL78 node `i` is element `z_i` (a final repeat adds no node). For ZLW
/// nodes `1..=256` are the single bytes and node `256 + j` is the entry
/// created by the `j`-th code.
#[derive(Debug, Clone)]
pub struct DictionaryTrie {
    scheme: Scheme,
    parents: Vec<u32>,
    labels: Vec<u8>,
    depths: Vec<u32>,
    children: Vec<Vec<(u8, u32)>>,
    pieces: Vec<u32>,
}

impl DictionaryTrie {
    pub fn build(z: &CompressedString) -> Self {
        let mut trie = DictionaryTrie {
            scheme: z.scheme(),
            parents: vec![0],
            labels: vec![0],
            depths: vec![0],
            children: vec![Vec::new()],
            pieces: Vec::with_capacity(z.len()),
        };
        match z.scheme() {
            Scheme::Zl78 => {
                for (pos, e) in z.elements().iter().enumerate() {
                    match e.label {
                        Some(label) => {
                            trie.add(e.reference, label);
                            trie.pieces.push(pos as u32 + 1);
                        }
                        None => trie.pieces.push(e.reference),
                    }
                }
            }
            Scheme::Zlw => {
                for b in 0..=255u8 {
                    trie.add(0, b);
                }
                let codes: Vec<u32> = z.elements().iter().map(|e| e.reference).collect();
                // first byte of each node's phrase
                let mut firsts: Vec<u8> = (0..=LZW_ALPHABET)
                    .map(|x| x.saturating_sub(1) as u8)
                    .collect();
                for w in codes.windows(2) {
                    let (code, next) = (w[0], w[1]);
                    firsts.push(firsts[code as usize]);
                    let label = firsts[next as usize];
                    trie.add(code, label);
                }
                trie.pieces = codes;
            }
        }
        trie
    }

    fn add(&mut self, parent: u32, label: u8) {
        let node = self.parents.len() as u32;
        self.parents.push(parent);
        self.labels.push(label);
        self.depths.push(self.depths[parent as usize] + 1);
        self.children.push(Vec::new());
        let siblings = &mut self.children[parent as usize];
        let at = siblings.partition_point(|&(b, _)| b < label);
        siblings.insert(at, (label, node));
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn depth(&self, node: usize) -> usize {
        self.depths[node] as usize
    }

    pub fn child(&self, node: usize, label: u8) -> Option<usize> {
        let siblings = &self.children[node];
        siblings
            .binary_search_by_key(&label, |&(b, _)| b)
            .ok()
            .map(|i| siblings[i].1 as usize)
    }

    /// Children of `node` ordered by label.
    pub fn children(&self, node: usize) -> impl Iterator<Item = (u8, usize)> + '_ {
        self.children[node].iter().map(|&(b, x)| (b, x as usize))
    }

    pub fn phrase(&self, node: usize) -> Vec<u8> {
        self.path_label(node, self.depth(node))
    }

    /// Total length of the represented text.
    pub fn text_len(&self) -> usize {
        self.pieces
            .iter()
            .map(|&x| self.depths[x as usize] as usize)
            .sum()
    }
}

impl PhraseSource for DictionaryTrie {
    fn node_count(&self) -> usize {
        self.parents.len()
    }

    fn parent(&self, node: usize) -> usize {
        self.parents[node] as usize
    }

    fn label(&self, node: usize) -> u8 {
        self.labels[node]
    }

    fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    fn piece(&self, index: usize) -> usize {
        self.pieces[index - 1] as usize
    }

    fn walk_depth(&self, node: usize) -> usize {
        self.depth(node)
    }
}
