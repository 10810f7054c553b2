/// Computes `Γ(A, S)`: the sorted 1-based end positions `j` in `text` such
/// that some substring `text[i..=j]` is within edit distance `k` of
/// `pattern`.
pub trait UncompressedMatcher {
    fn matches(&self, pattern: &[u8], text: &[u8], k: usize) -> Vec<usize>;
}

/// Column-by-column dynamic programming with a free starting point,
/// `O(|pattern| · |text|)` time and `O(|pattern|)` space.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sellers;

impl UncompressedMatcher for Sellers {
    fn matches(&self, pattern: &[u8], text: &[u8], k: usize) -> Vec<usize> {
        edit_distance_matches(pattern, text, k)
    }
}

pub fn edit_distance_matches(pattern: &[u8], text: &[u8], k: usize) -> Vec<usize> {
    let m = pattern.len();
    let mut col: Vec<usize> = (0..=m).collect();
    let mut out = Vec::new();
    for (j, &c) in text.iter().enumerate() {
        let mut diag = col[0];
        col[0] = 0;
        for i in 1..=m {
            let above = col[i];
            col[i] = (above + 1)
                .min(col[i - 1] + 1)
                .min(diag + usize::from(pattern[i - 1] != c));
            diag = above;
        }
        if col[m] <= k {
            out.push(j + 1);
        }
    }
    out
}

/// Interval that must contain every start of a match ending at `j`:
/// `[j - m + 1 - k, j - m + 1 + k]`, clamped into `[1, min(j, text_len)]`.
pub fn match_start_interval(
    j: usize,
    pattern_len: usize,
    k: usize,
    text_len: usize,
) -> (usize, usize) {
    let base = j as i64 - pattern_len as i64 + 1;
    let upper = (j.min(text_len)) as i64;
    let lo = (base - k as i64).clamp(1, upper.max(1));
    let hi = (base + k as i64).clamp(1, upper.max(1));
    (lo as usize, hi as usize)
}
