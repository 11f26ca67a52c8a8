//! Levenshtein distance and approximate substring search.

/// Unit-cost Levenshtein distance between two character sequences.
pub fn levenshtein(a: &[char], b: &[char]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    // keep the shorter sequence along the row
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut prev: Vec<usize> = (0..=short.len()).collect();
    let mut cur = vec![0usize; short.len() + 1];
    for (i, lc) in long.iter().enumerate() {
        cur[0] = i + 1;
        for (j, sc) in short.iter().enumerate() {
            let sub = prev[j] + usize::from(lc != sc);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[short.len()]
}

pub fn levenshtein_str(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    levenshtein(&a, &b)
}

/// Levenshtein distance divided by the longer length; 0 for two empty inputs.
pub fn normalized_levenshtein(a: &[char], b: &[char]) -> f64 {
    let denom = a.len().max(b.len());
    if denom == 0 {
        0.0
    } else {
        levenshtein(a, b) as f64 / denom as f64
    }
}

pub fn normalized_levenshtein_str(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    normalized_levenshtein(&a, &b)
}

/// Result of an approximate substring search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApproxMatch {
    /// Exclusive end of the matched region in the searched text.
    pub end: usize,
    /// Edit distance between the pattern and the matched region.
    pub distance: usize,
}

/// Finds the end positions in `text` where `pattern` occurs with the fewest
/// edits (Sellers' dynamic program: free start, free end).
///
/// Only matches with `distance <= max_distance` are considered. Among equally
/// good ends the one closest to `prefer_end` wins, then the leftmost.
pub fn best_approx_match(
    pattern: &[char],
    text: &[char],
    max_distance: usize,
    prefer_end: usize,
) -> Option<ApproxMatch> {
    if pattern.is_empty() {
        return None;
    }
    let m = pattern.len();
    // column-wise DP over text positions; col[i] = best distance of pattern[..i]
    // ending at the current text position
    let mut col: Vec<usize> = (0..=m).collect();
    let mut best: Option<ApproxMatch> = None;
    let consider = |end: usize, d: usize, best: &mut Option<ApproxMatch>| {
        if d > max_distance {
            return;
        }
        let better = match best {
            None => true,
            Some(b) => d < b.distance || (d == b.distance && end.abs_diff(prefer_end) < b.end.abs_diff(prefer_end)),
        };
        if better {
            *best = Some(ApproxMatch { end, distance: d });
        }
    };
    consider(0, col[m], &mut best);
    for (j, tc) in text.iter().enumerate() {
        let mut diag = col[0];
        col[0] = 0;
        for i in 1..=m {
            let up = col[i];
            let sub = diag + usize::from(pattern[i - 1] != *tc);
            col[i] = sub.min(up + 1).min(col[i - 1] + 1);
            diag = up;
        }
        consider(j + 1, col[m], &mut best);
    }
    best
}
