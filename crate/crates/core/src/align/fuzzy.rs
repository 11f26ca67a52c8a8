//! Refining a coarse page break by approximate matching of the adjacent
//! PDF pages' boundary text.

use crate::distance::best_approx_match;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyParams {
    /// Characters searched on each side of the coarse position.
    pub window: usize,
    /// Largest accepted edit distance as a fraction of the fragment length.
    pub max_distance_ratio: f64,
}

impl Default for FuzzyParams {
    fn default() -> Self {
        Self {
            window: 2000,
            max_distance_ratio: 0.3,
        }
    }
}

/// A cut proposed by one fragment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cut {
    pub position: usize,
    /// Edit distance divided by the fragment length.
    pub distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    pub position: usize,
    pub score: f64,
    pub tail: Option<Cut>,
    pub head: Option<Cut>,
}

/// Whitespace-collapsed view of `chars[lo..hi]` with a map back to the
/// original indices.
struct NormalizedWindow {
    chars: Vec<char>,
    origin: Vec<usize>,
    hi: usize,
}

impl NormalizedWindow {
    fn new(chars: &[char], lo: usize, hi: usize) -> Self {
        let mut out = Vec::with_capacity(hi - lo);
        let mut origin = Vec::with_capacity(hi - lo);
        let mut in_ws = false;
        for (k, &c) in chars[lo..hi].iter().enumerate() {
            if c.is_whitespace() {
                if !in_ws {
                    out.push(' ');
                    origin.push(lo + k);
                }
                in_ws = true;
            } else {
                out.push(c);
                origin.push(lo + k);
                in_ws = false;
            }
        }
        Self { chars: out, origin, hi }
    }

    fn to_original(&self, idx: usize) -> usize {
        self.origin.get(idx).copied().unwrap_or(self.hi)
    }

    fn index_of_original(&self, pos: usize) -> usize {
        self.origin.partition_point(|&o| o < pos)
    }
}

fn normalize_fragment(text: &str) -> Vec<char> {
    let mut out = Vec::new();
    for word in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(word.chars());
    }
    out
}

fn skip_whitespace(chars: &[char], mut pos: usize) -> usize {
    while pos < chars.len() && chars[pos].is_whitespace() {
        pos += 1;
    }
    pos
}

/// Locates the break near `coarse_pos` (a character index into `source`).
///
/// `prev_tail` is the end of the previous PDF page and `next_head` the start
/// of the next one. The tail proposes a cut after its best match, the head a
/// cut at the start of its best match. Matching cuts score 1; otherwise the
/// closer match wins with score `1 - normalized distance`; without any
/// acceptable match the coarse position is kept with score 0.
pub fn refine_break(
    source: &str,
    coarse_pos: usize,
    prev_tail: &str,
    next_head: &str,
    params: &FuzzyParams,
) -> Refinement {
    let chars: Vec<char> = source.chars().collect();
    refine_break_chars(&chars, coarse_pos, prev_tail, next_head, params)
}

pub fn refine_break_chars(
    chars: &[char],
    coarse_pos: usize,
    prev_tail: &str,
    next_head: &str,
    params: &FuzzyParams,
) -> Refinement {
    let coarse_pos = coarse_pos.min(chars.len());
    let lo = coarse_pos.saturating_sub(params.window);
    let hi = (coarse_pos + params.window).min(chars.len());
    let win = NormalizedWindow::new(chars, lo, hi);
    let coarse_norm = win.index_of_original(coarse_pos);

    let tail_pat = normalize_fragment(prev_tail);
    let tail = if tail_pat.is_empty() {
        None
    } else {
        let max_d = (params.max_distance_ratio * tail_pat.len() as f64).floor() as usize;
        best_approx_match(&tail_pat, &win.chars, max_d, coarse_norm).map(|m| Cut {
            position: skip_whitespace(chars, win.to_original(m.end)),
            distance: m.distance as f64 / tail_pat.len() as f64,
        })
    };

    let head_pat: Vec<char> = normalize_fragment(next_head).into_iter().rev().collect();
    let head = if head_pat.is_empty() {
        None
    } else {
        let rev: Vec<char> = win.chars.iter().rev().copied().collect();
        let max_d = (params.max_distance_ratio * head_pat.len() as f64).floor() as usize;
        let prefer = rev.len() - coarse_norm;
        best_approx_match(&head_pat, &rev, max_d, prefer).map(|m| Cut {
            position: skip_whitespace(chars, win.to_original(rev.len() - m.end)),
            distance: m.distance as f64 / head_pat.len() as f64,
        })
    };

    let (position, score) = match (tail, head) {
        (Some(t), Some(h)) if t.position == h.position => (t.position, 1.0),
        (Some(t), Some(h)) => {
            let pick = if h.distance < t.distance { h } else { t };
            (pick.position, 1.0 - pick.distance)
        }
        (Some(c), None) | (None, Some(c)) => (c.position, 1.0 - c.distance),
        (None, None) => (coarse_pos, 0.0),
    };
    Refinement {
        position,
        score: score.clamp(0.0, 1.0),
        tail,
        head,
    }
}
