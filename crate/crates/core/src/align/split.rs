//! Page-break search over predicted paragraph pages.

use super::AlignError;

/// Interval-weighted Gini impurity of pages `page` and `page + 1` over the
/// half-open range `[a, b)`: `(b - a) * (1 - p(page)^2 - p(page+1)^2)`.
pub fn gini_measure(predictions: &[u32], a: usize, b: usize, page: u32) -> Result<f64, AlignError> {
    if a >= b || b > predictions.len() {
        return Err(AlignError::EmptyInterval { a, b });
    }
    let n = (b - a) as f64;
    let slice = &predictions[a..b];
    let p = slice.iter().filter(|&&x| x == page).count() as f64 / n;
    let q = slice.iter().filter(|&&x| x == page + 1).count() as f64 / n;
    Ok(n * (1.0 - p * p - q * q))
}

/// Position `t` in `(a, b)` minimising `G[a,t) + G[t,b)`; ties resolve to
/// the smallest `t`.
///
/// With `n1 = t - a`, `n2 = b - t` and page counts `c` on each side the
/// objective is `(b - a) - (c1i² + c1j²)/n1 - (c2i² + c2j²)/n2`, so the
/// search maximises the rational `s1/n1 + s2/n2` with exact integer
/// comparisons from prefix counts.
pub fn best_split(predictions: &[u32], a: usize, b: usize, page: u32) -> Result<usize, AlignError> {
    if b > predictions.len() || b < a + 2 {
        return Err(AlignError::IntervalTooSmall { a, b });
    }
    let len = b - a;
    // prefix counts of `page` and `page + 1` within [a, b)
    let mut pi = vec![0u64; len + 1];
    let mut pj = vec![0u64; len + 1];
    for (k, &x) in predictions[a..b].iter().enumerate() {
        pi[k + 1] = pi[k] + u64::from(x == page);
        pj[k + 1] = pj[k] + u64::from(x == page + 1);
    }
    let (ti, tj) = (pi[len], pj[len]);
    let mut best_t = a + 1;
    // best value kept as a fraction num / den
    let mut best: Option<(u128, u128)> = None;
    for k in 1..len {
        let (n1, n2) = (k as u128, (len - k) as u128);
        let (li, lj) = (pi[k] as u128, pj[k] as u128);
        let (ri, rj) = ((ti - pi[k]) as u128, (tj - pj[k]) as u128);
        let s1 = li * li + lj * lj;
        let s2 = ri * ri + rj * rj;
        let num = s1 * n2 + s2 * n1;
        let den = n1 * n2;
        let better = match best {
            None => true,
            Some((bn, bd)) => num * bd > bn * den,
        };
        if better {
            best = Some((num, den));
            best_t = a + k;
        }
    }
    Ok(best_t)
}

/// Break positions for `num_pages` pages: break `i` is the first paragraph
/// of page `i + 1`, searched in `[previous break, len)`.
///
/// Each search sees two classes. Predictions below page `i` cannot belong to
/// the searched range and are dropped; predictions beyond `i + 1` count as
/// `i + 1`, so paragraphs of later pages do not pull the break forward.
///
/// Breaks are kept strictly increasing and leave at least one paragraph for
/// every later page.
pub fn split_document(predictions: &[u32], num_pages: usize) -> Result<Vec<usize>, AlignError> {
    if num_pages == 0 {
        return Err(AlignError::NoObservations);
    }
    let len = predictions.len();
    if num_pages > len {
        return Err(AlignError::TooManyPages {
            pages: num_pages,
            paragraphs: len,
        });
    }
    let mut breaks = Vec::with_capacity(num_pages - 1);
    let mut prev = 0usize;
    for page in 1..num_pages {
        let remaining_pages = num_pages - page;
        let upper = len - remaining_pages;
        let page = page as u32;
        let kept: Vec<usize> = (prev..len).filter(|&k| predictions[k] >= page).collect();
        let t = if kept.len() >= 2 {
            let binary: Vec<u32> = kept.iter().map(|&k| predictions[k].min(page + 1)).collect();
            kept[best_split(&binary, 0, binary.len(), page)?]
        } else {
            prev + 1
        };
        let lower = if page == 1 { 1 } else { prev + 1 };
        let t = t.max(lower).min(upper);
        breaks.push(t);
        prev = t;
    }
    Ok(breaks)
}
