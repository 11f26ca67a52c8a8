use super::{AugmentError, GrayImage};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphMode {
    Erode,
    Dilate,
}

/// Square-window minimum (erode) or maximum (dilate) filter with edge replication.
///
/// The square window is separable, so rows and columns are filtered in turn.
pub fn morph_filter(img: &GrayImage, mode: MorphMode, kernel: usize) -> Result<GrayImage, AugmentError> {
    if kernel == 0 || kernel.is_multiple_of(2) {
        return Err(AugmentError::EvenKernel(kernel));
    }
    if kernel == 1 {
        return Ok(img.clone());
    }
    let r = (kernel / 2) as isize;
    let pick = |a: u8, b: u8| match mode {
        MorphMode::Erode => a.min(b),
        MorphMode::Dilate => a.max(b),
    };
    let (w, h) = (img.width(), img.height());
    let rows = GrayImage::from_fn(w, h, |x, y| {
        (-r..=r)
            .map(|d| img.get_clamped(x as isize + d, y as isize))
            .reduce(pick)
            .expect("window is non-empty")
    })?;
    GrayImage::from_fn(w, h, |x, y| {
        (-r..=r)
            .map(|d| rows.get_clamped(x as isize, y as isize + d))
            .reduce(pick)
            .expect("window is non-empty")
    })
}
