use super::photometric::{convolve_separable, gaussian_kernel};
use super::{invalid, AugmentError, GrayImage};
use rand::Rng;

/// Largest allowed node offset as a fraction of the cell size.
pub const MAX_GRID_DISTORT: f64 = 0.25;

/// Perturbs the interior nodes of a `cells`×`cells` lattice by uniform offsets of at most
/// `distort_limit` cell sizes and remaps the image bilinearly. Border nodes stay fixed.
pub fn grid_distortion<R: Rng + ?Sized>(
    img: &GrayImage,
    cells: usize,
    distort_limit: f64,
    rng: &mut R,
) -> Result<GrayImage, AugmentError> {
    if cells < 2 {
        return Err(invalid(format!("grid needs at least 2 cells, got {cells}")));
    }
    if !(0.0..=MAX_GRID_DISTORT).contains(&distort_limit) {
        return Err(invalid(format!(
            "grid distort limit must be in [0, {MAX_GRID_DISTORT}], got {distort_limit}"
        )));
    }
    let (w, h) = (img.width(), img.height());
    let cell_w = (w - 1) as f64 / cells as f64;
    let cell_h = (h - 1) as f64 / cells as f64;
    let n = cells + 1;
    let mut nodes = vec![(0.0, 0.0); n * n];
    for j in 0..n {
        for i in 0..n {
            let mut nx = i as f64 * cell_w;
            let mut ny = j as f64 * cell_h;
            if i > 0 && i < cells && j > 0 && j < cells && distort_limit > 0.0 {
                nx += rng.random_range(-distort_limit..=distort_limit) * cell_w;
                ny += rng.random_range(-distort_limit..=distort_limit) * cell_h;
            }
            nodes[j * n + i] = (nx, ny);
        }
    }
    let locate = |v: usize, cell: f64| -> (usize, f64) {
        if cell <= 0.0 {
            return (0, 0.0);
        }
        let g = v as f64 / cell;
        let idx = (g.floor() as usize).min(cells - 1);
        (idx, g - idx as f64)
    };
    GrayImage::from_fn(w, h, |x, y| {
        let (i, fx) = locate(x, cell_w);
        let (j, fy) = locate(y, cell_h);
        let p = |di: usize, dj: usize| nodes[(j + dj) * n + i + di];
        let lerp = |a: (f64, f64), b: (f64, f64), t: f64| (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t);
        let top = lerp(p(0, 0), p(1, 0), fx);
        let bottom = lerp(p(0, 1), p(1, 1), fx);
        let (sx, sy) = lerp(top, bottom, fy);
        img.sample_bilinear(sx, sy)
    })
}

/// Random displacement fields, uniform in [-1, 1], smoothed by a Gaussian of width `sigma`
/// and scaled by `alpha`; the image is resampled bilinearly at the displaced positions.
pub fn elastic_transform<R: Rng + ?Sized>(
    img: &GrayImage,
    alpha: f64,
    sigma: f64,
    rng: &mut R,
) -> Result<GrayImage, AugmentError> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(invalid(format!("elastic alpha must be >= 0, got {alpha}")));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(invalid(format!("elastic sigma must be > 0, got {sigma}")));
    }
    let (w, h) = (img.width(), img.height());
    let mut field = || -> Vec<f64> { (0..w * h).map(|_| rng.random_range(-1.0..=1.0)).collect() };
    let raw_x = field();
    let raw_y = field();
    let kernel = gaussian_kernel(sigma);
    let dx = convolve_separable(&raw_x, w, h, &kernel);
    let dy = convolve_separable(&raw_y, w, h, &kernel);
    GrayImage::from_fn(w, h, |x, y| {
        let k = y * w + x;
        img.sample_bilinear(x as f64 + alpha * dx[k], y as f64 + alpha * dy[k])
    })
}
