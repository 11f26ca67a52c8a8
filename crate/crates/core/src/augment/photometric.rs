use super::image::clamp_u8;
use super::{invalid, AugmentError, GrayImage};
use image::codecs::jpeg::JpegEncoder;
use rand::Rng;
use rand_distr::{Distribution, Normal};

/// Adds i.i.d. N(0, sigma²) noise to every pixel and clamps to [0, 255].
pub fn gaussian_noise<R: Rng + ?Sized>(img: &GrayImage, sigma: f64, rng: &mut R) -> Result<GrayImage, AugmentError> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(invalid(format!("noise sigma must be >= 0, got {sigma}")));
    }
    if sigma == 0.0 {
        return Ok(img.clone());
    }
    let normal = Normal::new(0.0, sigma).map_err(|e| invalid(e.to_string()))?;
    let pixels = img
        .pixels()
        .iter()
        .map(|&p| clamp_u8(f64::from(p) + normal.sample(rng)))
        .collect();
    GrayImage::new(img.width(), img.height(), pixels)
}

/// Normalized Gaussian taps over radius ⌈3σ⌉.
pub(crate) fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil() as isize;
    let taps: Vec<f64> = (-radius..=radius)
        .map(|i| (-((i * i) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = taps.iter().sum();
    taps.into_iter().map(|t| t / sum).collect()
}

/// Separable convolution of a real-valued field with edge replication.
pub(crate) fn convolve_separable(field: &[f64], width: usize, height: usize, kernel: &[f64]) -> Vec<f64> {
    let r = (kernel.len() / 2) as isize;
    let clamp = |v: isize, n: usize| v.clamp(0, n as isize - 1) as usize;
    let mut rows = vec![0.0; field.len()];
    for y in 0..height {
        for x in 0..width {
            rows[y * width + x] = kernel
                .iter()
                .enumerate()
                .map(|(k, &w)| w * field[y * width + clamp(x as isize + k as isize - r, width)])
                .sum();
        }
    }
    let mut out = vec![0.0; field.len()];
    for y in 0..height {
        for x in 0..width {
            out[y * width + x] = kernel
                .iter()
                .enumerate()
                .map(|(k, &w)| w * rows[clamp(y as isize + k as isize - r, height) * width + x])
                .sum();
        }
    }
    out
}

pub fn gaussian_blur(img: &GrayImage, sigma: f64) -> Result<GrayImage, AugmentError> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(invalid(format!("blur sigma must be >= 0, got {sigma}")));
    }
    if sigma == 0.0 {
        return Ok(img.clone());
    }
    let field: Vec<f64> = img.pixels().iter().map(|&p| f64::from(p)).collect();
    let out = convolve_separable(&field, img.width(), img.height(), &gaussian_kernel(sigma));
    GrayImage::new(img.width(), img.height(), out.into_iter().map(clamp_u8).collect())
}

/// Pixels at or above `threshold` become 255, the rest 0.
pub fn bitmap(img: &GrayImage, threshold: u8) -> GrayImage {
    let pixels = img
        .pixels()
        .iter()
        .map(|&p| if p >= threshold { 255 } else { 0 })
        .collect();
    GrayImage::new(img.width(), img.height(), pixels).expect("same dimensions")
}

/// JPEG encode/decode round trip. Quality 100 is treated as lossless and returns the input.
pub fn jpeg_compress(img: &GrayImage, quality: u8) -> Result<GrayImage, AugmentError> {
    if !(1..=100).contains(&quality) {
        return Err(invalid(format!(
            "compression quality must be in [1, 100], got {quality}"
        )));
    }
    if quality == 100 {
        return Ok(img.clone());
    }
    let mut buf = Vec::new();
    JpegEncoder::new_with_quality(&mut buf, quality)
        .encode_image(&img.to_image())
        .map_err(|e| AugmentError::Image(e.to_string()))?;
    GrayImage::decode(&buf)
}
