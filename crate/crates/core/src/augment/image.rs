use super::AugmentError;
use std::path::Path;

/// 8-bit grayscale image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self, AugmentError> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return Err(AugmentError::InvalidDimensions {
                width,
                height,
                len: pixels.len(),
            });
        }
        Ok(Self { width, height, pixels })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self, AugmentError> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self, AugmentError> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    /// Pixel with edge replication for out-of-range coordinates.
    pub fn get_clamped(&self, x: isize, y: isize) -> u8 {
        let x = x.clamp(0, self.width as isize - 1) as usize;
        let y = y.clamp(0, self.height as isize - 1) as usize;
        self.get(x, y)
    }

    /// Bilinear sample at a real-valued position with edge replication.
    pub(crate) fn sample_bilinear(&self, x: f64, y: f64) -> u8 {
        let x0 = x.floor();
        let y0 = y.floor();
        let fx = x - x0;
        let fy = y - y0;
        let (xi, yi) = (x0 as isize, y0 as isize);
        let p00 = f64::from(self.get_clamped(xi, yi));
        let p10 = f64::from(self.get_clamped(xi + 1, yi));
        let p01 = f64::from(self.get_clamped(xi, yi + 1));
        let p11 = f64::from(self.get_clamped(xi + 1, yi + 1));
        let v = (1.0 - fy) * ((1.0 - fx) * p00 + fx * p10) + fy * ((1.0 - fx) * p01 + fx * p11);
        clamp_u8(v)
    }

    pub fn mean(&self) -> f64 {
        self.pixels.iter().map(|&p| f64::from(p)).sum::<f64>() / self.pixels.len() as f64
    }

    pub fn load_png(path: &Path) -> Result<Self, AugmentError> {
        let img = image::open(path).map_err(|e| AugmentError::Image(format!("{}: {e}", path.display())))?;
        Self::from_dynamic(img)
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, AugmentError> {
        let img = image::load_from_memory(bytes).map_err(|e| AugmentError::Image(e.to_string()))?;
        Self::from_dynamic(img)
    }

    fn from_dynamic(img: image::DynamicImage) -> Result<Self, AugmentError> {
        let luma = img.into_luma8();
        let (w, h) = luma.dimensions();
        Self::new(w as usize, h as usize, luma.into_raw())
    }

    pub fn save_png(&self, path: &Path) -> Result<(), AugmentError> {
        self.to_image()
            .save_with_format(path, image::ImageFormat::Png)
            .map_err(|e| AugmentError::Image(format!("{}: {e}", path.display())))
    }

    pub(crate) fn to_image(&self) -> image::GrayImage {
        image::GrayImage::from_raw(self.width as u32, self.height as u32, self.pixels.clone())
            .expect("dimensions checked at construction")
    }
}

pub(crate) fn clamp_u8(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}
