use super::{
    bitmap, elastic_transform, gaussian_blur, gaussian_noise, grid_distortion, invalid, jpeg_compress, morph_filter,
    AugmentError, GrayImage, MorphMode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Per-transform probabilities and parameters for [`apply_pipeline`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AugmentConfig {
    pub erosion_prob: f64,
    pub erosion_kernel: usize,
    pub dilation_prob: f64,
    pub dilation_kernel: usize,
    pub noise_prob: f64,
    pub noise_sigma: f64,
    pub blur_prob: f64,
    pub blur_sigma: f64,
    pub bitmap_prob: f64,
    pub bitmap_threshold: u8,
    pub compression_prob: f64,
    pub compression_quality: u8,
    pub grid_prob: f64,
    pub grid_cells: usize,
    /// Maximum node offset as a fraction of the cell size, at most 0.25.
    pub grid_distort_limit: f64,
    pub elastic_prob: f64,
    pub elastic_alpha: f64,
    pub elastic_sigma: f64,
    pub seed: u64,
}

impl Default for AugmentConfig {
    fn default() -> Self {
        Self {
            erosion_prob: 0.1,
            erosion_kernel: 3,
            dilation_prob: 0.1,
            dilation_kernel: 3,
            noise_prob: 0.1,
            noise_sigma: 8.0,
            blur_prob: 0.1,
            blur_sigma: 1.0,
            bitmap_prob: 0.1,
            bitmap_threshold: 128,
            compression_prob: 0.1,
            compression_quality: 50,
            grid_prob: 0.1,
            grid_cells: 5,
            grid_distort_limit: 0.1,
            elastic_prob: 0.1,
            elastic_alpha: 34.0,
            elastic_sigma: 4.0,
            seed: 0,
        }
    }
}

impl AugmentConfig {
    /// Every probability set to `p`, parameters unchanged.
    pub fn with_all_probabilities(mut self, p: f64) -> Self {
        for prob in self.probabilities_mut() {
            *prob = p;
        }
        self
    }

    fn probabilities_mut(&mut self) -> [&mut f64; 8] {
        [
            &mut self.erosion_prob,
            &mut self.dilation_prob,
            &mut self.noise_prob,
            &mut self.blur_prob,
            &mut self.bitmap_prob,
            &mut self.compression_prob,
            &mut self.grid_prob,
            &mut self.elastic_prob,
        ]
    }

    pub fn validate(&self) -> Result<(), AugmentError> {
        let probs = [
            ("erosion_prob", self.erosion_prob),
            ("dilation_prob", self.dilation_prob),
            ("noise_prob", self.noise_prob),
            ("blur_prob", self.blur_prob),
            ("bitmap_prob", self.bitmap_prob),
            ("compression_prob", self.compression_prob),
            ("grid_prob", self.grid_prob),
            ("elastic_prob", self.elastic_prob),
        ];
        for (name, p) in probs {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(format!("{name} must be in [0, 1], got {p}")));
            }
        }
        for k in [self.erosion_kernel, self.dilation_kernel] {
            if k == 0 || k.is_multiple_of(2) {
                return Err(AugmentError::EvenKernel(k));
            }
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return Err(invalid("noise_sigma must be >= 0"));
        }
        if !(self.blur_sigma >= 0.0 && self.blur_sigma.is_finite()) {
            return Err(invalid("blur_sigma must be >= 0"));
        }
        if !(1..=100).contains(&self.compression_quality) {
            return Err(invalid("compression_quality must be in [1, 100]"));
        }
        if self.grid_cells < 2 {
            return Err(invalid("grid_cells must be >= 2"));
        }
        if !(0.0..=super::geometric::MAX_GRID_DISTORT).contains(&self.grid_distort_limit) {
            return Err(invalid("grid_distort_limit must be in [0, 0.25]"));
        }
        if !(self.elastic_alpha >= 0.0 && self.elastic_alpha.is_finite()) {
            return Err(invalid("elastic_alpha must be >= 0"));
        }
        if !(self.elastic_sigma > 0.0 && self.elastic_sigma.is_finite()) {
            return Err(invalid("elastic_sigma must be > 0"));
        }
        Ok(())
    }
}

/// Runs erosion, dilation, noise, blur, bitmap, compression, grid distortion and elastic
/// transform in that order. Each stage draws one uniform number from a generator seeded with
/// `config.seed` and applies when the draw is below its probability.
pub fn apply_pipeline(img: &GrayImage, config: &AugmentConfig) -> Result<GrayImage, AugmentError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = img.clone();
    if rng.random::<f64>() < config.erosion_prob {
        out = morph_filter(&out, MorphMode::Erode, config.erosion_kernel)?;
    }
    if rng.random::<f64>() < config.dilation_prob {
        out = morph_filter(&out, MorphMode::Dilate, config.dilation_kernel)?;
    }
    if rng.random::<f64>() < config.noise_prob {
        out = gaussian_noise(&out, config.noise_sigma, &mut rng)?;
    }
    if rng.random::<f64>() < config.blur_prob {
        out = gaussian_blur(&out, config.blur_sigma)?;
    }
    if rng.random::<f64>() < config.bitmap_prob {
        out = bitmap(&out, config.bitmap_threshold);
    }
    if rng.random::<f64>() < config.compression_prob {
        out = jpeg_compress(&out, config.compression_quality)?;
    }
    if rng.random::<f64>() < config.grid_prob {
        out = grid_distortion(&out, config.grid_cells, config.grid_distort_limit, &mut rng)?;
    }
    if rng.random::<f64>() < config.elastic_prob {
        out = elastic_transform(&out, config.elastic_alpha, config.elastic_sigma, &mut rng)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn page() -> GrayImage {
        GrayImage::from_fn(48, 48, |x, y| if (x / 3 + y / 5) % 4 == 0 { 20 } else { 235 }).unwrap()
    }

    pub(crate) fn identity_config() -> AugmentConfig {
        AugmentConfig {
            erosion_kernel: 1,
            dilation_kernel: 1,
            noise_sigma: 0.0,
            blur_sigma: 0.0,
            bitmap_threshold: 128,
            compression_quality: 100,
            grid_distort_limit: 0.0,
            elastic_alpha: 0.0,
            ..AugmentConfig::default()
        }
        .with_all_probabilities(1.0)
    }

    #[test]
    fn default_validates() {
        AugmentConfig::default().validate().unwrap();
        let bad = AugmentConfig {
            blur_prob: 1.5,
            ..AugmentConfig::default()
        };
        assert!(apply_pipeline(&page(), &bad).is_err());
        let even = AugmentConfig {
            dilation_kernel: 4,
            ..AugmentConfig::default()
        };
        assert_eq!(even.validate(), Err(AugmentError::EvenKernel(4)));
    }

    #[test]
    fn zero_probabilities_are_identity() {
        let cfg = AugmentConfig::default().with_all_probabilities(0.0);
        assert_eq!(apply_pipeline(&page(), &cfg).unwrap(), page());
    }

    #[test]
    fn identity_parameters_leave_bilevel_image_unchanged() {
        let img = bitmap(&page(), 128);
        assert_eq!(apply_pipeline(&img, &identity_config()).unwrap(), img);
    }

    #[test]
    fn same_seed_same_output() {
        let cfg = AugmentConfig {
            seed: 77,
            ..AugmentConfig::default().with_all_probabilities(0.5)
        };
        let a = apply_pipeline(&page(), &cfg).unwrap();
        assert_eq!(a, apply_pipeline(&page(), &cfg).unwrap());
        assert_eq!((a.width(), a.height()), (48, 48));
    }

    #[test]
    fn config_parses_from_partial_json() {
        let cfg: AugmentConfig = serde_json::from_str(r#"{"noise_prob": 0.5, "seed": 3}"#).unwrap();
        assert_eq!(cfg.noise_prob, 0.5);
        assert_eq!(cfg.erosion_prob, 0.1);
        assert!(serde_json::from_str::<AugmentConfig>(r#"{"noise": 1}"#).is_err());
    }
}
