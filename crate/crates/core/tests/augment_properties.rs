use docpair_core::augment::{
    apply_pipeline, bitmap, elastic_transform, gaussian_blur, gaussian_noise, grid_distortion, jpeg_compress,
    morph_filter, perturb_tokens_with, AugmentConfig, GrayImage, MorphMode, TokenSequence,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn image() -> impl Strategy<Value = GrayImage> {
    (1usize..20, 1usize..20).prop_flat_map(|(w, h)| {
        prop::collection::vec(any::<u8>(), w * h).prop_map(move |px| GrayImage::new(w, h, px).unwrap())
    })
}

fn dims(img: &GrayImage) -> (usize, usize) {
    (img.width(), img.height())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn erode_below_dilate_above(img in image(), k in prop::sample::select(vec![1usize, 3, 5, 7])) {
        let lo = morph_filter(&img, MorphMode::Erode, k).unwrap();
        let hi = morph_filter(&img, MorphMode::Dilate, k).unwrap();
        for ((l, x), h) in lo.pixels().iter().zip(img.pixels()).zip(hi.pixels()) {
            prop_assert!(l <= x && x <= h);
        }
    }

    #[test]
    fn bitmap_is_idempotent(img in image(), t in any::<u8>()) {
        let once = bitmap(&img, t);
        prop_assert_eq!(bitmap(&once, t), once.clone());
        prop_assert!(once.pixels().iter().all(|&p| p == 0 || p == 255));
    }

    #[test]
    fn every_transform_preserves_dimensions(img in image(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = dims(&img);
        prop_assert_eq!(dims(&morph_filter(&img, MorphMode::Erode, 3).unwrap()), d);
        prop_assert_eq!(dims(&gaussian_noise(&img, 5.0, &mut rng).unwrap()), d);
        prop_assert_eq!(dims(&gaussian_blur(&img, 1.5).unwrap()), d);
        prop_assert_eq!(dims(&jpeg_compress(&img, 40).unwrap()), d);
        prop_assert_eq!(dims(&grid_distortion(&img, 3, 0.2, &mut rng).unwrap()), d);
        prop_assert_eq!(dims(&elastic_transform(&img, 10.0, 2.0, &mut rng).unwrap()), d);
        let cfg = AugmentConfig { seed, ..AugmentConfig::default().with_all_probabilities(1.0) };
        prop_assert_eq!(dims(&apply_pipeline(&img, &cfg).unwrap()), d);
    }

    #[test]
    fn pipeline_is_deterministic(img in image(), seed in any::<u64>(), p in 0.0f64..=1.0) {
        let cfg = AugmentConfig { seed, ..AugmentConfig::default().with_all_probabilities(p) };
        prop_assert_eq!(apply_pipeline(&img, &cfg).unwrap(), apply_pipeline(&img, &cfg).unwrap());
    }
}

/// Replacement counts under threshold q follow P(K = k) = q^k (1 − q).
#[test]
fn replacement_counts_follow_geometric_law() {
    let seq = TokenSequence::new((0..64).collect(), 50_000).unwrap();
    let q = 0.1;
    let runs = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut counts = [0usize; 4];
    let mut total = 0usize;
    for _ in 0..runs {
        let (_, k) = perturb_tokens_with(&seq, q, &mut rng).unwrap();
        total += k;
        counts[k.min(3)] += 1;
    }
    let mean = total as f64 / runs as f64;
    assert!((mean - q / (1.0 - q)).abs() < 0.01, "mean {mean}");
    let expected: Vec<f64> = (0..4)
        .map(|k| if k < 3 { q.powi(k) * (1.0 - q) } else { q.powi(3) } * runs as f64)
        .collect();
    let stat: f64 = counts
        .iter()
        .zip(&expected)
        .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
        .sum();
    let p_value = 1.0 - ChiSquared::new(3.0).unwrap().cdf(stat);
    assert!(p_value > 0.01, "chi-square {stat}, p {p_value}");
}
