//! Document-image augmentations and token perturbation.
//!
//! Every operation is a pure function of its input, its parameters and an
//! explicit seed or generator.

mod geometric;
mod image;
mod morph;
mod photometric;
mod pipeline;
mod tokens;

pub use geometric::{elastic_transform, grid_distortion};
pub use image::GrayImage;
pub use morph::{morph_filter, MorphMode};
pub use photometric::{bitmap, gaussian_blur, gaussian_noise, jpeg_compress};
pub use pipeline::{apply_pipeline, AugmentConfig};
pub use tokens::{perturb_tokens, perturb_tokens_with, TokenSequence};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AugmentError {
    #[error("invalid image dimensions {width}x{height} for {len} pixels")]
    InvalidDimensions { width: usize, height: usize, len: usize },
    #[error("kernel size must be odd and at least 1, got {0}")]
    EvenKernel(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("token id {id} outside vocabulary of size {vocab_size}")]
    TokenOutOfRange { id: u32, vocab_size: u32 },
    #[error("token sequence is empty")]
    EmptySequence,
    #[error("image codec error: {0}")]
    Image(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> AugmentError {
    AugmentError::InvalidParameter(msg.into())
}
