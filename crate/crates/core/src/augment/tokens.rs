use super::AugmentError;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Token ids bounded by a vocabulary size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenSequence {
    tokens: Vec<u32>,
    vocab_size: u32,
}

impl TokenSequence {
    pub fn new(tokens: Vec<u32>, vocab_size: u32) -> Result<Self, AugmentError> {
        if let Some(&id) = tokens.iter().find(|&&id| id >= vocab_size) {
            return Err(AugmentError::TokenOutOfRange { id, vocab_size });
        }
        Ok(Self { tokens, vocab_size })
    }

    pub fn tokens(&self) -> &[u32] {
        &self.tokens
    }

    pub fn vocab_size(&self) -> u32 {
        self.vocab_size
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Seeded form of [`perturb_tokens_with`].
pub fn perturb_tokens(seq: &TokenSequence, threshold: f64, seed: u64) -> Result<TokenSequence, AugmentError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    perturb_tokens_with(seq, threshold, &mut rng).map(|(out, _)| out)
}

/// Repeatedly draws u in [0, 1); while u < `threshold`, one uniformly chosen position is
/// overwritten with a uniformly chosen token id. Returns the sequence and the replacement count.
pub fn perturb_tokens_with<R: RngCore + ?Sized>(
    seq: &TokenSequence,
    threshold: f64,
    rng: &mut R,
) -> Result<(TokenSequence, usize), AugmentError> {
    if seq.is_empty() {
        return Err(AugmentError::EmptySequence);
    }
    if !(0.0..1.0).contains(&threshold) {
        return Err(super::invalid(format!("threshold must be in [0, 1), got {threshold}")));
    }
    let mut out = seq.clone();
    let mut count = 0;
    while rng.random::<f64>() < threshold {
        let pos = rng.random_range(0..out.tokens.len());
        out.tokens[pos] = rng.random_range(0..out.vocab_size);
        count += 1;
    }
    Ok((out, count))
}
