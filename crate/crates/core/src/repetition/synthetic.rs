use super::{LogitTrace, RepetitionError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Shape of a generated trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceKind {
    /// Noise around a slowly drifting mean.
    Clean,
    /// Clean prefix of `start` tokens, then one cycle of `period` values repeated with jitter.
    RepeatAfter { start: usize, period: usize },
    /// Clean prefix, then two cycles of `period` values alternating block by block, with
    /// occasional substituted values.
    Alternating { start: usize, period: usize },
}

const BASE_MEAN: f64 = 20.0;
const DRIFT_AMPLITUDE: f64 = 3.0;
const DRIFT_PERIOD: f64 = 500.0;
const CYCLE_MEAN: f64 = 25.0;
const JITTER_FRACTION: f64 = 0.1;
const SUBSTITUTION_RATE: f64 = 0.05;

fn normal(sd: f64) -> Normal<f64> {
    Normal::new(0.0, sd).expect("finite non-negative deviation")
}

/// Deterministic synthetic logit trace. `noise_sigma` is the deviation of the clean part;
/// cycle jitter is a tenth of it.
pub fn gen_synthetic_trace(
    kind: TraceKind,
    length: usize,
    noise_sigma: f64,
    seed: u64,
) -> Result<LogitTrace, RepetitionError> {
    if length == 0 {
        return Err(RepetitionError::EmptyTrace);
    }
    if !(noise_sigma >= 0.0 && noise_sigma.is_finite()) {
        return Err(RepetitionError::InvalidConfig(format!(
            "noise sigma must be >= 0, got {noise_sigma}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phase = rng.random_range(0.0..TAU);
    let clean = normal(noise_sigma);
    let jitter = normal(JITTER_FRACTION * noise_sigma);
    let unit = normal(1.0);
    let cycle = |rng: &mut ChaCha8Rng, period: usize| -> Vec<f64> {
        (0..period).map(|_| CYCLE_MEAN + unit.sample(rng)).collect()
    };
    let (start, cycles) = match kind {
        TraceKind::Clean => (length, Vec::new()),
        TraceKind::RepeatAfter { start, period } | TraceKind::Alternating { start, period } => {
            if period == 0 {
                return Err(RepetitionError::InvalidConfig("period must be at least 1".into()));
            }
            let count = if matches!(kind, TraceKind::Alternating { .. }) {
                2
            } else {
                1
            };
            (start.min(length), (0..count).map(|_| cycle(&mut rng, period)).collect())
        }
    };
    let mut values = Vec::with_capacity(length);
    for i in 0..start {
        let drift = DRIFT_AMPLITUDE * (TAU * i as f64 / DRIFT_PERIOD + phase).sin();
        values.push(BASE_MEAN + drift + clean.sample(&mut rng));
    }
    for i in start..length {
        let offset = i - start;
        let period = cycles[0].len();
        let block = (offset / period) % cycles.len();
        let mut v = cycles[block][offset % period];
        if cycles.len() > 1 && rng.random::<f64>() < SUBSTITUTION_RATE {
            v = CYCLE_MEAN + unit.sample(&mut rng);
        }
        values.push(v + jitter.sample(&mut rng));
    }
    LogitTrace::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_length_is_an_error() {
        assert_eq!(
            gen_synthetic_trace(TraceKind::Clean, 0, 1.0, 0),
            Err(RepetitionError::EmptyTrace)
        );
    }

    #[test]
    fn noiseless_repeat_is_exactly_periodic() {
        let kind = TraceKind::RepeatAfter { start: 300, period: 40 };
        let t = gen_synthetic_trace(kind, 1000, 0.0, 4).unwrap();
        let v = t.values();
        for i in 300..960 {
            assert_eq!(v[i], v[i + 40]);
        }
        assert_ne!(v[300], v[301]);
    }

    #[test]
    fn same_seed_same_trace() {
        for kind in [
            TraceKind::Clean,
            TraceKind::RepeatAfter { start: 100, period: 30 },
            TraceKind::Alternating { start: 100, period: 30 },
        ] {
            let a = gen_synthetic_trace(kind, 500, 4.0, 21).unwrap();
            assert_eq!(a, gen_synthetic_trace(kind, 500, 4.0, 21).unwrap());
            assert_ne!(a, gen_synthetic_trace(kind, 500, 4.0, 22).unwrap());
        }
    }

    #[test]
    fn alternating_uses_two_cycles() {
        let kind = TraceKind::Alternating { start: 0, period: 20 };
        let t = gen_synthetic_trace(kind, 200, 0.0, 1).unwrap();
        let v = t.values();
        let differs = (0..20).filter(|&k| v[k] != v[k + 20]).count();
        assert!(differs >= 15);
    }
}
