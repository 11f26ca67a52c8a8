use super::RepetitionError;

/// Population variance of every length-`window` slice, one value per start position.
pub fn var_win(values: &[f64], window: usize) -> Result<Vec<f64>, RepetitionError> {
    if window < 2 {
        return Err(RepetitionError::WindowTooSmall(window));
    }
    if values.len() < window {
        return Err(RepetitionError::TraceTooShort {
            len: values.len(),
            window,
        });
    }
    let b = window as f64;
    Ok(values
        .windows(window)
        .map(|w| {
            let mean = w.iter().sum::<f64>() / b;
            w.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / b
        })
        .collect())
}

/// Population variance of every suffix of `signal`, via a reverse Welford pass.
pub fn var_end(signal: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; signal.len()];
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (k, (i, &v)) in signal.iter().enumerate().rev().enumerate() {
        let n = (k + 1) as f64;
        let delta = v - mean;
        mean += delta / n;
        m2 += delta * (v - mean);
        out[i] = (m2 / n).max(0.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pop_var(xs: &[f64]) -> f64 {
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / xs.len() as f64
    }

    #[test]
    fn window_errors() {
        assert_eq!(var_win(&[1.0; 5], 1), Err(RepetitionError::WindowTooSmall(1)));
        assert_eq!(
            var_win(&[1.0; 5], 6),
            Err(RepetitionError::TraceTooShort { len: 5, window: 6 })
        );
    }

    #[test]
    fn spot_values() {
        assert_eq!(var_win(&[4.0; 20], 15).unwrap(), vec![0.0; 6]);
        let alt: Vec<f64> = (0..10).map(|i| if i % 2 == 0 { 0.0 } else { 2.0 }).collect();
        assert_eq!(var_win(&alt, 2).unwrap(), vec![1.0; 9]);
        assert_eq!(var_end(&[0.0, 2.0]), vec![1.0, 0.0]);
        assert_eq!(var_end(&[3.0; 7]), vec![0.0; 7]);
        assert!(var_end(&[]).is_empty());
    }

    #[test]
    fn matches_direct_suffix_variance() {
        let signal: Vec<f64> = (0..200).map(|i| ((i * 7919) % 113) as f64 * 0.37).collect();
        let fast = var_end(&signal);
        for x in 0..signal.len() {
            assert!((fast[x] - pop_var(&signal[x..])).abs() < 1e-9);
        }
    }
}
