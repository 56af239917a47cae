//! Maxwell-Boltzmann versus Bose-Einstein statistics for `N` identical
//! entities distributed over `M` cells.
//!
//! A configuration is an occupation vector `(n_1, …, n_M)` with `Σ n_i = N`.
//! Maxwell-Boltzmann treats the entities as distinguishable, weighting a
//! configuration by its multinomial coefficient over `M^N`. Bose-Einstein
//! weights every configuration equally.

use crate::error::{Error, Result};

/// Default cap on the number of configurations.
pub const DEFAULT_CONFIGURATION_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OccupationDistributions {
    pub n: usize,
    pub m: usize,
    /// In descending lexicographic order, e.g. `(2,0), (1,1), (0,2)`.
    pub configurations: Vec<Vec<usize>>,
    pub maxwell_boltzmann: Vec<f64>,
    pub bose_einstein: Vec<f64>,
    /// Log-likelihood of the supplied counts, `(MB, BE)`.
    pub log_likelihood: Option<(f64, f64)>,
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// `C(N + M − 1, M − 1)`.
pub fn configuration_count(n: usize, m: usize) -> Option<u128> {
    binomial((n + m - 1) as u128, (m - 1) as u128)
}

fn enumerate(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, cells: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cells == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=remaining).rev() {
            prefix.push(k);
            rec(remaining - k, cells - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, m, &mut Vec::with_capacity(m), &mut out);
    out
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// Multinomial probability under uniform cell probabilities, exact in
/// integers while `M^N` fits in `u128`.
fn maxwell_boltzmann_weight(config: &[usize], n: usize, m: usize) -> f64 {
    let total = (m as u128).checked_pow(n as u32);
    let mut coefficient: Option<u128> = Some(1);
    let mut placed = 0u128;
    for &k in config {
        placed += k as u128;
        coefficient = coefficient.and_then(|c| binomial(placed, k as u128).and_then(|b| c.checked_mul(b)));
    }
    match (coefficient, total) {
        (Some(c), Some(t)) => c as f64 / t as f64,
        _ => {
            let ln = ln_factorial(n) - config.iter().map(|&k| ln_factorial(k)).sum::<f64>()
                - n as f64 * (m as f64).ln();
            ln.exp()
        }
    }
}

/// Both distributions over all configurations, plus the log-likelihood of
/// `counts` (one count per configuration, same order) when supplied.
pub fn identical_concepts_distributions(
    n: usize,
    m: usize,
    counts: Option<&[u64]>,
    cap: u128,
) -> Result<OccupationDistributions> {
    if n < 1 || m < 2 {
        return Err(Error::InvalidArgument(format!(
            "need N >= 1 and M >= 2, got N = {n}, M = {m}"
        )));
    }
    let size = configuration_count(n, m).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    let configurations = enumerate(n, m);
    let maxwell_boltzmann: Vec<f64> = configurations
        .iter()
        .map(|c| maxwell_boltzmann_weight(c, n, m))
        .collect();
    let uniform = 1.0 / size as f64;
    let bose_einstein = vec![uniform; configurations.len()];

    let log_likelihood = match counts {
        None => None,
        Some(c) => {
            if c.len() != configurations.len() {
                return Err(Error::InvalidArgument(format!(
                    "{} counts for {} configurations",
                    c.len(),
                    configurations.len()
                )));
            }
            let ll = |p: &[f64]| -> f64 {
                c.iter()
                    .zip(p)
                    .filter(|(k, _)| **k > 0)
                    .map(|(&k, &q)| k as f64 * q.ln())
                    .sum()
            };
            Some((ll(&maxwell_boltzmann), ll(&bose_einstein)))
        }
    };

    Ok(OccupationDistributions {
        n,
        m,
        configurations,
        maxwell_boltzmann,
        bose_einstein,
        log_likelihood,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_entities_two_cells() {
        let d = identical_concepts_distributions(2, 2, None, DEFAULT_CONFIGURATION_CAP).unwrap();
        assert_eq!(d.configurations, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(d.maxwell_boltzmann, vec![0.25, 0.5, 0.25]);
        assert_eq!(d.bose_einstein, vec![1.0 / 3.0; 3]);
    }

    #[test]
    fn eleven_animals_shape() {
        let d = identical_concepts_distributions(11, 2, None, DEFAULT_CONFIGURATION_CAP).unwrap();
        assert_eq!(d.configurations.len(), 12);
        for (k, p) in d.maxwell_boltzmann.iter().enumerate() {
            let want = binomial(11, k as u128).unwrap() as f64 / 2048.0;
            assert!((p - want).abs() < 1e-15);
        }
    }

    #[test]
    fn log_likelihood_and_cap() {
        let counts = [1, 2, 1];
        let d = identical_concepts_distributions(2, 2, Some(&counts), DEFAULT_CONFIGURATION_CAP).unwrap();
        let (mb, be) = d.log_likelihood.unwrap();
        assert!((mb - (2.0 * 0.25f64.ln() + 2.0 * 0.5f64.ln())).abs() < 1e-12);
        assert!((be - 4.0 * (1.0f64 / 3.0).ln()).abs() < 1e-12);
        assert!(matches!(
            identical_concepts_distributions(30, 10, None, 1000),
            Err(Error::TooLarge { .. })
        ));
        assert!(identical_concepts_distributions(2, 2, Some(&[1, 2]), 100).is_err());
    }

    #[test]
    fn lognormal_fallback_matches_exact() {
        let config = [3, 2, 1];
        let exact = maxwell_boltzmann_weight(&config, 6, 3);
        let ln = ln_factorial(6) - ln_factorial(3) - ln_factorial(2) - 6.0 * 3f64.ln();
        assert!((exact - ln.exp()).abs() < 1e-14);
    }
}
