//! One-dimensional ρ-membranes for two-outcome measurements.
//!
//! The measurement segment runs from the `no` vertex at `−1` to the `yes`
//! vertex at `+1`; the particle touches it at coordinate `e`. The membrane
//! breaks at a random point drawn from its density ρ. A break in `[−1, e]`
//! pulls the particle to `yes`, so `P(yes) = F(e)` with `F` the cumulative
//! distribution of ρ. The uniform membrane gives the Born value `(1 + e)/2`.

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};
use crate::rng::stream_rng;

/// Slack allowed on coordinates before they are rejected.
const COORD_SLACK: f64 = 1e-12;
/// Largest cell count drawn when averaging over membranes.
pub const UNIVERSAL_MAX_CELLS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }

    /// Vertex coordinate the particle collapses to.
    pub fn vertex(self) -> f64 {
        match self {
            Answer::Yes => 1.0,
            Answer::No => -1.0,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Answer::Yes => 'y',
            Answer::No => 'n',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RhoMembrane {
    /// Constant density on `[−1, 1]`.
    Uniform,
    /// Constant density on `[a, b]`, zero elsewhere.
    Interval { a: f64, b: f64 },
    /// Mass `weights[i]` spread evenly over `[breaks[i], breaks[i + 1]]`.
    PiecewiseConstant { breaks: Vec<f64>, weights: Vec<f64> },
}

impl RhoMembrane {
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&a) || !(-1.0..=1.0).contains(&b) || a >= b {
            return Err(Error::InvalidMembrane(format!(
                "interval [{a}, {b}] must satisfy -1 <= a < b <= 1"
            )));
        }
        Ok(RhoMembrane::Interval { a, b })
    }

    /// Normalizes `weights` to unit mass.
    pub fn piecewise(breaks: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if breaks.len() != weights.len() + 1 || weights.is_empty() {
            return Err(Error::InvalidMembrane(format!(
                "{} breaks for {} cells",
                breaks.len(),
                weights.len()
            )));
        }
        if (breaks[0] + 1.0).abs() > COORD_SLACK
            || (breaks[breaks.len() - 1] - 1.0).abs() > COORD_SLACK
            || breaks.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::InvalidMembrane(
                "breaks must increase strictly from -1 to 1".into(),
            ));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidMembrane("negative or non-finite weight".into()));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidMembrane("zero total mass".into()));
        }
        Ok(RhoMembrane::PiecewiseConstant {
            breaks,
            weights: weights.into_iter().map(|w| w / total).collect(),
        })
    }

    /// Equal-width cells over `[−1, 1]`.
    pub fn equal_cells(weights: Vec<f64>) -> Result<Self> {
        let k = weights.len();
        let breaks = (0..=k)
            .map(|i| {
                if i == k {
                    1.0
                } else {
                    -1.0 + 2.0 * i as f64 / k as f64
                }
            })
            .collect();
        Self::piecewise(breaks, weights)
    }

    /// Draws a break point from ρ. Draws land in half-open cells `(lo, hi]`,
    /// so a particle at the lower edge of the support never answers `yes`.
    pub fn sample_break<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let within = |lo: f64, hi: f64, rng: &mut R| hi - (hi - lo) * rng.random::<f64>();
        match self {
            RhoMembrane::Uniform => within(-1.0, 1.0, rng),
            RhoMembrane::Interval { a, b } => within(*a, *b, rng),
            RhoMembrane::PiecewiseConstant { breaks, weights } => {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                let mut cell = weights.len() - 1;
                for (i, w) in weights.iter().enumerate() {
                    acc += w;
                    if u < acc {
                        cell = i;
                        break;
                    }
                }
                within(breaks[cell], breaks[cell + 1], rng)
            }
        }
    }
}

fn check_coordinate(e: f64) -> Result<f64> {
    if !e.is_finite() || !(-1.0 - COORD_SLACK..=1.0 + COORD_SLACK).contains(&e) {
        return Err(Error::CoordinateOutOfRange(e));
    }
    Ok(e.clamp(-1.0, 1.0))
}

/// Mass of ρ on `[−1, e]`.
pub fn membrane_cdf(membrane: &RhoMembrane, e: f64) -> Result<f64> {
    let e = check_coordinate(e)?;
    if e >= 1.0 {
        return Ok(1.0);
    }
    if e <= -1.0 {
        return Ok(0.0);
    }
    Ok(match membrane {
        RhoMembrane::Uniform => (1.0 + e) / 2.0,
        RhoMembrane::Interval { a, b } => ((e - a) / (b - a)).clamp(0.0, 1.0),
        RhoMembrane::PiecewiseConstant { breaks, weights } => {
            let mut acc = 0.0;
            for (i, w) in weights.iter().enumerate() {
                let (lo, hi) = (breaks[i], breaks[i + 1]);
                if e >= hi {
                    acc += w;
                } else {
                    if e > lo {
                        acc += w * (e - lo) / (hi - lo);
                    }
                    break;
                }
            }
            acc.clamp(0.0, 1.0)
        }
    })
}

/// `(P(yes), P(no))` for a particle at `e`.
pub fn collapse_probabilities_membrane(e: f64, membrane: &RhoMembrane) -> Result<(f64, f64)> {
    let yes = membrane_cdf(membrane, e)?;
    Ok((yes, 1.0 - yes))
}

/// One collapse using the caller's generator: the answer and the vertex
/// coordinate the particle ends at.
pub fn sample_collapse_with<R: Rng + ?Sized>(
    e: f64,
    membrane: &RhoMembrane,
    rng: &mut R,
) -> Result<(Answer, f64)> {
    let e = check_coordinate(e)?;
    let answer = if membrane.sample_break(rng) <= e {
        Answer::Yes
    } else {
        Answer::No
    };
    Ok((answer, answer.vertex()))
}

/// One collapse under an explicit seed.
pub fn sample_collapse(e: f64, membrane: &RhoMembrane, seed: u64) -> Result<(Answer, f64)> {
    sample_collapse_with(e, membrane, &mut stream_rng(seed, 0))
}

/// `draws` independent collapses; draw `i` uses stream `i` of `seed`.
pub fn sample_collapses(e: f64, membrane: &RhoMembrane, draws: usize, seed: u64) -> Result<Vec<Answer>> {
    (0..draws)
        .map(|i| sample_collapse_with(e, membrane, &mut stream_rng(seed, i as u64)).map(|r| r.0))
        .collect()
}

/// Random piecewise-constant membrane: cell count uniform on
/// `1..=max_cells`, equal-width cells, weights i.i.d. exponential then
/// normalized.
pub fn random_membrane<R: Rng + ?Sized>(rng: &mut R, max_cells: usize) -> RhoMembrane {
    let k = rng.random_range(1..=max_cells.max(1));
    let weights: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
    RhoMembrane::equal_cells(weights).expect("exponential weights are positive")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniversalEstimate {
    pub mean: f64,
    /// Standard error of the mean over sampled membranes.
    pub std_error: f64,
    pub samples: usize,
}

/// Average of `P(yes)` at `e` over `samples` random membranes (membrane `i`
/// drawn from stream `i` of `seed`). Converges to the Born value `(1 + e)/2`.
pub fn universal_measurement_probability(e: f64, samples: usize, seed: u64) -> Result<UniversalEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let e = check_coordinate(e)?;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for i in 0..samples {
        let mut rng = stream_rng(seed, i as u64);
        let membrane = random_membrane(&mut rng, UNIVERSAL_MAX_CELLS);
        let p = membrane_cdf(&membrane, e)?;
        sum += p;
        sum_sq += p * p;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = if samples > 1 {
        ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(UniversalEstimate {
        mean,
        std_error: (var / n).sqrt(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_examples() {
        assert_eq!(membrane_cdf(&RhoMembrane::Uniform, 0.0).unwrap(), 0.5);
        let full = RhoMembrane::interval(-1.0, 1.0).unwrap();
        for e in [-1.0, -0.3, 0.0, 0.7, 1.0] {
            assert!((membrane_cdf(&full, e).unwrap() - (1.0 + e) / 2.0).abs() < 1e-15);
        }
        let half = RhoMembrane::interval(-0.5, 1.0).unwrap();
        assert!((membrane_cdf(&half, 0.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(matches!(
            membrane_cdf(&RhoMembrane::Uniform, 1.5),
            Err(Error::CoordinateOutOfRange(_))
        ));
    }

    #[test]
    fn interval_outside_support_is_deterministic() {
        let m = RhoMembrane::interval(-0.2, 0.4).unwrap();
        assert_eq!(collapse_probabilities_membrane(0.4, &m).unwrap(), (1.0, 0.0));
        assert_eq!(collapse_probabilities_membrane(0.9, &m).unwrap(), (1.0, 0.0));
        assert_eq!(collapse_probabilities_membrane(-0.2, &m).unwrap(), (0.0, 1.0));
    }

    #[test]
    fn membrane_validation() {
        assert!(RhoMembrane::interval(0.5, 0.5).is_err());
        assert!(RhoMembrane::interval(-1.5, 0.5).is_err());
        assert!(RhoMembrane::piecewise(vec![-1.0, 0.0, 1.0], vec![1.0]).is_err());
        assert!(RhoMembrane::piecewise(vec![-1.0, 0.5, 0.0, 1.0], vec![1.0, 1.0, 1.0]).is_err());
        assert!(RhoMembrane::equal_cells(vec![1.0, -1.0]).is_err());
    }

    #[test]
    fn piecewise_cdf_is_monotone_with_fixed_ends() {
        let m = RhoMembrane::equal_cells(vec![0.1, 3.0, 0.0, 1.2, 0.7]).unwrap();
        assert_eq!(membrane_cdf(&m, -1.0).unwrap(), 0.0);
        assert_eq!(membrane_cdf(&m, 1.0).unwrap(), 1.0);
        let mut prev = 0.0;
        for i in 0..=400 {
            let e = -1.0 + i as f64 / 200.0;
            let v = membrane_cdf(&m, e).unwrap();
            assert!(v + 1e-15 >= prev);
            prev = v;
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let m = RhoMembrane::interval(-0.3, 0.8).unwrap();
        let a = sample_collapses(0.1, &m, 100, 7).unwrap();
        assert_eq!(a, sample_collapses(0.1, &m, 100, 7).unwrap());
        assert_eq!(sample_collapse(0.1, &m, 3).unwrap(), sample_collapse(0.1, &m, 3).unwrap());
        let full = RhoMembrane::interval(-1.0, 1.0).unwrap();
        assert!(sample_collapses(1.0, &full, 1000, 1)
            .unwrap()
            .iter()
            .all(|a| a.is_yes()));
    }

    #[test]
    fn universal_edges() {
        let top = universal_measurement_probability(1.0, 1000, 2).unwrap();
        assert_eq!(top.mean, 1.0);
        let bottom = universal_measurement_probability(-1.0, 1000, 2).unwrap();
        assert_eq!(bottom.mean, 0.0);
        assert!(universal_measurement_probability(0.0, 0, 2).is_err());
    }
}
