//! CHSH evaluation for four joint two-outcome measurements.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};

/// Classical bound on `|S|`.
pub const CLASSICAL_BOUND: f64 = 2.0;
/// Quantum (Tsirelson) bound on `|S|`.
pub const TSIRELSON_BOUND: f64 = 2.0 * SQRT_2;
const NORMALIZATION_TOL: f64 = 1e-9;

/// Joint outcome probabilities `[[p(++), p(+−)], [p(−+), p(−−)]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointTable(pub [[f64; 2]; 2]);

impl JointTable {
    pub fn validate(&self) -> Result<()> {
        let flat = [self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]];
        if flat.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::InvalidArgument(format!(
                "joint probabilities {flat:?} outside [0, 1]"
            )));
        }
        let total: f64 = flat.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidArgument(format!(
                "joint probabilities sum to {total}"
            )));
        }
        Ok(())
    }

    /// `p(++) + p(−−) − p(+−) − p(−+)`.
    pub fn expectation(&self) -> f64 {
        self.0[0][0] + self.0[1][1] - self.0[0][1] - self.0[1][0]
    }

    /// Table of a deterministic pair of outcomes (`true` = `+`).
    pub fn deterministic(a: bool, b: bool) -> Self {
        let mut t = [[0.0; 2]; 2];
        t[usize::from(!a)][usize::from(!b)] = 1.0;
        JointTable(t)
    }

    /// Table with expectation `e` and unbiased marginals.
    pub fn from_correlation(e: f64) -> Self {
        let same = (1.0 + e) / 4.0;
        let diff = (1.0 - e) / 4.0;
        JointTable([[same, diff], [diff, same]])
    }

    /// Relabels `+` and `−` of the first measurement.
    pub fn flip_first(&self) -> Self {
        JointTable([self.0[1], self.0[0]])
    }

    /// Relabels `+` and `−` of the second measurement.
    pub fn flip_second(&self) -> Self {
        JointTable([[self.0[0][1], self.0[0][0]], [self.0[1][1], self.0[1][0]]])
    }
}

/// Expectations `E_11, E_12, E_21, E_22` for settings pairs `(a_i, b_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointCorrelationSet {
    pub e: [[f64; 2]; 2],
}

impl JointCorrelationSet {
    pub fn from_tables(tables: [[JointTable; 2]; 2]) -> Result<Self> {
        let mut e = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                tables[i][j].validate()?;
                e[i][j] = tables[i][j].expectation();
            }
        }
        Ok(Self { e })
    }

    pub fn from_expectations(e: [[f64; 2]; 2]) -> Result<Self> {
        if e.iter().flatten().any(|v| !(-1.0..=1.0).contains(v)) {
            return Err(Error::InvalidArgument(format!(
                "expectations {e:?} outside [-1, 1]"
            )));
        }
        Ok(Self { e })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshResult {
    /// `E_11 + E_12 + E_21 − E_22`.
    pub s: f64,
    /// `|S| > 2`.
    pub violated: bool,
    /// `|S| > 2√2`: beyond any quantum model.
    pub exceeds_tsirelson: bool,
}

pub fn chsh_value(c: &JointCorrelationSet) -> ChshResult {
    let s = c.e[0][0] + c.e[0][1] + c.e[1][0] - c.e[1][1];
    ChshResult {
        s,
        violated: s.abs() > CLASSICAL_BOUND + 1e-12,
        exceeds_tsirelson: s.abs() > TSIRELSON_BOUND + 1e-12,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_and_algebraic_maximum() {
        let zero = chsh_value(&JointCorrelationSet::from_expectations([[0.0; 2]; 2]).unwrap());
        assert_eq!(zero.s, 0.0);
        assert!(!zero.violated);
        let max = chsh_value(&JointCorrelationSet::from_expectations([[1.0, 1.0], [1.0, -1.0]]).unwrap());
        assert_eq!(max.s, 4.0);
        assert!(max.violated && max.exceeds_tsirelson);
    }

    #[test]
    fn singlet_at_optimal_angles() {
        let (a, a2, b, b2) = (0.0, PI / 2.0, PI / 4.0, -PI / 4.0);
        let e = |x: f64, y: f64| -(x - y).cos();
        let tables = [
            [JointTable::from_correlation(e(a, b)), JointTable::from_correlation(e(a, b2))],
            [JointTable::from_correlation(e(a2, b)), JointTable::from_correlation(e(a2, b2))],
        ];
        let r = chsh_value(&JointCorrelationSet::from_tables(tables).unwrap());
        assert!((r.s + TSIRELSON_BOUND).abs() < 1e-9, "{}", r.s);
        assert!(r.violated && !r.exceeds_tsirelson);
    }

    #[test]
    fn flips_negate_expectation() {
        let t = JointTable([[0.4, 0.1], [0.2, 0.3]]);
        assert!((t.flip_first().expectation() + t.expectation()).abs() < 1e-15);
        assert!((t.flip_second().expectation() + t.expectation()).abs() < 1e-15);
        assert!(JointTable([[0.5, 0.5], [0.5, 0.0]]).validate().is_err());
    }
}
