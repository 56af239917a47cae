//! Concept combination.
//!
//! Membership of an item in a combined concept (`A and B`, `A or B`) is
//! modelled in a two-sector Fock space. The first sector carries emergence:
//! the combination is a superposition of the two concepts, giving their
//! average plus an interference term `√(μ_A μ_B) cos θ`, whose magnitude is
//! the Cauchy-Schwarz bound for projector overlaps. The second sector carries
//! classical logic: `μ_A μ_B` for conjunction, `μ_A + μ_B − μ_A μ_B` for
//! disjunction. The weight is the mix
//! `m2 · logic + (1 − m2) · emergence`.
//!
//! The module also classifies over/underextension, checks representability in
//! a classical (Kolmogorov) probability space, evaluates CHSH correlations and
//! compares Bose-Einstein with Maxwell-Boltzmann occupation statistics.

pub mod chsh;
pub mod occupation;

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

pub use chsh::{chsh_value, ChshResult, JointCorrelationSet, JointTable};
pub use occupation::{identical_concepts_distributions, OccupationDistributions};

/// Equality tolerance for membership comparisons.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Combination {
    Conjunction,
    Disjunction,
}

impl Combination {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "conjunction" | "and" => Ok(Combination::Conjunction),
            "disjunction" | "or" => Ok(Combination::Disjunction),
            other => Err(Error::InvalidRecord(format!("unknown combination {other:?}"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Combination::Conjunction => "conjunction",
            Combination::Disjunction => "disjunction",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipRecord {
    pub item: String,
    pub mu_a: f64,
    pub mu_b: f64,
    pub mu_comb: f64,
    pub combination: Combination,
}

impl MembershipRecord {
    pub fn new(item: impl Into<String>, mu_a: f64, mu_b: f64, mu_comb: f64, combination: Combination) -> Result<Self> {
        let record = Self {
            item: item.into(),
            mu_a,
            mu_b,
            mu_comb,
            combination,
        };
        record.validate()?;
        Ok(record)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("mu_a", self.mu_a), ("mu_b", self.mu_b), ("mu_comb", self.mu_comb)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidRecord(format!(
                    "{}: {name} = {v} outside [0, 1]",
                    self.item
                )));
            }
        }
        Ok(())
    }
}

/// Interference phase and sector weights; `n2 = 1 − m2` always.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockParameters {
    theta: f64,
    m2: f64,
}

impl FockParameters {
    pub fn new(theta: f64, m2: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..=1.0).contains(&m2) {
            return Err(Error::InvalidArgument(format!(
                "theta = {theta} must lie in [0, pi] and m2 = {m2} in [0, 1]"
            )));
        }
        Ok(Self { theta, m2 })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Weight of the logic sector.
    pub fn m2(&self) -> f64 {
        self.m2
    }

    /// Weight of the emergence sector.
    pub fn n2(&self) -> f64 {
        1.0 - self.m2
    }
}

/// Classical (second-sector) membership of the combination.
pub fn logic_value(mu_a: f64, mu_b: f64, combination: Combination) -> f64 {
    match combination {
        Combination::Conjunction => mu_a * mu_b,
        Combination::Disjunction => mu_a + mu_b - mu_a * mu_b,
    }
}

/// First-sector membership: average plus interference.
pub fn emergence_value(mu_a: f64, mu_b: f64, theta: f64) -> f64 {
    0.5 * (mu_a + mu_b) + (mu_a * mu_b).sqrt() * theta.cos()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombinationWeight {
    /// Clamped into `[0, 1]`.
    pub value: f64,
    /// The unclamped value left `[0, 1]`.
    pub out_of_range: bool,
}

pub fn fock_combination_weight(
    mu_a: f64,
    mu_b: f64,
    params: &FockParameters,
    combination: Combination,
) -> CombinationWeight {
    let raw = params.m2() * logic_value(mu_a, mu_b, combination)
        + params.n2() * emergence_value(mu_a, mu_b, params.theta());
    let value = raw.clamp(0.0, 1.0);
    CombinationWeight {
        value,
        out_of_range: value != raw,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FockSolution {
    Solved(FockParameters),
    Infeasible,
}

/// Finds `(θ, m2)` reproducing `mu_comb`, taking the largest `m2` (the most
/// classical explanation). The attainable set is the hull of the logic value
/// and the emergence band `[avg − √(μ_A μ_B), avg + √(μ_A μ_B)]`.
pub fn solve_fock_parameters(record: &MembershipRecord) -> FockSolution {
    let (a, b, target) = (record.mu_a, record.mu_b, record.mu_comb);
    let logic = logic_value(a, b, record.combination);
    let avg = 0.5 * (a + b);
    let amp = (a * b).sqrt();
    let (lo, hi) = (avg - amp, avg + amp);

    if (target - logic).abs() <= TIE_TOL {
        return FockSolution::Solved(FockParameters { theta: FRAC_PI_2, m2: 1.0 });
    }
    // Emergence extreme on the side of the target.
    let extreme = if target > logic { hi } else { lo };
    let gap = extreme - logic;
    let ratio = (target - logic) / gap;
    if gap.abs() <= TIE_TOL || !(0.0..=1.0 + TIE_TOL).contains(&ratio) {
        return FockSolution::Infeasible;
    }
    let m2 = (1.0 - ratio).clamp(0.0, 1.0);
    let n2 = 1.0 - m2;
    let theta = if amp <= 0.0 {
        FRAC_PI_2
    } else {
        let emergence = (target - m2 * logic) / n2;
        ((emergence - avg) / amp).clamp(-1.0, 1.0).acos()
    };
    FockSolution::Solved(FockParameters { theta, m2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extension {
    Classical,
    Overextension,
    DoubleOverextension,
    Underextension,
    DoubleUnderextension,
}

impl Extension {
    pub fn as_str(self) -> &'static str {
        match self {
            Extension::Classical => "classical",
            Extension::Overextension => "overextension",
            Extension::DoubleOverextension => "double_overextension",
            Extension::Underextension => "underextension",
            Extension::DoubleUnderextension => "double_underextension",
        }
    }
}

pub fn classify_extension(record: &MembershipRecord) -> Extension {
    let lo = record.mu_a.min(record.mu_b);
    let hi = record.mu_a.max(record.mu_b);
    let c = record.mu_comb;
    match record.combination {
        Combination::Conjunction => {
            if c > hi + TIE_TOL {
                Extension::DoubleOverextension
            } else if c > lo + TIE_TOL {
                Extension::Overextension
            } else {
                Extension::Classical
            }
        }
        Combination::Disjunction => {
            if c < lo - TIE_TOL {
                Extension::DoubleUnderextension
            } else if c < hi - TIE_TOL {
                Extension::Underextension
            } else {
                Extension::Classical
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    /// Conjunction above `min(μ_A, μ_B)`.
    ConjunctionUpper,
    /// Conjunction below `max(0, μ_A + μ_B − 1)`.
    ConjunctionLower,
    /// Disjunction below `max(μ_A, μ_B)`.
    DisjunctionLower,
    /// Disjunction above `min(1, μ_A + μ_B)`.
    DisjunctionUpper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Representability {
    pub representable: bool,
    pub violated: Vec<Bound>,
}

/// Whether a single classical probability space reproduces the record.
pub fn kolmogorov_representable(record: &MembershipRecord) -> Representability {
    let (a, b, c) = (record.mu_a, record.mu_b, record.mu_comb);
    let mut violated = Vec::new();
    match record.combination {
        Combination::Conjunction => {
            if c > a.min(b) + TIE_TOL {
                violated.push(Bound::ConjunctionUpper);
            }
            if c < (a + b - 1.0).max(0.0) - TIE_TOL {
                violated.push(Bound::ConjunctionLower);
            }
        }
        Combination::Disjunction => {
            if c < a.max(b) - TIE_TOL {
                violated.push(Bound::DisjunctionLower);
            }
            if c > (a + b).min(1.0) + TIE_TOL {
                violated.push(Bound::DisjunctionUpper);
            }
        }
    }
    Representability {
        representable: violated.is_empty(),
        violated,
    }
}

/// Mean of `mu_comb − logic value` over records.
pub fn mean_classical_deviation(records: &[MembershipRecord]) -> Option<f64> {
    if records.is_empty() {
        return None;
    }
    let total: f64 = records
        .iter()
        .map(|r| r.mu_comb - logic_value(r.mu_a, r.mu_b, r.combination))
        .sum();
    Some(total / records.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(a: f64, b: f64, c: f64, comb: Combination) -> MembershipRecord {
        MembershipRecord::new("x", a, b, c, comb).unwrap()
    }

    #[test]
    fn weight_examples() {
        let logic_only = FockParameters::new(FRAC_PI_2, 1.0).unwrap();
        let w = fock_combination_weight(0.3, 0.6, &logic_only, Combination::Disjunction);
        assert!((w.value - (0.3 + 0.6 - 0.18)).abs() < 1e-15);
        let constructive = FockParameters::new(0.0, 0.0).unwrap();
        assert!((fock_combination_weight(0.5, 0.5, &constructive, Combination::Conjunction).value - 1.0).abs() < 1e-15);
        let destructive = FockParameters::new(PI, 0.0).unwrap();
        assert!(fock_combination_weight(0.5, 0.5, &destructive, Combination::Conjunction).value.abs() < 1e-15);
        let average = FockParameters::new(FRAC_PI_2, 0.0).unwrap();
        assert!((fock_combination_weight(0.2, 0.8, &average, Combination::Conjunction).value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn weight_flags_out_of_range() {
        let p = FockParameters::new(0.0, 0.0).unwrap();
        let w = fock_combination_weight(1.0, 1.0, &p, Combination::Disjunction);
        assert_eq!(w.value, 1.0);
        assert!(w.out_of_range);
    }

    #[test]
    fn solve_examples() {
        let classical = rec(0.4, 0.5, 0.2, Combination::Conjunction);
        match solve_fock_parameters(&classical) {
            FockSolution::Solved(p) => assert_eq!(p.m2(), 1.0),
            FockSolution::Infeasible => panic!("classical record must solve"),
        }
        assert_eq!(
            solve_fock_parameters(&rec(0.0, 0.0, 1.0, Combination::Conjunction)),
            FockSolution::Infeasible
        );
        let mint = rec(0.7, 0.6, 0.8, Combination::Conjunction);
        let FockSolution::Solved(p) = solve_fock_parameters(&mint) else {
            panic!("mint-style record is inside the envelope");
        };
        let w = fock_combination_weight(0.7, 0.6, &p, Combination::Conjunction);
        assert!((w.value - 0.8).abs() < 1e-9);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_extension(&rec(0.7, 0.6, 0.8, Combination::Conjunction)),
            Extension::DoubleOverextension
        );
        assert_eq!(
            classify_extension(&rec(0.5, 0.5, 0.5, Combination::Conjunction)),
            Extension::Classical
        );
        assert_eq!(
            classify_extension(&rec(0.8, 0.7, 0.5, Combination::Disjunction)),
            Extension::DoubleUnderextension
        );
        assert_eq!(
            classify_extension(&rec(0.8, 0.6, 0.7, Combination::Disjunction)),
            Extension::Underextension
        );
        assert_eq!(
            classify_extension(&rec(0.8, 0.6, 0.7, Combination::Conjunction)),
            Extension::Overextension
        );
    }

    #[test]
    fn representability_examples() {
        assert!(kolmogorov_representable(&rec(0.5, 0.5, 0.25, Combination::Conjunction)).representable);
        let mint = kolmogorov_representable(&rec(0.7, 0.6, 0.8, Combination::Conjunction));
        assert!(!mint.representable);
        assert_eq!(mint.violated, vec![Bound::ConjunctionUpper]);
        let low = kolmogorov_representable(&rec(0.9, 0.8, 0.1, Combination::Conjunction));
        assert_eq!(low.violated, vec![Bound::ConjunctionLower]);
    }

    #[test]
    fn record_validation() {
        assert!(MembershipRecord::new("x", 1.2, 0.5, 0.5, Combination::Conjunction).is_err());
        assert!(Combination::parse("xor").is_err());
        assert_eq!(Combination::parse("AND").unwrap(), Combination::Conjunction);
    }

    #[test]
    fn mean_deviation() {
        let rs = [
            rec(0.5, 0.5, 0.35, Combination::Conjunction),
            rec(0.5, 0.5, 0.15, Combination::Conjunction),
        ];
        assert!((mean_classical_deviation(&rs).unwrap()).abs() < 1e-15);
        assert_eq!(mean_classical_deviation(&[]), None);
    }
}
