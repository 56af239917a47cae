//! Question-order effects for two yes/no questions asked in both orders.
//!
//! A [`SequentialTable`] holds the eight joint answer probabilities. The
//! diagnostics [`compute_q`] and [`compute_q_prime`] vanish identically on any
//! projective Hilbert model (the latter only in two dimensions with rank-one
//! projectors), so nonzero values on data rule out an exact model of that class.

use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hilbert::{
    commutator, frobenius_norm, sequential_probability, Projector, SpectralFamily, StateVector,
};
use crate::optimize::{multi_start, NelderMeadConfig};
use crate::rng::seeded_rng;
use crate::{CMatrix, C64};

/// Sum-to-one tolerance for tables read from data rounded to 4 decimals.
pub const EMPIRICAL_SUM_TOL: f64 = 1e-3;
/// Sum-to-one tolerance for tables produced by a model.
pub const MODEL_SUM_TOL: f64 = 1e-10;
/// Largest magnitude `q'` can take.
pub const Q_PRIME_MAX: f64 = 0.25;
/// First-question marginals below this make conditionals undefined.
pub const MARGINAL_EPS: f64 = 1e-9;

/// Joint answer probabilities for one question order. The first letter is
/// the answer to the question asked first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderProbabilities {
    pub yy: f64,
    pub yn: f64,
    pub ny: f64,
    pub nn: f64,
}

impl OrderProbabilities {
    pub fn new(yy: f64, yn: f64, ny: f64, nn: f64) -> Self {
        Self { yy, yn, ny, nn }
    }

    pub fn sum(&self) -> f64 {
        self.yy + self.yn + self.ny + self.nn
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.yy, self.yn, self.ny, self.nn]
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    /// Probability of `yes` to the first question.
    pub fn first_yes(&self) -> f64 {
        self.yy + self.yn
    }

    pub fn first_no(&self) -> f64 {
        self.ny + self.nn
    }
}

/// Where a table came from; decides the sum-to-one tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Empirical,
    Model,
}

impl Provenance {
    pub fn sum_tolerance(self) -> f64 {
        match self {
            Provenance::Empirical => EMPIRICAL_SUM_TOL,
            Provenance::Model => MODEL_SUM_TOL,
        }
    }
}

/// Two questions `A`, `B`, each asked first in one of the two orders.
#[derive(Debug, Clone, PartialEq)]
pub struct SequentialTable {
    /// `[A, B]`.
    pub questions: [String; 2],
    /// `A` asked first.
    pub order_ab: OrderProbabilities,
    /// `B` asked first.
    pub order_ba: OrderProbabilities,
    pub provenance: Provenance,
}

impl SequentialTable {
    pub fn new(
        questions: [String; 2],
        order_ab: OrderProbabilities,
        order_ba: OrderProbabilities,
        provenance: Provenance,
    ) -> Result<Self> {
        let table = Self {
            questions,
            order_ab,
            order_ba,
            provenance,
        };
        table.validate()?;
        Ok(table)
    }

    pub fn validate(&self) -> Result<()> {
        let tol = self.provenance.sum_tolerance();
        for (name, order) in [("AB", &self.order_ab), ("BA", &self.order_ba)] {
            for (key, v) in ["yy", "yn", "ny", "nn"].iter().zip(order.as_array()) {
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidTable(format!(
                        "order {name} entry {key} = {v} outside [0, 1]"
                    )));
                }
            }
            let sum = order.sum();
            if (sum - 1.0).abs() > tol {
                return Err(Error::InvalidTable(format!(
                    "order {name} sums to {sum}, tolerance {tol:e}"
                )));
            }
        }
        Ok(())
    }

    /// The Clinton/Gore honesty survey: `C` = Clinton, `G` = Gore.
    pub fn clinton_gore() -> Self {
        Self {
            questions: ["C".into(), "G".into()],
            order_ab: OrderProbabilities::new(0.4899, 0.0447, 0.1767, 0.2887),
            order_ba: OrderProbabilities::new(0.5625, 0.1991, 0.0255, 0.2129),
            provenance: Provenance::Empirical,
        }
    }

    /// Table with every entry equal to 1/4.
    pub fn uniform(questions: [String; 2]) -> Self {
        let q = OrderProbabilities::new(0.25, 0.25, 0.25, 0.25);
        Self {
            questions,
            order_ab: q,
            order_ba: q,
            provenance: Provenance::Empirical,
        }
    }

    /// All eight entries, order AB first.
    pub fn entries(&self) -> [f64; 8] {
        let a = self.order_ab.as_array();
        let b = self.order_ba.as_array();
        [a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3]]
    }

    /// Root of the summed squared differences over the eight entries.
    pub fn rss_distance(&self, other: &SequentialTable) -> f64 {
        rss(&self.entries(), &other.entries())
    }
}

pub(crate) fn rss(a: &[f64; 8], b: &[f64; 8]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// The QQ-equality quantity: first-listed order minus reversed order, summed
/// over the two consistent answer pairs,
/// `q = μ_AyBy − μ_ByAy + μ_AnBn − μ_BnAn`.
///
/// Every projective Hilbert model gives `q = 0`. On the Clinton/Gore data
/// (`A` = Clinton) this is `0.0032`.
pub fn compute_q(table: &SequentialTable) -> f64 {
    table.order_ab.yy - table.order_ba.yy + table.order_ab.nn - table.order_ba.nn
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QPrime {
    pub value: f64,
    /// `value / 0.25`.
    pub ratio_to_max: f64,
}

/// `q' = μ_AyBn μ_AnBn − μ_AnBy μ_AyBy`, computed on the order with `A` first.
/// Zero for every two-dimensional model with rank-one projectors.
pub fn compute_q_prime(table: &SequentialTable) -> QPrime {
    let o = &table.order_ab;
    let value = o.yn * o.nn - o.ny * o.yy;
    QPrime {
        value,
        ratio_to_max: value / Q_PRIME_MAX,
    }
}

/// `P(second answer | first answer)` for one order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderConditionals {
    pub yes_given_yes: f64,
    pub no_given_yes: f64,
    pub yes_given_no: f64,
    pub no_given_no: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conditionals {
    pub order_ab: OrderConditionals,
    pub order_ba: OrderConditionals,
}

fn order_conditionals(o: &OrderProbabilities, order: &str) -> Result<OrderConditionals> {
    let py = o.first_yes();
    let pn = o.first_no();
    if py <= MARGINAL_EPS {
        return Err(Error::DegenerateMarginal {
            order: order.into(),
            outcome: "yes".into(),
        });
    }
    if pn <= MARGINAL_EPS {
        return Err(Error::DegenerateMarginal {
            order: order.into(),
            outcome: "no".into(),
        });
    }
    Ok(OrderConditionals {
        yes_given_yes: o.yy / py,
        no_given_yes: o.yn / py,
        yes_given_no: o.ny / pn,
        no_given_no: o.nn / pn,
    })
}

pub fn conditional_probabilities(table: &SequentialTable) -> Result<Conditionals> {
    let a = &table.questions[0];
    let b = &table.questions[1];
    Ok(Conditionals {
        order_ab: order_conditionals(&table.order_ab, &format!("{a}{b}"))?,
        order_ba: order_conditionals(&table.order_ba, &format!("{b}{a}"))?,
    })
}

/// A state and two yes/no spectral families (`yes` is outcome 0).
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertTwoQuestionModel {
    pub state: StateVector,
    pub family_a: SpectralFamily,
    pub family_b: SpectralFamily,
}

impl HilbertTwoQuestionModel {
    pub fn new(
        state: StateVector,
        family_a: SpectralFamily,
        family_b: SpectralFamily,
    ) -> Result<Self> {
        for f in [&family_a, &family_b] {
            if f.len() != 2 {
                return Err(Error::InvalidFamily(format!(
                    "two-question models need yes/no families, got {} outcomes",
                    f.len()
                )));
            }
            if f.dim() != state.dim() {
                return Err(Error::DimensionMismatch {
                    expected: state.dim(),
                    found: f.dim(),
                });
            }
        }
        Ok(Self {
            state,
            family_a,
            family_b,
        })
    }

    /// Rank-one model in two dimensions from Bloch angles of the state and the
    /// two `yes` eigenvectors.
    pub fn from_angles_2d(angles: &[f64; 6]) -> Result<Self> {
        let state = ket_from_angles(angles[0], angles[1]);
        let a = ket_from_angles(angles[2], angles[3]);
        let b = ket_from_angles(angles[4], angles[5]);
        Self::new(
            state,
            SpectralFamily::yes_no(Projector::rank_one(&a))?,
            SpectralFamily::yes_no(Projector::rank_one(&b))?,
        )
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }
}

/// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
pub fn ket_from_angles(theta: f64, phi: f64) -> StateVector {
    let amps = vec![
        C64::new((theta / 2.0).cos(), 0.0),
        C64::from_polar((theta / 2.0).sin(), phi),
    ];
    StateVector::normalized(amps).expect("angle kets have unit norm")
}

/// All eight sequential probabilities of a Hilbert model.
pub fn predict_table(model: &HilbertTwoQuestionModel) -> Result<SequentialTable> {
    let a = &model.family_a;
    let b = &model.family_b;
    let seq = |first: &SpectralFamily, i: usize, second: &SpectralFamily, j: usize| {
        sequential_probability(&model.state, &[(first, i), (second, j)])
    };
    let order_ab = OrderProbabilities::new(seq(a, 0, b, 0)?, seq(a, 0, b, 1)?, seq(a, 1, b, 0)?, seq(a, 1, b, 1)?);
    let order_ba = OrderProbabilities::new(seq(b, 0, a, 0)?, seq(b, 0, a, 1)?, seq(b, 1, a, 0)?, seq(b, 1, a, 1)?);
    SequentialTable::new(
        ["A".into(), "B".into()],
        order_ab,
        order_ba,
        Provenance::Model,
    )
}

/// `‖M_B M_A M_B − M_A M_B M_A + M̄_B M̄_A M̄_B − M̄_A M̄_B M̄_A‖_F`, which
/// vanishes for every pair of projectors.
pub fn qq_operator_norm(m_a: &Projector, m_b: &Projector) -> Result<f64> {
    if m_a.dim() != m_b.dim() {
        return Err(Error::DimensionMismatch {
            expected: m_a.dim(),
            found: m_b.dim(),
        });
    }
    let (a, b) = (m_a.matrix(), m_b.matrix());
    let ca = m_a.complement();
    let cb = m_b.complement();
    let (ac, bc) = (ca.matrix(), cb.matrix());
    let q: CMatrix = b * a * b - a * b * a + bc * ac * bc - ac * bc * ac;
    Ok(frobenius_norm(&q))
}

/// `‖M̄_B M_A M̄_B − M_A M̄_B M_A − (M_B − M_A)[M_A, M_B]‖_F`, zero for every pair.
pub fn order_difference_identity_residual(m_a: &Projector, m_b: &Projector) -> Result<f64> {
    if m_a.dim() != m_b.dim() {
        return Err(Error::DimensionMismatch {
            expected: m_a.dim(),
            found: m_b.dim(),
        });
    }
    let a = m_a.matrix();
    let b = m_b.matrix();
    let cb = m_b.complement();
    let bc = cb.matrix();
    let lhs: CMatrix = bc * a * bc - a * bc * a;
    let rhs: CMatrix = (b - a) * commutator(a, b);
    Ok(frobenius_norm(&(lhs - rhs)))
}

/// Fit settings shared by the Hilbert and membrane fitters.
#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    /// Number of random starting points.
    pub starts: usize,
    pub seed: u64,
    pub simplex: NelderMeadConfig,
    /// If set, `converged` additionally requires the residual to be at most this.
    pub tol: Option<f64>,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            starts: 32,
            seed: crate::rng::DEFAULT_SEED,
            simplex: NelderMeadConfig::default(),
            tol: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub parameters: Vec<(String, f64)>,
    /// Root of the summed squared errors over the eight entries.
    pub residual: f64,
    pub predicted: SequentialTable,
    pub iterations: usize,
    pub converged: bool,
    /// Index of the start that produced the best fit.
    pub best_start: usize,
}

impl FitReport {
    pub fn parameter(&self, name: &str) -> Option<f64> {
        self.parameters
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }
}

fn bloch_axis(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Closed-form table of a 2D rank-one model in Bloch-vector form.
pub(crate) fn table_2d_closed_form(angles: &[f64]) -> [f64; 8] {
    let r = bloch_axis(angles[0], angles[1]);
    let a = bloch_axis(angles[2], angles[3]);
    let b = bloch_axis(angles[4], angles[5]);
    let (ea, eb, g) = (dot3(&r, &a), dot3(&r, &b), dot3(&a, &b));
    let half = |x: f64| 0.5 * (1.0 + x);
    [
        half(ea) * half(g),
        half(ea) * half(-g),
        half(-ea) * half(-g),
        half(-ea) * half(g),
        half(eb) * half(g),
        half(eb) * half(-g),
        half(-eb) * half(-g),
        half(-eb) * half(g),
    ]
}

fn canonical_angles(theta: f64, phi: f64) -> (f64, f64) {
    let mut t = theta.rem_euclid(2.0 * PI);
    let mut p = phi;
    if t > PI {
        t = 2.0 * PI - t;
        p += PI;
    }
    (t, p.rem_euclid(2.0 * PI))
}

/// Best two-dimensional rank-one Hilbert model for a table: six Bloch angles
/// (state, `A`-yes axis, `B`-yes axis) minimizing the root-sum-square error
/// over all eight entries, by multi-start Nelder-Mead.
pub fn fit_hilbert_2d(table: &SequentialTable, config: &FitConfig) -> Result<FitReport> {
    table.validate()?;
    let target = table.entries();
    let objective = |x: &[f64]| rss(&table_2d_closed_form(x), &target);

    let mut rng = seeded_rng(config.seed);
    let starts: Vec<Vec<f64>> = (0..config.starts.max(1))
        .map(|_| {
            (0..3)
                .flat_map(|_| [rng.random_range(0.0..PI), rng.random_range(0.0..2.0 * PI)])
                .collect()
        })
        .collect();
    let (best_start, best) = multi_start(&objective, &starts, &config.simplex)
        .expect("at least one start");

    let mut angles = [0.0; 6];
    for k in 0..3 {
        let (t, p) = canonical_angles(best.x[2 * k], best.x[2 * k + 1]);
        angles[2 * k] = t;
        angles[2 * k + 1] = p;
    }
    let model = HilbertTwoQuestionModel::from_angles_2d(&angles)?;
    let mut predicted = predict_table(&model)?;
    predicted.questions = table.questions.clone();
    let residual = table.rss_distance(&predicted);
    let names = [
        "state_theta",
        "state_phi",
        "a_theta",
        "a_phi",
        "b_theta",
        "b_phi",
    ];
    let converged = best.converged && config.tol.is_none_or(|t| residual <= t);
    Ok(FitReport {
        parameters: names
            .iter()
            .zip(angles)
            .map(|(n, v)| (n.to_string(), v))
            .collect(),
        residual,
        predicted,
        iterations: best.iterations,
        converged,
        best_start,
    })
}
