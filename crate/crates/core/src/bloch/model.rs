//! Two yes/no questions as membrane measurements in a three-dimensional
//! Bloch ball.
//!
//! Question `A` has unit axis `m_A`, question `B` has `m_B`, with
//! `m_A · m_B = gamma`; the particle sits at `r` with `r · m_A = e_A` and
//! `r · m_B = e_B`. After the first answer the particle is at `±m_A`, so the
//! second question sees coordinate `±gamma`.

use rand::Rng;

use super::membrane::{membrane_cdf, RhoMembrane};
use crate::error::{Error, Result};
use crate::optimize::multi_start;
use crate::order::{
    conditional_probabilities, rss, FitConfig, FitReport, OrderProbabilities, Provenance,
    SequentialTable,
};
use crate::rng::seeded_rng;

/// Slack on the Gram determinant when checking geometric consistency.
pub const GRAM_TOL: f64 = 1e-12;
/// Smallest interval half-width the fitter may use.
pub const MIN_HALF_WIDTH: f64 = 1e-6;
const GRAM_PENALTY: f64 = 10.0;
// Weight of the pull toward wide intervals; small enough that the fit error
// dominates everywhere off the exact-fit set.
const WIDTH_PULL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct MembraneTwoQuestionModel {
    pub questions: [String; 2],
    pub e_a: f64,
    pub e_b: f64,
    pub gamma: f64,
    pub membrane_a: RhoMembrane,
    pub membrane_b: RhoMembrane,
}

/// Determinant of the Gram matrix of `{r, m_A, m_B}` with `|r| = 1`; it is
/// nonnegative iff a particle in the unit ball with these projections exists.
pub fn gram_determinant(e_a: f64, e_b: f64, gamma: f64) -> f64 {
    1.0 + 2.0 * e_a * e_b * gamma - e_a * e_a - e_b * e_b - gamma * gamma
}

impl MembraneTwoQuestionModel {
    pub fn new(
        questions: [String; 2],
        e_a: f64,
        e_b: f64,
        gamma: f64,
        membrane_a: RhoMembrane,
        membrane_b: RhoMembrane,
    ) -> Result<Self> {
        let model = Self {
            questions,
            e_a,
            e_b,
            gamma,
            membrane_a,
            membrane_b,
        };
        model.validate()?;
        Ok(model)
    }

    /// Both membranes uniform.
    pub fn uniform(questions: [String; 2], e_a: f64, e_b: f64, gamma: f64) -> Result<Self> {
        Self::new(
            questions,
            e_a,
            e_b,
            gamma,
            RhoMembrane::Uniform,
            RhoMembrane::Uniform,
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("e_a", self.e_a), ("e_b", self.e_b), ("gamma", self.gamma)] {
            if !v.is_finite() || v.abs() > 1.0 {
                return Err(Error::InconsistentGeometry(format!("{name} = {v} outside [-1, 1]")));
            }
        }
        let det = gram_determinant(self.e_a, self.e_b, self.gamma);
        if det < -GRAM_TOL {
            return Err(Error::InconsistentGeometry(format!(
                "no particle has coordinates ({}, {}) on axes with cosine {} (Gram determinant {det:e})",
                self.e_a, self.e_b, self.gamma
            )));
        }
        Ok(())
    }

    pub fn membrane(&self, question: usize) -> &RhoMembrane {
        if question == 0 {
            &self.membrane_a
        } else {
            &self.membrane_b
        }
    }

    pub fn coordinate(&self, question: usize) -> f64 {
        if question == 0 {
            self.e_a
        } else {
            self.e_b
        }
    }
}

fn order_table(first: &RhoMembrane, e_first: f64, second: &RhoMembrane, gamma: f64) -> Result<OrderProbabilities> {
    let p_first = membrane_cdf(first, e_first)?;
    let after_yes = membrane_cdf(second, gamma)?;
    let after_no = membrane_cdf(second, -gamma)?;
    Ok(OrderProbabilities::new(
        p_first * after_yes,
        p_first * (1.0 - after_yes),
        (1.0 - p_first) * after_no,
        (1.0 - p_first) * (1.0 - after_no),
    ))
}

pub fn predict_membrane_table(model: &MembraneTwoQuestionModel) -> Result<SequentialTable> {
    model.validate()?;
    let order_ab = order_table(&model.membrane_a, model.e_a, &model.membrane_b, model.gamma)?;
    let order_ba = order_table(&model.membrane_b, model.e_b, &model.membrane_a, model.gamma)?;
    SequentialTable::new(model.questions.clone(), order_ab, order_ba, Provenance::Model)
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Unconstrained vector → (e_a, e_b, gamma, a_A, b_A, a_B, b_B).
struct Decoded {
    e_a: f64,
    e_b: f64,
    gamma: f64,
    interval_a: (f64, f64),
    interval_b: (f64, f64),
}

fn decode_interval(mid_raw: f64, width_raw: f64) -> (f64, f64) {
    let mid = mid_raw.tanh() * (1.0 - MIN_HALF_WIDTH);
    let room = 1.0 - mid.abs() - MIN_HALF_WIDTH;
    let half = MIN_HALF_WIDTH + room * sigmoid(width_raw);
    ((mid - half).max(-1.0), (mid + half).min(1.0))
}

fn decode(x: &[f64]) -> Decoded {
    Decoded {
        e_a: x[0].tanh(),
        e_b: x[1].tanh(),
        gamma: x[2].tanh(),
        interval_a: decode_interval(x[3], x[4]),
        interval_b: decode_interval(x[5], x[6]),
    }
}

fn interval_cdf(a: f64, b: f64, e: f64) -> f64 {
    if e >= 1.0 {
        return 1.0;
    }
    ((e - a) / (b - a)).clamp(0.0, 1.0)
}

fn decoded_table(d: &Decoded) -> [f64; 8] {
    let (a_lo, a_hi) = d.interval_a;
    let (b_lo, b_hi) = d.interval_b;
    let fa = |e: f64| interval_cdf(a_lo, a_hi, e);
    let fb = |e: f64| interval_cdf(b_lo, b_hi, e);
    let (pa, pb) = (fa(d.e_a), fb(d.e_b));
    let (bg, bmg) = (fb(d.gamma), fb(-d.gamma));
    let (ag, amg) = (fa(d.gamma), fa(-d.gamma));
    [
        pa * bg,
        pa * (1.0 - bg),
        (1.0 - pa) * bmg,
        (1.0 - pa) * (1.0 - bmg),
        pb * ag,
        pb * (1.0 - ag),
        (1.0 - pb) * amg,
        (1.0 - pb) * (1.0 - amg),
    ]
}

/// Exact fit of a sequential table with interval membranes: seven parameters
/// (`e_A`, `e_B`, `gamma`, and the two support intervals), minimizing the
/// root-sum-square error over the eight entries. Gram infeasibility is
/// penalized, intervals are kept inside `[−1, 1]` with half-width at least
/// [`MIN_HALF_WIDTH`], and among equally good fits the widest intervals win,
/// so Born-consistent data recovers uniform membranes.
pub fn fit_membrane(table: &SequentialTable, config: &FitConfig) -> Result<FitReport> {
    table.validate()?;
    conditional_probabilities(table)?;
    let target = table.entries();
    let objective = |x: &[f64]| {
        let d = decode(x);
        let fit = rss(&decoded_table(&d), &target);
        let gram = (-gram_determinant(d.e_a, d.e_b, d.gamma)).max(0.0);
        let narrowness = (2.0 - (d.interval_a.1 - d.interval_a.0)) + (2.0 - (d.interval_b.1 - d.interval_b.0));
        fit + GRAM_PENALTY * gram + WIDTH_PULL * narrowness
    };

    let mut rng = seeded_rng(config.seed);
    let starts: Vec<Vec<f64>> = (0..config.starts.max(1))
        .map(|_| {
            let mut x: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
            for _ in 0..2 {
                x.push(rng.random_range(-1.0..1.0));
                x.push(rng.random_range(-1.0..3.0));
            }
            x
        })
        .collect();
    let (best_start, best) = multi_start(&objective, &starts, &config.simplex)
        .expect("at least one start");

    let d = decode(&best.x);
    // Geometry can sit a hair outside the feasible set after penalized search.
    let gamma = d.gamma;
    let (e_a, e_b) = project_feasible(d.e_a, d.e_b, gamma);
    let model = MembraneTwoQuestionModel::new(
        table.questions.clone(),
        e_a,
        e_b,
        gamma,
        RhoMembrane::interval(d.interval_a.0, d.interval_a.1)?,
        RhoMembrane::interval(d.interval_b.0, d.interval_b.1)?,
    )?;
    let predicted = predict_membrane_table(&model)?;
    let residual = table.rss_distance(&predicted);
    let (qa, qb) = (&table.questions[0], &table.questions[1]);
    let parameters = vec![
        (format!("e_{qa}"), e_a),
        (format!("e_{qb}"), e_b),
        ("gamma".to_string(), gamma),
        (format!("a_{qa}"), d.interval_a.0),
        (format!("b_{qa}"), d.interval_a.1),
        (format!("a_{qb}"), d.interval_b.0),
        (format!("b_{qb}"), d.interval_b.1),
    ];
    let converged = best.converged && config.tol.is_none_or(|t| residual <= t);
    Ok(FitReport {
        parameters,
        residual,
        predicted,
        iterations: best.iterations,
        converged,
        best_start,
    })
}

/// Shrinks `(e_a, e_b)` toward the origin until the Gram determinant is
/// nonnegative.
fn project_feasible(e_a: f64, e_b: f64, gamma: f64) -> (f64, f64) {
    if gram_determinant(e_a, e_b, gamma) >= 0.0 {
        return (e_a, e_b);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if gram_determinant(e_a * mid, e_b * mid, gamma) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (e_a * lo, e_b * lo)
}

/// Rebuilds the fitted model from a report produced by [`fit_membrane`].
pub fn model_from_report(report: &FitReport, questions: [String; 2]) -> Result<MembraneTwoQuestionModel> {
    let get = |name: String| {
        report
            .parameter(&name)
            .ok_or_else(|| Error::InvalidArgument(format!("report lacks parameter {name}")))
    };
    let (qa, qb) = (&questions[0], &questions[1]);
    MembraneTwoQuestionModel::new(
        questions.clone(),
        get(format!("e_{qa}"))?,
        get(format!("e_{qb}"))?,
        get("gamma".into())?,
        RhoMembrane::interval(get(format!("a_{qa}"))?, get(format!("b_{qa}"))?)?,
        RhoMembrane::interval(get(format!("a_{qb}"))?, get(format!("b_{qb}"))?)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{compute_q, compute_q_prime, predict_table, HilbertTwoQuestionModel};
    use crate::hilbert::{Projector, SpectralFamily, StateVector};
    use crate::C64;

    fn labels() -> [String; 2] {
        ["A".into(), "B".into()]
    }

    fn ket_along(v: [f64; 3]) -> StateVector {
        // Bloch vector -> ket.
        let theta = v[2].clamp(-1.0, 1.0).acos();
        let phi = v[1].atan2(v[0]);
        StateVector::new(vec![
            C64::new((theta / 2.0).cos(), 0.0),
            C64::from_polar((theta / 2.0).sin(), phi),
        ])
        .unwrap()
    }

    #[test]
    fn uniform_membranes_match_hilbert_prediction() {
        let r = [0.3, -0.5, (1.0f64 - 0.34).sqrt()];
        let ma = [0.0, 0.0, 1.0];
        let mb = [0.6, 0.0, 0.8];
        let dot = |x: [f64; 3], y: [f64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
        let membrane = MembraneTwoQuestionModel::uniform(labels(), dot(r, ma), dot(r, mb), dot(ma, mb)).unwrap();
        let hilbert = HilbertTwoQuestionModel::new(
            ket_along(r),
            SpectralFamily::yes_no(Projector::rank_one(&ket_along(ma))).unwrap(),
            SpectralFamily::yes_no(Projector::rank_one(&ket_along(mb))).unwrap(),
        )
        .unwrap();
        let tm = predict_membrane_table(&membrane).unwrap();
        let th = predict_table(&hilbert).unwrap();
        for (x, y) in tm.entries().iter().zip(th.entries()) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(compute_q(&tm).abs() < 1e-12);
        assert!(compute_q_prime(&tm).value.abs() < 1e-12);
    }

    #[test]
    fn aligned_axes_repeat_the_first_answer() {
        let m = MembraneTwoQuestionModel::uniform(labels(), 0.2, 0.2, 1.0).unwrap();
        let t = predict_membrane_table(&m).unwrap();
        assert_eq!(t.order_ab.yn, 0.0);
        assert_eq!(t.order_ab.ny, 0.0);
        assert_eq!(t.order_ba.yn, 0.0);
        assert_eq!(t.order_ba.ny, 0.0);
    }

    #[test]
    fn gram_infeasible_geometry_is_rejected() {
        // Orthogonal axes cannot both carry coordinate 0.9.
        assert!(matches!(
            MembraneTwoQuestionModel::uniform(labels(), 0.9, 0.9, 0.0),
            Err(Error::InconsistentGeometry(_))
        ));
    }

    #[test]
    fn interval_membranes_break_the_identities() {
        let m = MembraneTwoQuestionModel::new(
            labels(),
            0.1,
            0.2,
            0.3,
            RhoMembrane::interval(-0.4, 0.5).unwrap(),
            RhoMembrane::interval(-0.7, 0.4).unwrap(),
        )
        .unwrap();
        let t = predict_membrane_table(&m).unwrap();
        assert!(compute_q(&t).abs() > 1e-4);
        assert!(compute_q_prime(&t).value.abs() > 1e-4);
    }

    #[test]
    fn decoded_intervals_stay_inside_bounds() {
        for (m, w) in [(-30.0, 30.0), (30.0, 30.0), (0.0, -40.0), (5.0, 0.0)] {
            let (a, b) = decode_interval(m, w);
            assert!(a >= -1.0 && b <= 1.0 && b - a >= 2.0 * MIN_HALF_WIDTH * 0.99);
        }
    }
}
