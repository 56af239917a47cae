//! Finite-dimensional Hilbert-space measurement machinery.
//!
//! A conceptual entity is described by a unit vector (or a density matrix),
//! a measurement context by a spectral family of orthogonal projectors. Outcome
//! probabilities follow the Born rule and the post-measurement state follows
//! the Lüders rule, which makes every measurement here ideal and of the first
//! kind: repeating it immediately reproduces the previous outcome.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::rng::seeded_rng;
use crate::{CMatrix, CVector, C64};

/// Tolerance on the squared norm of a state vector.
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance for projector idempotence, hermiticity and completeness.
pub const PROJECTOR_TOL: f64 = 1e-10;
/// Minimum outcome probability for which a Lüders update is defined.
pub const UPDATE_EPS: f64 = 1e-12;
/// Clamping beyond this magnitude is reported at warn level.
pub const CLAMP_WARN: f64 = 1e-10;

/// Clamp a computed probability into `[0, 1]`, logging any correction.
pub fn clamp_probability(p: f64) -> f64 {
    let clamped = p.clamp(0.0, 1.0);
    let excess = (p - clamped).abs();
    if excess > CLAMP_WARN {
        log::warn!("probability {p:e} clamped to {clamped} (excess {excess:e})");
    } else if excess > 0.0 {
        log::debug!("probability {p:e} clamped to {clamped}");
    }
    clamped
}

fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// A pure state `|A⟩`: a unit complex vector of dimension at least 2.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
}

impl StateVector {
    /// Validates an already normalized amplitude vector.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::InvalidState(format!(
                "dimension {} is below 2",
                amplitudes.len()
            )));
        }
        let v = CVector::from_vec(amplitudes);
        let norm_sq = v.norm_squared();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "squared norm {norm_sq} differs from 1"
            )));
        }
        Ok(Self { amplitudes: v })
    }

    /// Normalizes arbitrary nonzero amplitudes.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let v = CVector::from_vec(amplitudes);
        let norm = v.norm();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::InvalidState("zero or non-finite vector".into()));
        }
        Self::new((v / C64::from(norm)).iter().copied().collect())
    }

    /// Real amplitudes, normalized.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    /// Computational basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[k] = C64::new(1.0, 0.0);
        Self::new(amps)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Equality up to global phase: `|⟨a|b⟩| = 1` within `tol`.
    pub fn same_ray(&self, other: &StateVector, tol: f64) -> bool {
        self.inner(other)
            .map(|z| (z.norm() - 1.0).abs() <= tol)
            .unwrap_or(false)
    }

    /// `|A⟩⟨A|`.
    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            entries: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }
}

/// A mixed state `ρ`: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        let n = entries.nrows();
        if n != entries.ncols() || n < 2 {
            return Err(Error::InvalidState(format!(
                "density matrix must be square with dimension >= 2, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let herm = frobenius(&(&entries - entries.adjoint()));
        if herm > NORM_TOL * n as f64 {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > NORM_TOL || trace.im.abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
        }
        let min_eig = min_eigenvalue(&entries);
        if min_eig < -1e-10 {
            return Err(Error::NotAState {
                min_eigenvalue: min_eig,
            });
        }
        Ok(Self { entries })
    }

    /// `𝟙/n`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            entries: CMatrix::identity(dim, dim) / C64::from(dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// Skips validation; callers guarantee Hermitian, unit trace, PSD up to
    /// their own tolerance.
    pub(crate) fn from_entries_unchecked(entries: CMatrix) -> Self {
        Self { entries }
    }

    /// Smallest eigenvalue of the (Hermitian part of the) matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.entries)
    }
}

pub(crate) fn min_eigenvalue(m: &CMatrix) -> f64 {
    let herm = (m + m.adjoint()) * C64::from(0.5);
    herm.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// An orthogonal projection operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: CMatrix,
    rank: usize,
}

impl Projector {
    /// Validates idempotence and hermiticity; the rank is read off the trace.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let n = matrix.nrows();
        if n != matrix.ncols() {
            return Err(Error::InvalidProjector("matrix is not square".into()));
        }
        let herm = frobenius(&(&matrix - matrix.adjoint()));
        let idem = frobenius(&(&matrix * &matrix - &matrix));
        if herm > PROJECTOR_TOL || idem > PROJECTOR_TOL {
            return Err(Error::InvalidProjector(format!(
                "hermiticity deviation {herm:e}, idempotence deviation {idem:e}"
            )));
        }
        let trace = matrix.trace().re;
        let rank = trace.round();
        if (trace - rank).abs() > 1e-8 || rank < 0.0 {
            return Err(Error::InvalidProjector(format!(
                "trace {trace} is not an integer rank"
            )));
        }
        Ok(Self {
            matrix,
            rank: rank as usize,
        })
    }

    /// `|v⟩⟨v|` for a unit vector.
    pub fn rank_one(v: &StateVector) -> Self {
        Self {
            matrix: v.to_density().entries,
            rank: 1,
        }
    }

    /// Projector onto the span of orthonormal columns.
    pub fn from_orthonormal_columns(columns: &CMatrix) -> Result<Self> {
        Self::new(columns * columns.adjoint())
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: CMatrix::zeros(dim, dim),
            rank: 0,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim),
            rank: dim,
        }
    }

    /// `𝟙 − M`.
    pub fn complement(&self) -> Self {
        let n = self.dim();
        Self {
            matrix: CMatrix::identity(n, n) - &self.matrix,
            rank: n - self.rank,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

/// A measurement context: orthogonal projectors summing to the identity, one
/// per outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFamily {
    projectors: Vec<Projector>,
    outcome_labels: Vec<String>,
}

impl SpectralFamily {
    pub fn new(projectors: Vec<Projector>, outcome_labels: Vec<String>) -> Result<Self> {
        if projectors.is_empty() {
            return Err(Error::InvalidFamily("no projectors".into()));
        }
        if projectors.len() != outcome_labels.len() {
            return Err(Error::InvalidFamily(format!(
                "{} projectors but {} labels",
                projectors.len(),
                outcome_labels.len()
            )));
        }
        let n = projectors[0].dim();
        for p in &projectors {
            check_dim(n, p.dim())?;
        }
        let sum = projectors
            .iter()
            .fold(CMatrix::zeros(n, n), |acc, p| acc + p.matrix());
        let completeness = frobenius(&(sum - CMatrix::identity(n, n)));
        if completeness > PROJECTOR_TOL {
            return Err(Error::InvalidFamily(format!(
                "projectors do not sum to identity (deviation {completeness:e})"
            )));
        }
        for (k, a) in projectors.iter().enumerate() {
            for b in projectors.iter().skip(k + 1) {
                let overlap = frobenius(&(a.matrix() * b.matrix()));
                if overlap > PROJECTOR_TOL {
                    return Err(Error::InvalidFamily(format!(
                        "projectors are not mutually orthogonal (overlap {overlap:e})"
                    )));
                }
            }
        }
        Ok(Self {
            projectors,
            outcome_labels,
        })
    }

    /// `{M, 𝟙 − M}` with outcomes `yes`/`no`.
    pub fn yes_no(m: Projector) -> Result<Self> {
        let complement = m.complement();
        Self::new(vec![m, complement], vec!["yes".into(), "no".into()])
    }

    /// Rank-one projectors onto the columns of a unitary matrix.
    pub fn from_unitary(u: &CMatrix) -> Result<Self> {
        let ranks = vec![1; u.ncols()];
        Self::from_unitary_ranks(u, &ranks)
    }

    /// Groups consecutive columns of a unitary into projectors of the given ranks.
    pub fn from_unitary_ranks(u: &CMatrix, ranks: &[usize]) -> Result<Self> {
        let n = u.nrows();
        if ranks.iter().sum::<usize>() != n || ranks.contains(&0) {
            return Err(Error::InvalidRanks {
                dim: n,
                ranks: ranks.to_vec(),
            });
        }
        let mut start = 0;
        let mut projectors = Vec::with_capacity(ranks.len());
        for &r in ranks {
            let cols = u.columns(start, r).into_owned();
            projectors.push(Projector::from_orthonormal_columns(&cols)?);
            start += r;
        }
        let labels = (0..ranks.len()).map(|k| k.to_string()).collect();
        Self::new(projectors, labels)
    }

    /// Computational-basis family of dimension `dim`.
    pub fn computational(dim: usize) -> Result<Self> {
        Self::from_unitary(&CMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn projectors(&self) -> &[Projector] {
        &self.projectors
    }

    pub fn projector(&self, outcome: usize) -> Result<&Projector> {
        self.projectors.get(outcome).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "outcome {outcome} out of range for a {}-outcome family",
                self.len()
            ))
        })
    }

    pub fn outcome_labels(&self) -> &[String] {
        &self.outcome_labels
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.projectors.iter().map(Projector::rank).collect()
    }

    /// Born probabilities of every outcome.
    pub fn probabilities<S: QuantumState + ?Sized>(&self, state: &S) -> Result<Vec<f64>> {
        self.projectors
            .iter()
            .map(|p| born_probability(state, p))
            .collect()
    }
}

/// Anything Born probabilities can be evaluated on.
pub trait QuantumState {
    fn dim(&self) -> usize;
    /// `⟨A|O|A⟩` or `Tr(ρ O)`.
    fn expectation(&self, op: &CMatrix) -> C64;
}

impl QuantumState for StateVector {
    fn dim(&self) -> usize {
        StateVector::dim(self)
    }

    fn expectation(&self, op: &CMatrix) -> C64 {
        self.amplitudes.dotc(&(op * &self.amplitudes))
    }
}

impl QuantumState for DensityMatrix {
    fn dim(&self) -> usize {
        DensityMatrix::dim(self)
    }

    fn expectation(&self, op: &CMatrix) -> C64 {
        (&self.entries * op).trace()
    }
}

/// Either kind of state, for APIs that store one.
#[derive(Debug, Clone, PartialEq)]
pub enum EntityState {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl QuantumState for EntityState {
    fn dim(&self) -> usize {
        match self {
            EntityState::Pure(s) => s.dim(),
            EntityState::Mixed(r) => r.dim(),
        }
    }

    fn expectation(&self, op: &CMatrix) -> C64 {
        match self {
            EntityState::Pure(s) => s.expectation(op),
            EntityState::Mixed(r) => r.expectation(op),
        }
    }
}

impl From<StateVector> for EntityState {
    fn from(s: StateVector) -> Self {
        EntityState::Pure(s)
    }
}

impl From<DensityMatrix> for EntityState {
    fn from(r: DensityMatrix) -> Self {
        EntityState::Mixed(r)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Born probability `⟨A|M|A⟩` (or `Tr(ρM)`), clamped into `[0, 1]`.
pub fn born_probability<S: QuantumState + ?Sized>(state: &S, m: &Projector) -> Result<f64> {
    check_dim(state.dim(), m.dim())?;
    Ok(clamp_probability(state.expectation(m.matrix()).re))
}

/// Lüders update `M|A⟩ / ‖M|A⟩‖`.
pub fn luders_update(state: &StateVector, m: &Projector) -> Result<StateVector> {
    let p = born_probability(state, m)?;
    if p <= UPDATE_EPS {
        return Err(Error::ZeroProbabilityOutcome { probability: p });
    }
    let projected = m.matrix() * state.amplitudes();
    let norm = projected.norm();
    Ok(StateVector {
        amplitudes: projected / C64::from(norm),
    })
}

/// Probability of a sequence of outcomes, each step a (family, outcome index)
/// pair, computed by chaining Born probabilities and Lüders updates. Equals
/// `⟨A|M_1 M_2 … M_k … M_2 M_1|A⟩`.
pub fn sequential_probability(
    state: &StateVector,
    steps: &[(&SpectralFamily, usize)],
) -> Result<f64> {
    if steps.is_empty() {
        return Err(Error::InvalidArgument("no measurement steps".into()));
    }
    for (family, _) in steps {
        check_dim(state.dim(), family.dim())?;
    }
    let mut current = state.clone();
    let mut total = 1.0;
    for (family, outcome) in steps {
        let m = family.projector(*outcome)?;
        let p = born_probability(&current, m)?;
        total *= p;
        if p <= UPDATE_EPS {
            return Ok(clamp_probability(total));
        }
        current = luders_update(&current, m)?;
    }
    Ok(clamp_probability(total))
}

/// `‖AB − BA‖_F`.
pub fn commutator_frobenius_norm(a: &Projector, b: &Projector) -> Result<f64> {
    check_dim(a.dim(), b.dim())?;
    Ok(frobenius(&commutator(a.matrix(), b.matrix())))
}

pub(crate) fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub(crate) fn frobenius_norm(m: &CMatrix) -> f64 {
    frobenius(m)
}

fn gaussian_complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-like random state from normalized complex Gaussian amplitudes.
pub fn random_state(dim: usize, seed: u64) -> Result<StateVector> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!("dimension {dim} is below 2")));
    }
    let mut rng = seeded_rng(seed);
    let amps = (0..dim).map(|_| gaussian_complex(&mut rng)).collect();
    StateVector::normalized(amps)
}

/// Haar-like random unitary: orthonormalized complex Gaussian columns.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> CMatrix {
    let g = DMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    // Modified Gram-Schmidt keeps the column order and is exact enough at
    // these dimensions.
    let mut q = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        let mut v: CVector = g.column(j).into_owned();
        for k in 0..j {
            let qk = q.column(k).into_owned();
            let proj = qk.dotc(&v);
            v -= qk * proj;
        }
        let norm = v.norm();
        q.set_column(j, &(v / C64::from(norm)));
    }
    q
}

/// Random spectral family whose projectors have the given ranks.
pub fn random_spectral_family(dim: usize, ranks: &[usize], seed: u64) -> Result<SpectralFamily> {
    if dim < 2 || ranks.iter().sum::<usize>() != dim || ranks.contains(&0) {
        return Err(Error::InvalidRanks {
            dim,
            ranks: ranks.to_vec(),
        });
    }
    let mut rng = seeded_rng(seed);
    let u = random_unitary(dim, &mut rng);
    SpectralFamily::from_unitary_ranks(&u, ranks)
}

/// A conceptual entity: a state plus the named measurement contexts it can be
/// subjected to.
#[derive(Debug, Clone)]
pub struct ConceptualEntity {
    pub label: String,
    state: EntityState,
    contexts: BTreeMap<String, SpectralFamily>,
}

impl ConceptualEntity {
    pub fn new(label: impl Into<String>, state: impl Into<EntityState>) -> Self {
        Self {
            label: label.into(),
            state: state.into(),
            contexts: BTreeMap::new(),
        }
    }

    pub fn with_context(mut self, name: impl Into<String>, family: SpectralFamily) -> Result<Self> {
        check_dim(self.state.dim(), family.dim())?;
        self.contexts.insert(name.into(), family);
        Ok(self)
    }

    pub fn state(&self) -> &EntityState {
        &self.state
    }

    pub fn context(&self, name: &str) -> Result<&SpectralFamily> {
        self.contexts
            .get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown context {name:?}")))
    }

    pub fn contexts(&self) -> impl Iterator<Item = (&str, &SpectralFamily)> {
        self.contexts.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Transition probability from the current state to outcome `outcome` of
    /// context `name`.
    pub fn outcome_probability(&self, name: &str, outcome: usize) -> Result<f64> {
        let family = self.context(name)?;
        born_probability(&self.state, family.projector(outcome)?)
    }

    /// Performs context `name` with a given outcome, replacing the state by its
    /// Lüders update. Only defined for pure states.
    pub fn measure(&mut self, name: &str, outcome: usize) -> Result<f64> {
        let family = self.context(name)?.clone();
        let m = family.projector(outcome)?;
        match &self.state {
            EntityState::Pure(s) => {
                let p = born_probability(s, m)?;
                self.state = EntityState::Pure(luders_update(s, m)?);
                Ok(p)
            }
            EntityState::Mixed(r) => {
                let p = born_probability(r, m)?;
                if p <= UPDATE_EPS {
                    return Err(Error::ZeroProbabilityOutcome { probability: p });
                }
                let updated = m.matrix() * r.entries() * m.matrix() / C64::from(p);
                self.state = EntityState::Mixed(DensityMatrix::new(updated)?);
                Ok(p)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn ket0() -> StateVector {
        StateVector::basis(2, 0).unwrap()
    }

    fn ket_plus() -> StateVector {
        StateVector::new(vec![c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap()
    }

    fn naive_expectation(psi: &CVector, m: &CMatrix) -> C64 {
        let n = psi.len();
        let mut total = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                total += psi[i].conj() * m[(i, j)] * psi[j];
            }
        }
        total
    }

    #[test]
    fn born_eigenstate_and_superposition() {
        let m = Projector::rank_one(&ket0());
        assert_eq!(born_probability(&ket0(), &m).unwrap(), 1.0);
        assert!((born_probability(&ket_plus(), &m).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn born_matches_naive_oracle() {
        for seed in 0..200u64 {
            let dim = 2 + (seed % 5) as usize;
            let state = random_state(dim, seed).unwrap();
            let family = random_spectral_family(dim, &[1, dim - 1], seed + 7).unwrap();
            let m = &family.projectors()[0];
            let oracle = naive_expectation(state.amplitudes(), m.matrix()).re;
            let got = born_probability(&state, m).unwrap();
            assert!((got - oracle).abs() < 1e-12, "seed {seed}: {got} vs {oracle}");
        }
    }

    #[test]
    fn born_density_matches_pure() {
        let s = random_state(3, 4).unwrap();
        let f = random_spectral_family(3, &[2, 1], 5).unwrap();
        let a = born_probability(&s, &f.projectors()[0]).unwrap();
        let b = born_probability(&s.to_density(), &f.projectors()[0]).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn born_dimension_mismatch() {
        let m = Projector::identity(3);
        assert_eq!(
            born_probability(&ket0(), &m),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn luders_examples() {
        let m0 = Projector::rank_one(&ket0());
        assert!(luders_update(&ket0(), &m0).unwrap().same_ray(&ket0(), 1e-12));
        assert!(luders_update(&ket_plus(), &m0)
            .unwrap()
            .same_ray(&ket0(), 1e-12));
        let m1 = Projector::rank_one(&StateVector::basis(2, 1).unwrap());
        assert!(matches!(
            luders_update(&ket0(), &m1),
            Err(Error::ZeroProbabilityOutcome { .. })
        ));
    }

    #[test]
    fn luders_is_idempotent() {
        for seed in 0..50 {
            let s = random_state(4, seed).unwrap();
            let f = random_spectral_family(4, &[2, 2], seed + 100).unwrap();
            let m = &f.projectors()[0];
            let once = luders_update(&s, m).unwrap();
            let twice = luders_update(&once, m).unwrap();
            assert!(once.same_ray(&twice, 1e-12));
            assert!((born_probability(&once, m).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sequential_commuting_and_repetition() {
        let s = random_state(3, 11).unwrap();
        let a = SpectralFamily::yes_no(Projector::rank_one(&StateVector::basis(3, 0).unwrap()))
            .unwrap();
        let b = SpectralFamily::yes_no(Projector::rank_one(&StateVector::basis(3, 2).unwrap()))
            .unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let ab = sequential_probability(&s, &[(&a, i), (&b, j)]).unwrap();
                let ba = sequential_probability(&s, &[(&b, j), (&a, i)]).unwrap();
                assert!((ab - ba).abs() < 1e-12);
            }
        }
        let single = sequential_probability(&s, &[(&a, 0)]).unwrap();
        let repeated = sequential_probability(&s, &[(&a, 0), (&a, 0)]).unwrap();
        assert!((single - repeated).abs() < 1e-12);
        assert!((single - born_probability(&s, &a.projectors()[0]).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn sequential_rejects_empty_and_mismatch() {
        let s = ket0();
        assert!(sequential_probability(&s, &[]).is_err());
        let f = SpectralFamily::computational(3).unwrap();
        assert!(matches!(
            sequential_probability(&s, &[(&f, 0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn random_generators() {
        assert_eq!(random_state(2, 9).unwrap(), random_state(2, 9).unwrap());
        assert!((random_state(3, 1).unwrap().amplitudes().norm_squared() - 1.0).abs() < 1e-12);
        let f = random_spectral_family(4, &[1, 3], 3).unwrap();
        assert_eq!(f.ranks(), vec![1, 3]);
        let traces: Vec<f64> = f.projectors().iter().map(|p| p.matrix().trace().re).collect();
        assert!((traces[0] - 1.0).abs() < 1e-10 && (traces[1] - 3.0).abs() < 1e-10);
        assert!(matches!(
            random_spectral_family(4, &[1, 2], 3),
            Err(Error::InvalidRanks { .. })
        ));
    }

    #[test]
    fn commutator_examples() {
        let m0 = Projector::rank_one(&ket0());
        let mp = Projector::rank_one(&ket_plus());
        assert_eq!(commutator_frobenius_norm(&m0, &m0).unwrap(), 0.0);
        let v = commutator_frobenius_norm(&m0, &mp).unwrap();
        assert!((v - FRAC_1_SQRT_2).abs() < 1e-12, "{v}");
        let d1 = Projector::rank_one(&StateVector::basis(3, 1).unwrap());
        let d2 = Projector::rank_one(&StateVector::basis(3, 2).unwrap());
        assert!(commutator_frobenius_norm(&d1, &d2).unwrap() < 1e-12);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(StateVector::new(vec![c(1.0), c(1.0)]).is_err());
        assert!(StateVector::new(vec![c(1.0)]).is_err());
        let not_proj = CMatrix::from_element(2, 2, c(1.0));
        assert!(Projector::new(not_proj).is_err());
        let m0 = Projector::rank_one(&ket0());
        assert!(SpectralFamily::new(vec![m0.clone()], vec!["y".into()]).is_err());
        assert!(SpectralFamily::new(vec![m0.clone(), m0], vec!["a".into(), "b".into()]).is_err());
    }

    #[test]
    fn entity_contexts_and_measurement() {
        let gore = SpectralFamily::yes_no(Projector::rank_one(&ket0())).unwrap();
        let mut entity = ConceptualEntity::new("Honesty", ket_plus())
            .with_context("gore", gore)
            .unwrap();
        assert!((entity.outcome_probability("gore", 0).unwrap() - 0.5).abs() < 1e-12);
        entity.measure("gore", 0).unwrap();
        assert!((entity.outcome_probability("gore", 0).unwrap() - 1.0).abs() < 1e-12);
        assert!(entity
            .clone()
            .with_context("bad", SpectralFamily::computational(3).unwrap())
            .is_err());

        let mut mixed = ConceptualEntity::new("Honesty", DensityMatrix::maximally_mixed(2))
            .with_context("gore", SpectralFamily::computational(2).unwrap())
            .unwrap();
        assert!((mixed.measure("gore", 1).unwrap() - 0.5).abs() < 1e-12);
        assert!((mixed.outcome_probability("gore", 1).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_validation() {
        let bad = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.5), c(-0.5)]));
        assert!(matches!(
            DensityMatrix::new(bad),
            Err(Error::NotAState { .. })
        ));
        assert!(DensityMatrix::new(ket_plus().to_density().entries().clone()).is_ok());
    }
}
