//! Extended Bloch representation.
//!
//! Density matrices of dimension `n` map to real vectors of length `n² − 1`
//! through a generalized Gell-Mann basis, scaled so that pure states sit on the
//! unit sphere. A nondegenerate measurement is the simplex spanned by the
//! images of its eigenstates. With a uniform membrane the collapse
//! probabilities are the barycentric coordinates of the particle's orthogonal
//! projection onto that simplex, which coincide with the Born probabilities.
//! Non-uniform membranes ([`membrane`]) are restricted to `n = 2`.

pub mod membrane;
pub mod model;
pub mod replicability;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hilbert::{min_eigenvalue, DensityMatrix, QuantumState, SpectralFamily};
use crate::{CMatrix, C64};

pub use membrane::{
    collapse_probabilities_membrane, membrane_cdf, sample_collapse, universal_measurement_probability,
    Answer, RhoMembrane, UniversalEstimate,
};
pub use model::{fit_membrane, predict_membrane_table, MembraneTwoQuestionModel};
pub use replicability::{simulate_replicability, MemoryPolicy, ReplicabilityStats};

/// Positivity tolerance for reconstructed density matrices.
pub const PSD_TOL: f64 = 1e-9;

/// Generalized Gell-Mann matrices: Hermitian, traceless, `Tr(Λ_i Λ_j) = 2δ_ij`.
///
/// Ordering: symmetric `(j,k)` pairs with `j < k` in lexicographic order, then
/// the antisymmetric ones in the same order, then the `n − 1` diagonal ones.
/// For `n = 2` this is `(σ_x, σ_y, σ_z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBasis {
    n: usize,
    generators: Vec<CMatrix>,
}

impl GeneratorBasis {
    pub fn gell_mann(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("dimension {n} is below 2")));
        }
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let mut generators = Vec::with_capacity(n * n - 1);
        for j in 0..n {
            for k in (j + 1)..n {
                let mut m = CMatrix::from_element(n, n, zero);
                m[(j, k)] = one;
                m[(k, j)] = one;
                generators.push(m);
            }
        }
        for j in 0..n {
            for k in (j + 1)..n {
                let mut m = CMatrix::from_element(n, n, zero);
                m[(j, k)] = -i;
                m[(k, j)] = i;
                generators.push(m);
            }
        }
        for l in 1..n {
            let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
            let mut m = CMatrix::from_element(n, n, zero);
            for d in 0..l {
                m[(d, d)] = C64::new(scale, 0.0);
            }
            m[(l, l)] = C64::new(-(l as f64) * scale, 0.0);
            generators.push(m);
        }
        Ok(Self { n, generators })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    /// Factor between `Tr(ρ Λ_i)` and the unit-sphere coordinates,
    /// `√(n / (2(n − 1)))`.
    pub fn scale(&self) -> f64 {
        let n = self.n as f64;
        (n / (2.0 * (n - 1.0))).sqrt()
    }
}

/// Point of the generalized Bloch ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochPoint {
    pub coords: Vec<f64>,
    pub n: usize,
}

impl BlochPoint {
    pub fn new(coords: Vec<f64>, n: usize) -> Result<Self> {
        if n < 2 || coords.len() != n * n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n * n - 1,
                found: coords.len(),
            });
        }
        Ok(Self { coords, n })
    }

    pub fn origin(n: usize) -> Self {
        Self {
            coords: vec![0.0; n * n - 1],
            n,
        }
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &BlochPoint) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, factor: f64) -> BlochPoint {
        BlochPoint {
            coords: self.coords.iter().map(|c| c * factor).collect(),
            n: self.n,
        }
    }
}

pub fn state_to_bloch<S: QuantumState + ?Sized>(state: &S, basis: &GeneratorBasis) -> Result<BlochPoint> {
    if state.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: state.dim(),
        });
    }
    let k = basis.scale();
    let coords = basis
        .generators()
        .iter()
        .map(|g| k * state.expectation(g).re)
        .collect();
    BlochPoint::new(coords, basis.dim())
}

/// Inverse of [`state_to_bloch`]; fails with `NotAState` outside the state body.
pub fn bloch_to_density(point: &BlochPoint, basis: &GeneratorBasis) -> Result<DensityMatrix> {
    let n = basis.dim();
    if point.n != n || point.coords.len() != n * n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n * n - 1,
            found: point.coords.len(),
        });
    }
    let k = basis.scale();
    let mut rho = CMatrix::identity(n, n) / C64::from(n as f64);
    for (c, g) in point.coords.iter().zip(basis.generators()) {
        rho += g * C64::from(0.5 * c / k);
    }
    let min_eig = min_eigenvalue(&rho);
    if min_eig < -PSD_TOL {
        return Err(Error::NotAState {
            min_eigenvalue: min_eig,
        });
    }
    Ok(DensityMatrix::from_entries_unchecked(rho))
}

/// Simplex whose vertices are the images of a nondegenerate measurement's
/// eigenstates.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSimplex {
    pub vertices: Vec<BlochPoint>,
    pub n: usize,
}

impl MeasurementSimplex {
    /// Largest deviation of a vertex dot product from `1` (diagonal) or
    /// `−1/(n − 1)` (off-diagonal).
    pub fn geometry_deviation(&self) -> f64 {
        let off = -1.0 / (self.n as f64 - 1.0);
        let mut worst: f64 = 0.0;
        for (j, a) in self.vertices.iter().enumerate() {
            for (k, b) in self.vertices.iter().enumerate() {
                let target = if j == k { 1.0 } else { off };
                worst = worst.max((a.dot(b) - target).abs());
            }
        }
        worst
    }
}

pub fn simplex_of(family: &SpectralFamily, basis: &GeneratorBasis) -> Result<MeasurementSimplex> {
    let ranks = family.ranks();
    if ranks.iter().any(|&r| r != 1) {
        return Err(Error::DegenerateFamily { ranks });
    }
    if family.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: family.dim(),
        });
    }
    let vertices = family
        .projectors()
        .iter()
        .map(|p| {
            let rho = DensityMatrix::from_entries_unchecked(p.matrix().clone());
            state_to_bloch(&rho, basis)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasurementSimplex {
        vertices,
        n: basis.dim(),
    })
}

/// Barycentric coordinates of the orthogonal projection of `particle` onto
/// the affine hull of the simplex. These are the collapse probabilities of a
/// uniform membrane.
pub fn collapse_probabilities_uniform(
    particle: &BlochPoint,
    simplex: &MeasurementSimplex,
) -> Result<Vec<f64>> {
    let n = simplex.n;
    if particle.n != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: particle.n,
        });
    }
    // Minimize |Σ λ_j v_j − x|² subject to Σ λ_j = 1 via the KKT system.
    let mut kkt = DMatrix::<f64>::zeros(n + 1, n + 1);
    let mut rhs = DVector::<f64>::zeros(n + 1);
    for j in 0..n {
        for k in 0..n {
            kkt[(j, k)] = simplex.vertices[j].dot(&simplex.vertices[k]);
        }
        kkt[(j, n)] = 1.0;
        kkt[(n, j)] = 1.0;
        rhs[j] = simplex.vertices[j].dot(particle);
    }
    rhs[n] = 1.0;
    let solution = kkt
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::InvalidGeometry("simplex vertices are affinely dependent".into()))?;
    let mut probs: Vec<f64> = solution.iter().take(n).copied().collect();
    for p in &mut probs {
        if *p < -PSD_TOL || *p > 1.0 + PSD_TOL {
            return Err(Error::InvalidGeometry(format!(
                "projection falls outside the simplex (barycentric {p})"
            )));
        }
        *p = p.clamp(0.0, 1.0);
    }
    Ok(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{born_probability, random_spectral_family, random_state, StateVector};

    fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
        (a * b).trace()
    }

    #[test]
    fn generators_are_orthonormal() {
        for n in 2..=5 {
            let basis = GeneratorBasis::gell_mann(n).unwrap();
            assert_eq!(basis.generators().len(), n * n - 1);
            for (i, a) in basis.generators().iter().enumerate() {
                assert!((a - a.adjoint()).norm() < 1e-14);
                assert!(a.trace().norm() < 1e-14);
                for (j, b) in basis.generators().iter().enumerate() {
                    let t = trace_product(a, b);
                    let want = if i == j { 2.0 } else { 0.0 };
                    assert!((t.re - want).abs() < 1e-10 && t.im.abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn convention_anchors() {
        let b2 = GeneratorBasis::gell_mann(2).unwrap();
        let p = state_to_bloch(&StateVector::basis(2, 0).unwrap(), &b2).unwrap();
        assert_eq!(p.coords, vec![0.0, 0.0, 1.0]);
        let mixed = state_to_bloch(&DensityMatrix::maximally_mixed(4), &GeneratorBasis::gell_mann(4).unwrap()).unwrap();
        assert!(mixed.norm() < 1e-15);
        let rho = bloch_to_density(&BlochPoint::origin(3), &GeneratorBasis::gell_mann(3).unwrap()).unwrap();
        assert!((rho.entries() - DensityMatrix::maximally_mixed(3).entries()).norm() < 1e-15);
        let up = bloch_to_density(&BlochPoint::new(vec![0.0, 0.0, 1.0], 2).unwrap(), &b2).unwrap();
        assert!((up.entries() - StateVector::basis(2, 0).unwrap().to_density().entries()).norm() < 1e-15);
    }

    #[test]
    fn pure_states_are_unit_and_round_trip() {
        for n in 2..=4 {
            let basis = GeneratorBasis::gell_mann(n).unwrap();
            for seed in 0..50 {
                let s = random_state(n, seed).unwrap();
                let p = state_to_bloch(&s, &basis).unwrap();
                assert!((p.norm() - 1.0).abs() < 1e-10);
                let back = bloch_to_density(&p, &basis).unwrap();
                assert!((back.entries() - s.to_density().entries()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn antipode_of_pure_state_in_three_dims_is_not_a_state() {
        let basis = GeneratorBasis::gell_mann(3).unwrap();
        let p = state_to_bloch(&StateVector::basis(3, 0).unwrap(), &basis).unwrap();
        let neg = p.scaled(-1.0);
        assert!((neg.norm() - 1.0).abs() < 1e-12);
        match bloch_to_density(&neg, &basis) {
            Err(Error::NotAState { min_eigenvalue }) => {
                assert!((min_eigenvalue + 1.0 / 3.0).abs() < 1e-10)
            }
            other => panic!("expected NotAState, got {other:?}"),
        }
        // In two dimensions every unit vector is a state.
        let b2 = GeneratorBasis::gell_mann(2).unwrap();
        assert!(bloch_to_density(&BlochPoint::new(vec![0.0, 0.0, -1.0], 2).unwrap(), &b2).is_ok());
    }

    #[test]
    fn simplex_geometry() {
        let b2 = GeneratorBasis::gell_mann(2).unwrap();
        let s2 = simplex_of(&SpectralFamily::computational(2).unwrap(), &b2).unwrap();
        assert_eq!(s2.vertices[0].coords, vec![0.0, 0.0, 1.0]);
        assert_eq!(s2.vertices[1].coords, vec![0.0, 0.0, -1.0]);
        let b3 = GeneratorBasis::gell_mann(3).unwrap();
        let s3 = simplex_of(&SpectralFamily::computational(3).unwrap(), &b3).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                if j != k {
                    assert!((s3.vertices[j].dot(&s3.vertices[k]) + 0.5).abs() < 1e-9);
                }
            }
        }
        let degenerate = random_spectral_family(3, &[2, 1], 1).unwrap();
        assert!(matches!(
            simplex_of(&degenerate, &b3),
            Err(Error::DegenerateFamily { .. })
        ));
    }

    #[test]
    fn uniform_collapse_examples_and_born_equivalence() {
        let b3 = GeneratorBasis::gell_mann(3).unwrap();
        let family = random_spectral_family(3, &[1, 1, 1], 8).unwrap();
        let simplex = simplex_of(&family, &b3).unwrap();
        let at_vertex = collapse_probabilities_uniform(&simplex.vertices[1], &simplex).unwrap();
        assert!((at_vertex[1] - 1.0).abs() < 1e-10);
        let centre = collapse_probabilities_uniform(&BlochPoint::origin(3), &simplex).unwrap();
        assert!(centre.iter().all(|p| (p - 1.0 / 3.0).abs() < 1e-12));

        for seed in 0..100 {
            let n = 2 + (seed % 3) as usize;
            let basis = GeneratorBasis::gell_mann(n).unwrap();
            let state = random_state(n, seed).unwrap();
            let family = random_spectral_family(n, &vec![1; n], seed + 1000).unwrap();
            let simplex = simplex_of(&family, &basis).unwrap();
            assert!(simplex.geometry_deviation() < 1e-9);
            let particle = state_to_bloch(&state, &basis).unwrap();
            let bary = collapse_probabilities_uniform(&particle, &simplex).unwrap();
            for (b, m) in bary.iter().zip(family.projectors()) {
                assert!((b - born_probability(&state, m).unwrap()).abs() < 1e-10);
            }
        }
    }
}
