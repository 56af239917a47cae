//! Quantum-cognition measurement models.
//!
//! The crate covers four layers:
//!
//! * [`hilbert`]: finite-dimensional states, projectors, Born probabilities and
//!   Lüders updates for conceptual entities.
//! * [`order`]: question-order diagnostics on two-question sequential tables
//!   (the `q` and `q'` quantities) and best-fit Hilbert models.
//! * [`bloch`]: the extended Bloch representation, ρ-membranes with non-Born
//!   collapse statistics, universal-measurement averaging, exact membrane fits
//!   and response-replicability simulation.
//! * [`fock`]: concept-combination analytics (two-sector Fock weights,
//!   over/underextension, Kolmogorov bounds, CHSH, Bose-Einstein vs
//!   Maxwell-Boltzmann statistics).
//!
//! [`io`] holds the dataset schemas, report emission and the command-line
//! front end used by the `qcog` binary.

pub mod bloch;
pub mod error;
pub mod fock;
pub mod hilbert;
pub mod io;
pub mod optimize;
pub mod order;
pub mod rng;

pub use error::{Error, Result};
pub use hilbert::{
    born_probability, commutator_frobenius_norm, luders_update, random_spectral_family,
    random_state, sequential_probability, ConceptualEntity, DensityMatrix, Projector,
    SpectralFamily, StateVector,
};
pub use order::{
    compute_q, compute_q_prime, conditional_probabilities, fit_hilbert_2d, predict_table,
    FitConfig, FitReport, HilbertTwoQuestionModel, OrderProbabilities, SequentialTable,
};

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;
