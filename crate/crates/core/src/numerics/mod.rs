//! Scalars, sparse linear algebra over structured keys, and the N-way QFT.
//!
//! Two scalar regimes are kept apart: exact [`Rational`] for generalized and
//! classical machines, where decisions hinge on exact zero, and
//! double-precision [`Amplitude`] for quantum simulation.

mod qft;
mod rational;
mod sparse;

pub use qft::{qft_amplitude, qft_coefficients, root_of_unity};
pub use rational::{format_rational, parse_rational, rational_serde, Rational};
pub use sparse::{
    check_columns_orthonormal, ColumnViolation, OrthonormalityReport, Scalar, SparseMap,
    SparseVector,
};

/// Complex amplitude of a quantum transition.
pub type Amplitude = num::Complex<f64>;

/// Global tolerance for probability comparisons and well-formedness.
pub const EPS_NUM: f64 = 1e-9;

/// Amplitudes below this magnitude are dropped after each operator application.
pub const DROP_THRESHOLD: f64 = 1e-15;
