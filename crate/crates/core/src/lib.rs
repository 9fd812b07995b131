//! Exact structure-constant toolkit for finite-dimensional quasi-Hopf algebras
//! and dual quasi-Hopf algebras.
//!
//! Everything is generic over a [`Scalar`] field type. [`Rational`] and [`Fp`]
//! are the two concrete fields; the `*Q` aliases fix the rationals.

pub mod algebra;
pub mod battery;
pub mod bimodule;
pub mod canonical;
pub mod cointegrals;
pub mod corpus;
pub mod dual;
pub mod dual_integrals;
pub mod error;
pub mod fixture;
pub mod integrals;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod tensor;

pub use algebra::{
    gauge_twist, normalize_alpha_beta, verify_axioms, verify_quasi_bialgebra, verify_quasi_hopf, GaugeTransformation,
    QuasiBialgebra, QuasiHopfAlgebra, StructureTensor,
};
pub use canonical::{compute_canonical, compute_canonical_without_inverse, verify_canonical_identities, CanonicalElements};
pub use error::{Error, Result};
pub use integrals::{integral_space, IntegralSpace, Side, ThetaPair};
pub use linalg::{invert, kernel_basis, solve_linear, Matrix, Subspace};
pub use report::{Check, Failure, Status, VerificationReport};
pub use scalar::{FieldKind, FieldSpec, Fp, Rational, Scalar, ScalarParseError};
pub use tensor::{Element, Functional, Tensor};

pub type QuasiHopfQ = QuasiHopfAlgebra<Rational>;
pub type QuasiHopfFp = QuasiHopfAlgebra<Fp>;
