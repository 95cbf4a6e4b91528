//! Exact construction and verification of Miquel configurations.
//!
//! The geometry kernels ([`areal`], [`cartesian`]) are generic over
//! [`Scalar`]. Instantiated with [`ExactRational`] they evaluate concrete
//! figures; instantiated with [`RationalFunction`] over indeterminate side
//! lengths and positions they produce the polynomial identities that
//! [`prover`] certifies.

pub mod areal;
pub mod cartesian;
pub mod error;
pub mod poly;
pub mod prover;
pub mod ratfunc;
pub mod sampling;
pub mod scalar;
pub mod singular;

pub use areal::{ArealCircle, ArealLine, ArealPoint, TriangleMetric};
pub use cartesian::{
    CartCircle, CartPoint, CartesianClaim, CartesianConfig, CartesianFigure, ExactComplex,
    Similarity, SingularBridge,
};
pub use error::{EvalError, GeometryError, ParseRationalError};
pub use poly::{poly_canonical, Monomial, MultiPoly};
pub use prover::{Claim, Context, ProofReport, ProofStatus};
pub use ratfunc::{is_identically_zero, RationalFunction};
pub use sampling::{Sampler, SweepMode, SweepSummary};
pub use scalar::{ExactRational, Scalar};
pub use singular::{SingularClaim, SingularConfig, SingularFigure, VerificationReport};
