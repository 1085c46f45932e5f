//! Rank-k numerical ranges of complex matrices.
//!
//! `Λ_k(A)` is the set of `μ` such that `μ I_k` is the leading block of some
//! unitary conjugation of `A`. It equals the intersection over `ξ` of the
//! half-planes `2 Re(e^{iξ} μ) <= λ_k(e^{iξ} A + e^{-iξ} A*)`, which is what
//! [`numrange`] samples and [`normal_exact`] computes exactly for normal
//! matrices. [`constructors`] produces the certifying isometries and solves
//! the quadratic matrix equations that reduce to them; [`canonical`] builds
//! the *-congruence blocks used to test isotropic dimensions.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the scalar to `f64`.

pub mod canonical;
pub mod constructors;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod matrix;
pub mod normal_exact;
pub mod numrange;
pub mod random;
pub mod scalar;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{Cx, Real};

pub use canonical::CanonicalSummand;
pub use constructors::{BPairing, SearchOptions};
pub use geometry::{HalfPlane, PolygonKind};
pub use numrange::{MembershipVerdict, SupportSample};

/// Complex scalar with `f64` parts.
pub type Complex64 = Cx<f64>;
/// Dense complex matrix with `f64` parts.
pub type ComplexMatrix = Matrix<f64>;
/// Dense complex matrix with `f32` parts.
pub type ComplexMatrix32 = Matrix<f32>;
pub type ConvexPolygon = geometry::ConvexPolygon<f64>;
pub type Isometry = constructors::Isometry<f64>;
pub type EquationSolution = constructors::EquationSolution<f64>;
pub type HermitianSpectrum = linalg::HermitianSpectrum<f64>;
pub type QrFactors = linalg::QrFactors<f64>;
pub type SchurFactors = linalg::SchurFactors<f64>;
pub type CsFactors = linalg::CsFactors<f64>;
pub type Svd = linalg::Svd<f64>;
