//! Dense complex linear algebra used by the rest of the crate.

pub mod csd;
pub mod eigen;
pub mod funcs;
pub mod lu;
pub mod qr;
pub mod schur;
pub mod svd;

pub use csd::{cs_decompose, CsFactors};
pub use eigen::{hermitian_eigen, HermitianSpectrum};
pub use funcs::{count_nonneg, lambda_k, pd_inv_sqrt, psd_sqrt};
pub use lu::{inverse, solve, solve_right};
pub use qr::{complete_to_unitary, orthonormalize, qr, thin_qr, QrFactors};
pub use schur::{complex_schur, hessenberg, reorder_schur, triangular_eigenvectors, SchurFactors};
pub use svd::{nearest_unitary, operator_norm, svd, Svd};
