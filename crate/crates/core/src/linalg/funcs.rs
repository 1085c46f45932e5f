use crate::error::{Error, Result};
use crate::linalg::eigen::hermitian_eigen;
use crate::matrix::Matrix;
use crate::scalar::Real;

/// Hermitian positive semidefinite square root. Eigenvalues below
/// `-1e-10 ||P||` are rejected, smaller negative ones are clipped to zero.
pub fn psd_sqrt<T: Real>(p: &Matrix<T>) -> Result<Matrix<T>> {
    let spec = hermitian_eigen(p)?;
    let scale = spec
        .eigenvalues
        .iter()
        .fold(T::zero(), |m, &x| m.max(x.abs()));
    if let Some(&lo) = spec.eigenvalues.last() {
        if lo < -T::tol(1e-10) * scale {
            return Err(Error::Indefinite(lo.as_f64()));
        }
    }
    Ok(spec.map(|x| x.max(T::zero()).sqrt()))
}

/// `P^{-1/2}` for a Hermitian positive definite `P`.
pub fn pd_inv_sqrt<T: Real>(p: &Matrix<T>) -> Result<Matrix<T>> {
    let spec = hermitian_eigen(p)?;
    let lo = spec.eigenvalues.last().copied().unwrap_or_else(T::one);
    if lo <= T::tol(1e-10) {
        return Err(Error::NotPositiveDefinite(lo.as_f64()));
    }
    Ok(spec.map(|x| T::one() / x.sqrt()))
}

/// Number of eigenvalues `>= -tol` (zeros count as nonnegative).
pub fn count_nonneg<T: Real>(h: &Matrix<T>, tol: T) -> Result<usize> {
    Ok(hermitian_eigen(h)?
        .eigenvalues
        .iter()
        .filter(|&&x| x >= -tol)
        .count())
}

/// The `k`-th largest eigenvalue (1-based) of a Hermitian matrix.
pub fn lambda_k<T: Real>(h: &Matrix<T>, k: usize) -> Result<T> {
    let n = h.order()?;
    if k == 0 || k > n {
        return Err(Error::RankOutOfRange { k, n });
    }
    Ok(hermitian_eigen(h)?.eigenvalues[k - 1])
}
