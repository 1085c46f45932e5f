use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::eigen::jacobi_rotation;
use crate::linalg::qr::complete_to_unitary;
use crate::matrix::Matrix;
use crate::scalar::{Cx, Real};

const MAX_SWEEPS: usize = 60;

/// `A = U diag(sigma) V*` with `U` (`m x m`) and `V` (`n x n`) unitary.
#[derive(Clone, Debug)]
pub struct Svd<T> {
    pub u: Matrix<T>,
    /// `min(m, n)` singular values, descending.
    pub sigma: Vec<T>,
    pub v: Matrix<T>,
}

impl<T: Real> Svd<T> {
    /// `U Sigma V*`.
    pub fn reconstruct(&self) -> Matrix<T> {
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut s = Matrix::zeros(m, n);
        for (i, &x) in self.sigma.iter().enumerate() {
            s[(i, i)] = Cx::new(x, T::zero());
        }
        &(&self.u * &s) * &self.v.adjoint()
    }
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd<T: Real>(a: &Matrix<T>) -> Result<Svd<T>> {
    a.check_finite()?;
    if a.rows() < a.cols() {
        let s = svd(&a.adjoint())?;
        return Ok(Svd {
            u: s.v,
            sigma: s.sigma,
            v: s.u,
        });
    }
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut v = Matrix::identity(n);
    let eps = T::epsilon();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        converged = true;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), Cx::zero());
                for i in 0..m {
                    let (x, y) = (w[(i, p)], w[(i, q)]);
                    alpha = alpha + x.norm_sqr();
                    beta = beta + y.norm_sqr();
                    gamma = gamma + x.conj() * y;
                }
                if gamma.is_zero() || gamma.norm() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                converged = false;
                let g = jacobi_rotation(alpha, beta, gamma);
                w.rotate_cols(p, q, g, 0..m);
                v.rotate_cols(p, q, g, 0..n);
            }
        }
        if converged {
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence("one-sided Jacobi SVD"));
    }

    let norms: Vec<T> = (0..n)
        .map(|j| (0..m).map(|i| w[(i, j)].norm_sqr()).fold(T::zero(), |x, y| x + y).sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(std::cmp::Ordering::Equal));
    let sigma: Vec<T> = order.iter().map(|&j| norms[j]).collect();
    let v = v.select_columns(&order);

    let floor = T::min_positive_value() * T::lit(1e10);
    let rank = sigma.iter().take_while(|&&s| s > floor).count();
    let mut u_cols = Matrix::zeros(m, rank);
    for (c, &j) in order.iter().take(rank).enumerate() {
        for i in 0..m {
            u_cols[(i, c)] = w[(i, j)] / norms[j];
        }
    }
    let u = if rank == 0 {
        Matrix::identity(m)
    } else {
        complete_to_unitary(&u_cols)?
    };
    Ok(Svd { u, sigma, v })
}

/// Spectral norm (largest singular value).
pub fn operator_norm<T: Real>(a: &Matrix<T>) -> Result<T> {
    Ok(svd(a)?.sigma.first().copied().unwrap_or_else(T::zero))
}

/// Nearest unitary in the Frobenius norm (`U V*` from the SVD).
pub fn nearest_unitary<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let s = svd(a)?;
    Ok(&s.u * &s.v.adjoint())
}
