//! Search for isometries `V` (`n x k`) with `V* (A - mu I) V = 0`.

use crate::constructors::compress::compress_normal;
use crate::constructors::lsq::{flatten, linear_map_columns, minimize, unflatten};
use crate::error::{Error, Result};
use crate::linalg::{complete_to_unitary, complex_schur, orthonormalize};
use crate::matrix::Matrix;
use crate::random::{gaussian, Seeded};
use crate::scalar::{Cx, Real};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_0f_1a_2008;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Random orthonormal starting frames.
    pub restarts: usize,
    pub seed: u64,
    /// Accepted steps per restart.
    pub max_iter: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            restarts: 20,
            seed: DEFAULT_SEED,
            max_iter: 500,
        }
    }
}

/// `n x k` matrix with orthonormal columns and the compression residual
/// `||V* (A - mu I) V||_F` it achieved.
#[derive(Clone, Debug)]
pub struct Isometry<T> {
    pub v: Matrix<T>,
    pub residual: T,
}

impl<T: Real> Isometry<T> {
    /// Unitary whose first `k` columns are `v`.
    pub fn to_unitary(&self) -> Result<Matrix<T>> {
        complete_to_unitary(&self.v)
    }
}

struct Frame<T> {
    v: Matrix<T>,
    perp: Matrix<T>,
}

fn frame<T: Real>(v: Matrix<T>) -> Option<Frame<T>> {
    let k = v.cols();
    let n = v.rows();
    let u = complete_to_unitary(&v).ok()?;
    Some(Frame {
        v,
        perp: u.submatrix(0, k, n, n - k),
    })
}

/// Gauss-Newton / Levenberg-Marquardt on the Stiefel manifold from one
/// starting frame. Steps are taken as `V + V_perp X` and retracted by a
/// thin QR; the linearization of `V* B V` along `V_perp X` is
/// `V* B V_perp X + X* V_perp* B V`.
fn descend<T: Real>(b: &Matrix<T>, v0: Matrix<T>, max_iter: usize, target: T) -> (Matrix<T>, T) {
    let n = b.rows();
    let k = v0.cols();
    let Some(start) = frame(v0.clone()) else {
        let r = (&(&v0.adjoint() * b) * &v0).frobenius_norm();
        return (v0, r);
    };
    if k == n {
        let r = (&(&start.v.adjoint() * b) * &start.v).frobenius_norm();
        return (start.v, r);
    }
    let residual = |f: &Frame<T>| flatten(&(&(&f.v.adjoint() * b) * &f.v));
    let jacobian = |f: &Frame<T>| {
        let p = &(&f.v.adjoint() * b) * &f.perp;
        let q = &(&f.perp.adjoint() * b) * &f.v;
        linear_map_columns(n - k, k, |x| &(&p * x) + &(&x.adjoint() * &q))
    };
    let update = |f: &Frame<T>, step: &[T]| {
        let x = unflatten(n - k, k, step);
        let moved = &f.v + &(&f.perp * &x);
        frame(orthonormalize(&moved).ok()?)
    };
    let (f, res) = minimize(start, residual, jacobian, update, max_iter, target);
    (f.v, res)
}

/// Best frame over `opts.restarts` random starts for `V* B V = 0`, with its
/// residual. Restart `r` uses seed `opts.seed + r`; ties keep the earlier
/// restart.
pub fn search_isometry<T: Real>(b: &Matrix<T>, k: usize, opts: &SearchOptions) -> (Matrix<T>, T) {
    let n = b.rows();
    let target = T::tol(1e-13) * (T::one() + b.frobenius_norm());
    let mut best: Option<(Matrix<T>, T)> = None;
    for r in 0..opts.restarts.max(1) {
        let mut rng = Seeded::new(opts.seed.wrapping_add(r as u64));
        let g = gaussian::<T>(&mut rng, n, k);
        let Ok(v0) = orthonormalize(&g) else { continue };
        let (v, res) = descend(b, v0, opts.max_iter, target);
        if best.as_ref().is_none_or(|(_, b)| res < *b) {
            best = Some((v, res));
        }
        if best.as_ref().is_some_and(|(_, b)| *b <= target) {
            break;
        }
    }
    best.unwrap_or_else(|| (Matrix::identity(n).first_columns(k), T::infinity()))
}

/// Isometry `V` with `V* (A - mu I) V` as small as possible.
///
/// Normal matrices (`||A*A - AA*||_F <= 1e-10 ||A||_F^2`) go through the
/// eigenvalue construction of [`compress_normal`]; everything else, and any
/// normal case where that construction fails numerically, is handled by a
/// restarted manifold least-squares search. Fails if the best residual
/// exceeds `1e-6 (1 + ||A||_F)`.
pub fn find_isometry<T: Real>(a: &Matrix<T>, mu: Cx<T>, k: usize, opts: &SearchOptions) -> Result<Isometry<T>> {
    let n = a.order()?;
    a.check_finite()?;
    if k == 0 || k > n {
        return Err(Error::RankOutOfRange { k, n });
    }
    if !mu.re.is_finite() || !mu.im.is_finite() {
        return Err(Error::NonFinite);
    }
    let b = a.shift(-mu);
    let scale = T::one() + a.frobenius_norm();
    let bound = T::tol(1e-6) * scale;
    let norm2 = a.frobenius_norm() * a.frobenius_norm();
    let measure = |v: &Matrix<T>| (&(&v.adjoint() * &b) * v).frobenius_norm();

    if a.normality_defect() <= T::tol(1e-10) * norm2 {
        let schur = complex_schur(a)?;
        match compress_normal(&schur.eigenvalues(), mu, k) {
            Ok(u) => {
                let v = orthonormalize(&(&schur.q * &u.first_columns(k)))?;
                let residual = measure(&v);
                if residual <= bound {
                    return Ok(Isometry { v, residual });
                }
            }
            Err(e @ Error::Infeasible(_)) => return Err(e),
            Err(_) => {}
        }
    }
    let (v, residual) = search_isometry(&b, k, opts);
    if residual <= bound {
        Ok(Isometry { v, residual })
    } else {
        Err(Error::SearchFailed {
            residual: residual.as_f64(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    #[test]
    fn identity_gives_leading_columns() {
        let a = Matrix::<f64>::identity(4);
        let iso = find_isometry(&a, cx(1.0, 0.0), 2, &SearchOptions::default()).unwrap();
        assert!(iso.residual < 1e-14);
        assert!(iso.v.orthonormality_defect() < 1e-12);
    }

    #[test]
    fn non_normal_two_by_two() {
        let a = Matrix::<f64>::from_real(2, 2, &[1.0, 2.0, 3.0, -1.0]);
        let iso = find_isometry(&a, cx(0.0, 0.0), 1, &SearchOptions::default()).unwrap();
        let v = &iso.v;
        assert!((&(&v.adjoint() * &a) * v).frobenius_norm() <= 1e-8);
    }

    #[test]
    fn random_non_normal_centroid() {
        let mut rng = Seeded::new(12);
        let a = gaussian::<f64>(&mut rng, 6, 6);
        let poly = crate::numrange::outer_polygon(&a, 2, 360).unwrap();
        let mu = poly.centroid().unwrap();
        let iso = find_isometry(&a, mu, 2, &SearchOptions::default()).unwrap();
        assert!(iso.residual <= 1e-6);
        assert!(iso.v.orthonormality_defect() <= 1e-10);
    }

    #[test]
    fn normal_non_member_is_infeasible() {
        let a = Matrix::<f64>::from_real_diag(&[1.0, 2.0]);
        let err = find_isometry(&a, cx(5.0, 0.0), 1, &SearchOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)));
    }
}
