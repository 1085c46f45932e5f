use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Cx, Real};

/// `A = Q R` with `Q` unitary and `R` upper triangular with a real
/// nonnegative diagonal.
#[derive(Clone, Debug)]
pub struct QrFactors<T> {
    pub q: Matrix<T>,
    pub r: Matrix<T>,
}

/// Full Householder QR: `q` is `m x m`, `r` is `m x n`.
///
/// The diagonal of `r` is made real and nonnegative; a zero pivot keeps
/// phase 1, so the factorization is deterministic.
pub fn qr<T: Real>(a: &Matrix<T>) -> Result<QrFactors<T>> {
    a.check_finite()?;
    let (m, n) = (a.rows(), a.cols());
    let mut r = a.clone();
    let mut q = Matrix::identity(m);
    let steps = m.min(n);

    for j in 0..steps {
        let tail: T = ((j + 1)..m)
            .map(|i| r[(i, j)].norm_sqr())
            .fold(T::zero(), |x, y| x + y);
        if tail == T::zero() {
            continue;
        }
        let x0 = r[(j, j)];
        let norm = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0.norm() > T::zero() {
            x0 / x0.norm()
        } else {
            Cx::one()
        };
        let alpha = -phase * norm;
        let mut v: Vec<Cx<T>> = (j..m).map(|i| r[(i, j)]).collect();
        v[0] = v[0] - alpha;
        let vv: T = v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |x, y| x + y);
        let beta = T::two() / vv;

        for c in j..n {
            let w = v
                .iter()
                .enumerate()
                .fold(Cx::zero(), |acc, (i, vi)| acc + vi.conj() * r[(j + i, c)]);
            let w = w * beta;
            for (i, vi) in v.iter().enumerate() {
                r[(j + i, c)] = r[(j + i, c)] - *vi * w;
            }
        }
        for row in 0..m {
            let w = v
                .iter()
                .enumerate()
                .fold(Cx::zero(), |acc, (i, vi)| acc + q[(row, j + i)] * *vi);
            let w = w * beta;
            for (i, vi) in v.iter().enumerate() {
                q[(row, j + i)] = q[(row, j + i)] - w * vi.conj();
            }
        }
        r[(j, j)] = alpha;
        for i in (j + 1)..m {
            r[(i, j)] = Cx::zero();
        }
    }

    for j in 0..steps {
        let d = r[(j, j)];
        let ad = d.norm();
        if ad == T::zero() {
            continue;
        }
        let phase = d / ad;
        for c in j..n {
            r[(j, c)] = r[(j, c)] * phase.conj();
        }
        r[(j, j)] = Complex::new(ad, T::zero());
        for row in 0..m {
            q[(row, j)] = q[(row, j)] * phase;
        }
    }
    Ok(QrFactors { q, r })
}

/// Thin QR: `q` is `m x p`, `r` is `p x n` with `p = min(m, n)`.
pub fn thin_qr<T: Real>(a: &Matrix<T>) -> Result<QrFactors<T>> {
    let p = a.rows().min(a.cols());
    let f = qr(a)?;
    Ok(QrFactors {
        q: f.q.first_columns(p),
        r: f.r.submatrix(0, 0, p, a.cols()),
    })
}

/// Orthonormalizes the columns of a full-column-rank matrix (the `Q`
/// factor of a thin QR). Used as the retraction onto isometries.
pub fn orthonormalize<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    Ok(thin_qr(a)?.q)
}

/// Extends an `n x k` isometry to an `n x n` unitary whose first `k`
/// columns are exactly `v`.
pub fn complete_to_unitary<T: Real>(v: &Matrix<T>) -> Result<Matrix<T>> {
    let defect = v.orthonormality_defect();
    if defect > T::tol(1e-8) {
        return Err(Error::NotUnitary(defect.as_f64()));
    }
    let mut q = qr(v)?.q;
    for j in 0..v.cols() {
        q.set_column(j, &v.column(j));
    }
    Ok(q)
}
