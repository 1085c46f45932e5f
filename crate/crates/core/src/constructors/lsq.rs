//! Levenberg-Marquardt on real parameter vectors.

use crate::matrix::Matrix;
use crate::scalar::{cx, Real};

/// Real and imaginary parts of the entries, row-major, interleaved.
pub(crate) fn flatten<T: Real>(m: &Matrix<T>) -> Vec<T> {
    m.data().iter().flat_map(|z| [z.re, z.im]).collect()
}

pub(crate) fn unflatten<T: Real>(rows: usize, cols: usize, x: &[T]) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |i, j| {
        let p = 2 * (i * cols + j);
        cx(x[p], x[p + 1])
    })
}

/// Jacobian columns of a real-linear map on `rows x cols` complex matrices,
/// in the parameter order of [`flatten`].
pub(crate) fn linear_map_columns<T: Real>(
    rows: usize,
    cols: usize,
    map: impl Fn(&Matrix<T>) -> Matrix<T>,
) -> Vec<Vec<T>> {
    let mut out = Vec::with_capacity(2 * rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            for unit in [cx(T::one(), T::zero()), cx(T::zero(), T::one())] {
                let mut e = Matrix::zeros(rows, cols);
                e[(i, j)] = unit;
                out.push(flatten(&map(&e)));
            }
        }
    }
    out
}

fn norm<T: Real>(v: &[T]) -> T {
    v.iter().map(|&x| x * x).sum::<T>().sqrt()
}

/// Solves `(J^T J + lambda I) x = -J^T r` with `J` given by columns.
fn damped_step<T: Real>(jac: &[Vec<T>], r: &[T], lambda: T) -> Option<Vec<T>> {
    let p = jac.len();
    let mut a = vec![T::zero(); p * p];
    let mut rhs = vec![T::zero(); p];
    for i in 0..p {
        rhs[i] = -jac[i].iter().zip(r).map(|(&x, &y)| x * y).sum::<T>();
        for j in 0..=i {
            let v: T = jac[i].iter().zip(&jac[j]).map(|(&x, &y)| x * y).sum();
            a[i * p + j] = v;
            a[j * p + i] = v;
        }
        a[i * p + i] = a[i * p + i] + lambda;
    }
    // Cholesky, lower triangle in place.
    for j in 0..p {
        let mut d = a[j * p + j];
        for l in 0..j {
            d = d - a[j * p + l] * a[j * p + l];
        }
        if !(d > T::zero()) {
            return None;
        }
        let d = d.sqrt();
        a[j * p + j] = d;
        for i in (j + 1)..p {
            let mut s = a[i * p + j];
            for l in 0..j {
                s = s - a[i * p + l] * a[j * p + l];
            }
            a[i * p + j] = s / d;
        }
    }
    for i in 0..p {
        let mut s = rhs[i];
        for l in 0..i {
            s = s - a[i * p + l] * rhs[l];
        }
        rhs[i] = s / a[i * p + i];
    }
    for i in (0..p).rev() {
        let mut s = rhs[i];
        for l in (i + 1)..p {
            s = s - a[l * p + i] * rhs[l];
        }
        rhs[i] = s / a[i * p + i];
    }
    Some(rhs)
}

/// Minimizes `||residual(s)||` starting from `s0`. Stops at `target`, after
/// `max_iter` accepted steps, when no damping level gives a decrease, or
/// after five consecutive steps with relative decrease below `1e-14`.
pub(crate) fn minimize<S, T: Real>(
    s0: S,
    residual: impl Fn(&S) -> Vec<T>,
    jacobian: impl Fn(&S) -> Vec<Vec<T>>,
    update: impl Fn(&S, &[T]) -> Option<S>,
    max_iter: usize,
    target: T,
) -> (S, T) {
    let mut s = s0;
    let mut r = residual(&s);
    let mut f = norm(&r);
    let mut damping = T::lit(1e-3);
    let floor = T::lit(1e-15);
    let mut stalls = 0;
    for _ in 0..max_iter {
        if !(f > target) {
            break;
        }
        let jac = jacobian(&s);
        let scale = jac
            .iter()
            .map(|c| c.iter().map(|&x| x * x).sum::<T>())
            .fold(T::zero(), T::max)
            .max(T::min_positive_value());
        let mut accepted = None;
        for _ in 0..40 {
            if let Some(step) = damped_step(&jac, &r, damping * scale) {
                if let Some(cand) = update(&s, &step) {
                    let r2 = residual(&cand);
                    let f2 = norm(&r2);
                    if f2 < f {
                        accepted = Some((cand, r2, f2));
                        break;
                    }
                }
            }
            damping = damping * T::lit(4.0);
        }
        let Some((cand, r2, f2)) = accepted else {
            break;
        };
        if f - f2 <= T::lit(1e-14) * f {
            stalls += 1;
        } else {
            stalls = 0;
        }
        s = cand;
        r = r2;
        f = f2;
        damping = (damping / T::lit(3.0)).max(floor);
        if stalls >= 5 {
            break;
        }
    }
    (s, f)
}
