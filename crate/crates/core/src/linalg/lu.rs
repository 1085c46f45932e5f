use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Real;

/// Solves `A X = B` by Gaussian elimination with partial pivoting.
pub fn solve<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.order()?;
    if b.rows() != n {
        return Err(Error::Dimension(format!(
            "right-hand side has {} rows, expected {n}",
            b.rows()
        )));
    }
    a.check_finite()?;
    b.check_finite()?;
    let m = b.cols();
    let mut lu = a.clone();
    let mut x = b.clone();
    let scale = a.max_abs();
    let tiny = T::epsilon() * T::lit(n.max(1) as f64) * scale;
    if scale == T::zero() {
        return Err(Error::Singular);
    }

    for col in 0..n {
        let (piv, pmag) = (col..n)
            .map(|i| (i, lu[(i, col)].norm()))
            .fold((col, -T::one()), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmag <= tiny {
            return Err(Error::Singular);
        }
        if piv != col {
            for j in 0..n {
                let t = lu[(col, j)];
                lu[(col, j)] = lu[(piv, j)];
                lu[(piv, j)] = t;
            }
            for j in 0..m {
                let t = x[(col, j)];
                x[(col, j)] = x[(piv, j)];
                x[(piv, j)] = t;
            }
        }
        let p = lu[(col, col)];
        for i in (col + 1)..n {
            let f = lu[(i, col)] / p;
            if f.is_zero() {
                continue;
            }
            lu[(i, col)] = f;
            for j in (col + 1)..n {
                lu[(i, j)] = lu[(i, j)] - f * lu[(col, j)];
            }
            for j in 0..m {
                x[(i, j)] = x[(i, j)] - f * x[(col, j)];
            }
        }
    }
    for j in 0..m {
        for i in (0..n).rev() {
            let mut s = x[(i, j)];
            for l in (i + 1)..n {
                s = s - lu[(i, l)] * x[(l, j)];
            }
            x[(i, j)] = s / lu[(i, i)];
        }
    }
    Ok(x)
}

pub fn inverse<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    solve(a, &Matrix::identity(a.order()?))
}

/// Solves `X A = B`, i.e. `X = B A^{-1}`.
pub fn solve_right<T: Real>(b: &Matrix<T>, a: &Matrix<T>) -> Result<Matrix<T>> {
    Ok(solve(&a.adjoint(), &b.adjoint())?.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{gaussian, Seeded};

    #[test]
    fn inverse_of_random_matrix() {
        let mut rng = Seeded::new(8);
        let a = gaussian::<f64>(&mut rng, 5, 5);
        let inv = inverse(&a).unwrap();
        assert!((&(&a * &inv) - &Matrix::identity(5)).frobenius_norm() < 1e-10);
        let b = gaussian::<f64>(&mut rng, 3, 5);
        let x = solve_right(&b, &a).unwrap();
        assert!((&(&x * &a) - &b).frobenius_norm() < 1e-10);
    }

    #[test]
    fn singular_is_reported() {
        let a = Matrix::<f64>::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert_eq!(inverse(&a).unwrap_err(), Error::Singular);
    }
}
