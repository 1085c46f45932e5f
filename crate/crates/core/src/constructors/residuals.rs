//! Frobenius residuals of the quadratic matrix equations, computed directly
//! from the inputs and a candidate solution. Nothing here is shared with
//! the solvers.

use crate::linalg::psd_sqrt;
use crate::matrix::Matrix;
use crate::scalar::{cx, Real};
use crate::Result;

fn eye<T: Real>(k: usize) -> Matrix<T> {
    Matrix::identity(k)
}

/// `I + R Z + Z* S* - Z* Z`.
pub fn residual_a<T: Real>(r: &Matrix<T>, s: &Matrix<T>, z: &Matrix<T>) -> T {
    let zs = z.adjoint();
    let m = &(&(&eye(z.cols()) + &(r * z)) + &(&zs * &s.adjoint())) - &(&zs * z);
    m.frobenius_norm()
}

/// `I + R Z + Z* R* - Z* Z`.
pub fn residual_b1<T: Real>(r: &Matrix<T>, z: &Matrix<T>) -> T {
    residual_a(r, r, z)
}

/// `S Z + Z* S*`.
pub fn residual_b2<T: Real>(s: &Matrix<T>, z: &Matrix<T>) -> T {
    let sz = s * z;
    (&sz + &sz.adjoint()).frobenius_norm()
}

/// `S Z - Z* S*` (the pairing `(R + S, R - S)` produces this one).
pub fn residual_b2_skew<T: Real>(s: &Matrix<T>, z: &Matrix<T>) -> T {
    let sz = s * z;
    (&sz - &sz.adjoint()).frobenius_norm()
}

/// `I + R H + H R* - H P H - gamma H`.
pub fn residual_d<T: Real>(m: &Matrix<T>, p: &Matrix<T>, gamma: T, h: &Matrix<T>) -> T {
    let mh = m * h;
    let lhs = &(&eye(h.cols()) + &mh) + &mh.adjoint();
    let rhs = &(&(h * p) * h) + &h.scale_real(gamma);
    (&lhs - &rhs).frobenius_norm()
}

/// `S R* + R S* - S U T - T U* S*` with `T = sqrt(I + R R*)`.
pub fn residual_e<T: Real>(r: &Matrix<T>, s: &Matrix<T>, u: &Matrix<T>) -> Result<T> {
    let t = psd_sqrt(&(&eye(r.rows()) + &(r * &r.adjoint())))?;
    let srs = s * &r.adjoint();
    let sut = &(s * u) * &t;
    let m = &(&srs + &srs.adjoint()) - &(&sut + &sut.adjoint());
    Ok(m.frobenius_norm())
}

/// `C - U - P H`.
pub fn residual_f<T: Real>(c: &Matrix<T>, p: &Matrix<T>, u: &Matrix<T>, h: &Matrix<T>) -> T {
    (&(c - u) - &(p * h)).frobenius_norm()
}

/// `|| |Z - R*| - sqrt(I + R R*) ||` with `|X| = sqrt(X* X)`.
pub fn residual_sphere<T: Real>(r: &Matrix<T>, z: &Matrix<T>) -> Result<T> {
    let d = z - &r.adjoint();
    let lhs = psd_sqrt(&(&d.adjoint() * &d))?;
    let rhs = psd_sqrt(&(&eye(r.rows()) + &(r * &r.adjoint())))?;
    Ok((&lhs - &rhs).frobenius_norm())
}

/// `||U* U - I||_F`.
pub fn unitarity_defect<T: Real>(u: &Matrix<T>) -> T {
    (&(&u.adjoint() * u) - &eye(u.cols())).frobenius_norm()
}

/// `||H - H*||_F`.
pub fn hermitian_defect<T: Real>(h: &Matrix<T>) -> T {
    (h - &h.adjoint()).frobenius_norm()
}

/// `i X`.
pub fn times_i<T: Real>(x: &Matrix<T>) -> Matrix<T> {
    x.scale(cx(T::zero(), T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_solutions_have_zero_residual() {
        let m = |x: f64| Matrix::<f64>::from_real(1, 1, &[x]);
        let s2 = 2f64.sqrt();
        assert!(residual_a(&m(2.0), &m(0.0), &m(1.0 + s2)) < 1e-14);
        assert!(residual_a(&m(2.0), &m(0.0), &m(1.0)) > 0.5);
        let zi = times_i(&m(1.0));
        assert!(residual_b1(&m(0.0), &zi) < 1e-15);
        assert!(residual_b2(&m(1.0), &zi) < 1e-15);
        let golden = (-1.0 + 5f64.sqrt()) / 2.0;
        assert!(residual_d(&m(0.0), &m(1.0), 1.0, &m(golden)) < 1e-15);
        assert!(residual_f(&m(0.5), &m(1.0), &m(-1.0), &m(1.5)) < 1e-15);
        assert!(residual_sphere(&m(0.0), &zi).unwrap() < 1e-15);
        assert!(residual_e(&m(0.0), &m(1.0), &zi).unwrap() < 1e-15);
    }
}
