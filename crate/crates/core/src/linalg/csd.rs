//! CS decomposition of a `2k x 2k` unitary.
//!
//! ```text
//! [v1    ] [u11 u12] [w1    ]   [C   S]
//! [    v2] [u21 u22] [    w2] = [S  -C]
//! ```
//!
//! `C = diag(c)` with `1 >= c_1 >= ... >= c_k >= 0` and `S = sqrt(I - C^2)`.
//!
//! Construction: the SVD of `u11` fixes `v1`, `w1` and `C`. The columns of
//! `u21 w1` are mutually orthogonal with norms `s_j`; a QR of those columns
//! (largest first, so near-zero columns are factored last) gives `v2`.
//! Finally `w2 = x12* S - x22* C` with `x12 = v1 u12`, `x22 = v2 u22`, which
//! needs no division and absorbs every sign/phase correction, including the
//! `-C` block.

use crate::error::{Error, Result};
use crate::linalg::qr::qr;
use crate::linalg::svd::{nearest_unitary, svd};
use crate::matrix::Matrix;
use crate::scalar::Real;

#[derive(Clone, Debug)]
pub struct CsFactors<T> {
    pub v1: Matrix<T>,
    pub v2: Matrix<T>,
    pub w1: Matrix<T>,
    pub w2: Matrix<T>,
    /// Cosines, descending in `[0, 1]`.
    pub c: Vec<T>,
    /// Matching sines `sqrt(1 - c^2)`, computed directly rather than from
    /// `c` so they stay accurate when `c` is close to 1.
    pub s: Vec<T>,
}

impl<T: Real> CsFactors<T> {
    /// The canonical `[[C, S], [S, -C]]` block matrix.
    pub fn canonical(&self) -> Matrix<T> {
        let k = self.c.len();
        let c = Matrix::from_real_diag(&self.c);
        let s = Matrix::from_real_diag(&self.s);
        let mut m = Matrix::zeros(2 * k, 2 * k);
        m.set_block(0, 0, &c);
        m.set_block(0, k, &s);
        m.set_block(k, 0, &s);
        m.set_block(k, k, &(-&c));
        m
    }

    /// `(v1 + v2) U (w1 + w2)`.
    pub fn apply(&self, u: &Matrix<T>) -> Matrix<T> {
        let v = Matrix::direct_sum(&[self.v1.clone(), self.v2.clone()]);
        let w = Matrix::direct_sum(&[self.w1.clone(), self.w2.clone()]);
        &(&v * u) * &w
    }
}

pub fn cs_decompose<T: Real>(u: &Matrix<T>, k: usize) -> Result<CsFactors<T>> {
    let n = u.order()?;
    if n != 2 * k || k == 0 {
        return Err(Error::Dimension(format!(
            "CS decomposition needs a {0}x{0} matrix, got {n}x{n}",
            2 * k
        )));
    }
    u.check_finite()?;
    let defect = u.orthonormality_defect();
    if defect > T::tol(1e-8) {
        return Err(Error::NotUnitary(defect.as_f64()));
    }
    let u11 = u.submatrix(0, 0, k, k);
    let u12 = u.submatrix(0, k, k, k);
    let u21 = u.submatrix(k, 0, k, k);
    let u22 = u.submatrix(k, k, k, k);

    let s11 = svd(&u11)?;
    let v1 = s11.u.adjoint();
    let w1 = s11.v.clone();
    let c_raw: Vec<T> = s11.sigma.iter().map(|&x| x.min(T::one())).collect();

    let reversed: Vec<usize> = (0..k).rev().collect();
    let m21 = (&u21 * &w1).select_columns(&reversed);
    let f = qr(&m21)?;
    let q2 = f.q.select_columns(&reversed);
    let s_raw: Vec<T> = reversed.iter().map(|&j| f.r[(j, j)].re).collect();
    let v2 = q2.adjoint();

    // Reconcile (c, s) into angles, monotone in the index.
    let mut theta_prev = T::zero();
    let mut c = Vec::with_capacity(k);
    let mut s = Vec::with_capacity(k);
    for j in 0..k {
        let theta = s_raw[j].atan2(c_raw[j]).max(theta_prev);
        theta_prev = theta;
        c.push(theta.cos());
        s.push(theta.sin());
    }

    let x12 = &v1 * &u12;
    let x22 = &v2 * &u22;
    let cm = Matrix::from_real_diag(&c);
    let sm = Matrix::from_real_diag(&s);
    let w2 = &(&x12.adjoint() * &sm) - &(&x22.adjoint() * &cm);
    let w2 = nearest_unitary(&w2)?;

    Ok(CsFactors {
        v1,
        v2,
        w1,
        w2,
        c,
        s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_unitary, Seeded};

    #[test]
    fn already_canonical() {
        let u = Matrix::<f64>::from_real(2, 2, &[0.6, 0.8, 0.8, -0.6]);
        let f = cs_decompose(&u, 1).unwrap();
        assert!((f.c[0] - 0.6).abs() < 1e-15);
        for m in [&f.v1, &f.v2, &f.w1, &f.w2] {
            assert!((m[(0, 0)].re - 1.0).abs() < 1e-15 && m[(0, 0)].im.abs() < 1e-15);
        }
    }

    #[test]
    fn identity_absorbs_the_minus_sign() {
        let u = Matrix::<f64>::identity(2);
        let f = cs_decompose(&u, 1).unwrap();
        assert_eq!(f.c, vec![1.0]);
        let prod = f.v2[(0, 0)] * f.w2[(0, 0)];
        assert!((prod.re + 1.0).abs() < 1e-15);
        assert!((&f.apply(&u) - &f.canonical()).frobenius_norm() < 1e-15);
    }

    #[test]
    fn random_unitary_reconstructs() {
        let mut rng = Seeded::new(2);
        for k in 1..=6 {
            let u = random_unitary::<f64>(&mut rng, 2 * k);
            let f = cs_decompose(&u, k).unwrap();
            assert!((&f.apply(&u) - &f.canonical()).frobenius_norm() <= 1e-10);
            assert!(f.c.windows(2).all(|w| w[0] >= w[1]));
            assert!(f.c.iter().all(|&x| (0.0..=1.0).contains(&x)));
        }
    }

    #[test]
    fn block_diagonal_unitary_has_clustered_cosines() {
        let mut rng = Seeded::new(9);
        let a = random_unitary::<f64>(&mut rng, 3);
        let b = random_unitary::<f64>(&mut rng, 3);
        let u = Matrix::direct_sum(&[a, b]);
        let f = cs_decompose(&u, 3).unwrap();
        assert!(f.c.iter().all(|&x| (x - 1.0).abs() < 1e-12));
        assert!((&f.apply(&u) - &f.canonical()).frobenius_norm() <= 1e-10);
    }

    #[test]
    fn rejects_non_unitary_and_bad_size() {
        let u = Matrix::<f64>::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(cs_decompose(&u, 1), Err(Error::NotUnitary(_))));
        assert!(matches!(
            cs_decompose(&Matrix::<f64>::identity(3), 1),
            Err(Error::Dimension(_))
        ));
    }
}
