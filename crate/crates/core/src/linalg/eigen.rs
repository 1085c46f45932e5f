use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Cx, Real};

const MAX_SWEEPS: usize = 30;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianSpectrum<T> {
    /// Eigenvalues sorted in descending order.
    pub eigenvalues: Vec<T>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: Matrix<T>,
}

impl<T: Real> HermitianSpectrum<T> {
    /// `V diag(f(lambda)) V*`.
    pub fn map(&self, f: impl Fn(T) -> T) -> Matrix<T> {
        let n = self.eigenvalues.len();
        let fv: Vec<T> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        Matrix::from_fn(n, n, |i, j| {
            (0..n).fold(Cx::zero(), |acc, l| {
                acc + self.vectors[(i, l)] * self.vectors[(j, l)].conj() * fv[l]
            })
        })
    }
}

/// Unitary `G` such that `G* [[app, b], [conj(b), aqq]] G` is diagonal.
///
/// `G = diag(1, e^{-i arg b}) [[c, s], [-s, c]]` with the smaller of the
/// two classical Jacobi angles.
pub(crate) fn jacobi_rotation<T: Real>(app: T, aqq: T, b: Cx<T>) -> [[Cx<T>; 2]; 2] {
    let ab = b.norm();
    if ab == T::zero() {
        return [[Cx::one(), Cx::zero()], [Cx::zero(), Cx::one()]];
    }
    let phase = (b / ab).conj();
    let tau = (aqq - app) / (T::two() * ab);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;
    let (c, s) = (Complex::new(c, T::zero()), Complex::new(s, T::zero()));
    [[c, s], [-s * phase, c * phase]]
}

pub(crate) fn adjoint2<T: Real>(g: [[Cx<T>; 2]; 2]) -> [[Cx<T>; 2]; 2] {
    [
        [g[0][0].conj(), g[1][0].conj()],
        [g[0][1].conj(), g[1][1].conj()],
    ]
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// The input is symmetrized as `(H + H*)/2` first. Sweeps stop once the
/// off-diagonal Frobenius norm drops below `1e-14 ||H||_F`.
pub fn hermitian_eigen<T: Real>(h: &Matrix<T>) -> Result<HermitianSpectrum<T>> {
    let n = h.order()?;
    h.check_finite()?;
    let mut a = h.hermitian_part();
    let mut v = Matrix::identity(n);
    let threshold = T::tol(1e-14) * a.frobenius_norm();

    let off_norm = |a: &Matrix<T>| -> T {
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s = s + a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let b = a[(p, q)];
                if b.is_zero() {
                    continue;
                }
                let g = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, b);
                a.rotate_cols(p, q, g, 0..n);
                a.rotate_rows(p, q, adjoint2(g), 0..n);
                a[(p, q)] = Cx::zero();
                a[(q, p)] = Cx::zero();
                a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
                a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
                v.rotate_cols(p, q, g, 0..n);
            }
        }
        sweeps += 1;
        converged = off_norm(&a) <= threshold;
    }
    if !converged {
        return Err(Error::NoConvergence("Jacobi eigensolver"));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .re
            .partial_cmp(&a[(i, i)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(HermitianSpectrum {
        eigenvalues: order.iter().map(|&i| a[(i, i)].re).collect(),
        vectors: v.select_columns(&order),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{gaussian, Seeded};
    use crate::scalar::cx;

    fn reconstruction_residual(h: &Matrix<f64>, s: &HermitianSpectrum<f64>) -> f64 {
        let d = Matrix::from_real_diag(&s.eigenvalues);
        (&(&(&s.vectors * &d) * &s.vectors.adjoint()) - h).frobenius_norm()
    }

    #[test]
    fn diagonal_input_is_returned_as_is() {
        let h = Matrix::<f64>::from_real(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        let s = hermitian_eigen(&h).unwrap();
        assert_eq!(s.eigenvalues, vec![2.0, 1.0]);
        assert_eq!(s.vectors, Matrix::identity(2));
    }

    #[test]
    fn swap_matrix_has_spectrum_plus_minus_one() {
        let h = Matrix::<f64>::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let s = hermitian_eigen(&h).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let mut rng = Seeded::new(11);
        for _ in 0..20 {
            let x = gaussian::<f64>(&mut rng, 6, 6);
            let h = &x + &x.adjoint();
            let s = hermitian_eigen(&h).unwrap();
            let nh = h.frobenius_norm();
            assert!(reconstruction_residual(&h, &s) <= 1e-10 * nh);
            assert!(s.vectors.orthonormality_defect() <= 1e-12 * 6.0);
            assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn complex_two_by_two() {
        // [[1, i], [-i, 1]] has eigenvalues 2 and 0.
        let h = Matrix::<f64>::new(
            2,
            2,
            vec![cx(1.0, 0.0), cx(0.0, 1.0), cx(0.0, -1.0), cx(1.0, 0.0)],
        )
        .unwrap();
        let s = hermitian_eigen(&h).unwrap();
        assert!((s.eigenvalues[0] - 2.0).abs() < 1e-14);
        assert!(s.eigenvalues[1].abs() < 1e-14);
    }

    #[test]
    fn rejects_rectangular_and_nan() {
        assert!(matches!(
            hermitian_eigen(&Matrix::<f64>::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
        let mut h = Matrix::<f64>::identity(2);
        h[(0, 1)] = cx(f64::NAN, 0.0);
        assert_eq!(hermitian_eigen(&h).unwrap_err(), Error::NonFinite);
    }

    #[test]
    fn single_precision_instantiation() {
        let h = Matrix::<f32>::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let s = hermitian_eigen(&h).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-6);
    }
}
