//! Solvers for a family of quadratic matrix equations, all reduced to one
//! compression problem: the `2k x 2k` matrix `[[I, R], [S*, -I]]` has `1`
//! and `-1` in its rank-k numerical range, hence also `0`, and the graph
//! `[I; Z]` of a zero-compression frame solves `I + R Z + Z* S* - Z* Z = 0`.
//!
//! | label | equation |
//! |-------|----------|
//! | a | `I + R Z + Z* S* - Z* Z = 0` |
//! | b | `I + R Z + Z* R* - Z* Z = 0` and `S Z + Z* S* = 0` |
//! | c | `I + R Z + Z* R* - Z* Z = 0` and `I + S Z + Z* S* - Z* Z = 0` |
//! | d | `I + M H + H M* - H P H = gamma H`, `H` Hermitian, `P > 0` |
//! | e | `S R* + R S* = S U T + T U* S*`, `T = sqrt(I + R R*)`, `U` unitary |
//! | f | `C = U + P H`, `U` unitary, `H` Hermitian, `\|C\| < 1`, `P > 0` |
//!
//! Every solver recomputes its residuals with the independent checkers in
//! [`residuals`](super::residuals) and fails with [`Error::Certificate`] if
//! any exceeds `1e-8 (1 + sum of input Frobenius norms)`.

use std::collections::BTreeMap;

use crate::constructors::isometry::{find_isometry, SearchOptions};
use crate::constructors::lsq::{flatten, linear_map_columns, minimize, unflatten};
use crate::constructors::residuals::{
    hermitian_defect, residual_a, residual_b1, residual_b2, residual_b2_skew, residual_d, residual_e,
    residual_f, residual_sphere, times_i, unitarity_defect,
};
use crate::error::{Error, Result};
use crate::linalg::{
    complete_to_unitary, complex_schur, cs_decompose, hermitian_eigen, inverse, operator_norm, pd_inv_sqrt,
    psd_sqrt, reorder_schur, solve_right, svd, triangular_eigenvectors,
};
use crate::matrix::Matrix;
use crate::scalar::{cx, real, Real};

/// Solution matrix plus the residual of every equation it was checked
/// against.
#[derive(Clone, Debug)]
pub struct EquationSolution<T> {
    /// `Z`, `H` or `U` depending on the equation.
    pub solution: Matrix<T>,
    /// Second output where there is one: `H` for (f), the alternative-route
    /// `H` for (d).
    pub secondary: Option<Matrix<T>>,
    pub residuals: BTreeMap<String, T>,
}

/// Which pair reduces (b) to (a).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BPairing {
    /// `(R + iS, R - iS)`: the skew part of the (a)-identity is
    /// `i (S Z + Z* S*)`.
    #[default]
    Imaginary,
    /// `(R + S, R - S)`: the skew part is `S Z - Z* S*`, so the second
    /// equation holds with a minus sign.
    Real,
}

fn square_pair<T: Real>(r: &Matrix<T>, s: &Matrix<T>) -> Result<usize> {
    let k = r.order()?;
    if s.rows() != k || s.cols() != k {
        return Err(Error::Dimension(format!(
            "second argument is {}x{}, expected {k}x{k}",
            s.rows(),
            s.cols()
        )));
    }
    r.check_finite()?;
    s.check_finite()?;
    Ok(k)
}

fn bound<T: Real>(norms: &[T]) -> T {
    T::tol(1e-8) * (T::one() + norms.iter().copied().sum::<T>())
}

fn certify<T: Real>(residuals: &BTreeMap<String, T>, limit: T) -> Result<()> {
    for (label, &v) in residuals {
        if !(v <= limit) {
            return Err(Error::Certificate(format!(
                "residual {label} = {:.3e} exceeds {:.3e}",
                v.as_f64(),
                limit.as_f64()
            )));
        }
    }
    Ok(())
}

fn hermitize<T: Real>(h: &Matrix<T>) -> Matrix<T> {
    h.hermitian_part()
}

/// Newton-type polish of a solution of (a).
fn polish_a<T: Real>(r: &Matrix<T>, s: &Matrix<T>, z0: Matrix<T>) -> Matrix<T> {
    let k = z0.rows();
    let ss = s.adjoint();
    let eye = Matrix::identity(k);
    let residual = |z: &Matrix<T>| {
        let zs = z.adjoint();
        flatten(&(&(&(&eye + &(r * z)) + &(&zs * &ss)) - &(&zs * z)))
    };
    let jacobian = |z: &Matrix<T>| {
        let zs = z.adjoint();
        linear_map_columns(k, k, |e| {
            let es = e.adjoint();
            &(&(&(r * e) + &(&es * &ss)) - &(&es * z)) - &(&zs * e)
        })
    };
    let update = |z: &Matrix<T>, step: &[T]| Some(z + &unflatten(k, k, step));
    let target = T::epsilon() * (T::one() + r.frobenius_norm() + s.frobenius_norm());
    minimize(z0, residual, jacobian, update, 20, target).0
}

/// Solves (a) for `Z`.
///
/// A zero-compression frame `[Q1; Q2]` of `B = [[I, R], [S*, -I]]` gives
/// `Z = Q2 Q1^{-1}`, which is then polished by Gauss-Newton. When the
/// smallest cosine of the frame's CS decomposition exceeds `1e-8`, the
/// CS-based extraction `Z = v2* S C^{-1} v1` is checked as well (label
/// `a_cs`).
pub fn solve_eq_a<T: Real>(r: &Matrix<T>, s: &Matrix<T>, opts: &SearchOptions) -> Result<EquationSolution<T>> {
    let k = square_pair(r, s)?;
    let mut b = Matrix::zeros(2 * k, 2 * k);
    b.set_block(0, 0, &Matrix::identity(k));
    b.set_block(0, k, r);
    b.set_block(k, 0, &s.adjoint());
    b.set_block(k, k, &(-&Matrix::identity(k)));
    let limit = bound(&[r.frobenius_norm(), s.frobenius_norm()]);

    let mut last_err = Error::Singular;
    for attempt in 0..3u64 {
        let o = SearchOptions {
            seed: opts.seed.wrapping_add(attempt * 7919),
            ..*opts
        };
        let iso = match find_isometry(&b, cx(T::zero(), T::zero()), k, &o) {
            Ok(i) => i,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let q1 = iso.v.submatrix(0, 0, k, k);
        let q2 = iso.v.submatrix(k, 0, k, k);
        let z = match solve_right(&q2, &q1) {
            Ok(z) => z,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let z = polish_a(r, s, z);
        let mut residuals = BTreeMap::new();
        residuals.insert("a".to_string(), residual_a(r, s, &z));

        let u = complete_to_unitary(&iso.v)?;
        if let Ok(cs) = cs_decompose(&u, k) {
            if cs.c[k - 1] > T::tol(1e-8) {
                let cinv = Matrix::from_real_diag(&cs.c.iter().map(|&c| T::one() / c).collect::<Vec<_>>());
                let smat = Matrix::from_real_diag(&cs.s);
                let zcs = &(&(&cs.v2.adjoint() * &smat) * &cinv) * &cs.v1;
                residuals.insert("a_cs".to_string(), residual_a(r, s, &polish_a(r, s, zcs)));
            }
        }
        match certify(&residuals, limit) {
            Ok(()) => {
                return Ok(EquationSolution {
                    solution: z,
                    secondary: None,
                    residuals,
                })
            }
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// Solves (b) through (a) for the chosen pairing.
pub fn solve_eq_b_with<T: Real>(
    r: &Matrix<T>,
    s: &Matrix<T>,
    pairing: BPairing,
    opts: &SearchOptions,
) -> Result<EquationSolution<T>> {
    square_pair(r, s)?;
    let twist = match pairing {
        BPairing::Imaginary => times_i(s),
        BPairing::Real => s.clone(),
    };
    let a = solve_eq_a(&(r + &twist), &(r - &twist), opts)?;
    let z = a.solution;
    let mut residuals = BTreeMap::new();
    residuals.insert("b1".to_string(), residual_b1(r, &z));
    match pairing {
        BPairing::Imaginary => residuals.insert("b2".to_string(), residual_b2(s, &z)),
        BPairing::Real => residuals.insert("b2_skew".to_string(), residual_b2_skew(s, &z)),
    };
    certify(&residuals, bound(&[r.frobenius_norm(), s.frobenius_norm()]))?;
    Ok(EquationSolution {
        solution: z,
        secondary: None,
        residuals,
    })
}

/// Solves (b) with the default pairing.
pub fn solve_eq_b<T: Real>(r: &Matrix<T>, s: &Matrix<T>, opts: &SearchOptions) -> Result<EquationSolution<T>> {
    solve_eq_b_with(r, s, BPairing::Imaginary, opts)
}

/// Solves (c): (b) for `(R, S - R)`; adding its two equations gives the
/// second quadratic.
pub fn solve_eq_c<T: Real>(r: &Matrix<T>, s: &Matrix<T>, opts: &SearchOptions) -> Result<EquationSolution<T>> {
    square_pair(r, s)?;
    let z = solve_eq_b(r, &(s - r), opts)?.solution;
    let mut residuals = BTreeMap::new();
    residuals.insert("c1".to_string(), residual_b1(r, &z));
    residuals.insert("c2".to_string(), residual_b1(s, &z));
    certify(&residuals, bound(&[r.frobenius_norm(), s.frobenius_norm()]))?;
    Ok(EquationSolution {
        solution: z,
        secondary: None,
        residuals,
    })
}

fn check_positive_definite<T: Real>(p: &Matrix<T>) -> Result<()> {
    p.order()?;
    p.check_finite()?;
    let asym = hermitian_defect(p);
    if asym > T::tol(1e-10) * p.frobenius_norm().max(T::one()) {
        return Err(Error::Precondition(format!("P is not Hermitian (defect {asym:.3e})")));
    }
    let lo = hermitian_eigen(p)?.eigenvalues.last().copied().unwrap_or_else(T::zero);
    if lo < T::tol(1e-10) {
        return Err(Error::NotPositiveDefinite(lo.as_f64()));
    }
    Ok(())
}

/// Stabilizing solution of `I + M H + H M* - H P H = 0` from the stable
/// invariant subspace of `[[M*, -P], [-I, -M]]`.
fn riccati_hamiltonian<T: Real>(m: &Matrix<T>, p: &Matrix<T>) -> Result<Matrix<T>> {
    let k = m.rows();
    let mut ham = Matrix::zeros(2 * k, 2 * k);
    ham.set_block(0, 0, &m.adjoint());
    ham.set_block(0, k, &(-p));
    ham.set_block(k, 0, &(-&Matrix::identity(k)));
    ham.set_block(k, k, &(-m));
    let mut schur = complex_schur(&ham)?;
    let eig = schur.eigenvalues();
    let scale = T::one() + ham.frobenius_norm();
    if eig.iter().any(|z| z.re.abs() <= T::tol(1e-10) * scale) {
        return Err(Error::ImaginaryAxis);
    }
    let stable: Vec<usize> = (0..2 * k).filter(|&i| eig[i].re < T::zero()).collect();
    if stable.len() != k {
        return Err(Error::ImaginaryAxis);
    }

    let vectors = &schur.q * &triangular_eigenvectors(&schur.t);
    let mut x = vectors.select_columns(&stable);
    for j in 0..k {
        let col = x.column(j);
        let nrm = col.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        let scaled: Vec<_> = col.iter().map(|&z| z / nrm).collect();
        x.set_column(j, &scaled);
    }
    let sv = svd(&x)?.sigma;
    let cond = sv[0] / sv[k - 1];
    if !(cond <= T::lit(1e8)) {
        reorder_schur(&mut schur, |z| z.re < T::zero());
        x = schur.q.first_columns(k);
    }
    let x1 = x.submatrix(0, 0, k, k);
    let x2 = x.submatrix(k, 0, k, k);
    Ok(hermitize(&solve_right(&x2, &x1)?))
}

/// Solves (d) for Hermitian `H`.
///
/// The shift `M -> M - gamma I / 2` removes `gamma`. The primary solution
/// comes from the Hamiltonian invariant subspace; the secondary one from
/// (b) with `(M P^{-1/2}, i P^{-1/2})` and `H = P^{-1/2} Z`. Both are
/// checked (labels `d` and `d_b_route`).
pub fn solve_eq_d<T: Real>(m: &Matrix<T>, p: &Matrix<T>, gamma: T, opts: &SearchOptions) -> Result<EquationSolution<T>> {
    let k = square_pair(m, p)?;
    if !gamma.is_finite() {
        return Err(Error::NonFinite);
    }
    check_positive_definite(p)?;
    let shifted = m.shift(real(-gamma * T::half()));
    let h = riccati_hamiltonian(&shifted, p)?;

    let pis = pd_inv_sqrt(p)?;
    let zb = solve_eq_b(&(&shifted * &pis), &times_i(&pis), opts)?.solution;
    let hb = hermitize(&(&pis * &zb));

    let mut residuals = BTreeMap::new();
    residuals.insert("d".to_string(), residual_d(m, p, gamma, &h));
    residuals.insert("d_b_route".to_string(), residual_d(m, p, gamma, &hb));
    let _ = k;
    certify(&residuals, bound(&[m.frobenius_norm(), p.frobenius_norm(), gamma.abs()]))?;
    Ok(EquationSolution {
        solution: h,
        secondary: Some(hb),
        residuals,
    })
}

/// Solves (e): with `Z` from (b), `(Z - R*)* (Z - R*) = I + R R*`, so
/// `U = (R* - Z) T^{-1}` is unitary and satisfies (e).
pub fn solve_eq_e<T: Real>(r: &Matrix<T>, s: &Matrix<T>, opts: &SearchOptions) -> Result<EquationSolution<T>> {
    let k = square_pair(r, s)?;
    let z = solve_eq_b(r, s, opts)?.solution;
    let t = psd_sqrt(&(&Matrix::identity(k) + &(r * &r.adjoint())))?;
    let u = &(&r.adjoint() - &z) * &inverse(&t)?;
    let mut residuals = BTreeMap::new();
    residuals.insert("e".to_string(), residual_e(r, s, &u)?);
    residuals.insert("e_unitarity".to_string(), unitarity_defect(&u));
    certify(&residuals, bound(&[r.frobenius_norm(), s.frobenius_norm()]))?;
    Ok(EquationSolution {
        solution: u,
        secondary: None,
        residuals,
    })
}

/// Solves (f) for unitary `U` and Hermitian `H`.
///
/// With `T = (I - C* C)^{-1/2}`, `R = T C*` and `S = i T P^{-1}` one has
/// `sqrt(I + R R*) = T`; (e) for `(R, S)` gives `U`, and
/// `H = T^{-1} K T^{-1}` with `K = -i (S R* - S U T)` Hermitian.
pub fn solve_eq_f<T: Real>(c: &Matrix<T>, p: &Matrix<T>, opts: &SearchOptions) -> Result<EquationSolution<T>> {
    let k = square_pair(c, p)?;
    check_positive_definite(p)?;
    let cn = operator_norm(c)?;
    if !(cn <= T::one() - T::tol(1e-8)) {
        return Err(Error::NotContraction(cn.as_f64()));
    }
    let eye = Matrix::identity(k);
    let t = pd_inv_sqrt(&(&eye - &(&c.adjoint() * c)))?;
    let r = &t * &c.adjoint();
    let s = times_i(&(&t * &inverse(p)?));
    let u = solve_eq_e(&r, &s, opts)?.solution;
    let kmat = times_i(&(&(&s * &r.adjoint()) - &(&(&s * &u) * &t))).scale(cx(-T::one(), T::zero()));
    let tinv = inverse(&t)?;
    let h = hermitize(&(&(&tinv * &hermitize(&kmat)) * &tinv));

    let mut residuals = BTreeMap::new();
    residuals.insert("f".to_string(), residual_f(c, p, &u, &h));
    residuals.insert("f_unitarity".to_string(), unitarity_defect(&u));
    residuals.insert("f_hermitian".to_string(), hermitian_defect(&h));
    certify(&residuals, bound(&[c.frobenius_norm(), p.frobenius_norm()]))?;
    Ok(EquationSolution {
        solution: u,
        secondary: Some(h),
        residuals,
    })
}

/// A point `Z` on both operator spheres `|Z - R*| = sqrt(I + R R*)` and
/// `|Z - S*| = sqrt(I + S S*)`, i.e. a solution of (c).
pub fn sphere_intersection<T: Real>(r: &Matrix<T>, s: &Matrix<T>, opts: &SearchOptions) -> Result<EquationSolution<T>> {
    square_pair(r, s)?;
    let z = solve_eq_c(r, s, opts)?.solution;
    let mut residuals = BTreeMap::new();
    residuals.insert("sphere_r".to_string(), residual_sphere(r, &z)?);
    residuals.insert("sphere_s".to_string(), residual_sphere(s, &z)?);
    certify(&residuals, bound(&[r.frobenius_norm(), s.frobenius_norm()]))?;
    Ok(EquationSolution {
        solution: z,
        secondary: None,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cx;

    fn m(x: f64) -> Matrix<f64> {
        Matrix::from_real(1, 1, &[x])
    }

    fn scalar(z: &Matrix<f64>) -> Cx<f64> {
        z[(0, 0)]
    }

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn scalar_a() {
        let z = scalar(&solve_eq_a(&m(0.0), &m(0.0), &opts()).unwrap().solution);
        assert!((z.norm() - 1.0).abs() < 1e-9);
        let z = scalar(&solve_eq_a(&m(2.0), &m(0.0), &opts()).unwrap().solution);
        let s2 = 2f64.sqrt();
        assert!(z.im.abs() < 1e-9);
        assert!((z.re - 1.0 - s2).abs() < 1e-9 || (z.re - 1.0 + s2).abs() < 1e-9);
    }

    #[test]
    fn scalar_b_and_c() {
        let z = scalar(&solve_eq_b(&m(0.0), &m(1.0), &opts()).unwrap().solution);
        assert!(z.re.abs() < 1e-9 && (z.im.abs() - 1.0).abs() < 1e-9);
        let z = scalar(&solve_eq_c(&m(1.0), &m(-1.0), &opts()).unwrap().solution);
        assert!(z.re.abs() < 1e-9 && (z.im.abs() - 1.0).abs() < 1e-9);
        let printed = solve_eq_b_with(&m(0.3), &m(0.7), BPairing::Real, &opts()).unwrap();
        assert!(printed.residuals.contains_key("b2_skew"));
    }

    #[test]
    fn scalar_d() {
        let h = scalar(&solve_eq_d(&m(0.0), &m(1.0), 0.0, &opts()).unwrap().solution);
        assert!((h.re.abs() - 1.0).abs() < 1e-12 && h.im.abs() < 1e-12);
        let h = scalar(&solve_eq_d(&m(0.0), &m(1.0), 1.0, &opts()).unwrap().solution);
        let roots = [(-1.0 + 5f64.sqrt()) / 2.0, (-1.0 - 5f64.sqrt()) / 2.0];
        assert!(roots.iter().any(|r| (h.re - r).abs() < 1e-12));
        assert!(matches!(
            solve_eq_d(&m(0.0), &m(-1.0), 0.0, &opts()),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn scalar_e_and_f() {
        let u = scalar(&solve_eq_e(&m(0.0), &m(1.0), &opts()).unwrap().solution);
        assert!(u.re.abs() < 1e-9 && (u.im.abs() - 1.0).abs() < 1e-9);
        let sol = solve_eq_f(&m(0.5), &m(1.0), &opts()).unwrap();
        let (u, h) = (scalar(&sol.solution), scalar(sol.secondary.as_ref().unwrap()));
        let ok = [(1.0, -0.5), (-1.0, 1.5)]
            .iter()
            .any(|&(uu, hh)| (u.re - uu).abs() < 1e-9 && u.im.abs() < 1e-9 && (h.re - hh).abs() < 1e-9);
        assert!(ok, "u = {u}, h = {h}");
        assert!(matches!(solve_eq_f(&m(1.0), &m(1.0), &opts()), Err(Error::NotContraction(_))));
    }

    #[test]
    fn scalar_sphere() {
        let z = scalar(&sphere_intersection(&m(0.0), &m(1.0), &opts()).unwrap().solution);
        assert!(z.re.abs() < 1e-9 && (z.im.abs() - 1.0).abs() < 1e-9);
    }
}
