//! Rank-k numerical range of an arbitrary square matrix through its support
//! function `h_k(xi) = lambda_k(e^{i xi} A + e^{-i xi} A*)`:
//!
//! ```text
//! Lambda_k(A) = { mu : 2 Re(e^{i xi} mu) <= h_k(xi) for every xi }
//! ```

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, HalfPlane};
use crate::linalg::{complex_schur, count_nonneg, hermitian_eigen, lambda_k, solve};
use crate::matrix::Matrix;
use crate::scalar::{cis, real, wrap_angle, Cx, Real};

pub const DEFAULT_SAMPLES: usize = 360;
pub const DEFAULT_TOL: f64 = 1e-9;
/// Angular width at which golden-section refinement stops.
pub const REFINE_STEP: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportSample<T> {
    pub xi: T,
    pub value: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MembershipVerdict<T> {
    pub member: bool,
    /// Refined minimum over `xi` of `h_k(xi) - 2 Re(e^{i xi} mu)`.
    pub margin: T,
    pub witness_xi: T,
    /// How far the true infimum can sit below the sampled minimum if
    /// refinement missed a dip: `L * delta / 2` for grid spacing `delta`
    /// and Lipschitz bound `L = 2 (||A||_F + |mu|)`.
    pub resolution: T,
}

fn check_rank(a: &Matrix<impl Real>, k: usize) -> Result<usize> {
    let n = a.order()?;
    if k == 0 || k > n {
        return Err(Error::RankOutOfRange { k, n });
    }
    Ok(n)
}

/// `h_k(xi)`.
pub fn support<T: Real>(a: &Matrix<T>, k: usize, xi: T) -> Result<T> {
    check_rank(a, k)?;
    a.check_finite()?;
    lambda_k(&a.rotated_hermitian(xi), k)
}

/// `h_k` at `m` equally spaced angles starting from 0.
pub fn support_samples<T: Real>(a: &Matrix<T>, k: usize, m: usize) -> Result<Vec<SupportSample<T>>> {
    check_rank(a, k)?;
    a.check_finite()?;
    (0..m)
        .map(|j| {
            let xi = T::TAU() * T::lit(j as f64) / T::lit(m as f64);
            Ok(SupportSample {
                xi,
                value: lambda_k(&a.rotated_hermitian(xi), k)?,
            })
        })
        .collect()
}

/// Half-plane `2 Re(e^{i xi} z) <= value`.
pub fn support_half_plane<T: Real>(s: &SupportSample<T>) -> Option<HalfPlane<T>> {
    HalfPlane::new(s.xi.cos(), -s.xi.sin(), s.value * T::half())
}

fn golden_min<T: Real>(f: &impl Fn(T) -> Result<T>, mut lo: T, mut hi: T, step: T) -> Result<(T, T)> {
    let ratio = T::lit(0.618_033_988_749_894_8);
    let mut x1 = hi - (hi - lo) * ratio;
    let mut x2 = lo + (hi - lo) * ratio;
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while hi - lo > step {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - (hi - lo) * ratio;
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + (hi - lo) * ratio;
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// Tests `mu` against the half-plane description of `Lambda_k(A)`.
///
/// `g(xi) = h_k(xi) - 2 Re(e^{i xi} mu)` (evaluated as `lambda_k` of the
/// rotated Hermitian part of `A - mu I`) is sampled on `samples` equally
/// spaced angles; every local grid minimum within the Lipschitz band of the
/// smallest sample is then refined by golden-section search.
pub fn is_member<T: Real>(a: &Matrix<T>, k: usize, mu: Cx<T>, samples: usize, tol: T) -> Result<MembershipVerdict<T>> {
    let n = check_rank(a, k)?;
    a.check_finite()?;
    if samples < 8 {
        return Err(Error::Precondition(format!("need at least 8 samples, got {samples}")));
    }
    if !mu.re.is_finite() || !mu.im.is_finite() {
        return Err(Error::NonFinite);
    }
    let b = a.shift(-mu);
    let g = |xi: T| lambda_k(&b.rotated_hermitian(xi), k);
    let delta = T::TAU() / T::lit(samples as f64);
    let grid: Vec<T> = (0..samples)
        .map(|j| g(delta * T::lit(j as f64)))
        .collect::<Result<_>>()?;
    let lip = T::two() * (a.frobenius_norm() + mu.norm());
    let resolution = lip * delta * T::half();
    let floor = grid.iter().copied().fold(T::infinity(), T::min);

    let (mut best_xi, mut best) = (T::zero(), T::infinity());
    for j in 0..samples {
        let v = grid[j];
        if v < best {
            (best_xi, best) = (delta * T::lit(j as f64), v);
        }
    }
    if n > 0 {
        for j in 0..samples {
            let prev = grid[(j + samples - 1) % samples];
            let next = grid[(j + 1) % samples];
            let v = grid[j];
            if v > prev || v > next || v > floor + lip * delta {
                continue;
            }
            let c = delta * T::lit(j as f64);
            let (x, fx) = golden_min(&g, c - delta, c + delta, T::tol(REFINE_STEP))?;
            if fx < best {
                (best_xi, best) = (wrap_angle(x), fx);
            }
        }
    }
    Ok(MembershipVerdict {
        member: best >= -tol,
        margin: best,
        witness_xi: best_xi,
        resolution,
    })
}

/// `is_member` with the default sample count and tolerance.
pub fn is_member_default<T: Real>(a: &Matrix<T>, k: usize, mu: Cx<T>) -> Result<MembershipVerdict<T>> {
    is_member(a, k, mu, DEFAULT_SAMPLES, T::tol(DEFAULT_TOL))
}

fn region_tol<T: Real>(a: &Matrix<T>) -> T {
    T::tol(1e-12) * (T::one() + a.frobenius_norm())
}

/// Intersection of the support half-planes at `m` equally spaced angles:
/// an outer approximation of `Lambda_k(A)`.
pub fn outer_polygon<T: Real>(a: &Matrix<T>, k: usize, m: usize) -> Result<ConvexPolygon<T>> {
    if m < 3 {
        return Err(Error::Precondition(format!("need at least 3 directions, got {m}")));
    }
    let samples = support_samples(a, k, m)?;
    Ok(polygon_from_samples(a, &samples))
}

/// Clips a box containing `Lambda_k(A)` by the given support half-planes.
pub fn polygon_from_samples<T: Real>(a: &Matrix<T>, samples: &[SupportSample<T>]) -> ConvexPolygon<T> {
    let eps = region_tol(a);
    let slack = eps * T::lit(1e-2);
    let radius = T::two() * (T::one() + a.frobenius_norm());
    let mut region = ConvexPolygon::square(real(T::zero()), radius);
    for s in samples {
        if let Some(hp) = support_half_plane(s) {
            region = region.clip(&hp, slack, eps);
        }
        if region.is_empty() {
            break;
        }
    }
    region
}

/// Angles where some eigenvalue of `e^{i xi} A + e^{-i xi} A*` equals
/// `-tau`, i.e. unimodular roots `z = e^{i xi}` of
/// `det(z^2 A + tau z I + A*) = 0`.
///
/// The substitution `z = e^{i phi} (1 + w) / (1 - w)` maps the unit circle
/// to the imaginary axis and turns the problem into the monic quadratic
/// pencil `w^2 K2 + w K1 + K0` with `K2 = H(phi) - tau I`,
/// `K1 = 2 (e^{i phi} A - e^{-i phi} A*)`, `K0 = H(phi) + tau I`, solved
/// through its companion matrix. `phi` is chosen to keep `K2` well
/// conditioned.
fn crossing_angles<T: Real>(a: &Matrix<T>, tau: T) -> Result<Vec<T>> {
    let n = a.rows();
    let mut best: Option<(T, T)> = None;
    for j in 0..12 {
        let phi = T::lit(0.137 + j as f64 * std::f64::consts::PI / 12.0);
        let spec = hermitian_eigen(&a.rotated_hermitian(phi))?;
        let gap = spec.eigenvalues.iter().map(|&l| (l - tau).abs()).fold(T::infinity(), T::min);
        if best.is_none_or(|(_, g)| gap > g) {
            best = Some((phi, gap));
        }
    }
    let (phi, gap) = best.expect("at least one trial angle");
    let scale = T::one() + a.frobenius_norm();
    if gap <= T::tol(1e-10) * scale {
        return Ok(Vec::new());
    }
    let h = a.rotated_hermitian(phi);
    let tau_i = Matrix::identity(n).scale_real(tau);
    let k2 = &h - &tau_i;
    let k0 = &h + &tau_i;
    let e = cis(phi);
    let k1 = (&a.scale(e) - &a.adjoint().scale(e.conj())).scale_real(T::two());
    let c0 = solve(&k2, &k0)?;
    let c1 = solve(&k2, &k1)?;
    let mut comp = Matrix::zeros(2 * n, 2 * n);
    comp.set_block(0, n, &Matrix::identity(n));
    comp.set_block(n, 0, &(-&c0));
    comp.set_block(n, n, &(-&c1));
    let roots = complex_schur(&comp)?.eigenvalues();
    let one = real(T::one());
    let mut out = Vec::new();
    for w in roots {
        let den = one - w;
        if den.norm() <= T::epsilon() {
            continue;
        }
        let z = e * (one + w) / den;
        if (z.norm() - T::one()).abs() <= T::tol(1e-5) {
            out.push(wrap_angle(z.arg()));
        }
    }
    Ok(out)
}

/// Dimension of a maximal totally isotropic subspace of `A`, computed as
/// `min over xi of nu(e^{i xi} A + e^{-i xi} A*)`, where `nu` counts
/// eigenvalues `>= -tol (1 + ||A||_F)`.
///
/// `nu` is piecewise constant and can only change where an eigenvalue
/// crosses the threshold. Those crossing angles are computed directly and
/// merged with a uniform grid of `max(4 n^2, 16)` angles; `nu` is then
/// evaluated at the midpoint of every gap between consecutive angles.
pub fn isotropic_dimension<T: Real>(a: &Matrix<T>, tol: T) -> Result<usize> {
    let n = a.order()?;
    a.check_finite()?;
    if n == 0 {
        return Ok(0);
    }
    let tau = tol * (T::one() + a.frobenius_norm());
    let m = (4 * n * n).max(16);
    let mut angles: Vec<T> = (0..m)
        .map(|j| T::TAU() * T::lit(j as f64) / T::lit(m as f64))
        .collect();
    angles.extend(crossing_angles(a, tau)?);
    angles.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    angles.dedup();
    let mut best = n;
    for i in 0..angles.len() {
        let next = if i + 1 < angles.len() {
            angles[i + 1]
        } else {
            angles[0] + T::TAU()
        };
        let mid = (angles[i] + next) * T::half();
        best = best.min(count_nonneg(&a.rotated_hermitian(mid), tau)?);
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PolygonKind;
    use crate::scalar::cx;

    fn jordan2() -> Matrix<f64> {
        Matrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0])
    }

    #[test]
    fn support_values() {
        let d = Matrix::<f64>::from_real_diag(&[1.0, -1.0]);
        assert!((support(&d, 1, 0.0).unwrap() - 2.0).abs() < 1e-14);
        for &xi in &[0.0, 1.0, 4.0] {
            assert!((support(&jordan2(), 1, xi).unwrap() - 1.0).abs() < 1e-14);
        }
        let q = Matrix::from_diag(&[cx(1.0, 0.0), cx(0.0, 1.0), cx(-1.0, 0.0), cx(0.0, -1.0)]);
        assert!(support::<f64>(&q, 2, 0.0).unwrap().abs() < 1e-14);
        assert!(matches!(support(&q, 5, 0.0), Err(Error::RankOutOfRange { .. })));
    }

    #[test]
    fn membership_on_diagonal() {
        let d = Matrix::<f64>::from_real_diag(&[4.0, 3.0, 2.0, 1.0]);
        let inside = is_member_default(&d, 2, cx(2.5, 0.0)).unwrap();
        assert!(inside.member);
        let outside = is_member_default(&d, 2, cx(3.5, 0.0)).unwrap();
        assert!(!outside.member);
        assert!((outside.margin + 1.0).abs() < 1e-9);
    }

    #[test]
    fn disk_boundary_margin_is_zero() {
        let v = is_member_default(&jordan2(), 1, cx(0.5, 0.0)).unwrap();
        assert!(v.margin.abs() < 1e-9);
        assert!(v.member);
    }

    #[test]
    fn outer_polygon_of_jordan_block_is_a_disk() {
        let p = outer_polygon(&jordan2(), 1, 720).unwrap();
        let area = std::f64::consts::PI / 4.0;
        assert!((p.area() - area).abs() < 0.01 * area);
        let i2 = Matrix::<f64>::identity(2);
        let p = outer_polygon(&i2, 1, 90).unwrap();
        assert!(p.diameter() <= 10.0 / 90.0);
        assert!(p.distance(cx(1.0, 0.0)) < 1e-12);
    }

    #[test]
    fn quarter_roots_rank_two_outer_polygon_is_tiny() {
        let q = Matrix::from_diag(&[cx(1.0, 0.0), cx(0.0, 1.0), cx(-1.0, 0.0), cx(0.0, -1.0)]);
        let p = outer_polygon(&q, 2, 720).unwrap();
        assert!(p.diameter() <= 1e-2);
        assert_eq!(p.kind(), PolygonKind::Point);
    }

    #[test]
    fn isotropic_dimensions() {
        assert_eq!(isotropic_dimension(&Matrix::<f64>::identity(3), 1e-9).unwrap(), 0);
        assert_eq!(isotropic_dimension(&jordan2(), 1e-9).unwrap(), 1);
        let j3 = Matrix::<f64>::from_real(3, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(isotropic_dimension(&j3, 1e-9).unwrap(), 2);
        let delta2 = Matrix::new(2, 2, vec![cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 1.0)]).unwrap();
        assert_eq!(isotropic_dimension(&delta2, 1e-9).unwrap(), 1);
    }

    #[test]
    fn narrow_dip_is_found_by_crossing_angles() {
        // Two unit phases almost antipodal: both cosines are negative only
        // on an arc of width 1e-4, far below the grid spacing.
        let e = 1e-4;
        let d = Matrix::from_diag(&[cis(0.0), cis(std::f64::consts::PI - e)]);
        assert_eq!(isotropic_dimension(&d, 1e-9).unwrap(), 0);
    }
}
