//! Exact rank-k numerical ranges of normal matrices from their eigenvalues.

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, HalfPlane};
use crate::scalar::{cis, wrap_angle, Cx, Real};

/// Largest number of subset hulls `subset_hull_oracle` will intersect.
pub const SUBSET_GUARD: u128 = 100_000;

fn check_rank(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::RankOutOfRange { k, n });
    }
    Ok(())
}

fn scale_of<T: Real>(eigs: &[Cx<T>]) -> T {
    T::one() + eigs.iter().map(|z| z.norm()).fold(T::zero(), T::max)
}

/// Absolute tolerance used to classify degenerate results.
pub fn classification_tol<T: Real>(eigs: &[Cx<T>]) -> T {
    T::tol(1e-10) * scale_of(eigs)
}

/// k-th largest of `2 Re(e^{i xi} lambda_j)`.
pub fn normal_support<T: Real>(eigs: &[Cx<T>], k: usize, xi: T) -> T {
    let w = cis(xi);
    let mut vals: Vec<T> = eigs.iter().map(|&l| T::two() * (w * l).re).collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    vals[k - 1]
}

/// Angles at which two of the lines `2 Re(e^{i xi} lambda_j)` can swap
/// order, plus 0, refined until consecutive angles are less than `pi/2`
/// apart.
fn critical_angles<T: Real>(eigs: &[Cx<T>]) -> Vec<T> {
    let mut angles = vec![T::zero()];
    let tie = T::tol(1e-14) * scale_of(eigs);
    for a in 0..eigs.len() {
        for b in (a + 1)..eigs.len() {
            let d = eigs[a] - eigs[b];
            if d.norm() <= tie {
                continue;
            }
            let base = T::FRAC_PI_2() - d.arg();
            angles.push(wrap_angle(base));
            angles.push(wrap_angle(base + T::PI()));
        }
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    angles.dedup();
    let limit = T::FRAC_PI_2();
    let mut out = Vec::with_capacity(angles.len() * 2);
    for i in 0..angles.len() {
        let a = angles[i];
        let b = if i + 1 < angles.len() {
            angles[i + 1]
        } else {
            angles[0] + T::TAU()
        };
        out.push(a);
        let pieces = ((b - a) / limit).ceil().to_usize().unwrap_or(1).max(1);
        for p in 1..pieces {
            out.push(wrap_angle(a + (b - a) * T::lit(p as f64) / T::lit(pieces as f64)));
        }
    }
    out
}

/// `Lambda_k(diag(eigs))` as an exact polygon.
///
/// The support function `h(xi)` (the k-th largest `2 Re(e^{i xi} lambda_j)`)
/// follows one eigenvalue on each arc between critical angles. Over an arc
/// shorter than `pi` the constraint for a fixed eigenvalue is implied by
/// the constraints at the arc's endpoints, so intersecting the half-planes
/// at all critical angles is exact.
pub fn normal_polygon<T: Real>(eigs: &[Cx<T>], k: usize) -> Result<ConvexPolygon<T>> {
    check_rank(k, eigs.len())?;
    if eigs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let eps = classification_tol(eigs);
    let slack = eps * T::lit(1e-2);
    let mut region = ConvexPolygon::square(Cx::new(T::zero(), T::zero()), T::two() * scale_of(eigs));
    for xi in critical_angles(eigs) {
        let h = normal_support(eigs, k, xi);
        if let Some(hp) = HalfPlane::new(xi.cos(), -xi.sin(), h * T::half()) {
            region = region.clip(&hp, slack, eps);
        }
        if region.is_empty() {
            break;
        }
    }
    Ok(region)
}

fn binomial(n: usize, r: usize) -> u128 {
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Literal intersection of the convex hulls of every `(n-k+1)`-subset of
/// `eigs`, subsets taken in lexicographic order.
pub fn subset_hull_oracle<T: Real>(eigs: &[Cx<T>], k: usize) -> Result<ConvexPolygon<T>> {
    let n = eigs.len();
    check_rank(k, n)?;
    let r = n - k + 1;
    let count = binomial(n, r);
    if count > SUBSET_GUARD {
        return Err(Error::GuardExceeded(count));
    }
    let eps = classification_tol(eigs);
    let mut idx: Vec<usize> = (0..r).collect();
    let mut acc: Option<ConvexPolygon<T>> = None;
    loop {
        let pts: Vec<Cx<T>> = idx.iter().map(|&i| eigs[i]).collect();
        let hull = ConvexPolygon::from_points(&pts, eps);
        let next = match acc {
            None => hull,
            Some(prev) => prev.intersect(&hull, eps),
        };
        if next.is_empty() {
            return Ok(next);
        }
        acc = Some(next);

        // advance to the next combination
        let mut i = r;
        while i > 0 && idx[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(acc.unwrap_or_else(ConvexPolygon::empty))
}

/// `polygon_intersect` with the collinearity tolerance `1e-12 * scale`,
/// where `scale` is one plus the largest vertex modulus of either input.
pub fn polygon_intersect<T: Real>(p: &ConvexPolygon<T>, q: &ConvexPolygon<T>) -> ConvexPolygon<T> {
    let scale = p
        .vertices()
        .iter()
        .chain(q.vertices())
        .map(|z| z.norm())
        .fold(T::zero(), T::max);
    p.intersect(q, T::tol(1e-12) * (T::one() + scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hausdorff, PolygonKind};
    use crate::scalar::cx;

    fn reals(v: &[f64]) -> Vec<Cx<f64>> {
        v.iter().map(|&x| cx(x, 0.0)).collect()
    }

    #[test]
    fn triangle_for_rank_one() {
        let w: Vec<Cx<f64>> = (0..3).map(|j| cis(std::f64::consts::TAU * j as f64 / 3.0)).collect();
        let p = normal_polygon(&w, 1).unwrap();
        assert_eq!(p.kind(), PolygonKind::Polygon);
        assert_eq!(p.vertices().len(), 3);
        let tri = ConvexPolygon::from_points(&w, 1e-12);
        assert!(hausdorff(&p, &tri) < 1e-12);
    }

    #[test]
    fn real_spectrum_gives_interval() {
        let p = normal_polygon(&reals(&[4.0, 3.0, 2.0, 1.0]), 2).unwrap();
        assert_eq!(p.kind(), PolygonKind::Segment);
        assert!((p.vertices()[0] - cx(2.0, 0.0)).norm() < 1e-10);
        assert!((p.vertices()[1] - cx(3.0, 0.0)).norm() < 1e-10);
        let o = subset_hull_oracle(&reals(&[4.0, 3.0, 2.0, 1.0]), 1).unwrap();
        assert_eq!(o.kind(), PolygonKind::Segment);
        assert!((o.vertices()[0] - cx(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn quarter_roots_rank_two_is_origin() {
        let e = vec![cx(1.0, 0.0), cx(0.0, 1.0), cx(-1.0, 0.0), cx(0.0, -1.0)];
        for p in [normal_polygon(&e, 2).unwrap(), subset_hull_oracle(&e, 2).unwrap()] {
            assert_eq!(p.kind(), PolygonKind::Point);
            assert!(p.vertices()[0].norm() < 1e-9);
        }
    }

    #[test]
    fn full_rank_of_distinct_points_is_empty() {
        let e = vec![cx(1.0, 0.0), cx(0.0, 1.0), cx(-1.0, 0.5)];
        assert!(subset_hull_oracle(&e, 3).unwrap().is_empty());
        assert!(normal_polygon(&e, 3).unwrap().is_empty());
        let same = vec![cx(2.0, 1.0); 3];
        assert_eq!(normal_polygon(&same, 3).unwrap().kind(), PolygonKind::Point);
    }

    #[test]
    fn rank_errors_and_guard() {
        assert!(matches!(normal_polygon(&reals(&[1.0]), 2), Err(Error::RankOutOfRange { .. })));
        let many = reals(&(0..40).map(|x| x as f64).collect::<Vec<_>>());
        assert!(matches!(subset_hull_oracle(&many, 20), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn intersect_is_idempotent() {
        let p = ConvexPolygon::from_points(&[cx(0.0, 0.0), cx(2.0, 0.0), cx(1.0, 1.5)], 1e-12);
        assert!(hausdorff(&polygon_intersect(&p, &p), &p) < 1e-12);
    }
}
