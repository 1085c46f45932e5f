//! Unitaries `U` with `U* A U` having `mu I_k` as leading block, for normal
//! `A` given by its eigenvalues.

use crate::canonical::min_nonneg_cosines;
use crate::constructors::isometry::{search_isometry, SearchOptions};
use crate::error::{Error, Result};
use crate::linalg::{complete_to_unitary, qr};
use crate::matrix::Matrix;
use crate::normal_exact::normal_polygon;
use crate::scalar::{cis, real, Cx, Real};

/// Q factor of `S`, given that `S* A S` has a zero leading `k x k` block.
///
/// With `S = Q R`, `Q* A Q = R^{-*} (S* A S) R^{-1}`, and since `R^{-1}` is
/// upper triangular the zero leading block survives.
pub fn unitary_from_congruence<T: Real>(a: &Matrix<T>, s: &Matrix<T>, k: usize) -> Result<Matrix<T>> {
    let n = a.order()?;
    if s.rows() != n || s.cols() != n {
        return Err(Error::Dimension(format!(
            "congruence factor is {}x{}, expected {n}x{n}",
            s.rows(),
            s.cols()
        )));
    }
    if k == 0 || k > n {
        return Err(Error::RankOutOfRange { k, n });
    }
    let lead = (&(&s.adjoint() * a) * s).leading(k).frobenius_norm();
    let sn = s.frobenius_norm();
    let bound = T::tol(1e-6) * a.frobenius_norm() * sn * sn;
    if lead > bound.max(T::epsilon() * T::lit(16.0)) {
        return Err(Error::Precondition(format!(
            "leading {k}x{k} block of S*AS has norm {lead:.3e}"
        )));
    }
    let f = qr(s)?;
    let rmax = (0..n).map(|i| f.r[(i, i)].re).fold(T::zero(), T::max);
    let rmin = (0..n).map(|i| f.r[(i, i)].re).fold(T::infinity(), T::min);
    if !(rmin > T::epsilon() * T::lit(n as f64) * rmax) {
        return Err(Error::Singular);
    }
    Ok(f.q)
}

/// Convex weights (at most three nonzero) expressing `mu` through `points`.
///
/// Tries a single point, then segments, then triangles, and keeps the
/// candidate that needs the least tolerance.
pub fn convex_representation<T: Real>(points: &[Cx<T>], mu: Cx<T>, tol: T) -> Result<Vec<T>> {
    let n = points.len();
    let mut w = vec![T::zero(); n];
    if let Some((j, d)) = points
        .iter()
        .enumerate()
        .map(|(j, &p)| (j, (p - mu).norm()))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
    {
        if d <= tol {
            w[j] = T::one();
            return Ok(w);
        }
    }
    let mut best: Option<(T, Vec<(usize, T)>)> = None;
    fn offer<T: Real>(best: &mut Option<(T, Vec<(usize, T)>)>, miss: T, wts: Vec<(usize, T)>) {
        if best.as_ref().is_none_or(|(m, _)| miss < *m) {
            *best = Some((miss, wts));
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            let d = points[b] - points[a];
            let len2 = d.norm_sqr();
            if len2 == T::zero() {
                continue;
            }
            let rel = mu - points[a];
            let t = (rel.re * d.re + rel.im * d.im) / len2;
            let t = t.max(T::zero()).min(T::one());
            let miss = (points[a] + d * t - mu).norm();
            if miss <= tol {
                offer(&mut best, miss, vec![(a, T::one() - t), (b, t)]);
            }
        }
    }
    if best.is_none() {
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    let (pa, pb, pc) = (points[a], points[b], points[c]);
                    let det = (pb - pa).re * (pc - pa).im - (pb - pa).im * (pc - pa).re;
                    if det.abs() <= T::epsilon() * (pb - pa).norm() * (pc - pa).norm() {
                        continue;
                    }
                    let r = mu - pa;
                    let lb = (r.re * (pc - pa).im - r.im * (pc - pa).re) / det;
                    let lc = ((pb - pa).re * r.im - (pb - pa).im * r.re) / det;
                    let la = T::one() - lb - lc;
                    let lo = la.min(lb).min(lc);
                    if lo >= -tol {
                        let (la, lb, lc) = (la.max(T::zero()), lb.max(T::zero()), lc.max(T::zero()));
                        let s = la + lb + lc;
                        // most interior triangle wins
                        offer(&mut best, -lo, vec![(a, la / s), (b, lb / s), (c, lc / s)]);
                    }
                }
            }
        }
    }
    match best {
        Some((_, wts)) => {
            for (j, x) in wts {
                w[j] = x;
            }
            Ok(w)
        }
        None => Err(Error::Infeasible(
            "point lies outside the convex hull".into(),
        )),
    }
}

/// Assigns each target a disjoint bracketing pair or an exact single index.
fn bracket<T: Real>(d: &[T], targets: &[T], tol: T) -> Option<Vec<(usize, Option<usize>)>> {
    let m = d.len();
    let mut order: Vec<usize> = (0..targets.len()).collect();
    order.sort_by(|&a, &b| targets[b].partial_cmp(&targets[a]).unwrap_or(std::cmp::Ordering::Equal));
    let mut used = vec![false; m];
    let mut out = vec![(0, None); targets.len()];
    let mut budget = 100_000usize;

    fn go<T: Real>(
        pos: usize,
        order: &[usize],
        d: &[T],
        targets: &[T],
        tol: T,
        used: &mut [bool],
        out: &mut [(usize, Option<usize>)],
        budget: &mut usize,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let t = targets[order[pos]];
        let m = d.len();
        let mut singles: Vec<usize> = (0..m).filter(|&a| !used[a] && (d[a] - t).abs() <= tol).collect();
        singles.sort_by(|&a, &b| (d[a] - t).abs().partial_cmp(&(d[b] - t).abs()).unwrap_or(std::cmp::Ordering::Equal));
        for a in singles {
            used[a] = true;
            out[order[pos]] = (a, None);
            if go(pos + 1, order, d, targets, tol, used, out, budget) {
                return true;
            }
            used[a] = false;
        }
        let mut above: Vec<usize> = (0..m).filter(|&a| !used[a] && d[a] > t).collect();
        let mut below: Vec<usize> = (0..m).filter(|&b| !used[b] && d[b] < t).collect();
        above.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap_or(std::cmp::Ordering::Equal));
        below.sort_by(|&a, &b| d[b].partial_cmp(&d[a]).unwrap_or(std::cmp::Ordering::Equal));
        let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
        for (i, &a) in above.iter().enumerate() {
            for (j, &b) in below.iter().enumerate() {
                pairs.push((i + j, a, b));
            }
        }
        pairs.sort_by_key(|p| p.0);
        for (_, a, b) in pairs {
            used[a] = true;
            used[b] = true;
            out[order[pos]] = (a, Some(b));
            if go(pos + 1, order, d, targets, tol, used, out, budget) {
                return true;
            }
            used[a] = false;
            used[b] = false;
        }
        false
    }

    if go(0, &order, d, targets, tol, &mut used, &mut out, &mut budget) {
        Some(out)
    } else {
        None
    }
}

/// Unitary `V` whose leading `k x k` compression of `diag(d)` is exactly
/// `diag(targets)`.
///
/// Each target is matched to an index `a` with `d_a = t` or to a disjoint
/// pair with `d_a > t > d_b`; column `j` is then `cos(th) e_a + sin(th) e_b`
/// with `cos^2(th) d_a + sin^2(th) d_b = t`. Disjoint supports make the
/// off-diagonal entries vanish. The remaining columns complete a basis.
pub fn fan_pall_compress<T: Real>(d: &[T], targets: &[T]) -> Result<Matrix<T>> {
    let m = d.len();
    let k = targets.len();
    if k > m {
        return Err(Error::BracketingInfeasible);
    }
    let scale = T::one() + d.iter().chain(targets).map(|x| x.abs()).fold(T::zero(), T::max);
    let tol = T::tol(1e-12) * scale;
    let assignment = bracket(d, targets, tol).ok_or(Error::BracketingInfeasible)?;
    let mut v = Matrix::zeros(m, k);
    for (j, (a, b)) in assignment.into_iter().enumerate() {
        match b {
            None => v[(a, j)] = real(T::one()),
            Some(b) => {
                let c2 = ((targets[j] - d[b]) / (d[a] - d[b])).max(T::zero()).min(T::one());
                v[(a, j)] = real(c2.sqrt());
                v[(b, j)] = real((T::one() - c2).sqrt());
            }
        }
    }
    complete_to_unitary(&v)
}

/// Permutation matrix `P` with `P* diag(x) P = diag(x[order])`.
fn permutation<T: Real>(order: &[usize]) -> Matrix<T> {
    let n = order.len();
    let mut p = Matrix::zeros(n, n);
    for (i, &j) in order.iter().enumerate() {
        p[(j, i)] = real(T::one());
    }
    p
}

struct Bands<T> {
    zero: T,
    angle: T,
}

/// Unitary `U` with a zero leading `k x k` block in `U* diag(b) U`, assuming
/// `0` lies in the rank-k range of `diag(b)`.
fn zero_block<T: Real>(b: &[Cx<T>], k: usize, bands: &Bands<T>) -> Result<Matrix<T>> {
    let n = b.len();
    if k == 0 {
        return Ok(Matrix::identity(n));
    }
    if k > n {
        return Err(Error::RankOutOfRange { k, n });
    }

    // A zero eigenvalue deflates one dimension.
    let nearest = (0..n)
        .min_by(|&i, &j| b[i].norm().partial_cmp(&b[j].norm()).unwrap_or(std::cmp::Ordering::Equal))
        .expect("nonempty spectrum");
    if b[nearest].norm() <= bands.zero {
        let order: Vec<usize> = std::iter::once(nearest).chain((0..n).filter(|&i| i != nearest)).collect();
        let rest: Vec<Cx<T>> = order[1..].iter().map(|&i| b[i]).collect();
        let inner = zero_block(&rest, k - 1, bands)?;
        let u = &permutation(&order) * &Matrix::direct_sum(&[Matrix::identity(1), inner]);
        return Ok(u);
    }

    if k == 1 {
        let w = convex_representation(b, Cx::new(T::zero(), T::zero()), bands.zero)?;
        let col: Vec<Cx<T>> = w.iter().map(|&x| real(x.sqrt())).collect();
        return complete_to_unitary(&Matrix::from_column(&col));
    }

    // An antipodal pair carries one dimension on its own.
    let unit: Vec<Cx<T>> = b.iter().map(|z| z / z.norm()).collect();
    let mut pair = None;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            if (unit[i] + unit[j]).norm() <= bands.angle {
                pair = Some((i, j));
                break 'outer;
            }
        }
    }
    if let Some((i, j)) = pair {
        let order: Vec<usize> = [i, j]
            .into_iter()
            .chain((0..n).filter(|&x| x != i && x != j))
            .collect();
        let rest: Vec<Cx<T>> = order[2..].iter().map(|&x| b[x]).collect();
        let u1 = zero_block(&[b[i], b[j]], 1, bands)?;
        let u2 = zero_block(&rest, k - 1, bands)?;
        let u = &permutation(&order) * &Matrix::direct_sum(&[u1, u2]);
        // zero rows/columns sit at 0, 2, 3, ..., k
        let cols: Vec<usize> = std::iter::once(0)
            .chain(2..=k)
            .chain(std::iter::once(1))
            .chain((k + 1)..n)
            .collect();
        return Ok(u.select_columns(&cols));
    }

    generic_branch(b, k, bands)
}

/// Invertible spectrum without antipodal pairs: rotate so that the number
/// `kk` of eigenvalues in the closed right half-plane is minimal, scale by
/// `*`-congruence to `H + iG` with `H = I_kk (+) -I_{n-kk}`, compress the
/// negative part of `G` onto `-diag(g_1..g_kk)`, rotate with
/// `W = [[I, I], [I, -I]] / sqrt 2`, and orthonormalize.
fn generic_branch<T: Real>(b: &[Cx<T>], k: usize, bands: &Bands<T>) -> Result<Matrix<T>> {
    let n = b.len();
    let args: Vec<T> = b.iter().map(|z| z.arg()).collect();
    let (kk, xi) = min_nonneg_cosines(&args);
    if kk < k || 2 * kk > n {
        return Err(Error::Infeasible(format!(
            "rotation leaves {kk} eigenvalues in a half-plane, need {k}"
        )));
    }
    let e = cis(xi);
    let rotated: Vec<Cx<T>> = b.iter().map(|&z| e * z).collect();
    if rotated.iter().any(|z| z.re.abs() <= bands.zero) {
        return Err(Error::BracketingInfeasible);
    }
    let g = |j: usize| rotated[j].im / rotated[j].re.abs();
    let by_g = |x: &usize, y: &usize| g(*y).partial_cmp(&g(*x)).unwrap_or(std::cmp::Ordering::Equal);
    let mut pos: Vec<usize> = (0..n).filter(|&j| rotated[j].re > T::zero()).collect();
    let mut neg: Vec<usize> = (0..n).filter(|&j| rotated[j].re < T::zero()).collect();
    pos.sort_by(by_g);
    neg.sort_by(by_g);
    if pos.len() != kk {
        return Err(Error::BracketingInfeasible);
    }
    let d: Vec<T> = neg.iter().map(|&j| g(j)).collect();
    let targets: Vec<T> = pos.iter().map(|&j| -g(j)).collect();
    let v = fan_pall_compress(&d, &targets)?;

    let order: Vec<usize> = pos.iter().chain(&neg).copied().collect();
    let scaling: Vec<T> = order.iter().map(|&j| T::one() / rotated[j].re.abs().sqrt()).collect();
    let mut s = &permutation(&order) * &Matrix::from_real_diag(&scaling);
    s = &s * &Matrix::direct_sum(&[Matrix::identity(kk), v]);
    let h = T::FRAC_1_SQRT_2();
    let mut w = Matrix::identity(n);
    for i in 0..kk {
        w[(i, i)] = real(h);
        w[(i, kk + i)] = real(h);
        w[(kk + i, i)] = real(h);
        w[(kk + i, kk + i)] = real(-h);
    }
    s = &s * &w;
    unitary_from_congruence(&Matrix::from_diag(b), &s, kk)
}

/// Leading `k x k` block of `U* diag(eigs) U - mu I`, Frobenius norm.
pub fn compression_residual<T: Real>(eigs: &[Cx<T>], mu: Cx<T>, u: &Matrix<T>, k: usize) -> T {
    let b: Vec<Cx<T>> = eigs.iter().map(|&z| z - mu).collect();
    let v = u.first_columns(k);
    (&(&v.adjoint() * &Matrix::from_diag(&b)) * &v).frobenius_norm()
}

/// Unitary `U` such that `U* diag(eigs) U` has `mu I_k` as its leading
/// principal block.
///
/// Follows the induction over `k`: deflate a zero eigenvalue of
/// `B = diag(eigs) - mu I`; split off an antipodal pair as a rank-one
/// problem; otherwise use the half-plane scaling and Fan-Pall step. If the
/// construction breaks down numerically, a direct isometry search on
/// `diag(eigs)` takes over.
pub fn compress_normal<T: Real>(eigs: &[Cx<T>], mu: Cx<T>, k: usize) -> Result<Matrix<T>> {
    let n = eigs.len();
    if k == 0 || k > n {
        return Err(Error::RankOutOfRange { k, n });
    }
    let scale = T::one() + eigs.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    let region = normal_polygon(eigs, k)?;
    let gap = region.distance(mu);
    if !(gap <= T::tol(1e-9) * scale) {
        return Err(Error::Infeasible(format!(
            "mu is not in the rank-{k} numerical range (distance {gap:.3e})"
        )));
    }
    let bands = Bands {
        zero: T::tol(1e-9) * scale,
        angle: T::tol(1e-9),
    };
    let b: Vec<Cx<T>> = eigs.iter().map(|&z| z - mu).collect();
    let bound = T::tol(1e-8) * scale;
    if let Ok(u) = zero_block(&b, k, &bands) {
        if compression_residual(eigs, mu, &u, k) <= bound {
            return Ok(u);
        }
    }
    let diag = Matrix::from_diag(&b);
    let (v, res) = search_isometry(&diag, k, &SearchOptions::default());
    if res <= bound {
        return complete_to_unitary(&v);
    }
    Err(Error::SearchFailed { residual: res.as_f64() })
}
