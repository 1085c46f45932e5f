use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::eigen::adjoint2;
use crate::matrix::Matrix;
use crate::scalar::{Cx, Real};

/// `Q* A Q = T` with `Q` unitary and `T` upper triangular.
#[derive(Clone, Debug)]
pub struct SchurFactors<T> {
    pub q: Matrix<T>,
    pub t: Matrix<T>,
}

impl<T: Real> SchurFactors<T> {
    pub fn eigenvalues(&self) -> Vec<Cx<T>> {
        self.t.diag()
    }
}

/// Unitary `[[c, s], [-conj(s), c]]` (real `c`) mapping `(x, y)` to `(r, 0)`.
pub(crate) fn givens<T: Real>(x: Cx<T>, y: Cx<T>) -> [[Cx<T>; 2]; 2] {
    if y.is_zero() {
        return [[Cx::one(), Cx::zero()], [Cx::zero(), Cx::one()]];
    }
    let ax = x.norm();
    let rho = (ax * ax + y.norm_sqr()).sqrt();
    let phase = if ax > T::zero() { x / ax } else { Cx::one() };
    let c = Complex::new(ax / rho, T::zero());
    let s = phase * y.conj() / rho;
    [[c, s], [-s.conj(), c]]
}

/// Householder reduction to upper Hessenberg form: returns `(Q, H)` with
/// `Q* A Q = H`.
pub fn hessenberg<T: Real>(a: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let n = a.order()?;
    a.check_finite()?;
    let mut h = a.clone();
    let mut q = Matrix::identity(n);
    for j in 0..n.saturating_sub(2) {
        let tail: T = ((j + 2)..n)
            .map(|i| h[(i, j)].norm_sqr())
            .fold(T::zero(), |x, y| x + y);
        if tail == T::zero() {
            continue;
        }
        let x0 = h[(j + 1, j)];
        let norm = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0.norm() > T::zero() {
            x0 / x0.norm()
        } else {
            Cx::one()
        };
        let alpha = -phase * norm;
        let mut v: Vec<Cx<T>> = ((j + 1)..n).map(|i| h[(i, j)]).collect();
        v[0] = v[0] - alpha;
        let vv: T = v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |x, y| x + y);
        let beta = T::two() / vv;
        let off = j + 1;

        for c in j..n {
            let w = v
                .iter()
                .enumerate()
                .fold(Cx::zero(), |acc, (i, vi)| acc + vi.conj() * h[(off + i, c)])
                * beta;
            for (i, vi) in v.iter().enumerate() {
                h[(off + i, c)] = h[(off + i, c)] - *vi * w;
            }
        }
        for row in 0..n {
            let w = v
                .iter()
                .enumerate()
                .fold(Cx::zero(), |acc, (i, vi)| acc + h[(row, off + i)] * *vi)
                * beta;
            for (i, vi) in v.iter().enumerate() {
                h[(row, off + i)] = h[(row, off + i)] - w * vi.conj();
            }
            let w = v
                .iter()
                .enumerate()
                .fold(Cx::zero(), |acc, (i, vi)| acc + q[(row, off + i)] * *vi)
                * beta;
            for (i, vi) in v.iter().enumerate() {
                q[(row, off + i)] = q[(row, off + i)] - w * vi.conj();
            }
        }
        h[(j + 1, j)] = alpha;
        for i in (j + 2)..n {
            h[(i, j)] = Cx::zero();
        }
    }
    Ok((q, h))
}

fn wilkinson_shift<T: Real>(h: &Matrix<T>, hi: usize) -> Cx<T> {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let mean = (a + d) * T::half();
    let half = (a - d) * T::half();
    let r = (half * half + b * c).sqrt();
    let (e1, e2) = (mean + r, mean - r);
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// One explicitly shifted QR sweep on the active window `lo..=hi`.
fn qr_sweep<T: Real>(h: &mut Matrix<T>, q: &mut Matrix<T>, lo: usize, hi: usize, shift: Cx<T>) {
    let n = h.rows();
    for i in lo..=hi {
        h[(i, i)] = h[(i, i)] - shift;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for j in lo..hi {
        let g = givens(h[(j, j)], h[(j + 1, j)]);
        h.rotate_rows(j, j + 1, g, j..n);
        h[(j + 1, j)] = Cx::zero();
        rots.push(g);
    }
    for (off, g) in rots.into_iter().enumerate() {
        let j = lo + off;
        let ga = adjoint2(g);
        h.rotate_cols(j, j + 1, ga, 0..(j + 2).min(hi + 1));
        q.rotate_cols(j, j + 1, ga, 0..n);
    }
    for i in lo..=hi {
        h[(i, i)] = h[(i, i)] + shift;
    }
}

/// Complex Schur decomposition: Hessenberg reduction followed by single
/// Wilkinson-shift QR iterations.
///
/// A subdiagonal entry is deflated when it falls below
/// `1e-14 (|t_ii| + |t_{i+1,i+1}|)`, or below `eps ||A||_F` (needed when
/// both neighbouring diagonal entries vanish, e.g. nilpotent input).
/// At most `40 n` sweeps are spent in total.
pub fn complex_schur<T: Real>(a: &Matrix<T>) -> Result<SchurFactors<T>> {
    let n = a.order()?;
    let (mut q, mut h) = hessenberg(a)?;
    if n <= 1 {
        return Ok(SchurFactors { q, t: h });
    }
    let floor = T::epsilon() * h.frobenius_norm();
    let rel = T::tol(1e-14);
    let max_sweeps = 40 * n;
    let mut sweeps = 0;
    let mut since_deflation = 0;
    let mut hi = n - 1;

    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if sub <= rel * diag || sub <= floor {
                h[(lo, lo - 1)] = Cx::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if sweeps >= max_sweeps {
            return Err(Error::NoConvergence("complex Schur QR iteration"));
        }
        sweeps += 1;
        since_deflation += 1;
        let shift = if since_deflation % 10 == 0 {
            // exceptional shift to break cycles
            let s = h[(hi, hi - 1)].norm() * T::lit(0.75);
            h[(hi, hi)] + Complex::new(s, s)
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_sweep(&mut h, &mut q, lo, hi, shift);
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = Cx::zero();
        }
    }
    Ok(SchurFactors { q, t: h })
}

/// Swaps the adjacent diagonal entries `i`, `i+1` of a Schur form.
fn swap_adjacent<T: Real>(f: &mut SchurFactors<T>, i: usize) {
    let n = f.t.rows();
    let a = f.t[(i, i)];
    let d = f.t[(i + 1, i + 1)];
    let b = f.t[(i, i + 1)];
    let g = givens(b, d - a);
    let ga = adjoint2(g);
    f.t.rotate_rows(i, i + 1, g, i..n);
    f.t.rotate_cols(i, i + 1, ga, 0..(i + 2));
    f.q.rotate_cols(i, i + 1, ga, 0..n);
    f.t[(i + 1, i)] = Cx::zero();
}

/// Reorders a Schur form so that all eigenvalues satisfying `select` come
/// first. Returns how many were selected.
pub fn reorder_schur<T: Real>(f: &mut SchurFactors<T>, select: impl Fn(Cx<T>) -> bool) -> usize {
    let n = f.t.rows();
    loop {
        let mut swapped = false;
        for i in 0..n.saturating_sub(1) {
            if !select(f.t[(i, i)]) && select(f.t[(i + 1, i + 1)]) {
                swap_adjacent(f, i);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    (0..n).filter(|&i| select(f.t[(i, i)])).count()
}

/// Eigenvectors of an upper triangular matrix by back substitution,
/// one per column (unnormalized, unit entry at the eigenvalue's position).
pub fn triangular_eigenvectors<T: Real>(t: &Matrix<T>) -> Matrix<T> {
    let n = t.rows();
    let small = T::epsilon() * t.frobenius_norm().max(T::min_positive_value());
    let mut x = Matrix::zeros(n, n);
    for j in 0..n {
        x[(j, j)] = Cx::one();
        for i in (0..j).rev() {
            let mut s: Cx<T> = Cx::zero();
            for l in (i + 1)..=j {
                s = s + t[(i, l)] * x[(l, j)];
            }
            let mut den = t[(i, i)] - t[(j, j)];
            if den.norm() < small {
                den = Complex::new(small, T::zero());
            }
            x[(i, j)] = -s / den;
        }
    }
    x
}
