//! Canonical blocks for `*`-congruence and the isotropic-dimension count
//! they determine.
//!
//! Three block types:
//! - `Gamma(r, mu)`: `[[0_r, I_r], [J_r(mu), 0_r]]` with `|mu| > 1`;
//! - `JordanZero(s)`: the nilpotent Jordan block `J_s(0)`;
//! - `RotatedDelta(t, xi)`: `e^{i xi} Delta_t`, where `Delta_t` has `1` at
//!   `(p, q)` when `p + q = t + 1` and `i` when `p + q = t + 2` (1-based).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{cis, cx, wrap_angle, Cx, Real};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CanonicalSummand<T> {
    Gamma { r: usize, mu: Cx<T> },
    JordanZero { s: usize },
    RotatedDelta { t: usize, xi: T },
}

impl<T: Real> CanonicalSummand<T> {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CanonicalSummand::Gamma { r, mu } => {
                if r == 0 {
                    return Err(Error::InvalidSummand("Gamma block needs r >= 1".into()));
                }
                if !(mu.norm() > T::one()) {
                    return Err(Error::InvalidSummand(format!(
                        "Gamma block needs |mu| > 1, got |mu| = {}",
                        mu.norm()
                    )));
                }
            }
            CanonicalSummand::JordanZero { s } if s == 0 => {
                return Err(Error::InvalidSummand("Jordan block needs s >= 1".into()));
            }
            CanonicalSummand::RotatedDelta { t, xi } => {
                if t == 0 {
                    return Err(Error::InvalidSummand("Delta block needs t >= 1".into()));
                }
                if !xi.is_finite() {
                    return Err(Error::InvalidSummand("Delta phase is not finite".into()));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Order of the block.
    pub fn size(&self) -> usize {
        match *self {
            CanonicalSummand::Gamma { r, .. } => 2 * r,
            CanonicalSummand::JordanZero { s } => s,
            CanonicalSummand::RotatedDelta { t, .. } => t,
        }
    }
}

impl<T: Real> fmt::Display for CanonicalSummand<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CanonicalSummand::Gamma { r, mu } => write!(f, "G {r} {} {}", mu.re, mu.im),
            CanonicalSummand::JordanZero { s } => write!(f, "J {s}"),
            CanonicalSummand::RotatedDelta { t, xi } => write!(f, "D {t} {xi}"),
        }
    }
}

pub fn build_summand<T: Real>(s: &CanonicalSummand<T>) -> Result<Matrix<T>> {
    s.validate()?;
    let one = cx(T::one(), T::zero());
    Ok(match *s {
        CanonicalSummand::Gamma { r, mu } => {
            let mut m = Matrix::zeros(2 * r, 2 * r);
            for i in 0..r {
                m[(i, r + i)] = one;
                m[(r + i, i)] = mu;
                if i + 1 < r {
                    m[(r + i, i + 1)] = one;
                }
            }
            m
        }
        CanonicalSummand::JordanZero { s } => {
            let mut m = Matrix::zeros(s, s);
            for i in 0..s.saturating_sub(1) {
                m[(i, i + 1)] = one;
            }
            m
        }
        CanonicalSummand::RotatedDelta { t, xi } => {
            let e = cis(xi);
            let i_unit = cx(T::zero(), T::one());
            Matrix::from_fn(t, t, |p, q| {
                // 0-based: p + q = t - 1 for the unit anti-diagonal
                if p + q + 1 == t {
                    e
                } else if p + q == t {
                    e * i_unit
                } else {
                    Cx::new(T::zero(), T::zero())
                }
            })
        }
    })
}

/// Block-diagonal assembly in list order.
pub fn build_direct_sum<T: Real>(list: &[CanonicalSummand<T>]) -> Result<Matrix<T>> {
    if list.is_empty() {
        return Err(Error::InvalidSummand("empty summand list".into()));
    }
    let blocks = list.iter().map(build_summand).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::direct_sum(&blocks))
}

/// Minimum over `xi` of `#{j : cos(xi + phase_j) >= 0}` together with an
/// angle attaining it (the midpoint of a minimizing arc).
///
/// The count only changes at the `2q` angles `±pi/2 - phase_j`, and its
/// minimum is attained on the open arcs between them.
pub fn min_nonneg_cosines<T: Real>(phases: &[T]) -> (usize, T) {
    if phases.is_empty() {
        return (0, T::zero());
    }
    let mut crit: Vec<T> = phases
        .iter()
        .flat_map(|&p| [wrap_angle(T::FRAC_PI_2() - p), wrap_angle(-T::FRAC_PI_2() - p)])
        .collect();
    crit.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    crit.dedup();
    let count = |xi: T| phases.iter().filter(|&&p| (xi + p).cos() >= T::zero()).count();
    let mut best = (usize::MAX, T::zero());
    let mut consider = |xi: T| {
        let c = count(xi);
        if c < best.0 {
            best = (c, xi);
        }
    };
    for i in 0..crit.len() {
        let next = if i + 1 < crit.len() {
            crit[i + 1]
        } else {
            crit[0] + T::TAU()
        };
        consider(wrap_angle((crit[i] + next) * T::half()));
    }
    for &c in &crit {
        consider(c);
    }
    best
}

/// `min over xi of nu(e^{i xi} N + e^{-i xi} N*)` for
/// `N = diag(e^{i phase_1}, ..., e^{i phase_q})`.
pub fn ell_prime<T: Real>(phases: &[T]) -> usize {
    min_nonneg_cosines(phases).0
}

/// Isotropic dimension of a canonical direct sum:
/// `sum r + (sum s + p) / 2 + (sum t - q) / 2 + ell'`, where `p` and `q`
/// count the odd Jordan and odd Delta blocks and `ell'` is taken over the
/// phases of the odd Delta blocks.
pub fn kprime_formula<T: Real>(list: &[CanonicalSummand<T>]) -> usize {
    let (mut gamma, mut jordan, mut p, mut delta, mut q) = (0, 0, 0, 0, 0);
    let mut phases = Vec::new();
    for s in list {
        match *s {
            CanonicalSummand::Gamma { r, .. } => gamma += r,
            CanonicalSummand::JordanZero { s } => {
                jordan += s;
                p += s % 2;
            }
            CanonicalSummand::RotatedDelta { t, xi } => {
                delta += t;
                if t % 2 == 1 {
                    q += 1;
                    phases.push(xi);
                }
            }
        }
    }
    gamma + (jordan + p) / 2 + (delta - q) / 2 + ell_prime(&phases)
}

fn parse_err(line: usize, msg: impl fmt::Display) -> Error {
    Error::InvalidSummand(format!("line {line}: {msg}"))
}

fn field<F: FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<F> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("malformed {what} '{tok}'")))
}

/// Parses one summand per line: `G r re im`, `J s` or `D t xi`. Blank lines
/// and lines starting with `#` are skipped.
pub fn parse_summands(text: &str) -> Result<Vec<CanonicalSummand<f64>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut toks = body.split_whitespace();
        let tag = toks.next().unwrap_or_default();
        let s = match tag {
            "G" => {
                let r = field(toks.next(), line, "r")?;
                let re: f64 = field(toks.next(), line, "real part")?;
                let im: f64 = field(toks.next(), line, "imaginary part")?;
                CanonicalSummand::Gamma { r, mu: cx(re, im) }
            }
            "J" => CanonicalSummand::JordanZero {
                s: field(toks.next(), line, "s")?,
            },
            "D" => CanonicalSummand::RotatedDelta {
                t: field(toks.next(), line, "t")?,
                xi: field(toks.next(), line, "xi")?,
            },
            other => return Err(parse_err(line, format!("unknown summand '{other}'"))),
        };
        if let Some(extra) = toks.next() {
            return Err(parse_err(line, format!("unexpected token '{extra}'")));
        }
        s.validate().map_err(|e| parse_err(line, e))?;
        out.push(s);
    }
    if out.is_empty() {
        return Err(Error::InvalidSummand("no summands".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn delta_blocks() {
        let d1 = build_summand(&CanonicalSummand::RotatedDelta { t: 1, xi: 0.0 }).unwrap();
        assert_eq!(d1, Matrix::identity(1));
        let d2 = build_summand(&CanonicalSummand::RotatedDelta { t: 2, xi: 0.0 }).unwrap();
        let want = Matrix::new(2, 2, vec![cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 1.0)]).unwrap();
        assert_eq!(d2, want);
    }

    #[test]
    fn gamma_and_jordan_blocks() {
        let g = build_summand(&CanonicalSummand::Gamma { r: 1, mu: cx(2.0, 0.0) }).unwrap();
        assert_eq!(g, Matrix::from_real(2, 2, &[0.0, 1.0, 2.0, 0.0]));
        let g2 = build_summand(&CanonicalSummand::Gamma { r: 2, mu: cx(0.0, 3.0) }).unwrap();
        assert_eq!(g2[(2, 0)], cx(0.0, 3.0));
        assert_eq!(g2[(2, 1)], cx(1.0, 0.0));
        assert_eq!(g2[(3, 1)], cx(0.0, 3.0));
        assert!(build_summand(&CanonicalSummand::Gamma { r: 1, mu: cx(1.0, 0.0) }).is_err());
        let j = build_direct_sum(&[CanonicalSummand::<f64>::JordanZero { s: 1 }]).unwrap();
        assert_eq!(j, Matrix::zeros(1, 1));
        let m = build_direct_sum(&[
            CanonicalSummand::Gamma { r: 1, mu: cx(2.0, 0.0) },
            CanonicalSummand::JordanZero { s: 2 },
        ])
        .unwrap();
        assert_eq!(m.rows(), 4);
        assert_eq!(m[(2, 3)], cx(1.0, 0.0));
    }

    #[test]
    fn ell_prime_values() {
        assert_eq!(ell_prime::<f64>(&[]), 0);
        assert_eq!(ell_prime(&[0.0]), 0);
        assert_eq!(ell_prime(&[0.0, 0.0]), 0);
        assert_eq!(ell_prime(&[0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2]), 2);
        assert_eq!(ell_prime(&[0.0, PI]), 1);
    }

    #[test]
    fn kprime_values() {
        assert_eq!(kprime_formula::<f64>(&[CanonicalSummand::JordanZero { s: 3 }]), 2);
        assert_eq!(kprime_formula(&[CanonicalSummand::Gamma { r: 2, mu: cx(0.0, 3.0) }]), 2);
        assert_eq!(
            kprime_formula(&[
                CanonicalSummand::RotatedDelta { t: 1, xi: 0.0 },
                CanonicalSummand::RotatedDelta { t: 1, xi: FRAC_PI_2 },
            ]),
            0
        );
    }

    #[test]
    fn parsing() {
        let list = parse_summands("# demo\nG 1 2 0\n\nJ 3\nD 2 0.5\n").unwrap();
        assert_eq!(list.len(), 3);
        assert_eq!(list[2], CanonicalSummand::RotatedDelta { t: 2, xi: 0.5 });
        let err = parse_summands("J 2\nX 1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
        assert!(parse_summands("G 1 0.5 0").is_err());
        assert!(parse_summands("J 1 2").is_err());
    }
}
