//! Possibly degenerate convex regions of the complex plane.

use std::cmp::Ordering;

use crate::scalar::{cx, Cx, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolygonKind {
    Empty,
    Point,
    Segment,
    Polygon,
}

impl PolygonKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PolygonKind::Empty => "empty",
            PolygonKind::Point => "point",
            PolygonKind::Segment => "segment",
            PolygonKind::Polygon => "polygon",
        }
    }
}

/// Closed half-plane `nx * x + ny * y <= c`, with `(nx, ny)` a unit vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane<T> {
    pub nx: T,
    pub ny: T,
    pub c: T,
}

impl<T: Real> HalfPlane<T> {
    /// Normalizes `(nx, ny)`; returns `None` for a zero normal.
    pub fn new(nx: T, ny: T, c: T) -> Option<Self> {
        let len = nx.hypot(ny);
        if len == T::zero() || !len.is_finite() {
            return None;
        }
        Some(HalfPlane {
            nx: nx / len,
            ny: ny / len,
            c: c / len,
        })
    }

    /// Signed distance of `z` past the boundary (positive outside).
    pub fn excess(&self, z: Cx<T>) -> T {
        self.nx * z.re + self.ny * z.im - self.c
    }
}

/// Convex region stored by its vertices.
///
/// `Point` has one vertex, `Segment` two (sorted lexicographically),
/// `Polygon` three or more in counterclockwise order with no three
/// consecutive vertices collinear.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon<T> {
    kind: PolygonKind,
    vertices: Vec<Cx<T>>,
}

fn cross<T: Real>(o: Cx<T>, a: Cx<T>, b: Cx<T>) -> T {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn lex<T: Real>(a: &Cx<T>, b: &Cx<T>) -> Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
}

/// Distance from `z` to the segment `[p, q]`.
pub fn segment_distance<T: Real>(z: Cx<T>, p: Cx<T>, q: Cx<T>) -> T {
    let d = q - p;
    let len2 = d.norm_sqr();
    if len2 == T::zero() {
        return (z - p).norm();
    }
    let t = ((z - p).re * d.re + (z - p).im * d.im) / len2;
    let t = t.max(T::zero()).min(T::one());
    (z - (p + d * t)).norm()
}

/// Monotone-chain hull, counterclockwise, collinear points dropped.
fn hull<T: Real>(points: &[Cx<T>]) -> Vec<Cx<T>> {
    let mut pts = points.to_vec();
    pts.sort_by(lex);
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Cx<T>> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= T::zero() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Cx<T>> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= T::zero() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl<T: Real> ConvexPolygon<T> {
    pub fn empty() -> Self {
        ConvexPolygon {
            kind: PolygonKind::Empty,
            vertices: Vec::new(),
        }
    }

    pub fn point(z: Cx<T>) -> Self {
        ConvexPolygon {
            kind: PolygonKind::Point,
            vertices: vec![z],
        }
    }

    /// Axis-aligned square `[-r, r]^2` around `center`.
    pub fn square(center: Cx<T>, r: T) -> Self {
        let v = vec![
            center + cx(-r, -r),
            center + cx(r, -r),
            center + cx(r, r),
            center + cx(-r, r),
        ];
        ConvexPolygon {
            kind: PolygonKind::Polygon,
            vertices: v,
        }
    }

    /// Convex hull of `points`, classified with absolute tolerance `eps`:
    /// a point if the diameter is at most `eps`, a segment if every point
    /// lies within `eps` of the line through the farthest pair.
    pub fn from_points(points: &[Cx<T>], eps: T) -> Self {
        if points.is_empty() {
            return Self::empty();
        }
        let h = hull(points);
        let (mut bi, mut bj, mut diam) = (0, 0, T::zero());
        for i in 0..h.len() {
            for j in (i + 1)..h.len() {
                let d = (h[i] - h[j]).norm();
                if d > diam {
                    (bi, bj, diam) = (i, j, d);
                }
            }
        }
        if diam <= eps {
            let n = T::lit(points.len() as f64);
            let sum = points.iter().fold(Cx::new(T::zero(), T::zero()), |a, &b| a + b);
            return Self::point(sum / n);
        }
        let (p, q) = (h[bi], h[bj]);
        let off_line = h
            .iter()
            .map(|&z| cross(p, q, z).abs() / diam)
            .fold(T::zero(), T::max);
        if off_line <= eps {
            let mut ends = vec![p, q];
            ends.sort_by(lex);
            return ConvexPolygon {
                kind: PolygonKind::Segment,
                vertices: ends,
            };
        }
        // Drop vertices within eps of the chord joining their neighbours.
        let mut v = h;
        loop {
            let n = v.len();
            let drop = (0..n).find(|&i| {
                let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
                let chord = (c - a).norm();
                chord > T::zero() && cross(a, b, c) <= eps * chord
            });
            match drop {
                Some(i) if n > 3 => {
                    v.remove(i);
                }
                _ => break,
            }
        }
        ConvexPolygon {
            kind: PolygonKind::Polygon,
            vertices: v,
        }
    }

    pub fn kind(&self) -> PolygonKind {
        self.kind
    }

    pub fn vertices(&self) -> &[Cx<T>] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.kind == PolygonKind::Empty
    }

    pub fn diameter(&self) -> T {
        let v = &self.vertices;
        let mut d = T::zero();
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                d = d.max((v[i] - v[j]).norm());
            }
        }
        d
    }

    /// Area (zero for degenerate kinds).
    pub fn area(&self) -> T {
        if self.kind != PolygonKind::Polygon {
            return T::zero();
        }
        let v = &self.vertices;
        let n = v.len();
        let twice: T = (0..n)
            .map(|i| v[i].re * v[(i + 1) % n].im - v[(i + 1) % n].re * v[i].im)
            .sum();
        twice * T::half()
    }

    /// Area centroid for polygons, vertex mean otherwise. `None` if empty.
    pub fn centroid(&self) -> Option<Cx<T>> {
        let v = &self.vertices;
        match self.kind {
            PolygonKind::Empty => None,
            PolygonKind::Point | PolygonKind::Segment => {
                let n = T::lit(v.len() as f64);
                Some(v.iter().fold(Cx::new(T::zero(), T::zero()), |a, &b| a + b) / n)
            }
            PolygonKind::Polygon => {
                let n = v.len();
                let o = v[0];
                let (mut a, mut c) = (T::zero(), Cx::new(T::zero(), T::zero()));
                for i in 1..n - 1 {
                    let w = cross(o, v[i], v[i + 1]);
                    a = a + w;
                    c = c + (o + v[i] + v[i + 1]) * w;
                }
                Some(c / (a * T::lit(3.0)))
            }
        }
    }

    /// Half-plane description. A segment or point yields the two sides of
    /// its supporting line plus two end caps.
    pub fn half_planes(&self) -> Vec<HalfPlane<T>> {
        let v = &self.vertices;
        let line = |p: Cx<T>, d: Cx<T>, q: Cx<T>| {
            let (nx, ny) = (d.im, -d.re);
            let mut out = Vec::with_capacity(4);
            out.extend(HalfPlane::new(nx, ny, nx * p.re + ny * p.im));
            out.extend(HalfPlane::new(-nx, -ny, -(nx * p.re + ny * p.im)));
            out.extend(HalfPlane::new(d.re, d.im, d.re * q.re + d.im * q.im));
            out.extend(HalfPlane::new(-d.re, -d.im, -(d.re * p.re + d.im * p.im)));
            out
        };
        match self.kind {
            PolygonKind::Empty => Vec::new(),
            PolygonKind::Point => line(v[0], cx(T::one(), T::zero()), v[0]),
            PolygonKind::Segment => line(v[0], v[1] - v[0], v[1]),
            PolygonKind::Polygon => {
                let n = v.len();
                (0..n)
                    .filter_map(|i| {
                        let (p, q) = (v[i], v[(i + 1) % n]);
                        let d = q - p;
                        HalfPlane::new(d.im, -d.re, d.im * p.re - d.re * p.im)
                    })
                    .collect()
            }
        }
    }

    /// Intersection with a half-plane. Points up to `slack` outside the
    /// boundary are kept; the result is reclassified with tolerance `eps`.
    pub fn clip(&self, hp: &HalfPlane<T>, slack: T, eps: T) -> Self {
        let v = &self.vertices;
        let inside = |z: Cx<T>| hp.excess(z) <= slack;
        let cut = |a: Cx<T>, b: Cx<T>| {
            let (ea, eb) = (hp.excess(a), hp.excess(b));
            let t = ea / (ea - eb);
            a + (b - a) * t
        };
        let out: Vec<Cx<T>> = match self.kind {
            PolygonKind::Empty => return Self::empty(),
            PolygonKind::Point => {
                return if inside(v[0]) { self.clone() } else { Self::empty() };
            }
            PolygonKind::Segment => match (inside(v[0]), inside(v[1])) {
                (true, true) => return self.clone(),
                (false, false) => Vec::new(),
                (true, false) => vec![v[0], cut(v[0], v[1])],
                (false, true) => vec![cut(v[0], v[1]), v[1]],
            },
            PolygonKind::Polygon => {
                if v.iter().all(|&z| inside(z)) {
                    return self.clone();
                }
                let n = v.len();
                let mut out = Vec::with_capacity(n + 1);
                for i in 0..n {
                    let (a, b) = (v[i], v[(i + 1) % n]);
                    let (ia, ib) = (inside(a), inside(b));
                    if ia {
                        out.push(a);
                    }
                    if ia != ib {
                        out.push(cut(a, b));
                    }
                }
                out
            }
        };
        Self::from_points(&out, eps)
    }

    /// Intersection of two convex regions.
    pub fn intersect(&self, other: &Self, eps: T) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        let slack = eps * T::lit(1e-2);
        let mut acc = self.clone();
        for hp in other.half_planes() {
            acc = acc.clip(&hp, slack, eps);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// Euclidean distance from `z` (zero inside).
    pub fn distance(&self, z: Cx<T>) -> T {
        let v = &self.vertices;
        match self.kind {
            PolygonKind::Empty => T::infinity(),
            PolygonKind::Point => (z - v[0]).norm(),
            PolygonKind::Segment => segment_distance(z, v[0], v[1]),
            PolygonKind::Polygon => {
                let n = v.len();
                if (0..n).all(|i| cross(v[i], v[(i + 1) % n], z) >= T::zero()) {
                    return T::zero();
                }
                (0..n)
                    .map(|i| segment_distance(z, v[i], v[(i + 1) % n]))
                    .fold(T::infinity(), T::min)
            }
        }
    }

    pub fn contains(&self, z: Cx<T>, tol: T) -> bool {
        self.distance(z) <= tol
    }

    /// Image under `z -> a z + b` (`a != 0`).
    pub fn affine(&self, a: Cx<T>, b: Cx<T>) -> Self {
        let mut v: Vec<Cx<T>> = self.vertices.iter().map(|&z| a * z + b).collect();
        if self.kind == PolygonKind::Segment {
            v.sort_by(lex);
        }
        ConvexPolygon {
            kind: self.kind,
            vertices: v,
        }
    }
}

/// Hausdorff distance; infinite when exactly one side is empty.
pub fn hausdorff<T: Real>(p: &ConvexPolygon<T>, q: &ConvexPolygon<T>) -> T {
    match (p.is_empty(), q.is_empty()) {
        (true, true) => return T::zero(),
        (true, false) | (false, true) => return T::infinity(),
        _ => {}
    }
    // The distance to a convex set is convex, so vertices suffice.
    let one_way = |a: &ConvexPolygon<T>, b: &ConvexPolygon<T>| {
        a.vertices().iter().map(|&z| b.distance(z)).fold(T::zero(), T::max)
    };
    one_way(p, q).max(one_way(q, p))
}
