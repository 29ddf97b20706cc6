//! Planar primitives, rigid motions and tolerance-aware predicates.
//!
//! All lengths are in canonical units where the pentagon side `b` has length 1.
//! Angles at public boundaries are degrees.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Residual tolerance for freshly constructed geometry.
pub const CONSTRUCTION_EPS: f64 = 1e-9;
/// Matching tolerance after long transform chains.
pub const MATCH_EPS: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// Displacements share the point representation.
pub type Vector = Point;

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Unit vector at `deg` degrees from the positive x-axis, scaled by `r`.
    pub fn polar(r: f64, deg: f64) -> Self {
        let (s, c) = deg.to_radians().sin_cos();
        Point::new(r * c, r * s)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }

    /// Direction angle in degrees, in (-180, 180].
    pub fn angle_deg(self) -> f64 {
        self.y.atan2(self.x).to_degrees()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn approx_eq(self, o: Point, eps: f64) -> bool {
        self.distance(o) <= eps
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point {
    fn add_assign(&mut self, o: Point) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6})", self.x, self.y)
    }
}

/// Signed angle in degrees from `from` to `to`, in (-180, 180].
pub fn signed_angle_deg(from: Vector, to: Vector) -> f64 {
    from.cross(to).atan2(from.dot(to)).to_degrees()
}

/// Wraps an angle in degrees into [0, 360).
pub fn wrap_deg(a: f64) -> f64 {
    let w = a.rem_euclid(360.0);
    if w >= 360.0 {
        0.0
    } else {
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn vector(&self) -> Vector {
        self.b - self.a
    }

    pub fn length(&self) -> f64 {
        self.vector().norm()
    }

    pub fn midpoint(&self) -> Point {
        self.a.lerp(self.b, 0.5)
    }

    pub fn reversed(&self) -> Segment {
        Segment::new(self.b, self.a)
    }

    /// Parameter of the orthogonal projection of `p`, with 0 at `a` and `len` at `b`.
    pub fn project(&self, p: Point) -> f64 {
        let d = self.vector();
        (p - self.a).dot(d) / d.norm()
    }

    /// Distance from `p` to the infinite carrier line.
    pub fn line_distance(&self, p: Point) -> f64 {
        let d = self.vector();
        (p - self.a).cross(d).abs() / d.norm()
    }

    pub fn distance_to(&self, p: Point) -> f64 {
        let d = self.vector();
        let len2 = d.norm_sq();
        if len2 == 0.0 {
            return p.distance(self.a);
        }
        let t = ((p - self.a).dot(d) / len2).clamp(0.0, 1.0);
        p.distance(self.a + d * t)
    }

    pub fn transformed(&self, f: &Isometry) -> Segment {
        Segment::new(f.apply_point(self.a), f.apply_point(self.b))
    }
}

/// Orthogonal 2x2 linear part plus translation: `x -> linear * x + translation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    pub linear: [[f64; 2]; 2],
    pub translation: Vector,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        linear: [[1.0, 0.0], [0.0, 1.0]],
        translation: Point::ORIGIN,
    };

    /// Counter-clockwise rotation about the origin.
    pub fn rotation(deg: f64) -> Self {
        let (s, c) = deg.to_radians().sin_cos();
        Isometry {
            linear: [[c, -s], [s, c]],
            translation: Point::ORIGIN,
        }
    }

    pub fn rotation_about(center: Point, deg: f64) -> Self {
        Isometry::translation(center)
            .compose(&Isometry::rotation(deg))
            .compose(&Isometry::translation(-center))
    }

    /// Reflection across the line through the origin at `axis_deg`.
    pub fn reflection(axis_deg: f64) -> Self {
        let (s, c) = (2.0 * axis_deg).to_radians().sin_cos();
        Isometry {
            linear: [[c, s], [s, -c]],
            translation: Point::ORIGIN,
        }
    }

    /// Reflection across the line through `p` with direction `dir`.
    pub fn reflection_across(p: Point, dir: Vector) -> Self {
        Isometry::translation(p)
            .compose(&Isometry::reflection(dir.angle_deg()))
            .compose(&Isometry::translation(-p))
    }

    pub fn translation(v: Vector) -> Self {
        Isometry {
            linear: Isometry::IDENTITY.linear,
            translation: v,
        }
    }

    /// `self ∘ g`: applies `g` first.
    pub fn compose(&self, g: &Isometry) -> Isometry {
        let m = &self.linear;
        let n = &g.linear;
        let linear = [
            [
                m[0][0] * n[0][0] + m[0][1] * n[1][0],
                m[0][0] * n[0][1] + m[0][1] * n[1][1],
            ],
            [
                m[1][0] * n[0][0] + m[1][1] * n[1][0],
                m[1][0] * n[0][1] + m[1][1] * n[1][1],
            ],
        ];
        Isometry {
            linear,
            translation: self.apply_point(g.translation),
        }
    }

    pub fn inverse(&self) -> Isometry {
        let m = &self.linear;
        // orthogonal: inverse is the transpose
        let linear = [[m[0][0], m[1][0]], [m[0][1], m[1][1]]];
        let t = self.translation;
        let inv_t = Point::new(
            -(linear[0][0] * t.x + linear[0][1] * t.y),
            -(linear[1][0] * t.x + linear[1][1] * t.y),
        );
        Isometry {
            linear,
            translation: inv_t,
        }
    }

    pub fn apply_vector(&self, v: Vector) -> Vector {
        let m = &self.linear;
        Point::new(m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y)
    }

    pub fn apply_point(&self, p: Point) -> Point {
        self.apply_vector(p) + self.translation
    }

    /// Maps every vertex; a reflecting isometry reverses the vertex order so the
    /// result stays counter-clockwise.
    pub fn apply_polygon(&self, p: &Polygon) -> Polygon {
        let mut vertices: Vec<Point> = p.vertices.iter().map(|&v| self.apply_point(v)).collect();
        if self.is_reflection() {
            vertices.reverse();
        }
        Polygon { vertices }
    }

    pub fn det(&self) -> f64 {
        let m = &self.linear;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn is_reflection(&self) -> bool {
        self.det() < 0.0
    }

    /// Columns unit length and perpendicular, determinant ±1, all within `eps`.
    pub fn is_orthogonal(&self, eps: f64) -> bool {
        let m = &self.linear;
        let c0 = Point::new(m[0][0], m[1][0]);
        let c1 = Point::new(m[0][1], m[1][1]);
        (c0.norm() - 1.0).abs() <= eps
            && (c1.norm() - 1.0).abs() <= eps
            && c0.dot(c1).abs() <= eps
            && (self.det().abs() - 1.0).abs() <= eps
    }

    pub fn approx_eq(&self, o: &Isometry, eps: f64) -> bool {
        (0..2).all(|i| (0..2).all(|j| (self.linear[i][j] - o.linear[i][j]).abs() <= eps))
            && (self.translation.x - o.translation.x).abs() <= eps
            && (self.translation.y - o.translation.y).abs() <= eps
    }
}

/// `f ∘ g`.
pub fn compose(f: &Isometry, g: &Isometry) -> Isometry {
    f.compose(g)
}

pub fn apply(f: &Isometry, p: &Polygon) -> Polygon {
    f.apply_polygon(p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn of(points: &[Point]) -> BBox {
        let mut min = Point::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        BBox { min, max }
    }

    pub fn union(&self, o: &BBox) -> BBox {
        BBox {
            min: Point::new(self.min.x.min(o.min.x), self.min.y.min(o.min.y)),
            max: Point::new(self.max.x.max(o.max.x), self.max.y.max(o.max.y)),
        }
    }

    pub fn overlaps(&self, o: &BBox, pad: f64) -> bool {
        self.min.x <= o.max.x + pad
            && o.min.x <= self.max.x + pad
            && self.min.y <= o.max.y + pad
            && o.min.y <= self.max.y + pad
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon vertex {0} is not finite")]
    NonFinite(usize),
    #[error("polygon has zero area")]
    Degenerate,
    #[error("polygon is self-intersecting")]
    NotSimple,
}

/// Simple polygon with counter-clockwise vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Builds a polygon, reversing the order if it was given clockwise.
    pub fn new(mut vertices: Vec<Point>) -> Polygon {
        if shoelace(&vertices) < 0.0 {
            vertices.reverse();
        }
        Polygon { vertices }
    }

    /// Like [`Polygon::new`] but rejects degenerate, non-finite or self-intersecting input.
    pub fn try_new(vertices: Vec<Point>) -> Result<Polygon, PolygonError> {
        if vertices.len() < 3 {
            return Err(PolygonError::TooFewVertices(vertices.len()));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(PolygonError::NonFinite(i));
        }
        let poly = Polygon::new(vertices);
        if poly.area() <= 0.0 {
            return Err(PolygonError::Degenerate);
        }
        if !poly.is_simple() {
            return Err(PolygonError::NotSimple);
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> Segment {
        Segment::new(self.vertex(i), self.vertex(i + 1))
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn signed_area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|e| e.length()).sum()
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point {
        let n = self.len();
        let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let w = p.cross(q);
            a2 += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        Point::new(cx / (3.0 * a2), cy / (3.0 * a2))
    }

    pub fn vertex_centroid(&self) -> Point {
        let s = self.vertices.iter().fold(Point::ORIGIN, |acc, &p| acc + p);
        s * (1.0 / self.len() as f64)
    }

    /// Interior angle at every vertex in degrees; reflex corners exceed 180.
    pub fn interior_angles_deg(&self) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let prev = self.vertex(i + n - 1);
                let cur = self.vertices[i];
                let next = self.vertex(i + 1);
                180.0 - signed_angle_deg(cur - prev, next - cur)
            })
            .collect()
    }

    pub fn bbox(&self) -> BBox {
        BBox::of(&self.vertices)
    }

    pub fn is_convex(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            let a = self.vertex(i);
            let b = self.vertex(i + 1);
            let c = self.vertex(i + 2);
            (b - a).cross(c - b) >= -1e-12
        })
    }

    pub fn is_simple(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            let e = self.edge(i);
            for j in (i + 1)..n {
                // adjacent edges share an endpoint by construction
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                if segments_cross(&e, &self.edge(j)) {
                    return false;
                }
            }
        }
        true
    }

    /// Distance from `p` to the closest point on the boundary.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.edges()
            .map(|e| e.distance_to(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Even-odd point containment; boundary points may go either way.
    pub fn contains(&self, p: Point) -> bool {
        let n = self.len();
        let mut inside = false;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn translated(&self, v: Vector) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&p| p + v).collect(),
        }
    }

    /// Splits the polygon along a chord whose endpoints lie on two distinct edges
    /// (or vertices). Returns the piece to the left of `chord.a -> chord.b` first.
    pub fn split_along(&self, chord: &Segment, eps: f64) -> Option<[Polygon; 2]> {
        let n = self.len();
        let locate = |p: Point| -> Option<(usize, bool)> {
            for i in 0..n {
                if self.vertices[i].approx_eq(p, eps) {
                    return Some((i, true));
                }
            }
            (0..n).find_map(|i| (self.edge(i).distance_to(p) <= eps).then_some((i, false)))
        };
        let (ia, va) = locate(chord.a)?;
        let (ib, vb) = locate(chord.b)?;
        // ring of vertices with chord endpoints inserted
        let mut ring: Vec<Point> = Vec::with_capacity(n + 2);
        let (mut pos_a, mut pos_b) = (usize::MAX, usize::MAX);
        for i in 0..n {
            if va && i == ia {
                pos_a = ring.len();
            }
            if vb && i == ib {
                pos_b = ring.len();
            }
            ring.push(self.vertices[i]);
            if !va && i == ia {
                pos_a = ring.len();
                ring.push(chord.a);
            }
            if !vb && i == ib {
                if !va && ia == ib {
                    return None;
                }
                pos_b = ring.len();
                ring.push(chord.b);
            }
        }
        if pos_a == pos_b {
            return None;
        }
        let m = ring.len();
        let walk = |from: usize, to: usize| -> Vec<Point> {
            let mut out = Vec::new();
            let mut k = from;
            loop {
                out.push(ring[k]);
                if k == to {
                    break;
                }
                k = (k + 1) % m;
            }
            out
        };
        // from b forward to a keeps the region left of a -> b
        let left = walk(pos_b, pos_a);
        let right = walk(pos_a, pos_b);
        if left.len() < 3 || right.len() < 3 {
            return None;
        }
        Some([Polygon::new(left), Polygon::new(right)])
    }
}

fn shoelace(vs: &[Point]) -> f64 {
    let n = vs.len();
    let mut s = 0.0;
    for i in 0..n {
        s += vs[i].cross(vs[(i + 1) % n]);
    }
    0.5 * s
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

/// Proper or touching intersection of two closed segments.
fn segments_cross(p: &Segment, q: &Segment) -> bool {
    let d1 = orient(q.a, q.b, p.a);
    let d2 = orient(q.a, q.b, p.b);
    let d3 = orient(p.a, p.b, q.a);
    let d4 = orient(p.a, p.b, q.b);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |s: &Segment, p: Point, d: f64| d == 0.0 && s.distance_to(p) == 0.0;
    on(q, p.a, d1) || on(q, p.b, d2) || on(p, q.a, d3) || on(p, q.b, d4)
}

/// Ear-clipping triangulation of a simple counter-clockwise polygon.
fn triangulate(poly: &Polygon) -> Vec<[Point; 3]> {
    let mut idx: Vec<usize> = (0..poly.len()).collect();
    let v = poly.vertices();
    let mut out = Vec::new();
    let mut guard = 0;
    while idx.len() > 3 && guard < 10 * v.len() * v.len() {
        guard += 1;
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let (a, b, c) = (v[idx[(k + m - 1) % m]], v[idx[k]], v[idx[(k + 1) % m]]);
            if orient(a, b, c) <= 0.0 {
                continue;
            }
            let blocked = idx.iter().any(|&j| {
                let p = v[j];
                p != a
                    && p != b
                    && p != c
                    && orient(a, b, p) >= 0.0
                    && orient(b, c, p) >= 0.0
                    && orient(c, a, p) >= 0.0
            });
            if !blocked {
                out.push([a, b, c]);
                idx.remove(k);
                clipped = true;
                break;
            }
        }
        if !clipped {
            break;
        }
    }
    if idx.len() == 3 {
        out.push([v[idx[0]], v[idx[1]], v[idx[2]]]);
    }
    out
}

/// Smallest projection overlap over the edge normals of both convex polygons.
/// Positive values mean the polygons interpenetrate by at least that depth.
fn convex_overlap_depth(p: &[Point], q: &[Point]) -> f64 {
    let mut depth = f64::INFINITY;
    for poly in [p, q] {
        let n = poly.len();
        for i in 0..n {
            let e = poly[(i + 1) % n] - poly[i];
            let len = e.norm();
            if len == 0.0 {
                continue;
            }
            let axis = Point::new(-e.y / len, e.x / len);
            let (pmin, pmax) = project_range(p, axis);
            let (qmin, qmax) = project_range(q, axis);
            depth = depth.min(pmax.min(qmax) - pmin.max(qmin));
        }
    }
    depth
}

fn project_range(pts: &[Point], axis: Vector) -> (f64, f64) {
    pts.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            let d = p.dot(axis);
            (lo.min(d), hi.max(d))
        })
}

/// True iff the open interiors of `p` and `q`, each shrunk by `eps`, intersect.
/// Shared boundary alone never counts.
pub fn polygons_interiors_intersect(p: &Polygon, q: &Polygon, eps: f64) -> bool {
    if !p.bbox().overlaps(&q.bbox(), -2.0 * eps) {
        return false;
    }
    if p.is_convex() && q.is_convex() {
        return convex_overlap_depth(p.vertices(), q.vertices()) > 2.0 * eps;
    }
    let tp = triangulate(p);
    let tq = triangulate(q);
    tp.iter()
        .any(|a| tq.iter().any(|b| convex_overlap_depth(a, b) > 2.0 * eps))
}

/// Collinear intervals of `pieces` projected onto `target`, as `[t0, t1]` in arc length.
fn collinear_intervals(target: &Segment, pieces: &[Segment], eps: f64) -> Vec<(f64, f64)> {
    let len = target.length();
    pieces
        .iter()
        .filter(|s| target.line_distance(s.a) <= eps && target.line_distance(s.b) <= eps)
        .filter_map(|s| {
            let (t0, t1) = {
                let (u, v) = (target.project(s.a), target.project(s.b));
                (u.min(v).max(0.0), u.max(v).min(len))
            };
            (t1 - t0 > eps).then_some((t0, t1))
        })
        .collect()
}

/// Sub-intervals of `[0, len]` not covered by `intervals`, ignoring gaps up to `eps`.
pub(crate) fn uncovered(len: f64, mut intervals: Vec<(f64, f64)>, eps: f64) -> Vec<(f64, f64)> {
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut gaps = Vec::new();
    let mut reach = 0.0;
    for (t0, t1) in intervals {
        if t0 - reach > eps {
            gaps.push((reach, t0));
        }
        reach = f64::max(reach, t1);
    }
    if len - reach > eps {
        gaps.push((reach, len));
    }
    gaps
}

/// True iff the pieces collinear with `target` cover it up to gaps of at most `eps`.
pub fn segment_coverage(target: &Segment, pieces: &[Segment], eps: f64) -> bool {
    let iv = collinear_intervals(target, pieces, eps);
    uncovered(target.length(), iv, eps).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x: f64, y: f64, w: f64, h: f64) -> Polygon {
        Polygon::new(vec![
            Point::new(x, y),
            Point::new(x + w, y),
            Point::new(x + w, y + h),
            Point::new(x, y + h),
        ])
    }

    fn same_point_set(p: &Polygon, q: &[Point], eps: f64) -> bool {
        p.len() == q.len()
            && q.iter()
                .all(|a| p.vertices().iter().any(|b| a.approx_eq(*b, eps)))
    }

    #[test]
    fn compose_identities() {
        let id = Isometry::IDENTITY;
        assert!(compose(&id, &id).approx_eq(&id, 1e-12));
        let r = Isometry::rotation(180.0);
        assert!(compose(&r, &r).approx_eq(&id, 1e-12));
        let m = Isometry::reflection(0.0);
        assert!(compose(&m, &m).approx_eq(&id, 1e-12));
    }

    #[test]
    fn compose_applies_right_operand_first() {
        let t = Isometry::translation(Point::new(1.0, 0.0));
        let r = Isometry::rotation(90.0);
        let p = r.compose(&t).apply_point(Point::ORIGIN);
        assert!(p.approx_eq(Point::new(0.0, 1.0), 1e-12));
    }

    #[test]
    fn apply_identity_and_rotation_on_square() {
        let sq = square(-0.5, -0.5, 1.0, 1.0);
        assert_eq!(apply(&Isometry::IDENTITY, &sq), sq);
        let rotated = apply(&Isometry::rotation(90.0), &sq);
        assert!(same_point_set(&rotated, sq.vertices(), 1e-12));
    }

    #[test]
    fn apply_reflection_keeps_ccw() {
        let tri = Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ]);
        let m = apply(&Isometry::reflection(90.0), &tri);
        assert!(m.signed_area() > 0.0);
        assert!(same_point_set(
            &m,
            &[
                Point::new(0.0, 0.0),
                Point::new(-1.0, 0.0),
                Point::new(0.0, 1.0)
            ],
            1e-12
        ));
    }

    #[test]
    fn inverse_round_trips() {
        let f = Isometry::rotation_about(Point::new(2.0, -1.0), 37.0)
            .compose(&Isometry::reflection(12.0));
        assert!(f
            .compose(&f.inverse())
            .approx_eq(&Isometry::IDENTITY, 1e-12));
        assert!(f.is_orthogonal(1e-12));
    }

    #[test]
    fn interiors_intersect_cases() {
        let a = square(0.0, 0.0, 1.0, 1.0);
        let b = square(1.0, 0.0, 1.0, 1.0);
        assert!(!polygons_interiors_intersect(&a, &b, 1e-9));
        assert!(polygons_interiors_intersect(&a, &a, 1e-9));
        let c = square(0.5, 0.0, 1.0, 1.0);
        assert!(polygons_interiors_intersect(&a, &c, 1e-9));
        // corner contact only
        let d = square(1.0, 1.0, 1.0, 1.0);
        assert!(!polygons_interiors_intersect(&a, &d, 1e-9));
    }

    #[test]
    fn interiors_intersect_nonconvex() {
        // L-shape and a square sitting in its notch
        let l = Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 2.0),
            Point::new(0.0, 2.0),
        ]);
        let notch = square(1.0, 1.0, 1.0, 1.0);
        assert!(!polygons_interiors_intersect(&l, &notch, 1e-9));
        let poke = square(0.9, 0.9, 1.0, 1.0);
        assert!(polygons_interiors_intersect(&l, &poke, 1e-9));
    }

    #[test]
    fn coverage_cases() {
        let eps = 1e-9;
        let t = Segment::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0));
        let split = [
            Segment::new(Point::new(0.0, 0.0), Point::new(0.4, 0.0)),
            Segment::new(Point::new(0.4, 0.0), Point::new(1.0, 0.0)),
        ];
        assert!(segment_coverage(&t, &split, eps));
        assert!(!segment_coverage(&t, &split[..1], eps));
        let off = [Segment::new(
            Point::new(0.0, 2.0 * eps),
            Point::new(1.0, 2.0 * eps),
        )];
        assert!(!segment_coverage(&t, &off, eps));
        let reversed = [Segment::new(Point::new(1.0, 0.0), Point::new(0.0, 0.0))];
        assert!(segment_coverage(&t, &reversed, eps));
    }

    #[test]
    fn split_along_chord() {
        let sq = square(0.0, 0.0, 2.0, 1.0);
        let chord = Segment::new(Point::new(1.0, 0.0), Point::new(1.0, 1.0));
        let [l, r] = sq.split_along(&chord, 1e-12).unwrap();
        assert!((l.area() - 1.0).abs() < 1e-12);
        assert!((r.area() - 1.0).abs() < 1e-12);
        assert!(l.centroid().x < 1.0);
        assert!(r.centroid().x > 1.0);
    }

    #[test]
    fn angles_of_square() {
        for a in square(0.0, 0.0, 1.0, 1.0).interior_angles_deg() {
            assert!((a - 90.0).abs() < 1e-12);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn iso() -> impl Strategy<Value = Isometry> {
            (-360.0..360.0f64, -5.0..5.0f64, -5.0..5.0f64, any::<bool>()).prop_map(
                |(deg, x, y, refl)| {
                    let base = if refl {
                        Isometry::reflection(deg)
                    } else {
                        Isometry::rotation(deg)
                    };
                    Isometry::translation(Point::new(x, y)).compose(&base)
                },
            )
        }

        proptest! {
            #[test]
            fn compose_is_associative(f in iso(), g in iso(), h in iso()) {
                let l = f.compose(&g).compose(&h);
                let r = f.compose(&g.compose(&h));
                prop_assert!(l.approx_eq(&r, 1e-12));
                prop_assert!(l.is_orthogonal(1e-12));
            }

            #[test]
            fn apply_respects_composition(f in iso(), g in iso()) {
                let tri = Polygon::new(vec![
                    Point::new(0.0, 0.0), Point::new(1.3, 0.2), Point::new(0.4, 0.9),
                ]);
                let a = apply(&f.compose(&g), &tri);
                let b = apply(&f, &apply(&g, &tri));
                for (p, q) in a.vertices().iter().zip(b.vertices()) {
                    prop_assert!(p.approx_eq(*q, 1e-12));
                }
                prop_assert!(a.signed_area() > 0.0);
            }

            #[test]
            fn interior_test_is_symmetric(
                x in -2.0..2.0f64, y in -2.0..2.0f64, w in 0.1..2.0f64, h in 0.1..2.0f64
            ) {
                let a = square(0.0, 0.0, 1.0, 1.0);
                let b = square(x, y, w, h);
                prop_assert_eq!(
                    polygons_interiors_intersect(&a, &b, 1e-9),
                    polygons_interiors_intersect(&b, &a, 1e-9)
                );
            }
        }
    }
}
