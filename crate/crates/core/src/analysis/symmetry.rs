use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::PointClusters;
use crate::assembly::Patch;
use crate::geom::{Isometry, Point, Polygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SymmetryGroup {
    C(u32),
    D(u32),
}

impl SymmetryGroup {
    pub fn order(self) -> u32 {
        match self {
            SymmetryGroup::C(k) | SymmetryGroup::D(k) => k,
        }
    }
}

impl fmt::Display for SymmetryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetryGroup::C(k) => write!(f, "C_{k}"),
            SymmetryGroup::D(k) => write!(f, "D_{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryResult {
    pub rotation_order: u32,
    /// Axis directions in degrees, in `[0, 180)`, ascending.
    pub mirror_axes: Vec<f64>,
    pub group: SymmetryGroup,
}

/// Lookup of tiles by position: a query polygon matches a tile with the same
/// vertex count whose vertices all lie within `tol` of the query's.
pub struct TileMatcher<'a> {
    tol: f64,
    polys: Vec<&'a Polygon>,
    grid: HashMap<(i64, i64), Vec<usize>>,
}

impl<'a> TileMatcher<'a> {
    pub fn new(polys: impl IntoIterator<Item = &'a Polygon>, tol: f64) -> Self {
        let polys: Vec<&Polygon> = polys.into_iter().collect();
        let mut m = TileMatcher {
            tol,
            polys,
            grid: HashMap::new(),
        };
        for i in 0..m.polys.len() {
            let k = m.key(m.polys[i].vertex_centroid());
            m.grid.entry(k).or_default().push(i);
        }
        m
    }

    fn key(&self, p: Point) -> (i64, i64) {
        let c = 4.0 * self.tol;
        ((p.x / c).floor() as i64, (p.y / c).floor() as i64)
    }

    pub fn find(&self, q: &Polygon) -> Option<usize> {
        let c = q.vertex_centroid();
        let (kx, ky) = self.key(c);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) else {
                    continue;
                };
                for &i in ids {
                    let p = self.polys[i];
                    if p.len() == q.len()
                        && q.vertices()
                            .iter()
                            .all(|&v| p.vertices().iter().any(|&w| w.distance(v) <= self.tol))
                    {
                        return Some(i);
                    }
                }
            }
        }
        None
    }

    /// True iff `f` maps every tile onto some tile.
    pub fn invariant_under(&self, f: &Isometry) -> bool {
        self.polys
            .par_iter()
            .all(|p| self.find(&f.apply_polygon(p)).is_some())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Distinct tile vertices away from the centre, grouped by radius (innermost first).
fn radius_classes(polys: &[Polygon], tol: f64) -> Vec<Vec<Point>> {
    let mut clusters = PointClusters::new(tol);
    for p in polys {
        for &v in p.vertices() {
            clusters.id(v);
        }
    }
    let mut pts: Vec<Point> = clusters
        .points
        .into_iter()
        .filter(|p| p.norm() > tol)
        .collect();
    pts.sort_by(|p, q| p.norm().total_cmp(&q.norm()));
    let mut classes: Vec<Vec<Point>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for p in pts {
        let r = p.norm();
        match classes.last_mut() {
            Some(c) if r - last <= tol => c.push(p),
            _ => classes.push(vec![p]),
        }
        last = r;
    }
    classes
}

fn points_invariant(points: &[Point], f: &Isometry, tol: f64) -> bool {
    points.iter().all(|&p| {
        let q = f.apply_point(p);
        points.iter().any(|&w| w.distance(q) <= tol)
    })
}

/// Rotations and reflections about the patch centre that map the tiling to itself.
pub fn symmetry_detect(patch: &Patch, eps: f64) -> SymmetryResult {
    let to_origin = Isometry::translation(-patch.center);
    let polys: Vec<Polygon> = patch
        .tiles
        .iter()
        .map(|t| to_origin.apply_polygon(&t.polygon))
        .collect();
    let matcher = TileMatcher::new(polys.iter(), eps);
    let classes = radius_classes(&polys, eps);
    let cap = (2 * patch.hexagon_count()).max(1);
    let g = classes.iter().map(Vec::len).fold(0, gcd);

    let mut candidates: Vec<usize> = (1..=g.max(1)).filter(|k| g % k == 0 && *k <= cap).collect();
    candidates.reverse();
    let inner: &[Point] = classes.first().map(Vec::as_slice).unwrap_or(&[]);
    let rotation_order = candidates
        .into_iter()
        .find(|&k| {
            let rot = Isometry::rotation(360.0 / k as f64);
            k == 1 || (points_invariant(inner, &rot, eps) && matcher.invariant_under(&rot))
        })
        .unwrap_or(1) as u32;

    // any mirror maps the innermost class to itself, so it bisects v0 and some partner
    let mut mirror_axes: Vec<f64> = Vec::new();
    if let Some(&v0) = inner.first() {
        let t0 = v0.angle_deg();
        let mut axes: Vec<f64> = inner
            .iter()
            .map(|w| ((t0 + w.angle_deg()) / 2.0).rem_euclid(180.0))
            .collect();
        axes.sort_by(f64::total_cmp);
        axes.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
        for axis in axes {
            let f = Isometry::reflection(axis);
            if points_invariant(inner, &f, eps) && matcher.invariant_under(&f) {
                let axis = if 180.0 - axis <= 1e-9 { 0.0 } else { axis };
                if !mirror_axes.iter().any(|&a| (a - axis).abs() <= 1e-9) {
                    mirror_axes.push(axis);
                }
            }
        }
        mirror_axes.sort_by(f64::total_cmp);
    }
    let group = if mirror_axes.len() == rotation_order as usize {
        SymmetryGroup::D(rotation_order)
    } else {
        SymmetryGroup::C(rotation_order)
    };
    SymmetryResult {
        rotation_order,
        mirror_axes,
        group,
    }
}
