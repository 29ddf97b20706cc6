use std::borrow::Cow;

use rayon::prelude::*;
use serde::Serialize;

use super::{AnalysisError, TileIndex, TileMatcher};
use crate::assembly::{hexagon_level, pentagon_pairs, Level, Origin, Patch};
use crate::geom::{signed_angle_deg, Isometry, Point, Polygon};

/// Spiral successor relation over the hexagon tiles of a patch.
pub struct SpiralGraph<'a> {
    hex: Cow<'a, Patch>,
    index: TileIndex,
    eps: f64,
}

impl<'a> SpiralGraph<'a> {
    /// Accepts either level; pentagon-level patches are merged first, and ids
    /// then refer to the merged hexagons.
    pub fn new(patch: &'a Patch, eps: f64) -> Result<Self, AnalysisError> {
        let hex = match patch.level {
            Level::Hexagon => Cow::Borrowed(patch),
            Level::Pentagon => Cow::Owned(hexagon_level(patch)?),
        };
        let index = TileIndex::new(hex.tiles.iter().map(|t| &t.polygon));
        Ok(SpiralGraph { hex, index, eps })
    }

    pub fn hexagons(&self) -> &Patch {
        &self.hex
    }

    /// The hexagon at the right endpoint of `id`'s divider, seen from the centre.
    pub fn next(&self, id: usize) -> Result<usize, AnalysisError> {
        let tile = self
            .hex
            .tiles
            .get(id)
            .ok_or(AnalysisError::UnknownTile(id))?;
        let divider = tile
            .divider
            .ok_or_else(|| AnalysisError::NotApplicable(format!("hexagon {id} has no divider")))?;
        let o = self.hex.center;
        let ray = tile.polygon.centroid() - o;
        let side = |p: Point| f64::atan2(ray.cross(p - o), ray.dot(p - o));
        let p = if side(divider.a) <= side(divider.b) {
            divider.a
        } else {
            divider.b
        };
        self.index
            .near_point(p, self.eps)
            .into_iter()
            .filter(|&j| j != id && self.hex.tiles[j].polygon.boundary_distance(p) <= self.eps)
            .min_by(|&x, &y| {
                let ax = signed_angle_deg(ray, self.hex.tiles[x].polygon.centroid() - o);
                let ay = signed_angle_deg(ray, self.hex.tiles[y].polygon.centroid() - o);
                ax.total_cmp(&ay)
            })
            .ok_or(AnalysisError::OutermostRing(id))
    }

    /// Successor of every hexagon, `None` where the walk leaves the patch.
    pub fn successors(&self) -> Result<Vec<Option<usize>>, AnalysisError> {
        (0..self.hex.tiles.len())
            .into_par_iter()
            .map(|i| match self.next(i) {
                Ok(j) => Ok(Some(j)),
                Err(AnalysisError::OutermostRing(_)) => Ok(None),
                Err(e) => Err(e),
            })
            .collect()
    }
}

pub fn spiral_next(patch: &Patch, hex_id: usize) -> Result<usize, AnalysisError> {
    SpiralGraph::new(patch, crate::geom::MATCH_EPS)?.next(hex_id)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArmLabeling {
    pub n: usize,
    /// Arm index of each hexagon-level tile.
    pub assignment: Vec<usize>,
}

impl ArmLabeling {
    pub fn arm_of(&self, hex_id: usize) -> Option<usize> {
        self.assignment.get(hex_id).copied()
    }

    pub fn arms(&self) -> Vec<Vec<usize>> {
        let mut arms = vec![Vec::new(); self.n];
        for (i, &a) in self.assignment.iter().enumerate() {
            arms[a].push(i);
        }
        arms
    }

    /// Checks arm count, per-ring sizes, connectivity and rotational congruence
    /// against the hexagon-level patch `hex`.
    pub fn check(&self, hex: &Patch, eps: f64) -> Result<(), AnalysisError> {
        let fail = |msg: String| Err(AnalysisError::Structure(msg));
        if self.assignment.len() != hex.tiles.len() {
            return fail(format!(
                "{} labels for {} hexagons",
                self.assignment.len(),
                hex.tiles.len()
            ));
        }
        let arms = self.arms();
        if arms.iter().any(Vec::is_empty) || arms.len() != hex.n as usize {
            return fail(format!("expected {} non-empty arms", hex.n));
        }
        for (k, arm) in arms.iter().enumerate() {
            for m in 1..=hex.rings {
                let size = arm.iter().filter(|&&i| hex.tiles[i].ring == m).count();
                if size != 2 * m {
                    return fail(format!("arm {k} has {size} hexagons in ring {m}"));
                }
            }
            let polys: Vec<&Polygon> = arm.iter().map(|&i| &hex.tiles[i].polygon).collect();
            if !edge_connected(&polys, eps) {
                return fail(format!("arm {k} is not edge-connected"));
            }
        }
        let base: Vec<&Polygon> = arms[0].iter().map(|&i| &hex.tiles[i].polygon).collect();
        for (k, arm) in arms.iter().enumerate().skip(1) {
            let rot = Isometry::rotation_about(hex.center, k as f64 * 360.0 / self.n as f64);
            let matcher = TileMatcher::new(arm.iter().map(|&i| &hex.tiles[i].polygon), eps);
            if arm.len() != base.len()
                || base
                    .iter()
                    .any(|p| matcher.find(&rot.apply_polygon(p)).is_none())
            {
                return fail(format!(
                    "arm {k} is not arm 0 rotated by {k}·360°/{}",
                    self.n
                ));
            }
        }
        Ok(())
    }
}

fn shares_edge(p: &Polygon, q: &Polygon, eps: f64) -> bool {
    p.edges().any(|e| {
        q.edges().any(|f| {
            if e.vector().dot(f.vector()) >= 0.0
                || e.line_distance(f.a) > eps
                || e.line_distance(f.b) > eps
            {
                return false;
            }
            let (u, v) = (e.project(f.b), e.project(f.a));
            v.min(e.length()) - u.max(0.0) > eps
        })
    })
}

fn edge_connected(polys: &[&Polygon], eps: f64) -> bool {
    if polys.is_empty() {
        return true;
    }
    let index = TileIndex::new(polys.iter().copied());
    let mut seen = vec![false; polys.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in index.neighbors(i, eps) {
            if !seen[j] && shares_edge(polys[i], polys[j], eps) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Partitions the hexagons into spiral arms by walking outward from the ring-1
/// hexagons that no other ring-1 hexagon leads to.
pub fn spiral_arms(patch: &Patch) -> Result<ArmLabeling, AnalysisError> {
    if let Origin::Houses(kind) = patch.origin {
        return Err(AnalysisError::NotApplicable(format!(
            "houses patch {kind:?} has no spiral arms"
        )));
    }
    if patch.n < 2 {
        return Err(AnalysisError::NotApplicable(format!(
            "order {} has no spiral arms",
            patch.n
        )));
    }
    let eps = crate::geom::MATCH_EPS;
    let graph = SpiralGraph::new(patch, eps)?;
    let hex = graph.hexagons();
    let next = graph.successors()?;
    let count = hex.tiles.len();
    let ring1: Vec<usize> = (0..count).filter(|&i| hex.tiles[i].ring == 1).collect();
    let mut seeds: Vec<usize> = ring1
        .iter()
        .copied()
        .filter(|&i| !ring1.iter().any(|&j| next[j] == Some(i)))
        .collect();
    let n = patch.n as usize;
    if seeds.len() != n {
        return Err(AnalysisError::Structure(format!(
            "{} spiral seeds in ring 1, expected {n}",
            seeds.len()
        )));
    }
    let angle = |i: usize| (hex.tiles[i].polygon.centroid() - hex.center).angle_deg();
    let first = *seeds
        .iter()
        .min_by_key(|&&i| (hex.tiles[i].sector, i))
        .unwrap();
    let a0 = angle(first);
    seeds.sort_by(|&x, &y| {
        let dx = (angle(x) - a0).rem_euclid(360.0);
        let dy = (angle(y) - a0).rem_euclid(360.0);
        (x != first).cmp(&(y != first)).then(dx.total_cmp(&dy))
    });

    let mut arm: Vec<Option<usize>> = vec![None; count];
    for (k, &s) in seeds.iter().enumerate() {
        let mut cur = Some(s);
        while let Some(i) = cur {
            if arm[i].is_some() {
                break;
            }
            arm[i] = Some(k);
            cur = next[i];
        }
    }
    let mut pred: Vec<Option<usize>> = vec![None; count];
    for (i, &j) in next.iter().enumerate() {
        if let Some(j) = j {
            pred[j].get_or_insert(i);
        }
    }
    loop {
        let mut changed = false;
        for i in 0..count {
            if arm[i].is_none() {
                if let Some(a) = pred[i]
                    .and_then(|p| arm[p])
                    .or_else(|| next[i].and_then(|s| arm[s]))
                {
                    arm[i] = Some(a);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let assignment = arm
        .into_iter()
        .enumerate()
        .map(|(i, a)| {
            a.ok_or_else(|| AnalysisError::Structure(format!("hexagon {i} joins no arm")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let labeling = ArmLabeling { n, assignment };
    labeling.check(hex, eps)?;
    Ok(labeling)
}

/// Copies arm labels onto the tiles of `patch`, at either level.
pub fn apply_arms(patch: &Patch, labeling: &ArmLabeling) -> Result<Patch, AnalysisError> {
    let mut out = patch.clone();
    match patch.level {
        Level::Hexagon => {
            for (i, t) in out.tiles.iter_mut().enumerate() {
                t.arm = labeling.arm_of(i);
            }
        }
        Level::Pentagon => {
            for (k, (i, j)) in pentagon_pairs(patch)?.into_iter().enumerate() {
                let a = labeling.arm_of(k);
                out.tiles[i].arm = a;
                out.tiles[j].arm = a;
            }
        }
    }
    Ok(out)
}
