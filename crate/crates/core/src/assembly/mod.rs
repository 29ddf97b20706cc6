//! Building the tiling: pentagon pairs glued into hexagons, sectors of growing
//! rows, reflected sectors mated into wedges and `n` rotated wedges around the origin.
//!
//! The hexagon vertices are labelled `V0..V5` with `V1` the rotation corner
//! (normally `B`). Sides `s1..s6` run `V0->V1, V1->V2, ...`; within a row
//! hexagons repeat by `u = s1 + s2` and rows step by `v = s2 + s3`.

mod houses;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geom::{Isometry, Point, Polygon, Segment, Vector, CONSTRUCTION_EPS, MATCH_EPS};
use crate::pentagon::{
    derive_pentagon, realize, Corner, FeasibleParams, PentagonError, PentagonSpec,
};

pub use houses::{house_pentagon, houses_patch, HousesKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Pentagon,
    Hexagon,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Pentagon => "pentagon",
            Level::Hexagon => "hexagon",
        })
    }
}

/// Schoenflies family: rotations only, or rotations plus mirrors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryKind {
    C,
    D,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AssemblyError {
    #[error(transparent)]
    Pentagon(#[from] PentagonError),
    #[error("glued hexagon is degenerate: interior angle {angle}° at vertex {vertex}")]
    DegenerateHexagon { vertex: usize, angle: f64 },
    #[error("pentagon has no corner dividing 360°")]
    NoRotationCorner,
    #[error("sector borders fail to mate: offset {offset:e} at border vertex {at}")]
    MatingMismatch { at: usize, offset: f64 },
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("pentagon tile {0} has no partner sharing its divider")]
    UnpairedPentagon(usize),
}

/// Centrally symmetric equilateral hexagon made of two congruent pentagons.
#[derive(Debug, Clone, PartialEq)]
pub struct HexagonSpec {
    /// Counter-clockwise, starting at `V0` (so `outline[1]` is the rotation corner).
    pub outline: Polygon,
    /// The shared pentagon edge `e`.
    pub divider: Segment,
    pub halves: [Polygon; 2],
}

impl HexagonSpec {
    pub fn vertex(&self, i: usize) -> Point {
        self.outline.vertex(i)
    }

    /// Directed side `s_i`, `i` in `1..=6`.
    pub fn side(&self, i: usize) -> Vector {
        self.vertex(i) - self.vertex(i - 1)
    }

    pub fn row_step(&self) -> Vector {
        self.side(1) + self.side(2)
    }

    pub fn ring_step(&self) -> Vector {
        self.side(2) + self.side(3)
    }

    pub fn apex_angle(&self) -> f64 {
        self.outline.interior_angles_deg()[1]
    }
}

/// A placed tile with its construction provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Tile {
    pub polygon: Polygon,
    pub level: Level,
    pub ring: usize,
    pub sector: usize,
    /// True for tiles in the mirrored, gap-filling sectors.
    pub reflected: bool,
    pub arm: Option<usize>,
    /// Dividing segment of a hexagon tile, when known.
    pub divider: Option<Segment>,
}

impl Tile {
    fn transformed(&self, f: &Isometry) -> Tile {
        Tile {
            polygon: f.apply_polygon(&self.polygon),
            divider: self.divider.map(|d| d.transformed(f)),
            ..self.clone()
        }
    }
}

/// How a patch came about; determines which census applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Rotational,
    Houses(HousesKind),
    Custom,
}

/// A finite assembled tiling centred at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Patch {
    pub n: u32,
    pub symmetry_declared: SymmetryKind,
    pub rings: usize,
    pub pentagon: PentagonSpec,
    pub tiles: Vec<Tile>,
    pub center: Point,
    pub level: Level,
    pub origin: Origin,
}

impl Patch {
    pub fn hexagon_count(&self) -> usize {
        match self.level {
            Level::Hexagon => self.tiles.len(),
            Level::Pentagon => self.tiles.len() / 2,
        }
    }

    /// Hexagon-level tiles expected in ring `m`, for rotational constructions.
    pub fn expected_ring_census(&self, m: usize) -> Option<usize> {
        (self.origin == Origin::Rotational).then(|| 2 * self.n as usize * m)
    }

    /// Applies `f` to every tile.
    pub fn transformed(&self, f: &Isometry) -> Patch {
        Patch {
            tiles: self.tiles.iter().map(|t| t.transformed(f)).collect(),
            center: f.apply_point(self.center),
            ..self.clone()
        }
    }

    /// Tiles of rings `1..=m` only.
    pub fn truncated(&self, m: usize) -> Patch {
        Patch {
            rings: m.min(self.rings),
            tiles: self.tiles.iter().filter(|t| t.ring <= m).cloned().collect(),
            ..self.clone()
        }
    }

    pub fn parameters(&self) -> FeasibleParams {
        FeasibleParams::new(
            self.n,
            self.pentagon.angle(Corner::C),
            self.pentagon.angle(Corner::D),
        )
    }
}

/// Copies `p`, rotates the copy 180° about the midpoint of edge `e` and merges both
/// into a hexagon. The `D`/`E` corners become straight points and drop out.
pub fn glue_hexagon(p: &PentagonSpec) -> Result<HexagonSpec, AssemblyError> {
    let first = realize(p, &Isometry::IDENTITY);
    let v = first.vertices();
    let (a, b, c, d, e) = (v[0], v[1], v[2], v[3], v[4]);
    let mid = d.lerp(e, 0.5);
    let half_turn = Isometry::rotation_about(mid, 180.0);
    let second = half_turn.apply_polygon(&first);
    let w = second.vertices();
    let labelled = [a, b, c, w[0], w[1], w[2]];
    // relabel so that V1 is the corner that divides the full turn
    let shift = match p.rotation_corner(CONSTRUCTION_EPS) {
        Some(Corner::C) => 1,
        _ => 0,
    };
    let outline = Polygon::new((0..6).map(|i| labelled[(i + shift) % 6]).collect());
    for (vertex, angle) in outline.interior_angles_deg().into_iter().enumerate() {
        if angle >= 180.0 - CONSTRUCTION_EPS {
            return Err(AssemblyError::DegenerateHexagon { vertex, angle });
        }
    }
    Ok(HexagonSpec {
        outline,
        divider: Segment::new(d, e),
        halves: [first, second],
    })
}

fn hexagon_tile(
    h: &HexagonSpec,
    f: &Isometry,
    ring: usize,
    sector: usize,
    reflected: bool,
) -> Tile {
    Tile {
        polygon: f.apply_polygon(&h.outline),
        level: Level::Hexagon,
        ring,
        sector,
        reflected,
        arm: None,
        divider: Some(h.divider.transformed(f)),
    }
}

/// Rows `m = 1..=rings`, row `m` holding `m` translates of the hexagon; the apex
/// hexagon keeps its canonical pose.
pub fn build_sector(h: &HexagonSpec, rings: usize) -> Vec<Tile> {
    let (u, v) = (h.row_step(), h.ring_step());
    let mut tiles = Vec::with_capacity(rings * (rings + 1) / 2);
    for m in 1..=rings {
        for k in 0..m {
            let t = v * (m - 1) as f64 - u * k as f64;
            tiles.push(hexagon_tile(h, &Isometry::translation(t), m, 0, false));
        }
    }
    tiles
}

/// Zig-zag border on the `A` side of the sector, from the apex outward.
/// The sector interior lies to the right of this polyline.
pub fn sector_left_border(h: &HexagonSpec, rings: usize) -> Vec<Point> {
    let t = h.vertex(5) - h.vertex(1);
    let mut out = Vec::with_capacity(2 * rings + 1);
    for j in 0..rings {
        out.push(h.vertex(1) + t * j as f64);
        out.push(h.vertex(0) + t * j as f64);
    }
    out.push(h.vertex(1) + t * rings as f64);
    out
}

/// Zig-zag border on the `C` side of the sector, from the apex outward.
/// The sector interior lies to the left of this polyline.
pub fn sector_right_border(h: &HexagonSpec, rings: usize) -> Vec<Point> {
    let t = h.ring_step();
    let mut out = Vec::with_capacity(2 * rings + 1);
    for j in 0..rings {
        out.push(h.vertex(1) + t * j as f64);
        out.push(h.vertex(2) + t * j as f64);
    }
    out.push(h.vertex(1) + t * rings as f64);
    out
}

/// Orientation-reversing isometry taking `src[0] -> dst[0]` and `src[1] -> dst[1]`.
fn reflected_alignment(src: [Point; 2], dst: [Point; 2]) -> Isometry {
    let from = (src[1] - src[0]).normalized();
    let to = (dst[1] - dst[0]).normalized();
    // mirror across the bisector of the two directions
    let bisector = from + to;
    let axis = if bisector.norm() < 1e-12 {
        Point::new(-from.y, from.x)
    } else {
        bisector
    };
    let m = Isometry::reflection(axis.angle_deg());
    Isometry::translation(dst[0] - m.apply_point(src[0])).compose(&m)
}

fn max_offset(a: &[Point], b: &[Point]) -> (usize, f64) {
    a.iter()
        .zip(b)
        .map(|(p, q)| p.distance(*q))
        .enumerate()
        .fold((0, 0.0), |acc, (i, d)| if d > acc.1 { (i, d) } else { acc })
}

/// A base sector plus its mated mirror copy, translated so that the mirror
/// sector's apex sits at the origin.
#[derive(Debug, Clone)]
pub struct Wedge {
    pub tiles: Vec<Tile>,
    /// Signed rotation (degrees) carrying this wedge onto its successor.
    pub turn: f64,
    /// Placement of the base sector (canonical pose -> patch frame).
    pub base_placement: Isometry,
    /// Placement of the mirrored sector (canonical pose -> patch frame).
    pub mirror_placement: Isometry,
}

/// Mates a reflected sector copy onto the base sector's `A`-side border: the
/// mirror image's `A` border, shifted by one vertex, must lie on the base border.
pub fn build_wedge(h: &HexagonSpec, rings: usize) -> Result<Wedge, AssemblyError> {
    let base = build_sector(h, rings);
    let left = sector_left_border(h, rings);
    let glide = reflected_alignment([left[1], left[2]], [left[0], left[1]]);
    let mated: Vec<Point> = left.iter().map(|&p| glide.apply_point(p)).collect();
    let (at, offset) = max_offset(&mated[1..], &left[..left.len() - 1]);
    if offset > MATCH_EPS {
        return Err(AssemblyError::MatingMismatch { at, offset });
    }
    let apex = mated[0];
    let to_origin = Isometry::translation(-apex);
    let base_placement = to_origin;
    let mirror_placement = to_origin.compose(&glide);

    // The far border of the mirror sector must coincide with the base's
    // C-side border after one turn about the origin.
    let right = sector_right_border(h, rings);
    let base_right: Vec<Point> = right
        .iter()
        .map(|&p| base_placement.apply_point(p))
        .collect();
    let mirror_right: Vec<Point> = right
        .iter()
        .map(|&p| mirror_placement.apply_point(p))
        .collect();
    let step = h.apex_angle();
    let mut best: Option<(f64, usize, f64)> = None;
    for turn in [step, -step] {
        let rot = Isometry::rotation(turn);
        let turned: Vec<Point> = mirror_right.iter().map(|&p| rot.apply_point(p)).collect();
        let (at, off) = max_offset(&turned[1..], &base_right[..base_right.len() - 1]);
        if best.is_none_or(|b| off < b.2) {
            best = Some((turn, at, off));
        }
    }
    let (turn, at, off) = best.expect("two candidates");
    if off > MATCH_EPS {
        return Err(AssemblyError::MatingMismatch { at, offset: off });
    }

    let mut tiles: Vec<Tile> = base
        .iter()
        .map(|t| t.transformed(&base_placement))
        .collect();
    tiles.extend(base.iter().map(|t| Tile {
        sector: 1,
        reflected: true,
        ..t.transformed(&mirror_placement)
    }));
    Ok(Wedge {
        tiles,
        turn,
        base_placement,
        mirror_placement,
    })
}

fn split_hexagon(id: usize, t: &Tile) -> Result<[Tile; 2], AssemblyError> {
    let missing = || AssemblyError::NotApplicable(format!("hexagon {id} has no usable divider"));
    let divider = t.divider.ok_or_else(missing)?;
    let halves = t
        .polygon
        .split_along(&divider, CONSTRUCTION_EPS * 10.0)
        .ok_or_else(missing)?;
    Ok(halves.map(|polygon| Tile {
        polygon,
        level: Level::Pentagon,
        divider: None,
        ..t.clone()
    }))
}

/// Hexagon-level tiling of `n` rotated wedge copies; sector `2k` is the base
/// sector of copy `k`, sector `2k + 1` its mirror.
pub fn assemble_hexagons(params: &FeasibleParams, rings: usize) -> Result<Patch, AssemblyError> {
    let pentagon = derive_pentagon(params)?;
    assemble_hexagons_from(pentagon, rings)
}

/// Like [`assemble_hexagons`] for an already derived pentagon whose `B` or `C`
/// divides 360°.
pub fn assemble_hexagons_from(
    pentagon: PentagonSpec,
    rings: usize,
) -> Result<Patch, AssemblyError> {
    if rings == 0 {
        return Err(AssemblyError::NotApplicable(
            "rings must be at least 1".into(),
        ));
    }
    let corner = pentagon
        .rotation_corner(CONSTRUCTION_EPS)
        .ok_or(AssemblyError::NoRotationCorner)?;
    let h = glue_hexagon(&pentagon)?;
    let wedge = build_wedge(&h, rings)?;
    let n = (360.0 / h.apex_angle()).round() as usize;
    let mut tiles = Vec::with_capacity(wedge.tiles.len() * n);
    for k in 0..n {
        let rot = Isometry::rotation(wedge.turn * k as f64);
        tiles.extend(wedge.tiles.iter().map(|t| Tile {
            sector: 2 * k + t.sector,
            ..t.transformed(&rot)
        }));
    }
    // stable: keeps intra-row order within (ring, sector)
    tiles.sort_by_key(|t| (t.ring, t.sector));
    let dihedral = corner == Corner::B
        && FeasibleParams::new(
            n as u32,
            pentagon.angle(Corner::C),
            pentagon.angle(Corner::D),
        )
        .is_dihedral(CONSTRUCTION_EPS);
    let symmetry_declared = if dihedral {
        SymmetryKind::D
    } else {
        SymmetryKind::C
    };
    Ok(Patch {
        n: n as u32,
        symmetry_declared,
        rings,
        pentagon,
        tiles,
        center: Point::ORIGIN,
        level: Level::Hexagon,
        origin: Origin::Rotational,
    })
}

/// Pentagon-level patch for `params` with `rings` rings.
pub fn assemble_patch(params: &FeasibleParams, rings: usize) -> Result<Patch, AssemblyError> {
    let hex = assemble_hexagons(params, rings)?;
    pentagon_level(&hex)
}

/// Splits every hexagon tile along its divider.
pub fn pentagon_level(patch: &Patch) -> Result<Patch, AssemblyError> {
    if patch.level == Level::Pentagon {
        return Ok(patch.clone());
    }
    let mut tiles = Vec::with_capacity(2 * patch.tiles.len());
    for (i, t) in patch.tiles.iter().enumerate() {
        tiles.extend(split_hexagon(i, t)?);
    }
    Ok(Patch {
        tiles,
        level: Level::Pentagon,
        ..patch.clone()
    })
}

/// Index pairs of pentagon tiles that together form one hexagon, in tile order.
pub fn pentagon_pairs(patch: &Patch) -> Result<Vec<(usize, usize)>, AssemblyError> {
    use std::collections::HashMap;
    let eps = MATCH_EPS;
    let mut groups: HashMap<(usize, usize, bool), Vec<usize>> = HashMap::new();
    for (i, t) in patch.tiles.iter().enumerate() {
        groups
            .entry((t.ring, t.sector, t.reflected))
            .or_default()
            .push(i);
    }
    let mut partner = vec![usize::MAX; patch.tiles.len()];
    for i in 0..patch.tiles.len() {
        if partner[i] != usize::MAX {
            continue;
        }
        let t = &patch.tiles[i];
        let key = (t.ring, t.sector, t.reflected);
        let found = groups[&key]
            .iter()
            .copied()
            .filter(|&j| j != i && partner[j] == usize::MAX)
            .find(|&j| shared_divider(&t.polygon, &patch.tiles[j].polygon, eps).is_some());
        match found {
            Some(j) => {
                partner[i] = j;
                partner[j] = i;
            }
            None => return Err(AssemblyError::UnpairedPentagon(i)),
        }
    }
    Ok((0..partner.len())
        .filter(|&i| i < partner[i])
        .map(|i| (i, partner[i]))
        .collect())
}

/// Full edge of `p` shared reversed by `q` whose endpoints become straight
/// points of the union. Returns the edge index in `p` and in `q`.
fn shared_divider(p: &Polygon, q: &Polygon, eps: f64) -> Option<(usize, usize)> {
    let ap = p.interior_angles_deg();
    let aq = q.interior_angles_deg();
    let (np, nq) = (p.len(), q.len());
    for i in 0..np {
        let e = p.edge(i);
        for j in 0..nq {
            let f = q.edge(j);
            if e.a.approx_eq(f.b, eps) && e.b.approx_eq(f.a, eps) {
                // p's vertex i meets q's vertex j+1; p's i+1 meets q's j
                let s0 = ap[i] + aq[(j + 1) % nq];
                let s1 = ap[(i + 1) % np] + aq[j];
                if (s0 - 180.0).abs() <= 1e-6 && (s1 - 180.0).abs() <= 1e-6 {
                    return Some((i, j));
                }
            }
        }
    }
    None
}

fn merge_pair(p: &Polygon, q: &Polygon, eps: f64) -> Option<(Polygon, Segment)> {
    let (i, j) = shared_divider(p, q, eps)?;
    let (np, nq) = (p.len(), q.len());
    // walk p from vertex i+1 around to i, then q from j+1 around to j, skipping
    // the straight points (the divider endpoints)
    let mut v = Vec::with_capacity(np + nq - 4);
    for k in 2..np {
        v.push(p.vertex(i + k));
    }
    for k in 2..nq {
        v.push(q.vertex(j + k));
    }
    Some((Polygon::new(v), p.edge(i)))
}

/// Merges pentagon pairs back into hexagon tiles; the tile count halves.
pub fn hexagon_level(patch: &Patch) -> Result<Patch, AssemblyError> {
    if let Origin::Houses(kind) = patch.origin {
        return Err(AssemblyError::NotApplicable(format!(
            "houses patch {kind:?} has no hexagon level"
        )));
    }
    if patch.level == Level::Hexagon {
        return Ok(patch.clone());
    }
    let pairs = pentagon_pairs(patch)?;
    let mut tiles = Vec::with_capacity(pairs.len());
    for (i, j) in pairs {
        let (a, b) = (&patch.tiles[i], &patch.tiles[j]);
        let (polygon, divider) = merge_pair(&a.polygon, &b.polygon, MATCH_EPS)
            .ok_or(AssemblyError::UnpairedPentagon(i))?;
        tiles.push(Tile {
            polygon,
            level: Level::Hexagon,
            divider: Some(divider),
            arm: a.arm.or(b.arm),
            ..a.clone()
        });
    }
    Ok(Patch {
        tiles,
        level: Level::Hexagon,
        ..patch.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pentagon::{default_params, dihedral_params};

    fn c5_156() -> PentagonSpec {
        derive_pentagon(&FeasibleParams::new(5, 156.0, 78.0)).unwrap()
    }

    fn cyclic_match(got: &[f64], want: &[f64], eps: f64) -> bool {
        let n = want.len();
        got.len() == n && (0..n).any(|s| (0..n).all(|i| (got[(i + s) % n] - want[i]).abs() <= eps))
    }

    #[test]
    fn glued_hexagon_invariants() {
        let p = c5_156();
        let h = glue_hexagon(&p).unwrap();
        let angles = h.outline.interior_angles_deg();
        assert!(cyclic_match(
            &angles,
            &[132.0, 72.0, 156.0, 132.0, 72.0, 156.0],
            1e-9
        ));
        for e in h.outline.edges() {
            assert!((e.length() - 1.0).abs() <= 1e-9);
        }
        let c = h.outline.vertex_centroid();
        for i in 0..3 {
            let d = (h.vertex(i + 3) - c) + (h.vertex(i) - c);
            assert!(d.norm() <= 1e-9);
        }
        let sum = h.halves[0].area() + h.halves[1].area();
        assert!((sum - h.outline.area()).abs() <= 1e-9);
        assert!((h.outline.area() - 2.0 * p.area()).abs() <= 1e-9);
        for half in &h.halves {
            assert!(half.edges().any(|e| {
                (e.a.approx_eq(h.divider.a, 1e-9) && e.b.approx_eq(h.divider.b, 1e-9))
                    || (e.a.approx_eq(h.divider.b, 1e-9) && e.b.approx_eq(h.divider.a, 1e-9))
            }));
        }
    }

    #[test]
    fn dihedral_hexagon_angles() {
        let h = glue_hexagon(&derive_pentagon(&dihedral_params(4)).unwrap()).unwrap();
        let angles = h.outline.interior_angles_deg();
        assert!(cyclic_match(
            &angles,
            &[135.0, 90.0, 135.0, 135.0, 90.0, 135.0],
            1e-9
        ));
    }

    #[test]
    fn rectangle_case_is_degenerate() {
        // B = 180 gives straight corners after gluing
        let spec = PentagonSpec {
            angles: [90.0, 180.0, 90.0, 90.0, 90.0],
            sides: [0.5, 1.0, 1.0, 0.5, 2.0],
        };
        assert!(matches!(
            glue_hexagon(&spec),
            Err(AssemblyError::DegenerateHexagon { .. })
        ));
    }

    #[test]
    fn sector_rows_are_triangular() {
        let h = glue_hexagon(&c5_156()).unwrap();
        assert_eq!(build_sector(&h, 1).len(), 1);
        assert_eq!(build_sector(&h, 4).len(), 10);
    }

    fn border_angles(points: &[Point], interior_left: bool) -> Vec<f64> {
        (1..points.len() - 1)
            .map(|i| {
                let turn = crate::geom::signed_angle_deg(
                    points[i] - points[i - 1],
                    points[i + 1] - points[i],
                );
                if interior_left {
                    180.0 - turn
                } else {
                    180.0 + turn
                }
            })
            .collect()
    }

    #[test]
    fn sector_border_angles() {
        let h = glue_hexagon(&c5_156()).unwrap();
        // A side: hexagon corners show A, junctions of two hexagons show 360 - A
        let left = border_angles(&sector_left_border(&h, 3), false);
        let want_left = [132.0, 228.0, 132.0, 228.0, 132.0];
        for (g, w) in left.iter().zip(want_left) {
            assert!((g - w).abs() <= 1e-7, "{left:?}");
        }
        let right = border_angles(&sector_right_border(&h, 3), true);
        let want_right = [156.0, 204.0, 156.0, 204.0, 156.0];
        for (g, w) in right.iter().zip(want_right) {
            assert!((g - w).abs() <= 1e-7, "{right:?}");
        }
        // the zig-zag turns by 180 - A = 48 at every vertex, alternating sides
        let pts = sector_left_border(&h, 3);
        for i in 1..pts.len() - 1 {
            let t = crate::geom::signed_angle_deg(pts[i] - pts[i - 1], pts[i + 1] - pts[i]);
            assert!((t.abs() - 48.0).abs() <= 1e-7);
        }
    }

    #[test]
    fn wedge_counts_and_apex() {
        let p = c5_156();
        let h = glue_hexagon(&p).unwrap();
        let w = build_wedge(&h, 2).unwrap();
        assert_eq!(w.tiles.len(), 6);
        assert_eq!(w.tiles.iter().filter(|t| t.reflected).count(), 3);
        let apex = w.tiles.iter().find(|t| t.reflected && t.ring == 1).unwrap();
        let idx = apex
            .polygon
            .vertices()
            .iter()
            .position(|v| v.approx_eq(Point::ORIGIN, 1e-9))
            .expect("mirror apex at origin");
        let angle = apex.polygon.interior_angles_deg()[idx];
        assert!((angle - 72.0).abs() <= 1e-7);
        assert!((w.turn.abs() - 72.0).abs() <= 1e-12);
    }

    #[test]
    fn wedge_borders_rotate_onto_each_other() {
        let h = glue_hexagon(&c5_156()).unwrap();
        let rings = 4;
        let w = build_wedge(&h, rings).unwrap();
        let right = sector_right_border(&h, rings);
        let outer_base: Vec<Point> = right
            .iter()
            .map(|&p| w.base_placement.apply_point(p))
            .collect();
        let outer_mirror: Vec<Point> = right
            .iter()
            .map(|&p| Isometry::rotation(w.turn).apply_point(w.mirror_placement.apply_point(p)))
            .collect();
        // rotated mirror border runs one vertex ahead of the base border
        for i in 0..right.len() - 1 {
            assert!(outer_mirror[i + 1].approx_eq(outer_base[i], 1e-7));
        }
    }

    #[test]
    fn patch_counts() {
        let p = assemble_patch(&FeasibleParams::new(5, 156.0, 78.0), 1).unwrap();
        assert_eq!(p.tiles.len(), 20);
        assert_eq!(p.hexagon_count(), 10);
        let d7 = assemble_hexagons(&dihedral_params(7), 3).unwrap();
        for m in 1..=3 {
            assert_eq!(d7.tiles.iter().filter(|t| t.ring == m).count(), 14 * m);
        }
        assert_eq!(d7.symmetry_declared, SymmetryKind::D);
        let d3 = assemble_hexagons(&default_params(3), 2).unwrap();
        assert_eq!(d3.tiles.len(), 18);
        assert_eq!(d3.symmetry_declared, SymmetryKind::C);
    }

    #[test]
    fn hexagon_level_round_trip() {
        let hex = assemble_hexagons(&FeasibleParams::new(5, 156.0, 78.0), 2).unwrap();
        let pent = pentagon_level(&hex).unwrap();
        assert_eq!(pent.tiles.len(), 60);
        let merged = hexagon_level(&pent).unwrap();
        assert_eq!(merged.tiles.len(), 30);
        let area = 2.0 * pent.pentagon.area();
        for (a, b) in merged.tiles.iter().zip(&hex.tiles) {
            assert!((a.polygon.area() - area).abs() <= 1e-9);
            assert_eq!(
                (a.ring, a.sector, a.reflected),
                (b.ring, b.sector, b.reflected)
            );
            let d = a.divider.unwrap();
            let e = b.divider.unwrap();
            let same = (d.a.approx_eq(e.a, 1e-9) && d.b.approx_eq(e.b, 1e-9))
                || (d.a.approx_eq(e.b, 1e-9) && d.b.approx_eq(e.a, 1e-9));
            assert!(same);
        }
    }

    #[test]
    fn houses_have_no_hexagon_level() {
        let h = houses_patch(HousesKind::C2, 1);
        assert!(matches!(
            hexagon_level(&h),
            Err(AssemblyError::NotApplicable(_))
        ));
    }

    #[test]
    fn c_divisor_pentagon_assembles_at_hexagon_level() {
        let p = crate::pentagon::solve_pentagon(100.0, 90.0, 100.0).unwrap();
        let h = glue_hexagon(&p).unwrap();
        assert!((h.apex_angle() - 90.0).abs() <= 1e-9);
        let w = build_wedge(&h, 3).unwrap();
        assert!((w.turn.abs() - 90.0).abs() <= 1e-9);
    }
}
