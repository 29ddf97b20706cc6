//! Houses tilings for the symmetry types with `n` in {1, 2}.
//!
//! The house is the property-1 pentagon with `B = 90°`, `A = C = 135°`,
//! `D = E = 90°`: a `√2 × ½` rectangle under a right-angled roof with unit legs.
//! A strip holds a row of upward houses whose roof notches are filled by a row
//! of downward houses, so strips are flat on both sides and stack freely.
//! The symmetry type is chosen by how strips are stacked below the centre and
//! which houses are kept.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use super::{Level, Origin, Patch, SymmetryKind, Tile};
use crate::geom::{Isometry, Point, Polygon};
use crate::pentagon::{derive_pentagon, dihedral_params, PentagonSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HousesKind {
    C1,
    C2,
    D1,
    D2,
}

impl HousesKind {
    pub fn order(self) -> u32 {
        match self {
            HousesKind::C1 | HousesKind::D1 => 1,
            HousesKind::C2 | HousesKind::D2 => 2,
        }
    }

    pub fn symmetry(self) -> SymmetryKind {
        match self {
            HousesKind::C1 | HousesKind::C2 => SymmetryKind::C,
            HousesKind::D1 | HousesKind::D2 => SymmetryKind::D,
        }
    }
}

const WIDTH: f64 = SQRT_2;
const WALL: f64 = 0.5;
const ROOF: f64 = SQRT_2 / 2.0;
const STRIP: f64 = 2.0 * WALL + ROOF;

pub fn house_pentagon() -> PentagonSpec {
    derive_pentagon(&dihedral_params(4)).expect("the house is feasible")
}

/// Upward house with its base centred at `(x, y)`, corners in order `A..E`.
fn up_house(x: f64, y: f64) -> Polygon {
    let hw = WIDTH / 2.0;
    Polygon::new(vec![
        Point::new(x + hw, y + WALL),
        Point::new(x, y + WALL + ROOF),
        Point::new(x - hw, y + WALL),
        Point::new(x - hw, y),
        Point::new(x + hw, y),
    ])
}

/// One strip on `[y, y + STRIP]`: upward houses centred at `(i + ½)·w`,
/// downward houses centred at `j·w`.
fn strip(y: f64, ups: impl Iterator<Item = i64>, downs: impl Iterator<Item = i64>) -> Vec<Polygon> {
    let mut out: Vec<Polygon> = ups.map(|i| up_house((i as f64 + 0.5) * WIDTH, y)).collect();
    for j in downs {
        let x = j as f64 * WIDTH;
        // downward house: the upward one turned about the strip's mid-line
        let turn = Isometry::rotation_about(Point::new(x, y + STRIP / 2.0), 180.0);
        out.push(turn.apply_polygon(&up_house(x, y)));
    }
    out
}

/// A finite houses patch of the given kind with `extent` strips on each side
/// of the centre, translated so that the centre is the origin.
pub fn houses_patch(kind: HousesKind, extent: usize) -> Patch {
    let e = extent.max(1) as i64;
    let center = Point::new(WIDTH / 2.0, 0.0);
    let ups = || -e..=e;
    let downs = || (-e + 1)..=e;
    let mut tiles: Vec<Tile> = Vec::new();
    let mut push = |polys: Vec<Polygon>, ring: usize, sector: usize| {
        for polygon in polys {
            tiles.push(Tile {
                polygon: polygon.translated(-center),
                level: Level::Pentagon,
                ring,
                sector,
                reflected: false,
                arm: None,
                divider: None,
            });
        }
    };
    let about_center_half_turn = Isometry::rotation_about(center, 180.0);
    let mirror_y0 = Isometry::reflection(0.0);
    for k in 0..e {
        let ring = k as usize + 1;
        let y = k as f64 * STRIP;
        let below_y = -(k as f64 + 1.0) * STRIP;
        match kind {
            HousesKind::D2 => {
                let top = strip(y, ups(), downs());
                let bottom = top.iter().map(|p| mirror_y0.apply_polygon(p)).collect();
                push(top, ring, 0);
                push(bottom, ring, 1);
            }
            HousesKind::C2 => {
                // one extra downward house breaks the vertical mirror
                let top = strip(y, ups(), (-e + 1)..=(e + 1));
                let bottom = top
                    .iter()
                    .map(|p| about_center_half_turn.apply_polygon(p))
                    .collect();
                push(top, ring, 0);
                push(bottom, ring, 1);
            }
            HousesKind::D1 => {
                push(strip(y, ups(), downs()), ring, 0);
                push(strip(below_y, ups(), downs()), ring, 1);
            }
            HousesKind::C1 => {
                let downs_top: Box<dyn Iterator<Item = i64>> = if k == 0 {
                    Box::new((-e + 1)..=(e + 1))
                } else {
                    Box::new(downs())
                };
                push(strip(y, ups(), downs_top), ring, 0);
                push(strip(below_y, ups(), downs()), ring, 1);
            }
        }
    }
    tiles.sort_by_key(|t| (t.ring, t.sector));
    Patch {
        n: kind.order(),
        symmetry_declared: kind.symmetry(),
        rings: e as usize,
        pentagon: house_pentagon(),
        tiles,
        center: Point::ORIGIN,
        level: Level::Pentagon,
        origin: Origin::Houses(kind),
    }
}
