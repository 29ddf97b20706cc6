//! Certification of assembled patches: tiling validity, symmetry group and spiral arms.

mod spiral;
mod symmetry;
mod verify;

use std::collections::HashMap;

use crate::assembly::AssemblyError;
use crate::geom::{BBox, Point, Polygon};

pub use spiral::{apply_arms, spiral_arms, spiral_next, ArmLabeling, SpiralGraph};
pub use symmetry::{symmetry_detect, SymmetryGroup, SymmetryResult, TileMatcher};
pub use verify::{verify, Defect, VerificationReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error("hexagon {0} has no successor inside the patch")]
    OutermostRing(usize),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("tile id {0} out of range")]
    UnknownTile(usize),
    #[error("spiral structure broken: {0}")]
    Structure(String),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
}

/// Uniform grid over tile bounding boxes.
pub(crate) struct TileIndex {
    cell: f64,
    boxes: Vec<BBox>,
    grid: HashMap<(i64, i64), Vec<usize>>,
}

impl TileIndex {
    pub(crate) fn new<'a>(polys: impl IntoIterator<Item = &'a Polygon>) -> TileIndex {
        let boxes: Vec<BBox> = polys.into_iter().map(|p| p.bbox()).collect();
        let cell = boxes
            .iter()
            .map(|b| b.width().max(b.height()))
            .fold(1e-9, f64::max);
        let mut index = TileIndex {
            cell,
            boxes,
            grid: HashMap::new(),
        };
        for i in 0..index.boxes.len() {
            let b = index.boxes[i];
            for key in index.cells(&b, 0.0) {
                index.grid.entry(key).or_default().push(i);
            }
        }
        index
    }

    fn cells(&self, b: &BBox, pad: f64) -> impl Iterator<Item = (i64, i64)> {
        let c = self.cell;
        let (x0, x1) = (
            ((b.min.x - pad) / c).floor() as i64,
            ((b.max.x + pad) / c).floor() as i64,
        );
        let (y0, y1) = (
            ((b.min.y - pad) / c).floor() as i64,
            ((b.max.y + pad) / c).floor() as i64,
        );
        (x0..=x1).flat_map(move |x| (y0..=y1).map(move |y| (x, y)))
    }

    /// Tiles whose bounding box comes within `pad` of `b`, sorted and deduplicated.
    pub(crate) fn query(&self, b: &BBox, pad: f64) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .cells(b, pad)
            .filter_map(|k| self.grid.get(&k))
            .flatten()
            .copied()
            .filter(|&j| self.boxes[j].overlaps(b, pad))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub(crate) fn neighbors(&self, i: usize, pad: f64) -> Vec<usize> {
        let b = self.boxes[i];
        let mut v = self.query(&b, pad);
        v.retain(|&j| j != i);
        v
    }

    pub(crate) fn near_point(&self, p: Point, pad: f64) -> Vec<usize> {
        self.query(&BBox { min: p, max: p }, pad)
    }
}

/// Clusters points closer than `tol` into shared ids.
pub(crate) struct PointClusters {
    tol: f64,
    grid: HashMap<(i64, i64), Vec<usize>>,
    pub(crate) points: Vec<Point>,
}

impl PointClusters {
    pub(crate) fn new(tol: f64) -> Self {
        PointClusters {
            tol,
            grid: HashMap::new(),
            points: Vec::new(),
        }
    }

    fn key(&self, p: Point) -> (i64, i64) {
        let c = 2.0 * self.tol;
        ((p.x / c).floor() as i64, (p.y / c).floor() as i64)
    }

    pub(crate) fn find(&self, p: Point) -> Option<usize> {
        let (kx, ky) = self.key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) {
                    if let Some(&id) = ids
                        .iter()
                        .find(|&&id| self.points[id].distance(p) <= self.tol)
                    {
                        return Some(id);
                    }
                }
            }
        }
        None
    }

    pub(crate) fn id(&mut self, p: Point) -> usize {
        if let Some(id) = self.find(p) {
            return id;
        }
        let id = self.points.len();
        self.points.push(p);
        let k = self.key(p);
        self.grid.entry(k).or_default().push(id);
        id
    }
}
