use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{PointClusters, TileIndex};
use crate::assembly::{Level, Patch};
use crate::geom::{polygons_interiors_intersect, signed_angle_deg, uncovered, Point, Polygon};

/// Vertices this close to another tile's boundary, but not on it, are treated
/// as misplaced rather than as a legitimate gap.
const NEAR_MISS_FACTOR: f64 = 1000.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Defect {
    Overlap {
        tiles: [usize; 2],
    },
    NearMiss {
        tile: usize,
        other: usize,
        at: Point,
        distance: f64,
    },
    MultiplyCovered {
        tile: usize,
        edge: usize,
        length: f64,
    },
    StrayBoundary {
        tile: usize,
        edge: usize,
        from: Point,
        to: Point,
    },
    BoundaryPinch {
        ring: usize,
        at: Point,
    },
    NotDisk {
        ring: usize,
        cycles: usize,
        open_chains: usize,
    },
    AreaMismatch {
        ring: usize,
        tiles: f64,
        enclosed: f64,
    },
    RingCensus {
        ring: usize,
        expected: usize,
        found: usize,
    },
    StrayRing {
        tile: usize,
        ring: usize,
    },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::Overlap { tiles } => write!(f, "tiles {} and {} overlap", tiles[0], tiles[1]),
            Defect::NearMiss {
                tile,
                other,
                at,
                distance,
            } => write!(
                f,
                "vertex {at} of tile {tile} is {distance:.3e} off the boundary of tile {other}"
            ),
            Defect::MultiplyCovered { tile, edge, length } => {
                write!(
                    f,
                    "edge {edge} of tile {tile} is covered twice over length {length:.3e}"
                )
            }
            Defect::StrayBoundary {
                tile,
                edge,
                from,
                to,
            } => write!(
                f,
                "edge {edge} of tile {tile} is unmatched from {from} to {to} inside the patch"
            ),
            Defect::BoundaryPinch { ring, at } => {
                write!(f, "boundary of rings 1..={ring} touches itself at {at}")
            }
            Defect::NotDisk {
                ring,
                cycles,
                open_chains,
            } => write!(
                f,
                "rings 1..={ring} have {cycles} boundary cycles and {open_chains} open chains"
            ),
            Defect::AreaMismatch {
                ring,
                tiles,
                enclosed,
            } => write!(
                f,
                "rings 1..={ring}: tile area {tiles} but boundary encloses {enclosed}"
            ),
            Defect::RingCensus {
                ring,
                expected,
                found,
            } => {
                write!(f, "ring {ring} has {found} hexagons, expected {expected}")
            }
            Defect::StrayRing { tile, ring } => write!(f, "tile {tile} has ring index {ring}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub overlap_free: bool,
    pub edge_matched: bool,
    pub ring_census_ok: bool,
    pub closure_ok: bool,
    pub details: Vec<Defect>,
    /// Tile edges fully covered by neighbours.
    pub matched_edges: usize,
    /// Tile edges lying (at least partly) on the outer boundary.
    pub boundary_edges: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overlap_free
            && self.edge_matched
            && self.ring_census_ok
            && self.closure_ok
            && self.details.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "ok" } else { "FAILED" };
        writeln!(f, "overlap-free:  {}", mark(self.overlap_free))?;
        writeln!(f, "edge-matched:  {}", mark(self.edge_matched))?;
        writeln!(f, "ring census:   {}", mark(self.ring_census_ok))?;
        write!(f, "disk closure:  {}", mark(self.closure_ok))?;
        for d in &self.details {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}

/// An unmatched stretch of a tile edge, oriented with the tile on its left.
#[derive(Debug, Clone, Copy)]
struct Piece {
    tile: usize,
    edge: usize,
    a: Point,
    b: Point,
}

struct EdgeScan {
    pieces: Vec<Piece>,
    multiply: Vec<Defect>,
    matched: usize,
}

/// Unmatched edge pieces of the tiles with `include[i]`, against included neighbours.
fn scan_edges(
    polys: &[&Polygon],
    neighbors: &[Vec<usize>],
    include: &[bool],
    eps: f64,
) -> EdgeScan {
    let per_tile: Vec<(Vec<Piece>, Vec<Defect>, usize)> = (0..polys.len())
        .into_par_iter()
        .filter(|&i| include[i])
        .map(|i| {
            let mut pieces = Vec::new();
            let mut multiply = Vec::new();
            let mut matched = 0;
            for (ei, e) in polys[i].edges().enumerate() {
                let len = e.length();
                let dir = e.vector() * (1.0 / len);
                let mut intervals = Vec::new();
                for &j in neighbors[i].iter().filter(|&&j| include[j]) {
                    for f in polys[j].edges() {
                        if e.vector().dot(f.vector()) >= 0.0
                            || e.line_distance(f.a) > eps
                            || e.line_distance(f.b) > eps
                        {
                            continue;
                        }
                        let (u, v) = (e.project(f.b), e.project(f.a));
                        let (t0, t1) = (u.max(0.0), v.min(len));
                        if t1 - t0 > eps {
                            intervals.push((t0, t1));
                        }
                    }
                }
                intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
                let mut reach = f64::NEG_INFINITY;
                for &(t0, t1) in &intervals {
                    if reach - t0 > eps {
                        multiply.push(Defect::MultiplyCovered {
                            tile: i,
                            edge: ei,
                            length: reach.min(t1) - t0,
                        });
                    }
                    reach = reach.max(t1);
                }
                let gaps = uncovered(len, intervals, eps);
                if gaps.is_empty() {
                    matched += 1;
                }
                pieces.extend(gaps.into_iter().map(|(s, t)| Piece {
                    tile: i,
                    edge: ei,
                    a: e.a + dir * s,
                    b: e.a + dir * t,
                }));
            }
            (pieces, multiply, matched)
        })
        .collect();
    let mut scan = EdgeScan {
        pieces: Vec::new(),
        multiply: Vec::new(),
        matched: 0,
    };
    for (p, m, k) in per_tile {
        scan.pieces.extend(p);
        scan.multiply.extend(m);
        scan.matched += k;
    }
    scan
}

struct Tracing {
    /// Piece indices of each closed cycle with its signed area.
    cycles: Vec<(Vec<usize>, f64)>,
    open_chains: Vec<Vec<usize>>,
    pinches: Vec<Point>,
}

/// Chains unmatched pieces end to end into boundary cycles.
fn trace(pieces: &[Piece], eps: f64) -> Tracing {
    let mut nodes = PointClusters::new(eps);
    let ends: Vec<(usize, usize)> = pieces
        .iter()
        .map(|p| (nodes.id(p.a), nodes.id(p.b)))
        .collect();
    let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut indeg: HashMap<usize, usize> = HashMap::new();
    for (k, &(s, t)) in ends.iter().enumerate() {
        out.entry(s).or_default().push(k);
        *indeg.entry(t).or_default() += 1;
    }
    let mut pinches: Vec<Point> = out
        .iter()
        .filter(|(node, o)| o.len() != 1 || indeg.get(node).copied().unwrap_or(0) != 1)
        .map(|(&node, _)| nodes.points[node])
        .collect();
    pinches.extend(
        indeg
            .keys()
            .filter(|node| !out.contains_key(node))
            .map(|&node| nodes.points[node]),
    );
    pinches.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));

    let mut used = vec![false; pieces.len()];
    let mut cycles = Vec::new();
    let mut open_chains = Vec::new();
    for start in 0..pieces.len() {
        if used[start] {
            continue;
        }
        let mut chain = vec![start];
        used[start] = true;
        let mut cur = start;
        let closed = loop {
            let end = ends[cur].1;
            if end == ends[start].0 {
                break true;
            }
            let incoming = pieces[cur].b - pieces[cur].a;
            // at a pinch, keep to the tightest clockwise turn
            let next = out
                .get(&end)
                .into_iter()
                .flatten()
                .copied()
                .filter(|&k| !used[k])
                .min_by(|&x, &y| {
                    let tx = signed_angle_deg(incoming, pieces[x].b - pieces[x].a);
                    let ty = signed_angle_deg(incoming, pieces[y].b - pieces[y].a);
                    tx.total_cmp(&ty)
                });
            match next {
                Some(k) => {
                    used[k] = true;
                    chain.push(k);
                    cur = k;
                }
                None => break false,
            }
        };
        if closed {
            let area = chain
                .iter()
                .map(|&k| pieces[k].a.cross(pieces[k].b))
                .sum::<f64>()
                / 2.0;
            cycles.push((chain, area));
        } else {
            open_chains.push(chain);
        }
    }
    Tracing {
        cycles,
        open_chains,
        pinches,
    }
}

/// Checks that `patch` is a gap- and overlap-free tiling of a disk, ring by ring.
///
/// Tolerance `eps` applies to coordinates: edges count as shared when their
/// endpoints lie within `eps` of the neighbour's edge line.
pub fn verify(patch: &Patch, eps: f64) -> VerificationReport {
    let polys: Vec<&Polygon> = patch.tiles.iter().map(|t| &t.polygon).collect();
    let index = TileIndex::new(polys.iter().copied());
    let near_tol = NEAR_MISS_FACTOR * eps;
    let neighbors: Vec<Vec<usize>> = (0..polys.len())
        .into_par_iter()
        .map(|i| index.neighbors(i, near_tol))
        .collect();
    let mut details = Vec::new();

    let overlaps: Vec<Defect> = (0..polys.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (polys, neighbors) = (&polys, &neighbors);
            neighbors[i]
                .iter()
                .copied()
                .filter(move |&j| j > i && polygons_interiors_intersect(polys[i], polys[j], eps))
                .map(move |j| Defect::Overlap { tiles: [i, j] })
        })
        .collect();
    let overlap_free = overlaps.is_empty();
    details.extend(overlaps);

    let near_misses: Vec<Defect> = (0..polys.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut found = Vec::new();
            for &j in &neighbors[i] {
                if let Some((at, distance)) = polys[i]
                    .vertices()
                    .iter()
                    .map(|&v| (v, polys[j].boundary_distance(v)))
                    .filter(|&(_, d)| d > eps && d < near_tol)
                    .min_by(|x, y| x.1.total_cmp(&y.1))
                {
                    found.push(Defect::NearMiss {
                        tile: i,
                        other: j,
                        at,
                        distance,
                    });
                }
            }
            found
        })
        .collect();

    let everything = vec![true; polys.len()];
    let scan = scan_edges(&polys, &neighbors, &everything, eps);
    let tracing = trace(&scan.pieces, eps);
    let outer = tracing
        .cycles
        .iter()
        .enumerate()
        .max_by(|x, y| x.1 .1.total_cmp(&y.1 .1))
        .map(|(k, _)| k);
    let mut stray = Vec::new();
    for (k, (chain, _)) in tracing.cycles.iter().enumerate() {
        if Some(k) != outer {
            stray.extend(chain.iter().copied());
        }
    }
    for chain in &tracing.open_chains {
        stray.extend(chain.iter().copied());
    }
    stray.sort_unstable();
    let boundary_edges = {
        let mut on_outer: Vec<(usize, usize)> = outer
            .map(|k| {
                tracing.cycles[k]
                    .0
                    .iter()
                    .map(|&p| (scan.pieces[p].tile, scan.pieces[p].edge))
                    .collect()
            })
            .unwrap_or_default();
        on_outer.sort_unstable();
        on_outer.dedup();
        on_outer.len()
    };
    let edge_matched =
        near_misses.is_empty() && scan.multiply.is_empty() && stray.is_empty() && outer.is_some();
    details.extend(near_misses);
    details.extend(scan.multiply.iter().cloned());
    details.extend(stray.iter().map(|&k| {
        let p = scan.pieces[k];
        Defect::StrayBoundary {
            tile: p.tile,
            edge: p.edge,
            from: p.a,
            to: p.b,
        }
    }));

    // ring census, hexagon-equivalent
    let mut ring_census_ok = true;
    let max_ring = patch.tiles.iter().map(|t| t.ring).max().unwrap_or(0);
    for (i, t) in patch.tiles.iter().enumerate() {
        if t.ring == 0 || t.ring > patch.rings {
            ring_census_ok = false;
            details.push(Defect::StrayRing {
                tile: i,
                ring: t.ring,
            });
        }
    }
    if patch.expected_ring_census(1).is_some() {
        let per_hexagon = match patch.level {
            Level::Hexagon => 1,
            Level::Pentagon => 2,
        };
        for m in 1..=patch.rings {
            let expected = patch.expected_ring_census(m).unwrap_or(0);
            let tiles = patch.tiles.iter().filter(|t| t.ring == m).count();
            if tiles != expected * per_hexagon {
                ring_census_ok = false;
                details.push(Defect::RingCensus {
                    ring: m,
                    expected,
                    found: tiles / per_hexagon,
                });
            }
        }
    }

    // disk closure of rings 1..=m
    let mut closure_ok = true;
    for m in 1..=max_ring {
        let include: Vec<bool> = patch.tiles.iter().map(|t| t.ring <= m).collect();
        if !include.iter().any(|&b| b) {
            continue;
        }
        let local;
        let tr = if m == max_ring {
            &tracing
        } else {
            local = trace(&scan_edges(&polys, &neighbors, &include, eps).pieces, eps);
            &local
        };
        if tr.cycles.len() != 1 || !tr.open_chains.is_empty() {
            closure_ok = false;
            details.push(Defect::NotDisk {
                ring: m,
                cycles: tr.cycles.len(),
                open_chains: tr.open_chains.len(),
            });
        }
        for &at in &tr.pinches {
            closure_ok = false;
            details.push(Defect::BoundaryPinch { ring: m, at });
        }
        let tiles: f64 = patch
            .tiles
            .iter()
            .filter(|t| t.ring <= m)
            .map(|t| t.polygon.area())
            .sum();
        let enclosed: f64 = tr.cycles.iter().map(|c| c.1).sum();
        if (tiles - enclosed).abs() > eps {
            closure_ok = false;
            details.push(Defect::AreaMismatch {
                ring: m,
                tiles,
                enclosed,
            });
        }
    }

    VerificationReport {
        overlap_free,
        edge_matched,
        ring_census_ok,
        closure_ok,
        details,
        matched_edges: scan.matched,
        boundary_edges,
    }
}
