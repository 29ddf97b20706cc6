//! Property-1 pentagons: derivation from the free parameters, closure solve and validation.
//!
//! Corners `A..E` run counter-clockwise. Edge `a` runs from `E` to `A`, edge `b`
//! from `A` to `B`, and so on, so each edge is named after the corner it ends at.
//! The boundary is walked counter-clockwise starting along `b` in the +x
//! direction, turning left by `180 - angle` at every corner.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geom::{Isometry, Point, Polygon, Vector, CONSTRUCTION_EPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    A,
    B,
    C,
    D,
    E,
}

impl Corner {
    pub const ALL: [Corner; 5] = [Corner::A, Corner::B, Corner::C, Corner::D, Corner::E];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn side_name(self) -> char {
        ['a', 'b', 'c', 'd', 'e'][self.index()]
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Interior angles (degrees) and side lengths, indexed by [`Corner`].
#[derive(Debug, Clone, PartialEq)]
pub struct PentagonSpec {
    pub angles: [f64; 5],
    pub sides: [f64; 5],
}

impl PentagonSpec {
    pub fn angle(&self, c: Corner) -> f64 {
        self.angles[c.index()]
    }

    pub fn side(&self, c: Corner) -> f64 {
        self.sides[c.index()]
    }

    /// Direction in degrees of each directed edge, indexed by the corner the edge ends at.
    pub fn edge_directions(&self) -> [f64; 5] {
        let mut dir = [0.0; 5];
        // b leaves A along +x; each corner turns left by its exterior angle
        dir[Corner::B.index()] = 0.0;
        for k in 1..5 {
            let at = (Corner::B.index() + k - 1) % 5;
            let next = (at + 1) % 5;
            dir[next] = dir[at] + 180.0 - self.angles[at];
        }
        dir
    }

    pub fn edge_vectors(&self) -> [Vector; 5] {
        let dir = self.edge_directions();
        let mut v = [Point::ORIGIN; 5];
        for i in 0..5 {
            v[i] = Point::polar(self.sides[i], dir[i]);
        }
        v
    }

    /// Norm of the summed edge vectors.
    pub fn closure_residual(&self) -> f64 {
        self.edge_vectors()
            .iter()
            .fold(Point::ORIGIN, |acc, &v| acc + v)
            .norm()
    }

    /// Vertices in canonical pose: `B` at the origin, edge `b` arriving along +x.
    pub fn canonical_vertices(&self) -> [Point; 5] {
        let ev = self.edge_vectors();
        let mut v = [Point::ORIGIN; 5];
        let b = Corner::B.index();
        v[b] = Point::ORIGIN;
        v[Corner::A.index()] = -ev[b];
        for k in 1..4 {
            let at = (b + k - 1) % 5;
            let next = (at + 1) % 5;
            v[next] = v[at] + ev[next];
        }
        v
    }

    pub fn perimeter(&self) -> f64 {
        self.sides.iter().sum()
    }

    /// Area of the realized pentagon.
    pub fn area(&self) -> f64 {
        realize(self, &Isometry::IDENTITY).area()
    }

    /// The corner whose angle divides 360°, preferring `B`.
    pub fn rotation_corner(&self, eps: f64) -> Option<Corner> {
        [Corner::B, Corner::C]
            .into_iter()
            .find(|&c| divides_full_turn(self.angle(c), eps))
    }
}

fn divides_full_turn(angle: f64, eps: f64) -> bool {
    if angle <= 0.0 {
        return false;
    }
    let k = (360.0 / angle).round();
    k >= 1.0 && (k * angle - 360.0).abs() <= eps * k.max(1.0)
}

/// Free parameters of the construction: `B = 360/n`, plus `C` and `D` in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibleParams {
    pub n: u32,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
}

impl FeasibleParams {
    pub fn new(n: u32, c: f64, d: f64) -> Self {
        FeasibleParams { n, c, d }
    }

    pub fn b(&self) -> f64 {
        360.0 / self.n as f64
    }

    /// True iff `C = 180 - B/2` and `D = 90` within `eps`.
    pub fn is_dihedral(&self, eps: f64) -> bool {
        (self.c - (180.0 - self.b() / 2.0)).abs() <= eps && (self.d - 90.0).abs() <= eps
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PentagonError {
    #[error("rotation order n = {0} is below 3; use a houses tiling for n = 1, 2")]
    OrderTooSmall(u32),
    #[error("infeasible angles: {corner} = {value}° is outside (0°, 180°)")]
    InfeasibleAngles { corner: Corner, value: f64 },
    #[error("infeasible side lengths: a = {a}, e = {e} (need 0 < a < 1 and e > 0)")]
    InfeasibleLengths { a: f64, e: f64 },
    #[error("closure system is singular (|det| = {det:e})")]
    SingularClosure { det: f64 },
}

/// Solves the closure system for arbitrary `B`, `C`, `D` (degrees).
///
/// `A = 360 - B - C`, `E = 180 - D`, `b = c = 1`, `d = 1 - a`; the remaining
/// unknowns `(a, e)` satisfy a 2x2 linear system once edge directions are fixed.
pub fn solve_pentagon(b_deg: f64, c_deg: f64, d_deg: f64) -> Result<PentagonSpec, PentagonError> {
    let angles = [360.0 - b_deg - c_deg, b_deg, c_deg, d_deg, 180.0 - d_deg];
    for c in Corner::ALL {
        let value = angles[c.index()];
        if !(value > 0.0 && value < 180.0) || !value.is_finite() {
            return Err(PentagonError::InfeasibleAngles { corner: c, value });
        }
    }
    let probe = PentagonSpec {
        angles,
        sides: [1.0; 5],
    };
    let dir = probe.edge_directions();
    let unit = |c: Corner| Point::polar(1.0, dir[c.index()]);
    // b + c + (1 - a) d̂ + e ê + a â = 0
    //   => a (â - d̂) + e ê = -(b̂ + ĉ + d̂)
    let col_a = unit(Corner::A) - unit(Corner::D);
    let col_e = unit(Corner::E);
    let rhs = -(unit(Corner::B) + unit(Corner::C) + unit(Corner::D));
    let det = col_a.cross(col_e);
    if det.abs() < 1e-12 {
        return Err(PentagonError::SingularClosure { det });
    }
    let a = rhs.cross(col_e) / det;
    let e = col_a.cross(rhs) / det;
    if !(a > CONSTRUCTION_EPS && a < 1.0 - CONSTRUCTION_EPS && e > CONSTRUCTION_EPS) {
        return Err(PentagonError::InfeasibleLengths { a, e });
    }
    Ok(PentagonSpec {
        angles,
        sides: [a, 1.0, 1.0, 1.0 - a, e],
    })
}

pub fn derive_pentagon(params: &FeasibleParams) -> Result<PentagonSpec, PentagonError> {
    if params.n < 3 {
        return Err(PentagonError::OrderTooSmall(params.n));
    }
    solve_pentagon(params.b(), params.c, params.d)
}

/// `C = (360 - B)/2 + B/4`, `D = 270 - B/2 - C`.
pub fn default_params(n: u32) -> FeasibleParams {
    let b = 360.0 / n as f64;
    let c = (360.0 - b) / 2.0 + b / 4.0;
    let d = 270.0 - b / 2.0 - c;
    FeasibleParams::new(n, c, d)
}

/// `C = 180 - 180/n`, `D = 90`: the pentagon and its sector are mirror symmetric.
pub fn dihedral_params(n: u32) -> FeasibleParams {
    FeasibleParams::new(n, 180.0 - 180.0 / n as f64, 90.0)
}

/// One violated clause of the pentagon class definition.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    AngleSum(f64),
    AngleRange(Corner, f64),
    SidesBC { b: f64, c: f64 },
    SidesAD { b: f64, sum: f64 },
    SupplementaryDE(f64),
    NoDivisor,
    ClosureResidual(f64),
    NotParallel(f64),
    NonPositiveSide(Corner, f64),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AngleSum(s) => write!(f, "angle sum {s}° ≠ 540°"),
            Violation::AngleRange(c, v) => write!(f, "angle {c} = {v}° outside (0°, 180°)"),
            Violation::SidesBC { b, c } => write!(f, "|b| ≠ |c| ({b} vs {c})"),
            Violation::SidesAD { b, sum } => write!(f, "|b| ≠ |a|+|d| ({b} vs {sum})"),
            Violation::SupplementaryDE(s) => write!(f, "D+E ≠ 180° (D+E = {s}°)"),
            Violation::NoDivisor => write!(f, "neither B nor C divides 360°"),
            Violation::ClosureResidual(r) => write!(f, "closure residual {r:e}"),
            Violation::NotParallel(x) => write!(f, "sides a and d not parallel (cross {x:e})"),
            Violation::NonPositiveSide(c, v) => {
                write!(f, "side {} = {v} not positive", c.side_name())
            }
        }
    }
}

/// Every violated clause, empty iff the spec is a valid property-1 pentagon within `eps`.
pub fn validate_property1(p: &PentagonSpec, eps: f64) -> Vec<Violation> {
    use Corner::*;
    let mut out = Vec::new();
    let sum: f64 = p.angles.iter().sum();
    if (sum - 540.0).abs() > eps {
        out.push(Violation::AngleSum(sum));
    }
    for c in Corner::ALL {
        let v = p.angle(c);
        if !(v > 0.0 && v < 180.0) {
            out.push(Violation::AngleRange(c, v));
        }
    }
    for c in Corner::ALL {
        if p.side(c).is_nan() || p.side(c) <= 0.0 {
            out.push(Violation::NonPositiveSide(c, p.side(c)));
        }
    }
    if (p.side(B) - p.side(C)).abs() > eps {
        out.push(Violation::SidesBC {
            b: p.side(B),
            c: p.side(C),
        });
    }
    let ad = p.side(A) + p.side(D);
    if (p.side(B) - ad).abs() > eps {
        out.push(Violation::SidesAD {
            b: p.side(B),
            sum: ad,
        });
    }
    let de = p.angle(D) + p.angle(E);
    if (de - 180.0).abs() > eps {
        out.push(Violation::SupplementaryDE(de));
    }
    if p.rotation_corner(eps).is_none() {
        out.push(Violation::NoDivisor);
    }
    let r = p.closure_residual();
    if r > eps {
        out.push(Violation::ClosureResidual(r));
    }
    let dir = p.edge_directions();
    let x = Point::polar(1.0, dir[A.index()])
        .cross(Point::polar(1.0, dir[D.index()]))
        .abs();
    if x > eps {
        out.push(Violation::NotParallel(x));
    }
    out
}

/// Realizes the spec in canonical pose, then applies `placement`.
/// Vertices are returned in corner order `A..E` for direct placements.
pub fn realize(p: &PentagonSpec, placement: &Isometry) -> Polygon {
    let v = p.canonical_vertices();
    placement.apply_polygon(&Polygon::new(v.to_vec()))
}

/// Validation at construction tolerance.
pub fn is_property1(p: &PentagonSpec) -> bool {
    validate_property1(p, CONSTRUCTION_EPS).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, eps: f64) -> bool {
        (a - b).abs() <= eps
    }

    #[test]
    fn five_fold_reference_angles() {
        let p = derive_pentagon(&FeasibleParams::new(5, 156.0, 78.0)).unwrap();
        let want = [132.0, 72.0, 156.0, 78.0, 102.0];
        for (g, w) in p.angles.iter().zip(want) {
            assert!(close(*g, w, 1e-12), "{g} vs {w}");
        }
        assert!(p.closure_residual() <= 1e-9);
        assert!(close(p.side(Corner::A) + p.side(Corner::D), 1.0, 1e-12));
    }

    #[test]
    fn dihedral_four_is_the_house() {
        let p = derive_pentagon(&dihedral_params(4)).unwrap();
        let want = [135.0, 90.0, 135.0, 90.0, 90.0];
        for (g, w) in p.angles.iter().zip(want) {
            assert!(close(*g, w, 1e-12));
        }
        assert!(close(p.side(Corner::A), 0.5, 1e-12));
        assert!(close(p.side(Corner::E), 2f64.sqrt(), 1e-12));
    }

    #[test]
    fn default_params_formulas() {
        let p6 = default_params(6);
        assert!(close(p6.c, 165.0, 1e-12) && close(p6.d, 75.0, 1e-12));
        let s6 = derive_pentagon(&p6).unwrap();
        assert!(close(s6.angle(Corner::A), 135.0, 1e-12));
        let p3 = default_params(3);
        assert!(close(p3.c, 150.0, 1e-12) && close(p3.d, 60.0, 1e-12));
        let s3 = derive_pentagon(&p3).unwrap();
        assert!(close(s3.angle(Corner::A), 90.0, 1e-12));
        let s100 = derive_pentagon(&default_params(100)).unwrap();
        assert!(s100.angles.iter().all(|&a| a > 0.0 && a < 180.0));
    }

    #[test]
    fn dihedral_params_formulas() {
        assert_eq!(dihedral_params(4), FeasibleParams::new(4, 135.0, 90.0));
        let p7 = dihedral_params(7);
        assert!(close(p7.c, 154.285_714_285_714_3, 1e-9) && p7.d == 90.0);
        assert_eq!(dihedral_params(3), FeasibleParams::new(3, 120.0, 90.0));
        assert!(p7.is_dihedral(1e-12));
        assert!(!default_params(7).is_dihedral(1e-6));
    }

    #[test]
    fn validation_reports_clauses() {
        let p = derive_pentagon(&FeasibleParams::new(5, 156.0, 78.0)).unwrap();
        assert!(validate_property1(&p, 1e-9).is_empty());

        let mut bent = p.clone();
        bent.angles[Corner::D.index()] += 1.0;
        let v = validate_property1(&bent, 1e-9);
        assert!(v.iter().any(|x| x.to_string().starts_with("D+E ≠ 180°")));

        let mut long = p.clone();
        long.sides[Corner::B.index()] = 1.1;
        let v: Vec<String> = validate_property1(&long, 1e-9)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert!(v.iter().any(|s| s.starts_with("|b| ≠ |c|")));
        assert!(v.iter().any(|s| s.starts_with("closure residual")));
    }

    #[test]
    fn infeasible_inputs_are_rejected() {
        assert!(matches!(
            derive_pentagon(&FeasibleParams::new(5, 100.0, 78.0)),
            Err(PentagonError::InfeasibleAngles {
                corner: Corner::A,
                ..
            })
        ));
        assert!(matches!(
            derive_pentagon(&FeasibleParams::new(2, 100.0, 78.0)),
            Err(PentagonError::OrderTooSmall(2))
        ));
        // steep D pushes the closure solution out of (0, 1)
        assert!(matches!(
            derive_pentagon(&FeasibleParams::new(3, 175.0, 5.0)),
            Err(PentagonError::InfeasibleLengths { .. })
        ));
    }

    #[test]
    fn realized_angles_and_perimeter() {
        let p = derive_pentagon(&FeasibleParams::new(5, 156.0, 78.0)).unwrap();
        let poly = realize(&p, &Isometry::IDENTITY);
        assert!(poly.signed_area() > 0.0);
        for (g, w) in poly.interior_angles_deg().iter().zip(p.angles) {
            assert!(close(*g, w, 1e-9), "{g} vs {w}");
        }
        assert!(close(poly.perimeter(), p.perimeter(), 1e-9));
        assert!(poly.vertex(1).approx_eq(Point::ORIGIN, 0.0));
        assert!(poly.vertex(0).approx_eq(Point::new(-1.0, 0.0), 1e-15));

        let r = Isometry::rotation(72.0);
        let rotated = realize(&p, &r);
        for (a, b) in rotated.vertices().iter().zip(poly.vertices()) {
            assert!(a.approx_eq(r.apply_point(*b), 1e-12));
        }
    }

    #[test]
    fn c_divisor_is_recognized() {
        let p = solve_pentagon(100.0, 90.0, 100.0).unwrap();
        assert_eq!(p.rotation_corner(1e-9), Some(Corner::C));
        assert!(validate_property1(&p, 1e-9).is_empty());
    }

    #[test]
    fn grid_is_valid_wherever_feasible() {
        for n in 3..=12u32 {
            let b = 360.0 / n as f64;
            for i in 1..=10 {
                for j in 1..=10 {
                    let c = (180.0 - b) + b * i as f64 / 11.0;
                    let d = 180.0 * j as f64 / 11.0;
                    let Ok(p) = derive_pentagon(&FeasibleParams::new(n, c, d)) else {
                        continue;
                    };
                    assert!(validate_property1(&p, 1e-9).is_empty(), "n={n} C={c} D={d}");
                    let a = p.angle(Corner::A);
                    assert!(close(a + c, 360.0 - b, 1e-9));
                    let poly = realize(&p, &Isometry::IDENTITY);
                    let ea = poly.edge(4).vector().normalized();
                    let ed = poly.edge(2).vector().normalized();
                    assert!(
                        ea.cross(ed).abs() <= 1e-9,
                        "n={n} c={c} d={d} {:?} {:?}",
                        p,
                        poly
                    );
                }
            }
        }
    }

    #[test]
    fn parameter_families_feasible_up_to_100() {
        for n in 3..=100 {
            assert!(derive_pentagon(&default_params(n)).is_ok(), "default n={n}");
            assert!(
                derive_pentagon(&dihedral_params(n)).is_ok(),
                "dihedral n={n}"
            );
        }
    }
}
