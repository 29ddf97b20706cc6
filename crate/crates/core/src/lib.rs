//! Monohedral convex pentagon tilings with prescribed rotational symmetry.
//!
//! Pentagons whose `B` divides 360° are glued into centrally symmetric
//! hexagons, the hexagons fill a wedge of angle `B`, and `n = 360/B` rotated
//! wedges cover the plane around the origin. Depending on `C` and `D` the
//! result has symmetry group `C_n` or `D_n`.

pub mod analysis;
pub mod assembly;
pub mod cli;
pub mod geom;
pub mod io;
pub mod pentagon;

pub use analysis::{spiral_arms, symmetry_detect, verify, SymmetryGroup, VerificationReport};
pub use assembly::{assemble_patch, houses_patch, HousesKind, Level, Patch};
pub use pentagon::{
    default_params, derive_pentagon, dihedral_params, FeasibleParams, PentagonSpec,
};
