//! Faces of planar arrangements, inscribed squares, winding numbers, the
//! degree bounds `N_Γ` (plane) and `N̄_T` (space) and ℚ-independence checks.

mod cubes;
mod faces;
mod inscribed;
mod relation;
mod winding;

pub use cubes::{auto_family, linf_distance_nd, n_bound_nd, validate_family, Cube, CubeDocument, CubeFamily, CubeSpec, NdBound};
pub use faces::{default_square_eps, extract_faces, extract_faces_with_eps, locate_face, n_bound_2d, Face, FaceSet};
pub use inscribed::{inscribed_square, linf_depth, linf_distance_to_segment, InscribedSquare};
pub use relation::{q_independence_check, q_independence_check_with_height, QRelation, DEFAULT_HEIGHT};
pub use winding::{ring_winding, winding_number};

use crate::Result;

/// Certified lower bound for the inscribed square side of a face, within
/// `eps`.
pub fn inscribed_square_side(face: &Face, eps: f64) -> Result<f64> {
    inscribed_square(&face.boundary, eps).map(|s| s.side)
}
