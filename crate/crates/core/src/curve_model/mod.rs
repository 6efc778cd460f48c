//! Sampled paths, the curve complex of their images, and edge words.

mod complex;
pub mod geom;
mod path;
mod word;

pub use complex::{bfs_parents, build_complex, ComplexDocument, CurveComplex, Edge, EdgeSegment};
pub(crate) use path::check_format;
pub use path::{PathDocument, SampledPath};
pub use word::{realize, trace_path, EdgeWord, Letter};

/// Default tracing tolerance for a given snapping tolerance.
pub fn default_tol(snap_eps: f64) -> f64 {
    10.0 * snap_eps
}

/// Default snapping tolerance for a set of paths: `1e-9 ×` the diameter of
/// their joint bounding box.
pub fn default_snap_eps(paths: &[SampledPath]) -> f64 {
    let dim = paths.first().map(|p| p.dim()).unwrap_or(1);
    let (lo, hi) = geom::bounding_box(dim, paths.iter().flat_map(|p| p.points().iter().map(|q| q.as_slice())));
    complex::default_snap_eps_for(geom::diameter(&lo, &hi))
}
