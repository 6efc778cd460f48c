//! Planar degree bound for the unit grid complexes.

use moment_atlas::fixtures::grid;
use moment_atlas::planar_geometry::{extract_faces, n_bound_2d};

fn main() -> moment_atlas::Result<()> {
    for k in 1..=4 {
        let complex = grid(k)?;
        let faces = extract_faces(&complex)?;
        println!(
            "k = {k}: {} faces, max area {:.4}, min side {:.4}, half side {:.2}, N = {}",
            faces.len(),
            faces.max_area,
            faces.min_side,
            faces.half_side,
            n_bound_2d(&faces)
        );
    }
    Ok(())
}
