//! Quadrature against homology + Green's theorem on the figure eight.

use moment_atlas::fixtures::figure_eight;
use moment_atlas::fixtures::figure_eight_loops;
use moment_atlas::moments::{face_coefficients, moment_quadrature, moment_via_homology, specs_up_to_degree};
use moment_atlas::planar_geometry::extract_faces;

fn main() -> moment_atlas::Result<()> {
    let complex = figure_eight()?;
    let faces = extract_faces(&complex)?;
    let [a, _] = figure_eight_loops();
    let coeffs = face_coefficients(&a, &faces)?;
    println!("face coefficients {coeffs:?}");
    for spec in specs_up_to_degree(2, 3) {
        let q = moment_quadrature(&a, &spec)?;
        let h = moment_via_homology(&faces, &coeffs, &spec)?;
        println!("{spec:<16} quadrature {q:>12.8} homology {h:>12.8}");
    }
    Ok(())
}
