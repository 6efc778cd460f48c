//! Homology coordinates and free reduction of edge words on the figure eight.

use moment_atlas::curve_model::trace_path;
use moment_atlas::fixtures::{commutator_path, figure_eight, figure_eight_loops};
use moment_atlas::topology::{betti1, cycle_basis, homology_coefficients, reduce_word};

fn main() -> moment_atlas::Result<()> {
    let complex = figure_eight()?;
    let basis = cycle_basis(&complex, 0);
    println!("b1 = {}, chords {:?}", betti1(&complex), basis.chords);
    let [a, b] = figure_eight_loops();
    for (name, path) in [("a", a), ("b", b), ("aba^-1b^-1", commutator_path()?)] {
        let word = trace_path(&path, &complex, 1e-9)?;
        let h = homology_coefficients(&word, &basis)?;
        let reduced = reduce_word(&word, &basis)?;
        println!("{name}: {} letters, homology {:?}, reduced length {}", word.0.len(), h.0, reduced.len());
    }
    Ok(())
}
