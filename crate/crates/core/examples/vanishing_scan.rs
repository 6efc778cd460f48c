use moment_atlas::fixtures::{commutator_path, figure_eight_loops, universal_center_abel};
use moment_atlas::moments::vanishing_scan;

fn main() -> moment_atlas::Result<()> {
    let [a, _] = figure_eight_loops();
    let cases = [("loop a", a), ("commutator", commutator_path()?), ("(x, x^2) on a circle", universal_center_abel(64)?)];
    for (name, path) in cases {
        let result = vanishing_scan(&path, 6, 1e-9);
        println!("{name}: {}", serde_json::to_string(&result).unwrap());
    }
    Ok(())
}
