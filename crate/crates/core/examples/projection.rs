//! Planar projections of a spatial loop and the multinomial expansion check.

use moment_atlas::curve_model::SampledPath;
use moment_atlas::projection::{expansion_sides, project, restricted_moment, sample_direction};

fn main() -> moment_atlas::Result<()> {
    let corners = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [0.0, 0.0, 0.0]];
    let samples = corners.iter().enumerate().map(|(i, c)| (i as f64, c.to_vec())).collect();
    let path = SampledPath::new(3, samples, true)?;
    for seed in 0..3 {
        let v = sample_direction(seed, 3)?;
        let planar = project(&path, &v)?;
        let (m1, m2) = restricted_moment(&planar, 3)?;
        let (lhs, rhs) = expansion_sides(&path, &v, 3)?;
        println!("seed {seed}: planar moments ({m1:.6}, {m2:.6}), expansion {lhs:.6e} vs {rhs:.6e}");
    }
    Ok(())
}
