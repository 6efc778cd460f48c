use moment_atlas::fixtures::{cube_grid, hand_cubes};
use moment_atlas::planar_geometry::n_bound_nd;

// Bound for a spatial grid, once with hand-placed cubes and once with the
// automatic family.
fn main() -> moment_atlas::Result<()> {
    let complex = cube_grid(3, 1)?;
    let cubes = hand_cubes(&complex, 1);
    let hand = n_bound_nd(&complex, Some(&cubes))?;
    println!("hand cubes: N = {} (r = {}, L = {}, |T| = {})", hand.n_bar, hand.r_t, hand.l_t, hand.length_t);
    let auto = n_bound_nd(&complex, None)?;
    println!("auto cubes: N = {} (r = {:.4})", auto.n_bar, auto.r_t);
    Ok(())
}
