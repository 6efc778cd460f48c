use moment_atlas::fixtures::{figure_eight, grid, tree};
use moment_atlas::topology::{euler_classify, eulerian_trails};

fn main() -> moment_atlas::Result<()> {
    let complexes = [("figure_eight", figure_eight()?), ("grid(2)", grid(2)?), ("tree", tree()?.0)];
    for (name, complex) in complexes {
        let class = euler_classify(&complex);
        let trails = eulerian_trails(&complex, 4096);
        println!("{name}: {} with {} trails from the start vertex", class.name(), trails.len());
    }
    Ok(())
}
