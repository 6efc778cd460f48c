//! Center verdicts for the figure-eight loops and a tree.

use moment_atlas::center::{decide, DecideOptions, OdeSystem};
use moment_atlas::fixtures::{fixture, tree, FixtureParams};

fn main() -> moment_atlas::Result<()> {
    let eight = fixture("figure_eight", &FixtureParams::default())?;
    let options = DecideOptions::default();
    for path in &eight.paths {
        let verdict = decide(&OdeSystem::new(path.clone())?, &eight.complex, &options)?;
        println!("{:?} by {:?}: {}", verdict.decision, verdict.rule, verdict.note);
    }
    let (complex, path) = tree()?;
    let verdict = decide(&OdeSystem::new(path)?, &complex, &options)?;
    println!("tree: {:?} by {:?}", verdict.decision, verdict.rule);
    Ok(())
}
