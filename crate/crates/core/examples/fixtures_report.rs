use moment_atlas::fixtures::{fixture, FixtureParams, NAMES};
use moment_atlas::report::{analyze, AnalyzeOptions};

// Full analysis report for every fixture, summarised one line each.
fn main() -> moment_atlas::Result<()> {
    let params = FixtureParams::default();
    for name in NAMES {
        let fx = fixture(name, &params)?;
        let options = AnalyzeOptions {
            cubes: fx.cubes.as_ref().map(|c| c.cubes.clone()),
            ..AnalyzeOptions::default()
        };
        match analyze(&fx.complex, &fx.paths, &options) {
            Ok(report) => println!(
                "{name}: V = {}, E = {}, b1 = {}, N = {}",
                report.complex.vertices,
                report.complex.edges,
                report.complex.betti1,
                report.bound.value()
            ),
            Err(e) => println!("{name}: {e}"),
        }
    }
    Ok(())
}
