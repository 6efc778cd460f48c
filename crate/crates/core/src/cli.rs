//! Command-line front end. Every subcommand prints one JSON document on
//! stdout; failures print a JSON error object on stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::approx::{approximate, error_bound, sup_error, Builtin, C_OP};
use crate::center::{decide, DecideOptions, OdeSystem};
use crate::curve_model::{default_tol, trace_path, CurveComplex, SampledPath};
use crate::fixtures::{fixture, FixtureParams};
use crate::moments::{face_coefficients, moment_quadrature, moment_via_homology, specs_up_to_degree, vanishing_scan, MomentReport};
use crate::planar_geometry::{default_square_eps, extract_faces_with_eps, n_bound_2d, n_bound_nd, CubeDocument, CubeSpec};
use crate::projection::{expansion_sides, project, restricted_moment, sample_direction, MAX_EXPANSION_DEGREE};
use crate::report::{analyze, AnalyzeOptions, ComplexSummary};
use crate::topology::{betti1, cycle_basis, euler_classify, eulerian_trails, homology_coefficients, reduce_word};
use crate::{selftest, Error, Result};

/// Exit code for command-line usage errors.
pub const EXIT_USAGE: i32 = 64;
/// Exit code when a self-test check fails.
pub const EXIT_CHECK_FAILED: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "moment-atlas", version, about = "Moment vanishing and universal centers for closed paths on curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pipeline {
    Quad,
    Homology,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complex summary, faces, degree bound, moments and center verdict.
    Analyze {
        complex: PathBuf,
        paths: Vec<PathBuf>,
        #[arg(long)]
        cubes: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        assume_q_independent: bool,
    },
    /// Degree bound N (planar) or N̄ (cube family).
    Nbound {
        complex: PathBuf,
        #[arg(long)]
        cubes: Option<PathBuf>,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Homology class and contractibility of a closed path.
    Homology {
        complex: PathBuf,
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Eulerian classification with a witness trail.
    Euler { complex: PathBuf },
    /// Moments up to a total degree.
    Moments {
        complex: PathBuf,
        path: PathBuf,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = Pipeline::Both)]
        pipeline: Pipeline,
    },
    /// Searches the bound's index family for a nonvanishing moment.
    Scan {
        complex: PathBuf,
        path: PathBuf,
        /// `auto` or an integer.
        #[arg(long, default_value = "auto")]
        bound: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        cubes: Option<PathBuf>,
    },
    /// Random planar projection, restricted moments and the expansion identity.
    Project {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        degree: u32,
        /// Number of consecutive seeds to try.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Tensor Chebyshev approximation of a builtin function.
    Approx {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Universal-center verdict for a coefficient path.
    Center {
        complex: PathBuf,
        coefficients: PathBuf,
        #[arg(long)]
        assume_q_independent: bool,
        #[arg(long)]
        cubes: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emits a named fixture.
    Fixtures {
        name: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        segments: usize,
        /// Directory to write `complex.json`, `path*.json` and `cubes.json` into.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the fixture-based checks.
    Selftest,
}

/// Parses `args` (including the program name), runs the command and writes
/// its JSON to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = write!(err, "{e}");
            if code == 0 {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    configure_threads();
    match execute(cli.command) {
        Ok((value, code)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json"));
            code
        }
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "error": e.to_string(), "exit_code": e.exit_code() }));
            e.exit_code()
        }
    }
}

/// Honours `MOMENT_ATLAS_THREADS` for the global thread pool.
pub fn configure_threads() {
    if let Some(n) = std::env::var("MOMENT_ATLAS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<CurveComplex> {
    CurveComplex::from_json(&read(path)?)
}

fn load_path(path: &Path) -> Result<SampledPath> {
    SampledPath::from_json(&read(path)?)
}

fn load_cubes(path: Option<&PathBuf>) -> Result<Option<Vec<CubeSpec>>> {
    path.map(|p| CubeDocument::from_json(&read(p)?).map(|d| d.cubes)).transpose()
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn execute(command: Command) -> Result<(Value, i32)> {
    let value = match command {
        Command::Analyze {
            complex,
            paths,
            cubes,
            max_degree,
            eps,
            tol,
            seed,
            assume_q_independent,
        } => {
            let c = load_complex(&complex)?;
            let ps = paths.iter().map(|p| load_path(p)).collect::<Result<Vec<_>>>()?;
            let options = AnalyzeOptions {
                max_degree,
                eps,
                cubes: load_cubes(cubes.as_ref())?,
                center: DecideOptions {
                    assume_q_independent,
                    tol,
                    seed,
                    ..DecideOptions::default()
                },
            };
            to_value(&analyze(&c, &ps, &options)?)
        }
        Command::Nbound { complex, cubes, eps } => {
            let c = load_complex(&complex)?;
            nbound(&c, load_cubes(cubes.as_ref())?, eps)?
        }
        Command::Homology { complex, path, seed } => {
            let c = load_complex(&complex)?;
            let p = load_path(&path)?;
            homology(&c, &p, seed)?
        }
        Command::Euler { complex } => {
            let c = load_complex(&complex)?;
            to_value(&euler_classify(&c))
        }
        Command::Moments {
            complex,
            path,
            max_degree,
            pipeline,
        } => {
            let c = load_complex(&complex)?;
            let p = load_path(&path)?;
            to_value(&moments(&c, &p, max_degree, pipeline)?)
        }
        Command::Scan {
            complex,
            path,
            bound,
            tol,
            cubes,
        } => {
            let c = load_complex(&complex)?;
            let p = load_path(&path)?;
            trace_path(&p, &c, default_tol(c.default_snap_eps()))?;
            let b = match bound.as_str() {
                "auto" => auto_bound(&c, load_cubes(cubes.as_ref())?)?,
                s => s
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bound must be `auto` or an integer, got {s}")))?,
            };
            let b = u32::try_from(b).map_err(|_| Error::InvalidInput(format!("bound {b} is too large")))?;
            json!({ "bound": b, "result": to_value(&vanishing_scan(&p, b, tol)) })
        }
        Command::Project {
            path,
            seed,
            degree,
            seeds,
            tol,
        } => {
            let p = load_path(&path)?;
            projections(&p, seed, seeds.max(1), degree, tol)?
        }
        Command::Approx {
            dim,
            degree,
            function,
            resolution,
        } => approx(dim, degree, &function, resolution)?,
        Command::Center {
            complex,
            coefficients,
            assume_q_independent,
            cubes,
            tol,
            seed,
        } => {
            let c = load_complex(&complex)?;
            let sys = OdeSystem::new(load_path(&coefficients)?)?;
            let options = DecideOptions {
                assume_q_independent,
                cubes: load_cubes(cubes.as_ref())?,
                tol,
                seed,
                ..DecideOptions::default()
            };
            to_value(&decide(&sys, &c, &options)?)
        }
        Command::Fixtures {
            name,
            k,
            n,
            segments,
            out,
        } => fixtures(&name, FixtureParams { k, n, segments }, out.as_deref())?,
        Command::Selftest => {
            let results = selftest::run();
            let code = if results.iter().all(|r| r.passed) { 0 } else { EXIT_CHECK_FAILED };
            return Ok((to_value(&results), code));
        }
    };
    Ok((value, 0))
}

fn auto_bound(c: &CurveComplex, cubes: Option<Vec<CubeSpec>>) -> Result<u64> {
    if c.dim() == 2 {
        Ok(n_bound_2d(&extract_faces_with_eps(c, default_square_eps(c))?))
    } else {
        Ok(n_bound_nd(c, cubes.as_deref())?.n_bar)
    }
}

fn nbound(c: &CurveComplex, cubes: Option<Vec<CubeSpec>>, eps: Option<f64>) -> Result<Value> {
    if c.dim() == 2 && cubes.is_none() {
        let fs = extract_faces_with_eps(c, eps.unwrap_or_else(|| default_square_eps(c)))?;
        let faces: Vec<Value> = fs.faces.iter().map(|f| json!({ "A": f.area, "r": f.inscribed_side })).collect();
        Ok(json!({
            "m": fs.len(),
            "faces": faces,
            "d": fs.half_side,
            "N": n_bound_2d(&fs),
        }))
    } else {
        let b = n_bound_nd(c, cubes.as_deref())?;
        Ok(json!({
            "m": betti1(c),
            "N": b.n_bar,
            "r": b.r_t,
            "l": b.l_t,
            "L": b.length_t,
            "d": b.half_side,
            "auto": b.auto,
            "cubes": to_value(&b.family.specs()),
        }))
    }
}

fn homology(c: &CurveComplex, p: &SampledPath, seed: u64) -> Result<Value> {
    let word = trace_path(p, c, default_tol(c.default_snap_eps()))?;
    let basis = cycle_basis(c, seed);
    let coefficients = homology_coefficients(&word, &basis)?;
    let reduced = reduce_word(&word, &basis)?;
    let trails = eulerian_trails(c, crate::center::TRAIL_CAP);
    let flags = crate::center::classify_conditions(&word, &basis, &trails)?;
    let euler = euler_classify(c);
    Ok(json!({
        "m": basis.rank(),
        "coefficients": to_value(&coefficients),
        "homologically_trivial": coefficients.is_zero(),
        "contractible": reduced.is_empty(),
        "reduced_word": to_value(&reduced),
        "covers_eulerian_trail": flags.covers,
        "euler_class": euler.name(),
        "word": to_value(&word),
    }))
}

fn moments(c: &CurveComplex, p: &SampledPath, max_degree: u32, pipeline: Pipeline) -> Result<Vec<MomentReport>> {
    trace_path(p, c, default_tol(c.default_snap_eps()))?;
    let homology = if pipeline == Pipeline::Quad {
        None
    } else if c.dim() == 2 && p.is_closed() {
        let fs = extract_faces_with_eps(c, default_square_eps(c))?;
        let coeffs = face_coefficients(p, &fs)?;
        Some((fs, coeffs))
    } else if pipeline == Pipeline::Homology {
        return Err(Error::InvalidInput("the homology pipeline needs a closed planar path".into()));
    } else {
        None
    };
    specs_up_to_degree(p.dim(), max_degree)
        .into_iter()
        .map(|spec| {
            let h = homology
                .as_ref()
                .map(|(fs, coeffs)| moment_via_homology(fs, coeffs, &spec))
                .transpose()?;
            let q = if pipeline == Pipeline::Homology {
                h.unwrap_or(0.0)
            } else {
                moment_quadrature(p, &spec)?
            };
            let mut r = MomentReport::new(spec, q, h);
            if pipeline == Pipeline::Homology {
                r.agreement = None;
            }
            Ok(r)
        })
        .collect()
}

fn projections(p: &SampledPath, seed: u64, seeds: u64, degree: u32, tol: f64) -> Result<Value> {
    use rayon::prelude::*;
    let per_seed: Vec<Result<Value>> = (seed..seed + seeds)
        .into_par_iter()
        .map(|s| {
            let v = sample_direction(s, p.dim())?;
            let pv = project(p, &v)?;
            let mut restricted = Vec::new();
            let mut expansion = Vec::new();
            for d in 0..=degree {
                let (first, second) = restricted_moment(&pv, d)?;
                restricted.push(json!({ "d": d, "first": first, "second": second }));
                if d as usize <= MAX_EXPANSION_DEGREE {
                    let (lhs, rhs) = expansion_sides(p, &v, d as usize)?;
                    let ok = (lhs - rhs).abs() <= tol * (1.0 + lhs.abs());
                    expansion.push(json!({ "d": d, "lhs": lhs, "rhs": rhs, "ok": ok }));
                }
            }
            Ok(json!({ "seed": s, "pair": to_value(&v), "restricted": restricted, "expansion": expansion }))
        })
        .collect();
    Ok(Value::Array(per_seed.into_iter().collect::<Result<Vec<_>>>()?))
}

fn approx(dim: usize, degree: usize, function: &str, resolution: Option<usize>) -> Result<Value> {
    if dim == 0 || degree == 0 {
        return Err(Error::InvalidInput("dimension and degree must be positive".into()));
    }
    let names: Vec<&str> = Builtin::ALL.iter().map(|b| b.name()).collect();
    let f = Builtin::from_name(function)
        .ok_or_else(|| Error::InvalidInput(format!("unknown function {function}; expected one of {}", names.join(", "))))?;
    let resolution = resolution.unwrap_or(match dim {
        1 => 10_000,
        2 => 200,
        _ => 24,
    });
    let p = approximate(|x| f.eval(x), dim, degree);
    let measured = sup_error(|x| f.eval(x), &p, resolution);
    Ok(json!({
        "n": dim,
        "k": degree,
        "fn": function,
        "coefficients": p.coefficients,
        "measured_error": measured,
        "bound": error_bound(dim, degree, f.lipschitz()),
        "c_op": C_OP,
    }))
}

fn fixtures(name: &str, params: FixtureParams, out: Option<&Path>) -> Result<Value> {
    let f = fixture(name, &params)?;
    let summary = to_value(&ComplexSummary::of(&f.complex));
    let complex_json = f.complex.to_json();
    let path_jsons: Vec<String> = f.paths.iter().map(|p| p.to_json()).collect();
    let cubes_json = f.cubes.as_ref().map(|c| c.to_json());
    match out {
        Some(dir) => {
            let write = |file: &str, body: &str| -> Result<String> {
                let target = dir.join(file);
                std::fs::write(&target, body).map_err(|e| Error::Io(format!("{}: {e}", target.display())))?;
                Ok(target.display().to_string())
            };
            std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
            let mut files = vec![write("complex.json", &complex_json)?];
            for (i, body) in path_jsons.iter().enumerate() {
                let file = if i == 0 { "path.json".to_string() } else { format!("path_{i}.json") };
                files.push(write(&file, body)?);
            }
            if let Some(body) = &cubes_json {
                files.push(write("cubes.json", body)?);
            }
            Ok(json!({ "name": name, "summary": summary, "files": files }))
        }
        None => {
            let parse = |s: &str| serde_json::from_str::<Value>(s).expect("emitted json parses");
            Ok(json!({
                "name": name,
                "summary": summary,
                "complex": parse(&complex_json),
                "paths": path_jsons.iter().map(|s| parse(s)).collect::<Vec<_>>(),
                "cubes": cubes_json.as_deref().map(parse),
            }))
        }
    }
}
