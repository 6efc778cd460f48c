//! Universal centers of `dv/dt = Σ_j f_j′(t) v^{j+1}` for closed
//! piecewise-linear coefficient paths `F = (f_1, …, f_n)` with `F(a) = 0`.
//!
//! [`decide`] combines the topology of the curve carrying `F` with moment
//! vanishing up to the degree bounds; [`first_return_map`] integrates the
//! equation numerically so that verdicts can be cross-checked.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve_model::{default_tol, trace_path, CurveComplex, EdgeWord, SampledPath};
use crate::moments::{moment_quadrature, vanishing_gate, vanishing_scan, MomentSpec, ScanResult};
use crate::planar_geometry::{extract_faces, n_bound_2d, n_bound_nd, q_independence_check, CubeSpec, QRelation};
use crate::topology::{betti1, covers_trail, cycle_basis, eulerian_trails, homology_coefficients, reduce_word, CycleBasis, Trail};
use crate::{Error, Result};

/// Residual gate for the first-return map.
pub const RESIDUAL_GATE: f64 = 1e-7;
/// Integration steps per unit of parameter length.
pub const DEFAULT_STEPS_PER_UNIT: usize = 1 << 14;
/// Largest number of Eulerian trails tried when checking covering.
pub const TRAIL_CAP: usize = 4096;
/// Initial values probed by default.
pub const DEFAULT_V0: [f64; 4] = [-0.05, -0.01, 0.01, 0.05];

/// Coefficient path of the equation: closed and starting at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeSystem {
    path: SampledPath,
}

impl OdeSystem {
    pub fn new(path: SampledPath) -> Result<Self> {
        if !path.is_closed() {
            return Err(Error::NotClosed);
        }
        let scale = path.max_abs_coordinate().max(1.0);
        if path.start().iter().any(|x| x.abs() > 1e-12 * scale) {
            return Err(Error::InvalidInput("coefficient path must start at the origin".into()));
        }
        Ok(OdeSystem { path })
    }

    pub fn path(&self) -> &SampledPath {
        &self.path
    }

    pub fn dim(&self) -> usize {
        self.path.dim()
    }
}

/// `v(b)` for `v(a) = v0`, by classical Runge–Kutta with a fixed number of
/// steps per unit parameter on every segment, where the derivatives `f_j′`
/// are constant. Accepts any path, closed or not.
pub fn first_return_map(path: &SampledPath, v0: f64, steps_per_unit: usize) -> Result<f64> {
    let guard = 1e8 * v0.abs().max(1.0);
    let mut v = v0;
    for k in 0..path.len() - 1 {
        let dt = path.times()[k + 1] - path.times()[k];
        let (a, b) = (path.point(k), path.point(k + 1));
        let c: Vec<f64> = a.iter().zip(b).map(|(x, y)| (y - x) / dt).collect();
        if c.iter().all(|&x| x == 0.0) {
            continue;
        }
        let rhs = |v: f64| {
            // Σ c_j v^{j+1} by Horner in v
            v * c.iter().rev().fold(0.0, |acc, &cj| acc * v + cj) * v
        };
        let steps = ((dt * steps_per_unit as f64).ceil() as usize).max(1);
        let h = dt / steps as f64;
        for _ in 0..steps {
            let k1 = rhs(v);
            let k2 = rhs(v + 0.5 * h * k1);
            let k3 = rhs(v + 0.5 * h * k2);
            let k4 = rhs(v + h * k3);
            v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if !v.is_finite() || v.abs() > guard {
                return Err(Error::Blowup(v0));
            }
        }
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    /// Initial value requested.
    pub requested: f64,
    /// Initial value actually used, after halving on blowup.
    pub v0: f64,
    pub residual: f64,
}

/// `|v(b) − v0|` for each initial value, halving an initial value (up to 30
/// times) whenever the solution blows up. If every attempt blows up the
/// residual is reported as `f64::MAX`.
pub fn residual_sweep(path: &SampledPath, v0s: &[f64], steps_per_unit: usize) -> Vec<Residual> {
    v0s.par_iter()
        .map(|&requested| {
            let mut v0 = requested;
            for _ in 0..30 {
                match first_return_map(path, v0, steps_per_unit) {
                    Ok(v) => {
                        return Residual {
                            requested,
                            v0,
                            residual: (v - v0).abs(),
                        }
                    }
                    Err(_) => v0 /= 2.0,
                }
            }
            Residual {
                requested,
                v0,
                residual: f64::MAX,
            }
        })
        .collect()
}

/// `3∫ f_1 f_2′ + 2∫ f_2 f_1′`. On a closed path the second integral is the
/// negative of the first, so the value equals `∫ f_1 f_2′`.
pub fn fourth_coefficient(path: &SampledPath) -> Result<f64> {
    if path.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: path.dim(),
        });
    }
    let m1 = moment_quadrature(path, &MomentSpec::new(vec![1, 0], 2)?)?;
    let m2 = moment_quadrature(path, &MomentSpec::new(vec![0, 1], 1)?)?;
    Ok(3.0 * m1 + 2.0 * m2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionFlags {
    /// The word is null-homotopic (reported from the homology class when the
    /// word covers an Eulerian trail).
    pub contractible: bool,
    /// The word is zero in `H₁`.
    pub homologically_trivial: bool,
    pub covers: bool,
    /// Contractibility from free reduction alone.
    pub reduction_contractible: bool,
    /// False when covering makes the two notions coincide but they differ.
    pub consistent: bool,
}

/// Flags for a closed word; `covers` holds when the word covers any of the
/// given Eulerian trails.
pub fn classify_conditions(word: &EdgeWord, basis: &CycleBasis, trails: &[Trail]) -> Result<ConditionFlags> {
    let homologically_trivial = homology_coefficients(word, basis)?.is_zero();
    let reduction_contractible = reduce_word(word, basis)?.is_empty();
    let covers = word.is_empty() || trails.iter().any(|t| covers_trail(word, t));
    let contractible = if covers { homologically_trivial } else { reduction_contractible };
    Ok(ConditionFlags {
        contractible,
        homologically_trivial,
        covers,
        reduction_contractible,
        consistent: !covers || homologically_trivial == reduction_contractible,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    UniversalCenter,
    NotCenter,
    Undecided,
}

/// Which criterion produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// The curve contains no circle.
    AcyclicCurve,
    /// Planar curve with ℚ-independent face areas: only `∫ f_1 f_2′` is tested.
    AreaMoment,
    /// Planar moment family up to `N_Γ`.
    PlanarBound,
    /// Moment family up to `N̄_T` from a cube family.
    CubeBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub spec: MomentSpec,
    pub value: f64,
    pub gate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterVerdict {
    pub decision: Decision,
    pub rule: Rule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    /// Largest bound actually scanned before a witness turned up.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scanned_bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<ConditionFlags>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub area_relation: Option<QRelation>,
    pub residuals: Vec<Residual>,
    pub residual_gate: f64,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct DecideOptions {
    pub assume_q_independent: bool,
    pub cubes: Option<Vec<CubeSpec>>,
    pub tol: f64,
    pub seed: u64,
    pub precision_bits: u32,
    pub residual_v0: Vec<f64>,
    pub steps_per_unit: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            assume_q_independent: false,
            cubes: None,
            tol: 1e-9,
            seed: 0,
            precision_bits: 40,
            residual_v0: DEFAULT_V0.to_vec(),
            steps_per_unit: DEFAULT_STEPS_PER_UNIT,
        }
    }
}

enum Outcome {
    AllZero,
    Found(Witness),
}

/// Scans with bounds 1, 2, 4, … up to `bound`, stopping at the first
/// witness; a witness for a smaller bound belongs to the full family.
fn staged_scan(path: &SampledPath, bound: u64, tol: f64) -> (Outcome, u64) {
    let mut b = 1u64.min(bound);
    loop {
        if let ScanResult::Witness { spec, value, gate, .. } = vanishing_scan(path, b as u32, tol) {
            return (Outcome::Found(Witness { spec, value, gate }), b);
        }
        if b >= bound {
            return (Outcome::AllZero, b);
        }
        b = (2 * b).min(bound);
    }
}

pub fn decide(sys: &OdeSystem, complex: &CurveComplex, options: &DecideOptions) -> Result<CenterVerdict> {
    let path = sys.path();
    if path.dim() != complex.dim() {
        return Err(Error::DimensionMismatch {
            expected: complex.dim(),
            got: path.dim(),
        });
    }
    let word = trace_path(path, complex, default_tol(complex.default_snap_eps()))?;
    let residuals = if options.residual_v0.is_empty() {
        Vec::new()
    } else {
        residual_sweep(path, &options.residual_v0, options.steps_per_unit)
    };
    let mut verdict = CenterVerdict {
        decision: Decision::UniversalCenter,
        rule: Rule::AcyclicCurve,
        bound: None,
        scanned_bound: None,
        witness: None,
        flags: None,
        area_relation: None,
        residuals,
        residual_gate: RESIDUAL_GATE,
        note: String::new(),
    };
    if betti1(complex) == 0 {
        verdict.note = "the curve contains no circle, so every closed path on it is contractible".into();
        return Ok(verdict);
    }
    let basis = cycle_basis(complex, options.seed);
    let trails = eulerian_trails(complex, TRAIL_CAP);
    let flags = classify_conditions(&word, &basis, &trails)?;
    verdict.flags = Some(flags);

    let outcome = if complex.dim() == 2 {
        let faces = extract_faces(complex)?;
        let relation = (!options.assume_q_independent).then(|| q_independence_check(&faces.areas(), options.precision_bits));
        let independent = options.assume_q_independent || relation.as_ref().is_some_and(|r| r.is_independent());
        verdict.area_relation = relation;
        if independent && flags.covers {
            verdict.rule = Rule::AreaMoment;
            let spec = MomentSpec::new(vec![1, 0], 2)?;
            let value = moment_quadrature(path, &spec)?;
            let gate = vanishing_gate(path, options.tol, 2);
            if value.abs() > gate {
                Outcome::Found(Witness { spec, value, gate })
            } else {
                Outcome::AllZero
            }
        } else {
            verdict.rule = Rule::PlanarBound;
            let bound = n_bound_2d(&faces);
            verdict.bound = Some(bound);
            scan_or_shortcut(path, &word, &basis, bound, options.tol, &mut verdict)?
        }
    } else {
        verdict.rule = Rule::CubeBound;
        let nd = n_bound_nd(complex, options.cubes.as_deref())?;
        verdict.bound = Some(nd.n_bar);
        scan_or_shortcut(path, &word, &basis, nd.n_bar, options.tol, &mut verdict)?
    };

    match outcome {
        Outcome::AllZero => {
            if flags.covers {
                verdict.decision = Decision::UniversalCenter;
                verdict.note = "moments vanish and the path covers an Eulerian trail".into();
            } else if flags.reduction_contractible {
                verdict.decision = Decision::UniversalCenter;
                verdict.note = "moments vanish and the path is contractible".into();
            } else {
                verdict.decision = Decision::Undecided;
                verdict.note = "homologically trivial, homotopy undecided: the path does not cover an Eulerian trail".into();
            }
        }
        Outcome::Found(w) => {
            if flags.covers {
                verdict.decision = Decision::NotCenter;
                verdict.note = "nonvanishing moment and the path covers an Eulerian trail".into();
            } else {
                verdict.decision = Decision::Undecided;
                verdict.note = "nonvanishing moment, but the path does not cover an Eulerian trail".into();
            }
            verdict.witness = Some(w);
        }
    }
    Ok(verdict)
}

/// A word that is zero in homology traverses every edge with net multiplicity
/// zero, so every line integral along it vanishes and no scan is needed.
fn scan_or_shortcut(
    path: &SampledPath,
    word: &EdgeWord,
    basis: &CycleBasis,
    bound: u64,
    tol: f64,
    verdict: &mut CenterVerdict,
) -> Result<Outcome> {
    if homology_coefficients(word, basis)?.is_zero() {
        verdict.scanned_bound = Some(0);
        return Ok(Outcome::AllZero);
    }
    let (outcome, scanned) = staged_scan(path, bound, tol);
    verdict.scanned_bound = Some(scanned);
    Ok(outcome)
}
