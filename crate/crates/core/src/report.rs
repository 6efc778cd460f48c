//! The combined JSON report produced by `analyze`.

use serde::{Deserialize, Serialize};

use crate::center::{decide, CenterVerdict, DecideOptions, OdeSystem};
use crate::curve_model::{CurveComplex, SampledPath};
use crate::moments::{face_coefficients, moment_quadrature, moment_via_homology, specs_up_to_degree, MomentReport};
use crate::planar_geometry::{extract_faces_with_eps, default_square_eps, n_bound_2d, n_bound_nd, CubeSpec};
use crate::topology::{betti1, euler_classify};
use crate::{Result, FORMAT_TAG};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub dim: usize,
    pub vertices: usize,
    pub edges: usize,
    pub betti1: usize,
    pub euler_class: String,
}

impl ComplexSummary {
    pub fn of(complex: &CurveComplex) -> Self {
        ComplexSummary {
            dim: complex.dim(),
            vertices: complex.vertex_count(),
            edges: complex.edge_count(),
            betti1: betti1(complex),
            euler_class: euler_classify(complex).name().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceSummary {
    pub area: f64,
    /// Certified lower bound for the inscribed square side.
    pub r: f64,
    pub representative: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundSummary {
    Planar {
        n: u64,
        max_area: f64,
        min_side: f64,
        half_side: f64,
    },
    Cubes {
        n: u64,
        r: f64,
        l: f64,
        length: f64,
        half_side: f64,
        auto: bool,
    },
}

impl BoundSummary {
    pub fn value(&self) -> u64 {
        match self {
            BoundSummary::Planar { n, .. } | BoundSummary::Cubes { n, .. } => *n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathMoments {
    pub path: usize,
    pub closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face_coefficients: Option<Vec<i64>>,
    pub moments: Vec<MomentReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub format: String,
    pub complex: ComplexSummary,
    pub faces: Vec<FaceSummary>,
    pub bound: BoundSummary,
    pub paths: Vec<PathMoments>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<CenterVerdict>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: AnalysisReport = serde_json::from_str(s)?;
        crate::curve_model::check_format(&r.format)?;
        Ok(r)
    }
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub max_degree: u32,
    pub eps: Option<f64>,
    pub cubes: Option<Vec<CubeSpec>>,
    pub center: DecideOptions,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            max_degree: 4,
            eps: None,
            cubes: None,
            center: DecideOptions::default(),
        }
    }
}

/// Summary, faces, bound and moments of every path; the center verdict is
/// computed for the first path when it is closed and starts at the origin.
pub fn analyze(complex: &CurveComplex, paths: &[SampledPath], options: &AnalyzeOptions) -> Result<AnalysisReport> {
    let summary = ComplexSummary::of(complex);
    let (faces, bound) = if complex.dim() == 2 {
        let eps = options.eps.unwrap_or_else(|| default_square_eps(complex));
        let fs = extract_faces_with_eps(complex, eps)?;
        let bound = BoundSummary::Planar {
            n: n_bound_2d(&fs),
            max_area: fs.max_area,
            min_side: fs.min_side,
            half_side: fs.half_side,
        };
        (Some(fs), bound)
    } else {
        let nd = n_bound_nd(complex, options.cubes.as_deref())?;
        let bound = BoundSummary::Cubes {
            n: nd.n_bar,
            r: nd.r_t,
            l: nd.l_t,
            length: nd.length_t,
            half_side: nd.half_side,
            auto: nd.auto,
        };
        (None, bound)
    };
    let mut reports = Vec::with_capacity(paths.len());
    for (index, path) in paths.iter().enumerate() {
        let coeffs = match &faces {
            Some(fs) if path.is_closed() => Some(face_coefficients(path, fs)?),
            _ => None,
        };
        let mut moments = Vec::new();
        for spec in specs_up_to_degree(path.dim(), options.max_degree) {
            let q = moment_quadrature(path, &spec)?;
            let h = match (&faces, &coeffs) {
                (Some(fs), Some(c)) => Some(moment_via_homology(fs, c, &spec)?),
                _ => None,
            };
            moments.push(MomentReport::new(spec, q, h));
        }
        reports.push(PathMoments {
            path: index,
            closed: path.is_closed(),
            face_coefficients: coeffs,
            moments,
        });
    }
    let center = match paths.first().map(|p| OdeSystem::new(p.clone())) {
        Some(Ok(sys)) => {
            let mut opts = options.center.clone();
            if opts.cubes.is_none() {
                opts.cubes = options.cubes.clone();
            }
            Some(decide(&sys, complex, &opts)?)
        }
        _ => None,
    };
    Ok(AnalysisReport {
        format: FORMAT_TAG.to_string(),
        complex: summary,
        faces: faces
            .map(|fs| {
                fs.faces
                    .iter()
                    .map(|f| FaceSummary {
                        area: f.area,
                        r: f.inscribed_side,
                        representative: f.representative,
                    })
                    .collect()
            })
            .unwrap_or_default(),
        bound,
        paths: reports,
        center,
    })
}
