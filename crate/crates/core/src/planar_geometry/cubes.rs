//! Disjoint cube families around the arcs of a complex in `ℝⁿ` and the
//! degree bound they certify.

use serde::{Deserialize, Serialize};

use crate::curve_model::{geom, CurveComplex};
use crate::topology::{betti1, bridges};
use crate::{Error, Result, FORMAT_TAG};

/// A user-specified cube: open ℓ∞ ball of the given radius (half side).
/// `axis` is 1-based. `l`, when present, is a claimed lower bound for the
/// projected length and is accepted when `0 < l ≤` the measured value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubeSpec {
    pub center: Vec<f64>,
    pub radius: f64,
    pub axis: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubeDocument {
    pub format: String,
    pub cubes: Vec<CubeSpec>,
}

impl CubeDocument {
    pub fn new(cubes: Vec<CubeSpec>) -> Self {
        CubeDocument {
            format: FORMAT_TAG.to_string(),
            cubes,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: CubeDocument = serde_json::from_str(s)?;
        crate::curve_model::check_format(&doc.format)?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cube document serializes")
    }
}

/// A validated cube attached to an edge of the complex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cube {
    pub edge: usize,
    pub center: Vec<f64>,
    pub radius: f64,
    /// 1-based coordinate axis.
    pub axis: usize,
    /// Length of the projection of the edge inside the half-size cube.
    pub measured_l: f64,
    /// Value used in the bound (the claimed lower bound, else `measured_l`).
    pub l: f64,
    /// ℓ¹ length of the edge.
    pub length_l1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubeFamily {
    pub cubes: Vec<Cube>,
}

impl CubeFamily {
    pub fn specs(&self) -> Vec<CubeSpec> {
        self.cubes
            .iter()
            .map(|c| CubeSpec {
                center: c.center.clone(),
                radius: c.radius,
                axis: c.axis,
                l: Some(c.l),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NdBound {
    pub n_bar: u64,
    pub r_t: f64,
    pub l_t: f64,
    pub length_t: f64,
    pub half_side: f64,
    pub family: CubeFamily,
    pub auto: bool,
}

/// Open sub-interval of `[0, 1]` on which `a + s(b − a)` lies in the open
/// cube of the given radius.
fn cube_interval(a: &[f64], b: &[f64], c: &[f64], r: f64) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for k in 0..a.len() {
        let d = b[k] - a[k];
        let off = a[k] - c[k];
        if d == 0.0 {
            if off.abs() >= r {
                return None;
            }
        } else {
            let s0 = (-r - off) / d;
            let s1 = (r - off) / d;
            lo = lo.max(s0.min(s1));
            hi = hi.min(s0.max(s1));
        }
    }
    (hi - lo > 1e-14).then_some((lo, hi))
}

/// ℓ∞ distance from `p` to the segment `a..b` in any dimension.
pub fn linf_distance_nd(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let n = p.len();
    let u: Vec<f64> = (0..n).map(|k| a[k] - p[k]).collect();
    let d: Vec<f64> = (0..n).map(|k| b[k] - a[k]).collect();
    let f = |s: f64| (0..n).map(|k| (u[k] + s * d[k]).abs()).fold(0.0, f64::max);
    let mut best = f(0.0).min(f(1.0));
    let mut consider = |num: f64, den: f64| {
        if den != 0.0 {
            let s = num / den;
            if (0.0..=1.0).contains(&s) {
                best = best.min(f(s));
            }
        }
    };
    for i in 0..n {
        consider(-u[i], d[i]);
        for j in i + 1..n {
            consider(-(u[i] - u[j]), d[i] - d[j]);
            consider(-(u[i] + u[j]), d[i] + d[j]);
        }
    }
    best
}

fn violation(clause: &str, i: usize, j: Option<usize>) -> Error {
    Error::ConditionStarViolated {
        clause: clause.to_string(),
        i,
        j,
    }
}

/// Checks one cube against the complex and returns the measured length of
/// the projection of its edge inside the half-size cube.
fn check_cube(complex: &CurveComplex, idx: usize, edge: usize, center: &[f64], radius: f64, axis: usize, tol: f64) -> Result<f64> {
    let ax = axis - 1;
    // shrink slightly so that tangencies at the boundary are not reported
    let r_in = radius - tol;
    for (j, e) in complex.edges().iter().enumerate() {
        if j == edge {
            continue;
        }
        if e.geometry.windows(2).any(|w| cube_interval(&w[0], &w[1], center, r_in).is_some()) {
            return Err(violation("cube meets another arc", idx, None));
        }
    }
    let own = &complex.edge(edge).geometry;
    let nseg = own.len() - 1;
    let pieces: Vec<(usize, f64, f64)> = own
        .windows(2)
        .enumerate()
        .filter_map(|(k, w)| cube_interval(&w[0], &w[1], center, radius).map(|(a, b)| (k, a, b)))
        .collect();
    if pieces.is_empty() {
        return Err(violation("center not on its arc", idx, None));
    }
    let near = |x: f64, y: f64| (x - y).abs() <= 1e-9;
    let joins = |p: &(usize, f64, f64), q: &(usize, f64, f64)| near(p.2, 1.0) && q.0 == p.0 + 1 && near(q.1, 0.0);
    let mut gaps = pieces.windows(2).filter(|w| !joins(&w[0], &w[1])).count();
    if complex.edge(edge).is_loop() {
        let (first, last) = (pieces[0], *pieces.last().unwrap());
        let wraps = near(last.2, 1.0) && last.0 == nseg - 1 && first.0 == 0 && near(first.1, 0.0);
        if !wraps {
            gaps += 1;
        }
        if gaps > 1 {
            return Err(violation("intersection with its arc is not connected", idx, None));
        }
    } else if gaps > 0 {
        return Err(violation("intersection with its arc is not connected", idx, None));
    }
    let mut sign = 0.0f64;
    for &(k, _, _) in &pieces {
        let d = own[k + 1][ax] - own[k][ax];
        if d == 0.0 || (sign != 0.0 && d.signum() != sign) {
            return Err(violation("projection onto the chosen axis is not injective", idx, None));
        }
        sign = d.signum();
    }
    let measured: f64 = own
        .windows(2)
        .filter_map(|w| cube_interval(&w[0], &w[1], center, 0.5 * radius).map(|(a, b)| (b - a) * (w[1][ax] - w[0][ax]).abs()))
        .sum();
    if measured <= 0.0 {
        return Err(violation("projected length vanishes", idx, None));
    }
    Ok(measured)
}

/// Nearest edge to a point, returned when the point lies on it.
fn edge_through(complex: &CurveComplex, p: &[f64], tol: f64) -> Option<usize> {
    complex
        .segment_index()
        .iter()
        .map(|s| (s.edge, geom::project_onto_segment(p, &s.a, &s.b).1))
        .filter(|&(_, d)| d <= tol)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(e, _)| e)
}

/// Validates a user-supplied family: every arc that is not a bridge carries
/// exactly one cube, cubes are pairwise disjoint, and each cube satisfies
/// the connectivity, separation and injectivity clauses.
pub fn validate_family(complex: &CurveComplex, specs: &[CubeSpec]) -> Result<CubeFamily> {
    let n = complex.dim();
    let tol = 1e-12 * complex.diameter().max(1.0);
    let is_bridge = bridges(complex);
    let mut owner: Vec<Option<usize>> = vec![None; complex.edge_count()];
    let mut cubes = Vec::with_capacity(specs.len());
    for (i, s) in specs.iter().enumerate() {
        if s.center.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: s.center.len(),
            });
        }
        if !(s.radius > 0.0) || s.axis == 0 || s.axis > n {
            return Err(Error::InvalidInput(format!("cube {i} has a bad radius or axis")));
        }
        let edge = edge_through(complex, &s.center, 1e-9 * complex.diameter().max(1.0))
            .ok_or_else(|| violation("center not on any arc", i, None))?;
        if let Some(prev) = owner[edge] {
            return Err(violation("two cubes on one arc", i, Some(prev)));
        }
        owner[edge] = Some(i);
        let measured_l = check_cube(complex, i, edge, &s.center, s.radius, s.axis, tol)?;
        let l = match s.l {
            Some(l) if l > 0.0 && l <= measured_l * (1.0 + 1e-12) => l,
            Some(_) => return Err(violation("stated projected length exceeds the measured one", i, None)),
            None => measured_l,
        };
        cubes.push(Cube {
            edge,
            center: s.center.clone(),
            radius: s.radius,
            axis: s.axis,
            measured_l,
            l,
            length_l1: complex.edge(edge).l1_length(),
        });
    }
    for i in 0..cubes.len() {
        for j in i + 1..cubes.len() {
            let (a, b) = (&cubes[i], &cubes[j]);
            let separated = (0..n).any(|k| (a.center[k] - b.center[k]).abs() >= a.radius + b.radius - tol);
            if !separated {
                return Err(violation("cubes overlap", i, Some(j)));
            }
        }
    }
    if let Some(e) = (0..complex.edge_count()).find(|&e| !is_bridge[e] && owner[e].is_none()) {
        return Err(violation("arc without a cube", e, None));
    }
    Ok(CubeFamily { cubes })
}

/// Greedy family: one cube per non-bridge arc at the midpoint of its longest
/// segment, axis of largest direction component, radius a quarter of the
/// distance to other arcs, halved until the clauses hold.
pub fn auto_family(complex: &CurveComplex) -> Result<CubeFamily> {
    let is_bridge = bridges(complex);
    let segs = complex.segment_index();
    let mut specs = Vec::new();
    for (e, edge) in complex.edges().iter().enumerate() {
        if is_bridge[e] {
            continue;
        }
        let w = edge
            .geometry
            .windows(2)
            .max_by(|a, b| geom::dist(&a[0], &a[1]).total_cmp(&geom::dist(&b[0], &b[1])))
            .expect("edge has a segment");
        let center = geom::lerp(&w[0], &w[1], 0.5);
        let dir = geom::sub(&w[1], &w[0]);
        let axis = (0..dir.len())
            .max_by(|&a, &b| dir[a].abs().total_cmp(&dir[b].abs()))
            .unwrap();
        let others = segs
            .iter()
            .filter(|s| s.edge != e)
            .map(|s| linf_distance_nd(&center, &s.a, &s.b))
            .fold(f64::INFINITY, f64::min);
        let mut radius = 0.25 * others.min(dir[axis].abs());
        let tol = 1e-12 * complex.diameter().max(1.0);
        let mut placed = false;
        for _ in 0..60 {
            if check_cube(complex, specs.len(), e, &center, radius, axis + 1, tol).is_ok() {
                placed = true;
                break;
            }
            radius *= 0.5;
        }
        if !placed {
            return Err(Error::DegenerateGeometry(format!("no admissible cube for edge {e}")));
        }
        specs.push(CubeSpec {
            center,
            radius,
            axis: axis + 1,
            l: None,
        });
    }
    validate_family(complex, &specs)
}

/// `⌊2πn·L_T·d / (r_T·l_T)⌋ + 1` for the given family, or for an automatic
/// one; 0 for complexes without cycles.
pub fn n_bound_nd(complex: &CurveComplex, cubes: Option<&[CubeSpec]>) -> Result<NdBound> {
    let (lo, hi) = complex.bounding_box();
    let half_side = 0.5 * lo.iter().zip(&hi).map(|(a, b)| b - a).fold(0.0, f64::max);
    let family = match cubes {
        Some(specs) => validate_family(complex, specs)?,
        None => auto_family(complex)?,
    };
    if betti1(complex) == 0 {
        return Ok(NdBound {
            n_bar: 0,
            r_t: 0.0,
            l_t: 0.0,
            length_t: 0.0,
            half_side,
            family,
            auto: cubes.is_none(),
        });
    }
    let r_t = family.cubes.iter().map(|c| c.radius).fold(f64::INFINITY, f64::min);
    let l_t = family.cubes.iter().map(|c| c.l).fold(f64::INFINITY, f64::min);
    let length_t = family.cubes.iter().map(|c| c.length_l1).fold(0.0, f64::max);
    let n = complex.dim() as f64;
    let x = std::f64::consts::TAU * n * length_t * half_side / (r_t * l_t);
    Ok(NdBound {
        n_bar: x.floor() as u64 + 1,
        r_t,
        l_t,
        length_t,
        half_side,
        family,
        auto: cubes.is_none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_model::{build_complex, SampledPath};

    /// Edges of the partition of `[−1, 1]^n` into `k^n` cubes.
    fn cube_grid(n: usize, k: usize) -> CurveComplex {
        let h = 2.0 / k as f64;
        let mut paths = Vec::new();
        let total = (k + 1).pow(n as u32);
        for idx in 0..total {
            let mut p = vec![0.0; n];
            let mut rest = idx;
            let mut digits = vec![0; n];
            for a in 0..n {
                digits[a] = rest % (k + 1);
                rest /= k + 1;
                p[a] = -1.0 + digits[a] as f64 * h;
            }
            for a in 0..n {
                if digits[a] < k {
                    let mut q = p.clone();
                    q[a] += h;
                    paths.push(SampledPath::from_points(vec![p.clone(), q], false).unwrap());
                }
            }
        }
        build_complex(&paths, 1e-9).unwrap()
    }

    fn hand_family(complex: &CurveComplex, k: usize) -> Vec<CubeSpec> {
        complex
            .edges()
            .iter()
            .map(|e| {
                let center = geom::lerp(&e.geometry[0], &e.geometry[1], 0.5);
                let axis = (0..center.len()).find(|&a| e.geometry[0][a] != e.geometry[1][a]).unwrap() + 1;
                CubeSpec {
                    center,
                    radius: 1.0 / (2.0 * k as f64),
                    axis,
                    l: Some(1.0 / (4.0 * k as f64)),
                }
            })
            .collect()
    }

    #[test]
    fn hand_family_reproduces_the_closed_form() {
        for (n, k) in [(3usize, 1usize), (3, 2), (4, 1)] {
            let c = cube_grid(n, k);
            let b = n_bound_nd(&c, Some(&hand_family(&c, k))).unwrap();
            let expected = (32.0 * std::f64::consts::PI * (n * k) as f64).floor() as u64 + 1;
            assert_eq!(b.n_bar, expected, "n={n} k={k}");
            assert!((b.half_side - 1.0).abs() < 1e-15);
            for cube in &b.family.cubes {
                assert!((cube.measured_l - 1.0 / k as f64 / 2.0).abs() < 1e-12);
            }
        }
        assert_eq!(n_bound_nd(&cube_grid(3, 1), Some(&hand_family(&cube_grid(3, 1), 1))).unwrap().n_bar, 302);
    }

    #[test]
    fn overlapping_cubes_are_reported() {
        let c = cube_grid(3, 1);
        let mut fam = hand_family(&c, 1);
        for s in fam.iter_mut() {
            s.radius = 0.9;
        }
        assert!(matches!(n_bound_nd(&c, Some(&fam)), Err(Error::ConditionStarViolated { .. })));
    }

    #[test]
    fn missing_cube_is_reported() {
        let c = cube_grid(3, 1);
        let mut fam = hand_family(&c, 1);
        fam.pop();
        let err = n_bound_nd(&c, Some(&fam)).unwrap_err();
        assert!(matches!(err, Error::ConditionStarViolated { ref clause, .. } if clause == "arc without a cube"));
    }

    #[test]
    fn wrong_axis_is_reported() {
        let c = cube_grid(3, 1);
        let mut fam = hand_family(&c, 1);
        fam[0].axis = fam[0].axis % 3 + 1;
        let err = n_bound_nd(&c, Some(&fam)).unwrap_err();
        assert!(matches!(err, Error::ConditionStarViolated { i: 0, .. }));
    }

    #[test]
    fn overstated_length_is_reported() {
        let c = cube_grid(3, 1);
        let mut fam = hand_family(&c, 1);
        fam[2].l = Some(0.9);
        assert!(matches!(n_bound_nd(&c, Some(&fam)), Err(Error::ConditionStarViolated { i: 2, .. })));
    }

    #[test]
    fn auto_family_is_valid_and_gives_a_bound() {
        let c = cube_grid(3, 1);
        let b = n_bound_nd(&c, None).unwrap();
        assert!(b.auto);
        assert_eq!(b.family.cubes.len(), c.edge_count());
        // revalidating the automatic family succeeds
        validate_family(&c, &b.family.specs()).unwrap();
        assert!(b.n_bar > 0);
    }

    #[test]
    fn auto_family_on_a_bent_polygon() {
        // a hexagon in space with non-axis-aligned edges
        let pts: Vec<Vec<f64>> = (0..=6)
            .map(|i| {
                let a = i as f64 * std::f64::consts::PI / 3.0;
                vec![a.cos(), a.sin(), 0.3 * (2.0 * a).sin()]
            })
            .collect();
        let c = build_complex(&[SampledPath::from_points(pts, true).unwrap()], 1e-9).unwrap();
        let b = n_bound_nd(&c, None).unwrap();
        assert_eq!(b.family.cubes.len(), 1);
        assert!(b.n_bar > 0);
    }

    #[test]
    fn trees_need_no_cubes() {
        let c = build_complex(
            &[SampledPath::from_points(vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![1.0, 1.0, 1.0]], false).unwrap()],
            1e-9,
        )
        .unwrap();
        let b = n_bound_nd(&c, None).unwrap();
        assert_eq!(b.n_bar, 0);
        assert!(b.family.cubes.is_empty());
    }

    #[test]
    fn nd_distance_matches_sampling() {
        let p = [0.1, -0.2, 0.3];
        let (a, b) = ([1.0, 0.5, -0.5], [-0.3, 0.9, 0.8]);
        let d = linf_distance_nd(&p, &a, &b);
        let sampled = (0..=100_000)
            .map(|i| {
                let s = i as f64 / 100_000.0;
                (0..3).map(|k| (a[k] + s * (b[k] - a[k]) - p[k]).abs()).fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min);
        assert!(d <= sampled + 1e-15 && sampled - d < 1e-4);
    }
}
