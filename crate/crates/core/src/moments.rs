//! Moments `∫ g_1^{d_1}⋯g_n^{d_n} g_i′ dt` of piecewise-linear paths.
//!
//! Two independent evaluations are provided. [`moment_quadrature`] integrates
//! along the path: on each segment the integrand is a polynomial of degree
//! `d = Σ d_j` in the segment parameter and a Gauss–Legendre rule with
//! `⌈(d + 2)/2⌉` nodes is exact. [`moment_via_homology`] uses only the winding
//! numbers of a closed planar path around the faces of its curve and Green's
//! formula on each face.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::planar_geometry::{winding_number, FaceSet};
use crate::quadrature::cached;
use crate::curve_model::SampledPath;
use crate::{Error, Result};

/// Multi-index `(d_1, …, d_n)` and 1-based target coordinate `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MomentSpec {
    pub multi_index: Vec<u32>,
    pub i: usize,
}

impl MomentSpec {
    pub fn new(multi_index: Vec<u32>, i: usize) -> Result<Self> {
        if i == 0 || i > multi_index.len() {
            return Err(Error::InvalidInput(format!(
                "target index {i} outside 1..={}",
                multi_index.len()
            )));
        }
        Ok(MomentSpec { multi_index, i })
    }

    pub fn dim(&self) -> usize {
        self.multi_index.len()
    }

    pub fn degree(&self) -> u32 {
        self.multi_index.iter().sum()
    }

    fn check(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim(),
            });
        }
        if self.i == 0 || self.i > dim {
            return Err(Error::InvalidInput(format!("target index {} outside 1..={dim}", self.i)));
        }
        Ok(())
    }
}

impl std::fmt::Display for MomentSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d: Vec<String> = self.multi_index.iter().map(|x| x.to_string()).collect();
        write!(f, "d=({}), i={}", d.join(","), self.i)
    }
}

pub fn moment_quadrature(path: &SampledPath, spec: &MomentSpec) -> Result<f64> {
    spec.check(path.dim())?;
    let rule = cached((spec.degree() as usize + 3) / 2);
    let ti = spec.i - 1;
    let mut total = 0.0;
    for (a, b) in path.segments() {
        let di = b[ti] - a[ti];
        if di == 0.0 {
            continue;
        }
        let seg = rule.integrate(|s| {
            spec.multi_index
                .iter()
                .enumerate()
                .map(|(j, &e)| (a[j] + s * (b[j] - a[j])).powi(e as i32))
                .product::<f64>()
        });
        total += di * seg;
    }
    Ok(total)
}

/// Quadrature nodes of a path shared by many moments: every moment of total
/// degree at most `max_degree` is a weighted sum over the same nodes.
#[derive(Debug, Clone)]
pub struct MomentTable {
    dim: usize,
    /// per node: weight × segment length factor is applied per target index
    weights: Vec<f64>,
    deltas: Vec<Vec<f64>>,
    /// powers[node][j][e] = g_j(node)^e
    powers: Vec<Vec<Vec<f64>>>,
    max_exponent: usize,
}

impl MomentTable {
    pub fn new(path: &SampledPath, max_degree: usize, max_exponent: usize) -> Self {
        let rule = cached((max_degree + 3) / 2);
        let dim = path.dim();
        let mut weights = Vec::new();
        let mut deltas = Vec::new();
        let mut powers = Vec::new();
        for (a, b) in path.segments() {
            let delta: Vec<f64> = (0..dim).map(|j| b[j] - a[j]).collect();
            if delta.iter().all(|&d| d == 0.0) {
                continue;
            }
            for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
                weights.push(w);
                deltas.push(delta.clone());
                powers.push(
                    (0..dim)
                        .map(|j| {
                            let x = a[j] + s * delta[j];
                            let mut p = Vec::with_capacity(max_exponent + 1);
                            let mut acc = 1.0;
                            for _ in 0..=max_exponent {
                                p.push(acc);
                                acc *= x;
                            }
                            p
                        })
                        .collect(),
                );
            }
        }
        MomentTable {
            dim,
            weights,
            deltas,
            powers,
            max_exponent,
        }
    }

    /// The moment for `spec`; exact when its degree is within the table's.
    pub fn eval(&self, spec: &MomentSpec) -> f64 {
        debug_assert_eq!(spec.dim(), self.dim);
        debug_assert!(spec.multi_index.iter().all(|&e| e as usize <= self.max_exponent));
        let ti = spec.i - 1;
        let mut total = 0.0;
        for k in 0..self.weights.len() {
            let di = self.deltas[k][ti];
            if di == 0.0 {
                continue;
            }
            let mut v = self.weights[k] * di;
            for (j, &e) in spec.multi_index.iter().enumerate() {
                v *= self.powers[k][j][e as usize];
            }
            total += v;
        }
        total
    }
}

/// `∫⋯∫_{a ≤ t_1 ≤ ⋯ ≤ t_k ≤ b} f′_{i_k}(t_k)⋯f′_{i_1}(t_1)`, with 1-based
/// indices; `i_1` goes with the innermost variable.
pub fn iterated_integral(path: &SampledPath, indices: &[usize]) -> Result<f64> {
    if indices.is_empty() {
        return Err(Error::InvalidInput("at least one index is required".into()));
    }
    if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > path.dim()) {
        return Err(Error::InvalidInput(format!("index {bad} outside 1..={}", path.dim())));
    }
    let k = indices.len();
    // value of I_1..I_k at the start of the current segment
    let mut start = vec![0.0; k];
    for (a, b) in path.segments() {
        // I_j on the segment as a polynomial in s ∈ [0, 1]
        let mut prev: Vec<f64> = vec![1.0];
        let mut next_start = vec![0.0; k];
        for (j, &idx) in indices.iter().enumerate() {
            let d = b[idx - 1] - a[idx - 1];
            // I_j(s) = I_j(0) + d·∫_0^s I_{j−1}
            let mut poly = vec![start[j]];
            poly.extend(prev.iter().enumerate().map(|(p, c)| d * c / (p as f64 + 1.0)));
            next_start[j] = poly.iter().sum();
            prev = poly;
        }
        start = next_start;
    }
    Ok(start[k - 1])
}

/// `∬_S x^a y^b dA` for the face bounded by a counter-clockwise ring, as
/// `∮ x^{a+1} y^b/(a+1) dy` with an exact rule per boundary edge.
pub fn monomial_face_integral(ring: &[[f64; 2]], a: u32, b: u32) -> f64 {
    let rule = cached((a + b + 3) as usize / 2);
    let n = ring.len();
    let mut total = 0.0;
    for k in 0..n {
        let (p, q) = (ring[k], ring[(k + 1) % n]);
        let dy = q[1] - p[1];
        if dy == 0.0 {
            continue;
        }
        let dx = q[0] - p[0];
        total += dy * rule.integrate(|s| (p[0] + s * dx).powi(a as i32 + 1) * (p[1] + s * dy).powi(b as i32));
    }
    total / (a as f64 + 1.0)
}

/// Green's formula summed over faces with integer weights. For `i = 2` the
/// face integrand is `d_1 x^{d_1−1} y^{d_2}`, for `i = 1` it is
/// `−d_2 x^{d_1} y^{d_2−1}`; a vanishing leading factor gives 0.
pub fn moment_via_homology(faces: &FaceSet, coeffs: &[i64], spec: &MomentSpec) -> Result<f64> {
    spec.check(2)?;
    if coeffs.len() != faces.len() {
        return Err(Error::LengthMismatch {
            expected: faces.len(),
            got: coeffs.len(),
        });
    }
    let (d1, d2) = (spec.multi_index[0], spec.multi_index[1]);
    let (factor, a, b) = match spec.i {
        2 if d1 > 0 => (d1 as f64, d1 - 1, d2),
        1 if d2 > 0 => (-(d2 as f64), d1, d2 - 1),
        _ => return Ok(0.0),
    };
    Ok(faces
        .faces
        .iter()
        .zip(coeffs)
        .filter(|(_, &c)| c != 0)
        .map(|(f, &c)| c as f64 * factor * monomial_face_integral(&f.boundary, a, b))
        .sum())
}

/// Winding number of a closed planar path around each face.
pub fn face_coefficients(path: &SampledPath, faces: &FaceSet) -> Result<Vec<i64>> {
    if !path.is_closed() {
        return Err(Error::NotClosed);
    }
    faces
        .faces
        .iter()
        .map(|face| {
            let mut last = Err(Error::PointOnCurve);
            for p in face.interior_points(8) {
                last = winding_number(path, p, None);
                if last.is_ok() {
                    break;
                }
            }
            last
        })
        .collect()
}

/// Quadrature value, optional homology value and their difference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub spec: MomentSpec,
    pub value_quadrature: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_homology: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<f64>,
}

impl MomentReport {
    pub fn new(spec: MomentSpec, value_quadrature: f64, value_homology: Option<f64>) -> Self {
        MomentReport {
            agreement: value_homology.map(|h| (value_quadrature - h).abs()),
            spec,
            value_quadrature,
            value_homology,
        }
    }
}

/// All specs with total degree at most `max_degree` in dimension `dim`,
/// ordered lexicographically by multi-index, then `i`.
pub fn specs_up_to_degree(dim: usize, max_degree: u32) -> Vec<MomentSpec> {
    let mut out = Vec::new();
    let mut idx = vec![0u32; dim];
    loop {
        if idx.iter().sum::<u32>() <= max_degree {
            for i in 1..=dim {
                out.push(MomentSpec {
                    multi_index: idx.clone(),
                    i,
                });
            }
        }
        // odometer with the last coordinate fastest
        let mut k = dim;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < max_degree {
                idx[k] += 1;
                break;
            }
            idx[k] = 0;
        }
    }
}

/// The index family a bound refers to: in the plane `i = 2` and
/// `max{d_1 − 1, d_2} ≤ bound`; in higher dimension every `i` and
/// `max_j d_j ≤ bound`; on the line `d_1 ≤ bound`.
#[derive(Debug, Clone)]
pub struct ScanFamily {
    dim: usize,
    bound: u32,
}

impl ScanFamily {
    pub fn new(dim: usize, bound: u32) -> Self {
        ScanFamily { dim, bound }
    }

    /// Largest exponent any coordinate takes in the family.
    pub fn max_exponent(&self) -> u32 {
        if self.dim == 2 {
            self.bound + 1
        } else {
            self.bound
        }
    }

    pub fn max_degree(&self) -> u32 {
        match self.dim {
            2 => 2 * self.bound + 1,
            n => n as u32 * self.bound,
        }
    }

    pub fn len(&self) -> u128 {
        let b = self.bound as u128 + 1;
        match self.dim {
            2 => (b + 1) * b,
            n => n as u128 * b.pow(n as u32),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Specs in lexicographic order, `start..start + count`.
    fn chunk(&self, start: u128, count: usize) -> Vec<MomentSpec> {
        let total = self.len();
        let mut out = Vec::with_capacity(count);
        let mut k = start;
        while k < total && out.len() < count {
            out.push(self.nth(k));
            k += 1;
        }
        out
    }

    fn nth(&self, k: u128) -> MomentSpec {
        let b = self.bound as u128 + 1;
        match self.dim {
            2 => MomentSpec {
                multi_index: vec![(k / b) as u32, (k % b) as u32],
                i: 2,
            },
            n => {
                let i = (k % n as u128) as usize + 1;
                let mut rest = k / n as u128;
                let mut idx = vec![0u32; n];
                for slot in idx.iter_mut().rev() {
                    *slot = (rest % b) as u32;
                    rest /= b;
                }
                MomentSpec { multi_index: idx, i }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ScanResult {
    AllZero {
        bound: u32,
        checked: u64,
        tol: f64,
    },
    Witness {
        spec: MomentSpec,
        value: f64,
        gate: f64,
        tol: f64,
    },
}

impl ScanResult {
    pub fn is_all_zero(&self) -> bool {
        matches!(self, ScanResult::AllZero { .. })
    }
}

/// Gate applied to a moment of total degree `d`: `tol · max(1, L) ·
/// max(1, R)^d` with `L` the ℓ¹ length and `R` the largest coordinate.
pub fn vanishing_gate(path: &SampledPath, tol: f64, degree: u32) -> f64 {
    tol * path.l1_length().max(1.0) * path.max_abs_coordinate().max(1.0).powi(degree as i32)
}

/// Evaluates the bound's index family in lexicographic order and returns the
/// first moment above its gate.
pub fn vanishing_scan(path: &SampledPath, bound: u32, tol: f64) -> ScanResult {
    let family = ScanFamily::new(path.dim(), bound);
    let table = MomentTable::new(path, family.max_degree() as usize, family.max_exponent() as usize);
    let total = family.len();
    let chunk = 8192usize;
    let mut start = 0u128;
    while start < total {
        let specs = family.chunk(start, chunk);
        let hit = specs.par_iter().position_first(|s| {
            table.eval(s).abs() > vanishing_gate(path, tol, s.degree())
        });
        if let Some(p) = hit {
            let spec = specs[p].clone();
            let value = table.eval(&spec);
            return ScanResult::Witness {
                gate: vanishing_gate(path, tol, spec.degree()),
                spec,
                value,
                tol,
            };
        }
        start += specs.len() as u128;
    }
    ScanResult::AllZero {
        bound,
        checked: total as u64,
        tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_model::build_complex;
    use crate::planar_geometry::extract_faces;

    fn closed(points: &[[f64; 2]]) -> SampledPath {
        let mut pts: Vec<Vec<f64>> = points.iter().map(|p| p.to_vec()).collect();
        pts.push(points[0].to_vec());
        SampledPath::from_points(pts, true).unwrap()
    }

    fn unit_square() -> SampledPath {
        closed(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    }

    fn spec(d: &[u32], i: usize) -> MomentSpec {
        MomentSpec::new(d.to_vec(), i).unwrap()
    }

    fn circle(n: usize) -> SampledPath {
        let pts: Vec<Vec<f64>> = (0..=n)
            .map(|k| {
                let t = std::f64::consts::TAU * (k % n) as f64 / n as f64;
                vec![t.cos(), t.sin()]
            })
            .collect();
        SampledPath::from_points(pts, true).unwrap()
    }

    /// Midpoint-rule oracle for a moment.
    fn riemann_moment(path: &SampledPath, spec: &MomentSpec, per_segment: usize) -> f64 {
        let ti = spec.i - 1;
        path.segments()
            .map(|(a, b)| {
                (0..per_segment)
                    .map(|k| {
                        let s = (k as f64 + 0.5) / per_segment as f64;
                        let g: f64 = spec
                            .multi_index
                            .iter()
                            .enumerate()
                            .map(|(j, &e)| (a[j] + s * (b[j] - a[j])).powi(e as i32))
                            .product();
                        g * (b[ti] - a[ti]) / per_segment as f64
                    })
                    .sum::<f64>()
            })
            .sum()
    }

    #[test]
    fn degree_zero_moments_vanish_on_closed_paths() {
        for i in 1..=2 {
            assert_eq!(moment_quadrature(&unit_square(), &spec(&[0, 0], i)).unwrap(), 0.0);
        }
    }

    #[test]
    fn area_moment_of_unit_square() {
        assert!((moment_quadrature(&unit_square(), &spec(&[1, 0], 2)).unwrap() - 1.0).abs() < 1e-15);
        assert!((moment_quadrature(&unit_square(), &spec(&[0, 1], 1)).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn circle_area_converges_to_pi() {
        let coarse = moment_quadrature(&circle(512), &spec(&[1, 0], 2)).unwrap();
        assert!((coarse - std::f64::consts::PI).abs() < 1e-4);
        let fine = moment_quadrature(&circle(1 << 16), &spec(&[1, 0], 2)).unwrap();
        assert!((fine - std::f64::consts::PI).abs() < 1e-8);
        assert!((fine - coarse).abs() < 1e-4);
    }

    #[test]
    fn quadrature_matches_riemann_sums() {
        let p = closed(&[[0.1, -0.3], [0.9, 0.2], [0.4, 1.1], [-0.6, 0.4]]);
        for s in [spec(&[2, 3], 1), spec(&[4, 1], 2), spec(&[0, 5], 1)] {
            let exact = moment_quadrature(&p, &s).unwrap();
            let approx = riemann_moment(&p, &s, 20_000);
            assert!((exact - approx).abs() < 1e-7, "{s}: {exact} vs {approx}");
        }
    }

    #[test]
    fn table_matches_direct_quadrature() {
        let p = closed(&[[0.1, -0.3], [0.9, 0.2], [0.4, 1.1], [-0.6, 0.4]]);
        let table = MomentTable::new(&p, 8, 8);
        for s in specs_up_to_degree(2, 8) {
            assert!((table.eval(&s) - moment_quadrature(&p, &s).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn integration_by_parts() {
        let p = closed(&[[0.1, -0.3], [0.9, 0.2], [0.4, 1.1], [-0.6, 0.4]]);
        let m1 = moment_quadrature(&p, &spec(&[1, 0], 2)).unwrap();
        let m2 = moment_quadrature(&p, &spec(&[0, 1], 1)).unwrap();
        assert!((m1 + m2).abs() < 1e-12);
    }

    #[test]
    fn iterated_integrals() {
        let sq = unit_square();
        assert!(iterated_integral(&sq, &[1]).unwrap().abs() < 1e-15);
        assert!(iterated_integral(&sq, &[1, 1]).unwrap().abs() < 1e-15);
        assert!((iterated_integral(&sq, &[1, 2]).unwrap() - 1.0).abs() < 1e-15);
        assert!((iterated_integral(&sq, &[2, 1]).unwrap() + 1.0).abs() < 1e-15);
    }

    /// Riemann sum over the simplex t_1 ≤ t_2 on a uniform grid.
    #[test]
    fn iterated_integral_matches_simplex_riemann_sum() {
        let p = closed(&[[0.0, 0.0], [1.0, 0.2], [0.7, 1.0], [-0.2, 0.6]]);
        let n = 1000;
        let total = p.times()[p.len() - 1];
        let h = total / n as f64;
        let deriv = |t: f64, idx: usize| {
            let k = (t.floor() as usize).min(p.len() - 2);
            p.point(k + 1)[idx] - p.point(k)[idx]
        };
        let mut sum = 0.0;
        for a in 0..n {
            let t1 = (a as f64 + 0.5) * h;
            for b in a..n {
                let t2 = (b as f64 + 0.5) * h;
                let w = if a == b { 0.5 } else { 1.0 };
                sum += w * deriv(t1, 0) * deriv(t2, 1) * h * h;
            }
        }
        let exact = iterated_integral(&p, &[1, 2]).unwrap();
        assert!((exact - sum).abs() < 1e-3, "{exact} vs {sum}");
    }

    #[test]
    fn monomials_over_the_unit_square() {
        let ring = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        for a in 0..=10 {
            for b in 0..=10 {
                let v = monomial_face_integral(&ring, a, b);
                let expected = 1.0 / ((a + 1) * (b + 1)) as f64;
                assert!((v - expected).abs() < 1e-13, "{a} {b}");
            }
        }
    }

    #[test]
    fn monomials_over_a_triangle() {
        // ∬_T x dA over the triangle (0,0),(1,0),(0,1) is 1/6
        let tri = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        assert!((monomial_face_integral(&tri, 1, 0) - 1.0 / 6.0).abs() < 1e-15);
        assert!((monomial_face_integral(&tri, 1, 1) - 1.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn homology_pipeline_on_the_unit_square() {
        let c = build_complex(&[unit_square()], 1e-9).unwrap();
        let faces = extract_faces(&c).unwrap();
        let s = spec(&[1, 0], 2);
        assert!((moment_via_homology(&faces, &[1], &s).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(moment_via_homology(&faces, &[0], &s).unwrap(), 0.0);
        assert!(matches!(
            moment_via_homology(&faces, &[1, 0], &s),
            Err(Error::LengthMismatch { .. })
        ));
        assert_eq!(face_coefficients(&unit_square(), &faces).unwrap(), vec![1]);
        let reversed = closed(&[[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]);
        assert_eq!(face_coefficients(&reversed, &faces).unwrap(), vec![-1]);
    }

    #[test]
    fn pipelines_agree_on_a_figure_eight_word() {
        // a² b⁻¹ on two squares of different size sharing the origin
        let a = closed(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        let b = closed(&[[0.0, 0.0], [-1.5, 0.0], [-1.5, -1.5], [0.0, -1.5]]);
        let c = build_complex(&[a.clone(), b.clone()], 1e-9).unwrap();
        let faces = extract_faces(&c).unwrap();
        let b_inv = SampledPath::from_points(b.points().iter().rev().cloned().collect(), true).unwrap();
        let word = a.concat(&a).unwrap().concat(&b_inv).unwrap();
        let coeffs = face_coefficients(&word, &faces).unwrap();
        // faces are ordered by representative: the b square comes first
        assert_eq!(coeffs, vec![-1, 2]);
        for s in specs_up_to_degree(2, 8) {
            let q = moment_quadrature(&word, &s).unwrap();
            let h = moment_via_homology(&faces, &coeffs, &s).unwrap();
            assert!((q - h).abs() <= 1e-9 * (1.0 + q.abs()), "{s}: {q} vs {h}");
        }
        let area = moment_quadrature(&word, &spec(&[1, 0], 2)).unwrap();
        assert!((area - (2.0 * 1.0 - 2.25)).abs() < 1e-12);
    }

    #[test]
    fn spec_enumeration_order() {
        let s = specs_up_to_degree(2, 1);
        let d: Vec<(Vec<u32>, usize)> = s.into_iter().map(|s| (s.multi_index, s.i)).collect();
        assert_eq!(
            d,
            vec![
                (vec![0, 0], 1),
                (vec![0, 0], 2),
                (vec![0, 1], 1),
                (vec![0, 1], 2),
                (vec![1, 0], 1),
                (vec![1, 0], 2)
            ]
        );
        let fam = ScanFamily::new(3, 2);
        assert_eq!(fam.len(), 3 * 27);
        let all = fam.chunk(0, 1000);
        assert_eq!(all.len(), 81);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let plane = ScanFamily::new(2, 3);
        let all = plane.chunk(0, 1000);
        assert_eq!(all.len(), 20);
        assert!(all.iter().all(|s| s.i == 2 && s.multi_index[0] <= 4 && s.multi_index[1] <= 3));
    }

    #[test]
    fn scans() {
        let constant = SampledPath::from_points(vec![vec![0.3, 0.2]; 2], true).unwrap();
        assert!(vanishing_scan(&constant, 5, 1e-9).is_all_zero());
        match vanishing_scan(&unit_square(), 1, 1e-9) {
            ScanResult::Witness { spec, value, .. } => {
                assert_eq!(spec, MomentSpec::new(vec![1, 0], 2).unwrap());
                assert!((value - 1.0).abs() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
        // there and back again
        let back = SampledPath::from_points(unit_square().points().iter().rev().cloned().collect(), true).unwrap();
        let retrace = unit_square().concat(&back).unwrap();
        assert!(vanishing_scan(&retrace, 10, 1e-9).is_all_zero());
    }

    #[test]
    fn space_scan_finds_a_low_degree_witness() {
        let p = SampledPath::from_points(
            vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 1.0], vec![0.0, 0.0, 0.0]],
            true,
        )
        .unwrap();
        match vanishing_scan(&p, 300, 1e-9) {
            ScanResult::Witness { spec, .. } => assert!(spec.degree() <= 2),
            other => panic!("{other:?}"),
        }
    }
}
