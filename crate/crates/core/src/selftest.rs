//! Fixture-based checks runnable from the command line.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::approx::{approximate, approximate_with_order, error_bound, sup_error, C_OP};
use crate::center::{classify_conditions, decide, fourth_coefficient, residual_sweep, DecideOptions, Decision, OdeSystem, DEFAULT_STEPS_PER_UNIT};
use crate::curve_model::{CurveComplex, SampledPath};
use crate::fixtures::{self, random_closed_word, random_covering_word, realize_closed};
use crate::moments::{
    face_coefficients, monomial_face_integral, moment_quadrature, moment_via_homology, specs_up_to_degree, vanishing_gate, vanishing_scan,
    MomentSpec, MomentTable,
};
use crate::planar_geometry::{extract_faces, n_bound_2d, n_bound_nd};
use crate::projection::{expansion_check, sample_direction};
use crate::topology::{betti1, cycle_basis, eulerian_trails};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

type Check = fn() -> Result<(bool, String)>;

const CHECKS: [(&str, Check); 11] = [
    ("grid bound", grid_bound),
    ("cube grid bound", cube_bound),
    ("pipeline equivalence", pipelines),
    ("sqrt(m) <= d/r < N", packing_inequality),
    ("degree sufficiency", degree_sufficiency),
    ("covering words", covering_words),
    ("center soundness", center_soundness),
    ("fourth coefficient identity", fourth_identity),
    ("approximation operator", approximation),
    ("multinomial expansion", expansion),
    ("polygon monomials", polygon_monomials),
];

/// Runs every check; a check that returns an error counts as failed.
pub fn run() -> Vec<CheckResult> {
    CHECKS
        .iter()
        .enumerate()
        .map(|(i, (name, f))| {
            let t = Instant::now();
            let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
            CheckResult {
                id: i + 1,
                name: name.to_string(),
                passed,
                detail,
                seconds: t.elapsed().as_secs_f64(),
            }
        })
        .collect()
}

fn grid_bound() -> Result<(bool, String)> {
    let mut ok = true;
    let mut found = Vec::new();
    for k in 1..=4usize {
        let t = Instant::now();
        let c = fixtures::grid(k)?;
        let faces = extract_faces(&c)?;
        let n = n_bound_2d(&faces);
        let expected = (27.0 * PI * k as f64 / 4.0).floor() as u64 + 1;
        let h = 2.0 / k as f64;
        ok &= n == expected
            && faces.len() == k * k
            && faces.faces.iter().all(|f| (f.inscribed_side - h).abs() < 1e-9 && (f.area - h * h).abs() < 1e-9)
            && t.elapsed().as_secs_f64() < 1.0;
        found.push(n);
    }
    Ok((ok, format!("N = {found:?}")))
}

fn cube_bound() -> Result<(bool, String)> {
    let t = Instant::now();
    let mut ok = true;
    let mut found = Vec::new();
    for (n, k) in [(3usize, 1usize), (3, 2), (4, 1)] {
        let c = fixtures::cube_grid(n, k)?;
        let b = n_bound_nd(&c, Some(&fixtures::hand_cubes(&c, k)))?;
        let expected = (32.0 * PI * (n * k) as f64).floor() as u64 + 1;
        let m = betti1(&c) as f64;
        let (lo, hi) = fixtures::cube_grid_betti_estimate(n, k);
        ok &= b.n_bar == expected && lo < m && m < hi;
        found.push(b.n_bar);
    }
    ok &= t.elapsed().as_secs_f64() < 2.0;
    Ok((ok, format!("N = {found:?}")))
}

/// 25 words on the `k = 3` grid and 25 on the figure-eight.
fn seeded_words() -> Result<Vec<(usize, SampledPath)>> {
    let complexes = [fixtures::grid(3)?, fixtures::figure_eight()?];
    let mut out = Vec::new();
    for seed in 0..50u64 {
        let which = (seed % 2) as usize;
        let c = &complexes[which];
        let w = random_closed_word(c, seed, 6 + (seed as usize % 15));
        out.push((which, realize_closed(&w, c)?));
    }
    Ok(out)
}

fn two_d_complexes() -> Result<[CurveComplex; 2]> {
    Ok([fixtures::grid(3)?, fixtures::figure_eight()?])
}

fn pipelines() -> Result<(bool, String)> {
    let complexes = two_d_complexes()?;
    let faces = [extract_faces(&complexes[0])?, extract_faces(&complexes[1])?];
    let mut worst = 0.0f64;
    for (which, p) in seeded_words()? {
        let coeffs = face_coefficients(&p, &faces[which])?;
        for spec in specs_up_to_degree(2, 8) {
            let q = moment_quadrature(&p, &spec)?;
            let h = moment_via_homology(&faces[which], &coeffs, &spec)?;
            worst = worst.max((q - h).abs() / (1.0 + q.abs()));
        }
    }
    Ok((worst <= 1e-9, format!("max relative disagreement {worst:.3e}")))
}

fn packing_inequality() -> Result<(bool, String)> {
    let mut complexes = Vec::new();
    for k in 1..=4 {
        complexes.push(fixtures::grid(k)?);
    }
    complexes.push(fixtures::figure_eight()?);
    let circle = fixtures::circle_pl(64)?;
    complexes.push(crate::curve_model::build_complex(&[circle], 1e-9)?);
    let mut ok = true;
    let mut parts = Vec::new();
    for c in &complexes {
        let faces = extract_faces(c)?;
        if faces.is_empty() {
            continue;
        }
        let m = faces.len() as f64;
        let ratio = faces.half_side / faces.min_side;
        let n = n_bound_2d(&faces) as f64;
        ok &= m.sqrt() <= ratio && ratio < n;
        parts.push(format!("sqrt(m)={:.3} d/r={:.3} N={n}", m.sqrt(), ratio));
    }
    Ok((ok, parts.join("; ")))
}

fn degree_sufficiency() -> Result<(bool, String)> {
    let complexes = two_d_complexes()?;
    let bounds = [n_bound_2d(&extract_faces(&complexes[0])?), n_bound_2d(&extract_faces(&complexes[1])?)];
    let tol = 1e-9;
    let mut premises = 0;
    let mut ok = true;
    for (which, p) in seeded_words()? {
        let n = bounds[which] as u32;
        if !vanishing_scan(&p, n, tol).is_all_zero() {
            continue;
        }
        premises += 1;
        let d = n + 6;
        let table = MomentTable::new(&p, d as usize, d as usize);
        ok &= specs_up_to_degree(2, d)
            .iter()
            .all(|s| table.eval(s).abs() <= vanishing_gate(&p, tol, s.degree()));
    }
    Ok((ok, format!("{premises} of 50 words satisfy the premise")))
}

fn covering_words() -> Result<(bool, String)> {
    let c = fixtures::figure_eight()?;
    let basis = cycle_basis(&c, 0);
    let trails = eulerian_trails(&c, 64);
    let mut agree = 0;
    let mut trivial = 0;
    for seed in 0..30u64 {
        let trail = &trails[seed as usize % trails.len()];
        let w = random_covering_word(trail, seed, 4 + seed as usize % 9);
        let f = classify_conditions(&w, &basis, &trails)?;
        if f.covers && f.homologically_trivial == f.reduction_contractible {
            agree += 1;
        }
        trivial += f.homologically_trivial as usize;
    }
    Ok((agree == 30, format!("{agree}/30 agree, {trivial} homologically trivial")))
}

fn ccw_square() -> Result<SampledPath> {
    SampledPath::from_points(
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![0.0, 0.0]],
        true,
    )
}

fn center_soundness() -> Result<(bool, String)> {
    let t = Instant::now();
    let abel = fixtures::universal_center_abel(256)?;
    let r = residual_sweep(&abel, &[-0.05, -0.01, 0.01, 0.05], DEFAULT_STEPS_PER_UNIT);
    let abel_worst = r.iter().map(|x| x.residual).fold(0.0, f64::max);
    let sq = ccw_square()?;
    let c = crate::curve_model::build_complex(std::slice::from_ref(&sq), 1e-9)?;
    let v = decide(&OdeSystem::new(sq)?, &c, &DecideOptions {
        residual_v0: vec![-0.1, -0.05, 0.05, 0.1],
        ..DecideOptions::default()
    })?;
    let sq_best = v.residuals.iter().map(|x| x.residual).fold(0.0, f64::max);
    let ok = abel_worst <= 1e-8
        && v.decision == Decision::NotCenter
        && v.witness.is_some()
        && sq_best >= 1e-4
        && t.elapsed().as_secs_f64() < 5.0;
    Ok((ok, format!("abel residual {abel_worst:.2e}, square residual {sq_best:.2e}")))
}

fn fourth_identity() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let mut pts = vec![vec![0.0, 0.0]];
        for _ in 0..rng.gen_range(2..12) {
            pts.push(vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
        }
        pts.push(vec![0.0, 0.0]);
        let p = SampledPath::from_points(pts, true)?;
        let m1 = moment_quadrature(&p, &MomentSpec::new(vec![1, 0], 2)?)?;
        let m2 = moment_quadrature(&p, &MomentSpec::new(vec![0, 1], 1)?)?;
        worst = worst.max((m1 + m2).abs()).max((fourth_coefficient(&p)? - m1).abs());
    }
    Ok((worst <= 1e-12, format!("max |M1 + M2|, |3M1 + 2M2 - M1| = {worst:.2e}")))
}

fn approximation() -> Result<(bool, String)> {
    let p = approximate(|_| 0.75, 2, 6);
    let mut ok = (p.coefficients[0] - 0.75).abs() < 1e-15;
    ok &= p.coefficients[1..].iter().all(|c| c.abs() < 1e-14);
    let f = |x: &[f64]| (x[0] - 0.3).abs() + (x[1] * x[0]).abs();
    let a = approximate_with_order(f, 2, 8, &[0, 1]);
    let b = approximate_with_order(f, 2, 8, &[1, 0]);
    let commute = a.coefficients.iter().zip(&b.coefficients).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    ok &= commute <= 1e-12;
    let mut errors = Vec::new();
    for k in [4, 8, 16, 32] {
        let p = approximate(|x| x[0].abs(), 1, k);
        let e = sup_error(|x| x[0].abs(), &p, 10_000);
        ok &= e <= error_bound(1, k, 1.0);
        errors.push(e);
    }
    ok &= errors.windows(2).all(|w| w[1] <= w[0]);
    let shown: Vec<String> = errors.iter().map(|e| format!("{e:.3e}")).collect();
    Ok((ok, format!("C_op = {C_OP:.4}, |x| errors [{}], commute {commute:.1e}", shown.join(", "))))
}

fn expansion() -> Result<(bool, String)> {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checks = 0;
    let mut ok = true;
    for n in [3usize, 4] {
        for path_seed in 0..20u64 {
            let len = rng.gen_range(3..8);
            let mut pts: Vec<Vec<f64>> = (0..len).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            pts.push(pts[0].clone());
            let p = SampledPath::from_points(pts, true)?;
            for j in 0..5u64 {
                let v = sample_direction(1000 * path_seed + j, n)?;
                for d in 0..=6 {
                    ok &= expansion_check(&p, &v, d, 1e-9)?;
                    checks += 1;
                }
            }
        }
    }
    ok &= t.elapsed().as_secs_f64() < 60.0;
    Ok((ok, format!("{checks} identities checked")))
}

fn polygon_monomials() -> Result<(bool, String)> {
    let ring = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
    let mut worst = 0.0f64;
    for a in 0..=10u32 {
        for b in 0..=10u32 {
            let exact = 1.0 / ((a + 1) * (b + 1)) as f64;
            worst = worst.max((monomial_face_integral(&ring, a, b) - exact).abs());
        }
    }
    Ok((worst <= 1e-13, format!("max error {worst:.2e}")))
}
