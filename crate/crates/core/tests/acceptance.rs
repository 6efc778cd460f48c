//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! measured quantities. Expected values are computed here from closed forms
//! or by independent means, never read back from the library.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` are evaluated exactly as stated
//! and reported; they do not make the run fail.

use std::f64::consts::PI;
use std::time::Instant;

use moment_atlas::approx::{approximate, approximate_with_order, error_bound, C_OP};
use moment_atlas::center::{classify_conditions, decide, fourth_coefficient, residual_sweep, DecideOptions, Decision, OdeSystem, DEFAULT_STEPS_PER_UNIT};
use moment_atlas::curve_model::{build_complex, CurveComplex, EdgeWord, SampledPath};
use moment_atlas::fixtures;
use moment_atlas::moments::{
    face_coefficients, monomial_face_integral, moment_quadrature, moment_via_homology, specs_up_to_degree, vanishing_gate, vanishing_scan, MomentSpec,
};
use moment_atlas::planar_geometry::{extract_faces, n_bound_2d, n_bound_nd, CubeSpec};
use moment_atlas::projection::{expansion_check, sample_direction};
use moment_atlas::topology::{betti1, cycle_basis, eulerian_trails};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The literal inequality `√m ≤ d/r` is false for the grid family itself
/// (`√(k²) = k > k/2`). Packing `m` squares of side `r` into a square of
/// side `2d` only gives `√m ≤ 2d/r`.
const KNOWN_UNATTAINABLE: [usize; 1] = [4];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn main() {
    let criteria: Vec<(usize, &str, fn() -> Outcome)> = vec![
        (1, "grid bound N = floor(27 pi k / 4) + 1", ac1),
        (2, "cube grid bound N = floor(32 pi n k) + 1", ac2),
        (3, "quadrature and homology pipelines agree", ac3),
        (4, "sqrt(m) <= d/r < N on every fixture", ac4),
        (5, "vanishing up to N implies vanishing up to N + 6", ac5),
        (6, "covering words: homology trivial iff free reduction trivial", ac6),
        (7, "center soundness by return map", ac7),
        (8, "3 M1 + 2 M2 identity (M1 + M2 = 0)", ac8),
        (9, "approximation operator structure and error", ac9),
        (10, "multinomial expansion identity", ac10),
        (11, "exact polygon monomial integrals", ac11),
    ];
    let mut unexpected = 0;
    for (id, name, f) in criteria {
        let t = Instant::now();
        let o = f();
        let secs = t.elapsed().as_secs_f64();
        let known = KNOWN_UNATTAINABLE.contains(&id);
        let status = if o.passed { "PASS" } else { "FAIL" };
        let note = if known && !o.passed { " (known unattainable as stated)" } else { "" };
        println!("AC{id:<2} {status} {name} [{secs:.2}s] {}{note}", o.detail);
        if !o.passed && !known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}

fn ac1() -> Outcome {
    let mut ok = true;
    let mut got = Vec::new();
    for k in 1..=4usize {
        let t = Instant::now();
        let c = fixtures::grid(k).unwrap();
        let faces = extract_faces(&c).unwrap();
        let n = n_bound_2d(&faces);
        let expected = (27.0 * PI * k as f64 / 4.0).floor() as u64 + 1;
        ok &= n == expected && [22, 43, 64, 85][k - 1] == expected;
        ok &= betti1(&c) == k * k && faces.len() == k * k;
        for f in &faces.faces {
            ok &= (f.inscribed_side - 2.0 / k as f64).abs() < 1e-9;
            ok &= (f.area - 4.0 / (k * k) as f64).abs() < 1e-9;
        }
        ok &= t.elapsed().as_secs_f64() < 1.0;
        got.push(n);
    }
    outcome(ok, format!("N = {got:?}"))
}

/// Cubes of half side `1/(2k)` at edge midpoints, along the edge, `l = 1/(4k)`.
fn hand_family(c: &CurveComplex, k: usize) -> Vec<CubeSpec> {
    c.edges()
        .iter()
        .map(|e| {
            let a = &e.geometry[0];
            let b = e.geometry.last().unwrap();
            CubeSpec {
                center: a.iter().zip(b).map(|(x, y)| (x + y) / 2.0).collect(),
                radius: 0.5 / k as f64,
                axis: (0..a.len()).find(|&i| a[i] != b[i]).unwrap() + 1,
                l: Some(0.25 / k as f64),
            }
        })
        .collect()
}

fn ac2() -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut got = Vec::new();
    for (n, k) in [(3usize, 1usize), (3, 2), (4, 1)] {
        let c = fixtures::cube_grid(n, k).unwrap();
        let b = n_bound_nd(&c, Some(&hand_family(&c, k))).unwrap();
        ok &= b.n_bar == (32.0 * PI * (n * k) as f64).floor() as u64 + 1;
        // m = E − V + 1 with V = (k+1)^n and E = n k (k+1)^{n−1}
        let v = (k + 1).pow(n as u32);
        let e = n * k * (k + 1).pow(n as u32 - 1);
        let m = e - v + 1;
        ok &= betti1(&c) == m;
        let coef = (n * (n - 1)) as f64 * 2f64.powi(n as i32 - 3) / 2f64.powi(n as i32 - 2);
        ok &= coef * (k as f64).powi(n as i32) < m as f64 && (m as f64) < coef * ((k + 2) as f64).powi(n as i32);
        got.push((b.n_bar, m));
    }
    ok &= t.elapsed().as_secs_f64() < 2.0;
    outcome(ok, format!("(N, m) = {got:?}"))
}

fn seeded_words() -> Vec<(usize, SampledPath)> {
    let complexes = [fixtures::grid(2).unwrap(), fixtures::figure_eight().unwrap()];
    (0..50u64)
        .map(|seed| {
            let which = (seed % 2) as usize;
            let w = fixtures::random_closed_word(&complexes[which], seed + 7, 5 + (seed as usize * 3) % 20);
            (which, fixtures::realize_closed(&w, &complexes[which]).unwrap())
        })
        .collect()
}

fn ac3() -> Outcome {
    let t = Instant::now();
    let complexes = [fixtures::grid(2).unwrap(), fixtures::figure_eight().unwrap()];
    let faces = [extract_faces(&complexes[0]).unwrap(), extract_faces(&complexes[1]).unwrap()];
    let mut worst = 0.0f64;
    let mut count = 0;
    for (which, p) in seeded_words() {
        let coeffs = face_coefficients(&p, &faces[which]).unwrap();
        for spec in specs_up_to_degree(2, 8) {
            let q = moment_quadrature(&p, &spec).unwrap();
            let h = moment_via_homology(&faces[which], &coeffs, &spec).unwrap();
            worst = worst.max((q - h).abs() / (1.0 + q.abs()));
            count += 1;
        }
    }
    let ok = worst <= 1e-9 && t.elapsed().as_secs_f64() < 30.0;
    outcome(ok, format!("{count} moments, max |q - h|/(1 + |q|) = {worst:.2e}"))
}

fn ac4() -> Outcome {
    let mut complexes: Vec<(String, CurveComplex)> = (1..=4).map(|k| (format!("grid k={k}"), fixtures::grid(k).unwrap())).collect();
    complexes.push(("figure-eight".into(), fixtures::figure_eight().unwrap()));
    complexes.push(("64-gon".into(), build_complex(&[fixtures::circle_pl(64).unwrap()], 1e-9).unwrap()));
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, c) in &complexes {
        let faces = extract_faces(c).unwrap();
        let m = faces.len();
        if m == 0 {
            continue;
        }
        let ratio = faces.half_side / faces.min_side;
        let n = n_bound_2d(&faces) as f64;
        let left = (m as f64).sqrt() <= ratio;
        let right = ratio < n;
        ok &= left && right;
        parts.push(format!("{name}: sqrt(m)={:.3} d/r={:.3} N={n} [{}|{}]", (m as f64).sqrt(), ratio, left, right));
    }
    outcome(ok, parts.join("; "))
}

fn ac5() -> Outcome {
    let complexes = [fixtures::grid(2).unwrap(), fixtures::figure_eight().unwrap()];
    let bounds = [n_bound_2d(&extract_faces(&complexes[0]).unwrap()), n_bound_2d(&extract_faces(&complexes[1]).unwrap())];
    let tol = 1e-9;
    let mut premises = 0;
    let mut ok = true;
    for (which, p) in seeded_words() {
        let n = bounds[which] as u32;
        if !vanishing_scan(&p, n, tol).is_all_zero() {
            continue;
        }
        premises += 1;
        for spec in specs_up_to_degree(2, n + 6) {
            let v = moment_quadrature(&p, &spec).unwrap();
            ok &= v.abs() <= vanishing_gate(&p, tol, spec.degree());
        }
    }
    outcome(ok, format!("premise held for {premises}/50 words, bounds {bounds:?}"))
}

/// Free reduction over the two loop edges of the figure-eight, which are
/// themselves free generators of its fundamental group.
fn reduces_to_identity(w: &EdgeWord) -> bool {
    let mut stack: Vec<(usize, i8)> = Vec::new();
    for l in w.letters() {
        if stack.last() == Some(&(l.edge, -l.dir)) {
            stack.pop();
        } else {
            stack.push((l.edge, l.dir));
        }
    }
    stack.is_empty()
}

fn ac6() -> Outcome {
    let c = fixtures::figure_eight().unwrap();
    assert!(c.edges().iter().all(|e| e.is_loop()));
    let basis = cycle_basis(&c, 3);
    let trails = eulerian_trails(&c, 64);
    let mut agree = 0;
    let mut covering = 0;
    let mut trivial = 0;
    for seed in 0..30u64 {
        let w = fixtures::random_covering_word(&trails[seed as usize % trails.len()], 500 + seed, 2 + seed as usize % 11);
        let flags = classify_conditions(&w, &basis, &trails).unwrap();
        covering += flags.covers as usize;
        // net traversals of each loop
        let mut net = vec![0i64; c.edge_count()];
        for l in w.letters() {
            net[l.edge] += l.dir as i64;
        }
        let homology_zero = net.iter().all(|&x| x == 0);
        let free = reduces_to_identity(&w);
        if homology_zero == free && flags.homologically_trivial == homology_zero && flags.reduction_contractible == free {
            agree += 1;
        }
        trivial += homology_zero as usize;
    }
    outcome(agree == 30 && covering == 30, format!("{agree}/30 agree, {covering}/30 cover, {trivial} trivial"))
}

fn ac7() -> Outcome {
    let t = Instant::now();
    let abel = fixtures::universal_center_abel(256).unwrap();
    let r = residual_sweep(&abel, &[0.01, -0.01, 0.05, -0.05], DEFAULT_STEPS_PER_UNIT);
    let abel_worst = r.iter().map(|x| x.residual).fold(0.0, f64::max);
    let sq = SampledPath::from_points(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![0.0, 0.0]], true).unwrap();
    let c = build_complex(std::slice::from_ref(&sq), 1e-9).unwrap();
    let verdict = decide(
        &OdeSystem::new(sq).unwrap(),
        &c,
        &DecideOptions {
            residual_v0: vec![0.1, -0.1, 0.05, -0.05],
            ..DecideOptions::default()
        },
    )
    .unwrap();
    let sq_best = verdict.residuals.iter().filter(|x| x.v0.abs() <= 0.1).map(|x| x.residual).fold(0.0, f64::max);
    let witness = verdict.witness.as_ref().map(|w| w.spec.clone());
    let ok = abel_worst <= 1e-8
        && verdict.decision == Decision::NotCenter
        && witness == Some(MomentSpec::new(vec![1, 0], 2).unwrap())
        && sq_best >= 1e-4
        && t.elapsed().as_secs_f64() < 5.0;
    outcome(ok, format!("abel max residual {abel_worst:.2e}; square residual {sq_best:.3e}, witness {witness:?}"))
}

fn shoelace(p: &SampledPath) -> f64 {
    p.segments().map(|(a, b)| a[0] * b[1] - b[0] * a[1]).sum::<f64>() / 2.0
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let mut pts = vec![vec![0.0, 0.0]];
        for _ in 0..rng.gen_range(2..10) {
            pts.push(vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]);
        }
        pts.push(vec![0.0, 0.0]);
        let p = SampledPath::from_points(pts, true).unwrap();
        let m1 = moment_quadrature(&p, &MomentSpec::new(vec![1, 0], 2).unwrap()).unwrap();
        let m2 = moment_quadrature(&p, &MomentSpec::new(vec![0, 1], 1).unwrap()).unwrap();
        let area = shoelace(&p);
        let fourth = fourth_coefficient(&p).unwrap();
        worst = worst
            .max((m1 + m2).abs())
            .max((m1 - area).abs())
            .max((fourth - (3.0 * m1 + 2.0 * m2)).abs())
            .max((fourth - m1).abs());
    }
    outcome(worst <= 1e-12, format!("max deviation {worst:.2e}"))
}

/// `Σ_j c_j cos(j arccos x)`.
fn cheb_sum(c: &[f64], x: f64) -> f64 {
    let th = x.clamp(-1.0, 1.0).acos();
    c.iter().enumerate().map(|(j, cj)| cj * (j as f64 * th).cos()).sum()
}

fn ac9() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 1..=3 {
        let p = approximate(|_| -1.5, n, 7);
        ok &= (p.coefficients[0] + 1.5).abs() < 1e-15 && p.coefficients[1..].iter().all(|c| c.abs() < 1e-14);
    }
    let f = |x: &[f64]| (x[0] + 0.1).abs().max((x[1] - 0.4).abs()) + (x[0] * x[1]).abs();
    let a = approximate_with_order(f, 2, 10, &[0, 1]);
    let b = approximate_with_order(f, 2, 10, &[1, 0]);
    let commute = a.coefficients.iter().zip(&b.coefficients).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    ok &= commute <= 1e-12;
    parts.push(format!("axis-order difference {commute:.1e}"));
    let mut errors = Vec::new();
    for k in [4, 8, 16, 32] {
        let p = approximate(|x| x[0].abs(), 1, k);
        let err = (0..10_000)
            .map(|i| {
                let x = -1.0 + 2.0 * i as f64 / 9_999.0;
                (x.abs() - cheb_sum(&p.coefficients, x)).abs()
            })
            .fold(0.0, f64::max);
        ok &= err <= C_OP / k as f64 && (error_bound(1, k, 1.0) - C_OP / k as f64).abs() < 1e-15;
        errors.push(err);
    }
    ok &= errors.windows(2).all(|w| w[1] <= w[0]);
    let shown: Vec<String> = errors.iter().map(|e| format!("{e:.3e}")).collect();
    outcome(ok, format!("C_op = pi^2/2; |x| errors at k = 4, 8, 16, 32: {}; {}", shown.join(", "), parts.join(", ")))
}

fn ac10() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut checks = 0;
    let mut ok = true;
    for n in [3usize, 4] {
        for i in 0..20u64 {
            let len = rng.gen_range(3..9);
            let mut pts: Vec<Vec<f64>> = (0..len).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            pts.push(pts[0].clone());
            let p = SampledPath::from_points(pts, true).unwrap();
            for j in 0..5u64 {
                let v = sample_direction(31 * i + j + 1000 * n as u64, n).unwrap();
                for d in 0..=6 {
                    ok &= expansion_check(&p, &v, d, 1e-9).unwrap();
                    checks += 1;
                }
            }
        }
    }
    ok &= t.elapsed().as_secs_f64() < 60.0;
    outcome(ok, format!("{checks} identities"))
}

fn ac11() -> Outcome {
    let ring = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
    let mut worst = 0.0f64;
    for a in 0..=10u32 {
        for b in 0..=10u32 {
            worst = worst.max((monomial_face_integral(&ring, a, b) - 1.0 / ((a + 1) * (b + 1)) as f64).abs());
        }
    }
    outcome(worst <= 1e-13, format!("max error {worst:.2e}"))
}
