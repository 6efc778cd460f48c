//! Deterministic example curves, paths and cube families.

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::curve_model::{bfs_parents, build_complex, realize, CurveComplex, EdgeWord, Letter, SampledPath};
use crate::planar_geometry::{CubeDocument, CubeSpec};
use crate::topology::Trail;
use crate::{Error, Result};

pub const NAMES: [&str; 7] = [
    "grid",
    "cube_grid",
    "figure_eight",
    "tree",
    "circle_pl",
    "commutator_path",
    "universal_center_abel",
];

/// Side of the second figure-eight square; its area `√2` is ℚ-independent
/// of the first square's area 1.
pub fn figure_eight_side() -> f64 {
    2f64.sqrt().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureParams {
    pub k: usize,
    pub n: usize,
    pub segments: usize,
}

impl Default for FixtureParams {
    fn default() -> Self {
        FixtureParams { k: 2, n: 3, segments: 64 }
    }
}

/// A curve complex together with paths on it and, where meaningful, a cube
/// family.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub complex: CurveComplex,
    pub paths: Vec<SampledPath>,
    pub cubes: Option<CubeDocument>,
}

pub fn fixture(name: &str, params: &FixtureParams) -> Result<Fixture> {
    let (complex, paths, cubes) = match name {
        "grid" => (grid(params.k)?, Vec::new(), None),
        "cube_grid" => {
            let c = cube_grid(params.n, params.k)?;
            let cubes = CubeDocument::new(hand_cubes(&c, params.k));
            (c, Vec::new(), Some(cubes))
        }
        "figure_eight" => {
            let c = figure_eight()?;
            let [a, b] = figure_eight_loops();
            let trail = a.concat(&b)?;
            let back = reversed(&trail)?;
            (c, vec![trail.clone(), trail.concat(&back)?], None)
        }
        "tree" => {
            let (c, p) = tree()?;
            (c, vec![p], None)
        }
        "circle_pl" => {
            let p = circle_pl(params.segments)?;
            (build_complex(std::slice::from_ref(&p), 1e-9)?, vec![p], None)
        }
        "commutator_path" => (figure_eight()?, vec![commutator_path()?], None),
        "universal_center_abel" => {
            let p = universal_center_abel(params.segments)?;
            (build_complex(std::slice::from_ref(&p), 1e-9)?, vec![p], None)
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown fixture {other}; expected one of {}",
                NAMES.join(", ")
            )))
        }
    };
    Ok(Fixture {
        name: name.to_string(),
        complex,
        paths,
        cubes,
    })
}

/// Unit segments of the `k × k` subdivision of `[−1, 1]²`.
pub fn grid(k: usize) -> Result<CurveComplex> {
    cube_grid(2, k)
}

/// Edges of the `k^n` subcubes of `[−1, 1]^n`, one open segment each.
pub fn cube_grid(n: usize, k: usize) -> Result<CurveComplex> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidInput("cube grid needs n ≥ 1 and k ≥ 1".into()));
    }
    let h = 2.0 / k as f64;
    let mut paths = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let p: Vec<f64> = digits.iter().map(|&d| -1.0 + d as f64 * h).collect();
        for a in 0..n {
            if digits[a] < k {
                let mut q = p.clone();
                q[a] = -1.0 + (digits[a] + 1) as f64 * h;
                paths.push(SampledPath::from_points(vec![p.clone(), q], false)?);
            }
        }
        let mut a = 0;
        while a < n && digits[a] == k {
            digits[a] = 0;
            a += 1;
        }
        if a == n {
            break;
        }
        digits[a] += 1;
    }
    build_complex(&paths, 1e-9)
}

/// Cubes of radius `1/(2k)` centered at edge midpoints, projected along the
/// edge direction, with stated length `l = 1/(4k)`.
pub fn hand_cubes(complex: &CurveComplex, k: usize) -> Vec<CubeSpec> {
    complex
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (&e.geometry[0], &e.geometry[e.geometry.len() - 1]);
            let center: Vec<f64> = a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect();
            let axis = (0..a.len())
                .max_by(|&i, &j| (b[i] - a[i]).abs().total_cmp(&(b[j] - a[j]).abs()))
                .unwrap_or(0)
                + 1;
            CubeSpec {
                center,
                radius: 1.0 / (2.0 * k as f64),
                axis,
                l: Some(1.0 / (4.0 * k as f64)),
            }
        })
        .collect()
}

/// `(lower, upper)` estimate for the first Betti number of the cube grid:
/// `n(n−1)2^{n−3} k^n / 2^{n−2}` and the same with `(k+2)^n`.
pub fn cube_grid_betti_estimate(n: usize, k: usize) -> (f64, f64) {
    let c = (n * (n - 1)) as f64 * 2f64.powi(n as i32 - 3) / 2f64.powi(n as i32 - 2);
    (c * (k as f64).powi(n as i32), c * (k as f64 + 2.0).powi(n as i32))
}

fn square(x0: f64, y0: f64, sx: f64, sy: f64) -> Result<SampledPath> {
    SampledPath::from_points(
        vec![
            vec![x0, y0],
            vec![x0 + sx, y0],
            vec![x0 + sx, y0 + sy],
            vec![x0, y0 + sy],
            vec![x0, y0],
        ],
        true,
    )
}

/// The two counter-clockwise loops of the figure-eight, both based at the
/// origin: the unit square and a square of side [`figure_eight_side`] in
/// the third quadrant.
pub fn figure_eight_loops() -> [SampledPath; 2] {
    let s = figure_eight_side();
    [
        square(0.0, 0.0, 1.0, 1.0).expect("valid square"),
        SampledPath::from_points(
            vec![vec![0.0, 0.0], vec![-s, 0.0], vec![-s, -s], vec![0.0, -s], vec![0.0, 0.0]],
            true,
        )
        .expect("valid square"),
    ]
}

pub fn figure_eight() -> Result<CurveComplex> {
    build_complex(&figure_eight_loops(), 1e-9)
}

pub fn reversed(path: &SampledPath) -> Result<SampledPath> {
    SampledPath::from_points(path.points().iter().rev().cloned().collect(), path.is_closed())
}

/// `a b a⁻¹ b⁻¹` on the figure-eight.
pub fn commutator_path() -> Result<SampledPath> {
    let [a, b] = figure_eight_loops();
    a.concat(&b)?.concat(&reversed(&a)?)?.concat(&reversed(&b)?)
}

/// A star with three arms and a closed path walking out and back along each.
pub fn tree() -> Result<(CurveComplex, SampledPath)> {
    let arms = [vec![1.0, 0.0], vec![-0.5, 0.8], vec![-0.4, -0.9]];
    let o = vec![0.0, 0.0];
    let segs: Vec<SampledPath> = arms
        .iter()
        .map(|a| SampledPath::from_points(vec![o.clone(), a.clone()], false))
        .collect::<Result<_>>()?;
    let mut pts = vec![o.clone()];
    for a in &arms {
        pts.push(a.clone());
        pts.push(o.clone());
    }
    Ok((build_complex(&segs, 1e-9)?, SampledPath::from_points(pts, true)?))
}

/// Regular `segments`-gon inscribed in the unit circle, counter-clockwise
/// from `(1, 0)`.
pub fn circle_pl(segments: usize) -> Result<SampledPath> {
    if segments < 3 {
        return Err(Error::InvalidInput("a polygon needs at least 3 segments".into()));
    }
    let pts = (0..=segments)
        .map(|k| {
            let t = TAU * (k % segments) as f64 / segments as f64;
            vec![t.cos(), t.sin()]
        })
        .collect();
    SampledPath::from_points(pts, true)
}

/// `(sin t, sin² t)` sampled at `t_k = 2πk/N`. With `N` divisible by 4 the
/// samples are symmetric, so the polyline retraces itself exactly.
pub fn universal_center_abel(segments: usize) -> Result<SampledPath> {
    if segments == 0 || !segments.is_multiple_of(4) {
        return Err(Error::InvalidInput("segment count must be a positive multiple of 4".into()));
    }
    // exact symmetric values of sin at the sample points
    let quarter = segments / 4;
    let sin_at = |k: usize| {
        let (q, r) = (k / quarter % 4, k % quarter);
        let s = |j: usize| (TAU * j as f64 / segments as f64).sin();
        match q {
            0 => s(r),
            1 => s(quarter - r),
            2 => -s(r),
            _ => -s(quarter - r),
        }
    };
    let samples = (0..=segments)
        .map(|k| {
            let x = if k == segments { 0.0 } else { sin_at(k) };
            (TAU * k as f64 / segments as f64, vec![x, x * x])
        })
        .collect();
    SampledPath::new(2, samples, true)
}

/// A seeded random closed walk: `len` random steps from vertex 0, then back
/// to vertex 0 along the breadth-first tree.
pub fn random_closed_word(complex: &CurveComplex, seed: u64, len: usize) -> EdgeWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut letters = Vec::with_capacity(len);
    let mut v = 0usize;
    for _ in 0..len {
        let incident: Vec<Letter> = complex
            .edges()
            .iter()
            .enumerate()
            .flat_map(|(id, e)| {
                let mut out = Vec::new();
                if e.from == v {
                    out.push(Letter::new(id, 1));
                }
                if e.to == v {
                    out.push(Letter::new(id, -1));
                }
                out
            })
            .collect();
        let Some(&l) = incident.choose(&mut rng) else {
            break;
        };
        v = complex.edge(l.edge).head(l.dir);
        letters.push(l);
    }
    let parents = bfs_parents(complex, 0);
    while v != 0 {
        let (p, e) = parents[v].expect("connected complex");
        let dir = if complex.edge(e).from == v && complex.edge(e).to == p { 1 } else { -1 };
        letters.push(Letter::new(e, dir));
        v = p;
    }
    EdgeWord::new(letters)
}

/// A seeded random walk back and forth along the letter positions of a
/// closed trail, finished by walking on to the starting position.
pub fn random_covering_word(trail: &Trail, seed: u64, steps: usize) -> EdgeWord {
    let t = trail.word.letters();
    let n = t.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut letters = Vec::new();
    let mut p = 0usize;
    if n == 0 {
        return EdgeWord::new(letters);
    }
    for _ in 0..steps {
        if rng.gen_bool(0.5) {
            letters.push(t[p]);
            p = (p + 1) % n;
        } else {
            p = (p + n - 1) % n;
            letters.push(t[p].inverse());
        }
    }
    let forward = rng.gen_bool(0.5);
    while p != 0 {
        if forward {
            letters.push(t[p]);
            p = (p + 1) % n;
        } else {
            p -= 1;
            letters.push(t[p].inverse());
        }
    }
    EdgeWord::new(letters)
}

/// Realization of a closed word at vertex 0.
pub fn realize_closed(word: &EdgeWord, complex: &CurveComplex) -> Result<SampledPath> {
    realize(word, complex, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{betti1, covers_trail, euler_classify};

    #[test]
    fn grid_counts() {
        for k in 1..=4 {
            let c = grid(k).unwrap();
            assert_eq!(c.vertex_count(), (k + 1) * (k + 1));
            assert_eq!(c.edge_count(), 2 * k * (k + 1));
            assert_eq!(betti1(&c), k * k);
        }
    }

    #[test]
    fn cube_grid_betti_numbers_lie_in_the_estimate() {
        for (n, k) in [(3, 1), (3, 2), (4, 1)] {
            let m = betti1(&cube_grid(n, k).unwrap()) as f64;
            let (lo, hi) = cube_grid_betti_estimate(n, k);
            assert!(lo < m && m < hi, "n={n} k={k}: {lo} < {m} < {hi}");
        }
    }

    #[test]
    fn figure_eight_and_friends() {
        let f = fixture("figure_eight", &FixtureParams::default()).unwrap();
        assert_eq!(betti1(&f.complex), 2);
        assert_eq!(f.complex.vertex_count(), 1);
        let (c, p) = tree().unwrap();
        assert_eq!(betti1(&c), 0);
        assert!(p.is_closed());
        assert!(fixture("nope", &FixtureParams::default()).is_err());
    }

    #[test]
    fn abel_fixture_retraces() {
        let p = universal_center_abel(64).unwrap();
        let n = p.len() - 1;
        for k in 0..=16 {
            assert_eq!(p.point(k), p.point(32 - k));
            assert_eq!(p.point(32 + k)[0], -p.point(32 - k)[0]);
        }
        assert_eq!(p.point(n), &[0.0, 0.0]);
        assert!(universal_center_abel(30).is_err());
    }

    #[test]
    fn random_words_are_closed_walks() {
        let c = grid(3).unwrap();
        for seed in 0..10 {
            let w = random_closed_word(&c, seed, 12);
            assert!(w.is_valid(&c) && w.is_closed(&c));
        }
        let e = figure_eight().unwrap();
        let trail = euler_classify(&e).trail().unwrap().clone();
        for seed in 0..10 {
            let w = random_covering_word(&trail, seed, 9);
            assert!(w.is_closed(&e));
            assert!(covers_trail(&w, &trail));
        }
    }
}
