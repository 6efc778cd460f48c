//! Planar projections `G_v(t) = (⟨v_1, G(t)⟩, ⟨v_2, G(t)⟩)` of paths in ℝⁿ
//! and the multinomial identity relating their moments to those of `G`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve_model::SampledPath;
use crate::moments::{moment_quadrature, MomentSpec};
use crate::{Error, Result};

/// Largest degree accepted by [`expansion_check`].
pub const MAX_EXPANSION_DEGREE: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionPair {
    pub v1: Vec<f64>,
    pub v2: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl DirectionPair {
    pub fn new(v1: Vec<f64>, v2: Vec<f64>) -> Result<Self> {
        if v1.len() != v2.len() {
            return Err(Error::DimensionMismatch {
                expected: v1.len(),
                got: v2.len(),
            });
        }
        let zero = |v: &[f64]| v.iter().all(|x| *x == 0.0);
        if zero(&v1) || zero(&v2) {
            return Err(Error::InvalidInput("direction vector is zero".into()));
        }
        let n1: f64 = v1.iter().map(|x| x * x).sum();
        let n2: f64 = v2.iter().map(|x| x * x).sum();
        let d: f64 = v1.iter().zip(&v2).map(|(a, b)| a * b).sum();
        if n1 * n2 - d * d <= 1e-24 * n1 * n2 {
            return Err(Error::InvalidInput("direction vectors are proportional".into()));
        }
        Ok(DirectionPair { v1, v2, seed: None })
    }

    pub fn dim(&self) -> usize {
        self.v1.len()
    }

    pub fn scaled(&self, c: f64) -> DirectionPair {
        DirectionPair {
            v1: self.v1.iter().map(|x| c * x).collect(),
            v2: self.v2.iter().map(|x| c * x).collect(),
            seed: self.seed,
        }
    }
}

/// Draws `2n` coordinates uniformly from `[−1, 1]`. Almost every pair avoids
/// the exceptional set of directions, so a random draw stands in for
/// algebraically independent coordinates.
pub fn sample_direction(seed: u64, n: usize) -> Result<DirectionPair> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("projection needs dimension at least 3, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let v1: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let v2: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        if let Ok(mut pair) = DirectionPair::new(v1, v2) {
            pair.seed = Some(seed);
            return Ok(pair);
        }
    }
}

pub fn project(path: &SampledPath, v: &DirectionPair) -> Result<SampledPath> {
    if path.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            got: path.dim(),
        });
    }
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    path.map_points(|p| vec![dot(&v.v1, p), dot(&v.v2, p)])
}

/// `(∫ g_{1v}′, ∫ g_{1v}^d g_{2v}′)` for a projected path.
pub fn restricted_moment(path_v: &SampledPath, d: u32) -> Result<(f64, f64)> {
    let first = moment_quadrature(path_v, &MomentSpec::new(vec![0, 0], 1)?)?;
    let second = moment_quadrature(path_v, &MomentSpec::new(vec![d, 0], 2)?)?;
    Ok((first, second))
}

/// Both sides of the multinomial identity
/// `∫ g_{1v}^d g_{2v}′ = Σ_i v_{2i} Σ_{|α|=d} d!/α! v_1^α ∫ G^α g_i′`.
pub fn expansion_sides(path: &SampledPath, v: &DirectionPair, d: usize) -> Result<(f64, f64)> {
    if d > MAX_EXPANSION_DEGREE {
        return Err(Error::DegreeTooLarge(d));
    }
    let n = path.dim();
    let projected = project(path, v)?;
    let lhs = restricted_moment(&projected, d as u32)?.1;
    let mut factorial = vec![1.0f64; d + 1];
    for k in 1..=d {
        factorial[k] = factorial[k - 1] * k as f64;
    }
    let mut rhs = 0.0;
    for alpha in compositions(d, n) {
        let mut coef = factorial[d];
        for (j, &a) in alpha.iter().enumerate() {
            coef *= v.v1[j].powi(a as i32) / factorial[a as usize];
        }
        if coef == 0.0 {
            continue;
        }
        for i in 1..=n {
            if v.v2[i - 1] == 0.0 {
                continue;
            }
            let m = moment_quadrature(path, &MomentSpec::new(alpha.clone(), i)?)?;
            rhs += coef * v.v2[i - 1] * m;
        }
    }
    Ok((lhs, rhs))
}

pub fn expansion_check(path: &SampledPath, v: &DirectionPair, d: usize, tol: f64) -> Result<bool> {
    let (lhs, rhs) = expansion_sides(path, v, d)?;
    Ok((lhs - rhs).abs() <= tol * (1.0 + lhs.abs()))
}

/// Multi-indices of length `n` summing to `d`.
fn compositions(d: usize, n: usize) -> Vec<Vec<u32>> {
    fn rec(rest: usize, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(rest as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=rest).rev() {
            cur.push(a as u32);
            rec(rest - a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, n, &mut Vec::with_capacity(n), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_closed(seed: u64, n: usize, len: usize) -> SampledPath {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pts: Vec<Vec<f64>> = (0..len).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        pts.push(pts[0].clone());
        SampledPath::from_points(pts, true).unwrap()
    }

    #[test]
    fn sampling_is_reproducible_and_bounded() {
        let a = sample_direction(7, 4).unwrap();
        assert_eq!(a, sample_direction(7, 4).unwrap());
        assert_ne!(a, sample_direction(8, 4).unwrap());
        assert!(a.v1.iter().chain(&a.v2).all(|x| (-1.0..=1.0).contains(x)));
        assert!(sample_direction(1, 2).is_err());
    }

    #[test]
    fn projection_basics() {
        let p = random_closed(3, 3, 6);
        let e = DirectionPair::new(vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]).unwrap();
        let q = project(&p, &e).unwrap();
        for (a, b) in p.points().iter().zip(q.points()) {
            assert_eq!(&a[..2], &b[..]);
        }
        assert!(q.is_closed());
        let v = sample_direction(1, 3).unwrap();
        let one = project(&p, &v).unwrap();
        let two = project(&p, &v.scaled(2.0)).unwrap();
        for (a, b) in one.points().iter().zip(two.points()) {
            assert!((2.0 * a[0] - b[0]).abs() < 1e-15 && (2.0 * a[1] - b[1]).abs() < 1e-15);
        }
        assert!(DirectionPair::new(vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]).is_err());
    }

    #[test]
    fn restricted_moments_of_a_square() {
        let sq = SampledPath::from_points(
            vec![vec![0.0, 0.0, 5.0], vec![1.0, 0.0, 5.0], vec![1.0, 1.0, 5.0], vec![0.0, 1.0, 5.0], vec![0.0, 0.0, 5.0]],
            true,
        )
        .unwrap();
        let e = DirectionPair::new(vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]).unwrap();
        let q = project(&sq, &e).unwrap();
        assert_eq!(restricted_moment(&q, 0).unwrap(), (0.0, 0.0));
        let (a, b) = restricted_moment(&q, 1).unwrap();
        assert_eq!(a, 0.0);
        assert!((b - 1.0).abs() < 1e-15);
    }

    #[test]
    fn multinomial_identity() {
        for seed in 0..5 {
            let p = random_closed(seed, 3, 7);
            let v = sample_direction(100 + seed, 3).unwrap();
            assert!(expansion_check(&p, &v, 0, 1e-12).unwrap());
            assert!(expansion_check(&p, &v, 1, 1e-10).unwrap());
            assert!(expansion_check(&p, &v, 3, 1e-9).unwrap());
        }
        let p = random_closed(9, 4, 5);
        let v = sample_direction(9, 4).unwrap();
        assert!(matches!(expansion_check(&p, &v, 13, 1e-9), Err(Error::DegreeTooLarge(13))));
    }

    #[test]
    fn composition_count() {
        // C(d + n − 1, n − 1)
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 4).len(), 1);
        assert!(compositions(5, 3).iter().all(|a| a.iter().sum::<u32>() == 5));
    }
}
