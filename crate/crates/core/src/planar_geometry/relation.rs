//! Heuristic certificates of linear independence over ℚ.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum QRelation {
    /// No integer relation with coefficients bounded by `height` exists at
    /// the working precision. `exhaustive` is false when lattice reduction
    /// was used, which only makes a relation unlikely.
    NoRelationFound { height: u64, exhaustive: bool },
    /// Coefficients `c` with `Σ c_j v_j ≈ 0`; the first nonzero entry is
    /// positive.
    Relation { coefficients: Vec<i64> },
}

impl QRelation {
    pub fn is_independent(&self) -> bool {
        matches!(self, QRelation::NoRelationFound { .. })
    }
}

/// Default coefficient height for two values.
pub const DEFAULT_HEIGHT: u64 = 10_000;
/// Largest number of candidate vectors an exhaustive search may visit.
const SEARCH_BUDGET: f64 = 4e7;

/// Searches for an integer relation among `values`. A relation is accepted
/// when `|Σ c_j v_j| ≤ 2^(−bits) · max|v| · Σ|c_j|` (without the `Σ|c_j|`
/// factor for lattice-reduction candidates).
pub fn q_independence_check(values: &[f64], precision_bits: u32) -> QRelation {
    q_independence_check_with_height(values, precision_bits, DEFAULT_HEIGHT)
}

/// As [`q_independence_check`], with an explicit height. Up to four values
/// are searched exhaustively (the height is lowered when the search would
/// exceed its budget, and the height actually used is reported); more values
/// use LLL reduction, where the height is also capped at `2^(bits/m)`: above
/// it, near-relations exist for any real values at that precision.
pub fn q_independence_check_with_height(values: &[f64], precision_bits: u32, height: u64) -> QRelation {
    let m = values.len();
    if m == 0 {
        return QRelation::NoRelationFound {
            height,
            exhaustive: true,
        };
    }
    if let Some(j) = values.iter().position(|v| *v == 0.0) {
        let mut c = vec![0; m];
        c[j] = 1;
        return QRelation::Relation { coefficients: c };
    }
    let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let eps = scale * 2f64.powi(-(precision_bits as i32));
    let accepts = |c: &[i64]| {
        let s: f64 = c.iter().zip(values).map(|(&ci, v)| ci as f64 * v).sum();
        let l1: f64 = c.iter().map(|&ci| (ci as f64).abs()).sum();
        s.abs() <= eps * l1
    };
    if m == 1 {
        return QRelation::NoRelationFound {
            height,
            exhaustive: true,
        };
    }
    if m <= 4 {
        let cap = SEARCH_BUDGET.powf(1.0 / (m - 1) as f64);
        let h = height.min(((cap - 1.0) / 2.0).floor().max(1.0) as u64) as i64;
        return exhaustive(values, h, &accepts).map_or(
            QRelation::NoRelationFound {
                height: h as u64,
                exhaustive: true,
            },
            |c| QRelation::Relation { coefficients: c },
        );
    }
    let h = height.min(2f64.powf(precision_bits as f64 / m as f64).floor() as u64);
    let strict = |c: &[i64]| {
        let s: f64 = c.iter().zip(values).map(|(&ci, v)| ci as f64 * v).sum();
        s.abs() <= eps
    };
    match lll_relation(values, precision_bits) {
        Some(c) if strict(&c) && c.iter().all(|x| x.unsigned_abs() <= h) => QRelation::Relation { coefficients: normalise(c) },
        _ => QRelation::NoRelationFound {
            height: h,
            exhaustive: false,
        },
    }
}

fn normalise(mut c: Vec<i64>) -> Vec<i64> {
    if c.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        c.iter_mut().for_each(|x| *x = -*x);
    }
    c
}

/// Visits every coefficient vector over the values other than the largest
/// one; the pivot coefficient is then forced by rounding. Among accepted
/// relations the one of least height wins.
fn exhaustive(values: &[f64], h: i64, accepts: &dyn Fn(&[i64]) -> bool) -> Option<Vec<i64>> {
    let m = values.len();
    let pivot = (0..m).max_by(|&a, &b| values[a].abs().total_cmp(&values[b].abs())).unwrap();
    let free: Vec<usize> = (0..m).filter(|&j| j != pivot).collect();
    let k = free.len();
    let mut digits = vec![-h; k];
    let mut c = vec![0i64; m];
    let mut best: Option<(i64, Vec<i64>)> = None;
    loop {
        // first nonzero free digit positive: each relation is seen once up to sign
        let positive = digits.iter().find(|&&d| d != 0).is_some_and(|&d| d > 0);
        if positive {
            for (slot, &j) in free.iter().enumerate() {
                c[j] = digits[slot];
            }
            let rest: f64 = free.iter().map(|&j| c[j] as f64 * values[j]).sum();
            let cp = (-rest / values[pivot]).round();
            if cp.abs() <= h as f64 {
                c[pivot] = cp as i64;
                let height = c.iter().map(|x| x.abs()).max().unwrap();
                if best.as_ref().is_none_or(|(bh, _)| height < *bh) && accepts(&c) {
                    best = Some((height, c.clone()));
                }
            }
        }
        let mut i = 0;
        while i < k && digits[i] == h {
            digits[i] = -h;
            i += 1;
        }
        if i == k {
            break;
        }
        digits[i] += 1;
    }
    best.map(|(_, c)| normalise(c))
}

/// Integer relation candidate from the LLL-reduced basis of
/// `[I | round(K·v)]`.
fn lll_relation(values: &[f64], precision_bits: u32) -> Option<Vec<i64>> {
    let m = values.len();
    let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let k = 2f64.powi(precision_bits.min(50) as i32) / scale;
    let mut basis: Vec<Vec<i128>> = (0..m)
        .map(|i| {
            let mut row = vec![0i128; m + 1];
            row[i] = 1;
            row[m] = (k * values[i]).round() as i128;
            row
        })
        .collect();
    lll(&mut basis, 0.75);
    basis
        .iter()
        .filter(|row| row[..m].iter().any(|&x| x != 0))
        .min_by_key(|row| row[m].unsigned_abs())
        .and_then(|row| row[..m].iter().map(|&x| i64::try_from(x).ok()).collect())
}

fn lll(b: &mut [Vec<i128>], delta: f64) {
    let n = b.len();
    let dotf = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let gram_schmidt = |b: &[Vec<i128>]| {
        let mut bs: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut mu = vec![vec![0.0; n]; n];
        for i in 0..n {
            let bi: Vec<f64> = b[i].iter().map(|&x| x as f64).collect();
            let mut v = bi.clone();
            for j in 0..i {
                mu[i][j] = dotf(&bi, &bs[j]) / dotf(&bs[j], &bs[j]);
                for (vk, bk) in v.iter_mut().zip(&bs[j]) {
                    *vk -= mu[i][j] * bk;
                }
            }
            bs.push(v);
        }
        (bs, mu)
    };
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 100_000 {
        guard += 1;
        for j in (0..k).rev() {
            let (_, mu) = gram_schmidt(b);
            let q = mu[k][j].round() as i128;
            if q != 0 {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= q * y;
                }
            }
        }
        let (bs, mu) = gram_schmidt(b);
        if dotf(&bs[k], &bs[k]) >= (delta - mu[k][k - 1] * mu[k][k - 1]) * dotf(&bs[k - 1], &bs[k - 1]) {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}
