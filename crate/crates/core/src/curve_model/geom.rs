//! Small vector helpers over `&[f64]` points of arbitrary dimension.

use std::cmp::Ordering;

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

pub fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Parameter in `[0, 1]` of the point of segment `a..b` closest to `p`, and
/// the distance to it.
pub fn project_onto_segment(p: &[f64], a: &[f64], b: &[f64]) -> (f64, f64) {
    let d = sub(b, a);
    let len2 = dot(&d, &d);
    let t = if len2 == 0.0 {
        0.0
    } else {
        (dot(&sub(p, a), &d) / len2).clamp(0.0, 1.0)
    };
    (t, dist(p, &lerp(a, b, t)))
}

/// Closest points between two segments when their supporting lines are not
/// parallel. Returns the parameters on each segment (unclamped) and the
/// distance between the corresponding points, or `None` for parallel lines.
pub fn line_closest_params(a0: &[f64], a1: &[f64], b0: &[f64], b1: &[f64]) -> Option<(f64, f64)> {
    let u = sub(a1, a0);
    let v = sub(b1, b0);
    let w = sub(a0, b0);
    let uu = dot(&u, &u);
    let vv = dot(&v, &v);
    let uv = dot(&u, &v);
    let uw = dot(&u, &w);
    let vw = dot(&v, &w);
    let denom = uu * vv - uv * uv;
    if denom <= 1e-14 * uu * vv {
        return None;
    }
    let s = (uv * vw - vv * uw) / denom;
    let t = (uu * vw - uv * uw) / denom;
    Some((s, t))
}

/// Axis-aligned bounding box as `(min, max)` per coordinate.
pub fn bounding_box<'a, I: IntoIterator<Item = &'a [f64]>>(dim: usize, pts: I) -> (Vec<f64>, Vec<f64>) {
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for p in pts {
        for k in 0..dim {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    (lo, hi)
}

pub fn diameter(lo: &[f64], hi: &[f64]) -> f64 {
    if lo.iter().any(|x| !x.is_finite()) {
        return 0.0;
    }
    dist(lo, hi)
}

/// Shoelace signed area of a closed planar polyline (first point need not be
/// repeated at the end).
pub fn signed_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    let mut s = 0.0;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        s += p[0] * q[1] - q[0] * p[1];
    }
    0.5 * s
}

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so representatives are stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
