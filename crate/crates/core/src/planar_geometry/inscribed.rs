//! Largest open axis-parallel square inside a polygon.
//!
//! The side of the largest square centred at `p` is `2·φ(p)` where `φ` is the
//! ℓ∞ distance from `p` to the complement of the face. For convex faces `φ` is
//! a minimum of affine functions and its maximum is a three-variable linear
//! program, solved exactly by vertex enumeration. Other faces use a
//! branch-and-bound search: `φ` is 1-Lipschitz in ℓ∞, and on small boxes the
//! few nearby boundary segments give a sharper local linear-programming bound
//! that also disposes of plateaus of maximisers.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::winding::ring_winding;
use crate::{Error, Result};

/// Certified bracket `side ≤ r < upper` together with the centre of a square
/// of side `side`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InscribedSquare {
    pub side: f64,
    pub upper: f64,
    pub center: [f64; 2],
}

const MAX_BOXES: usize = 20_000_000;
const LP_VERTEX_LIMIT: usize = 160;

/// ℓ∞ distance from `p` to the segment `a..b`.
pub fn linf_distance_to_segment(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (ux, uy) = (a[0] - p[0], a[1] - p[1]);
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let f = |s: f64| (ux + s * dx).abs().max((uy + s * dy).abs());
    let mut best = f(0.0).min(f(1.0));
    let mut try_s = |num: f64, den: f64| {
        if den != 0.0 {
            let s = num / den;
            if (0.0..=1.0).contains(&s) {
                best = best.min(f(s));
            }
        }
    };
    try_s(-ux, dx);
    try_s(-uy, dy);
    try_s(-(ux - uy), dx - dy);
    try_s(-(ux + uy), dx + dy);
    best
}

/// `φ(p)` for the open region bounded by `ring` (nonzero winding rule).
pub fn linf_depth(ring: &[[f64; 2]], p: [f64; 2]) -> f64 {
    if ring_winding(ring, p) == 0 {
        return 0.0;
    }
    let n = ring.len();
    (0..n)
        .map(|i| linf_distance_to_segment(p, ring[i], ring[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

/// Largest inscribed axis-parallel square of the face bounded by the closed
/// ring (first point not repeated), to within `eps` in side length.
pub fn inscribed_square(ring: &[[f64; 2]], eps: f64) -> Result<InscribedSquare> {
    if !(eps > 0.0) {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    let result = match convex_ccw(ring) {
        Some(hull) if hull.len() <= LP_VERTEX_LIMIT => convex_lp(&hull),
        _ => branch_and_bound(ring, eps),
    };
    if result.side <= 0.0 {
        return Err(Error::DegenerateGeometry("face has empty interior".into()));
    }
    Ok(result)
}

/// The ring with collinear points removed, if it is a strictly convex
/// counter-clockwise polygon.
pub(crate) fn convex_ccw(ring: &[[f64; 2]]) -> Option<Vec<[f64; 2]>> {
    let scale = ring
        .iter()
        .flat_map(|p| p.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(1e-300);
    let tol = 1e-12 * scale * scale;
    let mut pts: Vec<[f64; 2]> = Vec::with_capacity(ring.len());
    for &p in ring {
        if pts.last().is_none_or(|q: &[f64; 2]| *q != p) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    let cross = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
    let dotp = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]);
    // drop straight-through points until stable
    loop {
        let n = pts.len();
        if n < 3 {
            return None;
        }
        let drop = (0..n).find(|&i| {
            let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
            cross(a, b, c).abs() <= tol && dotp(a, b, c) > 0.0
        });
        match drop {
            Some(i) => {
                pts.remove(i);
            }
            None => break,
        }
    }
    let n = pts.len();
    let mut turning = 0.0;
    for i in 0..n {
        let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
        if cross(a, b, c) <= tol {
            return None;
        }
        let u = [b[0] - a[0], b[1] - a[1]];
        let v = [c[0] - b[0], c[1] - b[1]];
        turning += (u[0] * v[1] - u[1] * v[0]).atan2(u[0] * v[0] + u[1] * v[1]);
    }
    ((turning - std::f64::consts::TAU).abs() < 1e-6).then_some(pts)
}

/// max t subject to `n_k·p − c_k ≥ ‖n_k‖₁ t` for every edge.
fn convex_lp(hull: &[[f64; 2]]) -> InscribedSquare {
    let n = hull.len();
    let rows: Vec<[f64; 4]> = (0..n)
        .map(|k| {
            let (a, b) = (hull[k], hull[(k + 1) % n]);
            let nx = -(b[1] - a[1]);
            let ny = b[0] - a[0];
            let l1 = nx.abs() + ny.abs();
            // normalised so that the row reads  nx·x + ny·y − t ≥ c
            [nx / l1, ny / l1, -1.0, (nx * a[0] + ny * a[1]) / l1]
        })
        .collect();
    let feasible = |x: f64, y: f64, t: f64| {
        rows.iter()
            .all(|r| r[0] * x + r[1] * y + r[2] * t - r[3] >= -1e-12 * (1.0 + r[3].abs()))
    };
    let mut best = InscribedSquare {
        side: 0.0,
        upper: 0.0,
        center: hull[0],
    };
    let mut best_t = f64::NEG_INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (rows[i], rows[j], rows[k]);
                let Some([x, y, t]) = solve3([a[..3].try_into().unwrap(), b[..3].try_into().unwrap(), c[..3].try_into().unwrap()], [a[3], b[3], c[3]]) else {
                    continue;
                };
                if t > best_t && feasible(x, y, t) {
                    best_t = t;
                    best.center = [x, y];
                }
            }
        }
    }
    // recompute from the point itself so that side is attained
    let phi = rows
        .iter()
        .map(|r| r[0] * best.center[0] + r[1] * best.center[1] - r[3])
        .fold(f64::INFINITY, f64::min)
        .max(0.0);
    best.side = 2.0 * phi;
    best.upper = 2.0 * best_t.max(phi) * (1.0 + 1e-12) + f64::MIN_POSITIVE;
    best
}

fn solve3(m: [[f64; 3]; 3], rhs: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(m);
    let scale: f64 = m.iter().flat_map(|r| r.iter()).map(|x| x.abs()).sum();
    if d.abs() <= 1e-14 * scale * scale * scale {
        return None;
    }
    let mut out = [0.0; 3];
    for (c, o) in out.iter_mut().enumerate() {
        let mut mc = m;
        for r in 0..3 {
            mc[r][c] = rhs[r];
        }
        *o = det(mc) / d;
    }
    Some(out)
}

#[derive(PartialEq)]
struct Cell {
    ub: f64,
    cx: f64,
    cy: f64,
    hx: f64,
    hy: f64,
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ub.total_cmp(&other.ub)
    }
}

fn branch_and_bound(ring: &[[f64; 2]], eps: f64) -> InscribedSquare {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in ring {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let n = ring.len();
    let seg = |s: usize| (ring[s], ring[(s + 1) % n]);
    let half_eps = 0.5 * eps;
    let cell = |cx: f64, cy: f64, hx: f64, hy: f64| {
        let dists: Vec<f64> = (0..n)
            .map(|s| {
                let (a, b) = seg(s);
                linf_distance_to_segment([cx, cy], a, b)
            })
            .collect();
        let nearest = dists.iter().cloned().fold(f64::INFINITY, f64::min);
        let phi = if ring_winding(ring, [cx, cy]) == 0 { 0.0 } else { nearest };
        let h = hx.max(hy);
        let mut ub = phi + h;
        // segments that can be nearest somewhere in the box
        let active: Vec<usize> = (0..n).filter(|&s| dists[s] <= nearest + 2.0 * h).collect();
        if active.len() <= 6 {
            ub = ub.min(affine_envelope_bound(&active, seg, [cx, cy], [hx, hy]));
        }
        (phi, Cell { ub, cx, cy, hx, hy })
    };
    let (phi0, root) = cell(0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]), 0.5 * (hi[0] - lo[0]), 0.5 * (hi[1] - lo[1]));
    let mut best = phi0;
    let mut center = [root.cx, root.cy];
    let mut heap = BinaryHeap::from([root]);
    let mut visited = 0usize;
    while let Some(top) = heap.peek() {
        if top.ub <= best + half_eps {
            break;
        }
        if visited >= MAX_BOXES {
            log::warn!("inscribed square search stopped after {visited} boxes");
            break;
        }
        let c = heap.pop().unwrap();
        visited += 1;
        let children = if c.hx >= c.hy {
            let h = 0.5 * c.hx;
            [cell(c.cx - h, c.cy, h, c.hy), cell(c.cx + h, c.cy, h, c.hy)]
        } else {
            let h = 0.5 * c.hy;
            [cell(c.cx, c.cy - h, c.hx, h), cell(c.cx, c.cy + h, c.hx, h)]
        };
        for (phi, child) in children {
            if phi > best {
                best = phi;
                center = [child.cx, child.cy];
            }
            if child.ub > best + half_eps {
                heap.push(child);
            }
        }
    }
    let top_ub = heap.peek().map_or(best, |c| c.ub.max(best));
    InscribedSquare {
        side: 2.0 * best,
        upper: 2.0 * top_ub.max(best + half_eps),
        center,
    }
}

/// Upper bound for `max_box min_s d∞(p, s)`. Each distance is convex, so on
/// either triangle of the box it lies below the affine interpolation of its
/// corner values; the maximum of the minimum of those planes over a triangle
/// is a small linear program.
fn affine_envelope_bound<F>(active: &[usize], seg: F, c: [f64; 2], h: [f64; 2]) -> f64
where
    F: Fn(usize) -> ([f64; 2], [f64; 2]),
{
    if active.is_empty() {
        return f64::INFINITY;
    }
    let corners = [
        [c[0] - h[0], c[1] - h[1]],
        [c[0] + h[0], c[1] - h[1]],
        [c[0] + h[0], c[1] + h[1]],
        [c[0] - h[0], c[1] + h[1]],
    ];
    let values: Vec<[f64; 4]> = active
        .iter()
        .map(|&s| {
            let (a, b) = seg(s);
            let mut v = [0.0; 4];
            for (k, q) in corners.iter().enumerate() {
                v[k] = linf_distance_to_segment(*q, a, b);
            }
            v
        })
        .collect();
    let mut bound = f64::NEG_INFINITY;
    for tri in [[0usize, 1, 2], [0, 2, 3]] {
        let p = tri.map(|k| corners[k]);
        // rows read  r·(x, y, t) ≤ rhs
        let mut rows: Vec<([f64; 3], f64)> = Vec::new();
        for v in &values {
            let Some((gx, gy, g0)) = plane_through(p, tri.map(|k| v[k])) else {
                return f64::INFINITY;
            };
            rows.push(([-gx, -gy, 1.0], g0));
        }
        for e in 0..3 {
            let (a, b, o) = (p[e], p[(e + 1) % 3], p[(e + 2) % 3]);
            // half-plane containing the opposite vertex
            let nx = -(b[1] - a[1]);
            let ny = b[0] - a[0];
            let sign = if nx * (o[0] - a[0]) + ny * (o[1] - a[1]) >= 0.0 { -1.0 } else { 1.0 };
            rows.push(([sign * nx, sign * ny, 0.0], sign * (nx * a[0] + ny * a[1])));
        }
        let scale = 1.0 + values.iter().flat_map(|v| v.iter()).fold(0.0f64, |m, x| m.max(x.abs()));
        let mut tri_best = f64::NEG_INFINITY;
        let m = rows.len();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let Some(sol) = solve3([rows[i].0, rows[j].0, rows[k].0], [rows[i].1, rows[j].1, rows[k].1]) else {
                        continue;
                    };
                    let ok = rows
                        .iter()
                        .all(|(r, rhs)| r[0] * sol[0] + r[1] * sol[1] + r[2] * sol[2] <= rhs + 1e-12 * scale);
                    if ok {
                        tri_best = tri_best.max(sol[2]);
                    }
                }
            }
        }
        if tri_best == f64::NEG_INFINITY {
            return f64::INFINITY;
        }
        bound = bound.max(tri_best);
    }
    bound + 1e-12 * (1.0 + bound.abs())
}

/// `g(x, y) = gx·x + gy·y + g0` through three points with given values.
fn plane_through(p: [[f64; 2]; 3], v: [f64; 3]) -> Option<(f64, f64, f64)> {
    let sol = solve3(
        [[p[0][0], p[0][1], 1.0], [p[1][0], p[1][1], 1.0], [p[2][0], p[2][1], 1.0]],
        v,
    )?;
    Some((sol[0], sol[1], sol[2]))
}
