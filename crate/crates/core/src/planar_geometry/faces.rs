use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::inscribed::{inscribed_square, linf_depth};
use super::winding::ring_winding;
use crate::curve_model::{geom, CurveComplex};
use crate::{Error, Result};

/// A bounded face of the planar arrangement. Faces of a connected complex are
/// simply connected, so one counter-clockwise boundary ring describes each;
/// tree branches hanging into the face appear in the ring as out-and-back
/// spikes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Face {
    /// Counter-clockwise boundary; the first point is not repeated.
    pub boundary: Vec<[f64; 2]>,
    pub area: f64,
    /// Certified lower bound for the side of the largest inscribed
    /// axis-parallel open square.
    pub inscribed_side: f64,
    pub inscribed_upper: f64,
    /// Centre of a square of side `inscribed_side` inside the face.
    pub representative: [f64; 2],
    /// Half-edges (`2·edge` forward, `2·edge + 1` backward) along the boundary.
    pub half_edges: Vec<usize>,
}

impl Face {
    /// Points inside the face, best-separated first: the representative,
    /// then grid points ordered by decreasing ℓ∞ depth.
    pub fn interior_points(&self, grid: usize) -> Vec<[f64; 2]> {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in &self.boundary {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let mut pts: Vec<(f64, [f64; 2])> = Vec::new();
        for i in 0..grid {
            for j in 0..grid {
                let p = [
                    lo[0] + (i as f64 + 0.5) / grid as f64 * (hi[0] - lo[0]),
                    lo[1] + (j as f64 + 0.5) / grid as f64 * (hi[1] - lo[1]),
                ];
                let depth = linf_depth(&self.boundary, p);
                if depth > 0.0 {
                    pts.push((depth, p));
                }
            }
        }
        pts.sort_by(|a, b| b.0.total_cmp(&a.0));
        std::iter::once(self.representative).chain(pts.into_iter().map(|(_, p)| p)).collect()
    }
}

/// All bounded faces with the global quantities entering the planar bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceSet {
    /// Sorted by representative point, lexicographically.
    pub faces: Vec<Face>,
    /// Half the side of the smallest axis-parallel square containing the
    /// closure of the faces.
    pub half_side: f64,
    pub min_side: f64,
    pub max_area: f64,
    /// Area enclosed by the outer boundary of the complex.
    pub outer_area: f64,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn areas(&self) -> Vec<f64> {
        self.faces.iter().map(|f| f.area).collect()
    }
}

/// Default bracket width for inscribed squares: `1e-10 ×` the complex scale.
pub fn default_square_eps(complex: &CurveComplex) -> f64 {
    1e-10 * complex.diameter().max(1e-300)
}

pub fn extract_faces(complex: &CurveComplex) -> Result<FaceSet> {
    extract_faces_with_eps(complex, default_square_eps(complex))
}

/// Bounded faces by a half-edge sweep: at every vertex outgoing half-edges
/// are sorted by angle and each half-edge continues with the clockwise
/// neighbour of its twin, which traces faces keeping them on the left.
pub fn extract_faces_with_eps(complex: &CurveComplex, eps: f64) -> Result<FaceSet> {
    if complex.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: complex.dim(),
        });
    }
    let ne = complex.edge_count();
    let nh = 2 * ne;
    let origin = |h: usize| {
        let e = complex.edge(h / 2);
        if h.is_multiple_of(2) {
            e.from
        } else {
            e.to
        }
    };
    let polyline = |h: usize| -> Vec<[f64; 2]> {
        let g = &complex.edge(h / 2).geometry;
        let it = g.iter().map(|p| [p[0], p[1]]);
        if h.is_multiple_of(2) {
            it.collect()
        } else {
            it.rev().collect()
        }
    };
    let out_angle = |h: usize| {
        let pl = polyline(h);
        (pl[1][1] - pl[0][1]).atan2(pl[1][0] - pl[0][0])
    };

    let mut around: Vec<Vec<usize>> = vec![Vec::new(); complex.vertex_count()];
    for h in 0..nh {
        around[origin(h)].push(h);
    }
    let mut slot = vec![0usize; nh];
    for list in around.iter_mut() {
        list.sort_by(|&a, &b| out_angle(a).total_cmp(&out_angle(b)));
        for (i, &h) in list.iter().enumerate() {
            slot[h] = i;
        }
    }
    let next = |h: usize| {
        let twin = h ^ 1;
        let list = &around[origin(twin)];
        list[(slot[twin] + list.len() - 1) % list.len()]
    };

    let mut seen = vec![false; nh];
    let mut cycles: Vec<(Vec<usize>, Vec<[f64; 2]>, f64)> = Vec::new();
    for start in 0..nh {
        if seen[start] {
            continue;
        }
        let mut hs = Vec::new();
        let mut ring: Vec<[f64; 2]> = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            hs.push(h);
            let pl = polyline(h);
            ring.extend_from_slice(&pl[..pl.len() - 1]);
            h = next(h);
        }
        if h != start {
            return Err(Error::DegenerateGeometry("half-edge cycle does not close".into()));
        }
        let area = geom::signed_area(&ring);
        cycles.push((hs, ring, area));
    }
    if cycles.is_empty() {
        return Ok(FaceSet {
            faces: Vec::new(),
            half_side: 0.0,
            min_side: 0.0,
            max_area: 0.0,
            outer_area: 0.0,
        });
    }
    // a connected plane graph has exactly one unbounded face
    let outer = (0..cycles.len())
        .min_by(|&a, &b| cycles[a].2.total_cmp(&cycles[b].2))
        .unwrap();
    let outer_area = -cycles[outer].2;
    let scale = complex.diameter().max(1e-300);
    let bounded: Vec<_> = cycles
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i != outer)
        .map(|(_, c)| c)
        .collect();
    if let Some(c) = bounded.iter().find(|c| c.2 <= 1e-14 * scale * scale) {
        return Err(Error::DegenerateGeometry(format!(
            "bounded face with non-positive area {}",
            c.2
        )));
    }
    let mut faces = bounded
        .into_par_iter()
        .map(|(half_edges, boundary, area)| {
            let sq = inscribed_square(&boundary, eps)?;
            Ok(Face {
                boundary,
                area,
                inscribed_side: sq.side,
                inscribed_upper: sq.upper,
                representative: sq.center,
                half_edges,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    faces.sort_by(|a, b| geom::lex_cmp(&a.representative, &b.representative));

    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in faces.iter().flat_map(|f| f.boundary.iter()) {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let half_side = if faces.is_empty() {
        0.0
    } else {
        0.5 * (hi[0] - lo[0]).max(hi[1] - lo[1])
    };
    Ok(FaceSet {
        half_side,
        min_side: faces.iter().map(|f| f.inscribed_side).reduce(f64::min).unwrap_or(0.0),
        max_area: faces.iter().map(|f| f.area).fold(0.0, f64::max),
        outer_area: if faces.is_empty() { 0.0 } else { outer_area },
        faces,
    })
}

/// `⌊(27π/2)·A·d / r³⌋ + 1`, or 0 when there are no bounded faces.
pub fn n_bound_2d(faces: &FaceSet) -> u64 {
    if faces.is_empty() {
        return 0;
    }
    let x = 13.5 * std::f64::consts::PI * faces.max_area * faces.half_side / faces.min_side.powi(3);
    x.floor() as u64 + 1
}

/// Index of the face containing `p`, if any.
pub fn locate_face(faces: &FaceSet, p: [f64; 2]) -> Option<usize> {
    faces.faces.iter().position(|f| ring_winding(&f.boundary, p) != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_model::{build_complex, SampledPath};

    fn closed(points: &[[f64; 2]]) -> SampledPath {
        let mut pts: Vec<Vec<f64>> = points.iter().map(|p| p.to_vec()).collect();
        pts.push(points[0].to_vec());
        SampledPath::from_points(pts, true).unwrap()
    }

    fn grid(k: usize) -> CurveComplex {
        let h = 2.0 / k as f64;
        let mut paths = Vec::new();
        for i in 0..=k {
            for j in 0..k {
                let c = -1.0 + i as f64 * h;
                let a = -1.0 + j as f64 * h;
                paths.push(SampledPath::from_points(vec![vec![c, a], vec![c, a + h]], false).unwrap());
                paths.push(SampledPath::from_points(vec![vec![a, c], vec![a + h, c]], false).unwrap());
            }
        }
        build_complex(&paths, 1e-9).unwrap()
    }

    #[test]
    fn unit_square() {
        let c = build_complex(&[closed(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])], 1e-9).unwrap();
        let f = extract_faces(&c).unwrap();
        assert_eq!(f.len(), 1);
        assert!((f.faces[0].area - 1.0).abs() < 1e-15);
        assert!((f.faces[0].inscribed_side - 1.0).abs() < 1e-9);
        assert_eq!(f.half_side, 0.5);
    }

    #[test]
    fn figure_eight_of_squares() {
        let c = build_complex(
            &[
                closed(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]),
                closed(&[[0.0, 0.0], [-1.0, 0.0], [-1.0, -1.0], [0.0, -1.0]]),
            ],
            1e-9,
        )
        .unwrap();
        let f = extract_faces(&c).unwrap();
        assert_eq!(f.len(), 2);
        for face in &f.faces {
            assert!((face.area - 1.0).abs() < 1e-15);
        }
        assert!(f.faces[0].representative[0] < 0.0);
    }

    #[test]
    fn grids_match_the_closed_forms() {
        for k in 1..=4 {
            let f = extract_faces(&grid(k)).unwrap();
            assert_eq!(f.len(), k * k);
            let side = 2.0 / k as f64;
            for face in &f.faces {
                assert!((face.area - side * side).abs() < 1e-12);
                assert!((face.inscribed_side - side).abs() < 1e-9);
            }
            assert!((f.half_side - 1.0).abs() < 1e-15);
            assert_eq!(n_bound_2d(&f), [22, 43, 64, 85][k - 1]);
            assert!((f.outer_area - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn tree_has_no_faces() {
        let c = build_complex(
            &[SampledPath::from_points(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]], false).unwrap()],
            1e-9,
        )
        .unwrap();
        let f = extract_faces(&c).unwrap();
        assert!(f.is_empty());
        assert_eq!(f.min_side, 0.0);
        assert_eq!(n_bound_2d(&f), 0);
    }

    #[test]
    fn dangling_branch_inside_a_face() {
        let square = closed(&[[0.0, 0.0], [4.0, 0.0], [4.0, 4.0], [0.0, 4.0]]);
        let spike = SampledPath::from_points(vec![vec![0.0, 2.0], vec![1.0, 2.0]], false).unwrap();
        let c = build_complex(&[square, spike], 1e-9).unwrap();
        let f = extract_faces(&c).unwrap();
        assert_eq!(f.len(), 1);
        assert!((f.faces[0].area - 16.0).abs() < 1e-12);
        // the spike blocks squares of side 4 but a 3×3 square fits at the right
        assert!((f.faces[0].inscribed_side - 3.0).abs() < 1e-8);
    }

    #[test]
    fn nested_circle_arrangement_areas_add_up() {
        // two overlapping diamonds produce three bounded faces
        let a = closed(&[[0.0, -1.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]);
        let b = closed(&[[1.0, -1.0], [2.0, 0.0], [1.0, 1.0], [0.0, 0.0]]);
        let c = build_complex(&[a, b], 1e-9).unwrap();
        let f = extract_faces(&c).unwrap();
        assert_eq!(f.len(), 3);
        let total: f64 = f.areas().iter().sum();
        assert!((total - f.outer_area).abs() <= 1e-12 * f.outer_area);
        assert!((total - 3.5).abs() < 1e-12);
    }

    #[test]
    fn packing_inequality_holds_with_twice_the_half_side() {
        for k in 1..=4 {
            let f = extract_faces(&grid(k)).unwrap();
            let m = (k * k) as f64;
            let ratio = 2.0 * f.half_side / f.min_side;
            assert!(m.sqrt() <= ratio + 1e-9 && ratio < n_bound_2d(&f) as f64);
        }
    }
}
