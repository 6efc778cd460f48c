use serde::{Deserialize, Serialize};

use super::complex::{CurveComplex, EdgeSegment};
use super::geom;
use super::path::SampledPath;
use crate::{Error, Result};

/// One full traversal of an edge; `dir = +1` runs `from → to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub edge: usize,
    pub dir: i8,
}

impl Letter {
    pub fn new(edge: usize, dir: i8) -> Self {
        debug_assert!(dir == 1 || dir == -1);
        Letter { edge, dir }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            edge: self.edge,
            dir: -self.dir,
        }
    }
}

/// Combinatorial form of a path on a complex: a sequence of oriented edges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeWord(pub Vec<Letter>);

impl EdgeWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        EdgeWord(letters)
    }

    /// Builds a word from `(edge, dir)` pairs.
    pub fn from_pairs(pairs: &[(usize, i8)]) -> Self {
        EdgeWord(pairs.iter().map(|&(e, d)| Letter::new(e, d)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> EdgeWord {
        EdgeWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &EdgeWord) -> EdgeWord {
        EdgeWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn start_vertex(&self, complex: &CurveComplex) -> Option<usize> {
        self.0.first().map(|l| complex.edge(l.edge).tail(l.dir))
    }

    pub fn end_vertex(&self, complex: &CurveComplex) -> Option<usize> {
        self.0.last().map(|l| complex.edge(l.edge).head(l.dir))
    }

    /// Consecutive letters share their joining vertex.
    pub fn is_valid(&self, complex: &CurveComplex) -> bool {
        self.0.iter().all(|l| l.edge < complex.edge_count())
            && self.0.windows(2).all(|w| {
                complex.edge(w[0].edge).head(w[0].dir) == complex.edge(w[1].edge).tail(w[1].dir)
            })
    }

    /// Empty words count as closed.
    pub fn is_closed(&self, complex: &CurveComplex) -> bool {
        match (self.start_vertex(complex), self.end_vertex(complex)) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

/// Polyline realization of `word`; an empty word realizes as a constant path
/// at `base`.
pub fn realize(word: &EdgeWord, complex: &CurveComplex, base: usize) -> Result<SampledPath> {
    if !word.is_valid(complex) {
        return Err(Error::InvalidInput("edge word is not a walk on the complex".into()));
    }
    let start = word.start_vertex(complex).unwrap_or(base);
    let mut pts: Vec<Vec<f64>> = vec![complex.vertex(start).to_vec()];
    for l in word.letters() {
        let g = &complex.edge(l.edge).geometry;
        if l.dir > 0 {
            pts.extend(g.iter().skip(1).cloned());
        } else {
            pts.extend(g.iter().rev().skip(1).cloned());
        }
    }
    if pts.len() == 1 {
        pts.push(pts[0].clone());
        let samples = vec![(0.0, pts[0].clone()), (1.0, pts[1].clone())];
        return SampledPath::new(complex.dim(), samples, true);
    }
    let mut t = 0.0;
    let mut samples = Vec::with_capacity(pts.len());
    samples.push((0.0, pts[0].clone()));
    for w in pts.windows(2) {
        t += geom::dist(&w[0], &w[1]);
        samples.push((t, w[1].clone()));
    }
    SampledPath::new(complex.dim(), samples, word.is_closed(complex))
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Loc {
    Vertex(usize),
    OnEdge { edge: usize, s: f64 },
}

struct Locator<'a> {
    complex: &'a CurveComplex,
    segs: Vec<EdgeSegment>,
    lengths: Vec<f64>,
    tol: f64,
}

impl<'a> Locator<'a> {
    fn new(complex: &'a CurveComplex, tol: f64) -> Self {
        let lengths = complex.edges().iter().map(|e| e.length()).collect();
        Locator {
            complex,
            segs: complex.segment_index(),
            lengths,
            tol,
        }
    }

    fn vertex_near(&self, p: &[f64]) -> Option<usize> {
        self.complex
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| (i, geom::dist(v, p)))
            .filter(|&(_, d)| d <= self.tol)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
    }

    /// Nearest edge position and its distance.
    fn nearest_on_edges(&self, p: &[f64]) -> Option<(usize, f64, f64)> {
        self.segs
            .iter()
            .map(|s| {
                let (t, d) = geom::project_onto_segment(p, &s.a, &s.b);
                (s.edge, s.s0 + t * s.len, d)
            })
            .min_by(|a, b| a.2.total_cmp(&b.2))
    }

    fn locate(&self, p: &[f64]) -> Option<Loc> {
        if let Some(v) = self.vertex_near(p) {
            return Some(Loc::Vertex(v));
        }
        match self.nearest_on_edges(p) {
            Some((edge, s, d)) if d <= self.tol => Some(Loc::OnEdge { edge, s }),
            _ => None,
        }
    }
}

/// Converts a path lying on `complex` into the word of complete edge
/// traversals it performs, in order. Excursions into an edge that return
/// to the vertex they came from contribute nothing; a complete pass
/// followed by an immediate return pass contributes both letters.
///
/// Closed paths that start inside an edge are read cyclically from their
/// first vertex visit.
pub fn trace_path(path: &SampledPath, complex: &CurveComplex, tol: f64) -> Result<EdgeWord> {
    if path.dim() != complex.dim() {
        return Err(Error::DimensionMismatch {
            expected: complex.dim(),
            got: path.dim(),
        });
    }
    if complex.edge_count() == 0 {
        for (i, p) in path.points().iter().enumerate() {
            if geom::dist(p, complex.vertex(0)) > tol {
                return Err(Error::PathOffCurve(i));
            }
        }
        return Ok(EdgeWord::default());
    }
    let loc = Locator::new(complex, tol);

    // Breakpoints: samples plus vertices passed through between samples.
    let mut pts: Vec<Vec<f64>> = Vec::new();
    let mut locs: Vec<Loc> = Vec::new();
    let mut origin: Vec<usize> = Vec::new();
    let push = |p: Vec<f64>, idx: usize, pts: &mut Vec<Vec<f64>>, locs: &mut Vec<Loc>, origin: &mut Vec<usize>| -> Result<()> {
        let l = loc.locate(&p).ok_or(Error::PathOffCurve(idx))?;
        pts.push(p);
        locs.push(l);
        origin.push(idx);
        Ok(())
    };
    push(path.point(0).to_vec(), 0, &mut pts, &mut locs, &mut origin)?;
    for (k, (a, b)) in path.segments().enumerate() {
        let mut inner: Vec<(f64, usize)> = complex
            .vertices()
            .iter()
            .enumerate()
            .filter_map(|(vid, v)| {
                let (t, d) = geom::project_onto_segment(v, a, b);
                (d <= tol && t > 0.0 && t < 1.0).then_some((t, vid))
            })
            .collect();
        inner.sort_by(|x, y| x.0.total_cmp(&y.0));
        for (_, vid) in inner {
            let p = complex.vertex(vid).to_vec();
            if geom::dist(&p, pts.last().unwrap()) > 0.0 {
                pts.push(p);
                locs.push(Loc::Vertex(vid));
                origin.push(k);
            }
        }
        push(b.to_vec(), k + 1, &mut pts, &mut locs, &mut origin)?;
    }

    // Rotate closed paths to begin at a vertex.
    if path.is_closed() {
        match locs.iter().position(|l| matches!(l, Loc::Vertex(_))) {
            None => {
                check_midpoints(&pts, &origin, &loc)?;
                return Ok(EdgeWord::default());
            }
            Some(0) => {}
            Some(r) => {
                let n = pts.len() - 1; // last repeats first
                fn rot<T: Clone>(v: &[T], r: usize, n: usize) -> Vec<T> {
                    let mut out: Vec<T> = (0..n).map(|i| v[(i + r) % n].clone()).collect();
                    out.push(out[0].clone());
                    out
                }
                pts = rot(&pts, r, n);
                origin = rot(&origin, r, n);
                locs = rot(&locs, r, n);
            }
        }
    }

    let mut word = Vec::new();
    // (edge, entry end) while inside an edge; end is 0 for `from`, 1 for `to`.
    let mut inside: Option<(usize, Option<u8>)> = None;
    for j in 0..pts.len() - 1 {
        let (p, q) = (&pts[j], &pts[j + 1]);
        let len = geom::dist(p, q);
        if len == 0.0 {
            continue;
        }
        let mid = geom::lerp(p, q, 0.5);
        let (edge, s_mid, d) = loc.nearest_on_edges(&mid).expect("complex has edges");
        if d > tol {
            return Err(Error::PathOffCurve(origin[j + 1]));
        }
        let total = loc.lengths[edge];
        let e = complex.edge(edge);
        let end_of = |v: usize| -> u8 {
            if e.is_loop() {
                // The vertex sits at s = 0 and at s = L; the sub-segment
                // reaches it half its length away from the midpoint.
                let to_start = (s_mid - len / 2.0).abs();
                let to_end = (s_mid + len / 2.0 - total).abs();
                if to_start <= to_end {
                    0
                } else {
                    1
                }
            } else if v == e.from {
                0
            } else {
                1
            }
        };
        match locs[j] {
            Loc::Vertex(v) => {
                // a vertex not on this edge means we jumped; treat as interior
                if v == e.from || v == e.to {
                    inside = Some((edge, Some(end_of(v))));
                } else {
                    inside = Some((edge, None));
                }
            }
            Loc::OnEdge { .. } => match inside {
                Some((cur, _)) if cur == edge => {}
                _ => inside = Some((edge, None)),
            },
        }
        if let Loc::Vertex(v) = locs[j + 1] {
            if v == e.from || v == e.to {
                let exit = end_of(v);
                if let Some((_, Some(entry))) = inside {
                    if entry != exit {
                        word.push(Letter::new(edge, if exit == 1 { 1 } else { -1 }));
                    }
                }
            }
            inside = None;
        }
    }
    Ok(EdgeWord(word))
}

fn check_midpoints(pts: &[Vec<f64>], origin: &[usize], loc: &Locator<'_>) -> Result<()> {
    for j in 0..pts.len().saturating_sub(1) {
        let mid = geom::lerp(&pts[j], &pts[j + 1], 0.5);
        match loc.nearest_on_edges(&mid) {
            Some((_, _, d)) if d <= loc.tol => {}
            _ => return Err(Error::PathOffCurve(origin[j + 1])),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_model::build_complex;

    fn figure_eight() -> CurveComplex {
        let a = SampledPath::from_points(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![0.0, 0.0]],
            true,
        )
        .unwrap();
        let b = SampledPath::from_points(
            vec![vec![0.0, 0.0], vec![-1.0, 0.0], vec![-1.0, -1.0], vec![0.0, -1.0], vec![0.0, 0.0]],
            true,
        )
        .unwrap();
        build_complex(&[a, b], 1e-9).unwrap()
    }

    #[test]
    fn retracing_a_loop_twice() {
        let c = figure_eight();
        let w = EdgeWord::from_pairs(&[(0, 1), (0, 1)]);
        let p = realize(&w, &c, 0).unwrap();
        assert_eq!(trace_path(&p, &c, 1e-8).unwrap(), w);
    }

    #[test]
    fn constant_path_at_vertex_is_empty() {
        let c = figure_eight();
        let p = SampledPath::from_points(vec![vec![0.0, 0.0], vec![0.0, 0.0]], true).unwrap();
        assert!(trace_path(&p, &c, 1e-8).unwrap().is_empty());
    }

    #[test]
    fn commutator_round_trip() {
        let c = figure_eight();
        let w = EdgeWord::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
        assert!(w.is_closed(&c));
        let p = realize(&w, &c, 0).unwrap();
        assert_eq!(trace_path(&p, &c, 1e-8).unwrap(), w);
    }

    #[test]
    fn off_curve_sample_reports_index() {
        let c = figure_eight();
        let p = SampledPath::from_points(vec![vec![0.0, 0.0], vec![0.5, 0.0], vec![0.5, 0.5]], false).unwrap();
        assert_eq!(trace_path(&p, &c, 1e-8), Err(Error::PathOffCurve(2)));
    }

    #[test]
    fn partial_excursion_contributes_nothing() {
        let c = figure_eight();
        let p = SampledPath::from_points(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 0.5], vec![1.0, 0.0], vec![0.0, 0.0]],
            true,
        )
        .unwrap();
        assert!(trace_path(&p, &c, 1e-8).unwrap().is_empty());
    }

    #[test]
    fn closed_path_starting_mid_edge_is_read_cyclically() {
        let c = figure_eight();
        let p = SampledPath::from_points(
            vec![vec![1.0, 0.5], vec![1.0, 1.0], vec![0.0, 1.0], vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 0.5]],
            true,
        )
        .unwrap();
        let w = trace_path(&p, &c, 1e-8).unwrap();
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn back_and_forth_pass_keeps_both_letters() {
        let c = figure_eight();
        let w = EdgeWord::from_pairs(&[(1, 1), (1, -1)]);
        let p = realize(&w, &c, 0).unwrap();
        assert_eq!(trace_path(&p, &c, 1e-8).unwrap(), w);
    }
}
