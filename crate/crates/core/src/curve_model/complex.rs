use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::geom::{self, UnionFind};
use super::path::{check_format, SampledPath};
use crate::{Error, Result, FORMAT_TAG};

/// A 1-cell: a polyline from `from` to `to` (equal for loops).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub geometry: Vec<Vec<f64>>,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }

    pub fn length(&self) -> f64 {
        self.geometry.windows(2).map(|w| geom::dist(&w[0], &w[1])).sum()
    }

    pub fn l1_length(&self) -> f64 {
        self.geometry
            .windows(2)
            .map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| (b - a).abs()).sum::<f64>())
            .sum()
    }

    /// Endpoint vertex reached when leaving through the given orientation.
    pub fn head(&self, dir: i8) -> usize {
        if dir > 0 {
            self.to
        } else {
            self.from
        }
    }

    pub fn tail(&self, dir: i8) -> usize {
        if dir > 0 {
            self.from
        } else {
            self.to
        }
    }
}

/// Finite one-dimensional CW complex with polyline edges.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveComplex {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl CurveComplex {
    /// Checks endpoint consistency, incidence and connectivity. Loop edges
    /// appear twice in their vertex's adjacency list, so list lengths are
    /// graph degrees.
    pub fn new(dim: usize, vertices: Vec<Vec<f64>>, edges: Vec<Edge>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("complex dimension must be positive".into()));
        }
        if vertices.is_empty() {
            return Err(Error::InvalidInput("complex has no vertices".into()));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (id, e) in edges.iter().enumerate() {
            if e.from >= vertices.len() || e.to >= vertices.len() {
                return Err(Error::InvalidInput(format!("edge {id} references a missing vertex")));
            }
            if e.geometry.len() < 2 {
                return Err(Error::InvalidInput(format!("edge {id} has fewer than two points")));
            }
            if e.geometry.iter().any(|p| p.len() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: e.geometry.iter().map(|p| p.len()).find(|&l| l != dim).unwrap(),
                });
            }
            let scale = 1e-9 * (1.0 + e.length());
            if geom::dist(&e.geometry[0], &vertices[e.from]) > scale
                || geom::dist(e.geometry.last().unwrap(), &vertices[e.to]) > scale
            {
                return Err(Error::InvalidInput(format!(
                    "edge {id} endpoints do not match its vertices"
                )));
            }
            adjacency[e.from].push(id);
            adjacency[e.to].push(id);
        }
        if !edges.is_empty() {
            if let Some(v) = adjacency.iter().position(|a| a.is_empty()) {
                return Err(Error::InvalidInput(format!("vertex {v} has no incident edge")));
            }
        } else if vertices.len() > 1 {
            return Err(Error::ComplexDisconnected {
                components: vertices.len(),
            });
        }
        let complex = CurveComplex {
            dim,
            vertices,
            edges,
            adjacency,
        };
        let components = complex.component_count();
        if components > 1 {
            return Err(Error::ComplexDisconnected { components });
        }
        Ok(complex)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &[f64] {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Bounding box of all edge geometry and vertices.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        geom::bounding_box(
            self.dim,
            self.vertices
                .iter()
                .chain(self.edges.iter().flat_map(|e| e.geometry.iter()))
                .map(|p| p.as_slice()),
        )
    }

    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        geom::diameter(&lo, &hi)
    }

    /// Default snapping tolerance: `1e-9 ×` bounding-box diameter.
    pub fn default_snap_eps(&self) -> f64 {
        default_snap_eps_for(self.diameter())
    }

    fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.from, e.to);
        }
        (0..self.vertices.len())
            .map(|v| uf.find(v))
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Pairwise check that edge interiors are disjoint and avoid vertices.
    pub fn validate_cw(&self, eps: f64) -> Result<()> {
        let segs = self.segment_index();
        for (i, a) in segs.iter().enumerate() {
            for (vid, v) in self.vertices.iter().enumerate() {
                let (t, d) = geom::project_onto_segment(v, &a.a, &a.b);
                let interior_of_edge = !((a.seg == 0 && t * a.len <= eps)
                    || (a.seg + 1 == self.edges[a.edge].geometry.len() - 1
                        && (1.0 - t) * a.len <= eps));
                if d <= eps && interior_of_edge {
                    return Err(Error::DegenerateGeometry(format!(
                        "vertex {vid} lies inside edge {}",
                        a.edge
                    )));
                }
            }
            for b in segs.iter().skip(i + 1) {
                if let Some(p) = segment_contact(&a.a, &a.b, &b.a, &b.b, eps) {
                    let at_vertex = self.vertices.iter().any(|v| geom::dist(v, &p) <= 4.0 * eps);
                    let polyline_corner = a.edge == b.edge && b.seg == a.seg + 1;
                    if !(at_vertex || polyline_corner) {
                        return Err(Error::DegenerateGeometry(format!(
                            "edges {} and {} meet away from a vertex",
                            a.edge, b.edge
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Flat list of all polyline pieces, with arclength offsets.
    pub fn segment_index(&self) -> Vec<EdgeSegment> {
        let mut out = Vec::new();
        for (eid, e) in self.edges.iter().enumerate() {
            let mut s = 0.0;
            for (k, w) in e.geometry.windows(2).enumerate() {
                let len = geom::dist(&w[0], &w[1]);
                out.push(EdgeSegment {
                    edge: eid,
                    seg: k,
                    a: w[0].clone(),
                    b: w[1].clone(),
                    s0: s,
                    len,
                });
                s += len;
            }
        }
        out
    }

    /// The complex rebuilt from its own edge polylines.
    pub fn edge_paths(&self) -> Vec<SampledPath> {
        self.edges
            .iter()
            .map(|e| SampledPath::from_points(e.geometry.clone(), false).expect("edge polyline is a valid path"))
            .collect()
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            format: FORMAT_TAG.to_string(),
            dim: self.dim,
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            adjacency: self.adjacency.clone(),
        }
    }

    pub fn from_document(doc: &ComplexDocument) -> Result<CurveComplex> {
        check_format(&doc.format)?;
        let c = CurveComplex::new(doc.dim, doc.vertices.clone(), doc.edges.clone())?;
        let mut given: Vec<Vec<usize>> = doc.adjacency.clone();
        let mut ours = c.adjacency.clone();
        given.iter_mut().for_each(|a| a.sort_unstable());
        ours.iter_mut().for_each(|a| a.sort_unstable());
        if !doc.adjacency.is_empty() && given != ours {
            return Err(Error::InvalidInput("adjacency does not match edges".into()));
        }
        c.validate_cw(c.default_snap_eps())?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("complex serializes")
    }

    pub fn from_json(s: &str) -> Result<CurveComplex> {
        let doc: ComplexDocument = serde_json::from_str(s)?;
        CurveComplex::from_document(&doc)
    }
}

pub(crate) fn default_snap_eps_for(diameter: f64) -> f64 {
    1e-9 * diameter.max(1e-300)
}

/// One straight piece of an edge polyline.
#[derive(Debug, Clone)]
pub struct EdgeSegment {
    pub edge: usize,
    pub seg: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// Arclength along the edge at `a`.
    pub s0: f64,
    pub len: f64,
}

/// JSON mirror of [`CurveComplex`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub format: String,
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub adjacency: Vec<Vec<usize>>,
}

/// A point where two segments come within `eps` of each other, if any.
fn segment_contact(a0: &[f64], a1: &[f64], b0: &[f64], b1: &[f64], eps: f64) -> Option<Vec<f64>> {
    for (p, (s0, s1)) in [(a0, (b0, b1)), (a1, (b0, b1)), (b0, (a0, a1)), (b1, (a0, a1))] {
        let (_, d) = geom::project_onto_segment(p, s0, s1);
        if d <= eps {
            return Some(p.to_vec());
        }
    }
    if let Some((s, t)) = geom::line_closest_params(a0, a1, b0, b1) {
        if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t) {
            let p = geom::lerp(a0, a1, s);
            let q = geom::lerp(b0, b1, t);
            if geom::dist(&p, &q) <= eps {
                return Some(p);
            }
        }
    }
    None
}

/// Builds the CW complex of the union of the path images.
///
/// Every pairwise segment contact (crossings, touching endpoints, collinear
/// overlaps) becomes a split point; split points within `snap_eps` of each
/// other are merged. Vertices are the points of degree other than two, the
/// endpoints of open input paths, and one lexicographically smallest point
/// on every cycle that has no other vertex. Chains of degree-two points
/// become single polyline edges.
pub fn build_complex(paths: &[SampledPath], snap_eps: f64) -> Result<CurveComplex> {
    let first = paths
        .first()
        .ok_or_else(|| Error::InvalidInput("no paths given".into()))?;
    let dim = first.dim();
    if let Some(p) = paths.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: p.dim(),
        });
    }
    if !(snap_eps > 0.0) {
        return Err(Error::InvalidInput("snap_eps must be positive".into()));
    }

    // Raw segments and anchors (endpoints of open paths).
    let mut segs: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    let mut anchors: Vec<Vec<f64>> = Vec::new();
    for p in paths {
        if !p.is_closed() {
            anchors.push(p.start().to_vec());
            anchors.push(p.end().to_vec());
        }
        for (a, b) in p.segments() {
            let len = geom::dist(a, b);
            if len == 0.0 {
                continue;
            }
            if len <= snap_eps {
                return Err(Error::DegenerateGeometry(format!(
                    "segment of length {len:e} collapses under snapping"
                )));
            }
            segs.push((a.to_vec(), b.to_vec()));
        }
    }

    if segs.is_empty() {
        let pts: Vec<&[f64]> = paths.iter().flat_map(|p| p.points().iter().map(|q| q.as_slice())).collect();
        let p0 = pts[0];
        if pts.iter().any(|q| geom::dist(q, p0) > snap_eps) {
            return Err(Error::ComplexDisconnected {
                components: 2,
            });
        }
        return CurveComplex::new(dim, vec![p0.to_vec()], vec![]);
    }

    let params = split_parameters(&segs, snap_eps);

    // Global point list and sub-segments as point-id pairs.
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut subsegs: Vec<(usize, usize)> = Vec::new();
    for ((a, b), ts) in segs.iter().zip(&params) {
        let mut prev: Option<usize> = None;
        for &t in ts {
            let id = points.len();
            points.push(if t == 0.0 {
                a.clone()
            } else if t == 1.0 {
                b.clone()
            } else {
                geom::lerp(a, b, t)
            });
            if let Some(p) = prev {
                subsegs.push((p, id));
            }
            prev = Some(id);
        }
    }
    let anchor_base = points.len();
    points.extend(anchors.iter().cloned());

    let clusters = cluster_points(&points, snap_eps);
    let mut uf_rep: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &c) in clusters.iter().enumerate() {
        uf_rep.entry(c).or_insert(i);
    }
    // Dense node ids for clusters.
    let node_of: BTreeMap<usize, usize> = uf_rep.keys().enumerate().map(|(i, &c)| (c, i)).collect();
    let node_coords: Vec<Vec<f64>> = uf_rep.values().map(|&i| points[i].clone()).collect();
    let node = |pid: usize| node_of[&clusters[pid]];

    let mut simple: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(p, q) in &subsegs {
        let (u, v) = (node(p), node(q));
        if u != v {
            simple.insert((u.min(v), u.max(v)));
        }
    }
    let forced: BTreeSet<usize> = (anchor_base..points.len()).map(node).collect();

    let n = node_coords.len();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &simple {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    for list in nbrs.iter_mut() {
        list.sort_by(|&a, &b| geom::lex_cmp(&node_coords[a], &node_coords[b]));
    }
    let used_nodes: Vec<usize> = (0..n).filter(|&u| !nbrs[u].is_empty()).collect();

    // connectivity over nodes carrying edges
    {
        let mut uf = UnionFind::new(n);
        for &(u, v) in &simple {
            uf.union(u, v);
        }
        let comps: BTreeSet<usize> = used_nodes.iter().map(|&u| uf.find(u)).collect();
        let stray_anchor = forced.iter().any(|u| nbrs[*u].is_empty());
        if comps.len() > 1 || stray_anchor {
            return Err(Error::ComplexDisconnected {
                components: comps.len() + usize::from(stray_anchor),
            });
        }
    }

    let mut is_vertex: Vec<bool> = (0..n)
        .map(|u| !nbrs[u].is_empty() && (nbrs[u].len() != 2 || forced.contains(&u)))
        .collect();

    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    let mut chains: Vec<Vec<usize>> = Vec::new();

    let walk = |start: usize, next: usize, used: &mut BTreeSet<(usize, usize)>, is_vertex: &[bool]| {
        let mut chain = vec![start, next];
        used.insert(key(start, next));
        let mut cur = next;
        while !is_vertex[cur] {
            let Some(nxt) = nbrs[cur].iter().copied().find(|&w| !used.contains(&key(cur, w))) else {
                break;
            };
            used.insert(key(cur, nxt));
            chain.push(nxt);
            cur = nxt;
        }
        chain
    };

    let mut vertex_order: Vec<usize> = (0..n).filter(|&u| is_vertex[u]).collect();
    vertex_order.sort_by(|&a, &b| geom::lex_cmp(&node_coords[a], &node_coords[b]));
    for &u in &vertex_order {
        for &v in &nbrs[u].clone() {
            if !used.contains(&key(u, v)) {
                chains.push(walk(u, v, &mut used, &is_vertex));
            }
        }
    }
    // Pure cycles with no vertex on them.
    loop {
        let Some(&(a, b)) = simple.iter().find(|e| !used.contains(e)) else { break };
        // collect the cycle's nodes to pick its smallest point
        let mut cycle_nodes = vec![a];
        let (mut prev, mut cur) = (a, b);
        while cur != a {
            cycle_nodes.push(cur);
            let nxt = if nbrs[cur][0] == prev { nbrs[cur][1] } else { nbrs[cur][0] };
            prev = cur;
            cur = nxt;
        }
        let root = *cycle_nodes
            .iter()
            .min_by(|&&x, &&y| geom::lex_cmp(&node_coords[x], &node_coords[y]))
            .unwrap();
        is_vertex[root] = true;
        let first_step = nbrs[root][0];
        chains.push(walk(root, first_step, &mut used, &is_vertex));
    }

    let mut vertex_nodes: Vec<usize> = (0..n).filter(|&u| is_vertex[u]).collect();
    vertex_nodes.sort_by(|&a, &b| geom::lex_cmp(&node_coords[a], &node_coords[b]));
    let vid: BTreeMap<usize, usize> = vertex_nodes.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let vertices: Vec<Vec<f64>> = vertex_nodes.iter().map(|&u| node_coords[u].clone()).collect();

    let mut edges: Vec<Edge> = chains
        .into_iter()
        .map(|chain| Edge {
            from: vid[&chain[0]],
            to: vid[chain.last().unwrap()],
            geometry: chain.iter().map(|&u| node_coords[u].clone()).collect(),
        })
        .collect();
    edges.sort_by(|x, y| {
        (x.from, x.to)
            .cmp(&(y.from, y.to))
            .then_with(|| geom::lex_cmp(&x.geometry[1], &y.geometry[1]))
    });

    CurveComplex::new(dim, vertices, edges)
}

/// Sorted, deduplicated split parameters for every segment (always including
/// 0 and 1).
fn split_parameters(segs: &[(Vec<f64>, Vec<f64>)], eps: f64) -> Vec<Vec<f64>> {
    let mut params: Vec<Vec<f64>> = vec![vec![0.0, 1.0]; segs.len()];
    // sweep over the first coordinate
    let mut order: Vec<usize> = (0..segs.len()).collect();
    let lo = |i: usize| segs[i].0[0].min(segs[i].1[0]);
    let hi = |i: usize| segs[i].0[0].max(segs[i].1[0]);
    order.sort_by(|&a, &b| lo(a).total_cmp(&lo(b)));
    for (oi, &i) in order.iter().enumerate() {
        let (a0, a1) = (&segs[i].0, &segs[i].1);
        for &j in &order[oi + 1..] {
            if lo(j) > hi(i) + eps {
                break;
            }
            let (b0, b1) = (&segs[j].0, &segs[j].1);
            if !boxes_touch(a0, a1, b0, b1, eps) {
                continue;
            }
            for q in [b0, b1] {
                let (t, d) = geom::project_onto_segment(q, a0, a1);
                if d <= eps {
                    params[i].push(t);
                }
            }
            for q in [a0, a1] {
                let (t, d) = geom::project_onto_segment(q, b0, b1);
                if d <= eps {
                    params[j].push(t);
                }
            }
            if let Some((s, t)) = geom::line_closest_params(a0, a1, b0, b1) {
                if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t) {
                    let p = geom::lerp(a0, a1, s);
                    let q = geom::lerp(b0, b1, t);
                    if geom::dist(&p, &q) <= eps {
                        params[i].push(s);
                        params[j].push(t);
                    }
                }
            }
        }
    }
    for ((a, b), ts) in segs.iter().zip(params.iter_mut()) {
        let len = geom::dist(a, b);
        ts.sort_by(f64::total_cmp);
        let mut out: Vec<f64> = Vec::with_capacity(ts.len());
        for &t in ts.iter() {
            match out.last() {
                Some(&last) if (t - last) * len <= eps => {
                    // keep exact endpoints
                    if t == 1.0 {
                        *out.last_mut().unwrap() = 1.0;
                    }
                }
                _ => out.push(t),
            }
        }
        if out.len() >= 2 && out[out.len() - 1] != 1.0 {
            *out.last_mut().unwrap() = 1.0;
        }
        if out.len() == 1 {
            out.push(1.0);
        }
        *ts = out;
    }
    params
}

fn boxes_touch(a0: &[f64], a1: &[f64], b0: &[f64], b1: &[f64], eps: f64) -> bool {
    (0..a0.len()).all(|k| {
        let (alo, ahi) = (a0[k].min(a1[k]), a0[k].max(a1[k]));
        let (blo, bhi) = (b0[k].min(b1[k]), b0[k].max(b1[k]));
        alo <= bhi + eps && blo <= ahi + eps
    })
}

/// Union–find clustering of points closer than `eps`; returns each point's
/// root index.
fn cluster_points(points: &[Vec<f64>], eps: f64) -> Vec<usize> {
    let mut uf = UnionFind::new(points.len());
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]));
    for (oi, &i) in order.iter().enumerate() {
        for &j in &order[oi + 1..] {
            if points[j][0] - points[i][0] > eps {
                break;
            }
            if geom::dist(&points[i], &points[j]) <= eps {
                uf.union(i, j);
            }
        }
    }
    (0..points.len()).map(|i| uf.find(i)).collect()
}

/// Breadth-first distances in edges from `root`; used by fixtures and tests.
pub fn bfs_parents(complex: &CurveComplex, root: usize) -> Vec<Option<(usize, usize)>> {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; complex.vertex_count()];
    let mut seen = vec![false; complex.vertex_count()];
    seen[root] = true;
    let mut q = VecDeque::from([root]);
    while let Some(u) = q.pop_front() {
        for &e in &complex.adjacency()[u] {
            let edge = complex.edge(e);
            let w = if edge.from == u { edge.to } else { edge.from };
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((u, e));
                q.push_back(w);
            }
        }
    }
    parent
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x0: f64, y0: f64, s: f64) -> SampledPath {
        SampledPath::from_points(
            vec![
                vec![x0, y0],
                vec![x0 + s, y0],
                vec![x0 + s, y0 + s],
                vec![x0, y0 + s],
                vec![x0, y0],
            ],
            true,
        )
        .unwrap()
    }

    #[test]
    fn closed_square_is_one_loop() {
        let c = build_complex(&[square(0.0, 0.0, 1.0)], 1e-9).unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edge_count(), 1);
        assert!(c.edge(0).is_loop());
        assert_eq!(c.vertex(0), &[0.0, 0.0]);
        assert_eq!(c.edge(0).geometry.len(), 5);
    }

    #[test]
    fn crossing_segments_split() {
        let a = SampledPath::from_points(vec![vec![-1.0, 0.0], vec![1.0, 0.0]], false).unwrap();
        let b = SampledPath::from_points(vec![vec![0.0, -1.0], vec![0.0, 1.0]], false).unwrap();
        let c = build_complex(&[a, b], 1e-9).unwrap();
        assert_eq!(c.vertex_count(), 5);
        assert_eq!(c.edge_count(), 4);
        let center = c.vertices().iter().position(|v| v == &vec![0.0, 0.0]).unwrap();
        assert_eq!(c.degree(center), 4);
    }

    #[test]
    fn overlapping_retrace_collapses() {
        let p = SampledPath::from_points(
            vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![0.5, 0.0], vec![3.0, 0.0]],
            false,
        )
        .unwrap();
        let c = build_complex(&[p], 1e-9).unwrap();
        assert_eq!(c.edge_count(), 1);
        assert_eq!(c.vertex_count(), 2);
        assert!((c.edge(0).length() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_squares_are_rejected() {
        let r = build_complex(&[square(0.0, 0.0, 1.0), square(5.0, 0.0, 1.0)], 1e-9);
        assert!(matches!(r, Err(Error::ComplexDisconnected { .. })));
    }

    #[test]
    fn tiny_segments_are_degenerate() {
        let p = SampledPath::from_points(vec![vec![0.0, 0.0], vec![1e-12, 0.0], vec![1.0, 0.0]], false).unwrap();
        assert!(matches!(build_complex(&[p], 1e-9), Err(Error::DegenerateGeometry(_))));
    }

    #[test]
    fn constant_path_gives_a_point() {
        let p = SampledPath::from_points(vec![vec![1.0, 2.0], vec![1.0, 2.0]], true).unwrap();
        let c = build_complex(&[p], 1e-9).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count()), (1, 0));
    }

    #[test]
    fn document_round_trip_and_validation() {
        let c = build_complex(&[square(0.0, 0.0, 1.0), square(1.0, 1.0, 1.0)], 1e-9).unwrap();
        let back = CurveComplex::from_json(&c.to_json()).unwrap();
        assert_eq!(c, back);
        let mut doc = c.to_document();
        doc.edges[0].geometry[0][0] += 0.5;
        assert!(CurveComplex::from_document(&doc).is_err());
    }
}
