//! Homology and homotopy combinatorics of a curve complex.
//!
//! The complex is homotopy equivalent to a wedge of `m = E − V + 1` circles.
//! A spanning tree fixes a basis: every non-tree edge (chord) closes exactly
//! one simple cycle, the homology class of a closed word is the vector of
//! signed chord traversal counts, and its class in the free group `π₁` is the
//! word over chord letters left after erasing tree edges.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve_model::{geom, CurveComplex, EdgeWord, Letter};
use crate::{Error, Result};

/// First Betti number `E − V + 1` of a connected complex.
pub fn betti1(complex: &CurveComplex) -> usize {
    (complex.edge_count() + 1).saturating_sub(complex.vertex_count())
}

/// `bridge[e]` is true when removing edge `e` disconnects the complex.
/// Loops and parallel edges are never bridges.
pub fn bridges(complex: &CurveComplex) -> Vec<bool> {
    let n = complex.vertex_count();
    let mut is_bridge = vec![false; complex.edge_count()];
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut clock = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        // (vertex, edge used to enter, next adjacency slot)
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, via) = (top.0, top.1);
            let adj = &complex.adjacency()[v];
            if top.2 < adj.len() {
                let e = adj[top.2];
                top.2 += 1;
                if Some(e) == via {
                    continue;
                }
                let edge = complex.edge(e);
                let w = if edge.from == v { edge.to } else { edge.from };
                if disc[w] == usize::MAX {
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(p, _, _))) = (via, stack.last()) {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        is_bridge[e] = true;
                    }
                }
            }
        }
    }
    is_bridge
}

/// Spanning tree, its chords and their fundamental cycles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleBasis {
    pub root: usize,
    pub tree_edges: Vec<usize>,
    /// Non-tree edges in increasing id order; chord `j` generates cycle `j`.
    pub chords: Vec<usize>,
    /// `cycles[j]` runs chord `j` forward, then the tree path back.
    pub cycles: Vec<EdgeWord>,
    /// `(from, to)` of every edge, to check closedness without the complex.
    endpoints: Vec<(usize, usize)>,
    /// Generator index of each edge, `None` for tree edges.
    generator: Vec<Option<usize>>,
}

impl CycleBasis {
    pub fn rank(&self) -> usize {
        self.chords.len()
    }

    pub fn generator_of(&self, edge: usize) -> Option<usize> {
        self.generator.get(edge).copied().flatten()
    }

    fn closed(&self, word: &EdgeWord) -> bool {
        let tail = |l: &Letter| {
            let (f, t) = self.endpoints[l.edge];
            if l.dir > 0 {
                f
            } else {
                t
            }
        };
        let head = |l: &Letter| {
            let (f, t) = self.endpoints[l.edge];
            if l.dir > 0 {
                t
            } else {
                f
            }
        };
        match (word.letters().first(), word.letters().last()) {
            (Some(a), Some(b)) => tail(a) == head(b),
            _ => true,
        }
    }
}

/// BFS spanning tree from the lexicographically smallest vertex; the order in
/// which incident edges are explored is shuffled by `seed`.
pub fn cycle_basis(complex: &CurveComplex, seed: u64) -> CycleBasis {
    let n = complex.vertex_count();
    let root = (0..n)
        .min_by(|&a, &b| geom::lex_cmp(complex.vertex(a), complex.vertex(b)))
        .unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; complex.edge_count()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let mut incident = complex.adjacency()[u].clone();
        incident.sort_unstable();
        incident.dedup();
        incident.shuffle(&mut rng);
        for e in incident {
            let edge = complex.edge(e);
            let w = if edge.from == u { edge.to } else { edge.from };
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                parent[w] = Some((u, e));
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            }
        }
    }

    // Tree path from `x` up to `ancestor` as letters walking upward.
    let climb = |mut x: usize, ancestor: usize| -> Vec<Letter> {
        let mut out = Vec::new();
        while x != ancestor {
            let (p, e) = parent[x].expect("vertex below ancestor has a parent");
            let dir = if complex.edge(e).from == x { 1 } else { -1 };
            out.push(Letter::new(e, dir));
            x = p;
        }
        out
    };
    let lca = |mut a: usize, mut b: usize| -> usize {
        while depth[a] > depth[b] {
            a = parent[a].unwrap().0;
        }
        while depth[b] > depth[a] {
            b = parent[b].unwrap().0;
        }
        while a != b {
            a = parent[a].unwrap().0;
            b = parent[b].unwrap().0;
        }
        a
    };

    let chords: Vec<usize> = (0..complex.edge_count()).filter(|&e| !in_tree[e]).collect();
    let mut generator = vec![None; complex.edge_count()];
    let cycles = chords
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            generator[c] = Some(j);
            let edge = complex.edge(c);
            let (u, v) = (edge.from, edge.to);
            let mut letters = vec![Letter::new(c, 1)];
            if u != v {
                let a = lca(u, v);
                letters.extend(climb(v, a));
                let down: Vec<Letter> = climb(u, a).into_iter().rev().map(Letter::inverse).collect();
                letters.extend(down);
            }
            EdgeWord::new(letters)
        })
        .collect();

    CycleBasis {
        root,
        tree_edges: (0..complex.edge_count()).filter(|&e| in_tree[e]).collect(),
        chords,
        cycles,
        endpoints: complex.edges().iter().map(|e| (e.from, e.to)).collect(),
        generator,
    }
}

/// Integer coordinates of a class in `H₁` with respect to a [`CycleBasis`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyVector(pub Vec<i64>);

impl HomologyVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }
}

/// `n_j` = signed number of traversals of chord `j`.
pub fn homology_coefficients(word: &EdgeWord, basis: &CycleBasis) -> Result<HomologyVector> {
    if !basis.closed(word) {
        return Err(Error::NotClosed);
    }
    let mut n = vec![0i64; basis.rank()];
    for l in word.letters() {
        if let Some(j) = basis.generator_of(l.edge) {
            n[j] += i64::from(l.dir);
        }
    }
    Ok(HomologyVector(n))
}

/// A generator letter of the free group `π₁`: chord index and exponent sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub index: usize,
    pub sign: i8,
}

/// Freely reduced word over chord generators. Empty iff the closed word is
/// contractible.
pub fn reduce_word(word: &EdgeWord, basis: &CycleBasis) -> Result<Vec<Generator>> {
    if !basis.closed(word) {
        return Err(Error::NotClosed);
    }
    let mut stack: Vec<Generator> = Vec::new();
    for l in word.letters() {
        let Some(index) = basis.generator_of(l.edge) else {
            continue;
        };
        let g = Generator { index, sign: l.dir };
        match stack.last() {
            Some(top) if top.index == g.index && top.sign == -g.sign => {
                stack.pop();
            }
            _ => stack.push(g),
        }
    }
    Ok(stack)
}

/// Eulerian trail witness; `closed` when it returns to its start.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trail {
    pub word: EdgeWord,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", content = "trail", rename_all = "snake_case")]
pub enum EulerClass {
    NotTraversable,
    Traversable(Trail),
    Unicursal(Trail),
}

impl EulerClass {
    pub fn trail(&self) -> Option<&Trail> {
        match self {
            EulerClass::NotTraversable => None,
            EulerClass::Traversable(t) | EulerClass::Unicursal(t) => Some(t),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EulerClass::NotTraversable => "not_traversable",
            EulerClass::Traversable(_) => "traversable",
            EulerClass::Unicursal(_) => "unicursal",
        }
    }
}

/// Degree census plus a Hierholzer trail when one exists. A graph with no
/// odd vertex is reported unicursal, with exactly two it is traversable.
pub fn euler_classify(complex: &CurveComplex) -> EulerClass {
    let odd: Vec<usize> = (0..complex.vertex_count())
        .filter(|&v| complex.degree(v) % 2 == 1)
        .collect();
    let start = match odd.len() {
        0 => 0,
        2 => odd[0],
        _ => return EulerClass::NotTraversable,
    };
    let word = hierholzer(complex, start);
    debug_assert_eq!(word.len(), complex.edge_count());
    let trail = Trail {
        closed: odd.is_empty(),
        word,
    };
    if odd.is_empty() {
        EulerClass::Unicursal(trail)
    } else {
        EulerClass::Traversable(trail)
    }
}

/// Every Eulerian trail, up to `cap` of them. Closed trails all start at the
/// same vertex and open ones at the same odd vertex; since covering allows
/// rotation and reversal, this loses no covering relation.
pub fn eulerian_trails(complex: &CurveComplex, cap: usize) -> Vec<Trail> {
    let Some(first) = euler_classify(complex).trail().cloned() else {
        return Vec::new();
    };
    let Some(start) = first.word.start_vertex(complex) else {
        return vec![first];
    };
    let m = complex.edge_count();
    let mut out = Vec::new();
    let mut used = vec![false; m];
    let mut letters = Vec::with_capacity(m);
    enumerate_trails(complex, start, &mut used, &mut letters, first.closed, cap, &mut out);
    out
}

fn enumerate_trails(
    complex: &CurveComplex,
    v: usize,
    used: &mut [bool],
    letters: &mut Vec<Letter>,
    closed: bool,
    cap: usize,
    out: &mut Vec<Trail>,
) {
    if out.len() >= cap {
        return;
    }
    if letters.len() == used.len() {
        out.push(Trail {
            word: EdgeWord::new(letters.clone()),
            closed,
        });
        return;
    }
    let mut seen = Vec::new();
    for &e in &complex.adjacency()[v] {
        if used[e] || seen.contains(&e) {
            continue;
        }
        seen.push(e);
        let edge = complex.edge(e);
        for dir in [1i8, -1] {
            if edge.tail(dir) != v {
                continue;
            }
            used[e] = true;
            letters.push(Letter::new(e, dir));
            enumerate_trails(complex, edge.head(dir), used, letters, closed, cap, out);
            letters.pop();
            used[e] = false;
        }
    }
}

fn hierholzer(complex: &CurveComplex, start: usize) -> EdgeWord {
    let mut used = vec![false; complex.edge_count()];
    let mut cursor = vec![0usize; complex.vertex_count()];
    // (vertex, letter used to arrive)
    let mut stack: Vec<(usize, Option<Letter>)> = vec![(start, None)];
    let mut out: Vec<Letter> = Vec::new();
    while let Some(&(v, arrived)) = stack.last() {
        let adj = &complex.adjacency()[v];
        while cursor[v] < adj.len() && used[adj[cursor[v]]] {
            cursor[v] += 1;
        }
        if cursor[v] == adj.len() {
            stack.pop();
            if let Some(l) = arrived {
                out.push(l);
            }
        } else {
            let e = adj[cursor[v]];
            used[e] = true;
            let edge = complex.edge(e);
            let (w, dir) = if edge.from == v { (edge.to, 1) } else { (edge.from, -1) };
            stack.push((w, Some(Letter::new(e, dir))));
        }
    }
    out.reverse();
    EdgeWord::new(out)
}

/// Whether `word` reads as a walk forward and backward along the trail's
/// letter positions (on a circle of positions for closed trails).
pub fn covers_trail(word: &EdgeWord, trail: &Trail) -> bool {
    let t = trail.word.letters();
    let n = t.len();
    if word.is_empty() {
        return true;
    }
    if n == 0 {
        return false;
    }
    let positions = if trail.closed { n } else { n + 1 };
    let mut live = vec![true; positions];
    for &l in word.letters() {
        let mut next = vec![false; positions];
        let mut any = false;
        for p in (0..positions).filter(|&p| live[p]) {
            // forward over t[p]
            if (trail.closed || p < n)
                && t[p % n] == l {
                    next[(p + 1) % positions] = true;
                    any = true;
                }
            // backward over t[p - 1]
            if trail.closed || p > 0 {
                let q = (p + positions - 1) % positions;
                if t[q % n].inverse() == l {
                    next[q] = true;
                    any = true;
                }
            }
        }
        if !any {
            return false;
        }
        live = next;
    }
    true
}
