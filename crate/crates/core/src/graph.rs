//! Simple undirected graphs on vertices `0..n` with bit-packed adjacency rows.
//!
//! Every other module works on [`Graph`]: neighborhoods are stored as one
//! `u64` word per 64 vertices, so common-neighborhood and codegree queries
//! are word-wise `AND` plus popcount.

use std::collections::VecDeque;
use std::fmt;

use num_rational::Ratio;

use crate::error::{input, Error, Result};

/// A fixed-width bitset over the vertex range of one graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn empty(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bits {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        b.trim();
        b
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.len && (self.words[v / 64] >> (v % 64)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1u64 << (v % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn and_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_count(&self, other: &Bits) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + tz)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Fails if some id is `>= n`.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::InvalidVertex { vertex: v, n }),
            _ => Ok(()),
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(a: [usize; N]) -> Self {
        a.into_iter().collect()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

/// Minimum, maximum and average degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub min_degree: usize,
    pub max_degree: usize,
    /// `2e(G)/n`, exact.
    pub average_degree: Ratio<u64>,
}

impl DegreeProfile {
    pub fn average_f64(&self) -> f64 {
        *self.average_degree.numer() as f64 / *self.average_degree.denom() as f64
    }
}

/// Simple undirected graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<Bits>,
    edge_count: usize,
}

/// Accumulates edges for a [`Graph`]. Adding an edge twice is a no-op.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    rows: Vec<Bits>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            rows: vec![Bits::empty(n); n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::InvalidVertex { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Validation(format!("self-loop at vertex {u}")));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(self)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.rows[u].contains(v)
    }

    pub fn build(self) -> Graph {
        let twice: usize = self.rows.iter().map(Bits::count).sum();
        Graph {
            n: self.n,
            rows: self.rows,
            edge_count: twice / 2,
        }
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbor_bits(&self, v: usize) -> &Bits {
        &self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.rows[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }

    /// `|N(u) ∩ N(v)|` for two vertices; no range checks.
    #[inline]
    pub fn pair_codegree(&self, u: usize, v: usize) -> usize {
        self.rows[u].intersection_count(&self.rows[v])
    }

    /// Bitset of `N(S)`: vertices outside `S` adjacent to all of `S`.
    /// `N(∅)` is the whole vertex set.
    pub fn common_neighbor_bits(&self, s: &[usize]) -> Bits {
        let mut acc = Bits::full(self.n);
        for &u in s {
            acc.and_assign(&self.rows[u]);
        }
        for &u in s {
            acc.remove(u);
        }
        acc
    }

    /// The subgraph induced on `vertices`, relabeled `0..k` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j).expect("distinct in-range indices");
                }
            }
        }
        b.build()
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: &Bits) -> usize {
        set.iter().map(|v| self.rows[v].intersection_count(set)).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_order(0).len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count + 1 == self.n && self.is_connected()
    }

    /// Vertices reachable from `start`, in breadth-first order (neighbors by id).
    pub fn bfs_order(&self, start: usize) -> Vec<usize> {
        let mut seen = Bits::empty(self.n);
        let mut order = Vec::with_capacity(self.n);
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for v in self.neighbors(u) {
                if !seen.contains(v) {
                    seen.insert(v);
                    queue.push_back(v);
                }
            }
        }
        order
    }

    /// Proper 2-coloring if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for v in self.neighbors(u) {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn max_codegree(&self) -> usize {
        let mut best = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                best = best.max(self.pair_codegree(u, v));
            }
        }
        best
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// `N(S)` for a vertex set `S`.
pub fn common_neighborhood(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    s.check_range(g.n())?;
    Ok(g.common_neighbor_bits(s.as_slice()).iter().collect())
}

/// `deg(S) = |N(S)|`.
pub fn codegree(g: &Graph, s: &VertexSet) -> Result<usize> {
    s.check_range(g.n())?;
    Ok(g.common_neighbor_bits(s.as_slice()).count())
}

pub fn degree_profile(g: &Graph) -> Result<DegreeProfile> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let degs = g.degrees();
    Ok(DegreeProfile {
        min_degree: *degs.iter().min().unwrap(),
        max_degree: *degs.iter().max().unwrap(),
        average_degree: Ratio::new(2 * g.edge_count() as u64, g.n() as u64),
    })
}

/// `Δ(G) ≤ K·δ(G)`. The empty graph is vacuously almost-regular.
pub fn is_k_almost_regular(g: &Graph, k: f64) -> Result<bool> {
    if !(k >= 1.0) || !k.is_finite() {
        return Err(input(format!("almost-regularity factor must be a finite value >= 1, got {k}")));
    }
    if g.n() == 0 {
        return Ok(true);
    }
    let p = degree_profile(g)?;
    Ok(p.max_degree as f64 <= k * p.min_degree as f64)
}
