//! Constructors for the pattern graphs (thetas, prisms, lifts of rooted trees)
//! and the host constructions (clique blowups, polarity graphs).

use num_rational::Ratio;

use crate::detectors::are_isomorphic;
use crate::error::{param, Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(param(format!("cycle length must be >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Path on `n` vertices `0-1-…-(n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

pub fn complete(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            b.add_edge(u, v).unwrap();
        }
    }
    b.build()
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = GraphBuilder::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).unwrap();
        }
    }
    g.build()
}

/// `K_{1,k}` with center 0.
pub fn star(k: usize) -> Graph {
    complete_bipartite(1, k)
}

/// A theta graph together with its two branch vertices.
#[derive(Clone, Debug)]
pub struct Theta {
    pub graph: Graph,
    pub terminals: (usize, usize),
}

/// `Θ_ℓ^t`: `t` internally disjoint paths of `ℓ` edges between terminals 0 and 1.
///
/// Path `i` has internal vertices `2 + i(ℓ-1) .. 2 + (i+1)(ℓ-1)` in order from
/// terminal 0 to terminal 1.
pub fn theta(l: usize, t: usize) -> Result<Theta> {
    if l < 2 || t < 2 {
        return Err(param(format!("theta needs l >= 2 and t >= 2, got l={l}, t={t}")));
    }
    let n = 2 + (l - 1) * t;
    let mut b = GraphBuilder::new(n);
    for i in 0..t {
        let internal: Vec<usize> = (0..l - 1).map(|j| 2 + i * (l - 1) + j).collect();
        let mut prev = 0;
        for &x in &internal {
            b.add_edge(prev, x)?;
            prev = x;
        }
        b.add_edge(prev, 1)?;
    }
    Ok(Theta {
        graph: b.build(),
        terminals: (0, 1),
    })
}

/// `C_ℓ^□`: outer cycle `0..ℓ`, inner cycle `ℓ..2ℓ`, rungs `i - ℓ+i`.
pub fn prism(l: usize) -> Result<Graph> {
    if l < 3 {
        return Err(param(format!("prism needs l >= 3, got {l}")));
    }
    let mut b = GraphBuilder::new(2 * l);
    for i in 0..l {
        let j = (i + 1) % l;
        b.add_edge(i, j)?;
        b.add_edge(l + i, l + j)?;
        b.add_edge(i, l + i)?;
    }
    Ok(b.build())
}

/// A tree with an independent, proper, nonempty root set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    tree: Graph,
    roots: VertexSet,
}

impl RootedTree {
    pub fn new(tree: Graph, roots: VertexSet) -> Result<Self> {
        if !tree.is_tree() {
            return Err(Error::Validation("rooted tree: graph is not a tree".into()));
        }
        roots.check_range(tree.n())?;
        if roots.is_empty() || roots.len() >= tree.n() {
            return Err(Error::Validation(
                "rooted tree: need at least one root and at least one non-root".into(),
            ));
        }
        for (i, u) in roots.iter().enumerate() {
            for v in roots.iter().skip(i + 1) {
                if tree.has_edge(u, v) {
                    return Err(Error::Validation(format!(
                        "rooted tree: roots {u} and {v} are adjacent"
                    )));
                }
            }
        }
        Ok(RootedTree { tree, roots })
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn roots(&self) -> &VertexSet {
        &self.roots
    }

    pub fn non_roots(&self) -> VertexSet {
        (0..self.tree.n()).filter(|&v| !self.roots.contains(v)).collect()
    }

    pub fn order(&self) -> usize {
        self.tree.n()
    }

    /// `ρ(T; R) = e(T) / |V \ R|`.
    pub fn density(&self) -> Ratio<usize> {
        Ratio::new(self.tree.edge_count(), self.tree.n() - self.roots.len())
    }

    /// The 4-edge path `a-b-c-d-e` rooted at both ends (vertices 0..5).
    pub fn figure_two_path() -> Self {
        RootedTree::new(path(5), VertexSet::from([0, 4])).unwrap()
    }
}

/// `ρ(T; R)` as an exact rational.
pub fn density(rt: &RootedTree) -> Ratio<usize> {
    rt.density()
}

/// Parameters of a `(p; S)`-lift.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiftSpec {
    pub s: VertexSet,
    pub p: usize,
}

impl LiftSpec {
    pub fn validate(&self, rt: &RootedTree) -> Result<()> {
        if self.p == 0 {
            return Err(param("lift multiplicity p must be >= 1"));
        }
        let non_roots = rt.non_roots();
        if !self.s.is_subset(&non_roots) {
            return Err(Error::Validation("lift set S must consist of non-root vertices".into()));
        }
        if self.s.len() == non_roots.len() {
            return Err(Error::Validation(
                "lift set S must be a proper subset of the non-roots".into(),
            ));
        }
        Ok(())
    }
}

/// Origin of a lift vertex: a tree vertex, and its copy index unless glued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LiftLabel {
    pub tree_vertex: usize,
    pub copy: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Lift {
    pub graph: Graph,
    pub labels: Vec<LiftLabel>,
    /// `index[v][i]`: lift vertex playing tree vertex `v` in copy `i`.
    index: Vec<Vec<usize>>,
}

impl Lift {
    /// The lift vertex that is `v^i` (glued vertices ignore `i`).
    pub fn vertex(&self, tree_vertex: usize, copy: usize) -> usize {
        self.index[tree_vertex][copy]
    }
}

/// Glues `p` copies of `T` along `R ∪ S`. Glued tree vertices come first in
/// tree order with their copies; each tree vertex's block is contiguous.
pub fn lift(rt: &RootedTree, spec: &LiftSpec) -> Result<Lift> {
    spec.validate(rt)?;
    let t = rt.tree();
    let p = spec.p;
    let glued = |v: usize| rt.roots().contains(v) || spec.s.contains(v);
    let mut labels = Vec::new();
    let mut index = vec![Vec::with_capacity(p); t.n()];
    for (v, slot) in index.iter_mut().enumerate() {
        if glued(v) {
            let id = labels.len();
            labels.push(LiftLabel { tree_vertex: v, copy: None });
            slot.extend(std::iter::repeat(id).take(p));
        } else {
            for i in 0..p {
                slot.push(labels.len());
                labels.push(LiftLabel { tree_vertex: v, copy: Some(i) });
            }
        }
    }
    let mut b = GraphBuilder::new(labels.len());
    for (u, v) in t.edges() {
        for i in 0..p {
            b.add_edge(index[u][i], index[v][i])?;
        }
    }
    Ok(Lift {
        graph: b.build(),
        labels,
        index,
    })
}

/// All `(p; S)`-lifts over proper subsets `S` of the non-roots, ordered by the
/// bitmask of `S` over the sorted non-roots. With `dedup`, later lifts
/// isomorphic to an earlier one are dropped.
pub fn lift_family(rt: &RootedTree, p: usize, dedup: bool) -> Result<Vec<(LiftSpec, Lift)>> {
    if p == 0 {
        return Err(param("lift multiplicity p must be >= 1"));
    }
    let non_roots = rt.non_roots().into_vec();
    let a = non_roots.len();
    if a >= 24 {
        return Err(param(format!("{a} non-roots: lift family too large to enumerate")));
    }
    let mut out: Vec<(LiftSpec, Lift)> = Vec::new();
    for mask in 0u32..((1u32 << a) - 1) {
        let s: VertexSet = (0..a).filter(|i| mask >> i & 1 == 1).map(|i| non_roots[i]).collect();
        let spec = LiftSpec { s, p };
        let l = lift(rt, &spec)?;
        if dedup && out.iter().any(|(_, other)| are_isomorphic(&other.graph, &l.graph)) {
            continue;
        }
        out.push((spec, l));
    }
    Ok(out)
}

/// Clique blowup with its blob map.
#[derive(Clone, Debug)]
pub struct Blowup {
    pub graph: Graph,
    /// `blob_of[x]` is the base vertex whose blob contains `x`.
    pub blob_of: Vec<usize>,
    pub t: usize,
}

/// Replaces each base vertex by a `t`-clique and each base edge by a complete
/// `t×t` join. Vertex `v·t + i` is the `i`-th member of blob `v`.
pub fn clique_blowup(base: &Graph, t: usize) -> Result<Blowup> {
    if t == 0 {
        return Err(param("blowup clique size t must be >= 1"));
    }
    let n = base.n() * t;
    let mut b = GraphBuilder::new(n);
    for v in 0..base.n() {
        for i in 0..t {
            for j in i + 1..t {
                b.add_edge(v * t + i, v * t + j)?;
            }
        }
    }
    for (u, v) in base.edges() {
        for i in 0..t {
            for j in 0..t {
                b.add_edge(u * t + i, v * t + j)?;
            }
        }
    }
    Ok(Blowup {
        graph: b.build(),
        blob_of: (0..n).map(|x| x / t).collect(),
        t,
    })
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Normalized representatives of the points of `PG(2, q)`: `(1,a,b)`,
/// `(0,1,b)`, `(0,0,1)`.
fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::with_capacity((q * q + q + 1) as usize);
    for a in 0..q {
        for b in 0..q {
            pts.push([1, a, b]);
        }
    }
    for b in 0..q {
        pts.push([0, 1, b]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// Orthogonal-polarity graph over `GF(q)`, `q` prime: points of the projective
/// plane, adjacent when their dot product vanishes. Self-orthogonal points
/// get no loop, so degrees are `q` or `q+1`.
pub fn polarity_graph(q: u64) -> Result<Graph> {
    if !is_prime(q) {
        return Err(param(format!("polarity graph needs a prime q, got {q}")));
    }
    if q > 1000 {
        return Err(param(format!("q = {q} too large for a dense adjacency graph")));
    }
    let pts = projective_points(q);
    let mut b = GraphBuilder::new(pts.len());
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate().skip(i + 1) {
            let dot = (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q;
            if dot == 0 {
                b.add_edge(i, j)?;
            }
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detectors::find_biclique;
    use crate::graph::degree_profile;

    #[test]
    fn theta_counts_and_small_cases() {
        let th = theta(4, 3).unwrap();
        assert_eq!((th.graph.n(), th.graph.edge_count()), (11, 12));
        assert!(are_isomorphic(&theta(2, 2).unwrap().graph, &cycle(4).unwrap()));
        assert!(are_isomorphic(&theta(2, 3).unwrap().graph, &complete_bipartite(2, 3)));
        for l in 2..7 {
            assert!(are_isomorphic(&theta(l, 2).unwrap().graph, &cycle(2 * l).unwrap()));
        }
        assert!(theta(1, 3).is_err());
        assert!(theta(3, 1).is_err());
    }

    #[test]
    fn prism_examples() {
        let p10 = prism(10).unwrap();
        assert_eq!((p10.n(), p10.edge_count()), (20, 30));
        let p3 = prism(3).unwrap();
        assert_eq!((p3.n(), p3.edge_count()), (6, 9));
        assert!(!p3.is_bipartite());
        // cube: vertices are 3-bit words, edges flip one bit
        let cube = Graph::from_edges(
            8,
            (0..8usize).flat_map(|x| (0..3).map(move |b| (x, x ^ (1 << b)))).filter(|(x, y)| x < y),
        )
        .unwrap();
        assert!(are_isomorphic(&prism(4).unwrap(), &cube));
        assert!(prism(2).is_err());
    }

    #[test]
    fn figure_two_lift() {
        let rt = RootedTree::figure_two_path();
        let spec = LiftSpec { s: VertexSet::from([3]), p: 3 };
        let l = lift(&rt, &spec).unwrap();
        assert_eq!((l.graph.n(), l.graph.edge_count()), (9, 10));
        // b^i - c^i for each copy, c^i - d glued
        for i in 0..3 {
            assert!(l.graph.has_edge(l.vertex(1, i), l.vertex(2, i)));
            assert!(l.graph.has_edge(l.vertex(2, i), l.vertex(3, 0)));
            for j in 0..3 {
                if i != j {
                    assert!(!l.graph.has_edge(l.vertex(1, i), l.vertex(2, j)));
                }
            }
        }
        assert_eq!(l.vertex(3, 0), l.vertex(3, 2));
        assert_eq!(l.labels[l.vertex(0, 1)], LiftLabel { tree_vertex: 0, copy: None });
    }

    #[test]
    fn trivial_lifts() {
        let rt = RootedTree::figure_two_path();
        let l = lift(&rt, &LiftSpec { s: VertexSet::new(), p: 1 }).unwrap();
        assert!(are_isomorphic(&l.graph, rt.tree()));

        let edge = RootedTree::new(path(2), VertexSet::from([0])).unwrap();
        let l = lift(&edge, &LiftSpec { s: VertexSet::new(), p: 2 }).unwrap();
        assert!(are_isomorphic(&l.graph, &path(3)));
    }

    #[test]
    fn lift_spec_errors() {
        let rt = RootedTree::figure_two_path();
        assert!(lift(&rt, &LiftSpec { s: VertexSet::from([1, 2, 3]), p: 2 }).is_err());
        assert!(lift(&rt, &LiftSpec { s: VertexSet::from([0]), p: 2 }).is_err());
        assert!(lift(&rt, &LiftSpec { s: VertexSet::new(), p: 0 }).is_err());
    }

    #[test]
    fn lift_edge_count_formula() {
        let rt = RootedTree::figure_two_path();
        for p in 1..5 {
            for (spec, l) in lift_family(&rt, p, false).unwrap() {
                let a = rt.non_roots().len();
                let glued = |v| rt.roots().contains(v) || spec.s.contains(v);
                let inside = rt.tree().edges().filter(|&(u, v)| glued(u) && glued(v)).count();
                assert_eq!(l.graph.n(), rt.roots().len() + spec.s.len() + p * (a - spec.s.len()));
                assert_eq!(l.graph.edge_count(), p * rt.tree().edge_count() - (p - 1) * inside);
            }
        }
    }

    #[test]
    fn lift_family_sizes() {
        let edge = RootedTree::new(path(2), VertexSet::from([0])).unwrap();
        assert_eq!(lift_family(&edge, 3, false).unwrap().len(), 1);
        let rt = RootedTree::figure_two_path();
        assert_eq!(lift_family(&rt, 2, false).unwrap().len(), 7);
        for (_, l) in lift_family(&rt, 1, false).unwrap() {
            assert!(are_isomorphic(&l.graph, rt.tree()));
        }
        assert_eq!(lift_family(&rt, 1, true).unwrap().len(), 1);
        // with p = 2 the path is symmetric under a<->e, so {b} and {d} collide
        let dedup = lift_family(&rt, 2, true).unwrap();
        assert!(dedup.len() < 7);
    }

    #[test]
    fn densities() {
        assert_eq!(RootedTree::figure_two_path().density(), Ratio::new(4, 3));
        let edge = RootedTree::new(path(2), VertexSet::from([0])).unwrap();
        assert_eq!(density(&edge), Ratio::from_integer(1));
        let st = RootedTree::new(star(3), VertexSet::from([1, 2, 3])).unwrap();
        assert_eq!(density(&st), Ratio::from_integer(3));
    }

    #[test]
    fn rooted_tree_validation() {
        assert!(RootedTree::new(path(3), VertexSet::from([0, 1])).is_err());
        assert!(RootedTree::new(path(3), VertexSet::new()).is_err());
        assert!(RootedTree::new(path(2), VertexSet::from([0, 1])).is_err());
        assert!(RootedTree::new(cycle(3).unwrap(), VertexSet::from([0])).is_err());
    }

    #[test]
    fn blowups() {
        let g = cycle(5).unwrap();
        assert_eq!(clique_blowup(&g, 1).unwrap().graph, g);
        assert!(are_isomorphic(&clique_blowup(&complete(2), 2).unwrap().graph, &complete(4)));
        let b = clique_blowup(&g, 2).unwrap();
        assert_eq!((b.graph.n(), b.graph.edge_count()), (10, 25));
        assert_eq!(b.blob_of[7], 3);
        for t in 1..5 {
            let b = clique_blowup(&g, t).unwrap();
            assert_eq!(b.graph.edge_count(), t * t * 5 + 5 * t * (t - 1) / 2);
        }
        assert!(clique_blowup(&g, 0).is_err());
    }

    #[test]
    fn polarity_graphs() {
        for (q, n, e) in [(2u64, 7, 9), (3, 13, 24), (5, 31, 90), (7, 57, 224)] {
            let g = polarity_graph(q).unwrap();
            assert_eq!((g.n(), g.edge_count()), (n, e));
            let p = degree_profile(&g).unwrap();
            assert_eq!((p.min_degree as u64, p.max_degree as u64), (q, q + 1));
            assert!(find_biclique(&g, 2).is_none());
        }
        assert!(polarity_graph(4).is_err());
        assert!(polarity_graph(1).is_err());
    }
}
