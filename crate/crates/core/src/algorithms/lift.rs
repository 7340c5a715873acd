//! Assembling an induced `(p; S)`-lift from many induced copies of a rooted
//! tree that share their root images.
//!
//! Copies are grouped by the tuple of root images. Inside a group the
//! selection lemma picks `q` copies that agree or pairwise differ at every
//! tree vertex; the agreeing non-roots form `S`. Two selected copies conflict
//! when their union is not the induced `(2; S)`-lift; an independent set of
//! size `p` in the conflict graph is an induced `(p; S)`-lift.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::detectors::{verify_embedding, Embedding};
use crate::error::{param, Result};
use crate::generators::{lift, Lift, LiftSpec, RootedTree};
use crate::graph::{Graph, VertexSet};

use super::embed::enumerate_tree_embeddings;
use super::selection::{select_regular, PositionVerdict};
use super::PipelineConfig;

#[derive(Clone, Debug)]
pub struct LiftFound {
    pub spec: LiftSpec,
    pub lift: Lift,
    /// Induced embedding of `lift.graph` into the host.
    pub embedding: Embedding,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct LiftDiagnostics {
    pub tree_copies: u64,
    pub enumeration_complete: bool,
    pub groups: usize,
    pub largest_group: usize,
    pub groups_tried: usize,
    pub selections: usize,
    pub conflict_edges: usize,
    pub independent_set: usize,
    /// `q² / (2e + q)` for the last conflict graph built.
    pub independent_floor: f64,
    pub codegree_threshold: f64,
}

/// Greedy minimum-degree independent set; always at least `q²/(2e+q)`.
/// `adj` is a symmetric boolean adjacency matrix. Returned indices ascend.
pub fn greedy_independent_set(adj: &[Vec<bool>]) -> Vec<usize> {
    let q = adj.len();
    let mut alive = vec![true; q];
    let mut out = Vec::new();
    loop {
        let pick = (0..q)
            .filter(|&i| alive[i])
            .min_by_key(|&i| ((0..q).filter(|&j| alive[j] && j != i && adj[i][j]).count(), i));
        let Some(v) = pick else { break };
        out.push(v);
        alive[v] = false;
        for j in 0..q {
            if adj[v][j] {
                alive[j] = false;
            }
        }
    }
    out.sort_unstable();
    out
}

/// Whether copies `a` and `b` (images indexed by tree vertex) together induce
/// exactly the union of their tree edges.
fn compatible(g: &Graph, tree: &Graph, a: &[usize], b: &[usize]) -> bool {
    let mut verts: Vec<usize> = a.iter().chain(b).copied().collect();
    verts.sort_unstable();
    verts.dedup();
    let mut expected = std::collections::BTreeSet::new();
    for (u, v) in tree.edges() {
        for img in [a, b] {
            let (x, y) = (img[u], img[v]);
            expected.insert((x.min(y), x.max(y)));
        }
    }
    for (i, &x) in verts.iter().enumerate() {
        for &y in &verts[i + 1..] {
            if g.has_edge(x, y) != expected.contains(&(x, y)) {
                return false;
            }
        }
    }
    true
}

/// Searches `g` for an induced `(p; S)`-lift of `rt` for some proper `S`.
pub fn find_induced_lift(
    g: &Graph,
    rt: &RootedTree,
    p: usize,
    cfg: &PipelineConfig,
) -> Result<(Option<LiftFound>, LiftDiagnostics)> {
    cfg.validate()?;
    if p == 0 {
        return Err(param("lift multiplicity p must be >= 1"));
    }
    let q = cfg.q.max(p);
    let tree = rt.tree();
    // without an explicit threshold every induced copy of the tree is used
    let threshold = cfg.codegree_threshold.unwrap_or(f64::INFINITY);
    let mut diag = LiftDiagnostics {
        codegree_threshold: threshold,
        ..Default::default()
    };
    if g.n() == 0 {
        diag.enumeration_complete = true;
        return Ok((None, diag));
    }
    let en = enumerate_tree_embeddings(g, tree, threshold, cfg.node_budget, Some(cfg.max_tree_copies))?;
    diag.tree_copies = en.count;
    diag.enumeration_complete = en.complete;
    let copies: Vec<Vec<usize>> = en.embeddings.unwrap_or_default().into_iter().map(|e| e.map).collect();

    let roots = rt.roots().as_slice().to_vec();
    let mut groups: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    for c in copies {
        let key: Vec<usize> = roots.iter().map(|&r| c[r]).collect();
        groups.entry(key).or_default().push(c);
    }
    diag.groups = groups.len();
    diag.largest_group = groups.values().map(Vec::len).max().unwrap_or(0);
    let mut ordered: Vec<(&Vec<usize>, &Vec<Vec<usize>>)> = groups.iter().collect();
    ordered.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.0.cmp(b.0)));

    for (_, members) in ordered {
        if members.len() < q {
            break;
        }
        diag.groups_tried += 1;
        let (chosen, spec) = if p == 1 {
            (vec![members[0].clone()], LiftSpec { s: VertexSet::new(), p: 1 })
        } else {
            let Some(sel) = select_regular(members, q)? else { continue };
            diag.selections += 1;
            let s: VertexSet = rt
                .non_roots()
                .iter()
                .filter(|&v| sel.verdicts[v] == PositionVerdict::AllSame)
                .collect();
            let picked: Vec<Vec<usize>> = sel.indices.iter().map(|&i| members[i].clone()).collect();
            let mut adj = vec![vec![false; q]; q];
            let mut edges = 0;
            for i in 0..q {
                for j in i + 1..q {
                    if !compatible(g, tree, &picked[i], &picked[j]) {
                        adj[i][j] = true;
                        adj[j][i] = true;
                        edges += 1;
                    }
                }
            }
            let indep = greedy_independent_set(&adj);
            diag.conflict_edges = edges;
            diag.independent_set = indep.len();
            diag.independent_floor = (q * q) as f64 / (2 * edges + q) as f64;
            if indep.len() < p {
                continue;
            }
            let chosen = indep[..p].iter().map(|&i| picked[i].clone()).collect();
            (chosen, LiftSpec { s, p })
        };
        if spec.validate(rt).is_err() {
            continue;
        }
        let l = lift(rt, &spec)?;
        let map: Vec<usize> = l
            .labels
            .iter()
            .map(|lab| chosen[lab.copy.unwrap_or(0)][lab.tree_vertex])
            .collect();
        let embedding = Embedding { map, induced: true };
        if verify_embedding(g, &l.graph, &embedding)? {
            return Ok((Some(LiftFound { spec, lift: l, embedding }), diag));
        }
    }
    Ok((None, diag))
}
