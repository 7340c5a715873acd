//! Induced trees in almost-regular `K_{s,s}`-free graphs.
//!
//! Vertices of the tree are embedded in a leaf order (each vertex after the
//! first has exactly one earlier neighbor). The candidate set for the next
//! vertex avoids the neighborhoods of everything placed so far except its
//! parent, the high-codegree "bad" neighbors `X(v)` of everything placed, and
//! the placed vertices themselves.

use std::cell::RefCell;

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::detectors::{find_biclique, Embedding};
use crate::error::{input, param, Result};
use crate::graph::{is_k_almost_regular, Bits, Graph, VertexSet};

use super::average_degree;

/// `X(v) = {u ≠ v : codeg(u, v) ≥ threshold}`.
pub fn bad_neighbor_set(g: &Graph, v: usize, threshold: f64) -> Result<VertexSet> {
    g.check_vertex(v)?;
    Ok(bad_bits(g, v, threshold).iter().collect())
}

fn bad_bits(g: &Graph, v: usize, threshold: f64) -> Bits {
    let mut out = Bits::empty(g.n());
    let nv = g.neighbor_bits(v);
    for u in 0..g.n() {
        if u != v && g.neighbor_bits(u).intersection_count(nv) as f64 >= threshold {
            out.insert(u);
        }
    }
    out
}

/// BFS order of a tree from vertex 0 together with, for each position, the
/// position of its unique earlier neighbor.
struct LeafOrder {
    order: Vec<usize>,
    parent_pos: Vec<Option<usize>>,
}

fn leaf_order(t: &Graph) -> Result<LeafOrder> {
    if t.n() == 0 || !t.is_tree() {
        return Err(input("pattern must be a nonempty tree"));
    }
    let order = t.bfs_order(0);
    let mut pos = vec![usize::MAX; t.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let parent_pos = order
        .iter()
        .enumerate()
        .map(|(i, &v)| t.neighbors(v).map(|w| pos[w]).filter(|&p| p < i).min())
        .collect();
    Ok(LeafOrder { order, parent_pos })
}

/// A leaf order of `t`: BFS from vertex 0.
pub fn bfs_leaf_order(t: &Graph) -> Result<Vec<usize>> {
    Ok(leaf_order(t)?.order)
}

/// Lazily computed `X(v)` sets.
struct BadSets<'a> {
    g: &'a Graph,
    threshold: f64,
    cache: RefCell<Vec<Option<Bits>>>,
}

impl<'a> BadSets<'a> {
    fn new(g: &'a Graph, threshold: f64) -> Self {
        BadSets {
            g,
            threshold,
            cache: RefCell::new(vec![None; g.n()]),
        }
    }

    fn remove_from(&self, v: usize, target: &mut Bits) {
        let mut cache = self.cache.borrow_mut();
        let entry = cache[v].get_or_insert_with(|| bad_bits(self.g, v, self.threshold));
        target.and_not_assign(entry);
    }
}

/// `V_k` for the next position given the images of positions `0..k`.
fn candidates(g: &Graph, bad: &BadSets, images: &[usize], parent: usize) -> Bits {
    let mut cand = g.neighbor_bits(images[parent]).clone();
    for (i, &v) in images.iter().enumerate() {
        bad.remove_from(v, &mut cand);
        if i != parent {
            cand.and_not_assign(g.neighbor_bits(v));
        }
        cand.remove(v);
    }
    cand
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreedyTrace {
    pub embedding: Option<Embedding>,
    /// Tree vertices in embedding order.
    pub order: Vec<usize>,
    /// `|V_k|` at each step after the first.
    pub candidate_sizes: Vec<usize>,
    /// Position in `order` at which `V_k` was empty.
    pub failed_step: Option<usize>,
}

/// One randomized run of the greedy embedder.
pub fn greedy_tree_embed(g: &Graph, t: &Graph, threshold: f64, seed: u64) -> Result<GreedyTrace> {
    let lo = leaf_order(t)?;
    if g.n() == 0 {
        return Err(crate::error::Error::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bad = BadSets::new(g, threshold);
    let mut images = vec![(0..g.n()).choose(&mut rng).expect("nonempty host")];
    let mut sizes = Vec::new();
    for k in 1..lo.order.len() {
        let parent = lo.parent_pos[k].expect("leaf order");
        let cand = candidates(g, &bad, &images, parent);
        sizes.push(cand.count());
        match cand.iter().choose(&mut rng) {
            Some(v) => images.push(v),
            None => {
                return Ok(GreedyTrace {
                    embedding: None,
                    order: lo.order,
                    candidate_sizes: sizes,
                    failed_step: Some(k),
                })
            }
        }
    }
    let mut map = vec![0; t.n()];
    for (k, &tv) in lo.order.iter().enumerate() {
        map[tv] = images[k];
    }
    Ok(GreedyTrace {
        embedding: Some(Embedding { map, induced: true }),
        order: lo.order,
        candidate_sizes: sizes,
        failed_step: None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TreeEnumeration {
    /// Embeddings produced by the greedy rule over every choice sequence.
    pub count: u64,
    pub embeddings: Option<Vec<Embedding>>,
    /// False if the node budget or the collection cap stopped the walk.
    pub complete: bool,
}

/// Every embedding the greedy rule can produce, i.e. all choice sequences.
/// `budget` bounds search nodes; `max_collect` bounds stored embeddings when
/// `collect` is set (reaching it stops the walk).
pub fn enumerate_tree_embeddings(
    g: &Graph,
    t: &Graph,
    threshold: f64,
    budget: Option<u64>,
    collect: Option<u64>,
) -> Result<TreeEnumeration> {
    let lo = leaf_order(t)?;
    let bad = BadSets::new(g, threshold);
    let mut state = EnumState {
        g,
        lo: &lo,
        bad: &bad,
        budget,
        nodes: 0,
        count: 0,
        collect,
        store: collect.map(|_| Vec::new()),
        stopped: false,
        tree_n: t.n(),
    };
    let mut images = Vec::with_capacity(t.n());
    for v in 0..g.n() {
        images.push(v);
        state.descend(&mut images);
        images.pop();
        if state.stopped {
            break;
        }
    }
    Ok(TreeEnumeration {
        count: state.count,
        embeddings: state.store,
        complete: !state.stopped,
    })
}

struct EnumState<'a> {
    g: &'a Graph,
    lo: &'a LeafOrder,
    bad: &'a BadSets<'a>,
    budget: Option<u64>,
    nodes: u64,
    count: u64,
    collect: Option<u64>,
    store: Option<Vec<Embedding>>,
    stopped: bool,
    tree_n: usize,
}

impl EnumState<'_> {
    fn descend(&mut self, images: &mut Vec<usize>) {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.stopped = true;
            return;
        }
        let k = images.len();
        if k == self.lo.order.len() {
            self.count += 1;
            if let Some(store) = self.store.as_mut() {
                let mut map = vec![0; self.tree_n];
                for (i, &tv) in self.lo.order.iter().enumerate() {
                    map[tv] = images[i];
                }
                store.push(Embedding { map, induced: true });
                if self.collect.is_some_and(|c| store.len() as u64 >= c) {
                    self.stopped = true;
                }
            }
            return;
        }
        let parent = self.lo.parent_pos[k].expect("leaf order");
        let cand = candidates(self.g, self.bad, images, parent);
        for v in cand.iter() {
            images.push(v);
            self.descend(images);
            images.pop();
            if self.stopped {
                return;
            }
        }
    }
}

/// Which hypotheses of the greedy embedding guarantee hold for `g`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingHypothesis {
    pub k: f64,
    pub s: usize,
    pub tree_order: usize,
    pub average_degree: f64,
    pub degree_floor: f64,
    pub almost_regular: bool,
    pub degree_large: bool,
    /// Only evaluated when the other two hold.
    pub kss_free: Option<bool>,
}

impl EmbeddingHypothesis {
    pub fn holds(&self) -> bool {
        self.almost_regular && self.degree_large && self.kss_free == Some(true)
    }
}

pub fn embedding_hypothesis(g: &Graph, k: f64, s: usize, tree_order: usize) -> Result<EmbeddingHypothesis> {
    if s == 0 || tree_order == 0 {
        return Err(param("s and tree order must be positive"));
    }
    let almost_regular = is_k_almost_regular(g, k)?;
    let d = average_degree(g);
    let floor = super::reference::tree_embedding_degree_floor(k, tree_order, s);
    let degree_large = d >= floor;
    let kss_free = (almost_regular && degree_large).then(|| find_biclique(g, s).is_none());
    Ok(EmbeddingHypothesis {
        k,
        s,
        tree_order,
        average_degree: d,
        degree_floor: floor,
        almost_regular,
        degree_large,
        kss_free,
    })
}
