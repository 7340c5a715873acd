//! Induced prisms `C_{2ℓ}^□` from closed walks in the thin-4-cycle graph.
//!
//! `Γ` has the edges of `G` as vertices; `xy` and `zw` are adjacent when
//! `x, y, z, w` (in some order) span a thin induced 4-cycle with `xy` and `zw`
//! as opposite sides. A cycle `e_1 … e_{2ℓ}` in `Γ` orients consistently
//! (the `x` ends form one cycle, the `y` ends the other); when no two of its
//! edges share an endpoint and no chord joins non-consecutive edges, the
//! `2ℓ` rungs span an induced prism. Chords are classified as special when
//! they touch `e_1` or `e_{ℓ+1}`, typical otherwise.

use serde::Serialize;

use crate::counters::for_each_induced_c4;
use crate::detectors::{find_induced, verify_embedding, Embedding, SearchOutcome};
use crate::error::{param, Result};
use crate::generators::prism;
use crate::graph::{Bits, Graph};

use super::PipelineConfig;

/// The auxiliary graph on `E(G)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThinC4Graph {
    /// Edges of `G` with `u < v`, indexed as `Γ` vertices.
    pub edges: Vec<(usize, usize)>,
    pub adjacency: Vec<Vec<usize>>,
    pub tau: f64,
}

impl ThinC4Graph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// Builds `Γ` with thinness threshold `tau` (both diagonal codegrees `≤ tau`).
pub fn thin_c4_graph(g: &Graph, tau: f64) -> ThinC4Graph {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut id = std::collections::HashMap::with_capacity(edges.len());
    for (i, &e) in edges.iter().enumerate() {
        id.insert(e, i);
    }
    let key = |a: usize, b: usize| id[&(a.min(b), a.max(b))];
    let mut adjacency = vec![Vec::new(); edges.len()];
    for_each_induced_c4(g, |u, x, v, y| {
        if g.pair_codegree(u, v) as f64 > tau || g.pair_codegree(x, y) as f64 > tau {
            return;
        }
        // cycle u-x-v-y: opposite sides (ux, vy) and (xv, yu)
        for (a, b) in [(key(u, x), key(v, y)), (key(x, v), key(y, u))] {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    });
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }
    ThinC4Graph { edges, adjacency, tau }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PrismDiagnostics {
    pub tau: f64,
    pub gamma_vertices: usize,
    pub gamma_edges: usize,
    pub nodes: u64,
    /// Extensions rejected because an edge shared an endpoint with an earlier one.
    pub degenerate: u64,
    pub typical_chords: u64,
    pub special_chords: u64,
    pub used_fallback: bool,
}

struct CycleSearch<'a> {
    g: &'a Graph,
    gamma: &'a ThinC4Graph,
    len: usize,
    half: usize,
    budget: Option<u64>,
    diag: PrismDiagnostics,
    xs: Vec<usize>,
    ys: Vec<usize>,
    used: Bits,
    exhausted: bool,
}

impl CycleSearch<'_> {
    /// Position classes for chords: `e_1` and `e_{ℓ+1}` are 0 and `half`.
    fn is_special(&self, i: usize, j: usize) -> bool {
        [0, self.half].contains(&i) || [0, self.half].contains(&j)
    }

    /// Checks that new rung `(x, y)` at position `k` has no chord to earlier
    /// rungs other than its predecessor (and `e_1` when closing).
    fn chord_free(&mut self, x: usize, y: usize, k: usize) -> bool {
        let closing = k + 1 == self.len;
        for i in 0..k {
            if i + 1 == k || (closing && i == 0) {
                let (px, py) = (self.xs[i], self.ys[i]);
                if self.g.has_edge(x, py) || self.g.has_edge(y, px) {
                    self.count_chord(i, k);
                    return false;
                }
                continue;
            }
            let (px, py) = (self.xs[i], self.ys[i]);
            if self.g.has_edge(x, px) || self.g.has_edge(x, py) || self.g.has_edge(y, px) || self.g.has_edge(y, py) {
                self.count_chord(i, k);
                return false;
            }
        }
        true
    }

    fn count_chord(&mut self, i: usize, k: usize) {
        if self.is_special(i, k) {
            self.diag.special_chords += 1;
        } else {
            self.diag.typical_chords += 1;
        }
    }

    fn orient(&self, from: (usize, usize), e: usize) -> Option<(usize, usize)> {
        let (a, b) = self.gamma.edges[e];
        let (x, y) = from;
        if self.g.has_edge(x, a) && self.g.has_edge(y, b) {
            Some((a, b))
        } else if self.g.has_edge(x, b) && self.g.has_edge(y, a) {
            Some((b, a))
        } else {
            None
        }
    }

    /// Extends a path `e_1 … e_k` in `Γ`; `start` is the index of `e_1`,
    /// which is the smallest index on the cycle.
    fn extend(&mut self, start: usize, last: usize) -> bool {
        self.diag.nodes += 1;
        if self.budget.is_some_and(|b| self.diag.nodes > b) {
            self.exhausted = true;
            return false;
        }
        let k = self.xs.len();
        let from = (self.xs[k - 1], self.ys[k - 1]);
        let gamma = self.gamma;
        for &e in &gamma.adjacency[last] {
            if e <= start {
                continue;
            }
            let Some((x, y)) = self.orient(from, e) else { continue };
            if self.used.contains(x) || self.used.contains(y) {
                self.diag.degenerate += 1;
                continue;
            }
            if !self.chord_free(x, y, k) {
                continue;
            }
            if k + 1 == self.len {
                // closing: e_{2ℓ} must be Γ-adjacent to e_1 with matching orientation
                let closes = gamma.adjacency[e].binary_search(&start).is_ok()
                    && self.g.has_edge(x, self.xs[0])
                    && self.g.has_edge(y, self.ys[0]);
                if closes {
                    self.xs.push(x);
                    self.ys.push(y);
                    return true;
                }
                continue;
            }
            self.xs.push(x);
            self.ys.push(y);
            self.used.insert(x);
            self.used.insert(y);
            if self.extend(start, e) {
                return true;
            }
            self.used.remove(x);
            self.used.remove(y);
            self.xs.pop();
            self.ys.pop();
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Searches for an induced `C_{2ℓ}^□` (so `prism(2ℓ)`); the embedding is
/// indexed by the vertices of [`prism`]`(2l)`.
pub fn find_induced_prism(
    g: &Graph,
    l: usize,
    cfg: &PipelineConfig,
) -> Result<(SearchOutcome<Embedding>, PrismDiagnostics)> {
    cfg.validate()?;
    if l < 2 {
        return Err(param(format!("prism half-length must be >= 2, got {l}")));
    }
    let len = 2 * l;
    let pattern = prism(len)?;
    let tau = cfg.tau_for(g);
    let gamma = thin_c4_graph(g, tau);
    let mut search = CycleSearch {
        g,
        gamma: &gamma,
        len,
        half: l,
        budget: cfg.node_budget,
        diag: PrismDiagnostics {
            tau,
            gamma_vertices: gamma.edges.len(),
            gamma_edges: gamma.edge_count(),
            ..Default::default()
        },
        xs: Vec::with_capacity(len),
        ys: Vec::with_capacity(len),
        used: Bits::empty(g.n()),
        exhausted: false,
    };
    for start in 0..gamma.edges.len() {
        for (x, y) in [gamma.edges[start], (gamma.edges[start].1, gamma.edges[start].0)] {
            search.xs = vec![x];
            search.ys = vec![y];
            search.used = Bits::empty(g.n());
            search.used.insert(x);
            search.used.insert(y);
            if search.extend(start, start) {
                let mut map = vec![0; 2 * len];
                for i in 0..len {
                    map[i] = search.xs[i];
                    map[len + i] = search.ys[i];
                }
                let e = Embedding { map, induced: true };
                if verify_embedding(g, &pattern, &e)? {
                    return Ok((SearchOutcome::Found(e), search.diag));
                }
            }
            if search.exhausted {
                break;
            }
        }
        if search.exhausted {
            break;
        }
    }
    let mut diag = search.diag;
    let primary = if search.exhausted { SearchOutcome::BudgetExhausted } else { SearchOutcome::Absent };
    if cfg.prism_fallback {
        diag.used_fallback = true;
        let out = find_induced(g, &pattern, cfg.node_budget)?;
        return Ok((out, diag));
    }
    Ok((primary, diag))
}
