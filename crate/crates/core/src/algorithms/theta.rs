//! Induced thetas from many induced paths between one pair of vertices.
//!
//! Terminal pairs are tried in decreasing order of their `ℓ`-walk count. For
//! each pair the induced `ℓ`-paths joining it are enumerated (up to a cap);
//! two paths are compatible when their interiors are disjoint and span no
//! edges, and a clique of `t` compatible paths is an induced theta.

use serde::Serialize;

use crate::counters::adjacency_powers;
use crate::detectors::{verify_embedding, Embedding, SearchOutcome};
use crate::error::{param, Result};
use crate::generators::theta;
use crate::graph::{Bits, Graph};

use super::PipelineConfig;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ThetaDiagnostics {
    /// Nonadjacent pairs with at least `t` walks of length `ℓ`.
    pub candidate_pairs: usize,
    pub pairs_tried: usize,
    pub paths_enumerated: u64,
    /// Pairs whose path list hit `max_paths_per_pair`.
    pub truncated_pairs: usize,
    pub clique_nodes: u64,
    /// `(u, v)` of the successful pair.
    pub terminals: Option<(usize, usize)>,
}

struct PathSearch<'a> {
    g: &'a Graph,
    l: usize,
    target: usize,
    /// `reach[j][x]`: a walk of length `j` from `x` to `target` exists.
    reach: Vec<Vec<bool>>,
    cap: usize,
    out: Vec<Vec<usize>>,
}

impl PathSearch<'_> {
    fn extend(&mut self, path: &mut Vec<usize>) {
        if self.out.len() >= self.cap {
            return;
        }
        let j = path.len();
        let last = *path.last().unwrap();
        if j == self.l {
            if self.g.has_edge(last, self.target) {
                let mut p = path.clone();
                p.push(self.target);
                self.out.push(p);
            }
            return;
        }
        for x in self.g.neighbors(last) {
            if x == self.target || path.contains(&x) || !self.reach[self.l - j][x] {
                continue;
            }
            // no chord to any earlier interior vertex or to u
            if path[..j - 1].iter().any(|&y| self.g.has_edge(x, y)) {
                continue;
            }
            if j < self.l - 1 && self.g.has_edge(x, self.target) {
                continue;
            }
            path.push(x);
            self.extend(path);
            path.pop();
            if self.out.len() >= self.cap {
                return;
            }
        }
    }
}

/// Backtracking `t`-clique search on a compatibility graph.
fn clique(adj: &[Bits], t: usize, budget: Option<u64>, nodes: &mut u64) -> SearchOutcome<Vec<usize>> {
    fn go(
        adj: &[Bits],
        t: usize,
        chosen: &mut Vec<usize>,
        cand: Bits,
        budget: Option<u64>,
        nodes: &mut u64,
    ) -> Option<bool> {
        *nodes += 1;
        if budget.is_some_and(|b| *nodes > b) {
            return None;
        }
        if chosen.len() == t {
            return Some(true);
        }
        if chosen.len() + cand.count() < t {
            return Some(false);
        }
        for v in cand.iter() {
            let mut next = cand.clone();
            next.and_assign(&adj[v]);
            // only later candidates, to visit each clique once
            for w in cand.iter().take_while(|&w| w <= v) {
                next.remove(w);
            }
            chosen.push(v);
            match go(adj, t, chosen, next, budget, nodes) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            chosen.pop();
        }
        Some(false)
    }
    let mut chosen = Vec::new();
    match go(adj, t, &mut chosen, Bits::full(adj.len()), budget, nodes) {
        Some(true) => SearchOutcome::Found(chosen),
        Some(false) => SearchOutcome::Absent,
        None => SearchOutcome::BudgetExhausted,
    }
}

/// Searches for an induced `Θ_ℓ^t`; the embedding is indexed by the vertices
/// of [`theta`]`(l, t)`.
pub fn find_induced_theta(
    g: &Graph,
    l: usize,
    t: usize,
    cfg: &PipelineConfig,
) -> Result<(SearchOutcome<Embedding>, ThetaDiagnostics)> {
    cfg.validate()?;
    if l < 2 || t < 2 {
        return Err(param(format!("theta needs l >= 2 and t >= 2, got l = {l}, t = {t}")));
    }
    let pattern = theta(l, t)?;
    let mut diag = ThetaDiagnostics::default();
    let n = g.n();
    let powers = adjacency_powers(g, l);
    let need = num_bigint::BigUint::from(t);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && *powers[l].get(u, v) >= need {
                pairs.push((powers[l].get(u, v).clone(), u, v));
            }
        }
    }
    pairs.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| (a.1, a.2).cmp(&(b.1, b.2))));
    diag.candidate_pairs = pairs.len();

    let mut complete = true;
    let mut clique_budget = cfg.node_budget;
    for (_, u, v) in pairs {
        diag.pairs_tried += 1;
        let reach = (0..=l)
            .map(|j| (0..n).map(|x| *powers[j].get(x, v) != num_bigint::BigUint::ZERO).collect())
            .collect();
        let mut ps = PathSearch {
            g,
            l,
            target: v,
            reach,
            cap: cfg.max_paths_per_pair,
            out: Vec::new(),
        };
        ps.extend(&mut vec![u]);
        let paths = ps.out;
        diag.paths_enumerated += paths.len() as u64;
        if paths.len() >= cfg.max_paths_per_pair {
            diag.truncated_pairs += 1;
            complete = false;
        }
        if paths.len() < t {
            continue;
        }
        let interiors: Vec<Bits> = paths
            .iter()
            .map(|p| {
                let mut b = Bits::empty(n);
                for &x in &p[1..l] {
                    b.insert(x);
                }
                b
            })
            .collect();
        let closed: Vec<Bits> = interiors
            .iter()
            .map(|b| {
                let mut c = b.clone();
                for x in b.iter() {
                    c.or_assign(g.neighbor_bits(x));
                }
                c
            })
            .collect();
        let m = paths.len();
        let mut adj = vec![Bits::empty(m); m];
        for i in 0..m {
            for j in i + 1..m {
                if closed[i].intersection_count(&interiors[j]) == 0 {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        let before = diag.clique_nodes;
        let outcome = clique(&adj, t, clique_budget, &mut diag.clique_nodes);
        if let Some(b) = clique_budget.as_mut() {
            *b = b.saturating_sub(diag.clique_nodes - before);
        }
        match outcome {
            SearchOutcome::Found(chosen) => {
                let mut map = vec![0; pattern.graph.n()];
                map[0] = u;
                map[1] = v;
                for (i, &pi) in chosen.iter().enumerate() {
                    for j in 1..l {
                        map[2 + i * (l - 1) + (j - 1)] = paths[pi][j];
                    }
                }
                let e = Embedding { map, induced: true };
                if verify_embedding(g, &pattern.graph, &e)? {
                    diag.terminals = Some((u, v));
                    return Ok((SearchOutcome::Found(e), diag));
                }
            }
            SearchOutcome::Absent => {}
            SearchOutcome::BudgetExhausted => return Ok((SearchOutcome::BudgetExhausted, diag)),
        }
    }
    let outcome = if complete { SearchOutcome::Absent } else { SearchOutcome::BudgetExhausted };
    Ok((outcome, diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_bipartite, cycle, polarity_graph};

    #[test]
    fn detects_itself() {
        for l in 2..=4 {
            for t in 2..=4 {
                let th = theta(l, t).unwrap();
                let (out, _) = find_induced_theta(&th.graph, l, t, &PipelineConfig::default()).unwrap();
                let e = out.found().expect("theta contains itself");
                assert!(verify_embedding(&th.graph, &th.graph, &e).unwrap());
            }
        }
    }

    #[test]
    fn k23_is_the_two_theta() {
        let g = complete_bipartite(2, 3);
        let (out, d) = find_induced_theta(&g, 2, 3, &PipelineConfig::default()).unwrap();
        assert!(out.is_found());
        assert_eq!(d.terminals, Some((0, 1)));
    }

    #[test]
    fn c4_free_graphs_have_no_two_theta() {
        let g = polarity_graph(3).unwrap();
        let (out, _) = find_induced_theta(&g, 2, 2, &PipelineConfig::default()).unwrap();
        assert_eq!(out, SearchOutcome::Absent);
        let (out, _) = find_induced_theta(&cycle(9).unwrap(), 3, 2, &PipelineConfig::default()).unwrap();
        assert_eq!(out, SearchOutcome::Absent);
    }
}
