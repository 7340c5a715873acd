//! Certified searches: `K_{s,s}` subgraphs, induced copies of a pattern, and
//! the combined witness check for `ex*(n, 𝓗, s)` constructions.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{input, Result};
use crate::graph::{Bits, Graph, VertexSet};

/// Injective map from pattern vertices (by index) into host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
    pub induced: bool,
}

impl Embedding {
    pub fn pattern_order(&self) -> usize {
        self.map.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicliqueCertificate {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl BicliqueCertificate {
    /// Disjoint sides of the same size with every cross pair adjacent.
    pub fn verify(&self, g: &Graph) -> bool {
        self.side_a.len() == self.side_b.len()
            && self.side_a.check_range(g.n()).is_ok()
            && self.side_b.check_range(g.n()).is_ok()
            && self.side_a.iter().all(|a| !self.side_b.contains(a))
            && self
                .side_a
                .iter()
                .all(|a| self.side_b.iter().all(|b| g.has_edge(a, b)))
    }
}

/// Result of a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search space was exhausted without a hit.
    Absent,
    /// The node budget ran out first; nothing is proven.
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(x) => SearchOutcome::Found(f(x)),
            SearchOutcome::Absent => SearchOutcome::Absent,
            SearchOutcome::BudgetExhausted => SearchOutcome::BudgetExhausted,
        }
    }
}

/// How an enumeration ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Completion {
    Complete,
    Stopped,
    Exhausted,
}

/// Backtracking enumerator of induced embeddings of `pattern` into `host`.
pub(crate) struct InducedMatcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    host_deg: Vec<usize>,
    pattern_deg: Vec<usize>,
}

impl<'a> InducedMatcher<'a> {
    pub fn new(host: &'a Graph, pattern: &'a Graph) -> Self {
        let pattern_deg = pattern.degrees();
        // most placed neighbours first, then high degree, then low id
        let h = pattern.n();
        let mut placed = vec![false; h];
        let mut order = Vec::with_capacity(h);
        for _ in 0..h {
            let next = (0..h)
                .filter(|&u| !placed[u])
                .max_by_key(|&u| {
                    let back = pattern.neighbors(u).filter(|&w| placed[w]).count();
                    (back, pattern_deg[u], std::cmp::Reverse(u))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        InducedMatcher {
            host,
            pattern,
            order,
            host_deg: host.degrees(),
            pattern_deg,
        }
    }

    /// Calls `visit` with each induced embedding (indexed by pattern vertex).
    pub fn run(
        &self,
        budget: Option<u64>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Completion {
        if self.pattern.n() > self.host.n() {
            return Completion::Complete;
        }
        let mut map = vec![usize::MAX; self.pattern.n()];
        let mut used = Bits::empty(self.host.n());
        let mut nodes = 0u64;
        self.extend(0, &mut map, &mut used, &mut nodes, budget, visit)
    }

    fn extend(
        &self,
        depth: usize,
        map: &mut [usize],
        used: &mut Bits,
        nodes: &mut u64,
        budget: Option<u64>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Completion {
        if depth == self.order.len() {
            return match visit(map) {
                ControlFlow::Continue(()) => Completion::Complete,
                ControlFlow::Break(()) => Completion::Stopped,
            };
        }
        let u = self.order[depth];
        let mut cand = Bits::full(self.host.n());
        cand.and_not_assign(used);
        for &w in &self.order[..depth] {
            let row = self.host.neighbor_bits(map[w]);
            if self.pattern.has_edge(u, w) {
                cand.and_assign(row);
            } else {
                cand.and_not_assign(row);
            }
        }
        for v in cand.iter() {
            if self.host_deg[v] < self.pattern_deg[u] {
                continue;
            }
            *nodes += 1;
            if budget.is_some_and(|b| *nodes > b) {
                return Completion::Exhausted;
            }
            map[u] = v;
            used.insert(v);
            let r = self.extend(depth + 1, map, used, nodes, budget, visit);
            used.remove(v);
            map[u] = usize::MAX;
            if r != Completion::Complete {
                return r;
            }
        }
        Completion::Complete
    }
}

/// Some `K_{s,s}` subgraph (sides disjoint, not necessarily induced), if any.
///
/// Side A is grown over vertices of degree `>= s`, highest degree first; a
/// branch dies once the common neighborhood of the partial side drops below
/// `s`. When `2s > n` the answer is trivially none.
pub fn find_biclique(g: &Graph, s: usize) -> Option<BicliqueCertificate> {
    if s == 0 || 2 * s > g.n() {
        return None;
    }
    let mut cands: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= s).collect();
    cands.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut chosen = Vec::with_capacity(s);
    let common = Bits::full(g.n());
    grow_side(g, s, &cands, 0, &mut chosen, &common)
}

fn grow_side(
    g: &Graph,
    s: usize,
    cands: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    common: &Bits,
) -> Option<BicliqueCertificate> {
    if chosen.len() == s {
        let side_b: VertexSet = common.iter().take(s).collect();
        return Some(BicliqueCertificate {
            side_a: chosen.iter().copied().collect(),
            side_b,
        });
    }
    let need = s - chosen.len();
    for i in from..cands.len() {
        if cands.len() - i < need {
            break;
        }
        let v = cands[i];
        let mut next = common.clone();
        next.and_assign(g.neighbor_bits(v));
        for &a in chosen.iter() {
            next.remove(a);
        }
        next.remove(v);
        if next.count() < s {
            continue;
        }
        chosen.push(v);
        if let Some(c) = grow_side(g, s, cands, i + 1, chosen, &next) {
            return Some(c);
        }
        chosen.pop();
    }
    None
}

/// An induced copy of `pattern` in `host`, searching at most `budget` nodes.
pub fn find_induced(host: &Graph, pattern: &Graph, budget: Option<u64>) -> Result<SearchOutcome<Embedding>> {
    if pattern.n() == 0 {
        return Err(input("pattern graph must have at least one vertex"));
    }
    let mut hit = None;
    let status = InducedMatcher::new(host, pattern).run(budget, &mut |m| {
        hit = Some(m.to_vec());
        ControlFlow::Break(())
    });
    Ok(match (status, hit) {
        (_, Some(map)) => SearchOutcome::Found(Embedding { map, induced: true }),
        (Completion::Exhausted, None) => SearchOutcome::BudgetExhausted,
        _ => SearchOutcome::Absent,
    })
}

/// Checks injectivity and the adjacency condition claimed by `e.induced`.
pub fn verify_embedding(host: &Graph, pattern: &Graph, e: &Embedding) -> Result<bool> {
    if e.map.len() != pattern.n() {
        return Err(input(format!(
            "embedding has {} entries but pattern has {} vertices",
            e.map.len(),
            pattern.n()
        )));
    }
    if e.map.iter().any(|&v| v >= host.n()) {
        return Ok(false);
    }
    let distinct: VertexSet = e.map.iter().copied().collect();
    if distinct.len() != e.map.len() {
        return Ok(false);
    }
    for u in 0..pattern.n() {
        for v in u + 1..pattern.n() {
            let in_pattern = pattern.has_edge(u, v);
            let in_host = host.has_edge(e.map[u], e.map[v]);
            if in_pattern && !in_host {
                return Ok(false);
            }
            if e.induced && in_host && !in_pattern {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    if a.n() == 0 {
        return true;
    }
    matches!(find_induced(a, b, None), Ok(SearchOutcome::Found(_)))
}

/// Outcome of checking a candidate construction against `K_{s,s}` and a
/// family of forbidden induced subgraphs.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub kss_violation: Option<BicliqueCertificate>,
    pub induced_violations: Vec<(usize, Embedding)>,
    /// Family members whose search ran out of budget.
    pub inconclusive: Vec<usize>,
    pub passed: bool,
}

impl WitnessReport {
    pub fn is_inconclusive(&self) -> bool {
        !self.passed && self.kss_violation.is_none() && self.induced_violations.is_empty()
    }
}

pub fn witness_check(g: &Graph, family: &[Graph], s: usize, budget: Option<u64>) -> Result<WitnessReport> {
    if s == 0 {
        return Err(input("biclique size s must be >= 1"));
    }
    if let Some(i) = family.iter().position(|h| h.n() == 0) {
        return Err(input(format!("family member {i} has no vertices")));
    }
    let kss_violation = find_biclique(g, s);
    let mut induced_violations = Vec::new();
    let mut inconclusive = Vec::new();
    for (i, h) in family.iter().enumerate() {
        match find_induced(g, h, budget)? {
            SearchOutcome::Found(e) => induced_violations.push((i, e)),
            SearchOutcome::Absent => {}
            SearchOutcome::BudgetExhausted => inconclusive.push(i),
        }
    }
    let passed = kss_violation.is_none() && induced_violations.is_empty() && inconclusive.is_empty();
    Ok(WitnessReport {
        kss_violation,
        induced_violations,
        inconclusive,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{clique_blowup, complete, complete_bipartite, cycle, polarity_graph, prism};

    #[test]
    fn biclique_examples() {
        let k33 = complete_bipartite(3, 3);
        let c = find_biclique(&k33, 3).unwrap();
        assert!(c.verify(&k33));
        let sides = [c.side_a.clone().into_vec(), c.side_b.clone().into_vec()];
        assert!(sides.contains(&vec![0, 1, 2]) && sides.contains(&vec![3, 4, 5]));

        assert!(find_biclique(&cycle(6).unwrap(), 2).is_none());
        assert!(find_biclique(&polarity_graph(3).unwrap(), 2).is_none());
        assert!(find_biclique(&cycle(4).unwrap(), 2).unwrap().verify(&cycle(4).unwrap()));
        assert!(find_biclique(&k33, 4).is_none());
        assert!(find_biclique(&complete(6), 3).is_some());
    }

    #[test]
    fn induced_examples() {
        let g = prism(5).unwrap();
        let e = find_induced(&g, &g, None).unwrap().found().unwrap();
        assert!(verify_embedding(&g, &g, &e).unwrap());

        let c4 = cycle(4).unwrap();
        assert_eq!(find_induced(&complete(4), &c4, None).unwrap(), SearchOutcome::Absent);

        let p4 = prism(4).unwrap();
        let b = clique_blowup(&p4, 1).unwrap();
        assert!(find_induced(&b.graph, &p4, None).unwrap().is_found());
    }

    #[test]
    fn budget_is_distinct_from_absence() {
        let host = clique_blowup(&cycle(7).unwrap(), 3).unwrap().graph;
        let c6 = cycle(6).unwrap();
        assert_eq!(find_induced(&host, &c6, Some(5)).unwrap(), SearchOutcome::BudgetExhausted);
        assert_eq!(find_induced(&host, &c6, None).unwrap(), SearchOutcome::Absent);
    }

    #[test]
    fn verify_rejects_bad_maps() {
        let k4 = complete(4);
        let c4 = cycle(4).unwrap();
        let id = Embedding { map: vec![0, 1, 2, 3], induced: true };
        assert!(!verify_embedding(&k4, &c4, &id).unwrap());
        let loose = Embedding { induced: false, ..id.clone() };
        assert!(verify_embedding(&k4, &c4, &loose).unwrap());
        let dup = Embedding { map: vec![0, 1, 1, 3], induced: false };
        assert!(!verify_embedding(&k4, &c4, &dup).unwrap());
        assert!(verify_embedding(&k4, &c4, &Embedding { map: vec![0], induced: true }).is_err());
    }

    #[test]
    fn witness_examples() {
        let c4 = cycle(4).unwrap();
        let r = witness_check(&cycle(6).unwrap(), &[c4.clone()], 2, None).unwrap();
        assert!(r.passed);

        let r = witness_check(&complete_bipartite(2, 2), &[c4], 2, None).unwrap();
        assert!(!r.passed);
        assert!(r.kss_violation.is_some());
        assert_eq!(r.induced_violations.len(), 1);

        let b = clique_blowup(&cycle(7).unwrap(), 2).unwrap();
        let r = witness_check(&b.graph, &[cycle(6).unwrap()], 24, None).unwrap();
        assert!(r.passed);

        let r = witness_check(&b.graph, &[cycle(6).unwrap()], 24, Some(3)).unwrap();
        assert!(r.is_inconclusive());
    }

    #[test]
    fn isomorphism_checks() {
        assert!(are_isomorphic(&cycle(6).unwrap(), &prism(3).unwrap()) == false);
        assert!(are_isomorphic(&complete_bipartite(3, 3), &complete_bipartite(3, 3)));
        let relabeled = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert!(are_isomorphic(&cycle(4).unwrap(), &relabeled));
    }
}
