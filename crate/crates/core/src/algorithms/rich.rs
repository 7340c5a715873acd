//! Rich sets for the thick case: a vertex set all of whose 3-subsets have
//! at least `c1` common neighbors.
//!
//! The edge `xy` with the most thick induced 4-cycles `xyzw` (those with
//! `codeg(x, z) ≥ τ`) fixes `A = N(x)` and `B = {z ∈ N(y) : codeg(x, z) ≥ τ}`.
//! Each trial keeps every vertex of `B` with probability `p`, picks `v ∈ A`,
//! restricts to `B'' = B' ∩ N(v)`, and deletes one vertex from every bad
//! triple. The largest surviving set is returned if it reaches `c2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{param, Result};
use crate::graph::{Bits, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RichSetParams {
    pub tau: f64,
    /// Common-neighbor floor for every 3-subset.
    pub c1: usize,
    /// Required size of the returned set.
    pub c2: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RichSetReport {
    /// The certified set, when one of size `≥ c2` was found.
    pub set: Option<VertexSet>,
    /// Largest surviving set over all trials, whether or not it reached `c2`.
    pub best: VertexSet,
    /// `(x, y)` maximizing the thick 4-cycle count; `None` if there is none.
    pub edge: Option<(usize, usize)>,
    pub thick_count: u64,
    pub a_size: usize,
    pub b_size: usize,
    pub e_ab: usize,
    pub keep_probability: f64,
    /// Every 3-subset of `best` has codegree `≥ c1`.
    pub audit: bool,
}

/// Exhaustive check that every 3-subset of `x` has at least `c1` common neighbors.
pub fn audit_rich(g: &Graph, x: &[usize], c1: usize) -> bool {
    triples(x).all(|t| g.common_neighbor_bits(&t).count() >= c1)
}

fn triples(x: &[usize]) -> impl Iterator<Item = [usize; 3]> + '_ {
    (0..x.len()).flat_map(move |i| {
        (i + 1..x.len()).flat_map(move |j| (j + 1..x.len()).map(move |k| [x[i], x[j], x[k]]))
    })
}

/// Thick induced 4-cycles `x-y-z-w` through the ordered edge `(x, y)`.
fn thick_count(g: &Graph, x: usize, y: usize, tau: f64) -> u64 {
    let nx = g.neighbor_bits(x);
    let ny = g.neighbor_bits(y);
    let mut total = 0u64;
    for z in g.neighbors(y) {
        if z == x || nx.contains(z) {
            continue;
        }
        let mut common = nx.clone();
        common.and_assign(g.neighbor_bits(z));
        if (common.count() as f64) < tau {
            continue;
        }
        common.and_not_assign(ny);
        common.remove(y);
        total += common.count() as u64;
    }
    total
}

pub fn find_rich_set(g: &Graph, params: RichSetParams) -> Result<RichSetReport> {
    let RichSetParams { tau, c1, c2, trials, seed } = params;
    if !(tau > 0.0) || c1 == 0 || c2 == 0 {
        return Err(param("tau, c1 and c2 must be positive"));
    }
    if trials == 0 {
        return Err(param("trials must be >= 1"));
    }
    let mut report = RichSetReport {
        set: None,
        best: VertexSet::new(),
        edge: None,
        thick_count: 0,
        a_size: 0,
        b_size: 0,
        e_ab: 0,
        keep_probability: 0.0,
        audit: true,
    };
    let mut best_edge: Option<(u64, usize, usize)> = None;
    for (u, v) in g.edges() {
        for (x, y) in [(u, v), (v, u)] {
            let c = thick_count(g, x, y, tau);
            if c > 0 && best_edge.is_none_or(|(b, _, _)| c > b) {
                best_edge = Some((c, x, y));
            }
        }
    }
    let Some((count, x, y)) = best_edge else {
        return Ok(report);
    };
    report.edge = Some((x, y));
    report.thick_count = count;

    let a = g.neighbor_bits(x).clone();
    let b: Vec<usize> = g
        .neighbors(y)
        .filter(|&z| z != x && !a.contains(z) && g.pair_codegree(x, z) as f64 >= tau)
        .collect();
    let a_list = a.to_vec();
    let e_ab: usize = b.iter().map(|&z| g.neighbor_bits(z).intersection_count(&a)).sum();
    report.a_size = a_list.len();
    report.b_size = b.len();
    report.e_ab = e_ab;
    let p = if e_ab == 0 { 1.0 } else { (2.0 * c1 as f64 * a_list.len() as f64 / e_ab as f64).min(1.0) };
    report.keep_probability = p;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Vec<usize> = Vec::new();
    for _ in 0..trials {
        let v = a_list[rng.gen_range(0..a_list.len())];
        let mut kept = Bits::empty(g.n());
        for &z in &b {
            if rng.gen_bool(p) && g.has_edge(z, v) {
                kept.insert(z);
            }
        }
        let members = kept.to_vec();
        for t in triples(&members) {
            if t.iter().all(|&w| kept.contains(w)) && g.common_neighbor_bits(&t).count() < c1 {
                kept.remove(t[2]);
            }
        }
        let survivors = kept.to_vec();
        if survivors.len() > best.len() {
            best = survivors;
        }
    }
    report.audit = audit_rich(g, &best, c1);
    if best.len() >= c2 && report.audit {
        report.set = Some(best.iter().copied().collect());
    }
    report.best = best.into_iter().collect();
    Ok(report)
}
