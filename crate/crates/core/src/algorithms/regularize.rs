//! Passing to a `K`-almost-regular induced subgraph that keeps a
//! `C·m^{1+α}` edge density.
//!
//! Stage `i` looks at the heavy set `U_i = {u : deg ≥ 2^i K' C n_i^α}` with
//! `K' = 2^{4/α}`. If the heavy vertices carry less than `2^{i-1} C n_i^{1+α}`
//! degree the loop stops; otherwise the graph shrinks to `G[A_i ∪ B_i]`, where
//! `A_i` holds the `n_i/(2K')` highest-degree vertices and `B_i` is the best of
//! `trials` uniformly random sets of the same size. The final graph loses
//! `U_k` and then, greedily, every vertex of degree `≤ 2^{k-2} C n_k^α`.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{param, Result};
use crate::graph::{Bits, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularizeParams {
    pub alpha: f64,
    pub c: f64,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageLog {
    pub stage: usize,
    pub vertices: usize,
    pub edges: usize,
    pub heavy_threshold: f64,
    pub heavy_degree_sum: usize,
    pub stop_threshold: f64,
    /// `|A_i| = |B_i|`; zero on the terminating stage.
    pub part_size: usize,
    pub best_sample_edges: usize,
    pub sample_floor: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularizationResult {
    /// Vertices of `H` in the input graph's labels.
    pub vertices: VertexSet,
    pub subgraph: Graph,
    pub iterations: usize,
    pub k_prime: f64,
    /// `4K'`, the almost-regularity factor guaranteed on success.
    pub target_k: f64,
    /// `Δ(H)/δ(H)`.
    pub achieved_k: f64,
    pub min_degree: usize,
    pub max_degree: usize,
    pub log: Vec<StageLog>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RegularizationOutcome {
    Success(RegularizationResult),
    /// `e(G) < C·n^{1+α}`.
    HypothesisFailure { edges: usize, required: f64 },
    /// No sampled `B_i` reached the expectation floor.
    SamplingFailure { stage: usize, best_edges: usize, floor: f64, log: Vec<StageLog> },
    /// The final subgraph violates a claimed inequality (named).
    PostconditionFailure { inequality: String, log: Vec<StageLog> },
}

impl RegularizationOutcome {
    pub fn success(&self) -> Option<&RegularizationResult> {
        match self {
            RegularizationOutcome::Success(r) => Some(r),
            _ => None,
        }
    }
}

fn degree_in(g: &Graph, v: usize, set: &Bits) -> usize {
    g.neighbor_bits(v).intersection_count(set)
}

pub fn almost_regularize(g: &Graph, params: RegularizeParams) -> Result<RegularizationOutcome> {
    let RegularizeParams { alpha, c, trials, seed } = params;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(param(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(param(format!("C must be positive, got {c}")));
    }
    if trials == 0 {
        return Err(param("trials must be >= 1"));
    }
    let n = g.n();
    let required = c * (n as f64).powf(1.0 + alpha);
    if n == 0 || (g.edge_count() as f64) < required {
        return Ok(RegularizationOutcome::HypothesisFailure {
            edges: g.edge_count(),
            required,
        });
    }

    let k_prime = 2f64.powf(4.0 / alpha);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = Bits::full(n);
    let mut log = Vec::new();
    let mut stage = 0usize;

    let (heavy, n_k) = loop {
        let verts = current.to_vec();
        let n_i = verts.len();
        let scale = 2f64.powi(stage as i32);
        let heavy_threshold = scale * k_prime * c * (n_i as f64).powf(alpha);
        let stop_threshold = scale / 2.0 * c * (n_i as f64).powf(1.0 + alpha);
        let degs: Vec<usize> = verts.iter().map(|&v| degree_in(g, v, &current)).collect();
        let heavy: Vec<usize> = verts
            .iter()
            .zip(&degs)
            .filter(|&(_, &d)| d as f64 >= heavy_threshold)
            .map(|(&v, _)| v)
            .collect();
        let heavy_degree_sum: usize = verts
            .iter()
            .zip(&degs)
            .filter(|&(_, &d)| d as f64 >= heavy_threshold)
            .map(|(_, &d)| d)
            .sum();
        let mut entry = StageLog {
            stage,
            vertices: n_i,
            edges: g.edges_within(&current),
            heavy_threshold,
            heavy_degree_sum,
            stop_threshold,
            part_size: 0,
            best_sample_edges: 0,
            sample_floor: 0.0,
        };
        if (heavy_degree_sum as f64) < stop_threshold {
            log.push(entry);
            break (heavy, n_i);
        }

        let part = ((n_i as f64 / (2.0 * k_prime)).ceil() as usize).clamp(1, n_i);
        let mut by_degree: Vec<usize> = (0..n_i).collect();
        by_degree.sort_by_key(|&i| (std::cmp::Reverse(degs[i]), verts[i]));
        let mut a_bits = Bits::empty(n);
        for &i in &by_degree[..part] {
            a_bits.insert(verts[i]);
        }
        let floor = 2.0 * scale * c * (n_i as f64 / k_prime).powf(1.0 + alpha);
        let mut best: Option<(usize, Bits)> = None;
        for _ in 0..trials {
            let mut union = a_bits.clone();
            for idx in sample(&mut rng, n_i, part).iter() {
                union.insert(verts[idx]);
            }
            let e = g.edges_within(&union);
            if best.as_ref().is_none_or(|(b, _)| e > *b) {
                best = Some((e, union));
            }
        }
        let (best_edges, union) = best.expect("trials >= 1");
        entry.part_size = part;
        entry.best_sample_edges = best_edges;
        entry.sample_floor = floor;
        log.push(entry);
        if (best_edges as f64) < floor {
            return Ok(RegularizationOutcome::SamplingFailure {
                stage,
                best_edges,
                floor,
                log,
            });
        }
        current = union;
        stage += 1;
    };

    let k = stage;
    let low = 2f64.powi(k as i32 - 2) * c * (n_k as f64).powf(alpha);
    let high = 2f64.powi(k as i32) * k_prime * c * (n_k as f64).powf(alpha);
    for v in heavy {
        current.remove(v);
    }
    loop {
        let victim = current.iter().find(|&v| degree_in(g, v, &current) as f64 <= low);
        match victim {
            Some(v) => current.remove(v),
            None => break,
        }
    }

    let vertices: Vec<usize> = current.to_vec();
    let m = vertices.len();
    if m == 0 {
        return Ok(RegularizationOutcome::PostconditionFailure {
            inequality: "cleanup removed every vertex (m >= 1)".into(),
            log,
        });
    }
    let subgraph = g.induced_subgraph(&vertices);
    let degs = subgraph.degrees();
    let min_degree = *degs.iter().min().unwrap();
    let max_degree = *degs.iter().max().unwrap();
    if (min_degree as f64) < low {
        return Ok(RegularizationOutcome::PostconditionFailure {
            inequality: format!("delta(H) = {min_degree} >= 2^(k-2) C n_k^alpha = {low}"),
            log,
        });
    }
    if max_degree as f64 > high {
        return Ok(RegularizationOutcome::PostconditionFailure {
            inequality: format!("Delta(H) = {max_degree} <= 2^k K' C n_k^alpha = {high}"),
            log,
        });
    }
    let edge_floor = c / 4.0 * (m as f64).powf(1.0 + alpha);
    if (subgraph.edge_count() as f64) < edge_floor {
        return Ok(RegularizationOutcome::PostconditionFailure {
            inequality: format!("e(H) = {} >= (C/4) m^(1+alpha) = {edge_floor}", subgraph.edge_count()),
            log,
        });
    }
    Ok(RegularizationOutcome::Success(RegularizationResult {
        vertices: vertices.into_iter().collect(),
        subgraph,
        iterations: k,
        k_prime,
        target_k: 4.0 * k_prime,
        achieved_k: max_degree as f64 / min_degree as f64,
        min_degree,
        max_degree,
        log,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite};
    use crate::graph::is_k_almost_regular;

    fn params(alpha: f64, c: f64) -> RegularizeParams {
        RegularizeParams { alpha, c, trials: 20, seed: 1 }
    }

    #[test]
    fn regular_bipartite_stops_at_stage_zero() {
        let g = complete_bipartite(20, 20);
        let out = almost_regularize(&g, params(0.5, 1.0)).unwrap();
        let r = out.success().expect("K_{20,20} regularizes");
        assert_eq!(r.iterations, 0);
        assert_eq!(r.subgraph, g);
        assert!(is_k_almost_regular(&r.subgraph, r.target_k).unwrap());
        assert_eq!(r.log.len(), 1);
    }

    #[test]
    fn sparse_input_fails_hypothesis() {
        let g = complete_bipartite(1, 5);
        let out = almost_regularize(&g, params(0.5, 1.0)).unwrap();
        assert!(matches!(out, RegularizationOutcome::HypothesisFailure { edges: 5, .. }));
    }

    #[test]
    fn heavy_vertices_force_a_shrink_stage() {
        // K_30 with tiny C: every vertex is heavy at stage 0
        let g = complete(30);
        let out = almost_regularize(&g, RegularizeParams { alpha: 0.9, c: 0.02, trials: 30, seed: 3 }).unwrap();
        let log = match &out {
            RegularizationOutcome::Success(r) => &r.log,
            RegularizationOutcome::SamplingFailure { log, .. } => log,
            RegularizationOutcome::PostconditionFailure { log, .. } => log,
            other => panic!("unexpected {other:?}"),
        };
        assert!(log[0].part_size > 0);
        if let Some(r) = out.success() {
            assert!(is_k_almost_regular(&r.subgraph, r.target_k).unwrap());
        }
    }

    #[test]
    fn parameters_are_validated() {
        let g = complete(4);
        assert!(almost_regularize(&g, params(0.0, 1.0)).is_err());
        assert!(almost_regularize(&g, params(1.0, 1.0)).is_err());
        assert!(almost_regularize(&g, params(0.5, -1.0)).is_err());
        assert!(almost_regularize(&g, RegularizeParams { trials: 0, ..params(0.5, 1.0) }).is_err());
    }
}
