//! Constructive pipelines: almost-regularization, the greedy induced-tree
//! embedder and its exhaustive variant, the selection lemma, and the
//! assembly searches for induced lifts, thetas and prisms.

mod embed;
mod lift;
mod prism;
mod regularize;
mod rich;
mod selection;
mod theta;

pub mod reference;

pub use embed::{
    bad_neighbor_set, bfs_leaf_order, embedding_hypothesis, enumerate_tree_embeddings, greedy_tree_embed,
    EmbeddingHypothesis, GreedyTrace, TreeEnumeration,
};
pub use lift::{find_induced_lift, greedy_independent_set, LiftDiagnostics, LiftFound};
pub use prism::{find_induced_prism, thin_c4_graph, PrismDiagnostics};
pub use regularize::{almost_regularize, RegularizationOutcome, RegularizationResult, RegularizeParams, StageLog};
pub use rich::{find_rich_set, RichSetParams, RichSetReport};
pub use selection::{check_selection, select_regular, selection_threshold, PositionVerdict, SelectionResult};
pub use theta::{find_induced_theta, ThetaDiagnostics};

use crate::error::{param, Result};
use crate::graph::Graph;

/// Knobs shared by the assembly pipelines.
///
/// The analysis constants that make the existence arguments work are far
/// beyond any graph that fits in memory, so every threshold is supplied here;
/// [`reference`] evaluates the asymptotic formulas for comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    /// Forbidden biclique size `K_{s,s}`; fixes `β = 1 − 1/(3s)`.
    pub s: usize,
    /// Path / cycle half-length `ℓ`.
    pub l: usize,
    /// Number of theta paths.
    pub t: usize,
    /// Lift multiplicity `p`.
    pub p: usize,
    /// Tree copies kept by the selection step (`q ≥ p`).
    pub q: usize,
    /// Thin/thick codegree threshold; `None` means `d^{2/3}`.
    pub tau: Option<f64>,
    /// Bad-neighbor codegree threshold; `None` means `d^β`.
    pub codegree_threshold: Option<f64>,
    /// Node budget for backtracking searches; `None` is unbounded.
    pub node_budget: Option<u64>,
    /// Induced paths kept per terminal pair in the theta search.
    pub max_paths_per_pair: usize,
    /// Induced tree copies collected by the lift pipeline.
    pub max_tree_copies: u64,
    pub seed: u64,
    /// Fall back to a direct induced-subgraph search when the prism pipeline fails.
    pub prism_fallback: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            s: 2,
            l: 2,
            t: 2,
            p: 2,
            q: 2,
            tau: None,
            codegree_threshold: None,
            node_budget: Some(5_000_000),
            max_paths_per_pair: 2_000,
            max_tree_copies: 200_000,
            seed: 0x5eed,
            prism_fallback: false,
        }
    }
}

impl PipelineConfig {
    pub fn beta(&self) -> f64 {
        1.0 - 1.0 / (3.0 * self.s as f64)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("s", self.s), ("l", self.l), ("t", self.t), ("p", self.p), ("q", self.q)] {
            if v == 0 {
                return Err(param(format!("pipeline parameter {name} must be positive")));
            }
        }
        if self.max_paths_per_pair == 0 || self.max_tree_copies == 0 {
            return Err(param("pipeline caps must be positive"));
        }
        for (name, v) in [("tau", self.tau), ("codegree_threshold", self.codegree_threshold)] {
            if let Some(x) = v {
                if !(x >= 0.0) {
                    return Err(param(format!("{name} must be >= 0, got {x}")));
                }
            }
        }
        Ok(())
    }

    pub fn tau_for(&self, g: &Graph) -> f64 {
        self.tau.unwrap_or_else(|| crate::counters::default_thin_threshold(g))
    }

    pub fn codegree_threshold_for(&self, g: &Graph) -> f64 {
        self.codegree_threshold.unwrap_or_else(|| average_degree(g).powf(self.beta()))
    }
}

pub(crate) fn average_degree(g: &Graph) -> f64 {
    if g.n() == 0 {
        0.0
    } else {
        2.0 * g.edge_count() as f64 / g.n() as f64
    }
}
