//! Exact counters: closed walks (`hom(C_k, G)`), walk counts between pairs,
//! labeled induced copies, induced 4-cycles with their thin/thick split and
//! induced 2-paths. Also the arithmetic audits (KST, edge-density corollary,
//! Sidorenko floor) evaluated in exact integer arithmetic.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::detectors::{Completion, InducedMatcher};
use crate::error::{input, param, Result};
use crate::graph::Graph;

/// Dense `n×n` matrix of exact walk counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkMatrix {
    n: usize,
    entries: Vec<BigUint>,
}

impl WalkMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigUint::zero(); n * n];
        for v in 0..n {
            entries[v * n + v] = BigUint::one();
        }
        WalkMatrix { n, entries }
    }

    pub fn get(&self, u: usize, v: usize) -> &BigUint {
        &self.entries[u * self.n + v]
    }

    /// `self · A`.
    pub fn step(&self, g: &Graph) -> Self {
        let n = self.n;
        let mut entries = vec![BigUint::zero(); n * n];
        for u in 0..n {
            let row = &self.entries[u * n..(u + 1) * n];
            for v in 0..n {
                let mut acc = BigUint::zero();
                for x in g.neighbors(v) {
                    if !row[x].is_zero() {
                        acc += &row[x];
                    }
                }
                entries[u * n + v] = acc;
            }
        }
        WalkMatrix { n, entries }
    }
}

/// `[A^0, A^1, …, A^k]`.
pub fn adjacency_powers(g: &Graph, k: usize) -> Vec<WalkMatrix> {
    let mut out = vec![WalkMatrix::identity(g.n())];
    for _ in 0..k {
        let next = out.last().unwrap().step(g);
        out.push(next);
    }
    out
}

/// `hom(C_k, G) = tr(A^k)`, the number of closed `k`-walks (with start and
/// direction).
pub fn hom_closed_walks(g: &Graph, k: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(param("closed walk length must be >= 1"));
    }
    let h = k / 2;
    let powers = adjacency_powers(g, h + k % 2);
    let low = &powers[h];
    let high = &powers[h + k % 2];
    let mut total = BigUint::zero();
    for u in 0..g.n() {
        for v in 0..g.n() {
            let a = low.get(u, v);
            if !a.is_zero() {
                total += a * high.get(u, v);
            }
        }
    }
    Ok(total)
}

/// Number of `l`-walks from `u` to `v`, i.e. `(A^l)_{uv}`.
pub fn walk_count(g: &Graph, u: usize, v: usize, l: usize) -> Result<BigUint> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let mut vec = vec![BigUint::zero(); g.n()];
    vec[u] = BigUint::one();
    for _ in 0..l {
        let mut next = vec![BigUint::zero(); g.n()];
        for (y, slot) in next.iter_mut().enumerate() {
            for x in g.neighbors(y) {
                if !vec[x].is_zero() {
                    *slot += &vec[x];
                }
            }
        }
        vec = next;
    }
    Ok(vec.swap_remove(v))
}

/// A count that may have been cut off by an enumeration budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Budgeted<T> {
    Done(T),
    /// Enumeration would exceed the budget; `work` is what was known or spent.
    Overflow { work: BigUint },
}

impl<T> Budgeted<T> {
    pub fn done(self) -> Option<T> {
        match self {
            Budgeted::Done(x) => Some(x),
            Budgeted::Overflow { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ClassificationMode {
    Exact,
    Sampled { samples: usize, seed: u64 },
}

/// Closed `2ℓ`-walks split into degenerate / induced-cycle / chorded.
///
/// In exact mode the three classes partition `total = hom(C_2ℓ, G)`. In
/// sampled mode they are tallies over `samples` uniform draws.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkClassification {
    pub length: usize,
    #[serde(serialize_with = "ser_big")]
    pub total: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub degenerate: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub induced_cycle: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub chorded: BigUint,
    pub mode: ClassificationMode,
}

fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl WalkClassification {
    /// `(degenerate, induced_cycle, chorded)` as fractions of the classified walks.
    pub fn proportions(&self) -> (f64, f64, f64) {
        let denom = &self.degenerate + &self.induced_cycle + &self.chorded;
        if denom.is_zero() {
            return (0.0, 0.0, 0.0);
        }
        let f = |x: &BigUint| Ratio::new(x.clone(), denom.clone());
        let to = |r: Ratio<BigUint>| r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap();
        (to(f(&self.degenerate)), to(f(&self.induced_cycle)), to(f(&self.chorded)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkClass {
    Degenerate,
    InducedCycle,
    Chorded,
}

/// Class of a closed walk given as its cyclic vertex sequence.
pub fn classify_walk(g: &Graph, walk: &[usize]) -> WalkClass {
    let k = walk.len();
    let mut sorted = walk.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < k {
        return WalkClass::Degenerate;
    }
    for i in 0..k {
        for j in i + 2..k {
            if i == 0 && j == k - 1 {
                continue;
            }
            if g.has_edge(walk[i], walk[j]) {
                return WalkClass::Chorded;
            }
        }
    }
    WalkClass::InducedCycle
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassifyMode {
    /// Enumerate every walk; refuse if `hom` exceeds `budget`.
    Exact { budget: u64 },
    /// Draw `samples` uniform closed walks.
    Sample { samples: usize, seed: u64 },
}

pub fn classify_closed_walks(g: &Graph, l: usize, mode: ClassifyMode) -> Result<Budgeted<WalkClassification>> {
    if l < 2 {
        return Err(param(format!("half-length must be >= 2, got {l}")));
    }
    let k = 2 * l;
    let powers = adjacency_powers(g, k);
    let total: BigUint = (0..g.n()).map(|v| powers[k].get(v, v).clone()).sum();
    match mode {
        ClassifyMode::Exact { budget } => {
            if total > BigUint::from(budget) {
                return Ok(Budgeted::Overflow { work: total });
            }
            let mut tally = [0u64; 3];
            let mut walk = Vec::with_capacity(k);
            for v in 0..g.n() {
                walk.push(v);
                enumerate_closed(g, &powers, k, &mut walk, &mut |w| {
                    tally[classify_walk(g, w) as usize] += 1;
                });
                walk.pop();
            }
            Ok(Budgeted::Done(WalkClassification {
                length: k,
                total,
                degenerate: tally[WalkClass::Degenerate as usize].into(),
                induced_cycle: tally[WalkClass::InducedCycle as usize].into(),
                chorded: tally[WalkClass::Chorded as usize].into(),
                mode: ClassificationMode::Exact,
            }))
        }
        ClassifyMode::Sample { samples, seed } => {
            if samples == 0 {
                return Err(param("sample size must be >= 1"));
            }
            let mut tally = [0u64; 3];
            if !total.is_zero() {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..samples {
                    let w = sample_closed_walk(g, &powers, k, &total, &mut rng);
                    tally[classify_walk(g, &w) as usize] += 1;
                }
            }
            Ok(Budgeted::Done(WalkClassification {
                length: k,
                total,
                degenerate: tally[0].into(),
                induced_cycle: tally[1].into(),
                chorded: tally[2].into(),
                mode: ClassificationMode::Sampled { samples, seed },
            }))
        }
    }
}

fn enumerate_closed(
    g: &Graph,
    powers: &[WalkMatrix],
    k: usize,
    walk: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    let start = walk[0];
    let cur = *walk.last().unwrap();
    if walk.len() == k {
        if g.has_edge(cur, start) {
            visit(walk);
        }
        return;
    }
    let remaining = k - walk.len();
    for y in g.neighbors(cur) {
        // y must still reach the start in `remaining` steps
        if powers[remaining].get(y, start).is_zero() {
            continue;
        }
        walk.push(y);
        enumerate_closed(g, powers, k, walk, visit);
        walk.pop();
    }
}

/// Uniform integer in `[0, bound)`, by rejection over `bits(bound)` random bits.
pub(crate) fn random_below<R: Rng>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero());
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top = bits % 32;
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
        if top != 0 {
            *digits.last_mut().unwrap() &= (1u32 << top) - 1;
        }
        let x = BigUint::from_slice(&digits);
        if &x < bound {
            return x;
        }
    }
}

/// Picks an index with probability proportional to `weights[i]`.
pub(crate) fn weighted_pick<R: Rng>(rng: &mut R, weights: &[BigUint], total: &BigUint) -> usize {
    let mut r = random_below(rng, total);
    for (i, w) in weights.iter().enumerate() {
        if &r < w {
            return i;
        }
        r -= w;
    }
    unreachable!("weights sum to total")
}

/// A uniformly random closed `k`-walk: the start is drawn with weight
/// `(A^k)_{vv}`, each step with weight equal to the number of completions.
fn sample_closed_walk<R: Rng>(
    g: &Graph,
    powers: &[WalkMatrix],
    k: usize,
    total: &BigUint,
    rng: &mut R,
) -> Vec<usize> {
    let diag: Vec<BigUint> = (0..g.n()).map(|v| powers[k].get(v, v).clone()).collect();
    let start = weighted_pick(rng, &diag, total);
    let mut walk = vec![start];
    let mut cur = start;
    for step in 1..k {
        let remaining = k - step;
        let nbrs: Vec<usize> = g.neighbors(cur).collect();
        let weights: Vec<BigUint> = nbrs.iter().map(|&y| powers[remaining].get(y, start).clone()).collect();
        let sum: BigUint = weights.iter().sum();
        cur = nbrs[weighted_pick(rng, &weights, &sum)];
        walk.push(cur);
    }
    walk
}

/// Labeled induced copies of `pattern`: injections preserving adjacency and
/// non-adjacency. `budget` bounds the search nodes.
pub fn count_labeled_induced(g: &Graph, pattern: &Graph, budget: Option<u64>) -> Result<Budgeted<BigUint>> {
    if pattern.n() == 0 {
        return Err(input("pattern graph must have at least one vertex"));
    }
    let mut count = 0u64;
    let status = InducedMatcher::new(g, pattern).run(budget, &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    Ok(match status {
        Completion::Exhausted => Budgeted::Overflow { work: count.into() },
        _ => Budgeted::Done(count.into()),
    })
}

/// Unlabeled induced 4-cycles.
///
/// Every induced 4-cycle `uxvy` arises from exactly two non-adjacent pairs
/// (its diagonals) as a pair of non-adjacent common neighbors, so the count
/// is half the sum over non-adjacent pairs.
pub fn count_induced_c4(g: &Graph) -> BigUint {
    let mut twice = 0u128;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let mut common = g.neighbor_bits(u).clone();
            common.and_assign(g.neighbor_bits(v));
            let c = common.count() as u128;
            if c < 2 {
                continue;
            }
            twice += c * (c - 1) / 2 - g.edges_within(&common) as u128;
        }
    }
    BigUint::from(twice / 2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct C4Stats {
    #[serde(serialize_with = "ser_big")]
    pub induced_c4_count: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub thin_count: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub thick_count: BigUint,
    pub threshold: f64,
}

/// `d^{2/3}` with `d = 2e/n`: the thin/thick threshold with analysis
/// constants dropped.
pub fn default_thin_threshold(g: &Graph) -> f64 {
    if g.n() == 0 {
        return 0.0;
    }
    (2.0 * g.edge_count() as f64 / g.n() as f64).powf(2.0 / 3.0)
}

/// Calls `visit(u, x, v, y)` once per induced 4-cycle `u-x-v-y-u`, where
/// `{u, v}` is the diagonal with the smaller minimum vertex.
pub fn for_each_induced_c4(g: &Graph, mut visit: impl FnMut(usize, usize, usize, usize)) {
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let mut common = g.neighbor_bits(u).clone();
            common.and_assign(g.neighbor_bits(v));
            let c: Vec<usize> = common.iter().collect();
            for (i, &x) in c.iter().enumerate() {
                if x < u {
                    continue;
                }
                for &y in &c[i + 1..] {
                    if !g.has_edge(x, y) {
                        visit(u, x, v, y);
                    }
                }
            }
        }
    }
}

/// Induced 4-cycles split by diagonal codegrees: thin iff both diagonal
/// codegrees are `<= tau`.
pub fn thin_thick_stats(g: &Graph, tau: f64) -> Result<C4Stats> {
    if !(tau >= 0.0) {
        return Err(param(format!("threshold must be >= 0, got {tau}")));
    }
    let (mut thin, mut thick) = (0u64, 0u64);
    for_each_induced_c4(g, |u, x, v, y| {
        let d1 = g.pair_codegree(u, v) as f64;
        let d2 = g.pair_codegree(x, y) as f64;
        if d1 <= tau && d2 <= tau {
            thin += 1;
        } else {
            thick += 1;
        }
    });
    Ok(C4Stats {
        induced_c4_count: BigUint::from(thin + thick),
        thin_count: thin.into(),
        thick_count: thick.into(),
        threshold: tau,
    })
}

/// Induced 2-paths tallied by midpoint and by endpoint pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPathTally {
    /// `|P_{*v*}|`: non-adjacent pairs of neighbors of `v`.
    pub per_vertex: Vec<u64>,
    /// `|P_{u*v}|` for non-adjacent `u < v` with at least one common neighbor.
    pub per_pair: BTreeMap<(usize, usize), u64>,
}

impl TwoPathTally {
    pub fn vertex_sum(&self) -> u64 {
        self.per_vertex.iter().sum()
    }

    pub fn pair_sum(&self) -> u64 {
        self.per_pair.values().sum()
    }
}

pub fn two_path_tally(g: &Graph) -> TwoPathTally {
    let per_vertex = (0..g.n())
        .map(|v| {
            let d = g.degree(v) as u64;
            d * d.saturating_sub(1) / 2 - g.edges_within(g.neighbor_bits(v)) as u64
        })
        .collect();
    let mut per_pair = BTreeMap::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                let c = g.pair_codegree(u, v) as u64;
                if c > 0 {
                    per_pair.insert((u, v), c);
                }
            }
        }
    }
    TwoPathTally { per_vertex, per_pair }
}

/// `e ≤ ½(t−1)^{1/s} n^{2−1/s} + ½(s−1)n`, decided exactly as
/// `(2e − (s−1)n)^s ≤ (t−1)·n^{2s−1}`. Requires `t ≥ s ≥ 2`.
pub fn kst_bound_holds(n: u64, e: u64, s: u32, t: u64) -> Result<bool> {
    if s < 2 || t < s as u64 {
        return Err(param(format!("KST bound needs t >= s >= 2, got s={s}, t={t}")));
    }
    let slack = BigInt::from(2 * e) - BigInt::from((s as u64 - 1) * n);
    if slack <= BigInt::zero() {
        return Ok(true);
    }
    let lhs = num_traits::pow(slack, s as usize);
    let rhs = BigInt::from(t - 1) * num_traits::pow(BigInt::from(n), 2 * s as usize - 1);
    Ok(lhs <= rhs)
}

/// The KST edge ceiling as a float, for reporting.
pub fn kst_edge_bound(n: u64, s: u32, t: u64) -> f64 {
    let (n, s, t) = (n as f64, s as f64, t as f64);
    0.5 * (t - 1.0).powf(1.0 / s) * n.powf(2.0 - 1.0 / s) + 0.5 * (s - 1.0) * n
}

/// Whether `n ≥ (s−1)/c^s`, the size condition for `e ≤ cn²` in `K_{s,s}`-free graphs.
pub fn dense_bound_applies(n: u64, s: u32, c: Ratio<u64>) -> bool {
    let num = num_traits::pow(BigUint::from(*c.numer()), s as usize);
    let den = num_traits::pow(BigUint::from(*c.denom()), s as usize);
    BigUint::from(n) * num >= BigUint::from(s as u64 - 1) * den
}

/// `e ≤ c·n²`, exactly.
pub fn dense_bound_holds(n: u64, e: u64, c: Ratio<u64>) -> bool {
    BigUint::from(e) * c.denom() <= BigUint::from(*c.numer()) * BigUint::from(n) * BigUint::from(n)
}

/// `hom(C_2ℓ, G) ≥ d^{2ℓ}` with `d = 2e/n`, as `hom·n^{2ℓ} ≥ (2e)^{2ℓ}`.
pub fn sidorenko_holds(g: &Graph, l: usize) -> Result<bool> {
    if g.n() == 0 {
        return Ok(true);
    }
    let hom = hom_closed_walks(g, 2 * l)?;
    let lhs = hom * num_traits::pow(BigUint::from(g.n()), 2 * l);
    let rhs = num_traits::pow(BigUint::from(2 * g.edge_count()), 2 * l);
    Ok(lhs >= rhs)
}
