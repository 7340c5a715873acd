//! The selection lemma: among enough vectors with distinct entries, `q` of
//! them agree or pairwise differ at every position, and their remaining value
//! sets are pairwise disjoint.
//!
//! The exact recursion takes a value occurring at least `M_{t-1}` times at
//! some position and recurses on the other positions; otherwise it greedily
//! keeps vectors and deletes everything sharing a value with them. Below the
//! guaranteed size `N(t, q)` the same recursion is retried with the popular
//! threshold relaxed to `q`, under a node budget.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{input, param, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PositionVerdict {
    AllSame,
    PairwiseDistinct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectionResult<V> {
    /// Indices into the input, ascending.
    pub indices: Vec<usize>,
    pub verdicts: Vec<PositionVerdict>,
    /// `Y_j`: values of the selected vector `j` at its distinct positions.
    pub value_sets: Vec<BTreeSet<V>>,
    /// Whether the input had at least `N(t, q)` vectors.
    pub guaranteed: bool,
}

/// `N(t, q) = (t!)² q^{t+1}`, or `None` past `u128`.
pub fn selection_threshold(t: usize, q: usize) -> Option<u128> {
    popular_threshold(t, q as u128)
}

fn popular_threshold(t: usize, q: u128) -> Option<u128> {
    let mut f: u128 = 1;
    for i in 1..=t as u128 {
        f = f.checked_mul(i)?;
    }
    let mut out = f.checked_mul(f)?;
    for _ in 0..=t {
        out = out.checked_mul(q)?;
    }
    Some(out)
}

const RELAXED_BUDGET: u64 = 200_000;

struct Selector<'a, V> {
    vectors: &'a [Vec<V>],
    q: usize,
    relaxed: bool,
    nodes: u64,
}

impl<V: Ord + Clone> Selector<'_, V> {
    fn select(&mut self, alive: &[usize], positions: &[usize]) -> Option<Vec<usize>> {
        self.nodes += 1;
        if self.nodes > RELAXED_BUDGET && self.relaxed {
            return None;
        }
        if alive.len() < self.q {
            return None;
        }
        if positions.is_empty() {
            return Some(alive[..self.q].to_vec());
        }
        let strict = popular_threshold(positions.len() - 1, self.q as u128);
        // popular branch: the most frequent value at each position, in order
        let mut tried_relaxed: Vec<(usize, usize, V)> = Vec::new();
        for (pi, &pos) in positions.iter().enumerate() {
            let mut counts: BTreeMap<&V, usize> = BTreeMap::new();
            for &i in alive {
                *counts.entry(&self.vectors[i][pos]).or_default() += 1;
            }
            let mut by_count: Vec<(&V, usize)> = counts.into_iter().collect();
            by_count.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
            let (value, c) = by_count[0];
            if strict.is_some_and(|m| c as u128 >= m) {
                if let Some(found) = self.popular(alive, positions, pi, value.clone()) {
                    return Some(found);
                }
                continue;
            }
            if self.relaxed {
                for (v, c) in by_count.into_iter().take_while(|&(_, c)| c >= self.q) {
                    tried_relaxed.push((c, pi, v.clone()));
                }
            }
        }
        if let Some(found) = self.fix_and_delete(alive, positions) {
            return Some(found);
        }
        tried_relaxed.sort_by(|a, b| b.0.cmp(&a.0));
        for (_, pi, v) in tried_relaxed {
            if let Some(found) = self.popular(alive, positions, pi, v) {
                return Some(found);
            }
            if self.nodes > RELAXED_BUDGET {
                return None;
            }
        }
        None
    }

    fn popular(&mut self, alive: &[usize], positions: &[usize], pi: usize, value: V) -> Option<Vec<usize>> {
        let pos = positions[pi];
        let keep: Vec<usize> = alive.iter().copied().filter(|&i| self.vectors[i][pos] == value).collect();
        let rest: Vec<usize> = positions.iter().enumerate().filter(|&(j, _)| j != pi).map(|(_, &p)| p).collect();
        self.select(&keep, &rest)
    }

    /// Keep the first survivor, drop every vector sharing a value with it on
    /// `positions`, repeat.
    fn fix_and_delete(&self, alive: &[usize], positions: &[usize]) -> Option<Vec<usize>> {
        let mut chosen: Vec<usize> = Vec::new();
        let mut used: BTreeSet<&V> = BTreeSet::new();
        for &i in alive {
            let v = &self.vectors[i];
            if positions.iter().any(|&p| used.contains(&v[p])) {
                continue;
            }
            used.extend(positions.iter().map(|&p| &v[p]));
            chosen.push(i);
            if chosen.len() == self.q {
                return Some(chosen);
            }
        }
        None
    }
}

/// Chooses `q` vectors meeting both conclusions of the selection lemma.
/// Returns `None` when no such choice was found.
pub fn select_regular<V: Ord + Clone>(vectors: &[Vec<V>], q: usize) -> Result<Option<SelectionResult<V>>> {
    if q == 0 {
        return Err(param("q must be >= 1"));
    }
    let Some(first) = vectors.first() else {
        return Ok(None);
    };
    let t = first.len();
    if t == 0 {
        return Err(param("vectors must have length >= 1"));
    }
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != t {
            return Err(input(format!("vector {i} has length {} instead of {t}", v.len())));
        }
        if v.iter().collect::<BTreeSet<_>>().len() != t {
            return Err(input(format!("vector {i} repeats an entry")));
        }
    }
    let guaranteed = selection_threshold(t, q).is_some_and(|n| vectors.len() as u128 >= n);
    let alive: Vec<usize> = (0..vectors.len()).collect();
    let positions: Vec<usize> = (0..t).collect();
    let mut sel = Selector { vectors, q, relaxed: false, nodes: 0 };
    let mut found = sel.select(&alive, &positions);
    if found.is_none() {
        sel.relaxed = true;
        sel.nodes = 0;
        found = sel.select(&alive, &positions);
    }
    Ok(found.map(|mut indices| {
        indices.sort_unstable();
        let verdicts = verdicts(vectors, &indices);
        let value_sets = indices
            .iter()
            .map(|&i| {
                (0..t)
                    .filter(|&p| verdicts[p] == PositionVerdict::PairwiseDistinct)
                    .map(|p| vectors[i][p].clone())
                    .collect()
            })
            .collect();
        SelectionResult { indices, verdicts, value_sets, guaranteed }
    }))
}

fn verdicts<V: Ord>(vectors: &[Vec<V>], indices: &[usize]) -> Vec<PositionVerdict> {
    let t = vectors[indices[0]].len();
    (0..t)
        .map(|p| {
            let first = &vectors[indices[0]][p];
            if indices.iter().all(|&i| &vectors[i][p] == first) {
                PositionVerdict::AllSame
            } else {
                PositionVerdict::PairwiseDistinct
            }
        })
        .collect()
}

/// Independently re-checks a selection: `q` distinct indices, each position
/// all-equal or pairwise-distinct, and pairwise disjoint value sets.
pub fn check_selection<V: Ord + Clone>(vectors: &[Vec<V>], q: usize, r: &SelectionResult<V>) -> bool {
    let idx = &r.indices;
    if idx.len() != q || idx.iter().collect::<BTreeSet<_>>().len() != q {
        return false;
    }
    if idx.iter().any(|&i| i >= vectors.len()) {
        return false;
    }
    let t = vectors[idx[0]].len();
    if r.verdicts.len() != t {
        return false;
    }
    for p in 0..t {
        let vals: Vec<&V> = idx.iter().map(|&i| &vectors[i][p]).collect();
        let distinct = vals.iter().collect::<BTreeSet<_>>().len();
        let ok = match r.verdicts[p] {
            PositionVerdict::AllSame => distinct == 1,
            PositionVerdict::PairwiseDistinct => distinct == q && q > 1,
        };
        if !ok {
            return false;
        }
    }
    let sets: Vec<BTreeSet<V>> = idx
        .iter()
        .map(|&i| {
            (0..t)
                .filter(|&p| r.verdicts[p] == PositionVerdict::PairwiseDistinct)
                .map(|p| vectors[i][p].clone())
                .collect()
        })
        .collect();
    if sets != r.value_sets {
        return false;
    }
    for a in 0..q {
        for b in a + 1..q {
            if !sets[a].is_disjoint(&sets[b]) {
                return false;
            }
        }
    }
    true
}
