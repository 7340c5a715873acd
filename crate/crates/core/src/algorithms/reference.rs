//! Asymptotic constants from the existence arguments, evaluated exactly.
//!
//! None of these are used as defaults: they are astronomically large even
//! for `s = 2`. They exist so experiments can report how far a desk-scale run
//! sits from the regime where the guarantees apply.

use num_bigint::BigUint;
use num_traits::{pow, One};

fn factorial(t: usize) -> BigUint {
    (1..=t).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// `N(t, q) = (t!)² · q^{t+1}`: vectors needed by the selection lemma.
pub fn selection_size(t: usize, q: usize) -> BigUint {
    let f = factorial(t);
    &f * &f * pow(BigUint::from(q), t + 1)
}

/// `q = (2p)^s · s · t^{2s−1}`: tree copies that force an independent set
/// of size `p` in the conflict graph of a `K_{s,s}`-free host.
pub fn lift_copies(p: usize, s: usize, t: usize) -> BigUint {
    pow(BigUint::from(2 * p), s) * BigUint::from(s) * pow(BigUint::from(t), 2 * s - 1)
}

/// `(ℓt)^{20s}`, the theta edge-density factor.
pub fn theta_factor(l: usize, t: usize, s: usize) -> BigUint {
    pow(BigUint::from(l * t), 20 * s)
}

/// `C > (ℓt)^{100ℓ}` for thetas.
pub fn theta_constant_floor(l: usize, t: usize) -> BigUint {
    pow(BigUint::from(l * t), 100 * l)
}

/// `6^s · s^{20ℓ²}`, the prism edge-density factor.
pub fn prism_factor(l: usize, s: usize) -> BigUint {
    pow(BigUint::from(6u32), s) * pow(BigUint::from(s), 20 * l * l)
}

/// `C_1 = (16ℓ²s)^{8ℓ+10}`: rich-set size forcing an induced prism.
pub fn rich_set_size(l: usize, s: usize) -> BigUint {
    pow(BigUint::from(16 * l * l * s), 8 * l + 10)
}

/// `(16ℓ²s)^{8ℓ}`: codegree each triple of a rich set must reach.
pub fn rich_set_codegree(l: usize, s: usize) -> BigUint {
    pow(BigUint::from(16 * l * l * s), 8 * l)
}

/// Fraction of induced 4-cycles (`ε d⁴`) assumed thin or thick.
pub const THIN_THICK_EPSILON: f64 = 1.0 / 512.0;

/// `(4Kt)^{6s} s³`, the average-degree floor for the greedy tree embedder.
pub fn tree_embedding_degree_floor(k: f64, t: usize, s: usize) -> f64 {
    (4.0 * k * t as f64).powf(6.0 * s as f64) * (s as f64).powi(3)
}
