//! Brute-force oracles and seeded random corpora shared by the integration
//! tests. Nothing here calls the library's counting or search code.

#![allow(dead_code)]

use indturan::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// `count` random graphs with `min_n ≤ n ≤ max_n` and edge probability in `[0.1, 0.7]`.
pub fn corpus(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(min_n..=max_n);
            let p = r.gen_range(0.1..0.7);
            gnp(&mut r, n, p)
        })
        .collect()
}

/// Random labeled tree on `t` vertices: each vertex attaches to an earlier one.
pub fn random_tree(rng: &mut impl Rng, t: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..t).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::from_edges(t, edges).unwrap()
}

/// Closed walks of length `k` by depth-first enumeration.
pub fn brute_closed_walks(g: &Graph, k: usize) -> u128 {
    fn go(g: &Graph, start: usize, at: usize, left: usize) -> u128 {
        if left == 1 {
            return g.has_edge(at, start) as u128;
        }
        (0..g.n()).filter(|&w| g.has_edge(at, w)).map(|w| go(g, start, w, left - 1)).sum()
    }
    (0..g.n()).map(|v| go(g, v, v, k)).sum()
}

pub fn brute_walks_between(g: &Graph, u: usize, v: usize, l: usize) -> u128 {
    if l == 0 {
        return (u == v) as u128;
    }
    (0..g.n())
        .filter(|&w| g.has_edge(u, w))
        .map(|w| brute_walks_between(g, w, v, l - 1))
        .sum()
}

/// Induced 4-cycles: 4-subsets whose induced graph is 2-regular.
pub fn brute_induced_c4(g: &Graph) -> u64 {
    let n = g.n();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let s = [a, b, c, d];
                    let regular = s
                        .iter()
                        .all(|&x| s.iter().filter(|&&y| y != x && g.has_edge(x, y)).count() == 2);
                    count += regular as u64;
                }
            }
        }
    }
    count
}

/// Induced 2-paths `u - w - v` (unordered ends).
pub fn brute_induced_two_paths(g: &Graph) -> u64 {
    let n = g.n();
    let mut count = 0;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            count += (0..n).filter(|&w| g.has_edge(u, w) && g.has_edge(w, v)).count() as u64;
        }
    }
    count
}

/// Every injective map `V(h) → V(g)` that preserves adjacency and
/// non-adjacency, built vertex by vertex in index order.
pub fn brute_labeled_induced(g: &Graph, h: &Graph) -> u64 {
    fn go(g: &Graph, h: &Graph, map: &mut Vec<usize>) -> u64 {
        let k = map.len();
        if k == h.n() {
            return 1;
        }
        let mut total = 0;
        for x in 0..g.n() {
            if map.contains(&x) {
                continue;
            }
            if (0..k).all(|i| h.has_edge(i, k) == g.has_edge(map[i], x)) {
                map.push(x);
                total += go(g, h, map);
                map.pop();
            }
        }
        total
    }
    go(g, h, &mut Vec::new())
}

pub fn brute_contains_induced(g: &Graph, h: &Graph) -> bool {
    fn go(g: &Graph, h: &Graph, map: &mut Vec<usize>) -> bool {
        let k = map.len();
        if k == h.n() {
            return true;
        }
        for x in 0..g.n() {
            if !map.contains(&x) && (0..k).all(|i| h.has_edge(i, k) == g.has_edge(map[i], x)) {
                map.push(x);
                if go(g, h, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    go(g, h, &mut Vec::new())
}

/// `map` is injective and `xy ∈ E(h) ⇔ map(x)map(y) ∈ E(g)`.
pub fn is_induced_embedding(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    if map.len() != h.n() || map.iter().any(|&x| x >= g.n()) {
        return false;
    }
    let mut seen = map.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != map.len() {
        return false;
    }
    (0..h.n()).all(|a| (a + 1..h.n()).all(|b| h.has_edge(a, b) == g.has_edge(map[a], map[b])))
}

/// Whether some `s`-set has `s` common neighbors.
pub fn brute_has_kss(g: &Graph, s: usize) -> bool {
    fn subsets(n: usize, s: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == s {
            return f(cur);
        }
        for v in start..n {
            cur.push(v);
            if subsets(n, s, v + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let n = g.n();
    subsets(n, s, 0, &mut Vec::new(), &mut |a| {
        (0..n).filter(|&x| a.iter().all(|&y| g.has_edge(x, y))).count() >= s
    })
}

pub fn codegree(g: &Graph, u: usize, v: usize) -> usize {
    (0..g.n()).filter(|&w| g.has_edge(u, w) && g.has_edge(v, w)).count()
}
