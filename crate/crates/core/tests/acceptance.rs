//! Acceptance suite: twelve criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always shown.

mod common;

use std::time::{Duration, Instant};

use indturan::algorithms::{
    bad_neighbor_set, embedding_hypothesis, enumerate_tree_embeddings, find_induced_lift, find_induced_prism,
    find_induced_theta, greedy_tree_embed, select_regular, selection_threshold, PipelineConfig,
};
use indturan::cli::run_command;
use indturan::counters::{
    count_induced_c4, dense_bound_applies, dense_bound_holds, hom_closed_walks, kst_bound_holds, sidorenko_holds,
    two_path_tally, walk_count,
};
use indturan::detectors::{find_biclique, find_induced, witness_check};
use indturan::generators::{clique_blowup, cycle, lift_family, polarity_graph, prism, theta, RootedTree};
use indturan::io::{emit_graph, GraphFormat};
use indturan::Graph;
use num_bigint::BigUint;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn generator_formulas() -> Outcome {
    let mut checked = 0;
    for l in 2..=8 {
        for t in 2..=6 {
            let g = theta(l, t).unwrap().graph;
            ensure(g.n() == 2 + (l - 1) * t && g.edge_count() == l * t, || {
                format!("theta({l},{t}) has {} vertices, {} edges", g.n(), g.edge_count())
            })?;
            checked += 1;
        }
    }
    for l in 3..=12 {
        let g = prism(l).unwrap();
        ensure(g.n() == 2 * l && g.edge_count() == 3 * l, || format!("prism({l}) size"))?;
        ensure(g.is_bipartite() == (l % 2 == 0), || format!("prism({l}) bipartiteness"))?;
        checked += 1;
    }
    Ok(format!("{checked} graphs exact"))
}

fn blowup_soundness() -> Outcome {
    let cases = [(cycle(7).unwrap(), cycle(6).unwrap(), "C7/C6"), (polarity_graph(3).unwrap(), cycle(4).unwrap(), "ER3/C4")];
    let mut runs = 0;
    for (base, h, name) in &cases {
        for t in [2, 3] {
            let g = clique_blowup(base, t).unwrap().graph;
            let s = 2 * h.n() * t;
            let rep = witness_check(&g, std::slice::from_ref(h), s, None).unwrap();
            ensure(rep.passed, || format!("{name} t={t}: witness failed {rep:?}"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} blowups: no induced H, no K_(s,s) with s = 2|H|t"))
}

fn hom_oracle() -> Outcome {
    let graphs = corpus(3, 200, 1, 10);
    let mut checks = 0;
    for (i, g) in graphs.iter().enumerate() {
        for k in 1..=8 {
            let fast = hom_closed_walks(g, k).unwrap();
            let slow = BigUint::from(brute_closed_walks(g, k));
            ensure(fast == slow, || format!("graph {i}, k={k}: {fast} vs {slow}"))?;
            checks += 1;
        }
        for l in 1..=4 {
            let mut sq = BigUint::from(0u32);
            for u in 0..g.n() {
                for v in 0..g.n() {
                    let w = walk_count(g, u, v, l).unwrap();
                    sq += &w * &w;
                }
            }
            ensure(sq == hom_closed_walks(g, 2 * l).unwrap(), || format!("graph {i}: walk-square identity at l={l}"))?;
        }
    }
    Ok(format!("{checks} (graph, k) pairs equal; walk-square identity on 200 graphs"))
}

fn induced_c4_oracle() -> Outcome {
    let graphs = corpus(4, 100, 4, 40);
    for (i, g) in graphs.iter().enumerate() {
        let fast = count_induced_c4(g);
        let slow = brute_induced_c4(g);
        ensure(fast == BigUint::from(slow), || format!("graph {i}: {fast} vs {slow}"))?;
    }
    Ok("100 graphs, n <= 40, exact".into())
}

fn two_path_identity() -> Outcome {
    let mut graphs = corpus(3, 200, 1, 10);
    graphs.extend(corpus(4, 100, 4, 40));
    for (i, g) in graphs.iter().enumerate() {
        let t = two_path_tally(g);
        let brute = brute_induced_two_paths(g);
        ensure(t.vertex_sum() == t.pair_sum() && t.pair_sum() == brute, || {
            format!("graph {i}: {} / {} / {brute}", t.vertex_sum(), t.pair_sum())
        })?;
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn kst_audits() -> Outcome {
    let mut notes = Vec::new();
    for q in [3u64, 5, 7, 11] {
        let g = polarity_graph(q).unwrap();
        let (n, e) = (g.n() as u64, g.edge_count() as u64);
        ensure(find_biclique(&g, 2).is_none(), || format!("q={q}: K_(2,2) found"))?;
        ensure(2 * e == q * (q + 1) * (q + 1), || format!("q={q}: e = {e}"))?;
        ensure(kst_bound_holds(n, e, 2, 2).unwrap(), || format!("q={q}: KST bound fails"))?;
        let mut applied = 0;
        for den in [2u64, 3, 4, 8, 16, 32, 64] {
            let c = Ratio::new(1, den);
            if dense_bound_applies(n, 2, c) {
                ensure(dense_bound_holds(n, e, c), || format!("q={q}: e <= n²/{den} fails"))?;
                applied += 1;
            }
        }
        notes.push(format!("q={q}:{applied}"));
    }
    Ok(format!("K_(2,2)-free, e exact, KST holds; dense bound applied ({})", notes.join(" ")))
}

fn sidorenko() -> Outcome {
    let mut graphs = corpus(3, 200, 1, 10);
    graphs.extend(corpus(4, 100, 4, 40));
    for (i, g) in graphs.iter().enumerate() {
        for l in [2, 3] {
            ensure(sidorenko_holds(g, l).unwrap(), || format!("graph {i}, l={l}"))?;
        }
    }
    Ok(format!("{} graphs, l in {{2,3}}", graphs.len()))
}

/// Independent check of both conclusions of the selection lemma.
fn selection_valid(vectors: &[Vec<u32>], idx: &[usize], q: usize) -> bool {
    if idx.len() != q {
        return false;
    }
    let t = vectors[0].len();
    let mut distinct_positions = Vec::new();
    for p in 0..t {
        let vals: Vec<u32> = idx.iter().map(|&i| vectors[i][p]).collect();
        let mut d = vals.clone();
        d.sort_unstable();
        d.dedup();
        if d.len() == q && q > 1 {
            distinct_positions.push(p);
        } else if d.len() != 1 {
            return false;
        }
    }
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            for &p in &distinct_positions {
                for &r in &distinct_positions {
                    if vectors[i][p] == vectors[j][r] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn selection_lemma() -> Outcome {
    let mut r = rng(8);
    let mut total = 0;
    for (t, q) in [(1usize, 2usize), (2, 2), (2, 3), (3, 2)] {
        let n = selection_threshold(t, q).unwrap() as usize;
        let alphabet = (t * q + 2) as u32;
        for inst in 0..1000 {
            let vectors: Vec<Vec<u32>> = (0..n)
                .map(|_| {
                    let mut pool: Vec<u32> = (0..alphabet).collect();
                    pool.shuffle(&mut r);
                    pool[..t].to_vec()
                })
                .collect();
            let sel = select_regular(&vectors, q).unwrap();
            let sel = sel.ok_or_else(|| format!("(t,q)=({t},{q}) instance {inst}: no selection at N(t,q)"))?;
            ensure(selection_valid(&vectors, &sel.indices, q), || format!("(t,q)=({t},{q}) instance {inst}: invalid"))?;
            ensure(sel.guaranteed, || "guarantee flag".into())?;
            total += 1;
        }
    }
    Ok(format!("{total} instances at N(t,q), 100% valid"))
}

fn greedy_and_enumerator() -> Outcome {
    let mut r = rng(9);
    let mut successes = 0;
    let mut equal_checks = 0;
    for i in 0..500 {
        let n = r.gen_range(4..=30);
        let p = r.gen_range(0.05..0.25);
        let g = gnp(&mut r, n, p);
        let t_order = r.gen_range(1..=7);
        let tree = random_tree(&mut r, t_order);
        let d = 2.0 * g.edge_count() as f64 / n as f64;
        let threshold = d.powf(1.0 - 1.0 / 6.0);
        let trace = greedy_tree_embed(&g, &tree, threshold, i).unwrap();
        if let Some(e) = &trace.embedding {
            ensure(is_induced_embedding(&g, &tree, &e.map), || format!("graph {i}: greedy output not induced"))?;
            successes += 1;
        }
        let oracle = brute_labeled_induced(&g, &tree);
        let pruned = enumerate_tree_embeddings(&g, &tree, threshold, None, None).unwrap();
        ensure(pruned.complete && pruned.count <= oracle, || format!("graph {i}: {} > oracle {oracle}", pruned.count))?;
        let max_codeg = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|(u, v)| u != v).map(|(u, v)| codegree(&g, u, v)).max().unwrap_or(0);
        let above = max_codeg as f64 + 1.0;
        let full = enumerate_tree_embeddings(&g, &tree, above, None, None).unwrap();
        ensure(full.count == oracle, || format!("graph {i}: exhaustive {} vs oracle {oracle}", full.count))?;
        equal_checks += 1;
    }
    Ok(format!("500 graphs: {successes} greedy successes all induced; enumerator <= oracle, = oracle above max codegree ({equal_checks})"))
}

fn self_detection() -> Outcome {
    let cfg = PipelineConfig::default();
    let mut done = 0;
    for l in 2..=4 {
        for t in 2..=4 {
            let th = theta(l, t).unwrap().graph;
            let (out, _) = find_induced_theta(&th, l, t, &cfg).unwrap();
            let e = out.found().ok_or_else(|| format!("theta({l},{t}) missed"))?;
            ensure(is_induced_embedding(&th, &th, &e.map), || format!("theta({l},{t}) bad embedding"))?;
            if th.n() <= 20 {
                ensure(brute_contains_induced(&th, &th) && find_induced(&th, &th, None).unwrap().is_found(), || "cross-check".into())?;
            }
            done += 1;
        }
    }
    for l in 2..=4 {
        let g = prism(2 * l).unwrap();
        let (out, _) = find_induced_prism(&g, l, &cfg).unwrap();
        let e = out.found().ok_or_else(|| format!("prism({}) missed", 2 * l))?;
        ensure(is_induced_embedding(&g, &g, &e.map), || format!("prism({}) bad embedding", 2 * l))?;
        if g.n() <= 20 {
            ensure(find_induced(&g, &g, None).unwrap().is_found(), || "cross-check".into())?;
        }
        done += 1;
    }
    let rt = RootedTree::figure_two_path();
    for p in 1..=3 {
        for (spec, l) in lift_family(&rt, p, false).unwrap() {
            let c = PipelineConfig { p, q: p, ..cfg.clone() };
            let (found, _) = find_induced_lift(&l.graph, &rt, p, &c).unwrap();
            let f = found.ok_or_else(|| format!("lift p={p} S={:?} missed", spec.s))?;
            ensure(is_induced_embedding(&l.graph, &f.lift.graph, &f.embedding.map), || "bad lift embedding".into())?;
            if l.graph.n() <= 20 {
                ensure(brute_contains_induced(&l.graph, &f.lift.graph), || "lift cross-check".into())?;
            }
            done += 1;
        }
    }
    Ok(format!("{done} self-detections verified"))
}

fn conditional_hypotheses() -> Outcome {
    let mut graphs = corpus(11, 60, 5, 30);
    for q in [2u64, 3, 5, 7] {
        graphs.push(polarity_graph(q).unwrap());
    }
    let mut evaluated = 0;
    let mut fired = 0;
    for (i, g) in graphs.iter().enumerate() {
        if g.edge_count() == 0 {
            continue;
        }
        for k in [1.5, 2.0, 4.0] {
            for s in [2usize, 3] {
                for t in [2usize, 3, 5] {
                    let h = embedding_hypothesis(g, k, s, t).unwrap();
                    evaluated += 1;
                    if !h.holds() {
                        continue;
                    }
                    fired += 1;
                    let d = h.average_degree;
                    let beta = 1.0 - 1.0 / (3.0 * s as f64);
                    for v in 0..g.n() {
                        let x = bad_neighbor_set(g, v, d.powf(beta)).unwrap();
                        ensure(x.len() as f64 <= d.powf(beta), || format!("graph {i}: |X({v})| too large"))?;
                    }
                    let tree = indturan::generators::path(t);
                    let tr = greedy_tree_embed(g, &tree, d.powf(beta), 0).unwrap();
                    for &c in &tr.candidate_sizes {
                        ensure(c as f64 >= d / (2.0 * k), || format!("graph {i}: |V_k| = {c} < d/2K"))?;
                    }
                }
            }
        }
    }
    Ok(format!("{evaluated} hypothesis evaluations, {fired} fired, 0 violations"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).display().to_string();
    let write = |name: &str, g: &Graph, f: GraphFormat| std::fs::write(dir.path().join(name), emit_graph(g, f)).unwrap();
    write("c4.g6", &cycle(4).unwrap(), GraphFormat::Graph6);
    write("c6.g6", &cycle(6).unwrap(), GraphFormat::Graph6);
    write("c7.txt", &cycle(7).unwrap(), GraphFormat::EdgeList);
    write("er5.g6", &polarity_graph(5).unwrap(), GraphFormat::Graph6);
    write("p4.g6", &indturan::generators::path(4), GraphFormat::Graph6);
    write("prism4.g6", &prism(4).unwrap(), GraphFormat::Graph6);
    write("theta.g6", &theta(3, 3).unwrap().graph, GraphFormat::Graph6);
    write("k315.g6", &indturan::generators::complete_bipartite(15, 3), GraphFormat::Graph6);
    let rt = RootedTree::figure_two_path();
    let lift2 = lift_family(&rt, 2, false).unwrap().remove(1).1.graph;
    write("lift.g6", &lift2, GraphFormat::Graph6);
    let commands: Vec<String> = vec![
        "gen theta --l 3 --t 4".into(),
        "gen prism --l 10".into(),
        "gen lift --p 3 --s 1".into(),
        "gen polarity --q 7 --graph-format edges".into(),
        format!("gen blowup --input {} --t 3", p("c7.txt")),
        "gen cycle --n 9".into(),
        "gen bipartite --a 3 --b 4".into(),
        format!("check kss --s 2 --input {}", p("er5.g6")),
        format!("check induced --pattern {} --input {}", p("c4.g6"), p("er5.g6")),
        format!("check witness --s 2 --family {} --input {}", p("c4.g6"), p("c6.g6")),
        format!("count hom --k 6 --input {}", p("er5.g6")),
        format!("count walks --u 0 --v 3 --l 4 --input {}", p("er5.g6")),
        format!("count c4 --input {}", p("prism4.g6")),
        format!("count thin-thick --input {}", p("prism4.g6")),
        format!("count two-paths --input {}", p("er5.g6")),
        format!("count induced --pattern {} --input {}", p("p4.g6"), p("c7.txt")),
        format!("count classify --l 2 --input {}", p("er5.g6")),
        format!("count classify --l 3 --samples 500 --seed 4 --input {}", p("er5.g6")),
        format!("embed tree --tree {} --input {} --seed 3", p("p4.g6"), p("er5.g6")),
        format!("embed tree --tree {} --input {} --enumerate", p("p4.g6"), p("c7.txt")),
        format!("embed lift --p 2 --input {}", p("lift.g6")),
        format!("embed theta --l 3 --t 3 --input {}", p("theta.g6")),
        format!("embed prism --l 2 --input {}", p("prism4.g6")),
        format!("pipeline regularize --alpha 0.5 --c 0.5 --seed 9 --input {}", p("er5.g6")),
        format!("pipeline rich-set --tau 1 --c1 3 --c2 3 --seed 2 --input {}", p("k315.g6")),
        "sweep polarity --q 2,3,5,7".into(),
        format!("sweep blowup --input {} --t 1,2,3 --family {}", p("c7.txt"), p("c6.g6")),
        "--out csv count hom --k 4 --input MISSING".into(),
    ];
    for cmd in &commands {
        let argv: Vec<String> = std::iter::once("indturan".to_string()).chain(cmd.split_whitespace().map(String::from)).collect();
        let a = run_command(argv.clone());
        let b = run_command(argv.clone());
        ensure(a == b, || format!("`{cmd}` differs between runs"))?;
        ensure(!a.stdout.is_empty() || !a.stderr.is_empty(), || format!("`{cmd}` produced no output"))?;
    }
    Ok(format!("{} commands byte-identical across runs", commands.len()))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome, Duration)> = vec![
        ("generator formulas", generator_formulas, Duration::from_secs(1)),
        ("blowup soundness", blowup_soundness, Duration::from_secs(30)),
        ("homomorphism oracle", hom_oracle, Duration::from_secs(60)),
        ("induced C4 oracle", induced_c4_oracle, Duration::from_secs(60)),
        ("two-path identity", two_path_identity, Duration::from_secs(10)),
        ("KST / dense-bound audits", kst_audits, Duration::from_secs(120)),
        ("Sidorenko floor", sidorenko, Duration::from_secs(30)),
        ("selection lemma", selection_lemma, Duration::from_secs(30)),
        ("greedy embedder and enumerator", greedy_and_enumerator, Duration::from_secs(120)),
        ("self-detection", self_detection, Duration::from_secs(120)),
        ("conditional hypotheses", conditional_hypotheses, Duration::from_secs(10)),
        ("CLI determinism", determinism, Duration::from_secs(30)),
    ];
    let mut failures = 0;
    for (i, (name, f, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if took <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {took:.2?}, limit {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {:>2} {status} [{name}] ({took:.2?}) {detail}", i + 1);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
