//! Command-line front end. [`run_command`] does all the work and returns the
//! exit code with captured output, so the binary is a thin wrapper and tests
//! can drive every subcommand in-process.
//!
//! Exit codes: 0 pass / found, 1 violation or absence, 2 budget exhausted,
//! 3 input or parameter error. Errors are written to stderr as one JSON
//! object.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::algorithms::{
    almost_regularize, enumerate_tree_embeddings, find_induced_lift, find_induced_prism, find_induced_theta,
    find_rich_set, greedy_tree_embed, PipelineConfig, RegularizationOutcome, RegularizeParams, RichSetParams,
};
use crate::counters::{
    classify_closed_walks, count_induced_c4, count_labeled_induced, hom_closed_walks, kst_bound_holds,
    thin_thick_stats, two_path_tally, walk_count, Budgeted, ClassifyMode,
};
use crate::detectors::{find_biclique, find_induced, witness_check, Embedding, SearchOutcome};
use crate::error::{input, Error, Result};
use crate::generators::{
    clique_blowup, complete, complete_bipartite, cycle, lift, path, polarity_graph, prism, theta, LiftSpec,
    RootedTree,
};
use crate::graph::Graph;
use crate::io::{emit_graph, read_graph_file, read_graph_list_file, write_graph_file, GraphFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "indturan", version, about = "Induced Turán experiments in K_{s,s}-free graphs")]
struct Cli {
    /// Row format; defaults to JSON lines (CSV for `sweep`).
    #[arg(long, global = true, value_enum)]
    out: Option<OutFormat>,
    /// Add a runtime_ms column (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFmt {
    G6,
    Edges,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph.
    Gen(GenArgs),
    /// Certified searches: K_{s,s}, induced copies, witness checks.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Exact counters.
    #[command(subcommand)]
    Count(CountCmd),
    /// Embedding pipelines.
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// Almost-regularization and rich-set extraction.
    #[command(subcommand)]
    Pipeline(PipelineCmd),
    /// Run a generator over a parameter grid and emit plot-ready CSV.
    #[command(subcommand)]
    Sweep(SweepCmd),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    /// Write to a file (format from the extension) instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Format for stdout.
    #[arg(long, global = true, value_enum, default_value = "g6")]
    graph_format: GraphFmt,
}

#[derive(Subcommand, Debug)]
enum GenKind {
    Theta {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: usize,
    },
    Prism {
        #[arg(long)]
        l: usize,
    },
    /// (p; S)-lift of a rooted tree (default: the 5-vertex path rooted at its ends).
    Lift {
        #[arg(long)]
        p: usize,
        /// Glued non-roots, comma separated.
        #[arg(long, value_delimiter = ',')]
        s: Vec<usize>,
        #[command(flatten)]
        tree: TreeArgs,
    },
    Blowup {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: usize,
    },
    Polarity {
        #[arg(long)]
        q: u64,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    Complete {
        #[arg(long)]
        n: usize,
    },
    Bipartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
}

#[derive(Args, Debug)]
struct TreeArgs {
    /// Tree file; omit for the 5-vertex path.
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Root vertices, comma separated (required with --tree).
    #[arg(long, value_delimiter = ',')]
    roots: Vec<usize>,
}

impl TreeArgs {
    fn rooted(&self) -> Result<RootedTree> {
        match &self.tree {
            None if self.roots.is_empty() => Ok(RootedTree::figure_two_path()),
            None => RootedTree::new(path(5), self.roots.iter().copied().collect()),
            Some(p) => RootedTree::new(read_graph_file(p)?, self.roots.iter().copied().collect()),
        }
    }
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    Kss {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        input: PathBuf,
    },
    Induced {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    Witness {
        #[arg(long)]
        s: usize,
        /// Forbidden family: a graph6 file (one graph per line) or an edge list.
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum CountCmd {
    Hom {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
    },
    Walks {
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        input: PathBuf,
    },
    C4 {
        #[arg(long)]
        input: PathBuf,
    },
    ThinThick {
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        input: PathBuf,
    },
    TwoPaths {
        #[arg(long)]
        input: PathBuf,
    },
    Induced {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Split closed 2l-walks into degenerate / induced cycle / chorded.
    Classify {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        input: PathBuf,
        /// Sample this many walks instead of enumerating.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
}

#[derive(Args, Debug)]
struct PipelineArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long, default_value_t = 5_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

impl PipelineArgs {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            s: self.s,
            tau: self.tau,
            codegree_threshold: self.threshold,
            node_budget: Some(self.budget),
            seed: self.seed,
            ..Default::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum EmbedCmd {
    /// Greedy induced-tree embedding (or exhaustive with --enumerate).
    Tree {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        enumerate: bool,
        #[command(flatten)]
        common: PipelineArgs,
    },
    Lift {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: Option<usize>,
        #[command(flatten)]
        tree: TreeArgs,
        #[command(flatten)]
        common: PipelineArgs,
    },
    Theta {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 2000)]
        max_paths: usize,
        #[command(flatten)]
        common: PipelineArgs,
    },
    /// Induced prism on 4l vertices (two 2l-cycles).
    Prism {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        fallback: bool,
        #[command(flatten)]
        common: PipelineArgs,
    },
}

#[derive(Subcommand, Debug)]
enum PipelineCmd {
    Regularize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 64)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    RichSet {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        c1: usize,
        #[arg(long)]
        c2: usize,
        #[arg(long, default_value_t = 64)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum SweepCmd {
    /// Polarity graphs over the listed primes.
    Polarity {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Clique blowups of a base graph over the listed t.
    Blowup {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<usize>,
        /// Biclique size; default 2·h·t with h the largest family order.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

type Row = Map<String, Value>;

fn row(v: Value) -> Row {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("rows are built from json objects"),
    }
}

struct Report {
    rows: Vec<Row>,
    /// Raw bytes printed before the rows (generated graphs).
    raw: Option<String>,
    exit_code: i32,
    default_out: OutFormat,
}

impl Report {
    fn rows(rows: Vec<Row>, exit_code: i32) -> Self {
        Report { rows, raw: None, exit_code, default_out: OutFormat::Json }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CommandOutput { exit_code: EXIT_OK, stdout: e.to_string(), stderr: String::new() };
            }
            return error_output("usage", &e.to_string());
        }
    };
    let start = Instant::now();
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => return error_output(error_kind(&e), &e.to_string()),
    };
    let elapsed = start.elapsed().as_millis() as u64;
    let mut rows = report.rows;
    if cli.timing {
        for r in &mut rows {
            r.insert("runtime_ms".into(), json!(elapsed));
        }
    }
    let mut stdout = report.raw.unwrap_or_default();
    match cli.out.unwrap_or(report.default_out) {
        OutFormat::Json => {
            for r in &rows {
                stdout.push_str(&serde_json::to_string(r).expect("rows serialize"));
                stdout.push('\n');
            }
        }
        OutFormat::Csv => match to_csv(&rows) {
            Ok(s) => stdout.push_str(&s),
            Err(e) => return error_output("output", &e),
        },
    }
    CommandOutput { exit_code: report.exit_code, stdout, stderr: String::new() }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidVertex { .. } => "invalid_vertex",
        Error::EmptyGraph => "empty_graph",
        Error::Parameter(_) => "parameter",
        Error::Input(_) => "input",
        Error::Parse { .. } => "parse",
        Error::Validation(_) => "validation",
    }
}

fn error_output(kind: &str, message: &str) -> CommandOutput {
    let body = json!({ "error": kind, "message": message.trim_end() });
    CommandOutput {
        exit_code: EXIT_ERROR,
        stdout: String::new(),
        stderr: format!("{body}\n"),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn to_csv(rows: &[Row]) -> std::result::Result<String, String> {
    let mut header: Vec<&String> = Vec::new();
    for r in rows {
        for k in r.keys() {
            if !header.contains(&k) {
                header.push(k);
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header.iter().map(|s| s.as_str())).map_err(|e| e.to_string())?;
    for r in rows {
        w.write_record(header.iter().map(|k| r.get(*k).map(cell).unwrap_or_default()))
            .map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

fn read(p: &Path) -> Result<Graph> {
    read_graph_file(p)
}

fn outcome_code<T>(o: &SearchOutcome<T>) -> i32 {
    match o {
        SearchOutcome::Found(_) => EXIT_OK,
        SearchOutcome::Absent => EXIT_VIOLATION,
        SearchOutcome::BudgetExhausted => EXIT_BUDGET,
    }
}

fn outcome_name<T>(o: &SearchOutcome<T>) -> &'static str {
    match o {
        SearchOutcome::Found(_) => "found",
        SearchOutcome::Absent => "absent",
        SearchOutcome::BudgetExhausted => "budget_exhausted",
    }
}

fn embedding_value(o: &SearchOutcome<Embedding>) -> Value {
    match o {
        SearchOutcome::Found(e) => json!(e.map),
        _ => Value::Null,
    }
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Gen(args) => gen(args),
        Command::Check(c) => check(c),
        Command::Count(c) => count(c),
        Command::Embed(c) => embed(c),
        Command::Pipeline(c) => pipeline(c),
        Command::Sweep(c) => sweep(c),
    }
}

fn gen(args: &GenArgs) -> Result<Report> {
    let (name, g) = match &args.kind {
        GenKind::Theta { l, t } => ("theta", theta(*l, *t)?.graph),
        GenKind::Prism { l } => ("prism", prism(*l)?),
        GenKind::Lift { p, s, tree } => {
            let rt = tree.rooted()?;
            let spec = LiftSpec { s: s.iter().copied().collect(), p: *p };
            ("lift", lift(&rt, &spec)?.graph)
        }
        GenKind::Blowup { input, t } => ("blowup", clique_blowup(&read(input)?, *t)?.graph),
        GenKind::Polarity { q } => ("polarity", polarity_graph(*q)?),
        GenKind::Cycle { n } => ("cycle", cycle(*n)?),
        GenKind::Path { n } => ("path", path(*n)),
        GenKind::Complete { n } => ("complete", complete(*n)),
        GenKind::Bipartite { a, b } => ("bipartite", complete_bipartite(*a, *b)),
    };
    match &args.output {
        Some(p) => {
            write_graph_file(p, &g)?;
            let r = row(json!({
                "generator": name,
                "n": g.n(),
                "e": g.edge_count(),
                "file": p.display().to_string(),
            }));
            Ok(Report::rows(vec![r], EXIT_OK))
        }
        None => {
            let fmt = match args.graph_format {
                GraphFmt::G6 => GraphFormat::Graph6,
                GraphFmt::Edges => GraphFormat::EdgeList,
            };
            let bytes = emit_graph(&g, fmt);
            Ok(Report {
                rows: Vec::new(),
                raw: Some(String::from_utf8(bytes).expect("graph formats are ASCII")),
                exit_code: EXIT_OK,
                default_out: OutFormat::Json,
            })
        }
    }
}

fn witness_row(g: &Graph, family: &[Graph], s: usize, budget: Option<u64>) -> Result<(Row, i32)> {
    let rep = witness_check(g, family, s, budget)?;
    let code = if rep.passed {
        EXIT_OK
    } else if rep.is_inconclusive() {
        EXIT_BUDGET
    } else {
        EXIT_VIOLATION
    };
    let r = row(json!({
        "n": g.n(),
        "e": g.edge_count(),
        "s": s,
        "passed": rep.passed,
        "kss_violation": rep.kss_violation,
        "induced_violations": rep.induced_violations.iter().map(|(i, e)| json!({"member": i, "map": e.map})).collect::<Vec<_>>(),
        "inconclusive": rep.inconclusive,
    }));
    Ok((r, code))
}

fn check(cmd: &CheckCmd) -> Result<Report> {
    match cmd {
        CheckCmd::Kss { s, input: file } => {
            if *s == 0 {
                return Err(input("s must be >= 1"));
            }
            let g = read(file)?;
            let cert = find_biclique(&g, *s);
            let code = if cert.is_some() { EXIT_VIOLATION } else { EXIT_OK };
            let r = row(json!({
                "n": g.n(),
                "e": g.edge_count(),
                "s": s,
                "passed": cert.is_none(),
                "kss_violation": cert,
            }));
            Ok(Report::rows(vec![r], code))
        }
        CheckCmd::Induced { pattern, input: file, budget } => {
            let h = read(pattern)?;
            let g = read(file)?;
            let out = find_induced(&g, &h, *budget)?;
            let code = match out {
                SearchOutcome::Found(_) => EXIT_VIOLATION,
                SearchOutcome::Absent => EXIT_OK,
                SearchOutcome::BudgetExhausted => EXIT_BUDGET,
            };
            let r = row(json!({
                "n": g.n(),
                "pattern_order": h.n(),
                "outcome": outcome_name(&out),
                "passed": matches!(out, SearchOutcome::Absent),
                "map": embedding_value(&out),
            }));
            Ok(Report::rows(vec![r], code))
        }
        CheckCmd::Witness { s, family, input: file, budget } => {
            let fam = read_graph_list_file(family)?;
            let g = read(file)?;
            let (r, code) = witness_row(&g, &fam, *s, *budget)?;
            Ok(Report::rows(vec![r], code))
        }
    }
}

fn count(cmd: &CountCmd) -> Result<Report> {
    let r = match cmd {
        CountCmd::Hom { k, input } => {
            let g = read(input)?;
            json!({ "k": k, "hom": hom_closed_walks(&g, *k)?.to_string() })
        }
        CountCmd::Walks { u, v, l, input } => {
            let g = read(input)?;
            json!({ "u": u, "v": v, "l": l, "walks": walk_count(&g, *u, *v, *l)?.to_string() })
        }
        CountCmd::C4 { input } => {
            let g = read(input)?;
            json!({ "n": g.n(), "e": g.edge_count(), "induced_c4": count_induced_c4(&g).to_string() })
        }
        CountCmd::ThinThick { tau, input } => {
            let g = read(input)?;
            let tau = tau.unwrap_or_else(|| crate::counters::default_thin_threshold(&g));
            serde_json::to_value(thin_thick_stats(&g, tau)?).expect("serializable")
        }
        CountCmd::TwoPaths { input } => {
            let g = read(input)?;
            let t = two_path_tally(&g);
            json!({
                "vertex_sum": t.vertex_sum().to_string(),
                "pair_sum": t.pair_sum().to_string(),
                "equal": t.vertex_sum() == t.pair_sum(),
            })
        }
        CountCmd::Induced { pattern, input, budget } => {
            let h = read(pattern)?;
            let g = read(input)?;
            return Ok(match count_labeled_induced(&g, &h, *budget)? {
                Budgeted::Done(c) => Report::rows(vec![row(json!({ "labeled_induced": c.to_string(), "complete": true }))], EXIT_OK),
                Budgeted::Overflow { work } => Report::rows(
                    vec![row(json!({ "labeled_induced": Value::Null, "complete": false, "work": work.to_string() }))],
                    EXIT_BUDGET,
                ),
            });
        }
        CountCmd::Classify { l, input, samples, seed, budget } => {
            let g = read(input)?;
            let mode = match samples {
                Some(s) => ClassifyMode::Sample { samples: *s, seed: *seed },
                None => ClassifyMode::Exact { budget: *budget },
            };
            return Ok(match classify_closed_walks(&g, *l, mode)? {
                Budgeted::Done(c) => {
                    let mut r = row(serde_json::to_value(&c).expect("serializable"));
                    let (a, b, d) = c.proportions();
                    r.insert("degenerate_fraction".into(), json!(a));
                    r.insert("induced_fraction".into(), json!(b));
                    r.insert("chorded_fraction".into(), json!(d));
                    Report::rows(vec![r], EXIT_OK)
                }
                Budgeted::Overflow { work } => {
                    Report::rows(vec![row(json!({ "complete": false, "total": work.to_string() }))], EXIT_BUDGET)
                }
            });
        }
    };
    Ok(Report::rows(vec![row(r)], EXIT_OK))
}

fn embed(cmd: &EmbedCmd) -> Result<Report> {
    match cmd {
        EmbedCmd::Tree { tree, enumerate, common } => {
            let g = read(&common.input)?;
            let t = read(tree)?;
            let cfg = common.config();
            let threshold = cfg.codegree_threshold_for(&g);
            if *enumerate {
                let en = enumerate_tree_embeddings(&g, &t, threshold, cfg.node_budget, None)?;
                let code = if !en.complete {
                    EXIT_BUDGET
                } else if en.count > 0 {
                    EXIT_OK
                } else {
                    EXIT_VIOLATION
                };
                let r = row(json!({ "threshold": threshold, "count": en.count.to_string(), "complete": en.complete }));
                return Ok(Report::rows(vec![r], code));
            }
            let tr = greedy_tree_embed(&g, &t, threshold, cfg.seed)?;
            let code = if tr.embedding.is_some() { EXIT_OK } else { EXIT_VIOLATION };
            let r = row(json!({
                "outcome": if tr.embedding.is_some() { "found" } else { "failed" },
                "threshold": threshold,
                "seed": cfg.seed,
                "map": tr.embedding.as_ref().map(|e| &e.map),
                "order": tr.order,
                "candidate_sizes": tr.candidate_sizes,
                "failed_step": tr.failed_step,
            }));
            Ok(Report::rows(vec![r], code))
        }
        EmbedCmd::Lift { p, q, tree, common } => {
            let g = read(&common.input)?;
            let rt = tree.rooted()?;
            let cfg = PipelineConfig { p: *p, q: q.unwrap_or(*p), ..common.config() };
            let (found, diag) = find_induced_lift(&g, &rt, *p, &cfg)?;
            let code = match (&found, diag.enumeration_complete) {
                (Some(_), _) => EXIT_OK,
                (None, true) => EXIT_VIOLATION,
                (None, false) => EXIT_BUDGET,
            };
            let mut r = row(json!({
                "outcome": if found.is_some() { "found" } else if diag.enumeration_complete { "absent" } else { "budget_exhausted" },
                "p": p,
                "glued": found.as_ref().map(|f| f.spec.s.clone()),
                "map": found.as_ref().map(|f| f.embedding.map.clone()),
            }));
            r.extend(row(serde_json::to_value(&diag).expect("serializable")));
            Ok(Report::rows(vec![r], code))
        }
        EmbedCmd::Theta { l, t, max_paths, common } => {
            let g = read(&common.input)?;
            let cfg = PipelineConfig { max_paths_per_pair: *max_paths, ..common.config() };
            let (out, diag) = find_induced_theta(&g, *l, *t, &cfg)?;
            let mut r = row(json!({ "outcome": outcome_name(&out), "l": l, "t": t, "map": embedding_value(&out) }));
            r.extend(row(serde_json::to_value(&diag).expect("serializable")));
            Ok(Report::rows(vec![r], outcome_code(&out)))
        }
        EmbedCmd::Prism { l, fallback, common } => {
            let g = read(&common.input)?;
            let cfg = PipelineConfig { prism_fallback: *fallback, ..common.config() };
            let (out, diag) = find_induced_prism(&g, *l, &cfg)?;
            let mut r = row(json!({ "outcome": outcome_name(&out), "l": l, "map": embedding_value(&out) }));
            r.extend(row(serde_json::to_value(&diag).expect("serializable")));
            Ok(Report::rows(vec![r], outcome_code(&out)))
        }
    }
}

fn pipeline(cmd: &PipelineCmd) -> Result<Report> {
    match cmd {
        PipelineCmd::Regularize { input, alpha, c, trials, seed } => {
            let g = read(input)?;
            let params = RegularizeParams { alpha: *alpha, c: *c, trials: *trials, seed: *seed };
            let out = almost_regularize(&g, params)?;
            let (r, code) = match out {
                RegularizationOutcome::Success(res) => {
                    let mut rows: Vec<Row> = res
                        .log
                        .iter()
                        .map(|s| row(serde_json::to_value(s).expect("serializable")))
                        .collect();
                    rows.push(row(json!({
                        "outcome": "success",
                        "iterations": res.iterations,
                        "m": res.subgraph.n(),
                        "e": res.subgraph.edge_count(),
                        "min_degree": res.min_degree,
                        "max_degree": res.max_degree,
                        "target_k": res.target_k,
                        "achieved_k": res.achieved_k,
                        "vertices": res.vertices,
                    })));
                    return Ok(Report::rows(rows, EXIT_OK));
                }
                RegularizationOutcome::HypothesisFailure { edges, required } => (
                    json!({ "outcome": "hypothesis_failure", "e": edges, "required": required }),
                    EXIT_ERROR,
                ),
                RegularizationOutcome::SamplingFailure { stage, best_edges, floor, .. } => (
                    json!({ "outcome": "sampling_failure", "stage": stage, "best_edges": best_edges, "floor": floor }),
                    EXIT_VIOLATION,
                ),
                RegularizationOutcome::PostconditionFailure { inequality, .. } => {
                    (json!({ "outcome": "postcondition_failure", "inequality": inequality }), EXIT_VIOLATION)
                }
            };
            Ok(Report::rows(vec![row(r)], code))
        }
        PipelineCmd::RichSet { input, tau, c1, c2, trials, seed } => {
            let g = read(input)?;
            let rep = find_rich_set(&g, RichSetParams { tau: *tau, c1: *c1, c2: *c2, trials: *trials, seed: *seed })?;
            let code = if rep.set.is_some() { EXIT_OK } else { EXIT_VIOLATION };
            Ok(Report::rows(vec![row(serde_json::to_value(&rep).expect("serializable"))], code))
        }
    }
}

fn sweep_family(family: &Option<PathBuf>) -> Result<Vec<Graph>> {
    match family {
        Some(p) => read_graph_list_file(p),
        None => Ok(Vec::new()),
    }
}

fn sweep(cmd: &SweepCmd) -> Result<Report> {
    let points: Vec<(String, u64, Graph, usize, Option<u64>, u64, Vec<Graph>)> = match cmd {
        SweepCmd::Polarity { q, s, family, budget, seed } => {
            let fam = sweep_family(family)?;
            q.iter()
                .map(|&q| Ok(("polarity".to_string(), q, polarity_graph(q)?, *s, *budget, *seed, fam.clone())))
                .collect::<Result<_>>()?
        }
        SweepCmd::Blowup { input, t, s, family, budget, seed } => {
            let base = read(input)?;
            let fam = sweep_family(family)?;
            let h = fam.iter().map(Graph::n).max().unwrap_or(1);
            t.iter()
                .map(|&t| {
                    let g = clique_blowup(&base, t)?.graph;
                    Ok(("blowup".to_string(), t as u64, g, s.unwrap_or(2 * h * t), *budget, *seed, fam.clone()))
                })
                .collect::<Result<_>>()?
        }
    };
    let mut rows: Vec<(usize, u64, Row, bool)> = points
        .into_par_iter()
        .map(|(name, param, g, s, budget, seed, fam)| {
            let (w, code) = witness_row(&g, &fam, s, budget)?;
            let n = g.n() as u64;
            let e = g.edge_count() as u64;
            let kst = if s >= 2 { Some(kst_bound_holds(n, e, s as u32, s as u64)?) } else { None };
            let density = if n > 0 { Ratio::new(2 * e, n) } else { Ratio::from_integer(0) };
            let r = row(json!({
                "generator": name,
                "param": param,
                "n": n,
                "e": e,
                "passed": w["passed"],
                "seed": seed,
                "s": s,
                "average_degree": *density.numer() as f64 / *density.denom() as f64,
                "log_n": (n as f64).ln(),
                "log_e": (e as f64).ln(),
                "kst_bound_holds": kst,
            }));
            Ok((g.n(), param, r, code == EXIT_OK))
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|(n, p, _, _)| (*n, *p));
    let all_passed = rows.iter().all(|r| r.3);
    Ok(Report {
        rows: rows.into_iter().map(|r| r.2).collect(),
        raw: None,
        exit_code: if all_passed { EXIT_OK } else { EXIT_VIOLATION },
        default_out: OutFormat::Csv,
    })
}
