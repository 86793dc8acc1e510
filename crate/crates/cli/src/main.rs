//! `twinwl` command-line front end.
//!
//! Graph arguments name files in the line-oriented text format (`-` reads
//! standard input). Generators print graphs in that format; every other
//! command prints JSON. Exit codes: 0 success, 1 internal or I/O error,
//! 2 failed assertion, 3 exhausted budget, 64 usage or input error.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use twinwl::experiment::{run_experiment, ExperimentName, ExperimentSpec};
use twinwl::format::{parse_graph, parse_sequence_file, render_graph};
use twinwl::generators::{
    cfi_pair, cubic_base, half_graph, random_chain_graph, random_cograph, random_prime_tww1,
    random_tww1, subdivide,
};
use twinwl::iso::find_isomorphism;
use twinwl::modular::mod_tree;
use twinwl::search::{exact_twinwidth, heuristic_best, ExactOutcome, SearchBudget};
use twinwl::structure::{
    audit_red_cuts, gf2_rank, is_partial_half_graph, max_balanced_biclique_chain,
    max_induced_half_graph, max_matching, rank_connectivity, reduced_rank, Gf2Matrix,
    RANK_CONNECTIVITY_LIMIT,
};
use twinwl::trigraph::verify_sequence;
use twinwl::tww1::{canonical_form, cs_invariant_with_pair, is_twinwidth_le1};
use twinwl::wl::{pebble_game, wl_distinguish, wl_refine};
use twinwl::{
    BipartiteView, CanonError, ColoredGraph, ContractionError, ExperimentError, GeneratorError,
    GraphError, StructureError, Vertex, WlError,
};

const EXIT_INTERNAL: u8 = 1;
const EXIT_ASSERTION: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Graph { path: PathBuf, source: GraphError },
    #[error("{path}: {source}")]
    Sequence { path: PathBuf, source: ContractionError },
    #[error(transparent)]
    Contraction(#[from] ContractionError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Wl(#[from] WlError),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("cannot set up the thread pool: {0}")]
    Threads(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_)
            | CliError::Read { .. }
            | CliError::Graph { .. }
            | CliError::Sequence { .. }
            | CliError::Contraction(_)
            | CliError::Generator(_)
            | CliError::Canon(_)
            | CliError::Structure(_) => EXIT_USAGE,
            CliError::Wl(WlError::Budget { .. })
            | CliError::Experiment(ExperimentError::Wl(WlError::Budget { .. })) => EXIT_BUDGET,
            CliError::Wl(_) => EXIT_USAGE,
            CliError::Experiment(
                ExperimentError::InvalidSpec(_)
                | ExperimentError::UnknownExperiment(_)
                | ExperimentError::Generator(_),
            ) => EXIT_USAGE,
            CliError::Experiment(_) | CliError::Json(_) | CliError::Threads(_) => EXIT_INTERNAL,
        }
    }
}

/// Successful command output and the exit status it implies.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }

    fn json(value: &Value) -> Result<Self, CliError> {
        Ok(Self::ok(serde_json::to_string_pretty(value)?))
    }

    fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

#[derive(Debug, Parser)]
#[command(name = "twinwl", version, about = "Twin-width and Weisfeiler-Leman graph toolkit")]
struct Cli {
    /// Number of worker threads (defaults to all cores).
    #[arg(long, env = "TWINWL_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a graph and print it in the text format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Twin-width computations.
    #[command(subcommand)]
    Tww(TwwCommand),
    /// Canonical form of a graph of twin-width at most 1, as hex bytes.
    Canon {
        graph: PathBuf,
        /// Print the contraction-string invariant and its starting pair instead.
        #[arg(long)]
        cs: bool,
        /// Print a JSON object with the encoding and the canonical order.
        #[arg(long)]
        json: bool,
    },
    /// Isomorphism test with a witness map.
    Iso { g: PathBuf, h: PathBuf },
    /// Decide twin-width at most 1 and print a certificate sequence.
    #[command(name = "recognize-tww1")]
    RecognizeTww1 { graph: PathBuf },
    /// Modular decomposition tree as JSON.
    Modtree { graph: PathBuf },
    /// k-dimensional Weisfeiler-Leman refinement.
    #[command(subcommand)]
    Wl(WlCommand),
    /// Solve the bijective k-pebble game on two graphs.
    Pebble {
        #[arg(short)]
        k: usize,
        g: PathBuf,
        h: PathBuf,
    },
    /// Structural checks on bipartite cuts.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Run a reproducible experiment pipeline.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Half-graph H_t with sides 0..t and t..2t.
    Halfgraph {
        #[arg(short)]
        t: usize,
    },
    /// One graph of the CFI pair over a cubic base (k4, k33, petersen, prism<r>, mobius<r>).
    Cfi {
        #[arg(long, default_value = "k4")]
        base: String,
        /// Emit the twisted graph instead of the untwisted one.
        #[arg(long)]
        odd: bool,
    },
    /// Replace every edge by a path with s inner vertices, ordered by vertex id.
    Subdivide {
        graph: PathBuf,
        #[arg(short)]
        s: usize,
    },
    /// Random cograph.
    Cograph {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random graph of twin-width at most 1.
    Tww1 {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only sample prime graphs (n >= 4).
        #[arg(long)]
        prime: bool,
    },
    /// Random chain graph with sides 0..a and a..a+b.
    Chain {
        #[arg(short)]
        a: usize,
        #[arg(short)]
        b: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Search-node cap.
    #[arg(long, default_value_t = 50_000_000)]
    max_nodes: u64,
    /// Wall-clock cap in seconds.
    #[arg(long, default_value_t = 60)]
    time_cap: u64,
    /// Beam width of the heuristic.
    #[arg(long, default_value_t = 4)]
    beam: usize,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.max_nodes,
            time_cap: Duration::from_secs(self.time_cap),
            beam: self.beam,
        }
    }
}

#[derive(Debug, Subcommand)]
enum TwwCommand {
    /// Exact twin-width (at most 32 vertices); exits 3 with bounds on budget exhaustion.
    Exact {
        graph: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Heuristic sequence; exits 2 if its width exceeds the target.
    Heuristic {
        graph: PathBuf,
        #[arg(long)]
        target: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Replay a sequence file (graph plus `m` lines) and report its width.
    Verify { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum WlCommand {
    /// Stable k-WL coloring summary of one graph.
    Refine {
        #[arg(short)]
        k: usize,
        graph: PathBuf,
    },
    /// Whether k-WL distinguishes two graphs.
    Distinguish {
        #[arg(short)]
        k: usize,
        g: PathBuf,
        h: PathBuf,
    },
}

#[derive(Debug, Args)]
struct SideArgs {
    graph: PathBuf,
    /// Left side as comma-separated ids; defaults to a proper 2-coloring.
    #[arg(long, value_delimiter = ',')]
    left: Option<Vec<Vertex>>,
    /// Right side; defaults to all vertices not on the left.
    #[arg(long, value_delimiter = ',')]
    right: Option<Vec<Vertex>>,
}

#[derive(Debug, Subcommand)]
enum AnalyzeCommand {
    /// Every check on a bipartite cut: half-graph embedding, rank, matching, biclique.
    Chain(SideArgs),
    /// GF(2) rank of Adj(A, B) and, for at most 20 vertices, rank-connectivity.
    Rank {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<Vertex>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<Vertex>,
    },
    /// Partial half-graph recognition and the largest induced half-graph.
    Halfgraph(SideArgs),
    /// Maximum matching and the largest balanced biclique of a partial half-graph.
    Biclique(SideArgs),
    /// Check every red cut of a width-1 sequence file; exits 2 on violations.
    Audit { file: PathBuf },
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// cfi-subdivision-wl, tww1-wl-dimension, red-cut-audit or lemma21-suite.
    name: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// WL dimension for cfi-subdivision-wl.
    #[arg(short, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value = "k4")]
    base: String,
    /// Base of the transfer pair, or `none` to skip it.
    #[arg(long, default_value = "petersen")]
    transfer_base: String,
    /// Subdivision length (default 2 ceil(log2 n)).
    #[arg(short)]
    s: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    /// Print the full JSON report instead of a summary.
    #[arg(long)]
    json: bool,
    /// Directory for the report and counterexample bundles.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let err = |source| CliError::Read {
        path: path.to_path_buf(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(err)
    }
}

fn load(path: &Path) -> Result<ColoredGraph, CliError> {
    parse_graph(&read_text(path)?).map_err(|source| CliError::Graph {
        path: path.to_path_buf(),
        source,
    })
}

fn load_sequence(path: &Path) -> Result<(ColoredGraph, twinwl::ContractionSequence), CliError> {
    parse_sequence_file(&read_text(path)?).map_err(|source| CliError::Sequence {
        path: path.to_path_buf(),
        source,
    })
}

fn merges_json(seq: &twinwl::ContractionSequence) -> Value {
    json!(seq.merges())
}

/// Proper 2-coloring with the smallest vertex of each component on the left.
fn bipartition(g: &ColoredGraph) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let mut side = vec![None; g.n()];
    for s in g.vertices() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let sv = side[v].unwrap();
            for &w in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(!sv);
                        stack.push(w);
                    }
                    Some(sw) if sw == sv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let left = g.vertices().filter(|&v| side[v] == Some(false)).collect();
    let right = g.vertices().filter(|&v| side[v] == Some(true)).collect();
    Some((left, right))
}

fn sides(g: &ColoredGraph, args: &SideArgs) -> Result<(Vec<Vertex>, Vec<Vertex>), CliError> {
    let (left, right) = match (&args.left, &args.right) {
        (None, None) => bipartition(g)
            .ok_or_else(|| CliError::Usage("graph is not bipartite; pass --left".into()))?,
        (Some(l), r) => {
            let right = r
                .clone()
                .unwrap_or_else(|| g.vertices().filter(|v| !l.contains(v)).collect());
            (l.clone(), right)
        }
        (None, Some(_)) => return Err(CliError::Usage("--right needs --left".into())),
    };
    BipartiteView::new(g, &left, &right).map_err(|source| CliError::Graph {
        path: args.graph.clone(),
        source,
    })?;
    Ok((left, right))
}

fn run_gen(cmd: GenCommand) -> Result<Output, CliError> {
    let g = match cmd {
        GenCommand::Halfgraph { t } => half_graph(t).0,
        GenCommand::Cfi { base, odd } => {
            let pair = cfi_pair(&cubic_base(&base)?)?;
            if odd {
                pair.odd
            } else {
                pair.even
            }
        }
        GenCommand::Subdivide { graph, s } => {
            let g = load(&graph)?;
            let order: Vec<Vertex> = g.vertices().collect();
            subdivide(&g, s, &order)?
        }
        GenCommand::Cograph { n, seed } => random_cograph(n, seed)?,
        GenCommand::Tww1 { n, seed, prime } => {
            if prime {
                random_prime_tww1(n, seed)?
            } else {
                random_tww1(n, seed)?
            }
        }
        GenCommand::Chain {
            a,
            b,
            density,
            seed,
        } => random_chain_graph(a, b, density, seed)?.graph,
    };
    Ok(Output::ok(render_graph(&g).trim_end().to_string()))
}

fn run_tww(cmd: TwwCommand) -> Result<Output, CliError> {
    match cmd {
        TwwCommand::Exact { graph, budget } => {
            let g = load(&graph)?;
            let start = Instant::now();
            let out = exact_twinwidth(&g, budget.budget());
            let time_ms = start.elapsed().as_millis();
            match out {
                ExactOutcome::Solved {
                    width,
                    sequence,
                    nodes,
                } => Output::json(&json!({
                    "width": width,
                    "sequence": merges_json(&sequence),
                    "nodes": nodes,
                    "time_ms": time_ms,
                })),
                ExactOutcome::Exhausted {
                    lower,
                    upper,
                    sequence,
                    nodes,
                } => Ok(Output::json(&json!({
                    "bounds": { "lower": lower, "upper": upper },
                    "sequence": merges_json(&sequence),
                    "nodes": nodes,
                    "time_ms": time_ms,
                }))?
                .with_code(EXIT_BUDGET)),
            }
        }
        TwwCommand::Heuristic {
            graph,
            target,
            budget,
        } => {
            let g = load(&graph)?;
            let start = Instant::now();
            let r = heuristic_best(&g, budget.budget());
            let met = r.width <= target;
            let out = Output::json(&json!({
                "width": r.width,
                "target": target,
                "met": met,
                "sequence": merges_json(&r.sequence),
                "nodes": r.candidates_scored,
                "time_ms": start.elapsed().as_millis(),
            }))?;
            Ok(if met { out } else { out.with_code(EXIT_ASSERTION) })
        }
        TwwCommand::Verify { file } => {
            let (g, seq) = load_sequence(&file)?;
            Output::json(&serde_json::to_value(verify_sequence(&g, &seq)?)?)
        }
    }
}

fn run_canon(graph: &Path, cs: bool, as_json: bool) -> Result<Output, CliError> {
    let g = load(graph)?;
    if cs {
        let (string, pair) = cs_invariant_with_pair(&g);
        return Output::json(&json!({ "cs": string, "start": pair }));
    }
    let form = canonical_form(&g)?;
    if as_json {
        Output::json(&json!({ "hex": form.hex(), "order": form.order }))
    } else {
        Ok(Output::ok(form.hex()))
    }
}

fn run_iso(g: &Path, h: &Path) -> Result<Output, CliError> {
    let (g, h) = (load(g)?, load(h)?);
    if is_twinwidth_le1(&g).accepted && is_twinwidth_le1(&h).accepted {
        let (fg, fh) = (canonical_form(&g)?, canonical_form(&h)?);
        let map = (fg.encoding == fh.encoding).then(|| {
            let mut map = vec![0; g.n()];
            for (&a, &b) in fg.order.iter().zip(&fh.order) {
                map[a] = b;
            }
            map
        });
        if let Some(m) = &map {
            if !g.is_isomorphism(&h, m) {
                return Err(CanonError::InvariantViolation("canonical orders disagree".into()).into());
            }
        }
        return Output::json(&json!({
            "isomorphic": map.is_some(),
            "method": "tww1-canonical-form",
            "map": map,
        }));
    }
    let map = find_isomorphism(&g, &h);
    Output::json(&json!({
        "isomorphic": map.is_some(),
        "method": "individualization-refinement",
        "map": map,
    }))
}

fn run_wl(cmd: WlCommand) -> Result<Output, CliError> {
    match cmd {
        WlCommand::Refine { k, graph } => {
            let g = load(&graph)?;
            let c = wl_refine(&g, k)?;
            let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
            for size in c.histogram().into_values() {
                *sizes.entry(size).or_default() += 1;
            }
            let sizes: Vec<(usize, usize)> = sizes.into_iter().rev().collect();
            Output::json(&json!({
                "k": k,
                "n": g.n(),
                "rounds": c.rounds,
                "classes": c.class_count(),
                "class_size_histogram": sizes,
            }))
        }
        WlCommand::Distinguish { k, g, h } => {
            let verdict = wl_distinguish(&load(&g)?, &load(&h)?, k)?;
            Output::json(&json!({
                "k": k,
                "distinguished": verdict.distinguished(),
                "verdict": verdict,
            }))
        }
    }
}

fn view_report(g: &ColoredGraph, left: &[Vertex], right: &[Vertex], what: &str) -> Result<Value, CliError> {
    let view = BipartiteView::new(g, left, right).expect("sides were validated");
    let check = is_partial_half_graph(&view);
    let mut out = json!({
        "left": left,
        "right": right,
        "partial_half_graph": check.is_embedding(),
        "certificate": check,
    });
    if matches!(what, "chain" | "halfgraph") {
        out["rank"] = json!(gf2_rank(&Gf2Matrix::from_view(&view)));
        out["reduced_rank"] = json!(reduced_rank(&view));
        out["max_induced_half_graph"] = match max_induced_half_graph(&view) {
            Ok(w) => serde_json::to_value(w)?,
            Err(_) => Value::Null,
        };
    }
    if matches!(what, "chain" | "biclique") {
        let m = max_matching(&view);
        out["matching"] = json!({ "size": m.len(), "edges": m });
        out["max_balanced_biclique"] = match max_balanced_biclique_chain(&view) {
            Ok(w) => serde_json::to_value(w)?,
            Err(_) => Value::Null,
        };
    }
    Ok(out)
}

fn run_analyze(cmd: AnalyzeCommand) -> Result<Output, CliError> {
    match cmd {
        AnalyzeCommand::Chain(args) => side_command(&args, "chain"),
        AnalyzeCommand::Halfgraph(args) => side_command(&args, "halfgraph"),
        AnalyzeCommand::Biclique(args) => side_command(&args, "biclique"),
        AnalyzeCommand::Rank { graph, a, b } => {
            let g = load(&graph)?;
            BipartiteView::new(&g, &a, &b).map_err(|source| CliError::Graph {
                path: graph.clone(),
                source,
            })?;
            let kappa = if g.n() <= RANK_CONNECTIVITY_LIMIT {
                Some(rank_connectivity(&g, &a, &b)?)
            } else {
                None
            };
            Output::json(&json!({
                "rank": gf2_rank(&Gf2Matrix::biadjacency(&g, &a, &b)),
                "rank_connectivity": kappa,
            }))
        }
        AnalyzeCommand::Audit { file } => {
            let (g, seq) = load_sequence(&file)?;
            let report = audit_red_cuts(&g, &seq)?;
            let clean = report.violations.is_empty();
            let out = Output::json(&serde_json::to_value(&report)?)?;
            Ok(if clean { out } else { out.with_code(EXIT_ASSERTION) })
        }
    }
}

fn side_command(args: &SideArgs, what: &str) -> Result<Output, CliError> {
    let g = load(&args.graph)?;
    let (left, right) = sides(&g, args)?;
    Output::json(&view_report(&g, &left, &right, what)?)
}

fn run_experiment_cmd(args: ExperimentArgs) -> Result<Output, CliError> {
    let name: ExperimentName = args.name.parse()?;
    let mut spec = ExperimentSpec::new(name);
    spec.seed = args.seed;
    spec.k = args.k;
    spec.base = args.base;
    spec.transfer_base = (args.transfer_base != "none").then_some(args.transfer_base);
    spec.subdivision = args.s;
    if let Some(s) = args.samples {
        spec.samples = s;
    }
    if let Some(m) = args.max_n {
        spec.max_n = m;
    }
    spec.heuristic_budget = args.budget.budget();
    spec.out = args.out.clone();
    let report = run_experiment(&spec)?;
    let full = serde_json::to_string_pretty(&report)?;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)
            .and_then(|_| fs::write(dir.join(format!("{name}.json")), &full))
            .map_err(|e| CliError::Experiment(e.into()))?;
    }
    let text = if args.json {
        full
    } else {
        let mut lines: Vec<String> = report
            .checks
            .iter()
            .map(|c| {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let gate = if c.gated { "" } else { " (reported only)" };
                format!("{status} {}{gate}", c.name)
            })
            .collect();
        for b in &report.bundles {
            lines.push(format!("counterexample written to {}", b.display()));
        }
        lines.push(format!(
            "{name}: {} in {} ms",
            if report.passed { "passed" } else { "FAILED" },
            report.elapsed_ms
        ));
        lines.join("\n")
    };
    let out = Output::ok(text);
    Ok(if report.passed { out } else { out.with_code(EXIT_ASSERTION) })
}

fn run(cli: Cli) -> Result<Output, CliError> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Threads(e.to_string()))?;
    }
    match cli.command {
        Command::Gen(cmd) => run_gen(cmd),
        Command::Tww(cmd) => run_tww(cmd),
        Command::Canon { graph, cs, json } => run_canon(&graph, cs, json),
        Command::Iso { g, h } => run_iso(&g, &h),
        Command::RecognizeTww1 { graph } => {
            let r = is_twinwidth_le1(&load(&graph)?);
            Output::json(&json!({
                "accepted": r.accepted,
                "certificate": r.certificate.as_ref().map(merges_json),
            }))
        }
        Command::Modtree { graph } => Output::json(&serde_json::to_value(mod_tree(&load(&graph)?))?),
        Command::Wl(cmd) => run_wl(cmd),
        Command::Pebble { k, g, h } => {
            let verdict = pebble_game(&load(&g)?, &load(&h)?, k)?;
            Output::json(&json!({ "k": k, "verdict": verdict }))
        }
        Command::Analyze(cmd) => run_analyze(cmd),
        Command::Experiment(args) => run_experiment_cmd(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            // a closed pipe (for example `| head`) is not an error
            let _ = writeln!(io::stdout().lock(), "{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
