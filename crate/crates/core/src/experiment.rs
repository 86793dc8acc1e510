//! Reproducible experiment pipelines with JSON reports.
//!
//! Every experiment derives all randomness from [`ExperimentSpec::seed`]:
//! sample `i` uses stream `i` of a `ChaCha8Rng` seeded with it, so reports
//! are identical across runs and thread counts apart from
//! [`ExperimentReport::elapsed_ms`]. Samples run in parallel and are reported
//! in index order. Failed samples are written as counterexample bundles (one
//! directory with the graphs in the text format plus `params.json`).

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::ExperimentError;
use crate::format::render_graph;
use crate::generators::{
    cfi_pair, cubic_base, log_subdivision_length, random_tww1, random_tww1_pair, subdivide,
    PairFamily,
};
use crate::graph::{ColoredGraph, Vertex};
use crate::iso::are_isomorphic;
use crate::search::{heuristic_best, SearchBudget};
use crate::structure::{audit_red_cuts, gf2_rank, rank_connectivity, Gf2Matrix, RANK_CONNECTIVITY_LIMIT};
use crate::tww1::{canonical_form, is_twinwidth_le1};
use crate::wl::wl_distinguish;

/// Twin-width bound for logarithmic subdivisions, reported next to the
/// heuristic width.
pub const SUBDIVISION_TWW_BOUND: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentName {
    CfiSubdivisionWl,
    Tww1WlDimension,
    RedCutAudit,
    Lemma21Suite,
}

impl ExperimentName {
    pub const ALL: [ExperimentName; 4] = [
        ExperimentName::CfiSubdivisionWl,
        ExperimentName::Tww1WlDimension,
        ExperimentName::RedCutAudit,
        ExperimentName::Lemma21Suite,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentName::CfiSubdivisionWl => "cfi-subdivision-wl",
            ExperimentName::Tww1WlDimension => "tww1-wl-dimension",
            ExperimentName::RedCutAudit => "red-cut-audit",
            ExperimentName::Lemma21Suite => "lemma21-suite",
        }
    }
}

impl fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentName {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| ExperimentError::UnknownExperiment(s.to_string()))
    }
}

/// Parameters of one experiment run. Fields that an experiment does not use
/// are ignored by it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: ExperimentName,
    pub seed: u64,
    /// WL dimension that must fail on the CFI pair and its subdivision.
    pub k: usize,
    /// Cubic base graph of the CFI pair, as accepted by [`cubic_base`].
    pub base: String,
    /// Cubic base of the pair whose 1-subdivision is checked for
    /// `k`-WL equivalence after `(2k+1)`-WL equivalence of the pair itself.
    pub transfer_base: Option<String>,
    /// Subdivision length; defaults to `2 ceil(log2 n)` for the CFI order `n`.
    pub subdivision: Option<usize>,
    pub samples: usize,
    pub max_n: usize,
    pub heuristic_budget: SearchBudget,
    /// Directory for counterexample bundles; `counterexamples` if unset.
    pub out: Option<PathBuf>,
}

impl ExperimentSpec {
    /// Default parameters for `name`.
    pub fn new(name: ExperimentName) -> Self {
        let (samples, max_n) = match name {
            ExperimentName::CfiSubdivisionWl => (1, 0),
            ExperimentName::Tww1WlDimension => (100, 30),
            ExperimentName::RedCutAudit => (200, 40),
            ExperimentName::Lemma21Suite => (1000, 8),
        };
        Self {
            name,
            seed: 0,
            k: 1,
            base: "k4".into(),
            transfer_base: Some("petersen".into()),
            subdivision: None,
            samples,
            max_n,
            heuristic_budget: SearchBudget::default(),
            out: None,
        }
    }

    /// Checks the parameters used by the selected experiment.
    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |msg: String| Err(ExperimentError::InvalidSpec(msg));
        match self.name {
            ExperimentName::CfiSubdivisionWl => {
                if self.k == 0 {
                    return bad("k must be at least 1".into());
                }
                cubic_base(&self.base)?;
                if let Some(t) = &self.transfer_base {
                    cubic_base(t)?;
                }
                if self.subdivision == Some(0) {
                    return bad("subdivision length must be at least 1".into());
                }
            }
            ExperimentName::Tww1WlDimension => {
                if !(15..=60).contains(&self.max_n) {
                    return bad(format!("max_n must lie in 15..=60, got {}", self.max_n));
                }
            }
            ExperimentName::RedCutAudit => {
                if !(2..=500).contains(&self.max_n) {
                    return bad(format!("max_n must lie in 2..=500, got {}", self.max_n));
                }
            }
            ExperimentName::Lemma21Suite => {
                if !(3..=RANK_CONNECTIVITY_LIMIT).contains(&self.max_n) {
                    return bad(format!(
                        "max_n must lie in 3..={RANK_CONNECTIVITY_LIMIT}, got {}",
                        self.max_n
                    ));
                }
            }
        }
        if self.samples == 0 {
            return bad("samples must be at least 1".into());
        }
        Ok(())
    }

    fn bundle_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("counterexamples"))
    }
}

/// One named assertion of a report. Only gated checks decide `passed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub gated: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: ExperimentName,
    pub spec: ExperimentSpec,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub data: Value,
    pub bundles: Vec<PathBuf>,
    /// Wall-clock time; the only field that varies between identical runs.
    pub elapsed_ms: u128,
}

struct Outcome {
    checks: Vec<Check>,
    data: Value,
    failures: Vec<Bundle>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            checks: Vec::new(),
            data: json!({}),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, gated: bool, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            gated,
            passed,
        });
    }
}

/// A failed instance: named graphs and the parameters that produced them.
#[derive(Debug, Clone)]
pub struct Bundle {
    pub label: String,
    pub graphs: Vec<(String, ColoredGraph)>,
    pub params: Value,
}

/// Writes `b` to `dir/<experiment>-<label>/`: one `<name>.graph` file per
/// graph and `params.json`. Returns the bundle directory.
pub fn write_bundle(
    dir: &Path,
    experiment: ExperimentName,
    b: &Bundle,
) -> Result<PathBuf, ExperimentError> {
    let path = dir.join(format!("{experiment}-{}", b.label));
    fs::create_dir_all(&path)?;
    for (name, g) in &b.graphs {
        fs::write(path.join(format!("{name}.graph")), render_graph(g))?;
    }
    fs::write(path.join("params.json"), serde_json::to_string_pretty(&b.params)?)?;
    Ok(path)
}

/// Seed of sample `i`: the first word of stream `i` under `seed`.
pub fn sample_seed(seed: u64, i: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng.gen()
}

/// Runs the experiment described by `spec`. Assertion failures are reported
/// through [`ExperimentReport::passed`]; errors are reserved for invalid
/// parameters, exhausted budgets and I/O.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport, ExperimentError> {
    spec.validate()?;
    let start = Instant::now();
    let outcome = match spec.name {
        ExperimentName::CfiSubdivisionWl => cfi_subdivision_wl(spec)?,
        ExperimentName::Tww1WlDimension => tww1_wl_dimension(spec)?,
        ExperimentName::RedCutAudit => red_cut_audit(spec)?,
        ExperimentName::Lemma21Suite => lemma21_suite(spec)?,
    };
    let bundles = outcome
        .failures
        .iter()
        .map(|b| write_bundle(&spec.bundle_dir(), spec.name, b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExperimentReport {
        experiment: spec.name,
        spec: spec.clone(),
        passed: outcome.checks.iter().all(|c| !c.gated || c.passed),
        checks: outcome.checks,
        data: outcome.data,
        bundles,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn cfi_subdivision_wl(spec: &ExperimentSpec) -> Result<Outcome, ExperimentError> {
    let mut out = Outcome::new();
    let k = spec.k;
    let pair = cfi_pair(&cubic_base(&spec.base)?)?;
    let n = pair.even.n();
    let s = spec.subdivision.unwrap_or_else(|| log_subdivision_length(n));
    let order: Vec<Vertex> = (0..n).collect();
    let sub_even = subdivide(&pair.even, s, &order)?;
    let sub_odd = subdivide(&pair.odd, s, &order)?;

    let cfi_noniso = !are_isomorphic(&pair.even, &pair.odd);
    let cfi_equiv = !wl_distinguish(&pair.even, &pair.odd, k)?.distinguished();
    let sub_noniso = !are_isomorphic(&sub_even, &sub_odd);
    let sub_equiv = !wl_distinguish(&sub_even, &sub_odd, k)?.distinguished();
    out.check("cfi pair is non-isomorphic", true, cfi_noniso);
    out.check(&format!("cfi pair is {k}-WL equivalent"), true, cfi_equiv);
    out.check("subdivided pair is non-isomorphic", true, sub_noniso);
    out.check(&format!("subdivided pair is {k}-WL equivalent"), true, sub_equiv);

    let heuristic = heuristic_best(&sub_even, spec.heuristic_budget);
    let within = heuristic.width <= SUBDIVISION_TWW_BOUND;
    out.check("heuristic width within the subdivision bound", false, within);
    if !(cfi_noniso && cfi_equiv && sub_noniso && sub_equiv) {
        out.failures.push(Bundle {
            label: "pipeline".into(),
            graphs: vec![
                ("even".into(), pair.even.clone()),
                ("odd".into(), pair.odd.clone()),
                ("even-sub".into(), sub_even.clone()),
                ("odd-sub".into(), sub_odd.clone()),
            ],
            params: json!({ "k": k, "base": spec.base, "subdivision": s }),
        });
    }
    let mut data = json!({
        "base": spec.base,
        "k": k,
        "cfi": { "n": n, "m": pair.even.m() },
        "subdivision": { "s": s, "n": sub_even.n(), "m": sub_even.m() },
        "heuristic": {
            "width": heuristic.width,
            "bound": SUBDIVISION_TWW_BOUND,
            "candidates_scored": heuristic.candidates_scored,
        },
    });

    if let Some(tb) = &spec.transfer_base {
        let t = cfi_pair(&cubic_base(tb)?)?;
        let tk = 2 * k + 1;
        let tn = t.even.n();
        let order: Vec<Vertex> = (0..tn).collect();
        let (e1, o1) = (subdivide(&t.even, 1, &order)?, subdivide(&t.odd, 1, &order)?);
        let noniso = !are_isomorphic(&t.even, &t.odd);
        let equiv = !wl_distinguish(&t.even, &t.odd, tk)?.distinguished();
        let sub_equiv = !wl_distinguish(&e1, &o1, k)?.distinguished();
        out.check("transfer pair is non-isomorphic", true, noniso);
        out.check(&format!("transfer pair is {tk}-WL equivalent"), true, equiv);
        out.check(&format!("transfer 1-subdivision is {k}-WL equivalent"), true, sub_equiv);
        if !(noniso && equiv && sub_equiv) {
            out.failures.push(Bundle {
                label: "transfer".into(),
                graphs: vec![
                    ("even".into(), t.even.clone()),
                    ("odd".into(), t.odd.clone()),
                    ("even-sub".into(), e1.clone()),
                    ("odd-sub".into(), o1.clone()),
                ],
                params: json!({ "k": k, "transfer_base": tb }),
            });
        }
        data["transfer"] = json!({
            "base": tb,
            "n": tn,
            "pair_dimension": tk,
            "subdivision_n": e1.n(),
        });
    }
    out.data = data;
    Ok(out)
}

#[derive(Serialize)]
struct PairRecord {
    index: usize,
    family: PairFamily,
    n: usize,
    m: (usize, usize),
    attempts: u64,
    recognized: bool,
    oracle_agrees: bool,
    wl1: bool,
    wl2: bool,
    wl3: bool,
}

fn tww1_wl_dimension(spec: &ExperimentSpec) -> Result<Outcome, ExperimentError> {
    let records = (0..spec.samples)
        .into_par_iter()
        .map(|i| -> Result<(PairRecord, Option<Bundle>), ExperimentError> {
            let family = PairFamily::ALL[i % PairFamily::ALL.len()];
            let base_seed = sample_seed(spec.seed, i);
            let mut attempts = 0u64;
            let pair = loop {
                let pair = random_tww1_pair(family, spec.max_n, base_seed.wrapping_add(attempts))?;
                attempts += 1;
                if canonical_form(&pair.g)?.encoding != canonical_form(&pair.h)?.encoding {
                    break pair;
                }
                if attempts >= 1000 {
                    return Err(ExperimentError::InvalidSpec(format!(
                        "sample {i}: no non-isomorphic pair after {attempts} attempts"
                    )));
                }
            };
            let (g, h) = (&pair.g, &pair.h);
            let recognized = is_twinwidth_le1(g).accepted && is_twinwidth_le1(h).accepted;
            let oracle_agrees = !are_isomorphic(g, h);
            let rec = PairRecord {
                index: i,
                family,
                n: g.n(),
                m: (g.m(), h.m()),
                attempts,
                recognized,
                oracle_agrees,
                wl1: wl_distinguish(g, h, 1)?.distinguished(),
                wl2: wl_distinguish(g, h, 2)?.distinguished(),
                wl3: wl_distinguish(g, h, 3)?.distinguished(),
            };
            let bundle = (!(rec.recognized && rec.oracle_agrees && rec.wl3)).then(|| Bundle {
                label: format!("sample-{i}"),
                graphs: vec![("g".into(), g.clone()), ("h".into(), h.clone())],
                params: json!({ "seed": spec.seed, "index": i, "family": family, "max_n": spec.max_n }),
            });
            Ok((rec, bundle))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut out = Outcome::new();
    let count = |f: &dyn Fn(&PairRecord) -> bool| records.iter().filter(|(r, _)| f(r)).count();
    let recognized = count(&|r| r.recognized);
    let agrees = count(&|r| r.oracle_agrees);
    let (wl1, wl2, wl3) = (count(&|r| r.wl1), count(&|r| r.wl2), count(&|r| r.wl3));
    out.check("all sampled graphs have twin-width at most 1", true, recognized == records.len());
    out.check("isomorphism oracle confirms every pair", true, agrees == records.len());
    out.check("3-WL distinguishes every pair", true, wl3 == records.len());
    out.check("2-WL distinguishes every pair", false, wl2 == records.len());
    let families: Value = PairFamily::ALL
        .iter()
        .map(|&f| {
            let of = |pred: &dyn Fn(&PairRecord) -> bool| {
                records.iter().filter(|(r, _)| r.family == f && pred(r)).count()
            };
            (
                serde_json::to_value(f).unwrap().as_str().unwrap().to_string(),
                json!({
                    "pairs": of(&|_| true),
                    "wl1": of(&|r| r.wl1),
                    "wl2": of(&|r| r.wl2),
                    "wl3": of(&|r| r.wl3),
                }),
            )
        })
        .collect::<serde_json::Map<_, _>>()
        .into();
    let (recs, bundles): (Vec<PairRecord>, Vec<Option<Bundle>>) = records.into_iter().unzip();
    out.data = json!({
        "pairs": recs.len(),
        "distinguished": { "wl1": wl1, "wl2": wl2, "wl3": wl3 },
        "families": families,
        "samples": recs,
    });
    out.failures = bundles.into_iter().flatten().collect();
    Ok(out)
}

fn red_cut_audit(spec: &ExperimentSpec) -> Result<Outcome, ExperimentError> {
    let rows = (0..spec.samples)
        .into_par_iter()
        .map(|i| -> Result<(Value, bool, Option<Bundle>), ExperimentError> {
            let s = sample_seed(spec.seed, i);
            let n = 2 + (s % (spec.max_n as u64 - 1)) as usize;
            let g = random_tww1(n, s)?;
            let rec = is_twinwidth_le1(&g);
            let Some(seq) = rec.certificate else {
                let bundle = Bundle {
                    label: format!("sample-{i}"),
                    graphs: vec![("g".into(), g.clone())],
                    params: json!({ "seed": spec.seed, "index": i, "reason": "not recognized" }),
                };
                return Ok((json!({ "index": i, "n": n, "recognized": false }), false, Some(bundle)));
            };
            let report = audit_red_cuts(&g, &seq)?;
            let ok = report.violations.is_empty();
            let bundle = (!ok).then(|| Bundle {
                label: format!("sample-{i}"),
                graphs: vec![("g".into(), g.clone())],
                params: json!({
                    "seed": spec.seed,
                    "index": i,
                    "sequence": seq,
                    "violations": report.violations,
                }),
            });
            let row = json!({
                "index": i,
                "n": n,
                "recognized": true,
                "steps": report.steps,
                "pairs_checked": report.pairs_checked,
                "violations": report.violations.len(),
            });
            Ok((row, ok, bundle))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Outcome::new();
    let clean = rows.iter().filter(|r| r.1).count();
    let pairs: u64 = rows.iter().filter_map(|r| r.0["pairs_checked"].as_u64()).sum();
    out.check("every red cut is a partial half-graph", true, clean == rows.len());
    out.data = json!({
        "sequences": rows.len(),
        "clean": clean,
        "pairs_checked": pairs,
        "samples": rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
    });
    out.failures = rows.into_iter().filter_map(|r| r.2).collect();
    Ok(out)
}

/// A random graph with three disjoint nonempty vertex sets.
#[derive(Debug, Clone)]
pub struct Triple {
    pub graph: ColoredGraph,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub c: Vec<Vertex>,
}

/// Random instance for the rank-connectivity suite: `3 <= n <= max_n`, edge
/// density uniform in `[0.2, 0.8]`, and `A`, `B`, `C` disjoint and nonempty.
pub fn random_triple(max_n: usize, seed: u64) -> Triple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=max_n);
    let p: f64 = rng.gen_range(0.2..=0.8);
    let edges: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    let mut vs: Vec<Vertex> = (0..n).collect();
    vs.shuffle(&mut rng);
    let mut sets = [vec![vs[0]], vec![vs[1]], vec![vs[2]], Vec::new()];
    for &v in &vs[3..] {
        sets[rng.gen_range(0..4)].push(v);
    }
    for s in sets.iter_mut() {
        s.sort_unstable();
    }
    let [a, b, c, _] = sets;
    Triple {
        graph: ColoredGraph::from_edges_unchecked(n, edges),
        a,
        b,
        c,
    }
}

/// Values of the rank-connectivity inequalities on one triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleValues {
    pub kappa_a_b: usize,
    pub kappa_a_bc: usize,
    pub kappa_minus_c_a_b: usize,
    pub kappa_minus_b_a_c: usize,
    pub rank_a_b: usize,
    pub rank_a_c: usize,
    pub rank_a_bc: usize,
}

impl TripleValues {
    pub fn monotone(&self) -> bool {
        self.kappa_a_b <= self.kappa_a_bc
    }

    pub fn subadditive(&self) -> bool {
        self.kappa_a_bc <= self.kappa_minus_c_a_b + self.kappa_minus_b_a_c
    }

    pub fn rank_subadditive(&self) -> bool {
        self.rank_a_bc <= self.rank_a_b + self.rank_a_c
    }
}

fn without(t: &Triple, drop: &[Vertex]) -> (ColoredGraph, Vec<Vertex>) {
    let keep: Vec<Vertex> = t.graph.vertices().filter(|v| !drop.contains(v)).collect();
    let (h, map) = t.graph.induced_subgraph(&keep);
    let mut index = vec![usize::MAX; t.graph.n()];
    for (new, &old) in map.iter().enumerate() {
        index[old] = new;
    }
    (h, index)
}

pub fn triple_values(t: &Triple) -> Result<TripleValues, ExperimentError> {
    let g = &t.graph;
    let bc: Vec<Vertex> = t.b.iter().chain(&t.c).copied().collect();
    let remap = |idx: &[usize], s: &[Vertex]| s.iter().map(|&v| idx[v]).collect::<Vec<_>>();
    let (g_c, ic) = without(t, &t.c);
    let (g_b, ib) = without(t, &t.b);
    let rank = |x: &[Vertex], y: &[Vertex]| gf2_rank(&Gf2Matrix::biadjacency(g, x, y));
    Ok(TripleValues {
        kappa_a_b: rank_connectivity(g, &t.a, &t.b)?,
        kappa_a_bc: rank_connectivity(g, &t.a, &bc)?,
        kappa_minus_c_a_b: rank_connectivity(&g_c, &remap(&ic, &t.a), &remap(&ic, &t.b))?,
        kappa_minus_b_a_c: rank_connectivity(&g_b, &remap(&ib, &t.a), &remap(&ib, &t.c))?,
        rank_a_b: rank(&t.a, &t.b),
        rank_a_c: rank(&t.a, &t.c),
        rank_a_bc: rank(&t.a, &bc),
    })
}

fn lemma21_suite(spec: &ExperimentSpec) -> Result<Outcome, ExperimentError> {
    let rows = (0..spec.samples)
        .into_par_iter()
        .map(|i| -> Result<(Triple, TripleValues), ExperimentError> {
            let t = random_triple(spec.max_n, sample_seed(spec.seed, i));
            let v = triple_values(&t)?;
            Ok((t, v))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Outcome::new();
    let bad = |f: fn(&TripleValues) -> bool| rows.iter().filter(|r| !f(&r.1)).count();
    let (mono, sub, rank) = (
        bad(TripleValues::monotone),
        bad(TripleValues::subadditive),
        bad(TripleValues::rank_subadditive),
    );
    out.check("rank-connectivity is monotone", true, mono == 0);
    out.check("rank-connectivity is subadditive", true, sub == 0);
    out.check("cut rank is subadditive", true, rank == 0);
    out.data = json!({
        "triples": rows.len(),
        "violations": { "monotone": mono, "subadditive": sub, "rank_subadditive": rank },
    });
    for (i, (t, v)) in rows.into_iter().enumerate() {
        if !(v.monotone() && v.subadditive() && v.rank_subadditive()) {
            out.failures.push(Bundle {
                label: format!("sample-{i}"),
                graphs: vec![("g".into(), t.graph.clone())],
                params: json!({ "seed": spec.seed, "index": i, "a": t.a, "b": t.b, "c": t.c, "values": v }),
            });
        }
    }
    Ok(out)
}
