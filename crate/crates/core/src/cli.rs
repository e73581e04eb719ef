//! The `phc` command line. Each invocation runs one subcommand, prints a text
//! or JSON-lines result, and appends one record to the journal.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 budget exhausted,
//! 4 structured failure (no witness, sampler gave up, box not canonical),
//! 5 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::boundedness::{check_conflict_bound, conflict_census, is_bounded, ConflictBound, DeltaVec};
use crate::canonical::{classify_box, is_j_canonical};
use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::extremal::{
    assumption_holds, count_complete_boxes, count_lower_bound, extract_complete_box, ExtractMode, ExtremalInstance,
};
use crate::hypergraph::{ColouredHypergraph, PartiteHypergraph};
use crate::io;
use crate::journal::{self, JournalRecord, DEFAULT_JOURNAL, JOURNAL_ENV};
use crate::oracle::{er_number, AvoiderSearch, Checkpoint, SearchStatus, random_lb_experiment};
use crate::partite::{Budget, ClassSizes, JSet};
use crate::pipeline::{find_canonical_copy, FailedStep, PipelineConfig, PipelineResult, DEFAULT_NODE_BUDGET};
use crate::rainbow::{check_simplerain, sample_rainbow_box, sample_rainbow_dense, DEFAULT_RETRIES};
use crate::schedule::{build_schedule, minimal_valid_t, verify_inequalities, Variant};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_FAILURE: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "phc", version, about = "Canonical Ramsey tools for partite hypergraphs")]
pub struct Cli {
    /// Output style: plain text or one JSON object per line.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Journal file receiving one JSON line per run.
    #[arg(long, env = JOURNAL_ENV, default_value = DEFAULT_JOURNAL, global = true)]
    pub journal: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Report every J for which a box is J-canonical.
    Verify(VerifyArgs),
    /// Boundedness report against a delta vector.
    Classify(ClassifyArgs),
    /// Same-colour pairs by exact agreement set.
    Census(CensusArgs),
    /// Count or extract complete sub-boxes of a hypergraph.
    Extract(ExtractArgs),
    /// Sample a rainbow t-box from a colouring.
    Rainbow(RainbowArgs),
    /// Sample a dense rainbow subhypergraph.
    RainbowDense(RainbowDenseArgs),
    /// Run the full case analysis to a canonical witness.
    Pipeline(PipelineArgs),
    /// Build the constant schedule and check its inequalities.
    Schedule(ScheduleArgs),
    /// Exhaustive search for colourings without canonical copies.
    ErSearch(ErSearchArgs),
    /// Hit rate of canonical copies in random colourings.
    RandomLb(RandomLbArgs),
    /// Write a colouring or hypergraph file.
    Generate(GenerateArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub colouring: PathBuf,
    /// Box or witness file.
    #[arg(long = "box")]
    pub sub_box: PathBuf,
    /// Check only this set, as comma-separated 1-based labels (empty for J = ∅).
    #[arg(long)]
    pub j: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub colouring: PathBuf,
    /// Comma-separated δ_0, …, δ_{k-1}, e.g. `1/2,1/3`.
    #[arg(long)]
    pub delta: String,
}

#[derive(Args, Debug, Serialize)]
pub struct CensusArgs {
    #[arg(long)]
    pub colouring: PathBuf,
    /// Also check the pair bound for every bounded J against δ_{|J|}.
    #[arg(long)]
    pub delta: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    ProofGuided,
    Exhaustive,
}

impl From<ModeArg> for ExtractMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::ProofGuided => ExtractMode::ProofGuided,
            ModeArg::Exhaustive => ExtractMode::Exhaustive,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ExtractArgs {
    #[arg(long)]
    pub hypergraph: PathBuf,
    /// One size for every class, or one per class separated by commas.
    #[arg(long)]
    pub t: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    /// Also report the exact count, the lower bound and its hypothesis.
    #[arg(long)]
    pub count: bool,
    /// Write the box here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct RainbowArgs {
    #[arg(long)]
    pub colouring: PathBuf,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_RETRIES)]
    pub retries: usize,
    /// Report the sampler hypothesis for this delta vector.
    #[arg(long)]
    pub delta: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct RainbowDenseArgs {
    #[arg(long)]
    pub hypergraph: PathBuf,
    /// Colours for the hypergraph's edges; only those edges are read.
    #[arg(long)]
    pub colouring: PathBuf,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_RETRIES)]
    pub retries: usize,
    #[arg(long)]
    pub delta: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct PipelineArgs {
    #[arg(long)]
    pub colouring: PathBuf,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub delta: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_RETRIES)]
    pub retries: usize,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    /// Dense-sampler class size for levels j* ≥ 2.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ScheduleArgs {
    #[arg(long)]
    pub k: usize,
    /// Check the schedule at this t.
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long, default_value = "general")]
    pub variant: Variant,
    /// Find the least valid t up to this bound.
    #[arg(long)]
    pub scan: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct ErSearchArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub t: usize,
    /// Search a single size.
    #[arg(long)]
    pub n: Option<usize>,
    /// Scan n = 1, 2, … up to this bound for the Erdős–Rado number.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    /// Where to save the search position if the budget runs out.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Continue a saved search.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Write the avoider colouring here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct RandomLbArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub palette: u64,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    Constant,
    Injective,
    Random,
    /// Colour of an edge is its vertex in class 1.
    Projection,
    /// A random hypergraph with edge probability `--p`.
    Hypergraph,
}

#[derive(Args, Debug, Serialize)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub palette: u64,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok,
    Failure,
    Budget,
}

struct Outcome {
    status: Status,
    summary: String,
    text: String,
    json: Value,
    seed: Option<u64>,
    nodes: Option<u64>,
}

impl Outcome {
    fn ok(summary: impl Into<String>, text: String, json: Value) -> Self {
        Outcome { status: Status::Ok, summary: summary.into(), text, json, seed: None, nodes: None }
    }

    fn status(mut self, s: Status) -> Self {
        self.status = s;
        self
    }

    fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn nodes(mut self, nodes: u64) -> Self {
        self.nodes = Some(nodes);
        self
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Classify(_) => "classify",
            Command::Census(_) => "census",
            Command::Extract(_) => "extract",
            Command::Rainbow(_) => "rainbow",
            Command::RainbowDense(_) => "rainbow-dense",
            Command::Pipeline(_) => "pipeline",
            Command::Schedule(_) => "schedule",
            Command::ErSearch(_) => "er-search",
            Command::RandomLb(_) => "random-lb",
            Command::Generate(_) => "generate",
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{rendered}") } else { write!(stdout, "{rendered}") };
            if code == EXIT_USAGE {
                let record = JournalRecord {
                    command: "usage".into(),
                    params: Value::Null,
                    seed: None,
                    outcome: format!("error: {}", e.kind()),
                    nodes: None,
                    wall_ms: 0,
                };
                let _ = journal::append(&journal_flag(&args).unwrap_or_else(journal::default_path), &record);
            }
            return code;
        }
    };
    let start = Instant::now();
    let result = execute(&cli.command);
    let wall_ms = start.elapsed().as_millis() as u64;
    let (code, record_outcome, seed, nodes) = match &result {
        Ok(o) => {
            let _ = match cli.format {
                Format::Text => write!(stdout, "{}", o.text),
                Format::Structured => writeln!(stdout, "{}", o.json),
            };
            let code = match o.status {
                Status::Ok => EXIT_OK,
                Status::Failure => EXIT_FAILURE,
                Status::Budget => EXIT_BUDGET,
            };
            (code, o.summary.clone(), o.seed, o.nodes)
        }
        Err(e) => {
            let code = match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                Error::Io(_) => EXIT_IO,
                _ => EXIT_USAGE,
            };
            let _ = writeln!(stderr, "error: {e}");
            if cli.format == Format::Structured {
                let _ = writeln!(stdout, "{}", json!({"error": e.to_string(), "exit": code}));
            }
            (code, format!("error: {e}"), None, None)
        }
    };
    let record = JournalRecord {
        command: cli.command.name().into(),
        params: serde_json::to_value(&cli.command).unwrap_or(Value::Null),
        seed,
        outcome: record_outcome,
        nodes,
        wall_ms,
    };
    if let Err(e) = journal::append(&cli.journal, &record) {
        let _ = writeln!(stderr, "error: journal: {e}");
        if code == EXIT_OK {
            return EXIT_IO;
        }
    }
    code
}

/// `--journal PATH` or `--journal=PATH` from raw arguments that failed to parse.
fn journal_flag(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().map(|a| a.to_string_lossy());
    while let Some(a) = it.next() {
        if a == "--journal" {
            return it.next().map(|p| PathBuf::from(p.as_ref()));
        }
        if let Some(p) = a.strip_prefix("--journal=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let out = std::io::stdout();
    let err = std::io::stderr();
    run(std::env::args_os(), &mut out.lock(), &mut err.lock())
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Verify(a) => verify(a),
        Command::Classify(a) => classify(a),
        Command::Census(a) => census(a),
        Command::Extract(a) => extract(a),
        Command::Rainbow(a) => rainbow(a),
        Command::RainbowDense(a) => rainbow_dense(a),
        Command::Pipeline(a) => pipeline(a),
        Command::Schedule(a) => schedule(a),
        Command::ErSearch(a) => er_search(a),
        Command::RandomLb(a) => random_lb(a),
        Command::Generate(a) => generate(a),
    }
}

fn seed_or_random(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

fn parse_delta(s: &str) -> Result<DeltaVec> {
    s.parse()
}

fn parse_labels(s: &str) -> Result<JSet> {
    let labels = s
        .split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| w.parse::<usize>().map_err(|_| Error::InvalidParameter(format!("bad class label `{w}`"))))
        .collect::<Result<Vec<_>>>()?;
    JSet::from_labels(labels)
}

fn parse_t(s: &str, k: usize) -> Result<Vec<usize>> {
    let v = s
        .split(',')
        .map(|w| w.trim().parse::<usize>().map_err(|_| Error::InvalidParameter(format!("bad size `{w}`"))))
        .collect::<Result<Vec<_>>>()?;
    match v.len() {
        1 => Ok(vec![v[0]; k]),
        n if n == k => Ok(v),
        n => Err(Error::InvalidParameter(format!("{n} sizes given for k = {k}"))),
    }
}

fn labels_text(j: JSet) -> String {
    j.to_string()
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let col = io::load_colouring(&a.colouring)?;
    let b = io::load_box(&a.sub_box)?;
    let sets = match &a.j {
        Some(s) => {
            let j = parse_labels(s)?;
            if is_j_canonical(&col, &b, j)?.is_some() { vec![j] } else { vec![] }
        }
        None => classify_box(&col, &b)?,
    };
    let listed: Vec<String> = sets.iter().map(|&j| labels_text(j)).collect();
    let text = if sets.is_empty() {
        "not canonical\n".to_string()
    } else {
        format!("canonical for J in {}\n", listed.join(" "))
    };
    let json = json!({
        "canonical": !sets.is_empty(),
        "j_sets": sets.iter().map(|j| j.labels()).collect::<Vec<_>>(),
    });
    let status = if sets.is_empty() { Status::Failure } else { Status::Ok };
    Ok(Outcome::ok(text.trim_end().to_string(), text, json).status(status))
}

fn classify(a: &ClassifyArgs) -> Result<Outcome> {
    let col = io::load_colouring(&a.colouring)?;
    let dv = parse_delta(&a.delta)?;
    let r = is_bounded(&col, &dv)?;
    let summary = match (r.j_star, r.j_star_set) {
        (Some(j), Some(s)) => format!("j* = {j}, J* = {s}"),
        _ => "bounded".into(),
    };
    Ok(Outcome::ok(summary, r.to_text(), r.to_json()))
}

fn census(a: &CensusArgs) -> Result<Outcome> {
    let col = io::load_colouring(&a.colouring)?;
    let c = conflict_census(&col);
    let mut text = c.to_text();
    let mut json = c.to_json();
    if let Some(d) = &a.delta {
        let dv = parse_delta(d)?;
        let k = col.sizes().k();
        if dv.len() != k {
            return Err(Error::InvalidParameter(format!("delta vector has {} entries, k = {k}", dv.len())));
        }
        let mut bounds = Vec::new();
        for j in JSet::proper_subsets(k) {
            let verdict = check_conflict_bound(&col, j, dv.get(j.len()))?;
            let (label, detail) = match &verdict {
                ConflictBound::Holds { pairs, bound } => ("holds", format!("{pairs} <= {bound}")),
                ConflictBound::Violated { pairs, bound } => ("violated", format!("{pairs} > {bound}")),
                ConflictBound::Inapplicable { bad, allowed } => {
                    ("inapplicable", format!("{bad} bad tuples, {allowed} allowed"))
                }
            };
            text.push_str(&format!("bound {} {label} {detail}\n", labels_text(j)));
            bounds.push(json!({"j": j.labels(), "verdict": label, "detail": detail}));
        }
        json["bounds"] = Value::Array(bounds);
    }
    Ok(Outcome::ok(format!("{} conflict pairs", c.total()), text, json))
}

fn box_json(b: &crate::partite::SubBox) -> Value {
    json!(b.classes())
}

fn extract(a: &ExtractArgs) -> Result<Outcome> {
    let h = io::load_hypergraph(&a.hypergraph)?;
    let t = parse_t(&a.t, h.sizes().k())?;
    let inst = ExtremalInstance::new(h, t)?;
    let mut budget = Budget::new(a.node_budget);
    let mut text = String::new();
    let mut json = json!({"mode": a.mode});
    if a.count {
        let count = count_complete_boxes(&inst, &mut budget)?;
        let lb = count_lower_bound(&inst);
        let check = assumption_holds(&inst);
        text.push_str(&format!(
            "count {count}\nlower_bound {lb}\nassumption {} per_class {:?}\n",
            if check.holds() { "holds" } else { "fails" },
            check.per_class
        ));
        json["count"] = json!(count.to_string());
        json["lower_bound"] = json!(lb.to_string());
        json["assumption_holds"] = json!(check.holds());
        json["assumption_per_class"] = json!(check.per_class);
    }
    let found = extract_complete_box(&inst, a.mode.into(), &mut budget)?;
    json["box"] = found.as_ref().map(box_json).unwrap_or(Value::Null);
    json["nodes"] = json!(budget.used());
    let status = match &found {
        Some(b) => {
            let rendered = io::write_box(b);
            if let Some(p) = &a.out {
                io::write_file(p, &rendered)?;
            }
            text.push_str(&rendered);
            Status::Ok
        }
        None => {
            text.push_str("no complete box\n");
            Status::Failure
        }
    };
    let summary = if found.is_some() { "box found" } else { "no box" };
    Ok(Outcome::ok(summary, text, json).status(status).nodes(budget.used()))
}

fn rainbow(a: &RainbowArgs) -> Result<Outcome> {
    let col = io::load_colouring(&a.colouring)?;
    let seed = seed_or_random(a.seed);
    let run = sample_rainbow_box(&col, a.t, seed, a.retries)?;
    let mut json = run.to_json();
    let mut text = format!("seed {seed}\nattempts {}\n", run.attempts.len());
    if let Some(d) = &a.delta {
        let levels = check_simplerain(&parse_delta(d)?, a.t, col.sizes())?;
        text.push_str(&format!("hypothesis {levels:?}\n"));
        json["hypothesis"] = json!(levels);
    }
    let status = match &run.result {
        Some(r) => {
            let rendered = io::write_box(&r.sub_box);
            if let Some(p) = &a.out {
                io::write_file(p, &rendered)?;
            }
            text.push_str(&format!("deletions {}\n{rendered}", r.diagnostics.deletions));
            Status::Ok
        }
        None => {
            text.push_str("no rainbow box\n");
            Status::Failure
        }
    };
    let summary = if run.succeeded() { "rainbow box" } else { "sampler exhausted" };
    Ok(Outcome::ok(summary, text, json).status(status).seed(seed))
}

fn rainbow_dense(a: &RainbowDenseArgs) -> Result<Outcome> {
    let h = io::load_hypergraph(&a.hypergraph)?;
    let col = io::load_colouring(&a.colouring)?;
    let ch = ColouredHypergraph::restrict_colouring(&col, &h)?;
    let dv = a.delta.as_deref().map(parse_delta).transpose()?;
    let seed = seed_or_random(a.seed);
    let run = sample_rainbow_dense(&ch, a.m, dv.as_ref(), seed, a.retries)?;
    let mut text = format!("seed {seed}\nattempts {}\n", run.attempts.len());
    if let Some(f) = &run.feasibility {
        text.push_str(&format!("feasible {}\n", f.holds()));
    }
    if let Some(n) = &run.note {
        text.push_str(&format!("note {n}\n"));
    }
    let status = match &run.result {
        Some(r) => {
            text.push_str(&io::write_box(&r.sub_box));
            text.push_str(&format!("edges {}\n", r.edges.as_ref().map_or(0, Vec::len)));
            Status::Ok
        }
        None => {
            text.push_str("no rainbow sample\n");
            Status::Failure
        }
    };
    let summary = if run.succeeded() { "rainbow sample" } else { "sampler exhausted" };
    Ok(Outcome::ok(summary, text, run.to_json()).status(status).seed(seed))
}

fn pipeline(a: &PipelineArgs) -> Result<Outcome> {
    let col = io::load_colouring(&a.colouring)?;
    let dv = parse_delta(&a.delta)?;
    let seed = seed_or_random(a.seed);
    let config = PipelineConfig { retries: a.retries, node_budget: a.node_budget, m: a.m };
    let out = find_canonical_copy(&col, a.t, &dv, seed, &config)?;
    let trace = out.trace.to_json();
    if let Some(p) = &a.trace_out {
        io::write_file(p, &format!("{trace}\n"))?;
    }
    let nodes = out.trace.extraction.as_ref().map_or(0, |x| x.nodes);
    let branch = out.trace.branch.map(|b| serde_json::to_value(b).expect("serializes"));
    let mut text = format!("seed {seed}\nbranch {}\n", branch.clone().unwrap_or(Value::Null));
    let (status, summary, json) = match &out.result {
        PipelineResult::Witness(w) => {
            let rendered = io::write_witness(w);
            if let Some(p) = &a.witness_out {
                io::write_file(p, &rendered)?;
            }
            text.push_str(&rendered);
            let json = json!({"seed": seed, "witness": {"j": w.j_set.labels(), "box": box_json(&w.sub_box)}, "trace": trace});
            (Status::Ok, format!("witness J = {}", w.j_set), json)
        }
        PipelineResult::Failure(f) => {
            text.push_str(&format!("failure {:?} in {:?}: {}\n", f.step, f.branch, f.message));
            let json = json!({"seed": seed, "failure": f, "trace": trace});
            let status = if f.step == FailedStep::BudgetExhausted { Status::Budget } else { Status::Failure };
            (status, format!("failure {:?}", f.step), json)
        }
    };
    Ok(Outcome::ok(summary, text, json).status(status).seed(seed).nodes(nodes))
}

fn schedule(a: &ScheduleArgs) -> Result<Outcome> {
    let mut text = String::new();
    let mut json = json!({"k": a.k, "variant": a.variant});
    let mut target = a.t;
    if let Some(t_max) = a.scan {
        let found = minimal_valid_t(a.k, a.variant, t_max)?;
        text.push_str(&match found {
            Some(t) => format!("minimal_valid_t {t}\n"),
            None => format!("minimal_valid_t none up to {t_max}\n"),
        });
        json["scan_max"] = json!(t_max);
        json["minimal_valid_t"] = json!(found);
        target = target.or(found);
    }
    let summary;
    match target {
        Some(t) => {
            let report = verify_inequalities(&build_schedule(a.k, t, a.variant)?);
            text.push_str(&report.to_text());
            summary = format!("t = {t}: {}", if report.all_hold() { "all hold" } else { "some fail" });
            json["report"] = report.to_json();
        }
        None if a.scan.is_some() => summary = "no valid t".into(),
        None => return Err(Error::InvalidParameter("give --t, --scan or both".into())),
    }
    Ok(Outcome::ok(summary, text, json))
}

fn er_search(a: &ErSearchArgs) -> Result<Outcome> {
    let mut budget = Budget::new(a.node_budget);
    match (a.n, a.n_max) {
        (Some(n), None) => {
            let mut search = match &a.resume {
                Some(p) => {
                    let cp: Checkpoint = serde_json::from_str(&io::read_to_string(p)?)
                        .map_err(|e| Error::Parse { line: 0, message: e.to_string() })?;
                    if (cp.k, cp.t, cp.n) != (a.k, a.t, n) {
                        return Err(Error::InvalidParameter("checkpoint is for different k, t, n".into()));
                    }
                    AvoiderSearch::resume(&cp)?
                }
                None => AvoiderSearch::new(a.k, a.t, n, true)?,
            };
            let status = search.run(&mut budget);
            let stats = search.stats().clone();
            let mut json = json!({"k": a.k, "t": a.t, "n": n, "stats": stats});
            let (st, summary, mut text) = match status {
                SearchStatus::Found(assign) => {
                    let col = search.colouring(&assign);
                    let rendered = io::write_colouring(&col);
                    if let Some(p) = &a.out {
                        io::write_file(p, &rendered)?;
                    }
                    json["avoider"] = json!(assign);
                    (Status::Ok, "avoider found".to_string(), format!("avoider found\n{rendered}"))
                }
                SearchStatus::Exhausted => {
                    json["avoider"] = Value::Null;
                    (Status::Ok, "no avoider".into(), format!("no avoider: every colouring of K_{n} has a canonical copy\n"))
                }
                SearchStatus::OutOfBudget => {
                    if let Some(p) = &a.checkpoint {
                        let cp = serde_json::to_string(&search.checkpoint()).expect("serializes");
                        io::write_file(p, &format!("{cp}\n"))?;
                    }
                    json["budget_exhausted"] = json!(true);
                    (Status::Budget, "budget exhausted".into(), "budget exhausted\n".into())
                }
            };
            text.push_str(&format!(
                "nodes {} pruned {} leaves {}\n",
                stats.nodes, stats.pruned, stats.leaves
            ));
            Ok(Outcome::ok(summary, text, json).status(st).nodes(stats.nodes))
        }
        (None, Some(n_max)) => {
            let scan = match er_number(a.k, a.t, n_max, &mut budget) {
                Ok(s) => s,
                Err(Error::BudgetExceeded { .. }) => {
                    let json = json!({"k": a.k, "t": a.t, "n_max": n_max, "budget_exhausted": true});
                    return Ok(Outcome::ok("budget exhausted", "budget exhausted\n".into(), json)
                        .status(Status::Budget)
                        .nodes(budget.used()));
                }
                Err(e) => return Err(e),
            };
            let text = match scan.value {
                Some(v) => format!(
                    "ER = {v}\navoiders at n = {:?}\nn + 1 confirmed {:?}\n",
                    scan.avoided, scan.next_confirmed
                ),
                None => format!("ER > {n_max}\navoiders at n = {:?}\n", scan.avoided),
            };
            let summary = match scan.value {
                Some(v) => format!("ER = {v}"),
                None => format!("ER > {n_max}"),
            };
            let json = json!({"k": a.k, "t": a.t, "n_max": n_max, "scan": scan});
            Ok(Outcome::ok(summary, text, json).nodes(scan.nodes))
        }
        _ => Err(Error::InvalidParameter("give exactly one of --n and --n-max".into())),
    }
}

fn random_lb(a: &RandomLbArgs) -> Result<Outcome> {
    let seed = seed_or_random(a.seed);
    let r = random_lb_experiment(a.k, a.t, a.n, a.palette, a.trials, seed)?;
    let text = format!(
        "trials {} hits {} rate {:.6} radius {:.6}\n",
        r.trials,
        r.hits,
        r.hit_rate(),
        r.confidence_radius()
    );
    let mut json = serde_json::to_value(&r).expect("serializes");
    json["hit_rate"] = json!(r.hit_rate());
    json["confidence_radius"] = json!(r.confidence_radius());
    Ok(Outcome::ok(format!("rate {:.6}", r.hit_rate()), text, json).seed(seed))
}

fn generate(a: &GenerateArgs) -> Result<Outcome> {
    let sizes = ClassSizes::uniform(a.k, a.n)?;
    let seed = seed_or_random(a.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rendered = match a.kind {
        GenKind::Constant => io::write_colouring(&Colouring::constant(sizes, 0)),
        GenKind::Injective => io::write_colouring(&Colouring::injective(sizes)),
        GenKind::Random => {
            if a.palette == 0 {
                return Err(Error::InvalidParameter("palette must be positive".into()));
            }
            io::write_colouring(&Colouring::random(sizes, a.palette, &mut rng))
        }
        GenKind::Projection => io::write_colouring(&Colouring::from_fn(sizes, |e| e[0] as Colour)),
        GenKind::Hypergraph => {
            if !(0.0..=1.0).contains(&a.p) {
                return Err(Error::InvalidParameter("p must lie in [0, 1]".into()));
            }
            io::write_hypergraph(&PartiteHypergraph::random(sizes, a.p, &mut rng))
        }
    };
    if let Some(p) = &a.out {
        io::write_file(p, &rendered)?;
    }
    let json = json!({"kind": a.kind, "seed": seed, "file": rendered});
    let text = if a.out.is_some() { String::new() } else { rendered };
    Ok(Outcome::ok("generated", text, json).seed(seed))
}

/// Convenience for tests and examples: runs `phc` with arguments, capturing
/// output.
pub fn run_captured(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("phc").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

