//! The `chipfire` command line.
//!
//! Exit codes: 0 for yes/true, 1 for no/false, 2 for usage and input
//! errors, 3 when a budget ran out before an answer was found.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::Run;
use crate::gen;
use crate::graph::Digraph;
use crate::halting::{
    decide_halting, make_halting_certificate, verify_halting_certificate, HaltingCertificate, HaltingResult,
};
use crate::linalg::{per, sink_periods};
use crate::reach::{
    is_recurrent, reach_decide, reach_oracle_bfs, reach_with_method, reachable_distributions,
    verify_nonreach_certificate, Budget, Method, ReachCertificate, ReachResult, Verdict, Witness,
};
use crate::vector::ChipDistribution;

/// Environment variable overriding the default step and state caps.
pub const BUDGET_ENV: &str = "CHIPFIRE_DEFAULT_BUDGET";

/// Witnesses longer than this are written in block form.
const EXPAND_LIMIT: u64 = 1_000_000;

const EXIT_YES: i32 = 0;
const EXIT_NO: i32 = 1;
const EXIT_ERROR: i32 = 2;
const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "chipfire", version, about = "Chip-firing reachability and halting on directed multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether one distribution can reach another.
    Reach {
        #[arg(long)]
        graph: PathBuf,
        /// Distribution, inline ("1 0 2") or a file.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Write the witness game here on a positive answer.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Write the non-reachability certificate here on a negative answer.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        step_cap: Option<u64>,
        #[arg(long)]
        state_cap: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a distribution is recurrent on a strongly connected graph.
    Recurrent {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        dist: String,
        #[arg(long)]
        step_cap: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether every game from a distribution terminates.
    Halt {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        dist: String,
        /// Write a non-termination certificate here (Eulerian graphs only).
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        state_cap: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check a non-reachability certificate.
    VerifyCert {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Check a non-termination certificate.
    VerifyHaltCert {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        dist: String,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Print strongly connected components, sink period vectors and per(G).
    Period {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide reachability by exhaustive search.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        max_states: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Generate a random graph, and optionally a random distribution.
    Gen {
        #[arg(long, value_enum, default_value_t = GenKind::General)]
        kind: GenKind,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Number of edges counted with multiplicity.
        #[arg(long, default_value_t = 6)]
        edges: usize,
        #[arg(long, default_value_t = 3)]
        max_mult: u32,
        /// Also generate a distribution with this many chips.
        #[arg(long)]
        chips: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Graph file to write; the distribution goes to the same path
        /// with `.dist` appended.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the deciders against exhaustive search on random graphs.
    Selftest {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        chips: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        graphs: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Eulerian,
    Recurrent,
    Greedy,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Eulerian,
    General,
}

/// Runs the command line with `args` (including the program name) and
/// returns the exit code. Output goes to `out`, diagnostics to `err`.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

// Errors raised while running a command: library errors and I/O.
#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn default_budget() -> CliResult<Budget> {
    let mut b = Budget::default();
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        let cap: u64 = v
            .trim()
            .parse()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| CliError::Io(format!("{BUDGET_ENV} must be a positive integer, found {v:?}")))?;
        b.step_cap = cap;
        b.state_cap = usize::try_from(cap).unwrap_or(usize::MAX);
    }
    Ok(b)
}

fn positive<T: PartialEq + Default + std::fmt::Display>(name: &str, v: T) -> CliResult<T> {
    if v == T::default() {
        return Err(CliError::Io(format!("--{name} must be positive")));
    }
    Ok(v)
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> CliResult<Digraph> {
    Ok(Digraph::parse(&read_file(path)?)?)
}

// A distribution given inline or as a file, checked against the graph.
fn load_dist(g: &Digraph, arg: &str) -> CliResult<ChipDistribution> {
    let path = Path::new(arg);
    let text = if path.is_file() { read_file(path)? } else { arg.to_string() };
    let d = ChipDistribution::parse(&text)?;
    if d.len() != g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "distribution has {} entries, graph has {} vertices",
            d.len(),
            g.vertex_count()
        ))
        .into());
    }
    Ok(d)
}

fn runs_json(runs: &[Run]) -> Value {
    Value::Array(runs.iter().map(|r| json!([r.vertex + 1, r.count])).collect())
}

fn big(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse().expect("decimal integer is a JSON number"))
}

/// The witness as JSON: `{"type":"game","firings":[[v,count],...]}` with
/// 1-based vertices, or, above the expansion limit,
/// `{"type":"game_blocks","blocks":[{"order":[[v,count],...],"repeat":r},...]}`.
pub fn witness_json(g: &Digraph, w: &Witness) -> Result<Value> {
    match w.expand(g, EXPAND_LIMIT) {
        Ok(trace) => Ok(json!({"type": "game", "firings": runs_json(trace.runs())})),
        Err(Error::WitnessTooLong { .. }) => {
            let blocks: Vec<Value> = w
                .blocks()
                .iter()
                .map(|b| json!({"order": runs_json(&b.order), "repeat": big(&b.repeat)}))
                .collect();
            Ok(json!({"type": "game_blocks", "blocks": blocks}))
        }
        Err(e) => Err(e),
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Yes => EXIT_YES,
        Verdict::No => EXIT_NO,
        Verdict::UndecidedBudget => EXIT_UNDECIDED,
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "YES",
        Verdict::No => "NO",
        Verdict::UndecidedBudget => "UNDECIDED (budget exceeded)",
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> CliResult<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("JSON values serialize"))?;
    Ok(())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult<i32> {
    let budget = default_budget()?;
    match cmd {
        Command::Reach { graph, from, to, method, witness, cert, step_cap, state_cap, json } => {
            let g = load_graph(&graph)?;
            let (x, y) = (load_dist(&g, &from)?, load_dist(&g, &to)?);
            let budget = Budget {
                step_cap: positive("step-cap", step_cap.unwrap_or(budget.step_cap))?,
                state_cap: positive("state-cap", state_cap.unwrap_or(budget.state_cap))?,
            };
            let r = match method {
                MethodArg::Auto => reach_decide(&g, &x, &y, budget)?,
                MethodArg::Eulerian => reach_with_method(&g, &x, &y, Method::Eulerian, budget)?,
                MethodArg::Recurrent => reach_with_method(&g, &x, &y, Method::RecurrentTarget, budget)?,
                MethodArg::Greedy => reach_with_method(&g, &x, &y, Method::GreedyGeneral, budget)?,
                MethodArg::Oracle => reach_with_method(&g, &x, &y, Method::Oracle, budget)?,
            };
            report_reach(&g, &r, witness.as_deref(), cert.as_deref(), json, out)?;
            Ok(verdict_code(r.verdict))
        }
        Command::Recurrent { graph, dist, step_cap, json } => {
            let g = load_graph(&graph)?;
            let x = load_dist(&g, &dist)?;
            let cap = positive("step-cap", step_cap.unwrap_or(budget.step_cap))?;
            match is_recurrent(&g, &x, Some(cap)) {
                Ok(r) => {
                    if json {
                        emit(out, &json!({"recurrent": r}))?;
                    } else {
                        writeln!(out, "{}", if r { "recurrent" } else { "not recurrent" })?;
                    }
                    Ok(if r { EXIT_YES } else { EXIT_NO })
                }
                Err(Error::StepBudgetExceeded { .. }) => {
                    if json {
                        emit(out, &json!({"recurrent": null}))?;
                    } else {
                        writeln!(out, "UNDECIDED (budget exceeded)")?;
                    }
                    Ok(EXIT_UNDECIDED)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Halt { graph, dist, cert, state_cap, json } => {
            let g = load_graph(&graph)?;
            let x = load_dist(&g, &dist)?;
            let cap = positive("state-cap", state_cap.unwrap_or(budget.state_cap))?;
            halt(&g, &x, cap, cert.as_deref(), json, out)
        }
        Command::VerifyCert { graph, from, to, cert } => {
            let g = load_graph(&graph)?;
            let (x, y) = (load_dist(&g, &from)?, load_dist(&g, &to)?);
            let c: ReachCertificate = serde_json::from_str(&read_file(&cert)?)
                .map_err(|e| CliError::Io(format!("malformed certificate: {e}")))?;
            let ok = verify_nonreach_certificate(&g, &x, &y, &c);
            writeln!(out, "{}", if ok { "certificate valid" } else { "certificate invalid" })?;
            Ok(if ok { EXIT_YES } else { EXIT_NO })
        }
        Command::VerifyHaltCert { graph, dist, cert } => {
            let g = load_graph(&graph)?;
            let x = load_dist(&g, &dist)?;
            let c: HaltingCertificate = serde_json::from_str(&read_file(&cert)?)
                .map_err(|e| CliError::Io(format!("malformed certificate: {e}")))?;
            let ok = verify_halting_certificate(&g, &x, &c)?;
            writeln!(out, "{}", if ok { "certificate valid" } else { "certificate invalid" })?;
            Ok(if ok { EXIT_YES } else { EXIT_NO })
        }
        Command::Period { graph, json } => {
            let g = load_graph(&graph)?;
            period(&g, json, out)?;
            Ok(EXIT_YES)
        }
        Command::Oracle { graph, from, to, max_states, json } => {
            let g = load_graph(&graph)?;
            let (x, y) = (load_dist(&g, &from)?, load_dist(&g, &to)?);
            let cap = positive("max-states", max_states.unwrap_or(budget.state_cap))?;
            let verdict = match reach_oracle_bfs(&g, &x, &y, cap) {
                Ok(true) => Verdict::Yes,
                Ok(false) => Verdict::No,
                Err(Error::StateBudgetExceeded { .. }) => Verdict::UndecidedBudget,
                Err(e) => return Err(e.into()),
            };
            if json {
                emit(out, &json!({"verdict": verdict, "method": Method::Oracle.name()}))?;
            } else {
                writeln!(out, "{}", verdict_word(verdict))?;
            }
            Ok(verdict_code(verdict))
        }
        Command::Gen { kind, n, edges, max_mult, chips, seed, out: path } => {
            positive("n", n)?;
            positive("max-mult", max_mult)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = match kind {
                GenKind::Eulerian => gen::random_eulerian(&mut rng, n, edges, max_mult),
                GenKind::General => gen::random_digraph(&mut rng, n, edges, max_mult),
            };
            let x = chips.map(|c| gen::random_distribution(&mut rng, n, c));
            match path {
                Some(path) => {
                    write_file(&path, &g.to_text())?;
                    if let Some(x) = &x {
                        let mut dist_path = path.into_os_string();
                        dist_path.push(".dist");
                        write_file(Path::new(&dist_path), &format!("{x}\n"))?;
                    }
                }
                None => {
                    write!(out, "{}", g.to_text())?;
                    if let Some(x) = &x {
                        writeln!(out, "# distribution: {x}")?;
                    }
                }
            }
            Ok(EXIT_YES)
        }
        Command::Selftest { n, chips, seed, graphs } => {
            positive("n", n)?;
            selftest(n, chips, seed, graphs, budget, out)
        }
    }
}

fn report_reach(
    g: &Digraph,
    r: &ReachResult,
    witness_path: Option<&Path>,
    cert_path: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
) -> CliResult<()> {
    let witness = r.witness.as_ref().map(|w| witness_json(g, w)).transpose()?;
    let certificate = r.certificate.as_ref().map(|c| serde_json::to_value(c).expect("certificates serialize"));

    if let (Some(path), Some(w)) = (witness_path, &witness) {
        write_file(path, &format!("{w}\n"))?;
    }
    if let (Some(path), Some(c)) = (cert_path, &certificate) {
        write_file(path, &format!("{c}\n"))?;
    }

    if json {
        let v = json!({
            "verdict": r.verdict,
            "method": r.method.name(),
            "witness": witness,
            "certificate": certificate,
            "stats": r.stats,
        });
        return emit(out, &v);
    }

    writeln!(out, "{} (method: {})", verdict_word(r.verdict), r.method.name())?;
    if let Some(w) = &r.witness {
        writeln!(out, "witness: {} firings", w.length())?;
        match witness_path {
            Some(p) => writeln!(out, "witness written to {}", p.display())?,
            None => writeln!(out, "{}", witness.as_ref().expect("present with the witness"))?,
        }
    }
    if let Some(c) = &certificate {
        match cert_path {
            Some(p) => writeln!(out, "certificate written to {}", p.display())?,
            None => writeln!(out, "certificate: {c}")?,
        }
    } else if r.verdict == Verdict::No && r.method != Method::NoNonnegF {
        writeln!(out, "no certificate available")?;
    }
    Ok(())
}

fn halt(
    g: &Digraph,
    x: &ChipDistribution,
    state_cap: usize,
    cert_path: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let r = decide_halting(g, x, state_cap)?;
    let cert = match (&r, g.is_eulerian()) {
        (HaltingResult::NonTerminating { .. }, true) => make_halting_certificate(g, x, state_cap)?,
        _ => None,
    };
    if let (Some(path), Some(c)) = (cert_path, &cert) {
        write_file(path, &format!("{}\n", serde_json::to_string(c).expect("certificates serialize")))?;
    }
    let code = match &r {
        HaltingResult::Terminating(_) => EXIT_YES,
        HaltingResult::NonTerminating { .. } => EXIT_NO,
        HaltingResult::UndecidedBudget { .. } => EXIT_UNDECIDED,
    };
    if json {
        let evidence = match &r {
            HaltingResult::Terminating(t) => json!({
                "final": t.final_distribution(),
                "firing_vector": t.firing_vector(),
                "firings": big(&BigInt::from(t.len())),
            }),
            HaltingResult::NonTerminating { prefix, cycle } => json!({
                "repeated": cycle.initial(),
                "prefix": runs_json(prefix.runs()),
                "cycle": runs_json(cycle.runs()),
            }),
            HaltingResult::UndecidedBudget { states } => json!({"states": states}),
        };
        emit(out, &json!({"verdict": r.verdict(), "evidence": evidence, "certificate": cert}))?;
        return Ok(code);
    }
    match &r {
        HaltingResult::Terminating(t) => {
            writeln!(out, "TERMINATING after {} firings", t.len())?;
            writeln!(out, "final: {}", t.final_distribution())?;
            writeln!(out, "firing vector: {}", t.firing_vector())?;
        }
        HaltingResult::NonTerminating { prefix, cycle } => {
            writeln!(out, "NON-TERMINATING")?;
            writeln!(
                out,
                "{} repeats after {} + {} firings",
                cycle.initial(),
                prefix.len(),
                cycle.len()
            )?;
            match (&cert, cert_path) {
                (Some(_), Some(p)) => writeln!(out, "certificate written to {}", p.display())?,
                (Some(c), None) => writeln!(out, "certificate: {}", serde_json::to_string(c).expect("serializes"))?,
                (None, Some(_)) => writeln!(out, "no certificate: graph is not Eulerian")?,
                (None, None) => {}
            }
        }
        HaltingResult::UndecidedBudget { states } => {
            writeln!(out, "UNDECIDED (budget exceeded after {states} distributions)")?;
        }
    }
    Ok(code)
}

fn period(g: &Digraph, json: bool, out: &mut dyn Write) -> CliResult<()> {
    let scc = g.scc();
    let one_based = |c: &[usize]| c.iter().map(|v| v + 1).collect::<Vec<_>>();
    let sinks: Vec<(Vec<usize>, Value)> = sink_periods(g)
        .iter()
        .map(|(c, p)| (one_based(&scc.components()[*c]), serde_json::to_value(p).expect("serializes")))
        .collect();
    let per_g = per(g);
    if json {
        let comps: Vec<Vec<usize>> = scc.components().iter().map(|c| one_based(c)).collect();
        let sinks: Vec<Value> = sinks.iter().map(|(c, p)| json!({"component": c, "period": p})).collect();
        return emit(out, &json!({"components": comps, "sinks": sinks, "per": big(&per_g)}));
    }
    for (i, c) in scc.components().iter().enumerate() {
        let vs: Vec<String> = c.iter().map(|v| format!("v{}", v + 1)).collect();
        let tag = if scc.is_sink(i) { " (sink)" } else { "" };
        writeln!(out, "component {}: {}{}", i + 1, vs.join(" "), tag)?;
    }
    for (c, p) in &sinks {
        let vs: Vec<String> = c.iter().map(|v| format!("v{v}")).collect();
        let entries: Vec<String> = p.as_array().expect("array").iter().map(ToString::to_string).collect();
        writeln!(out, "period on {}: {}", vs.join(" "), entries.join(" "))?;
    }
    writeln!(out, "per(G) = {per_g}")?;
    Ok(())
}

fn selftest(n: usize, chips: u64, seed: u64, graphs: usize, budget: Budget, out: &mut dyn Write) -> CliResult<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checked, mut skipped, mut disagreements) = (0u64, 0u64, 0u64);
    for i in 0..graphs {
        let edges = rand::Rng::gen_range(&mut rng, n.saturating_sub(1)..=n * 2);
        let g = if i % 2 == 0 {
            gen::random_eulerian(&mut rng, n, edges, 3)
        } else {
            gen::random_digraph(&mut rng, n, edges, 3)
        };
        let total = rand::Rng::gen_range(&mut rng, 0..=chips);
        let x = gen::random_distribution(&mut rng, n, total);
        let reachable = match reachable_distributions(&g, &x, budget.state_cap) {
            Ok(r) => r,
            Err(Error::StateBudgetExceeded { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        for y in gen::distributions_with_total(n, total) {
            let r = reach_decide(&g, &x, &y, budget)?;
            if r.verdict == Verdict::UndecidedBudget {
                skipped += 1;
                continue;
            }
            checked += 1;
            if (r.verdict == Verdict::Yes) != reachable.contains(&y) {
                disagreements += 1;
                writeln!(out, "disagreement on graph\n{}from {x} to {y}: {:?}", g.to_text(), r.verdict)?;
            }
        }
    }
    writeln!(out, "checked {checked} instances, skipped {skipped}, disagreements {disagreements}")?;
    Ok(if disagreements == 0 { EXIT_YES } else { EXIT_NO })
}
