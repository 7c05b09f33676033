//! Deciding whether one distribution can reach another.
//!
//! Four deciders are provided:
//!
//! * [`reach_eulerian`]: strongly polynomial on connected Eulerian graphs.
//!   It fires the level sets of the reduced firing vector as an ascending
//!   chain and only checks each distinct set at its last occurrence.
//! * [`reach_recurrent_target`]: when the target is recurrent on every
//!   strongly connected component where the firing vector is nonzero,
//!   existence of a nonnegative firing vector already implies
//!   reachability.
//! * [`reach_greedy_general`]: complete on every graph. Plays the maximal
//!   game bounded by the reduced firing vector; may run out of budget.
//! * [`reach_oracle_bfs`]: exhaustive search, the ground truth at small
//!   scale.
//!
//! [`reach_decide`] chains them. Negative answers carry a
//! [`ReachCertificate`] whenever a nonnegative firing vector exists.

mod oracle;
mod plan;
mod witness;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{run_bounded_game, GameTrace, Run};
use crate::graph::Digraph;
use crate::linalg::{ensure_len, is_reduced, primitive_period_vector, solve_nonneg_firing_counted};
use crate::vector::{ChipDistribution, FiringVector};

pub use oracle::{reach_oracle_bfs, reachable_distributions};
pub use plan::AscendingChainPlan;
pub use witness::{Block, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    UndecidedBudget,
}

/// The decider that produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// `x = y`: the empty game.
    Identity,
    /// No nonnegative integer `f` with `y = x + L f` exists.
    NoNonnegF,
    Eulerian,
    RecurrentTarget,
    GreedyGeneral,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Identity => "identity",
            Method::NoNonnegF => "no_nonneg_f",
            Method::Eulerian => "eulerian",
            Method::RecurrentTarget => "recurrent_target",
            Method::GreedyGeneral => "greedy_general",
            Method::Oracle => "oracle",
        }
    }
}

/// Work counters of the Eulerian decider. For a fixed graph and a fixed
/// pattern of level sets these do not depend on chip magnitudes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ReachStats {
    /// Distinct level sets checked.
    pub set_checks: usize,
    /// Solve, plan construction, closed-form evaluations and check firings.
    pub steps: u64,
    /// Unit-cost arithmetic operations spent in the linear solve.
    pub arithmetic_ops: u64,
}

/// A proof that `x` cannot reach `y`: a reduced `f` with `y = x + L f`
/// and the firing vector `g` of a maximal game bounded by `f` that falls
/// short of it, stuck at every vertex it has not finished.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename = "nonreach", try_from = "TaggedCertificate")]
pub struct ReachCertificate {
    pub f: FiringVector,
    pub g: FiringVector,
}

#[derive(Deserialize)]
struct TaggedCertificate {
    #[serde(rename = "type")]
    kind: String,
    f: FiringVector,
    g: FiringVector,
}

impl TryFrom<TaggedCertificate> for ReachCertificate {
    type Error = String;
    fn try_from(t: TaggedCertificate) -> std::result::Result<Self, String> {
        if t.kind != "nonreach" {
            return Err(format!("expected a nonreach certificate, found type {:?}", t.kind));
        }
        Ok(Self { f: t.f, g: t.g })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachResult {
    pub verdict: Verdict,
    pub method: Method,
    /// Present on `Yes`.
    pub witness: Option<Witness>,
    /// Present on `No` when a nonnegative firing vector exists and the
    /// certificate could be computed within budget.
    pub certificate: Option<ReachCertificate>,
    pub stats: ReachStats,
}

impl ReachResult {
    fn yes(method: Method, witness: Witness) -> Self {
        Self {
            verdict: Verdict::Yes,
            method,
            witness: Some(witness),
            certificate: None,
            stats: ReachStats::default(),
        }
    }

    fn no(method: Method, certificate: Option<ReachCertificate>) -> Self {
        Self {
            verdict: Verdict::No,
            method,
            witness: None,
            certificate,
            stats: ReachStats::default(),
        }
    }

    fn undecided(method: Method) -> Self {
        Self {
            verdict: Verdict::UndecidedBudget,
            method,
            witness: None,
            certificate: None,
            stats: ReachStats::default(),
        }
    }
}

/// Resource limits for the deciders that may take exponential time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of firings in a simulated game.
    pub step_cap: u64,
    /// Maximum number of distinct distributions in a search.
    pub state_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            step_cap: 1_000_000,
            state_cap: 1_000_000,
        }
    }
}

/// The strongly polynomial decider for connected Eulerian graphs.
pub fn reach_eulerian(g: &Digraph, x: &ChipDistribution, y: &ChipDistribution) -> Result<ReachResult> {
    Ok(reach_eulerian_with_plan(g, x, y)?.0)
}

/// [`reach_eulerian`] together with the ascending chain plan it checked
/// (absent when no nonnegative firing vector exists).
pub fn reach_eulerian_with_plan(
    g: &Digraph,
    x: &ChipDistribution,
    y: &ChipDistribution,
) -> Result<(ReachResult, Option<AscendingChainPlan>)> {
    if !g.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    ensure_len(g, x.entries())?;
    ensure_len(g, y.entries())?;
    let mut stats = ReachStats::default();

    let (solved, ops) = solve_nonneg_firing_counted(g, x, y);
    stats.arithmetic_ops = ops.arithmetic;
    stats.steps += 1;
    let Some(solved) = solved else {
        let mut r = ReachResult::no(Method::NoNonnegF, None);
        r.stats = stats;
        return Ok((r, None));
    };

    // Normalise so that the minimum entry is zero.
    let min = solved.entries().iter().min().cloned().unwrap_or_default();
    let f = FiringVector::new(solved.entries().iter().map(|e| e - &min).collect())?;
    let plan = AscendingChainPlan::new(f);
    stats.steps += plan.distinct() as u64;

    // Check each distinct set at its last occurrence. All k checks run.
    let mut all_pass = true;
    let mut blocks = Vec::with_capacity(plan.distinct());
    for i in 0..plan.distinct() {
        stats.set_checks += 1;
        stats.steps += 1;
        let at = plan.distribution_at(g, x, &plan.last_index_of(i));
        let at = ChipDistribution::new(at).map_err(|_| {
            Error::InternalContradiction("closed-form position has a negative entry".into())
        });
        let passed = match at {
            Ok(at) => {
                let set = plan.set(i);
                let mut bound = vec![BigInt::zero(); g.vertex_count()];
                for &v in set {
                    bound[v] = BigInt::one();
                }
                let bound = FiringVector::new(bound)?;
                let trace = run_bounded_game(g, &at, &bound, Some(set.len() as u64))?;
                stats.steps += trace.len();
                if trace.firing_vector() == &bound {
                    blocks.push(Block::new(trace.runs().to_vec(), plan.repeat(i)));
                    true
                } else {
                    false
                }
            }
            // A negative closed-form position means the chain cannot be
            // played at this point.
            Err(_) => false,
        };
        all_pass &= passed;
    }

    let mut result = if all_pass {
        ReachResult::yes(Method::Eulerian, Witness::new(x.clone(), blocks, y.clone()))
    } else {
        ReachResult::no(Method::Eulerian, None)
    };
    result.stats = stats;
    Ok((result, Some(plan)))
}

/// `true` iff some non-empty legal game returns `x` to itself, decided by
/// playing the maximal game bounded by the primitive period vector.
///
/// `step_cap = None` means unlimited.
pub fn is_recurrent(g: &Digraph, x: &ChipDistribution, step_cap: Option<u64>) -> Result<bool> {
    ensure_len(g, x.entries())?;
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let p = primitive_period_vector(g, &all)?;
    let bound = FiringVector::new(p.into_inner())?;
    let trace = run_bounded_game(g, x, &bound, step_cap)?;
    Ok(trace.firing_vector() == &bound)
}

/// Decides `x ⤳ y` when the target is recurrent on each strongly connected
/// component where the reduced firing vector is nonzero.
///
/// Returns `Ok(None)` when that hypothesis fails: the route then has no
/// answer and a different decider must be used.
pub fn reach_recurrent_target(
    g: &Digraph,
    x: &ChipDistribution,
    y: &ChipDistribution,
    step_cap: Option<u64>,
) -> Result<Option<ReachResult>> {
    ensure_len(g, x.entries())?;
    ensure_len(g, y.entries())?;
    let (f, _) = solve_nonneg_firing_counted(g, x, y);
    let Some(f) = f else {
        return Ok(Some(ReachResult::no(Method::NoNonnegF, None)));
    };
    let scc = g.scc();
    for comp in scc.components() {
        if comp.iter().all(|&v| f[v].is_zero()) {
            continue;
        }
        let sub = g.induced(comp)?;
        let local = ChipDistribution::new(comp.iter().map(|&v| y[v].clone()).collect())?;
        if !is_recurrent(&sub, &local, step_cap)? {
            return Ok(None);
        }
    }

    // Play f one component at a time, in topological order.
    let mut current = x.clone();
    let mut runs: Vec<Run> = Vec::new();
    for comp in scc.components() {
        let mut bound = vec![BigInt::zero(); g.vertex_count()];
        for &v in comp {
            bound[v] = f[v].clone();
        }
        let bound = FiringVector::new(bound)?;
        if bound.is_zero() {
            continue;
        }
        let trace = run_bounded_game(g, &current, &bound, step_cap)?;
        if trace.firing_vector() != &bound {
            return Err(Error::InternalContradiction(format!(
                "bounded game on component {:?} stopped short of the firing vector",
                comp.iter().map(|v| v + 1).collect::<Vec<_>>()
            )));
        }
        for r in trace.runs() {
            crate::game::push_run(&mut runs, r.vertex, r.count);
        }
        current = trace.final_distribution().clone();
    }
    if &current != y {
        return Err(Error::InternalContradiction("component games did not end at the target".into()));
    }
    let trace = GameTrace::from_firings(g, x.clone(), runs)?;
    Ok(Some(ReachResult::yes(Method::RecurrentTarget, Witness::from_trace(trace))))
}

/// The complete decider: play the maximal game bounded by the reduced
/// firing vector and compare. Returns `UndecidedBudget` if the game needs
/// more than `step_cap` firings.
pub fn reach_greedy_general(
    g: &Digraph,
    x: &ChipDistribution,
    y: &ChipDistribution,
    step_cap: Option<u64>,
) -> Result<ReachResult> {
    ensure_len(g, x.entries())?;
    ensure_len(g, y.entries())?;
    let (f, _) = solve_nonneg_firing_counted(g, x, y);
    let Some(f) = f else {
        return Ok(ReachResult::no(Method::NoNonnegF, None));
    };
    let trace = match run_bounded_game(g, x, &f, step_cap) {
        Ok(t) => t,
        Err(Error::StepBudgetExceeded { .. }) => return Ok(ReachResult::undecided(Method::GreedyGeneral)),
        Err(e) => return Err(e),
    };
    if trace.firing_vector() == &f {
        Ok(ReachResult::yes(Method::GreedyGeneral, Witness::from_trace(trace)))
    } else {
        let cert = ReachCertificate {
            f,
            g: trace.firing_vector().clone(),
        };
        Ok(ReachResult::no(Method::GreedyGeneral, Some(cert)))
    }
}

/// Checks the three certificate conditions:
///
/// 1. `x + L f = y`, `f >= 0`, and `f` dominates no nonzero period vector;
/// 2. `0 <= g <= f` with `g != f`;
/// 3. every vertex with `g(v) < f(v)` holds fewer than `d+(v)` chips at
///    `x + L g`.
///
/// A certificate that passes proves that `x` cannot reach `y`.
pub fn verify_nonreach_certificate(
    g: &Digraph,
    x: &ChipDistribution,
    y: &ChipDistribution,
    cert: &ReachCertificate,
) -> bool {
    let n = g.vertex_count();
    if [x.len(), y.len(), cert.f.len(), cert.g.len()].iter().any(|&l| l != n) {
        return false;
    }
    let (f, gv) = (&cert.f, &cert.g);

    let lf = g.apply_laplacian(f.entries());
    let reaches_y = x.entries().iter().zip(&lf).zip(y.entries()).all(|((a, d), b)| &(a + d) == b);
    if !reaches_y || !is_reduced(g, f) {
        return false;
    }

    if (0..n).any(|v| gv[v] > f[v]) || gv == f {
        return false;
    }

    let lg = g.apply_laplacian(gv.entries());
    (0..n).all(|v| gv[v] == f[v] || &(&x[v] + &lg[v]) < g.out_degree(v))
}

/// Runs the deciders in order: trivial cases, the nonnegative-solve
/// filter, the Eulerian algorithm, the recurrent-target route and finally
/// the greedy decider under `budget`.
///
/// A negative Eulerian answer gets a certificate from the greedy decider
/// when that fits in the budget.
pub fn reach_decide(g: &Digraph, x: &ChipDistribution, y: &ChipDistribution, budget: Budget) -> Result<ReachResult> {
    ensure_len(g, x.entries())?;
    ensure_len(g, y.entries())?;
    if x == y {
        return Ok(ReachResult::yes(Method::Identity, Witness::from_trace(GameTrace::empty(x.clone()))));
    }
    let (f, _) = solve_nonneg_firing_counted(g, x, y);
    if f.is_none() {
        return Ok(ReachResult::no(Method::NoNonnegF, None));
    }

    if g.is_eulerian() {
        let mut r = reach_eulerian(g, x, y)?;
        if r.verdict == Verdict::No {
            let greedy = reach_greedy_general(g, x, y, Some(budget.step_cap))?;
            match greedy.verdict {
                Verdict::No => r.certificate = greedy.certificate,
                Verdict::Yes => {
                    return Err(Error::InternalContradiction(
                        "Eulerian and greedy deciders disagree".into(),
                    ))
                }
                Verdict::UndecidedBudget => {}
            }
        }
        return Ok(r);
    }

    match reach_recurrent_target(g, x, y, Some(budget.step_cap)) {
        Ok(Some(r)) => return Ok(r),
        Ok(None) | Err(Error::StepBudgetExceeded { .. }) => {}
        Err(e) => return Err(e),
    }
    reach_greedy_general(g, x, y, Some(budget.step_cap))
}

/// Runs a single named decider, mapping "not applicable" outcomes of the
/// recurrent-target route to an undecided verdict.
pub fn reach_with_method(
    g: &Digraph,
    x: &ChipDistribution,
    y: &ChipDistribution,
    method: Method,
    budget: Budget,
) -> Result<ReachResult> {
    match method {
        Method::Identity | Method::NoNonnegF => reach_decide(g, x, y, budget),
        Method::Eulerian => reach_eulerian(g, x, y),
        Method::RecurrentTarget => match reach_recurrent_target(g, x, y, Some(budget.step_cap)) {
            Ok(Some(r)) => Ok(r),
            Ok(None) | Err(Error::StepBudgetExceeded { .. }) => Ok(ReachResult::undecided(Method::RecurrentTarget)),
            Err(e) => Err(e),
        },
        Method::GreedyGeneral => reach_greedy_general(g, x, y, Some(budget.step_cap)),
        Method::Oracle => match reach_oracle_bfs(g, x, y, budget.state_cap) {
            Ok(true) => Ok(ReachResult {
                verdict: Verdict::Yes,
                method: Method::Oracle,
                witness: None,
                certificate: None,
                stats: ReachStats::default(),
            }),
            Ok(false) => Ok(ReachResult::no(Method::Oracle, None)),
            Err(Error::StateBudgetExceeded { .. }) => Ok(ReachResult::undecided(Method::Oracle)),
            Err(e) => Err(e),
        },
    }
}
