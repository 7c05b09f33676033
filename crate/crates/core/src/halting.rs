//! Termination of chip-firing games.
//!
//! Either every legal game from `x` goes on forever or every legal game
//! stops, after the same number of firings. Playing one game therefore
//! decides the question: it stops, or it revisits a distribution (the
//! state space is finite since chips are conserved).

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{push_run, Board, Chooser, GameTrace, Run, TieBreak};
use crate::graph::Digraph;
use crate::linalg::{ensure_len, linear_equivalent};
use crate::reach::is_recurrent;
use crate::vector::ChipDistribution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HaltingVerdict {
    Terminating,
    NonTerminating,
    UndecidedBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HaltingResult {
    /// The complete game; its final distribution has no legal firing.
    Terminating(GameTrace),
    /// `prefix` leads from `x` to a distribution that `cycle` returns to.
    NonTerminating { prefix: GameTrace, cycle: GameTrace },
    /// More than the allowed number of distinct distributions were seen.
    UndecidedBudget { states: usize },
}

impl HaltingResult {
    pub fn verdict(&self) -> HaltingVerdict {
        match self {
            HaltingResult::Terminating(_) => HaltingVerdict::Terminating,
            HaltingResult::NonTerminating { .. } => HaltingVerdict::NonTerminating,
            HaltingResult::UndecidedBudget { .. } => HaltingVerdict::UndecidedBudget,
        }
    }

    /// The distribution visited twice, for a non-terminating result.
    pub fn repeated(&self) -> Option<&ChipDistribution> {
        match self {
            HaltingResult::NonTerminating { cycle, .. } => Some(cycle.initial()),
            _ => None,
        }
    }
}

/// Claims that `x` is non-terminating: `y` is recurrent and linearly
/// equivalent to `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename = "nonterminating", try_from = "TaggedCertificate")]
pub struct HaltingCertificate {
    pub y: ChipDistribution,
}

#[derive(Deserialize)]
struct TaggedCertificate {
    #[serde(rename = "type")]
    kind: String,
    y: ChipDistribution,
}

impl TryFrom<TaggedCertificate> for HaltingCertificate {
    type Error = String;
    fn try_from(t: TaggedCertificate) -> std::result::Result<Self, String> {
        if t.kind != "nonterminating" {
            return Err(format!("expected a nonterminating certificate, found type {:?}", t.kind));
        }
        Ok(Self { y: t.y })
    }
}

/// Plays a maximal game from `x` (lowest index first), remembering every
/// distribution seen, until the game stops, a distribution repeats, or
/// more than `state_cap` distinct distributions have been seen.
pub fn decide_halting(g: &Digraph, x: &ChipDistribution, state_cap: usize) -> Result<HaltingResult> {
    decide_halting_with(g, x, state_cap, TieBreak::LowestIndex)
}

/// [`decide_halting`] with an explicit tie-breaking policy.
pub fn decide_halting_with(
    g: &Digraph,
    x: &ChipDistribution,
    state_cap: usize,
    tie: TieBreak,
) -> Result<HaltingResult> {
    ensure_len(g, x.entries())?;
    let n = g.vertex_count();
    let mut board = Board::new(g, x);
    let mut chooser = Chooser::new(tie);
    let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut fired: Vec<usize> = Vec::new();
    seen.insert(x.entries().to_vec(), 0);
    loop {
        let Some(v) = chooser.pick(n, |v| board.is_legal(v)) else {
            let trace = GameTrace::from_firings(g, x.clone(), runs_of(&fired))?;
            return Ok(HaltingResult::Terminating(trace));
        };
        board.fire(v);
        fired.push(v);
        if let Some(&first) = seen.get(board.chips()) {
            let prefix = GameTrace::from_firings(g, x.clone(), runs_of(&fired[..first]))?;
            let cycle = GameTrace::from_firings(g, prefix.final_distribution().clone(), runs_of(&fired[first..]))?;
            return Ok(HaltingResult::NonTerminating { prefix, cycle });
        }
        if seen.len() >= state_cap {
            return Ok(HaltingResult::UndecidedBudget { states: seen.len() });
        }
        seen.insert(board.chips().to_vec(), fired.len());
    }
}

fn runs_of(fired: &[usize]) -> Vec<Run> {
    let mut runs = Vec::new();
    for &v in fired {
        push_run(&mut runs, v, 1);
    }
    runs
}

/// The first distribution visited twice by the lowest-index game from
/// `x`, or `None` if `x` is terminating.
pub fn make_halting_certificate(
    g: &Digraph,
    x: &ChipDistribution,
    state_cap: usize,
) -> Result<Option<HaltingCertificate>> {
    if !g.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    match decide_halting(g, x, state_cap)? {
        HaltingResult::Terminating(_) => Ok(None),
        HaltingResult::NonTerminating { cycle, .. } => Ok(Some(HaltingCertificate {
            y: cycle.initial().clone(),
        })),
        HaltingResult::UndecidedBudget { .. } => Err(Error::StateBudgetExceeded { cap: state_cap }),
    }
}

/// `true` iff `cert.y` is recurrent and linearly equivalent to `x`, which
/// proves that `x` is non-terminating.
pub fn verify_halting_certificate(g: &Digraph, x: &ChipDistribution, cert: &HaltingCertificate) -> Result<bool> {
    if !g.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    let n = g.vertex_count();
    if x.len() != n || cert.y.len() != n {
        return Ok(false);
    }
    // On an Eulerian graph the recurrence check fires each vertex at most
    // once, so it needs no budget.
    Ok(is_recurrent(g, &cert.y, None)? && linear_equivalent(g, x, &cert.y).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::legal_firings;

    fn dist(v: &[u64]) -> ChipDistribution {
        ChipDistribution::from_u64s(v)
    }

    #[test]
    fn zero_distribution_terminates() {
        let r = decide_halting(&fixtures::six_vertex(), &dist(&[0; 6]), 10).unwrap();
        let HaltingResult::Terminating(t) = r else { panic!("{r:?}") };
        assert!(t.is_empty());
    }

    #[test]
    fn triangle_cycles_through_start() {
        let r = decide_halting(&fixtures::triangle(), &dist(&[1, 0, 0]), 10).unwrap();
        let HaltingResult::NonTerminating { prefix, cycle } = r else { panic!("{r:?}") };
        assert!(prefix.is_empty());
        assert_eq!(cycle.iter_firings().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(cycle.final_distribution(), &dist(&[1, 0, 0]));
    }

    #[test]
    fn six_vertex_sink_cycle() {
        let x = dist(&[1, 1, 0, 0, 1, 0]);
        let r = decide_halting(&fixtures::six_vertex(), &x, 10).unwrap();
        let HaltingResult::NonTerminating { prefix, cycle } = r else { panic!("{r:?}") };
        assert!(prefix.is_empty());
        assert_eq!(cycle.iter_firings().collect::<Vec<_>>(), vec![4, 5]);
    }

    #[test]
    fn terminating_game_ends_stuck() {
        let g = fixtures::bidirected_path(3);
        let r = decide_halting(&g, &dist(&[1, 0, 0]), 10).unwrap();
        let HaltingResult::Terminating(t) = r else { panic!("{r:?}") };
        assert_eq!(t.final_distribution(), &dist(&[0, 1, 0]));
        assert!(legal_firings(&g, t.final_distribution()).is_empty());
    }

    #[test]
    fn state_cap() {
        let r = decide_halting(&fixtures::triangle(), &dist(&[1, 0, 0]), 2).unwrap();
        assert_eq!(r.verdict(), HaltingVerdict::UndecidedBudget);
        assert_eq!(
            make_halting_certificate(&fixtures::triangle(), &dist(&[1, 0, 0]), 2),
            Err(Error::StateBudgetExceeded { cap: 2 })
        );
    }

    #[test]
    fn certificate_examples() {
        let tri = fixtures::triangle();
        let c = make_halting_certificate(&tri, &dist(&[1, 0, 0]), 10).unwrap().unwrap();
        assert_eq!(c.y, dist(&[1, 0, 0]));
        assert!(verify_halting_certificate(&tri, &dist(&[1, 0, 0]), &c).unwrap());
        let moved = HaltingCertificate { y: dist(&[0, 1, 0]) };
        assert!(verify_halting_certificate(&tri, &dist(&[1, 0, 0]), &moved).unwrap());

        let d = fixtures::doubled_two_cycle();
        assert_eq!(make_halting_certificate(&d, &dist(&[1, 1]), 10).unwrap(), None);
        let c = make_halting_certificate(&d, &dist(&[2, 2]), 10).unwrap().unwrap();
        assert_eq!(c.y, dist(&[2, 2]));
        let stuck = HaltingCertificate { y: dist(&[1, 1]) };
        assert!(!verify_halting_certificate(&d, &dist(&[1, 1]), &stuck).unwrap());

        let ex = fixtures::six_vertex();
        assert_eq!(make_halting_certificate(&ex, &dist(&[0; 6]), 10), Err(Error::NotEulerian));
        assert_eq!(verify_halting_certificate(&ex, &dist(&[0; 6]), &stuck), Err(Error::NotEulerian));
    }

    #[test]
    fn certificate_json() {
        let c = HaltingCertificate { y: dist(&[2, 2]) };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"type":"nonterminating","y":[2,2]}"#);
        assert_eq!(serde_json::from_str::<HaltingCertificate>(&s).unwrap(), c);
        assert!(serde_json::from_str::<HaltingCertificate>(r#"{"type":"nonreach","y":[2,2]}"#).is_err());
    }
}
