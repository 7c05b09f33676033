//! Legal firings, bounded games and maximal games.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::ensure_len;
use crate::vector::{ChipDistribution, FiringVector, PeriodVector};

/// Which legal vertex to fire when several are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowestIndex,
    HighestIndex,
    /// Uniformly random among the candidates, from a fixed seed.
    Seeded(u64),
}

pub(crate) enum Chooser {
    Lowest,
    Highest,
    Random(ChaCha8Rng),
}

impl Chooser {
    pub(crate) fn new(tie: TieBreak) -> Self {
        match tie {
            TieBreak::LowestIndex => Chooser::Lowest,
            TieBreak::HighestIndex => Chooser::Highest,
            TieBreak::Seeded(seed) => Chooser::Random(ChaCha8Rng::seed_from_u64(seed)),
        }
    }

    pub(crate) fn pick(&mut self, n: usize, mut eligible: impl FnMut(usize) -> bool) -> Option<usize> {
        match self {
            Chooser::Lowest => (0..n).find(|&v| eligible(v)),
            Chooser::Highest => (0..n).rev().find(|&v| eligible(v)),
            Chooser::Random(rng) => {
                let cands: Vec<usize> = (0..n).filter(|&v| eligible(v)).collect();
                if cands.is_empty() {
                    None
                } else {
                    Some(cands[rng.gen_range(0..cands.len())])
                }
            }
        }
    }
}

/// A run of consecutive firings of the same vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub vertex: usize,
    pub count: u64,
}

/// A legal game: the starting position, the firings in order
/// (run-length encoded), the final position and the firing vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTrace {
    initial: ChipDistribution,
    firings: Vec<Run>,
    final_dist: ChipDistribution,
    firing_vector: FiringVector,
}

impl GameTrace {
    /// The empty game at `x`.
    pub fn empty(x: ChipDistribution) -> Self {
        let n = x.len();
        Self {
            final_dist: x.clone(),
            initial: x,
            firings: Vec::new(),
            firing_vector: FiringVector::zeros(n),
        }
    }

    /// Builds a trace by replaying `firings` from `initial`; fails if any
    /// firing is illegal.
    pub fn from_firings(g: &Digraph, initial: ChipDistribution, firings: Vec<Run>) -> Result<Self> {
        ensure_len(g, initial.entries())?;
        let mut board = Board::new(g, &initial);
        let mut position = 0u64;
        let mut compact: Vec<Run> = Vec::with_capacity(firings.len());
        for run in firings {
            if run.vertex >= g.vertex_count() {
                return Err(Error::InvalidInput(format!("vertex v{} out of range", run.vertex + 1)));
            }
            if run.count == 0 {
                continue;
            }
            for _ in 0..run.count {
                if !board.is_legal(run.vertex) {
                    return Err(Error::ReplayFailure { position });
                }
                board.fire(run.vertex);
                position += 1;
            }
            push_run(&mut compact, run.vertex, run.count);
        }
        Ok(board.finish(initial, compact))
    }

    pub fn initial(&self) -> &ChipDistribution {
        &self.initial
    }

    pub fn final_distribution(&self) -> &ChipDistribution {
        &self.final_dist
    }

    pub fn firing_vector(&self) -> &FiringVector {
        &self.firing_vector
    }

    pub fn runs(&self) -> &[Run] {
        &self.firings
    }

    /// Number of individual firings.
    pub fn len(&self) -> u64 {
        self.firings.iter().map(|r| r.count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.firings.is_empty()
    }

    /// Individual firings in order.
    pub fn iter_firings(&self) -> impl Iterator<Item = usize> + '_ {
        self.firings
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.vertex, r.count as usize))
    }

    /// Replays the firings from the initial distribution, checking
    /// legality at every step, and returns the final distribution.
    pub fn replay(&self, g: &Digraph) -> Result<ChipDistribution> {
        let t = GameTrace::from_firings(g, self.initial.clone(), self.firings.clone())?;
        Ok(t.final_dist)
    }
}

pub(crate) fn push_run(runs: &mut Vec<Run>, vertex: usize, count: u64) {
    match runs.last_mut() {
        Some(last) if last.vertex == vertex => last.count += count,
        _ => runs.push(Run { vertex, count }),
    }
}

// Working state of a game in progress.
pub(crate) struct Board<'g> {
    g: &'g Digraph,
    chips: Vec<BigInt>,
    fired: Vec<BigInt>,
    steps: u64,
}

impl<'g> Board<'g> {
    pub(crate) fn new(g: &'g Digraph, x: &ChipDistribution) -> Self {
        Self {
            g,
            chips: x.entries().to_vec(),
            fired: vec![BigInt::zero(); g.vertex_count()],
            steps: 0,
        }
    }

    #[inline]
    pub(crate) fn is_legal(&self, v: usize) -> bool {
        &self.chips[v] >= self.g.out_degree(v)
    }

    pub(crate) fn fire(&mut self, v: usize) {
        self.chips[v] -= self.g.out_degree(v);
        for (w, m) in self.g.successors(v) {
            self.chips[w] += m;
        }
        self.fired[v] += 1u32;
        self.steps += 1;
    }

    pub(crate) fn chips(&self) -> &[BigInt] {
        &self.chips
    }

    fn finish(self, initial: ChipDistribution, firings: Vec<Run>) -> GameTrace {
        GameTrace {
            initial,
            firings,
            final_dist: ChipDistribution::from_vec_unchecked(self.chips),
            firing_vector: FiringVector::from_vec_unchecked(self.fired),
        }
    }
}

/// Fires `v` once. Fails unless `x(v) >= d+(v)`.
pub fn fire(g: &Digraph, x: &ChipDistribution, v: usize) -> Result<ChipDistribution> {
    ensure_len(g, x.entries())?;
    if v >= g.vertex_count() {
        return Err(Error::InvalidInput(format!("vertex v{} out of range", v + 1)));
    }
    let mut board = Board::new(g, x);
    if !board.is_legal(v) {
        return Err(Error::IllegalFiring {
            vertex: v + 1,
            chips: x[v].to_string(),
            degree: g.out_degree(v).to_string(),
        });
    }
    board.fire(v);
    Ok(ChipDistribution::from_vec_unchecked(board.chips))
}

/// Vertices that may legally fire at `x`, ascending.
pub fn legal_firings(g: &Digraph, x: &ChipDistribution) -> Vec<usize> {
    (0..g.vertex_count().min(x.len()))
        .filter(|&v| &x[v] >= g.out_degree(v))
        .collect()
}

/// Plays the maximal game from `x` in which each vertex `v` fires at most
/// `bound(v)` times, always firing the lowest-indexed eligible vertex.
///
/// `step_cap = None` means unlimited.
pub fn run_bounded_game(
    g: &Digraph,
    x: &ChipDistribution,
    bound: &FiringVector,
    step_cap: Option<u64>,
) -> Result<GameTrace> {
    run_bounded_game_with(g, x, bound, step_cap, TieBreak::LowestIndex)
}

/// [`run_bounded_game`] with an explicit tie-breaking policy.
pub fn run_bounded_game_with(
    g: &Digraph,
    x: &ChipDistribution,
    bound: &FiringVector,
    step_cap: Option<u64>,
    tie: TieBreak,
) -> Result<GameTrace> {
    ensure_len(g, x.entries())?;
    ensure_len(g, bound.entries())?;
    let n = g.vertex_count();
    let mut board = Board::new(g, x);
    let mut remaining: Vec<BigInt> = bound.entries().to_vec();
    let mut chooser = Chooser::new(tie);
    let mut runs = Vec::new();
    loop {
        let next = chooser.pick(n, |v| !remaining[v].is_zero() && board.is_legal(v));
        let Some(v) = next else { break };
        if step_cap.is_some_and(|cap| board.steps >= cap) {
            return Err(Error::StepBudgetExceeded { cap: step_cap.unwrap_or_default() });
        }
        board.fire(v);
        remaining[v] -= 1u32;
        push_run(&mut runs, v, 1);
    }
    Ok(board.finish(x.clone(), runs))
}

/// Plays a legal game until no vertex can fire. Fails with
/// [`Error::StepBudgetExceeded`] if the game is still going after
/// `step_cap` firings.
pub fn run_maximal_game(g: &Digraph, x: &ChipDistribution, step_cap: u64, tie: TieBreak) -> Result<GameTrace> {
    ensure_len(g, x.entries())?;
    let n = g.vertex_count();
    let mut board = Board::new(g, x);
    let mut chooser = Chooser::new(tie);
    let mut runs = Vec::new();
    while let Some(v) = chooser.pick(n, |v| board.is_legal(v)) {
        if board.steps >= step_cap {
            return Err(Error::StepBudgetExceeded { cap: step_cap });
        }
        board.fire(v);
        push_run(&mut runs, v, 1);
    }
    Ok(board.finish(x.clone(), runs))
}

/// Removes the first `p(v)` occurrences of every vertex `v` from the
/// trace (all of them if `v` occurs fewer times). For a period vector
/// `p` the result is again legal from the same initial distribution; this
/// is checked by replay.
pub fn delete_period_prefix(g: &Digraph, trace: &GameTrace, p: &PeriodVector) -> Result<GameTrace> {
    ensure_len(g, p.entries())?;
    let mut to_skip: Vec<u64> = p
        .entries()
        .iter()
        .map(|e| e.to_u64().unwrap_or(u64::MAX))
        .collect();
    let mut runs = Vec::new();
    for run in trace.runs() {
        let skip = to_skip[run.vertex].min(run.count);
        to_skip[run.vertex] -= skip;
        if run.count > skip {
            push_run(&mut runs, run.vertex, run.count - skip);
        }
    }
    GameTrace::from_firings(g, trace.initial.clone(), runs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn dist(v: &[u64]) -> ChipDistribution {
        ChipDistribution::from_u64s(v)
    }

    fn runs(vs: &[usize]) -> Vec<Run> {
        let mut out = Vec::new();
        for &v in vs {
            push_run(&mut out, v, 1);
        }
        out
    }

    #[test]
    fn fire_examples() {
        let tri = fixtures::triangle();
        assert_eq!(fire(&tri, &dist(&[1, 0, 0]), 0).unwrap(), dist(&[0, 1, 0]));

        let ex = fixtures::six_vertex();
        let y = dist(&[0, 0, 1, 1, 1, 0]);
        let y1 = fire(&ex, &y, 4).unwrap();
        assert_eq!(y1, dist(&[0, 0, 1, 1, 0, 1]));
        assert_eq!(fire(&ex, &y1, 5).unwrap(), y);

        let d = fixtures::doubled_two_cycle();
        assert!(matches!(fire(&d, &dist(&[1, 1]), 0), Err(Error::IllegalFiring { vertex: 1, .. })));
    }

    #[test]
    fn legal_firing_examples() {
        assert_eq!(legal_firings(&fixtures::triangle(), &dist(&[1, 0, 0])), vec![0]);
        assert_eq!(legal_firings(&fixtures::six_vertex(), &dist(&[1, 1, 0, 0, 1, 0])), vec![4]);
        assert!(legal_firings(&fixtures::six_vertex(), &dist(&[0; 6])).is_empty());
    }

    #[test]
    fn bounded_game_examples() {
        let tri = fixtures::triangle();
        let t = run_bounded_game(&tri, &dist(&[1, 0, 0]), &FiringVector::from_u64s(&[1, 1, 1]), None).unwrap();
        assert_eq!(t.firing_vector(), &FiringVector::from_u64s(&[1, 1, 1]));
        assert_eq!(t.final_distribution(), &dist(&[1, 0, 0]));
        assert_eq!(t.iter_firings().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(t.replay(&tri).unwrap(), dist(&[1, 0, 0]));

        let ex = fixtures::six_vertex();
        let x = dist(&[1, 1, 0, 0, 1, 0]);
        let t = run_bounded_game(&ex, &x, &FiringVector::from_u64s(&[1, 1, 0, 0, 0, 0]), None).unwrap();
        assert!(t.firing_vector().is_zero());
        assert_eq!(t.final_distribution(), &x);

        let t = run_bounded_game(&ex, &x, &FiringVector::zeros(6), Some(0)).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.final_distribution(), &x);
    }

    #[test]
    fn bounded_game_step_cap() {
        let tri = fixtures::triangle();
        let bound = FiringVector::from_u64s(&[5, 5, 5]);
        let err = run_bounded_game(&tri, &dist(&[1, 0, 0]), &bound, Some(4)).unwrap_err();
        assert_eq!(err, Error::StepBudgetExceeded { cap: 4 });
        let t = run_bounded_game(&tri, &dist(&[1, 0, 0]), &bound, Some(15)).unwrap();
        assert_eq!(t.len(), 15);
        assert_eq!(t.runs().len(), 15);
    }

    #[test]
    fn maximal_game_terminates_or_hits_cap() {
        let path = fixtures::bidirected_path(3);
        let t = run_maximal_game(&path, &dist(&[1, 0, 0]), 100, TieBreak::LowestIndex).unwrap();
        assert_eq!(t.final_distribution(), &dist(&[0, 1, 0]));
        assert!(run_maximal_game(&fixtures::triangle(), &dist(&[1, 0, 0]), 50, TieBreak::LowestIndex).is_err());
    }

    #[test]
    fn delete_period_prefix_examples() {
        let tri = fixtures::triangle();
        let t = GameTrace::from_firings(&tri, dist(&[1, 0, 0]), runs(&[0, 1, 2, 0])).unwrap();
        let d = delete_period_prefix(&tri, &t, &PeriodVector::from_u64s(&[1, 1, 1])).unwrap();
        assert_eq!(d.iter_firings().collect::<Vec<_>>(), vec![0]);
        assert_eq!(d.initial(), &dist(&[1, 0, 0]));

        let same = delete_period_prefix(&tri, &t, &PeriodVector::zeros(3)).unwrap();
        assert_eq!(same, t);

        let ex = fixtures::six_vertex();
        let y = dist(&[0, 0, 1, 1, 1, 0]);
        let t = GameTrace::from_firings(&ex, y.clone(), runs(&[4, 5])).unwrap();
        let d = delete_period_prefix(&ex, &t, &PeriodVector::from_u64s(&[0, 0, 0, 0, 1, 1])).unwrap();
        assert!(d.is_empty());
        assert_eq!(d.final_distribution(), &y);
    }

    #[test]
    fn replay_rejects_illegal_sequence() {
        let tri = fixtures::triangle();
        let err = GameTrace::from_firings(&tri, dist(&[1, 0, 0]), runs(&[0, 0])).unwrap_err();
        assert_eq!(err, Error::ReplayFailure { position: 1 });
    }

    #[test]
    fn tie_breaks_agree_on_bounded_games() {
        let g = fixtures::six_vertex();
        let x = dist(&[4, 3, 2, 5, 1, 0]);
        let bound = FiringVector::from_u64s(&[3, 2, 2, 4, 1, 2]);
        let a = run_bounded_game_with(&g, &x, &bound, None, TieBreak::LowestIndex).unwrap();
        let b = run_bounded_game_with(&g, &x, &bound, None, TieBreak::HighestIndex).unwrap();
        let c = run_bounded_game_with(&g, &x, &bound, None, TieBreak::Seeded(7)).unwrap();
        assert_eq!(a.firing_vector(), b.firing_vector());
        assert_eq!(a.firing_vector(), c.firing_vector());
    }
}
