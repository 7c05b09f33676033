//! Compact descriptions of legal games.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::game::{GameTrace, Run};
use crate::graph::Digraph;
use crate::vector::ChipDistribution;

/// A sequence of firings played `repeat` times in a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub order: Vec<Run>,
    pub repeat: BigInt,
}

impl Block {
    pub fn new(order: Vec<Run>, repeat: BigInt) -> Self {
        Self { order, repeat }
    }

    fn width(&self) -> u64 {
        self.order.iter().map(|r| r.count).sum()
    }
}

/// A legal game from `initial` to `final_dist`, stored as repeated blocks.
///
/// Games found by the Eulerian decider can be exponentially long in the
/// input size; the block form stays polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    initial: ChipDistribution,
    blocks: Vec<Block>,
    final_dist: ChipDistribution,
}

impl Witness {
    pub fn new(initial: ChipDistribution, blocks: Vec<Block>, final_dist: ChipDistribution) -> Self {
        Self { initial, blocks, final_dist }
    }

    pub fn from_trace(trace: GameTrace) -> Self {
        let blocks = if trace.is_empty() {
            Vec::new()
        } else {
            vec![Block::new(trace.runs().to_vec(), BigInt::one())]
        };
        Self {
            initial: trace.initial().clone(),
            final_dist: trace.final_distribution().clone(),
            blocks,
        }
    }

    pub fn initial(&self) -> &ChipDistribution {
        &self.initial
    }

    pub fn final_distribution(&self) -> &ChipDistribution {
        &self.final_dist
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Total number of firings.
    pub fn length(&self) -> BigInt {
        self.blocks.iter().map(|b| &b.repeat * b.width()).sum()
    }

    /// Expands the blocks into an explicit game, replaying it for
    /// legality. Fails with [`Error::WitnessTooLong`] above `limit` firings
    /// and with [`Error::ReplayFailure`] if the blocks are not a legal game
    /// ending at the final distribution.
    pub fn expand(&self, g: &Digraph, limit: u64) -> Result<GameTrace> {
        let length = self.length();
        if length > BigInt::from(limit) {
            return Err(Error::WitnessTooLong { length: length.to_string(), limit });
        }
        let mut runs = Vec::new();
        for b in &self.blocks {
            let times = b.repeat.to_u64().unwrap_or(0);
            for _ in 0..times {
                for r in &b.order {
                    crate::game::push_run(&mut runs, r.vertex, r.count);
                }
            }
        }
        let trace = GameTrace::from_firings(g, self.initial.clone(), runs)?;
        if trace.final_distribution() != &self.final_dist {
            return Err(Error::ReplayFailure { position: trace.len() });
        }
        Ok(trace)
    }

    /// `true` if the witness has no firings.
    pub fn is_empty(&self) -> bool {
        self.length().is_zero()
    }
}
