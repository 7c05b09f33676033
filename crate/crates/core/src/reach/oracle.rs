//! Breadth-first search over the state graph of a game.
//!
//! Every reachable distribution has the same chip total as the start, so
//! the search space is finite. States are held as machine integers when
//! the chip total allows it.

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::ensure_len;
use crate::vector::ChipDistribution;

/// `true` iff some legal game leads from `x` to `y`.
///
/// Fails with [`Error::StateBudgetExceeded`] once more than `max_states`
/// distinct distributions have been generated.
pub fn reach_oracle_bfs(g: &Digraph, x: &ChipDistribution, y: &ChipDistribution, max_states: usize) -> Result<bool> {
    ensure_len(g, x.entries())?;
    ensure_len(g, y.entries())?;
    if x.total() != y.total() {
        return Ok(false);
    }
    let target = y.clone();
    let mut found = false;
    explore(g, x, max_states, |s| {
        if *s == target {
            found = true;
        }
        found
    })?;
    Ok(found)
}

/// All distributions reachable from `x` (including `x`), in BFS order.
pub fn reachable_distributions(g: &Digraph, x: &ChipDistribution, max_states: usize) -> Result<Vec<ChipDistribution>> {
    ensure_len(g, x.entries())?;
    let mut out = Vec::new();
    explore(g, x, max_states, |s| {
        out.push(s.clone());
        false
    })?;
    Ok(out)
}

// Visits states in BFS order until `visit` returns true or the space is
// exhausted.
fn explore(
    g: &Digraph,
    x: &ChipDistribution,
    max_states: usize,
    mut visit: impl FnMut(&ChipDistribution) -> bool,
) -> Result<()> {
    let total = x.total();
    match total.to_i64() {
        Some(t) if t <= i64::MAX / 4 => {
            let deg: Vec<i64> = g
                .out_degrees()
                .iter()
                .map(|d| d.to_i64().unwrap_or(i64::MAX))
                .collect();
            let succ: Vec<Vec<(usize, i64)>> = (0..g.vertex_count())
                .map(|u| {
                    g.successors(u)
                        .map(|(v, m)| (v, m.to_i64().unwrap_or(i64::MAX)))
                        .collect()
                })
                .collect();
            let start: Vec<i64> = x.entries().iter().map(|c| c.to_i64().expect("bounded by total")).collect();
            bfs(start, max_states, &deg, &succ, |s| {
                visit(&ChipDistribution::from_vec_unchecked(s.iter().map(|&c| BigInt::from(c)).collect()))
            })
        }
        _ => {
            let deg: Vec<BigInt> = g.out_degrees().to_vec();
            let succ: Vec<Vec<(usize, BigInt)>> = (0..g.vertex_count())
                .map(|u| g.successors(u).map(|(v, m)| (v, m.clone())).collect())
                .collect();
            bfs(x.entries().to_vec(), max_states, &deg, &succ, |s| {
                visit(&ChipDistribution::from_vec_unchecked(s.to_vec()))
            })
        }
    }
}

trait Chips: Clone + Eq + Hash + Ord + Zero {
    fn sub_assign(&mut self, other: &Self);
    fn add_assign(&mut self, other: &Self);
}

impl Chips for i64 {
    fn sub_assign(&mut self, other: &Self) {
        *self -= *other;
    }
    fn add_assign(&mut self, other: &Self) {
        // Only reached after a legal firing, so both sides are bounded by
        // the chip total.
        *self += *other;
    }
}

impl Chips for BigInt {
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}

fn bfs<T: Chips>(
    start: Vec<T>,
    max_states: usize,
    deg: &[T],
    succ: &[Vec<(usize, T)>],
    mut visit: impl FnMut(&[T]) -> bool,
) -> Result<()> {
    let mut seen: HashSet<Vec<T>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    if visit(&start) {
        return Ok(());
    }
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        for v in 0..s.len() {
            if s[v] < deg[v] {
                continue;
            }
            let mut next = s.clone();
            next[v].sub_assign(&deg[v]);
            for (w, m) in &succ[v] {
                next[*w].add_assign(m);
            }
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= max_states {
                return Err(Error::StateBudgetExceeded { cap: max_states });
            }
            seen.insert(next.clone());
            if visit(&next) {
                return Ok(());
            }
            queue.push_back(next);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn dist(v: &[u64]) -> ChipDistribution {
        ChipDistribution::from_u64s(v)
    }

    #[test]
    fn triangle_reachable_set() {
        let tri = fixtures::triangle();
        let mut states = reachable_distributions(&tri, &dist(&[1, 0, 0]), 100).unwrap();
        states.sort();
        assert_eq!(states, vec![dist(&[0, 0, 1]), dist(&[0, 1, 0]), dist(&[1, 0, 0])]);
        assert!(reach_oracle_bfs(&tri, &dist(&[1, 0, 0]), &dist(&[0, 0, 1]), 100).unwrap());
    }

    #[test]
    fn six_vertex_example_is_unreachable() {
        let (x, y) = fixtures::six_vertex_instance();
        assert!(!reach_oracle_bfs(&fixtures::six_vertex(), &x, &y, 1000).unwrap());
    }

    #[test]
    fn chip_total_prefilter() {
        let tri = fixtures::triangle();
        assert!(!reach_oracle_bfs(&tri, &dist(&[1, 0, 0]), &dist(&[1, 1, 0]), 0).unwrap());
    }

    #[test]
    fn state_budget() {
        let tri = fixtures::triangle();
        let err = reach_oracle_bfs(&tri, &dist(&[3, 3, 3]), &dist(&[9, 0, 0]), 5).unwrap_err();
        assert_eq!(err, Error::StateBudgetExceeded { cap: 5 });
    }

    #[test]
    fn huge_totals_use_big_states() {
        // No vertex can fire: the reachable set is just x.
        let g = Digraph::from_matrix(&[vec![BigInt::zero(), BigInt::from(10).pow(30)], vec![BigInt::from(10).pow(30), BigInt::zero()]]).unwrap();
        let big = BigInt::from(10).pow(25);
        let x = ChipDistribution::new(vec![big.clone(), big]).unwrap();
        assert_eq!(reachable_distributions(&g, &x, 10).unwrap(), vec![x]);
    }
}
