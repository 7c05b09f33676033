//! Test-side reference implementations, written directly against the
//! adjacency matrix and independent of the library's deciders.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use chipfire::{ChipDistribution, Digraph};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// `m[u][v]` = number of edges u -> v.
pub type Matrix = Vec<Vec<u64>>;

pub fn digraph(m: &Matrix) -> Digraph {
    let rows: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    Digraph::from_matrix(&rows).unwrap()
}

pub fn matrix_of(g: &Digraph) -> Matrix {
    let n = g.vertex_count();
    (0..n)
        .map(|u| (0..n).map(|v| g.multiplicity(u, v).to_u64().unwrap()).collect())
        .collect()
}

pub fn out_deg(m: &Matrix) -> Vec<u64> {
    m.iter().map(|r| r.iter().sum()).collect()
}

fn weakly_connected(m: &Matrix) -> bool {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if !seen[v] && (m[u][v] > 0 || m[v][u] > 0) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn balanced(m: &Matrix) -> bool {
    let n = m.len();
    (0..n).all(|v| (0..n).map(|u| m[u][v]).sum::<u64>() == m[v].iter().sum::<u64>())
}

/// Every labeled connected Eulerian digraph with `n` vertices, at most
/// `max_pair` edges u -> v for each pair and at most `max_total` edges.
pub fn eulerian_graphs(n: usize, max_total: u64, max_pair: u64) -> Vec<Matrix> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|(u, v)| u != v).collect();
    let mut out = Vec::new();
    let mut m = vec![vec![0u64; n]; n];
    fn rec(i: usize, total: u64, pairs: &[(usize, usize)], m: &mut Matrix, max_total: u64, max_pair: u64, out: &mut Vec<Matrix>) {
        if i == pairs.len() {
            if balanced(m) && weakly_connected(m) {
                out.push(m.clone());
            }
            return;
        }
        let (u, v) = pairs[i];
        for k in 0..=max_pair.min(max_total - total) {
            m[u][v] = k;
            rec(i + 1, total + k, pairs, m, max_total, max_pair, out);
        }
        m[u][v] = 0;
    }
    rec(0, 0, &pairs, &mut m, max_total, max_pair, &mut out);
    out
}

/// All vectors of `n` nonnegative integers summing to `total`.
pub fn compositions(n: usize, total: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every distribution reachable from `x` by legal firings.
pub fn reachable(m: &Matrix, x: &[u64]) -> HashSet<Vec<u64>> {
    let d = out_deg(m);
    let n = m.len();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(x.to_vec());
    queue.push_back(x.to_vec());
    while let Some(s) = queue.pop_front() {
        for v in 0..n {
            if s[v] < d[v] {
                continue;
            }
            let mut t = s.clone();
            t[v] -= d[v];
            for w in 0..n {
                t[w] += m[v][w];
            }
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen
}

/// `x + L z` computed from the matrix.
pub fn plus_laplacian(m: &Matrix, x: &[i64], z: &[i64]) -> Vec<i64> {
    let n = m.len();
    let d = out_deg(m);
    (0..n)
        .map(|u| x[u] - d[u] as i64 * z[u] + (0..n).map(|v| m[v][u] as i64 * z[v]).sum::<i64>())
        .collect()
}

pub fn dist(v: &[u64]) -> ChipDistribution {
    ChipDistribution::from_u64s(v)
}

pub fn to_u64s(d: &ChipDistribution) -> Vec<u64> {
    d.entries().iter().map(|e| e.to_u64().unwrap()).collect()
}

pub fn to_i64s(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|e| e.to_i64().unwrap()).collect()
}
