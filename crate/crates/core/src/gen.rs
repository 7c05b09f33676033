//! Seeded random instances.
//!
//! All generators take the random source as a parameter; with a seeded
//! `ChaCha8Rng` the output is fully determined by the seed.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Digraph;
use crate::vector::ChipDistribution;

fn build(n: usize, mult: &[Vec<u32>]) -> Digraph {
    let rows: Vec<Vec<BigInt>> = mult
        .iter()
        .map(|r| r.iter().map(|&m| BigInt::from(m)).collect())
        .collect();
    debug_assert_eq!(rows.len(), n);
    Digraph::from_matrix(&rows).expect("generated graphs are connected and loop-free")
}

/// A random weakly connected digraph on `n` vertices with `edges` edges
/// counted with multiplicity, no pair carrying more than `max_mult`.
///
/// A random spanning tree with random orientations comes first, so
/// `edges` is raised to `n - 1` if smaller and lowered to the capacity
/// `n (n - 1) max_mult` if larger.
pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, edges: usize, max_mult: u32) -> Digraph {
    assert!(n >= 1 && max_mult >= 1);
    let mut mult = vec![vec![0u32; n]; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let u = order[i];
        let w = order[rng.gen_range(0..i)];
        if rng.gen_bool(0.5) {
            mult[u][w] += 1;
        } else {
            mult[w][u] += 1;
        }
    }
    let target = edges.clamp(n.saturating_sub(1), n * (n - 1) * max_mult as usize);
    add_random_edges(rng, &mut mult, target - (n - 1), max_mult);
    build(n, &mult)
}

/// A random strongly connected digraph: a random Hamiltonian cycle plus
/// random extra edges, `edges` in total (clamped as for
/// [`random_digraph`], with `n` as the lower bound when `n > 1`).
pub fn random_strongly_connected<R: Rng + ?Sized>(rng: &mut R, n: usize, edges: usize, max_mult: u32) -> Digraph {
    assert!(n >= 1 && max_mult >= 1);
    let mut mult = vec![vec![0u32; n]; n];
    if n == 1 {
        return build(n, &mult);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 0..n {
        mult[order[i]][order[(i + 1) % n]] += 1;
    }
    let base = if n == 2 { 2 } else { n };
    let target = edges.clamp(base, n * (n - 1) * max_mult as usize);
    add_random_edges(rng, &mut mult, target - base, max_mult);
    build(n, &mult)
}

fn add_random_edges<R: Rng + ?Sized>(rng: &mut R, mult: &mut [Vec<u32>], count: usize, max_mult: u32) {
    let n = mult.len();
    for _ in 0..count {
        let free: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && mult[u][v] < max_mult)
            .collect();
        let Some(&(u, v)) = free.choose(rng) else { return };
        mult[u][v] += 1;
    }
}

/// A random connected Eulerian digraph built as a union of random closed
/// walks: one through every vertex, then random cycles until about
/// `edges` edges are placed. Pairs carry at most `max_mult` edges, so the
/// result may have fewer edges than asked for.
pub fn random_eulerian<R: Rng + ?Sized>(rng: &mut R, n: usize, edges: usize, max_mult: u32) -> Digraph {
    assert!(n >= 1 && max_mult >= 1);
    let mut mult = vec![vec![0u32; n]; n];
    if n == 1 {
        return build(n, &mult);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    add_cycle(&mut mult, &order);
    let mut placed = n;
    let mut attempts = 0;
    while placed + 2 <= edges && attempts < 64 * (edges + 1) {
        attempts += 1;
        let len = rng.gen_range(2..=n.min(edges - placed));
        order.shuffle(rng);
        let cycle = &order[..len];
        let fits = (0..len).all(|i| mult[cycle[i]][cycle[(i + 1) % len]] < max_mult);
        if fits {
            add_cycle(&mut mult, cycle);
            placed += len;
        }
    }
    build(n, &mult)
}

fn add_cycle(mult: &mut [Vec<u32>], cycle: &[usize]) {
    for i in 0..cycle.len() {
        mult[cycle[i]][cycle[(i + 1) % cycle.len()]] += 1;
    }
}

/// `total` chips placed one at a time on uniformly random vertices.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, n: usize, total: u64) -> ChipDistribution {
    let mut chips = vec![0u64; n];
    for _ in 0..total {
        chips[rng.gen_range(0..n)] += 1;
    }
    ChipDistribution::from_u64s(&chips)
}

/// Every distribution on `n` vertices with exactly `total` chips, in
/// lexicographic order.
pub fn distributions_with_total(n: usize, total: u64) -> Vec<ChipDistribution> {
    fn rec(n: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<ChipDistribution>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(ChipDistribution::from_u64s(cur));
            cur.pop();
            return;
        }
        for c in 0..=left {
            cur.push(c);
            rec(n, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, total, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_their_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            for edges in [0, 3, 8, 20] {
                let g = random_digraph(&mut rng, n, edges, 2);
                assert!((0..n).all(|u| (0..n).all(|v| g.multiplicity(u, v) <= &BigInt::from(2))));
                let s = random_strongly_connected(&mut rng, n, edges, 2);
                assert!(s.is_strongly_connected());
                let e = random_eulerian(&mut rng, n, edges, 3);
                assert!(e.is_eulerian());
                assert!((0..n).all(|u| (0..n).all(|v| e.multiplicity(u, v) <= &BigInt::from(3))));
            }
        }
    }

    #[test]
    fn same_seed_same_graph() {
        let a = random_digraph(&mut ChaCha8Rng::seed_from_u64(3), 5, 9, 3);
        let b = random_digraph(&mut ChaCha8Rng::seed_from_u64(3), 5, 9, 3);
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn distribution_enumeration() {
        assert_eq!(distributions_with_total(3, 2).len(), 6);
        assert_eq!(distributions_with_total(4, 5).len(), 56);
        assert_eq!(distributions_with_total(1, 4), vec![ChipDistribution::from_u64s(&[4])]);
        let d = random_distribution(&mut ChaCha8Rng::seed_from_u64(1), 4, 9);
        assert_eq!(d.total(), BigInt::from(9));
    }
}
