//! Cross-checks the deciders against exhaustive search on random graphs.
//!
//! Run with `cargo run --release --example oracle_crosscheck`.

use chipfire::gen;
use chipfire::reach::{reach_decide, reachable_distributions, Budget, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> chipfire::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut agree, mut disagree) = (0u32, 0u32);
    for round in 0..200 {
        let n = rng.gen_range(2..=5);
        let edges = rng.gen_range(n..=3 * n);
        let g = if round % 2 == 0 {
            gen::random_eulerian(&mut rng, n, edges, 2)
        } else {
            gen::random_digraph(&mut rng, n, edges, 2)
        };
        let total = rng.gen_range(0..=5);
        let x = gen::random_distribution(&mut rng, n, total);
        let reachable = reachable_distributions(&g, &x, 100_000)?;
        for y in gen::distributions_with_total(n, total) {
            let r = reach_decide(&g, &x, &y, Budget::default())?;
            if (r.verdict == Verdict::Yes) == reachable.contains(&y) {
                agree += 1;
            } else {
                disagree += 1;
            }
        }
    }
    println!("{agree} agreements, {disagree} disagreements");
    Ok(())
}
