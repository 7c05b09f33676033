//! The strongly polynomial decider on an Eulerian graph, at small and at
//! astronomically large chip counts.
//!
//! Run with `cargo run --example eulerian_reach`.

use chipfire::game::run_bounded_game;
use chipfire::reach::reach_eulerian_with_plan;
use chipfire::{ChipDistribution, Digraph, FiringVector};
use num_bigint::BigInt;

fn main() -> chipfire::Result<()> {
    // Bidirected 5-cycle with a directed chord cycle 1 -> 3 -> 5 -> 1.
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5, 1));
        edges.push(((i + 1) % 5, i, 1));
    }
    edges.extend([(0, 2, 1), (2, 4, 1), (4, 0, 1)]);
    let g = Digraph::from_edges(5, &edges)?;
    assert!(g.is_eulerian());

    let x = ChipDistribution::from_u64s(&[8, 6, 9, 5, 7]);
    let f = FiringVector::from_u64s(&[4, 1, 3, 0, 3]);
    let y = run_bounded_game(&g, &x, &f, None)?.final_distribution().clone();

    for scale in [BigInt::from(1), BigInt::from(10).pow(30)] {
        let xs = ChipDistribution::new(x.entries().iter().map(|c| c * &scale).collect())?;
        let ys = ChipDistribution::new(y.entries().iter().map(|c| c * &scale).collect())?;
        let (r, plan) = reach_eulerian_with_plan(&g, &xs, &ys)?;
        println!("scale {scale}: {:?}", r.verdict);
        if let Some(plan) = plan {
            println!("  firing vector {}", plan.firing_vector());
            for i in 0..plan.distinct() {
                let set: Vec<String> = plan.set(i).iter().map(|v| format!("v{}", v + 1)).collect();
                println!("  fire {{{}}} {} times", set.join(", "), plan.repeat(i));
            }
        }
        println!(
            "  set checks {}, steps {}, arithmetic ops {}",
            r.stats.set_checks, r.stats.steps, r.stats.arithmetic_ops
        );
        if let Some(w) = &r.witness {
            println!("  witness: {} firings in {} blocks", w.length(), w.blocks().len());
        }
    }
    Ok(())
}
