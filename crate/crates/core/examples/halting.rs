//! Termination, and certificates of non-termination on Eulerian graphs.
//!
//! Run with `cargo run --example halting`.

use chipfire::fixtures;
use chipfire::halting::{decide_halting, make_halting_certificate, verify_halting_certificate, HaltingResult};
use chipfire::ChipDistribution;

fn main() -> chipfire::Result<()> {
    let g = fixtures::bidirected_k4();
    for chips in [[3, 0, 1, 1], [4, 2, 0, 0], [3, 2, 2, 2]] {
        let x = ChipDistribution::from_u64s(&chips);
        match decide_halting(&g, &x, 100_000)? {
            HaltingResult::Terminating(t) => {
                println!("{x}: stops after {} firings at {}", t.len(), t.final_distribution());
            }
            HaltingResult::NonTerminating { prefix, cycle } => {
                println!(
                    "{x}: runs forever; {} recurs every {} firings after {}",
                    cycle.initial(),
                    cycle.len(),
                    prefix.len()
                );
                let cert = make_halting_certificate(&g, &x, 100_000)?.expect("non-terminating");
                println!(
                    "  certificate {} verifies: {}",
                    serde_json::to_string(&cert).expect("serializes"),
                    verify_halting_certificate(&g, &x, &cert)?
                );
            }
            HaltingResult::UndecidedBudget { states } => println!("{x}: undecided after {states} states"),
        }
    }
    Ok(())
}
