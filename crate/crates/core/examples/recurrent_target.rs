//! Reaching a recurrent target: linear equivalence is enough.
//!
//! Run with `cargo run --example recurrent_target`.

use chipfire::gen;
use chipfire::linalg::linear_equivalent;
use chipfire::reach::{is_recurrent, reach_recurrent_target};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> chipfire::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = gen::random_strongly_connected(&mut rng, 5, 9, 2);
    println!("graph:\n{}", g.to_text());

    // Look for a recurrent y and some other x with the same class.
    loop {
        let y = gen::random_distribution(&mut rng, 5, 12);
        let x = gen::random_distribution(&mut rng, 5, 12);
        if !is_recurrent(&g, &y, None)? || linear_equivalent(&g, &x, &y).is_none() || x == y {
            continue;
        }
        println!("x = {x}\ny = {y} (recurrent)");
        let r = reach_recurrent_target(&g, &x, &y, None)?.expect("y is recurrent");
        let trace = r.witness.expect("positive answers carry a witness").expand(&g, 10_000)?;
        let order: Vec<String> = trace.iter_firings().map(|v| format!("v{}", v + 1)).collect();
        println!("{:?}: {}", r.verdict, order.join(" "));
        println!("firing vector {}", trace.firing_vector());
        return Ok(());
    }
}
