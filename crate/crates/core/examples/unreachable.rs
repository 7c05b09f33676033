//! A distribution that is linearly reachable but not reachable by play,
//! with the certificate that proves it.
//!
//! Run with `cargo run --example unreachable`.

use chipfire::fixtures;
use chipfire::linalg::solve_nonneg_firing;
use chipfire::reach::{reach_decide, reach_oracle_bfs, verify_nonreach_certificate, Budget};

fn main() -> chipfire::Result<()> {
    let g = fixtures::six_vertex();
    let (x, y) = fixtures::six_vertex_instance();
    println!("graph:\n{}", g.to_text());
    println!("x = {x}\ny = {y}");

    let f = solve_nonneg_firing(&g, &x, &y).expect("a nonnegative firing vector exists");
    println!("reduced firing vector f = {f}");

    let r = reach_decide(&g, &x, &y, Budget::default())?;
    println!("verdict: {:?} via {}", r.verdict, r.method.name());
    if let Some(cert) = &r.certificate {
        println!("certificate: {}", serde_json::to_string(cert).expect("serializes"));
        println!("certificate verifies: {}", verify_nonreach_certificate(&g, &x, &y, cert));
    }
    println!("exhaustive search agrees: {}", !reach_oracle_bfs(&g, &x, &y, 10_000)?);
    Ok(())
}
