//! Strongly connected components, primitive period vectors and per(G).
//!
//! Run with `cargo run --example period_vectors`.

use chipfire::fixtures;
use chipfire::linalg::{per, primitive_period_vector};
use chipfire::Digraph;

fn show(name: &str, g: &Digraph) -> chipfire::Result<()> {
    println!("{name}");
    let scc = g.scc();
    for (i, comp) in scc.components().iter().enumerate() {
        let p = primitive_period_vector(g, comp)?;
        let local: Vec<String> = comp.iter().map(|&v| p[v].to_string()).collect();
        let names: Vec<String> = comp.iter().map(|v| format!("v{}", v + 1)).collect();
        let sink = if scc.is_sink(i) { " sink" } else { "" };
        println!("  {{{}}}{sink}: period {}", names.join(", "), local.join(" "));
    }
    println!("  per(G) = {}", per(g));
    Ok(())
}

fn main() -> chipfire::Result<()> {
    show("six-vertex example", &fixtures::six_vertex())?;
    show("doubled 2-cycle", &fixtures::doubled_two_cycle())?;
    // 1 -> 2 twice, 2 -> 3, 3 -> 1: not Eulerian.
    let g = Digraph::from_edges(3, &[(0, 1, 2), (1, 2, 1), (2, 0, 1)])?;
    show("unbalanced triangle", &g)?;
    Ok(())
}
