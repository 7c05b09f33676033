//! Small graphs and instances used throughout the tests and examples.

use crate::graph::Digraph;
use crate::vector::ChipDistribution;

/// The directed triangle v1 -> v2 -> v3 -> v1.
pub fn triangle() -> Digraph {
    Digraph::from_edges(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).expect("valid graph")
}

/// Two vertices joined by two parallel edges in each direction.
pub fn doubled_two_cycle() -> Digraph {
    Digraph::from_edges(2, &[(0, 1, 2), (1, 0, 2)]).expect("valid graph")
}

/// Two vertices joined by one edge in each direction.
pub fn two_cycle() -> Digraph {
    Digraph::from_edges(2, &[(0, 1, 1), (1, 0, 1)]).expect("valid graph")
}

/// The undirected path on `n` vertices, each edge stored in both
/// directions.
pub fn bidirected_path(n: usize) -> Digraph {
    let edges: Vec<_> = (1..n).flat_map(|i| [(i - 1, i, 1), (i, i - 1, 1)]).collect();
    Digraph::from_edges(n, &edges).expect("valid graph")
}

/// The complete graph on four vertices with every edge in both directions.
pub fn bidirected_k4() -> Digraph {
    let edges: Vec<_> = (0..4)
        .flat_map(|u| (0..4).filter(move |&v| v != u).map(move |v| (u, v, 1)))
        .collect();
    Digraph::from_edges(4, &edges).expect("valid graph")
}

/// Six vertices: a bidirected 4-cycle v1-v2-v3-v4-v1, edges v3 -> v5 and
/// v4 -> v6, and a 2-cycle v5 <-> v6. A recurrent target that is not
/// reachable despite a nonnegative firing vector existing.
pub fn six_vertex() -> Digraph {
    Digraph::from_edges(
        6,
        &[
            (0, 1, 1),
            (1, 0, 1),
            (1, 2, 1),
            (2, 1, 1),
            (2, 3, 1),
            (3, 2, 1),
            (3, 0, 1),
            (0, 3, 1),
            (2, 4, 1),
            (3, 5, 1),
            (4, 5, 1),
            (5, 4, 1),
        ],
    )
    .expect("valid graph")
}

/// `x = (1,1,0,0,1,0)` and `y = (0,0,1,1,1,0)` on [`six_vertex`].
pub fn six_vertex_instance() -> (ChipDistribution, ChipDistribution) {
    (
        ChipDistribution::from_u64s(&[1, 1, 0, 0, 1, 0]),
        ChipDistribution::from_u64s(&[0, 0, 1, 1, 1, 0]),
    )
}
