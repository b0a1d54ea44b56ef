//! Fixtures shared by the benchmarks.

use xgraph_core::{Graph, GraphMap};

/// The five-vertex graph from the induced-inclusion cobase-change counterexample.
pub fn figure_c() -> Graph {
    Graph::new(
        ["a", "b", "c", "p", "q"],
        [("a", "b"), ("a", "c"), ("b", "c"), ("b", "p"), ("b", "q"), ("c", "q"), ("p", "q")],
    )
    .unwrap()
}

/// `K₂ ↪ P₃` on the first two vertices.
pub fn edge_into_path() -> GraphMap {
    GraphMap::new(Graph::complete(2), Graph::path(3), [("1", "1"), ("2", "2")]).unwrap()
}
