//! Graphs shared by the benchmarks.

use zykov::builders::{cell600, cycle, icosahedron, join, points};
use zykov::Graph;

pub fn spheres() -> Vec<(&'static str, Graph)> {
    vec![
        ("icosahedron", icosahedron()),
        ("c5_join_c5", join(&cycle(5), &cycle(5))),
        ("s0_join_c5_join_c4", join(&points(2), &join(&cycle(5), &cycle(4)))),
        ("cell600", cell600()),
    ]
}
