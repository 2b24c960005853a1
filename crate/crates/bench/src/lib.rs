//! Benchmark fixtures.

use scaffoldkit::{named, CubicGraph};

/// Graphs used across the benchmark groups, with display names.
pub fn fixtures() -> Vec<(&'static str, CubicGraph)> {
    vec![
        ("k4", named::k4()),
        ("prism3", named::prism(3)),
        ("cube", named::cube()),
        ("petersen", named::petersen()),
        ("franklin", named::franklin()),
    ]
}
