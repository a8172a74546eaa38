//! Sparse geometric networks with a prescribed edge budget.
//!
//! Builders return a [`GeoGraph`] on at most `n - 1 + k` edges; [`dilation`]
//! measures it exactly. The [`bounds`] module holds closed-form lower bounds
//! and exhaustive oracles for small inputs, and [`verify`] runs the checks
//! behind the `verify` command and the acceptance tests.

pub mod bounds;
pub mod delaunay;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod highd;
pub mod io;
pub mod mst;
pub mod partition;
pub mod predicates;
pub mod sparse2d;
pub mod spread;
pub mod verify;

pub use bounds::{
    analytic_bound, brute_min_graph, brute_min_tree, inscribed_triangle_min_perimeter, BoundKind,
    BoundSpec,
};
pub use delaunay::{delaunay, triangulate, Triangulation};
pub use error::{Result, SpannerError};
pub use generators::{
    gen_circle, gen_convex_rect, gen_grid, gen_grid_squares, gen_multi_circle, gen_random,
    GridSquaresSpec,
};
pub use geometry::{distance, spread, Point, PointSet, SpannerParams};
pub use graph::{
    dilation, dilation_with_workers, graph_distance, DilationReport, GeoGraph, GraphLength,
};
pub use highd::{greedy_tspanner, sparse_spanner_highd, HighDResult};
pub use mst::{emst_2d, mst_of_graph};
pub use partition::{partition_recursive, partition_tree, TreePartition};
pub use sparse2d::{sparse_spanner_2d, sparse_spanner_2d_detailed};
pub use spread::{bounded_spread_spanner, BoundedSpreadSpanner};
