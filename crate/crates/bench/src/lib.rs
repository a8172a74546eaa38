//! Shared inputs for the benchmarks.

use sparsenet::{gen_random, PointSet};

/// Sizes swept by every benchmark group.
pub const SIZES: [usize; 3] = [64, 128, 256];

/// Uniform random input of `n` points, fixed per `(n, dim)`.
pub fn workload(n: usize, dim: usize) -> PointSet {
    gen_random(n, dim, (n * 31 + dim) as u64).expect("valid sizes")
}
