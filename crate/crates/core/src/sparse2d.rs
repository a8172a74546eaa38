//! Planar networks with at most `n - 1 + k` edges and dilation `O(n/(k+1))`.
//!
//! The Euclidean MST is cut into `m = floor((k+5)/2)` subtrees; the subtree
//! edges are kept and every pair of subtrees joined by some Delaunay edge
//! receives the shortest such edge. Contracting the subtrees leaves a simple
//! planar graph on `m` nodes, so at most `3m - 6` connectors are added.

use std::collections::HashMap;

use crate::delaunay::delaunay;
use crate::error::{invalid, Result};
use crate::geometry::PointSet;
use crate::graph::GeoGraph;
use crate::mst::{edge_order, mst_of_graph};
use crate::partition::{partition_tree, TreePartition};

#[derive(Debug, Clone)]
pub struct SparseSpanner2d {
    pub graph: GeoGraph,
    /// `None` when `k = 0` and the MST is returned directly.
    pub partition: Option<TreePartition>,
    /// Shortest Delaunay edge per connected subtree pair.
    pub connectors: Vec<(usize, usize)>,
}

/// Number of subtrees used for a surplus of `k` edges, capped at `n`.
pub fn subtree_count(n: usize, k: usize) -> usize {
    ((k + 5) / 2).min(n)
}

fn check(points: &PointSet, k: usize) -> Result<()> {
    points.require_dim(2)?;
    let n = points.len();
    if k > 0 && (n < 3 || k + 5 > 2 * n) {
        return Err(invalid(format!(
            "need 0 <= k <= 2n - 5, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

pub fn sparse_spanner_2d_detailed(points: &PointSet, k: usize) -> Result<SparseSpanner2d> {
    check(points, k)?;
    let triangulation = delaunay(points)?;
    let tree = mst_of_graph(&triangulation)?;
    if k == 0 {
        return Ok(SparseSpanner2d {
            graph: tree,
            partition: None,
            connectors: Vec::new(),
        });
    }
    let part = partition_tree(&tree, subtree_count(points.len(), k))?;

    let mut shortest: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for &(p, q) in triangulation.edges() {
        let (a, b) = (part.membership[p], part.membership[q]);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        shortest
            .entry(key)
            .and_modify(|best| {
                if edge_order(points, (p, q), *best).is_lt() {
                    *best = (p, q);
                }
            })
            .or_insert((p, q));
    }
    let mut connectors: Vec<(usize, usize)> = shortest.into_values().collect();
    connectors.sort_unstable();

    let kept = tree
        .edges()
        .iter()
        .copied()
        .filter(|e| part.removed_edges.binary_search(e).is_err());
    let graph = GeoGraph::new(points.clone(), kept.chain(connectors.iter().copied()))?;
    Ok(SparseSpanner2d {
        graph,
        partition: Some(part),
        connectors,
    })
}

/// Planar network with at most `n - 1 + k` edges, `0 <= k <= 2n - 5`.
pub fn sparse_spanner_2d(points: &PointSet, k: usize) -> Result<GeoGraph> {
    sparse_spanner_2d_detailed(points, k).map(|s| s.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_circle, gen_multi_circle, gen_random};
    use crate::graph::dilation;
    use crate::mst::emst_2d;

    #[test]
    fn k_zero_is_the_emst() {
        let s = gen_random(50, 2, 4).unwrap();
        let g = sparse_spanner_2d(&s, 0).unwrap();
        assert_eq!(g, emst_2d(&s).unwrap());
        assert_eq!(g.edge_count(), 49);
    }

    #[test]
    fn k_seven_on_hundred_points() {
        let s = gen_random(100, 2, 5).unwrap();
        let out = sparse_spanner_2d_detailed(&s, 7).unwrap();
        assert_eq!(out.partition.as_ref().unwrap().len(), 6);
        assert!(out.graph.edge_count() <= 106);
        assert!(out.graph.is_connected());
    }

    #[test]
    fn range_checks() {
        let s = gen_random(10, 2, 0).unwrap();
        assert!(sparse_spanner_2d(&s, 15).is_ok());
        assert!(sparse_spanner_2d(&s, 16).is_err());
        let two = gen_random(2, 2, 0).unwrap();
        assert_eq!(sparse_spanner_2d(&two, 0).unwrap().edge_count(), 1);
        assert!(sparse_spanner_2d(&two, 1).is_err());
        assert!(sparse_spanner_2d(&gen_random(5, 3, 0).unwrap(), 0).is_err());
    }

    #[test]
    fn connectors_are_shortest_delaunay_edges_between_subtrees() {
        let s = gen_random(120, 2, 9).unwrap();
        let del = delaunay(&s).unwrap();
        let out = sparse_spanner_2d_detailed(&s, 11).unwrap();
        let part = out.partition.unwrap();
        let mut seen = std::collections::HashSet::new();
        for &(p, q) in &out.connectors {
            let key = (
                part.membership[p].min(part.membership[q]),
                part.membership[p].max(part.membership[q]),
            );
            assert!(seen.insert(key), "one connector per subtree pair");
            for &(a, b) in del.edges() {
                let k2 = (
                    part.membership[a].min(part.membership[b]),
                    part.membership[a].max(part.membership[b]),
                );
                if k2 == key {
                    assert!(s.dist(p, q) <= s.dist(a, b));
                }
            }
        }
        for &(a, b) in out.graph.edges() {
            assert!(del.contains_edge(a, b));
        }
    }

    #[test]
    fn budget_on_degenerate_inputs() {
        for n in [8usize, 20, 41] {
            let s = gen_circle(n).unwrap();
            for k in [1, 3, n - 1, 2 * n - 5] {
                let g = sparse_spanner_2d(&s, k).unwrap();
                assert!(g.edge_count() <= n - 1 + k);
                assert!(g.is_connected());
            }
        }
        let s = PointSet::from_rows((0..12).map(|i| vec![i as f64, 2.0 * i as f64])).unwrap();
        assert_eq!(sparse_spanner_2d(&s, 5).unwrap().edge_count(), 11);
    }

    #[test]
    fn multi_circle_lower_bound_is_respected() {
        let s = gen_multi_circle(40, 1).unwrap();
        let g = sparse_spanner_2d(&s, 1).unwrap();
        let bound = 2.0 / std::f64::consts::PI * 20.0 - 1.0;
        assert!(dilation(&g).unwrap().value() >= bound - 1e-9);
    }
}
