//! Minimum spanning trees: Euclidean in the plane, and of arbitrary networks.

use std::cmp::Ordering;

use crate::delaunay::delaunay;
use crate::error::{Result, SpannerError};
use crate::geometry::PointSet;
use crate::graph::GeoGraph;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Kruskal order: by length, then by the endpoint pair.
pub(crate) fn edge_order(points: &PointSet, a: (usize, usize), b: (usize, usize)) -> Ordering {
    points
        .dist(a.0, a.1)
        .total_cmp(&points.dist(b.0, b.1))
        .then(a.cmp(&b))
}

/// Minimum spanning forest of `graph` under the Kruskal tie-break order.
fn kruskal(graph: &GeoGraph) -> Vec<(usize, usize)> {
    let points = graph.points();
    let mut edges = graph.edges().to_vec();
    edges.sort_by(|&a, &b| edge_order(points, a, b));
    let mut uf = UnionFind::new(graph.vertex_count());
    edges.into_iter().filter(|&(a, b)| uf.union(a, b)).collect()
}

/// Minimum spanning tree of a connected network.
pub fn mst_of_graph(graph: &GeoGraph) -> Result<GeoGraph> {
    let tree = kruskal(graph);
    if tree.len() + 1 != graph.vertex_count() {
        return Err(SpannerError::Disconnected);
    }
    GeoGraph::new(graph.points().clone(), tree)
}

/// Euclidean minimum spanning tree, computed on the Delaunay edges.
pub fn emst_2d(points: &PointSet) -> Result<GeoGraph> {
    mst_of_graph(&delaunay(points)?)
}

/// Vertex sequence of the unique path from `from` to `to` in a tree.
pub fn tree_path(tree: &GeoGraph, from: usize, to: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; tree.vertex_count()];
    parent[from] = from;
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            break;
        }
        for &w in tree.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}
