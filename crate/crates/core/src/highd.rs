//! Sparse networks in any dimension built from the MST of a t-spanner.
//!
//! `G` is a path-greedy t-spanner of the input and `T` its minimum spanning
//! tree. `T` is cut into `m + 1` subtrees; the endpoints `X` of the cut
//! edges get their own greedy t-spanner `G''`, and the output is the union
//! of the subtrees with `G''`. The number of cuts is the largest `m` found
//! by binary search whose union still fits in `n - 1 + k` edges.

use std::collections::BinaryHeap;

use crate::error::{invalid, Result};
use crate::geometry::PointSet;
use crate::graph::GeoGraph;
use crate::mst::{edge_order, mst_of_graph};
use crate::partition::{partition_tree, TreePartition};

/// Growable adjacency with a reusable bounded Dijkstra.
struct GreedyState<'a> {
    points: &'a PointSet,
    adjacency: Vec<Vec<usize>>,
    dist: Vec<f64>,
    touched: Vec<usize>,
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl GreedyState<'_> {
    /// True if some path from `s` to `target` has length at most `limit`.
    fn within(&mut self, s: usize, target: usize, limit: f64) -> bool {
        for &v in &self.touched {
            self.dist[v] = f64::INFINITY;
        }
        self.touched.clear();
        let mut heap = BinaryHeap::new();
        self.dist[s] = 0.0;
        self.touched.push(s);
        heap.push(Entry(0.0, s));
        while let Some(Entry(d, v)) = heap.pop() {
            if v == target {
                return true;
            }
            if d > self.dist[v] {
                continue;
            }
            for &w in &self.adjacency[v] {
                let nd = d + self.points.dist(v, w);
                if nd <= limit && nd < self.dist[w] {
                    if self.dist[w].is_infinite() {
                        self.touched.push(w);
                    }
                    self.dist[w] = nd;
                    heap.push(Entry(nd, w));
                }
            }
        }
        false
    }
}

/// Path-greedy t-spanner: pairs in increasing length are added whenever
/// the current graph distance exceeds `t` times their length.
pub fn greedy_tspanner(points: &PointSet, t: f64) -> Result<GeoGraph> {
    if t.is_nan() || t <= 1.0 || t.is_infinite() {
        return Err(invalid(format!(
            "greedy spanner needs finite t > 1, got {t}"
        )));
    }
    let n = points.len();
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    pairs.sort_by(|&a, &b| edge_order(points, a, b));
    let mut state = GreedyState {
        points,
        adjacency: vec![Vec::new(); n],
        dist: vec![f64::INFINITY; n],
        touched: Vec::new(),
    };
    let mut edges = Vec::new();
    for (a, b) in pairs {
        if !state.within(a, b, t * points.dist(a, b)) {
            state.adjacency[a].push(b);
            state.adjacency[b].push(a);
            edges.push((a, b));
        }
    }
    GeoGraph::new(points.clone(), edges)
}

#[derive(Debug, Clone)]
pub struct HighDResult {
    pub graph: GeoGraph,
    /// The greedy t-spanner of the whole input.
    pub base_spanner: GeoGraph,
    /// Minimum spanning tree of `base_spanner`.
    pub tree: GeoGraph,
    pub subtrees: TreePartition,
    /// Endpoints of the cut tree edges.
    pub boundary: Vec<usize>,
    /// Edges of the spanner on `boundary`, in input indices.
    pub inner_spanner_edges: Vec<(usize, usize)>,
    pub max_degree: usize,
}

/// Per-vertex degree check against the subtree/inner-spanner decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeAccounting {
    /// Every vertex satisfies the accounting inequality.
    pub holds: bool,
    pub max_degree: usize,
    pub base_max_degree: usize,
    pub inner_max_degree: usize,
}

impl DegreeAccounting {
    /// Degree at most five follows when both spanners have degree at most three.
    pub fn degree_five_applies(&self) -> bool {
        self.base_max_degree <= 3 && self.inner_max_degree <= 3
    }
}

impl HighDResult {
    pub fn degree_accounting(&self) -> DegreeAccounting {
        let n = self.graph.vertex_count();
        let mut inner_deg = vec![0usize; n];
        for &(a, b) in &self.inner_spanner_edges {
            inner_deg[a] += 1;
            inner_deg[b] += 1;
        }
        let holds = (0..n).all(|p| {
            let (out, tree) = (self.graph.degree(p), self.tree.degree(p));
            if self.boundary.binary_search(&p).is_ok() {
                out < tree + inner_deg[p]
            } else {
                out == tree
            }
        });
        DegreeAccounting {
            holds,
            max_degree: self.max_degree,
            base_max_degree: self.base_spanner.max_degree(),
            inner_max_degree: inner_deg.iter().copied().max().unwrap_or(0),
        }
    }
}

struct Candidate {
    part: TreePartition,
    inner: Vec<(usize, usize)>,
    graph: GeoGraph,
}

fn assemble(points: &PointSet, tree: &GeoGraph, cuts: usize, t: f64) -> Result<Candidate> {
    let part = partition_tree(tree, cuts + 1)?;
    let inner = if cuts == 0 {
        Vec::new()
    } else {
        let sub = points.subset(&part.boundary)?;
        let spanner = greedy_tspanner(&sub, t)?;
        spanner
            .edges()
            .iter()
            .map(|&(a, b)| (part.boundary[a], part.boundary[b]))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect()
    };
    let kept = tree
        .edges()
        .iter()
        .copied()
        .filter(|e| part.removed_edges.binary_search(e).is_err());
    let graph = GeoGraph::new(points.clone(), kept.chain(inner.iter().copied()))?;
    Ok(Candidate { part, inner, graph })
}

pub fn sparse_spanner_highd(points: &PointSet, k: usize, t: f64) -> Result<HighDResult> {
    let n = points.len();
    if k >= n.max(1) {
        return Err(invalid(format!("need 0 <= k < n, got n = {n}, k = {k}")));
    }
    let base_spanner = greedy_tspanner(points, t)?;
    let tree = mst_of_graph(&base_spanner)?;
    let budget = n - 1 + k;

    let mut best = assemble(points, &tree, 0, t)?;
    let (mut lo, mut hi) = (0usize, k.min(n.saturating_sub(1)));
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        let cand = assemble(points, &tree, mid, t)?;
        if cand.graph.edge_count() <= budget {
            lo = mid;
            best = cand;
        } else {
            hi = mid - 1;
        }
    }

    let Candidate { part, inner, graph } = best;
    Ok(HighDResult {
        max_degree: graph.max_degree(),
        boundary: part.boundary.clone(),
        graph,
        base_spanner,
        tree,
        subtrees: part,
        inner_spanner_edges: inner,
    })
}
