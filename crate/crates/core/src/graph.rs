//! Euclidean networks, shortest paths and exact dilation.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{invalid, Result, SpannerError};
use crate::geometry::PointSet;

/// A shortest-path length that may be unreachable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphLength {
    Finite(f64),
    Unreachable,
}

impl GraphLength {
    pub fn finite(self) -> Option<f64> {
        match self {
            GraphLength::Finite(v) => Some(v),
            GraphLength::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, GraphLength::Finite(_))
    }

    /// Total order with `Unreachable` above every finite value.
    pub fn total_cmp(&self, other: &GraphLength) -> Ordering {
        match (self, other) {
            (GraphLength::Finite(a), GraphLength::Finite(b)) => a.total_cmp(b),
            (GraphLength::Finite(_), GraphLength::Unreachable) => Ordering::Less,
            (GraphLength::Unreachable, GraphLength::Finite(_)) => Ordering::Greater,
            (GraphLength::Unreachable, GraphLength::Unreachable) => Ordering::Equal,
        }
    }
}

impl fmt::Display for GraphLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphLength::Finite(v) => write!(f, "{v}"),
            GraphLength::Unreachable => f.write_str("inf"),
        }
    }
}

/// An undirected network on a point set; edge weights are Euclidean lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoGraph {
    points: PointSet,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl GeoGraph {
    /// Builds a graph from unordered vertex pairs. Repeated pairs collapse
    /// into one edge; self-loops and out-of-range indices are rejected.
    pub fn new<I>(points: PointSet, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = points.len();
        let mut normalized = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(SpannerError::InvalidIndex { index: v, len: n });
                }
            }
            if a == b {
                return Err(SpannerError::SelfLoop(a));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &normalized {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        Ok(GeoGraph {
            points,
            edges: normalized,
            adjacency,
        })
    }

    pub fn empty(points: PointSet) -> Self {
        let n = points.len();
        GeoGraph {
            points,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Euclidean length of the segment between two vertices.
    pub fn weight(&self, a: usize, b: usize) -> f64 {
        self.points.dist(a, b)
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|&(a, b)| self.weight(a, b)).sum()
    }

    /// A new graph on the same vertices with the union of both edge sets.
    pub fn with_edges<I>(&self, extra: I) -> Result<GeoGraph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        GeoGraph::new(self.points.clone(), self.edges.iter().copied().chain(extra))
    }

    /// Connected component label per vertex, labels in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(SpannerError::InvalidIndex {
                index: v,
                len: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// Single-source shortest-path lengths (binary-heap Dijkstra).
    pub fn distances_from(&self, source: usize) -> Vec<GraphLength> {
        self.dijkstra(source, f64::INFINITY)
            .into_iter()
            .map(|d| {
                if d.is_finite() {
                    GraphLength::Finite(d)
                } else {
                    GraphLength::Unreachable
                }
            })
            .collect()
    }

    /// Dijkstra that stops expanding once the frontier exceeds `limit`.
    /// Entries beyond the limit may be left at infinity.
    pub(crate) fn dijkstra(&self, source: usize, limit: f64) -> Vec<f64> {
        let mut dist = vec![f64::INFINITY; self.vertex_count()];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(HeapEntry {
            dist: 0.0,
            vertex: source,
        });
        while let Some(HeapEntry { dist: d, vertex: v }) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            if d > limit {
                break;
            }
            for &w in &self.adjacency[v] {
                let nd = d + self.weight(v, w);
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(HeapEntry {
                        dist: nd,
                        vertex: w,
                    });
                }
            }
        }
        dist
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortest-path length between `u` and `v`.
pub fn graph_distance(graph: &GeoGraph, u: usize, v: usize) -> Result<GraphLength> {
    graph.check_vertex(u)?;
    graph.check_vertex(v)?;
    let dist = graph.dijkstra(u, f64::INFINITY);
    Ok(if dist[v].is_finite() {
        GraphLength::Finite(dist[v])
    } else {
        GraphLength::Unreachable
    })
}

/// Stretch `d_G(u, v) / d(u, v)` of one pair.
pub fn dilation_between(graph: &GeoGraph, u: usize, v: usize) -> Result<GraphLength> {
    if u == v {
        return Err(invalid("dilation_between needs two distinct vertices"));
    }
    Ok(match graph_distance(graph, u, v)? {
        GraphLength::Finite(d) => GraphLength::Finite(d / graph.weight(u, v)),
        GraphLength::Unreachable => GraphLength::Unreachable,
    })
}

/// Exact dilation of a network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilationReport {
    pub dilation: GraphLength,
    /// Lexicographically first pair attaining the maximum.
    pub argmax_pair: (usize, usize),
    pub connected: bool,
}

impl DilationReport {
    /// The finite dilation value, or `f64::INFINITY` for disconnected graphs.
    pub fn value(&self) -> f64 {
        self.dilation.finite().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for DilationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dilation={} pair=({},{})",
            self.dilation, self.argmax_pair.0, self.argmax_pair.1
        )
    }
}

/// Worst stretch from `u` towards higher-indexed vertices.
fn worst_from(graph: &GeoGraph, u: usize) -> Option<(GraphLength, usize)> {
    let dist = graph.dijkstra(u, f64::INFINITY);
    let mut best: Option<(GraphLength, usize)> = None;
    for (v, &d) in dist.iter().enumerate().skip(u + 1) {
        let stretch = if d.is_finite() {
            GraphLength::Finite(d / graph.weight(u, v))
        } else {
            GraphLength::Unreachable
        };
        if best.is_none_or(|(b, _)| stretch.total_cmp(&b) == Ordering::Greater) {
            best = Some((stretch, v));
        }
        if stretch == GraphLength::Unreachable {
            break;
        }
    }
    best
}

fn reduce_worst(per_source: Vec<Option<(GraphLength, usize)>>) -> DilationReport {
    let mut report = DilationReport {
        dilation: GraphLength::Finite(1.0),
        argmax_pair: (0, 1),
        connected: true,
    };
    let mut best: Option<GraphLength> = None;
    for (u, entry) in per_source.into_iter().enumerate() {
        if let Some((stretch, v)) = entry {
            if best.is_none_or(|b| stretch.total_cmp(&b) == Ordering::Greater) {
                best = Some(stretch);
                report.dilation = stretch;
                report.argmax_pair = (u, v);
            }
        }
    }
    report.connected = report.dilation.is_finite();
    report
}

fn check_dilation_input(graph: &GeoGraph) -> Result<()> {
    if graph.vertex_count() < 2 {
        return Err(invalid("dilation needs at least two vertices"));
    }
    Ok(())
}

/// Exact dilation, one Dijkstra run per source on the global rayon pool.
pub fn dilation(graph: &GeoGraph) -> Result<DilationReport> {
    check_dilation_input(graph)?;
    let per_source: Vec<_> = (0..graph.vertex_count())
        .into_par_iter()
        .map(|u| worst_from(graph, u))
        .collect();
    Ok(reduce_worst(per_source))
}

/// Exact dilation computed on a dedicated pool of `workers` threads.
/// The report does not depend on the worker count.
pub fn dilation_with_workers(graph: &GeoGraph, workers: usize) -> Result<DilationReport> {
    check_dilation_input(graph)?;
    if workers <= 1 {
        let per_source = (0..graph.vertex_count())
            .map(|u| worst_from(graph, u))
            .collect();
        return Ok(reduce_worst(per_source));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| invalid(format!("thread pool: {e}")))?;
    pool.install(|| dilation(graph))
}
