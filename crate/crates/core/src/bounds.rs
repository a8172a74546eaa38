//! Closed-form lower bounds and exhaustive minimum-dilation oracles.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Result, SpannerError};
use crate::generators::{convex_rect_f, convex_rect_m};
use crate::geometry::PointSet;
use crate::graph::GeoGraph;

/// Which lower bound, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Any Steiner tree on `n` equally spaced circle points: `1/sin(pi/n)`.
    SteinerCircle { n: usize },
    /// Spanning trees on the same set: `(4 - 2 sin(pi/n)) / (2 sin(pi/n))`.
    TreeCircle { n: usize },
    /// Graphs with `n - 1 + k` edges: `(2/pi) floor(n/(k+1)) - 1`.
    GeneralK { n: usize, k: usize },
    /// Trees on the convex rectangle set (`k = 0` only):
    /// `min(sqrt(2) m / ln m, f(m))` with `m = floor(n/4 - 1/2)`.
    ConvexK { n: usize, k: usize },
    /// Grid subsets with `m^D - 1` extra edges: `r/(2m) - 1`.
    Grid { r: usize, m: usize },
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::SteinerCircle { .. } => "steiner_circle",
            BoundKind::TreeCircle { .. } => "tree_circle",
            BoundKind::GeneralK { .. } => "general_k",
            BoundKind::ConvexK { .. } => "convex_k",
            BoundKind::Grid { .. } => "grid",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BoundKind::SteinerCircle { n } | BoundKind::TreeCircle { n } => {
                write!(f, "{}(n={n})", self.name())
            }
            BoundKind::GeneralK { n, k } | BoundKind::ConvexK { n, k } => {
                write!(f, "{}(n={n},k={k})", self.name())
            }
            BoundKind::Grid { r, m } => write!(f, "grid(r={r},m={m})"),
        }
    }
}

/// A bound together with its evaluated value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSpec {
    pub kind: BoundKind,
    pub value: f64,
}

impl BoundSpec {
    pub fn new(kind: BoundKind) -> Result<Self> {
        Ok(BoundSpec {
            kind,
            value: analytic_bound(kind)?,
        })
    }
}

pub fn analytic_bound(kind: BoundKind) -> Result<f64> {
    match kind {
        BoundKind::SteinerCircle { n } | BoundKind::TreeCircle { n } if n < 2 => {
            Err(invalid(format!("{} needs n >= 2", kind.name())))
        }
        BoundKind::SteinerCircle { n } => Ok(1.0 / (PI / n as f64).sin()),
        BoundKind::TreeCircle { n } => {
            let s = (PI / n as f64).sin();
            Ok((4.0 - 2.0 * s) / (2.0 * s))
        }
        BoundKind::GeneralK { n, k } => {
            if k == 0 || k >= n {
                return Err(invalid(format!(
                    "general_k needs 0 < k < n, got n={n}, k={k}"
                )));
            }
            Ok(2.0 / PI * (n / (k + 1)) as f64 - 1.0)
        }
        BoundKind::ConvexK { n, k } => {
            if k != 0 {
                return Err(invalid("convex_k is only evaluated for k = 0"));
            }
            let m = convex_rect_m(n)?;
            let mf = m as f64;
            Ok((2f64.sqrt() * mf / mf.ln()).min(convex_rect_f(m, m)))
        }
        BoundKind::Grid { r, m } => {
            if r < 4 || m < 1 || 4 * m > r {
                return Err(invalid(format!(
                    "grid needs r >= 4 and 1 <= m <= r/4, got r={r}, m={m}"
                )));
            }
            Ok(r as f64 / (2.0 * m as f64) - 1.0)
        }
    }
}

/// Edges of the labelled tree with the given Prüfer sequence.
pub fn pruefer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] = 0;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Path lengths between all pairs of a tree given by its edges.
fn tree_metric(points: &PointSet, edges: &[(usize, usize)]) -> Vec<f64> {
    let n = points.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut dist = vec![f64::NAN; n * n];
    let mut stack = Vec::with_capacity(n);
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0.0;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if row[w].is_nan() {
                    row[w] = row[v] + points.dist(v, w);
                    stack.push(w);
                }
            }
        }
    }
    dist
}

fn metric_dilation(points: &PointSet, metric: &[f64]) -> f64 {
    let n = points.len();
    let mut worst = 1.0f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max(metric[i * n + j] / points.dist(i, j));
        }
    }
    worst
}

/// Calls `f` on every Prüfer sequence of length `n - 2` with the given
/// first symbol, in lexicographic order.
fn for_each_pruefer_with_prefix(n: usize, first: usize, mut f: impl FnMut(&[usize])) {
    let len = n - 2;
    let mut seq = vec![0usize; len];
    seq[0] = first;
    loop {
        f(&seq);
        let mut i = len;
        loop {
            i -= 1;
            if i == 0 {
                return;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
        }
    }
}

/// Minimum over all labelled spanning trees of `score(edges)`; ties resolve
/// to the lexicographically first Prüfer sequence.
fn min_over_trees<F>(n: usize, score: F) -> (f64, Vec<(usize, usize)>)
where
    F: Fn(&[(usize, usize)]) -> f64 + Sync,
{
    if n == 2 {
        let e = vec![(0, 1)];
        return (score(&e), e);
    }
    (0..n)
        .into_par_iter()
        .map(|first| {
            let mut best: Option<(f64, Vec<usize>)> = None;
            for_each_pruefer_with_prefix(n, first, |seq| {
                let v = score(&pruefer_decode(seq, n));
                if best.as_ref().is_none_or(|(b, _)| v < *b) {
                    best = Some((v, seq.to_vec()));
                }
            });
            best.expect("at least one sequence per prefix")
        })
        .collect::<Vec<_>>()
        .into_iter()
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .map(|(v, seq)| (v, pruefer_decode(&seq, n)))
        .expect("n > 2 has trees")
}

/// Minimum dilation over all spanning trees (no Steiner points), `n <= 8`.
pub fn brute_min_tree(points: &PointSet) -> Result<(f64, GeoGraph)> {
    let n = points.len();
    if !(2..=8).contains(&n) {
        return Err(SpannerError::TooLarge(format!(
            "tree enumeration needs 2 <= n <= 8, got {n}"
        )));
    }
    let (value, edges) = min_over_trees(n, |e| metric_dilation(points, &tree_metric(points, e)));
    Ok((value, GeoGraph::new(points.clone(), edges)?))
}

fn binomial(n: usize, r: usize) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Largest number of edge subsets `brute_min_graph` will enumerate.
pub const MAX_GRAPH_SUBSETS: u128 = 10_000_000;

struct SmallGraphScorer<'a> {
    points: &'a PointSet,
    pairs: Vec<(usize, usize)>,
}

impl SmallGraphScorer<'_> {
    /// Dilation of the graph on the chosen pair indices, or `None` if disconnected.
    fn score(&self, chosen: &[usize]) -> Option<f64> {
        let n = self.points.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut joins = 0;
        for &c in chosen {
            let (a, b) = self.pairs[c];
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                joins += 1;
            }
        }
        if joins + 1 != n {
            return None;
        }
        let mut d = vec![f64::INFINITY; n * n];
        for i in 0..n {
            d[i * n + i] = 0.0;
        }
        for &c in chosen {
            let (a, b) = self.pairs[c];
            let w = self.points.dist(a, b);
            d[a * n + b] = w;
            d[b * n + a] = w;
        }
        for via in 0..n {
            for i in 0..n {
                let di = d[i * n + via];
                if di.is_infinite() {
                    continue;
                }
                for j in 0..n {
                    let cand = di + d[via * n + j];
                    if cand < d[i * n + j] {
                        d[i * n + j] = cand;
                    }
                }
            }
        }
        Some(metric_dilation(self.points, &d))
    }
}

/// Minimum dilation over all connected graphs with exactly `n - 1 + k` edges.
pub fn brute_min_graph(points: &PointSet, k: usize) -> Result<(f64, GeoGraph)> {
    let n = points.len();
    if !(2..=8).contains(&n) {
        return Err(SpannerError::TooLarge(format!(
            "graph enumeration needs 2 <= n <= 8, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let edges = n - 1 + k;
    if edges > pairs.len() {
        return Err(invalid(format!(
            "{edges} edges exceed the {} available pairs",
            pairs.len()
        )));
    }
    let total = binomial(pairs.len(), edges).unwrap_or(u128::MAX);
    if total > MAX_GRAPH_SUBSETS {
        return Err(SpannerError::TooLarge(format!("{total} edge subsets")));
    }
    let p = pairs.len();
    let scorer = SmallGraphScorer { points, pairs };
    let best = (0..=p - edges)
        .into_par_iter()
        .filter_map(|first| {
            let mut comb: Vec<usize> = (0..edges).map(|i| first + i).collect();
            let mut best: Option<(f64, Vec<usize>)> = None;
            loop {
                if let Some(v) = scorer.score(&comb) {
                    if best.as_ref().is_none_or(|(b, _)| v < *b) {
                        best = Some((v, comb.clone()));
                    }
                }
                // next combination with comb[0] fixed
                let mut i = edges;
                loop {
                    if i <= 1 {
                        return best;
                    }
                    i -= 1;
                    if comb[i] < p - edges + i {
                        comb[i] += 1;
                        for j in i + 1..edges {
                            comb[j] = comb[j - 1] + 1;
                        }
                        break;
                    }
                }
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .reduce(|a, b| {
            if b.0.total_cmp(&a.0) == Ordering::Less {
                b
            } else {
                a
            }
        })
        .ok_or(SpannerError::Disconnected)?;
    let chosen = best.1.iter().map(|&c| scorer.pairs[c]);
    Ok((best.0, GeoGraph::new(points.clone(), chosen)?))
}

pub fn triangle_perimeter(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    let d = |p: [f64; 2], q: [f64; 2]| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
    d(a, b) + d(b, c) + d(c, a)
}

/// Whether the closed triangle contains the origin (exact orientation signs).
pub fn contains_origin(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> bool {
    let o = robust::Coord { x: 0.0, y: 0.0 };
    let co = |p: [f64; 2]| robust::Coord { x: p[0], y: p[1] };
    let s = [
        robust::orient2d(co(a), co(b), o),
        robust::orient2d(co(b), co(c), o),
        robust::orient2d(co(c), co(a), o),
    ];
    s.iter().all(|&v| v >= 0.0) || s.iter().all(|&v| v <= 0.0)
}

/// Smallest perimeter among `samples` random triangles inscribed in the unit
/// circle and containing its centre (angles uniform, rejection sampling).
pub fn inscribed_triangle_min_perimeter(samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(invalid("need at least one sample"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut on_circle = || {
        let a = rng.gen::<f64>() * 2.0 * PI;
        [a.cos(), a.sin()]
    };
    let mut best = f64::INFINITY;
    let mut accepted = 0;
    while accepted < samples {
        let (a, b, c) = (on_circle(), on_circle(), on_circle());
        if contains_origin(a, b, c) {
            accepted += 1;
            best = best.min(triangle_perimeter(a, b, c));
        }
    }
    Ok(best)
}

/// Over every spanning tree on `cycle` (points listed in cyclic boundary
/// order), the largest tree distance between cyclically consecutive points;
/// returns the minimum of that quantity over all trees. `n <= 8`.
pub fn min_worst_consecutive_tree_distance(cycle: &PointSet) -> Result<f64> {
    let n = cycle.len();
    if !(3..=8).contains(&n) {
        return Err(SpannerError::TooLarge(format!(
            "needs 3 <= n <= 8, got {n}"
        )));
    }
    let (value, _) = min_over_trees(n, |e| {
        let metric = tree_metric(cycle, e);
        (0..n)
            .map(|i| metric[i * n + (i + 1) % n])
            .fold(0.0, f64::max)
    });
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_circle;

    #[test]
    fn formula_values() {
        assert!((analytic_bound(BoundKind::SteinerCircle { n: 6 }).unwrap() - 2.0).abs() < 1e-12);
        let tc = analytic_bound(BoundKind::TreeCircle { n: 4 }).unwrap();
        assert!((tc - (2.0 * 2f64.sqrt() - 1.0)).abs() < 1e-12);
        let gk = analytic_bound(BoundKind::GeneralK { n: 100, k: 9 }).unwrap();
        assert!((gk - (20.0 / PI - 1.0)).abs() < 1e-12);
        assert!((gk - 5.36620).abs() < 1e-5);
        assert_eq!(
            analytic_bound(BoundKind::Grid { r: 16, m: 2 }).unwrap(),
            3.0
        );
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(analytic_bound(BoundKind::SteinerCircle { n: 1 }).is_err());
        assert!(analytic_bound(BoundKind::GeneralK { n: 10, k: 0 }).is_err());
        assert!(analytic_bound(BoundKind::GeneralK { n: 10, k: 10 }).is_err());
        assert!(analytic_bound(BoundKind::Grid { r: 8, m: 3 }).is_err());
        assert!(analytic_bound(BoundKind::ConvexK { n: 34, k: 1 }).is_err());
        assert!(analytic_bound(BoundKind::ConvexK { n: 9, k: 0 }).is_err());
    }

    #[test]
    fn circle_bound_inequalities() {
        for n in 2..2000 {
            let s = analytic_bound(BoundKind::SteinerCircle { n }).unwrap();
            assert!(s > n as f64 / PI);
            let t = analytic_bound(BoundKind::TreeCircle { n }).unwrap();
            assert!(t >= 2.0 * n as f64 / PI - 1.0 - 1e-12);
        }
    }

    #[test]
    fn pruefer_roundtrip_counts() {
        let mut seen = std::collections::HashSet::new();
        for first in 0..5 {
            for_each_pruefer_with_prefix(5, first, |seq| {
                let mut e = pruefer_decode(seq, 5);
                e.sort();
                assert_eq!(e.len(), 4);
                seen.insert(e);
            });
        }
        assert_eq!(seen.len(), 125);
    }

    #[test]
    fn brute_tree_small_cases() {
        let two = PointSet::from_rows([vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(brute_min_tree(&two).unwrap().0, 1.0);
        let (v, g) = brute_min_tree(&gen_circle(4).unwrap()).unwrap();
        assert!((v - (1.0 + 2f64.sqrt())).abs() < 1e-9);
        assert_eq!(g.max_degree(), 3, "a star attains the optimum");
        assert!(brute_min_tree(&crate::generators::gen_circle(9).unwrap()).is_err());
    }

    #[test]
    fn brute_graph_matches_tree_at_k_zero() {
        let s = crate::generators::gen_random(6, 2, 4).unwrap();
        let (a, _) = brute_min_tree(&s).unwrap();
        let (b, g) = brute_min_graph(&s, 0).unwrap();
        assert!((a - b).abs() < 1e-9);
        assert!(g.is_tree());
        let (c, full) = brute_min_graph(&s, 10).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
        assert_eq!(full.edge_count(), 15);
        assert!(brute_min_graph(&s, 11).is_err());
    }

    #[test]
    fn brute_graph_non_increasing_in_k() {
        let s = crate::generators::gen_random(6, 2, 7).unwrap();
        let mut prev = f64::INFINITY;
        for k in 0..=10 {
            let (v, g) = brute_min_graph(&s, k).unwrap();
            assert_eq!(g.edge_count(), 5 + k);
            assert!(v <= prev + 1e-12);
            prev = v;
        }
    }

    #[test]
    fn triangle_witnesses() {
        let s3 = 3f64.sqrt() / 2.0;
        let eq = triangle_perimeter([1.0, 0.0], [-0.5, s3], [-0.5, -s3]);
        assert!((eq - 3.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!(contains_origin([1.0, 0.0], [-0.5, s3], [-0.5, -s3]));
        let deg = triangle_perimeter([1.0, 0.0], [-1.0, 0.0], [-1.0, 0.0]);
        assert_eq!(deg, 4.0);
        assert!(contains_origin([1.0, 0.0], [-1.0, 0.0], [-1.0, 0.0]));
        assert!(!contains_origin([1.0, 0.0], [0.0, 1.0], [0.6, 0.8]));
        assert!(inscribed_triangle_min_perimeter(0, 1).is_err());
        assert!(inscribed_triangle_min_perimeter(1000, 1).unwrap() >= 4.0 - 1e-9);
    }
}
