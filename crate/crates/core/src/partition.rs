//! Splitting a bounded-degree tree into balanced vertex-disjoint subtrees.
//!
//! The tree is rooted at a leaf. Bottom-up, every child whose pending
//! component has reached `n/m` vertices is cut off; smaller pending
//! components are merged into their parent. Every cut component therefore
//! has between `n/m` and `1 + c(ceil(n/m) - 1)` vertices, `c` being the
//! largest number of children, and at most `m` components result. The
//! largest component is then split at its most balancing edge until there
//! are exactly `m`.

use crate::error::{invalid, Result, SpannerError};
use crate::graph::GeoGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePartition {
    /// Sorted vertex lists, ordered by smallest vertex.
    pub subtrees: Vec<Vec<usize>>,
    /// Cut tree edges `(i, j)` with `i < j`, sorted.
    pub removed_edges: Vec<(usize, usize)>,
    /// Sorted endpoints of the removed edges.
    pub boundary: Vec<usize>,
    /// Index into `subtrees` for every vertex.
    pub membership: Vec<usize>,
}

impl TreePartition {
    fn from_cuts(tree: &GeoGraph, mut removed: Vec<(usize, usize)>) -> Self {
        removed.sort_unstable();
        let kept = tree
            .edges()
            .iter()
            .copied()
            .filter(|e| removed.binary_search(e).is_err());
        let forest = GeoGraph::new(tree.points().clone(), kept).expect("subgraph of a valid tree");
        // component labels are assigned in order of smallest vertex
        let membership = forest.components();
        let count = membership.iter().max().map_or(0, |&c| c + 1);
        let mut subtrees = vec![Vec::new(); count];
        for (v, &c) in membership.iter().enumerate() {
            subtrees[c].push(v);
        }
        let mut boundary: Vec<usize> = removed.iter().flat_map(|&(a, b)| [a, b]).collect();
        boundary.sort_unstable();
        boundary.dedup();
        TreePartition {
            subtrees,
            removed_edges: removed,
            boundary,
            membership,
        }
    }

    pub fn len(&self) -> usize {
        self.subtrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subtrees.is_empty()
    }

    pub fn max_size(&self) -> usize {
        self.subtrees.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.subtrees.iter().map(Vec::len).collect()
    }
}

fn validate(tree: &GeoGraph, m: usize) -> Result<()> {
    let n = tree.vertex_count();
    if !tree.is_tree() {
        return Err(SpannerError::NotATree(format!(
            "{} vertices, {} edges, connected={}",
            n,
            tree.edge_count(),
            tree.is_connected()
        )));
    }
    if m < 1 || m > n {
        return Err(invalid(format!("need 1 <= m <= n = {n}, got m = {m}")));
    }
    Ok(())
}

/// Lowest-index vertex among those of minimum degree.
pub fn partition_root(tree: &GeoGraph) -> usize {
    (0..tree.vertex_count())
        .min_by_key(|&v| (tree.degree(v), v))
        .unwrap_or(0)
}

/// Parent pointers and a preorder from `root`, children visited by index.
fn rooted(tree: &GeoGraph, root: usize) -> (Vec<usize>, Vec<usize>) {
    let n = tree.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    parent[root] = root;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        let mut children: Vec<usize> = tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| parent[w] == usize::MAX)
            .collect();
        children.sort_unstable_by(|a, b| b.cmp(a));
        for w in children {
            parent[w] = v;
            stack.push(w);
        }
    }
    (parent, order)
}

/// Only the bottom-up stage: at most `m` subtrees, possibly fewer.
pub fn partition_recursive(tree: &GeoGraph, m: usize) -> Result<TreePartition> {
    validate(tree, m)?;
    let n = tree.vertex_count();
    let root = partition_root(tree);
    let (parent, order) = rooted(tree, root);
    let mut pending = vec![1usize; n];
    let mut cuts = Vec::new();
    for &v in order.iter().rev() {
        if v == root {
            continue;
        }
        let p = parent[v];
        // pending[v] >= n/m, in integers
        if pending[v] * m >= n {
            cuts.push((v.min(p), v.max(p)));
        } else {
            pending[p] += pending[v];
        }
    }
    Ok(TreePartition::from_cuts(tree, cuts))
}

/// Edge of the subtree whose removal minimizes the larger side; ties by edge.
fn most_balancing_edge(
    tree: &GeoGraph,
    part: &TreePartition,
    which: usize,
) -> Option<(usize, usize)> {
    let verts = &part.subtrees[which];
    let total = verts.len();
    if total < 2 {
        return None;
    }
    let inside = |w: usize| part.membership[w] == which;
    let root = verts[0];
    let mut parent = std::collections::HashMap::new();
    let mut order = Vec::with_capacity(total);
    parent.insert(root, root);
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in tree.neighbors(v) {
            if inside(w)
                && !parent.contains_key(&w)
                && !part.removed_edges.contains(&(v.min(w), v.max(w)))
            {
                parent.insert(w, v);
                stack.push(w);
            }
        }
    }
    let mut size: std::collections::HashMap<usize, usize> = order.iter().map(|&v| (v, 1)).collect();
    let mut best: Option<(usize, (usize, usize))> = None;
    for &v in order.iter().rev() {
        if v == root {
            continue;
        }
        let p = parent[&v];
        let s = size[&v];
        *size.get_mut(&p).unwrap() += s;
        let key = (s.max(total - s), (v.min(p), v.max(p)));
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    }
    best.map(|(_, e)| e)
}

/// Partition into exactly `m` connected subtrees by removing `m - 1` edges.
pub fn partition_tree(tree: &GeoGraph, m: usize) -> Result<TreePartition> {
    let mut part = partition_recursive(tree, m)?;
    while part.len() < m {
        let largest = (0..part.len())
            .max_by_key(|&i| (part.subtrees[i].len(), std::cmp::Reverse(i)))
            .expect("non-empty partition");
        let edge = most_balancing_edge(tree, &part, largest)
            .expect("largest subtree has an edge when count < m <= n");
        let mut cuts = part.removed_edges.clone();
        cuts.push(edge);
        part = TreePartition::from_cuts(tree, cuts);
    }
    Ok(part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_random;
    use crate::geometry::PointSet;
    use crate::mst::emst_2d;

    fn line(n: usize) -> PointSet {
        PointSet::from_rows((0..n).map(|i| vec![i as f64])).unwrap()
    }

    fn path(n: usize) -> GeoGraph {
        GeoGraph::new(line(n), (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn single_part() {
        let p = partition_tree(&path(7), 1).unwrap();
        assert_eq!(p.subtrees, vec![(0..7).collect::<Vec<_>>()]);
        assert!(p.removed_edges.is_empty() && p.boundary.is_empty());
    }

    #[test]
    fn path_of_ten_in_halves() {
        let p = partition_tree(&path(10), 2).unwrap();
        assert_eq!(p.sizes(), vec![5, 5]);
        assert_eq!(p.removed_edges, vec![(4, 5)]);
        assert_eq!(p.boundary, vec![4, 5]);
    }

    #[test]
    fn star_splits_one_five() {
        // centre 0, leaves 1..=5, placed on a circle
        let mut rows = vec![vec![0.0, 0.0]];
        rows.extend(
            crate::generators::gen_circle(5)
                .unwrap()
                .iter()
                .map(|p| p.coords().to_vec()),
        );
        let star =
            GeoGraph::new(PointSet::from_rows(rows).unwrap(), (1..6).map(|i| (0, i))).unwrap();
        let p = partition_tree(&star, 2).unwrap();
        let mut sizes = p.sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 5]);
    }

    #[test]
    fn rejects_non_trees_and_bad_m() {
        let cyc = GeoGraph::new(line(3), [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(
            partition_tree(&cyc, 1),
            Err(SpannerError::NotATree(_))
        ));
        assert!(partition_tree(&path(4), 0).is_err());
        assert!(partition_tree(&path(4), 5).is_err());
        assert_eq!(partition_tree(&path(4), 4).unwrap().len(), 4);
    }

    #[test]
    fn root_is_lowest_leaf() {
        let t = GeoGraph::new(line(4), [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(partition_root(&t), 0);
        let t = GeoGraph::new(line(4), [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(partition_root(&t), 1);
    }

    #[test]
    fn recursive_stage_sizes() {
        for seed in 0..10 {
            let n = 300;
            let t = emst_2d(&gen_random(n, 2, seed).unwrap()).unwrap();
            for m in [2usize, 3, 7, 30, 100] {
                let p = partition_recursive(&t, m).unwrap();
                assert!(p.len() <= m);
                let top = p.membership[partition_root(&t)];
                let upper = 5.0 * n as f64 / m as f64 - 4.0;
                for (i, s) in p.sizes().into_iter().enumerate() {
                    if i != top {
                        assert!(s * m >= n, "subtree below n/m");
                    }
                    // exactness of the 5(n/m)-4 bound needs integer n/m
                    if n % m == 0 {
                        assert!(s as f64 <= upper);
                    }
                }
            }
        }
    }
}
