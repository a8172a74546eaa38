//! Planar Delaunay triangulation.
//!
//! Points are inserted in lexicographic order, so every new point lies
//! outside the current hull: it is joined to the hull edges it sees and the
//! new triangles are legalized with Lawson flips. Degenerate circles are
//! decided by [`in_circle_perturbed`], which makes the output a function of
//! the input (including fully cocircular sets).

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::Result;
use crate::geometry::PointSet;
use crate::graph::GeoGraph;
use crate::predicates::{in_circle_perturbed, orient};

/// A triangulation together with its edge graph.
#[derive(Debug, Clone)]
pub struct Triangulation {
    /// Counter-clockwise triangles; empty for collinear input.
    pub triangles: Vec<[usize; 3]>,
    pub graph: GeoGraph,
}

struct Builder<'a> {
    points: &'a PointSet,
    triangles: Vec<[usize; 3]>,
    /// Directed edge -> triangle having it on its counter-clockwise boundary.
    edge_tri: HashMap<(usize, usize), usize>,
    hull_next: HashMap<usize, usize>,
    hull_prev: HashMap<usize, usize>,
}

fn third(tri: &[usize; 3], u: usize, v: usize) -> usize {
    *tri.iter()
        .find(|&&w| w != u && w != v)
        .expect("triangle has three vertices")
}

impl<'a> Builder<'a> {
    fn add_triangle(&mut self, tri: [usize; 3]) -> usize {
        let id = self.triangles.len();
        self.triangles.push(tri);
        self.register(id);
        id
    }

    fn register(&mut self, id: usize) {
        let [a, b, c] = self.triangles[id];
        for e in [(a, b), (b, c), (c, a)] {
            self.edge_tri.insert(e, id);
        }
    }

    fn unregister(&mut self, id: usize) {
        let [a, b, c] = self.triangles[id];
        for e in [(a, b), (b, c), (c, a)] {
            self.edge_tri.remove(&e);
        }
    }

    /// Restores local Delaunayhood starting from edge `(u, v)` of a triangle
    /// whose third vertex is the newly inserted point.
    fn legalize(&mut self, u: usize, v: usize) {
        let mut stack = vec![(u, v)];
        while let Some((u, v)) = stack.pop() {
            let Some(&t1) = self.edge_tri.get(&(u, v)) else {
                continue;
            };
            let Some(&t2) = self.edge_tri.get(&(v, u)) else {
                continue;
            };
            let p = third(&self.triangles[t1], u, v);
            let q = third(&self.triangles[t2], v, u);
            if in_circle_perturbed(self.points, u, v, p, q) != Ordering::Greater {
                continue;
            }
            self.unregister(t1);
            self.unregister(t2);
            self.triangles[t1] = [u, q, p];
            self.triangles[t2] = [q, v, p];
            self.register(t1);
            self.register(t2);
            stack.push((u, q));
            stack.push((q, v));
        }
    }

    fn insert_outside(&mut self, p: usize) {
        let visible: Vec<(usize, usize)> = self
            .hull_next
            .iter()
            .map(|(&a, &b)| (a, b))
            .filter(|&(a, b)| orient(self.points, a, b, p) == Ordering::Less)
            .collect();
        debug_assert!(
            !visible.is_empty(),
            "lexicographically last point sees the hull"
        );
        let is_visible =
            |a: usize, this: &Self| orient(this.points, a, this.hull_next[&a], p) == Ordering::Less;
        let start = visible
            .iter()
            .map(|&(a, _)| a)
            .find(|&a| !is_visible(self.hull_prev[&a], self))
            .expect("visible hull chain has a first edge");
        let mut a = start;
        let mut new_edges = Vec::new();
        while is_visible(a, self) {
            let b = self.hull_next[&a];
            self.add_triangle([b, a, p]);
            new_edges.push((b, a));
            a = b;
        }
        let end = a;
        let mut v = self.hull_next[&start];
        while v != end {
            let next = self.hull_next.remove(&v).expect("hull chain");
            self.hull_prev.remove(&v);
            v = next;
        }
        self.hull_next.insert(start, p);
        self.hull_prev.insert(p, start);
        self.hull_next.insert(p, end);
        self.hull_prev.insert(end, p);
        for (u, w) in new_edges {
            self.legalize(u, w);
        }
    }
}

/// Delaunay triangulation of a planar point set.
pub fn triangulate(points: &PointSet) -> Result<Triangulation> {
    points.require_dim(2)?;
    let n = points.len();
    if n < 2 {
        return Ok(Triangulation {
            triangles: Vec::new(),
            graph: GeoGraph::empty(points.clone()),
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (points.point(i), points.point(j));
        a.x().total_cmp(&b.x()).then(a.y().total_cmp(&b.y()))
    });

    // Leading collinear run forms a chain; it stays a path if everything is collinear.
    let mut chain = vec![order[0], order[1]];
    let mut next = 2;
    while next < n && orient(points, order[0], order[1], order[next]) == Ordering::Equal {
        chain.push(order[next]);
        next += 1;
    }
    if next == n {
        let edges = chain.windows(2).map(|w| (w[0], w[1]));
        return Ok(Triangulation {
            triangles: Vec::new(),
            graph: GeoGraph::new(points.clone(), edges)?,
        });
    }

    let mut builder = Builder {
        points,
        triangles: Vec::new(),
        edge_tri: HashMap::new(),
        hull_next: HashMap::new(),
        hull_prev: HashMap::new(),
    };
    let apex = order[next];
    let ccw = orient(points, chain[0], chain[1], apex) == Ordering::Greater;
    let link = |a: usize, b: usize, builder: &mut Builder| {
        builder.hull_next.insert(a, b);
        builder.hull_prev.insert(b, a);
    };
    for w in chain.windows(2) {
        let (a, b) = if ccw { (w[0], w[1]) } else { (w[1], w[0]) };
        builder.add_triangle([a, b, apex]);
        link(a, b, &mut builder);
    }
    let (first, last) = if ccw {
        (chain[0], *chain.last().unwrap())
    } else {
        (*chain.last().unwrap(), chain[0])
    };
    link(last, apex, &mut builder);
    link(apex, first, &mut builder);

    for &p in &order[next + 1..] {
        builder.insert_outside(p);
    }

    let edges = builder
        .triangles
        .iter()
        .flat_map(|&[a, b, c]| [(a, b), (b, c), (c, a)]);
    let graph = GeoGraph::new(points.clone(), edges)?;
    Ok(Triangulation {
        triangles: builder.triangles,
        graph,
    })
}

/// Edge graph of the Delaunay triangulation.
pub fn delaunay(points: &PointSet) -> Result<GeoGraph> {
    triangulate(points).map(|t| t.graph)
}

impl Triangulation {
    /// Brute-force check that no point lies strictly inside any triangle's
    /// circumcircle (unperturbed exact predicate).
    pub fn empty_circle_violations(&self) -> Vec<([usize; 3], usize)> {
        let points = self.graph.points();
        let mut out = Vec::new();
        for &tri in &self.triangles {
            for d in 0..points.len() {
                if tri.contains(&d) {
                    continue;
                }
                if crate::predicates::in_circle(points, tri[0], tri[1], tri[2], d)
                    == Ordering::Greater
                {
                    out.push((tri, d));
                }
            }
        }
        out
    }
}
