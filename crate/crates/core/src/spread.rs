//! Networks for point sets of bounded spread.
//!
//! For `k <= 2` every point is joined to point 0. Otherwise the bounding
//! cube (side equal to the diameter) is cut into `m^D` cells with
//! `m = floor((k-1)^(1/D))`; the lowest-index point of each non-empty cell
//! is its representative, the representatives get a t-spanner with at most
//! `2|X|` edges and every other point is joined to its representative.

use crate::error::{invalid, Result};
use crate::geometry::PointSet;
use crate::graph::GeoGraph;
use crate::highd::greedy_tspanner;

#[derive(Debug, Clone)]
pub struct BoundedSpreadSpanner {
    pub graph: GeoGraph,
    /// Cells per axis; 0 for the star branch.
    pub cells_per_axis: usize,
    /// Representative point of each non-empty cell, in cell order.
    pub representatives: Vec<usize>,
    /// Cell index (row-major) of every point; empty for the star branch.
    pub cell_of: Vec<usize>,
    /// Stretch of the spanner on the representatives after escalation.
    pub t_used: f64,
    /// Side length of one cell.
    pub cell_side: f64,
    pub spread: f64,
}

impl BoundedSpreadSpanner {
    /// Dilation guaranteed by the construction: `2s` for the star branch,
    /// `(1+t) 2 sqrt(D) s/m + t` otherwise.
    pub fn guaranteed_dilation(&self) -> f64 {
        if self.cells_per_axis == 0 {
            2.0 * self.spread
        } else {
            let d = self.graph.points().dim() as f64;
            (1.0 + self.t_used) * 2.0 * d.sqrt() * self.spread / self.cells_per_axis as f64
                + self.t_used
        }
    }
}

/// Largest `m` with `m^dim <= value`.
pub fn integer_root(value: usize, dim: usize) -> usize {
    let fits = |m: usize| {
        let mut acc: usize = 1;
        for _ in 0..dim {
            match acc.checked_mul(m) {
                Some(v) if v <= value => acc = v,
                _ => return false,
            }
        }
        true
    };
    // float estimate, then correct the rounding
    let mut m = (value as f64).powf(1.0 / dim as f64) as usize;
    while m > 0 && !fits(m) {
        m -= 1;
    }
    while m.checked_add(1).is_some_and(fits) {
        m += 1;
    }
    m
}

pub fn bounded_spread_spanner(points: &PointSet, k: usize, t: f64) -> Result<BoundedSpreadSpanner> {
    let n = points.len();
    if k >= n {
        return Err(invalid(format!("need 0 <= k < n, got n = {n}, k = {k}")));
    }
    if t.is_nan() || t <= 1.0 || t.is_infinite() {
        return Err(invalid(format!(
            "stretch t must be a finite real > 1, got {t}"
        )));
    }
    let (d_min, diameter) = points.distance_range()?;
    let spread = diameter / d_min;

    if k <= 2 {
        let graph = GeoGraph::new(points.clone(), (1..n).map(|v| (0, v)))?;
        return Ok(BoundedSpreadSpanner {
            graph,
            cells_per_axis: 0,
            representatives: vec![0],
            cell_of: Vec::new(),
            t_used: t,
            cell_side: diameter,
            spread,
        });
    }

    let dim = points.dim();
    let m = integer_root(k - 1, dim);
    let cell_side = diameter / m as f64;
    let lower: Vec<f64> = (0..dim)
        .map(|a| {
            points
                .iter()
                .map(|p| p.coords()[a])
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let cell_of: Vec<usize> = points
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .zip(&lower)
                .fold(0usize, |acc, (&c, &lo)| {
                    // half-open cells, the last one closed
                    let i = (((c - lo) / cell_side).floor() as usize).min(m - 1);
                    acc * m + i
                })
        })
        .collect();

    let mut rep_of_cell = std::collections::BTreeMap::new();
    for (v, &c) in cell_of.iter().enumerate() {
        rep_of_cell.entry(c).or_insert(v);
    }
    let representatives: Vec<usize> = rep_of_cell.values().copied().collect();

    let sub = points.subset(&representatives)?;
    let mut t_used = t;
    let inner = loop {
        let g = greedy_tspanner(&sub, t_used)?;
        if g.edge_count() <= 2 * representatives.len() {
            break g;
        }
        t_used *= 1.5;
    };

    let star = (0..n).filter_map(|v| {
        let r = rep_of_cell[&cell_of[v]];
        (r != v).then_some((r, v))
    });
    let spanner = inner
        .edges()
        .iter()
        .map(|&(a, b)| (representatives[a], representatives[b]));
    let graph = GeoGraph::new(points.clone(), star.chain(spanner))?;
    Ok(BoundedSpreadSpanner {
        graph,
        cells_per_axis: m,
        representatives,
        cell_of,
        t_used,
        cell_side,
        spread,
    })
}
