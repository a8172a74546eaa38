//! Points in `R^D`, point sets, Euclidean distance and spread.

use std::collections::HashMap;

use crate::error::{invalid, Result, SpannerError};

/// Relative tolerance used when comparing derived real quantities.
pub const EPS_REL: f64 = 1e-9;

/// A point with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(invalid("a point needs at least one coordinate"));
        }
        if let Some(&value) = coords.iter().find(|c| !c.is_finite()) {
            return Err(SpannerError::NonFinite { value });
        }
        Ok(Point { coords })
    }

    pub fn xy(x: f64, y: f64) -> Result<Self> {
        Point::new(vec![x, y])
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    /// Second coordinate. Panics on one-dimensional points.
    pub fn y(&self) -> f64 {
        self.coords[1]
    }
}

/// Euclidean distance between two points of the same dimension.
pub fn distance(p: &Point, q: &Point) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(SpannerError::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(euclid(p.coords(), q.coords()))
}

#[inline]
pub(crate) fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// A non-empty set of pairwise distinct points sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points.first().ok_or(SpannerError::EmptyPointSet)?;
        let dim = first.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(SpannerError::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            // +0.0 and -0.0 are the same location
            let key = p.coords().iter().map(|&c| (c + 0.0).to_bits()).collect();
            if let Some(&first) = seen.get(&key) {
                return Err(SpannerError::DuplicatePoint { first, second: i });
            }
            seen.insert(key, i);
        }
        Ok(PointSet { dim, points })
    }

    /// Builds a set from raw coordinate rows.
    pub fn from_rows<I, R>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: Into<Vec<f64>>,
    {
        let points = rows
            .into_iter()
            .map(|r| Point::new(r.into()))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    /// Distance between the points at indices `i` and `j`.
    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        euclid(self.points[i].coords(), self.points[j].coords())
    }

    /// The subset at the given indices, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<PointSet> {
        let points = indices
            .iter()
            .map(|&i| {
                self.points
                    .get(i)
                    .cloned()
                    .ok_or(SpannerError::InvalidIndex {
                        index: i,
                        len: self.len(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(points)
    }

    pub(crate) fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim != dim {
            return Err(SpannerError::DimensionMismatch {
                expected: dim,
                found: self.dim,
            });
        }
        Ok(())
    }

    /// Smallest and largest pairwise distance, by brute force.
    pub fn distance_range(&self) -> Result<(f64, f64)> {
        let n = self.len();
        if n < 2 {
            return Err(invalid("distance range needs at least two points"));
        }
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                let d = self.dist(i, j);
                lo = lo.min(d);
                hi = hi.max(d);
            }
        }
        Ok((lo, hi))
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Ratio of the longest to the shortest pairwise distance.
pub fn spread(points: &PointSet) -> Result<f64> {
    let (lo, hi) = points.distance_range()?;
    Ok(hi / lo)
}

/// Parameters shared by the constructions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpannerParams {
    /// Number of edges allowed beyond a spanning tree.
    pub k: usize,
    /// Stretch of the auxiliary t-spanners.
    pub t: f64,
    pub eps_rel: f64,
    pub seed: u64,
}

impl SpannerParams {
    pub fn new(k: usize, t: f64) -> Result<Self> {
        let p = SpannerParams {
            k,
            t,
            ..Default::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t.is_nan() || self.t <= 1.0 || self.t.is_infinite() {
            return Err(invalid(format!(
                "stretch t must be a finite real > 1, got {}",
                self.t
            )));
        }
        if self.eps_rel.is_nan() || self.eps_rel <= 0.0 {
            return Err(invalid("eps_rel must be positive"));
        }
        Ok(())
    }
}

impl Default for SpannerParams {
    fn default() -> Self {
        SpannerParams {
            k: 0,
            t: 2.0,
            eps_rel: EPS_REL,
            seed: 0,
        }
    }
}

/// `a <= b` up to relative tolerance `EPS_REL`.
pub fn le_rel(a: f64, b: f64) -> bool {
    a <= b + EPS_REL * b.abs().max(1.0)
}
