//! Lower-bound point sets and random or grid instances.

use std::collections::HashSet;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::geometry::{Point, PointSet};

/// `n` points spaced equally on the unit circle, point `i` at angle `2*pi*i/n`.
pub fn gen_circle(n: usize) -> Result<PointSet> {
    if n < 2 {
        return Err(invalid(format!("circle needs n >= 2, got {n}")));
    }
    circle_points(n, 0.0).map(|pts| PointSet::new(pts).expect("circle points are distinct"))
}

fn circle_points(n: usize, center_x: f64) -> Result<Vec<Point>> {
    (0..n)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / n as f64;
            Point::xy(center_x + a.cos(), a.sin())
        })
        .collect()
}

/// Sizes of the `k + 1` circles: the first `n mod (k+1)` get one extra point.
pub fn multi_circle_sizes(n: usize, k: usize) -> Vec<usize> {
    let groups = k + 1;
    let (base, extra) = (n / groups, n % groups);
    (0..groups).map(|i| base + usize::from(i < extra)).collect()
}

/// `k + 1` unit circles centred at `(2n*i, 0)` for `i = 1..=k+1`, holding `n` points in total.
pub fn gen_multi_circle(n: usize, k: usize) -> Result<PointSet> {
    if k == 0 || k >= n {
        return Err(invalid(format!(
            "multi-circle needs 0 < k < n, got n={n}, k={k}"
        )));
    }
    if n / (k + 1) < 2 {
        return Err(invalid(format!(
            "multi-circle needs floor(n/(k+1)) >= 2, got n={n}, k={k}"
        )));
    }
    let mut points = Vec::with_capacity(n);
    for (i, size) in multi_circle_sizes(n, k).into_iter().enumerate() {
        let center = 2.0 * n as f64 * (i + 1) as f64;
        points.extend(circle_points(size, center)?);
    }
    PointSet::new(points)
}

/// Parameter `m = floor(n/4 - 1/2)` of the convex-position construction.
pub fn convex_rect_m(n: usize) -> Result<usize> {
    if n < 10 {
        return Err(invalid(format!("convex rectangle needs n >= 10, got {n}")));
    }
    Ok((n - 2) / 4)
}

/// `f(i) = (1 + ln m / m)^i - 1`.
pub fn convex_rect_f(m: usize, i: usize) -> f64 {
    let m = m as f64;
    (1.0 + m.ln() / m).powi(i as i32) - 1.0
}

/// The `4m + 2` points `(+-f(i), +-1)`, `i = 0..=m`, on the boundary of a rectangle.
pub fn gen_convex_rect(n: usize) -> Result<PointSet> {
    let m = convex_rect_m(n)?;
    let mut points = Vec::with_capacity(4 * m + 2);
    points.push(Point::xy(0.0, 1.0)?);
    points.push(Point::xy(0.0, -1.0)?);
    for i in 1..=m {
        let x = convex_rect_f(m, i);
        for (sx, sy) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            points.push(Point::xy(sx * x, sy)?);
        }
    }
    PointSet::new(points)
}

/// Parameters of the grid lower-bound construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSquaresSpec {
    /// Grid side: coordinates range over `0..r`.
    pub r: usize,
    /// Cells per axis.
    pub m: usize,
    /// Total number of points.
    pub n: usize,
    pub dim: usize,
}

impl GridSquaresSpec {
    pub fn new(r: usize, m: usize, n: usize, dim: usize) -> Result<Self> {
        let spec = GridSquaresSpec { r, m, n, dim };
        spec.validate()?;
        Ok(spec)
    }

    /// `sigma = floor(r / (4m))`.
    pub fn sigma(&self) -> usize {
        self.r / (4 * self.m)
    }

    pub fn validate(&self) -> Result<()> {
        let GridSquaresSpec { r, m, n, dim } = *self;
        if dim < 2 {
            return Err(invalid("grid squares need dimension >= 2"));
        }
        if r < 4 {
            return Err(invalid(format!("grid side r must be >= 4, got {r}")));
        }
        if m < 1 || 4 * m > r {
            return Err(invalid(format!("need 1 <= m <= r/4, got m={m}, r={r}")));
        }
        let total = checked_pow(r, dim)?;
        let lower = 2 * r * checked_pow(m, dim - 1)?;
        if n < lower || n > total {
            return Err(invalid(format!("need {lower} <= n <= {total}, got n={n}")));
        }
        Ok(())
    }
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or_else(|| invalid("grid too large"))
}

/// Boundary of the square `{s..=3s}^2` in cyclic order starting at `(s, s)`.
pub fn square_boundary_cycle(sigma: usize) -> Vec<(usize, usize)> {
    let (lo, hi) = (sigma, 3 * sigma);
    let mut out = Vec::with_capacity(8 * sigma);
    out.extend((lo..hi).map(|x| (x, lo)));
    out.extend((lo..hi).map(|y| (hi, y)));
    out.extend((lo + 1..=hi).rev().map(|x| (x, hi)));
    out.extend((lo + 1..=hi).rev().map(|y| (lo, y)));
    out
}

/// Calls `f` on every vector of `{0..side}^dim` in lexicographic order
/// (first coordinate most significant).
fn for_each_lattice(side: usize, dim: usize, mut f: impl FnMut(&[usize])) {
    let mut v = vec![0usize; dim];
    loop {
        f(&v);
        let mut axis = dim;
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            v[axis] += 1;
            if v[axis] < side {
                break;
            }
            v[axis] = 0;
        }
    }
}

/// All square boundary points of every cell (each square listed in cyclic
/// order, cells in lexicographic order), then lexicographic grid fill up to `n`.
pub fn gen_grid_squares(spec: GridSquaresSpec) -> Result<PointSet> {
    spec.validate()?;
    let GridSquaresSpec { r, m, n, dim } = spec;
    let sigma = spec.sigma();
    let mut coords: Vec<Vec<usize>> = Vec::with_capacity(n);
    let cycle = square_boundary_cycle(sigma);
    for_each_lattice(m, dim, |cell| {
        for &(a, b) in &cycle {
            let mut p: Vec<usize> = cell.iter().map(|&c| 4 * sigma * c).collect();
            p[0] += a;
            p[1] += b;
            for c in p.iter_mut().skip(2) {
                *c += 2 * sigma;
            }
            coords.push(p);
        }
    });
    let mut present: HashSet<Vec<usize>> = coords.iter().cloned().collect();
    for_each_lattice(r, dim, |p| {
        if coords.len() < n && !present.contains(p) {
            present.insert(p.to_vec());
            coords.push(p.to_vec());
        }
    });
    PointSet::from_rows(
        coords
            .into_iter()
            .map(|p| p.into_iter().map(|c| c as f64).collect::<Vec<_>>()),
    )
}

/// The full `r^dim` integer grid in lexicographic order.
pub fn gen_grid(r: usize, dim: usize) -> Result<PointSet> {
    if r < 1 || dim < 1 {
        return Err(invalid("grid needs r >= 1 and dim >= 1"));
    }
    checked_pow(r, dim)?;
    let mut rows = Vec::new();
    for_each_lattice(r, dim, |p| {
        rows.push(p.iter().map(|&c| c as f64).collect::<Vec<_>>())
    });
    PointSet::from_rows(rows)
}

/// `n` distinct points uniform in `[0,1)^dim`, reproducible from `seed`.
pub fn gen_random(n: usize, dim: usize, seed: u64) -> Result<PointSet> {
    if n < 2 || dim < 1 {
        return Err(invalid(format!(
            "random set needs n >= 2 and dim >= 1, got n={n}, dim={dim}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(n);
    let mut rows = Vec::with_capacity(n);
    while rows.len() < n {
        let row: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
        let key: Vec<u64> = row.iter().map(|c| c.to_bits()).collect();
        if seen.insert(key) {
            rows.push(row);
        }
    }
    PointSet::from_rows(rows)
}
