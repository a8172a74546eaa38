//! Exact planar orientation and in-circle signs.
//!
//! Signs come from adaptive-precision evaluation (a floating-point filter
//! that falls back to exact expansion arithmetic), so a zero is a true zero.
//! Cocircular quadruples are resolved by perturbing the lifting map
//! `z = x^2 + y^2` by `eps^(i+1)` for the point with index `i`: the lowest
//! index is perturbed the most.

use std::cmp::Ordering;

use robust::Coord;

use crate::geometry::PointSet;

#[inline]
fn coord(points: &PointSet, i: usize) -> Coord<f64> {
    let c = points.point(i).coords();
    Coord { x: c[0], y: c[1] }
}

/// Sign of the orientation of `(a, b, c)`: `Greater` for counter-clockwise.
pub fn orient(points: &PointSet, a: usize, b: usize, c: usize) -> Ordering {
    let v = robust::orient2d(coord(points, a), coord(points, b), coord(points, c));
    v.partial_cmp(&0.0)
        .expect("orientation of finite points is finite")
}

/// Unperturbed in-circle sign: `Greater` when `d` lies strictly inside the
/// circle through counter-clockwise `(a, b, c)`.
pub fn in_circle(points: &PointSet, a: usize, b: usize, c: usize, d: usize) -> Ordering {
    let v = robust::incircle(
        coord(points, a),
        coord(points, b),
        coord(points, c),
        coord(points, d),
    );
    v.partial_cmp(&0.0)
        .expect("in-circle of finite points is finite")
}

/// In-circle sign under the symbolic lifting perturbation. Never `Equal`
/// unless all four points are collinear.
pub fn in_circle_perturbed(points: &PointSet, a: usize, b: usize, c: usize, d: usize) -> Ordering {
    let exact = in_circle(points, a, b, c, d);
    if exact != Ordering::Equal {
        return exact;
    }
    // The determinant is linear in the lifted column; each perturbation
    // term is a signed 3x3 cofactor, i.e. an orientation of the other three.
    let quad = [a, b, c, d];
    let mut order = [0usize, 1, 2, 3];
    order.sort_by_key(|&pos| quad[pos]);
    for pos in order {
        let others: Vec<usize> = (0..4).filter(|&q| q != pos).map(|q| quad[q]).collect();
        let s = orient(points, others[0], others[1], others[2]);
        if s != Ordering::Equal {
            return if pos % 2 == 0 { s } else { s.reverse() };
        }
    }
    Ordering::Equal
}
