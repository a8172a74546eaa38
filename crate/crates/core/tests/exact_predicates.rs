//! Predicates and triangulations checked against exact rational arithmetic.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use sparsenet::predicates::{in_circle, in_circle_perturbed, orient};
use sparsenet::{gen_circle, gen_grid, gen_random, triangulate, PointSet};

fn q(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite")
}

fn sign(v: &BigRational) -> Ordering {
    if v.is_zero() {
        Ordering::Equal
    } else if v.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn det(m: &[Vec<BigRational>]) -> BigRational {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut total = BigRational::zero();
    for col in 0..m.len() {
        let minor: Vec<Vec<BigRational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * det(&minor);
        if col % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn xy(s: &PointSet, i: usize) -> (BigRational, BigRational) {
    (q(s.point(i).x()), q(s.point(i).y()))
}

fn exact_orient(s: &PointSet, a: usize, b: usize, c: usize) -> Ordering {
    let rows = [a, b, c]
        .iter()
        .map(|&i| {
            let (x, y) = xy(s, i);
            vec![x, y, BigRational::from_integer(BigInt::from(1))]
        })
        .collect::<Vec<_>>();
    sign(&det(&rows))
}

/// Lifted 4x4 determinant; `lift_at = Some(p)` replaces the lifted column
/// by the unit vector of row `p`, giving that row's perturbation coefficient.
fn lifted(s: &PointSet, quad: [usize; 4], lift_at: Option<usize>) -> BigRational {
    let one = BigRational::from_integer(BigInt::from(1));
    let rows = quad
        .iter()
        .enumerate()
        .map(|(row, &i)| {
            let (x, y) = xy(s, i);
            let z = match lift_at {
                None => &x * &x + &y * &y,
                Some(p) if p == row => one.clone(),
                Some(_) => BigRational::zero(),
            };
            vec![x, y, z, one.clone()]
        })
        .collect::<Vec<_>>();
    det(&rows)
}

/// Sign of the lifted determinant with `z_i + eps^(i+1)`, eps -> 0+.
fn exact_perturbed(s: &PointSet, quad: [usize; 4]) -> Ordering {
    let base = sign(&lifted(s, quad, None));
    if base != Ordering::Equal {
        return base;
    }
    let mut rows: Vec<usize> = (0..4).collect();
    rows.sort_by_key(|&r| quad[r]);
    rows.into_iter()
        .map(|r| sign(&lifted(s, quad, Some(r))))
        .find(|&v| v != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

fn quads(n: usize, step: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..n)
        .step_by(step)
        .flat_map(move |a| {
            (0..n).flat_map(move |b| (0..n).flat_map(move |c| (0..n).map(move |d| [a, b, c, d])))
        })
        .filter(|v| {
            let mut s = *v;
            s.sort();
            s.windows(2).all(|w| w[0] != w[1])
        })
}

#[test]
fn orientation_matches_rational() {
    for s in [
        gen_random(9, 2, 1).unwrap(),
        gen_grid(3, 2).unwrap(),
        gen_circle(8).unwrap(),
    ] {
        for [a, b, c, _] in quads(s.len(), 1) {
            assert_eq!(orient(&s, a, b, c), exact_orient(&s, a, b, c));
        }
    }
}

#[test]
fn in_circle_matches_rational() {
    for s in [
        gen_random(8, 2, 2).unwrap(),
        gen_grid(3, 2).unwrap(),
        gen_circle(6).unwrap(),
    ] {
        for quad in quads(s.len(), 1) {
            let [a, b, c, d] = quad;
            if exact_orient(&s, a, b, c) != Ordering::Greater {
                continue;
            }
            assert_eq!(
                in_circle(&s, a, b, c, d),
                sign(&lifted(&s, quad, None)),
                "{quad:?}"
            );
            assert_eq!(
                in_circle_perturbed(&s, a, b, c, d),
                exact_perturbed(&s, quad),
                "{quad:?}"
            );
        }
    }
}

#[test]
fn unit_square_perturbation() {
    let s = PointSet::from_rows([
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![1.0, 1.0],
        vec![0.0, 1.0],
    ])
    .unwrap();
    assert_eq!(sign(&lifted(&s, [0, 1, 2, 3], None)), Ordering::Equal);
    assert_eq!(
        exact_perturbed(&s, [0, 1, 2, 3]),
        in_circle_perturbed(&s, 0, 1, 2, 3)
    );
    assert_eq!(
        exact_perturbed(&s, [1, 2, 3, 0]),
        in_circle_perturbed(&s, 1, 2, 3, 0)
    );
    let t = triangulate(&s).unwrap();
    assert!(t.graph.contains_edge(1, 3));
    assert!(!t.graph.contains_edge(0, 2));
}

/// Every triangle is counter-clockwise and no other point is strictly
/// inside its circumcircle, decided exactly.
fn assert_delaunay(s: &PointSet) {
    let t = triangulate(s).unwrap();
    for tri in &t.triangles {
        let [a, b, c] = *tri;
        assert_eq!(exact_orient(s, a, b, c), Ordering::Greater);
        for d in 0..s.len() {
            if tri.contains(&d) {
                continue;
            }
            assert_ne!(
                sign(&lifted(s, [a, b, c, d], None)),
                Ordering::Greater,
                "{tri:?} contains {d}"
            );
        }
    }
}

#[test]
fn triangulations_are_exactly_delaunay() {
    for seed in 0..4 {
        assert_delaunay(&gen_random(40, 2, seed).unwrap());
    }
    assert_delaunay(&gen_grid(6, 2).unwrap());
    assert_delaunay(&gen_circle(17).unwrap());
    // nearly collinear triples near the float resolution
    let rows: Vec<Vec<f64>> = (0..20)
        .map(|i| {
            vec![
                i as f64 * 0.1,
                (i as f64 * 0.1) * 1e-15 + if i % 3 == 0 { 1e-12 } else { 0.0 },
            ]
        })
        .collect();
    assert_delaunay(&PointSet::from_rows(rows).unwrap());
}
