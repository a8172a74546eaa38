//! Check suites: analytic bounds against measured dilations, structural
//! invariants of the builders, and run-to-run determinism.
//!
//! Every check produces a row `kind, params, analytic, measured, pass`.
//! A [`Report`] groups the rows of one criterion.

use std::f64::consts::PI;
use std::fmt;

use crate::bounds::{
    analytic_bound, brute_min_graph, brute_min_tree, contains_origin,
    inscribed_triangle_min_perimeter, min_worst_consecutive_tree_distance, triangle_perimeter,
    BoundKind,
};
use crate::delaunay::delaunay;
use crate::error::{invalid, Result};
use crate::generators::{
    gen_circle, gen_convex_rect, gen_grid, gen_grid_squares, gen_multi_circle, gen_random,
    square_boundary_cycle, GridSquaresSpec,
};
use crate::geometry::PointSet;
use crate::graph::{dilation, dilation_with_workers, GeoGraph};
use crate::highd::{greedy_tspanner, sparse_spanner_highd};
use crate::io::{write_edges, write_points};
use crate::mst::{emst_2d, mst_of_graph, tree_path};
use crate::sparse2d::sparse_spanner_2d;
use crate::spread::{bounded_spread_spanner, integer_root};

/// Absolute slack on real-valued comparisons.
pub const TOL: f64 = 1e-9;

/// Largest observed `dilation * (k+1) / n` of the planar builder on the
/// scaling sweep, recorded once.
pub const C_2D: f64 = 0.9292;
/// Same for the any-dimension builder.
pub const C_HD: f64 = 1.5641;
/// Regression slack on the calibrated constants.
pub const CALIBRATION_SLACK: f64 = 0.05;

/// Stretch used for every greedy spanner in the suites.
pub const SUITE_T: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// measured >= analytic - tol
    AtLeast,
    /// measured <= analytic + tol
    AtMost,
    /// measured == analytic within tol
    Equal,
    /// boolean invariant; measured is 1 for true
    Holds,
    /// informational only; never fails
    Info,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub kind: String,
    pub params: String,
    pub relation: Relation,
    pub analytic: f64,
    pub measured: f64,
    pub pass: bool,
}

impl Check {
    fn compare(
        kind: &str,
        params: String,
        relation: Relation,
        analytic: f64,
        measured: f64,
        tol: f64,
    ) -> Check {
        let pass = match relation {
            Relation::AtLeast => measured >= analytic - tol,
            Relation::AtMost => measured <= analytic + tol,
            Relation::Equal => (measured - analytic).abs() <= tol,
            Relation::Holds => measured == 1.0,
            Relation::Info => true,
        };
        Check {
            kind: kind.to_string(),
            params,
            relation,
            analytic,
            measured,
            pass,
        }
    }

    pub fn at_least(kind: &str, params: String, analytic: f64, measured: f64, tol: f64) -> Check {
        Check::compare(kind, params, Relation::AtLeast, analytic, measured, tol)
    }

    pub fn at_most(kind: &str, params: String, analytic: f64, measured: f64, tol: f64) -> Check {
        Check::compare(kind, params, Relation::AtMost, analytic, measured, tol)
    }

    pub fn equal(kind: &str, params: String, analytic: f64, measured: f64, tol: f64) -> Check {
        Check::compare(kind, params, Relation::Equal, analytic, measured, tol)
    }

    pub fn holds(kind: &str, params: String, ok: bool) -> Check {
        Check::compare(
            kind,
            params,
            Relation::Holds,
            1.0,
            if ok { 1.0 } else { 0.0 },
            0.0,
        )
    }

    pub fn info(kind: &str, params: String, measured: f64) -> Check {
        Check::compare(kind, params, Relation::Info, f64::NAN, measured, 0.0)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
            Relation::Equal => "==",
            Relation::Holds => "holds",
            Relation::Info => "info",
        };
        let verdict = if self.pass { "pass" } else { "FAIL" };
        write!(
            f,
            "{:<22} {:<34} {:>5} {:>20} {:>20}  {}",
            self.kind,
            self.params,
            rel,
            fmt_num(self.analytic),
            fmt_num(self.measured),
            verdict
        )
    }
}

fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "-".into()
    } else {
        format!("{v:.9}")
    }
}

/// Rows of one criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub id: usize,
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// One summary line, e.g. `[pass] 4 circle trees (10 checks)`.
    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        let verdict = if failed == 0 { "pass" } else { "FAIL" };
        let mut line = format!(
            "[{verdict}] {:>2} {} ({} checks",
            self.id,
            self.name,
            self.checks.len()
        );
        if failed > 0 {
            line.push_str(&format!(", {failed} failed"));
        }
        line.push(')');
        line
    }
}

pub fn header() -> String {
    format!(
        "{:<22} {:<34} {:>5} {:>20} {:>20}  {}",
        "kind", "params", "rel", "analytic", "measured", "result"
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Bounds,
    Lemmas,
    All,
}

impl std::str::FromStr for Suite {
    type Err = crate::error::SpannerError;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "bounds" => Ok(Suite::Bounds),
            "lemmas" => Ok(Suite::Lemmas),
            "all" => Ok(Suite::All),
            other => Err(invalid(format!("unknown suite {other:?}"))),
        }
    }
}

type Runner = fn() -> Result<Report>;

const BOUNDS: &[Runner] = &[
    circle_trees,
    multi_circle_lower_bound,
    bounded_spread,
    oracle_consistency,
    convex_position,
];
const LEMMAS: &[Runner] = &[
    mst_dilation,
    spanner_tree_paths,
    delaunay_stretch,
    inscribed_triangle,
    square_boundary,
];

/// Runs a suite in a fixed order.
pub fn run_suite(suite: Suite) -> Result<Vec<Report>> {
    let runners: Vec<Runner> = match suite {
        Suite::Bounds => BOUNDS.to_vec(),
        Suite::Lemmas => LEMMAS.to_vec(),
        Suite::All => ALL.to_vec(),
    };
    runners.into_iter().map(|r| r()).collect()
}

const ALL: &[Runner] = &[
    edge_budgets,
    mst_dilation,
    spanner_tree_paths,
    circle_trees,
    multi_circle_lower_bound,
    upper_bound_scaling,
    delaunay_stretch,
    bounded_spread,
    inscribed_triangle,
    oracle_consistency,
    degree_accounting,
    determinism,
    convex_position,
    square_boundary,
];

fn budget_check(name: &str, params: String, g: &GeoGraph, k: usize) -> Check {
    let n = g.vertex_count();
    let e = g.edge_count();
    Check::holds(
        name,
        format!("{params} |E|={e}"),
        g.is_connected() && n - 1 <= e && e <= n - 1 + k,
    )
}

/// Edge budgets and connectivity of every builder.
pub fn edge_budgets() -> Result<Report> {
    let mut checks = Vec::new();
    for n in [20usize, 50, 100, 200] {
        for dim in [2usize, 3] {
            let s = gen_random(n, dim, (n * 10 + dim) as u64)?;
            let mut ks = vec![0, 1, 5, n / 4, n - 1];
            ks.dedup();
            for k in ks {
                let p = format!("n={n} D={dim} k={k}");
                if dim == 2 {
                    checks.push(budget_check(
                        "budget sparse2d",
                        p.clone(),
                        &sparse_spanner_2d(&s, k)?,
                        k,
                    ));
                }
                let hd = sparse_spanner_highd(&s, k, SUITE_T)?;
                checks.push(budget_check("budget highd", p.clone(), &hd.graph, k));
                let sp = bounded_spread_spanner(&s, k, SUITE_T)?;
                checks.push(budget_check("budget spread", p, &sp.graph, k));
            }
        }
    }
    Ok(Report {
        id: 1,
        name: "edge budgets",
        checks,
    })
}

/// The Euclidean MST has dilation at most `n - 1`.
pub fn mst_dilation() -> Result<Report> {
    let mut checks = Vec::new();
    for i in 0..100usize {
        let n = 2 + i % 99;
        let s = gen_random(n, 2, 1000 + i as u64)?;
        let d = dilation(&emst_2d(&s)?)?.value();
        checks.push(Check::at_most(
            "emst dilation",
            format!("n={n} seed={}", 1000 + i),
            (n - 1) as f64,
            d,
            TOL,
        ));
    }
    Ok(Report {
        id: 2,
        name: "MST dilation",
        checks,
    })
}

/// Tree paths in the MST of a greedy 2-spanner use only edges of length
/// at most `2 d(p,q)`, and the tree has dilation at most `2(n-1)`.
pub fn spanner_tree_paths() -> Result<Report> {
    let mut checks = Vec::new();
    for (n, dim, seed) in [
        (10usize, 2usize, 1u64),
        (30, 2, 2),
        (60, 2, 3),
        (20, 3, 4),
        (60, 3, 5),
    ] {
        let s = gen_random(n, dim, seed)?;
        let t = mst_of_graph(&greedy_tspanner(&s, 2.0)?)?;
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                let bound = 2.0 * s.dist(p, q);
                for w in tree_path(&t, p, q).windows(2) {
                    worst = worst.max(s.dist(w[0], w[1]) - bound);
                }
            }
        }
        let params = format!("n={n} D={dim} seed={seed}");
        checks.push(Check::at_most(
            "tree edge - 2d(p,q)",
            params.clone(),
            0.0,
            worst,
            TOL,
        ));
        let d = dilation(&t)?.value();
        checks.push(Check::at_most(
            "tree dilation",
            params,
            2.0 * (n - 1) as f64,
            d,
            TOL,
        ));
    }
    Ok(Report {
        id: 3,
        name: "spanner MST tree paths",
        checks,
    })
}

/// Exhaustive minimum tree dilation on small circles.
pub fn circle_trees() -> Result<Report> {
    let mut checks = Vec::new();
    for n in 4..=8 {
        let (v, _) = brute_min_tree(&gen_circle(n)?)?;
        let p = format!("n={n}");
        checks.push(Check::at_least(
            "tree_circle",
            p.clone(),
            analytic_bound(BoundKind::TreeCircle { n })?,
            v,
            TOL,
        ));
        checks.push(Check::at_least(
            "steiner_circle",
            p,
            analytic_bound(BoundKind::SteinerCircle { n })?,
            v,
            TOL,
        ));
        if n == 4 {
            checks.push(Check::equal(
                "min tree circle4",
                "n=4".into(),
                1.0 + 2f64.sqrt(),
                v,
                TOL,
            ));
        }
    }
    Ok(Report {
        id: 4,
        name: "circle trees",
        checks,
    })
}

/// The planar builder cannot beat the multi-circle lower bound.
pub fn multi_circle_lower_bound() -> Result<Report> {
    let mut checks = Vec::new();
    for (n, k) in [(40usize, 1usize), (60, 2), (60, 5)] {
        let g = sparse_spanner_2d(&gen_multi_circle(n, k)?, k)?;
        let d = dilation(&g)?.value();
        let b = analytic_bound(BoundKind::GeneralK { n, k })?;
        checks.push(Check::at_least(
            "general_k",
            format!("n={n} k={k}"),
            b,
            d,
            TOL,
        ));
    }
    Ok(Report {
        id: 5,
        name: "multi-circle lower bound",
        checks,
    })
}

/// Largest `dilation * (k+1) / n` of each builder over the scaling sweep.
pub fn scaling_ratios() -> Result<(f64, f64, Vec<Check>)> {
    let mut rows = Vec::new();
    let (mut c2, mut chd) = (0.0f64, 0.0f64);
    for n in [64usize, 128, 256] {
        for k in [0usize, 1, 3, 7, 15] {
            for seed in 0..2u64 {
                let s2 = gen_random(n, 2, 7000 + seed)?;
                let r2 = dilation(&sparse_spanner_2d(&s2, k)?)?.value() * (k + 1) as f64 / n as f64;
                let s3 = gen_random(n, 3, 8000 + seed)?;
                let r3 = dilation(&sparse_spanner_highd(&s3, k, SUITE_T)?.graph)?.value()
                    * (k + 1) as f64
                    / n as f64;
                c2 = c2.max(r2);
                chd = chd.max(r3);
                rows.push(Check::info(
                    "ratio sparse2d",
                    format!("n={n} k={k} seed={seed}"),
                    r2,
                ));
                rows.push(Check::info(
                    "ratio highd D=3",
                    format!("n={n} k={k} seed={seed}"),
                    r3,
                ));
            }
        }
    }
    Ok((c2, chd, rows))
}

/// Dilation scales like `n/(k+1)`, against recorded constants.
pub fn upper_bound_scaling() -> Result<Report> {
    let (c2, chd, mut checks) = scaling_ratios()?;
    checks.push(Check::at_most(
        "C_2d",
        "max ratio".into(),
        C_2D * (1.0 + CALIBRATION_SLACK),
        c2,
        0.0,
    ));
    checks.push(Check::at_most(
        "C_hd",
        "max ratio".into(),
        C_HD * (1.0 + CALIBRATION_SLACK),
        chd,
        0.0,
    ));
    Ok(Report {
        id: 6,
        name: "upper-bound scaling",
        checks,
    })
}

/// Delaunay triangulations of random sets stay below the stretch constant.
pub fn delaunay_stretch() -> Result<Report> {
    let bound = 2.0 * PI / (3.0 * (PI / 6.0).cos());
    let mut checks = Vec::new();
    for seed in 0..50u64 {
        let d = dilation(&delaunay(&gen_random(100, 2, 500 + seed)?)?)?.value();
        checks.push(Check::at_most(
            "delaunay",
            format!("n=100 seed={}", 500 + seed),
            2.4184,
            d,
            1e-6,
        ));
    }
    checks.push(Check::equal(
        "stretch constant",
        "2pi/(3cos(pi/6))".into(),
        2.4184,
        bound,
        1e-4,
    ));
    Ok(Report {
        id: 7,
        name: "Delaunay stretch",
        checks,
    })
}

/// Smallest `m` with `m^dim - 1 >= extra`.
fn cells_covering(extra: usize, dim: usize) -> usize {
    let m = integer_root(extra + 1, dim);
    if m.pow(dim as u32) > extra {
        m
    } else {
        m + 1
    }
}

/// Upper and lower dilation bounds for the bounded-spread builder on grids.
pub fn bounded_spread() -> Result<Report> {
    let r = 16;
    let grid = gen_grid(r, 2)?;
    let mut checks = Vec::new();
    for k in [0usize, 3, 8, 24] {
        let out = bounded_spread_spanner(&grid, k, SUITE_T)?;
        let d = dilation(&out.graph)?.value();
        let p = format!("r={r} k={k} m={} t={}", out.cells_per_axis, out.t_used);
        checks.push(Check::at_most(
            "spread upper",
            p,
            out.guaranteed_dilation(),
            d,
            TOL,
        ));

        // The lower bound covers any network with n - 1 + m^D - 1 edges, so
        // take the smallest m whose allowance includes the surplus used.
        let extra = out.graph.edge_count() + 1 - grid.len();
        let mut m = cells_covering(extra, 2);
        let mut row = None;
        while 4 * m <= r {
            let squares = gen_grid_squares(GridSquaresSpec::new(r, m, r * r, 2)?)?;
            let out = bounded_spread_spanner(&squares, k, SUITE_T)?;
            let extra = out.graph.edge_count() + 1 - squares.len();
            if extra < m * m {
                let d = dilation(&out.graph)?.value();
                let params = format!("r={r} k={k} m={m} surplus={extra}");
                row = Some(Check::at_least(
                    "grid",
                    params,
                    analytic_bound(BoundKind::Grid { r, m })?,
                    d,
                    TOL,
                ));
                break;
            }
            m += 1;
        }
        checks.push(row.unwrap_or_else(|| {
            Check::info(
                "grid (no bound)",
                format!("r={r} k={k} surplus={extra}"),
                f64::NAN,
            )
        }));
    }
    Ok(Report {
        id: 8,
        name: "bounded spread",
        checks,
    })
}

/// Random triangles inscribed in the unit circle around its centre.
pub fn inscribed_triangle() -> Result<Report> {
    let mut checks = Vec::new();
    for seed in 0..3u64 {
        let v = inscribed_triangle_min_perimeter(100_000, seed)?;
        checks.push(Check::at_least(
            "min perimeter",
            format!("samples=1e5 seed={seed}"),
            4.0,
            v,
            1e-6,
        ));
    }
    let (a, b, c) = ([1.0, 0.0], [-1.0, 0.0], [-1.0, 0.0]);
    checks.push(Check::holds(
        "degenerate contains 0",
        "diameter+point".into(),
        contains_origin(a, b, c),
    ));
    checks.push(Check::equal(
        "degenerate perimeter",
        "diameter+point".into(),
        4.0,
        triangle_perimeter(a, b, c),
        0.0,
    ));
    Ok(Report {
        id: 9,
        name: "inscribed triangle",
        checks,
    })
}

/// Builders never beat the exhaustive optimum.
pub fn oracle_consistency() -> Result<Report> {
    let mut checks = Vec::new();
    for n in 4..=6usize {
        for dim in [2usize, 3] {
            for seed in 0..2u64 {
                let s = gen_random(n, dim, 300 + 10 * n as u64 + seed)?;
                for k in 0..=2usize {
                    let (opt, _) = brute_min_graph(&s, k)?;
                    let mut builders: Vec<(&str, GeoGraph)> = vec![
                        ("highd", sparse_spanner_highd(&s, k, SUITE_T)?.graph),
                        ("spread", bounded_spread_spanner(&s, k, SUITE_T)?.graph),
                    ];
                    if dim == 2 {
                        builders.push(("sparse2d", sparse_spanner_2d(&s, k)?));
                    }
                    for (name, g) in builders {
                        let d = dilation(&g)?.value();
                        let p = format!("{name} n={n} D={dim} k={k} seed={seed}");
                        checks.push(Check::at_least("builder >= optimum", p, opt, d, TOL));
                    }
                }
            }
        }
    }
    Ok(Report {
        id: 10,
        name: "oracle consistency",
        checks,
    })
}

/// Per-vertex degree accounting of the any-dimension builder.
pub fn degree_accounting() -> Result<Report> {
    let mut checks = Vec::new();
    for (n, dim, k) in [
        (50usize, 2usize, 5usize),
        (100, 2, 20),
        (100, 3, 10),
        (200, 3, 50),
        (64, 4, 15),
    ] {
        let s = gen_random(n, dim, 900 + n as u64)?;
        let acc = sparse_spanner_highd(&s, k, SUITE_T)?.degree_accounting();
        let p = format!("n={n} D={dim} k={k}");
        checks.push(Check::holds("accounting", p.clone(), acc.holds));
        if acc.degree_five_applies() {
            checks.push(Check::at_most(
                "max degree",
                p,
                5.0,
                acc.max_degree as f64,
                0.0,
            ));
        } else {
            checks.push(Check::info(
                "max degree (base deg)",
                format!(
                    "{p} base={} inner={}",
                    acc.base_max_degree, acc.inner_max_degree
                ),
                acc.max_degree as f64,
            ));
        }
    }
    Ok(Report {
        id: 11,
        name: "degree accounting",
        checks,
    })
}

/// Serialized outputs of every generator and builder, with dilation reports.
pub fn fingerprint() -> Result<String> {
    let mut out = String::new();
    let sets: Vec<PointSet> = vec![
        gen_circle(12)?,
        gen_multi_circle(30, 2)?,
        gen_convex_rect(22)?,
        gen_grid_squares(GridSquaresSpec::new(8, 2, 40, 2)?)?,
        gen_random(80, 2, 42)?,
        gen_random(60, 3, 43)?,
    ];
    for s in &sets {
        out.push_str(&write_points(s));
    }
    let planar = &sets[4];
    let space = &sets[5];
    let mut graphs = vec![delaunay(planar)?, sparse_spanner_2d(planar, 9)?];
    for s in [planar, space] {
        graphs.push(sparse_spanner_highd(s, 9, SUITE_T)?.graph);
        graphs.push(bounded_spread_spanner(s, 9, SUITE_T)?.graph);
    }
    for g in &graphs {
        out.push_str(&write_edges(g));
        out.push_str(&format!("{}\n", dilation(g)?));
    }
    Ok(out)
}

/// Byte-identical output across runs and worker counts.
pub fn determinism() -> Result<Report> {
    let mut runs = Vec::new();
    for workers in [1usize, 4, 1, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| invalid(format!("thread pool: {e}")))?;
        runs.push((workers, pool.install(fingerprint)?));
    }
    let mut checks: Vec<Check> = runs
        .iter()
        .enumerate()
        .map(|(i, (w, text))| {
            Check::holds(
                "fingerprint",
                format!("run={i} workers={w}"),
                *text == runs[0].1,
            )
        })
        .collect();
    let g = delaunay(&gen_random(150, 2, 44)?)?;
    let one = dilation_with_workers(&g, 1)?.to_string();
    let four = dilation_with_workers(&g, 4)?.to_string();
    checks.push(Check::holds(
        "dilation report",
        "workers 1 vs 4".into(),
        one == four,
    ));
    Ok(Report {
        id: 12,
        name: "determinism",
        checks,
    })
}

/// Any spanning tree on the convex-position set respects the convex bound.
pub fn convex_position() -> Result<Report> {
    let mut checks = Vec::new();
    for n in [18usize, 34, 66, 130] {
        let s = gen_convex_rect(n)?;
        let b = analytic_bound(BoundKind::ConvexK { n, k: 0 })?;
        for (name, g) in [
            ("convex_k emst", emst_2d(&s)?),
            ("convex_k sparse2d", sparse_spanner_2d(&s, 0)?),
        ] {
            checks.push(Check::at_least(
                name,
                format!("n={n} k=0"),
                b,
                dilation(&g)?.value(),
                TOL,
            ));
        }
    }
    Ok(Report {
        id: 13,
        name: "convex position",
        checks,
    })
}

/// Every spanning tree on square boundary points leaves two consecutive
/// points at tree distance at least the side length.
pub fn square_boundary() -> Result<Report> {
    let rows: Vec<Vec<f64>> = square_boundary_cycle(1)
        .into_iter()
        .map(|(x, y)| vec![x as f64, y as f64])
        .collect();
    let mut checks = Vec::new();
    for skip in [None, Some(0), Some(3)] {
        let kept: Vec<Vec<f64>> = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .map(|(_, r)| r.clone())
            .collect();
        let n = kept.len();
        let v = min_worst_consecutive_tree_distance(&PointSet::from_rows(kept)?)?;
        let p = match skip {
            None => format!("sigma=1 n={n}"),
            Some(i) => format!("sigma=1 n={n} without {i}"),
        };
        checks.push(Check::at_least("square boundary", p, 2.0, v, TOL));
    }
    Ok(Report {
        id: 14,
        name: "square boundary",
        checks,
    })
}
