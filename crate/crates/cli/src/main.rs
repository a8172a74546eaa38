use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sparsenet::generators::GridSquaresSpec;
use sparsenet::io::{read_edges, read_points, write_edges, write_points};
use sparsenet::verify::{self, Suite};
use sparsenet::{
    bounded_spread_spanner, dilation, gen_circle, gen_convex_rect, gen_grid_squares,
    gen_multi_circle, gen_random, sparse_spanner_2d, sparse_spanner_highd, GeoGraph, PointSet,
    SpannerError,
};

#[derive(Parser)]
#[command(
    name = "sparsenet",
    version,
    about = "Sparse Euclidean networks with n-1+k edges"
)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Circle,
    Multicircle,
    Convexrect,
    Gridsquares,
    Random,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Algo {
    Sparse2d,
    Highd,
    Spread,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Sparse2d => "sparse2d",
            Algo::Highd => "highd",
            Algo::Spread => "spread",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Bounds,
    Lemmas,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Write a point set.
    Generate {
        family: Family,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 16)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a network on a point set and write its edge list.
    Build {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Stretch of the inner greedy spanners.
        #[arg(long, default_value_t = 2.0)]
        t: f64,
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the exact dilation of a network.
    Measure {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run a check suite and print a result table.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
    /// Sweep builders over random inputs and print CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [64usize, 128, 256])]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [0usize, 1, 3, 7, 15])]
        k: Vec<usize>,
        #[arg(long, value_enum, value_delimiter = ',', default_values = ["sparse2d", "highd", "spread"])]
        algo: Vec<Algo>,
        #[arg(long, default_value_t = 2.0)]
        t: f64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a planar network as SVG, highlighting the worst pair.
    ExportSvg {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    /// Bad arguments or malformed input; exit code 2.
    Usage(String),
    /// A computed result broke an invariant; exit code 1.
    Invariant(String),
}

impl From<SpannerError> for Failure {
    fn from(e: SpannerError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(points: &Path, graph: &Path) -> CliResult<GeoGraph> {
    let set = read_points(&read_file(points)?)?;
    Ok(read_edges(&read_file(graph)?, &set)?)
}

fn generate(
    family: Family,
    n: usize,
    k: usize,
    r: usize,
    m: usize,
    dim: usize,
    seed: u64,
) -> CliResult<PointSet> {
    Ok(match family {
        Family::Circle => gen_circle(n)?,
        Family::Multicircle => gen_multi_circle(n, k)?,
        Family::Convexrect => gen_convex_rect(n)?,
        Family::Gridsquares => gen_grid_squares(GridSquaresSpec::new(r, m, n, dim)?)?,
        Family::Random => gen_random(n, dim, seed)?,
    })
}

fn build(algo: Algo, points: &PointSet, k: usize, t: f64) -> CliResult<GeoGraph> {
    let g = match algo {
        Algo::Sparse2d => sparse_spanner_2d(points, k)?,
        Algo::Highd => sparse_spanner_highd(points, k, t)?.graph,
        Algo::Spread => bounded_spread_spanner(points, k, t)?.graph,
    };
    let n = g.vertex_count();
    if !g.is_connected() || g.edge_count() > n - 1 + k {
        return Err(Failure::Invariant(format!(
            "{} produced {} edges (budget {}), connected={}",
            algo.name(),
            g.edge_count(),
            n - 1 + k,
            g.is_connected()
        )));
    }
    Ok(g)
}

fn measure(g: &GeoGraph) -> CliResult<String> {
    let report = dilation(g)?;
    let line = format!("{report} edges={}\n", g.edge_count());
    if !report.connected {
        print!("{line}");
        return Err(Failure::Invariant("graph is not connected".into()));
    }
    Ok(line)
}

fn run_verify(suite: SuiteArg) -> CliResult<String> {
    let suite = match suite {
        SuiteArg::Bounds => Suite::Bounds,
        SuiteArg::Lemmas => Suite::Lemmas,
        SuiteArg::All => Suite::All,
    };
    let reports = verify::run_suite(suite)?;
    let mut out = String::new();
    let _ = writeln!(out, "{}", verify::header());
    for r in &reports {
        for c in &r.checks {
            let _ = writeln!(out, "{c}");
        }
    }
    out.push('\n');
    for r in &reports {
        let _ = writeln!(out, "{}", r.summary());
    }
    if reports.iter().all(|r| r.passed()) {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Invariant("some checks failed".into()))
    }
}

fn bench(
    ns: &[usize],
    ks: &[usize],
    algos: &[Algo],
    t: f64,
    dim: usize,
    seed: u64,
) -> CliResult<String> {
    let mut out = String::from("n,k,algo,edges,max_degree,dilation,seconds\n");
    for &n in ns {
        let points = gen_random(n, dim, seed)?;
        for &k in ks {
            for &algo in algos {
                if algo == Algo::Sparse2d && dim != 2 {
                    continue;
                }
                let start = Instant::now();
                let g = build(algo, &points, k, t)?;
                let seconds = start.elapsed().as_secs_f64();
                let d = dilation(&g)?;
                let _ = writeln!(
                    out,
                    "{n},{k},{},{},{},{},{seconds:.6}",
                    algo.name(),
                    g.edge_count(),
                    g.max_degree(),
                    d.dilation
                );
            }
        }
    }
    Ok(out)
}

fn svg(g: &GeoGraph) -> CliResult<String> {
    let points = g.points();
    if points.dim() != 2 {
        return Err(Failure::Usage(format!(
            "export-svg needs planar points, got dimension {}",
            points.dim()
        )));
    }
    let report = dilation(g)?;
    let (size, margin) = (800.0, 20.0);
    let xs: Vec<f64> = points.iter().map(|p| p.x()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.y()).collect();
    let (x0, x1) = (
        xs.iter().copied().fold(f64::INFINITY, f64::min),
        xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    );
    let (y0, y1) = (
        ys.iter().copied().fold(f64::INFINITY, f64::min),
        ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    );
    let scale = (size - 2.0 * margin) / (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    // SVG y grows downwards
    let at = |i: usize| {
        (
            margin + (xs[i] - x0) * scale,
            size - margin - (ys[i] - y0) * scale,
        )
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="1">"#);
    for &(a, b) in g.edges() {
        let ((ax, ay), (bx, by)) = (at(a), at(b));
        let _ = writeln!(
            out,
            r#"<line x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}"/>"#
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="black">"#);
    for i in 0..points.len() {
        let (x, y) = at(i);
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
    }
    let _ = writeln!(out, "</g>");
    let (p, q) = report.argmax_pair;
    let ((px, py), (qx, qy)) = (at(p), at(q));
    let _ = writeln!(out, r#"<g stroke="red" fill="red"><title>{report}</title>"#);
    let _ = writeln!(
        out,
        r#"<line x1="{px:.3}" y1="{py:.3}" x2="{qx:.3}" y2="{qy:.3}" stroke-width="2" stroke-dasharray="6 4"/>"#
    );
    let _ = writeln!(out, r#"<circle cx="{px:.3}" cy="{py:.3}" r="5"/>"#);
    let _ = writeln!(out, r#"<circle cx="{qx:.3}" cy="{qy:.3}" r="5"/>"#);
    let _ = writeln!(out, "</g>\n</svg>");
    Ok(out)
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(workers) = cli.workers {
        if workers == 0 {
            return Err(Failure::Usage("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Generate {
            family,
            n,
            k,
            r,
            m,
            dim,
            seed,
            out,
        } => emit(
            &out,
            &write_points(&generate(family, n, k, r, m, dim, seed)?),
        ),
        Command::Build {
            algo,
            k,
            t,
            points,
            out,
        } => {
            let set = read_points(&read_file(&points)?)?;
            emit(&out, &write_edges(&build(algo, &set, k, t)?))
        }
        Command::Measure { points, graph } => emit(&None, &measure(&load(&points, &graph)?)?),
        Command::Verify { suite } => emit(&None, &run_verify(suite)?),
        Command::Bench {
            n,
            k,
            algo,
            t,
            dim,
            seed,
        } => emit(&None, &bench(&n, &k, &algo, t, dim, seed)?),
        Command::ExportSvg { points, graph, out } => emit(&out, &svg(&load(&points, &graph)?)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
