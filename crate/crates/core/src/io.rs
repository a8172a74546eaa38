//! Plain-text point-set and edge-list files.
//!
//! Point sets: a header line `D n`, then `n` lines of `D` coordinates
//! separated by single spaces. Edge lists: a header `n E`, then `E` lines
//! `i j` with 0-based indices and `i < j`. Lines starting with `#` are
//! comments.

use std::fmt::Write as _;

use crate::error::{Result, SpannerError};
use crate::geometry::{Point, PointSet};
use crate::graph::GeoGraph;

fn parse_err(line: usize, message: impl Into<String>) -> SpannerError {
    SpannerError::Parse {
        line,
        message: message.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<T: std::str::FromStr>(
    line: usize,
    text: &str,
    expected: usize,
    what: &str,
) -> Result<Vec<T>> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != expected {
        return Err(parse_err(
            line,
            format!("expected {expected} {what}, found {}", fields.len()),
        ));
    }
    fields
        .into_iter()
        .map(|f| {
            f.parse::<T>()
                .map_err(|_| parse_err(line, format!("cannot parse {f:?}")))
        })
        .collect()
}

pub fn write_points(points: &PointSet) -> String {
    let mut out = format!("{} {}\n", points.dim(), points.len());
    for p in points.iter() {
        let row: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_points(text: &str) -> Result<PointSet> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let hdr: Vec<usize> = parse_fields(hl, header, 2, "header fields")?;
    let (dim, n) = (hdr[0], hdr[1]);
    if dim == 0 {
        return Err(parse_err(hl, "dimension must be positive"));
    }
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, row) = lines
            .next()
            .ok_or_else(|| parse_err(hl, format!("expected {n} points")))?;
        let coords: Vec<f64> = parse_fields(ln, row, dim, "coordinates")?;
        points.push(Point::new(coords).map_err(|e| parse_err(ln, e.to_string()))?);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing data after the last point"));
    }
    PointSet::new(points)
}

pub fn write_edges(graph: &GeoGraph) -> String {
    let mut out = format!("{} {}\n", graph.vertex_count(), graph.edge_count());
    for &(i, j) in graph.edges() {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

/// Parses an edge list and attaches it to `points`.
pub fn read_edges(text: &str, points: &PointSet) -> Result<GeoGraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let hdr: Vec<usize> = parse_fields(hl, header, 2, "header fields")?;
    let (n, e) = (hdr[0], hdr[1]);
    if n != points.len() {
        return Err(parse_err(
            hl,
            format!("edge list has {n} vertices, point set has {}", points.len()),
        ));
    }
    let mut edges = Vec::with_capacity(e);
    for _ in 0..e {
        let (ln, row) = lines
            .next()
            .ok_or_else(|| parse_err(hl, format!("expected {e} edges")))?;
        let ij: Vec<usize> = parse_fields(ln, row, 2, "indices")?;
        if ij[0] >= ij[1] {
            return Err(parse_err(
                ln,
                format!("edge {} {} must have i < j", ij[0], ij[1]),
            ));
        }
        if ij[1] >= n {
            return Err(parse_err(ln, format!("index {} out of range", ij[1])));
        }
        edges.push((ij[0], ij[1]));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing data after the last edge"));
    }
    GeoGraph::new(points.clone(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reads_with_comments() {
        let s = read_points("# header next\n2 3\n0 0\n# mid\n1.5 -2\n1e-3 4\n").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.point(2).coords(), &[0.001, 4.0]);
        let g = read_edges("3 2\n0 1\n1 2\n", &s).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "",
            "2\n",
            "2 2\n0 0\n",
            "2 1\n0 x\n",
            "2 1\n0 0 0\n",
            "2 1\n0 0\n1 1\n",
            "2 1\nnan 0\n",
            "0 1\n\n",
        ] {
            assert!(read_points(bad).is_err(), "{bad:?}");
        }
        assert!(matches!(
            read_points("2 2\n0 0\n0 0\n"),
            Err(SpannerError::DuplicatePoint { .. })
        ));
        let s = read_points("1 3\n0\n1\n2\n").unwrap();
        for bad in [
            "3 1\n1 0\n",
            "3 1\n0 3\n",
            "4 0\n",
            "3 2\n0 1\n",
            "3 1\n0 1\n1 2\n",
            "3 1\n1 1\n",
        ] {
            assert!(read_edges(bad, &s).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn line_numbers_in_errors() {
        let err = read_points("# c\n2 2\n0 0\n1 q\n").unwrap_err();
        assert_eq!(
            err,
            SpannerError::Parse {
                line: 4,
                message: "cannot parse \"q\"".into()
            }
        );
    }

    proptest! {
        #[test]
        fn point_roundtrip(rows in proptest::collection::vec(proptest::collection::vec(-1e12f64..1e12, 3), 1..40)) {
            let mut rows = rows;
            rows.sort_by(|a, b| a.partial_cmp(b).unwrap());
            rows.dedup();
            let s = PointSet::from_rows(rows).unwrap();
            let text = write_points(&s);
            let back = read_points(&text).unwrap();
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(write_points(&back), text);
        }

        #[test]
        fn edge_roundtrip(n in 2usize..30, raw in proptest::collection::vec((0usize..30, 0usize..30), 0..60)) {
            let s = PointSet::from_rows((0..n).map(|i| vec![i as f64])).unwrap();
            let edges: Vec<_> = raw.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b).collect();
            let g = GeoGraph::new(s.clone(), edges).unwrap();
            let back = read_edges(&write_edges(&g), &s).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
