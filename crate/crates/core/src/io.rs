//! Text formats.
//!
//! Point sets:
//!
//! ```text
//! #patchscope d=2 norm=linf
//! 0,0
//! 1/2,3
//! ```
//!
//! The header must be the first line. Coordinates are decimal integers or
//! reduced `num/den` rationals. Blank lines and `#` comments are skipped,
//! duplicate points are rejected.
//!
//! Integer sequences: one decimal integer per line, `#` comments allowed.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::geometry::{Norm, NormedSpace, Point, PointSet};
use crate::scalar::Scalar;

pub const HEADER_TAG: &str = "#patchscope";

fn parse_header(line: &str) -> Result<NormedSpace> {
    let err = |m: String| Error::Line { line: 1, message: m };
    let mut fields = line.split_whitespace();
    if fields.next() != Some(HEADER_TAG) {
        return Err(err(format!("expected header starting with {HEADER_TAG}")));
    }
    let mut dim = None;
    let mut norm = None;
    for f in fields {
        match f.split_once('=') {
            Some(("d", v)) => dim = Some(v.parse::<usize>().map_err(|_| err(format!("bad dimension {v:?}")))?),
            Some(("norm", v)) => norm = Some(v.parse::<Norm>().map_err(|e| err(e.to_string()))?),
            _ => return Err(err(format!("unknown header field {f:?}"))),
        }
    }
    let dim = dim.ok_or_else(|| err("header lacks d=".into()))?;
    let norm = norm.ok_or_else(|| err("header lacks norm=".into()))?;
    NormedSpace::new(dim, norm).map_err(|e| err(e.to_string()))
}

/// Parses the point-set format. An empty body yields an empty set.
pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let mut lines = text.lines().enumerate();
    let space = match lines.next() {
        Some((_, h)) => parse_header(h.trim())?,
        None => return Err(Error::Line { line: 1, message: "missing header".into() }),
    };
    let mut seen = HashSet::new();
    let mut points = Vec::new();
    for (i, raw) in lines {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let coords = s
            .split(',')
            .map(|c| c.trim().parse::<Scalar>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Line { line, message: e.to_string() })?;
        if coords.len() != space.dim() {
            return Err(Error::Line {
                line,
                message: format!("expected {} coordinates, found {}", space.dim(), coords.len()),
            });
        }
        let p = Point::new(coords);
        if !seen.insert(p.clone()) {
            return Err(Error::DuplicatePoint { line });
        }
        points.push(p);
    }
    PointSet::collect(space, points)
}

/// Writes the point-set format, points in lexicographic order.
pub fn format_point_set(set: &PointSet) -> String {
    let mut out = format!("{HEADER_TAG} {}\n", set.space());
    for p in set {
        let _ = writeln!(out, "{p}");
    }
    out
}

pub fn read_point_set(path: impl AsRef<Path>) -> Result<PointSet> {
    let text =
        std::fs::read_to_string(path.as_ref()).map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    let name = path.as_ref().file_stem().map(|s| s.to_string_lossy().into_owned());
    let set = parse_point_set(&text)?;
    Ok(match name {
        Some(n) => set.with_label(n),
        None => set,
    })
}

pub fn write_point_set(path: impl AsRef<Path>, set: &PointSet) -> Result<()> {
    std::fs::write(path.as_ref(), format_point_set(set))
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
}

/// Parses one integer per line; returns `(line number, value)` pairs.
pub fn parse_integers(text: &str) -> Result<Vec<(usize, BigInt)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let v = s
            .parse::<Scalar>()
            .ok()
            .and_then(|v| v.to_integer())
            .ok_or_else(|| Error::Line { line: i + 1, message: format!("not an integer: {s:?}") })?;
        out.push((i + 1, v));
    }
    Ok(out)
}
