//! Line-oriented text format for maps.
//!
//! ```text
//! ddsmap 1
//! n 2
//! levels 2 2
//! kind total
//! 0 0 -> 1 0
//! ...
//! ```
//!
//! `kind` is `total`, `partial`, or `samples` (grid samples of a map on
//! `[0,1]^n`, right-hand sides are reals). `#` starts a comment; blank lines
//! are ignored. Body lines of written files appear in rank order.

use std::fmt::Write as _;

use crate::dynamics::{Dynamics, TotalMap};
use crate::error::{Error, Result};
use crate::smale::{GridSamples, PartialMap};
use crate::state::StateSpace;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum MapFile {
    Total(TotalMap),
    Partial(PartialMap),
    Samples(GridSamples),
}

impl MapFile {
    pub fn space(&self) -> &StateSpace {
        match self {
            MapFile::Total(m) => m.space(),
            MapFile::Partial(p) => p.space(),
            MapFile::Samples(s) => s.space(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MapFile::Total(_) => "total",
            MapFile::Partial(_) => "partial",
            MapFile::Samples(_) => "samples",
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap().trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

fn header_value<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
    last_line: usize,
) -> Result<(usize, Vec<&'a str>)> {
    let (ln, line) = lines
        .next()
        .ok_or_else(|| parse_err(last_line, format!("missing `{key}` header line")))?;
    let mut words = line.split_whitespace();
    if words.next() != Some(key) {
        return Err(parse_err(ln, format!("expected `{key}` header line, found `{line}`")));
    }
    Ok((ln, words.collect()))
}

fn parse_int<T: std::str::FromStr>(ln: usize, word: &str, what: &str) -> Result<T> {
    word.parse()
        .map_err(|_| parse_err(ln, format!("invalid {what} `{word}`")))
}

fn parse_coords(ln: usize, side: &str, space: &StateSpace) -> Result<Vec<u32>> {
    let words: Vec<&str> = side.split_whitespace().collect();
    if words.len() != space.dim() {
        return Err(parse_err(
            ln,
            format!("expected {} coordinates, found {}", space.dim(), words.len()),
        ));
    }
    let mut coords = Vec::with_capacity(words.len());
    for (i, w) in words.iter().enumerate() {
        let v: u32 = parse_int(ln, w, "coordinate")?;
        if v >= space.level(i) {
            return Err(Error::CoordinateRange {
                line: ln,
                msg: format!("coordinate {} is {v}, must be below {}", i + 1, space.level(i)),
            });
        }
        coords.push(v);
    }
    Ok(coords)
}

fn fmt_coords(c: &[u32]) -> String {
    c.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn parse_map_file(text: &str) -> Result<MapFile> {
    let total_lines = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let (ln, v) = header_value(&mut lines, "ddsmap", 1)?;
    if v != [FORMAT_VERSION.to_string().as_str()] {
        return Err(parse_err(ln, format!("unsupported format version `{}`", v.join(" "))));
    }
    let (ln, v) = header_value(&mut lines, "n", ln)?;
    if v.len() != 1 {
        return Err(parse_err(ln, "`n` takes one integer"));
    }
    let n: usize = parse_int(ln, v[0], "dimension")?;
    let (ln, v) = header_value(&mut lines, "levels", ln)?;
    if v.len() != n {
        return Err(parse_err(ln, format!("expected {n} level counts, found {}", v.len())));
    }
    let levels = v
        .iter()
        .map(|w| parse_int(ln, w, "level count"))
        .collect::<Result<Vec<u32>>>()?;
    let space = StateSpace::new(levels).map_err(|e| parse_err(ln, e.to_string()))?;
    let (ln, v) = header_value(&mut lines, "kind", ln)?;
    let kind = match v.as_slice() {
        [k] => *k,
        _ => return Err(parse_err(ln, "`kind` takes one word")),
    };
    if !["total", "partial", "samples"].contains(&kind) {
        return Err(parse_err(ln, format!("unknown kind `{kind}`")));
    }

    let mut seen: Vec<Option<usize>> = vec![None; space.size()];
    let mut images = vec![0u32; space.size()];
    let mut samples: Vec<Vec<f64>> = vec![Vec::new(); space.size()];
    let mut partial = PartialMap::new(space.clone());
    for (ln, line) in lines {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| parse_err(ln, "expected `x1 .. xn -> y1 .. yn`"))?;
        let x = parse_coords(ln, lhs, &space)?;
        let xr = space.encode(&x);
        if seen[xr].is_some() {
            return Err(Error::DuplicateState { line: ln, state: fmt_coords(&x) });
        }
        seen[xr] = Some(ln);
        if kind == "samples" {
            let vals: Vec<f64> = rhs
                .split_whitespace()
                .map(|w| w.parse().map_err(|_| parse_err(ln, format!("invalid value `{w}`"))))
                .collect::<Result<_>>()?;
            if vals.len() != space.dim() {
                return Err(parse_err(ln, format!("expected {} values, found {}", space.dim(), vals.len())));
            }
            samples[xr] = vals;
        } else {
            let y = space.encode(&parse_coords(ln, rhs, &space)?);
            images[xr] = y as u32;
            if kind == "partial" {
                partial.insert_rank(xr, y).map_err(|e| parse_err(ln, e.to_string()))?;
            }
        }
    }
    if kind == "partial" {
        return Ok(MapFile::Partial(partial));
    }
    if let Some(missing) = seen.iter().position(Option::is_none) {
        return Err(Error::IncompleteMap { state: fmt_coords(&space.decode(missing)) });
    }
    if kind == "samples" {
        let g = GridSamples::new(space, samples).map_err(|e| parse_err(total_lines, e.to_string()))?;
        return Ok(MapFile::Samples(g));
    }
    Ok(MapFile::Total(TotalMap::from_table(space, images)?))
}

fn header(space: &StateSpace, kind: &str) -> String {
    format!(
        "ddsmap {FORMAT_VERSION}\nn {}\nlevels {}\nkind {kind}\n",
        space.dim(),
        fmt_coords(space.levels())
    )
}

pub fn write_total(m: &TotalMap) -> String {
    let s = m.space();
    let mut out = header(s, "total");
    for (x, &y) in m.table().iter().enumerate() {
        let _ = writeln!(out, "{} -> {}", fmt_coords(&s.decode(x)), fmt_coords(&s.decode(y as usize)));
    }
    out
}

pub fn write_partial(p: &PartialMap) -> String {
    let s = p.space();
    let mut out = header(s, "partial");
    for (x, y) in p.iter() {
        let _ = writeln!(out, "{} -> {}", fmt_coords(&s.decode(x)), fmt_coords(&s.decode(y)));
    }
    out
}

/// Reals use the shortest representation that parses back to the same `f64`.
pub fn write_samples(g: &GridSamples) -> String {
    let s = g.space();
    let mut out = header(s, "samples");
    for (x, v) in g.values().iter().enumerate() {
        let vals: Vec<String> = v.iter().map(|c| format!("{c:?}")).collect();
        let _ = writeln!(out, "{} -> {}", fmt_coords(&s.decode(x)), vals.join(" "));
    }
    out
}

pub fn write_map_file(m: &MapFile) -> String {
    match m {
        MapFile::Total(t) => write_total(t),
        MapFile::Partial(p) => write_partial(p),
        MapFile::Samples(g) => write_samples(g),
    }
}
