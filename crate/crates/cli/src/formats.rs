//! On-disk formats.
//!
//! `.uhg`: first line `d n`, then one edge per line as `d` distinct vertex
//! indices separated by single spaces. Blank lines and lines starting with `#`
//! are skipped.
//!
//! `.cover`: first line `d n count`, then `count` items as
//! `num/den k p1;p2;...;pk`, each part a comma-separated sorted index list.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use hypercover::{Cuph, Edge, Family, Hypergraph, Mode, Rational, WeightedCover};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: hypercover::Error },
    #[error("cover header says {got_d}-uniform on {got_n} vertices, host is {d}-uniform on {n}")]
    HostMismatch { d: usize, n: usize, got_d: usize, got_n: usize },
    #[error("cover item {index}: {source}")]
    Item { index: usize, source: hypercover::Error },
    #[error("cover header announces {expected} items, found {found}")]
    ItemCount { expected: usize, found: usize },
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// Nonempty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

fn parse_index(line: usize, tok: &str) -> Result<usize, FormatError> {
    if tok.is_empty() {
        return Err(syntax(line, "empty field (fields are separated by single spaces)"));
    }
    if !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, format!("expected a non-negative integer, got {tok:?}")));
    }
    tok.parse().map_err(|_| syntax(line, format!("integer {tok:?} out of range")))
}

fn parse_fields(line: usize, text: &str) -> Result<Vec<usize>, FormatError> {
    text.split(' ').map(|t| parse_index(line, t)).collect()
}

pub fn parse_uhg(text: &str) -> Result<Hypergraph, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing header `d n`"))?;
    let [d, n] = parse_fields(hl, header)?[..] else {
        return Err(syntax(hl, "header must be `d n`"));
    };
    if d < 2 {
        return Err(FormatError::Invalid { line: hl, source: hypercover::Error::Uniformity(d) });
    }
    let mut seen = BTreeMap::new();
    for (ln, l) in lines {
        let raw = parse_fields(ln, l)?;
        let invalid = |source| FormatError::Invalid { line: ln, source };
        if raw.len() != d {
            return Err(invalid(hypercover::Error::EdgeArity { edge: raw, d }));
        }
        if let Some(&v) = raw.iter().find(|&&v| v >= n) {
            return Err(invalid(hypercover::Error::VertexOutOfRange { vertex: v, n }));
        }
        let e = Edge::new(raw).map_err(invalid)?;
        if seen.insert(e.clone(), ln).is_some() {
            return Err(invalid(hypercover::Error::DuplicateEdge(e.into_vec())));
        }
    }
    Hypergraph::new(n, d, seen.into_keys().map(Edge::into_vec)).map_err(|source| FormatError::Invalid { line: hl, source })
}

pub fn render_uhg(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.d(), h.n());
    for e in h.edges() {
        let fields: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

/// Cover items as read from disk, before attaching them to a host.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverFile {
    pub d: usize,
    pub n: usize,
    pub items: Vec<(Cuph, Rational)>,
}

impl CoverFile {
    /// Attaches the items to `host`. The family is `family`, or `Cm` if any item has more than `d` parts.
    pub fn attach<'h>(&self, host: &'h Hypergraph, mode: Mode, family: Option<Family>) -> Result<WeightedCover<'h, Rational>, FormatError> {
        if (self.d, self.n) != (host.d(), host.n()) {
            return Err(FormatError::HostMismatch { d: host.d(), n: host.n(), got_d: self.d, got_n: self.n });
        }
        let family = family.unwrap_or(if self.items.iter().all(|(c, _)| c.k() == self.d) { Family::Cb } else { Family::Cm });
        let mut cover = WeightedCover::new(host, mode, family);
        for (i, (c, w)) in self.items.iter().enumerate() {
            cover.push(c.clone(), w.clone()).map_err(|source| FormatError::Item { index: i, source })?;
        }
        Ok(cover)
    }
}

fn parse_weight(line: usize, tok: &str) -> Result<Rational, FormatError> {
    let bad = || syntax(line, format!("weight must be `num/den`, got {tok:?}"));
    let (num, den) = tok.split_once('/').unwrap_or((tok, "1"));
    let is_int = |s: &str| {
        let s = s.strip_prefix('-').unwrap_or(s);
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) || den.starts_with('-') {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(syntax(line, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn parse_item(line: usize, d: usize, text: &str) -> Result<(Cuph, Rational), FormatError> {
    let fields: Vec<&str> = text.split(' ').collect();
    let [w, k, parts] = fields[..] else {
        return Err(syntax(line, "item must be `num/den k p1;p2;...`"));
    };
    let weight = parse_weight(line, w)?;
    let k = parse_index(line, k)?;
    let parts: Vec<Vec<usize>> = parts
        .split(';')
        .map(|p| p.split(',').map(|t| parse_index(line, t)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    if parts.len() != k {
        return Err(syntax(line, format!("item declares k = {k} but lists {} parts", parts.len())));
    }
    if let Some(p) = parts.iter().find(|p| p.windows(2).any(|w| w[0] >= w[1])) {
        return Err(syntax(line, format!("part {p:?} is not strictly increasing")));
    }
    let cuph = Cuph::new(d, parts).map_err(|source| FormatError::Invalid { line, source })?;
    Ok((cuph, weight))
}

pub fn parse_cover(text: &str) -> Result<CoverFile, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing header `d n count`"))?;
    let [d, n, count] = parse_fields(hl, header)?[..] else {
        return Err(syntax(hl, "header must be `d n count`"));
    };
    if d < 2 {
        return Err(FormatError::Invalid { line: hl, source: hypercover::Error::Uniformity(d) });
    }
    let items = lines.map(|(ln, l)| parse_item(ln, d, l)).collect::<Result<Vec<_>, _>>()?;
    if items.len() != count {
        return Err(FormatError::ItemCount { expected: count, found: items.len() });
    }
    Ok(CoverFile { d, n, items })
}

pub fn render_cover(cover: &WeightedCover<'_, Rational>) -> String {
    render_items(cover.host().d(), cover.host().n(), cover.items())
}

pub fn render_items(d: usize, n: usize, items: &[(Cuph, Rational)]) -> String {
    let mut out = format!("{d} {n} {}\n", items.len());
    for (c, w) in items {
        let parts: Vec<String> = c
            .parts()
            .iter()
            .map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        writeln!(out, "{}/{} {} {}", w.numer(), w.denom(), c.k(), parts.join(";")).expect("writing to a String");
    }
    out
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), FormatError> {
    std::fs::write(path, contents).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}
