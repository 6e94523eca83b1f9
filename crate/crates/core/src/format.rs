//! Plain-text tensor and hypergraph files.
//!
//! ```text
//! tensor v1
//! order 3
//! dimension 3
//! values integer
//! 1 1 1 2
//! 1 1 2 1
//! ```
//!
//! ```text
//! hypergraph v1
//! vertices 3
//! uniformity 3
//! 1 1 2
//! 2 1 1
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Tensor entry lines must
//! use canonical (nondecreasing) keys, each at most once. Hypergraph edges
//! may be written in any order and are canonicalized; repeated edges
//! collapse with a warning.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::MultiHypergraph;
use crate::index::MultisetIndex;
use crate::tensor::{SymTensor, Value};

pub const TENSOR_MAGIC: &str = "tensor v1";
pub const HYPERGRAPH_MAGIC: &str = "hypergraph v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedHypergraph {
    pub hypergraph: MultiHypergraph,
    pub warnings: Vec<Warning>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Tensor(SymTensor),
    Hypergraph(LoadedHypergraph),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ValueKind {
    Integer,
    Rational,
}

struct Token<'a> {
    column: usize,
    text: &'a str,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

/// Splits into non-empty lines of whitespace-separated tokens with 1-based
/// character columns, dropping comments.
fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start: Option<(usize, usize)> = None;
        for (col, (byte, ch)) in content.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((col + 1, byte)),
                (true, Some((c, b))) => {
                    tokens.push(Token {
                        column: c,
                        text: &content[b..byte],
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((c, b)) = start {
            tokens.push(Token {
                column: c,
                text: &content[b..],
            });
        }
        (!tokens.is_empty()).then_some(Line {
            number: i + 1,
            tokens,
        })
    })
}

fn expect_magic(line: Option<Line<'_>>, magic: &str) -> Result<()> {
    let line = line.ok_or_else(|| Error::parse(1, 1, format!("empty file, expected `{magic}`")))?;
    let text: Vec<&str> = line.tokens.iter().map(|t| t.text).collect();
    if text.join(" ") != magic {
        return Err(Error::parse(
            line.number,
            line.tokens[0].column,
            format!("expected header `{magic}`"),
        ));
    }
    Ok(())
}

fn header_field<'a>(
    line: Option<Line<'a>>,
    key: &str,
    prev_line: usize,
) -> Result<(Line<'a>, &'a str)> {
    let line =
        line.ok_or_else(|| Error::parse(prev_line + 1, 1, format!("missing `{key}` header")))?;
    let first = &line.tokens[0];
    if first.text != key {
        return Err(Error::parse(
            line.number,
            first.column,
            format!("expected `{key}`, found `{}`", first.text),
        ));
    }
    match line.tokens.len() {
        1 => Err(Error::parse(
            line.number,
            first.column + key.chars().count(),
            format!("`{key}` needs a value"),
        )),
        2 => {
            let value = line.tokens[1].text;
            Ok((line, value))
        }
        _ => Err(Error::parse(
            line.number,
            line.tokens[2].column,
            "unexpected token",
        )),
    }
}

fn parse_count(line: &Line<'_>, key: &str, value: &str) -> Result<usize> {
    value.parse::<usize>().map_err(|_| {
        Error::parse(
            line.number,
            line.tokens[1].column,
            format!("`{key}` must be a nonnegative integer, found `{value}`"),
        )
    })
}

fn parse_indices(line: &Line<'_>, tokens: &[Token<'_>], n: usize) -> Result<Vec<usize>> {
    tokens
        .iter()
        .map(|t| match t.text.parse::<usize>() {
            Ok(v) if (1..=n).contains(&v) => Ok(v),
            Ok(v) => Err(Error::parse(
                line.number,
                t.column,
                format!("index {v} is outside 1..={n}"),
            )),
            Err(_) => Err(Error::parse(
                line.number,
                t.column,
                format!("expected a vertex index, found `{}`", t.text),
            )),
        })
        .collect()
}

fn parse_value(token: &Token<'_>, line: usize, kind: ValueKind) -> Result<Value> {
    let bad = |what: &str| {
        Error::parse(
            line,
            token.column,
            format!("{what}, found `{}`", token.text),
        )
    };
    match token.text.split_once('/') {
        None => token
            .text
            .parse::<u64>()
            .map(Value::from_integer)
            .map_err(|_| bad("expected a nonnegative integer value")),
        Some(_) if kind == ValueKind::Integer => Err(bad("rational value in an integer file")),
        Some((num, den)) => {
            let num = num
                .parse::<u64>()
                .map_err(|_| bad("malformed rational numerator"))?;
            let den = den
                .parse::<u64>()
                .map_err(|_| bad("malformed rational denominator"))?;
            if den == 0 {
                return Err(bad("zero denominator"));
            }
            Ok(Value::new(num, den))
        }
    }
}

pub fn parse_tensor(text: &str) -> Result<SymTensor> {
    let mut it = lines(text);
    expect_magic(it.next(), TENSOR_MAGIC)?;
    let (l, v) = header_field(it.next(), "order", 1)?;
    let m = parse_count(&l, "order", v)?;
    let (l, v) = header_field(it.next(), "dimension", l.number)?;
    let n = parse_count(&l, "dimension", v)?;
    let (l, v) = header_field(it.next(), "values", l.number)?;
    let kind = match v {
        "integer" => ValueKind::Integer,
        "rational" => ValueKind::Rational,
        other => {
            return Err(Error::parse(
                l.number,
                l.tokens[1].column,
                format!("`values` must be `integer` or `rational`, found `{other}`"),
            ))
        }
    };
    crate::tensor::check_shape(m, n).map_err(|e| Error::parse(l.number, 1, e.to_string()))?;

    let mut entries: BTreeMap<MultisetIndex, (usize, Value)> = BTreeMap::new();
    for line in it {
        if line.tokens.len() != m + 1 {
            let column = line
                .tokens
                .get(m + 1)
                .map_or(line.tokens.last().unwrap().column, |t| t.column);
            return Err(Error::parse(
                line.number,
                column,
                format!(
                    "expected {m} indices and a value, found {} tokens",
                    line.tokens.len()
                ),
            ));
        }
        let raw = parse_indices(&line, &line.tokens[..m], n)?;
        let value = parse_value(&line.tokens[m], line.number, kind)?;
        let column = line.tokens[0].column;
        if raw.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::parse(
                line.number,
                column,
                format!(
                    "key {} is not canonical (indices must be nondecreasing)",
                    fmt_tuple(&raw)
                ),
            ));
        }
        let key = MultisetIndex::canonicalize(&raw, n)?;
        if let Some((first, _)) = entries.get(&key) {
            return Err(Error::parse(
                line.number,
                column,
                format!("duplicate key {key}, first given on line {first}"),
            ));
        }
        entries.insert(key, (line.number, value));
    }
    Ok(SymTensor::from_map(
        m,
        n,
        entries.into_iter().map(|(k, (_, v))| (k, v)).collect(),
    ))
}

pub fn parse_hypergraph(text: &str) -> Result<LoadedHypergraph> {
    let mut it = lines(text);
    expect_magic(it.next(), HYPERGRAPH_MAGIC)?;
    let (l, v) = header_field(it.next(), "vertices", 1)?;
    let n = parse_count(&l, "vertices", v)?;
    let (l, v) = header_field(it.next(), "uniformity", l.number)?;
    let m = parse_count(&l, "uniformity", v)?;
    crate::tensor::check_shape(m, n).map_err(|e| Error::parse(l.number, 1, e.to_string()))?;

    let mut seen: BTreeMap<MultisetIndex, usize> = BTreeMap::new();
    let mut warnings = Vec::new();
    for line in it {
        if line.tokens.len() != m {
            let column = line
                .tokens
                .get(m)
                .map_or(line.tokens.last().unwrap().column, |t| t.column);
            return Err(Error::parse(
                line.number,
                column,
                format!("expected {m} vertex indices, found {}", line.tokens.len()),
            ));
        }
        let raw = parse_indices(&line, &line.tokens, n)?;
        let edge = MultisetIndex::canonicalize(&raw, n)?;
        if let Some(first) = seen.get(&edge) {
            warnings.push(Warning {
                line: line.number,
                message: format!("duplicate edge {edge} (first on line {first}) collapsed"),
            });
        } else {
            seen.insert(edge, line.number);
        }
    }
    let hypergraph = MultiHypergraph::new(n, m, seen.into_keys().map(|e| e.entries().to_vec()))?;
    Ok(LoadedHypergraph {
        hypergraph,
        warnings,
    })
}

/// Dispatches on the first non-comment line.
pub fn parse_document(text: &str) -> Result<Document> {
    let Some(first) = lines(text).next() else {
        return Err(Error::parse(1, 1, "empty file"));
    };
    match first.tokens[0].text {
        "tensor" => parse_tensor(text).map(Document::Tensor),
        "hypergraph" => parse_hypergraph(text).map(Document::Hypergraph),
        other => Err(Error::parse(
            first.number,
            first.tokens[0].column,
            format!("unknown file kind `{other}`, expected `tensor` or `hypergraph`"),
        )),
    }
}

pub fn write_tensor(a: &SymTensor) -> String {
    let kind = if a.is_integral() {
        "integer"
    } else {
        "rational"
    };
    let mut out = format!(
        "{TENSOR_MAGIC}\norder {}\ndimension {}\nvalues {kind}\n",
        a.order(),
        a.dimension()
    );
    for (key, value) in a.entries() {
        debug_assert!(!value.is_zero());
        for v in key.entries() {
            let _ = write!(out, "{v} ");
        }
        let _ = writeln!(out, "{value}");
    }
    out
}

pub fn write_hypergraph(p: &MultiHypergraph) -> String {
    let mut out = format!(
        "{HYPERGRAPH_MAGIC}\nvertices {}\nuniformity {}\n",
        p.vertex_count(),
        p.uniformity()
    );
    for edge in p.edges() {
        let _ = writeln!(out, "{}", fmt_list(edge.entries()));
    }
    out
}

fn fmt_list(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_tuple(xs: &[usize]) -> String {
    format!(
        "({})",
        xs.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}
