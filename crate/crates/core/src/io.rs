//! Text formats for weighted forests.
//!
//! Edge list (1-based, `#` starts a comment):
//!
//! ```text
//! n 3
//! v 2 0.5      # optional vertex weight, default 0
//! e 1 2 1.0
//! e 2 3 -2.0
//! ```
//!
//! MatrixMarket: `%%MatrixMarket matrix coordinate real symmetric` with
//! diagonal entries as vertex weights and off-diagonal entries as edges.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::error::ForestError;
use crate::forest::WeightedForest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Auto,
    EdgeList,
    MatrixMarket,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: edge ({u}, {v}) has weight zero")]
    ZeroEdgeWeight { line: usize, u: usize, v: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("input contains a cycle through vertices {cycle:?}")]
    CycleDetected { cycle: Vec<usize> },
    #[error("invalid forest: {0}")]
    Forest(ForestError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl From<ForestError> for InputError {
    fn from(e: ForestError) -> Self {
        match e {
            ForestError::HasCycle { cycle } => InputError::CycleDetected {
                cycle: cycle.into_iter().map(|v| v + 1).collect(),
            },
            other => InputError::Forest(other),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> InputError {
    InputError::Parse {
        line,
        message: message.into(),
    }
}

pub fn read_forest(path: &Path, format: Format) -> Result<WeightedForest, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_forest(&text, format)
}

pub fn parse_forest(text: &str, format: Format) -> Result<WeightedForest, InputError> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::MatrixMarket => parse_matrix_market(text),
        Format::Auto => {
            if text.trim_start().starts_with("%%MatrixMarket") {
                parse_matrix_market(text)
            } else {
                parse_edge_list(text)
            }
        }
    }
}

fn number<T: std::str::FromStr>(token: Option<&str>, line: usize, what: &str) -> Result<T, InputError> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{token}'")))
}

fn index(token: Option<&str>, line: usize, n: usize) -> Result<usize, InputError> {
    let i: usize = number(token, line, "vertex index")?;
    if i == 0 || i > n {
        return Err(parse_err(line, format!("vertex index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

fn finite(x: f64, line: usize) -> Result<f64, InputError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(parse_err(line, "weight is not finite"))
    }
}

struct Builder {
    weights: Vec<f64>,
    weight_seen: Vec<bool>,
    edges: Vec<(usize, usize, f64)>,
    seen: std::collections::HashSet<(usize, usize)>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Self {
            weights: vec![0.0; n],
            weight_seen: vec![false; n],
            edges: Vec::new(),
            seen: Default::default(),
        }
    }

    fn vertex(&mut self, line: usize, v: usize, w: f64) -> Result<(), InputError> {
        if std::mem::replace(&mut self.weight_seen[v], true) {
            return Err(parse_err(line, format!("vertex {} given twice", v + 1)));
        }
        self.weights[v] = w;
        Ok(())
    }

    fn edge(&mut self, line: usize, u: usize, v: usize, w: f64) -> Result<(), InputError> {
        if u == v {
            return Err(parse_err(line, format!("self-loop at vertex {}", u + 1)));
        }
        if w == 0.0 {
            return Err(InputError::ZeroEdgeWeight { line, u: u + 1, v: v + 1 });
        }
        if !self.seen.insert((u.min(v), u.max(v))) {
            return Err(InputError::DuplicateEdge { line, u: u + 1, v: v + 1 });
        }
        self.edges.push((u, v, w));
        Ok(())
    }

    fn finish(self) -> Result<WeightedForest, InputError> {
        Ok(WeightedForest::new(self.weights, self.edges)?)
    }
}

fn parse_edge_list(text: &str) -> Result<WeightedForest, InputError> {
    let mut builder: Option<Builder> = None;
    let mut n = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let tag = tokens.next().expect("nonempty line");
        match (tag, builder.as_mut()) {
            ("n", None) => {
                n = number(tokens.next(), line, "vertex count")?;
                if n == 0 {
                    return Err(parse_err(line, "vertex count must be positive"));
                }
                builder = Some(Builder::new(n));
            }
            ("n", Some(_)) => return Err(parse_err(line, "vertex count given twice")),
            (_, None) => return Err(parse_err(line, "expected 'n <count>' first")),
            ("v", Some(b)) => {
                let v = index(tokens.next(), line, n)?;
                let w = finite(number(tokens.next(), line, "vertex weight")?, line)?;
                b.vertex(line, v, w)?;
            }
            ("e", Some(b)) => {
                let u = index(tokens.next(), line, n)?;
                let v = index(tokens.next(), line, n)?;
                let w = finite(number(tokens.next(), line, "edge weight")?, line)?;
                b.edge(line, u, v, w)?;
            }
            (other, Some(_)) => return Err(parse_err(line, format!("unknown record '{other}'"))),
        }
        if tokens.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    builder.ok_or_else(|| parse_err(0, "missing 'n <count>'"))?.finish()
}

fn parse_matrix_market(text: &str) -> Result<WeightedForest, InputError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let fields: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    let expected = ["%%matrixmarket", "matrix", "coordinate"];
    if fields.len() != 5 || fields[..3] != expected {
        return Err(parse_err(1, "expected '%%MatrixMarket matrix coordinate <field> symmetric'"));
    }
    if fields[3] != "real" && fields[3] != "integer" {
        return Err(parse_err(1, format!("unsupported field '{}'", fields[3])));
    }
    if fields[4] != "symmetric" {
        return Err(parse_err(1, format!("unsupported symmetry '{}'", fields[4])));
    }
    let mut builder: Option<Builder> = None;
    let mut n = 0;
    let mut expected_entries = 0;
    let mut entries = 0;
    for (i, raw) in lines {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('%') {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match builder.as_mut() {
            None => {
                let rows: usize = number(tokens.next(), line, "row count")?;
                let cols: usize = number(tokens.next(), line, "column count")?;
                expected_entries = number(tokens.next(), line, "entry count")?;
                if rows != cols || rows == 0 {
                    return Err(parse_err(line, format!("matrix must be square and nonempty, got {rows}x{cols}")));
                }
                n = rows;
                builder = Some(Builder::new(n));
            }
            Some(b) => {
                let r = index(tokens.next(), line, n)?;
                let c = index(tokens.next(), line, n)?;
                let w = finite(number(tokens.next(), line, "value")?, line)?;
                if r == c {
                    b.vertex(line, r, w)?;
                } else {
                    b.edge(line, r, c, w)?;
                }
                entries += 1;
            }
        }
        if tokens.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let builder = builder.ok_or_else(|| parse_err(0, "missing size line"))?;
    if entries != expected_entries {
        return Err(parse_err(
            0,
            format!("size line announces {expected_entries} entries, found {entries}"),
        ));
    }
    builder.finish()
}

/// Edge-list text that parses back to an identical forest.
pub fn write_edge_list(forest: &WeightedForest) -> String {
    let mut out = format!("n {}\n", forest.n());
    for v in 0..forest.n() {
        let w = forest.vertex_weight(v);
        if w != 0.0 {
            writeln!(out, "v {} {:?}", v + 1, w).expect("string write");
        }
    }
    for e in forest.edges() {
        writeln!(out, "e {} {} {:?}", e.u + 1, e.v + 1, e.weight).expect("string write");
    }
    out
}

/// MatrixMarket coordinate text (lower triangle, nonzero diagonal only).
pub fn write_matrix_market(forest: &WeightedForest) -> String {
    let diagonal: Vec<usize> = (0..forest.n()).filter(|&v| forest.vertex_weight(v) != 0.0).collect();
    let mut out = String::from("%%MatrixMarket matrix coordinate real symmetric\n");
    writeln!(out, "{} {} {}", forest.n(), forest.n(), diagonal.len() + forest.edges().len())
        .expect("string write");
    for v in diagonal {
        writeln!(out, "{} {} {:?}", v + 1, v + 1, forest.vertex_weight(v)).expect("string write");
    }
    for e in forest.edges() {
        writeln!(out, "{} {} {:?}", e.v + 1, e.u + 1, e.weight).expect("string write");
    }
    out
}
