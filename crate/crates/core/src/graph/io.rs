//! Text graph format.
//!
//! ```text
//! c optional comment lines
//! p sp <n> <m>
//! a <u> <v> <w>
//! ```
//!
//! Vertex indices are 1-based on disk and 0-based in memory. A file is in
//! real mode when any weight token contains a decimal point, an exponent, or
//! spells a non-finite value; otherwise it is in integer mode.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{Edge, Graph, GraphError, VertexId, Weight, WeightMode};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: malformed problem line, expected `p sp <n> <m>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: second problem line")]
    DuplicateHeader { line: usize },
    #[error("missing `p sp <n> <m>` problem line")]
    MissingHeader,
    #[error("line {line}: edge line before the problem line")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: malformed arc line, expected `a <u> <v> <w>`")]
    MalformedEdge { line: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: u64, n: usize },
    #[error("line {line}: cannot read weight `{token}` as {mode:?}")]
    BadWeight { line: usize, token: String, mode: WeightMode },
    #[error("line {line}: unrecognised line")]
    UnknownLine { line: usize },
    #[error("declared m={declared}, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A graph read from disk, in whichever mode the file uses.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyGraph {
    Integer(Graph<i64>),
    Real(Graph<f64>),
}

impl AnyGraph {
    pub fn n(&self) -> usize {
        match self {
            AnyGraph::Integer(g) => g.n(),
            AnyGraph::Real(g) => g.n(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            AnyGraph::Integer(g) => g.m(),
            AnyGraph::Real(g) => g.m(),
        }
    }

    pub fn mode(&self) -> WeightMode {
        match self {
            AnyGraph::Integer(_) => WeightMode::Integer,
            AnyGraph::Real(_) => WeightMode::Real,
        }
    }
}

struct RawArc {
    line: usize,
    src: usize,
    dst: usize,
    weight: String,
}

struct RawGraph {
    n: usize,
    arcs: Vec<RawArc>,
}

fn read_raw<R: BufRead>(reader: R) -> Result<RawGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut arcs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader { line: lineno });
                }
                let rest: Vec<&str> = tokens.collect();
                let parsed = match rest.as_slice() {
                    ["sp", n, m] => n.parse().ok().zip(m.parse().ok()),
                    _ => None,
                };
                let (n, m) = parsed.ok_or(ParseError::MalformedHeader { line: lineno })?;
                arcs.reserve(m);
                header = Some((n, m));
            }
            Some("a") => {
                let (n, _) = header.ok_or(ParseError::EdgeBeforeHeader { line: lineno })?;
                let rest: Vec<&str> = tokens.collect();
                let [u, v, w] = rest.as_slice() else {
                    return Err(ParseError::MalformedEdge { line: lineno });
                };
                let endpoint = |tok: &str| -> Result<usize, ParseError> {
                    let x: u64 = tok.parse().map_err(|_| ParseError::MalformedEdge { line: lineno })?;
                    if x == 0 || x > n as u64 {
                        return Err(ParseError::VertexOutOfRange { line: lineno, vertex: x, n });
                    }
                    Ok((x - 1) as usize)
                };
                let src = endpoint(u)?;
                let dst = endpoint(v)?;
                arcs.push(RawArc {
                    line: lineno,
                    src,
                    dst,
                    weight: (*w).to_string(),
                });
            }
            Some(_) => return Err(ParseError::UnknownLine { line: lineno }),
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if arcs.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found: arcs.len(),
        });
    }
    Ok(RawGraph { n, arcs })
}

fn looks_real(token: &str) -> bool {
    token.contains(['.', 'e', 'E']) || {
        let t = token.trim_start_matches(['+', '-']).to_ascii_lowercase();
        t == "inf" || t == "infinity" || t == "nan"
    }
}

fn convert<W: Weight>(raw: RawGraph) -> Result<Graph<W>, ParseError> {
    let mut edges = Vec::with_capacity(raw.arcs.len());
    for arc in raw.arcs {
        let weight = W::parse_token(&arc.weight).ok_or_else(|| ParseError::BadWeight {
            line: arc.line,
            token: arc.weight.clone(),
            mode: W::MODE,
        })?;
        if !weight.is_finite() {
            return Err(ParseError::BadWeight {
                line: arc.line,
                token: arc.weight,
                mode: W::MODE,
            });
        }
        edges.push(Edge {
            src: VertexId::new(arc.src),
            dst: VertexId::new(arc.dst),
            weight,
        });
    }
    Ok(Graph::build(raw.n, edges)?)
}

/// Reads a graph in a fixed weight mode.
pub fn read_graph<W: Weight, R: BufRead>(reader: R) -> Result<Graph<W>, ParseError> {
    convert(read_raw(reader)?)
}

/// Reads a graph, choosing the weight mode from the weight tokens.
pub fn read_any_graph<R: BufRead>(reader: R) -> Result<AnyGraph, ParseError> {
    let raw = read_raw(reader)?;
    if raw.arcs.iter().any(|a| looks_real(&a.weight)) {
        Ok(AnyGraph::Real(convert(raw)?))
    } else {
        Ok(AnyGraph::Integer(convert(raw)?))
    }
}

/// Writes `g` in the canonical form: header, then arcs grouped by source.
pub fn write_graph<W: Weight, Wr: Write>(g: &Graph<W>, mut out: Wr) -> io::Result<()> {
    writeln!(out, "p sp {} {}", g.n(), g.m())?;
    for e in g.edges() {
        writeln!(out, "a {} {} {}", e.src.index() + 1, e.dst.index() + 1, e.weight.format_token())?;
    }
    out.flush()
}
