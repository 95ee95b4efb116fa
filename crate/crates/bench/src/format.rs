//! Line-oriented text format for instances and predictions.
//!
//! ```text
//! c comment
//! p bipartite nL nR m     e i j cost   (i in 1..=nL, j in 1..=nR)
//! p bmatch nL nR m        e i j cost   d v b   (v in 1..=nL+nR)
//! p sp n m                a u v len
//! p max n m s t           a u v cap [cost]
//! ```
//!
//! Ids are 1-based in files and 0-based in memory. Predictions are
//! separate files of `h i value` lines (dual coordinate `i`) or
//! `f u v value` lines (flow on arc `u -> v`).

use std::fmt::Write as _;

use thiserror::Error;
use warmstart_core::{BipartiteInstance, DirectedLengthGraph, DualVector, FlowNetwork, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is with the input as a whole.
    pub line: usize,
    pub reason: String,
}

fn err<T>(line: usize, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        reason: reason.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedInstance {
    Bipartite(BipartiteInstance),
    BMatch(BipartiteInstance),
    Sp(DirectedLengthGraph),
    MaxFlow(FlowNetwork),
}

impl ParsedInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            ParsedInstance::Bipartite(_) => "bipartite",
            ParsedInstance::BMatch(_) => "bmatch",
            ParsedInstance::Sp(_) => "sp",
            ParsedInstance::MaxFlow(_) => "max",
        }
    }
}

/// Non-comment lines as `(line number, tokens)`.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.first() {
            None | Some(&"c") => None,
            Some(_) => Some((i + 1, toks)),
        }
    })
}

fn int<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .or_else(|_| err(line, format!("{what}: expected an integer, got {tok:?}")))
}

/// 1-based id in `1..=n`, returned 0-based.
fn id(line: usize, tok: &str, n: usize, what: &str) -> Result<usize, ParseError> {
    let v: usize = int(line, tok, what)?;
    if v == 0 || v > n {
        return err(line, format!("{what} {v} is outside 1..={n}"));
    }
    Ok(v - 1)
}

fn arity(line: usize, toks: &[&str], allowed: &[usize]) -> Result<(), ParseError> {
    if !allowed.contains(&toks.len()) {
        return err(
            line,
            format!(
                "'{}' line has {} fields, expected {:?}",
                toks[0],
                toks.len(),
                allowed
            ),
        );
    }
    Ok(())
}

/// Largest vertex count a header may announce.
pub const MAX_VERTICES: usize = 1 << 20;

fn count_field(line: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    let v: usize = int(line, tok, what)?;
    if v > MAX_VERTICES {
        return err(
            line,
            format!("{what} = {v} exceeds the limit of {MAX_VERTICES}"),
        );
    }
    Ok(v)
}

enum Header {
    Bipartite { bmatch: bool, nl: usize, nr: usize },
    Sp { n: usize },
    Max { n: usize, s: usize, t: usize },
}

pub fn parse_instance(text: &str) -> Result<ParsedInstance, ParseError> {
    let mut recs = records(text);
    let Some((hline, h)) = recs.next() else {
        return err(0, "missing 'p' header");
    };
    if h[0] != "p" {
        return err(hline, format!("expected 'p' header, found {:?}", h[0]));
    }
    let (header, m) = match h.get(1).copied() {
        Some(k @ ("bipartite" | "bmatch")) => {
            arity(hline, &h, &[5])?;
            let nl = count_field(hline, h[2], "nL")?;
            let nr = count_field(hline, h[3], "nR")?;
            let bmatch = k == "bmatch";
            (
                Header::Bipartite { bmatch, nl, nr },
                int::<usize>(hline, h[4], "m")?,
            )
        }
        Some("sp") => {
            arity(hline, &h, &[4])?;
            (
                Header::Sp {
                    n: count_field(hline, h[2], "n")?,
                },
                int(hline, h[3], "m")?,
            )
        }
        Some("max") => {
            arity(hline, &h, &[6])?;
            let n = count_field(hline, h[2], "n")?;
            let s = id(hline, h[4], n, "s")?;
            let t = id(hline, h[5], n, "t")?;
            (Header::Max { n, s, t }, int(hline, h[3], "m")?)
        }
        other => return err(hline, format!("unknown problem type {other:?}")),
    };

    let mut bip_edges = Vec::new();
    let mut dir_arcs = Vec::new();
    let mut flow_arcs = Vec::new();
    let mut demands: Option<Vec<Option<i64>>> = None;
    let mut edge_lines = Vec::new();
    let mut demand_lines = Vec::new();
    let mut count = 0usize;
    let mut last = hline;
    for (line, toks) in recs {
        last = line;
        match (toks[0], &header) {
            ("e", Header::Bipartite { nl, nr, .. }) => {
                arity(line, &toks, &[4])?;
                let i = id(line, toks[1], *nl, "left vertex")?;
                let j = id(line, toks[2], *nr, "right vertex")?;
                bip_edges.push((i, j, int(line, toks[3], "cost")?));
                edge_lines.push(line);
                count += 1;
            }
            ("d", Header::Bipartite { nl, nr, .. }) => {
                arity(line, &toks, &[3])?;
                let v = id(line, toks[1], nl + nr, "vertex")?;
                let b: i64 = int(line, toks[2], "demand")?;
                let slots = demands.get_or_insert_with(|| vec![None; nl + nr]);
                if slots[v].replace(b).is_some() {
                    return err(line, format!("second demand for vertex {}", v + 1));
                }
                demand_lines.push((v, line));
            }
            ("a", Header::Sp { n }) => {
                arity(line, &toks, &[4])?;
                let u = id(line, toks[1], *n, "tail")?;
                let v = id(line, toks[2], *n, "head")?;
                dir_arcs.push((u, v, int(line, toks[3], "length")?));
                edge_lines.push(line);
                count += 1;
            }
            ("a", Header::Max { n, .. }) => {
                arity(line, &toks, &[4, 5])?;
                let u = id(line, toks[1], *n, "tail")?;
                let v = id(line, toks[2], *n, "head")?;
                let cap = int(line, toks[3], "capacity")?;
                let cost = match toks.get(4) {
                    Some(t) => int(line, t, "cost")?,
                    None => 0,
                };
                flow_arcs.push((u, v, cap, cost));
                edge_lines.push(line);
                count += 1;
            }
            ("p", _) => return err(line, "second 'p' header"),
            (other, _) => return err(line, format!("unexpected line type {other:?} here")),
        }
        if count > m {
            return err(
                line,
                format!("more than the {m} edges announced in the header"),
            );
        }
    }
    if count < m {
        return err(last, format!("header announces {m} edges, found {count}"));
    }

    // Point construction errors at the line that caused them.
    let graph = |e: GraphError| {
        let line = match e {
            GraphError::NegativeCost { edge, .. }
            | GraphError::WeightOutOfRange { edge, .. }
            | GraphError::ParallelEdge { edge, .. } => edge_lines[edge],
            GraphError::SelfLoop { arc, .. } | GraphError::BadCapacity { arc, .. } => {
                edge_lines[arc]
            }
            GraphError::NonPositiveDemand { vertex, .. } => demand_lines
                .iter()
                .find(|(v, _)| *v == vertex)
                .map_or(hline, |(_, l)| *l),
            _ => hline,
        };
        ParseError {
            line,
            reason: e.to_string(),
        }
    };
    Ok(match header {
        Header::Bipartite { bmatch, nl, nr } => {
            let mut inst = BipartiteInstance::new(nl, nr, bip_edges).map_err(graph)?;
            if demands.is_some() || bmatch {
                let b = demands
                    .unwrap_or_else(|| vec![None; nl + nr])
                    .into_iter()
                    .map(|d| d.unwrap_or(1))
                    .collect();
                inst = inst.with_demands(b).map_err(graph)?;
            }
            if bmatch {
                ParsedInstance::BMatch(inst)
            } else {
                ParsedInstance::Bipartite(inst)
            }
        }
        Header::Sp { n } => {
            ParsedInstance::Sp(DirectedLengthGraph::new(n, dir_arcs).map_err(graph)?)
        }
        Header::Max { n, s, t } => {
            ParsedInstance::MaxFlow(FlowNetwork::new(n, flow_arcs, s, t).map_err(graph)?)
        }
    })
}

pub fn write_instance(inst: &ParsedInstance) -> String {
    let mut out = String::new();
    match inst {
        ParsedInstance::Bipartite(g) | ParsedInstance::BMatch(g) => {
            let _ = writeln!(
                out,
                "p {} {} {} {}",
                inst.kind(),
                g.n_left(),
                g.n_right(),
                g.edges().len()
            );
            for e in g.edges() {
                let _ = writeln!(out, "e {} {} {}", e.left + 1, e.right + 1, e.cost);
            }
            if let Some(b) = g.demands() {
                for (v, d) in b.iter().enumerate() {
                    let _ = writeln!(out, "d {} {}", v + 1, d);
                }
            }
        }
        ParsedInstance::Sp(g) => {
            let _ = writeln!(out, "p sp {} {}", g.n(), g.m());
            for a in g.arcs() {
                let _ = writeln!(out, "a {} {} {}", a.from + 1, a.to + 1, a.len);
            }
        }
        ParsedInstance::MaxFlow(g) => {
            let _ = writeln!(
                out,
                "p max {} {} {} {}",
                g.n(),
                g.m(),
                g.source() + 1,
                g.sink() + 1
            );
            for a in g.arcs() {
                if a.cost == 0 {
                    let _ = writeln!(out, "a {} {} {}", a.from + 1, a.to + 1, a.cap);
                } else {
                    let _ = writeln!(out, "a {} {} {} {}", a.from + 1, a.to + 1, a.cap, a.cost);
                }
            }
        }
    }
    out
}

/// Dual prediction of dimension `dim`. Coordinates not mentioned are 0.
pub fn parse_prediction(text: &str, dim: usize) -> Result<DualVector, ParseError> {
    let mut y = vec![None; dim];
    for (line, toks) in records(text) {
        if toks[0] != "h" {
            return err(line, format!("expected an 'h' line, found {:?}", toks[0]));
        }
        arity(line, &toks, &[3])?;
        let i = id(line, toks[1], dim, "coordinate")?;
        if y[i].replace(int(line, toks[2], "value")?).is_some() {
            return err(line, format!("coordinate {} given twice", i + 1));
        }
    }
    Ok(DualVector(y.into_iter().map(|v| v.unwrap_or(0)).collect()))
}

pub fn write_prediction(y: &[i64]) -> String {
    y.iter()
        .enumerate()
        .map(|(i, v)| format!("h {} {}\n", i + 1, v))
        .collect()
}

/// Per-arc flow prediction for `net`. Each `f u v value` line claims the
/// first unclaimed arc from `u` to `v`, so parallel arcs are filled in
/// order. Arcs not mentioned get 0.
pub fn parse_preflow(text: &str, net: &FlowNetwork) -> Result<Vec<i64>, ParseError> {
    let mut f = vec![None; net.m()];
    for (line, toks) in records(text) {
        if toks[0] != "f" {
            return err(line, format!("expected an 'f' line, found {:?}", toks[0]));
        }
        arity(line, &toks, &[4])?;
        let u = id(line, toks[1], net.n(), "tail")?;
        let v = id(line, toks[2], net.n(), "head")?;
        let value: i64 = int(line, toks[3], "value")?;
        let slot = (0..net.m())
            .find(|&a| net.arcs()[a].from == u && net.arcs()[a].to == v && f[a].is_none());
        match slot {
            Some(a) => f[a] = Some(value),
            None => return err(line, format!("no unclaimed arc {} -> {}", u + 1, v + 1)),
        }
    }
    Ok(f.into_iter().map(|v| v.unwrap_or(0)).collect())
}

pub fn write_preflow(net: &FlowNetwork, flow: &[i64]) -> String {
    net.arcs()
        .iter()
        .zip(flow)
        .map(|(a, v)| format!("f {} {} {}\n", a.from + 1, a.to + 1, v))
        .collect()
}
