//! Line-oriented text formats.
//!
//! Every file starts with a `p <kind> ...` header; lines starting with `#`
//! and blank lines are ignored (except `# map` lines in sidecar files).
//!
//! ```text
//! p graph <n> <m>          p inst                    p ncl <n> <m>
//! e <u> <v>                c <colors>                e <u> <v> r|b
//!                          rule ts|tj|tar <k>        d0 <head per edge>
//!                          p graph ... | g <path>    d1 <head per edge>
//!                          s <v...>
//!                          t <v...>
//! ```
//!
//! Dominating set instances use `p ds`, a graph block, `k <bound>`,
//! `rule tar|tj`, `s` and `t`. Certificates hold one move per line
//! (`sl u v`, `jp u v`, `add v`, `rm v`) or, for constraint logic,
//! `flip <edge> <head>`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::model::{DsInstance, DsRule, EdgeColor, Flip, Move, MoveSequence, NclEdge, NclInstance, ReconfigInstance, Rule};
use crate::set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based line number; 0 for errors about the file as a whole.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-comment lines with their 1-based numbers, split into words.
fn tokens(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.trim();
            (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
        })
        .collect()
}

fn num(line: usize, word: &str) -> Result<usize, ParseError> {
    word.parse().or_else(|_| err(line, format!("expected a non-negative integer, got `{word}`")))
}

fn nums(line: usize, words: &[&str]) -> Result<Vec<usize>, ParseError> {
    words.iter().map(|w| num(line, w)).collect()
}

fn arity(line: usize, words: &[&str], n: usize) -> Result<(), ParseError> {
    if words.len() != n {
        return err(line, format!("`{}` takes {} argument(s)", words[0], n - 1));
    }
    Ok(())
}

/// Kind named by the first header line: `graph`, `inst`, `ncl` or `ds`.
pub fn detect_kind(text: &str) -> Option<&str> {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| {
            let mut w = l.split_whitespace();
            (w.next() == Some("p")).then(|| w.next()).flatten()
        })
}

/// Parses a graph block from `lines`, which must start at its header.
fn graph_block(lines: &[(usize, Vec<&str>)]) -> Result<(Graph, usize), ParseError> {
    let (line, head) = &lines[0];
    if head.len() != 4 || head[1] != "graph" {
        return err(*line, "expected `p graph <n> <m>`");
    }
    let n = num(*line, head[2])?;
    let m = num(*line, head[3])?;
    let mut edges = Vec::with_capacity(m);
    for (line, words) in lines[1..].iter().take(m) {
        if words[0] != "e" {
            return err(*line, format!("expected {m} edge lines, got `{}`", words[0]));
        }
        arity(*line, words, 3)?;
        edges.push((num(*line, words[1])?, num(*line, words[2])?));
    }
    if edges.len() != m {
        return err(*line, format!("header announces {m} edges, found {}", edges.len()));
    }
    let last = lines.get(m).map_or(*line, |(l, _)| *l);
    let g = Graph::new(n, edges).or_else(|e| err(last, e.to_string()))?;
    Ok((g, m + 1))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let lines = tokens(text);
    if lines.is_empty() {
        return err(0, "empty graph file");
    }
    let (g, used) = graph_block(&lines)?;
    if let Some((line, _)) = lines.get(used) {
        return err(*line, "unexpected content after the graph");
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p graph {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// Vertex set from a line of vertex numbers.
fn set_line(line: usize, words: &[&str], n: usize) -> Result<VertexSet, ParseError> {
    let vs = nums(line, &words[1..])?;
    if let Some(&v) = vs.iter().find(|&&v| v >= n) {
        return err(line, format!("vertex {v} out of range for {n} vertices"));
    }
    Ok(VertexSet::from_slice(n, &vs))
}

fn write_set(out: &mut String, key: &str, s: &VertexSet) {
    out.push_str(key);
    for v in s.iter() {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
}

/// Fields shared by instance-like files: a graph and the `s`/`t` sets,
/// plus the remaining keyed lines for the caller.
struct Sections<'a> {
    graph: Graph,
    source: VertexSet,
    target: VertexSet,
    keyed: Vec<(usize, Vec<&'a str>)>,
}

fn sections<'a>(
    text: &'a str,
    kind: &str,
    load: &mut dyn FnMut(&str) -> Result<String, String>,
) -> Result<Sections<'a>, ParseError> {
    let lines = tokens(text);
    let Some((line, head)) = lines.first() else {
        return err(0, "empty file");
    };
    if head.len() != 2 || head[0] != "p" || head[1] != kind {
        return err(*line, format!("expected `p {kind}`"));
    }
    let mut graph = None;
    let (mut s, mut t) = (None, None);
    let mut keyed = Vec::new();
    let mut i = 1;
    while i < lines.len() {
        let (line, words) = &lines[i];
        match words[0] {
            "p" => {
                if graph.is_some() {
                    return err(*line, "duplicate graph");
                }
                let (g, used) = graph_block(&lines[i..])?;
                graph = Some(g);
                i += used;
                continue;
            }
            "g" => {
                if graph.is_some() {
                    return err(*line, "duplicate graph");
                }
                arity(*line, words, 2)?;
                let body = load(words[1]).or_else(|e| err(*line, format!("cannot read `{}`: {e}", words[1])))?;
                graph = Some(parse_graph(&body).or_else(|e| err(*line, format!("in `{}`: {e}", words[1])))?);
            }
            "s" | "t" => {
                let slot = if words[0] == "s" { &mut s } else { &mut t };
                if slot.is_some() {
                    return err(*line, format!("duplicate `{}` line", words[0]));
                }
                *slot = Some((*line, words.clone()));
            }
            _ => keyed.push((*line, words.clone())),
        }
        i += 1;
    }
    let Some(graph) = graph else {
        return err(0, "missing graph");
    };
    let n = graph.n();
    let (Some((sl, sw)), Some((tl, tw))) = (s, t) else {
        return err(0, "missing `s` or `t` line");
    };
    Ok(Sections {
        source: set_line(sl, &sw, n)?,
        target: set_line(tl, &tw, n)?,
        graph,
        keyed,
    })
}

fn no_files(path: &str) -> Result<String, String> {
    Err(format!("graph references are not supported here ({path})"))
}

pub fn parse_instance(text: &str) -> Result<ReconfigInstance, ParseError> {
    parse_instance_with(text, &mut no_files)
}

/// Like [`parse_instance`], resolving `g <path>` lines through `load`.
pub fn parse_instance_with(
    text: &str,
    load: &mut dyn FnMut(&str) -> Result<String, String>,
) -> Result<ReconfigInstance, ParseError> {
    let sec = sections(text, "inst", load)?;
    let (mut colors, mut rule) = (None, None);
    for (line, words) in &sec.keyed {
        match words[0] {
            "c" => {
                arity(*line, words, 2)?;
                colors = Some(num(*line, words[1])?);
            }
            "rule" => {
                rule = Some(match (words.get(1).copied(), words.len()) {
                    (Some("ts"), 2) => Rule::TokenSliding,
                    (Some("tj"), 2) => Rule::TokenJumping,
                    (Some("tar"), 3) => Rule::TokenAdditionRemoval {
                        threshold: num(*line, words[2])?,
                    },
                    _ => return err(*line, "expected `rule ts`, `rule tj` or `rule tar <k>`"),
                })
            }
            other => return err(*line, format!("unknown line `{other}`")),
        }
    }
    let colors = colors.ok_or_else(|| ParseError {
        line: 0,
        message: "missing `c` line".into(),
    })?;
    let rule = rule.ok_or_else(|| ParseError {
        line: 0,
        message: "missing `rule` line".into(),
    })?;
    ReconfigInstance::from_sets(sec.graph, colors, rule, sec.source, sec.target).or_else(|e| err(0, e.to_string()))
}

pub fn write_instance(inst: &ReconfigInstance) -> String {
    let mut out = format!("p inst\nc {}\nrule {}\n", inst.colors, inst.rule);
    out.push_str(&write_graph(&inst.graph));
    write_set(&mut out, "s", &inst.source);
    write_set(&mut out, "t", &inst.target);
    out
}

pub fn parse_ds(text: &str) -> Result<DsInstance, ParseError> {
    parse_ds_with(text, &mut no_files)
}

pub fn parse_ds_with(
    text: &str,
    load: &mut dyn FnMut(&str) -> Result<String, String>,
) -> Result<DsInstance, ParseError> {
    let sec = sections(text, "ds", load)?;
    let (mut bound, mut rule) = (None, None);
    for (line, words) in &sec.keyed {
        match words[0] {
            "k" => {
                arity(*line, words, 2)?;
                bound = Some(num(*line, words[1])?);
            }
            "rule" => {
                arity(*line, words, 2)?;
                rule = Some(match words[1] {
                    "tar" => DsRule::AdditionRemoval,
                    "tj" => DsRule::Jumping,
                    _ => return err(*line, "expected `rule tar` or `rule tj`"),
                });
            }
            other => return err(*line, format!("unknown line `{other}`")),
        }
    }
    let (Some(bound), Some(rule)) = (bound, rule) else {
        return err(0, "missing `k` or `rule` line");
    };
    let inst = DsInstance {
        graph: sec.graph,
        bound,
        rule,
        source: sec.source,
        target: sec.target,
    };
    inst.check().or_else(|e| err(0, e.to_string()))?;
    Ok(inst)
}

pub fn write_ds(inst: &DsInstance) -> String {
    let mut out = format!("p ds\nk {}\nrule {}\n", inst.bound, inst.rule);
    out.push_str(&write_graph(&inst.graph));
    write_set(&mut out, "s", &inst.source);
    write_set(&mut out, "t", &inst.target);
    out
}

pub fn parse_ncl(text: &str) -> Result<NclInstance, ParseError> {
    let lines = tokens(text);
    let Some((line, head)) = lines.first() else {
        return err(0, "empty file");
    };
    if head.len() != 4 || head[1] != "ncl" {
        return err(*line, "expected `p ncl <n> <m>`");
    }
    let n = num(*line, head[2])?;
    let m = num(*line, head[3])?;
    let mut edges = Vec::with_capacity(m);
    let (mut d0, mut d1) = (None, None);
    for (line, words) in &lines[1..] {
        match words[0] {
            "e" => {
                arity(*line, words, 4)?;
                let color = match words[3] {
                    "r" => EdgeColor::Red,
                    "b" => EdgeColor::Blue,
                    other => return err(*line, format!("edge color must be `r` or `b`, got `{other}`")),
                };
                edges.push(NclEdge {
                    u: num(*line, words[1])?,
                    v: num(*line, words[2])?,
                    color,
                });
            }
            "d0" | "d1" => {
                let slot = if words[0] == "d0" { &mut d0 } else { &mut d1 };
                if slot.is_some() {
                    return err(*line, format!("duplicate `{}` line", words[0]));
                }
                *slot = Some(nums(*line, &words[1..])?);
            }
            other => return err(*line, format!("unknown line `{other}`")),
        }
    }
    if edges.len() != m {
        return err(*line, format!("header announces {m} edges, found {}", edges.len()));
    }
    let (Some(d0), Some(d1)) = (d0, d1) else {
        return err(0, "missing `d0` or `d1` line");
    };
    NclInstance::new(n, edges, d0, d1).or_else(|e| err(0, e.to_string()))
}

pub fn write_ncl(ncl: &NclInstance) -> String {
    let mut out = format!("p ncl {} {}\n", ncl.n(), ncl.m());
    for e in ncl.edges() {
        let c = match e.color {
            EdgeColor::Red => 'r',
            EdgeColor::Blue => 'b',
        };
        let _ = writeln!(out, "e {} {} {c}", e.u, e.v);
    }
    for (key, d) in [("d0", &ncl.initial), ("d1", &ncl.target)] {
        out.push_str(key);
        for h in d {
            let _ = write!(out, " {h}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<MoveSequence, ParseError> {
    tokens(text)
        .into_iter()
        .map(|(line, w)| {
            Ok(match (w[0], w.len()) {
                ("sl", 3) => Move::Slide {
                    from: num(line, w[1])?,
                    to: num(line, w[2])?,
                },
                ("jp", 3) => Move::Jump {
                    from: num(line, w[1])?,
                    to: num(line, w[2])?,
                },
                ("add", 2) => Move::Add(num(line, w[1])?),
                ("rm", 2) => Move::Remove(num(line, w[1])?),
                _ => return err(line, format!("expected `sl u v`, `jp u v`, `add v` or `rm v`, got `{}`", w.join(" "))),
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(MoveSequence)
}

pub fn write_certificate(seq: &MoveSequence) -> String {
    seq.moves().iter().map(|m| format!("{m}\n")).collect()
}

pub fn parse_ncl_certificate(text: &str) -> Result<Vec<Flip>, ParseError> {
    tokens(text)
        .into_iter()
        .map(|(line, w)| {
            if w[0] != "flip" || w.len() != 3 {
                return err(line, "expected `flip <edge> <head>`");
            }
            Ok(Flip {
                edge: num(line, w[1])?,
                head: num(line, w[2])?,
            })
        })
        .collect()
}

pub fn write_ncl_certificate(flips: &[Flip]) -> String {
    flips.iter().map(|f| format!("flip {} {}\n", f.edge, f.head)).collect()
}

/// Provenance of one vertex of a reduction output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapEntry {
    Selector { edge: usize, side: usize },
    Gate { edge: usize, index: usize },
    /// Copy `copy` of gadget vertex `vertex`.
    Copy { vertex: usize, copy: usize },
    Original { vertex: usize },
    /// Member of the `copy`-th clique attached to edge `edge`.
    Attached { edge: usize, copy: usize, member: usize },
    Clique { vertex: usize },
    Independent { vertex: usize },
}

pub fn write_map(entries: &[MapEntry]) -> String {
    let mut out = String::new();
    for (v, e) in entries.iter().enumerate() {
        let _ = match *e {
            MapEntry::Selector { edge, side } => writeln!(out, "# map {v} selector {edge} {side}"),
            MapEntry::Gate { edge, index } => writeln!(out, "# map {v} gate {edge} {index}"),
            MapEntry::Copy { vertex, copy } => writeln!(out, "# map {v} copy {vertex} {copy}"),
            MapEntry::Original { vertex } => writeln!(out, "# map {v} original {vertex}"),
            MapEntry::Attached { edge, copy, member } => writeln!(out, "# map {v} attach {edge} {copy} {member}"),
            MapEntry::Clique { vertex } => writeln!(out, "# map {v} clique {vertex}"),
            MapEntry::Independent { vertex } => writeln!(out, "# map {v} independent {vertex}"),
        };
    }
    out
}

/// Reads `# map` lines; vertices must appear in order `0, 1, ...`.
pub fn parse_map(text: &str) -> Result<Vec<MapEntry>, ParseError> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let w: Vec<&str> = l.split_whitespace().collect();
        if w.len() < 2 || w[0] != "#" || w[1] != "map" {
            continue;
        }
        let bad = || err(line, "malformed `# map` line");
        if w.len() < 5 || num(line, w[2])? != out.len() {
            return bad();
        }
        let a = nums(line, &w[4..])?;
        let entry = match (w[3], a.as_slice()) {
            ("selector", &[edge, side]) => MapEntry::Selector { edge, side },
            ("gate", &[edge, index]) => MapEntry::Gate { edge, index },
            ("copy", &[vertex, copy]) => MapEntry::Copy { vertex, copy },
            ("original", &[vertex]) => MapEntry::Original { vertex },
            ("attach", &[edge, copy, member]) => MapEntry::Attached { edge, copy, member },
            ("clique", &[vertex]) => MapEntry::Clique { vertex },
            ("independent", &[vertex]) => MapEntry::Independent { vertex },
            _ => return bad(),
        };
        out.push(entry);
    }
    Ok(out)
}
