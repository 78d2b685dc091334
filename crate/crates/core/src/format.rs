//! Line-oriented text formats for magmas, link diagrams, graphs, plane graphs,
//! cochains and chains. `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::extension::{Cochain1, Cochain2};
use crate::graph::SignedGraph;
use crate::homology::TupleChain;
use crate::link::{Crossing, LinkDiagram};
use crate::magma::{EventualSequence, FiniteMagma, Sign};
use crate::tait::{End, HalfEdge, PlaneGraph};

/// Non-empty lines with comments removed, paired with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn number<T: std::str::FromStr>(line: usize, word: &str, what: &str) -> Result<T> {
    word.parse().map_err(|_| Error::parse(line, format!("bad {what} {word:?}")))
}

fn header<'a>(
    it: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    keyword: &str,
    arity: usize,
) -> Result<(usize, Vec<&'a str>)> {
    let (line, words) = it.next().ok_or_else(|| Error::parse(1, format!("missing `{keyword}` header")))?;
    if words[0] != keyword || words.len() != arity + 1 {
        return Err(Error::parse(line, format!("expected `{keyword}` header, got {:?}", words.join(" "))));
    }
    Ok((line, words[1..].to_vec()))
}

/// A magma table with an optional bracket sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagmaFile {
    pub magma: FiniteMagma,
    pub sequence: Option<EventualSequence>,
}

pub fn parse_magma(text: &str) -> Result<MagmaFile> {
    let mut it = lines(text);
    let (line, words) = header(&mut it, "magma", 1)?;
    let n: usize = number(line, words[0], "order")?;
    if n == 0 {
        return Err(Error::parse(line, "order must be positive"));
    }
    let mut table = Vec::with_capacity(n * n);
    let mut last = line;
    for row in 0..n {
        let (line, words) =
            it.next().ok_or_else(|| Error::parse(last + 1, format!("missing table row {}", row + 1)))?;
        last = line;
        if words.len() != n {
            return Err(Error::parse(line, format!("row {} has {} entries, expected {n}", row + 1, words.len())));
        }
        for w in words {
            table.push(number(line, w, "table entry")?);
        }
    }
    let magma = FiniteMagma::new(n, table)?;
    let mut sequence = None;
    for (line, words) in it {
        if words[0] != "seq" || sequence.is_some() {
            return Err(Error::parse(line, format!("unexpected line {:?}", words.join(" "))));
        }
        let split = words
            .iter()
            .position(|w| *w == "repeat")
            .ok_or_else(|| Error::parse(line, "a `seq` line needs `repeat`"))?;
        let values =
            |ws: &[&str]| ws.iter().map(|w| number::<usize>(line, w, "sequence value")).collect::<Result<Vec<_>>>();
        let s = EventualSequence::new(values(&words[1..split])?, values(&words[split + 1..])?)?;
        s.check_order(n)?;
        sequence = Some(s);
    }
    Ok(MagmaFile { magma, sequence })
}

pub fn write_magma(m: &FiniteMagma, sequence: Option<&EventualSequence>) -> String {
    let mut out = format!("magma {}\n", m.order());
    for a in m.elements() {
        let row: Vec<String> = m.row(a).iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    if let Some(s) = sequence {
        let _ = writeln!(out, "{s}");
    }
    out
}

pub fn parse_link(text: &str) -> Result<LinkDiagram> {
    let mut it = lines(text);
    header(&mut it, "link", 0)?;
    let (line, words) = header(&mut it, "circles", 1)?;
    let circles = number(line, words[0], "circle count")?;
    let mut crossings = Vec::new();
    for (line, words) in it {
        if words[0] != "x" || words.len() != 5 {
            return Err(Error::parse(line, format!("expected `x a b c d`, got {:?}", words.join(" "))));
        }
        let mut arcs = [0; 4];
        for (slot, w) in arcs.iter_mut().zip(&words[1..]) {
            *slot = number(line, w, "arc label")?;
        }
        crossings.push(Crossing(arcs));
    }
    LinkDiagram::new(crossings, circles)
}

fn parse_graph_lines<'a>(
    it: &mut std::iter::Peekable<impl Iterator<Item = (usize, Vec<&'a str>)>>,
) -> Result<SignedGraph> {
    let (line, words) = header(it, "graph", 1)?;
    let vertices = number(line, words[0], "vertex count")?;
    let mut edges = Vec::new();
    while let Some((line, words)) = it.next_if(|(_, w)| w[0] == "e") {
        if words.len() != 4 {
            return Err(Error::parse(line, format!("expected `e u v +|-`, got {:?}", words.join(" "))));
        }
        let sign: Sign = words[3].parse().map_err(|_| Error::parse(line, format!("bad sign {:?}", words[3])))?;
        edges.push((number(line, words[1], "vertex")?, number(line, words[2], "vertex")?, sign));
    }
    SignedGraph::new(vertices, &edges)
}

pub fn parse_graph(text: &str) -> Result<SignedGraph> {
    let mut it = lines(text).peekable();
    let g = parse_graph_lines(&mut it)?;
    if let Some((line, words)) = it.next() {
        return Err(Error::parse(line, format!("unexpected line {:?}", words.join(" "))));
    }
    Ok(g)
}

fn half_edge(line: usize, token: &str) -> Result<HalfEdge> {
    let bad = || Error::parse(line, format!("bad half-edge {token:?}"));
    let (digits, end) = token.split_at(token.len().checked_sub(1).ok_or_else(bad)?);
    let end = match end {
        "a" => End::A,
        "b" => End::B,
        _ => return Err(bad()),
    };
    let edge: usize = digits.parse().map_err(|_| bad())?;
    if edge == 0 {
        return Err(bad());
    }
    Ok(HalfEdge { edge: edge - 1, end })
}

/// A graph file followed by `rot v : 1a 2b ...` lines, one per vertex.
pub fn parse_plane_graph(text: &str) -> Result<PlaneGraph> {
    let mut it = lines(text).peekable();
    let graph = parse_graph_lines(&mut it)?;
    let mut rotation: Vec<Option<Vec<HalfEdge>>> = vec![None; graph.vertex_count()];
    for (line, words) in it {
        if words[0] != "rot" || words.len() < 3 || words[2] != ":" {
            return Err(Error::parse(line, format!("expected `rot v : ...`, got {:?}", words.join(" "))));
        }
        let v: usize = number(line, words[1], "vertex")?;
        let slot = rotation
            .get_mut(v.wrapping_sub(1))
            .ok_or_else(|| Error::parse(line, format!("vertex {v} out of range")))?;
        if slot.is_some() {
            return Err(Error::parse(line, format!("second rotation for vertex {v}")));
        }
        *slot = Some(words[3..].iter().map(|t| half_edge(line, t)).collect::<Result<_>>()?);
    }
    let rotation = rotation.into_iter().map(Option::unwrap_or_default).collect();
    PlaneGraph::new(graph, rotation)
}

/// `c x value` lines; every element must appear exactly once.
pub fn parse_cochain1(text: &str, order: usize) -> Result<Cochain1> {
    let mut values = vec![None; order];
    for (line, words) in lines(text) {
        if words[0] != "c" || words.len() != 3 {
            return Err(Error::parse(line, format!("expected `c x value`, got {:?}", words.join(" "))));
        }
        let x: usize = number(line, words[1], "element")?;
        let slot = values
            .get_mut(x.wrapping_sub(1))
            .ok_or_else(|| Error::parse(line, format!("element {x} out of range 1..={order}")))?;
        if slot.replace(number(line, words[2], "value")?).is_some() {
            return Err(Error::parse(line, format!("second value for {x}")));
        }
    }
    let missing = values.iter().position(Option::is_none);
    if let Some(x) = missing {
        return Err(Error::parse(1, format!("no value for element {}", x + 1)));
    }
    Ok(Cochain1::new(values.into_iter().flatten().collect()))
}

/// `f x1 x2 value` lines; every pair must appear exactly once.
pub fn parse_cochain2(text: &str, order: usize) -> Result<Cochain2> {
    let mut values = vec![None; order * order];
    for (line, words) in lines(text) {
        if words[0] != "f" || words.len() != 4 {
            return Err(Error::parse(line, format!("expected `f x1 x2 value`, got {:?}", words.join(" "))));
        }
        let x1: usize = number(line, words[1], "element")?;
        let x2: usize = number(line, words[2], "element")?;
        if !(1..=order).contains(&x1) || !(1..=order).contains(&x2) {
            return Err(Error::parse(line, format!("pair ({x1},{x2}) out of range 1..={order}")));
        }
        if values[(x1 - 1) * order + x2 - 1].replace(number(line, words[3], "value")?).is_some() {
            return Err(Error::parse(line, format!("second value for ({x1},{x2})")));
        }
    }
    if let Some(i) = values.iter().position(Option::is_none) {
        return Err(Error::parse(1, format!("no value for ({},{})", i / order + 1, i % order + 1)));
    }
    Cochain2::new(order, values.into_iter().flatten().collect())
}

pub fn write_cochain1(c: &Cochain1) -> String {
    c.values().iter().enumerate().map(|(i, v)| format!("c {} {v}\n", i + 1)).collect()
}

pub fn write_cochain2(f: &Cochain2) -> String {
    let q = f.order();
    f.values().iter().enumerate().map(|(i, v)| format!("f {} {} {v}\n", i / q + 1, i % q + 1)).collect()
}

/// A chain written as terms over one or more lines.
pub fn parse_chain(text: &str) -> Result<TupleChain> {
    let body: Vec<String> = lines(text).map(|(_, words)| words.join(" ")).collect();
    body.join(" ").parse()
}
