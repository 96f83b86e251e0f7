//! Text formats: edge lists for directed and undirected graphs,
//! path-decompositions, and separation chains.
//!
//! Edge-list format: any number of `#`-prefixed comment lines, then a
//! header `n m`, then exactly `m` lines `u v` with 0-indexed endpoints.
//! Directed lines mean `u → v`; undirected lines are unordered pairs.

use crate::bitset::VertexSet;
use crate::decomposition::PathDecomposition;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::separations::{Separation, SeparationChain};
use crate::ugraph::UGraph;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next non-comment, non-blank line with its 1-based number.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            let t = line.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Some((i + 1, t));
            }
        }
        None
    }
}

fn parse_header(lines: &mut Lines) -> Result<(usize, usize, usize)> {
    let (ln, text) = lines
        .next_content()
        .ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
    let mut it = text.split_whitespace();
    let n = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(ln, "expected vertex count"))?;
    let m = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(ln, "expected edge count"))?;
    if it.next().is_some() {
        return Err(Error::parse(ln, "trailing tokens after `n m`"));
    }
    Ok((n, m, ln))
}

fn parse_endpoint(tok: Option<&str>, ln: usize, n: usize) -> Result<usize> {
    let v: usize = tok
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(ln, "expected vertex index"))?;
    if v >= n {
        return Err(Error::parse(ln, format!("vertex {v} out of range (n = {n})")));
    }
    Ok(v)
}

fn parse_edge_lines(text: &str) -> Result<(usize, Vec<(usize, usize, usize)>)> {
    let mut lines = Lines::new(text);
    let (n, m, _) = parse_header(&mut lines)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, t) = lines
            .next_content()
            .ok_or_else(|| Error::parse(0, format!("expected {m} edge lines, found {}", edges.len())))?;
        let mut it = t.split_whitespace();
        let u = parse_endpoint(it.next(), ln, n)?;
        let v = parse_endpoint(it.next(), ln, n)?;
        if it.next().is_some() {
            return Err(Error::parse(ln, "trailing tokens after edge"));
        }
        edges.push((u, v, ln));
    }
    if let Some((ln, _)) = lines.next_content() {
        return Err(Error::parse(ln, "unexpected content after edge list"));
    }
    Ok((n, edges))
}

pub fn read_digraph(text: &str) -> Result<Digraph> {
    let (n, edges) = parse_edge_lines(text)?;
    let mut g = Digraph::edgeless(n);
    for (u, v, ln) in edges {
        if u == v {
            return Err(Error::parse(ln, format!("self-loop at vertex {u}")));
        }
        if g.has_edge(u, v) {
            return Err(Error::parse(ln, format!("duplicate edge ({u}, {v})")));
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

/// Canonical form: header followed by edges in sorted order.
pub fn write_digraph(g: &Digraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_ugraph(text: &str) -> Result<UGraph> {
    let (n, edges) = parse_edge_lines(text)?;
    let mut g = UGraph::edgeless(n);
    for (u, v, ln) in edges {
        if u == v {
            return Err(Error::parse(ln, format!("self-loop at vertex {u}")));
        }
        if g.has_edge(u, v) {
            return Err(Error::parse(ln, format!("duplicate edge ({u}, {v})")));
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

pub fn write_ugraph(g: &UGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Format: a `width W` line, a `bags R` line, then `R` lines of
/// space-separated vertex indices (a line may be empty).
pub fn write_decomposition(pd: &PathDecomposition) -> String {
    let mut out = format!("width {}\nbags {}\n", pd.width(), pd.bags().len());
    for bag in pd.bags() {
        let items: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
        out.push_str(&items.join(" "));
        out.push('\n');
    }
    out
}

/// Reads a decomposition over the universe `0..n`. The recorded width
/// must match the bags.
pub fn read_decomposition(text: &str, n: usize) -> Result<PathDecomposition> {
    let mut it = text.lines().enumerate();
    let (_, wline) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing `width W` line"))?;
    let width: usize = wline
        .trim()
        .strip_prefix("width ")
        .and_then(|t| t.trim().parse().ok())
        .ok_or_else(|| Error::parse(1, "expected `width W`"))?;
    let (_, bline) = it
        .next()
        .ok_or_else(|| Error::parse(2, "missing `bags R` line"))?;
    let count: usize = bline
        .trim()
        .strip_prefix("bags ")
        .and_then(|t| t.trim().parse().ok())
        .ok_or_else(|| Error::parse(2, "expected `bags R`"))?;
    let mut bags = Vec::with_capacity(count);
    for _ in 0..count {
        let (i, line) = it
            .next()
            .ok_or_else(|| Error::parse(0, format!("expected {count} bag lines, found {}", bags.len())))?;
        let ln = i + 1;
        let mut bag = VertexSet::empty(n);
        for tok in line.split_whitespace() {
            let v = parse_endpoint(Some(tok), ln, n)?;
            bag.insert(v);
        }
        bags.push(bag);
    }
    let pd = PathDecomposition::new(n, bags);
    if pd.width() != width {
        return Err(Error::parse(
            1,
            format!("recorded width {width} does not match bags (width {})", pd.width()),
        ));
    }
    Ok(pd)
}

/// Chains are one separation per line, `A-members | B-members`.
pub fn write_chain(chain: &SeparationChain) -> String {
    let mut out = String::new();
    for sep in chain.separations() {
        let a: Vec<String> = sep.a().iter().map(|v| v.to_string()).collect();
        let b: Vec<String> = sep.b().iter().map(|v| v.to_string()).collect();
        out.push_str(&a.join(" "));
        out.push_str(" | ");
        out.push_str(&b.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_chain(text: &str, n: usize) -> Result<SeparationChain> {
    let mut seps = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let (left, right) = t
            .split_once('|')
            .ok_or_else(|| Error::parse(ln, "expected `A-members | B-members`"))?;
        let mut a = VertexSet::empty(n);
        for tok in left.split_whitespace() {
            a.insert(parse_endpoint(Some(tok), ln, n)?);
        }
        let mut b = VertexSet::empty(n);
        for tok in right.split_whitespace() {
            b.insert(parse_endpoint(Some(tok), ln, n)?);
        }
        seps.push(Separation::from_parts(a, b));
    }
    Ok(SeparationChain::new(seps))
}
