//! Plain-text graph format: the order on the first line, then one `u v`
//! edge per line. Blank lines and `#` comments are skipped; duplicate edges
//! are merged.

use std::fmt::Write;

use crate::circulant::CirculantSpec;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, first) = lines.next().ok_or_else(|| Error::Parse("empty graph text".into()))?;
    let order: usize = first.parse().map_err(|_| Error::Parse(format!("line 1: bad order {first:?}")))?;
    if order == 0 {
        return Err(Error::TrivialGraph { order, min: 1 });
    }
    let mut b = GraphBuilder::new(order);
    for (lineno, line) in lines {
        let mut it = line.split_whitespace();
        let mut next = || -> Result<usize> {
            it.next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("line {lineno}: expected `u v`, got {line:?}")))
        };
        let (u, v) = (next()?, next()?);
        if it.next().is_some() {
            return Err(Error::Parse(format!("line {lineno}: trailing tokens in {line:?}")));
        }
        b.add_edge(u, v)?;
    }
    Ok(b.build())
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// A graph given either as a `c:` circulant string or as graph text.
pub fn parse_graph_or_spec(text: &str) -> Result<(Graph, Option<CirculantSpec>)> {
    if text.trim_start().starts_with("c:") {
        let spec: CirculantSpec = text.parse()?;
        Ok((spec.graph(), Some(spec)))
    } else {
        Ok((parse_graph(text)?, None))
    }
}
