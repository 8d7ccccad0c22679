//! Line-oriented text format for splice diagrams and plumbing graphs.
//!
//! ```text
//! splice-diagram <name>
//! vertex <id>
//! edge <id1> <id2> <w1> <w2>
//! farrow <aid> at <vid> w=<d> N=<int>
//! warrow <wid> at <vid> i=<int>
//! warrow <wid> doubles <aid> i=<int>
//! ```
//!
//! Plumbing graphs start with `plumbing-graph <name>`, declare vertices as
//! `vertex <id> self=<int>`, edges as `edge <id1> <id2>`, and F-arrows without
//! `w=`. `#` starts a comment.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::diagram::{SpliceDiagram, WArrow, WTarget};
use crate::error::{Error, Result};
use crate::plumbing::PlumbingGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Splice(SpliceDiagram),
    Plumbing(PlumbingGraph),
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Splice(d) => &d.name,
            Document::Plumbing(g) => &g.name,
        }
    }
}

enum Kind {
    Splice,
    Plumbing,
}

fn keyed(line: usize, tok: &str, key: &str) -> Result<i64> {
    let v = tok
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected `{key}=<int>`, found `{tok}`")))?;
    v.parse::<i64>()
        .map_err(|_| Error::parse(line, format!("`{v}` is not an integer")))
}

fn int(line: usize, tok: &str) -> Result<i64> {
    tok.parse::<i64>()
        .map_err(|_| Error::parse(line, format!("`{tok}` is not an integer")))
}

pub fn parse(text: &str) -> Result<Document> {
    let mut kind = None;
    let mut sd = SpliceDiagram::default();
    let mut pg = PlumbingGraph::default();
    let mut seen: HashSet<String> = HashSet::new();
    // (line, referenced id, must be a vertex?)
    let mut refs: Vec<(usize, String, bool)> = Vec::new();
    let mut vertex_ids: HashSet<String> = HashSet::new();
    let mut farrow_ids: HashSet<String> = HashSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if kind.is_none() {
            let name = body[toks[0].len()..].trim().to_string();
            if name.is_empty() {
                return Err(Error::parse(line, "missing name after the header keyword"));
            }
            match toks[0] {
                "splice-diagram" => {
                    kind = Some(Kind::Splice);
                    sd.name = name;
                }
                "plumbing-graph" => {
                    kind = Some(Kind::Plumbing);
                    pg.name = name;
                }
                other => {
                    return Err(Error::parse(
                        line,
                        format!("expected `splice-diagram` or `plumbing-graph`, found `{other}`"),
                    ))
                }
            }
            continue;
        }
        let splice = matches!(kind, Some(Kind::Splice));
        let mut declare = |id: &str| -> Result<()> {
            if !seen.insert(id.to_string()) {
                return Err(Error::parse(line, format!("duplicate id `{id}`")));
            }
            Ok(())
        };
        let arity = |n: usize| -> Result<()> {
            if toks.len() != n {
                Err(Error::parse(
                    line,
                    format!(
                        "`{}` takes {} fields, found {}",
                        toks[0],
                        n - 1,
                        toks.len() - 1
                    ),
                ))
            } else {
                Ok(())
            }
        };
        match toks[0] {
            "vertex" => {
                if splice {
                    arity(2)?;
                    declare(toks[1])?;
                    sd.vertices.push(toks[1].to_string());
                } else {
                    arity(3)?;
                    declare(toks[1])?;
                    pg.add_vertex(toks[1], keyed(line, toks[2], "self")?);
                }
                vertex_ids.insert(toks[1].to_string());
            }
            "edge" => {
                if splice {
                    arity(5)?;
                    sd.add_edge(toks[1], toks[2], int(line, toks[3])?, int(line, toks[4])?);
                } else {
                    arity(3)?;
                    pg.add_edge(toks[1], toks[2]);
                }
                refs.push((line, toks[1].to_string(), true));
                refs.push((line, toks[2].to_string(), true));
            }
            "farrow" => {
                if splice {
                    arity(6)?;
                } else {
                    arity(5)?;
                }
                if toks[2] != "at" {
                    return Err(Error::parse(line, "expected `at` after the arrow id"));
                }
                declare(toks[1])?;
                farrow_ids.insert(toks[1].to_string());
                if splice {
                    let w = keyed(line, toks[4], "w")?;
                    let n = keyed(line, toks[5], "N")?;
                    sd.add_farrow(toks[1], toks[3], w, n);
                } else {
                    let n = keyed(line, toks[4], "N")?;
                    pg.add_farrow(toks[1], toks[3], n);
                }
                refs.push((line, toks[3].to_string(), true));
            }
            "warrow" => {
                arity(5)?;
                declare(toks[1])?;
                let value = keyed(line, toks[4], "i")?;
                let target = match toks[2] {
                    "at" => {
                        refs.push((line, toks[3].to_string(), true));
                        WTarget::At(toks[3].to_string())
                    }
                    "doubles" => {
                        refs.push((line, toks[3].to_string(), false));
                        WTarget::Doubles(toks[3].to_string())
                    }
                    other => {
                        return Err(Error::parse(
                            line,
                            format!("expected `at` or `doubles`, found `{other}`"),
                        ))
                    }
                };
                let w = WArrow {
                    id: toks[1].to_string(),
                    target,
                    value,
                };
                if splice {
                    sd.warrows.push(w);
                } else {
                    pg.warrows.push(w);
                }
            }
            other => return Err(Error::parse(line, format!("unknown record `{other}`"))),
        }
    }
    for (line, id, vertex) in refs {
        let ok = if vertex {
            vertex_ids.contains(&id)
        } else {
            farrow_ids.contains(&id)
        };
        if !ok {
            let what = if vertex { "vertex" } else { "F-arrow" };
            return Err(Error::parse(line, format!("unknown {what} `{id}`")));
        }
    }
    match kind {
        Some(Kind::Splice) => Ok(Document::Splice(sd)),
        Some(Kind::Plumbing) => Ok(Document::Plumbing(pg)),
        None => Err(Error::parse(0, "empty input")),
    }
}

pub fn print_warrows(out: &mut String, ws: &[WArrow]) {
    for w in ws {
        match &w.target {
            WTarget::At(v) => writeln!(out, "warrow {} at {} i={}", w.id, v, w.value),
            WTarget::Doubles(a) => writeln!(out, "warrow {} doubles {} i={}", w.id, a, w.value),
        }
        .unwrap();
    }
}

pub fn print_splice(d: &SpliceDiagram) -> String {
    let mut s = format!("splice-diagram {}\n", d.name);
    for v in &d.vertices {
        writeln!(s, "vertex {v}").unwrap();
    }
    for e in &d.edges {
        writeln!(s, "edge {} {} {} {}", e.u, e.v, e.wu, e.wv).unwrap();
    }
    for a in &d.farrows {
        writeln!(s, "farrow {} at {} w={} N={}", a.id, a.at, a.weight, a.mult).unwrap();
    }
    print_warrows(&mut s, &d.warrows);
    s
}

pub fn print_plumbing(g: &PlumbingGraph) -> String {
    let mut s = format!("plumbing-graph {}\n", g.name);
    for v in &g.vertices {
        writeln!(s, "vertex {} self={}", v.id, v.selfint).unwrap();
    }
    for (a, b) in &g.edges {
        writeln!(s, "edge {a} {b}").unwrap();
    }
    for a in &g.farrows {
        writeln!(s, "farrow {} at {} N={}", a.id, a.at, a.mult).unwrap();
    }
    print_warrows(&mut s, &g.warrows);
    s
}

pub fn print(doc: &Document) -> String {
    match doc {
        Document::Splice(d) => print_splice(d),
        Document::Plumbing(g) => print_plumbing(g),
    }
}

pub fn parse_splice(text: &str) -> Result<SpliceDiagram> {
    match parse(text)? {
        Document::Splice(d) => Ok(d),
        Document::Plumbing(_) => Err(Error::parse(1, "expected a splice diagram")),
    }
}

pub fn parse_plumbing(text: &str) -> Result<PlumbingGraph> {
    match parse(text)? {
        Document::Plumbing(g) => Ok(g),
        Document::Splice(_) => Err(Error::parse(1, "expected a plumbing graph")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SD: &str = "\
# comment line
splice-diagram demo
vertex v
vertex a   # trailing comment
vertex b
edge v a 2 1
edge v b 3 1
farrow f at v w=7 N=1
warrow x at a i=4
warrow y doubles f i=2
";

    #[test]
    fn roundtrip_splice() {
        let d = parse_splice(SD).unwrap();
        assert_eq!(d.vertices.len(), 3);
        assert_eq!(parse_splice(&print_splice(&d)).unwrap(), d);
    }

    #[test]
    fn rejects_bad_input() {
        let dup = SD.replace("vertex b", "vertex a");
        assert!(matches!(parse(&dup), Err(Error::Parse { line: 5, .. })));
        let unk = format!("{SD}frob x\n");
        assert!(parse(&unk).is_err());
        let dangling = SD.replace("edge v b 3 1", "edge v q 3 1");
        assert!(parse(&dangling).is_err());
        assert!(parse("").is_err());
        assert!(parse("splice-diagram x\nfarrow f at v w=1 N=z\nvertex v\n").is_err());
    }

    #[test]
    fn roundtrip_plumbing() {
        let t = "plumbing-graph p\nvertex a self=-1\nvertex b self=-2\nedge a b\nfarrow f at b N=3\nwarrow w at a i=2\n";
        let g = parse_plumbing(t).unwrap();
        assert_eq!(print_plumbing(&g), t);
    }
}
