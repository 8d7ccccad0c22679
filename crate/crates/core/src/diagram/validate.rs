use num_integer::Integer;
use serde::Serialize;

use super::{SpliceDiagram, Topo, WTarget};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub nodes: Vec<String>,
    pub boundary: Vec<String>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(|v| format!("{}: {}", v.code, v.message))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

pub fn validate(d: &SpliceDiagram) -> ValidationReport {
    let mut r = ValidationReport::default();
    let mut bad =
        |code: &'static str, message: String| r.violations.push(Violation { code, message });
    let t = match Topo::build(d) {
        Ok(t) => t,
        Err(e) => {
            bad("reference", e.to_string());
            r.ok = false;
            return r;
        }
    };
    let mut ids: Vec<&str> = d.ids();
    ids.sort_unstable();
    for w in ids.windows(2) {
        if w[0] == w[1] {
            bad("duplicate-id", format!("`{}` is used twice", w[0]));
        }
    }
    if !t.is_tree() {
        bad("not-a-tree", "the underlying graph is not a tree".into());
    }
    let nodes = t.nodes();
    if nodes.is_empty() {
        bad("no-node", "a splice diagram needs at least one node".into());
    }
    for e in &d.edges {
        if e.wu < 1 || e.wv < 1 {
            bad(
                "weight",
                format!("edge {}-{} has a weight below 1", e.u, e.v),
            );
        }
    }
    for a in &d.farrows {
        if a.weight < 1 {
            bad("weight", format!("arrow {} has weight below 1", a.id));
        }
        if a.mult < 0 {
            bad("multiplicity", format!("arrow {} has negative N", a.id));
        }
    }
    for v in 0..t.n() {
        if t.is_leaf(v) {
            let (_, w) = t.inc[v][0];
            if w != 1 {
                bad(
                    "leaf-weight",
                    format!("weight {w} at the leaf end `{}`", t.id(v)),
                );
            }
            if t.pure_at[v].len() > 1 {
                bad(
                    "warrow-count",
                    format!("boundary vertex `{}` carries several W-arrows", t.id(v)),
                );
            }
            continue;
        }
        let ws: Vec<i128> = t.inc[v].iter().map(|(_, w)| *w).collect();
        'pairs: for i in 0..ws.len() {
            for j in i + 1..ws.len() {
                if ws[i].gcd(&ws[j]) != 1 {
                    bad(
                        "coprime",
                        format!(
                            "weights {} and {} at node `{}` are not coprime",
                            ws[i],
                            ws[j],
                            t.id(v)
                        ),
                    );
                    break 'pairs;
                }
            }
        }
    }
    if t.is_tree() && weights_positive(d) {
        for (v, w) in t.special_edges() {
            let q = t.edge_determinant(v, w);
            if q <= 0 {
                bad(
                    "edge-determinant",
                    format!(
                        "edge {}-{} has determinant {q}, expected positive",
                        t.id(v),
                        t.id(w)
                    ),
                );
            }
        }
    }
    for (k, a) in d.farrows.iter().enumerate() {
        let i = t.doubling[k].map(|j| d.warrows[j].value).unwrap_or(1);
        if a.mult == 0 && i == 0 {
            bad(
                "zero-decoration",
                format!("arrow {} has (N, i) = (0, 0)", a.id),
            );
        }
    }
    for w in &d.warrows {
        if let WTarget::At(_) = w.target {
            if w.value == 0 {
                bad("zero-decoration", format!("W-arrow {} has i = 0", w.id));
            }
        }
    }
    r.ok = r.violations.is_empty();
    r.nodes = nodes.iter().map(|&v| t.id(v).to_string()).collect();
    r.boundary = t.leaves().iter().map(|&v| t.id(v).to_string()).collect();
    r
}

fn weights_positive(d: &SpliceDiagram) -> bool {
    d.edges.iter().all(|e| e.wu >= 1 && e.wv >= 1) && d.farrows.iter().all(|a| a.weight >= 1)
}
