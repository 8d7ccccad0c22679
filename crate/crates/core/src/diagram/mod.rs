//! Splice diagrams decorated by arrows, the tree index used by every
//! computation on them, validation, and normalization.

mod normalize;
mod validate;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

pub use normalize::normalize;
pub use validate::{validate, ValidationReport, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpliceEdge {
    pub u: String,
    pub v: String,
    /// weight at the `u` end
    pub wu: i64,
    /// weight at the `v` end
    pub wv: i64,
}

/// Arrow of the divisor F: a curve germ with multiplicity `mult`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FArrow {
    pub id: String,
    pub at: String,
    pub weight: i64,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "ref", rename_all = "lowercase")]
pub enum WTarget {
    /// pure W-arrow at a vertex (boundary vertex, or a weight-one leg at a node)
    At(String),
    /// W-arrow sharing the curve of an F-arrow
    Doubles(String),
}

/// Arrow of the divisor W, stored by its value `i = multiplicity + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WArrow {
    pub id: String,
    pub target: WTarget,
    pub value: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpliceDiagram {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<SpliceEdge>,
    pub farrows: Vec<FArrow>,
    pub warrows: Vec<WArrow>,
}

impl SpliceDiagram {
    pub fn new(name: impl Into<String>) -> Self {
        SpliceDiagram {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> &mut Self {
        self.vertices.push(id.into());
        self
    }

    pub fn add_edge(&mut self, u: &str, v: &str, wu: i64, wv: i64) -> &mut Self {
        self.edges.push(SpliceEdge {
            u: u.into(),
            v: v.into(),
            wu,
            wv,
        });
        self
    }

    pub fn add_farrow(&mut self, id: &str, at: &str, weight: i64, mult: i64) -> &mut Self {
        self.farrows.push(FArrow {
            id: id.into(),
            at: at.into(),
            weight,
            mult,
        });
        self
    }

    pub fn add_warrow_at(&mut self, id: &str, at: &str, value: i64) -> &mut Self {
        self.warrows.push(WArrow {
            id: id.into(),
            target: WTarget::At(at.into()),
            value,
        });
        self
    }

    pub fn add_warrow_doubling(&mut self, id: &str, farrow: &str, value: i64) -> &mut Self {
        self.warrows.push(WArrow {
            id: id.into(),
            target: WTarget::Doubles(farrow.into()),
            value,
        });
        self
    }

    pub fn farrow(&self, id: &str) -> Option<&FArrow> {
        self.farrows.iter().find(|a| a.id == id)
    }

    pub fn warrow(&self, id: &str) -> Option<&WArrow> {
        self.warrows.iter().find(|a| a.id == id)
    }

    /// Same diagram without W.
    pub fn without_w(&self) -> SpliceDiagram {
        let mut d = self.clone();
        d.warrows.clear();
        d
    }

    /// Every id in use (vertices and arrows).
    pub fn ids(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        v.extend(self.farrows.iter().map(|a| a.id.as_str()));
        v.extend(self.warrows.iter().map(|a| a.id.as_str()));
        v
    }

    pub fn fresh_id(&self, stem: &str) -> String {
        let used = self.ids();
        if !used.contains(&stem) {
            return stem.to_string();
        }
        (1..)
            .map(|k| format!("{stem}{k}"))
            .find(|c| !used.contains(&c.as_str()))
            .expect("infinite supply")
    }
}

/// An incidence at a vertex: an edge or an F-arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inc {
    Edge { edge: usize, to: usize },
    Arrow { farrow: usize },
}

/// Index over a diagram: integer vertex ids, adjacency with weights, arrows per
/// vertex. Everything numeric works on this.
#[derive(Clone, Debug)]
pub struct Topo {
    pub ids: Vec<String>,
    pub index: HashMap<String, usize>,
    /// per vertex: (incidence, weight at this vertex)
    pub inc: Vec<Vec<(Inc, i128)>>,
    pub farrow_at: Vec<usize>,
    /// doubling W-arrow per F-arrow
    pub doubling: Vec<Option<usize>>,
    /// pure W-arrows per vertex
    pub pure_at: Vec<Vec<usize>>,
    pub farrow_index: HashMap<String, usize>,
}

impl Topo {
    /// Builds the index; errors on duplicate ids and dangling references only.
    pub fn build(d: &SpliceDiagram) -> Result<Topo> {
        let mut index = HashMap::new();
        for (k, v) in d.vertices.iter().enumerate() {
            if index.insert(v.clone(), k).is_some() {
                return Err(Error::invalid(format!("duplicate vertex `{v}`")));
            }
        }
        let n = d.vertices.len();
        let look = |v: &str| {
            index
                .get(v)
                .copied()
                .ok_or_else(|| Error::invalid(format!("unknown vertex `{v}`")))
        };
        let mut inc: Vec<Vec<(Inc, i128)>> = vec![Vec::new(); n];
        for (k, e) in d.edges.iter().enumerate() {
            let a = look(&e.u)?;
            let b = look(&e.v)?;
            if a == b {
                return Err(Error::invalid(format!("loop at `{}`", e.u)));
            }
            inc[a].push((Inc::Edge { edge: k, to: b }, e.wu as i128));
            inc[b].push((Inc::Edge { edge: k, to: a }, e.wv as i128));
        }
        let mut farrow_index = HashMap::new();
        let mut farrow_at = Vec::with_capacity(d.farrows.len());
        for (k, a) in d.farrows.iter().enumerate() {
            if farrow_index.insert(a.id.clone(), k).is_some() {
                return Err(Error::invalid(format!("duplicate arrow `{}`", a.id)));
            }
            let v = look(&a.at)?;
            farrow_at.push(v);
            inc[v].push((Inc::Arrow { farrow: k }, a.weight as i128));
        }
        let mut doubling = vec![None; d.farrows.len()];
        let mut pure_at = vec![Vec::new(); n];
        for (k, w) in d.warrows.iter().enumerate() {
            match &w.target {
                WTarget::At(v) => pure_at[look(v)?].push(k),
                WTarget::Doubles(a) => {
                    let f = *farrow_index
                        .get(a)
                        .ok_or_else(|| Error::invalid(format!("unknown F-arrow `{a}`")))?;
                    if doubling[f].is_some() {
                        return Err(Error::invalid(format!("F-arrow `{a}` doubled twice")));
                    }
                    doubling[f] = Some(k);
                }
            }
        }
        Ok(Topo {
            ids: d.vertices.clone(),
            index,
            inc,
            farrow_at,
            doubling,
            pure_at,
            farrow_index,
        })
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn edge_count(&self, v: usize) -> usize {
        self.inc[v]
            .iter()
            .filter(|(i, _)| matches!(i, Inc::Edge { .. }))
            .count()
    }

    pub fn arrow_count(&self, v: usize) -> usize {
        self.inc[v].len() - self.edge_count(v)
    }

    /// Bare leaf: exactly one edge and no F-arrow.
    pub fn is_leaf(&self, v: usize) -> bool {
        self.edge_count(v) == 1 && self.arrow_count(v) == 0
    }

    pub fn is_node(&self, v: usize) -> bool {
        !self.is_leaf(v)
    }

    pub fn nodes(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_node(v)).collect()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Edges plus F-arrows.
    pub fn delta1(&self, v: usize) -> i128 {
        self.inc[v].len() as i128
    }

    /// All incidences, pure W-arrows included.
    pub fn delta2(&self, v: usize) -> i128 {
        (self.inc[v].len() + self.pure_at[v].len()) as i128
    }

    /// Product of all weights at `v`.
    pub fn dv(&self, v: usize) -> i128 {
        self.inc[v].iter().map(|(_, w)| *w).product()
    }

    pub fn edge_weight(&self, v: usize, to: usize) -> Option<i128> {
        self.inc[v].iter().find_map(|(i, w)| match i {
            Inc::Edge { to: t, .. } if *t == to => Some(*w),
            _ => None,
        })
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.inc[v].iter().filter_map(|(i, _)| match i {
            Inc::Edge { to, .. } => Some(*to),
            _ => None,
        })
    }

    /// Node neighbors joined by an edge whose two ends are nodes.
    pub fn special_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.n() {
            if !self.is_node(v) {
                continue;
            }
            for w in self.neighbors(v) {
                if v < w && self.is_node(w) {
                    out.push((v, w));
                }
            }
        }
        out
    }

    /// `d_ve d_we - prod(other weights at v) prod(other weights at w)`
    pub fn edge_determinant(&self, v: usize, w: usize) -> i128 {
        let a = self.edge_weight(v, w).expect("adjacent");
        let b = self.edge_weight(w, v).expect("adjacent");
        a * b - (self.dv(v) / a) * (self.dv(w) / b)
    }

    /// Vertices reachable from `start` without crossing `blocked`.
    pub fn side(&self, start: usize, blocked: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        seen[blocked] = true;
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for y in self.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_tree(&self) -> bool {
        let edges: usize = (0..self.n()).map(|v| self.edge_count(v)).sum::<usize>() / 2;
        if self.n() == 0 || edges + 1 != self.n() {
            return false;
        }
        let mut seen = vec![false; self.n()];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for y in self.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n()
    }

    /// Linking numbers from `v`: one per vertex and one per F-arrow. Each is
    /// the product, over the vertices of the path, of the weights not on it.
    pub fn linking_from(&self, v: usize) -> Linking {
        let mut lv = vec![0i128; self.n()];
        let mut la = vec![0i128; self.farrow_at.len()];
        let dv = self.dv(v);
        lv[v] = dv;
        for (i, w) in &self.inc[v] {
            if let Inc::Arrow { farrow } = i {
                la[*farrow] = dv / w;
            }
        }
        // (vertex, parent, prefix, weight at vertex toward parent)
        let mut stack: Vec<(usize, usize, i128, i128)> = Vec::new();
        for (i, w) in &self.inc[v] {
            if let Inc::Edge { edge, to } = i {
                let back = self.back_weight(*to, *edge);
                stack.push((*to, v, dv / w, back));
            }
        }
        while let Some((x, parent, prefix, win)) = stack.pop() {
            let dx = self.dv(x);
            let base = dx / win;
            lv[x] = mul(prefix, base);
            for (i, w) in &self.inc[x] {
                match i {
                    Inc::Arrow { farrow } => la[*farrow] = mul(prefix, base / w),
                    Inc::Edge { edge, to } if *to != parent => {
                        let back = self.back_weight(*to, *edge);
                        stack.push((*to, x, mul(prefix, base / w), back));
                    }
                    _ => {}
                }
            }
        }
        Linking { lv, la }
    }

    fn back_weight(&self, x: usize, edge: usize) -> i128 {
        self.inc[x]
            .iter()
            .find_map(|(i, w)| match i {
                Inc::Edge { edge: e, .. } if *e == edge => Some(*w),
                _ => None,
            })
            .expect("edge present at both ends")
    }
}

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b)
        .expect("linking number exceeds the 128-bit range")
}

/// Linking numbers from one source vertex.
#[derive(Clone, Debug)]
pub struct Linking {
    pub lv: Vec<i128>,
    pub la: Vec<i128>,
}

impl Linking {
    /// Linking number with a W-arrow.
    pub fn warrow(&self, t: &Topo, d: &SpliceDiagram, k: usize) -> i128 {
        match &d.warrows[k].target {
            WTarget::At(v) => self.lv[t.index[v]],
            WTarget::Doubles(a) => self.la[t.farrow_index[a]],
        }
    }
}
