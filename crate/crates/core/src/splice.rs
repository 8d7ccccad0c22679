//! Cutting a splice diagram along an edge between two nodes, and the full
//! decomposition into star-shaped pieces.
//!
//! The piece containing `vL` receives a replacement for the far side, named
//! with the key `[vL|vR]`: an F-arrow `f[vL|vR]` doubled by `w[vL|vR]` when the
//! far side carries F-arrows, and otherwise a boundary vertex `b[vL|vR]`
//! carrying the pure W-arrow `w[vL|vR]`.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{q, Lin, RatFunc, Term};
use crate::diagram::{Inc, SpliceDiagram, Topo, WTarget};
use crate::divisor::arrow_value;
use crate::error::{Error, Result};

/// Multiplicity and value induced across a cut, as seen from the near side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Induced {
    #[serde(rename = "M")]
    pub m: i128,
    pub i: i128,
    /// the far side carries F-arrows
    pub has_f: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpliceSplit {
    pub left: SpliceDiagram,
    pub right: SpliceDiagram,
    /// what the left piece receives from the right side
    pub into_left: Induced,
    /// what the right piece receives from the left side
    pub into_right: Induced,
}

impl SpliceSplit {
    /// `1 / ((i + sM)(i' + sM'))`, the correction in the splice formula.
    pub fn correction(&self) -> Result<RatFunc> {
        let a = &self.into_left;
        let b = &self.into_right;
        Term::new(
            "correction",
            vec![],
            q(1),
            vec![Lin::new(q(a.i), q(a.m)), Lin::new(q(b.i), q(b.m))],
        )
        .to_ratfunc()
    }
}

pub fn key(near: &str, far: &str) -> String {
    format!("[{near}|{far}]")
}

/// Adds the replacement of the far side to a piece.
fn attach(
    piece: &mut SpliceDiagram,
    near: &str,
    far: &str,
    weight: i64,
    ind: Induced,
) -> Result<()> {
    let k = key(near, far);
    let small = |x: i128| {
        i64::try_from(x).map_err(|_| Error::arithmetic("induced decoration exceeds 64 bits"))
    };
    if ind.has_f {
        let f = format!("f{k}");
        piece.add_farrow(&f, near, weight, small(ind.m)?);
        piece.add_warrow_doubling(&format!("w{k}"), &f, small(ind.i)?);
    } else {
        let b = format!("b{k}");
        piece.add_vertex(&b);
        piece.add_edge(near, &b, weight, 1);
        piece.add_warrow_at(&format!("w{k}"), &b, small(ind.i)?);
    }
    Ok(())
}

/// Sub-diagram on the vertex set `keep`, with arrows at kept vertices.
fn restrict(d: &SpliceDiagram, t: &Topo, keep: &[usize], name: String) -> SpliceDiagram {
    let inside: Vec<bool> = (0..t.n()).map(|v| keep.contains(&v)).collect();
    let is_in = |id: &str| t.vertex(id).is_some_and(|v| inside[v]);
    let mut p = SpliceDiagram::new(name);
    p.vertices = d.vertices.iter().filter(|v| is_in(v)).cloned().collect();
    p.edges = d
        .edges
        .iter()
        .filter(|e| is_in(&e.u) && is_in(&e.v))
        .cloned()
        .collect();
    p.farrows = d.farrows.iter().filter(|a| is_in(&a.at)).cloned().collect();
    p.warrows = d
        .warrows
        .iter()
        .filter(|w| match &w.target {
            WTarget::At(v) => is_in(v),
            WTarget::Doubles(a) => d.farrow(a).is_some_and(|f| is_in(&f.at)),
        })
        .cloned()
        .collect();
    p
}

/// Induced data across the edge `(near, far)` computed from linking numbers:
/// `M = sum_{a in A_far} N_a l_{e,a}` and
/// `i = sum_{x in V_far} (2 - delta_x) l_{e,x} + sum_F l_{e,a} + sum_W (i_a - 1) l_{e,a}`,
/// where `l_{e,*} = l_{near,*} / (product of the other weights at near)`.
pub fn induced_by_linking(d: &SpliceDiagram, t: &Topo, near: usize, far: usize) -> Induced {
    let l = t.linking_from(near);
    let p = t.dv(near) / t.edge_weight(near, far).expect("adjacent");
    let side = t.side(far, near);
    let in_side: Vec<bool> = (0..t.n()).map(|v| side.contains(&v)).collect();
    let mut i: i128 = side.iter().map(|&x| (2 - t.delta1(x)) * l.lv[x]).sum();
    let mut m: i128 = 0;
    let mut has_f = false;
    for (k, a) in d.farrows.iter().enumerate() {
        if in_side[t.farrow_at[k]] {
            has_f = true;
            m += a.mult as i128 * l.la[k];
            i += l.la[k];
        }
    }
    for (k, w) in d.warrows.iter().enumerate() {
        let at = match &w.target {
            WTarget::At(v) => t.index[v],
            WTarget::Doubles(a) => t.farrow_at[t.farrow_index[a]],
        };
        if in_side[at] {
            i += (w.value as i128 - 1) * l.warrow(t, d, k);
        }
    }
    debug_assert!(i % p == 0 && m % p == 0);
    Induced {
        m: m / p,
        i: i / p,
        has_f,
    }
}

/// Cuts along the edge joining the nodes `vl` and `vr`.
pub fn split_edge(d: &SpliceDiagram, vl: &str, vr: &str) -> Result<SpliceSplit> {
    let t = Topo::build(d)?;
    let l = t
        .vertex(vl)
        .ok_or_else(|| Error::invalid(format!("unknown vertex `{vl}`")))?;
    let r = t
        .vertex(vr)
        .ok_or_else(|| Error::invalid(format!("unknown vertex `{vr}`")))?;
    let (Some(dl), Some(dr)) = (t.edge_weight(l, r), t.edge_weight(r, l)) else {
        return Err(Error::precondition(format!(
            "`{vl}` and `{vr}` are not adjacent"
        )));
    };
    if !t.is_node(l) || !t.is_node(r) {
        return Err(Error::precondition(format!(
            "edge {vl}-{vr} does not join two nodes"
        )));
    }
    let into_left = induced_by_linking(d, &t, l, r);
    let into_right = induced_by_linking(d, &t, r, l);
    let mut left = restrict(d, &t, &t.side(l, r), format!("{}{}", d.name, key(vl, vr)));
    let mut right = restrict(d, &t, &t.side(r, l), format!("{}{}", d.name, key(vr, vl)));
    attach(&mut left, vl, vr, dl as i64, into_left)?;
    attach(&mut right, vr, vl, dr as i64, into_right)?;
    Ok(SpliceSplit {
        left,
        right,
        into_left,
        into_right,
    })
}

/// Cuts every edge between nodes by repeated splitting, in the order given
/// (edges not listed are cut afterwards in id order). Returns one star per
/// node, keyed by node id.
pub fn decompose_by_splitting(
    d: &SpliceDiagram,
    order: &[(String, String)],
) -> Result<Vec<(String, SpliceDiagram)>> {
    let t = Topo::build(d)?;
    let mut edges: Vec<(String, String)> = order.to_vec();
    let mut rest: Vec<(String, String)> = t
        .special_edges()
        .into_iter()
        .map(|(a, b)| (t.id(a).to_string(), t.id(b).to_string()))
        .collect();
    rest.sort();
    for e in rest {
        if !edges
            .iter()
            .any(|(a, b)| (a == &e.0 && b == &e.1) || (a == &e.1 && b == &e.0))
        {
            edges.push(e);
        }
    }
    let mut pieces = vec![d.clone()];
    for (a, b) in edges {
        let pos = pieces
            .iter()
            .position(|p| p.vertices.contains(&a) && p.vertices.contains(&b))
            .ok_or_else(|| Error::invalid(format!("no piece contains edge {a}-{b}")))?;
        let p = pieces.swap_remove(pos);
        let s = split_edge(&p, &a, &b)?;
        pieces.push(s.left);
        pieces.push(s.right);
    }
    let mut out: Vec<(String, SpliceDiagram)> = pieces
        .into_iter()
        .map(|p| {
            let t = Topo::build(&p).expect("pieces stay well formed");
            let node = t.nodes()[0];
            (t.id(node).to_string(), p)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Induced data on every directed node-to-node edge, by message passing
/// towards each node.
#[derive(Clone, Debug)]
pub struct Messages {
    /// `(near, far)` vertex indices → data the near node receives
    pub map: HashMap<(usize, usize), Induced>,
}

impl Messages {
    pub fn compute(d: &SpliceDiagram, t: &Topo) -> Messages {
        let mut map = HashMap::new();
        for (a, b) in t.special_edges() {
            message(d, t, a, b, &mut map);
            message(d, t, b, a, &mut map);
        }
        Messages { map }
    }

    pub fn get(&self, near: usize, far: usize) -> Induced {
        self.map[&(near, far)]
    }
}

/// What `u` receives from the side of its neighbour node `w`:
/// `i = (2 - delta_w) P + sum_{x != u} (P / d_x) val_x`,
/// `M = sum_{x != u} (P / d_x) N_x`, with `P` the product of the weights at `w`
/// other than the one towards `u`.
fn message(
    d: &SpliceDiagram,
    t: &Topo,
    u: usize,
    w: usize,
    memo: &mut HashMap<(usize, usize), Induced>,
) -> Induced {
    if let Some(x) = memo.get(&(u, w)) {
        return *x;
    }
    let p = t.dv(w) / t.edge_weight(w, u).expect("adjacent");
    let mut i = (2 - t.delta1(w)) * p;
    let mut m = 0i128;
    let mut has_f = false;
    for (inc, dx) in &t.inc[w] {
        let c = p / dx;
        match inc {
            Inc::Edge { to, .. } if *to == u => {}
            Inc::Edge { to, .. } if t.is_leaf(*to) => {
                let v = t.pure_at[*to]
                    .first()
                    .map(|&k| d.warrows[k].value as i128)
                    .unwrap_or(1);
                i += c * v;
            }
            Inc::Edge { to, .. } => {
                let sub = message(d, t, w, *to, memo);
                i += c * sub.i;
                m += c * sub.m;
                has_f |= sub.has_f;
            }
            Inc::Arrow { farrow } => {
                i += c * arrow_value(d, t, *farrow);
                m += c * d.farrows[*farrow].mult as i128;
                has_f = true;
            }
        }
    }
    for &k in &t.pure_at[w] {
        i += (d.warrows[k].value as i128 - 1) * p;
    }
    let out = Induced { m, i, has_f };
    memo.insert((u, w), out);
    out
}

/// The star of node `w`: its own legs and arrows plus one replacement per
/// neighbouring node.
pub fn star_of(d: &SpliceDiagram, t: &Topo, msgs: &Messages, w: usize) -> Result<SpliceDiagram> {
    let wid = t.id(w).to_string();
    let mut s = SpliceDiagram::new(format!("{}/{}", d.name, wid));
    s.add_vertex(&wid);
    let mut replaced = Vec::new();
    for (inc, dx) in &t.inc[w] {
        match inc {
            Inc::Edge { edge, to } if t.is_leaf(*to) => {
                s.vertices.push(t.id(*to).to_string());
                s.edges.push(d.edges[*edge].clone());
                for &k in &t.pure_at[*to] {
                    s.warrows.push(d.warrows[k].clone());
                }
            }
            Inc::Edge { to, .. } => replaced.push((*to, *dx)),
            Inc::Arrow { farrow } => {
                s.farrows.push(d.farrows[*farrow].clone());
                if let Some(k) = t.doubling[*farrow] {
                    s.warrows.push(d.warrows[k].clone());
                }
            }
        }
    }
    for &k in &t.pure_at[w] {
        s.warrows.push(d.warrows[k].clone());
    }
    for (y, dx) in replaced {
        attach(&mut s, &wid, t.id(y), dx as i64, msgs.get(w, y))?;
    }
    Ok(s)
}

/// All stars, sorted by node id.
pub fn stars(d: &SpliceDiagram) -> Result<Vec<(String, SpliceDiagram)>> {
    let t = Topo::build(d)?;
    let msgs = Messages::compute(d, &t);
    let mut out = Vec::new();
    for w in t.nodes() {
        out.push((t.id(w).to_string(), star_of(d, &t, &msgs, w)?));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}
