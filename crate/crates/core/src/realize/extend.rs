//! Extending decorations outward from a star.
//!
//! The value a side induces at its attaching node `w` is
//! `i = (2 - delta_u) P + sum_x (P / d_x) val_x (+ pure W terms)` at the first
//! node `u` of the side. Reducing mod `d_x` fixes every `val_x` mod `d_x`, so
//! all but one are taken in `1..=d_x` (equal to `d_x` exactly when forced to be
//! divisible) and the last one, preferably towards the F-arrows, absorbs the
//! rest. Sides are then solved recursively.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::allowed::is_allowed;
use crate::diagram::{Inc, SpliceDiagram, Topo, WTarget};
use crate::error::{Error, Result};
use crate::splice::Messages;

/// Decorations by slot name: `i[leaf]` for boundary vertices, `k[arrow]` for
/// doubled F-arrows.
pub type Assignment = BTreeMap<String, i128>;

/// One extension step from node `from` into node `node`: `j` is the value
/// induced at `node` by the side of `from`, `bound` the product of the other
/// weights at `from`. Along a plane-curve chain extended towards the
/// F-arrows, `|j| < bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub from: String,
    pub node: String,
    pub j: i128,
    pub bound: i128,
    /// `from` has exactly one leg, an edge of weight 1 towards `node`, and
    /// `node` lies towards the F-arrows
    pub chain: bool,
}

impl ChainCheck {
    pub fn holds(&self) -> bool {
        !self.chain || self.j.abs() < self.bound
    }
}

enum Var {
    Leaf(usize),
    Arrow(usize),
    Side(usize),
}

fn modinv(a: i128, m: i128) -> Option<i128> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// Fills `vals` so that the side of `u` (away from `w`) induces `target` at
/// `w`. `shift` moves the first free representative by that many weights.
/// F-arrows are decorated only when `double_arrows` is set.
#[allow(clippy::too_many_arguments)]
pub fn solve_side(
    d: &SpliceDiagram,
    t: &Topo,
    w: usize,
    u: usize,
    target: i128,
    shift: i128,
    double_arrows: bool,
    vals: &mut Assignment,
) -> Result<()> {
    if t.is_leaf(u) {
        if target == 0 {
            return Err(Error::precondition(format!(
                "boundary vertex {} would need value 0",
                t.id(u)
            )));
        }
        vals.insert(format!("i[{}]", t.id(u)), target);
        return Ok(());
    }
    let p = t.dv(u) / t.edge_weight(u, w).expect("adjacent");
    let mut rest = target - (2 - t.delta1(u)) * p;
    for &k in &t.pure_at[u] {
        rest -= (d.warrows[k].value as i128 - 1) * p;
    }
    let mut vars: Vec<(Var, i128, bool)> = Vec::new();
    for (inc, dx) in &t.inc[u] {
        match inc {
            Inc::Edge { to, .. } if *to == w => {}
            Inc::Edge { to, .. } if t.is_leaf(*to) => vars.push((Var::Leaf(*to), *dx, false)),
            Inc::Edge { to, .. } => {
                let f = !t.side(*to, u).iter().all(|&y| t.arrow_count(y) == 0);
                vars.push((Var::Side(*to), *dx, f));
            }
            Inc::Arrow { farrow } if double_arrows => vars.push((Var::Arrow(*farrow), *dx, true)),
            Inc::Arrow { .. } => rest -= p / dx,
        }
    }
    if vars.is_empty() {
        return Err(Error::precondition(format!(
            "node {} has no free legs",
            t.id(u)
        )));
    }
    let rank = |v: &(Var, i128, bool)| match v {
        (Var::Arrow(_), _, _) => 0,
        (Var::Side(_), _, true) => 1,
        (Var::Side(_), _, false) => 2,
        (Var::Leaf(_), _, _) => 3,
    };
    let last = (0..vars.len())
        .rev()
        .min_by_key(|&k| rank(&vars[k]))
        .unwrap();
    let mut chosen = vec![0i128; vars.len()];
    let mut first = true;
    for (k, (_, dx, _)) in vars.iter().enumerate() {
        if k == last {
            continue;
        }
        let c = p / dx;
        let r = if *dx == 1 {
            0
        } else {
            let inv = modinv(c, *dx).ok_or_else(|| {
                Error::precondition(format!("weights at {} are not pairwise coprime", t.id(u)))
            })?;
            (rest.rem_euclid(*dx) * inv) % dx
        };
        let mut v = if r == 0 { *dx } else { r };
        if first {
            v += shift * dx;
            first = false;
        }
        chosen[k] = v;
    }
    let c_last = p / vars[last].1;
    let sum: i128 = vars
        .iter()
        .zip(&chosen)
        .enumerate()
        .filter(|(k, _)| *k != last)
        .map(|(_, ((_, dx, _), v))| (p / dx) * v)
        .sum();
    if (rest - sum) % c_last != 0 {
        return Err(Error::precondition(format!(
            "no integer decoration at {} induces {target}",
            t.id(u)
        )));
    }
    chosen[last] = (rest - sum) / c_last;
    for ((var, _, _), v) in vars.iter().zip(chosen) {
        match var {
            Var::Leaf(x) => solve_side(d, t, u, *x, v, 0, double_arrows, vals)?,
            Var::Arrow(a) => {
                vals.insert(format!("k[{}]", d.farrows[*a].id), v);
            }
            Var::Side(x) => solve_side(d, t, u, *x, v, shift, double_arrows, vals)?,
        }
    }
    Ok(())
}

/// `d` with the decorations of `vals` put on its boundary vertices and
/// F-arrows, replacing what was there.
pub fn apply(d: &SpliceDiagram, vals: &Assignment) -> Result<SpliceDiagram> {
    let mut out = d.clone();
    let mut adds = Vec::new();
    for (name, &v) in vals {
        let v = i64::try_from(v).map_err(|_| Error::arithmetic("decoration too large"))?;
        let (kind, id) = name.split_at(1);
        let id = id.trim_start_matches('[').trim_end_matches(']').to_string();
        out.warrows.retain(|w| match (&w.target, kind) {
            (WTarget::At(x), "i") => *x != id,
            (WTarget::Doubles(a), "k") => *a != id,
            _ => true,
        });
        adds.push((kind.to_string(), id, v));
    }
    for (kind, id, v) in adds {
        let wid = out.fresh_id(&format!("w_{id}"));
        if kind == "i" {
            out.add_warrow_at(&wid, &id, v);
        } else {
            out.add_warrow_doubling(&wid, &id, v);
        }
    }
    Ok(out)
}

/// Chain checks for every node reached from `root` through the assignment.
pub fn chain_checks(d: &SpliceDiagram, root: &str) -> Result<Vec<ChainCheck>> {
    let t = Topo::build(d)?;
    let msgs = Messages::compute(d, &t);
    let Some(r) = t.vertex(root) else {
        return Err(Error::invalid(format!("unknown vertex {root}")));
    };
    let mut out = Vec::new();
    let mut stack = vec![(r, usize::MAX)];
    while let Some((w, parent)) = stack.pop() {
        for u in t.neighbors(w).collect::<Vec<_>>() {
            if u == parent || !t.is_node(u) {
                continue;
            }
            let towards_f = msgs.get(w, u).has_f;
            let legs = t.neighbors(w).filter(|&x| x != u && t.is_leaf(x)).count();
            let chain = towards_f
                && t.edge_weight(w, u) == Some(1)
                && legs == 1
                && t.inc[w].len() == 3
                && t.arrow_count(w) == 0;
            out.push(ChainCheck {
                from: t.id(w).to_string(),
                node: t.id(u).to_string(),
                j: msgs.get(u, w).i,
                bound: t.dv(w) / t.edge_weight(w, u).expect("adjacent"),
                chain,
            });
            stack.push((u, w));
        }
    }
    Ok(out)
}

/// Case of the extension across `vl - vr` when the side of `vl` is a star.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionCase {
    pub arrows_left: usize,
    pub arrows_right: bool,
    /// the extension map is onto for this configuration
    pub surjective: bool,
    /// weight at `vl` towards `vr` and the value `j` induced at `vl`
    pub d: i128,
    pub j: i128,
    pub addendum: Option<char>,
}

/// Decorates the legs and arrows of the star at `vl` so that the left side
/// induces `i_prime` at `vr`, keeping every decoration on the side of `vr`.
/// The result is checked to be allowed.
pub fn extend_allowed(
    d: &SpliceDiagram,
    vl: &str,
    vr: &str,
    i_prime: i128,
) -> Result<(SpliceDiagram, ExtensionCase)> {
    let t = Topo::build(d)?;
    let (Some(l), Some(r)) = (t.vertex(vl), t.vertex(vr)) else {
        return Err(Error::invalid(format!("unknown vertex in {vl}:{vr}")));
    };
    if t.edge_weight(l, r).is_none() || !t.is_node(l) || !t.is_node(r) {
        return Err(Error::precondition(format!(
            "{vl}:{vr} is not an edge between nodes"
        )));
    }
    if t.neighbors(l).any(|x| x != r && !t.is_leaf(x)) {
        return Err(Error::precondition(format!(
            "the side of {vl} is not star-shaped"
        )));
    }
    let msgs = Messages::compute(d, &t);
    let into_l = msgs.get(l, r);
    let dd = t.edge_weight(l, r).expect("adjacent");
    let arrows_left = t.arrow_count(l);
    let surjective = into_l.has_f || !(1..=2).contains(&arrows_left);
    let leaf_weights: Vec<i128> = t
        .neighbors(l)
        .filter(|&x| x != r)
        .filter_map(|x| t.edge_weight(l, x))
        .collect();
    let addendum = if surjective {
        None
    } else if into_l.i % dd != 0 || into_l.i == dd {
        Some('a')
    } else if arrows_left == 1 && leaf_weights.iter().all(|w| i_prime % w == 0) {
        Some('b')
    } else {
        None
    };
    let case = ExtensionCase {
        arrows_left,
        arrows_right: into_l.has_f,
        surjective,
        d: dd,
        j: into_l.i,
        addendum,
    };
    for shift in [0, 1, -1, 2, -2] {
        let mut vals = Assignment::new();
        if solve_side(d, &t, r, l, i_prime, shift, true, &mut vals).is_err() {
            continue;
        }
        let out = apply(d, &vals)?;
        let t2 = Topo::build(&out)?;
        let got = Messages::compute(&out, &t2).get(r, l).i;
        if got != i_prime {
            return Err(Error::arithmetic(format!(
                "extension induces {got} instead of {i_prime}"
            )));
        }
        if is_allowed(&out)?.allowed {
            return Ok((out, case));
        }
    }
    if let Some(out) = enumerate_star(d, &t, l, r, i_prime)? {
        return Ok((out, case));
    }
    Err(Error::precondition(format!(
        "extension obstructed across {vl}:{vr} (d = {dd}, j = {}, {} arrow(s) on the left)",
        into_l.i, arrows_left
    )))
}

/// Walks the decorations of the star at `l` (legs and arrows) in the forced
/// residue classes with `|value| <= BOX`, smallest first, the arrow or else
/// the last leg absorbing the rest, until one is allowed.
fn enumerate_star(
    d: &SpliceDiagram,
    t: &Topo,
    l: usize,
    r: usize,
    i_prime: i128,
) -> Result<Option<SpliceDiagram>> {
    const BOX: i128 = 24;
    const CAP: usize = 50_000;
    let p = t.dv(l) / t.edge_weight(l, r).expect("adjacent");
    let mut rest = i_prime - (2 - t.delta1(l)) * p;
    for &k in &t.pure_at[l] {
        rest -= (d.warrows[k].value as i128 - 1) * p;
    }
    let mut vars: Vec<(String, i128)> = Vec::new();
    for (inc, dx) in &t.inc[l] {
        match inc {
            Inc::Edge { to, .. } if *to == r => {}
            Inc::Edge { to, .. } => vars.push((format!("i[{}]", t.id(*to)), *dx)),
            Inc::Arrow { farrow } => vars.push((format!("k[{}]", d.farrows[*farrow].id), *dx)),
        }
    }
    let Some(last) = vars
        .iter()
        .rposition(|(n, _)| n.starts_with('k'))
        .or(vars.len().checked_sub(1))
    else {
        return Ok(None);
    };
    let free: Vec<usize> = (0..vars.len()).filter(|&k| k != last).collect();
    let mut cands: Vec<Vec<i128>> = Vec::new();
    for &k in &free {
        let dx = vars[k].1;
        let c = p / dx;
        let r0 = if dx == 1 {
            0
        } else {
            let inv = modinv(c, dx).ok_or_else(|| {
                Error::precondition(format!("weights at {} are not pairwise coprime", t.id(l)))
            })?;
            (rest.rem_euclid(dx) * inv) % dx
        };
        let mut c: Vec<i128> = (-BOX..=BOX)
            .filter(|&v| v != 0 && (v - r0).rem_euclid(dx) == 0)
            .collect();
        c.sort_by_key(|v| (v.abs(), *v < 0));
        cands.push(c);
    }
    let c_last = p / vars[last].1;
    let lens: Vec<usize> = cands.iter().map(Vec::len).collect();
    for ix in super::search::tuples(&lens, CAP) {
        let mut vals = Assignment::new();
        let mut sum = 0;
        for ((&k, c), &o) in free.iter().zip(&cands).zip(&ix) {
            let v = c[o];
            sum += (p / vars[k].1) * v;
            vals.insert(vars[k].0.clone(), v);
        }
        if (rest - sum) % c_last != 0 || rest == sum {
            continue;
        }
        vals.insert(vars[last].0.clone(), (rest - sum) / c_last);
        let out = apply(d, &vals)?;
        if is_allowed(&out)?.allowed {
            return Ok(Some(out));
        }
    }
    Ok(None)
}
