//! Every quantity the realization problem looks at is affine in the free
//! W-decorations: the induced leg values of each star, `nu_v` and the arrow
//! values. The model records these affine forms once.

use std::fmt;

use serde::Serialize;

use crate::diagram::{Inc, SpliceDiagram, Topo, WTarget};
use crate::divisor::vertex_values_with;
use crate::error::{Error, Result};
use crate::splice::Messages;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "ref", rename_all = "lowercase")]
pub enum SlotKind {
    /// pure W-arrow on a boundary vertex
    Boundary(String),
    /// W-arrow doubling an F-arrow
    Doubling(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub name: String,
    pub warrow: String,
    pub kind: SlotKind,
}

/// `c0 + sum_j c_j x_j`
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Form {
    pub c0: i128,
    pub c: Vec<i128>,
}

impl Form {
    pub fn constant(c0: i128, n: usize) -> Form {
        Form { c0, c: vec![0; n] }
    }

    pub fn slot(j: usize, n: usize) -> Form {
        let mut c = vec![0; n];
        c[j] = 1;
        Form { c0: 0, c }
    }

    pub fn eval(&self, x: &[i128]) -> Option<i128> {
        let mut s = self.c0;
        for (a, b) in self.c.iter().zip(x) {
            s = s.checked_add(a.checked_mul(*b)?)?;
        }
        Some(s)
    }

    pub fn is_constant(&self) -> bool {
        self.c.iter().all(|&a| a == 0)
    }

    pub fn show<'a>(&'a self, slots: &'a [Slot]) -> FormDisplay<'a> {
        FormDisplay { f: self, slots }
    }
}

pub struct FormDisplay<'a> {
    f: &'a Form,
    slots: &'a [Slot],
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.f.c0 != 0 || self.f.is_constant() {
            write!(out, "{}", self.f.c0)?;
            first = false;
        }
        for (a, s) in self.f.c.iter().zip(self.slots) {
            if *a == 0 {
                continue;
            }
            let sign = if *a < 0 { "-" } else { "+" };
            let m = a.abs();
            if first {
                if *a < 0 {
                    write!(out, "-")?;
                }
            } else {
                write!(out, " {sign} ")?;
            }
            first = false;
            if m == 1 {
                write!(out, "{}", s.name)?;
            } else {
                write!(out, "{m}*{}", s.name)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LegForm {
    pub label: String,
    pub d: i128,
    pub form: Form,
}

/// A star after full splicing: its legs as affine forms, and the number of
/// F-arrows (own or induced).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarModel {
    pub node: String,
    pub legs: Vec<LegForm>,
    pub arrows: usize,
}

impl StarModel {
    /// `n + r - 2`; the star constrains nothing when this is `<= 0`
    pub fn required(&self) -> i64 {
        if self.legs.is_empty() {
            return 0;
        }
        self.legs.len() as i64 + self.arrows as i64 - 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeModel {
    pub id: String,
    pub n: i128,
    pub nu: Form,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowModel {
    pub id: String,
    pub mult: i128,
    pub value: Form,
}

#[derive(Clone, Debug)]
pub struct AffineModel {
    /// the input with slot W-arrows removed
    pub base: SpliceDiagram,
    pub slots: Vec<Slot>,
    pub stars: Vec<StarModel>,
    pub nodes: Vec<NodeModel>,
    pub arrows: Vec<ArrowModel>,
    /// some W-arrow outside the slots has value 0
    pub fixed_zero: bool,
}

struct Snapshot {
    stars: Vec<(String, Vec<(String, i128, i128)>, usize)>,
    nu: Vec<(String, i128, i128)>,
    arrows: Vec<(String, i128, i128)>,
}

fn snapshot(d: &SpliceDiagram) -> Result<Snapshot> {
    let t = Topo::build(d)?;
    let msgs = Messages::compute(d, &t);
    let vals = vertex_values_with(d, &t);
    let mut stars = Vec::new();
    for w in t.nodes() {
        let mut legs = Vec::new();
        let mut arrows = 0;
        for (inc, dx) in &t.inc[w] {
            match inc {
                Inc::Edge { to, .. } if t.is_leaf(*to) => {
                    let i = t.pure_at[*to]
                        .first()
                        .map(|&k| d.warrows[k].value as i128)
                        .unwrap_or(1);
                    legs.push((t.id(*to).to_string(), *dx, i));
                }
                Inc::Edge { to, .. } => {
                    let m = msgs.get(w, *to);
                    if m.has_f {
                        arrows += 1;
                    } else {
                        legs.push((crate::splice::key(t.id(w), t.id(*to)), *dx, m.i));
                    }
                }
                Inc::Arrow { .. } => arrows += 1,
            }
        }
        for &k in &t.pure_at[w] {
            legs.push((d.warrows[k].id.clone(), 1, d.warrows[k].value as i128));
        }
        stars.push((t.id(w).to_string(), legs, arrows));
    }
    let nu = t
        .nodes()
        .into_iter()
        .map(|v| (t.id(v).to_string(), vals[v].n, vals[v].nu))
        .collect();
    let arrows = d
        .farrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            (
                a.id.clone(),
                a.mult as i128,
                crate::divisor::arrow_value(d, &t, k),
            )
        })
        .collect();
    Ok(Snapshot { stars, nu, arrows })
}

impl AffineModel {
    /// Slots are all boundary vertices, the F-arrows already doubled in `d`,
    /// and every F-arrow when `double_arrows` is set. Pure W-arrows on nodes
    /// stay as given.
    pub fn build(d: &SpliceDiagram, double_arrows: bool) -> Result<AffineModel> {
        let t = Topo::build(d)?;
        let mut base = d.clone();
        let mut slots = Vec::new();
        for v in t.leaves() {
            let id = t.id(v).to_string();
            let warrow = match t.pure_at[v].first() {
                Some(&k) => d.warrows[k].id.clone(),
                None => base.fresh_id(&format!("w_{id}")),
            };
            base.warrows.retain(|w| w.id != warrow);
            slots.push(Slot {
                name: format!("i[{id}]"),
                warrow,
                kind: SlotKind::Boundary(id),
            });
        }
        for (k, a) in d.farrows.iter().enumerate() {
            let declared = t.doubling[k].map(|j| d.warrows[j].id.clone());
            if declared.is_none() && !double_arrows {
                continue;
            }
            let warrow = match declared {
                Some(w) => w,
                None => base.fresh_id(&format!("w_{}", a.id)),
            };
            base.warrows.retain(|w| w.id != warrow);
            slots.push(Slot {
                name: format!("k[{}]", a.id),
                warrow,
                kind: SlotKind::Doubling(a.id.clone()),
            });
        }
        // fresh ids must not collide with each other either
        let mut seen = std::collections::HashSet::new();
        for s in slots.iter_mut() {
            let mut id = s.warrow.clone();
            let mut k = 1;
            while !seen.insert(id.clone()) {
                id = format!("{}_{k}", s.warrow);
                k += 1;
            }
            s.warrow = id;
        }
        let fixed_zero = base
            .warrows
            .iter()
            .any(|w| matches!(w.target, WTarget::At(_)) && w.value == 0);
        let mut model = AffineModel {
            base,
            slots,
            stars: Vec::new(),
            nodes: Vec::new(),
            arrows: Vec::new(),
            fixed_zero,
        };
        let n = model.slots.len();
        let ones = vec![1i128; n];
        let s0 = snapshot(&model.instantiate(&ones)?)?;
        let mut deltas = Vec::new();
        for j in 0..n {
            let mut x = ones.clone();
            x[j] = 2;
            deltas.push(snapshot(&model.instantiate(&x)?)?);
        }
        // value at x = 1 + sum_j c_j (x_j - 1)
        let form = |base: i128, get: &dyn Fn(&Snapshot) -> i128| -> Form {
            let c: Vec<i128> = deltas.iter().map(|s| get(s) - base).collect();
            let c0 = base - c.iter().sum::<i128>();
            Form { c0, c }
        };
        for (si, (node, legs, arrows)) in s0.stars.iter().enumerate() {
            let legs = legs
                .iter()
                .enumerate()
                .map(|(li, (label, dd, v))| LegForm {
                    label: label.clone(),
                    d: *dd,
                    form: form(*v, &|s: &Snapshot| s.stars[si].1[li].2),
                })
                .collect();
            model.stars.push(StarModel {
                node: node.clone(),
                legs,
                arrows: *arrows,
            });
        }
        for (vi, (id, nv, nu)) in s0.nu.iter().enumerate() {
            model.nodes.push(NodeModel {
                id: id.clone(),
                n: *nv,
                nu: form(*nu, &|s: &Snapshot| s.nu[vi].2),
            });
        }
        for (ai, (id, mult, v)) in s0.arrows.iter().enumerate() {
            model.arrows.push(ArrowModel {
                id: id.clone(),
                mult: *mult,
                value: form(*v, &|s: &Snapshot| s.arrows[ai].2),
            });
        }
        Ok(model)
    }

    /// The diagram with slot `j` carrying the value `x[j]`.
    pub fn instantiate(&self, x: &[i128]) -> Result<SpliceDiagram> {
        let mut d = self.base.clone();
        for (s, &v) in self.slots.iter().zip(x) {
            let v = i64::try_from(v).map_err(|_| Error::arithmetic("decoration too large"))?;
            match &s.kind {
                SlotKind::Boundary(b) => d.add_warrow_at(&s.warrow, b, v),
                SlotKind::Doubling(a) => d.add_warrow_doubling(&s.warrow, a, v),
            };
        }
        Ok(d)
    }

    /// Allowedness read off the forms; agrees with `allowed::is_allowed` on
    /// the instantiated diagram.
    pub fn allowed_at(&self, x: &[i128]) -> bool {
        if self.fixed_zero || x.contains(&0) {
            return false;
        }
        for s in &self.stars {
            let k = s.required();
            let mut div = 0;
            let mut eq = 0;
            for l in &s.legs {
                let Some(v) = l.form.eval(x) else {
                    return false;
                };
                if v == 0 {
                    return false;
                }
                if v % l.d == 0 {
                    div += 1;
                }
                if v == l.d {
                    eq += 1;
                }
            }
            if k > 0 && div >= k && eq < k {
                return false;
            }
        }
        true
    }

    pub fn slot_index(&self, name: &str) -> Option<usize> {
        self.slots.iter().position(|s| s.name == name)
    }
}
