//! Topological zeta functions `Z_{top,0}^{(1)}(f, omega; s)` of a splice diagram
//! (via `N_v`, `nu_v` and edge determinants) and of a plumbing graph (via the
//! vertices of the resolution graph), kept as term lists so that residues can
//! be attributed to vertices.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::ratfunc::{candidate_poles, residue_of_terms};
use crate::algebra::{q, sum_terms, Lin, Pole, RatFunc, Term, Q};
use crate::diagram::{Inc, SpliceDiagram, Topo, WTarget};
use crate::divisor::{arrow_value, vertex_values_with};
use crate::error::{Error, Result};
use crate::plumbing::{PTopo, PlumbingGraph};

#[derive(Clone, Debug)]
pub struct Zeta {
    pub terms: Vec<Term>,
    pub value: RatFunc,
    /// `(vertex, nu, N)` for every vertex contributing a factor
    pub vertices: Vec<(String, Q, Q)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexPole {
    pub id: String,
    #[serde(serialize_with = "crate::algebra::ratfunc::ser_q")]
    pub candidate: Q,
}

impl Zeta {
    fn from_terms(terms: Vec<Term>, vertices: Vec<(String, Q, Q)>) -> Result<Zeta> {
        let value = sum_terms(&terms)?;
        Ok(Zeta {
            terms,
            value,
            vertices,
        })
    }

    pub fn candidates(&self) -> Vec<Q> {
        candidate_poles(&self.terms)
    }

    pub fn poles(&self) -> Result<Vec<Pole>> {
        self.value.poles_among(&self.candidates())
    }

    /// Residue at `s0` of the terms whose factor list involves `v`.
    pub fn residue_contribution(&self, v: &str, s0: &Q) -> Result<Q> {
        residue_of_terms(&self.terms, s0, |t| t.support.iter().any(|x| x == v))
    }

    /// Residue at `s0` of the terms that carry a node factor whose root is `s0`.
    pub fn residue_from_vertex_factors(&self, s0: &Q) -> Result<Q> {
        residue_of_terms(&self.terms, s0, |t| {
            t.factors.iter().any(|l| l.root().as_ref() == Some(s0))
        })
    }

    /// Vertices whose `-nu/N` equals `s0`.
    pub fn vertices_with_candidate(&self, s0: &Q) -> Vec<String> {
        self.vertices
            .iter()
            .filter(|(_, nu, n)| !n.is_zero() && &(-nu / n) == s0)
            .map(|(v, _, _)| v.clone())
            .collect()
    }
}

fn lin_i(a: i128, b: i128) -> Lin {
    Lin::new(q(a), q(b))
}

/// Zeta function of a splice diagram decorated by F and W.
pub fn zeta_splice(d: &SpliceDiagram) -> Result<Zeta> {
    let t = Topo::build(d)?;
    let vals = vertex_values_with(d, &t);
    let lv = |v: usize| lin_i(vals[v].nu, vals[v].n);
    let mut terms = Vec::new();
    let mut verts = Vec::new();
    for v in t.nodes() {
        let id = t.id(v).to_string();
        let l = lv(v);
        if l.is_identically_zero() {
            return Err(Error::precondition(format!(
                "nu and N both vanish at node `{id}`"
            )));
        }
        verts.push((id.clone(), q(vals[v].nu), q(vals[v].n)));
        terms.push(Term::new(
            format!("node {id}"),
            vec![id.clone()],
            q(2 - t.delta2(v)),
            vec![l.clone()],
        ));
        for (inc, w) in &t.inc[v] {
            match inc {
                Inc::Edge { to, .. } if t.is_leaf(*to) => {
                    let i = match t.pure_at[*to].first() {
                        Some(&k) => d.warrows[k].value as i128,
                        None => 1,
                    };
                    if i == 0 {
                        return Err(Error::precondition(format!(
                            "boundary vertex `{}` has i = 0",
                            t.id(*to)
                        )));
                    }
                    terms.push(Term::new(
                        format!("leg {id}-{}", t.id(*to)),
                        vec![id.clone()],
                        q(*w),
                        vec![l.clone(), lin_i(i, 0)],
                    ));
                }
                Inc::Edge { to, .. } => {
                    if v < *to {
                        let other = t.id(*to).to_string();
                        terms.push(Term::new(
                            format!("edge {id}-{other}"),
                            vec![id.clone(), other],
                            q(t.edge_determinant(v, *to)),
                            vec![l.clone(), lv(*to)],
                        ));
                    }
                }
                Inc::Arrow { farrow } => {
                    let a = &d.farrows[*farrow];
                    let ia = arrow_value(d, &t, *farrow);
                    if ia == 0 && a.mult == 0 {
                        return Err(Error::precondition(format!(
                            "arrow `{}` has i + sN identically zero",
                            a.id
                        )));
                    }
                    terms.push(Term::new(
                        format!("arrow {}", a.id),
                        vec![id.clone()],
                        q(*w),
                        vec![l.clone(), lin_i(ia, a.mult as i128)],
                    ));
                }
            }
        }
        for &k in &t.pure_at[v] {
            let w = &d.warrows[k];
            if w.value == 0 {
                return Err(Error::precondition(format!("W-arrow `{}` has i = 0", w.id)));
            }
            terms.push(Term::new(
                format!("warrow {}", w.id),
                vec![id.clone()],
                q(1),
                vec![l.clone(), lin_i(w.value as i128, 0)],
            ));
        }
    }
    Zeta::from_terms(terms, verts)
}

/// Zeta function from a plumbing graph; `N` and `nu` may be rational when the
/// graph is not unimodular.
pub fn zeta_plumbing(g: &PlumbingGraph) -> Result<Zeta> {
    let t = PTopo::build(g)?;
    if !g.is_negative_definite()? {
        return Err(Error::precondition(
            "intersection form is not negative definite",
        ));
    }
    let n = g.pullback()?;
    let nu = g.nu()?;
    let lv = |v: usize| Lin::new(nu[v].clone(), n[v].clone());
    let mut terms = Vec::new();
    let mut verts = Vec::new();
    for v in 0..t.n() {
        let id = t.ids[v].clone();
        let l = lv(v);
        if l.is_identically_zero() {
            return Err(Error::precondition(format!(
                "nu and N both vanish at `{id}`"
            )));
        }
        verts.push((id.clone(), nu[v].clone(), n[v].clone()));
        terms.push(Term::new(
            format!("vertex {id}"),
            vec![id.clone()],
            q(2 - t.valency_all(v) as i128),
            vec![l.clone()],
        ));
        for &y in &t.adj[v] {
            if v < y {
                terms.push(Term::new(
                    format!("edge {id}-{}", t.ids[y]),
                    vec![id.clone(), t.ids[y].clone()],
                    q(1),
                    vec![l.clone(), lv(y)],
                ));
            }
        }
        for &a in &t.farrows_at[v] {
            let fa = &g.farrows[a];
            let ia = t.doubling[a].map(|k| g.warrows[k].value).unwrap_or(1) as i128;
            if ia == 0 && fa.mult == 0 {
                return Err(Error::precondition(format!(
                    "arrow `{}` has i + sN identically zero",
                    fa.id
                )));
            }
            terms.push(Term::new(
                format!("arrow {}", fa.id),
                vec![id.clone()],
                q(1),
                vec![l.clone(), lin_i(ia, fa.mult as i128)],
            ));
        }
        for &k in &t.pure_at[v] {
            let w = &g.warrows[k];
            if w.value == 0 {
                return Err(Error::precondition(format!("W-arrow `{}` has i = 0", w.id)));
            }
            if let WTarget::At(_) = w.target {
                terms.push(Term::new(
                    format!("warrow {}", w.id),
                    vec![id.clone()],
                    q(1),
                    vec![l.clone(), lin_i(w.value as i128, 0)],
                ));
            }
        }
    }
    Zeta::from_terms(terms, verts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    #[test]
    fn smooth_point() {
        let mut g = PlumbingGraph::new("pt");
        g.add_vertex("v", -1).add_farrow("f", "v", 1);
        let z = zeta_plumbing(&g).unwrap();
        let want = RatFunc::new(Poly::one(), Poly::linear(q(1), q(1))).unwrap();
        assert_eq!(z.value, want);
        let d = g.to_splice().unwrap();
        assert_eq!(zeta_splice(&d).unwrap().value, want);
    }

    #[test]
    fn cusp_in_the_plane() {
        // x^2 = y^3: blowups give E1(-3), E2(-2), E3(-1) with the strict
        // transform on E3; Z = (4s+5) / ((s+1)(6s+5)).
        let mut g = PlumbingGraph::new("cusp");
        g.add_vertex("e1", -3)
            .add_vertex("e2", -2)
            .add_vertex("e3", -1);
        g.add_edge("e1", "e3")
            .add_edge("e2", "e3")
            .add_farrow("f", "e3", 1);
        let z = zeta_plumbing(&g).unwrap();
        let want = RatFunc::new(
            Poly::linear(q(5), q(4)),
            &Poly::linear(q(1), q(1)) * &Poly::linear(q(5), q(6)),
        )
        .unwrap();
        assert_eq!(z.value, want);
        let d = g.to_splice().unwrap();
        assert_eq!(zeta_splice(&d).unwrap().value, want);
    }
}
