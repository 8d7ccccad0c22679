//! Monodromy zeta function (A'Campo's formula), characteristic polynomials,
//! the one-variable Alexander polynomial, and the eigenvalue set `Eig`.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::algebra::{CycloProduct, UnityRoot};
use crate::diagram::{SpliceDiagram, Topo};
use crate::divisor::vertex_values_with;
use crate::error::{Error, Result};
use crate::plumbing::{PTopo, PlumbingGraph};

/// Monodromy data of a germ given by its diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monodromy {
    pub zeta: CycloProduct,
    /// `Delta_0 = t^gcd(N_a) - 1`
    pub delta0: CycloProduct,
    pub delta1: CycloProduct,
    pub alexander: CycloProduct,
    pub arrow_mults: Vec<u64>,
}

impl Monodromy {
    fn assemble(zeta: CycloProduct, arrow_mults: Vec<u64>) -> Monodromy {
        let g = arrow_mults.iter().fold(0u64, |a, b| a.gcd(b));
        let delta0 = CycloProduct::factor(g, 1);
        let delta1 = zeta.mul(&delta0);
        let alexander = if arrow_mults.len() >= 2 {
            zeta.clone()
        } else {
            delta1.clone()
        };
        Monodromy {
            zeta,
            delta0,
            delta1,
            alexander,
            arrow_mults,
        }
    }

    /// `lambda` is a root of `Delta_1` or a root of `t^{N_a} - 1` for some arrow.
    pub fn eig_contains(&self, l: &UnityRoot) -> bool {
        self.delta1.root_multiplicity(l) > 0 || self.arrow_mults.iter().any(|&n| l.is_root_of(n))
    }

    /// All of `Eig`, as reduced fractions `p/q`.
    pub fn eigenvalues(&self) -> Vec<UnityRoot> {
        let mut qs = self.delta1.candidate_orders();
        for &n in &self.arrow_mults {
            qs.extend(CycloProduct::factor(n, 1).candidate_orders());
        }
        qs.sort_unstable();
        qs.dedup();
        let mut out = Vec::new();
        for q in qs {
            for p in 0..q {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let l = UnityRoot { p, q };
                if self.eig_contains(&l) {
                    out.push(l);
                }
            }
        }
        out
    }
}

fn check_f(mults: impl Iterator<Item = i64>) -> Result<Vec<u64>> {
    let v: Vec<i64> = mults.collect();
    if v.is_empty() {
        return Err(Error::precondition("F has no arrows"));
    }
    if v.iter().any(|&n| n < 1) {
        return Err(Error::precondition(
            "monodromy needs every F-arrow multiplicity to be positive",
        ));
    }
    Ok(v.into_iter().map(|n| n as u64).collect())
}

/// `zeta(t) = prod_v (t^{N_v} - 1)^{delta_v - 2}` over all vertices of the
/// splice diagram.
pub fn monodromy(d: &SpliceDiagram) -> Result<Monodromy> {
    let mults = check_f(d.farrows.iter().map(|a| a.mult))?;
    let t = Topo::build(d)?;
    let vals = vertex_values_with(d, &t);
    let mut z = CycloProduct::one();
    for v in 0..t.n() {
        let n = vals[v].n;
        if n < 1 {
            return Err(Error::precondition(format!("N = {n} at `{}`", t.id(v))));
        }
        z.push(n as u64, (t.delta1(v) - 2) as i64);
    }
    Ok(Monodromy::assemble(z, mults))
}

/// Same formula over the vertices of a plumbing graph; the multiplicities must
/// come out integral.
pub fn monodromy_plumbing(g: &PlumbingGraph) -> Result<Monodromy> {
    let mults = check_f(g.farrows.iter().map(|a| a.mult))?;
    let t = PTopo::build(g)?;
    let n = g.pullback()?;
    let mut z = CycloProduct::one();
    for (v, nv) in n.iter().enumerate() {
        if !nv.is_integer() || !nv.is_positive() {
            return Err(Error::precondition(format!(
                "multiplicity {} at `{}` is not a positive integer",
                crate::algebra::fmt_q(nv),
                t.ids[v]
            )));
        }
        let nv = nv
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::arithmetic("multiplicity too large"))?;
        z.push(nv, t.valency_f(v) as i64 - 2);
    }
    Ok(Monodromy::assemble(z, mults))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntPoly;
    use crate::format::{parse_plumbing, parse_splice};

    #[test]
    fn example_alexander() {
        let d = parse_splice(include_str!("../corpus/example.sd")).unwrap();
        let m = monodromy(&d).unwrap();
        assert_eq!(
            m.alexander.expand().unwrap(),
            IntPoly::from_i64(&[1, -2, 3, -2, 1])
        );
        assert!(m.eig_contains(&UnityRoot::new(1, 6).unwrap()));
        assert!(!m.eig_contains(&UnityRoot::new(1, 2).unwrap()));
        assert_eq!(m.eigenvalues().len(), 3);
    }

    #[test]
    fn plumbing_and_splice_agree() {
        let g = parse_plumbing(include_str!("../corpus/example.pg")).unwrap();
        let a = monodromy_plumbing(&g).unwrap();
        let b = monodromy(&g.to_splice().unwrap()).unwrap();
        assert_eq!(a.delta1.expand().unwrap(), b.delta1.expand().unwrap());
    }
}
