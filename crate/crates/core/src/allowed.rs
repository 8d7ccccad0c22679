//! Allowed divisors W (star-wise divisibility implications after full splice
//! decomposition) and the semigroup condition on `Gamma(F)`.

use serde::Serialize;

use crate::algebra::{ser_q, UnityRoot, Q};
use crate::diagram::{Inc, SpliceDiagram, Topo, WTarget};
use crate::error::{Error, Result};
use crate::monodromy::monodromy;
use crate::splice::stars;
use crate::zeta::zeta_splice;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Leg {
    pub label: String,
    pub d: i128,
    pub i: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarVerdict {
    pub node: String,
    pub legs: Vec<Leg>,
    /// F-arrows in the star (own and induced)
    pub arrows: usize,
    /// `n + r - 2`
    pub required: i64,
    pub divisible: usize,
    pub equal: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AllowedReport {
    pub allowed: bool,
    pub stars: Vec<StarVerdict>,
    /// W-arrows with value 0
    pub zero_values: Vec<String>,
}

impl AllowedReport {
    pub fn failing(&self) -> Vec<&StarVerdict> {
        self.stars.iter().filter(|s| !s.ok).collect()
    }
}

/// The star test: with `k = n + r - 2`, if `d | i` for at least `k` legs then
/// `i = d` for at least `k` legs. Vacuous for `k <= 0` or `n = 0`.
/// Returns `(ok, #divisible, #equal)`.
pub fn star_test(legs: &[(i128, i128)], arrows: usize) -> (bool, usize, usize) {
    let n = legs.len();
    let k = n as i64 + arrows as i64 - 2;
    let div = legs.iter().filter(|(d, i)| i % d == 0).count();
    let eq = legs.iter().filter(|(d, i)| d == i).count();
    if k <= 0 || n == 0 {
        return (true, div, eq);
    }
    let ok = (div as i64) < k || (eq as i64) >= k;
    (ok, div, eq)
}

/// Legs of a star diagram: boundary vertices, and pure W-arrows at the node
/// (weight one).
pub fn star_legs(s: &SpliceDiagram) -> Result<(String, Vec<Leg>, usize)> {
    let t = Topo::build(s)?;
    let nodes = t.nodes();
    if nodes.len() != 1 {
        return Err(Error::invalid("not a star-shaped diagram"));
    }
    let w = nodes[0];
    let mut legs = Vec::new();
    let mut arrows = 0;
    for (inc, dx) in &t.inc[w] {
        match inc {
            Inc::Edge { to, .. } => {
                let i = t.pure_at[*to]
                    .first()
                    .map(|&k| s.warrows[k].value as i128)
                    .unwrap_or(1);
                legs.push(Leg {
                    label: t.id(*to).to_string(),
                    d: *dx,
                    i,
                });
            }
            Inc::Arrow { .. } => arrows += 1,
        }
    }
    for &k in &t.pure_at[w] {
        legs.push(Leg {
            label: s.warrows[k].id.clone(),
            d: 1,
            i: s.warrows[k].value as i128,
        });
    }
    Ok((t.id(w).to_string(), legs, arrows))
}

pub fn star_verdict(s: &SpliceDiagram) -> Result<StarVerdict> {
    let (node, legs, arrows) = star_legs(s)?;
    let pairs: Vec<(i128, i128)> = legs.iter().map(|l| (l.d, l.i)).collect();
    let (ok, divisible, equal) = star_test(&pairs, arrows);
    Ok(StarVerdict {
        node,
        required: legs.len() as i64 + arrows as i64 - 2,
        legs,
        arrows,
        divisible,
        equal,
        ok,
    })
}

pub fn is_allowed(d: &SpliceDiagram) -> Result<AllowedReport> {
    let mut zero_values: Vec<String> = d
        .warrows
        .iter()
        .filter(|w| matches!(w.target, WTarget::At(_)) && w.value == 0)
        .map(|w| w.id.clone())
        .collect();
    let mut verdicts = Vec::new();
    for (_, s) in stars(d)? {
        let v = star_verdict(&s)?;
        for l in &v.legs {
            if l.i == 0 && !zero_values.contains(&l.label) {
                zero_values.push(l.label.clone());
            }
        }
        verdicts.push(v);
    }
    Ok(AllowedReport {
        allowed: zero_values.is_empty() && verdicts.iter().all(|v| v.ok),
        stars: verdicts,
        zero_values,
    })
}

/// Membership of `target` in the numerical semigroup generated by `gens`.
pub fn in_semigroup(target: u64, gens: &[u64]) -> bool {
    if target == 0 {
        return true;
    }
    let gens: Vec<u64> = gens
        .iter()
        .copied()
        .filter(|&g| g > 0 && g <= target)
        .collect();
    if gens.contains(&1) || gens.iter().any(|g| target.is_multiple_of(*g)) {
        return true;
    }
    let n = target as usize;
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for x in 1..=n {
        reach[x] = gens
            .iter()
            .any(|&g| (g as usize) <= x && reach[x - g as usize]);
    }
    reach[n]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemigroupCheck {
    pub node: String,
    pub toward: String,
    /// weight `d_ve` of the edge at the node
    pub target: i128,
    /// `l_{vw} / (product of the other weights at v)` for boundary `w` on that side
    pub generators: Vec<i128>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemigroupReport {
    pub ok: bool,
    pub checks: Vec<SemigroupCheck>,
}

/// For every node `v` and edge `e` at `v` leading to another node, whose side
/// carries no F-arrow: `d_v` lies in the semigroup generated by the `l_{vw}`,
/// `w` boundary on that side. Checked in the equivalent reduced form
/// `d_ve in S<l_{vw} d_ve / d_v>`. W is ignored.
pub fn semigroup_condition(d: &SpliceDiagram) -> Result<SemigroupReport> {
    let t = Topo::build(d)?;
    let mut checks = Vec::new();
    for v in t.nodes() {
        let link = t.linking_from(v);
        let dv = t.dv(v);
        for y in t.neighbors(v).collect::<Vec<_>>() {
            if t.is_leaf(y) {
                continue;
            }
            let side = t.side(y, v);
            let has_f = t.farrow_at.iter().any(|x| side.contains(x));
            if has_f {
                continue;
            }
            let dve = t.edge_weight(v, y).unwrap();
            let other = dv / dve;
            let gens: Vec<i128> = side
                .iter()
                .filter(|&&w| t.is_leaf(w))
                .map(|&w| link.lv[w] / other)
                .collect();
            let g64: Vec<u64> = gens.iter().map(|&g| g as u64).collect();
            let ok = in_semigroup(dve as u64, &g64);
            checks.push(SemigroupCheck {
                node: t.id(v).to_string(),
                toward: t.id(y).to_string(),
                target: dve,
                generators: gens,
                ok,
            });
        }
    }
    Ok(SemigroupReport {
        ok: checks.iter().all(|c| c.ok),
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleEig {
    #[serde(serialize_with = "ser_q")]
    pub at: Q,
    pub order: usize,
    #[serde(serialize_with = "ser_q")]
    pub leading: Q,
    /// `exp(2 pi i s0)`
    pub lambda: UnityRoot,
    pub in_eig: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Goal1Report {
    pub allowed: bool,
    pub poles: Vec<PoleEig>,
    /// every pole induces an eigenvalue
    pub holds: bool,
}

impl Goal1Report {
    pub fn violations(&self) -> Vec<&PoleEig> {
        self.poles.iter().filter(|p| !p.in_eig).collect()
    }
}

/// Maps every pole of the reduced zeta function to `exp(2 pi i s0)` and
/// checks membership in `Eig`. W need not be allowed; the verdict is
/// reported alongside.
pub fn check_goal1(d: &SpliceDiagram) -> Result<Goal1Report> {
    let mono = monodromy(&d.without_w())?;
    let allowed = is_allowed(d)?.allowed;
    let mut poles = Vec::new();
    for p in zeta_splice(d)?.poles()? {
        let lambda = UnityRoot::from_rational(&p.at)?;
        poles.push(PoleEig {
            in_eig: mono.eig_contains(&lambda),
            at: p.at,
            order: p.order,
            leading: p.leading,
            lambda,
        });
    }
    Ok(Goal1Report {
        allowed,
        holds: poles.iter().all(|p| p.in_eig),
        poles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_splice;

    #[test]
    fn semigroup_membership() {
        assert!(!in_semigroup(1, &[2, 3]));
        assert!(in_semigroup(7, &[2, 5]));
        assert!(!in_semigroup(3, &[2, 5]));
        assert!(in_semigroup(0, &[]));
        assert!(!in_semigroup(5, &[]));
    }

    #[test]
    fn example_fails_semigroup_at_centre() {
        let d = parse_splice(include_str!("../corpus/example.sd")).unwrap();
        let r = semigroup_condition(&d).unwrap();
        assert!(!r.ok);
        assert!(r.checks.iter().filter(|c| !c.ok).all(|c| c.node == "v0"));
    }

    #[test]
    fn example_w0_not_allowed() {
        let d = parse_splice(include_str!("../corpus/example.sd")).unwrap();
        let r = is_allowed(&d).unwrap();
        assert!(!r.allowed);
        assert_eq!(
            r.failing()
                .iter()
                .map(|s| s.node.as_str())
                .collect::<Vec<_>>(),
            vec!["v0"]
        );
    }

    #[test]
    fn star_test_cases() {
        assert!(star_test(&[(2, 2), (3, 1)], 1).0);
        assert!(!star_test(&[(2, 4), (3, 1)], 1).0);
        assert!(star_test(&[(2, 1), (3, 1)], 1).0);
        assert!(star_test(&[(2, 4)], 1).0);
    }

    #[test]
    fn goal1_flags_the_half_pole() {
        // i1 = 1, i2 = 6, i1' = i2' = 1: not allowed, pole -57/6 induces -1
        let mut d = parse_splice(include_str!("../corpus/example.sd")).unwrap();
        for (v, i) in [("l1", 1), ("u1", 6), ("l1p", 1), ("u1p", 1)] {
            d.add_warrow_at(&format!("w{v}"), v, i);
        }
        let r = check_goal1(&d).unwrap();
        assert!(!r.allowed && !r.holds);
        let bad = r.violations();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].at, crate::algebra::qfrac(-57, 6));
        assert_eq!(bad[0].lambda, UnityRoot { p: 1, q: 2 });
    }

    #[test]
    fn goal1_holds_for_w0_on_the_example() {
        let d = parse_splice(include_str!("../corpus/example.sd")).unwrap();
        let r = check_goal1(&d).unwrap();
        assert!(!r.allowed && r.holds && !r.poles.is_empty());
    }
}
