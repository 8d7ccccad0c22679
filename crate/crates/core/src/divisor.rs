//! Multiplicities `N_v` of the pulled-back function and the values `nu_v` of the
//! canonical divisor plus W, read off from linking numbers.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::{SpliceDiagram, Topo};
use crate::error::Result;

/// `N` and `nu` at one vertex of a splice diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexValues {
    pub id: String,
    pub node: bool,
    #[serde(rename = "N")]
    pub n: i128,
    pub nu: i128,
}

/// Value `i_a` of an F-arrow: its doubling W-arrow's value, or 1.
pub fn arrow_value(d: &SpliceDiagram, t: &Topo, farrow: usize) -> i128 {
    t.doubling[farrow]
        .map(|k| d.warrows[k].value as i128)
        .unwrap_or(1)
}

/// `N_v = sum_a N_a l_{va}`
pub fn n_at(d: &SpliceDiagram, t: &Topo, v: usize) -> i128 {
    let l = t.linking_from(v);
    d.farrows
        .iter()
        .zip(&l.la)
        .map(|(a, la)| a.mult as i128 * la)
        .sum()
}

/// `nu_v = sum_x (2 - delta_x) l_{vx} + sum_{F} l_{va} + sum_{W} (i_a - 1) l_{va}`
/// with `delta_x` counting edges and F-arrows at `x`.
pub fn nu_at(d: &SpliceDiagram, t: &Topo, v: usize) -> i128 {
    let l = t.linking_from(v);
    nu_from(d, t, &l)
}

fn nu_from(d: &SpliceDiagram, t: &Topo, l: &crate::diagram::Linking) -> i128 {
    let mut nu: i128 = (0..t.n()).map(|x| (2 - t.delta1(x)) * l.lv[x]).sum();
    nu += l.la.iter().sum::<i128>();
    for k in 0..d.warrows.len() {
        nu += (d.warrows[k].value as i128 - 1) * l.warrow(t, d, k);
    }
    nu
}

pub fn vertex_values(d: &SpliceDiagram) -> Result<Vec<VertexValues>> {
    let t = Topo::build(d)?;
    Ok(vertex_values_with(d, &t))
}

pub fn vertex_values_with(d: &SpliceDiagram, t: &Topo) -> Vec<VertexValues> {
    (0..t.n())
        .map(|v| {
            let l = t.linking_from(v);
            let n = d
                .farrows
                .iter()
                .zip(&l.la)
                .map(|(a, la)| a.mult as i128 * la)
                .sum();
            VertexValues {
                id: t.id(v).to_string(),
                node: t.is_node(v),
                n,
                nu: nu_from(d, t, &l),
            }
        })
        .collect()
}

pub fn vertex_multiplicities(d: &SpliceDiagram) -> Result<BTreeMap<String, i128>> {
    Ok(vertex_values(d)?.into_iter().map(|x| (x.id, x.n)).collect())
}

pub fn nu_values(d: &SpliceDiagram) -> Result<BTreeMap<String, i128>> {
    Ok(vertex_values(d)?
        .into_iter()
        .map(|x| (x.id, x.nu))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Legs 2, 3 and an arrow of weight 7 at one node.
    #[test]
    fn brieskorn_star() {
        let mut d = SpliceDiagram::new("s");
        d.add_vertex("v").add_vertex("a").add_vertex("b");
        d.add_edge("v", "a", 2, 1).add_edge("v", "b", 3, 1);
        d.add_farrow("f", "v", 7, 1);
        let vals = vertex_values(&d).unwrap();
        let v = &vals[0];
        assert_eq!(v.n, 6);
        assert_eq!(v.nu, -42 + 21 + 14 + 6);
    }
}
