use super::{Inc, SpliceDiagram, Topo, WTarget};

/// Removes weight-one legs (a W-arrow on such a leg moves onto its node) and
/// suppresses arrow-free vertices of valency two, keeping the outer weights.
/// Idempotent.
pub fn normalize(d: &SpliceDiagram) -> SpliceDiagram {
    let mut cur = d.clone();
    loop {
        let next = step(&cur);
        match next {
            Some(n) => cur = n,
            None => return cur,
        }
    }
}

fn step(d: &SpliceDiagram) -> Option<SpliceDiagram> {
    let t = Topo::build(d).ok()?;
    for x in 0..t.n() {
        if !t.is_leaf(x) || t.pure_at[x].len() > 1 {
            continue;
        }
        let (inc, wx) = t.inc[x][0];
        let Inc::Edge { edge, to: u } = inc else {
            continue;
        };
        if wx != 1 || !t.is_node(u) || t.edge_weight(u, x) != Some(1) {
            continue;
        }
        let edges_after = t.edge_count(u) - 1;
        let arrows = t.arrow_count(u);
        if (edges_after == 1 && arrows == 0) || (edges_after == 0 && arrows == 0) {
            continue;
        }
        let mut n = d.clone();
        let xid = t.id(x).to_string();
        let uid = t.id(u).to_string();
        n.edges.remove(edge);
        n.vertices.retain(|v| *v != xid);
        for w in n.warrows.iter_mut() {
            if w.target == WTarget::At(xid.clone()) {
                w.target = WTarget::At(uid.clone());
            }
        }
        return Some(n);
    }
    for m in 0..t.n() {
        if t.edge_count(m) != 2 || t.arrow_count(m) != 0 || !t.pure_at[m].is_empty() {
            continue;
        }
        let ends: Vec<(usize, usize)> = t.inc[m]
            .iter()
            .filter_map(|(i, _)| match i {
                Inc::Edge { edge, to } => Some((*edge, *to)),
                _ => None,
            })
            .collect();
        let (ea, a) = ends[0];
        let (eb, b) = ends[1];
        let wa = t.edge_weight(a, m).unwrap() as i64;
        let wb = t.edge_weight(b, m).unwrap() as i64;
        let mut n = d.clone();
        let mid = t.id(m).to_string();
        let (lo, hi) = if ea < eb { (ea, eb) } else { (eb, ea) };
        n.edges.remove(hi);
        n.edges.remove(lo);
        n.vertices.retain(|v| *v != mid);
        n.add_edge(t.id(a), t.id(b), wa, wb);
        return Some(n);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::tests::two_node;
    use super::*;

    #[test]
    fn drops_unit_legs_and_moves_their_w() {
        let mut d = two_node();
        d.add_vertex("u1").add_edge("w", "u1", 1, 1);
        d.add_vertex("u2").add_edge("v", "u2", 1, 1);
        d.add_warrow_at("x", "u2", 4);
        let n = normalize(&d);
        assert_eq!(n.vertices.len(), 6);
        assert_eq!(n.warrow("x").unwrap().target, WTarget::At("v".into()));
        assert_eq!(normalize(&n), n);
    }
}
