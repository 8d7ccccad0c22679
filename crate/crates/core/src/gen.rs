//! Random and parametric families of diagrams, used by the self-check, the
//! test suites and the benches.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{validate, SpliceDiagram, WTarget};
use crate::plumbing::{Locus, PTopo, PlumbingGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct SpliceParams {
    pub max_nodes: usize,
    pub max_weight: i64,
    /// allow legs of weight one
    pub unit_legs: bool,
    pub max_mult: i64,
}

impl Default for SpliceParams {
    fn default() -> Self {
        SpliceParams {
            max_nodes: 6,
            max_weight: 13,
            unit_legs: false,
            max_mult: 3,
        }
    }
}

fn coprime_to_all(x: i64, ws: &[i64]) -> bool {
    ws.iter().all(|w| x.gcd(w) == 1)
}

fn pick_coprime<R: Rng>(rng: &mut R, lo: i64, hi: i64, taken: &[i64]) -> Option<i64> {
    if lo > hi {
        return None;
    }
    let c: Vec<i64> = (lo..=hi).filter(|&x| coprime_to_all(x, taken)).collect();
    c.choose(rng).copied()
}

/// A random valid splice diagram decorated by F (and no W). Node trees are
/// grown from a root; the weight a node carries towards its parent is chosen
/// last, large enough for a positive edge determinant.
pub fn random_splice<R: Rng>(rng: &mut R, p: &SpliceParams) -> SpliceDiagram {
    'attempt: loop {
        let k = rng.gen_range(1..=p.max_nodes);
        let parent: Vec<Option<usize>> = (0..k)
            .map(|i| {
                if i == 0 {
                    None
                } else {
                    Some(rng.gen_range(0..i))
                }
            })
            .collect();
        let mut farrows = vec![0usize; k];
        farrows[rng.gen_range(0..k)] += 1;
        for f in farrows.iter_mut() {
            if rng.gen_bool(0.2) {
                *f += 1;
            }
        }
        // weights[v]: (up weight at v, down weights at v per child, legs, farrow weights)
        let mut up = vec![0i64; k];
        let mut down: Vec<Vec<(usize, i64)>> = vec![Vec::new(); k];
        let mut legs: Vec<Vec<i64>> = vec![Vec::new(); k];
        let mut fw: Vec<Vec<i64>> = vec![Vec::new(); k];
        let children: Vec<Vec<usize>> = (0..k)
            .map(|v| (0..k).filter(|&c| parent[c] == Some(v)).collect())
            .collect();
        let small_hi = p.max_weight.min(7);
        for v in 0..k {
            let mut taken: Vec<i64> = Vec::new();
            for &c in &children[v] {
                let w = if rng.gen_bool(0.6) {
                    1
                } else {
                    match pick_coprime(rng, 2, small_hi.min(5), &taken) {
                        Some(w) => w,
                        None => continue 'attempt,
                    }
                };
                taken.push(w);
                down[v].push((c, w));
            }
            for _ in 0..farrows[v] {
                let w = if rng.gen_bool(0.6) {
                    1
                } else {
                    match pick_coprime(rng, 2, small_hi.min(5), &taken) {
                        Some(w) => w,
                        None => continue 'attempt,
                    }
                };
                taken.push(w);
                fw[v].push(w);
            }
            let have = parent[v].is_some() as usize + children[v].len() + farrows[v];
            let nlegs = 3usize.saturating_sub(have) + rng.gen_range(0..=1);
            for _ in 0..nlegs {
                let lo = if p.unit_legs && rng.gen_bool(0.15) {
                    1
                } else {
                    2
                };
                let w = match pick_coprime(rng, lo, small_hi, &taken) {
                    Some(w) => w,
                    None => continue 'attempt,
                };
                taken.push(w);
                legs[v].push(w);
            }
            if let Some(u) = parent[v] {
                let pw: i64 = taken.iter().product();
                let duw = down[u].iter().find(|(c, _)| *c == v).unwrap().1;
                let dprod: i64 = down[u].iter().map(|(_, w)| w).product::<i64>()
                    * legs[u].iter().product::<i64>()
                    * fw[u].iter().product::<i64>()
                    * if parent[u].is_some() { up[u] } else { 1 };
                let pu = dprod / duw;
                let bound = (pu * pw) / duw + 1;
                match pick_coprime(rng, bound.max(1), p.max_weight, &taken) {
                    Some(w) => up[v] = w,
                    None => continue 'attempt,
                }
            }
        }
        let mut d = SpliceDiagram::new("random");
        let name = |v: usize| format!("n{v}");
        for v in 0..k {
            d.add_vertex(name(v));
        }
        let mut leaf = 0;
        let mut arrow = 0;
        for v in 0..k {
            for &(c, w) in &down[v] {
                d.add_edge(&name(v), &name(c), w, up[c]);
            }
            for &w in &legs[v] {
                let b = format!("b{leaf}");
                leaf += 1;
                d.add_vertex(&b);
                d.add_edge(&name(v), &b, w, 1);
            }
            for &w in &fw[v] {
                let a = format!("f{arrow}");
                arrow += 1;
                d.add_farrow(&a, &name(v), w, rng.gen_range(1..=p.max_mult));
            }
        }
        if validate(&d).ok {
            return d;
        }
    }
}

/// Adds random W-arrows: pure ones on boundary vertices (and occasionally at
/// nodes), doubling ones on F-arrows. Values lie in `lo..=hi` without 0.
pub fn random_w<R: Rng>(rng: &mut R, d: &SpliceDiagram, lo: i64, hi: i64) -> SpliceDiagram {
    let t = crate::diagram::Topo::build(d).expect("valid diagram");
    let mut out = d.without_w();
    let val = |rng: &mut R| loop {
        let x = rng.gen_range(lo..=hi);
        if x != 0 {
            return x;
        }
    };
    let mut k = 0;
    for v in 0..t.n() {
        let p = if t.is_leaf(v) { 0.6 } else { 0.08 };
        if rng.gen_bool(p) {
            let x = val(rng);
            out.add_warrow_at(&format!("w{k}"), t.id(v), x);
            k += 1;
        }
    }
    for a in &d.farrows {
        if rng.gen_bool(0.3) {
            let x = val(rng);
            out.add_warrow_doubling(&format!("w{k}"), &a.id, x);
            k += 1;
        }
    }
    out
}

/// Sets every W-arrow value from `f(id)`.
pub fn with_w_values(d: &SpliceDiagram, f: impl Fn(&str) -> Option<i64>) -> SpliceDiagram {
    let mut out = d.clone();
    for w in out.warrows.iter_mut() {
        if let Some(x) = f(&w.id) {
            w.value = x;
        }
    }
    out
}

fn seed_graphs() -> Vec<PlumbingGraph> {
    let mut out = Vec::new();
    let mut g = PlumbingGraph::new("point");
    g.add_vertex("a", -1);
    out.push(g);

    let mut g = PlumbingGraph::new("e8");
    for k in 1..=8 {
        g.add_vertex(&format!("a{k}"), -2);
    }
    for (x, y) in [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (3, 8)] {
        g.add_edge(&format!("a{x}"), &format!("a{y}"));
    }
    out.push(g);

    let mut g = PlumbingGraph::new("brieskorn-2-3-7");
    g.add_vertex("c", -1)
        .add_vertex("p", -2)
        .add_vertex("q", -3)
        .add_vertex("r", -7);
    g.add_edge("c", "p").add_edge("c", "q").add_edge("c", "r");
    out.push(g);

    let mut g = crate::format::parse_plumbing(include_str!("../corpus/example.pg")).unwrap();
    g.farrows.clear();
    out.push(g);

    let mut g = crate::format::parse_plumbing(include_str!("../corpus/unimod_b_n1.pg")).unwrap();
    g.farrows.clear();
    out.push(g);

    let mut g = PlumbingGraph::new("cusp");
    g.add_vertex("a", -3)
        .add_vertex("b", -2)
        .add_vertex("c", -1);
    g.add_edge("a", "c").add_edge("b", "c");
    out.push(g);
    out
}

#[derive(Clone, Debug)]
pub struct PlumbingParams {
    pub max_arrows: usize,
    pub max_blowups: usize,
    pub max_mult: i64,
    pub with_w: bool,
}

impl Default for PlumbingParams {
    fn default() -> Self {
        PlumbingParams {
            max_arrows: 3,
            max_blowups: 3,
            max_mult: 3,
            with_w: true,
        }
    }
}

/// A random unimodular plumbing graph with arrows: a known unimodular seed,
/// random F-arrows, random blowups, then W-arrows on vertices that survive in
/// the splice diagram.
pub fn random_plumbing<R: Rng>(rng: &mut R, p: &PlumbingParams) -> PlumbingGraph {
    let seeds = seed_graphs();
    let mut g = seeds.choose(rng).unwrap().clone();
    let na = rng.gen_range(1..=p.max_arrows);
    for k in 0..na {
        let v = g.vertices.choose(rng).unwrap().id.clone();
        g.add_farrow(&format!("f{k}"), &v, rng.gen_range(1..=p.max_mult));
    }
    for _ in 0..rng.gen_range(0..=p.max_blowups) {
        let locus = match rng.gen_range(0..3) {
            0 => Locus::Vertex(g.vertices.choose(rng).unwrap().id.clone()),
            1 if !g.edges.is_empty() => {
                let (a, b) = g.edges.choose(rng).unwrap().clone();
                Locus::Edge(a, b)
            }
            _ => Locus::Arrow(g.farrows.choose(rng).unwrap().id.clone()),
        };
        g = g.blowup(&locus).expect("valid locus");
    }
    if p.with_w {
        let t = PTopo::build(&g).unwrap();
        let mut k = 0;
        for v in 0..t.n() {
            let node = t.valency_f(v) >= 3;
            let end = t.adj[v].len() <= 1 && t.farrows_at[v].is_empty();
            if (node || end) && rng.gen_bool(0.4) {
                let x = *[-2, -1, 2, 3, 4, 5].choose(rng).unwrap();
                g.add_warrow_at(&format!("w{k}"), &t.ids[v].clone(), x);
                k += 1;
            }
        }
        for a in g.farrows.clone() {
            if rng.gen_bool(0.3) {
                let x = *[-1, 2, 3, 4].choose(rng).unwrap();
                g.add_warrow_doubling(&format!("w{k}"), &a.id, x);
                k += 1;
            }
        }
        // a chain without nodes may turn an end vertex into the node, which
        // is fine; a W-arrow on a vertex that becomes interior is not
        if g.to_splice().is_err() {
            g.warrows
                .retain(|w| matches!(w.target, WTarget::Doubles(_)));
        }
    }
    g
}

/// The splice diagram of an irreducible plane curve with Puiseux data
/// `(a_k, p_k)`: nodes `v1..vr` in a chain, `v1` has legs `a_1` and `p_1`,
/// each later `v_k` has weight `a_k` towards `v_{k-1}` and a leg `p_k`, each
/// `v_k` has weight 1 towards `v_{k+1}`, and the arrow sits at `v_r`.
pub fn staircase(pairs: &[(i64, i64)], mult: i64) -> SpliceDiagram {
    let mut d = SpliceDiagram::new("staircase");
    let r = pairs.len();
    for k in 1..=r {
        d.add_vertex(format!("v{k}")).add_vertex(format!("u{k}"));
    }
    d.add_vertex("x1");
    d.add_edge("v1", "x1", pairs[0].0, 1);
    for (k, &(a, p)) in pairs.iter().enumerate() {
        let v = format!("v{}", k + 1);
        d.add_edge(&v, &format!("u{}", k + 1), p, 1);
        if k > 0 {
            d.add_edge(&format!("v{k}"), &v, 1, a);
        }
    }
    d.add_farrow("f", &format!("v{r}"), 1, mult);
    d
}

/// Random Puiseux data of length `r`: `a_{k+1} > a_k p_k p_{k+1}`, coprime pairs.
pub fn random_staircase_pairs<R: Rng>(rng: &mut R, r: usize) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::new();
    for k in 0..r {
        let p = rng.gen_range(2..=5);
        let a = if k == 0 {
            pick_coprime(rng, 2, 7, &[p]).unwrap()
        } else {
            let (ap, pp) = out[k - 1];
            let lo = ap * pp * p + 1;
            pick_coprime(rng, lo, lo + 6, &[p]).unwrap()
        };
        out.push((a, p));
    }
    out
}

/// Random minimal diagrams (all leg weights at least 2) without W that pass
/// the semigroup condition.
pub fn random_semigroup_minimal<R: Rng>(rng: &mut R, p: &SpliceParams) -> SpliceDiagram {
    let p = SpliceParams {
        unit_legs: false,
        ..p.clone()
    };
    loop {
        let d = random_splice(rng, &p);
        if crate::allowed::semigroup_condition(&d)
            .map(|r| r.ok)
            .unwrap_or(false)
        {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_diagrams_are_valid() {
        let mut r = rng(7);
        for _ in 0..200 {
            let d = random_splice(&mut r, &SpliceParams::default());
            assert!(validate(&d).ok);
            let w = random_w(&mut r, &d, -4, 6);
            assert!(validate(&w).ok, "{}", validate(&w).summary());
        }
    }

    #[test]
    fn generated_plumbing_is_unimodular() {
        let mut r = rng(11);
        for _ in 0..100 {
            let g = random_plumbing(&mut r, &PlumbingParams::default());
            let rep = g.validate();
            assert!(rep.ok && rep.unimodular, "{:?}", rep);
            g.to_splice().unwrap();
        }
    }

    #[test]
    fn staircase_is_valid() {
        let mut r = rng(3);
        for n in 1..=3 {
            let d = staircase(&random_staircase_pairs(&mut r, n), 1);
            assert!(validate(&d).ok, "{}", validate(&d).summary());
        }
    }

    #[test]
    fn normalize_keeps_zeta() {
        let mut r = rng(5);
        let p = SpliceParams {
            unit_legs: true,
            ..Default::default()
        };
        let mut changed = 0;
        for _ in 0..300 {
            let d = random_splice(&mut r, &p);
            let d = random_w(&mut r, &d, -3, 5);
            let n = crate::diagram::normalize(&d);
            if n.vertices.len() == d.vertices.len() {
                continue;
            }
            changed += 1;
            if let Ok(a) = crate::zeta::zeta_splice(&d) {
                assert_eq!(a.value, crate::zeta::zeta_splice(&n).unwrap().value);
            }
        }
        assert!(changed > 10);
        for (x, y) in [(1, 1), (1, 2), (2, 3), (5, 1)] {
            let mut d = SpliceDiagram::new("m");
            for v in ["n0", "m", "n1", "a", "b", "c"] {
                d.add_vertex(v);
            }
            d.add_edge("n0", "a", 2, 1)
                .add_edge("n0", "b", 3, 1)
                .add_edge("n0", "m", 1, x)
                .add_edge("m", "n1", y, 11)
                .add_edge("n1", "c", 5, 1)
                .add_farrow("f", "n1", 1, 1);
            let n = crate::diagram::normalize(&d);
            assert_eq!(n.vertices.len(), 5);
            assert_eq!(
                crate::zeta::zeta_splice(&d).unwrap().value,
                crate::zeta::zeta_splice(&n).unwrap().value
            );
        }
    }
}
