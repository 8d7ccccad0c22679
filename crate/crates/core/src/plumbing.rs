//! Plumbing graphs of embedded resolutions: intersection form, pullback and
//! canonical divisors, blowups, and conversion to splice diagrams.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{q, Q};
use crate::diagram::{SpliceDiagram, WArrow, WTarget};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PVertex {
    pub id: String,
    #[serde(rename = "self")]
    pub selfint: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PArrow {
    pub id: String,
    pub at: String,
    pub mult: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PlumbingGraph {
    pub name: String,
    pub vertices: Vec<PVertex>,
    pub edges: Vec<(String, String)>,
    pub farrows: Vec<PArrow>,
    pub warrows: Vec<WArrow>,
}

/// Where to blow up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locus {
    /// a general point of the curve `E_v`
    Vertex(String),
    /// the intersection point of two adjacent curves
    Edge(String, String),
    /// the point where an arrow (F-arrow or pure W-arrow) meets its curve
    Arrow(String),
}

/// Integer index over a plumbing graph.
#[derive(Clone, Debug)]
pub struct PTopo {
    pub ids: Vec<String>,
    pub index: HashMap<String, usize>,
    pub adj: Vec<Vec<usize>>,
    pub farrows_at: Vec<Vec<usize>>,
    pub pure_at: Vec<Vec<usize>>,
    pub doubling: Vec<Option<usize>>,
    pub selfint: Vec<i64>,
}

impl PTopo {
    pub fn build(g: &PlumbingGraph) -> Result<PTopo> {
        let mut index = HashMap::new();
        for (k, v) in g.vertices.iter().enumerate() {
            if index.insert(v.id.clone(), k).is_some() {
                return Err(Error::invalid(format!("duplicate vertex `{}`", v.id)));
            }
        }
        let n = g.vertices.len();
        let look = |v: &str| {
            index
                .get(v)
                .copied()
                .ok_or_else(|| Error::invalid(format!("unknown vertex `{v}`")))
        };
        let mut adj = vec![Vec::new(); n];
        for (a, b) in &g.edges {
            let (x, y) = (look(a)?, look(b)?);
            if x == y {
                return Err(Error::invalid(format!("loop at `{a}`")));
            }
            if adj[x].contains(&y) {
                return Err(Error::invalid(format!("double edge {a}-{b}")));
            }
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut farrows_at = vec![Vec::new(); n];
        let mut fidx = HashMap::new();
        for (k, a) in g.farrows.iter().enumerate() {
            farrows_at[look(&a.at)?].push(k);
            if fidx.insert(a.id.clone(), k).is_some() {
                return Err(Error::invalid(format!("duplicate arrow `{}`", a.id)));
            }
        }
        let mut pure_at = vec![Vec::new(); n];
        let mut doubling = vec![None; g.farrows.len()];
        for (k, w) in g.warrows.iter().enumerate() {
            match &w.target {
                WTarget::At(v) => pure_at[look(v)?].push(k),
                WTarget::Doubles(a) => {
                    let f = *fidx
                        .get(a)
                        .ok_or_else(|| Error::invalid(format!("unknown F-arrow `{a}`")))?;
                    if doubling[f].replace(k).is_some() {
                        return Err(Error::invalid(format!("F-arrow `{a}` doubled twice")));
                    }
                }
            }
        }
        Ok(PTopo {
            ids: g.vertices.iter().map(|v| v.id.clone()).collect(),
            index,
            adj,
            farrows_at,
            pure_at,
            doubling,
            selfint: g.vertices.iter().map(|v| v.selfint).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    /// Valency in the graph decorated by F: neighbours plus F-arrows.
    pub fn valency_f(&self, v: usize) -> usize {
        self.adj[v].len() + self.farrows_at[v].len()
    }

    /// All incidences including pure W-arrows.
    pub fn valency_all(&self, v: usize) -> usize {
        self.valency_f(v) + self.pure_at[v].len()
    }

    pub fn is_tree(&self) -> bool {
        let e: usize = self.adj.iter().map(Vec::len).sum::<usize>() / 2;
        if self.n() == 0 || e + 1 != self.n() {
            return false;
        }
        self.component(0, usize::MAX).len() == self.n()
    }

    /// Vertices reachable from `start` avoiding `blocked`.
    pub fn component(&self, start: usize, blocked: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        if blocked < self.n() {
            seen[blocked] = true;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = vec![];
        while let Some(x) = stack.pop() {
            out.push(x);
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Intersection matrix restricted to `subset`.
    pub fn matrix(&self, subset: &[usize]) -> Vec<Vec<i64>> {
        let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let m = subset.len();
        let mut a = vec![vec![0i64; m]; m];
        for (k, &v) in subset.iter().enumerate() {
            a[k][k] = self.selfint[v];
            for y in &self.adj[v] {
                if let Some(&j) = pos.get(y) {
                    a[k][j] = 1;
                }
            }
        }
        a
    }

    /// `det(-I)` on a vertex subset.
    pub fn neg_det(&self, subset: &[usize]) -> BigInt {
        let a: Vec<Vec<BigInt>> = self
            .matrix(subset)
            .into_iter()
            .map(|r| r.into_iter().map(|x| BigInt::from(-x)).collect())
            .collect();
        det(a)
    }
}

/// Determinant by fraction-free Bareiss elimination with row pivoting.
pub fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Leading principal minors of a symmetric matrix, by Bareiss without pivoting
/// (the k-th pivot equals the k-th leading minor while those stay nonzero).
fn positive_definite(mut a: Vec<Vec<BigInt>>) -> bool {
    let n = a.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    true
}

/// Solves `A x = b` exactly; `A` must be nonsingular.
pub fn solve(a: &[Vec<i64>], b: &[Q]) -> Result<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row: Vec<Q> = r.iter().map(|&x| q(x as i128)).collect();
            row.push(bi.clone());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !m[r][c].is_zero())
            .ok_or_else(|| Error::arithmetic("singular intersection matrix"))?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in c..=n {
                    let t = &f * &m[c][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlumbingReport {
    pub ok: bool,
    pub tree: bool,
    pub negative_definite: bool,
    /// `det(-I)`
    pub determinant: String,
    pub unimodular: bool,
    pub problems: Vec<String>,
}

impl PlumbingGraph {
    pub fn new(name: impl Into<String>) -> Self {
        PlumbingGraph {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn add_vertex(&mut self, id: &str, selfint: i64) -> &mut Self {
        self.vertices.push(PVertex {
            id: id.into(),
            selfint,
        });
        self
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> &mut Self {
        self.edges.push((a.into(), b.into()));
        self
    }

    pub fn add_farrow(&mut self, id: &str, at: &str, mult: i64) -> &mut Self {
        self.farrows.push(PArrow {
            id: id.into(),
            at: at.into(),
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

    pub fn ids(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.vertices.iter().map(|x| x.id.as_str()).collect();
        v.extend(self.farrows.iter().map(|a| a.id.as_str()));
        v.extend(self.warrows.iter().map(|a| a.id.as_str()));
        v
    }

    pub fn fresh_id(&self, stem: &str) -> String {
        let used = self.ids();
        (1..)
            .map(|k| format!("{stem}{k}"))
            .find(|c| !used.contains(&c.as_str()))
            .expect("infinite supply")
    }

    pub fn intersection_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let t = PTopo::build(self)?;
        let all: Vec<usize> = (0..t.n()).collect();
        Ok(t.matrix(&all))
    }

    /// `det(-I)` of the whole graph.
    pub fn determinant(&self) -> Result<BigInt> {
        let t = PTopo::build(self)?;
        let all: Vec<usize> = (0..t.n()).collect();
        Ok(t.neg_det(&all))
    }

    pub fn is_negative_definite(&self) -> Result<bool> {
        let m = self.intersection_matrix()?;
        Ok(positive_definite(
            m.into_iter()
                .map(|r| r.into_iter().map(|x| BigInt::from(-x)).collect())
                .collect(),
        ))
    }

    pub fn validate(&self) -> PlumbingReport {
        let mut problems = Vec::new();
        let t = match PTopo::build(self) {
            Ok(t) => t,
            Err(e) => {
                return PlumbingReport {
                    ok: false,
                    tree: false,
                    negative_definite: false,
                    determinant: "0".into(),
                    unimodular: false,
                    problems: vec![e.to_string()],
                }
            }
        };
        let mut ids = self.ids();
        ids.sort_unstable();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                problems.push(format!("`{}` is used twice", w[0]));
            }
        }
        let tree = t.is_tree();
        if !tree {
            problems.push("the graph is not a tree".into());
        }
        let nd = self.is_negative_definite().unwrap_or(false);
        if !nd {
            problems.push("the intersection form is not negative definite".into());
        }
        let det = self.determinant().unwrap_or_default();
        for a in &self.farrows {
            if a.mult < 0 {
                problems.push(format!("arrow {} has negative N", a.id));
            }
        }
        for w in &self.warrows {
            if matches!(w.target, WTarget::At(_)) && w.value == 0 {
                problems.push(format!("W-arrow {} has i = 0", w.id));
            }
        }
        for (k, a) in self.farrows.iter().enumerate() {
            let i = t.doubling[k].map(|j| self.warrows[j].value).unwrap_or(1);
            if a.mult == 0 && i == 0 {
                problems.push(format!("arrow {} has (N, i) = (0, 0)", a.id));
            }
        }
        PlumbingReport {
            ok: problems.is_empty(),
            tree,
            negative_definite: nd,
            unimodular: det.is_one(),
            determinant: det.to_string(),
            problems,
        }
    }

    /// Multiplicities of `pi^* F` on the exceptional curves:
    /// `sum_i n_i (E_i . E_j) + sum_{arrows at j} N_a = 0`.
    pub fn pullback(&self) -> Result<Vec<Q>> {
        let t = PTopo::build(self)?;
        let all: Vec<usize> = (0..t.n()).collect();
        let rhs: Vec<Q> = (0..t.n())
            .map(|j| {
                -t.farrows_at[j]
                    .iter()
                    .map(|&a| q(self.farrows[a].mult as i128))
                    .fold(Q::zero(), |x, y| x + y)
            })
            .collect();
        solve(&t.matrix(&all), &rhs)
    }

    /// Coefficients `k_j` of the relative canonical divisor, from adjunction
    /// `K . E_j = -2 - E_j^2`.
    pub fn canonical(&self) -> Result<Vec<Q>> {
        let t = PTopo::build(self)?;
        let all: Vec<usize> = (0..t.n()).collect();
        let rhs: Vec<Q> = (0..t.n()).map(|j| q(-2 - t.selfint[j] as i128)).collect();
        solve(&t.matrix(&all), &rhs)
    }

    /// Coefficients of `pi^* W` where each W-arrow has multiplicity `i - 1`.
    pub fn w_pullback(&self) -> Result<Vec<Q>> {
        let t = PTopo::build(self)?;
        let all: Vec<usize> = (0..t.n()).collect();
        let mut rhs = vec![Q::zero(); t.n()];
        for w in &self.warrows {
            let at = match &w.target {
                WTarget::At(v) => t.index[v],
                WTarget::Doubles(a) => {
                    let f = self.farrows.iter().position(|x| &x.id == a).unwrap();
                    t.index[&self.farrows[f].at]
                }
            };
            rhs[at] -= q(w.value as i128 - 1);
        }
        solve(&t.matrix(&all), &rhs)
    }

    /// `nu_j = k_j + w_j + 1`
    pub fn nu(&self) -> Result<Vec<Q>> {
        let k = self.canonical()?;
        let w = self.w_pullback()?;
        Ok(k.iter().zip(&w).map(|(a, b)| a + b + Q::one()).collect())
    }

    pub fn blowup(&self, at: &Locus) -> Result<PlumbingGraph> {
        let mut g = self.clone();
        let new = self.fresh_id("e");
        let bump = |g: &mut PlumbingGraph, v: &str| -> Result<()> {
            let x = g
                .vertices
                .iter_mut()
                .find(|x| x.id == v)
                .ok_or_else(|| Error::invalid(format!("unknown vertex `{v}`")))?;
            x.selfint -= 1;
            Ok(())
        };
        match at {
            Locus::Vertex(v) => {
                bump(&mut g, v)?;
                g.add_vertex(&new, -1).add_edge(v, &new);
            }
            Locus::Edge(a, b) => {
                let pos = g
                    .edges
                    .iter()
                    .position(|(x, y)| (x == a && y == b) || (x == b && y == a))
                    .ok_or_else(|| Error::invalid(format!("no edge {a}-{b}")))?;
                g.edges.remove(pos);
                bump(&mut g, a)?;
                bump(&mut g, b)?;
                g.add_vertex(&new, -1).add_edge(a, &new).add_edge(&new, b);
            }
            Locus::Arrow(id) => {
                if let Some(f) = g.farrows.iter_mut().find(|a| &a.id == id) {
                    let v = f.at.clone();
                    f.at = new.clone();
                    bump(&mut g, &v)?;
                    g.add_vertex(&new, -1).add_edge(&v, &new);
                } else if let Some(w) = g.warrows.iter_mut().find(|w| &w.id == id) {
                    let WTarget::At(v) = w.target.clone() else {
                        return Err(Error::invalid(format!(
                            "`{id}` doubles an F-arrow; blow up at that arrow instead"
                        )));
                    };
                    w.target = WTarget::At(new.clone());
                    bump(&mut g, &v)?;
                    g.add_vertex(&new, -1).add_edge(&v, &new);
                } else {
                    return Err(Error::invalid(format!("unknown arrow `{id}`")));
                }
            }
        }
        Ok(g)
    }

    /// Splice diagram of a unimodular plumbing graph. Nodes are the vertices of
    /// valency at least three once F-arrows are counted; each string leaving a
    /// node becomes an edge to another node, a leg, or an F-arrow, weighted by
    /// the determinant of the part of the graph it leads into.
    pub fn to_splice(&self) -> Result<SpliceDiagram> {
        let rep = self.validate();
        if !rep.tree {
            return Err(Error::precondition("plumbing graph is not a tree"));
        }
        if !rep.negative_definite {
            return Err(Error::precondition(
                "intersection form is not negative definite",
            ));
        }
        if !rep.unimodular {
            return Err(Error::precondition(format!(
                "det(-I) = {}; only unimodular graphs have splice diagrams",
                rep.determinant
            )));
        }
        let t = PTopo::build(self)?;
        let mut nodes: Vec<usize> = (0..t.n()).filter(|&v| t.valency_f(v) >= 3).collect();
        if nodes.is_empty() {
            let pick = (0..t.n())
                .filter(|&v| !t.farrows_at[v].is_empty())
                .min_by(|&a, &b| t.ids[a].cmp(&t.ids[b]))
                .or_else(|| (0..t.n()).min_by(|&a, &b| t.ids[a].cmp(&t.ids[b])))
                .expect("nonempty graph");
            nodes.push(pick);
        }
        let is_node: Vec<bool> = (0..t.n()).map(|v| nodes.contains(&v)).collect();
        let weight = |u: usize, first: usize| -> Result<i64> {
            let comp = t.component(first, u);
            let d = t.neg_det(&comp);
            i64::try_from(d).map_err(|_| Error::arithmetic("edge weight exceeds 64 bits"))
        };
        let mut d = SpliceDiagram::new(self.name.clone());
        let mut keep_vertex = vec![false; t.n()];
        for &u in &nodes {
            keep_vertex[u] = true;
        }
        // W-arrows attach after the vertex set is known
        let mut w_target: HashMap<usize, String> = HashMap::new();
        for &u in &nodes {
            for &a in &t.farrows_at[u] {
                let fa = &self.farrows[a];
                d.add_farrow(&fa.id, &t.ids[u], 1, fa.mult);
            }
            for &w in &t.pure_at[u] {
                w_target.insert(w, t.ids[u].clone());
            }
            for &first in &t.adj[u] {
                let (mut prev, mut cur) = (u, first);
                while !is_node[cur] && t.adj[cur].len() == 2 {
                    if !t.pure_at[cur].is_empty() {
                        return Err(Error::precondition(format!(
                            "W-arrow on `{}`, which is interior to a string",
                            t.ids[cur]
                        )));
                    }
                    let nx = if t.adj[cur][0] == prev {
                        t.adj[cur][1]
                    } else {
                        t.adj[cur][0]
                    };
                    prev = cur;
                    cur = nx;
                }
                let wu = weight(u, first)?;
                if is_node[cur] {
                    if u < cur {
                        let wc = weight(cur, prev)?;
                        d.edges.push(crate::diagram::SpliceEdge {
                            u: t.ids[u].clone(),
                            v: t.ids[cur].clone(),
                            wu,
                            wv: wc,
                        });
                    }
                } else if let Some(&a) = t.farrows_at[cur].first() {
                    if !t.pure_at[cur].is_empty() {
                        return Err(Error::precondition(format!(
                            "W-arrow on `{}`, which carries an F-arrow at the end of a string",
                            t.ids[cur]
                        )));
                    }
                    let fa = &self.farrows[a];
                    d.add_farrow(&fa.id, &t.ids[u], wu, fa.mult);
                } else {
                    keep_vertex[cur] = true;
                    d.edges.push(crate::diagram::SpliceEdge {
                        u: t.ids[u].clone(),
                        v: t.ids[cur].clone(),
                        wu,
                        wv: 1,
                    });
                    if t.pure_at[cur].len() > 1 {
                        return Err(Error::precondition(format!(
                            "several W-arrows on the end vertex `{}`",
                            t.ids[cur]
                        )));
                    }
                    for &w in &t.pure_at[cur] {
                        w_target.insert(w, t.ids[cur].clone());
                    }
                }
            }
        }
        d.vertices = (0..t.n())
            .filter(|&v| keep_vertex[v])
            .map(|v| t.ids[v].clone())
            .collect();
        for (k, w) in self.warrows.iter().enumerate() {
            match &w.target {
                WTarget::Doubles(_) => d.warrows.push(w.clone()),
                WTarget::At(_) => {
                    let v = w_target.get(&k).ok_or_else(|| {
                        Error::precondition(format!(
                            "W-arrow `{}` does not sit on a node or an end vertex",
                            w.id
                        ))
                    })?;
                    d.add_warrow_at(&w.id, v, w.value);
                }
            }
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qfrac;

    /// The E8 configuration: the resolution graph of x^2 + y^3 + z^5.
    pub fn e8() -> PlumbingGraph {
        let mut g = PlumbingGraph::new("e8");
        for k in 1..=8 {
            g.add_vertex(&format!("v{k}"), -2);
        }
        for (a, b) in [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (3, 8)] {
            g.add_edge(&format!("v{a}"), &format!("v{b}"));
        }
        g
    }

    #[test]
    fn e8_is_unimodular() {
        let g = e8();
        assert!(g.is_negative_definite().unwrap());
        assert_eq!(g.determinant().unwrap(), BigInt::one());
        let d = g.to_splice().unwrap();
        let mut ws: Vec<i64> = d.edges.iter().map(|e| e.wu).collect();
        ws.sort();
        assert_eq!(ws, vec![2, 3, 5]);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let a = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        let a: Vec<Vec<BigInt>> = a
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        assert_eq!(det(a), BigInt::from(4));
        let z = vec![
            vec![BigInt::zero(), BigInt::one()],
            vec![BigInt::one(), BigInt::zero()],
        ];
        assert_eq!(det(z), BigInt::from(-1));
    }

    #[test]
    fn blowup_keeps_determinant() {
        let g = e8();
        for l in [
            Locus::Vertex("v4".into()),
            Locus::Edge("v3".into(), "v4".into()),
        ] {
            let h = g.blowup(&l).unwrap();
            assert_eq!(h.determinant().unwrap(), BigInt::one());
            assert!(h.is_negative_definite().unwrap());
        }
    }

    #[test]
    fn single_minus_one_curve() {
        let mut g = PlumbingGraph::new("pt");
        g.add_vertex("v", -1).add_farrow("f", "v", 1);
        assert_eq!(g.pullback().unwrap(), vec![q(1)]);
        assert_eq!(g.canonical().unwrap(), vec![q(1)]);
        assert_eq!(g.nu().unwrap(), vec![q(2)]);
        let mut h = PlumbingGraph::new("lens");
        h.add_vertex("v", -2).add_farrow("f", "v", 1);
        assert_eq!(h.pullback().unwrap(), vec![qfrac(1, 2)]);
    }
}
