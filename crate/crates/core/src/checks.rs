//! Randomized and exhaustive property suites. Cases are generated
//! sequentially from a seed and checked through [`Exec`], so parallel and
//! sequential runs see the same cases and report the same failures.

use std::time::Instant;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{q, qfrac, IntPoly, Poly, RatFunc, UnityRoot, Q};
use crate::allowed::{check_goal1, in_semigroup, is_allowed, semigroup_condition};
use crate::diagram::{SpliceDiagram, Topo};
use crate::divisor::vertex_values;
use crate::gen::{self, PlumbingParams, SpliceParams};
use crate::monodromy::monodromy;
use crate::parallel::Exec;
use crate::plumbing::{Locus, PlumbingGraph};
use crate::realize::{realize_eigenvalue, RealizeOptions};
use crate::splice::split_edge;
use crate::zeta::{zeta_plumbing, zeta_splice};

/// Failures kept verbatim in a report.
const KEEP: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    /// the first few failures
    pub failures: Vec<String>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    fn collect(name: &str, start: Instant, results: Vec<Option<String>>) -> SuiteReport {
        let cases = results.len();
        let bad: Vec<String> = results.into_iter().flatten().collect();
        SuiteReport {
            name: name.to_string(),
            cases,
            failed: bad.len(),
            failures: bad.into_iter().take(KEEP).collect(),
            millis: start.elapsed().as_millis(),
        }
    }
}

fn node_edges(d: &SpliceDiagram) -> Vec<(String, String)> {
    let Ok(t) = Topo::build(d) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for v in t.nodes() {
        for u in t.neighbors(v) {
            if t.is_node(u) && t.id(v) < t.id(u) {
                out.push((t.id(v).to_string(), t.id(u).to_string()));
            }
        }
    }
    out
}

/// `Z(G) = Z(G_L) + Z(G_R) - 1/((i + sM)(i' + sM'))` across every edge
/// between nodes of random decorated diagrams.
pub fn splice_formula(n: usize, seed: u64, exec: Exec) -> SuiteReport {
    let start = Instant::now();
    let mut rng = gen::rng(seed);
    let cases: Vec<SpliceDiagram> = (0..n)
        .map(|_| {
            let d = gen::random_splice(&mut rng, &SpliceParams::default());
            gen::random_w(&mut rng, &d, -4, 6)
        })
        .collect();
    let res = exec.map(cases, |d| {
        let z = match zeta_splice(&d) {
            Ok(z) => z.value,
            Err(e) => return Some(format!("{}: {e}", d.name)),
        };
        for (a, b) in node_edges(&d) {
            let s = match split_edge(&d, &a, &b) {
                Ok(s) => s,
                Err(e) => return Some(format!("{} {a}:{b}: {e}", d.name)),
            };
            let sum = zeta_splice(&s.left)
                .and_then(|l| zeta_splice(&s.right).map(|r| l.value.add(&r.value)))
                .and_then(|x| s.correction().map(|c| x.sub(&c)));
            match sum {
                Ok(x) if x == z => {}
                Ok(_) => return Some(format!("{} {a}:{b}: splice formula fails", d.name)),
                Err(e) => return Some(format!("{} {a}:{b}: {e}", d.name)),
            }
        }
        None
    });
    SuiteReport::collect("splice formula", start, res)
}

/// `Lambda(G) = Lambda(G_L) Lambda(G_R)` as expanded polynomials across every
/// special edge, and `Lambda` is a polynomial.
pub fn alexander_multiplicativity(n: usize, seed: u64, exec: Exec) -> SuiteReport {
    let start = Instant::now();
    let mut rng = gen::rng(seed);
    let cases: Vec<SpliceDiagram> = (0..n)
        .map(|_| gen::random_splice(&mut rng, &SpliceParams::default()))
        .collect();
    let res = exec.map(cases, |d| {
        let check = || -> crate::Result<Option<String>> {
            let t = Topo::build(&d)?;
            let whole = monodromy(&d)?.alexander;
            if !whole.is_polynomial() {
                return Ok(Some(format!("{}: Alexander is not a polynomial", d.name)));
            }
            let whole = whole.expand()?;
            for (v, w) in t.special_edges() {
                let s = split_edge(&d, t.id(v), t.id(w))?;
                let l = monodromy(&s.left.without_w())?.alexander.expand()?;
                let r = monodromy(&s.right.without_w())?.alexander.expand()?;
                if l.mul(&r) != whole {
                    return Ok(Some(format!(
                        "{} {}:{}: product differs",
                        d.name,
                        t.id(v),
                        t.id(w)
                    )));
                }
            }
            Ok(None)
        };
        check().unwrap_or_else(|e| Some(format!("{}: {e}", d.name)))
    });
    SuiteReport::collect("alexander multiplicativity", start, res)
}

/// Random allowed decorations: every pole of the reduced zeta function
/// induces an eigenvalue.
pub fn goal1(n: usize, seed: u64, exec: Exec) -> SuiteReport {
    let start = Instant::now();
    let mut rng = gen::rng(seed);
    let mut cases = Vec::with_capacity(n);
    let p = SpliceParams::default();
    while cases.len() < n {
        let d = if rng.gen_bool(0.5) {
            gen::random_splice(&mut rng, &p)
        } else {
            gen::random_semigroup_minimal(&mut rng, &p)
        };
        for _ in 0..20 {
            let w = if rng.gen_bool(0.15) {
                d.clone()
            } else {
                gen::random_w(&mut rng, &d, -4, 8)
            };
            if is_allowed(&w).map(|r| r.allowed).unwrap_or(false) {
                cases.push(w);
                break;
            }
        }
    }
    let res = exec.map(cases, |d| match check_goal1(&d) {
        Ok(r) if r.holds => None,
        Ok(r) => Some(format!(
            "{}: poles {} do not induce eigenvalues",
            d.name,
            r.violations()
                .iter()
                .map(|p| crate::algebra::fmt_q(&p.at))
                .collect::<Vec<_>>()
                .join(", ")
        )),
        Err(e) => Some(format!("{}: {e}", d.name)),
    });
    SuiteReport::collect("goal (1) on allowed divisors", start, res)
}

fn plumbing_case(g: &PlumbingGraph, blowup: &Locus) -> crate::Result<Option<String>> {
    let d = g.to_splice()?;
    let zp = zeta_plumbing(g)?.value;
    let zs = zeta_splice(&d)?.value;
    if zp != zs {
        return Ok(Some(format!("{}: plumbing and splice zeta differ", g.name)));
    }
    let n = g.pullback()?;
    let nu = g.nu()?;
    let values = vertex_values(&d)?;
    for x in &values {
        let k = g.vertices.iter().position(|v| v.id == x.id);
        let Some(k) = k else {
            return Ok(Some(format!(
                "{}: splice vertex {} missing in the graph",
                g.name, x.id
            )));
        };
        if n[k] != Q::from_integer(x.n.into()) || (x.node && nu[k] != Q::from_integer(x.nu.into()))
        {
            return Ok(Some(format!(
                "{}: at {} linking gives (N, nu) = ({}, {}), linear algebra ({}, {})",
                g.name, x.id, x.n, x.nu, n[k], nu[k]
            )));
        }
    }
    let b = g.blowup(blowup)?;
    if zeta_plumbing(&b)?.value != zp {
        return Ok(Some(format!(
            "{}: blowup at {blowup:?} changes zeta",
            g.name
        )));
    }
    // a W-arrow pushed into the interior of a string has no splice form
    let db = match b.to_splice() {
        Err(crate::Error::Precondition(_)) => return Ok(None),
        r => r?,
    };
    if zeta_splice(&db)?.value != zs {
        return Ok(Some(format!(
            "{}: blowup at {blowup:?} changes the splice zeta",
            g.name
        )));
    }
    if is_allowed(&db)?.allowed != is_allowed(&d)?.allowed {
        return Ok(Some(format!(
            "{}: blowup at {blowup:?} changes allowedness",
            g.name
        )));
    }
    Ok(None)
}

/// Random unimodular plumbing graphs: the zeta function, `N` (at every
/// vertex) and `nu` (at nodes) agree between the plumbing and splice routes, and a blowup changes neither the
/// zeta function nor the allowedness verdict.
pub fn plumbing_equivalence(n: usize, seed: u64, exec: Exec) -> SuiteReport {
    let start = Instant::now();
    let mut rng = gen::rng(seed);
    let cases: Vec<(PlumbingGraph, Locus)> = (0..n)
        .map(|_| {
            let g = gen::random_plumbing(&mut rng, &PlumbingParams::default());
            let locus = match rng.gen_range(0..3) {
                0 => Locus::Vertex(g.vertices.choose(&mut rng).unwrap().id.clone()),
                1 if !g.edges.is_empty() => {
                    let e = g.edges.choose(&mut rng).unwrap();
                    Locus::Edge(e.0.clone(), e.1.clone())
                }
                _ => Locus::Arrow(g.farrows.choose(&mut rng).unwrap().id.clone()),
            };
            (g, locus)
        })
        .collect();
    let res = exec.map(cases, |(g, l)| {
        plumbing_case(&g, &l).unwrap_or_else(|e| Some(format!("{}: {e}", g.name)))
    });
    SuiteReport::collect("plumbing and splice routes", start, res)
}

fn pairwise_coprime_tuples(max: i128, len: usize) -> Vec<Vec<i128>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(max: i128, len: usize, from: i128, cur: &mut Vec<i128>, out: &mut Vec<Vec<i128>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in from..=max {
            if cur.iter().all(|y: &i128| y.gcd(&x) == 1) {
                cur.push(x);
                rec(max, len, x, cur, out);
                cur.pop();
            }
        }
    }
    rec(max, len, 1, &mut cur, &mut out);
    out
}

/// Positive solutions of `sum m_j D/d_j = target`.
fn positive_solution(ds: &[i128], big_d: i128, target: i128) -> Option<Vec<i128>> {
    fn rec(cs: &[i128], rest: i128, acc: &mut Vec<i128>) -> bool {
        match cs.split_first() {
            None => rest == 0,
            Some((&c, tail)) => {
                let mut m = 1;
                while m * c <= rest {
                    acc.push(m);
                    if rec(tail, rest - m * c, acc) {
                        return true;
                    }
                    acc.pop();
                    m += 1;
                }
                false
            }
        }
    }
    let cs: Vec<i128> = ds.iter().map(|d| big_d / d).collect();
    let mut acc = Vec::new();
    rec(&cs, target, &mut acc).then_some(acc)
}

/// For pairwise coprime `d_1..d_n` (each at most `max`, `n <= max_n`) with
/// product `D`: (a) `sum m_j D/d_j = (n-1) D` has no positive solution;
/// (b) a divisor `d > 0` of `D` in the semigroup generated by the `D/d_j`
/// is divisible by some `D/d_j`.
pub fn coprime_lemma(max: i128, max_n: usize, exec: Exec) -> SuiteReport {
    let start = Instant::now();
    let cases: Vec<Vec<i128>> = (1..=max_n)
        .flat_map(|n| pairwise_coprime_tuples(max, n))
        .collect();
    let res = exec.map(cases, |ds| {
        let n = ds.len() as i128;
        let big_d: i128 = ds.iter().product();
        if let Some(m) = positive_solution(&ds, big_d, (n - 1) * big_d) {
            return Some(format!("{ds:?}: positive solution {m:?} of (a)"));
        }
        let gens: Vec<u64> = ds.iter().map(|d| (big_d / d) as u64).collect();
        for d in (1..=big_d).filter(|d| big_d % d == 0) {
            if in_semigroup(d as u64, &gens) && !gens.iter().any(|&g| d % g as i128 == 0) {
                return Some(format!("{ds:?}: divisor {d} violates (b)"));
            }
        }
        None
    });
    SuiteReport::collect("coprime lemma (a), (b)", start, res)
}

/// Minimal diagrams passing the semigroup condition: across every edge
/// between nodes whose far side carries no F-arrow, the induced value `i'`
/// is negative and not divisible by the weight `d'` at the near node.
pub fn induced_negative(n: usize, seed: u64, exec: Exec) -> SuiteReport {
    let start = Instant::now();
    let mut rng = gen::rng(seed);
    let cases: Vec<SpliceDiagram> = (0..n)
        .map(|_| gen::random_semigroup_minimal(&mut rng, &SpliceParams::default()))
        .collect();
    let res = exec.map(cases, |d| {
        let check = || -> crate::Result<Option<String>> {
            let t = Topo::build(&d)?;
            for (a, b) in node_edges(&d) {
                for (near, far) in [(&b, &a), (&a, &b)] {
                    let s = split_edge(&d, far, near)?;
                    if s.into_right.has_f {
                        continue;
                    }
                    let ip = s.into_right.i;
                    let dp = t
                        .edge_weight(t.vertex(near).unwrap(), t.vertex(far).unwrap())
                        .unwrap();
                    if ip >= 0 || ip % dp == 0 {
                        return Ok(Some(format!(
                            "{}: i' = {ip}, d' = {dp} at {near} from {far}",
                            d.name
                        )));
                    }
                }
            }
            Ok(None)
        };
        check().unwrap_or_else(|e| Some(format!("{}: {e}", d.name)))
    });
    SuiteReport::collect("induced value across arrow-free sides", start, res)
}

/// W = 0 is allowed on minimal diagrams passing the semigroup condition and
/// on plane-curve staircases.
pub fn w0_allowed(n: usize, seed: u64, exec: Exec) -> SuiteReport {
    let start = Instant::now();
    let mut rng = gen::rng(seed);
    let mut cases: Vec<SpliceDiagram> = (0..n)
        .map(|_| gen::random_semigroup_minimal(&mut rng, &SpliceParams::default()))
        .collect();
    for k in 0..n {
        let pairs = gen::random_staircase_pairs(&mut rng, 1 + k % 3);
        cases.push(gen::staircase(&pairs, rng.gen_range(1..=3)));
    }
    let res = exec.map(cases, |d| {
        let check = || -> crate::Result<Option<String>> {
            if !semigroup_condition(&d)?.ok {
                return Ok(Some(format!("{}: semigroup condition fails", d.name)));
            }
            let r = is_allowed(&d)?;
            Ok((!r.allowed).then(|| {
                format!(
                    "{}: W = 0 not allowed at {:?}",
                    d.name,
                    r.failing()
                        .iter()
                        .map(|s| s.node.clone())
                        .collect::<Vec<_>>()
                )
            }))
        };
        check().unwrap_or_else(|e| Some(format!("{}: {e}", d.name)))
    });
    SuiteReport::collect("W = 0 allowed", start, res)
}

/// Star data for the no-pole lemma: legs, arrow weights and multiplicities,
/// leg values and arrow values.
#[derive(Clone, Debug)]
struct NoPoleCase {
    legs: Vec<(i64, i64)>,
    arrows: Vec<(i64, i64, i64)>,
}

/// Stars with one or two arrows whose legs carry `i = d` (all of them for two
/// arrows, all but one for one arrow): `-nu/N` at the node is not a pole,
/// unless with two arrows it coincides with an arrow's `-k/N_a`.
pub fn no_pole_at_node(n: usize, seed: u64, exec: Exec) -> SuiteReport {
    let start = Instant::now();
    let mut rng = gen::rng(seed);
    let mut cases = Vec::with_capacity(n);
    while cases.len() < n {
        let r = rng.gen_range(1..=2usize);
        let nl = rng.gen_range(if r == 1 { 2 } else { 1 }..=3usize);
        let mut ws: Vec<i64> = Vec::new();
        for _ in 0..nl + r {
            let c: Vec<i64> = (1..=9)
                .filter(|x: &i64| ws.iter().all(|w| w.gcd(x) == 1))
                .collect();
            ws.push(*c.choose(&mut rng).unwrap());
        }
        let (lw, aw) = ws.split_at(nl);
        if lw.contains(&1) {
            continue;
        }
        let mut legs: Vec<(i64, i64)> = lw.iter().map(|&d| (d, d)).collect();
        if r == 1 {
            let v = loop {
                let v = rng.gen_range(-9..=9);
                if v != 0 {
                    break v;
                }
            };
            legs.last_mut().unwrap().1 = v;
        }
        let arrows = aw
            .iter()
            .map(|&p| (p, rng.gen_range(1..=3), rng.gen_range(1..=4)))
            .collect();
        cases.push(NoPoleCase { legs, arrows });
    }
    let res = exec.map(cases, |c| {
        let mut s = SpliceDiagram::new("star");
        s.add_vertex("v");
        for (k, &(d, i)) in c.legs.iter().enumerate() {
            let id = format!("b{k}");
            s.add_vertex(&id).add_edge("v", &id, d, 1);
            s.add_warrow_at(&format!("w{k}"), &id, i);
        }
        for (k, &(p, m, i)) in c.arrows.iter().enumerate() {
            let id = format!("f{k}");
            s.add_farrow(&id, "v", p, m);
            s.add_warrow_doubling(&format!("k{k}"), &id, i);
        }
        let check = || -> crate::Result<Option<String>> {
            let vv = vertex_values(&s)?;
            let v = vv.iter().find(|x| x.id == "v").unwrap();
            let s0 = qfrac(-v.nu, v.n);
            // with two arrows, a coincidence with an arrow's -k/N_a is excluded
            if c.arrows.len() == 2
                && c.arrows
                    .iter()
                    .any(|&(_, m, i)| qfrac(-i as i128, m as i128) == s0)
            {
                return Ok(None);
            }
            if !is_allowed(&s)?.allowed {
                return Ok(Some(format!("{c:?}: decoration is not allowed")));
            }
            let z = zeta_splice(&s)?;
            let (order, _) = z.value.laurent_leading(&s0);
            Ok((order > 0).then(|| format!("{c:?}: {} is a pole", crate::algebra::fmt_q(&s0))))
        };
        check().unwrap_or_else(|e| Some(format!("{c:?}: {e}")))
    });
    SuiteReport::collect("no pole at the node", start, res)
}

type Golden = (&'static str, fn() -> crate::Result<Option<String>>);

fn corpus_splice(text: &str) -> crate::Result<SpliceDiagram> {
    crate::format::parse_splice(text)
}

fn corpus_plumbing(text: &str) -> crate::Result<PlumbingGraph> {
    crate::format::parse_plumbing(text)
}

const EXAMPLE_SD: &str = include_str!("../corpus/example.sd");
const EXAMPLE_N7_SD: &str = include_str!("../corpus/example_n7.sd");
const EXAMPLE_PG: &str = include_str!("../corpus/example.pg");
const STAIRCASE_SD: &str = include_str!("../corpus/staircase.sd");
const RODRIGUES_PG: &str = include_str!("../corpus/rodrigues.pg");
const UNIMOD_N1_PG: &str = include_str!("../corpus/unimod_b_n1.pg");
const UNIMOD_N2_PG: &str = include_str!("../corpus/unimod_b_n2.pg");

fn lin_rf(a: i128, b: i128) -> RatFunc {
    RatFunc::from_poly(Poly::linear(q(b), q(a)))
}

fn recip(f: &RatFunc) -> crate::Result<RatFunc> {
    RatFunc::constant(q(1)).div(f)
}

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> Option<String> {
    bad.then(msg)
}

const GOLDENS: &[Golden] = &[
    ("example: nu and Z from the plumbing graph", || {
        let g = corpus_plumbing(EXAMPLE_PG)?;
        let d = g.to_splice()?;
        let nu = crate::divisor::nu_values(&d)?;
        for (v, want) in [("v1", -13), ("v1p", -13), ("v0", -2)] {
            if nu.get(v) != Some(&want) {
                return Ok(Some(format!("nu({v}) = {:?}", nu.get(v))));
            }
        }
        let a = recip(&lin_rf(6, -13))?;
        let b = recip(&lin_rf(1, -2))?;
        let printed = RatFunc::constant(q(8))
            .mul(&a)
            .add(&b.mul(&RatFunc::constant(q(-1)).add(&recip(&lin_rf(1, 1))?)))
            .add(&RatFunc::constant(q(2)).mul(&a).mul(&b));
        let zs = zeta_splice(&d)?.value;
        let zp = zeta_plumbing(&g)?.value;
        Ok(fail_if(zs != printed || zp != printed, || {
            format!("Z = {zs} / {zp}")
        }))
    }),
    ("example: Alexander polynomial (t^2 - t + 1)^2", || {
        let d = corpus_splice(EXAMPLE_SD)?;
        let l = monodromy(&d)?.alexander.expand()?;
        let f = IntPoly::from_i64(&[1, -1, 1]);
        Ok(fail_if(l != f.mul(&f), || format!("Lambda = {l}")))
    }),
    ("example: W = 0 is not allowed", || {
        let d = corpus_splice(EXAMPLE_SD)?;
        Ok(fail_if(is_allowed(&d)?.allowed, || "allowed".into()))
    }),
    ("staircase: semigroup condition and W = 0 allowed", || {
        let d = corpus_splice(STAIRCASE_SD)?;
        Ok(fail_if(
            !semigroup_condition(&d)?.ok || !is_allowed(&d)?.allowed,
            || "not allowed".into(),
        ))
    }),
    ("example: pole -57/6 with eigenvalue -1 outside Eig", || {
        let mut d = corpus_splice(EXAMPLE_SD)?.without_w();
        for (v, i) in [("l1", 1), ("u1", 6), ("l1p", 1), ("u1p", 1)] {
            d.add_warrow_at(&format!("w{v}"), v, i);
        }
        let r = check_goal1(&d)?;
        let bad = r.violations();
        Ok(fail_if(
            r.holds || bad.len() != 1 || bad[0].at != qfrac(-57, 6),
            || format!("violations {bad:?}"),
        ))
    }),
    ("example: 1/6 realized by an effective W", || {
        let d = corpus_splice(EXAMPLE_SD)?;
        let lam = UnityRoot::new(1, 6)?;
        let opts = RealizeOptions {
            effective: true,
            ..Default::default()
        };
        let o = realize_eigenvalue(&d, &lam, &opts)?;
        Ok(fail_if(!o.realized(), || format!("{:?}", o.notes)))
    }),
    ("example with N = 7: 37/42 is unrealizable", || {
        let d = corpus_splice(EXAMPLE_N7_SD)?;
        let o = realize_eigenvalue(&d, &UnityRoot::new(37, 42)?, &RealizeOptions::default())?;
        let exhausted = o.search.as_ref().is_some_and(|s| s.impossible);
        Ok(fail_if(o.realized() || !exhausted, || {
            format!("{:?}", o.notes)
        }))
    }),
    (
        "Rodrigues graph: simple pole 1/3, exp(2 pi i/3) not in Eig",
        || {
            let g = corpus_plumbing(RODRIGUES_PG)?;
            let third = qfrac(1, 3);
            let (order, _) = zeta_plumbing(&g)?.value.laurent_leading(&third);
            let m = crate::monodromy::monodromy_plumbing(&g)?;
            let l = UnityRoot::new(1, 3)?;
            Ok(fail_if(order != 1 || m.eig_contains(&l), || {
                format!("order {order}")
            }))
        },
    ),
    (
        "unimodular graph, N = 1 and 2: pole 7/(3N), semigroup fails at v3",
        || {
            for (n, text) in [(1, UNIMOD_N1_PG), (2, UNIMOD_N2_PG)] {
                let d = corpus_plumbing(text)?.to_splice()?;
                let s0 = qfrac(7, 3 * n);
                let (order, _) = zeta_splice(&d)?.value.laurent_leading(&s0);
                let m = monodromy(&d)?;
                let failing: Vec<String> = semigroup_condition(&d)?
                    .checks
                    .into_iter()
                    .filter(|c| !c.ok)
                    .map(|c| c.node)
                    .collect();
                if order == 0
                    || m.eig_contains(&UnityRoot::from_rational(&s0)?)
                    || failing != ["v3"]
                {
                    return Ok(Some(format!("N = {n}: order {order}, failing {failing:?}")));
                }
            }
            Ok(None)
        },
    ),
];

/// Every worked example in the corpus, one case each.
pub fn golden_corpus(exec: Exec) -> SuiteReport {
    let start = Instant::now();
    let res = exec.map(GOLDENS.to_vec(), |(name, f)| match f() {
        Ok(None) => None,
        Ok(Some(m)) => Some(format!("{name}: {m}")),
        Err(e) => Some(format!("{name}: {e}")),
    });
    SuiteReport::collect("golden corpus", start, res)
}

/// The golden corpus followed by every property suite at `n` cases.
pub fn selfcheck(n: usize, seed: u64, exec: Exec) -> Vec<SuiteReport> {
    vec![
        golden_corpus(exec),
        splice_formula(n, seed, exec),
        alexander_multiplicativity(n, seed + 1, exec),
        goal1(n, seed + 2, exec),
        plumbing_equivalence(n, seed + 3, exec),
        coprime_lemma(11, 4, exec),
        induced_negative(n, seed + 4, exec),
        w0_allowed(n.div_ceil(2), seed + 5, exec),
        no_pole_at_node(n, seed + 6, exec),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_small() {
        for r in [
            splice_formula(30, 1, Exec::Parallel),
            alexander_multiplicativity(30, 2, Exec::Parallel),
            goal1(30, 3, Exec::Parallel),
            plumbing_equivalence(30, 4, Exec::Parallel),
            coprime_lemma(7, 3, Exec::Parallel),
            induced_negative(20, 5, Exec::Parallel),
            w0_allowed(15, 6, Exec::Parallel),
            no_pole_at_node(60, 7, Exec::Parallel),
            golden_corpus(Exec::Parallel),
        ] {
            assert!(r.ok(), "{}: {:?}", r.name, r.failures);
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn modes_report_the_same_failures() {
        let a = goal1(12, 9, Exec::Sequential);
        let b = goal1(12, 9, Exec::Parallel);
        assert_eq!((a.cases, a.failures), (b.cases, b.failures));
    }
}
