//! Residue-class search over the affine model.
//!
//! Divisibility of every star leg and the target congruence only depend on
//! the decorations modulo per-slot moduli. For each residue class the stars
//! whose divisibility count reaches `n + r - 2` need that many legs equal to
//! their weights; those equalities are solved over the integers inside the
//! class. Classes where the congruence fails or the equalities have no
//! integer solution are empty for every bound, so exhausting all classes this
//! way proves that no allowed divisor exists.

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::Rng;
use serde::Serialize;

use super::lattice::solve_int;
use super::model::{AffineModel, Form, SlotKind};
use super::{ChainCheck, Method};
use crate::algebra::{qfrac, Pole, UnityRoot};
use crate::allowed::is_allowed;
use crate::diagram::SpliceDiagram;
use crate::parallel::Exec;
use crate::zeta::zeta_splice;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    Node,
    Arrow,
}

/// A source of candidate poles: `-form / modulus`, wanted `≡ residue`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Target {
    pub kind: TargetKind,
    pub id: String,
    pub form: Form,
    pub modulus: i128,
    pub residue: i128,
}

impl Target {
    pub fn label(&self) -> String {
        match self.kind {
            TargetKind::Node => format!("node {}", self.id),
            TargetKind::Arrow => format!("arrow {}", self.id),
        }
    }

    pub fn congruence(&self, m: &AffineModel) -> String {
        let what = match self.kind {
            TargetKind::Node => format!("nu({})", self.id),
            TargetKind::Arrow => format!("i({})", self.id),
        };
        format!(
            "{what} = {} ≡ {} (mod {})",
            self.form.show(&m.slots),
            self.residue,
            self.modulus
        )
    }
}

/// Nodes and arrows whose candidate pole can map to `lambda`: `q | N`, and
/// then `exp(-2 pi i form/N) = lambda` iff `form ≡ -p N/q (mod N)`.
pub fn targets(m: &AffineModel, l: &UnityRoot) -> Vec<Target> {
    let q = l.q as i128;
    let p = l.p as i128;
    let mut out = Vec::new();
    for a in &m.arrows {
        if a.mult > 0 && a.mult % q == 0 {
            out.push(Target {
                kind: TargetKind::Arrow,
                id: a.id.clone(),
                form: a.value.clone(),
                modulus: a.mult,
                residue: (-p * (a.mult / q)).rem_euclid(a.mult),
            });
        }
    }
    for v in &m.nodes {
        if v.n > 0 && v.n % q == 0 {
            out.push(Target {
                kind: TargetKind::Node,
                id: v.id.clone(),
                form: v.nu.clone(),
                modulus: v.n,
                residue: (-p * (v.n / q)).rem_euclid(v.n),
            });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub bound: i128,
    pub effective: bool,
    pub count: usize,
    pub exec: Exec,
    /// beyond this many residue classes per target, classes are sampled
    pub max_classes: u64,
    /// points tried per residue class
    pub samples: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            bound: 100,
            effective: false,
            count: 1,
            exec: Exec::Parallel,
            max_classes: 2_000_000,
            samples: 64,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SlotValue {
    pub slot: String,
    pub warrow: String,
    pub value: i128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub target: String,
    pub values: Vec<SlotValue>,
    pub pole: Pole,
    pub lambda: UnityRoot,
    pub effective: bool,
    pub method: Method,
    /// extension steps along chains, when the construction went through them
    pub chain: Vec<ChainCheck>,
    #[serde(skip)]
    pub diagram: SpliceDiagram,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TargetSearch {
    pub target: String,
    pub congruence: String,
    /// the congruence split over coprime moduli, in terms of star legs where
    /// one matches
    pub split: Vec<String>,
    pub moduli: Vec<i128>,
    pub classes: u64,
    pub exhaustive: bool,
    /// classes failing the target congruence
    pub off_target: u64,
    /// classes where the forced equalities have no integer solution
    pub blocked: u64,
    /// classes with solutions, none inside the bound
    pub out_of_bound: u64,
    /// classes with points inside the bound, none a certified pole
    pub uncertified: u64,
    pub found: u64,
    pub obstructions: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub solutions: Vec<Realization>,
    pub targets: Vec<TargetSearch>,
    /// every residue class of every target is empty: no allowed divisor of
    /// this shape has a pole inducing `lambda`, whatever the bound
    pub impossible: bool,
}

struct Cond {
    form: Form,
    m: i128,
}

fn mod_at(f: &Form, cls: &[i128], m: i128) -> i128 {
    let mut s = f.c0.rem_euclid(m);
    for (a, x) in f.c.iter().zip(cls) {
        s = (s + a.rem_euclid(m) * x.rem_euclid(m)) % m;
    }
    s
}

fn slot_moduli(conds: &[Cond], n: usize) -> Vec<i128> {
    (0..n)
        .map(|j| {
            conds.iter().fold(1i128, |acc, c| {
                let g = c.form.c[j].rem_euclid(c.m).gcd(&c.m);
                acc.lcm(&(c.m / g))
            })
        })
        .collect()
}

enum Outcome {
    OffTarget,
    Blocked(Vec<(usize, Vec<usize>)>),
    OutOfBound,
    Uncertified,
    Found(Box<Realization>),
}

struct Ctx<'a> {
    m: &'a AffineModel,
    target: &'a Target,
    moduli: Vec<i128>,
    lambda: UnityRoot,
    opts: &'a SearchOptions,
}

/// Exact check that `x` gives an allowed divisor whose zeta function has a
/// pole at the target's candidate.
pub fn certify(m: &AffineModel, t: &Target, lambda: &UnityRoot, x: &[i128]) -> Option<Realization> {
    let d = m.instantiate(x).ok()?;
    if !is_allowed(&d).ok()?.allowed {
        return None;
    }
    let z = zeta_splice(&d).ok()?;
    let at = qfrac(-t.form.eval(x)?, t.modulus);
    if UnityRoot::from_rational(&at).ok()? != *lambda {
        return None;
    }
    let (order, leading) = z.value.laurent_leading(&at);
    if order == 0 {
        return None;
    }
    Some(Realization {
        target: t.label(),
        values: m
            .slots
            .iter()
            .zip(x)
            .map(|(s, &v)| SlotValue {
                slot: s.name.clone(),
                warrow: s.warrow.clone(),
                value: v,
            })
            .collect(),
        pole: Pole { at, order, leading },
        lambda: *lambda,
        effective: x.iter().all(|&v| v >= 1),
        method: Method::Search,
        chain: Vec::new(),
        diagram: d,
    })
}

/// Moves of the boundary legs at a target node that keep `nu` fixed but
/// change its residue: `(i1 + a d1, i2 + b d2, i3 - (a + b) d3)` with three
/// or more legs, `(i1 + a d1, i2 - a d2)` with two.
pub fn repair(m: &AffineModel, t: &Target, x: &[i128]) -> Vec<Vec<i128>> {
    let mut out = Vec::new();
    if t.kind != TargetKind::Node {
        return out;
    }
    let Some(star) = m.stars.iter().find(|s| s.node == t.id) else {
        return out;
    };
    let legs: Vec<(usize, i128)> = star
        .legs
        .iter()
        .filter_map(|l| {
            let j = m.slot_index(&format!("i[{}]", l.label))?;
            matches!(m.slots[j].kind, SlotKind::Boundary(_)).then_some((j, l.d))
        })
        .collect();
    let shifted = |moves: &[(usize, i128, i128)]| {
        let mut y = x.to_vec();
        for &(j, d, a) in moves {
            y[j] += a * d;
        }
        y
    };
    match legs.len() {
        0 | 1 => {}
        2 => {
            let ((j1, d1), (j2, d2)) = (legs[0], legs[1]);
            for a in [1, -1, 2, -2, 3, -3] {
                out.push(shifted(&[(j1, d1, a), (j2, d2, -a)]));
            }
        }
        _ => {
            let ((j1, d1), (j2, d2), (j3, d3)) = (legs[0], legs[1], legs[2]);
            for a in -2i128..=2 {
                for b in -2i128..=2 {
                    if a != 0 || b != 0 {
                        out.push(shifted(&[(j1, d1, a), (j2, d2, b), (j3, d3, -(a + b))]));
                    }
                }
            }
        }
    }
    debug_assert!(out.iter().all(|y| t.form.eval(y) == t.form.eval(x)));
    out
}

/// Tuples of indices (one per list) by increasing index sum.
pub(crate) fn tuples(lens: &[usize], cap: usize) -> Vec<Vec<usize>> {
    let n = lens.len();
    let mut out = Vec::new();
    if lens.contains(&0) {
        return out;
    }
    let max_sum: usize = lens.iter().map(|l| l - 1).sum();
    for s in 0..=max_sum {
        let mut cur = vec![0usize; n];
        fill(lens, s, 0, &mut cur, &mut out, cap);
        if out.len() >= cap {
            break;
        }
    }
    out
}

/// Index tuples of length `n` with entries below `width` summing to `sum`.
pub(crate) fn tuples_up_to(n: usize, sum: usize, width: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let lens = vec![width; n];
    fill(&lens, sum, 0, &mut vec![0; n], &mut out, usize::MAX);
    out
}

fn fill(
    lens: &[usize],
    rest: usize,
    k: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    if k == lens.len() {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for v in 0..lens[k].min(rest + 1) {
        cur[k] = v;
        fill(lens, rest - v, k + 1, cur, out, cap);
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

const OFFSETS: [i128; 7] = [0, 1, -1, 2, -2, 3, -3];
const MAX_EQ_CHOICES: usize = 512;
/// exact certifications per residue class; a failure here means a residue
/// cancelled, which the repair moves of the first point already address
const MAX_CERTIFY: usize = 4;

impl Ctx<'_> {
    fn in_range(&self, v: i128) -> bool {
        v != 0
            && v <= self.opts.bound
            && v >= if self.opts.effective {
                1
            } else {
                -self.opts.bound
            }
    }

    /// Values `≡ c (mod m)` inside the bound, smallest first, positive first.
    fn slot_values(&self, c: i128, m: i128, cap: usize) -> Vec<i128> {
        let mut out = Vec::new();
        let mut k = 0i128;
        let lim = self.opts.bound / m + 2;
        while out.len() < cap && k <= lim {
            for cand in [c + m * k, c - m * (k + 1)] {
                if self.in_range(cand) {
                    out.push(cand);
                }
            }
            k += 1;
        }
        out.sort_by_key(|&v| (v.abs(), v < 0));
        out.truncate(cap);
        out
    }

    /// Tries the candidate points; `Ok(None)` when none lies in the bound.
    fn try_points(&self, pts: impl Iterator<Item = Vec<i128>>) -> Option<Option<Realization>> {
        let mut tried = 0;
        for x in pts {
            if !x.iter().all(|&v| self.in_range(v)) || !self.m.allowed_at(&x) {
                continue;
            }
            tried += 1;
            if let Some(r) = certify(self.m, self.target, &self.lambda, &x) {
                return Some(Some(r));
            }
            if tried > MAX_CERTIFY {
                break;
            }
            if tried > 1 {
                continue;
            }
            for y in repair(self.m, self.target, &x) {
                if y.iter().all(|&v| self.in_range(v)) && self.m.allowed_at(&y) {
                    if let Some(r) = certify(self.m, self.target, &self.lambda, &y) {
                        return Some(Some(r));
                    }
                }
            }
        }
        if tried > 0 {
            Some(None)
        } else {
            None
        }
    }

    fn eval(&self, cls: &[i128]) -> Outcome {
        let t = self.target;
        if mod_at(&t.form, cls, t.modulus) != t.residue {
            return Outcome::OffTarget;
        }
        let mut needy: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        for (si, s) in self.m.stars.iter().enumerate() {
            let k = s.required();
            if k <= 0 {
                continue;
            }
            let div: Vec<usize> = (0..s.legs.len())
                .filter(|&li| mod_at(&s.legs[li].form, cls, s.legs[li].d) == 0)
                .collect();
            if div.len() as i64 >= k {
                needy.push((si, div, k as usize));
            }
        }
        let n = self.m.slots.len();
        if needy.is_empty() {
            let lists: Vec<Vec<i128>> = (0..n)
                .map(|j| self.slot_values(cls[j], self.moduli[j], 4))
                .collect();
            let lens: Vec<usize> = lists.iter().map(|l| l.len()).collect();
            let pts = tuples(&lens, self.opts.samples)
                .into_iter()
                .map(|ix| ix.iter().enumerate().map(|(j, &i)| lists[j][i]).collect());
            return match self.try_points(pts) {
                Some(Some(r)) => Outcome::Found(Box::new(r)),
                Some(None) => Outcome::Uncertified,
                None => Outcome::OutOfBound,
            };
        }
        // every way of picking the required equal legs in each needy star
        let per_star: Vec<Vec<Vec<usize>>> = needy
            .iter()
            .map(|(_, div, k)| combinations(div.len(), *k))
            .collect();
        let lens: Vec<usize> = per_star.iter().map(|c| c.len()).collect();
        let mut solvable = false;
        let mut in_bound = false;
        for choice in tuples(&lens, MAX_EQ_CHOICES) {
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for (s, &ci) in choice.iter().enumerate() {
                let (si, div, _) = &needy[s];
                for &pick in &per_star[s][ci] {
                    let leg = &self.m.stars[*si].legs[div[pick]];
                    // form(cls + M y) = d
                    rows.push(
                        (0..n)
                            .map(|j| leg.form.c[j] * self.moduli[j])
                            .collect::<Vec<_>>(),
                    );
                    let Some(at) = leg.form.eval(cls) else {
                        continue;
                    };
                    rhs.push(leg.d - at);
                }
            }
            if rows.len() != rhs.len() {
                continue;
            }
            let Ok(Some(sol)) = solve_int(&rows, &rhs, n) else {
                continue;
            };
            solvable = true;
            let kl = vec![OFFSETS.len(); sol.kernel.len()];
            let pts = tuples(&kl, self.opts.samples).into_iter().map(|ix| {
                let mut y = sol.particular.clone();
                for (kv, &i) in sol.kernel.iter().zip(&ix) {
                    for (yj, kj) in y.iter_mut().zip(kv) {
                        *yj += OFFSETS[i] * kj;
                    }
                }
                (0..n).map(|j| cls[j] + self.moduli[j] * y[j]).collect()
            });
            match self.try_points(pts) {
                Some(Some(r)) => return Outcome::Found(Box::new(r)),
                Some(None) => in_bound = true,
                None => {}
            }
        }
        if !solvable {
            Outcome::Blocked(needy.into_iter().map(|(si, div, _)| (si, div)).collect())
        } else if in_bound {
            Outcome::Uncertified
        } else {
            Outcome::OutOfBound
        }
    }
}

fn prime_powers(mut n: i128) -> Vec<i128> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The target congruence as independent congruences on disjoint sets of
/// slots (CRT), each scaled by a unit so that it reads as a star leg when
/// one has matching coefficients.
pub fn split_congruence(m: &AffineModel, t: &Target) -> Vec<String> {
    let n = t.form.c.len();
    let support =
        |g: i128| -> Vec<bool> { t.form.c.iter().map(|c| c.rem_euclid(g) != 0).collect() };
    let mut groups: Vec<(i128, Vec<bool>)> = Vec::new();
    for q in prime_powers(t.modulus) {
        let mut g = (q, support(q));
        // merge every group sharing a slot
        let mut k = 0;
        while k < groups.len() {
            if groups[k].1.iter().zip(&g.1).any(|(a, b)| *a && *b) {
                let (q2, s2) = groups.remove(k);
                g.0 *= q2;
                g.1 = g.1.iter().zip(&s2).map(|(a, b)| *a || *b).collect();
                k = 0;
            } else {
                k += 1;
            }
        }
        groups.push(g);
    }
    let legs: Vec<&super::model::LegForm> = m.stars.iter().flat_map(|s| &s.legs).collect();
    let reduced = |g: i128| -> Vec<i128> { t.form.c.iter().map(|c| c.rem_euclid(g)).collect() };
    let leg_unit = |g: i128, supp: &[bool]| {
        if supp.iter().all(|s| !s) {
            return None;
        }
        let red = reduced(g);
        legs.iter().find_map(|l| {
            let same = l
                .form
                .c
                .iter()
                .zip(supp)
                .all(|(c, s)| (c.rem_euclid(g) != 0) == *s);
            if !same {
                return None;
            }
            (1..g)
                .filter(|u| u.gcd(&g) == 1)
                .find(|u| {
                    red.iter()
                        .zip(&l.form.c)
                        .all(|(a, b)| (a * u - b).rem_euclid(g) == 0)
                })
                .map(|u| (*l, u))
        })
    };
    // merge factors that together read as one leg
    'merge: loop {
        for a in 0..groups.len() {
            for b in a + 1..groups.len() {
                let g = groups[a].0 * groups[b].0;
                let supp: Vec<bool> = groups[a]
                    .1
                    .iter()
                    .zip(&groups[b].1)
                    .map(|(x, y)| *x || *y)
                    .collect();
                if leg_unit(g, &supp).is_some() {
                    groups[a] = (g, supp);
                    groups.remove(b);
                    continue 'merge;
                }
            }
        }
        break;
    }
    groups.sort_by_key(|g| (g.1.iter().position(|&b| b).unwrap_or(n), g.0));
    let mut out = Vec::new();
    for (g, supp) in groups {
        let rhs = (t.residue - t.form.c0).rem_euclid(g);
        let red = reduced(g);
        let text = if supp.iter().all(|s| !s) {
            let holds = rhs == 0;
            format!(
                "constant: {} {} {} (mod {g})",
                t.form.c0.rem_euclid(g),
                if holds { "≡" } else { "≢" },
                t.residue.rem_euclid(g)
            )
        } else if let Some((l, u)) = leg_unit(g, &supp) {
            let bare = Form {
                c0: 0,
                c: l.form.c.clone(),
            };
            format!(
                "{} ≡ {} (mod {g}), i.e. {} ≡ {} (mod {g})",
                bare.show(&m.slots),
                (rhs * u).rem_euclid(g),
                l.label,
                (l.form.c0 + rhs * u).rem_euclid(g)
            )
        } else {
            let u = (1..g)
                .filter(|u| u.gcd(&g) == 1)
                .min_by_key(|u| red.iter().map(|c| (c * u).rem_euclid(g)).sum::<i128>())
                .unwrap_or(1);
            let f = Form {
                c0: 0,
                c: red.iter().map(|c| (c * u).rem_euclid(g)).collect(),
            };
            format!(
                "{} ≡ {} (mod {g})",
                f.show(&m.slots),
                (rhs * u).rem_euclid(g)
            )
        };
        out.push(text);
    }
    out
}

/// Whether `form = value` is compatible with the target congruence at all.
fn compatible(form: &Form, value: i128, t: &Target) -> bool {
    let n = form.c.len();
    let mut r1 = form.c.clone();
    r1.push(0);
    let mut r2 = t.form.c.clone();
    r2.push(-t.modulus);
    let rows = vec![r1, r2];
    let rhs = vec![value - form.c0, t.residue - t.form.c0];
    !matches!(solve_int(&rows, &rhs, n + 1), Ok(None))
}

fn class_of(mut idx: u64, moduli: &[i128]) -> Vec<i128> {
    moduli
        .iter()
        .map(|&m| {
            let m = m as u64;
            let r = idx % m;
            idx /= m;
            r as i128
        })
        .collect()
}

pub fn search(m: &AffineModel, lambda: &UnityRoot, opts: &SearchOptions) -> SearchReport {
    let mut solutions = Vec::new();
    let mut reports = Vec::new();
    let n = m.slots.len();
    for t in targets(m, lambda) {
        let mut conds = vec![Cond {
            form: t.form.clone(),
            m: t.modulus,
        }];
        for s in &m.stars {
            for l in &s.legs {
                if l.d > 1 {
                    conds.push(Cond {
                        form: l.form.clone(),
                        m: l.d,
                    });
                }
            }
        }
        let moduli = slot_moduli(&conds, n);
        let total = moduli
            .iter()
            .try_fold(1u64, |acc, &mj| acc.checked_mul(mj as u64));
        let exhaustive = matches!(total, Some(c) if c <= opts.max_classes);
        let indices: Vec<u64> = if exhaustive {
            (0..total.unwrap()).collect()
        } else {
            let mut r = crate::gen::rng(0x5eed);
            (0..opts.max_classes)
                .map(|_| {
                    // classes drawn slot by slot, so the index never overflows
                    let cls: Vec<u64> =
                        moduli.iter().map(|&mj| r.gen_range(0..mj as u64)).collect();
                    cls.iter()
                        .rev()
                        .zip(moduli.iter().rev())
                        .fold(0u64, |acc, (c, &mj)| {
                            acc.wrapping_mul(mj as u64).wrapping_add(*c)
                        })
                })
                .collect()
        };
        let ctx = Ctx {
            m,
            target: &t,
            moduli: moduli.clone(),
            lambda: *lambda,
            opts,
        };
        let mut rep = TargetSearch {
            target: t.label(),
            congruence: t.congruence(m),
            split: split_congruence(m, &t),
            moduli: moduli.clone(),
            classes: indices.len() as u64,
            exhaustive,
            ..Default::default()
        };
        let mut blocked_legs: BTreeSet<(usize, usize)> = BTreeSet::new();
        let chunk = 1024;
        'chunks: for ch in indices.chunks(chunk) {
            let outs = opts
                .exec
                .map(ch.to_vec(), |ix| ctx.eval(&class_of(ix, &ctx.moduli)));
            for o in outs {
                match o {
                    Outcome::OffTarget => rep.off_target += 1,
                    Outcome::Blocked(legs) => {
                        rep.blocked += 1;
                        for (si, div) in legs {
                            for li in div {
                                blocked_legs.insert((si, li));
                            }
                        }
                    }
                    Outcome::OutOfBound => rep.out_of_bound += 1,
                    Outcome::Uncertified => rep.uncertified += 1,
                    Outcome::Found(r) => {
                        rep.found += 1;
                        solutions.push(*r);
                        if solutions.len() >= opts.count {
                            break 'chunks;
                        }
                    }
                }
            }
        }
        let mut stars_seen = BTreeSet::new();
        for &(si, li) in &blocked_legs {
            let s = &m.stars[si];
            if stars_seen.insert(si) {
                rep.obstructions.push(format!(
                    "star {} (n = {}, r = {}) needs {} leg(s) equal to their weight",
                    s.node,
                    s.legs.len(),
                    s.arrows,
                    s.required()
                ));
            }
            let l = &s.legs[li];
            let ok = compatible(&l.form, l.d, &t);
            rep.obstructions.push(format!(
                "  {} = {} = {}: {}",
                l.label,
                l.form.show(&m.slots),
                l.d,
                if ok {
                    "compatible with the congruence"
                } else {
                    "contradicts the congruence"
                }
            ));
        }
        reports.push(rep);
        if solutions.len() >= opts.count {
            break;
        }
    }
    let impossible = solutions.is_empty()
        && reports
            .iter()
            .all(|r| r.exhaustive && r.off_target + r.blocked == r.classes);
    SearchReport {
        solutions,
        targets: reports,
        impossible,
    }
}
