//! Allowed divisors whose zeta function has a pole inducing a prescribed
//! monodromy eigenvalue.
//!
//! The pipeline tries, in order: an arrow whose multiplicity `N_a` has
//! `lambda` as a root (set `i_a ≡ u mod N_a`); a node whose star has `lambda`
//! as an Alexander root (solve the star, then extend outwards); and finally
//! the residue-class search of [`search`], which can also prove that nothing
//! exists. Every answer is certified on the full diagram.

pub mod extend;
pub mod lattice;
pub mod model;
pub mod search;
pub mod star;

use serde::Serialize;

pub use extend::{extend_allowed, ChainCheck, ExtensionCase};
pub use model::AffineModel;
pub use search::{Realization, SearchOptions, SearchReport, Target, TargetKind};
pub use star::{realize_star, StarOptions};

use crate::algebra::UnityRoot;
use crate::allowed::semigroup_condition;
use crate::diagram::{SpliceDiagram, Topo};
use crate::error::{Error, Result};
use crate::monodromy::monodromy;
use crate::parallel::Exec;
use crate::splice::{star_of, Messages};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Arrow,
    Star,
    Search,
}

#[derive(Clone, Debug)]
pub struct RealizeOptions {
    /// `|i| <= bound` for searched decorations; default `4 q max_weight`
    pub bound: Option<i128>,
    pub effective: bool,
    pub count: usize,
    /// decorate F-arrows with doubling W-arrows in the star step and the
    /// search too; the arrow step always does
    pub double_arrows: bool,
    pub exec: Exec,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            bound: None,
            effective: false,
            count: 1,
            double_arrows: false,
            exec: Exec::Parallel,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Realized,
    Unrealizable,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizeOutcome {
    pub lambda: UnityRoot,
    pub status: Status,
    pub bound: i128,
    pub effective: bool,
    /// the semigroup condition on the input, which guarantees success
    pub semigroup: bool,
    pub solutions: Vec<Realization>,
    /// present when the residue-class search ran
    pub search: Option<SearchReport>,
    pub notes: Vec<String>,
}

impl RealizeOutcome {
    pub fn realized(&self) -> bool {
        self.status == Status::Realized
    }
}

pub fn default_bound(d: &SpliceDiagram, lambda: &UnityRoot) -> i128 {
    let w = d
        .edges
        .iter()
        .flat_map(|e| [e.wu, e.wv])
        .chain(d.farrows.iter().map(|a| a.weight))
        .max()
        .unwrap_or(1)
        .max(1) as i128;
    4 * lambda.q as i128 * w
}

fn slots_from(m: &AffineModel, vals: &extend::Assignment) -> Option<Vec<i128>> {
    m.slots
        .iter()
        .map(|s| vals.get(&s.name).copied().or(Some(1)))
        .collect()
}

fn in_bound(x: &[i128], bound: i128, effective: bool) -> bool {
    x.iter()
        .all(|&v| v != 0 && v.abs() <= bound && (!effective || v >= 1))
}

/// Allowed decorations of the star at `v` with every side extended: leg
/// values are tried smallest first, each passing the star test, then pushed
/// into the sides.
fn allowed_bases(
    d: &SpliceDiagram,
    t: &Topo,
    v: usize,
    double_arrows: bool,
    limit: usize,
) -> Vec<extend::Assignment> {
    let msgs = Messages::compute(d, t);
    let mut legs = Vec::new();
    let mut arrows = t.arrow_count(v);
    let mut fsides = Vec::new();
    for x in t.neighbors(v).collect::<Vec<_>>() {
        let dx = t.edge_weight(v, x).expect("adjacent");
        if t.is_node(x) && msgs.get(v, x).has_f {
            arrows += 1;
            fsides.push(x);
        } else {
            legs.push((x, dx));
        }
    }
    let cands: Vec<Vec<i128>> = legs
        .iter()
        .map(|&(_, dx)| {
            let mut c = vec![1, dx, 2, -1, dx + 1, 3, -dx];
            c.retain(|&y| y != 0);
            let mut seen = std::collections::HashSet::new();
            c.retain(|y| seen.insert(*y));
            c
        })
        .collect();
    let lens: Vec<usize> = cands.iter().map(|c| c.len()).collect();
    let mut out = Vec::new();
    for ix in search::tuples(&lens, 4096) {
        let vals: Vec<i128> = ix.iter().enumerate().map(|(k, &i)| cands[k][i]).collect();
        let pairs: Vec<(i128, i128)> = legs
            .iter()
            .zip(&vals)
            .map(|(&(_, dx), &y)| (dx, y))
            .collect();
        if !crate::allowed::star_test(&pairs, arrows).0 {
            continue;
        }
        let mut a = extend::Assignment::new();
        let mut ok = true;
        for (&(x, _), &y) in legs.iter().zip(&vals) {
            ok &= extend::solve_side(d, t, v, x, y, 0, double_arrows, &mut a).is_ok();
        }
        for &x in &fsides {
            ok &= extend::solve_side(d, t, v, x, 1, 0, double_arrows, &mut a).is_ok();
        }
        if ok {
            out.push(a);
            if out.len() >= limit {
                break;
            }
        }
    }
    out
}

/// `i_a ≡ u (mod N_a)` on top of an allowed decoration around the arrow's
/// node, shifting `i_a` by `N_a` until the candidate is a genuine pole.
fn arrow_case(
    d: &SpliceDiagram,
    m: &AffineModel,
    lambda: &UnityRoot,
    bound: i128,
    opts: &RealizeOptions,
) -> Result<Vec<Realization>> {
    let t = Topo::build(d)?;
    let mut out = Vec::new();
    for tg in search::targets(m, lambda) {
        if tg.kind != TargetKind::Arrow {
            continue;
        }
        let Some(j) = m.slot_index(&format!("k[{}]", tg.id)) else {
            continue;
        };
        let at = &d.farrow(&tg.id).expect("arrow").at;
        let v = t.vertex(at).expect("vertex");
        // the arrow's value is its own slot
        let u = if tg.residue == 0 {
            tg.modulus
        } else {
            tg.residue
        };
        let mut shifts = vec![0i128];
        for k in 1..=(bound / tg.modulus + 1) {
            shifts.push(k);
            if !opts.effective {
                shifts.push(-k);
            }
        }
        'bases: for base in allowed_bases(d, &t, v, opts.double_arrows, 16) {
            let Some(x0) = slots_from(m, &base) else {
                continue;
            };
            for &k in &shifts {
                let mut x = x0.clone();
                x[j] = u + k * tg.modulus;
                if !in_bound(&x, bound.max(tg.modulus), opts.effective) || !m.allowed_at(&x) {
                    continue;
                }
                if let Some(mut r) = search::certify(m, &tg, lambda, &x) {
                    r.method = Method::Arrow;
                    out.push(r);
                    break 'bases;
                }
            }
        }
        if out.len() >= opts.count {
            break;
        }
    }
    Ok(out)
}

/// Nodes whose star has `lambda` as a root of its Alexander polynomial.
pub fn star_nodes(d: &SpliceDiagram, lambda: &UnityRoot) -> Result<Vec<String>> {
    let t = Topo::build(d)?;
    let msgs = Messages::compute(d, &t);
    let mut out = Vec::new();
    for w in t.nodes() {
        let s = star_of(d, &t, &msgs, w)?;
        if s.farrows.is_empty() {
            continue;
        }
        if monodromy(&s)?.alexander.root_multiplicity(lambda) > 0 {
            out.push(t.id(w).to_string());
        }
    }
    Ok(out)
}

/// Solves the star at `w`, then extends every replaced side.
fn node_case(
    d: &SpliceDiagram,
    m: &AffineModel,
    lambda: &UnityRoot,
    bound: i128,
    opts: &RealizeOptions,
    notes: &mut Vec<String>,
) -> Result<Vec<Realization>> {
    let t = Topo::build(d)?;
    let msgs = Messages::compute(d, &t);
    let mut out = Vec::new();
    for wid in star_nodes(d, lambda)? {
        let w = t.vertex(&wid).expect("node");
        let s = star_of(d, &t, &msgs, w)?;
        let star_opts = StarOptions {
            count: 16,
            effective: opts.effective,
            bound,
            fixed_arrows: !opts.double_arrows,
            ..Default::default()
        };
        let sols = match realize_star(&s, lambda, &star_opts) {
            Ok(s) => s,
            Err(e) => {
                notes.push(format!("star at {wid}: {e}"));
                continue;
            }
        };
        let Some(target) = search::targets(m, lambda)
            .into_iter()
            .find(|t| t.kind == TargetKind::Node && t.id == wid)
        else {
            continue;
        };
        'sols: for sol in &sols {
            for shift in [0, 1, -1] {
                let mut vals = extend::Assignment::new();
                let mut ok = true;
                for sv in &sol.values {
                    // replaced sides are `b[w|u]` / `f[w|u]`
                    let inner = &sv.slot[2..sv.slot.len() - 1];
                    let side = inner
                        .strip_prefix("b[")
                        .or_else(|| inner.strip_prefix("f["))
                        .and_then(|r| r.strip_suffix(']'))
                        .and_then(|r| r.split_once('|'))
                        .map(|(_, far)| far.to_string());
                    match side {
                        Some(far) => {
                            let u = t.vertex(&far).expect("neighbour");
                            if extend::solve_side(
                                d,
                                &t,
                                w,
                                u,
                                sv.value,
                                shift,
                                opts.double_arrows,
                                &mut vals,
                            )
                            .is_err()
                            {
                                ok = false;
                            }
                        }
                        None => {
                            vals.insert(sv.slot.clone(), sv.value);
                        }
                    }
                }
                if !ok {
                    continue;
                }
                let Some(x) = slots_from(m, &vals) else {
                    continue;
                };
                let mut cands = vec![x.clone()];
                cands.extend(search::repair(m, &target, &x));
                for x in cands {
                    if !in_bound(&x, bound.max(target.modulus), opts.effective) || !m.allowed_at(&x)
                    {
                        continue;
                    }
                    let Some(mut r) = search::certify(m, &target, lambda, &x) else {
                        continue;
                    };
                    let checks = extend::chain_checks(&r.diagram, &wid)?;
                    if !checks.iter().all(ChainCheck::holds) {
                        continue;
                    }
                    r.method = Method::Star;
                    r.chain = checks;
                    out.push(r);
                    if out.len() >= opts.count {
                        return Ok(out);
                    }
                    continue 'sols;
                }
            }
        }
    }
    Ok(out)
}

/// Allowed divisors on `d` with a pole `s0`, `exp(2 pi i s0) = lambda`.
/// Existing W-decorations of `d` are discarded.
pub fn realize_eigenvalue(
    d: &SpliceDiagram,
    lambda: &UnityRoot,
    opts: &RealizeOptions,
) -> Result<RealizeOutcome> {
    let d = d.without_w();
    let mono = monodromy(&d)?;
    if !mono.eig_contains(lambda) {
        return Err(Error::precondition(format!(
            "{lambda} is not a monodromy eigenvalue"
        )));
    }
    let bound = opts.bound.unwrap_or_else(|| default_bound(&d, lambda));
    let semigroup = semigroup_condition(&d)?.ok;
    let mut notes = Vec::new();
    let doubled = AffineModel::build(&d, true)?;
    let mut solutions = arrow_case(&d, &doubled, lambda, bound, opts)?;
    if solutions.len() < opts.count {
        let more = node_case(&d, &doubled, lambda, bound, opts, &mut notes)?;
        solutions.extend(more);
    }
    solutions.truncate(opts.count);
    let mut report = None;
    if solutions.len() < opts.count {
        let m = if opts.double_arrows {
            doubled
        } else {
            AffineModel::build(&d, false)?
        };
        let sopts = SearchOptions {
            bound,
            effective: opts.effective,
            count: opts.count - solutions.len(),
            exec: opts.exec,
            ..Default::default()
        };
        let rep = search::search(&m, lambda, &sopts);
        solutions.extend(rep.solutions.iter().cloned());
        report = Some(rep);
    }
    let status = if solutions.is_empty() {
        notes.push(format!("unrealizable within bound {bound}"));
        if report.as_ref().is_some_and(|r| r.impossible) {
            notes.push(
                "no allowed divisor exists: every residue class violates the congruence or forces contradictory equalities"
                    .to_string(),
            );
        }
        Status::Unrealizable
    } else {
        Status::Realized
    };
    Ok(RealizeOutcome {
        lambda: *lambda,
        status,
        bound,
        effective: opts.effective,
        semigroup,
        solutions,
        search: report,
        notes,
    })
}
