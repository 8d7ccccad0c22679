//! Poles on a single star: solve `nu ≡ u (mod N)` for the leg and arrow
//! decorations, keep the allowed solutions and certify the pole exactly.

use std::collections::BTreeSet;

use super::lattice::solve_int;
use super::model::{AffineModel, SlotKind};
use super::search::{certify, repair, targets, Realization, TargetKind};
use super::Method;
use crate::algebra::UnityRoot;
use crate::diagram::{SpliceDiagram, Topo};
use crate::error::{Error, Result};
use crate::monodromy::monodromy;

#[derive(Clone, Debug)]
pub struct StarOptions {
    pub count: usize,
    pub effective: bool,
    /// largest decoration tried, at least `N`
    pub bound: i128,
    /// solutions of the congruence examined before giving up
    pub budget: usize,
    /// keep the star's own F-arrows undecorated (value 1); arrows standing
    /// for spliced-off sides stay free
    pub fixed_arrows: bool,
}

impl Default for StarOptions {
    fn default() -> Self {
        StarOptions {
            count: 4,
            effective: false,
            bound: 0,
            budget: 4096,
            fixed_arrows: false,
        }
    }
}

/// Checks the shape and that `lambda` is a root of the star's Alexander
/// polynomial; returns `(n, r)`.
pub fn check_star(s: &SpliceDiagram, lambda: &UnityRoot) -> Result<(usize, usize)> {
    let t = Topo::build(s)?;
    let nodes = t.nodes();
    if nodes.len() != 1 {
        return Err(Error::precondition(format!(
            "expected a star, found {} nodes",
            nodes.len()
        )));
    }
    let r = s.farrows.len();
    let n = t.leaves().len();
    if r == 0 || n + r < 3 {
        return Err(Error::precondition(format!(
            "star needs an arrow and n + r >= 3 (n = {n}, r = {r})"
        )));
    }
    let mono = monodromy(&s.without_w())?;
    if mono.alexander.root_multiplicity(lambda) == 0 {
        return Err(Error::precondition(format!(
            "{lambda} is not an eigenvalue of this star"
        )));
    }
    Ok((n, r))
}

fn reduce(v: i128, n: i128) -> i128 {
    (v - 1).rem_euclid(n) + 1
}

/// Allowed decorations of the star `s` (legs and doubled arrows) whose zeta
/// function has a pole `s0 = -nu/N` with `exp(2 pi i s0) = lambda`.
pub fn realize_star(
    s: &SpliceDiagram,
    lambda: &UnityRoot,
    opts: &StarOptions,
) -> Result<Vec<Realization>> {
    check_star(s, lambda)?;
    let m = AffineModel::build(s, true)?;
    let Some(t) = targets(&m, lambda)
        .into_iter()
        .find(|t| t.kind == TargetKind::Node)
    else {
        return Err(Error::precondition(format!(
            "{lambda} is not an N-th root of unity at the centre"
        )));
    };
    let n = m.slots.len();
    let big_n = t.modulus;
    let bound = opts.bound.max(big_n);
    let fixed: Vec<bool> = m
        .slots
        .iter()
        .map(|sl| {
            opts.fixed_arrows && matches!(&sl.kind, SlotKind::Doubling(a) if !a.starts_with("f["))
        })
        .collect();
    // c . x - N t = u - c0, fixed slots held at 1
    let mut row = t.form.c.clone();
    let mut c0 = t.form.c0;
    for (j, &f) in fixed.iter().enumerate() {
        if f {
            c0 += row[j];
            row[j] = 0;
        }
    }
    row.push(-big_n);
    let sol = solve_int(&[row], &[t.residue - c0], n + 1)
        .map_err(|_| Error::arithmetic("congruence solver overflowed"))?
        .ok_or_else(|| Error::precondition(format!("nu cannot reach {} mod {big_n}", t.residue)))?;
    let kernel: Vec<Vec<i128>> = sol.kernel.iter().map(|k| k[..n].to_vec()).collect();
    let base: Vec<i128> = sol.particular[..n].to_vec();

    let mut out: Vec<Realization> = Vec::new();
    let mut seen = BTreeSet::new();
    let in_range = |x: &[i128]| {
        x.iter()
            .all(|&v| v != 0 && v.abs() <= bound && (!opts.effective || v >= 1))
    };
    // decorations only matter mod N for the congruence: walk small kernel
    // combinations and reduce each coordinate into 1..=N
    let steps: Vec<i128> = (0..=(opts.budget as i128))
        .flat_map(|k| [k, -k])
        .skip(1)
        .collect();
    let mut tried = 0usize;
    let mut level = 0usize;
    while out.len() < opts.count && tried < opts.budget {
        let combos = super::search::tuples_up_to(kernel.len(), level, steps.len());
        if combos.is_empty() && level > 0 {
            break;
        }
        level += 1;
        for ix in combos {
            tried += 1;
            let mut x = base.clone();
            for (k, &i) in kernel.iter().zip(&ix) {
                for (xj, kj) in x.iter_mut().zip(k) {
                    *xj += steps[i] * kj;
                }
            }
            let x: Vec<i128> = x
                .iter()
                .zip(&fixed)
                .map(|(&v, &f)| if f { 1 } else { reduce(v, big_n) })
                .collect();
            if !seen.insert(x.clone()) {
                continue;
            }
            if !in_range(&x) || !m.allowed_at(&x) {
                continue;
            }
            let mut found = certify(&m, &t, lambda, &x);
            if found.is_none() {
                found = repair(&m, &t, &x)
                    .into_iter()
                    .filter(|y| in_range(y) && m.allowed_at(y))
                    .find_map(|y| certify(&m, &t, lambda, &y));
            }
            if let Some(mut r) = found {
                r.method = Method::Star;
                out.push(r);
                if out.len() >= opts.count {
                    break;
                }
            }
            if tried >= opts.budget {
                break;
            }
        }
    }
    if out.is_empty() {
        return Err(Error::precondition(format!(
            "no allowed decoration with nonzero residue found with |i| <= {bound}{}",
            if opts.effective { " (effective)" } else { "" }
        )));
    }
    Ok(out)
}
