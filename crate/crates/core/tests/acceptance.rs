//! Acceptance runner: one PASS/FAIL line per criterion with its timing
//! against the pinned limit. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;

use splicezeta::algebra::{q, qfrac, CycloProduct, IntPoly, Poly, RatFunc, UnityRoot};
use splicezeta::allowed::{check_goal1, is_allowed, semigroup_condition};
use splicezeta::checks::{self, SuiteReport};
use splicezeta::diagram::SpliceDiagram;
use splicezeta::divisor::nu_values;
use splicezeta::format::{parse_plumbing, parse_splice};
use splicezeta::monodromy::{monodromy, monodromy_plumbing};
use splicezeta::parallel::Exec;
use splicezeta::realize::{realize_eigenvalue, RealizeOptions};
use splicezeta::splice::stars;
use splicezeta::zeta::{zeta_plumbing, zeta_splice};

const SEED: u64 = 20240611;

fn example_sd() -> SpliceDiagram {
    parse_splice(include_str!("../corpus/example.sd")).unwrap()
}

/// `a s + b`
fn lin(a: i128, b: i128) -> RatFunc {
    RatFunc::from_poly(Poly::linear(q(b), q(a)))
}

fn c(x: i128) -> RatFunc {
    RatFunc::constant(q(x))
}

fn inv(f: &RatFunc) -> RatFunc {
    c(1).div(f).unwrap()
}

fn with_boundary_w(d: &SpliceDiagram, vals: &[(&str, i64)]) -> SpliceDiagram {
    let mut out = d.without_w();
    for (v, i) in vals {
        out.add_warrow_at(&format!("w{v}"), v, *i);
    }
    out
}

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn suite(r: &SuiteReport, min_cases: usize) -> Result<String, String> {
    ensure(
        r.cases >= min_cases,
        format!("{}: only {} cases", r.name, r.cases),
    )?;
    ensure(
        r.ok(),
        format!("{}: {} failures, e.g. {:?}", r.name, r.failed, r.failures),
    )?;
    Ok(format!("{} {} cases", r.name, r.cases))
}

fn c1_example_golden() -> Check {
    let g = parse_plumbing(include_str!("../corpus/example.pg")).map_err(|e| e.to_string())?;
    let d = g.to_splice().map_err(|e| e.to_string())?;
    let nu = nu_values(&d).map_err(|e| e.to_string())?;
    for (v, want) in [("v1", -13), ("v1p", -13), ("v0", -2)] {
        ensure(
            nu.get(v) == Some(&want),
            format!("nu({v}) = {:?}, expected {want}", nu.get(v)),
        )?;
    }
    // 2*4/(6s-13) + (1/(s-2)) (-1 + 1/(s+1)) + 2/((s-2)(6s-13))
    let printed = c(8)
        .mul(&inv(&lin(6, -13)))
        .add(&inv(&lin(1, -2)).mul(&c(-1).add(&inv(&lin(1, 1)))))
        .add(&c(2).mul(&inv(&lin(1, -2).mul(&lin(6, -13)))));
    let zs = zeta_splice(&d).map_err(|e| e.to_string())?.value;
    let zp = zeta_plumbing(&g).map_err(|e| e.to_string())?.value;
    ensure(
        zs == printed,
        format!("converted diagram: Z = {zs}, printed {printed}"),
    )?;
    ensure(
        zp == printed,
        format!("plumbing graph: Z = {zp}, printed {printed}"),
    )?;
    let direct = zeta_splice(&example_sd()).map_err(|e| e.to_string())?.value;
    ensure(direct == printed, "hand-entered splice diagram disagrees")?;
    Ok(format!("Z = {printed}"))
}

fn c2_splice_identity() -> Check {
    let d = example_sd();
    let z = zeta_splice(&d).map_err(|e| e.to_string())?.value;
    let parts = stars(&d).map_err(|e| e.to_string())?;
    let zs = |id: &str| -> RatFunc {
        let s = &parts.iter().find(|(n, _)| n == id).unwrap().1;
        zeta_splice(s).unwrap().value
    };
    // (1/(6s-13)) (4 + 7/(s-1)) and (1/(s-2)) (-3 + 1/(s+1))
    let z1 = inv(&lin(6, -13)).mul(&c(4).add(&c(7).mul(&inv(&lin(1, -1)))));
    let z0 = inv(&lin(1, -2)).mul(&c(-3).add(&inv(&lin(1, 1))));
    ensure(
        zs("v1") == z1 && zs("v1p") == z1,
        "outer star zeta differs from the printed one",
    )?;
    ensure(
        zs("v0") == z0,
        "middle star zeta differs from the printed one",
    )?;
    let corr = c(2).mul(&inv(&c(-1).mul(&lin(1, -1))));
    ensure(
        z == z1.add(&z0).add(&z1).sub(&corr),
        "Z(G) != Z(G1) + Z(G0) + Z(G1') - 2/((-1)(s-1))",
    )?;
    let r = checks::splice_formula(500, SEED, Exec::Parallel);
    suite(&r, 500)
}

fn c3_alexander() -> Check {
    let d = example_sd();
    let whole = monodromy(&d)
        .map_err(|e| e.to_string())?
        .alexander
        .expand()
        .map_err(|e| e.to_string())?;
    let f = IntPoly::from_i64(&[1, -1, 1]);
    ensure(whole == f.mul(&f), format!("Lambda = {whole}"))?;
    let mut prod = IntPoly::one();
    for (id, s) in stars(&d).map_err(|e| e.to_string())? {
        let l = monodromy(&s.without_w())
            .map_err(|e| e.to_string())?
            .alexander
            .expand()
            .map_err(|e| e.to_string())?;
        let want = if id == "v0" {
            IntPoly::one()
        } else {
            f.clone()
        };
        ensure(l == want, format!("Lambda of star {id} = {l}"))?;
        prod = prod.mul(&l);
    }
    ensure(prod == whole, "product of star factors differs")?;
    let r = checks::alexander_multiplicativity(500, SEED + 1, Exec::Parallel);
    suite(&r, 500)
}

fn c4_allowedness() -> Check {
    ensure(
        !is_allowed(&example_sd()).unwrap().allowed,
        "W = 0 allowed on the example",
    )?;
    let st = parse_splice(include_str!("../corpus/staircase.sd")).unwrap();
    ensure(
        semigroup_condition(&st).unwrap().ok,
        "staircase fails the semigroup condition",
    )?;
    ensure(
        is_allowed(&st).unwrap().allowed,
        "W = 0 not allowed on the staircase",
    )?;
    let r = checks::w0_allowed(150, SEED + 2, Exec::Parallel);
    suite(&r, 300)
}

fn c5_goal1() -> Check {
    let d = with_boundary_w(
        &example_sd(),
        &[("l1", 1), ("u1", 6), ("l1p", 1), ("u1p", 1)],
    );
    let r = check_goal1(&d).map_err(|e| e.to_string())?;
    let bad = r.violations();
    ensure(
        !r.holds
            && bad.len() == 1
            && bad[0].at == qfrac(-57, 6)
            && bad[0].lambda == UnityRoot::new(1, 2).unwrap(),
        format!("negative control not flagged: {:?}", bad),
    )?;
    let s = checks::goal1(500, SEED + 3, Exec::Parallel);
    Ok(format!("{}; -57/6 flagged", suite(&s, 500)?))
}

fn c6_residue_cancellation() -> Check {
    // i1 = 1, i2 = 3 and (i1', i2') with 3 i1' + 2 i2' = I'
    let mut seen = Vec::new();
    for (big, a, b) in [(5, 1, 1), (6, -2, 6), (7, 1, 2), (8, 2, 1), (12, 2, 3)] {
        assert_eq!(3 * a + 2 * b, big);
        let d = with_boundary_w(
            &example_sd(),
            &[("l1", 1), ("u1", 3), ("l1p", a), ("u1p", b)],
        );
        let z = zeta_splice(&d).map_err(|e| e.to_string())?;
        let s0 = qfrac(15 - 6 * big as i128, 6);
        ensure(
            z.candidates().contains(&s0),
            format!("I' = {big}: {s0} is not a candidate"),
        )?;
        let by_terms = z
            .residue_from_vertex_factors(&s0)
            .map_err(|e| e.to_string())?;
        let (order, _) = z.value.laurent_leading(&s0);
        ensure(
            order == 0 && by_terms.is_zero(),
            format!("I' = {big}: residue {by_terms}, order {order}"),
        )?;
        seen.push(big);
    }
    Ok(format!("zero residue for I' in {seen:?}"))
}

fn c7_realization() -> Check {
    let limit = Duration::from_secs(10);
    let mut parts = Vec::new();
    for l in ["1/6", "5/6"] {
        let t = Instant::now();
        let lam = UnityRoot::parse(l).unwrap();
        let opts = RealizeOptions {
            effective: true,
            ..Default::default()
        };
        let o = realize_eigenvalue(&example_sd(), &lam, &opts).map_err(|e| e.to_string())?;
        ensure(o.realized(), format!("{l} not realized"))?;
        let r = &o.solutions[0];
        ensure(
            r.values.iter().all(|v| v.value >= 1),
            format!("{l}: not effective"),
        )?;
        // independent certificate
        ensure(
            is_allowed(&r.diagram).unwrap().allowed,
            format!("{l}: W not allowed"),
        )?;
        let z = zeta_splice(&r.diagram).unwrap();
        let (order, lead) = z.value.laurent_leading(&r.pole.at);
        ensure(
            order > 0 && !lead.is_zero(),
            format!("{l}: {} is not a pole", r.pole.at),
        )?;
        ensure(
            UnityRoot::from_rational(&r.pole.at).unwrap() == lam,
            format!("{l}: wrong eigenvalue"),
        )?;
        ensure(t.elapsed() < limit, format!("{l}: {:?}", t.elapsed()))?;
        parts.push(format!(
            "{l} at {} ({:.2}s)",
            r.pole.at,
            t.elapsed().as_secs_f64()
        ));
    }
    let t = Instant::now();
    let n7 = parse_splice(include_str!("../corpus/example_n7.sd")).unwrap();
    let o = realize_eigenvalue(
        &n7,
        &UnityRoot::parse("37/42").unwrap(),
        &RealizeOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure(!o.realized(), "37/42 realized on the N = 7 example")?;
    ensure(
        o.notes
            .iter()
            .any(|n| n.contains("unrealizable within bound")),
        format!("notes: {:?}", o.notes),
    )?;
    let rep = o.search.as_ref().ok_or("no search report")?;
    let v1 = rep
        .targets
        .iter()
        .find(|t| t.target == "node v1")
        .ok_or("no v1 target")?;
    let split = v1.split.join("; ");
    ensure(
        split.contains("[v0|v1] ≡ 5 (mod 6)") && split.contains("[v0|v1p] ≡ 2 (mod 7)"),
        format!("split: {split}"),
    )?;
    ensure(rep.impossible, "search did not exhaust the residue classes")?;
    ensure(t.elapsed() < limit, format!("37/42: {:?}", t.elapsed()))?;
    parts.push(format!(
        "37/42 unrealizable ({:.2}s)",
        t.elapsed().as_secs_f64()
    ));
    Ok(parts.join(", "))
}

/// `(t^{9N}+1)(t^{2N}-1)^{N-1}(t-1) / ((t^{3N}+1)(t^N-1))`
fn printed_delta1(n: u64) -> CycloProduct {
    let mut p = CycloProduct::one();
    p.push(18 * n, 1);
    p.push(9 * n, -1);
    p.push(2 * n, n as i64 - 1);
    p.push(1, 1);
    p.push(6 * n, -1);
    p.push(3 * n, 1);
    p.push(n, -1);
    p
}

fn c8_counterexamples() -> Check {
    let g = parse_plumbing(include_str!("../corpus/rodrigues.pg")).unwrap();
    let z = zeta_plumbing(&g).map_err(|e| e.to_string())?;
    let third = qfrac(1, 3);
    let (order, lead) = z.value.laurent_leading(&third);
    ensure(order == 1 && !lead.is_zero(), format!("1/3: order {order}"))?;
    let m = monodromy_plumbing(&g).map_err(|e| e.to_string())?;
    let l3 = UnityRoot::new(1, 3).unwrap();
    ensure(
        m.delta1.root_multiplicity(&l3) == 0,
        "exp(2 pi i/3) is a root of Delta_1",
    )?;
    let mut parts = vec![format!("Rodrigues: simple pole 1/3 (residue {lead})")];
    for (n, text) in [
        (1u64, include_str!("../corpus/unimod_b_n1.pg")),
        (2, include_str!("../corpus/unimod_b_n2.pg")),
    ] {
        let g = parse_plumbing(text).unwrap();
        let d = g.to_splice().map_err(|e| e.to_string())?;
        let s0 = qfrac(7, 3 * n as i128);
        let (order, _) = zeta_splice(&d).unwrap().value.laurent_leading(&s0);
        ensure(order > 0, format!("N = {n}: {s0} is not a pole"))?;
        let lam = UnityRoot::from_rational(&s0).unwrap();
        let printed = printed_delta1(n);
        ensure(
            printed.is_polynomial(),
            "printed Delta_1 is not a polynomial",
        )?;
        ensure(
            printed.root_multiplicity(&lam) == 0,
            format!("N = {n}: {lam} is a root of the printed Delta_1"),
        )?;
        let ours = monodromy(&d).unwrap().delta1;
        ensure(
            ours.expand().unwrap() == printed.expand().unwrap(),
            format!("N = {n}: Delta_1 = {ours}, printed {printed}"),
        )?;
        let sg = semigroup_condition(&d).unwrap();
        let failing: Vec<&str> = sg
            .checks
            .iter()
            .filter(|c| !c.ok)
            .map(|c| c.node.as_str())
            .collect();
        ensure(
            failing == ["v3"],
            format!("N = {n}: semigroup fails at {failing:?}"),
        )?;
        parts.push(format!("N = {n}: pole {s0}, semigroup fails at v3"));
    }
    Ok(parts.join("; "))
}

fn c9_oracles() -> Check {
    let r = checks::plumbing_equivalence(300, SEED + 4, Exec::Parallel);
    suite(&r, 300)
}

fn c10_lemmas() -> Check {
    let a = checks::coprime_lemma(11, 4, Exec::Parallel);
    let b = checks::induced_negative(200, SEED + 5, Exec::Parallel);
    Ok(format!("{}; {}", suite(&a, 1)?, suite(&b, 200)?))
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, u64, fn() -> Check); 10] = [
        (1, "worked example: conversion, nu, Z", 1, c1_example_golden),
        (
            2,
            "splice identity + 500 random splices",
            60,
            c2_splice_identity,
        ),
        (3, "Alexander multiplicativity", 60, c3_alexander),
        (4, "allowedness goldens", 60, c4_allowedness),
        (5, "goal (1) on 500 allowed pairs", 120, c5_goal1),
        (6, "residue cancellation family", 5, c6_residue_cancellation),
        (7, "realization goldens", 30, c7_realization),
        (8, "counterexample graphs", 10, c8_counterexamples),
        (9, "plumbing/splice oracle equivalence", 120, c9_oracles),
        (10, "arithmetic lemmas", 120, c10_lemmas),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let t = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let el = t.elapsed();
        let res = match res {
            Ok(_) if el > Duration::from_secs(limit) => {
                Err(format!("took {:.2}s", el.as_secs_f64()))
            }
            r => r,
        };
        let (tag, msg) = match &res {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        if res.is_err() {
            failed += 1;
        }
        println!(
            "{tag} [{id:>2}] {name} ({:.2}s, limit {limit}s): {msg}",
            el.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
