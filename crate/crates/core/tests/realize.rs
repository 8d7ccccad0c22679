use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

use splicezeta::algebra::{qfrac, UnityRoot, Q};
use splicezeta::allowed::is_allowed;
use splicezeta::diagram::{validate, SpliceDiagram, WTarget};
use splicezeta::format::parse_splice;
use splicezeta::gen;
use splicezeta::monodromy::monodromy;
use splicezeta::realize::*;
use splicezeta::zeta::zeta_splice;

fn example() -> SpliceDiagram {
    parse_splice(include_str!("../corpus/example.sd")).unwrap()
}

fn example_n7() -> SpliceDiagram {
    parse_splice(include_str!("../corpus/example_n7.sd")).unwrap()
}

fn lam(s: &str) -> UnityRoot {
    UnityRoot::parse(s).unwrap()
}

/// Re-derives the certificate from the returned diagram alone.
fn recheck(r: &Realization, l: &UnityRoot) {
    assert!(is_allowed(&r.diagram).unwrap().allowed);
    assert_eq!(UnityRoot::from_rational(&r.pole.at).unwrap(), *l);
    let z = zeta_splice(&r.diagram).unwrap();
    let poles = z.poles().unwrap();
    let p = poles.iter().find(|p| p.at == r.pole.at).expect("pole");
    assert_eq!(p.order, r.pole.order);
    if p.order == 1 {
        assert_eq!(z.residue_from_vertex_factors(&p.at).unwrap(), p.leading);
        assert!(!p.leading.is_zero());
    }
}

fn value(r: &Realization, slot: &str) -> i128 {
    r.values.iter().find(|v| v.slot == slot).unwrap().value
}

#[test]
fn example_realizes_one_sixth_effectively() {
    let opts = RealizeOptions {
        effective: true,
        count: 3,
        ..Default::default()
    };
    for l in ["1/6", "5/6"] {
        let o = realize_eigenvalue(&example(), &lam(l), &opts).unwrap();
        assert!(o.realized(), "{l}");
        assert_eq!(o.solutions.len(), 3);
        for r in &o.solutions {
            assert!(r.effective && r.values.iter().all(|v| v.value >= 1));
            recheck(r, &lam(l));
        }
    }
}

fn qv(n: i128) -> Q {
    qfrac(n, 1)
}

fn inv(x: Q) -> Q {
    Q::from_integer(1.into()) / x
}

#[test]
fn worked_example_closed_forms() {
    // i1 = i2 = 1, I' = 7 with i1' = 1, i2' = 2
    let d = with_boundary_w(&example(), &[("l1", 1), ("u1", 1), ("l1p", 1), ("u1p", 2)]);
    assert!(is_allowed(&d).unwrap().allowed);
    let z = zeta_splice(&d).unwrap();
    for k in [-7i128, -2, 2, 3, 5, 11] {
        let s = qfrac(k, 5);
        let six = qv(6) * s.clone();
        let expect = qv(4) * inv(six.clone() - qv(1)) - inv(s.clone() + qv(1))
            + inv(six.clone() + qv(1)) * (qv(-1) + qfrac(7, 2))
            + qv(12) * inv((six.clone() - qv(1)) * (six + qv(1)));
        assert_eq!(z.value.eval(&s).unwrap(), expect, "s = {s}");
    }
    let mut poles: Vec<Q> = z.poles().unwrap().into_iter().map(|p| p.at).collect();
    poles.sort();
    assert_eq!(poles, vec![qv(-1), qfrac(-1, 6), qfrac(1, 6)]);

    // i1 = 1, i2 = 3 for several (i1', i2'); allowed exactly when I' = 7
    for (a, b) in [(1i128, 2i128), (1, 1), (3, 1), (1, 4), (5, 2)] {
        let d = with_boundary_w(
            &example(),
            &[("l1", 1), ("u1", 3), ("l1p", a as i64), ("u1p", b as i64)],
        );
        let big = 3 * a + 2 * b;
        assert_eq!(is_allowed(&d).unwrap().allowed, big == 7);
        let z = zeta_splice(&d).unwrap();
        let bq = qv(big);
        for k in [-7i128, 2, 3, 13] {
            let s = qfrac(k, 11);
            let six = qv(6) * s.clone();
            let e1 = inv(qv(6) * bq.clone() - qv(15) + six.clone());
            let e2 = inv(qv(7) * bq.clone() - qv(24) + six.clone());
            let expect = qv(2) * e1.clone()
                + (qv(-1) + bq.clone() / qv(a * b)) * e2.clone()
                + inv(bq.clone() - qv(3) + s.clone()) * (qv(-1) + inv(s.clone() + qv(1)) + e1 + e2);
            assert_eq!(z.value.eval(&s).unwrap(), expect, "({a},{b}) s = {s}");
        }
        // the candidate (15 - 6I')/6 induces -1 and is never a pole
        let s0 = qfrac(15 - 6 * big, 6);
        assert_eq!(z.value.laurent_leading(&s0).0, 0);
        if big == 7 {
            assert!(z
                .poles()
                .unwrap()
                .iter()
                .any(|p| UnityRoot::from_rational(&p.at).unwrap() == lam("5/6")));
        }
    }
}

fn with_boundary_w(d: &SpliceDiagram, vals: &[(&str, i64)]) -> SpliceDiagram {
    let mut out = d.without_w();
    for (v, i) in vals {
        out.add_warrow_at(&format!("w{v}"), v, *i);
    }
    out
}

/// The obstruction table of the worked example with the arrow of
/// multiplicity N on the middle node.
fn tabulated_allowed(i1: i128, i2: i128, j1: i128, j2: i128) -> bool {
    let big_i = 3 * i1 + 2 * i2;
    let big_j = 3 * j1 + 2 * j2;
    let side = |a: i128, b: i128| !(a % 2 == 0 || b % 3 == 0) || a == 2 || b == 3;
    (big_i == 7 || big_j == 7) && side(i1, i2) && side(j1, j2)
}

#[test]
fn ex7_is_unrealizable_with_the_congruence_obstruction() {
    let t = std::time::Instant::now();
    let o = realize_eigenvalue(&example_n7(), &lam("37/42"), &RealizeOptions::default()).unwrap();
    assert!(!o.realized());
    assert!(o
        .notes
        .iter()
        .any(|n| n.contains("unrealizable within bound")));
    let rep = o.search.as_ref().unwrap();
    assert!(rep.impossible);
    let v1 = rep.targets.iter().find(|t| t.target == "node v1").unwrap();
    assert!(v1
        .split
        .iter()
        .any(|s| s.starts_with("3*i[l1] + 2*i[u1] ≡ 5 (mod 6)")));
    assert!(v1
        .split
        .iter()
        .any(|s| s.starts_with("2*i[u1p] + 3*i[l1p] ≡ 1 (mod 7)")));
    let contra: Vec<&String> = v1
        .obstructions
        .iter()
        .filter(|s| s.contains("contradicts"))
        .collect();
    assert_eq!(contra.len(), 2);
    assert!(t.elapsed().as_secs() < 10);
}

#[test]
fn ex7_brute_force_agrees() {
    // nu_1 = -78 + 7I + 6I' with I = 3 i1 + 2 i2, I' = 3 i1' + 2 i2'
    let r: Vec<i128> = (-12..=12).filter(|&x| x != 0).collect();
    for &a in &r {
        for &b in &r {
            for &c in &r {
                for &e in &r {
                    let nu = -78 + 7 * (3 * a + 2 * b) + 6 * (3 * c + 2 * e);
                    assert!(!(tabulated_allowed(a, b, c, e) && nu.rem_euclid(42) == 5));
                }
            }
        }
    }
}

#[test]
fn allowedness_matches_the_worked_table() {
    let mut rng = gen::rng(11);
    let d = example_n7();
    for _ in 0..300 {
        let mut v = [0i128; 4];
        for x in v.iter_mut() {
            *x = loop {
                let y = rng.gen_range(-8..=8);
                if y != 0 {
                    break y;
                }
            };
        }
        let w = with_boundary_w(
            &d,
            &[
                ("l1", v[0] as i64),
                ("u1", v[1] as i64),
                ("l1p", v[2] as i64),
                ("u1p", v[3] as i64),
            ],
        );
        assert_eq!(
            is_allowed(&w).unwrap().allowed,
            tabulated_allowed(v[0], v[1], v[2], v[3]),
            "{v:?}"
        );
    }
}

#[test]
fn ex7_with_a_doubled_arrow_is_realized() {
    let opts = RealizeOptions {
        double_arrows: true,
        ..Default::default()
    };
    let o = realize_eigenvalue(&example_n7(), &lam("37/42"), &opts).unwrap();
    assert!(o.realized());
    let r = &o.solutions[0];
    recheck(r, &lam("37/42"));
    assert_ne!(value(r, "k[f]"), 1);
}

fn intro_star() -> SpliceDiagram {
    let mut s = SpliceDiagram::new("intro");
    s.add_vertex("e").add_vertex("b1").add_vertex("b2");
    s.add_edge("e", "b1", 2, 1).add_edge("e", "b2", 3, 1);
    s.add_farrow("f1", "e", 1, 1).add_farrow("f2", "e", 1, 1);
    s
}

fn intro_nu(k1: i128, k2: i128, i1: i128, i2: i128) -> i128 {
    6 * (k1 + k2 - 2) + 3 * i1 + 2 * i2
}

#[test]
fn intro_star_congruence() {
    // k1 = k2 = 1, i1 = 3, i2 = 2: nu = 13, pole -13/12 inducing 11/12
    let mut s = intro_star();
    s.add_warrow_at("w1", "b1", 3).add_warrow_at("w2", "b2", 2);
    assert!(is_allowed(&s).unwrap().allowed);
    let s0 = qfrac(-intro_nu(1, 1, 3, 2), 12);
    assert_eq!(s0, qfrac(-13, 12));
    let z = zeta_splice(&s).unwrap();
    assert!(z.poles().unwrap().iter().any(|p| p.at == s0));
    assert_eq!(UnityRoot::from_rational(&s0).unwrap(), lam("11/12"));

    let l = lam("11/12");
    let opts = StarOptions {
        count: 6,
        ..Default::default()
    };
    let sols = realize_star(&intro_star(), &l, &opts).unwrap();
    assert_eq!(sols.len(), 6);
    for r in &sols {
        let nu = intro_nu(
            value(r, "k[f1]"),
            value(r, "k[f2]"),
            value(r, "i[b1]"),
            value(r, "i[b2]"),
        );
        assert_eq!(nu.rem_euclid(12), 1);
        assert_eq!(r.pole.at, qfrac(-nu, 12));
        recheck(r, &l);
    }
}

#[test]
fn star_rejects_non_eigenvalues() {
    // 2 | 6 and 3 | 6: exp(2 pi i 6/12) is not a root of the star's polynomial
    let e = realize_star(&intro_star(), &lam("1/2"), &StarOptions::default()).unwrap_err();
    assert!(e.to_string().contains("not an eigenvalue of this star"));
}

#[test]
fn star_effective_solutions() {
    let l = lam("7/12");
    let opts = StarOptions {
        count: 4,
        effective: true,
        ..Default::default()
    };
    for r in realize_star(&intro_star(), &l, &opts).unwrap() {
        assert!(r.values.iter().all(|v| v.value >= 1));
        recheck(&r, &l);
    }
}

/// All allowed decorations in `1..=b` of a star, with a certified pole at
/// the centre inducing `l`.
fn brute_star(s: &SpliceDiagram, l: &UnityRoot, b: i128) -> Vec<Vec<i128>> {
    let m = AffineModel::build(s, true).unwrap();
    let n = m.slots.len();
    let t = splicezeta::realize::search::targets(&m, l)
        .into_iter()
        .find(|t| t.kind == TargetKind::Node)
        .unwrap();
    let mut out = Vec::new();
    let total = (b as usize).pow(n as u32);
    for k in 0..total {
        let mut x = Vec::new();
        let mut r = k;
        for _ in 0..n {
            x.push((r % b as usize) as i128 + 1);
            r /= b as usize;
        }
        let d = m.instantiate(&x).unwrap();
        if !is_allowed(&d).unwrap().allowed {
            continue;
        }
        let s0 = qfrac(-t.form.eval(&x).unwrap(), t.modulus);
        if UnityRoot::from_rational(&s0).unwrap() != *l {
            continue;
        }
        if zeta_splice(&d).unwrap().value.laurent_leading(&s0).0 > 0 {
            out.push(x);
        }
    }
    out
}

#[test]
fn star_construction_meets_brute_force() {
    let mut s = SpliceDiagram::new("small");
    s.add_vertex("e").add_vertex("b1").add_vertex("b2");
    s.add_edge("e", "b1", 2, 1).add_edge("e", "b2", 3, 1);
    s.add_farrow("f", "e", 1, 1);
    for l in ["1/6", "5/6"] {
        let l = lam(l);
        let brute = brute_star(&s, &l, 12);
        let opts = StarOptions {
            count: 8,
            effective: true,
            bound: 12,
            ..Default::default()
        };
        let sols = realize_star(&s, &l, &opts).unwrap();
        let hits = sols
            .iter()
            .filter(|r| brute.contains(&r.values.iter().map(|v| v.value).collect()))
            .count();
        assert!(hits > 0);
        for r in &sols {
            let x: Vec<i128> = r.values.iter().map(|v| v.value).collect();
            if x.iter().all(|&v| v <= 12) {
                assert!(brute.contains(&x), "{x:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // one arrow of weight 1 and two legs: every allowed W whose candidate
    // induces an Alexander root gives a pole
    #[test]
    fn one_arrow_two_legs_always_pole(
        pair in prop::sample::select(vec![(2i64, 3i64), (2, 5), (3, 4), (3, 5), (4, 5), (2, 7)]),
        mult in 1i64..4,
        i1 in -9i64..=9,
        i2 in -9i64..=9,
    ) {
        prop_assume!(i1 != 0 && i2 != 0);
        let (d1, d2) = pair;
        let mut s = SpliceDiagram::new("s");
        s.add_vertex("e").add_vertex("b1").add_vertex("b2");
        s.add_edge("e", "b1", d1, 1).add_edge("e", "b2", d2, 1);
        s.add_farrow("f", "e", 1, mult);
        let alex = monodromy(&s).unwrap().alexander;
        s.add_warrow_at("w1", "b1", i1).add_warrow_at("w2", "b2", i2);
        prop_assume!(is_allowed(&s).unwrap().allowed);
        let n = (d1 * d2 * mult) as i128;
        let nu = (d2 * i1 + d1 * i2) as i128;
        let s0 = qfrac(-nu, n);
        let l = UnityRoot::from_rational(&s0).unwrap();
        prop_assume!(alex.root_multiplicity(&l) > 0);
        let z = zeta_splice(&s).unwrap();
        prop_assert!(z.value.laurent_leading(&s0).0 > 0);
    }
}

#[test]
fn extension_on_the_worked_example() {
    // right side carries I' = 7; the left star is forced to i0 = -1
    let d = with_boundary_w(&example(), &[("l1p", 1), ("u1p", 2)]);
    let (out, case) = extend_allowed(&d, "v1", "v0", -1).unwrap();
    assert!(case.arrows_right && case.surjective);
    let w = |id: &str| w_at(&out, id);
    let (i1, i2) = (w("l1"), w("u1"));
    // value induced at v0: -6 + 3 i1 + 2 i2
    assert_eq!(-6 + 3 * i1 + 2 * i2, -1);
    assert!(tabulated_allowed(i1, i2, 1, 2));
    assert_eq!((w("l1p"), w("u1p")), (1, 2));
}

/// Two nodes: `a` with legs 2 and 3 and weight `dl` towards `b`; `b` with
/// legs 5 and 7.
fn two_star(dl: i64, arrow_left: bool, arrow_right: bool) -> SpliceDiagram {
    let e = (6 * 35) / dl + 1;
    let e = (e..).find(|x| x % 5 != 0 && x % 7 != 0).unwrap();
    let mut s = SpliceDiagram::new("two");
    for v in ["a", "b", "x1", "x2", "y0", "y1"] {
        s.add_vertex(v);
    }
    s.add_edge("a", "x1", 2, 1).add_edge("a", "x2", 3, 1);
    s.add_edge("a", "b", dl, e);
    s.add_edge("b", "y0", 5, 1).add_edge("b", "y1", 7, 1);
    if arrow_left {
        s.add_farrow("fa", "a", 1, 1);
    }
    if arrow_right {
        s.add_farrow("fb", "b", 1, 1);
    }
    s
}

fn w_at(d: &SpliceDiagram, id: &str) -> i128 {
    d.warrows
        .iter()
        .find(|w| matches!(&w.target, WTarget::At(x) if x == id))
        .map(|w| w.value as i128)
        .unwrap_or(1)
}

fn w_doubling(d: &SpliceDiagram, id: &str) -> i128 {
    d.warrows
        .iter()
        .find(|w| matches!(&w.target, WTarget::Doubles(x) if x == id))
        .map(|w| w.value as i128)
        .unwrap_or(1)
}

#[test]
fn extension_forced_branch() {
    // n = 2, D = d1 d2, i' = D c: i1 = d1 and i2 = c d2
    let d = two_star(1, false, true);
    assert!(validate(&d).ok, "{}", validate(&d).summary());
    for c in [1i128, 2, 3, -1, -2] {
        let (out, _) = extend_allowed(&d, "a", "b", 6 * c).unwrap();
        assert_eq!((w_at(&out, "x1"), w_at(&out, "x2")), (2, 3 * c));
    }
}

#[test]
fn extension_is_complete_on_small_boxes() {
    // left star a: legs 2, 3, one arrow, weight 5 towards b; nothing right
    // of the cut carries an arrow. Induced at b: -12 + 3 i1 + 2 i2 + 6 k.
    let base = two_star(5, true, false);
    assert!(validate(&base).ok, "{}", validate(&base).summary());
    let mut rng = gen::rng(5);
    let (mut built, mut refused) = (0, 0);
    for _ in 0..40 {
        let y0 = rng.gen_range(1..6);
        let y1 = rng.gen_range(1..6);
        let ip: i128 = loop {
            let x = rng.gen_range(-30..30);
            if x != 0 {
                break x;
            }
        };
        let d = with_boundary_w(&base, &[("y0", y0), ("y1", y1)]);
        match extend_allowed(&d, "a", "b", ip) {
            Ok((out, _)) => {
                assert!(is_allowed(&out).unwrap().allowed);
                let (i1, i2, k) = (w_at(&out, "x1"), w_at(&out, "x2"), w_doubling(&out, "fa"));
                assert_eq!(-12 + 3 * i1 + 2 * i2 + 6 * k, ip);
                assert_eq!(
                    (w_at(&out, "y0"), w_at(&out, "y1")),
                    (y0 as i128, y1 as i128)
                );
                built += 1;
            }
            Err(_) => {
                // nothing in a box around the origin works either
                for i1 in (-12i128..=12).filter(|&x| x != 0) {
                    for i2 in (-12i128..=12).filter(|&x| x != 0) {
                        let r = ip + 12 - 3 * i1 - 2 * i2;
                        if r % 6 != 0 || r == 0 {
                            continue;
                        }
                        let mut t = with_boundary_w(
                            &base,
                            &[("y0", y0), ("y1", y1), ("x1", i1 as i64), ("x2", i2 as i64)],
                        );
                        t.add_warrow_doubling("wk", "fa", (r / 6) as i64);
                        assert!(
                            !is_allowed(&t).unwrap().allowed,
                            "{ip}: {i1} {i2} {}",
                            r / 6
                        );
                    }
                }
                refused += 1;
            }
        }
    }
    assert!(built > 0);
    let _ = refused;
}

#[test]
fn chain_bound_on_staircases() {
    let mut rng = gen::rng(21);
    let mut checked = 0;
    for _ in 0..6 {
        let pairs = gen::random_staircase_pairs(&mut rng, 3);
        let d = gen::staircase(&pairs, 1);
        let eig = monodromy(&d).unwrap().eigenvalues();
        for l in eig.iter().filter(|l| l.q > 1).take(3) {
            let o = realize_eigenvalue(&d, l, &RealizeOptions::default()).unwrap();
            assert!(o.realized(), "{pairs:?} {l}");
            for r in &o.solutions {
                recheck(r, l);
                for c in &r.chain {
                    assert!(c.holds(), "{c:?}");
                    checked += c.chain as usize;
                }
            }
        }
    }
    assert!(checked > 0);
}
