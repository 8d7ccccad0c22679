use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use splicezeta::algebra::{fmt_q, CycloProduct, Poly, RatFunc, UnityRoot};
use splicezeta::allowed::{check_goal1, is_allowed, semigroup_condition};
use splicezeta::checks::{self, SuiteReport};
use splicezeta::diagram::{validate, SpliceDiagram};
use splicezeta::format::{self, Document};
use splicezeta::monodromy::{monodromy, monodromy_plumbing, Monodromy};
use splicezeta::parallel::Exec;
use splicezeta::realize::{realize_eigenvalue, RealizeOptions};
use splicezeta::splice::{split_edge, stars};
use splicezeta::zeta::{zeta_plumbing, zeta_splice, Zeta};
use splicezeta::Error;

#[derive(Parser)]
#[command(
    name = "splicezeta",
    version,
    about = "Zeta functions and monodromy of splice diagrams"
)]
struct Cli {
    /// structured output; rationals as "p/q" strings, polynomials as
    /// ascending coefficient arrays
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the structural conditions on a diagram or plumbing graph
    Validate { file: PathBuf },
    /// Convert a plumbing graph to its splice diagram (splice input is reprinted)
    Convert { file: PathBuf },
    /// Topological zeta function with its term list
    Zeta { file: PathBuf },
    /// Poles of the reduced zeta function
    Poles { file: PathBuf },
    /// Monodromy zeta function, Delta_0, Delta_1 and the Alexander polynomial
    Alexander { file: PathBuf },
    /// Whether exp(2 pi i p/q) is a monodromy eigenvalue
    Eig {
        file: PathBuf,
        #[arg(long)]
        lambda: String,
    },
    /// Semigroup condition at every node
    Semigroup { file: PathBuf },
    /// Star test for the W decoration
    Allowed { file: PathBuf },
    /// Split along an edge between two nodes
    Splice {
        file: PathBuf,
        /// `id1:id2`
        #[arg(long)]
        edge: String,
    },
    /// Star decomposition
    Stars { file: PathBuf },
    /// Check that every pole induces a monodromy eigenvalue
    Goal1 { file: PathBuf },
    /// Search for a W decoration realizing exp(2 pi i p/q) as a pole
    Realize {
        file: PathBuf,
        #[arg(long)]
        lambda: String,
        /// all W values at least 1
        #[arg(long)]
        effective: bool,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// bound on |i| for searched values
        #[arg(long)]
        bound: Option<i128>,
        /// also decorate F-arrows with doubling W-arrows outside the arrow step
        #[arg(long)]
        double_arrows: bool,
    },
    /// Run the golden corpus and the randomized property suites
    Selfcheck {
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
    },
}

enum Fail {
    Usage(String),
    Math(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Parse { .. } => Fail::Usage(e.to_string()),
            _ => Fail::Math(e.to_string()),
        }
    }
}

type Out = Result<(Value, String), Fail>;

fn load(path: &PathBuf) -> Result<Document, Fail> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    Ok(format::parse(&text)?)
}

fn checked(d: &SpliceDiagram) -> Result<(), Fail> {
    let r = validate(d);
    if r.ok {
        Ok(())
    } else {
        Err(Fail::Math(format!("invalid diagram: {}", r.summary())))
    }
}

fn splice_of(doc: &Document) -> Result<SpliceDiagram, Fail> {
    let d = match doc {
        Document::Splice(d) => d.clone(),
        Document::Plumbing(g) => g.to_splice()?,
    };
    checked(&d)?;
    Ok(d)
}

fn lambda_arg(s: &str) -> Result<UnityRoot, Fail> {
    UnityRoot::parse(s).map_err(|e| Fail::Usage(format!("--lambda: {e}")))
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn poly_json(p: &Poly) -> Value {
    Value::from_iter(p.coeffs().iter().map(|c| Value::from(fmt_q(c))))
}

fn ratfunc_json(f: &RatFunc) -> Value {
    json!({
        "numerator": poly_json(f.numerator()),
        "denominator": poly_json(f.denominator()),
    })
}

fn cyclo_json(c: &CycloProduct) -> Value {
    let factors: Vec<Value> = c
        .exponents()
        .iter()
        .map(|(n, e)| json!({"n": n, "e": e}))
        .collect();
    let coeffs = match c.expand() {
        Ok(p) => Value::from_iter(p.coeffs().iter().map(|x| Value::from(x.to_string()))),
        Err(_) => Value::Null,
    };
    json!({"factors": factors, "coeffs": coeffs, "display": c.to_string()})
}

fn zeta_of(doc: &Document) -> Result<Zeta, Fail> {
    Ok(match doc {
        Document::Splice(d) => {
            checked(d)?;
            zeta_splice(d)?
        }
        Document::Plumbing(g) => zeta_plumbing(g)?,
    })
}

fn monodromy_of(doc: &Document) -> Result<Monodromy, Fail> {
    Ok(match doc {
        Document::Splice(d) => {
            checked(d)?;
            monodromy(&d.without_w())?
        }
        Document::Plumbing(g) => monodromy_plumbing(g)?,
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "no"
    }
}

fn suites_text(rs: &[SuiteReport]) -> String {
    let mut s = String::new();
    for r in rs {
        let tag = if r.ok() { "PASS" } else { "FAIL" };
        writeln!(s, "{tag} {} ({} cases, {} ms)", r.name, r.cases, r.millis).unwrap();
        for f in &r.failures {
            writeln!(s, "    {f}").unwrap();
        }
    }
    s
}

fn run(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Validate { file } => match load(&file)? {
            Document::Splice(d) => {
                let r = validate(&d);
                let text = if r.ok {
                    format!("ok: {} nodes\n", r.nodes.len())
                } else {
                    r.violations
                        .iter()
                        .map(|v| format!("{}: {}\n", v.code, v.message))
                        .collect()
                };
                Ok((to_json(&r), text))
            }
            Document::Plumbing(g) => {
                let r = g.validate();
                let text = if r.ok {
                    format!("ok: det {}\n", r.determinant)
                } else {
                    r.problems.iter().map(|p| format!("{p}\n")).collect()
                };
                Ok((to_json(&r), text))
            }
        },
        Cmd::Convert { file } => {
            let d = splice_of(&load(&file)?)?;
            Ok((to_json(&d), format::print_splice(&d)))
        }
        Cmd::Zeta { file } => {
            let z = zeta_of(&load(&file)?)?;
            let vertices: Vec<Value> = z
                .vertices
                .iter()
                .map(|(v, nu, n)| json!({"id": v, "nu": fmt_q(nu), "N": fmt_q(n)}))
                .collect();
            let mut v = ratfunc_json(&z.value);
            v["display"] = Value::from(z.value.to_string());
            v["terms"] = to_json(&z.terms);
            v["vertices"] = Value::from(vertices);
            let mut text = format!("Z(s) = {}\n", z.value);
            for t in &z.terms {
                let f: Vec<String> = t.factors.iter().map(|l| format!("({l})")).collect();
                writeln!(text, "  {}: {} / {}", t.label, fmt_q(&t.coeff), f.join("")).unwrap();
            }
            Ok((v, text))
        }
        Cmd::Poles { file } => {
            let z = zeta_of(&load(&file)?)?;
            let poles = z.poles()?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for p in &poles {
                let lam = UnityRoot::from_rational(&p.at)?;
                let mut row = to_json(p);
                row["lambda"] = to_json(&lam);
                rows.push(row);
                writeln!(
                    text,
                    "{} order {} leading {} lambda {lam}",
                    fmt_q(&p.at),
                    p.order,
                    fmt_q(&p.leading)
                )
                .unwrap();
            }
            if poles.is_empty() {
                text.push_str("no poles\n");
            }
            Ok((Value::from(rows), text))
        }
        Cmd::Alexander { file } => {
            let m = monodromy_of(&load(&file)?)?;
            let eig = m.eigenvalues();
            let v = json!({
                "zeta": cyclo_json(&m.zeta),
                "delta0": cyclo_json(&m.delta0),
                "delta1": cyclo_json(&m.delta1),
                "alexander": cyclo_json(&m.alexander),
                "eigenvalues": to_json(&eig),
            });
            let eig_s: Vec<String> = eig.iter().map(|l| l.to_string()).collect();
            let text = format!(
                "monodromy zeta = {}\nDelta_0 = {}\nDelta_1 = {}\nAlexander = {}\neigenvalues: {}\n",
                m.zeta,
                m.delta0,
                m.delta1,
                m.alexander,
                eig_s.join(" ")
            );
            Ok((v, text))
        }
        Cmd::Eig { file, lambda } => {
            let lam = lambda_arg(&lambda)?;
            let m = monodromy_of(&load(&file)?)?;
            let inside = m.eig_contains(&lam);
            let mult = m.delta1.root_multiplicity(&lam);
            let v =
                json!({"lambda": to_json(&lam), "eigenvalue": inside, "delta1_multiplicity": mult});
            Ok((
                v,
                format!("exp(2 pi i {lam}) eigenvalue: {}\n", verdict(inside)),
            ))
        }
        Cmd::Semigroup { file } => {
            let r = semigroup_condition(&splice_of(&load(&file)?)?)?;
            let mut text = format!("semigroup condition: {}\n", verdict(r.ok));
            for c in &r.checks {
                writeln!(
                    text,
                    "  {} -> {}: {} in <{:?}>: {}",
                    c.node,
                    c.toward,
                    c.target,
                    c.generators,
                    verdict(c.ok)
                )
                .unwrap();
            }
            Ok((to_json(&r), text))
        }
        Cmd::Allowed { file } => {
            let r = is_allowed(&splice_of(&load(&file)?)?)?;
            let mut text = format!("allowed: {}\n", verdict(r.allowed));
            for s in &r.stars {
                writeln!(
                    text,
                    "  {}: {} of {} legs divisible, {} equal, need {}: {}",
                    s.node,
                    s.divisible,
                    s.legs.len(),
                    s.equal,
                    s.required,
                    verdict(s.ok)
                )
                .unwrap();
            }
            for w in &r.zero_values {
                writeln!(text, "  {w} has value 0").unwrap();
            }
            Ok((to_json(&r), text))
        }
        Cmd::Splice { file, edge } => {
            let (a, b) = edge
                .split_once(':')
                .ok_or_else(|| Fail::Usage(format!("--edge expects id1:id2, got `{edge}`")))?;
            let s = split_edge(&splice_of(&load(&file)?)?, a, b)?;
            let corr = s.correction()?;
            let mut v = to_json(&s);
            v["correction"] = ratfunc_json(&corr);
            let text = format!(
                "{}{}induced on the left: M={} i={}\ninduced on the right: M={} i={}\ncorrection: {}\n",
                format::print_splice(&s.left),
                format::print_splice(&s.right),
                s.into_left.m,
                s.into_left.i,
                s.into_right.m,
                s.into_right.i,
                corr
            );
            Ok((v, text))
        }
        Cmd::Stars { file } => {
            let parts = stars(&splice_of(&load(&file)?)?)?;
            let v: Vec<Value> = parts
                .iter()
                .map(|(n, d)| json!({"node": n, "star": to_json(d)}))
                .collect();
            let text = parts.iter().map(|(_, d)| format::print_splice(d)).collect();
            Ok((Value::from(v), text))
        }
        Cmd::Goal1 { file } => {
            let r = check_goal1(&splice_of(&load(&file)?)?)?;
            let mut text = format!(
                "allowed: {}\nevery pole gives an eigenvalue: {}\n",
                verdict(r.allowed),
                verdict(r.holds)
            );
            for p in &r.poles {
                writeln!(
                    text,
                    "  {} -> {}: {}",
                    fmt_q(&p.at),
                    p.lambda,
                    verdict(p.in_eig)
                )
                .unwrap();
            }
            Ok((to_json(&r), text))
        }
        Cmd::Realize {
            file,
            lambda,
            effective,
            count,
            bound,
            double_arrows,
        } => {
            let lam = lambda_arg(&lambda)?;
            let d = splice_of(&load(&file)?)?;
            let opts = RealizeOptions {
                bound,
                effective,
                count: count.max(1),
                double_arrows,
                ..Default::default()
            };
            let o = realize_eigenvalue(&d, &lam, &opts)?;
            let mut v = to_json(&o);
            let mut text = match o.realized() {
                true => format!("realized exp(2 pi i {lam})\n"),
                false => format!("exp(2 pi i {lam}) not realized\n"),
            };
            for (k, r) in o.solutions.iter().enumerate() {
                v["solutions"][k]["warrows"] = to_json(&r.diagram.warrows);
                writeln!(
                    text,
                    "# pole {} by the {} step at {}",
                    fmt_q(&r.pole.at),
                    format!("{:?}", r.method).to_lowercase(),
                    r.target
                )
                .unwrap();
                format::print_warrows(&mut text, &r.diagram.warrows);
            }
            for n in &o.notes {
                writeln!(text, "# {n}").unwrap();
            }
            Ok((v, text))
        }
        Cmd::Selfcheck {
            cases,
            seed,
            sequential,
        } => {
            let exec = if sequential {
                Exec::Sequential
            } else {
                Exec::Parallel
            };
            let rs = checks::selfcheck(cases, seed, exec);
            let ok = rs.iter().all(SuiteReport::ok);
            Ok((json!({"ok": ok, "suites": to_json(&rs)}), suites_text(&rs)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.cmd) {
        Ok((v, text)) => {
            let out = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
            } else {
                text
            };
            // a closed pipe downstream is not an error here
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
