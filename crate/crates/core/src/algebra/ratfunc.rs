use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::{fmt_q, Poly, Q};
use crate::error::{Error, Result};

/// Reduced quotient of polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pole {
    #[serde(serialize_with = "ser_q")]
    pub at: Q,
    pub order: usize,
    /// Leading Laurent coefficient; equals the residue when `order == 1`.
    #[serde(serialize_with = "ser_q")]
    pub leading: Q,
}

pub fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::arithmetic("zero denominator"));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.degree().unwrap_or(0) > 0 {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        } else {
            (num, den)
        };
        if n.is_zero() {
            d = Poly::one();
        }
        let l = d.lead().recip();
        n = n.scale(&l);
        d = d.scale(&l);
        Ok(RatFunc { num: n, den: d })
    }

    /// Builds without a gcd pass; the caller guarantees coprimality.
    fn from_reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let l = den.lead().recip();
        RatFunc {
            num: num.scale(&l),
            den: den.scale(&l),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn constant(a: Q) -> Self {
        RatFunc {
            num: Poly::constant(a),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .expect("nonzero denominators")
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        if o.is_zero() {
            return Err(Error::arithmetic("division by the zero rational function"));
        }
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Order of the pole at `x` (0 if regular) and the leading Laurent coefficient.
    pub fn laurent_leading(&self, x: &Q) -> (usize, Q) {
        let k = self.den.root_multiplicity(x);
        let rest = self.den.strip_root(x, k);
        (k, self.num.eval(x) / rest.eval(x))
    }

    /// Poles among the supplied candidates; errors if the denominator has roots
    /// outside the list.
    pub fn poles_among(&self, cands: &[Q]) -> Result<Vec<Pole>> {
        let mut cs: Vec<Q> = cands.to_vec();
        cs.sort();
        cs.dedup();
        let mut out = Vec::new();
        let mut rest = self.den.clone();
        for c in cs {
            let k = rest.root_multiplicity(&c);
            if k == 0 {
                continue;
            }
            rest = rest.strip_root(&c, k);
            let (_, leading) = self.laurent_leading(&c);
            out.push(Pole {
                at: c,
                order: k,
                leading,
            });
        }
        if rest.degree().unwrap_or(0) > 0 {
            return Err(Error::arithmetic(format!(
                "denominator has a factor {} with no listed root",
                rest
            )));
        }
        Ok(out)
    }

    /// All poles, found by the rational root test; errors if the denominator
    /// does not split over Q.
    pub fn poles(&self) -> Result<Vec<Pole>> {
        let roots = self.den.rational_roots()?;
        let cands: Vec<Q> = roots.into_iter().map(|(r, _)| r).collect();
        self.poles_among(&cands)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `a + b*s`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Lin {
    #[serde(serialize_with = "ser_q", rename = "constant")]
    pub a: Q,
    #[serde(serialize_with = "ser_q", rename = "slope")]
    pub b: Q,
}

impl Lin {
    pub fn new(a: Q, b: Q) -> Self {
        Lin { a, b }
    }

    pub fn root(&self) -> Option<Q> {
        if self.b.is_zero() {
            None
        } else {
            Some(-&self.a / &self.b)
        }
    }

    pub fn eval(&self, x: &Q) -> Q {
        &self.a + &self.b * x
    }

    pub fn is_identically_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for Lin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", Poly::linear(self.a.clone(), self.b.clone()))
    }
}

/// `coeff / prod(factors)`, tagged with the vertices it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub label: String,
    pub support: Vec<String>,
    #[serde(serialize_with = "ser_q")]
    pub coeff: Q,
    pub factors: Vec<Lin>,
}

impl Term {
    pub fn new(
        label: impl Into<String>,
        support: Vec<String>,
        coeff: Q,
        factors: Vec<Lin>,
    ) -> Self {
        Term {
            label: label.into(),
            support,
            coeff,
            factors,
        }
    }

    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        sum_terms(std::slice::from_ref(self))
    }

    pub fn candidate_poles(&self) -> Vec<Q> {
        self.factors.iter().filter_map(Lin::root).collect()
    }
}

/// Exact sum of terms whose denominators split into linear factors. The common
/// denominator is assembled root by root, so no polynomial gcd is needed.
pub fn sum_terms(terms: &[Term]) -> Result<RatFunc> {
    // per term: scalar and root multiplicities
    let mut parts: Vec<(Q, BTreeMap<Q, usize>)> = Vec::with_capacity(terms.len());
    let mut common: BTreeMap<Q, usize> = BTreeMap::new();
    for t in terms {
        if t.coeff.is_zero() {
            continue;
        }
        let mut c = t.coeff.clone();
        let mut roots: BTreeMap<Q, usize> = BTreeMap::new();
        for l in &t.factors {
            if l.is_identically_zero() {
                return Err(Error::arithmetic(format!(
                    "term {} has an identically zero factor",
                    t.label
                )));
            }
            match l.root() {
                None => c /= &l.a,
                Some(r) => {
                    c /= &l.b;
                    *roots.entry(r).or_insert(0) += 1;
                }
            }
        }
        for (r, m) in &roots {
            let e = common.entry(r.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        parts.push((c, roots));
    }
    let lin = |r: &Q| Poly::linear(-r.clone(), Q::one());
    let mut num = Poly::zero();
    for (c, roots) in &parts {
        let mut p = Poly::constant(c.clone());
        for (r, m) in &common {
            let have = roots.get(r).copied().unwrap_or(0);
            for _ in have..*m {
                p = &p * &lin(r);
            }
        }
        num = &num + &p;
    }
    // cancel common roots
    let mut den_roots = common;
    for (r, m) in den_roots.iter_mut() {
        while *m > 0 && !num.is_zero() && num.eval(r).is_zero() {
            num = num.divrem(&lin(r)).0;
            *m -= 1;
        }
    }
    if num.is_zero() {
        return Ok(RatFunc::zero());
    }
    let mut den = Poly::one();
    for (r, m) in &den_roots {
        for _ in 0..*m {
            den = &den * &lin(r);
        }
    }
    Ok(RatFunc::from_reduced(num, den))
}

/// Roots of all linear factors appearing in the terms.
pub fn candidate_poles(terms: &[Term]) -> Vec<Q> {
    let mut v: Vec<Q> = terms.iter().flat_map(|t| t.candidate_poles()).collect();
    v.sort();
    v.dedup();
    v
}

/// Sum of the `(s - x)^{-1}` Laurent coefficients of the terms selected by `keep`.
pub fn residue_of_terms<F: Fn(&Term) -> bool>(terms: &[Term], x: &Q, keep: F) -> Result<Q> {
    let mut acc = Q::zero();
    for t in terms.iter().filter(|t| keep(t)) {
        acc += residue_at(&t.to_ratfunc()?, x);
    }
    Ok(acc)
}

/// Coefficient of `(s - x)^{-1}` in the Laurent expansion.
pub fn residue_at(f: &RatFunc, x: &Q) -> Q {
    let k = f.den.root_multiplicity(x);
    if k == 0 {
        return Q::zero();
    }
    // f = num / ((s-x)^k g); residue = (1/(k-1)!) d^{k-1}/ds^{k-1} (num/g) at x
    let g = f.den.strip_root(x, k);
    let mut n = f.num.clone();
    let mut d = g;
    // derivative of a quotient, k-1 times
    for _ in 1..k {
        let n2 = &(&n.derivative() * &d) - &(&n * &d.derivative());
        let d2 = &d * &d;
        n = n2;
        d = d2;
    }
    let mut fact = Q::one();
    for j in 1..k {
        fact *= Q::from_integer((j as i64).into());
    }
    n.eval(x) / d.eval(x) / fact
}
