use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i128) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i128, d: i128) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q`, or `p` when integral.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q`, or `-p/q`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Dense univariate polynomial with rational coefficients, ascending order,
/// never carrying trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(a: Q) -> Self {
        Poly::from_coeffs(vec![a])
    }

    /// `a + b*s`
    pub fn linear(a: Q, b: Q) -> Self {
        Poly::from_coeffs(vec![a, b])
    }

    pub fn monomial(a: Q, k: usize) -> Self {
        let mut c = vec![Q::zero(); k + 1];
        c[k] = a;
        Poly::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.c.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|a| a * k).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead().recip();
        self.scale(&l)
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * q(k as i128))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let mut quo = vec![Q::zero(); r.len() - dd];
        let inv = d.lead().recip();
        for k in (0..quo.len()).rev() {
            let t = &r[k + dd] * &inv;
            if !t.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &t * dj;
                }
            }
            quo[k] = t;
        }
        r.truncate(dd);
        (Poly::from_coeffs(quo), Poly::from_coeffs(r))
    }

    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (quo, r) = self.divrem(d);
        if r.is_zero() {
            Ok(quo)
        } else {
            Err(Error::arithmetic("inexact polynomial division"))
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Multiplicity of `x` as a root.
    pub fn root_multiplicity(&self, x: &Q) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::linear(-x.clone(), Q::one());
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (quo, r) = p.divrem(&lin);
            if !r.is_zero() {
                return k;
            }
            p = quo;
            k += 1;
        }
    }

    /// Strips the factor `(s - x)^k` and returns the cofactor.
    pub fn strip_root(&self, x: &Q, k: usize) -> Poly {
        let lin = Poly::linear(-x.clone(), Q::one());
        let mut p = self.clone();
        for _ in 0..k {
            p = p.divrem(&lin).0;
        }
        p
    }

    /// Rational roots with multiplicity, found with the rational root test on the
    /// primitive integer model. Fails if the integer coefficients are too large
    /// to factor the constant and leading terms by trial division.
    pub fn rational_roots(&self) -> Result<Vec<(Q, usize)>> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let mut p = self.clone();
        let z = p.root_multiplicity(&Q::zero());
        if z > 0 {
            out.push((Q::zero(), z));
            p = Poly::from_coeffs(p.c[z..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let ints = integer_model(&p);
        let a0 = ints[0].abs();
        let an = ints[ints.len() - 1].abs();
        let dn = small_divisors(&a0)?;
        let dd = small_divisors(&an)?;
        let mut cands: Vec<Q> = Vec::new();
        for a in &dn {
            for b in &dd {
                let r = Q::new(a.clone(), b.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            let k = p.root_multiplicity(&c);
            if k > 0 {
                p = p.strip_root(&c, k);
                out.push((c, k));
                if p.degree().unwrap_or(0) == 0 {
                    break;
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            let body = match k {
                0 => fmt_q(&mag),
                _ => {
                    let mono = if k == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{k}")
                    };
                    if mag.is_one() {
                        mono
                    } else {
                        format!("{}*{}", fmt_q(&mag), mono)
                    }
                }
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{body}") } else { body });
            } else {
                parts.push(if neg {
                    format!("- {body}")
                } else {
                    format!("+ {body}")
                });
            }
        }
        parts.join(" ")
    }
}

/// Scales to a primitive integer coefficient vector.
pub fn integer_model(p: &Poly) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for a in &p.c {
        l = l.lcm(a.denom());
    }
    let mut v: Vec<BigInt> = p.c.iter().map(|a| (a * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for a in &v {
        g = g.gcd(a);
    }
    if !g.is_zero() && !g.is_one() {
        for a in v.iter_mut() {
            *a = &*a / &g;
        }
    }
    v
}

fn small_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let n = n
        .to_u64()
        .ok_or_else(|| Error::arithmetic("coefficient too large for the rational root test"))?;
    if n == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if d > 5_000_000 {
            return Err(Error::arithmetic(
                "coefficient too large for the rational root test",
            ));
        }
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("s"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(self.coeff(k) + o.coeff(k));
        }
        Poly::from_coeffs(c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(self.coeff(k) - o.coeff(k));
        }
        Poly::from_coeffs(c)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i128]) -> Poly {
        Poly::from_coeffs(v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[1, 2, 3, 4, 5]);
        let b = p(&[-1, 0, 2]);
        let (quo, r) = a.divrem(&b);
        assert_eq!(&(&quo * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = p(&[-2, 1]);
        let a = &f * &p(&[3, 1]);
        let b = &f * &p(&[5, 0, 1]);
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (2s+3)^2 (s-1) s
        let f = &(&p(&[3, 2]) * &p(&[3, 2])) * &(&p(&[-1, 1]) * &p(&[0, 1]));
        let r = f.rational_roots().unwrap();
        assert_eq!(r, vec![(qfrac(-3, 2), 2), (q(0), 1), (q(1), 1)]);
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p(&[1, -1, 0, 2]).to_string(), "2*s^3 - s + 1");
        assert_eq!(parse_q("-57/6"), Some(qfrac(-19, 2)));
        assert_eq!(fmt_q(&qfrac(6, 4)), "3/2");
        assert_eq!(parse_q("1/0"), None);
    }
}
