use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::unity::UnityRoot;
use crate::error::{Error, Result};

/// A formal product `prod_N (t^N - 1)^{e_N}` with integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycloProduct {
    exps: BTreeMap<u64, i64>,
}

impl CycloProduct {
    pub fn one() -> Self {
        CycloProduct::default()
    }

    /// `(t^n - 1)^e`; panics on `n == 0`.
    pub fn factor(n: u64, e: i64) -> Self {
        assert!(n > 0, "t^0 - 1 is not a valid factor");
        let mut c = CycloProduct::one();
        c.push(n, e);
        c
    }

    pub fn push(&mut self, n: u64, e: i64) {
        assert!(n > 0, "t^0 - 1 is not a valid factor");
        if e == 0 {
            return;
        }
        let x = self.exps.entry(n).or_insert(0);
        *x += e;
        if *x == 0 {
            self.exps.remove(&n);
        }
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exps
    }

    pub fn mul(&self, o: &CycloProduct) -> CycloProduct {
        let mut c = self.clone();
        for (&n, &e) in &o.exps {
            c.push(n, e);
        }
        c
    }

    pub fn div(&self, o: &CycloProduct) -> CycloProduct {
        self.mul(&o.pow(-1))
    }

    pub fn pow(&self, k: i64) -> CycloProduct {
        let mut c = CycloProduct::one();
        for (&n, &e) in &self.exps {
            c.push(n, e * k);
        }
        c
    }

    /// Signed degree `sum N e_N`.
    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|(&n, &e)| n as i64 * e).sum()
    }

    /// Multiplicity of `lambda` as a root (negative for a pole).
    pub fn root_multiplicity(&self, l: &UnityRoot) -> i64 {
        self.exps
            .iter()
            .filter(|(&n, _)| l.is_root_of(n))
            .map(|(_, &e)| e)
            .sum()
    }

    /// Orders `q` of roots of unity with negative multiplicity.
    pub fn negative_orders(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for q in self.candidate_orders() {
            let m: i64 = self
                .exps
                .iter()
                .filter(|(&n, _)| n % q == 0)
                .map(|(_, &e)| e)
                .sum();
            if m < 0 {
                out.push(q);
            }
        }
        out
    }

    /// Orders of all roots of unity that can occur as roots or poles.
    pub fn candidate_orders(&self) -> Vec<u64> {
        let mut qs: Vec<u64> = Vec::new();
        for &n in self.exps.keys() {
            let mut d = 1;
            while d * d <= n {
                if n % d == 0 {
                    qs.push(d);
                    qs.push(n / d);
                }
                d += 1;
            }
        }
        qs.sort_unstable();
        qs.dedup();
        qs
    }

    pub fn is_polynomial(&self) -> bool {
        self.negative_orders().is_empty()
    }

    /// Expands to an integer polynomial; errors if some root of unity has
    /// negative multiplicity.
    pub fn expand(&self) -> Result<IntPoly> {
        if let Some(q) = self.negative_orders().first() {
            return Err(Error::arithmetic(format!(
                "not a polynomial: primitive {q}-th roots of unity have negative multiplicity"
            )));
        }
        let mut p = IntPoly::one();
        for (&n, &e) in &self.exps {
            for _ in 0..e.max(0) {
                p = p.mul(&IntPoly::t_n_minus_one(n));
            }
        }
        for (&n, &e) in &self.exps {
            for _ in 0..(-e).max(0) {
                p = p.div_exact(&IntPoly::t_n_minus_one(n))?;
            }
        }
        Ok(p)
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(&n, &e)| {
                let base = if n == 1 {
                    "(t - 1)".to_string()
                } else {
                    format!("(t^{n} - 1)")
                };
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Dense integer polynomial in `t`, ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        IntPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    pub fn t_n_minus_one(n: u64) -> Self {
        let mut c = vec![BigInt::zero(); n as usize + 1];
        c[0] = BigInt::from(-1);
        c[n as usize] = BigInt::one();
        IntPoly { c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.c.is_empty() || o.c.is_empty() {
            return IntPoly { c: vec![] };
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(c)
    }

    /// Division by a monic divisor; errors on a nonzero remainder.
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly> {
        let dd = d.c.len() - 1;
        assert!(d.c[dd].is_one(), "divisor must be monic");
        if self.c.len() < d.c.len() {
            return if self.c.is_empty() {
                Ok(self.clone())
            } else {
                Err(Error::arithmetic("inexact division"))
            };
        }
        let mut r = self.c.clone();
        let mut quo = vec![BigInt::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let t = r[k + dd].clone();
            if !t.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &t * dj;
                }
            }
            quo[k] = t;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return Err(Error::arithmetic("inexact division"));
        }
        Ok(IntPoly::from_coeffs(quo))
    }

    pub fn eval_i128(&self, t: i128) -> BigInt {
        let mut acc = BigInt::zero();
        for a in self.c.iter().rev() {
            acc = acc * BigInt::from(t) + a;
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use super::poly::Poly;
        let p = Poly::from_coeffs(
            self.c
                .iter()
                .map(|x| num_rational::BigRational::from_integer(x.clone()))
                .collect(),
        );
        f.write_str(&p.display_in("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_cyclotomic() {
        // (t^6-1)(t-1)/((t^2-1)(t^3-1)) = t^2 - t + 1
        let mut c = CycloProduct::factor(6, 1);
        c.push(1, 1);
        c.push(2, -1);
        c.push(3, -1);
        assert_eq!(c.expand().unwrap(), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(c.degree(), 2);
        let l = UnityRoot::new(1, 6).unwrap();
        assert_eq!(c.root_multiplicity(&l), 1);
        assert_eq!(c.root_multiplicity(&UnityRoot::new(1, 3).unwrap()), 0);
    }

    #[test]
    fn negative_multiplicity_is_reported() {
        let c = CycloProduct::factor(2, -1);
        assert!(c.expand().is_err());
        assert_eq!(c.negative_orders(), vec![1, 2]);
    }
}
