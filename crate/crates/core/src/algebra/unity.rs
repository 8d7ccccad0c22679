use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::poly::{parse_q, Q};
use crate::error::{Error, Result};

/// The root of unity `exp(2 pi i p/q)` with `0 <= p < q` and `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnityRoot {
    pub p: u64,
    pub q: u64,
}

impl UnityRoot {
    pub fn new(p: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::invalid("root of unity with zero denominator"));
        }
        let qi = q as i64;
        let p = p.rem_euclid(qi) as u64;
        let g = p.gcd(&q);
        Ok(UnityRoot { p: p / g, q: q / g })
    }

    /// `exp(2 pi i x)`
    pub fn from_rational(x: &Q) -> Result<Self> {
        let d = x
            .denom()
            .to_u64()
            .ok_or_else(|| Error::arithmetic("denominator too large"))?;
        let n = x.numer().mod_floor(x.denom());
        let n = n
            .to_i64()
            .ok_or_else(|| Error::arithmetic("numerator too large"))?;
        UnityRoot::new(n, d)
    }

    /// Parses `p/q` (or an integer, read as `p/1`).
    pub fn parse(s: &str) -> Result<Self> {
        let x = parse_q(s).ok_or_else(|| Error::invalid(format!("cannot read `{s}` as p/q")))?;
        if x.denom().is_negative() {
            return Err(Error::invalid("negative denominator"));
        }
        UnityRoot::from_rational(&x)
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// `lambda^n == 1`
    pub fn is_root_of(&self, n: u64) -> bool {
        n.is_multiple_of(self.q)
    }
}

impl fmt::Display for UnityRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl Serialize for UnityRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::qfrac;
    use super::*;

    #[test]
    fn normalizes() {
        assert_eq!(UnityRoot::new(-1, 6).unwrap(), UnityRoot { p: 5, q: 6 });
        assert_eq!(UnityRoot::new(4, 6).unwrap(), UnityRoot { p: 2, q: 3 });
        assert_eq!(
            UnityRoot::from_rational(&qfrac(-57, 6)).unwrap(),
            UnityRoot { p: 1, q: 2 }
        );
        assert_eq!(
            UnityRoot::parse("37/42").unwrap(),
            UnityRoot { p: 37, q: 42 }
        );
        assert_eq!(UnityRoot::parse("3").unwrap(), UnityRoot { p: 0, q: 1 });
    }
}
