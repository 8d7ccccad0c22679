//! Exact arithmetic: rational polynomials, rational functions, roots of unity
//! and products of cyclotomic binomials.

pub mod cyclo;
pub mod poly;
pub mod ratfunc;
pub mod unity;

pub use cyclo::{CycloProduct, IntPoly};
pub use poly::{fmt_q, parse_q, q, qfrac, Poly, Q};
pub use ratfunc::{ser_q, sum_terms, Lin, Pole, RatFunc, Term};
pub use unity::UnityRoot;
