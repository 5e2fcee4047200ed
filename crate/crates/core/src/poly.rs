//! Univariate integer polynomials in `q`.
//!
//! Point counts over `F_q` of Schubert unions are polynomials with
//! nonnegative coefficients; differences such as `n - g_U` or `J_{r-1} - J_r`
//! may have negative ones. Coefficients are arbitrary precision.
//!
//! The [`Ord`] instance is the lexicographic order used to rank unions:
//! higher degree wins, and for equal degree the first differing coefficient
//! from the top decides.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense coefficient vector, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PointCountPoly {
    coeffs: Vec<BigInt>,
}

impl PointCountPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `q^e`
    pub fn monomial(e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        Self { coeffs }
    }

    /// `1 + q + ... + q^(len-1)`; zero for `len == 0`.
    pub fn geometric(len: usize) -> Self {
        Self::from_big(vec![BigInt::one(); len])
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_big(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_big(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Polynomial with coefficient of `q^e` equal to `counts[e]`.
    pub fn from_counts(counts: &[u64]) -> Self {
        Self::from_big(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// True for `c * q^i` with `c != 0`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_u64(&self, q: u64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    /// Evaluates at `q` and converts to `u64`; `None` on overflow or a negative value.
    pub fn eval_to_u64(&self, q: u64) -> Option<u64> {
        self.eval_u64(q).to_u64()
    }

    /// Sum of the coefficients, i.e. the value at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `q^delta * p(1/q)`. Fails if `deg p > delta`.
    pub fn reciprocal(&self, delta: usize) -> Result<Self> {
        if self.degree() > delta as i64 {
            return Err(Error::ReciprocityViolation {
                degree: self.degree(),
                delta,
            });
        }
        let mut coeffs = vec![BigInt::zero(); delta + 1];
        for (e, c) in self.coeffs.iter().enumerate() {
            coeffs[delta - e] = c.clone();
        }
        Ok(Self::from_big(coeffs))
    }

    /// Exact division by a polynomial with leading coefficient `1`.
    /// Returns `None` when the divisor is not monic or the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &Self) -> Option<Self> {
        let lead = divisor.coeffs.last()?;
        if !lead.is_one() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::from_big(quot))
        } else {
            None
        }
    }

    /// Gaussian binomial `[m choose l]_q`, the number of `F_q`-points of `G(l,m)`,
    /// computed from the product of cyclotomic-style factors `(q^i - 1)`.
    pub fn gaussian_binomial(m: usize, l: usize) -> Self {
        if l > m {
            return Self::zero();
        }
        let q_pow_minus_one = |i: usize| {
            let mut p = Self::monomial(i);
            p.coeffs[0] -= 1;
            Self::from_big(p.coeffs)
        };
        let mut acc = Self::one();
        for i in 0..l {
            acc = &acc * &q_pow_minus_one(m - i);
            acc = acc
                .div_exact_monic(&q_pow_minus_one(i + 1))
                .expect("partial Gaussian products are integral");
        }
        acc
    }

    fn add_impl(&self, other: &Self, sign: i32) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for e in 0..len {
            let a = self.coeffs.get(e).cloned().unwrap_or_default();
            let b = other.coeffs.get(e).cloned().unwrap_or_default();
            coeffs.push(if sign > 0 { a + b } else { a - b });
        }
        Self::from_big(coeffs)
    }
}

impl Ord for PointCountPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for PointCountPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &PointCountPoly {
    type Output = PointCountPoly;
    fn add(self, rhs: Self) -> PointCountPoly {
        self.add_impl(rhs, 1)
    }
}

impl Sub for &PointCountPoly {
    type Output = PointCountPoly;
    fn sub(self, rhs: Self) -> PointCountPoly {
        self.add_impl(rhs, -1)
    }
}

impl Add for PointCountPoly {
    type Output = PointCountPoly;
    fn add(self, rhs: Self) -> PointCountPoly {
        &self + &rhs
    }
}

impl Sub for PointCountPoly {
    type Output = PointCountPoly;
    fn sub(self, rhs: Self) -> PointCountPoly {
        &self - &rhs
    }
}

impl Neg for PointCountPoly {
    type Output = PointCountPoly;
    fn neg(self) -> PointCountPoly {
        PointCountPoly::from_big(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for &PointCountPoly {
    type Output = PointCountPoly;
    fn mul(self, rhs: Self) -> PointCountPoly {
        if self.is_zero() || rhs.is_zero() {
            return PointCountPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PointCountPoly::from_big(coeffs)
    }
}

impl std::iter::Sum for PointCountPoly {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}

/// Descending degree, explicit coefficients: `q^5+2q^4+2q^3+2q^2+q+1`.
impl fmt::Display for PointCountPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PointCountPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointCountPoly({self})")
    }
}

/// Parses the display syntax, also accepting `*`, `{}` around exponents and spaces,
/// e.g. `q^{10}+2*q^3 - q + 1`.
impl FromStr for PointCountPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot parse polynomial {s:?}"));
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && !matches!(c, '*' | '{' | '}'))
            .collect();
        if cleaned.is_empty() {
            return Err(bad());
        }
        if cleaned == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = cleaned.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&cleaned[start..i]);
                start = i;
            }
        }
        terms.push(&cleaned[start..]);

        let mut acc = Self::zero();
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, exp) = match body.find('q') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let coef = if pos == 0 {
                        BigInt::one()
                    } else {
                        body[..pos].parse::<BigInt>().map_err(|_| bad())?
                    };
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<usize>()
                            .map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            let mut coeffs = vec![BigInt::zero(); exp + 1];
            coeffs[exp] = if negative { -coef } else { coef };
            acc = &acc + &Self::from_big(coeffs);
        }
        Ok(acc)
    }
}

/// Serializes as a coefficient array, lowest degree first: `[1,1,2,2,1]`.
/// Coefficients outside the `i64` range are written as decimal strings.
impl Serialize for PointCountPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for PointCountPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coef {
            Int(i64),
            Text(String),
        }

        struct CoeffVisitor;

        impl<'de> Visitor<'de> for CoeffVisitor {
            type Value = PointCountPoly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of integer coefficients")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(c) = seq.next_element::<Coef>()? {
                    coeffs.push(match c {
                        Coef::Int(v) => BigInt::from(v),
                        Coef::Text(t) => t.parse().map_err(de::Error::custom)?,
                    });
                }
                Ok(PointCountPoly::from_big(coeffs))
            }
        }

        deserializer.deserialize_seq(CoeffVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PointCountPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_and_parse_agree() {
        for s in ["q^4+2q^3+2q^2+q+1", "q^9+q^8-q^6", "0", "1", "-q", "3q^10+q^2"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(
            p("q^{10} + 2*q^3 - q"),
            PointCountPoly::from_coeffs(&[0, -1, 0, 2, 0, 0, 0, 0, 0, 0, 1])
        );
    }

    #[test]
    fn lex_order_degree_dominates() {
        assert!(p("q^5") > p("3q^4+q^3+1"));
        assert!(p("2q^4+1") > p("q^4+3q^3"));
        assert!(p("q^4+2q^3+2q^2+q+1") > p("q^4+q^3+2q^2+q+1"));
        assert!(PointCountPoly::zero() < PointCountPoly::one());
    }

    #[test]
    fn gaussian_binomial_small() {
        assert_eq!(PointCountPoly::gaussian_binomial(4, 2), p("q^4+q^3+2q^2+q+1"));
        assert_eq!(PointCountPoly::gaussian_binomial(5, 2), p("q^6+q^5+2q^4+2q^3+2q^2+q+1"));
        assert_eq!(PointCountPoly::gaussian_binomial(5, 0), PointCountPoly::one());
        assert_eq!(PointCountPoly::gaussian_binomial(2, 3), PointCountPoly::zero());
        // (q^4-1)(q^3-1)/((q^2-1)(q-1)) at q = 2
        assert_eq!(PointCountPoly::gaussian_binomial(4, 2).eval_to_u64(2), Some(35));
    }

    #[test]
    fn reciprocal_flips_coefficients() {
        let h = p("q^3+2q+1");
        assert_eq!(h.reciprocal(4).unwrap(), p("q^4+2q^3+q"));
        assert!(matches!(h.reciprocal(2), Err(Error::ReciprocityViolation { .. })));
    }

    #[test]
    fn json_is_coefficient_array() {
        let poly = p("q^4+2q^3+2q^2+q+1");
        assert_eq!(serde_json::to_string(&poly).unwrap(), "[1,1,2,2,1]");
        let back: PointCountPoly = serde_json::from_str("[1,1,2,2,1,0]").unwrap();
        assert_eq!(back, poly);
    }

    #[test]
    fn inexact_division_is_rejected() {
        let d = p("q-1");
        assert_eq!(p("q^2-1").div_exact_monic(&d), Some(p("q+1")));
        assert_eq!(p("q^2+1").div_exact_monic(&d), None);
    }
}
