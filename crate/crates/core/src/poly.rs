//! Sparse polynomials in `z` with big-integer coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent to coefficient map; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GenusPolynomial {
    terms: BTreeMap<usize, BigInt>,
}

impl GenusPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exponent: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, c.into());
        p
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs; repeated
    /// exponents accumulate.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (C, usize)>) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// From a dense table of counts, index = exponent.
    pub fn from_counts(counts: &[u64]) -> Self {
        Self::from_terms(
            counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(e, &c)| (c, e)),
        )
    }

    pub fn add_term(&mut self, exponent: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: usize) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<usize> {
        self.terms.keys().next().copied()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Multiplies by `c * z^shift`.
    pub fn scale_monomial(&self, c: impl Into<BigInt>, shift: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        GenusPolynomial {
            terms: self.terms.iter().map(|(e, k)| (e + shift, k * &c)).collect(),
        }
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| c * num_traits::pow(z.clone(), *e))
            .sum()
    }

    /// Value at `z = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.terms.keys().copied().collect()
    }

    /// All exponents even; vacuously true for zero.
    pub fn is_even_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// All exponents odd; vacuously true for zero.
    pub fn is_odd_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 1)
    }

    /// Support is an integer interval `[m, n]`.
    pub fn is_interpolating(&self) -> Result<bool> {
        let (lo, hi) = self.bounds()?;
        Ok(hi - lo + 1 == self.terms.len())
    }

    /// Support is exactly the even integers of some interval.
    pub fn is_even_interpolating(&self) -> Result<bool> {
        let (lo, hi) = self.bounds()?;
        Ok(lo % 2 == 0 && self.is_even_polynomial() && (hi - lo) / 2 + 1 == self.terms.len())
    }

    fn bounds(&self) -> Result<(usize, usize)> {
        match (self.min_exponent(), self.degree()) {
            (Some(lo), Some(hi)) => Ok((lo, hi)),
            _ => Err(Error::ZeroPolynomial),
        }
    }

    pub fn has_negative_coefficients(&self) -> bool {
        self.terms.values().any(Signed::is_negative)
    }
}

impl Add for &GenusPolynomial {
    type Output = GenusPolynomial;

    fn add(self, rhs: &GenusPolynomial) -> GenusPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for GenusPolynomial {
    type Output = GenusPolynomial;

    fn add(self, rhs: GenusPolynomial) -> GenusPolynomial {
        &self + &rhs
    }
}

impl Neg for &GenusPolynomial {
    type Output = GenusPolynomial;

    fn neg(self) -> GenusPolynomial {
        GenusPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &GenusPolynomial {
    type Output = GenusPolynomial;

    fn sub(self, rhs: &GenusPolynomial) -> GenusPolynomial {
        self + &(-rhs)
    }
}

impl Sub for GenusPolynomial {
    type Output = GenusPolynomial;

    fn sub(self, rhs: GenusPolynomial) -> GenusPolynomial {
        &self - &rhs
    }
}

impl Mul for &GenusPolynomial {
    type Output = GenusPolynomial;

    fn mul(self, rhs: &GenusPolynomial) -> GenusPolynomial {
        let mut out = GenusPolynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for GenusPolynomial {
    type Output = GenusPolynomial;

    fn mul(self, rhs: GenusPolynomial) -> GenusPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for GenusPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(GenusPolynomial::zero(), |a, b| a + b)
    }
}

/// Canonical rendering, ascending exponents: `2 + 30*z^2 + 144*z^4`.
impl fmt::Display for GenusPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                (_, s) => write!(f, " {s} ")?,
            }
            match e {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*z")?,
                _ => write!(f, "{mag}*z^{e}")?,
            }
        }
        Ok(())
    }
}

/// Parses the canonical rendering (terms in any order, `z` and `z^k` without
/// coefficient allowed).
impl FromStr for GenusPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 1,
            column: 1,
            message: format!("{msg} in polynomial `{s}`"),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input"));
        }
        if compact == "0" {
            return Ok(GenusPolynomial::zero());
        }
        let mut out = GenusPolynomial::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let negative = rest.starts_with('-');
            if rest.starts_with('+') || negative {
                rest = &rest[1..];
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let (coef, exp) = match term.split_once('z') {
                None => (term, 0usize),
                Some((c, e)) => {
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let exp = match e {
                        "" => 1,
                        _ => e
                            .strip_prefix('^')
                            .and_then(|x| x.parse().ok())
                            .ok_or_else(|| bad("bad exponent"))?,
                    };
                    (c, exp)
                }
            };
            let mut c: BigInt = if coef.is_empty() {
                BigInt::one()
            } else {
                coef.parse().map_err(|_| bad("bad coefficient"))?
            };
            if negative {
                c = -c;
            }
            out.add_term(exp, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GenusPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&p("6z^2+2") + &p("2").scale_monomial(2, 2), p("10z^2+2"));
        assert_eq!(&p("1+2z") * &p("2") + p("z^2") * p("2"), p("2z^2+4z+2"));
        let sq = &p("4+4z^2") * &p("4+4z^2");
        assert_eq!(sq, p("16+32z^2+16z^4"));
        // schoolbook cross-check by evaluation
        for z in [1, 2, 3] {
            let z = BigInt::from(z);
            let v = p("4+4z^2").eval(&z);
            assert_eq!(sq.eval(&z), &v * &v);
        }
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(p("96z^8+240z^6+144z^4+30z^2+2").to_string(), "2 + 30*z^2 + 144*z^4 + 240*z^6 + 96*z^8");
        assert_eq!(p("1+z^4").to_string(), "1 + 1*z^4");
        assert_eq!(p("1+2z").to_string(), "1 + 2*z");
        assert_eq!((p("1") - p("3z")).to_string(), "1 - 3*z");
        assert_eq!(GenusPolynomial::zero().to_string(), "0");
        assert_eq!(p("-z^2").to_string(), "-1*z^2");
    }

    #[test]
    fn support_and_parity() {
        let g = p("8z^2+48z^4+32z^5+40z^6");
        assert_eq!(g.support().into_iter().collect::<Vec<_>>(), vec![2, 4, 5, 6]);
        assert!(!g.is_even_polynomial() && !g.is_odd_polynomial());
        let k3 = p("6z^2+2");
        assert_eq!(k3.support().into_iter().collect::<Vec<_>>(), vec![0, 2]);
        assert!(k3.is_even_polynomial());
        let zero = GenusPolynomial::zero();
        assert!(zero.support().is_empty());
        assert!(zero.is_even_polynomial() && zero.is_odd_polynomial());
    }

    #[test]
    fn interpolation() {
        assert!(!p("96z^8+240z^6+144z^4+30z^2+2").is_interpolating().unwrap());
        assert!(p("z^2+z^3+z^4").is_interpolating().unwrap());
        assert!(!p("8z^2+80z^4+32z^5+104z^6+32z^7+16z^8").is_interpolating().unwrap());
        assert!(p("4+4z^2").is_even_interpolating().unwrap());
        assert!(!p("1+z^4").is_even_interpolating().unwrap());
        assert!(p("512").is_even_interpolating().unwrap());
        assert!(!p("z^3").is_even_interpolating().unwrap());
        assert!(p("z^2+z^4").is_even_interpolating().unwrap());
        assert_eq!(GenusPolynomial::zero().is_interpolating(), Err(Error::ZeroPolynomial));
        assert_eq!(GenusPolynomial::zero().is_even_interpolating(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn cancellation_keeps_canonical_form() {
        let a = p("3z^2+1");
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d, GenusPolynomial::zero());
    }
}
