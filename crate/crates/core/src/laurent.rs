//! Laurent polynomials in one variable `t` over an exact field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;
use crate::Rational;

/// A finite sum `Σ c_k t^k`, `k ∈ Z`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly<F: Field = Rational> {
    terms: BTreeMap<i64, F>,
}

impl<F: Field> Default for LaurentPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> LaurentPoly<F> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(F::one(), 0)
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    /// `c t^k`.
    pub fn monomial(c: F, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, F)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: i64, c: F) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&k) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> F {
        self.terms.get(&k).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `dP/dt`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| **k != 0)
                .map(|(k, c)| (k - 1, F::from_i64(*k) * c.clone())),
        )
    }

    /// Coefficient of `t^{-1}`.
    pub fn residue(&self) -> F {
        self.coeff(-1)
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.clone() * s.clone())))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Drops all terms of exponent `>= bound`.
    pub fn truncate_below(&self, bound: i64) -> Self {
        LaurentPoly {
            terms: self.terms.range(..bound).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    /// Power-series inverse of a polynomial with nonzero constant term, modulo `t^precision`.
    /// Returns `None` if the constant term vanishes or a negative exponent is present.
    pub fn inverse_series(&self, precision: usize) -> Option<Self> {
        if self.min_exponent().map_or(true, |m| m < 0) {
            return None;
        }
        let c0_inv = self.coeff(0).inv()?;
        let mut out: Vec<F> = Vec::with_capacity(precision);
        for n in 0..precision as i64 {
            if n == 0 {
                out.push(c0_inv.clone());
                continue;
            }
            let mut acc = F::zero();
            for (k, c) in self.terms.range(1..=n) {
                acc = acc + c.clone() * out[(n - k) as usize].clone();
            }
            out.push(-(acc * c0_inv.clone()));
        }
        Some(Self::from_terms(out.into_iter().enumerate().map(|(k, c)| (k as i64, c))))
    }

    /// Parses strings such as `"t^-1+2"`, `"3/2*t^2 - t"` or `"-4"`.
    pub fn parse(s: &str) -> Option<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return None;
        }
        let mut pieces = Vec::new();
        let mut cur = String::new();
        let mut prev = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && prev != Some('^') {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = Some(ch);
        }
        pieces.push(cur);

        let mut poly = Self::zero();
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-F::one(), rest),
                None => (F::one(), piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return None;
            }
            let (coef, exp) = match body.find('t') {
                None => (F::parse_scalar(body)?, 0),
                Some(pos) => {
                    let coef_str = body[..pos].trim_end_matches('*');
                    let coef = if coef_str.is_empty() { F::one() } else { F::parse_scalar(coef_str)? };
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')?.parse::<i64>().ok()?
                    };
                    (coef, exp)
                }
            };
            poly.add_term(exp, sign.clone() * coef);
        }
        Some(poly)
    }
}

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            match (*k, mag.as_str()) {
                (0, m) => write!(f, "{m}")?,
                (1, "1") => write!(f, "t")?,
                (1, m) => write!(f, "{m}*t")?,
                (k, "1") => write!(f, "t^{k}")?,
                (k, m) => write!(f, "{m}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> Add for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: Self) -> LaurentPoly<F> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: Self) -> LaurentPoly<F> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl<F: Field> Mul for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: Self) -> LaurentPoly<F> {
        let mut out = LaurentPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    fn q(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    #[test]
    fn parse_handles_negative_exponents() {
        let p = q("t^-1+2");
        assert_eq!(p.coeff(-1), Rational::from_integer(1.into()));
        assert_eq!(p.coeff(0), Rational::from_integer(2.into()));
        assert_eq!(q("3/2*t^2 - t").to_string(), "-t+3/2*t^2");
        assert_eq!(q("-t^-2").min_exponent(), Some(-2));
        assert!(LaurentPoly::<Rational>::parse("t^").is_none());
        assert!(LaurentPoly::<Rational>::parse("").is_none());
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["0", "t", "-t^-3+1/2", "5*t^4-2*t"] {
            let p = q(s);
            assert_eq!(q(&p.to_string()), p);
        }
    }

    #[test]
    fn derivative_and_residue() {
        // d(t^2)/dt * t^-2 = 2 t^-1
        let p = &q("t^2").derivative() * &q("t^-2");
        assert_eq!(p.residue(), Rational::from_integer(2.into()));
        assert!(q("7").derivative().is_zero());
    }

    #[test]
    fn inverse_series_truncates() {
        let u = LaurentPoly::<Fp<3>>::parse("1+t").unwrap();
        let inv = u.inverse_series(4).unwrap();
        let prod = (&u * &inv).truncate_below(4);
        assert_eq!(prod, LaurentPoly::one());
        assert!(q("t").inverse_series(3).is_none());
    }
}
