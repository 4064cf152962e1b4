//! Exact scalar fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// An exact field. Implemented by [`Rational`] and [`Fp`].
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// Parses `"a"` or `"a/b"`.
    fn parse_scalar(s: &str) -> Option<Self>;
    /// Short tag used in serialized output, e.g. `"Q"` or `"F3"`.
    fn tag() -> String;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn parse_scalar(s: &str) -> Option<Self> {
        parse_rational(s)
    }
    fn tag() -> String {
        "Q".to_string()
    }
}

/// Parses an exact rational from `"a"` or `"a/b"`, rejecting zero denominators.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).ok()?;
            let den = BigInt::from_str(den.trim()).ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rational::new(num, den))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Element of the prime field `F_P`, stored as its least nonnegative residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        // Fermat; P is assumed prime.
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn parse_scalar(s: &str) -> Option<Self> {
        let r = parse_rational(s)?;
        let reduce = |b: &BigInt| -> Self {
            let m = (b % BigInt::from(P)).to_i64().unwrap_or(0);
            Fp::new(m)
        };
        let num = reduce(r.numer());
        let den = reduce(&r.denom().abs());
        let den = if r.denom().is_negative() { -den } else { den };
        Some(num * den.inv()?)
    }
    fn tag() -> String {
        format!("F{P}")
    }
}

/// True if `p` is prime (trial division; intended for small moduli).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_round_trips() {
        for a in 1..7 {
            let x = Fp::<7>::new(a);
            assert_eq!(x * x.inv().unwrap(), Fp::<7>::one());
        }
        assert_eq!(Fp::<7>::zero().inv(), None);
    }

    #[test]
    fn fp_parses_fractions() {
        // 3/2 in F_5: 2^{-1} = 3, so 3 * 3 = 9 = 4.
        assert_eq!(Fp::<5>::parse_scalar("3/2"), Some(Fp::new(4)));
        assert_eq!(Fp::<5>::parse_scalar("-1"), Some(Fp::new(4)));
        assert_eq!(Fp::<5>::parse_scalar("1/5"), None);
    }

    #[test]
    fn rational_parse_rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_none());
        assert_eq!(parse_rational(" -6/4 ").unwrap().to_string(), "-3/2");
    }
}
