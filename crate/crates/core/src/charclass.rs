//! Truncated cohomology rings and the Chern-class bookkeeping behind the
//! identification `c₁(Det) = m_V · α`.
//!
//! Two rings are modeled:
//! - `S4`: `Z[Ω]/(Ω²)`, cohomology of the four-sphere.
//! - `CxX0`: `Z[α̃, β̃]/(α̃², β̃²)`, cohomology of a curve times a projective line,
//!   with basis `1, α̃, β̃, α̃β̃`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::repchar::Sl2Strings;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingId {
    S4,
    CxX0,
}

impl RingId {
    fn rank(self) -> usize {
        match self {
            RingId::S4 => 2,
            RingId::CxX0 => 4,
        }
    }
}

/// An element of one of the two truncated rings, as coefficients of the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedClass {
    ring: RingId,
    coefficients: Vec<i64>,
}

impl TruncatedClass {
    pub fn new(ring: RingId, coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.len() != ring.rank() {
            return Err(Error::DimensionMismatch { expected: ring.rank(), got: coefficients.len() });
        }
        Ok(TruncatedClass { ring, coefficients })
    }

    /// `a + b Ω` in `S4`.
    pub fn s4(a: i64, b: i64) -> Self {
        TruncatedClass { ring: RingId::S4, coefficients: vec![a, b] }
    }

    /// `c₀ + c₁ α̃ + c₂ β̃ + c₃ α̃β̃` in `CxX0`.
    pub fn cx(c: [i64; 4]) -> Self {
        TruncatedClass { ring: RingId::CxX0, coefficients: c.to_vec() }
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(TruncatedClass {
            ring: self.ring,
            coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(TruncatedClass {
            ring: self.ring,
            coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRings(format!("{:?} vs {:?}", self.ring, other.ring)));
        }
        Ok(())
    }
}

impl fmt::Display for TruncatedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = match self.ring {
            RingId::S4 => &["", "Ω"],
            RingId::CxX0 => &["", "α̃", "β̃", "α̃β̃"],
        };
        let mut first = true;
        for (c, name) in self.coefficients.iter().zip(names) {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", if *c < 0 { " - " } else { " + " })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match (mag, name.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{name}")?,
                _ => write!(f, "{mag}{name}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Product in the common ring, with the nilpotency relations applied.
pub fn ring_mul(a: &TruncatedClass, b: &TruncatedClass) -> Result<TruncatedClass> {
    a.same_ring(b)?;
    let x = &a.coefficients;
    let y = &b.coefficients;
    let coefficients = match a.ring {
        RingId::S4 => vec![x[0] * y[0], x[0] * y[1] + x[1] * y[0]],
        // basis index bits: bit 0 = α̃, bit 1 = β̃; a monomial survives iff the bits are disjoint
        RingId::CxX0 => {
            let mut out = vec![0; 4];
            for i in 0..4 {
                for j in 0..4 {
                    if i & j == 0 {
                        out[i | j] += x[i] * y[j];
                    }
                }
            }
            out
        }
    };
    Ok(TruncatedClass { ring: a.ring, coefficients })
}

/// Chern character of an `SU₂`-bundle with `c₁ = 0`: `rk - c₂`, as a class in `S4`.
fn chern_character(rank: i64, c2: i64) -> TruncatedClass {
    TruncatedClass::s4(rank, -c2)
}

/// Coefficient of `Ω` in `c₂(W(m))`, obtained by running the tensor recursion
/// `ch W(m) · ch W(1) = ch W(m+1) + ch W(m-1)` from the seeds `c₂(W(0)) = 0`,
/// `c₂(W(1)) = Ω`.
pub fn c2_of_wm(m: u64) -> i64 {
    let ch_w1 = chern_character(2, 1);
    let mut prev = chern_character(1, 0);
    if m == 0 {
        return 0;
    }
    let mut cur = ch_w1.clone();
    for _ in 1..m {
        let next = ring_mul(&cur, &ch_w1).and_then(|p| p.sub(&prev)).expect("both classes live in S4");
        prev = cur;
        cur = next;
    }
    -cur.coefficients[1]
}

/// Pushforward along the curve factor: `π₂∗(α̃β̃) = α`, `π₂∗(β̃) = 1`, and the
/// classes `1`, `α̃` push forward to zero. Returns `(coefficient of 1, coefficient of α)`.
pub fn pushforward_to_x0(class: &TruncatedClass) -> Result<(i64, i64)> {
    if class.ring != RingId::CxX0 {
        return Err(Error::MixedRings("pushforward expects a class on C × X0".into()));
    }
    Ok((class.coefficients[2], class.coefficients[3]))
}

/// Coefficient of `α` in `c₁(Det U)` when `c₁(U) = 0` and `c₂(U) = l α̃β̃`.
///
/// Only the surviving term of Grothendieck-Riemann-Roch is kept: `c₁(π₂∗U) = π₂∗(-c₂)`;
/// the Todd factor contributes nothing to the `α` coefficient. `Det` is dual to the
/// determinant of the pushforward, which flips the sign.
pub fn grr_det_class(l: i64) -> i64 {
    let c2 = TruncatedClass::cx([0, 0, 0, l]);
    let neg_c2 = TruncatedClass::cx([0, 0, 0, 0]).sub(&c2).expect("same ring");
    let (_, c1_pushforward) = pushforward_to_x0(&neg_c2).expect("class on C × X0");
    -c1_pushforward
}

/// Total `c₂` (coefficient of `Ω`) of the bundle associated with a direct sum of
/// sl₂-strings: `Σ_i c₂(W(m_i - 1))` for summand dimensions `m_i`.
pub fn string_bundle_c2(strings: &Sl2Strings) -> i64 {
    strings.dims.iter().filter(|&&d| d > 0).map(|&d| c2_of_wm(d - 1)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        let omega = TruncatedClass::s4(0, 1);
        assert_eq!(ring_mul(&omega, &omega).unwrap(), TruncatedClass::s4(0, 0));
        let a = TruncatedClass::cx([0, 1, 0, 0]);
        let b = TruncatedClass::cx([0, 0, 1, 0]);
        assert_eq!(ring_mul(&a, &b).unwrap(), TruncatedClass::cx([0, 0, 0, 1]));
        assert_eq!(ring_mul(&a, &a).unwrap(), TruncatedClass::cx([0; 4]));
        let p = ring_mul(&TruncatedClass::s4(1, 1), &TruncatedClass::s4(2, -1)).unwrap();
        assert_eq!(p, TruncatedClass::s4(2, 1));
    }

    #[test]
    fn mixed_rings_rejected() {
        let err = ring_mul(&TruncatedClass::s4(1, 0), &TruncatedClass::cx([1, 0, 0, 0]));
        assert!(matches!(err, Err(Error::MixedRings(_))));
        assert!(TruncatedClass::new(RingId::S4, vec![1, 2, 3]).is_err());
    }

    #[test]
    fn chern_recursion_small_values() {
        assert_eq!(c2_of_wm(0), 0);
        assert_eq!(c2_of_wm(1), 1);
        assert_eq!(c2_of_wm(2), 4);
        assert_eq!(c2_of_wm(5), 35);
    }

    #[test]
    fn det_class_linear() {
        assert_eq!(grr_det_class(0), 0);
        assert_eq!(grr_det_class(7), 7);
        assert_eq!(grr_det_class(-3), -3);
    }

    #[test]
    fn string_bundles() {
        assert_eq!(string_bundle_c2(&Sl2Strings::new(vec![2])), 1);
        assert_eq!(string_bundle_c2(&Sl2Strings::new(vec![1])), 0);
        assert_eq!(string_bundle_c2(&Sl2Strings::new(vec![3, 2, 2, 1])), 6);
    }

    #[test]
    fn display() {
        assert_eq!(TruncatedClass::s4(2, -1).to_string(), "2 - Ω");
        assert_eq!(TruncatedClass::cx([0, 0, 0, 6]).to_string(), "6α̃β̃");
        assert_eq!(TruncatedClass::cx([0; 4]).to_string(), "0");
    }
}
