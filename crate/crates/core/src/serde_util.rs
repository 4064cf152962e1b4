//! Serde adapters: rationals travel as `"p/q"` strings, Laurent polynomials as
//! `{"exponent": "coefficient"}` maps.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::field::{parse_rational, Field};
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;
use crate::Rational;

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

pub mod rational_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| parse_rational(x).ok_or_else(|| D::Error::custom(format!("bad rational {x:?}"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(parsed).ok_or_else(|| D::Error::custom("ragged matrix"))
    }
}

pub mod laurent_map {
    use super::*;

    pub fn serialize<S: Serializer, F: Field>(p: &LaurentPoly<F>, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = p.terms().map(|(k, c)| (k.to_string(), c.to_string())).collect();
        map.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, F: Field>(d: D) -> Result<LaurentPoly<F>, D::Error> {
        let map = BTreeMap::<String, String>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (k, c) in map {
            let k: i64 = k.parse().map_err(|_| D::Error::custom(format!("bad exponent {k:?}")))?;
            let c = F::parse_scalar(&c).ok_or_else(|| D::Error::custom(format!("bad coefficient {c:?}")))?;
            p.add_term(k, c);
        }
        Ok(p)
    }
}
