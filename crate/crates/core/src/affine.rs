//! The affine Kac-Moody algebra `sl_N ⊗ Q[t, t⁻¹] ⊕ Q K`, integrable levels and
//! graded dimensions of generalized Verma modules.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;
use crate::rootsys::{RootSystem, Weight};
use crate::{Error, Rational, Result};

/// `Res_{t=0}(dP/dt · Q)`.
pub fn residue_cocycle(p: &LaurentPoly, q: &LaurentPoly) -> Rational {
    (&p.derivative() * q).residue()
}

/// `Σ_k X_k ⊗ t^k + c K` with trace-zero `N×N` matrices `X_k`.
///
/// The canonical form keeps one matrix per exponent and drops zero matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineElement {
    n: usize,
    components: BTreeMap<i64, Matrix>,
    central: Rational,
}

impl AffineElement {
    pub fn zero(n: usize) -> Self {
        AffineElement { n, components: BTreeMap::new(), central: Rational::zero() }
    }

    /// `K`, central in every `sl_N`.
    pub fn central(n: usize, c: Rational) -> Self {
        AffineElement { n, components: BTreeMap::new(), central: c }
    }

    /// `X ⊗ P`.
    pub fn loop_element(x: &Matrix, p: &LaurentPoly) -> Result<Self> {
        Self::from_summands(x.rows(), &[(x.clone(), p.clone())], Rational::zero())
    }

    /// `X ⊗ t^k`.
    pub fn monomial(x: &Matrix, k: i64) -> Result<Self> {
        Self::loop_element(x, &LaurentPoly::monomial(Rational::one(), k))
    }

    pub fn from_summands(n: usize, summands: &[(Matrix, LaurentPoly)], central: Rational) -> Result<Self> {
        let mut out = AffineElement { n, components: BTreeMap::new(), central };
        for (x, p) in summands {
            if !x.is_square() || x.rows() != n {
                return Err(Error::DimensionMismatch { expected: n, got: x.rows() });
            }
            if !x.trace().is_zero() {
                return Err(Error::InvalidInput("summand matrix is not trace-zero".into()));
            }
            for (k, c) in p.terms() {
                out.add_component(k, &x.scale(c));
            }
        }
        Ok(out)
    }

    fn add_component(&mut self, k: i64, x: &Matrix) {
        if x.is_zero() {
            return;
        }
        let sum = match self.components.remove(&k) {
            Some(old) => &old + x,
            None => x.clone(),
        };
        if !sum.is_zero() {
            self.components.insert(k, sum);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.components
    }

    pub fn central_coefficient(&self) -> &Rational {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty() && self.central.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        for (k, x) in &other.components {
            out.add_component(*k, x);
        }
        out.central += other.central.clone();
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        AffineElement {
            n: self.n,
            components: self.components.iter().map(|(k, x)| (*k, -x)).collect(),
            central: -self.central.clone(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = AffineElement::zero(self.n);
        for (k, x) in &self.components {
            out.add_component(*k, &x.scale(s));
        }
        out.central = self.central.clone() * s.clone();
        out
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }
}

/// `[X⊗P, Y⊗Q] = [X,Y]⊗PQ + tr(XY) Res(P′Q) K`, extended bilinearly; `K` is central.
pub fn bracket(x: &AffineElement, y: &AffineElement) -> Result<AffineElement> {
    x.check_same_n(y)?;
    let mut out = AffineElement::zero(x.n);
    for (k, a) in &x.components {
        for (l, b) in &y.components {
            out.add_component(k + l, &a.commutator(b));
            // Res(d(t^k)/dt · t^l) = k when k + l = 0
            if k + l == 0 && *k != 0 {
                out.central += a.trace_form(b) * Rational::from_i64(*k);
            }
        }
    }
    Ok(out)
}

/// Split into the `t > 0` part, the degree-zero part with `K`, and the `t < 0` part.
pub fn triangular_project(x: &AffineElement) -> (AffineElement, AffineElement, AffineElement) {
    let mut u = AffineElement::zero(x.n);
    let mut levi = AffineElement::central(x.n, x.central.clone());
    let mut uminus = AffineElement::zero(x.n);
    for (k, m) in &x.components {
        let part = match k.signum() {
            1 => &mut u,
            0 => &mut levi,
            _ => &mut uminus,
        };
        part.components.insert(*k, m.clone());
    }
    (u, levi, uminus)
}

/// JSON shape: `{"summands":[{"matrix":[["1","0"],...],"poly":{"-1":"3/2"}}],"central":"0"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineElementJson {
    pub summands: Vec<SummandJson>,
    #[serde(with = "crate::serde_util::rational")]
    pub central: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummandJson {
    #[serde(with = "crate::serde_util::rational_matrix")]
    pub matrix: Matrix,
    #[serde(with = "crate::serde_util::laurent_map")]
    pub poly: LaurentPoly,
}

impl AffineElementJson {
    pub fn into_element(self, n: usize) -> Result<AffineElement> {
        let summands: Vec<(Matrix, LaurentPoly)> = self.summands.into_iter().map(|s| (s.matrix, s.poly)).collect();
        AffineElement::from_summands(n, &summands, self.central)
    }
}

impl From<&AffineElement> for AffineElementJson {
    fn from(x: &AffineElement) -> Self {
        AffineElementJson {
            summands: x
                .components
                .iter()
                .map(|(k, m)| SummandJson { matrix: m.clone(), poly: LaurentPoly::monomial(Rational::one(), *k) })
                .collect(),
            central: x.central.clone(),
        }
    }
}

/// Random element with up to `max_summands` loop summands, exponents in
/// `[-max_exp, max_exp]` and small rational entries. Trace is fixed to zero
/// through the last diagonal entry.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, n: usize, max_summands: usize, max_exp: i64) -> AffineElement {
    let count = rng.gen_range(1..=max_summands);
    let mut summands = Vec::with_capacity(count);
    for _ in 0..count {
        let mut m = Matrix::zero(n, n);
        let mut trace = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                if i == n - 1 && j == n - 1 {
                    continue;
                }
                if rng.gen_bool(0.5) {
                    continue;
                }
                let v = Rational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=2).into());
                if i == j {
                    trace += v.clone();
                }
                m.set(i, j, v);
            }
        }
        m.set(n - 1, n - 1, -trace);
        let k = rng.gen_range(-max_exp..=max_exp);
        summands.push((m, LaurentPoly::monomial(Rational::one(), k)));
    }
    let central = Rational::from_i64(rng.gen_range(-2..=2));
    AffineElement::from_summands(n, &summands, central).expect("trace-zero by construction")
}

/// A dominant weight with a level at which it is integrable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegrableWeightAtLevel {
    pub weight: Weight,
    pub level: i64,
}

/// `ℓ ≥ ⟨λ, θ^∨⟩`.
pub fn is_integrable_admissible(rs: &RootSystem, lambda: &Weight, level: i64) -> Result<bool> {
    rs.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::InvalidInput(format!("weight {:?} is not dominant", lambda.0)));
    }
    Ok(level >= rs.pair_coroot(lambda, &rs.highest_root()))
}

/// All dominant `λ` with `⟨λ, θ^∨⟩ ≤ ℓ`, ordered by that pairing, then coordinates.
pub fn enumerate_level_weights(rs: &RootSystem, level: i64) -> Vec<IntegrableWeightAtLevel> {
    if level < 0 {
        return Vec::new();
    }
    // ⟨ω_i, θ^∨⟩ are the coroot coordinates of θ^∨, all positive.
    let marks = rs.coroot_coords(&rs.highest_root());
    let mut found: Vec<(i64, Weight)> = Vec::new();
    let mut coords = vec![0i64; rs.rank()];
    fn walk(i: usize, budget: i64, marks: &[i64], coords: &mut Vec<i64>, level: i64, found: &mut Vec<(i64, Weight)>) {
        if i == marks.len() {
            found.push((level - budget, Weight(coords.clone())));
            return;
        }
        let mut c = 0;
        while c * marks[i] <= budget {
            coords[i] = c;
            walk(i + 1, budget - c * marks[i], marks, coords, level, found);
            c += 1;
        }
        coords[i] = 0;
    }
    walk(0, level, &marks, &mut coords, level, &mut found);
    found.sort();
    found.into_iter().map(|(_, weight)| IntegrableWeightAtLevel { weight, level }).collect()
}

/// Coefficient of `q^d` in `Π_{n≥1} (1 - qⁿ)^{-dim_g}`.
pub fn pbw_series_coefficient(dim_g: usize, d: usize) -> BigInt {
    let mut series = vec![BigInt::from(0); d + 1];
    series[0] = BigInt::from(1);
    for n in 1..=d {
        // multiply by (1 - q^n)^{-1}, dim_g times
        for _ in 0..dim_g {
            for k in n..=d {
                let prev = series[k - n].clone();
                series[k] += prev;
            }
        }
    }
    series.swap_remove(d)
}

/// Dimension of the `t`-degree `-d` piece of the generalized Verma module over a
/// `dim_v`-dimensional module: `dim_v` times the count of PBW monomials in
/// `g ⊗ t⁻¹Q[t⁻¹]` of total degree `d`. Independent of the level.
pub fn verma_graded_dim(rs: &RootSystem, dim_v: u64, d: usize) -> BigInt {
    verma_graded_dim_for(rs.dimension(), dim_v, d)
}

pub fn verma_graded_dim_for(dim_g: usize, dim_v: u64, d: usize) -> BigInt {
    pbw_series_coefficient(dim_g, d) * BigInt::from(dim_v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, TypeLabel};

    fn lp(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    fn int(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue_cocycle(&lp("t"), &lp("t^-1")), int(1));
        assert_eq!(residue_cocycle(&lp("t^2"), &lp("t^-2")), int(2));
        assert_eq!(residue_cocycle(&lp("t^3"), &lp("t^-1")), int(0));
    }

    #[test]
    fn sl2_bracket_examples() {
        let e = Matrix::unit(2, 0, 1);
        let f = Matrix::unit(2, 1, 0);
        let h = Matrix::from_i64_rows(&[vec![1, 0], vec![0, -1]]);
        let lhs = AffineElement::monomial(&e, 1).unwrap();
        let rhs = AffineElement::monomial(&f, -1).unwrap();
        let expected = AffineElement::monomial(&h, 0).unwrap().add(&AffineElement::central(2, int(1))).unwrap();
        assert_eq!(bracket(&lhs, &rhs).unwrap(), expected);

        let k = AffineElement::central(2, int(1));
        assert!(bracket(&k, &lhs).unwrap().is_zero());
        assert!(bracket(&lhs, &k).unwrap().is_zero());

        let e2 = AffineElement::monomial(&e, 2).unwrap();
        assert!(bracket(&lhs, &e2).unwrap().is_zero());
    }

    #[test]
    fn bracket_rejects_size_mismatch() {
        let a = AffineElement::central(2, int(1));
        let b = AffineElement::central(3, int(1));
        assert!(matches!(bracket(&a, &b), Err(Error::DimensionMismatch { .. })));
        let not_traceless = Matrix::identity(2);
        assert!(AffineElement::monomial(&not_traceless, 0).is_err());
    }

    #[test]
    fn projections() {
        let e = Matrix::unit(2, 0, 1);
        let f = Matrix::unit(2, 1, 0);
        let h = Matrix::from_i64_rows(&[vec![1, 0], vec![0, -1]]);
        let et = AffineElement::monomial(&e, 1).unwrap();
        let (u, l, m) = triangular_project(&et);
        assert_eq!(u, et);
        assert!(l.is_zero() && m.is_zero());

        let hk = AffineElement::monomial(&h, 0).unwrap().add(&AffineElement::central(2, int(1))).unwrap();
        let (u, l, m) = triangular_project(&hk);
        assert!(u.is_zero() && m.is_zero());
        assert_eq!(l, hk);

        let ft = AffineElement::monomial(&f, -2).unwrap();
        let mixed = ft.add(&et).unwrap();
        let (u, l, m) = triangular_project(&mixed);
        assert_eq!((u, m), (et, ft));
        assert!(l.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"summands":[{"matrix":[["0","1"],["0","0"]],"poly":{"-1":"3/2","2":"1"}}],"central":"1/3"}"#;
        let parsed: AffineElementJson = serde_json::from_str(text).unwrap();
        let x = parsed.into_element(2).unwrap();
        assert_eq!(x.components().len(), 2);
        let back = AffineElementJson::from(&x);
        let again = back.clone().into_element(2).unwrap();
        assert_eq!(again, x);
        let reparsed: AffineElementJson = serde_json::from_str(&serde_json::to_string(&back).unwrap()).unwrap();
        assert_eq!(reparsed, back);
    }

    #[test]
    fn integrability() {
        let a1 = build_root_system(TypeLabel::A, 1).unwrap();
        let a2 = build_root_system(TypeLabel::A, 2).unwrap();
        assert!(is_integrable_admissible(&a1, &Weight(vec![0]), 0).unwrap());
        assert!(!is_integrable_admissible(&a1, &Weight(vec![1]), 0).unwrap());
        assert!(is_integrable_admissible(&a2, &Weight(vec![1, 1]), 2).unwrap());
        assert!(is_integrable_admissible(&a2, &Weight(vec![-1, 1]), 2).is_err());
    }

    #[test]
    fn level_enumeration() {
        let a1 = build_root_system(TypeLabel::A, 1).unwrap();
        let a2 = build_root_system(TypeLabel::A, 2).unwrap();
        assert_eq!(enumerate_level_weights(&a1, 0).len(), 1);
        let w: Vec<Weight> = enumerate_level_weights(&a1, 3).into_iter().map(|x| x.weight).collect();
        assert_eq!(w, vec![Weight(vec![0]), Weight(vec![1]), Weight(vec![2]), Weight(vec![3])]);
        let w: Vec<Weight> = enumerate_level_weights(&a2, 1).into_iter().map(|x| x.weight).collect();
        assert_eq!(w, vec![Weight(vec![0, 0]), Weight(vec![0, 1]), Weight(vec![1, 0])]);
        assert!(enumerate_level_weights(&a2, -1).is_empty());
    }

    #[test]
    fn verma_small_degrees() {
        assert_eq!(verma_graded_dim_for(3, 5, 0), BigInt::from(5));
        assert_eq!(verma_graded_dim_for(3, 1, 1), BigInt::from(3));
        assert_eq!(verma_graded_dim_for(3, 1, 2), BigInt::from(9));
    }
}
