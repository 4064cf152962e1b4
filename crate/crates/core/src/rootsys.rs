//! Root data for the simple types A–G.
//!
//! Simple roots follow the Bourbaki labeling:
//!
//! | type | diagram | short simple roots |
//! |------|---------|--------------------|
//! | `A_n` | 1 - 2 - … - n | none |
//! | `B_n` | 1 - … - (n-1) => n | `α_n` |
//! | `C_n` | 1 - … - (n-1) <= n | `α_1 … α_{n-1}` |
//! | `D_n` | 1 - … - (n-2) - {n-1, n} | none |
//! | `E_n` | 1 - 3 - 4 - … - n, with 2 attached to 4 | none |
//! | `F_4` | 1 - 2 => 3 - 4 | `α_3, α_4` |
//! | `G_2` | 1 <= 2 (triple bond) | `α_1` |
//!
//! The Cartan matrix is `a_ij = ⟨α_i^∨, α_j⟩`. Roots are stored in simple-root
//! coordinates, weights in fundamental-weight coordinates, so `α_j` has weight
//! coordinates given by column `j` of the Cartan matrix.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Rational, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => TypeLabel::A,
            "B" => TypeLabel::B,
            "C" => TypeLabel::C,
            "D" => TypeLabel::D,
            "E" => TypeLabel::E,
            "F" => TypeLabel::F,
            "G" => TypeLabel::G,
            other => return Err(Error::InvalidInput(format!("unknown type label {other:?}"))),
        })
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl Deref for Weight {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

/// A root-lattice vector in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }
}

impl Deref for Root {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

/// Either kind of lattice vector, for [`RootSystem::normalized_form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeVector {
    Weight(Weight),
    Root(Root),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    type_label: TypeLabel,
    rank: usize,
    cartan_matrix: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    /// `d_i = ⟨α_i, α_i⟩ / 2`; long roots have `d_i = 1`.
    #[serde(with = "rational_vec")]
    symmetrizer: Vec<Rational>,
    #[serde(skip)]
    cartan_inverse: Vec<Vec<Rational>>,
}

mod rational_vec {
    use serde::{Serialize, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }
}

/// Cartan matrix of a valid simple type; `None` for an invalid (type, rank) pair.
pub fn cartan_matrix(label: TypeLabel, rank: usize) -> Option<Vec<Vec<i64>>> {
    let valid = match label {
        TypeLabel::A => rank >= 1,
        TypeLabel::B | TypeLabel::C => rank >= 2,
        TypeLabel::D => rank >= 3,
        TypeLabel::E => (6..=8).contains(&rank),
        TypeLabel::F => rank == 4,
        TypeLabel::G => rank == 2,
    };
    if !valid {
        return None;
    }
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match label {
        TypeLabel::A | TypeLabel::B | TypeLabel::C => {
            for i in 0..rank - 1 {
                link(i, i + 1);
            }
        }
        TypeLabel::D => {
            for i in 0..rank - 2 {
                link(i, i + 1);
            }
            link(rank - 3, rank - 1);
        }
        TypeLabel::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..rank - 1 {
                link(i, i + 1);
            }
        }
        TypeLabel::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        TypeLabel::G => link(0, 1),
    }
    // Multiple bonds: the short root's row carries the bond multiplicity.
    match label {
        TypeLabel::B => a[rank - 1][rank - 2] = -2,
        TypeLabel::C => a[rank - 2][rank - 1] = -2,
        TypeLabel::F => a[2][1] = -2,
        TypeLabel::G => a[0][1] = -3,
        _ => {}
    }
    Some(a)
}

/// Builds the root system of the given simple type.
pub fn build_root_system(label: TypeLabel, rank: usize) -> Result<RootSystem> {
    let cartan = cartan_matrix(label, rank)
        .ok_or_else(|| Error::InvalidInput(format!("no simple type {label}{rank}")))?;
    let symmetrizer = symmetrizer(&cartan);
    let positive_roots = positive_roots_by_reflection(&cartan);
    let cartan_inverse = invert(&cartan);
    Ok(RootSystem { type_label: label, rank, cartan_matrix: cartan, positive_roots, symmetrizer, cartan_inverse })
}

fn symmetrizer(a: &[Vec<i64>]) -> Vec<Rational> {
    let n = a.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    d[0] = Some(Rational::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                // d_i a_ij = d_j a_ji
                let di = d[i].clone().unwrap();
                d[j] = Some(di * Rational::from_integer(a[i][j].into()) / Rational::from_integer(a[j][i].into()));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let max = d.iter().max().cloned().unwrap();
    d.into_iter().map(|x| x / max.clone()).collect()
}

fn positive_roots_by_reflection(a: &[Vec<i64>]) -> Vec<Root> {
    let n = a.len();
    let simple: Vec<Root> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            Root(v)
        })
        .collect();
    let mut seen: HashSet<Root> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Root> = simple.into_iter().collect();
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            // s_i β = β - ⟨β, α_i^∨⟩ α_i
            let pairing: i64 = (0..n).map(|j| a[i][j] * beta[j]).sum();
            let mut next = beta.0.clone();
            next[i] -= pairing;
            let next = Root(next);
            if next.is_positive() && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut roots: Vec<Root> = seen.into_iter().collect();
    roots.sort_by(|x, y| x.height().cmp(&y.height()).then_with(|| x.0.cmp(&y.0)));
    roots
}

fn invert(a: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x.into())).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("Cartan matrix is invertible");
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let v = m[col][c].clone() * f.clone();
                    m[r][c] = m[r][c].clone() - v;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl RootSystem {
    pub fn type_label(&self) -> TypeLabel {
        self.type_label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.type_label, self.rank)
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan_matrix
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn symmetrizer(&self) -> &[Rational] {
        &self.symmetrizer
    }

    /// `dim g = rank + 2 |Δ+|`.
    pub fn dimension(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        Root(v)
    }

    /// The unique maximal positive root. It is the last root in the height ordering.
    pub fn highest_root(&self) -> Root {
        self.positive_roots.last().cloned().expect("nonempty root system")
    }

    /// Weight coordinates of a root-lattice vector: `(A b)_i`.
    pub fn root_to_weight(&self, root: &Root) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| (0..self.rank).map(|j| self.cartan_matrix[i][j] * root[j]).sum())
                .collect(),
        )
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<Rational> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank).fold(Rational::zero(), |acc, j| {
                    acc + self.cartan_inverse[i][j].clone() * Rational::from_integer(w[j].into())
                })
            })
            .collect()
    }

    /// Simple-root coordinates of a weight in the root lattice, `None` otherwise.
    pub fn weight_to_root(&self, w: &Weight) -> Option<Root> {
        self.weight_to_root_coords(w)
            .into_iter()
            .map(|r| if r.is_integer() { r.to_integer().to_i64() } else { None })
            .collect::<Option<Vec<_>>>()
            .map(Root)
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// Highest root as a weight.
    pub fn theta_weight(&self) -> Weight {
        self.root_to_weight(&self.highest_root())
    }

    /// `⟨β, β⟩ / 2` for a root.
    pub fn half_norm(&self, root: &Root) -> Rational {
        self.form_roots(root, root) / Rational::from_integer(2.into())
    }

    /// Coroot coordinates of `β^∨` in the basis of simple coroots: `b_j d_j / d_β`.
    pub fn coroot_coords(&self, root: &Root) -> Vec<i64> {
        let d_beta = self.half_norm(root);
        root.iter()
            .zip(&self.symmetrizer)
            .map(|(&b, d)| {
                let c = Rational::from_integer(b.into()) * d.clone() / d_beta.clone();
                c.to_integer().to_i64().expect("coroot coordinates are integers")
            })
            .collect()
    }

    /// `⟨λ, β^∨⟩ = 2(λ, β)/(β, β)`, always an integer.
    pub fn pair_coroot(&self, lambda: &Weight, root: &Root) -> i64 {
        self.coroot_coords(root).iter().zip(lambda.iter()).map(|(c, l)| c * l).sum()
    }

    /// `⟨ρ, θ^∨⟩ + 1`.
    pub fn dual_coxeter(&self) -> i64 {
        1 + self.pair_coroot(&self.rho(), &self.highest_root())
    }

    /// `(x, y) = Σ x_i y_j d_i a_ij` on root coordinates.
    pub fn form_roots(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut acc = BigInt::zero();
        let mut den = BigInt::one();
        // Accumulate over a common denominator to avoid rational churn.
        for d in &self.symmetrizer {
            den = den.lcm(d.denom());
        }
        for i in 0..self.rank {
            if x[i] == 0 {
                continue;
            }
            let di = self.symmetrizer[i].clone() * Rational::from_integer(den.clone());
            let di = di.to_integer();
            for j in 0..self.rank {
                acc += &di * BigInt::from(x[i] * y[j] * self.cartan_matrix[i][j]);
            }
        }
        Rational::new(acc, den)
    }

    /// `(λ, β) = Σ c_i b_i d_i` for a weight and a root.
    pub fn form_weight_root(&self, w: &[i64], r: &[i64]) -> Rational {
        (0..self.rank).fold(Rational::zero(), |acc, i| {
            acc + self.symmetrizer[i].clone() * Rational::from_integer((w[i] * r[i]).into())
        })
    }

    /// `(λ, μ)` for two weights, via `(ω_i, ω_j) = (A^{-1})_{ij} d_i`.
    pub fn form_weights(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if y[j] == 0 {
                    continue;
                }
                acc += self.cartan_inverse[i][j].clone()
                    * self.symmetrizer[i].clone()
                    * Rational::from_integer((x[i] * y[j]).into());
            }
        }
        acc
    }

    /// The invariant form normalized by `⟨θ, θ⟩ = 2`.
    pub fn normalized_form(&self, x: &LatticeVector, y: &LatticeVector) -> Rational {
        match (x, y) {
            (LatticeVector::Root(a), LatticeVector::Root(b)) => self.form_roots(a, b),
            (LatticeVector::Weight(a), LatticeVector::Root(b)) | (LatticeVector::Root(b), LatticeVector::Weight(a)) => {
                self.form_weight_root(a, b)
            }
            (LatticeVector::Weight(a), LatticeVector::Weight(b)) => self.form_weights(a, b),
        }
    }

    /// Gram matrix of the fundamental weights scaled to integers, with the scale.
    pub fn integral_weight_gram(&self) -> (Vec<Vec<i128>>, i128) {
        let gram: Vec<Vec<Rational>> = (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.cartan_inverse[i][j].clone() * self.symmetrizer[i].clone())
                    .collect()
            })
            .collect();
        let mut den = BigInt::one();
        for row in &gram {
            for x in row {
                den = den.lcm(x.denom());
            }
        }
        let scale = den.to_i128().expect("small denominators");
        let ints = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x.clone() * Rational::from_integer(den.clone())).to_integer().to_i128().unwrap())
                    .collect()
            })
            .collect();
        (ints, scale)
    }

    /// `s_i λ = λ - ⟨λ, α_i^∨⟩ α_i` on weight coordinates.
    pub fn reflect_weight(&self, w: &Weight, i: usize) -> Weight {
        let c = w[i];
        if c == 0 {
            return w.clone();
        }
        Weight((0..self.rank).map(|k| w[k] - c * self.cartan_matrix[k][i]).collect())
    }

    /// The unique dominant weight in the Weyl orbit of `w`.
    pub fn dominant_representative(&self, w: &Weight) -> Weight {
        let mut cur = w.clone();
        while let Some(i) = cur.iter().position(|&c| c < 0) {
            cur = self.reflect_weight(&cur, i);
        }
        cur
    }

    /// Full Weyl orbit of a weight, sorted.
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        let start = self.dominant_representative(w);
        let mut seen: BTreeSet<Weight> = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            for i in 0..self.rank {
                if cur[i] > 0 {
                    let next = self.reflect_weight(&cur, i);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Validates that a weight belongs to this system.
    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: w.len() });
        }
        Ok(())
    }
}

/// Every (type, rank) pair of rank at most `max_rank`, in a fixed order.
pub fn all_types_up_to(max_rank: usize) -> Vec<(TypeLabel, usize)> {
    let mut out = Vec::new();
    for label in [TypeLabel::A, TypeLabel::B, TypeLabel::C, TypeLabel::D, TypeLabel::E, TypeLabel::F, TypeLabel::G] {
        for rank in 1..=max_rank {
            if cartan_matrix(label, rank).is_some() {
                out.push((label, rank));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(l: TypeLabel, r: usize) -> RootSystem {
        build_root_system(l, r).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn invalid_pairs_rejected() {
        assert!(build_root_system(TypeLabel::D, 2).is_err());
        assert!(build_root_system(TypeLabel::E, 5).is_err());
        assert!(build_root_system(TypeLabel::E, 9).is_err());
        assert!(build_root_system(TypeLabel::G, 3).is_err());
        assert!(build_root_system(TypeLabel::A, 0).is_err());
    }

    #[test]
    fn highest_roots() {
        assert_eq!(rs(TypeLabel::A, 1).highest_root(), Root(vec![1]));
        assert_eq!(rs(TypeLabel::A, 2).highest_root(), Root(vec![1, 1]));
        assert_eq!(rs(TypeLabel::G, 2).highest_root(), Root(vec![3, 2]));
        assert_eq!(rs(TypeLabel::E, 8).highest_root(), Root(vec![2, 3, 4, 6, 5, 4, 3, 2]));
        assert_eq!(rs(TypeLabel::F, 4).highest_root(), Root(vec![2, 3, 4, 2]));
    }

    #[test]
    fn g2_short_simple_root_has_norm_two_thirds() {
        let g2 = rs(TypeLabel::G, 2);
        assert_eq!(g2.form_roots(&[1, 0], &[1, 0]), q(2, 3));
        assert_eq!(g2.form_roots(&[0, 1], &[0, 1]), q(2, 1));
    }

    #[test]
    fn coroot_pairings() {
        let a2 = rs(TypeLabel::A, 2);
        let theta = a2.highest_root();
        assert_eq!(a2.pair_coroot(&a2.rho(), &theta), 2);
        assert_eq!(a2.pair_coroot(&a2.theta_weight(), &theta), 2);
        for l in [TypeLabel::B, TypeLabel::C] {
            let s = rs(l, 3);
            for i in 0..3 {
                for j in 0..3 {
                    let expect = i64::from(i == j);
                    assert_eq!(s.pair_coroot(&Weight::fundamental(3, i), &s.simple_root(j)), expect);
                }
            }
        }
    }

    #[test]
    fn weight_root_conversions_agree() {
        let b3 = rs(TypeLabel::B, 3);
        for beta in b3.positive_roots() {
            let w = b3.root_to_weight(beta);
            assert_eq!(b3.weight_to_root(&w).as_ref(), Some(beta));
            assert_eq!(b3.form_weights(&w, &w), b3.form_roots(beta, beta));
        }
    }

    #[test]
    fn orbit_of_a2_standard_weight() {
        let a2 = rs(TypeLabel::A, 2);
        let orbit = a2.weyl_orbit(&Weight(vec![1, 0]));
        assert_eq!(orbit, vec![Weight(vec![-1, 1]), Weight(vec![0, -1]), Weight(vec![1, 0])]);
    }
}
