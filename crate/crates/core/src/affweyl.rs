//! The affine Weyl group `W ⋉ Q^∨`, minimal representatives of `W̃/W` and the
//! Bruhat order on cosets.
//!
//! Elements act on the coroot lattice (simple-coroot coordinates) by affine maps
//! `x ↦ L x + μ`. Generator `i ∈ 1..=rank` is the simple reflection `s_i`; generator
//! `0` is `s_0(x) = s_θ(x) + θ^∨`. The coset `w W` is labeled by `w(0)`.
//!
//! Lengths count the root hyperplanes `{⟨β, x⟩ = k}` separating the fundamental
//! alcove from its image, evaluated at an interior point of the alcove.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::rootsys::{RootSystem, TypeLabel};
use crate::{Error, Result};

/// An element of `W ⋉ Q^∨`: `x ↦ linear · x + translation`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElement {
    /// Row-major `rank × rank` integer matrix on coroot coordinates.
    linear: Vec<i64>,
    translation: Vec<i64>,
}

impl AffineWeylElement {
    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub fn linear(&self) -> &[i64] {
        &self.linear
    }

    pub fn is_translation(&self) -> bool {
        let r = self.translation.len();
        (0..r).all(|i| (0..r).all(|j| self.linear[i * r + j] == i64::from(i == j)))
    }
}

/// A coset of `W̃/W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeylCoset {
    /// `w(0)` in simple-coroot coordinates.
    pub cocharacter: Vec<i64>,
    pub min_length: usize,
    /// Reduced word of the minimal representative, leftmost generator first.
    pub min_word: Vec<usize>,
    /// For type `A_{N-1}`: the diagonal exponents `(n_1, …, n_N)`, summing to zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sl_cocharacter: Option<Vec<i64>>,
}

/// Group context for the affine Weyl group of one root system.
#[derive(Clone, Debug)]
pub struct AffineWeylGroup {
    type_label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    generators: Vec<AffineWeylElement>,
    /// `2ρ^∨` in coroot coordinates; pairs to 2 with every simple root.
    two_rho_coroot: Vec<i64>,
    /// `ht(θ) + 1`; the interior point is `2ρ^∨ / (2 · alcove_scale)`.
    alcove_scale: i64,
    finite_weyl: Vec<AffineWeylElement>,
}

/// Builds the group context for `rs`.
pub fn build_affine_weyl(rs: &RootSystem) -> AffineWeylGroup {
    AffineWeylGroup::new(rs)
}

impl AffineWeylGroup {
    pub fn new(rs: &RootSystem) -> Self {
        let r = rs.rank();
        let cartan = rs.cartan_matrix().to_vec();
        let theta = rs.highest_root();
        let theta_coroot = rs.coroot_coords(&theta);

        // s_β(x) = x - ⟨β, x⟩ β^∨, ⟨β, x⟩ = Σ_i b_i Σ_j a_ji x_j
        let reflection = |beta: &[i64], coroot: &[i64]| -> Vec<i64> {
            let mut m = vec![0i64; r * r];
            for k in 0..r {
                m[k * r + k] = 1;
            }
            for j in 0..r {
                let pairing: i64 = (0..r).map(|i| beta[i] * cartan[j][i]).sum();
                for k in 0..r {
                    m[k * r + j] -= coroot[k] * pairing;
                }
            }
            m
        };
        let mut generators = Vec::with_capacity(r + 1);
        generators.push(AffineWeylElement { linear: reflection(&theta, &theta_coroot), translation: theta_coroot.clone() });
        for i in 0..r {
            let simple = rs.simple_root(i);
            generators.push(AffineWeylElement { linear: reflection(&simple, &rs.coroot_coords(&simple)), translation: vec![0; r] });
        }

        let mut two_rho_coroot = vec![0i64; r];
        for beta in rs.positive_roots() {
            for (acc, c) in two_rho_coroot.iter_mut().zip(rs.coroot_coords(beta)) {
                *acc += c;
            }
        }

        let mut group = AffineWeylGroup {
            type_label: rs.type_label(),
            rank: r,
            cartan,
            positive_roots: rs.positive_roots().iter().map(|b| b.0.clone()).collect(),
            generators,
            two_rho_coroot,
            alcove_scale: theta.height() + 1,
            finite_weyl: Vec::new(),
        };
        group.finite_weyl = group.enumerate_finite_weyl();
        group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn type_label(&self) -> TypeLabel {
        self.type_label
    }

    /// Generator indices in the fixed order used for reduced words: `1..=rank`, then `0`.
    pub fn generator_order(&self) -> Vec<usize> {
        (1..=self.rank).chain(std::iter::once(0)).collect()
    }

    pub fn generator(&self, i: usize) -> &AffineWeylElement {
        &self.generators[i]
    }

    pub fn identity(&self) -> AffineWeylElement {
        let r = self.rank;
        let mut linear = vec![0; r * r];
        for k in 0..r {
            linear[k * r + k] = 1;
        }
        AffineWeylElement { linear, translation: vec![0; r] }
    }

    /// Pure translation by a coroot-lattice vector.
    pub fn translation(&self, mu: &[i64]) -> AffineWeylElement {
        let mut t = self.identity();
        t.translation = mu.to_vec();
        t
    }

    /// `a ∘ b`.
    pub fn compose(&self, a: &AffineWeylElement, b: &AffineWeylElement) -> AffineWeylElement {
        let r = self.rank;
        let mut linear = vec![0; r * r];
        for i in 0..r {
            for k in 0..r {
                let x = a.linear[i * r + k];
                if x != 0 {
                    for j in 0..r {
                        linear[i * r + j] += x * b.linear[k * r + j];
                    }
                }
            }
        }
        let mut translation = self.apply_linear(a, &b.translation);
        for (t, m) in translation.iter_mut().zip(&a.translation) {
            *t += m;
        }
        AffineWeylElement { linear, translation }
    }

    fn apply_linear(&self, w: &AffineWeylElement, x: &[i64]) -> Vec<i64> {
        let r = self.rank;
        (0..r).map(|i| (0..r).map(|j| w.linear[i * r + j] * x[j]).sum()).collect()
    }

    /// `w(x)` for a coroot-lattice point.
    pub fn apply(&self, w: &AffineWeylElement, x: &[i64]) -> Vec<i64> {
        let mut y = self.apply_linear(w, x);
        for (a, b) in y.iter_mut().zip(&w.translation) {
            *a += b;
        }
        y
    }

    /// Product of generators, leftmost first.
    pub fn from_word(&self, word: &[usize]) -> AffineWeylElement {
        word.iter().fold(self.identity(), |acc, &g| self.compose(&acc, &self.generators[g]))
    }

    /// `⟨β, x⟩` for a root in simple-root coordinates and a coroot-lattice vector.
    fn pair(&self, beta: &[i64], x: &[i64]) -> i64 {
        let r = self.rank;
        (0..r).map(|i| beta[i] * (0..r).map(|j| self.cartan[j][i] * x[j]).sum::<i64>()).sum()
    }

    /// Number of root hyperplanes separating the fundamental alcove from `w` of it.
    pub fn length(&self, w: &AffineWeylElement) -> usize {
        let denom = 2 * self.alcove_scale;
        let lq = self.apply_linear(w, &self.two_rho_coroot);
        self.positive_roots
            .iter()
            .map(|beta| {
                let v = self.pair(beta, &lq) + denom * self.pair(beta, &w.translation);
                v.div_euclid(denom).unsigned_abs() as usize
            })
            .sum()
    }

    pub fn is_right_descent(&self, w: &AffineWeylElement, s: usize) -> bool {
        self.length(&self.compose(w, &self.generators[s])) < self.length(w)
    }

    pub fn is_left_descent(&self, w: &AffineWeylElement, s: usize) -> bool {
        self.length(&self.compose(&self.generators[s], w)) < self.length(w)
    }

    /// Reduced word by repeatedly stripping left descents (generator order `1..=rank, 0`).
    pub fn reduced_word(&self, w: &AffineWeylElement) -> Vec<usize> {
        let order = self.generator_order();
        let mut word = Vec::new();
        let mut cur = w.clone();
        let mut len = self.length(&cur);
        while len > 0 {
            let (s, next, next_len) = order
                .iter()
                .find_map(|&s| {
                    let next = self.compose(&self.generators[s], &cur);
                    let l = self.length(&next);
                    (l < len).then_some((s, next, l))
                })
                .expect("a nonidentity element has a left descent");
            word.push(s);
            cur = next;
            len = next_len;
        }
        word
    }

    /// Minimal-length element of `w W`, by stripping right descents among `s_1..s_rank`.
    pub fn min_coset_rep(&self, w: &AffineWeylElement) -> AffineWeylElement {
        let mut cur = w.clone();
        'outer: loop {
            let len = self.length(&cur);
            for s in 1..=self.rank {
                let next = self.compose(&cur, &self.generators[s]);
                if self.length(&next) < len {
                    cur = next;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Length of the shortest element in the coset labeled by `mu`.
    pub fn coset_min_length(&self, mu: &[i64]) -> usize {
        self.length(&self.min_coset_rep(&self.translation(mu)))
    }

    /// Full coset record for the label `mu`.
    pub fn coset(&self, mu: &[i64]) -> AffineWeylCoset {
        let rep = self.min_coset_rep(&self.translation(mu));
        let min_word = self.reduced_word(&rep);
        AffineWeylCoset {
            cocharacter: mu.to_vec(),
            min_length: min_word.len(),
            min_word,
            sl_cocharacter: self.sl_cocharacter(mu),
        }
    }

    /// For type `A_{N-1}`: `n_1 = m_1`, `n_k = m_k - m_{k-1}`, `n_N = -m_{N-1}`.
    pub fn sl_cocharacter(&self, mu: &[i64]) -> Option<Vec<i64>> {
        if self.type_label != TypeLabel::A {
            return None;
        }
        let mut out = Vec::with_capacity(mu.len() + 1);
        let mut prev = 0;
        for &m in mu {
            out.push(m - prev);
            prev = m;
        }
        out.push(-prev);
        Some(out)
    }

    /// Inverse of [`Self::sl_cocharacter`]: `m_k = n_1 + … + n_k`.
    pub fn from_sl_cocharacter(&self, n: &[i64]) -> Result<Vec<i64>> {
        if self.type_label != TypeLabel::A {
            return Err(Error::Unsupported("diagonal cocharacters exist only in type A".into()));
        }
        if n.len() != self.rank + 1 || n.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidInput(format!("{n:?} is not an SL_{} cocharacter", self.rank + 1)));
        }
        Ok(n.iter().take(self.rank).scan(0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect())
    }

    /// Elements of the finite Weyl group, sorted.
    pub fn finite_weyl(&self) -> &[AffineWeylElement] {
        &self.finite_weyl
    }

    fn enumerate_finite_weyl(&self) -> Vec<AffineWeylElement> {
        let id = self.identity();
        let mut seen: HashSet<AffineWeylElement> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for s in 1..=self.rank {
                let next = self.compose(&w, &self.generators[s]);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Bruhat order on `W̃` by the subword property: `u ≤ x` iff some subword of a
    /// reduced word of `x` multiplies to `u`. Partial products longer than `u` are
    /// pruned, since prefixes of a reduced subword for `u` are no longer than `u`.
    pub fn bruhat_leq(&self, u: &AffineWeylElement, x: &AffineWeylElement) -> bool {
        let target_len = self.length(u);
        if target_len > self.length(x) {
            return false;
        }
        let word = self.reduced_word(x);
        let mut products: HashSet<AffineWeylElement> = HashSet::from([self.identity()]);
        for &s in &word {
            let extended: Vec<AffineWeylElement> = products
                .iter()
                .map(|y| self.compose(y, &self.generators[s]))
                .filter(|y| self.length(y) <= target_len)
                .collect();
            products.extend(extended);
        }
        products.contains(u)
    }

    /// `𝔲 ≤ 𝔳` iff `u ≤ v w` for some `w ∈ W`, with `u`, `v` minimal representatives.
    pub fn bruhat_leq_coset(&self, u: &[i64], v: &[i64]) -> bool {
        let u_min = self.min_coset_rep(&self.translation(u));
        let v_min = self.min_coset_rep(&self.translation(v));
        self.finite_weyl.iter().any(|w| self.bruhat_leq(&u_min, &self.compose(&v_min, w)))
    }

    /// All cosets with minimal length `≤ n`, ordered by length then label.
    ///
    /// Suffixes of a reduced word of a minimal representative are again minimal, so a
    /// walk from the base coset under the affine action on labels reaches them all.
    pub fn enumerate_cosets_upto(&self, n: usize) -> Vec<AffineWeylCoset> {
        let origin = vec![0i64; self.rank];
        let mut lengths: HashMap<Vec<i64>, usize> = HashMap::from([(origin.clone(), 0)]);
        let mut queue = VecDeque::from([origin]);
        while let Some(mu) = queue.pop_front() {
            if lengths[&mu] >= n {
                continue;
            }
            for g in &self.generators {
                let next = self.apply(g, &mu);
                if lengths.contains_key(&next) {
                    continue;
                }
                let len = self.coset_min_length(&next);
                lengths.insert(next.clone(), len);
                if len <= n {
                    queue.push_back(next);
                }
            }
        }
        let mut labels: Vec<(usize, Vec<i64>)> =
            lengths.into_iter().filter(|(_, l)| *l <= n).map(|(mu, l)| (l, mu)).collect();
        labels.sort();
        labels.into_iter().map(|(_, mu)| self.coset(&mu)).collect()
    }

    /// `Σ_{𝔳 ≤ 𝔴} q^{ℓ(𝔳)}` as a coefficient list, constant term first.
    pub fn schubert_poincare_poly(&self, w: &[i64]) -> Vec<u64> {
        let top = self.coset_min_length(w);
        let mut coeffs = vec![0u64; top + 1];
        for c in self.enumerate_cosets_upto(top) {
            if self.bruhat_leq_coset(&c.cocharacter, w) {
                coeffs[c.min_length] += 1;
            }
        }
        coeffs
    }
}

/// `max_i |n_i|` for an `SL_N` cocharacter: the least window depth containing `𝔴 L₀`.
pub fn min_lattice_level(coset: &AffineWeylCoset) -> Result<u64> {
    let n = coset
        .sl_cocharacter
        .as_ref()
        .ok_or_else(|| Error::Unsupported("lattice levels are defined for type A cosets".into()))?;
    Ok(n.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0))
}

/// Evaluates a coefficient list at `q`.
pub fn evaluate_poly(coeffs: &[u64], q: u64) -> u128 {
    coeffs.iter().rev().fold(0u128, |acc, &c| acc * q as u128 + c as u128)
}

/// Groups cosets by minimal length.
pub fn length_histogram(cosets: &[AffineWeylCoset]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for c in cosets {
        *h.entry(c.min_length).or_insert(0) += 1;
    }
    h
}

/// Distinct labels of a coset list, for set comparisons.
pub fn labels(cosets: &[AffineWeylCoset]) -> BTreeSet<Vec<i64>> {
    cosets.iter().map(|c| c.cocharacter.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    fn group(l: TypeLabel, r: usize) -> AffineWeylGroup {
        build_affine_weyl(&build_root_system(l, r).unwrap())
    }

    #[test]
    fn generators_are_involutions() {
        for (l, r) in [(TypeLabel::A, 1), (TypeLabel::A, 2), (TypeLabel::C, 2), (TypeLabel::G, 2)] {
            let g = group(l, r);
            for s in 0..=r {
                let sq = g.compose(g.generator(s), g.generator(s));
                assert_eq!(sq, g.identity());
                assert_eq!(g.length(g.generator(s)), 1);
            }
            assert_eq!(g.length(&g.identity()), 0);
        }
    }

    #[test]
    fn a1_s0_s1_is_a_translation() {
        let g = group(TypeLabel::A, 1);
        let w = g.from_word(&[0, 1]);
        assert!(w.is_translation());
        assert_eq!(w.translation().iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn s0_moves_origin_to_theta_coroot() {
        let g = group(TypeLabel::A, 2);
        assert_eq!(g.apply(g.generator(0), &[0, 0]), vec![1, 1]);
    }

    #[test]
    fn a1_one_coset_per_length() {
        let g = group(TypeLabel::A, 1);
        let cosets = g.enumerate_cosets_upto(3);
        assert_eq!(cosets.len(), 4);
        assert_eq!(cosets.iter().map(|c| c.min_length).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        for c in &cosets {
            assert_eq!(c.min_word.len(), c.min_length);
            let rep = g.from_word(&c.min_word);
            assert_eq!(g.apply(&rep, &[0]), c.cocharacter);
        }
    }

    #[test]
    fn poincare_examples() {
        let g = group(TypeLabel::A, 1);
        assert_eq!(g.schubert_poincare_poly(&[0]), vec![1]);
        let s0 = g.apply(g.generator(0), &[0]);
        assert_eq!(g.schubert_poincare_poly(&s0), vec![1, 1]);
        let len2 = g.enumerate_cosets_upto(2).into_iter().find(|c| c.min_length == 2).unwrap();
        assert_eq!(g.schubert_poincare_poly(&len2.cocharacter), vec![1, 1, 1]);
    }

    #[test]
    fn lattice_levels() {
        let g = group(TypeLabel::A, 2);
        let c = g.coset(&[0, 0]);
        assert_eq!(min_lattice_level(&c).unwrap(), 0);
        let mu = g.from_sl_cocharacter(&[2, -1, -1]).unwrap();
        assert_eq!(min_lattice_level(&g.coset(&mu)).unwrap(), 2);
        let g1 = group(TypeLabel::A, 1);
        let mu = g1.from_sl_cocharacter(&[1, -1]).unwrap();
        assert_eq!(min_lattice_level(&g1.coset(&mu)).unwrap(), 1);
        let c2 = group(TypeLabel::C, 2).coset(&[1, 0]);
        assert!(matches!(min_lattice_level(&c2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn finite_weyl_orders() {
        assert_eq!(group(TypeLabel::A, 2).finite_weyl().len(), 6);
        assert_eq!(group(TypeLabel::C, 2).finite_weyl().len(), 8);
        assert_eq!(group(TypeLabel::G, 2).finite_weyl().len(), 12);
    }
}
