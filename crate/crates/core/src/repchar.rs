//! Characters of irreducible representations and their decomposition into
//! irreducible modules for the sl₂ spanned by the highest-root spaces.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::rootsys::{Root, RootSystem, Weight};
use crate::{Error, Rational, Result};

/// Formal character `Σ n_λ e^λ` with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    entries: BTreeMap<Weight, u64>,
}

impl Character {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a character, dropping zero multiplicities.
    pub fn from_entries<I: IntoIterator<Item = (Weight, u64)>>(it: I) -> Self {
        let mut ch = Self::new();
        for (w, m) in it {
            ch.add(w, m);
        }
        ch
    }

    pub fn add(&mut self, w: Weight, m: u64) {
        if m > 0 {
            *self.entries.entry(w).or_insert(0) += m;
        }
    }

    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    /// `Σ n_λ`.
    pub fn dimension(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Character of a direct sum.
    pub fn direct_sum(&self, other: &Character) -> Character {
        let mut out = self.clone();
        for (w, m) in &other.entries {
            out.add(w.clone(), *m);
        }
        out
    }

    /// Character of a tensor product.
    pub fn tensor(&self, other: &Character) -> Character {
        let mut out = Character::new();
        for (a, m) in &self.entries {
            for (b, n) in &other.entries {
                out.add(a.add(b), m * n);
            }
        }
        out
    }

    /// True if `n_{s_i λ} = n_λ` for every simple reflection.
    pub fn is_weyl_invariant(&self, rs: &RootSystem) -> bool {
        self.entries.iter().all(|(w, m)| {
            (0..rs.rank()).all(|i| self.multiplicity(&rs.reflect_weight(w, i)) == *m)
        })
    }
}

/// Dimensions of the irreducible sl₂(θ)-summands, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Strings {
    pub dims: Vec<u64>,
}

impl Sl2Strings {
    pub fn new(mut dims: Vec<u64>) -> Self {
        dims.sort_unstable_by(|a, b| b.cmp(a));
        Sl2Strings { dims }
    }

    pub fn total_dimension(&self) -> u64 {
        self.dims.iter().sum()
    }

    /// Eigenvalue counts `N_k` of `θ^∨` re-expanded from the strings.
    pub fn eigenvalue_counts(&self) -> BTreeMap<i64, u64> {
        let mut counts = BTreeMap::new();
        for &d in &self.dims {
            let top = d as i64 - 1;
            let mut k = top;
            while k >= -top {
                *counts.entry(k).or_insert(0) += 1;
                k -= 2;
            }
        }
        counts
    }
}

/// Dominant weights of `L(λ)`. Covers in the dominance order of dominant weights
/// differ by a positive root, so a breadth-first walk by positive roots is exhaustive.
pub fn dominant_weights(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let roots: Vec<Weight> = rs.positive_roots().iter().map(|r| rs.root_to_weight(r)).collect();
    let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        for alpha in &roots {
            let next = mu.sub(alpha);
            if next.is_dominant() && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort();
    out
}

/// Multiplicities of the dominant weights of `L(λ)` by Freudenthal's recursion.
pub fn dominant_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
    rs.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::InvalidInput(format!("weight {:?} is not dominant", lambda.0)));
    }
    let (gram, _scale) = rs.integral_weight_gram();
    let form = |x: &[i64], y: &[i64]| -> i128 {
        let mut acc = 0i128;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                acc += gram[i][j] * (x[i] as i128) * (y[j] as i128);
            }
        }
        acc
    };
    let roots: Vec<Weight> = rs.positive_roots().iter().map(|r| rs.root_to_weight(r)).collect();
    let rho = rs.rho();
    let lr = lambda.add(&rho);
    let top = form(&lr, &lr);

    let mut dominant = dominant_weights(rs, lambda);
    let depth = |mu: &Weight| -> i64 {
        rs.weight_to_root(&lambda.sub(mu)).map(|r: Root| r.height()).expect("λ - μ lies in the root lattice")
    };
    dominant.sort_by_key(|mu| (depth(mu), mu.clone()));

    let mut mult: HashMap<Weight, u64> = HashMap::new();
    for mu in dominant {
        if &mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut numer: i128 = 0;
        for alpha in &roots {
            let mut k = 1;
            loop {
                let shifted = mu.add(&alpha.scaled(k));
                let m = match mult.get(&rs.dominant_representative(&shifted)) {
                    Some(&m) => m,
                    None => break,
                };
                numer += (m as i128) * form(&shifted, alpha);
                k += 1;
            }
        }
        let mr = mu.add(&rho);
        let denom = top - form(&mr, &mr);
        let value = 2 * numer;
        if denom <= 0 || value % denom != 0 {
            return Err(Error::MalformedCharacter(format!("non-integral multiplicity at {:?}", mu.0)));
        }
        let m = (value / denom) as u64;
        if m > 0 {
            mult.insert(mu, m);
        }
    }
    Ok(mult.into_iter().collect())
}

/// Full character of the irreducible module with highest weight `λ`.
pub fn weight_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<Character> {
    let dom = dominant_multiplicities(rs, lambda)?;
    let mut ch = Character::new();
    for (mu, m) in dom {
        for w in rs.weyl_orbit(&mu) {
            ch.add(w, m);
        }
    }
    Ok(ch)
}

/// Weyl dimension formula `Π_{β>0} (λ+ρ, β)/(ρ, β)`.
pub fn dimension(rs: &RootSystem, lambda: &Weight) -> Result<BigInt> {
    rs.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::InvalidInput(format!("weight {:?} is not dominant", lambda.0)));
    }
    let rho = rs.rho();
    let lr = lambda.add(&rho);
    let mut prod = Rational::one();
    for beta in rs.positive_roots() {
        prod *= rs.form_weight_root(&lr, beta) / rs.form_weight_root(&rho, beta);
    }
    debug_assert!(prod.is_integer());
    Ok(prod.to_integer())
}

/// Peels sl₂(θ)-strings off the `θ^∨`-eigenvalue counts of a character.
pub fn sl2_theta_decompose(rs: &RootSystem, ch: &Character) -> Result<Sl2Strings> {
    let theta = rs.highest_root();
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for (w, m) in ch.entries() {
        rs.check_weight(w)?;
        *counts.entry(rs.pair_coroot(w, &theta)).or_insert(0) += m;
    }
    strings_from_counts(&counts)
}

/// String peeling on eigenvalue counts: strings with top eigenvalue `k` number `N_k - N_{k+2}`.
pub fn strings_from_counts(counts: &BTreeMap<i64, u64>) -> Result<Sl2Strings> {
    let n = |k: i64| counts.get(&k).copied().unwrap_or(0);
    for (&k, &m) in counts {
        if n(-k) != m {
            return Err(Error::MalformedCharacter(format!("N_{k} = {m} but N_{} = {}", -k, n(-k))));
        }
    }
    let max = counts.keys().next_back().copied().unwrap_or(0).max(0);
    let mut dims = Vec::new();
    for k in 0..=max {
        let (a, b) = (n(k), n(k + 2));
        if a < b {
            return Err(Error::MalformedCharacter(format!("N_{k} = {a} < N_{} = {b}", k + 2)));
        }
        dims.extend(std::iter::repeat(k as u64 + 1).take((a - b) as usize));
    }
    Ok(Sl2Strings::new(dims))
}

/// `W(m) ⊗ W(1)` as a list of highest weights: `[m+1, m-1]`, or `[1]` when `m = 0`.
pub fn clebsch_gordan_with_w1(m: u64) -> Vec<u64> {
    if m == 0 {
        vec![1]
    } else {
        vec![m + 1, m - 1]
    }
}

/// Character of the `(m+1)`-dimensional sl₂-module `W(m)`, in rank-1 weight coordinates.
pub fn sl2_character(m: u64) -> Character {
    let m = m as i64;
    Character::from_entries((0..=m).map(|n| (Weight(vec![m - 2 * n]), 1)))
}

/// Convenience: dimension as `u64` when it fits.
pub fn dimension_u64(rs: &RootSystem, lambda: &Weight) -> Result<u64> {
    dimension(rs, lambda)?.to_u64().ok_or_else(|| Error::Unsupported("dimension exceeds u64".into()))
}
