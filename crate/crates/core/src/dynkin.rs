//! Dynkin index `m_V` of a representation, by three independent routes:
//! the weight sum `½ Σ n_λ ⟨λ, θ^∨⟩²`, the string binomials `Σ C(m_i + 1, 3)`,
//! and the trace-form ratio of explicit matrices.

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::matrix::Matrix;
use crate::repchar::{self, Character, Sl2Strings};
use crate::rootsys::{RootSystem, Weight};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    #[serde(with = "crate::serde_util::rational")]
    pub weight_sum_value: Rational,
    pub string_sum_value: u64,
    pub agrees: bool,
}

/// `C(n, 3)`, zero for `n < 3`.
pub fn binom3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// `½ Σ_λ n_λ ⟨λ, θ^∨⟩²`.
pub fn index_weight_sum(rs: &RootSystem, ch: &Character) -> Rational {
    let theta = rs.highest_root();
    let total: u64 = ch
        .entries()
        .iter()
        .map(|(w, m)| {
            let p = rs.pair_coroot(w, &theta);
            m * (p * p) as u64
        })
        .sum();
    Rational::new(total.into(), 2.into())
}

/// `Σ_i C(m_i + 1, 3)` with `m_i` the summand dimensions.
pub fn index_string_sum(strings: &Sl2Strings) -> u64 {
    strings.dims.iter().map(|&d| binom3(d + 1)).sum()
}

/// `(½ Σ_{n=0}^{m} (m - 2n)², C(m+2, 3))`: the weight-sum and binomial forms for `W(m)`.
pub fn sl2_string_identity(m: u64) -> (Rational, u64) {
    let m = m as i64;
    let sum: i64 = (0..=m).map(|n| (m - 2 * n) * (m - 2 * n)).sum();
    (Rational::new(sum.into(), 2.into()), binom3(m as u64 + 2))
}

/// Images of the standard basis `e, f, h` of sl₂ under a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Images<F: Field = Rational> {
    pub e: Matrix<F>,
    pub f: Matrix<F>,
    pub h: Matrix<F>,
}

impl<F: Field> Sl2Images<F> {
    /// Checks `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn check_relations(&self) -> Result<()> {
        let n = self.h.rows();
        for m in [&self.e, &self.f, &self.h] {
            if !m.is_square() || m.rows() != n {
                return Err(Error::DimensionMismatch { expected: n, got: m.rows() });
            }
        }
        let two = F::from_i64(2);
        if self.h.commutator(&self.e) != self.e.scale(&two) {
            return Err(Error::InvalidHomomorphism("[h, e] != 2e".into()));
        }
        if self.h.commutator(&self.f) != self.f.scale(&-two) {
            return Err(Error::InvalidHomomorphism("[h, f] != -2f".into()));
        }
        if self.e.commutator(&self.f) != self.h {
            return Err(Error::InvalidHomomorphism("[e, f] != h".into()));
        }
        Ok(())
    }
}

/// Ratio `tr(φX φY) / ⟨X, Y⟩` where the source form is the trace form of the
/// defining 2×2 representation (`⟨e,f⟩ = 1`, `⟨h,h⟩ = 2`). Every basis pair is
/// checked, including those with zero source pairing.
pub fn index_trace_ratio(images: &Sl2Images) -> Result<Rational> {
    images.check_relations()?;
    let source = [
        Matrix::<Rational>::unit(2, 0, 1),
        Matrix::unit(2, 1, 0),
        Matrix::from_i64_rows(&[vec![1, 0], vec![0, -1]]),
    ];
    let target = [&images.e, &images.f, &images.h];
    let mut ratio: Option<Rational> = None;
    for i in 0..3 {
        for j in 0..3 {
            let src = source[i].trace_form(&source[j]);
            let tgt = target[i].trace_form(target[j]);
            if src.is_zero() {
                if !tgt.is_zero() {
                    return Err(Error::InvalidHomomorphism(format!("pair ({i},{j}) pairs to zero in the source only")));
                }
                continue;
            }
            let r = tgt / src;
            match &ratio {
                Some(prev) if *prev != r => {
                    return Err(Error::InvalidHomomorphism(format!("ratios {prev} and {r} disagree")));
                }
                _ => ratio = Some(r),
            }
        }
    }
    Ok(ratio.expect("the source form is nondegenerate"))
}

/// The irreducible `(m+1)`-dimensional representation `W(m)` in the basis
/// `v_0, …, v_m` with `h v_i = (m - 2i) v_i`, `f v_i = v_{i+1}`, `e v_i = i(m - i + 1) v_{i-1}`.
pub fn sl2_irrep_matrices(m: usize) -> Sl2Images {
    let n = m + 1;
    let mut e = Matrix::zero(n, n);
    let mut f = Matrix::zero(n, n);
    let mut h = Matrix::zero(n, n);
    for i in 0..n {
        h.set(i, i, Rational::from_i64(m as i64 - 2 * i as i64));
        if i + 1 < n {
            f.set(i + 1, i, Rational::from_i64(1));
        }
        if i > 0 {
            e.set(i - 1, i, Rational::from_i64((i * (m - i + 1)) as i64));
        }
    }
    Sl2Images { e, f, h }
}

/// Which `sl_n`-module the composite `sl₂(θ) ↪ sl_n → End V` lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeARep {
    Standard,
    Adjoint,
}

/// sl₂(θ) inside `sl_n` (`e = E_{1n}`, `f = E_{n1}`, `h = E_{11} - E_{nn}`), pushed
/// through the standard or adjoint representation.
pub fn type_a_theta_images(n: usize, rep: TypeARep) -> Sl2Images {
    assert!(n >= 2);
    let e = Matrix::unit(n, 0, n - 1);
    let f = Matrix::unit(n, n - 1, 0);
    let h = &Matrix::unit(n, 0, 0) - &Matrix::unit(n, n - 1, n - 1);
    match rep {
        TypeARep::Standard => Sl2Images { e, f, h },
        TypeARep::Adjoint => Sl2Images { e: ad_matrix(&e), f: ad_matrix(&f), h: ad_matrix(&h) },
    }
}

/// Basis of `sl_n`: off-diagonal `E_ij` in row-major order, then `E_ii - E_{i+1,i+1}`.
pub fn sl_n_basis(n: usize) -> Vec<Matrix> {
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(Matrix::unit(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        basis.push(&Matrix::unit(n, i, i) - &Matrix::unit(n, i + 1, i + 1));
    }
    basis
}

/// Coordinates of a trace-zero matrix in [`sl_n_basis`].
pub fn sl_n_coords(x: &Matrix) -> Vec<Rational> {
    let n = x.rows();
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(x.get(i, j).clone());
            }
        }
    }
    // diag = Σ c_k (E_kk - E_{k+1,k+1})  ⇒  c_k = Σ_{l ≤ k} diag_l
    let mut partial = Rational::zero();
    for k in 0..n - 1 {
        partial += x.get(k, k).clone();
        out.push(partial.clone());
    }
    out
}

fn ad_matrix(x: &Matrix) -> Matrix {
    let n = x.rows();
    let basis = sl_n_basis(n);
    let dim = basis.len();
    let mut ad = Matrix::zero(dim, dim);
    for (col, b) in basis.iter().enumerate() {
        for (row, c) in sl_n_coords(&x.commutator(b)).into_iter().enumerate() {
            ad.set(row, col, c);
        }
    }
    ad
}

/// Weight-sum and string-sum indices of `L(λ)` side by side.
pub fn index_report(rs: &RootSystem, lambda: &Weight) -> Result<IndexReport> {
    let ch = repchar::weight_multiplicities(rs, lambda)?;
    let weight_sum_value = index_weight_sum(rs, &ch);
    let strings = repchar::sl2_theta_decompose(rs, &ch)?;
    let string_sum_value = index_string_sum(&strings);
    let agrees = weight_sum_value == Rational::from_integer(string_sum_value.into());
    Ok(IndexReport { weight_sum_value, string_sum_value, agrees })
}
