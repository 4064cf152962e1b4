//! Lattice model of the affine Grassmannian of `SL_N`.
//!
//! A lattice `t^n L₀ ⊂ L ⊂ t^{-n} L₀` is recorded by its image in the window
//! `V_n = t^{-n} L₀ / t^n L₀`, a `2nN`-dimensional space with ordered basis
//! `t^j e_i` (`-n ≤ j ≤ n-1`, degree-major, index-minor). Multiplication by `t`
//! descends to a nilpotent operator `t̄` shifting a basis index by `N`. Points are
//! the `t̄`-stable subspaces of dimension `nN`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::field::{Field, Fp};
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;
use crate::{Error, Rational, Result};

/// The window `V_n` for `N × N` loops at depth `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncWindow {
    #[serde(rename = "N")]
    pub size: usize,
    #[serde(rename = "n")]
    pub depth: usize,
    pub field: String,
}

impl TruncWindow {
    pub fn new<F: Field>(size: usize, depth: usize) -> Self {
        TruncWindow { size, depth, field: F::tag() }
    }

    pub fn dimension(&self) -> usize {
        2 * self.size * self.depth
    }

    /// Index of `t^degree e_i` (0-based `i`), or `None` outside the window.
    pub fn index(&self, degree: i64, i: usize) -> Option<usize> {
        let n = self.depth as i64;
        (i < self.size && (-n..n).contains(&degree)).then(|| (degree + n) as usize * self.size + i)
    }

    /// Inverse of [`Self::index`]: `(degree, i)`.
    pub fn label(&self, index: usize) -> (i64, usize) {
        ((index / self.size) as i64 - self.depth as i64, index % self.size)
    }

    fn deeper(&self) -> Self {
        TruncWindow { size: self.size, depth: self.depth + 1, field: self.field.clone() }
    }
}

/// A subspace of a window, held in reduced row echelon form (each row a spanning
/// vector; pivot is the first nonzero coordinate; rows sorted by pivot).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSubspace<F: Field = Rational> {
    window: TruncWindow,
    rows: Vec<Vec<F>>,
}

fn rref<F: Field>(mut rows: Vec<Vec<F>>, width: usize) -> Vec<Vec<F>> {
    let mut rank = 0;
    for col in 0..width {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for x in rows[rank].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let c = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - c.clone() * p.clone();
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

fn pivot_of<F: Field>(row: &[F]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero")
}

impl<F: Field> LatticeSubspace<F> {
    /// Span of the given vectors, each of length `window.dimension()`.
    pub fn from_vectors(window: TruncWindow, vectors: Vec<Vec<F>>) -> Result<Self> {
        let dim = window.dimension();
        if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: bad.len() });
        }
        Ok(LatticeSubspace { rows: rref(vectors, dim), window })
    }

    /// Column span of a `2nN × k` matrix.
    pub fn from_basis_matrix(window: TruncWindow, basis: &Matrix<F>) -> Result<Self> {
        if basis.rows() != window.dimension() {
            return Err(Error::DimensionMismatch { expected: window.dimension(), got: basis.rows() });
        }
        Self::from_vectors(window, (0..basis.cols()).map(|j| basis.column(j)).collect())
    }

    pub fn window(&self) -> &TruncWindow {
        &self.window
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Echelon rows.
    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| pivot_of(r)).collect()
    }

    /// Canonical basis as the columns of a `2nN × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix<F> {
        let dim = self.window.dimension();
        if self.rows.is_empty() {
            return Matrix::zero(dim, 0);
        }
        Matrix::from_rows(self.rows.clone()).expect("rows share a length").transpose()
    }

    /// Whether `v` lies in the subspace.
    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        for row in &self.rows {
            let c = w[pivot_of(row)].clone();
            if !c.is_zero() {
                for (x, r) in w.iter_mut().zip(row) {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
        }
        w.iter().all(F::is_zero)
    }

    /// Image of a vector under `t̄`.
    pub fn shift(&self, v: &[F]) -> Vec<F> {
        let n = self.window.size;
        let mut out = vec![F::zero(); v.len()];
        for k in 0..v.len().saturating_sub(n) {
            out[k + n] = v[k].clone();
        }
        out
    }

    pub fn is_shift_stable(&self) -> bool {
        self.rows.iter().all(|r| self.contains(&self.shift(r)))
    }
}

/// JSON view of a subspace: echelon rows as exact scalar strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePointJson {
    pub window: TruncWindow,
    pub dimension: usize,
    /// `(degree, i)` labels of the pivot coordinates, `i` 1-based.
    pub pivots: Vec<(i64, usize)>,
    pub rows: Vec<Vec<String>>,
    pub is_lattice_point: bool,
}

impl<F: Field> From<&LatticeSubspace<F>> for LatticePointJson {
    fn from(w: &LatticeSubspace<F>) -> Self {
        LatticePointJson {
            window: w.window.clone(),
            dimension: w.dimension(),
            pivots: w
                .pivots()
                .into_iter()
                .map(|p| {
                    let (deg, i) = w.window.label(p);
                    (deg, i + 1)
                })
                .collect(),
            rows: w.rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            is_lattice_point: is_lattice_point(w),
        }
    }
}

impl LatticePointJson {
    /// Rebuilds the subspace over `ℚ`.
    pub fn into_subspace(self) -> Result<LatticeSubspace<Rational>> {
        let vectors = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| Rational::parse_scalar(s).ok_or_else(|| Error::InvalidInput(format!("bad scalar {s:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let window = TruncWindow::new::<Rational>(self.window.size, self.window.depth);
        LatticeSubspace::from_vectors(window, vectors)
    }
}

/// `dim W = nN` and `t̄ W ⊆ W`.
pub fn is_lattice_point<F: Field>(w: &LatticeSubspace<F>) -> bool {
    w.dimension() == w.window.size * w.window.depth && w.is_shift_stable()
}

/// The base point `L₀ / t^n L₀`.
pub fn base_point<F: Field>(size: usize, depth: usize) -> LatticeSubspace<F> {
    cocharacter_point(&vec![0; size], depth).expect("zero cocharacter fits every window")
}

/// `diag(t^{n_1}, …, t^{n_N}) L₀`, spanned by `t^j e_i` for `n_i ≤ j ≤ n-1`.
pub fn cocharacter_point<F: Field>(mu: &[i64], depth: usize) -> Result<LatticeSubspace<F>> {
    if mu.iter().sum::<i64>() != 0 {
        return Err(Error::InvalidInput(format!("cocharacter {mu:?} does not sum to zero")));
    }
    let min_n = mu.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0);
    if min_n > depth {
        return Err(Error::OutOfWindow { n: depth, min_n });
    }
    let window = TruncWindow::new::<F>(mu.len(), depth);
    let dim = window.dimension();
    let mut vectors = Vec::new();
    for (i, &ni) in mu.iter().enumerate() {
        for j in ni..depth as i64 {
            let mut v = vec![F::zero(); dim];
            v[window.index(j, i).expect("inside window")] = F::one();
            vectors.push(v);
        }
    }
    LatticeSubspace::from_vectors(window, vectors)
}

/// `θ_n`: the same lattice seen in the window of depth `n + 1`, i.e. `W ↦ t^n V ⊕ W`.
pub fn embed_next<F: Field>(w: &LatticeSubspace<F>) -> Result<LatticeSubspace<F>> {
    if !is_lattice_point(w) {
        return Err(Error::InvalidInput("embed_next expects a lattice point".into()));
    }
    let old = &w.window;
    let new = old.deeper();
    let dim = new.dimension();
    let mut vectors: Vec<Vec<F>> = w
        .rows
        .iter()
        .map(|row| {
            let mut v = vec![F::zero(); dim];
            for (k, c) in row.iter().enumerate() {
                let (deg, i) = old.label(k);
                v[new.index(deg, i).expect("old window sits inside the new one")] = c.clone();
            }
            v
        })
        .collect();
    for i in 0..new.size {
        let mut v = vec![F::zero(); dim];
        v[new.index(old.depth as i64, i).expect("top degree")] = F::one();
        vectors.push(v);
    }
    LatticeSubspace::from_vectors(new, vectors)
}

/// An `N × N` matrix of Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopMatrix<F: Field = Rational> {
    entries: Vec<Vec<LaurentPoly<F>>>,
}

impl<F: Field> LoopMatrix<F> {
    pub fn new(entries: Vec<Vec<LaurentPoly<F>>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty loop matrix".into()));
        }
        if let Some(row) = entries.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        Ok(LoopMatrix { entries })
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(vec![LaurentPoly::one(); n])
    }

    pub fn diagonal(diag: Vec<LaurentPoly<F>>) -> Self {
        let n = diag.len();
        let mut entries = vec![vec![LaurentPoly::zero(); n]; n];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i][i] = d;
        }
        LoopMatrix { entries }
    }

    /// `diag(t^{n_1}, …, t^{n_N})`.
    pub fn cocharacter(mu: &[i64]) -> Self {
        Self::diagonal(mu.iter().map(|&k| LaurentPoly::monomial(F::one(), k)).collect())
    }

    /// `I + c t^k E_ij` for `i ≠ j`.
    pub fn elementary(n: usize, i: usize, j: usize, c: F, k: i64) -> Self {
        let mut m = Self::identity(n);
        m.entries[i][j] = LaurentPoly::monomial(c, k);
        m
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly<F> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<LaurentPoly<F>>] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size();
        assert_eq!(n, other.size());
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(LaurentPoly::zero(), |acc, k| &acc + &(&self.entries[i][k] * &other.entries[k][j]))
                    })
                    .collect()
            })
            .collect();
        LoopMatrix { entries }
    }

    fn minor(&self, row: usize, col: usize) -> Self {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != row)
            .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect())
            .collect();
        LoopMatrix { entries }
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> LaurentPoly<F> {
        match self.size() {
            1 => self.entries[0][0].clone(),
            _ => (0..self.size()).fold(LaurentPoly::zero(), |acc, j| {
                if self.entries[0][j].is_zero() {
                    return acc;
                }
                let term = &self.entries[0][j] * &self.minor(0, j).det();
                if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                }
            }),
        }
    }

    /// `adj(g)`, so that `g · adj(g) = det(g) I`.
    pub fn adjugate(&self) -> Self {
        let n = self.size();
        if n == 1 {
            return Self::identity(1);
        }
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = self.minor(j, i).det();
                        if (i + j) % 2 == 0 {
                            c
                        } else {
                            -&c
                        }
                    })
                    .collect()
            })
            .collect();
        LoopMatrix { entries }
    }

    /// Least exponent over all entries (`None` for the zero matrix).
    pub fn min_exponent(&self) -> Option<i64> {
        self.entries.iter().flatten().filter_map(LaurentPoly::min_exponent).min()
    }
}

impl LoopMatrix<Rational> {
    /// Parses a square array of Laurent-polynomial strings such as `"t^-1+2"`.
    pub fn parse(rows: &[Vec<String>]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| LaurentPoly::parse(s).ok_or_else(|| Error::InvalidInput(format!("bad Laurent polynomial {s:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }
}

/// Splits a nonzero `p` as `t^k u` with `u(0) ≠ 0`.
fn valuation_split<F: Field>(p: &LaurentPoly<F>) -> Option<(i64, LaurentPoly<F>)> {
    let k = p.min_exponent()?;
    Some((k, p.shift(-k)))
}

/// Right-multiplies `g` by `α = diag(1, …, 1, t^{-k} u^{-1})` where `det g = t^k u`.
///
/// `u^{-1}` is the power-series inverse truncated below `t^precision`, so
/// `det(gα) = u · u^{-1}` equals 1 through degree `precision - 1`, and exactly 1
/// whenever `u` is a constant. Windows of depth `n` only see `precision ≥ 2n` terms.
pub fn normalize_determinant<F: Field>(g: &LoopMatrix<F>, precision: usize) -> Result<LoopMatrix<F>> {
    let det = g.det();
    let (k, u) = valuation_split(&det).ok_or_else(|| Error::NotLoopElement("determinant vanishes".into()))?;
    let u_inv = u
        .inverse_series(precision.max(1))
        .ok_or_else(|| Error::NotLoopElement(format!("determinant {det} has no unit part")))?;
    let n = g.size();
    let mut alpha = vec![LaurentPoly::one(); n];
    alpha[n - 1] = u_inv.shift(-k);
    Ok(g.mul(&LoopMatrix::diagonal(alpha)))
}

/// A truncation order for [`normalize_determinant`] that leaves the lattice seen in the
/// depth-`n` window unchanged: the dropped tail of `u^{-1}` lands in `t^n L₀`.
pub fn sufficient_precision<F: Field>(g: &LoopMatrix<F>, depth: usize) -> usize {
    let k = g.det().min_exponent().unwrap_or(0).max(0);
    let low = (-g.min_exponent().unwrap_or(0)).max(0);
    depth + (k + low) as usize + 1
}

/// The least window depth containing `g L₀`: both `g` and `g^{-1}` must have all
/// exponents `≥ -n`. Requires `det g` to have valuation zero.
pub fn minimal_depth<F: Field>(g: &LoopMatrix<F>) -> Result<usize> {
    let det = g.det();
    match valuation_split(&det) {
        Some((0, _)) => {}
        _ => return Err(Error::NotLoopElement(format!("determinant {det} is not a unit power series"))),
    }
    // g^{-1} = adj(g) / det with det a unit, so valuations of g^{-1} are those of adj(g)
    let low = g.min_exponent().unwrap_or(0).min(g.adjugate().min_exponent().unwrap_or(0));
    Ok((-low).max(0) as usize)
}

/// `g L₀ / t^n L₀` as a canonical subspace of the depth-`n` window.
pub fn lattice_from_group<F: Field>(g: &LoopMatrix<F>, depth: usize) -> Result<LatticeSubspace<F>> {
    let min_n = minimal_depth(g)?;
    if min_n > depth {
        return Err(Error::OutOfWindow { n: depth, min_n });
    }
    let size = g.size();
    let window = TruncWindow::new::<F>(size, depth);
    let dim = window.dimension();
    let top = depth as i64;
    let mut vectors = Vec::new();
    for col in 0..size {
        let low = (0..size).filter_map(|r| g.entry(r, col).min_exponent()).min().unwrap_or(top);
        for j in 0..(top - low).max(0) {
            let mut v = vec![F::zero(); dim];
            for r in 0..size {
                for (e, c) in g.entry(r, col).terms() {
                    if let Some(idx) = window.index(e + j, r) {
                        v[idx] = c.clone();
                    }
                }
            }
            vectors.push(v);
        }
    }
    let w = LatticeSubspace::from_vectors(window, vectors)?;
    debug_assert!(is_lattice_point(&w));
    Ok(w)
}

/// A random element of `SL_N(ℚ[t])`: a product of elementary matrices `I + c t^k E_ij`
/// with `0 ≤ k ≤ max_degree` and small nonzero integer `c`.
pub fn random_polynomial_sl<R: Rng>(rng: &mut R, size: usize, steps: usize, max_degree: i64) -> LoopMatrix<Rational> {
    let mut p = LoopMatrix::identity(size);
    if size < 2 {
        return p;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..size);
        let j = (i + rng.gen_range(1..size)) % size;
        let mut c = rng.gen_range(-3i64..=2);
        if c >= 0 {
            c += 1;
        }
        let k = rng.gen_range(0..=max_degree);
        p = p.mul(&LoopMatrix::elementary(size, i, j, Rational::from_i64(c), k));
    }
    p
}

fn shift_closed_patterns(size: usize, depth: usize) -> Vec<Vec<usize>> {
    // a shift-closed pivot set is a top segment of each chain i, i+N, i+2N, …
    let chain = 2 * depth;
    let mut out = Vec::new();
    let mut lens = vec![0usize; size];
    fn rec(i: usize, remaining: usize, chain: usize, lens: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == lens.len() {
            if remaining == 0 {
                out.push(lens.clone());
            }
            return;
        }
        for s in 0..=chain.min(remaining) {
            lens[i] = s;
            rec(i + 1, remaining - s, chain, lens, out);
        }
    }
    rec(0, size * depth, chain, &mut lens, &mut out);
    out.into_iter()
        .map(|lens| {
            let mut pivots: Vec<usize> = lens
                .iter()
                .enumerate()
                .flat_map(|(i, &s)| (chain - s..chain).map(move |d| d * size + i))
                .collect();
            pivots.sort_unstable();
            pivots
        })
        .collect()
}

struct Scan<'a, const P: u32> {
    size: usize,
    dim: usize,
    pivots: &'a [usize],
    is_pivot: Vec<bool>,
    visited: &'a AtomicU64,
    budget: u64,
    aborted: &'a AtomicBool,
}

impl<const P: u32> Scan<'_, P> {
    /// Fills rows from the largest pivot down; `rows[r]` belongs to `pivots[r]`.
    fn count(&self, r: usize, rows: &mut Vec<Vec<Fp<P>>>) -> u64 {
        if self.aborted.load(Ordering::Relaxed) {
            return 0;
        }
        let Some(r) = r.checked_sub(1) else {
            return 1;
        };
        let p = self.pivots[r];
        let free: Vec<usize> = (p + 1..self.dim).filter(|&c| !self.is_pivot[c]).collect();
        let mut row = vec![Fp::<P>::new(0); self.dim];
        row[p] = Fp::new(1);
        let mut total = 0;
        let combos = (P as u64).pow(free.len() as u32);
        for code in 0..combos {
            if self.visited.fetch_add(1, Ordering::Relaxed) >= self.budget {
                self.aborted.store(true, Ordering::Relaxed);
                return 0;
            }
            let mut c = code;
            for &f in &free {
                row[f] = Fp::new((c % P as u64) as i64);
                c /= P as u64;
            }
            if self.stable(&row, r, rows) {
                rows[r] = row.clone();
                total += self.count(r, rows);
            }
        }
        total
    }

    /// `t̄ row` lies in the span of the rows with larger pivots (already fixed).
    fn stable(&self, row: &[Fp<P>], r: usize, rows: &[Vec<Fp<P>>]) -> bool {
        let mut w = vec![Fp::<P>::new(0); self.dim];
        for k in 0..self.dim.saturating_sub(self.size) {
            w[k + self.size] = row[k];
        }
        for (q, other) in rows.iter().enumerate().skip(r + 1) {
            let c = w[self.pivots[q]];
            if c.value() != 0 {
                for (x, o) in w.iter_mut().zip(other) {
                    *x = *x - c * *o;
                }
            }
        }
        w.iter().all(|x| x.value() == 0)
    }
}

fn count_points_fp<const P: u32>(size: usize, depth: usize, budget: u64) -> Result<u64> {
    let dim = 2 * size * depth;
    let visited = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let total: u64 = shift_closed_patterns(size, depth)
        .par_iter()
        .map(|pivots| {
            let mut is_pivot = vec![false; dim];
            for &p in pivots {
                is_pivot[p] = true;
            }
            let scan = Scan::<P> { size, dim, pivots, is_pivot, visited: &visited, budget, aborted: &aborted };
            let mut rows = vec![Vec::new(); pivots.len()];
            scan.count(pivots.len(), &mut rows)
        })
        .sum();
    if aborted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded { budget });
    }
    Ok(total)
}

/// Primes accepted by [`count_points`].
pub const SCAN_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Number of `t̄`-stable `nN`-dimensional subspaces of `V_n` over `F_q`.
///
/// Echelon forms are enumerated pattern by pattern: pivots of a stable subspace
/// are closed under `+N`, and rows are filled from the last pivot backwards so
/// each row's stability can be tested as soon as it is chosen. `budget` caps the
/// number of candidate rows examined; exceeding it is an error, never a partial count.
pub fn count_points(size: usize, depth: usize, q: u64, budget: u64) -> Result<u64> {
    if size == 0 {
        return Err(Error::InvalidInput("N must be positive".into()));
    }
    match q {
        2 => count_points_fp::<2>(size, depth, budget),
        3 => count_points_fp::<3>(size, depth, budget),
        5 => count_points_fp::<5>(size, depth, budget),
        7 => count_points_fp::<7>(size, depth, budget),
        11 => count_points_fp::<11>(size, depth, budget),
        13 => count_points_fp::<13>(size, depth, budget),
        _ => Err(Error::Unsupported(format!("q = {q}; supported primes are {SCAN_PRIMES:?}"))),
    }
}

/// Every lattice point of the window over `F_P`, by the same scan as [`count_points`].
pub fn enumerate_points<const P: u32>(size: usize, depth: usize) -> Vec<LatticeSubspace<Fp<P>>> {
    fn rec<const P: u32>(scan: &Scan<'_, P>, r: usize, rows: &mut Vec<Vec<Fp<P>>>, out: &mut Vec<Vec<Vec<Fp<P>>>>) {
        let Some(r) = r.checked_sub(1) else {
            out.push(rows.clone());
            return;
        };
        let p = scan.pivots[r];
        let free: Vec<usize> = (p + 1..scan.dim).filter(|&c| !scan.is_pivot[c]).collect();
        let mut row = vec![Fp::<P>::new(0); scan.dim];
        row[p] = Fp::new(1);
        for code in 0..(P as u64).pow(free.len() as u32) {
            let mut c = code;
            for &f in &free {
                row[f] = Fp::new((c % P as u64) as i64);
                c /= P as u64;
            }
            if scan.stable(&row, r, rows) {
                rows[r] = row.clone();
                rec(scan, r, rows, out);
            }
        }
    }
    let dim = 2 * size * depth;
    let window = TruncWindow::new::<Fp<P>>(size, depth);
    let visited = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let mut out = Vec::new();
    for pivots in shift_closed_patterns(size, depth) {
        let mut is_pivot = vec![false; dim];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let scan = Scan::<P> { size, dim, pivots: &pivots, is_pivot, visited: &visited, budget: u64::MAX, aborted: &aborted };
        let mut rows = vec![Vec::new(); pivots.len()];
        rec(&scan, pivots.len(), &mut rows, &mut out);
    }
    out.into_iter().map(|rows| LatticeSubspace { window: window.clone(), rows }).collect()
}
