//! Exact sparse linear algebra over the integers and rationals.
//!
//! Ranks are computed either fully exactly (sparse elimination over Q) or,
//! for large matrices, modulo two independent primes > 2^20 with agreement
//! required; the latter mode is reported as modular-certified.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// Matrices with at most this many nonzeros get the fully exact tier.
pub const EXACT_NNZ_THRESHOLD: usize = 20_000;

/// Two primes above 2^20; both exceed the group-order cap, so they never
/// divide |G|.
pub const CERT_PRIMES: [u64; 2] = [1_048_583, 1_048_589];

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("modular rank runs disagree ({0} vs {1}); exactness failure")]
    ModularDisagreement(usize, usize),
    #[error("differentials {0} and {1} do not compose to zero")]
    NotAComplex(usize, usize),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// How a numeric result was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertMode {
    Exact,
    ModularCertified,
}

impl CertMode {
    pub fn combine(self, other: CertMode) -> CertMode {
        if self == CertMode::Exact && other == CertMode::Exact {
            CertMode::Exact
        } else {
            CertMode::ModularCertified
        }
    }
    pub fn label(self) -> &'static str {
        match self {
            CertMode::Exact => "exact",
            CertMode::ModularCertified => "modular-certified",
        }
    }
}

/// Sparse integer matrix in triplet form; no duplicates, no stored zeros.
///
/// Shape is rows x cols; the matrix acts on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, 1)).collect(),
        }
    }

    /// Merge duplicate coordinates, drop zeros.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut map: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet out of bounds");
            *map.entry((r, c)).or_insert(0) += v;
        }
        SparseIntMatrix {
            rows,
            cols,
            entries: map
                .into_iter()
                .filter(|&(_, v)| v != 0)
                .map(|((r, c), v)| (r, c, v))
                .collect(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        SparseIntMatrix::from_triplets(
            self.cols,
            self.rows,
            self.entries.iter().map(|&(r, c, v)| (c, r, v)),
        )
    }

    /// Exact sparse product self * other.
    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // Rows of self indexed by column for the middle dimension.
        let mut by_mid: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.cols];
        for &(r, c, v) in &self.entries {
            by_mid[c].push((r, v));
        }
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &(m, c, v) in &other.entries {
            for &(r, w) in &by_mid[m] {
                *acc.entry((r, c)).or_insert(0) += w.checked_mul(v).expect("matmul overflow");
            }
        }
        Ok(SparseIntMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: acc
                .into_iter()
                .filter(|&(_, v)| v != 0)
                .map(|((r, c), v)| (r, c, v))
                .collect(),
        })
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::Shape("hstack row mismatch".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|&(r, c, v)| (r, c + self.cols, v)));
        Ok(SparseIntMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            entries,
        })
    }

    /// Plain-text triplet dump: header `rows cols nnz`, then `row col value`.
    pub fn dump_triplets(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        for &(r, c, v) in &self.entries {
            out.push_str(&format!("{r} {c} {v}\n"));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Field abstraction for the elimination engine.
// ---------------------------------------------------------------------------

pub trait Field {
    type E: Clone + PartialEq;
    fn from_i64(&self, v: i64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

pub struct PrimeField {
    pub p: u64,
}

impl Field for PrimeField {
    type E = u64;
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat; p is prime.
        let mut base = *a;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

/// Sparse row representation used inside elimination.
type Row<E> = BTreeMap<usize, E>;

fn to_rows<F: Field>(f: &F, m: &SparseIntMatrix) -> Vec<Row<F::E>> {
    let mut rows: Vec<Row<F::E>> = vec![BTreeMap::new(); m.rows];
    for &(r, c, v) in &m.entries {
        let e = f.from_i64(v);
        if !f.is_zero(&e) {
            rows[r].insert(c, e);
        }
    }
    rows.retain(|r| !r.is_empty());
    rows
}

/// row_dst += coeff * row_src
fn axpy<F: Field>(f: &F, dst: &mut Row<F::E>, coeff: &F::E, src: &Row<F::E>) {
    for (c, v) in src {
        let add = f.mul(coeff, v);
        match dst.get(c) {
            Some(old) => {
                let s = f.add(old, &add);
                if f.is_zero(&s) {
                    dst.remove(c);
                } else {
                    dst.insert(*c, s);
                }
            }
            None => {
                if !f.is_zero(&add) {
                    dst.insert(*c, add);
                }
            }
        }
    }
}

/// Rank by sparse elimination.  Pivot choice is a Markowitz-style
/// fill-in heuristic: shortest remaining row, then its column of lowest
/// global count.
pub fn rank_over<F: Field>(f: &F, m: &SparseIntMatrix) -> usize {
    let mut rows = to_rows(f, m);
    let mut col_count = vec![0usize; m.cols];
    for r in &rows {
        for c in r.keys() {
            col_count[*c] += 1;
        }
    }
    let mut rank = 0;
    while !rows.is_empty() {
        // shortest row
        let (pi, _) = rows
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| r.len())
            .unwrap();
        let pivot_row = rows.swap_remove(pi);
        let (&pc, pv) = pivot_row
            .iter()
            .min_by_key(|(c, _)| col_count[**c])
            .unwrap();
        let pv_inv = f.inv(pv);
        rank += 1;
        for c in pivot_row.keys() {
            col_count[*c] -= 1;
        }
        let mut i = 0;
        while i < rows.len() {
            let coeff = match rows[i].get(&pc) {
                Some(v) => f.neg(&f.mul(v, &pv_inv)),
                None => {
                    i += 1;
                    continue;
                }
            };
            for c in rows[i].keys() {
                col_count[*c] -= 1;
            }
            let row = &mut rows[i];
            axpy(f, row, &coeff, &pivot_row);
            debug_assert!(!row.contains_key(&pc));
            if rows[i].is_empty() {
                rows.swap_remove(i);
            } else {
                for c in rows[i].keys() {
                    col_count[*c] += 1;
                }
                i += 1;
            }
        }
    }
    rank
}

/// Kernel basis over a field: columns spanning ker(m), via reduced row
/// echelon form.  Entries are returned in the field.
pub fn kernel_basis_over<F: Field>(f: &F, m: &SparseIntMatrix) -> Vec<Row<F::E>> {
    let mut rows = to_rows(f, m);
    // (pivot col, normalized row) in elimination order
    let mut pivots: Vec<(usize, Row<F::E>)> = Vec::new();
    while !rows.is_empty() {
        let (pi, _) = rows
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| r.len())
            .unwrap();
        let mut pivot_row = rows.swap_remove(pi);
        let (&pc, pv) = pivot_row.iter().next().unwrap();
        let pv_inv = f.inv(pv);
        let keys: Vec<usize> = pivot_row.keys().copied().collect();
        for k in keys {
            let v = f.mul(&pivot_row[&k], &pv_inv);
            pivot_row.insert(k, v);
        }
        let mut i = 0;
        while i < rows.len() {
            if let Some(v) = rows[i].get(&pc) {
                let coeff = f.neg(&v.clone());
                let row = &mut rows[i];
                axpy(f, row, &coeff, &pivot_row);
                if rows[i].is_empty() {
                    rows.swap_remove(i);
                    continue;
                }
            }
            i += 1;
        }
        // back-reduce earlier pivot rows
        for (_, prow) in pivots.iter_mut() {
            if let Some(v) = prow.get(&pc) {
                let coeff = f.neg(&v.clone());
                axpy(f, prow, &coeff, &pivot_row);
            }
        }
        pivots.push((pc, pivot_row));
    }
    let pivot_cols: std::collections::BTreeSet<usize> = pivots.iter().map(|&(c, _)| c).collect();
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut vec: Row<F::E> = BTreeMap::new();
        vec.insert(free, f.from_i64(1));
        for (pc, prow) in &pivots {
            if let Some(v) = prow.get(&free) {
                // x_pc = -coefficient of free column
                vec.insert(*pc, f.neg(v));
            }
        }
        basis.push(vec);
    }
    basis
}

/// Exact rank over Q.
pub fn rank_exact(m: &SparseIntMatrix) -> usize {
    rank_over(&Rationals, m)
}

/// Rank modulo a prime.
pub fn rank_mod(m: &SparseIntMatrix, p: u64) -> usize {
    rank_over(&PrimeField { p }, m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub mode: CertMode,
}

/// Two-tier rank: small matrices fully exact, larger ones modulo two
/// independent primes with agreement required.
pub fn rank(m: &SparseIntMatrix) -> Result<RankResult, LinalgError> {
    if m.nnz() <= EXACT_NNZ_THRESHOLD {
        Ok(RankResult {
            rank: rank_exact(m),
            mode: CertMode::Exact,
        })
    } else {
        let r0 = rank_mod(m, CERT_PRIMES[0]);
        let r1 = rank_mod(m, CERT_PRIMES[1]);
        if r0 != r1 {
            return Err(LinalgError::ModularDisagreement(r0, r1));
        }
        Ok(RankResult {
            rank: r0,
            mode: CertMode::ModularCertified,
        })
    }
}

/// Exact kernel basis over Q, as sparse columns of rationals.
pub fn kernel_basis_exact(m: &SparseIntMatrix) -> Vec<BTreeMap<usize, BigRational>> {
    kernel_basis_over(&Rationals, m)
}

/// Kernel basis over Q cleared to integer columns, packed as a sparse
/// matrix (cols = kernel dimension).
pub fn kernel_matrix_exact(m: &SparseIntMatrix) -> SparseIntMatrix {
    let basis = kernel_basis_exact(m);
    let mut triplets = Vec::new();
    for (j, col) in basis.iter().enumerate() {
        // clear denominators
        let mut lcm = BigInt::one();
        for v in col.values() {
            let d = v.denom().abs();
            lcm = &lcm / num::integer::gcd(lcm.clone(), d.clone()) * d;
        }
        for (i, v) in col {
            let scaled = v * BigRational::from_integer(lcm.clone());
            assert!(scaled.is_integer());
            let int: BigInt = scaled.to_integer();
            let small: i64 = int.try_into().expect("kernel entry exceeds i64");
            triplets.push((*i, j, small));
        }
    }
    SparseIntMatrix::from_triplets(m.cols, basis.len(), triplets)
}

/// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.
///
/// Dense integer elimination with minimal-absolute-value pivoting; meant
/// for small matrices only.
pub fn smith_diagonal(m: &SparseIntMatrix) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); m.cols]; m.rows];
    for &(r, c, v) in &m.entries {
        a[r][c] = BigInt::from(v);
    }
    let mut factors: Vec<BigInt> = Vec::new();
    let mut top = 0usize;
    let (rows, cols) = (m.rows, m.cols);
    'outer: while top < rows && top < cols {
        // find minimal-absolute-value nonzero pivot in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in top..cols {
                if !a[i][j].is_zero()
                    && best
                        .map(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                        .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break 'outer };
        a.swap(top, pi);
        for row in a.iter_mut() {
            row.swap(top, pj);
        }
        loop {
            let mut clean = true;
            for i in (top + 1)..rows {
                if !a[i][top].is_zero() {
                    let q = div_nearest(&a[i][top], &a[top][top]);
                    for j in top..cols {
                        let sub = &q * &a[top][j];
                        a[i][j] = &a[i][j] - sub;
                    }
                    if !a[i][top].is_zero() {
                        a.swap(top, i);
                        clean = false;
                    }
                }
            }
            for j in (top + 1)..cols {
                if !a[top][j].is_zero() {
                    let q = div_nearest(&a[top][j], &a[top][top]);
                    for row in a.iter_mut().take(rows).skip(top) {
                        let sub = &q * &row[top];
                        row[j] = &row[j] - sub;
                    }
                    if !a[top][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(top, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        // force divisibility into the remaining block
        let pivot = a[top][top].clone();
        let mut divisible = true;
        'scan: for i in (top + 1)..rows {
            for j in (top + 1)..cols {
                if !(&a[i][j] % &pivot).is_zero() {
                    // fold row i into row top and redo this pivot position
                    for jj in top..cols {
                        let add = a[i][jj].clone();
                        a[top][jj] = &a[top][jj] + add;
                    }
                    divisible = false;
                    break 'scan;
                }
            }
        }
        if !divisible {
            continue 'outer;
        }
        factors.push(pivot.abs());
        top += 1;
    }
    factors
}

fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient minimizing |a - q b|
    let q = a / b;
    let r = a - &q * b;
    if &r.abs() * BigInt::from(2) > b.abs() {
        if (r.sign() == b.sign()) || r.is_zero() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// A finite chain complex with exact-integer differentials.
///
/// `differentials[q]` is d_{q+1}: C_{q+1} -> C_q.
#[derive(Debug, Clone)]
pub struct GradedChainComplex {
    pub terms: Vec<usize>,
    pub differentials: Vec<SparseIntMatrix>,
    pub grade_label: i64,
}

impl GradedChainComplex {
    pub fn new(
        terms: Vec<usize>,
        differentials: Vec<SparseIntMatrix>,
        grade_label: i64,
    ) -> Result<Self, LinalgError> {
        assert_eq!(differentials.len() + 1, terms.len().max(1));
        for (q, d) in differentials.iter().enumerate() {
            if d.rows != terms[q] || d.cols != terms[q + 1] {
                return Err(LinalgError::Shape(format!(
                    "d_{} has shape {}x{}, expected {}x{}",
                    q + 1,
                    d.rows,
                    d.cols,
                    terms[q],
                    terms[q + 1]
                )));
            }
        }
        let cplx = GradedChainComplex {
            terms,
            differentials,
            grade_label,
        };
        cplx.check_dd_zero()?;
        Ok(cplx)
    }

    /// d∘d = 0, checked exactly.
    pub fn check_dd_zero(&self) -> Result<(), LinalgError> {
        for q in 0..self.differentials.len().saturating_sub(1) {
            let prod = self.differentials[q].mul(&self.differentials[q + 1])?;
            if !prod.is_zero() {
                return Err(LinalgError::NotAComplex(q + 1, q + 2));
            }
        }
        Ok(())
    }

    /// dim H_q = dim C_q - rank d_q - rank d_{q+1} for each q.
    pub fn homology_dims(&self) -> Result<(Vec<usize>, CertMode), LinalgError> {
        let mut mode = CertMode::Exact;
        let ranks: Vec<usize> = self
            .differentials
            .iter()
            .map(|d| {
                let r = rank(d)?;
                mode = mode.combine(r.mode);
                Ok(r.rank)
            })
            .collect::<Result<_, LinalgError>>()?;
        let mut dims = Vec::new();
        for q in 0..self.terms.len() {
            let r_in = if q == 0 { 0 } else { ranks[q - 1] };
            let r_out = if q < ranks.len() { ranks[q] } else { 0 };
            dims.push(self.terms[q] - r_in - r_out);
        }
        Ok((dims, mode))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, t: &[(usize, usize, i64)]) -> SparseIntMatrix {
        SparseIntMatrix::from_triplets(rows, cols, t.iter().copied())
    }

    #[test]
    fn cert_primes_are_prime() {
        for p in CERT_PRIMES {
            assert!(p > (1 << 20));
            let mut d = 2;
            while d * d <= p {
                assert_ne!(p % d, 0, "{p} is not prime");
                d += 1;
            }
        }
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(rank(&SparseIntMatrix::identity(3)).unwrap().rank, 3);
        assert_eq!(rank(&SparseIntMatrix::zero(4, 7)).unwrap().rank, 0);
    }

    #[test]
    fn rank_proportional_rows() {
        let a = m(2, 3, &[(0, 0, 1), (0, 1, 2), (0, 2, 3), (1, 0, 2), (1, 1, 4), (1, 2, 6)]);
        assert_eq!(rank(&a).unwrap().rank, 1);
    }

    #[test]
    fn exact_and_modular_ranks_agree_on_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let rows = rng.gen_range(1..12);
            let cols = rng.gen_range(1..12);
            let mut t = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_bool(0.4) {
                        t.push((r, c, rng.gen_range(-5i64..=5)));
                    }
                }
            }
            let a = m(rows, cols, &t);
            let re = rank_exact(&a);
            for p in CERT_PRIMES {
                assert_eq!(re, rank_mod(&a, p));
            }
        }
    }

    #[test]
    fn rank_plus_kernel_dim_is_cols() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..15 {
            let rows = rng.gen_range(1..10);
            let cols = rng.gen_range(1..10);
            let mut t = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_bool(0.5) {
                        t.push((r, c, rng.gen_range(-4i64..=4)));
                    }
                }
            }
            let a = m(rows, cols, &t);
            let k = kernel_matrix_exact(&a);
            assert_eq!(rank_exact(&a) + k.cols, cols);
            // columns really are in the kernel
            let prod = a.mul(&k).unwrap();
            assert!(prod.is_zero());
            // and independent
            assert_eq!(rank_exact(&k), k.cols);
        }
    }

    #[test]
    fn smith_small_cases() {
        let d = m(2, 2, &[(0, 0, 2), (1, 1, 3)]);
        let f = smith_diagonal(&d);
        assert_eq!(f, vec![BigInt::from(1), BigInt::from(6)]);

        let f = smith_diagonal(&SparseIntMatrix::identity(4));
        assert_eq!(f, vec![BigInt::one(); 4]);

        assert!(smith_diagonal(&SparseIntMatrix::zero(3, 3)).is_empty());
    }

    #[test]
    fn smith_divisibility_chain_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let n = rng.gen_range(1..6);
            let mut t = Vec::new();
            for r in 0..n {
                for c in 0..n {
                    t.push((r, c, rng.gen_range(-6i64..=6)));
                }
            }
            let a = m(n, n, &t);
            let f = smith_diagonal(&a);
            for w in f.windows(2) {
                assert!((&w[1] % &w[0]).is_zero(), "chain {f:?}");
            }
        }
    }

    #[test]
    fn homology_of_circle() {
        // 1 vertex, 1 edge, zero differential
        let cplx = GradedChainComplex::new(
            vec![1, 1],
            vec![SparseIntMatrix::zero(1, 1)],
            0,
        )
        .unwrap();
        let (dims, mode) = cplx.homology_dims().unwrap();
        assert_eq!(dims, vec![1, 1]);
        assert_eq!(mode, CertMode::Exact);
    }

    #[test]
    fn homology_single_term() {
        let cplx = GradedChainComplex::new(vec![5], vec![], 0).unwrap();
        assert_eq!(cplx.homology_dims().unwrap().0, vec![5]);
    }

    #[test]
    fn dd_nonzero_rejected() {
        let d2 = SparseIntMatrix::identity(1);
        let d1 = SparseIntMatrix::identity(1);
        let err = GradedChainComplex::new(vec![1, 1, 1], vec![d1, d2], 0);
        assert!(matches!(err, Err(LinalgError::NotAComplex(_, _))));
    }

    #[test]
    fn euler_characteristic_consistency() {
        // chain complex of a 2-sphere as a CW complex: C_0=1, C_2=1, trivial d
        let cplx = GradedChainComplex::new(
            vec![1, 0, 1],
            vec![SparseIntMatrix::zero(1, 0), SparseIntMatrix::zero(0, 1)],
            0,
        )
        .unwrap();
        let (dims, _) = cplx.homology_dims().unwrap();
        let chi_c: i64 = cplx
            .terms
            .iter()
            .enumerate()
            .map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        let chi_h: i64 = dims
            .iter()
            .enumerate()
            .map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        assert_eq!(chi_c, chi_h);
        assert_eq!(dims, vec![1, 0, 1]);
    }
}
