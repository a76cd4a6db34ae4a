//! Betti numbers b_0, b_1 of the braid-orbit covering space in the strand
//! count window, via the standard two-stage free resolution attached to the
//! Artin presentation of the braid group, with coefficients in the
//! permutation module on c^n (optionally its diagonal-conjugation
//! quotient), plus the stabilization chain map given by prefix
//! concatenation with the central stabilizer element.
//!
//! Matrix conventions: a braid word w acts on basis tuples as a
//! permutation; blocks are stored transposed (perm matrices are
//! orthogonal, so this only relabels by the inverse word) so that ordinary
//! matrix composition realizes the boundary identities.  Validated by the
//! exact assertion d1 ∘ d2 = 0 in the constructor.

use crate::braid::{braid_act, StabilizerDescriptor};
use crate::group::{ConjClass, Group};
use crate::linalg::{
    kernel_matrix_exact, rank, rank_exact, CertMode, LinalgError, SparseIntMatrix,
};
use thiserror::Error;

/// Module dimensions up to this size get fully exact (rational) ranks;
/// larger bases fall back to the two-tier certified path.
pub const EXACT_BASIS_LIMIT: usize = 1000;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("tuple space size |c|^{n} = {size} exceeds budget {budget}")]
    Budget { n: usize, size: usize, budget: usize },
    #[error("need at least 2 strands, got {0}")]
    StrandCount(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("chain-map property failed at stage {0} — convention mismatch")]
    ChainMapFailure(usize),
}

/// Basis of the coefficient module: all tuples in c^n, or their orbits
/// under simultaneous conjugation.
pub struct TupleSpace<'g> {
    pub group: &'g Group,
    pub class: ConjClass,
    pub n: usize,
    pub quotient: bool,
    pub dim: usize,
    /// packed tuple code -> basis index.
    class_of: Vec<u32>,
    /// basis index -> representative packed code.
    reps: Vec<usize>,
    /// gen_perm[i][s]: action of σ_{i+1} (s = 0) or its inverse (s = 1) on
    /// basis indices.
    gen_perm: Vec<[Vec<usize>; 2]>,
}

impl<'g> TupleSpace<'g> {
    fn pack(&self, tuple: &[usize]) -> usize {
        let k = self.class.members.len();
        let mut code = 0usize;
        for &g in tuple {
            code = code * k + self.class.members.binary_search(&g).unwrap();
        }
        code
    }

    fn unpack(&self, mut code: usize) -> Vec<usize> {
        let k = self.class.members.len();
        let mut out = vec![0usize; self.n];
        for i in (0..self.n).rev() {
            out[i] = self.class.members[code % k];
            code /= k;
        }
        out
    }

    pub fn new(
        group: &'g Group,
        class: ConjClass,
        n: usize,
        quotient: bool,
        budget: usize,
    ) -> Result<Self, HomologyError> {
        if n < 2 {
            return Err(HomologyError::StrandCount(n));
        }
        let k = class.members.len();
        let size = k
            .checked_pow(n as u32)
            .filter(|&s| s <= budget)
            .ok_or(HomologyError::Budget {
                n,
                size: usize::MAX,
                budget,
            })?;
        let mut space = TupleSpace {
            group,
            class,
            n,
            quotient,
            dim: 0,
            class_of: vec![u32::MAX; size],
            reps: Vec::new(),
            gen_perm: Vec::new(),
        };
        if quotient {
            // flood-fill orbits of entrywise conjugation by group generators
            for start in 0..size {
                if space.class_of[start] != u32::MAX {
                    continue;
                }
                let id = space.reps.len() as u32;
                space.reps.push(start);
                space.class_of[start] = id;
                let mut stack = vec![start];
                while let Some(code) = stack.pop() {
                    let t = space.unpack(code);
                    for &h in &group.generator_indices {
                        let conj: Vec<usize> = t.iter().map(|&g| group.conj(g, h)).collect();
                        let c2 = space.pack(&conj);
                        if space.class_of[c2] == u32::MAX {
                            space.class_of[c2] = id;
                            stack.push(c2);
                        }
                    }
                }
            }
        } else {
            space.reps = (0..size).collect();
            for (i, v) in space.class_of.iter_mut().enumerate() {
                *v = i as u32;
            }
        }
        space.dim = space.reps.len();
        for i in 1..n {
            let mut pair = [Vec::with_capacity(space.dim), Vec::with_capacity(space.dim)];
            for (s, sign) in [(0usize, 1i8), (1, -1)] {
                for b in 0..space.dim {
                    let t = space.unpack(space.reps[b]);
                    let acted = braid_act(group, i, sign, &t).expect("strand index in range");
                    pair[s].push(space.class_of[space.pack(&acted)] as usize);
                }
            }
            space.gen_perm.push(pair);
        }
        Ok(space)
    }

    /// Permutation of basis indices effected by a braid word (letters
    /// ±j for σ_j^{±1}), composed as a left action.
    pub fn word_perm(&self, word: &[i32]) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.dim).collect();
        for &letter in word {
            let (i, s) = if letter > 0 {
                (letter as usize - 1, 0)
            } else {
                ((-letter) as usize - 1, 1)
            };
            let gp = &self.gen_perm[i][s];
            // appending a letter: new(b) = old(letter(b))
            p = (0..self.dim).map(|b| p[gp[b]]).collect();
        }
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelatorKind {
    /// σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}, tagged by i (1-based).
    Braid(usize),
    /// σ_i σ_j = σ_j σ_i for j ≥ i + 2 (1-based).
    Commutation(usize, usize),
}

/// The defining relators of the braid group on n strands, in a fixed
/// enumeration order: (n−2) braid relators, then (n−2)(n−3)/2
/// commutation relators.
pub fn relator_words(n: usize) -> Vec<(RelatorKind, Vec<i32>)> {
    let mut out = Vec::new();
    let g = n as i32 - 1; // generator count
    for i in 1..g {
        out.push((
            RelatorKind::Braid(i as usize),
            vec![i, i + 1, i, -(i + 1), -i, -(i + 1)],
        ));
    }
    for i in 1..=g {
        for j in (i + 2)..=g {
            out.push((
                RelatorKind::Commutation(i as usize, j as usize),
                vec![i, j, -i, -j],
            ));
        }
    }
    out
}

/// Fox derivative of a word with respect to generator index `gen`
/// (1-based), as signed prefix words: ∂(uv) = ∂u + u·∂v,
/// ∂(σ^{-1}) = −σ^{-1}·∂σ.
pub fn fox_derivative(word: &[i32], gen: usize) -> Vec<(Vec<i32>, i64)> {
    let mut terms = Vec::new();
    let mut prefix: Vec<i32> = Vec::new();
    for &letter in word {
        if letter == gen as i32 {
            terms.push((prefix.clone(), 1i64));
        }
        prefix.push(letter);
        if letter == -(gen as i32) {
            terms.push((prefix.clone(), -1i64));
        }
    }
    terms
}

pub struct PresentationComplex<'g> {
    pub space: TupleSpace<'g>,
    pub relators: Vec<(RelatorKind, Vec<i32>)>,
    /// C_1 = M^{n-1} -> C_0 = M.
    pub d1: SparseIntMatrix,
    /// C_2 = M^{#relators} -> C_1.
    pub d2: SparseIntMatrix,
}

/// Build the two-stage complex for (G, c, n); asserts d1 ∘ d2 = 0 exactly.
pub fn fox_complex<'g>(
    group: &'g Group,
    class: &ConjClass,
    n: usize,
    quotient: bool,
    budget: usize,
) -> Result<PresentationComplex<'g>, HomologyError> {
    let space = TupleSpace::new(group, class.clone(), n, quotient, budget)?;
    let dim = space.dim;
    let gens = n - 1;
    let relators = relator_words(n);

    let mut t1 = Vec::with_capacity(2 * gens * dim);
    for i in 0..gens {
        let p = &space.gen_perm[i][0];
        for b in 0..dim {
            t1.push((b, i * dim + p[b], 1i64));
            t1.push((b, i * dim + b, -1));
        }
    }
    let d1 = SparseIntMatrix::from_triplets(dim, gens * dim, t1);

    let mut t2 = Vec::new();
    for (r_idx, (_, word)) in relators.iter().enumerate() {
        for gen in 1..=gens {
            for (prefix, sign) in fox_derivative(word, gen) {
                let p = space.word_perm(&prefix);
                for b in 0..dim {
                    t2.push(((gen - 1) * dim + b, r_idx * dim + p[b], sign));
                }
            }
        }
    }
    let d2 = SparseIntMatrix::from_triplets(gens * dim, relators.len() * dim, t2);

    if !d1.mul(&d2)?.is_zero() {
        return Err(HomologyError::Linalg(LinalgError::NotAComplex(1, 2)));
    }
    Ok(PresentationComplex {
        space,
        relators,
        d1,
        d2,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct BettiResult {
    pub b0: usize,
    pub b1: usize,
    pub mode: CertMode,
}

fn tiered_rank(m: &SparseIntMatrix, dim: usize) -> Result<(usize, CertMode), LinalgError> {
    if dim <= EXACT_BASIS_LIMIT {
        Ok((rank_exact(m), CertMode::Exact))
    } else {
        let r = rank(m)?;
        Ok((r.rank, r.mode))
    }
}

/// b_0 and b_1 of the complex.
pub fn betti(cplx: &PresentationComplex) -> Result<BettiResult, LinalgError> {
    let dim = cplx.space.dim;
    let (r1, m1) = tiered_rank(&cplx.d1, dim)?;
    let (r2, m2) = tiered_rank(&cplx.d2, dim)?;
    Ok(BettiResult {
        b0: dim - r1,
        b1: cplx.d1.cols - r1 - r2,
        mode: m1.combine(m2),
    })
}

/// The stabilization chain map at a given strand count: prefix
/// concatenation with each diagonal tuple of the stabilizer element,
/// intertwining σ_i ↦ σ_{i + deg U}.
pub struct UChainMap {
    pub deg_u: usize,
    pub e0: SparseIntMatrix,
    pub e1: SparseIntMatrix,
    pub e2: SparseIntMatrix,
}

pub fn u_chain_map(
    src: &PresentationComplex,
    dst: &PresentationComplex,
) -> Result<UChainMap, HomologyError> {
    let n = src.space.n;
    let deg_u = dst.space.n - n;
    assert!(deg_u > 0);
    assert_eq!(src.space.quotient, dst.space.quotient);
    let sd = src.space.dim;
    let dd = dst.space.dim;

    // E_0: t -> sum over g in c of (g, ..., g, t)
    let mut t0 = Vec::new();
    for b in 0..sd {
        let t = src.space.unpack(src.space.reps[b]);
        for &g in &src.space.class.members {
            let mut ext = vec![g; deg_u];
            ext.extend_from_slice(&t);
            t0.push((dst.space.class_of[dst.space.pack(&ext)] as usize, b, 1i64));
        }
    }
    let e0 = SparseIntMatrix::from_triplets(dd, sd, t0);

    // E_1: generator copy i -> copy i + deg_u, with E_0 on each block.
    let mut t1 = Vec::new();
    for i in 0..n - 1 {
        for &(r, c, v) in &e0.entries {
            t1.push(((i + deg_u) * dd + r, i * sd + c, v));
        }
    }
    let e1 = SparseIntMatrix::from_triplets((dst.space.n - 1) * dd, (n - 1) * sd, t1);

    // E_2: relator -> index-shifted relator in the larger presentation.
    let dst_index: std::collections::HashMap<RelatorKind, usize> = dst
        .relators
        .iter()
        .enumerate()
        .map(|(i, (k, _))| (*k, i))
        .collect();
    let mut t2 = Vec::new();
    for (j, (kind, _)) in src.relators.iter().enumerate() {
        let shifted = match *kind {
            RelatorKind::Braid(i) => RelatorKind::Braid(i + deg_u),
            RelatorKind::Commutation(i, jj) => RelatorKind::Commutation(i + deg_u, jj + deg_u),
        };
        let j2 = dst_index[&shifted];
        for &(r, c, v) in &e0.entries {
            t2.push((j2 * dd + r, j * sd + c, v));
        }
    }
    let e2 = SparseIntMatrix::from_triplets(dst.relators.len() * dd, src.relators.len() * sd, t2);

    // exact chain-map assertions before any homology is taken
    if dst.d1.mul(&e1)? != e0.mul(&src.d1)? {
        return Err(HomologyError::ChainMapFailure(1));
    }
    if dst.d2.mul(&e2)? != e1.mul(&src.d2)? {
        return Err(HomologyError::ChainMapFailure(2));
    }
    Ok(UChainMap {
        deg_u,
        e0,
        e1,
        e2,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct UMapResult {
    pub p: usize,
    pub n: usize,
    pub deg_u: usize,
    pub rank: usize,
    pub b_src: usize,
    pub b_dst: usize,
    pub bijective: bool,
    pub mode: CertMode,
}

/// Rank and bijectivity of the map induced on H_p (p ≤ 1) by the
/// stabilization chain map.  The kernel at the source is computed exactly;
/// ranks at the target follow the tier of the target basis size.
pub fn stabilization_u_map(
    src: &PresentationComplex,
    dst: &PresentationComplex,
    p: usize,
) -> Result<UMapResult, HomologyError> {
    assert!(p <= 1);
    let cm = u_chain_map(src, dst)?;
    let bs = betti(src)?;
    let bd = betti(dst)?;
    let (f_on_cycles, boundaries) = if p == 0 {
        (cm.e0.clone(), &dst.d1)
    } else {
        let k = kernel_matrix_exact(&src.d1);
        (cm.e1.mul(&k)?, &dst.d2)
    };
    let dim = dst.space.dim;
    let (rb, m1) = tiered_rank(boundaries, dim)?;
    let stacked = f_on_cycles.hstack(boundaries)?;
    let (rall, m2) = tiered_rank(&stacked, dim)?;
    let induced = rall - rb;
    let (b_src, b_dst) = if p == 0 {
        (bs.b0, bd.b0)
    } else {
        (bs.b1, bd.b1)
    };
    assert!(induced <= b_src.min(b_dst));
    Ok(UMapResult {
        p,
        n: src.space.n,
        deg_u: cm.deg_u,
        rank: induced,
        b_src,
        b_dst,
        bijective: induced == b_src && b_src == b_dst,
        mode: bs.mode.combine(bd.mode).combine(m1).combine(m2),
    })
}

#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub p: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub deg_u: usize,
    /// b_p(n) for n in [n_min, n_max].
    pub betti: Vec<usize>,
    /// induced ranks for n in [n_min, n_max - deg_u].
    pub u_map_ranks: Vec<usize>,
    pub u_map_bijective: Vec<bool>,
    /// least n in the window from which every computed U-map is bijective.
    pub observed_n0: Option<usize>,
    pub g_invariant_betti: Vec<usize>,
    pub mode: CertMode,
}

/// Betti numbers, quotient Betti numbers, and U-map data over a window.
pub fn stability_report(
    group: &Group,
    class: &ConjClass,
    p: usize,
    n_min: usize,
    n_max: usize,
    u: &StabilizerDescriptor,
    budget: usize,
) -> Result<StabilityReport, HomologyError> {
    assert!(p <= 1 && n_min >= 2 && n_min <= n_max);
    let mut complexes = Vec::new();
    let mut quotients = Vec::new();
    for n in n_min..=n_max {
        complexes.push(fox_complex(group, class, n, false, budget)?);
        quotients.push(fox_complex(group, class, n, true, budget)?);
    }
    let mut mode = CertMode::Exact;
    let mut betti_vals = Vec::new();
    let mut g_inv = Vec::new();
    for (c, q) in complexes.iter().zip(&quotients) {
        let b = betti(c)?;
        let bq = betti(q)?;
        mode = mode.combine(b.mode).combine(bq.mode);
        betti_vals.push(if p == 0 { b.b0 } else { b.b1 });
        g_inv.push(if p == 0 { bq.b0 } else { bq.b1 });
    }
    let mut ranks = Vec::new();
    let mut bij = Vec::new();
    for n in n_min..=n_max.saturating_sub(u.deg_u) {
        let src = &complexes[n - n_min];
        let dst = &complexes[n + u.deg_u - n_min];
        let r = stabilization_u_map(src, dst, p)?;
        mode = mode.combine(r.mode);
        ranks.push(r.rank);
        bij.push(r.bijective);
    }
    let observed_n0 = bij
        .iter()
        .rposition(|&b| !b)
        .map(|i| {
            let cand = n_min + i + 1;
            if cand + u.deg_u > n_max {
                None
            } else {
                Some(cand)
            }
        })
        .unwrap_or(if bij.is_empty() { None } else { Some(n_min) });
    Ok(StabilityReport {
        p,
        n_min,
        n_max,
        deg_u: u.deg_u,
        betti: betti_vals,
        u_map_ranks: ranks,
        u_map_bijective: bij,
        observed_n0,
        g_invariant_betti: g_inv,
        mode,
    })
}

/// Weak growth sanity: b_p is dominated by the cell count (2|G|)^n.
pub fn betti_bound_ok(group: &Group, n: usize, b: usize) -> bool {
    let base = 2u128 * group.order as u128;
    let mut cap = 1u128;
    for _ in 0..n {
        cap = cap.saturating_mul(base);
    }
    (b as u128) <= cap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{enumerate_orbits, find_stabilizer_u, RingContext, DEFAULT_STATE_BUDGET};
    use crate::group::{conjugacy_class, preset, DEFAULT_GROUP_CAP};

    fn s3() -> (Group, ConjClass) {
        let g = preset("S3", DEFAULT_GROUP_CAP).unwrap();
        let t = (0..g.order).find(|&i| g.order_of[i] == 2).unwrap();
        let c = conjugacy_class(&g, t);
        (g, c)
    }

    #[test]
    fn relator_count_formula() {
        for n in 2usize..=9 {
            let expect = (n - 2) + (n - 2) * (n.saturating_sub(3)) / 2;
            assert_eq!(relator_words(n).len(), expect, "n={n}");
        }
    }

    #[test]
    fn relators_act_trivially() {
        let (g, c) = s3();
        for n in 3..=5 {
            let space = TupleSpace::new(&g, c.clone(), n, false, DEFAULT_STATE_BUDGET).unwrap();
            let id: Vec<usize> = (0..space.dim).collect();
            for (_, w) in relator_words(n) {
                assert_eq!(space.word_perm(&w), id);
            }
        }
    }

    #[test]
    fn fox_fundamental_identity() {
        // sum_i (D_i w)(σ_i − 1) telescopes to w − 1 for any word
        let (g, c) = s3();
        let space = TupleSpace::new(&g, c, 4, false, DEFAULT_STATE_BUDGET).unwrap();
        let words: Vec<Vec<i32>> = vec![vec![1, 2, -1, 3], vec![-2, -2, 1], vec![3, -3, 2, 1, -2]];
        for w in words {
            let dim = space.dim;
            // accumulate sum_i ρ(D_i w)^T (ρ(σ_i)^T − 1) as an integer matrix
            let mut acc = SparseIntMatrix::zero(dim, dim);
            for gen in 1..space.n {
                let mut tt = Vec::new();
                let sp = &space.gen_perm[gen - 1][0];
                for (prefix, sign) in fox_derivative(&w, gen) {
                    let p = space.word_perm(&prefix);
                    for b in 0..dim {
                        // (ρ(σ)^T − 1) then ρ(prefix)^T, transposed order
                        tt.push((b, p[sp[b]], sign));
                        tt.push((b, p[b], -sign));
                    }
                }
                let m = SparseIntMatrix::from_triplets(dim, dim, tt);
                let mut merged = acc.entries.clone();
                merged.extend(m.entries.iter().copied());
                acc = SparseIntMatrix::from_triplets(dim, dim, merged);
            }
            let wp = space.word_perm(&w);
            let mut expected = Vec::new();
            for b in 0..dim {
                expected.push((b, wp[b], 1i64));
                expected.push((b, b, -1));
            }
            assert_eq!(acc, SparseIntMatrix::from_triplets(dim, dim, expected));
        }
    }

    #[test]
    fn two_strands_have_no_relators() {
        let (g, c) = s3();
        let cplx = fox_complex(&g, &c, 2, false, DEFAULT_STATE_BUDGET).unwrap();
        assert!(cplx.relators.is_empty());
        assert_eq!(cplx.d2.cols, 0);
        assert_eq!(cplx.d1.cols, cplx.space.dim);
    }

    #[test]
    fn dd_zero_s3_small_window() {
        let (g, c) = s3();
        for n in 3..=5 {
            fox_complex(&g, &c, n, false, DEFAULT_STATE_BUDGET).unwrap();
            fox_complex(&g, &c, n, true, DEFAULT_STATE_BUDGET).unwrap();
        }
    }

    #[test]
    fn b0_matches_orbit_count_dual_path() {
        let (g, c) = s3();
        for n in 2..=5 {
            let cplx = fox_complex(&g, &c, n, false, DEFAULT_STATE_BUDGET).unwrap();
            let b = betti(&cplx).unwrap();
            let orbits = enumerate_orbits(&g, &c, n, DEFAULT_STATE_BUDGET).unwrap();
            assert_eq!(b.b0, orbits.orbit_count(), "n={n}");
            assert!(betti_bound_ok(&g, n, b.b0));
            assert!(betti_bound_ok(&g, n, b.b1));
        }
    }

    #[test]
    fn s3_two_strands_five_circles() {
        let (g, c) = s3();
        let cplx = fox_complex(&g, &c, 2, false, DEFAULT_STATE_BUDGET).unwrap();
        let b = betti(&cplx).unwrap();
        assert_eq!((b.b0, b.b1), (5, 5));
        assert_eq!(b.mode, CertMode::Exact);
    }

    #[test]
    fn z2_single_component() {
        let g = preset("Z2", DEFAULT_GROUP_CAP).unwrap();
        let c = conjugacy_class(&g, 1);
        for n in 2..=6 {
            let cplx = fox_complex(&g, &c, n, false, DEFAULT_STATE_BUDGET).unwrap();
            assert_eq!(betti(&cplx).unwrap().b0, 1);
        }
    }

    #[test]
    fn z2_u_map_identity_on_h0() {
        let g = preset("Z2", DEFAULT_GROUP_CAP).unwrap();
        let c = conjugacy_class(&g, 1);
        for n in 2..=5 {
            let src = fox_complex(&g, &c, n, false, DEFAULT_STATE_BUDGET).unwrap();
            let dst = fox_complex(&g, &c, n + 2, false, DEFAULT_STATE_BUDGET).unwrap();
            let r = stabilization_u_map(&src, &dst, 0).unwrap();
            assert_eq!((r.rank, r.b_src, r.b_dst), (1, 1, 1));
            assert!(r.bijective);
        }
    }

    #[test]
    fn s3_u_map_h0_bijective() {
        let (g, c) = s3();
        let ctx = RingContext::new(&g, c.clone(), 10, DEFAULT_STATE_BUDGET).unwrap();
        let u = find_stabilizer_u(&ctx, 4, 10).unwrap();
        for n in 3..=4 {
            let src = fox_complex(&g, &c, n, false, DEFAULT_STATE_BUDGET).unwrap();
            let dst = fox_complex(&g, &c, n + u.deg_u, false, DEFAULT_STATE_BUDGET).unwrap();
            let r = stabilization_u_map(&src, &dst, 0).unwrap();
            assert!(r.bijective, "p=0 U-map not bijective at n={n}: {r:?}");
        }
    }

    #[test]
    fn s3_u_map_h1_small() {
        let (g, c) = s3();
        let ctx = RingContext::new(&g, c.clone(), 10, DEFAULT_STATE_BUDGET).unwrap();
        let u = find_stabilizer_u(&ctx, 4, 10).unwrap();
        let src = fox_complex(&g, &c, 3, false, DEFAULT_STATE_BUDGET).unwrap();
        let dst = fox_complex(&g, &c, 3 + u.deg_u, false, DEFAULT_STATE_BUDGET).unwrap();
        let r = stabilization_u_map(&src, &dst, 1).unwrap();
        assert!(r.rank <= r.b_src.min(r.b_dst));
    }

    #[test]
    fn quotient_betti_bounded_by_plain() {
        let (g, c) = s3();
        for n in 2..=4 {
            let plain = betti(&fox_complex(&g, &c, n, false, DEFAULT_STATE_BUDGET).unwrap()).unwrap();
            let quot = betti(&fox_complex(&g, &c, n, true, DEFAULT_STATE_BUDGET).unwrap()).unwrap();
            assert!(quot.b0 <= plain.b0);
            assert!(quot.b1 <= plain.b1);
        }
    }
}
