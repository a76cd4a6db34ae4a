//! Braid orbits on tuples from a conjugacy class, the graded ring of
//! components on orbit bases, and the central stabilizer search.
//!
//! A tuple (g_1, ..., g_n) in c^n is encoded by its positions in the sorted
//! class-member list, packed big-endian so that numeric order on codes is
//! lexicographic order on tuples.

use crate::group::{is_nonsplitting, subgroups, ConjClass, Group, SubgroupList};
use crate::linalg::{rank_exact, SparseIntMatrix};
use std::collections::BTreeMap;
use std::collections::HashMap;
use thiserror::Error;

pub const DEFAULT_STATE_BUDGET: usize = 10_000_000;

#[derive(Debug, Error)]
pub enum BraidError {
    #[error("state budget exceeded: |c|={class}, n={n} needs {states} states (budget {budget})")]
    Budget {
        class: usize,
        n: usize,
        states: usize,
        budget: usize,
    },
    #[error("strand index {0} out of range for n={1}")]
    StrandIndex(usize, usize),
    #[error("(G, c) fails the non-splitting precondition")]
    NotNonSplitting,
    #[error("no stabilizing D found up to {d_max} within window {n_max}; enlarge the window")]
    NoStabilizer { d_max: usize, n_max: usize },
}

/// Apply σ_j (sign +1) or σ_j^{-1} (sign -1) to a tuple of element indices.
///
/// σ_j sends (..., g_j, g_{j+1}, ...) to (..., g_j g_{j+1} g_j^{-1}, g_j, ...).
pub fn braid_act(
    group: &Group,
    j: usize,
    sign: i8,
    tuple: &[usize],
) -> Result<Vec<usize>, BraidError> {
    let n = tuple.len();
    if j == 0 || j >= n {
        return Err(BraidError::StrandIndex(j, n));
    }
    let mut out = tuple.to_vec();
    let (a, b) = (tuple[j - 1], tuple[j]);
    if sign >= 0 {
        out[j - 1] = group.mul(group.mul(a, b), group.inv(a));
        out[j] = a;
    } else {
        // inverse: (a, b) -> (b, b^{-1} a b)
        out[j - 1] = b;
        out[j] = group.mul(group.mul(group.inv(b), a), b);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub canonical_rep: Vec<usize>,
    pub size: usize,
    /// Product g_1 ... g_n, as an element index.
    pub boundary_elt: usize,
    /// Index into the group's subgroup list.
    pub monodromy_subgroup_id: usize,
    /// Interned multiset of conjugacy classes of the entries.
    pub nielsen_id: usize,
}

/// Complete braid-orbit decomposition of c^n, with the three invariants.
///
/// Orbit ids are assigned in increasing canonical-representative order,
/// which the ascending enumeration produces directly.
#[derive(Debug, Clone)]
pub struct OrbitTable {
    pub n: usize,
    pub class_members: Vec<usize>,
    pub orbits: Vec<OrbitRecord>,
    /// packed tuple code -> orbit id
    orbit_of: Vec<u32>,
}

impl OrbitTable {
    #[inline]
    pub fn pack(&self, tuple: &[usize]) -> usize {
        let k = self.class_members.len();
        let mut code = 0usize;
        for &g in tuple {
            let pos = self.class_members.binary_search(&g).expect("entry not in class");
            code = code * k + pos;
        }
        code
    }

    pub fn unpack(&self, mut code: usize) -> Vec<usize> {
        let k = self.class_members.len();
        let mut out = vec![0usize; self.n];
        for i in (0..self.n).rev() {
            out[i] = self.class_members[code % k];
            code /= k;
        }
        out
    }

    #[inline]
    pub fn orbit_id(&self, tuple: &[usize]) -> usize {
        self.orbit_of[self.pack(tuple)] as usize
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Members of one orbit, by BFS from the canonical representative.
    pub fn orbit_members(&self, group: &Group, id: usize) -> Vec<Vec<usize>> {
        let rec = &self.orbits[id];
        if self.n < 2 {
            return vec![rec.canonical_rep.clone()];
        }
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(rec.canonical_rep.clone());
        let mut frontier = vec![rec.canonical_rep.clone()];
        while let Some(t) = frontier.pop() {
            for j in 1..self.n {
                for sign in [1i8, -1] {
                    let u = braid_act(group, j, sign, &t).unwrap();
                    if seen.insert(u.clone()) {
                        frontier.push(u);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }
}

fn checked_states(class_size: usize, n: usize, budget: usize) -> Result<usize, BraidError> {
    let mut states = 1usize;
    for _ in 0..n {
        states = states.checked_mul(class_size).unwrap_or(usize::MAX);
        if states > budget {
            return Err(BraidError::Budget {
                class: class_size,
                n,
                states,
                budget,
            });
        }
    }
    Ok(states)
}

pub fn enumerate_orbits(
    group: &Group,
    class: &ConjClass,
    n: usize,
    budget: usize,
) -> Result<OrbitTable, BraidError> {
    enumerate_orbits_with_subgroups(group, class, n, budget, &subgroups(group))
}

pub fn enumerate_orbits_with_subgroups(
    group: &Group,
    class: &ConjClass,
    n: usize,
    budget: usize,
    subs: &SubgroupList,
) -> Result<OrbitTable, BraidError> {
    let k = class.members.len();
    let states = checked_states(k, n, budget)?;
    let mut table = OrbitTable {
        n,
        class_members: class.members.clone(),
        orbits: Vec::new(),
        orbit_of: vec![u32::MAX; states],
    };
    let mut nielsen_intern: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut stack: Vec<usize> = Vec::new();
    for start in 0..states {
        if table.orbit_of[start] != u32::MAX {
            continue;
        }
        let id = table.orbits.len() as u32;
        table.orbit_of[start] = id;
        let mut size = 1usize;
        stack.push(start);
        while let Some(code) = stack.pop() {
            let tuple = table.unpack(code);
            for j in 1..n {
                for sign in [1i8, -1] {
                    let next = braid_act(group, j, sign, &tuple).unwrap();
                    let nc = table.pack(&next);
                    if table.orbit_of[nc] == u32::MAX {
                        table.orbit_of[nc] = id;
                        size += 1;
                        stack.push(nc);
                    }
                }
            }
        }
        let rep = table.unpack(start);
        let boundary = rep.iter().fold(0usize, |acc, &g| group.mul(acc, g));
        let monodromy = group.generated_subgroup(&rep);
        let monodromy_subgroup_id = subs
            .find(&monodromy)
            .expect("generated subgroup missing from subgroup list");
        let mut classes: Vec<usize> = rep
            .iter()
            .map(|&g| *crate::group::conjugacy_class(group, g).members.first().unwrap())
            .collect();
        classes.sort_unstable();
        let next_id = nielsen_intern.len();
        let nielsen_id = *nielsen_intern.entry(classes).or_insert(next_id);
        table.orbits.push(OrbitRecord {
            canonical_rep: rep,
            size,
            boundary_elt: boundary,
            monodromy_subgroup_id,
            nielsen_id,
        });
    }
    Ok(table)
}

/// Homogeneous element of the component ring on the degree-n orbit basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    pub degree: usize,
    pub coeffs: BTreeMap<usize, i64>,
}

impl RingElement {
    pub fn basis(degree: usize, orbit_id: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(orbit_id, 1);
        RingElement { degree, coeffs }
    }
}

/// Orbit tables for all degrees up to a window, shared by the ring and the
/// K-complex machinery.
pub struct RingContext<'g> {
    pub group: &'g Group,
    pub class: ConjClass,
    pub subs: SubgroupList,
    pub tables: Vec<OrbitTable>,
    pub budget: usize,
}

impl<'g> RingContext<'g> {
    pub fn new(
        group: &'g Group,
        class: ConjClass,
        n_max: usize,
        budget: usize,
    ) -> Result<Self, BraidError> {
        let subs = subgroups(group);
        let mut tables = Vec::new();
        for n in 0..=n_max {
            tables.push(enumerate_orbits_with_subgroups(
                group, &class, n, budget, &subs,
            )?);
        }
        Ok(RingContext {
            group,
            class,
            subs,
            tables,
            budget,
        })
    }

    pub fn n_max(&self) -> usize {
        self.tables.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.tables[n].orbit_count()
    }

    /// Orbit of the concatenation of the canonical representatives.
    pub fn orbit_multiply(&self, deg_a: usize, a: usize, deg_b: usize, b: usize) -> usize {
        let mut t = self.tables[deg_a].orbits[a].canonical_rep.clone();
        t.extend_from_slice(&self.tables[deg_b].orbits[b].canonical_rep);
        self.tables[deg_a + deg_b].orbit_id(&t)
    }

    /// Product of homogeneous ring elements.
    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let degree = a.degree + b.degree;
        let mut coeffs: BTreeMap<usize, i64> = BTreeMap::new();
        for (&ia, &ca) in &a.coeffs {
            for (&ib, &cb) in &b.coeffs {
                let id = self.orbit_multiply(a.degree, ia, b.degree, ib);
                *coeffs.entry(id).or_insert(0) += ca * cb;
            }
        }
        coeffs.retain(|_, v| *v != 0);
        RingElement { degree, coeffs }
    }

    /// The element U_D = sum over g in c of r_g^{D |g|}.
    pub fn stabilizer_element(&self, d: usize) -> RingElement {
        let ord = self.class.class_order as usize;
        let deg = d * ord;
        let mut coeffs: BTreeMap<usize, i64> = BTreeMap::new();
        for &g in &self.class.members {
            let diag = vec![g; deg];
            let id = self.tables[deg].orbit_id(&diag);
            *coeffs.entry(id).or_insert(0) += 1;
        }
        RingElement { degree: deg, coeffs }
    }

    /// Matrix of left multiplication by `u` from degree n to n + deg(u),
    /// on orbit bases.
    pub fn left_multiplication_matrix(&self, u: &RingElement, n: usize) -> SparseIntMatrix {
        let src = self.dim(n);
        let dst = self.dim(n + u.degree);
        let mut triplets = Vec::new();
        for s in 0..src {
            for (&iu, &cu) in &u.coeffs {
                let id = self.orbit_multiply(u.degree, iu, n, s);
                triplets.push((id, s, cu));
            }
        }
        SparseIntMatrix::from_triplets(dst, src, triplets)
    }

    /// True iff u commutes with every orbit basis element of degree
    /// <= n_max - deg(u).
    pub fn central_check(&self, u: &RingElement, n_max: usize) -> bool {
        for m in 0..=n_max.saturating_sub(u.degree) {
            for s in 0..self.dim(m) {
                let e = RingElement::basis(m, s);
                if self.multiply(u, &e) != self.multiply(&e, u) {
                    return false;
                }
            }
        }
        true
    }
}

/// Result of the stabilizer search of the component ring.
#[derive(Debug, Clone)]
pub struct StabilizerDescriptor {
    pub d: usize,
    pub deg_u: usize,
    /// Window over which surjectivity was verified: [n_0, n_max].
    pub verified_from: usize,
    pub n_max: usize,
    /// dim (R / U_D R)_n for n = 0..=n_max.
    pub quotient_dims: Vec<usize>,
}

/// Ascend D = 1, 2, ..., d_max looking for a U_D whose multiplication map
/// is eventually surjective, with a verified zero tail of at least two
/// full periods inside the window.
pub fn find_stabilizer_u(
    ctx: &RingContext,
    d_max: usize,
    n_max: usize,
) -> Result<StabilizerDescriptor, BraidError> {
    assert!(n_max <= ctx.n_max());
    let (ok, _) = is_nonsplitting(ctx.group, &ctx.class);
    if !ok {
        return Err(BraidError::NotNonSplitting);
    }
    for d in 1..=d_max {
        let u = ctx.stabilizer_element(d);
        let deg_u = u.degree;
        if 2 * deg_u > n_max {
            break;
        }
        let mut quotient_dims = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            if n < deg_u {
                quotient_dims.push(ctx.dim(n));
            } else {
                let m = ctx.left_multiplication_matrix(&u, n - deg_u);
                quotient_dims.push(ctx.dim(n) - rank_exact(&m));
            }
        }
        // least n_0 with a zero tail through n_max
        let mut n0 = n_max + 1;
        for n in (0..=n_max).rev() {
            if quotient_dims[n] == 0 {
                n0 = n;
            } else {
                break;
            }
        }
        if n0 + 2 * deg_u <= n_max {
            return Ok(StabilizerDescriptor {
                d,
                deg_u,
                verified_from: n0,
                n_max,
                quotient_dims,
            });
        }
    }
    Err(BraidError::NoStabilizer { d_max, n_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugacy_class, preset, DEFAULT_GROUP_CAP};
    use rand::{Rng, SeedableRng};

    fn s3_setup() -> (Group, ConjClass) {
        let g = preset("S3", DEFAULT_GROUP_CAP).unwrap();
        let t = (0..g.order).find(|&i| g.order_of[i] == 2).unwrap();
        let c = conjugacy_class(&g, t);
        (g, c)
    }

    #[test]
    fn braid_act_example_in_s3() {
        let (g, c) = s3_setup();
        // (1 2) and (1 3) conjugate to (2 3): sigma_1 on ((1 2), (1 3)) = ((2 3), (1 2))
        let p12 = crate::group::resolve_class_rep(&g, "(1 2)").unwrap();
        let p13 = crate::group::resolve_class_rep(&g, "(1 3)").unwrap();
        let p23 = crate::group::resolve_class_rep(&g, "(2 3)").unwrap();
        assert!(c.members.contains(&p12));
        let out = braid_act(&g, 1, 1, &[p12, p13]).unwrap();
        assert_eq!(out, vec![p23, p12]);
    }

    #[test]
    fn braid_act_fixes_diagonal() {
        let (g, c) = s3_setup();
        let a = c.members[0];
        assert_eq!(braid_act(&g, 1, 1, &[a, a]).unwrap(), vec![a, a]);
    }

    #[test]
    fn braid_act_inverse_composes_to_identity() {
        let (g, c) = s3_setup();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(2..8);
            let t: Vec<usize> = (0..n)
                .map(|_| c.members[rng.gen_range(0..c.members.len())])
                .collect();
            for j in 1..n {
                let u = braid_act(&g, j, 1, &t).unwrap();
                assert_eq!(braid_act(&g, j, -1, &u).unwrap(), t);
            }
        }
    }

    #[test]
    fn braid_relations_on_random_tuples() {
        let (g, c) = s3_setup();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(3..12);
            let t: Vec<usize> = (0..n)
                .map(|_| c.members[rng.gen_range(0..c.members.len())])
                .collect();
            for i in 1..(n - 1) {
                // sigma_i sigma_{i+1} sigma_i = sigma_{i+1} sigma_i sigma_{i+1}
                let lhs = braid_act(
                    &g,
                    i,
                    1,
                    &braid_act(&g, i + 1, 1, &braid_act(&g, i, 1, &t).unwrap()).unwrap(),
                )
                .unwrap();
                let rhs = braid_act(
                    &g,
                    i + 1,
                    1,
                    &braid_act(&g, i, 1, &braid_act(&g, i + 1, 1, &t).unwrap()).unwrap(),
                )
                .unwrap();
                assert_eq!(lhs, rhs);
            }
            for i in 1..n {
                for j in 1..n {
                    if i + 2 <= j {
                        let lhs =
                            braid_act(&g, i, 1, &braid_act(&g, j, 1, &t).unwrap()).unwrap();
                        let rhs =
                            braid_act(&g, j, 1, &braid_act(&g, i, 1, &t).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn s3_degree_2_has_5_orbits() {
        let (g, c) = s3_setup();
        let t = enumerate_orbits(&g, &c, 2, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(t.orbit_count(), 5);
        let sizes: Vec<usize> = t.orbits.iter().map(|o| o.size).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 1, 1, 3, 3]);
    }

    #[test]
    fn z2_has_single_orbit_every_degree() {
        let g = preset("Z2", DEFAULT_GROUP_CAP).unwrap();
        let c = conjugacy_class(&g, 1);
        for n in 0..8 {
            let t = enumerate_orbits(&g, &c, n, DEFAULT_STATE_BUDGET).unwrap();
            assert_eq!(t.orbit_count(), 1);
        }
    }

    #[test]
    fn degree_zero_is_single_empty_orbit() {
        let (g, c) = s3_setup();
        let t = enumerate_orbits(&g, &c, 0, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(t.orbit_count(), 1);
        assert!(t.orbits[0].canonical_rep.is_empty());
        assert_eq!(t.orbits[0].boundary_elt, 0);
    }

    #[test]
    fn orbit_sizes_sum_to_class_power() {
        let (g, c) = s3_setup();
        for n in 0..6 {
            let t = enumerate_orbits(&g, &c, n, DEFAULT_STATE_BUDGET).unwrap();
            let total: usize = t.orbits.iter().map(|o| o.size).sum();
            assert_eq!(total, c.members.len().pow(n as u32));
        }
    }

    #[test]
    fn invariants_constant_on_orbit_members() {
        let (g, c) = s3_setup();
        let t = enumerate_orbits(&g, &c, 4, DEFAULT_STATE_BUDGET).unwrap();
        for (id, rec) in t.orbits.iter().enumerate() {
            for m in t.orbit_members(&g, id) {
                let boundary = m.iter().fold(0usize, |acc, &x| g.mul(acc, x));
                assert_eq!(boundary, rec.boundary_elt);
                let mono = g.generated_subgroup(&m);
                assert_eq!(Some(rec.monodromy_subgroup_id), t_subs_find(&g, &mono));
                assert!(m >= rec.canonical_rep, "canonical rep not minimal");
            }
        }
    }

    fn t_subs_find(g: &Group, sorted: &[usize]) -> Option<usize> {
        subgroups(g).find(sorted)
    }

    #[test]
    fn orbit_multiply_unit_and_relation() {
        let (g, c) = s3_setup();
        let ctx = RingContext::new(&g, c.clone(), 4, DEFAULT_STATE_BUDGET).unwrap();
        // empty tuple is the unit
        for b in 0..ctx.dim(3) {
            assert_eq!(ctx.orbit_multiply(0, 0, 3, b), b);
        }
        // r_g r_h = r_{g h g^{-1}} r_g at orbit level
        for &gg in &c.members {
            for &hh in &c.members {
                let t1 = vec![gg, hh];
                let conj = g.mul(g.mul(gg, hh), g.inv(gg));
                let t2 = vec![conj, gg];
                assert_eq!(ctx.tables[2].orbit_id(&t1), ctx.tables[2].orbit_id(&t2));
            }
        }
    }

    #[test]
    fn orbit_multiply_independent_of_representative() {
        let (g, c) = s3_setup();
        let ctx = RingContext::new(&g, c, 5, DEFAULT_STATE_BUDGET).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let da = rng.gen_range(1..3usize);
            let db = rng.gen_range(1..3usize);
            let a = rng.gen_range(0..ctx.dim(da));
            let b = rng.gen_range(0..ctx.dim(db));
            let expected = ctx.orbit_multiply(da, a, db, b);
            // any member representative must give the same product orbit
            for ma in ctx.tables[da].orbit_members(&g, a).iter().take(3) {
                for mb in ctx.tables[db].orbit_members(&g, b).iter().take(3) {
                    let mut t = ma.clone();
                    t.extend_from_slice(mb);
                    assert_eq!(ctx.tables[da + db].orbit_id(&t), expected);
                }
            }
        }
    }

    #[test]
    fn stabilizer_for_z2_is_degree_2() {
        let g = preset("Z2", DEFAULT_GROUP_CAP).unwrap();
        let c = conjugacy_class(&g, 1);
        let ctx = RingContext::new(&g, c, 8, DEFAULT_STATE_BUDGET).unwrap();
        let desc = find_stabilizer_u(&ctx, 4, 8).unwrap();
        assert_eq!(desc.d, 1);
        assert_eq!(desc.deg_u, 2);
        // R is a polynomial ring on one degree-1 generator:
        // dim(R/UR)_n = 1 for n in {0,1}, 0 afterwards.
        assert_eq!(desc.quotient_dims[0], 1);
        assert_eq!(desc.quotient_dims[1], 1);
        assert!(desc.quotient_dims[2..].iter().all(|&d| d == 0));
        assert_eq!(desc.verified_from, 2);
    }

    #[test]
    fn stabilizer_for_s3_within_d4_window12() {
        let (g, c) = s3_setup();
        let ctx = RingContext::new(&g, c, 12, DEFAULT_STATE_BUDGET).unwrap();
        let desc = find_stabilizer_u(&ctx, 4, 12).unwrap();
        assert!(desc.d <= 4);
        assert!(desc.quotient_dims[desc.verified_from..].iter().all(|&d| d == 0));
        // orbit counts are periodic along the tail
        for n in desc.verified_from..=(12 - desc.deg_u) {
            assert_eq!(ctx.dim(n), ctx.dim(n + desc.deg_u));
        }
        // U_D is central
        let u = ctx.stabilizer_element(desc.d);
        assert!(ctx.central_check(&u, 8));
    }

    #[test]
    fn s4_transpositions_rejected_by_stabilizer_search() {
        let g = preset("S4", DEFAULT_GROUP_CAP).unwrap();
        let t = (0..g.order)
            .find(|&i| g.order_of[i] == 2 && conjugacy_class(&g, i).members.len() == 6)
            .unwrap();
        let c = conjugacy_class(&g, t);
        let ctx = RingContext::new(&g, c, 4, DEFAULT_STATE_BUDGET).unwrap();
        let err = find_stabilizer_u(&ctx, 2, 4).unwrap_err();
        assert!(matches!(err, BraidError::NotNonSplitting));
    }

    #[test]
    fn single_r_g_is_not_central_in_s3() {
        let (g, c) = s3_setup();
        let ctx = RingContext::new(&g, c.clone(), 4, DEFAULT_STATE_BUDGET).unwrap();
        let gidx = c.members[0];
        let id = ctx.tables[1].orbit_id(&[gidx]);
        let r_g = RingElement::basis(1, id);
        assert!(!ctx.central_check(&r_g, 4));
    }

    #[test]
    fn abelian_ring_elements_are_central() {
        let g = preset("Z2", DEFAULT_GROUP_CAP).unwrap();
        let c = conjugacy_class(&g, 1);
        let ctx = RingContext::new(&g, c, 6, DEFAULT_STATE_BUDGET).unwrap();
        let r = RingElement::basis(1, 0);
        assert!(ctx.central_check(&r, 6));
    }

    #[test]
    fn generating_orbits_contain_prescribed_first_letter() {
        // Prop-style check: for large enough n, every generating orbit has a
        // member starting with any prescribed g in c.
        let (g, c) = s3_setup();
        let full_subgroup: Vec<usize> = (0..g.order).collect();
        let subs = subgroups(&g);
        let full_id = subs.find(&full_subgroup).unwrap();
        for n in 4..=7 {
            let t = enumerate_orbits(&g, &c, n, DEFAULT_STATE_BUDGET).unwrap();
            for (id, rec) in t.orbits.iter().enumerate() {
                if rec.monodromy_subgroup_id != full_id {
                    continue;
                }
                for &want in &c.members {
                    let found = t
                        .orbit_members(&g, id)
                        .iter()
                        .any(|m| m[0] == want);
                    assert!(found, "n={n} orbit {id} missing prefix {want}");
                }
            }
        }
    }

    #[test]
    fn budget_violation_reported() {
        let (g, c) = s3_setup();
        let err = enumerate_orbits(&g, &c, 10, 100).unwrap_err();
        assert!(matches!(err, BraidError::Budget { .. }));
    }
}
