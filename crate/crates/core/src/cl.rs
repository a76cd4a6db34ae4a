//! Finite abelian ℓ-groups: the limiting cokernel measure, surjection /
//! homomorphism / automorphism counting, the random-matrix cokernel
//! sampler, truncated moment identities, and the brute-force symplectic
//! orbit check.

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClError {
    #[error("ell mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("sampler saturated the truncation modulus {0}^{1} after {2} escalations")]
    Saturated(u64, u32, u32),
    #[error("brute-force budget exceeded: {0}")]
    Budget(String),
}

/// Isomorphism type of a finite abelian ℓ-group: ⊕_i Z/ℓ^{e_i} with a
/// non-increasing positive exponent list (empty = trivial group).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionType {
    pub l: u64,
    pub partition: Vec<u32>,
}

impl PartitionType {
    pub fn new(l: u64, mut partition: Vec<u32>) -> Self {
        partition.retain(|&e| e > 0);
        partition.sort_unstable_by(|a, b| b.cmp(a));
        PartitionType { l, partition }
    }

    pub fn trivial(l: u64) -> Self {
        PartitionType { l, partition: Vec::new() }
    }

    pub fn weight(&self) -> u32 {
        self.partition.iter().sum()
    }

    pub fn order(&self) -> u128 {
        (self.l as u128).pow(self.weight())
    }

    pub fn rank(&self) -> usize {
        self.partition.len()
    }

    /// Compact display such as "3^[2,1]" (trivial: "3^[]").
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.partition.iter().map(|e| e.to_string()).collect();
        format!("{}^[{}]", self.l, parts.join(","))
    }
}

/// All partitions of m, each non-increasing.
pub fn partitions(m: u32) -> Vec<Vec<u32>> {
    fn rec(m: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if m == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(m)).rev() {
            cur.push(part);
            rec(m - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// |Aut(A)| by the closed-form partition formula: with exponents listed
/// non-decreasingly as e_1 ≤ … ≤ e_n, d_k = max{j : e_j = e_k} and
/// c_k = min{j : e_j = e_k},
///   |Aut| = ∏_k (ℓ^{d_k} − ℓ^{k−1}) · ∏_j ℓ^{e_j (n − d_j)}
///             · ∏_i ℓ^{(e_i − 1)(n − c_i + 1)}.
pub fn aut_order(a: &PartitionType) -> BigInt {
    let l = BigInt::from(a.l);
    let mut e: Vec<u32> = a.partition.clone();
    e.sort_unstable();
    let n = e.len();
    let mut result = BigInt::from(1);
    for k in 0..n {
        let d_k = (0..n).filter(|&j| e[j] == e[k]).max().unwrap() + 1;
        result *= l.pow(d_k as u32) - l.pow(k as u32);
    }
    for j in 0..n {
        let d_j = (0..n).filter(|&i| e[i] == e[j]).max().unwrap() + 1;
        result *= l.pow(e[j] * (n - d_j) as u32);
    }
    for i in 0..n {
        let c_i = (0..n).position(|j| e[j] == e[i]).unwrap() + 1;
        result *= l.pow((e[i] - 1) * (n - c_i + 1) as u32);
    }
    result
}

/// |Hom(B, A)| = ℓ^{Σ_{i,j} min(b_i, a_j)}.
pub fn hom_count(b: &PartitionType, a: &PartitionType) -> u128 {
    assert_eq!(b.l, a.l);
    let mut exp = 0u32;
    for &bi in &b.partition {
        for &aj in &a.partition {
            exp += bi.min(aj);
        }
    }
    (a.l as u128).pow(exp)
}

/// Explicit elements of A = ⊕ Z/ℓ^{a_i} as coordinate vectors.
struct ExplicitGroup {
    l: u64,
    moduli: Vec<u64>, // ℓ^{a_i}
}

impl ExplicitGroup {
    fn new(a: &PartitionType) -> Self {
        ExplicitGroup {
            l: a.l,
            moduli: a.partition.iter().map(|&e| (a.l).pow(e)).collect(),
        }
    }

    fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.moduli)
            .map(|((&xi, &yi), &m)| (xi + yi) % m)
            .collect()
    }

    /// Closure of a generator list under addition.
    fn span(&self, gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
        let zero = vec![0u64; self.moduli.len()];
        let mut set: BTreeSet<Vec<u64>> = BTreeSet::new();
        set.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Partition type of a subgroup given as an element set, recovered
    /// from the order statistics n_j = ℓ^{Σ_i min(e_i, j)}.
    fn subgroup_type(&self, elements: &BTreeSet<Vec<u64>>) -> PartitionType {
        let e_max = self
            .moduli
            .iter()
            .map(|&m| {
                let mut e = 0u32;
                let mut v = 1u64;
                while v < m {
                    v *= self.l;
                    e += 1;
                }
                e
            })
            .max()
            .unwrap_or(0);
        let mut m_prev = 0u32;
        let mut counts_ge = Vec::new(); // number of parts ≥ j
        for j in 1..=e_max {
            let lj: Vec<u64> = self.moduli.iter().map(|&m| m.min((self.l).pow(j))).collect();
            let nj = elements
                .iter()
                .filter(|x| {
                    x.iter()
                        .zip(&self.moduli)
                        .zip(&lj)
                        .all(|((&xi, &m), &d)| (xi * d) % m == 0)
                })
                .count() as u128;
            let mut mj = 0u32;
            let mut v = 1u128;
            while v < nj {
                v *= self.l as u128;
                mj += 1;
            }
            assert_eq!(v, nj, "subgroup order statistic not a power of ell");
            counts_ge.push(mj - m_prev);
            m_prev = mj;
        }
        // counts_ge[j-1] = #parts with e_i ≥ j; the partition is its
        // conjugate
        let mut partition = Vec::new();
        if let Some(&r) = counts_ge.first() {
            for i in 0..r {
                let e = counts_ge.iter().take_while(|&&c| c > i).count() as u32;
                partition.push(e);
            }
        }
        PartitionType::new(self.l, partition)
    }
}

/// All subspaces of F_ℓ^r, each as the sorted set of its packed vectors.
fn subspaces(l: u64, r: usize) -> Vec<Vec<Vec<u64>>> {
    let total = (l as usize).pow(r as u32);
    let unpack = |mut code: usize| -> Vec<u64> {
        let mut v = vec![0u64; r];
        for i in (0..r).rev() {
            v[i] = (code % l as usize) as u64;
            code /= l as usize;
        }
        v
    };
    let add = |x: &[u64], y: &[u64]| -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| (a + b) % l).collect()
    };
    // breadth-first closure over the subspace lattice
    let zero_space: BTreeSet<Vec<u64>> = [vec![0u64; r]].into_iter().collect();
    let mut seen: HashSet<Vec<Vec<u64>>> = HashSet::new();
    let key = |s: &BTreeSet<Vec<u64>>| -> Vec<Vec<u64>> { s.iter().cloned().collect() };
    seen.insert(key(&zero_space));
    let mut frontier = vec![zero_space];
    let mut out: Vec<Vec<Vec<u64>>> = seen.iter().cloned().collect();
    while let Some(space) = frontier.pop() {
        for code in 1..total {
            let v = unpack(code);
            if space.contains(&v) {
                continue;
            }
            // span of space + v
            let mut bigger = space.clone();
            let mut mult = v.clone();
            for _ in 0..l {
                let adds: Vec<Vec<u64>> = space.iter().map(|x| add(x, &mult)).collect();
                bigger.extend(adds);
                mult = add(&mult, &v);
            }
            let k = key(&bigger);
            if seen.insert(k.clone()) {
                out.push(k);
                frontier.push(bigger);
            }
        }
    }
    out
}

/// |Sur(B, A)| by Möbius inversion over the subgroups of A that contain
/// ℓA: Sur(B,A) = Σ_{W ≤ A/ℓA} (−1)^c ℓ^{c(c−1)/2} |Hom(B, H_W)| with
/// c the codimension of W and H_W its preimage in A.
pub fn sur_count(b: &PartitionType, a: &PartitionType) -> i128 {
    assert_eq!(b.l, a.l);
    let r = a.rank();
    if r == 0 {
        return 1;
    }
    let l = a.l;
    let g = ExplicitGroup::new(a);
    let mut total: i128 = 0;
    for w in subspaces(l, r) {
        let dim_w = {
            let mut d = 0u32;
            let mut sz = 1usize;
            while sz < w.len() {
                sz *= l as usize;
                d += 1;
            }
            d
        };
        let codim = r as u32 - dim_w;
        // generators of H_W: ℓ·(basis of A) plus lifts of W
        let mut gens: Vec<Vec<u64>> = Vec::new();
        for i in 0..r {
            let mut v = vec![0u64; r];
            v[i] = l % g.moduli[i];
            gens.push(v);
        }
        gens.extend(w.iter().cloned());
        let h = g.span(&gens);
        let h_type = g.subgroup_type(&h);
        let sign: i128 = if codim % 2 == 0 { 1 } else { -1 };
        let weight = (l as i128).pow(codim * codim.saturating_sub(1) / 2);
        total += sign * weight * hom_count(b, &h_type) as i128;
    }
    total
}

/// Brute-force |Sur(B, A)| by enumerating every homomorphism; feasible
/// only when |Hom(B, A)| is small.
pub fn sur_count_brute(b: &PartitionType, a: &PartitionType, budget: u128) -> Result<i128, ClError> {
    assert_eq!(b.l, a.l);
    let homs = hom_count(b, a);
    if homs > budget {
        return Err(ClError::Budget(format!("|Hom| = {homs} > {budget}")));
    }
    let g = ExplicitGroup::new(a);
    let order = a.order();
    if a.rank() == 0 {
        return Ok(1);
    }
    // images of each generator of B must be killed by ℓ^{b_i}
    let l = a.l;
    let all: Vec<Vec<u64>> = {
        let mut out = vec![vec![]];
        for &m in &g.moduli {
            let mut next = Vec::new();
            for v in &out {
                for x in 0..m {
                    let mut v2 = v.clone();
                    v2.push(x);
                    next.push(v2);
                }
            }
            out = next;
        }
        out
    };
    let candidates: Vec<Vec<Vec<u64>>> = b
        .partition
        .iter()
        .map(|&bi| {
            let killer = l.pow(bi);
            all.iter()
                .filter(|v| {
                    v.iter()
                        .zip(&g.moduli)
                        .all(|(&x, &m)| (x as u128 * killer as u128) % m as u128 == 0)
                })
                .cloned()
                .collect()
        })
        .collect();
    let mut count: i128 = 0;
    let mut idx = vec![0usize; candidates.len()];
    loop {
        let gens: Vec<Vec<u64>> = idx
            .iter()
            .zip(&candidates)
            .map(|(&i, c)| c[i].clone())
            .collect();
        if g.span(&gens).len() as u128 == order {
            count += 1;
        }
        // advance the mixed-radix counter
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(count);
            }
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Brute-force |Aut(A)| as Sur(A, A) with bijectivity implied by
/// finiteness.
pub fn aut_order_brute(a: &PartitionType, budget: u128) -> Result<i128, ClError> {
    sur_count_brute(a, a, budget)
}

/// μ-mass of A: partial product ∏_{i=1..k}(1 − ℓ^{-i}) / |Aut A| with a
/// rigorous bound on the truncation error of the infinite product.
pub fn mu_mass(a: &PartitionType, truncation_k: u32) -> (f64, f64) {
    assert!(truncation_k >= 1);
    let l = a.l as f64;
    let mut prod = 1.0f64;
    for i in 1..=truncation_k {
        prod *= 1.0 - l.powi(-(i as i32));
    }
    let aut: f64 = {
        let s = aut_order(a).to_string();
        s.parse::<f64>().unwrap()
    };
    // 0 ≤ prod_k − prod_∞ ≤ prod_k · Σ_{i>k} ℓ^{-i}
    let tail = l.powi(-(truncation_k as i32)) / (l - 1.0);
    (prod / aut, prod * tail / aut)
}

/// Outcome of one cokernel draw.
#[derive(Debug, Clone)]
pub struct CokernelSample {
    pub group: PartitionType,
    /// e_cap in force when the draw finally resolved.
    pub e_cap_used: u32,
    pub escalations: u32,
}

const MAX_ESCALATIONS: u32 = 4;

/// Smith invariant exponents of an N×N matrix handed over as base-ℓ digit
/// streams, working modulo ℓ^{e_cap}; None when some invariant saturates
/// the modulus.
fn invariant_exponents(l: u64, e_cap: u32, digits: &[Vec<u8>], n: usize) -> Option<Vec<u32>> {
    let modulus = (l as u128).pow(e_cap);
    let mut m: Vec<Vec<u128>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = 0u128;
                    for d in (0..e_cap as usize).rev() {
                        v = v * l as u128 + digits[i * n + j][d] as u128;
                    }
                    v
                })
                .collect()
        })
        .collect();
    let val = |x: u128| -> u32 {
        if x == 0 {
            return e_cap;
        }
        let mut v = 0;
        let mut x = x;
        while x % l as u128 == 0 {
            x /= l as u128;
            v += 1;
        }
        v
    };
    let inv_unit = |u: u128| -> u128 {
        // Fermat–Euler inverse modulo ℓ^{e_cap}
        let phi = modulus / l as u128 * (l as u128 - 1);
        let mut base = u % modulus;
        let mut exp = phi - 1;
        let mut acc = 1u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % modulus;
            }
            base = base * base % modulus;
            exp >>= 1;
        }
        acc
    };
    let mut exps = Vec::new();
    let mut size = n;
    while size > 0 {
        // minimal-valuation pivot
        let mut best: Option<(usize, usize, u32)> = None;
        for i in 0..size {
            for j in 0..size {
                let v = val(m[i][j]);
                if best.map_or(true, |(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                }
            }
        }
        let (pi, pj, pv) = best.unwrap();
        if pv >= e_cap {
            return None; // remaining block ≡ 0 mod ℓ^{e_cap}: saturated
        }
        m.swap(0, pi);
        for row in m.iter_mut().take(size) {
            row.swap(0, pj);
        }
        let pivot = m[0][0];
        let unit = pivot / (l as u128).pow(pv);
        let unit_inv = inv_unit(unit);
        for j in 0..size {
            m[0][j] = m[0][j] * unit_inv % modulus;
        }
        // eliminate the first column using the normalized pivot ℓ^{pv}
        for i in 1..size {
            let factor = m[i][0] / (l as u128).pow(pv);
            for j in 0..size {
                let delta = factor * m[0][j] % modulus;
                m[i][j] = (m[i][j] + modulus - delta % modulus) % modulus;
            }
        }
        for j in 1..size {
            // column elimination: after row elimination the first column is
            // (ℓ^{pv}, 0, …)ᵀ, so clearing the first row suffices
            m[0][j] = 0;
        }
        exps.push(pv);
        // drop first row and column
        m = m[1..size].iter().map(|r| r[1..size].to_vec()).collect();
        size -= 1;
    }
    Some(exps)
}

/// Draw the cokernel type of a random N×N matrix over Z_ℓ truncated at
/// ℓ^{e_cap}; saturated draws extend the same digit streams at a doubled
/// modulus so the refinement is exact.
pub fn sample_cokernel(
    n: usize,
    l: u64,
    e_cap: u32,
    rng: &mut ChaCha8Rng,
) -> Result<CokernelSample, ClError> {
    assert!(n >= 1 && e_cap >= 1);
    let mut digits: Vec<Vec<u8>> = (0..n * n)
        .map(|_| (0..e_cap).map(|_| rng.gen_range(0..l) as u8).collect())
        .collect();
    let mut cap = e_cap;
    for esc in 0..=MAX_ESCALATIONS {
        if let Some(exps) = invariant_exponents(l, cap, &digits, n) {
            let partition: Vec<u32> = exps.into_iter().filter(|&e| e > 0).collect();
            return Ok(CokernelSample {
                group: PartitionType::new(l, partition),
                e_cap_used: cap,
                escalations: esc,
            });
        }
        let new_cap = cap * 2;
        if (l as u128).checked_pow(new_cap).is_none() || new_cap > 80 {
            return Err(ClError::Saturated(l, cap, esc));
        }
        for stream in digits.iter_mut() {
            for _ in cap..new_cap {
                stream.push(rng.gen_range(0..l) as u8);
            }
        }
        cap = new_cap;
    }
    Err(ClError::Saturated(l, cap, MAX_ESCALATIONS))
}

/// Mean and standard error of Sur(X, A) over Monte Carlo cokernel draws,
/// together with the empirical probability that X is trivial.
#[derive(Debug, Clone)]
pub struct MomentEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub p_trivial: f64,
    pub samples: usize,
    pub seed: u64,
}

pub fn moment_estimate(
    a: &PartitionType,
    n: usize,
    samples: usize,
    e_cap: u32,
    seed: u64,
) -> Result<MomentEstimate, ClError> {
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    let mut trivial = 0usize;
    let mut memo: HashMap<PartitionType, i128> = HashMap::new();
    for idx in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(idx as u64);
        let draw = sample_cokernel(n, a.l, e_cap, &mut rng)?;
        if draw.group.partition.is_empty() {
            trivial += 1;
        }
        let s = *memo
            .entry(draw.group.clone())
            .or_insert_with(|| sur_count(&draw.group, a)) as f64;
        sum += s;
        sum_sq += s * s;
    }
    let mean = sum / samples as f64;
    let var = (sum_sq / samples as f64 - mean * mean).max(0.0);
    Ok(MomentEstimate {
        mean,
        std_err: (var / samples as f64).sqrt(),
        p_trivial: trivial as f64 / samples as f64,
        samples,
        seed,
    })
}

/// Σ_{|B| ≤ cap} μ(B)·|Sur(B, A)| (→ 1 from below as the cap grows) and
/// the partial β-sum Σ_{B ≠ A} |Sur(B,A)|/|Aut(B)|.
#[derive(Debug, Clone)]
pub struct TruncatedMoments {
    pub moment_partial: f64,
    pub beta_partial: f64,
    pub mass_partial: f64,
    pub weight_cap: u32,
}

pub fn truncated_moment_identity(a: &PartitionType, weight_cap: u32) -> TruncatedMoments {
    let mut moment = 0.0;
    let mut beta = 0.0;
    let mut mass = 0.0;
    for m in 0..=weight_cap {
        for p in partitions(m) {
            let b = PartitionType::new(a.l, p);
            let (mu, _) = mu_mass(&b, 200);
            let s = sur_count(&b, a) as f64;
            moment += mu * s;
            mass += mu;
            if b != *a {
                let aut: f64 = aut_order(&b).to_string().parse().unwrap();
                beta += s / aut;
            }
        }
    }
    TruncatedMoments {
        moment_partial: moment,
        beta_partial: beta,
        mass_partial: mass,
        weight_cap,
    }
}

/// Check |Sur(X,A)| ≤ ε · (Σ_{A'∈M} |Sur(X,A')|)/|M| for every X with
/// ℓ^{s−1}|A| < |X| ≤ ℓ^{x_cap}, where M is the set of groups of order
/// ℓ^s|A| surjecting onto A.  Returns the first violating X, if any.
pub fn enhom_bound_check(
    a: &PartitionType,
    epsilon: f64,
    s: u32,
    x_weight_cap: u32,
) -> Option<PartitionType> {
    let l = a.l;
    let m_weight = a.weight() + s;
    let m_set: Vec<PartitionType> = partitions(m_weight)
        .into_iter()
        .map(|p| PartitionType::new(l, p))
        .filter(|ap| sur_count(ap, a) > 0)
        .collect();
    assert!(!m_set.is_empty());
    let c_weight = a.weight() + s - 1; // c(A) = ℓ^{s−1}|A|
    for w in (c_weight + 1)..=x_weight_cap {
        for p in partitions(w) {
            let x = PartitionType::new(l, p);
            let lhs = sur_count(&x, a) as f64;
            let rhs: f64 = m_set.iter().map(|ap| sur_count(&x, ap) as f64).sum::<f64>()
                / m_set.len() as f64;
            if lhs > epsilon * rhs {
                return Some(x);
            }
        }
    }
    None
}

/// Least s ≤ s_max making the bound hold over the test window.
pub fn enhom_minimal_s(
    a: &PartitionType,
    epsilon: f64,
    x_weight_cap: u32,
    s_max: u32,
) -> Option<u32> {
    (1..=s_max).find(|&s| enhom_bound_check(a, epsilon, s, x_weight_cap).is_none())
}

/// Brute-force verdict on the symplectic orbit statement.
#[derive(Debug, Clone)]
pub struct SymplecticCheck {
    pub sp_order: usize,
    pub o_size: usize,
    pub orbit_count: usize,
    pub transitive: bool,
    pub nonempty: bool,
}

/// V = (Z/ℓ^e)^{2g} with ω(x, y) = Σ_i (x_i y_{g+i} − x_{g+i} y_i); O is
/// the set of surjections V → A fixed by at least one similitude with
/// multiplier q; the Sp-orbit decomposition of O is found by exhaustive
/// closure.
pub fn symplectic_orbit_check(
    g: usize,
    l: u64,
    e: u32,
    a: &PartitionType,
    q_residue: u64,
) -> Result<SymplecticCheck, ClError> {
    assert_eq!(l, a.l);
    assert!(e == 1, "brute-force check implemented for e = 1");
    assert!(a.partition.iter().all(|&ai| ai <= e), "A exponent exceeds modulus");
    let q = q_residue % l;
    assert!(q % l != 0 && (q + l - 1) % l != 0, "need q(q-1) invertible mod ell");
    let dim = 2 * g;
    let size = (l as usize).pow(dim as u32);
    if size > 1000 {
        return Err(ClError::Budget(format!("|V| = {size}")));
    }
    let unpack = |mut code: usize| -> Vec<u64> {
        let mut v = vec![0u64; dim];
        for i in (0..dim).rev() {
            v[i] = (code % l as usize) as u64;
            code /= l as usize;
        }
        v
    };
    let omega = |x: &[u64], y: &[u64]| -> u64 {
        let mut s = 0i64;
        for i in 0..g {
            s += x[i] as i64 * y[g + i] as i64 - x[g + i] as i64 * y[i] as i64;
        }
        s.rem_euclid(l as i64) as u64
    };
    // matrices as row-major Vec<u64>, acting on column vectors
    let apply = |m: &[u64], x: &[u64]| -> Vec<u64> {
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| m[i * dim + j] * x[j])
                    .sum::<u64>()
                    % l
            })
            .collect()
    };
    let matmul = |p: &[u64], r: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                if p[i * dim + k] == 0 {
                    continue;
                }
                for j in 0..dim {
                    out[i * dim + j] = (out[i * dim + j] + p[i * dim + k] * r[k * dim + j]) % l;
                }
            }
        }
        out
    };
    // Sp by closure over all symplectic transvections T_{v,λ}: x ↦ x + λω(x,v)v
    let mut gens: Vec<Vec<u64>> = Vec::new();
    for code in 1..size {
        let v = unpack(code);
        for lam in 1..l {
            let mut m = vec![0u64; dim * dim];
            for j in 0..dim {
                let mut ej = vec![0u64; dim];
                ej[j] = 1;
                let w = omega(&ej, &v);
                for i in 0..dim {
                    m[i * dim + j] = (if i == j { 1 } else { 0 } + lam * w % l * v[i]) % l;
                }
            }
            gens.push(m);
        }
    }
    let identity: Vec<u64> = {
        let mut m = vec![0u64; dim * dim];
        for i in 0..dim {
            m[i * dim + i] = 1;
        }
        m
    };
    let mut sp: HashSet<Vec<u64>> = HashSet::new();
    sp.insert(identity.clone());
    let mut frontier = vec![identity.clone()];
    while let Some(m) = frontier.pop() {
        for tg in &gens {
            let m2 = matmul(tg, &m);
            if sp.insert(m2.clone()) {
                frontier.push(m2);
            }
        }
    }
    let sp: Vec<Vec<u64>> = sp.into_iter().collect();

    // one similitude with multiplier q: scale the first block by q
    let f0: Vec<u64> = {
        let mut m = vec![0u64; dim * dim];
        for i in 0..g {
            m[i * dim + i] = q;
        }
        for i in g..dim {
            m[i * dim + i] = 1;
        }
        m
    };
    // sanity: ω(F0 x, F0 y) = q ω(x, y) on basis pairs
    for i in 0..dim {
        for j in 0..dim {
            let mut ei = vec![0u64; dim];
            ei[i] = 1;
            let mut ej = vec![0u64; dim];
            ej[j] = 1;
            assert_eq!(
                omega(&apply(&f0, &ei), &apply(&f0, &ej)),
                q * omega(&ei, &ej) % l
            );
        }
    }

    // surjections V → A as r×dim matrices over F_ℓ of full rank r
    let r = a.rank();
    let cand_count = (l as usize).pow((r * dim) as u32);
    if cand_count > 100_000 {
        return Err(ClError::Budget(format!("{cand_count} candidate maps")));
    }
    let full_rank = |rows: &[Vec<u64>]| -> bool {
        // Gaussian elimination over F_ℓ
        let mut m: Vec<Vec<u64>> = rows.to_vec();
        let mut rank = 0;
        for col in 0..dim {
            if let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) {
                m.swap(rank, p);
                let inv = (1..l).find(|&x| x * m[rank][col] % l == 1).unwrap();
                for j in 0..dim {
                    m[rank][j] = m[rank][j] * inv % l;
                }
                for i in 0..m.len() {
                    if i != rank && m[i][col] != 0 {
                        let f = m[i][col];
                        for j in 0..dim {
                            m[i][j] = (m[i][j] + (l - f) * m[rank][j]) % l;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank == rows.len()
    };
    let mut surjections: Vec<Vec<Vec<u64>>> = Vec::new();
    for code in 0..cand_count {
        let mut c = code;
        let mut rows = vec![vec![0u64; dim]; r];
        for i in (0..r).rev() {
            for j in (0..dim).rev() {
                rows[i][j] = (c % l as usize) as u64;
                c /= l as usize;
            }
        }
        if full_rank(&rows) {
            surjections.push(rows);
        }
    }

    // precompose a surjection with a matrix
    let compose = |rows: &[Vec<u64>], m: &[u64]| -> Vec<Vec<u64>> {
        rows.iter()
            .map(|row| {
                (0..dim)
                    .map(|j| (0..dim).map(|i| row[i] * m[i * dim + j]).sum::<u64>() % l)
                    .collect()
            })
            .collect()
    };

    // O: fixed by at least one element of the similitude coset F0·Sp
    let mut in_o: Vec<bool> = Vec::with_capacity(surjections.len());
    for phi in &surjections {
        let fixed = sp.iter().any(|s| {
            let fm = matmul(&f0, s);
            compose(phi, &fm) == *phi
        });
        in_o.push(fixed);
    }
    let o_members: Vec<usize> = (0..surjections.len()).filter(|&i| in_o[i]).collect();

    // Sp-orbit decomposition of O by flood fill
    let index: HashMap<Vec<Vec<u64>>, usize> = surjections
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let mut orbit_of: Vec<Option<usize>> = vec![None; surjections.len()];
    let mut orbit_count = 0;
    for &start in &o_members {
        if orbit_of[start].is_some() {
            continue;
        }
        let id = orbit_count;
        orbit_count += 1;
        orbit_of[start] = Some(id);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for s in &sp {
                let img = compose(&surjections[i], s);
                let j = index[&img];
                debug_assert!(in_o[j], "O not Sp-stable");
                if orbit_of[j].is_none() {
                    orbit_of[j] = Some(id);
                    stack.push(j);
                }
            }
        }
    }
    Ok(SymplecticCheck {
        sp_order: sp.len(),
        o_size: o_members.len(),
        orbit_count,
        transitive: orbit_count == 1,
        nonempty: !o_members.is_empty(),
    })
}
