//! Exhaustive class-group census over all imaginary quadratic extensions
//! of F_q(t) with squarefree f of a fixed odd degree: per-curve Jacobian
//! data and aggregate surjection statistics, with deterministic per-curve
//! seeding so serial and parallel runs agree byte for byte.

use super::curve::{
    jacobian_order, l_part_of, l_part_structure, scalar_mul, DivisorSampler,
    HyperellipticCurve,
};
use super::field::Ff;
use super::poly::{self, Poly};
use super::FfError;
use crate::cl::{mu_mass, sur_count, PartitionType};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// All monic squarefree polynomials of degree n over the field, by
/// exhaustive squarefreeness test; the count always equals q^n − q^{n−1}.
pub fn enumerate_sf(field: &Ff, n: usize) -> Vec<Poly> {
    assert!(n >= 1);
    let q = field.q;
    let total = q.checked_pow(n as u32).expect("enumeration size overflow");
    let mut out = Vec::new();
    for code in 0..total {
        let mut f = vec![0usize; n + 1];
        let mut c = code;
        for coeff in f.iter_mut().take(n) {
            *coeff = c % q;
            c /= q;
        }
        f[n] = 1;
        if poly::is_squarefree(field, &f) {
            out.push(f);
        }
    }
    out
}

/// The discriminant family: monic squarefree f together with c₀·f for the
/// least nonsquare c₀, giving 2(q^n − q^{n−1}) curves.
pub fn enumerate_family(field: &Ff, n: usize) -> (Vec<Poly>, usize) {
    let monic = enumerate_sf(field, n);
    let c0 = field.least_nonsquare();
    let mut all = monic.clone();
    all.extend(monic.iter().map(|f| poly::scale(field, c0, f)));
    (all, c0)
}

#[derive(Debug, Clone)]
pub struct ClassGroupRecord {
    pub curve_id: usize,
    pub f: Poly,
    pub h: u128,
    pub l_part: PartitionType,
    /// Surjection counts onto each requested target, in target order.
    pub m_a: Vec<i128>,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub q: u64,
    pub n: usize,
    pub l: u64,
    pub seed: u64,
    pub nonsquare_c0: usize,
    pub curve_count: usize,
    pub targets: Vec<PartitionType>,
    pub avg_m_a: Vec<f64>,
    /// empirical ℓ-part distribution, keyed by partition label.
    pub distribution: BTreeMap<String, usize>,
    pub mu_masses: BTreeMap<String, f64>,
    pub tv_distance_to_mu: f64,
    pub warnings: Vec<String>,
    pub records: Vec<ClassGroupRecord>,
    pub failures: Vec<(usize, String)>,
}

fn process_curve(
    field: &Ff,
    f: &Poly,
    curve_id: usize,
    l: u64,
    targets: &[PartitionType],
    seed: u64,
) -> Result<ClassGroupRecord, FfError> {
    let curve = HyperellipticCurve::new(field, f.clone())?;
    let h = jacobian_order(&curve)?;
    let sampler = DivisorSampler::new(&curve)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(curve_id as u64);
    // annihilation gate: h kills random divisor classes
    for _ in 0..3 {
        let d = sampler.draw(&mut rng);
        if !scalar_mul(&curve, h, &d).is_identity() {
            return Err(FfError::ZetaSymmetry(format!(
                "h = {h} fails to annihilate a divisor on {}",
                curve.label()
            )));
        }
    }
    let l_part = l_part_structure(&curve, l, h, &mut rng)?;
    debug_assert_eq!(l_part.order(), l_part_of(h, l));
    let m_a = targets.iter().map(|a| sur_count(&l_part, a)).collect();
    Ok(ClassGroupRecord {
        curve_id,
        f: f.clone(),
        h,
        l_part,
        m_a,
    })
}

/// Exhaustive census; parallel over curves when `jobs > 1`, with identical
/// output either way.
pub fn cl_census(
    q: u64,
    n: usize,
    l: u64,
    targets: &[PartitionType],
    seed: u64,
    jobs: usize,
) -> Result<CensusReport, FfError> {
    assert!(n % 2 == 1, "odd degree required for the imaginary condition");
    assert!(l % 2 == 1 && l > 1);
    let field = Ff::new(q)?;
    assert!(q % l != 0, "ell must not divide q");
    let mut warnings = Vec::new();
    if (q - 1) % l == 0 {
        warnings.push(format!(
            "l = {l} divides q - 1 = {}: the limiting distribution is expected to differ from the reference measure",
            q - 1
        ));
    }
    let (family, c0) = enumerate_family(&field, n);
    let run = |id: usize, f: &Poly| -> (usize, Result<ClassGroupRecord, FfError>) {
        (id, process_curve(&field, f, id, l, targets, seed))
    };
    let indexed: Vec<(usize, Poly)> = family.into_iter().enumerate().collect();
    let results: Vec<(usize, Result<ClassGroupRecord, FfError>)> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| indexed.par_iter().map(|(i, f)| run(*i, f)).collect())
    } else {
        indexed.iter().map(|(i, f)| run(*i, f)).collect()
    };
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (id, r) in results {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => failures.push((id, e.to_string())),
        }
    }
    records.sort_by_key(|r| r.curve_id);
    failures.sort();
    let total = records.len() + failures.len();
    if failures.len() * 1000 > total {
        return Err(FfError::CensusFailures(failures.len(), total));
    }
    let mut avg = vec![0.0f64; targets.len()];
    let mut distribution: BTreeMap<String, usize> = BTreeMap::new();
    for rec in &records {
        for (i, &m) in rec.m_a.iter().enumerate() {
            avg[i] += m as f64;
        }
        *distribution.entry(rec.l_part.label()).or_insert(0) += 1;
    }
    for a in avg.iter_mut() {
        *a /= records.len() as f64;
    }
    // total-variation distance between the empirical ℓ-part distribution
    // and the reference measure, over all partitions of weight ≤ 8
    let mut mu_masses = BTreeMap::new();
    let mut tv = 0.0f64;
    let mut mu_covered = 0.0f64;
    for w in 0..=8u32 {
        for p in crate::cl::partitions(w) {
            let a = PartitionType::new(l, p);
            let (mu, _) = mu_mass(&a, 200);
            mu_masses.insert(a.label(), mu);
            let emp = *distribution.get(&a.label()).unwrap_or(&0) as f64 / records.len() as f64;
            tv += (emp - mu).abs();
            mu_covered += mu;
        }
    }
    // lump the uncovered tails of both measures
    let emp_covered: f64 = distribution
        .iter()
        .filter(|(k, _)| mu_masses.contains_key(*k))
        .map(|(_, &v)| v as f64)
        .sum::<f64>()
        / records.len() as f64;
    tv += ((1.0 - emp_covered) - (1.0 - mu_covered)).abs();
    tv *= 0.5;
    Ok(CensusReport {
        q,
        n,
        l,
        seed,
        nonsquare_c0: c0,
        curve_count: total,
        targets: targets.to_vec(),
        avg_m_a: avg,
        distribution,
        mu_masses,
        tv_distance_to_mu: tv,
        warnings,
        records,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_counts_match_formula() {
        for q in [3u64, 5, 7] {
            let field = Ff::new(q).unwrap();
            for n in 1..=4usize {
                let count = enumerate_sf(&field, n).len() as u64;
                let expect = if n == 1 { q } else { q.pow(n as u32) - q.pow(n as u32 - 1) };
                assert_eq!(count, expect, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn family_doubles_the_count() {
        let field = Ff::new(5).unwrap();
        let (fam, c0) = enumerate_family(&field, 3);
        assert_eq!(fam.len(), 200);
        assert!(!field.is_square(c0));
    }

    #[test]
    fn census_q7_n3_smoke() {
        let targets = vec![PartitionType::trivial(3), PartitionType::new(3, vec![1])];
        let rep = cl_census(7, 3, 3, &targets, 42, 1).unwrap();
        assert_eq!(rep.curve_count, 2 * (343 - 49));
        assert!(rep.failures.is_empty());
        // trivial target: average exactly 1
        assert_eq!(rep.avg_m_a[0], 1.0);
        // the Z/3 moment is near 1 at q = 7
        assert!((rep.avg_m_a[1] - 1.0).abs() < 3.0 / (7.0f64).sqrt(), "{}", rep.avg_m_a[1]);
    }

    #[test]
    fn census_parallel_equals_serial() {
        let targets = vec![PartitionType::new(3, vec![1])];
        let a = cl_census(5, 3, 3, &targets, 9, 1).unwrap();
        let b = cl_census(5, 3, 3, &targets, 9, 4).unwrap();
        assert_eq!(a.avg_m_a, b.avg_m_a);
        assert_eq!(a.distribution, b.distribution);
        assert_eq!(a.records.len(), b.records.len());
        for (x, y) in a.records.iter().zip(&b.records) {
            assert_eq!(x.h, y.h);
            assert_eq!(x.l_part, y.l_part);
        }
    }

    #[test]
    fn warns_when_l_divides_q_minus_one() {
        // q = 7, l = 3: 3 | q − 1 = 6, so the caveat warning must fire
        let targets = vec![PartitionType::trivial(3)];
        let rep = cl_census(7, 3, 3, &targets, 1, 1).unwrap();
        assert!(rep.warnings.iter().any(|w| w.contains("q - 1")));
        // q = 5: 3 does not divide 4, no warning
        let rep5 = cl_census(5, 3, 3, &targets, 1, 1).unwrap();
        assert!(rep5.warnings.is_empty());
    }
}
