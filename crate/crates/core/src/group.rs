//! Finite groups materialized as full multiplication tables, plus the
//! conjugacy-class and subgroup machinery that gates everything downstream.
//!
//! Element 0 is always the identity.  The product convention is
//! left-to-right: `mul(a, b)` means "a then b" when elements are realized
//! as permutations, i.e. `(a*b)(x) = b(a(x))`.  Conjugation follows
//! `g^h = h^{-1} g h`.

use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

/// Hard cap on group order; everything here assumes desk scale.
pub const DEFAULT_GROUP_CAP: usize = 5000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("generator closure exceeded cap of {0} elements")]
    SizeCap(usize),
    #[error("generators are not permutations of a common finite set")]
    BadGenerators,
    #[error("cannot parse group description: {0}")]
    Parse(String),
}

/// A finite group with a full multiplication table.
///
/// Immutable after construction; all queries are pure.
#[derive(Debug, Clone)]
pub struct Group {
    pub order: usize,
    /// mul[a * order + b] = index of a·b.
    mul_table: Vec<u32>,
    pub inv: Vec<u32>,
    pub order_of: Vec<u32>,
    pub generator_indices: Vec<usize>,
    /// The permutations realizing each element (BFS order from identity).
    pub perms: Vec<Vec<usize>>,
}

impl Group {
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// g^h = h^{-1} g h.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    /// Subgroup generated by the given elements, as a sorted index list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    /// Build the closure of a set of permutations on a common finite set.
    ///
    /// Deterministic element ordering: breadth-first from the identity,
    /// ties broken by permutation lexicographic order.
    pub fn from_permutations(generators: &[Vec<usize>], cap: usize) -> Result<Group, GroupError> {
        let deg = generators.first().map(|p| p.len()).unwrap_or(1);
        for p in generators {
            if p.len() != deg {
                return Err(GroupError::BadGenerators);
            }
            let mut seen = vec![false; deg];
            for &x in p {
                if x >= deg || seen[x] {
                    return Err(GroupError::BadGenerators);
                }
                seen[x] = true;
            }
        }
        let identity: Vec<usize> = (0..deg).collect();
        let mut gens: Vec<Vec<usize>> = generators.to_vec();
        gens.sort();
        gens.dedup();

        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut perms: Vec<Vec<usize>> = vec![identity.clone()];
        index.insert(identity, 0);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut products = BTreeSet::new();
            for &i in &frontier {
                for g in &gens {
                    // perms[i] then g
                    let prod: Vec<usize> = perms[i].iter().map(|&x| g[x]).collect();
                    if !index.contains_key(&prod) {
                        products.insert(prod);
                    }
                }
            }
            frontier.clear();
            for p in products {
                if perms.len() >= cap {
                    return Err(GroupError::SizeCap(cap));
                }
                index.insert(p.clone(), perms.len());
                frontier.push(perms.len());
                perms.push(p);
            }
        }

        let n = perms.len();
        let mut mul_table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = perms[a].iter().map(|&x| perms[b][x]).collect();
                mul_table[a * n + b] = index[&prod] as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mul_table[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let mut order_of = vec![0u32; n];
        for a in 0..n {
            let mut k = 1u32;
            let mut acc = a;
            while acc != 0 {
                acc = mul_table[acc * n + a] as usize;
                k += 1;
            }
            order_of[a] = if a == 0 { 1 } else { k };
        }
        let generator_indices = gens.iter().map(|g| index[g]).collect();
        Ok(Group {
            order: n,
            mul_table,
            inv,
            order_of,
            generator_indices,
            perms,
        })
    }
}

/// A conjugacy class, stored as a sorted list of element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub members: Vec<usize>,
    pub class_order: u32,
}

pub fn conjugacy_class(group: &Group, element: usize) -> ConjClass {
    let mut members: BTreeSet<usize> = BTreeSet::new();
    for h in 0..group.order {
        members.insert(group.conj(element, h));
    }
    ConjClass {
        members: members.into_iter().collect(),
        class_order: group.order_of[element],
    }
}

/// All subgroups, each canonically sorted, deduplicated.
#[derive(Debug, Clone)]
pub struct SubgroupList {
    pub subgroups: Vec<Vec<usize>>,
}

impl SubgroupList {
    /// Index of the subgroup equal to the given sorted element set.
    pub fn find(&self, sorted_elements: &[usize]) -> Option<usize> {
        self.subgroups.iter().position(|s| s == sorted_elements)
    }
}

/// Layered closure: start from all cyclic subgroups, close joins of pairs
/// until a fixpoint.  Exhaustive at desk scale.
pub fn subgroups(group: &Group) -> SubgroupList {
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    set.insert(vec![0]);
    for g in 0..group.order {
        set.insert(group.generated_subgroup(&[g]));
    }
    loop {
        let current: Vec<Vec<usize>> = set.iter().cloned().collect();
        let before = set.len();
        for i in 0..current.len() {
            for j in (i + 1)..current.len() {
                let mut gens = current[i].clone();
                gens.extend_from_slice(&current[j]);
                set.insert(group.generated_subgroup(&gens));
            }
        }
        if set.len() == before {
            break;
        }
    }
    SubgroupList {
        subgroups: set.into_iter().collect(),
    }
}

/// Why a pair (G, c) fails the non-splitting test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonSplitWitness {
    /// c generates only this proper subgroup.
    ProperSubgroup(Vec<usize>),
    /// This subgroup meets c in more than one of its own conjugacy classes;
    /// two elements of c∩H in distinct H-classes are reported.
    SplitSubgroup {
        subgroup: Vec<usize>,
        class_a: usize,
        class_b: usize,
    },
}

/// The paper's standing hypothesis: c generates G, and for every subgroup H
/// the set c∩H is empty or a single H-conjugacy class.
pub fn is_nonsplitting(group: &Group, class: &ConjClass) -> (bool, Option<NonSplitWitness>) {
    let generated = group.generated_subgroup(&class.members);
    if generated.len() != group.order {
        return (false, Some(NonSplitWitness::ProperSubgroup(generated)));
    }
    let subs = subgroups(group);
    for h in &subs.subgroups {
        let in_h: Vec<usize> = class
            .members
            .iter()
            .copied()
            .filter(|m| h.binary_search(m).is_ok())
            .collect();
        if in_h.is_empty() {
            continue;
        }
        // H-conjugacy orbit of the first member; every other member must lie in it.
        let rep = in_h[0];
        let mut orbit = BTreeSet::new();
        for &x in h {
            orbit.insert(group.conj(rep, x));
        }
        for &m in &in_h[1..] {
            if !orbit.contains(&m) {
                return (
                    false,
                    Some(NonSplitWitness::SplitSubgroup {
                        subgroup: h.clone(),
                        class_a: rep,
                        class_b: m,
                    }),
                );
            }
        }
    }
    (true, None)
}

/// True iff {g^a : g in c} = c for every a coprime to the class order.
pub fn is_rational_class(group: &Group, class: &ConjClass) -> bool {
    let ord = class.class_order as usize;
    for a in 1..ord {
        if gcd(a, ord) != 1 {
            continue;
        }
        for &g in &class.members {
            let ga = group.pow(g, a);
            if class.members.binary_search(&ga).is_err() {
                return false;
            }
        }
    }
    true
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cycle-notation parser: "(1 2)(3 4)" or "(1,2,3)".  Points are 1-based.
pub fn parse_cycles(s: &str) -> Result<Vec<usize>, GroupError> {
    let s = s.trim();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s;
    let mut max_pt = 0usize;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| GroupError::Parse(format!("expected '(' in {s:?}")))?;
        let close = rest[open..]
            .find(')')
            .ok_or_else(|| GroupError::Parse(format!("unbalanced parens in {s:?}")))?
            + open;
        let body = &rest[open + 1..close];
        let cyc: Result<Vec<usize>, _> = body
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| GroupError::Parse(format!("bad point {t:?}")))
            })
            .collect();
        let cyc = cyc?;
        if cyc.iter().any(|&p| p == 0) {
            return Err(GroupError::Parse("points are 1-based".into()));
        }
        max_pt = max_pt.max(cyc.iter().copied().max().unwrap_or(0));
        cycles.push(cyc);
        rest = &rest[close + 1..];
        rest = rest.trim_start();
    }
    let deg = max_pt.max(1);
    let mut perm: Vec<usize> = (0..deg).collect();
    for cyc in &cycles {
        for w in 0..cyc.len() {
            let from = cyc[w] - 1;
            let to = cyc[(w + 1) % cyc.len()] - 1;
            perm[from] = to;
        }
    }
    Ok(perm)
}

/// Pad a permutation up to a common degree (fixing new points).
fn pad(p: &[usize], deg: usize) -> Vec<usize> {
    let mut q: Vec<usize> = p.to_vec();
    for i in p.len()..deg {
        q.push(i);
    }
    q
}

/// Build A⋊(Z/2) for the abelian group A = ⊕ Z/m_i given by `cyclic_orders`
/// (the Z/2 acting by inversion), as a permutation group on the set A.
pub fn dihedral_of(cyclic_orders: &[usize], cap: usize) -> Result<Group, GroupError> {
    if cyclic_orders.is_empty() || cyclic_orders.iter().any(|&m| m < 2) {
        return Err(GroupError::Parse("dihedral needs cyclic orders >= 2".into()));
    }
    let size: usize = cyclic_orders.iter().product();
    // Encode A-elements as mixed-radix indices.
    let enc = |coords: &[usize]| -> usize {
        let mut idx = 0;
        for (i, &c) in coords.iter().enumerate() {
            idx = idx * cyclic_orders[i] + c;
        }
        idx
    };
    let dec = |mut idx: usize| -> Vec<usize> {
        let mut coords = vec![0; cyclic_orders.len()];
        for i in (0..cyclic_orders.len()).rev() {
            coords[i] = idx % cyclic_orders[i];
            idx /= cyclic_orders[i];
        }
        coords
    };
    let mut gens: Vec<Vec<usize>> = Vec::new();
    for axis in 0..cyclic_orders.len() {
        let mut perm = vec![0usize; size];
        for (x, slot) in perm.iter_mut().enumerate() {
            let mut coords = dec(x);
            coords[axis] = (coords[axis] + 1) % cyclic_orders[axis];
            *slot = enc(&coords);
        }
        gens.push(perm);
    }
    let mut negate = vec![0usize; size];
    for (x, slot) in negate.iter_mut().enumerate() {
        let coords = dec(x);
        let neg: Vec<usize> = coords
            .iter()
            .enumerate()
            .map(|(i, &c)| (cyclic_orders[i] - c) % cyclic_orders[i])
            .collect();
        *slot = enc(&neg);
    }
    gens.push(negate);
    Group::from_permutations(&gens, cap)
}

/// Named presets plus the `dihedral(...)` family.
pub fn preset(name: &str, cap: usize) -> Result<Group, GroupError> {
    let name = name.trim();
    match name {
        "S3" => from_cycles(&["(1 2)", "(1 2 3)"], cap),
        "S4" => from_cycles(&["(1 2)", "(1 2 3 4)"], cap),
        "S5" => from_cycles(&["(1 2)", "(1 2 3 4 5)"], cap),
        "A4" => from_cycles(&["(1 2 3)", "(2 3 4)"], cap),
        "D5" => from_cycles(&["(1 2 3 4 5)", "(2 5)(3 4)"], cap),
        "Z2" => from_cycles(&["(1 2)"], cap),
        _ => {
            if let Some(body) = name
                .strip_prefix("dihedral(")
                .and_then(|r| r.strip_suffix(')'))
            {
                let orders: Result<Vec<usize>, _> = body
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| GroupError::Parse(format!("bad order {t:?}")))
                    })
                    .collect();
                dihedral_of(&orders?, cap)
            } else {
                Err(GroupError::Parse(format!("unknown preset {name:?}")))
            }
        }
    }
}

fn from_cycles(gens: &[&str], cap: usize) -> Result<Group, GroupError> {
    let parsed: Result<Vec<Vec<usize>>, _> = gens.iter().map(|s| parse_cycles(s)).collect();
    let parsed = parsed?;
    let deg = parsed.iter().map(|p| p.len()).max().unwrap_or(1);
    let padded: Vec<Vec<usize>> = parsed.iter().map(|p| pad(p, deg)).collect();
    Group::from_permutations(&padded, cap)
}

/// Plain-text group format: one `perm: <cycles>` line per generator, or a
/// single `preset: <name>` line.  `#` starts a comment.
pub fn parse_group_spec(text: &str, cap: usize) -> Result<Group, GroupError> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("preset:") {
            return preset(rest, cap);
        } else if let Some(rest) = line.strip_prefix("perm:") {
            perms.push(parse_cycles(rest)?);
        } else {
            return Err(GroupError::Parse(format!("unrecognized line {line:?}")));
        }
    }
    if perms.is_empty() {
        // Empty generating set: trivial group.
        return Group::from_permutations(&[], cap);
    }
    let deg = perms.iter().map(|p| p.len()).max().unwrap();
    let padded: Vec<Vec<usize>> = perms.iter().map(|p| pad(p, deg)).collect();
    Group::from_permutations(&padded, cap)
}

/// An element of the named class, for CLI `--class-rep` strings given in
/// cycle notation; falls back to an element index written as `#k`.
pub fn resolve_class_rep(group: &Group, rep: &str) -> Result<usize, GroupError> {
    let rep = rep.trim();
    if let Some(idx) = rep.strip_prefix('#') {
        let idx: usize = idx
            .parse()
            .map_err(|_| GroupError::Parse(format!("bad element index {rep:?}")))?;
        if idx >= group.order {
            return Err(GroupError::Parse(format!("element index {idx} out of range")));
        }
        return Ok(idx);
    }
    let p = parse_cycles(rep)?;
    let deg = group.perms[0].len();
    if p.len() > deg {
        return Err(GroupError::Parse(format!(
            "permutation degree {} exceeds group degree {deg}",
            p.len()
        )));
    }
    let padded = pad(&p, deg);
    group
        .perms
        .iter()
        .position(|q| *q == padded)
        .ok_or_else(|| GroupError::Parse(format!("{rep:?} is not an element of the group")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        preset("S3", DEFAULT_GROUP_CAP).unwrap()
    }

    fn s4() -> Group {
        preset("S4", DEFAULT_GROUP_CAP).unwrap()
    }

    fn a4() -> Group {
        preset("A4", DEFAULT_GROUP_CAP).unwrap()
    }

    fn transposition_class(g: &Group) -> ConjClass {
        let t = (0..g.order).find(|&i| g.order_of[i] == 2).unwrap();
        conjugacy_class(g, t)
    }

    #[test]
    fn s3_has_order_6() {
        assert_eq!(s3().order, 6);
    }

    #[test]
    fn empty_generating_set_gives_trivial_group() {
        let g = Group::from_permutations(&[], 10).unwrap();
        assert_eq!(g.order, 1);
    }

    #[test]
    fn dihedral_z3_is_s3_sized() {
        let g = dihedral_of(&[3], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order, 6);
        // Nonabelian of order 6, so isomorphic to S_3: check a non-commuting pair.
        let mut noncomm = false;
        for a in 0..6 {
            for b in 0..6 {
                if g.mul(a, b) != g.mul(b, a) {
                    noncomm = true;
                }
            }
        }
        assert!(noncomm);
    }

    #[test]
    fn associativity_exhaustive_small() {
        for g in [s3(), a4()] {
            for a in 0..g.order {
                for b in 0..g.order {
                    for c in 0..g.order {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_and_orders() {
        let g = s4();
        for a in 0..g.order {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            let k = g.order_of[a] as usize;
            assert_eq!(g.pow(a, k), 0);
            for j in 1..k {
                assert_ne!(g.pow(a, j), 0);
            }
        }
    }

    #[test]
    fn conjugation_preserves_order() {
        let g = s4();
        for a in 0..g.order {
            for h in 0..g.order {
                assert_eq!(g.order_of[g.conj(a, h)], g.order_of[a]);
            }
        }
    }

    #[test]
    fn s3_transposition_class_has_size_3() {
        let g = s3();
        assert_eq!(transposition_class(&g).members.len(), 3);
    }

    #[test]
    fn identity_class_is_singleton() {
        let g = s4();
        assert_eq!(conjugacy_class(&g, 0).members, vec![0]);
    }

    #[test]
    fn a4_three_cycle_class_has_size_4() {
        let g = a4();
        let t = (0..g.order).find(|&i| g.order_of[i] == 3).unwrap();
        assert_eq!(conjugacy_class(&g, t).members.len(), 4);
    }

    #[test]
    fn s3_has_6_subgroups() {
        assert_eq!(subgroups(&s3()).subgroups.len(), 6);
    }

    #[test]
    fn trivial_group_has_1_subgroup() {
        let g = Group::from_permutations(&[], 10).unwrap();
        assert_eq!(subgroups(&g).subgroups.len(), 1);
    }

    #[test]
    fn z4_has_3_subgroups() {
        let g = from_cycles(&["(1 2 3 4)"], 100).unwrap();
        assert_eq!(subgroups(&g).subgroups.len(), 3);
    }

    #[test]
    fn nonsplitting_gate() {
        let g = s3();
        let c = transposition_class(&g);
        let (ok, w) = is_nonsplitting(&g, &c);
        assert!(ok, "S3 transpositions should be nonsplitting, got {w:?}");

        let g = s4();
        let c = transposition_class(&g);
        let (ok, w) = is_nonsplitting(&g, &c);
        assert!(!ok);
        assert!(matches!(w, Some(NonSplitWitness::SplitSubgroup { .. })));

        let g = a4();
        let t = (0..g.order).find(|&i| g.order_of[i] == 3).unwrap();
        let c = conjugacy_class(&g, t);
        let (ok, _) = is_nonsplitting(&g, &c);
        assert!(ok, "A4 with a class of 3-cycles is nonsplitting");
    }

    #[test]
    fn rationality() {
        let g = s3();
        assert!(is_rational_class(&g, &transposition_class(&g)));
        assert!(is_rational_class(&g, &conjugacy_class(&g, 0)));
        let g = a4();
        let t = (0..g.order).find(|&i| g.order_of[i] == 3).unwrap();
        assert!(!is_rational_class(&g, &conjugacy_class(&g, t)));
    }

    #[test]
    fn order_2s_groups_have_unique_nonsplitting_involution_class() {
        // S_3, D_5 (order 10), Z/9⋊Z/2: all of order 2s with s odd.
        for g in [
            s3(),
            preset("D5", DEFAULT_GROUP_CAP).unwrap(),
            dihedral_of(&[9], DEFAULT_GROUP_CAP).unwrap(),
        ] {
            let involutions: Vec<usize> =
                (0..g.order).filter(|&i| g.order_of[i] == 2).collect();
            assert!(!involutions.is_empty());
            let c = conjugacy_class(&g, involutions[0]);
            assert_eq!(c.members, involutions, "single involution class expected");
            let (ok, _) = is_nonsplitting(&g, &c);
            assert!(ok);
        }
    }

    #[test]
    fn parse_group_spec_roundtrip() {
        let g = parse_group_spec("perm: (1 2)\nperm: (1 2 3)\n", DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order, 6);
        let g = parse_group_spec("# comment\npreset: dihedral(9)\n", DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order, 18);
    }

    #[test]
    fn resolve_class_rep_by_cycles_and_index() {
        let g = s3();
        let i = resolve_class_rep(&g, "(1 2)").unwrap();
        assert_eq!(g.order_of[i], 2);
        assert_eq!(resolve_class_rep(&g, "#0").unwrap(), 0);
    }

    #[test]
    fn size_cap_enforced() {
        let err = preset("S5", 30).unwrap_err();
        assert!(matches!(err, GroupError::SizeCap(30)));
    }
}
