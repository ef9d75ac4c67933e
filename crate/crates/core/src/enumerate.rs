//! Exhaustive enumeration of the regular subgroups of `Perm(G)`
//! normalized by `λ(G)`, independent of the named constructions.
//!
//! Two strategies are provided. The primary one unions whole
//! λ(G)-conjugation orbits (a normalized subgroup minus the identity is a
//! union of such orbits totalling |G|−1 elements) under a depth-first
//! search with closure pruning. The second, slower strategy closes pairs
//! of candidate permutations, extends the too-small closures by one more
//! candidate, and filters; it exists as an independence cross-check and
//! stays deliberately free of orbit reasoning.

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;

use crate::error::SubgroupError;
use crate::group::FiniteGroup;
use crate::named::{all_named, StructureName};
use crate::perm::Perm;
use crate::subgroup::RegularSubgroup;

/// Default search budget, counted in composition steps.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    OrbitDfs,
    PairClosure,
}

impl Strategy {
    pub fn token(self) -> &'static str {
        match self {
            Strategy::OrbitDfs => "orbit-dfs",
            Strategy::PairClosure => "pair-closure",
        }
    }

    pub fn from_token(tok: &str) -> Option<Self> {
        match tok {
            "orbit-dfs" => Some(Strategy::OrbitDfs),
            "pair-closure" => Some(Strategy::PairClosure),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumConfig {
    pub strategy: Strategy,
    pub budget: u64,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            strategy: Strategy::OrbitDfs,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Every permutation that can appear in a regular subgroup: the identity
/// plus all fixed-point-free permutations whose order divides |G|.
/// Returned in lexicographic image order.
pub fn candidate_elements(group: &FiniteGroup) -> Result<Vec<Perm>, SubgroupError> {
    let n = group.order();
    if n > 8 {
        return Err(SubgroupError::DegreeMismatch(n, 8));
    }
    let mut out = Vec::new();
    for image in (0..n).permutations(n) {
        let p = Perm::from_image(image).expect("permutations iterator yields bijections");
        if p.is_identity() || (p.is_fixed_point_free() && n % p.order() == 0) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Partition of `candidates` into λ(G)-conjugation orbits, each orbit
/// sorted, orbits ordered by their least member.
pub fn conjugation_orbits(candidates: &[Perm], group: &FiniteGroup) -> Vec<Vec<Perm>> {
    let lambdas: Vec<Perm> = (0..group.order()).map(|g| group.left_regular(g)).collect();
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut orbits = Vec::new();
    for p in candidates {
        if seen.contains(p) {
            continue;
        }
        let orbit: BTreeSet<Perm> = lambdas.iter().map(|l| p.conjugated_by(l)).collect();
        for q in &orbit {
            seen.insert(q.clone());
        }
        orbits.push(orbit.into_iter().collect::<Vec<_>>());
    }
    orbits.sort_by(|a, b| a[0].cmp(&b[0]));
    orbits
}

/// Enumerates all regular subgroups of `Perm(G)` normalized by `λ(G)`.
///
/// Every output is re-verified post hoc through the same checks as a
/// hand-built subgroup, independent of search pruning. When G is Q8 the
/// results are matched against the named structures.
pub fn enumerate_regular_normalized(
    group: &FiniteGroup,
    config: &EnumConfig,
) -> Result<Vec<RegularSubgroup>, SubgroupError> {
    let candidates = candidate_elements(group)?;
    let mut budget = config.budget;
    let sets = match config.strategy {
        Strategy::OrbitDfs => {
            let orbits = conjugation_orbits(&candidates, group);
            orbit_dfs(group, &orbits, &mut budget)?
        }
        Strategy::PairClosure => pair_closure_search(group, &candidates, &mut budget)?,
    };
    let mut subs = Vec::new();
    for elements in sets {
        match RegularSubgroup::from_elements(elements, group) {
            Ok(sub) => subs.push(sub),
            // Pair closure produces arbitrary order-8 subgroups; drop the
            // ones failing regularity or normalization.
            Err(SubgroupError::NotRegularNormalized(_)) => {}
            Err(e) => return Err(e),
        }
    }
    subs.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
    subs.dedup_by(|a, b| a.canonical_key() == b.canonical_key());
    if group.is_q8() {
        attach_names(&mut subs, group);
    }
    Ok(subs)
}

fn attach_names(subs: &mut [RegularSubgroup], group: &FiniteGroup) {
    let named = all_named(group).expect("group verified to be Q8");
    let by_key: HashMap<Vec<Vec<usize>>, StructureName> = named
        .into_iter()
        .map(|s| {
            let name = *s.name().expect("named structures carry names");
            (s.canonical_key(), name)
        })
        .collect();
    for sub in subs.iter_mut() {
        sub.set_name(by_key.get(&sub.canonical_key()).copied());
    }
}

fn spend(budget: &mut u64, steps: u64) -> Result<(), SubgroupError> {
    if *budget < steps {
        *budget = 0;
        return Err(SubgroupError::BudgetExceeded(0));
    }
    *budget -= steps;
    Ok(())
}

/// DFS over unions of whole conjugation orbits.
///
/// Orbits are taken in increasing index order, so any product of chosen
/// elements must land in the identity, a chosen orbit, or an orbit that
/// can still be chosen; otherwise the branch is dead.
fn orbit_dfs(
    group: &FiniteGroup,
    orbits: &[Vec<Perm>],
    budget: &mut u64,
) -> Result<Vec<Vec<Perm>>, SubgroupError> {
    let n = group.order();
    let target = n - 1;
    let usable: Vec<&Vec<Perm>> = orbits
        .iter()
        .filter(|o| !(o.len() == 1 && o[0].is_identity()) && o.len() <= target)
        .collect();
    let orbit_of: HashMap<&Perm, usize> = usable
        .iter()
        .enumerate()
        .flat_map(|(i, o)| o.iter().map(move |p| (p, i)))
        .collect();

    struct Dfs<'a> {
        group: &'a FiniteGroup,
        usable: &'a [&'a Vec<Perm>],
        orbit_of: &'a HashMap<&'a Perm, usize>,
        target: usize,
        found: Vec<Vec<Perm>>,
    }

    impl Dfs<'_> {
        fn run(
            &mut self,
            start: usize,
            union: &mut Vec<Perm>,
            budget: &mut u64,
        ) -> Result<(), SubgroupError> {
            if union.len() == self.target {
                let mut elements = union.clone();
                elements.push(Perm::identity(self.group.order()));
                // Final closure check; regularity and normalization are
                // re-verified by the caller.
                spend(budget, (elements.len() * elements.len()) as u64)?;
                let set: HashSet<&Perm> = elements.iter().collect();
                let closed = elements
                    .iter()
                    .all(|a| elements.iter().all(|b| set.contains(&a.compose(b))));
                if closed {
                    self.found.push(elements);
                }
                return Ok(());
            }
            for j in start..self.usable.len() {
                let orbit = self.usable[j];
                if union.len() + orbit.len() > self.target {
                    continue;
                }
                if self.admissible(union, orbit, j, budget)? {
                    let before = union.len();
                    union.extend(orbit.iter().cloned());
                    self.run(j + 1, union, budget)?;
                    union.truncate(before);
                }
            }
            Ok(())
        }

        /// Necessary condition for any completion: products between the
        /// new orbit and the partial union stay inside identity ∪ chosen
        /// orbits ∪ still-choosable orbits.
        fn admissible(
            &self,
            union: &[Perm],
            orbit: &[Perm],
            j: usize,
            budget: &mut u64,
        ) -> Result<bool, SubgroupError> {
            let chosen: HashSet<usize> = union
                .iter()
                .map(|p| self.orbit_of[p])
                .collect();
            let check = |a: &Perm, b: &Perm, budget: &mut u64| -> Result<bool, SubgroupError> {
                spend(budget, 1)?;
                let prod = a.compose(b);
                if prod.is_identity() {
                    return Ok(true);
                }
                match self.orbit_of.get(&prod) {
                    None => Ok(false),
                    Some(&k) => Ok(k == j || k > j || chosen.contains(&k)),
                }
            };
            for a in orbit {
                for b in orbit {
                    if !check(a, b, budget)? {
                        return Ok(false);
                    }
                }
                for b in union {
                    if !check(a, b, budget)? || !check(b, a, budget)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }

    let mut dfs = Dfs {
        group,
        usable: &usable,
        orbit_of: &orbit_of,
        target,
        found: Vec::new(),
    };
    let mut union = Vec::new();
    dfs.run(0, &mut union, budget)?;
    Ok(dfs.found)
}

/// Packs a permutation on up to 8 points into 24 bits.
fn pack(p: &Perm) -> u32 {
    p.image()
        .iter()
        .enumerate()
        .fold(0u32, |acc, (i, &y)| acc | ((y as u32) << (3 * i)))
}

/// Closure of pairs of candidates, then one-generator extensions of the
/// order-4 closures (groups of order 8 need not be 2-generated).
fn pair_closure_search(
    group: &FiniteGroup,
    candidates: &[Perm],
    budget: &mut u64,
) -> Result<Vec<Vec<Perm>>, SubgroupError> {
    let n = group.order();
    let id = Perm::identity(n);
    let id_key = pack(&id);

    // 2 MiB membership bitmask over packed permutations.
    let mut is_candidate = vec![0u64; 1 << 18];
    for p in candidates {
        let k = pack(p) as usize;
        is_candidate[k >> 6] |= 1u64 << (k & 63);
    }
    let member = |key: u32, mask: &[u64]| -> bool {
        let k = key as usize;
        mask[k >> 6] & (1u64 << (k & 63)) != 0
    };

    let arrays: Vec<[u8; 8]> = candidates
        .iter()
        .map(|p| {
            let mut a = [0u8; 8];
            for (i, &y) in p.image().iter().enumerate() {
                a[i] = y as u8;
            }
            for i in p.degree()..8 {
                a[i] = i as u8;
            }
            a
        })
        .collect();
    let compose = |a: &[u8; 8], b: &[u8; 8]| -> [u8; 8] {
        let mut c = [0u8; 8];
        for i in 0..8 {
            c[i] = a[b[i] as usize];
        }
        c
    };
    let pack_arr = |a: &[u8; 8]| -> u32 {
        let mut k = 0u32;
        for i in 0..n {
            k |= (a[i] as u32) << (3 * i);
        }
        k
    };

    // Incremental closure capped at 8 elements inside candidates ∪ {id};
    // returns the sorted packed element keys, or None when the closure
    // escapes the candidate set or exceeds order 8.
    let close = |seed: &[[u8; 8]], budget: &mut u64, mask: &[u64]| -> Result<Option<Vec<u32>>, SubgroupError> {
        let mut elems: Vec<[u8; 8]> = Vec::with_capacity(8);
        let mut keys: Vec<u32> = Vec::with_capacity(8);
        for a in seed {
            let k = pack_arr(a);
            if k != id_key && !keys.contains(&k) {
                elems.push(*a);
                keys.push(k);
            }
        }
        let mut i = 0;
        while i < elems.len() {
            let mut j = 0;
            while j < elems.len() {
                spend(budget, 1)?;
                let prod = compose(&elems[i], &elems[j]);
                let k = pack_arr(&prod);
                if k != id_key && !keys.contains(&k) {
                    if !member(k, mask) {
                        return Ok(None);
                    }
                    if elems.len() == 7 {
                        // Would exceed order 8 (7 non-identity + id).
                        return Ok(None);
                    }
                    elems.push(prod);
                    keys.push(k);
                }
                j += 1;
            }
            i += 1;
        }
        keys.push(id_key);
        keys.sort_unstable();
        Ok(Some(keys))
    };

    let mut order8: HashSet<Vec<u32>> = HashSet::new();
    let mut order4: HashSet<Vec<u32>> = HashSet::new();
    let mut arrays_by_key: HashMap<u32, [u8; 8]> = HashMap::new();
    for a in &arrays {
        arrays_by_key.insert(pack_arr(a), *a);
    }

    // Single-generator closures first. A candidate whose own powers
    // escape the candidate set kills every pair containing it, and a
    // candidate generating all 8 elements (an order-|G| cycle) can only
    // pair nontrivially with its own powers, so its subgroup is already
    // complete here. Only candidates with a valid cyclic closure of
    // order at most 4 can take part in a fruitful pair.
    let mut small: Vec<usize> = Vec::new();
    for (i, a) in arrays.iter().enumerate() {
        let Some(keys) = close(&[*a], budget, &is_candidate)? else {
            continue;
        };
        match keys.len() {
            8 => {
                order8.insert(keys);
            }
            _ => {
                if keys.len() == 4 {
                    order4.insert(keys);
                }
                small.push(i);
            }
        }
    }
    // A non-cyclic subgroup of order 8 contains no order-8 element, so
    // every generating pair for one lies inside `small`.
    for (a_pos, &i) in small.iter().enumerate() {
        for &j in &small[a_pos + 1..] {
            if let Some(keys) = close(&[arrays[i], arrays[j]], budget, &is_candidate)? {
                match keys.len() {
                    8 => {
                        order8.insert(keys);
                    }
                    4 => {
                        order4.insert(keys);
                    }
                    _ => {}
                }
            }
        }
    }
    // Groups that are not 2-generated (elementary abelian ones) are
    // reached by extending an order-4 closure with one more candidate;
    // the extra generator again cannot have order 8.
    for base in &order4 {
        let seed: Vec<[u8; 8]> = base
            .iter()
            .filter(|&&k| k != id_key)
            .map(|k| arrays_by_key[k])
            .collect();
        for &i in &small {
            let mut ext = seed.clone();
            ext.push(arrays[i]);
            if let Some(keys) = close(&ext, budget, &is_candidate)? {
                if keys.len() == 8 {
                    order8.insert(keys);
                }
            }
        }
    }

    let unpack = |key: u32| -> Perm {
        let image: Vec<usize> = (0..n).map(|i| ((key >> (3 * i)) & 7) as usize).collect();
        Perm::from_image(image).expect("packed keys come from permutations")
    };
    Ok(order8
        .into_iter()
        .map(|keys| keys.into_iter().map(unpack).collect())
        .collect())
}

/// Histogram of types over a list of subgroups, in canonical type order.
pub fn type_histogram(subs: &[RegularSubgroup]) -> Vec<(crate::subgroup::GroupType, usize)> {
    crate::subgroup::GroupType::ALL
        .iter()
        .map(|&ty| (ty, subs.iter().filter(|s| s.type_label() == ty).count()))
        .filter(|&(_, c)| c > 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::{is_normalized_by_lambda, regularity_certificate, GroupType};

    fn q8() -> FiniteGroup {
        FiniteGroup::q8()
    }

    #[test]
    fn candidate_counts_by_cycle_type() {
        let g = q8();
        let cands = candidate_elements(&g).unwrap();
        // Independent oracle: filter all 8! permutations directly.
        let all: Vec<Perm> = (0..8)
            .permutations(8)
            .map(|v| Perm::from_image(v).unwrap())
            .collect();
        assert_eq!(all.len(), 40320);
        let fpf_involutions = all
            .iter()
            .filter(|p| p.is_fixed_point_free() && p.cycle_type() == vec![2, 2, 2, 2])
            .count();
        assert_eq!(fpf_involutions, 105);
        let eight_cycles = all.iter().filter(|p| p.cycle_type() == vec![8]).count();
        assert_eq!(eight_cycles, 5040);
        assert_eq!(
            cands
                .iter()
                .filter(|p| p.cycle_type() == vec![2, 2, 2, 2])
                .count(),
            105
        );
        assert_eq!(cands.iter().filter(|p| p.cycle_type() == vec![8]).count(), 5040);
        // 105 + 1260 (4,4) + 1260 (4,2,2) + 5040 + identity.
        assert_eq!(cands.len(), 105 + 1260 + 1260 + 5040 + 1);
        // Lexicographic order by image.
        assert!(cands.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn named_structures_live_inside_candidates() {
        let g = q8();
        let cands: HashSet<Perm> = candidate_elements(&g).unwrap().into_iter().collect();
        for sub in all_named(&g).unwrap() {
            for p in sub.elements() {
                assert!(cands.contains(p));
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let g = q8();
        let cands = candidate_elements(&g).unwrap();
        let orbits = conjugation_orbits(&cands, &g);
        for orbit in &orbits {
            assert!(8 % orbit.len() == 0);
        }
        let orbit_of = |p: &Perm| -> &Vec<Perm> {
            orbits.iter().find(|o| o.contains(p)).expect("candidate orbit")
        };
        // ρ(s²) is central, so its orbit is a singleton.
        assert_eq!(orbit_of(&g.right_regular(2)).len(), 1);
        // The C-family generator pairs with its cube.
        let eta = crate::named::c_family_generator(&g, crate::named::GenSym::Sigma, crate::named::GenSym::Tau);
        let o = orbit_of(&eta);
        assert_eq!(o.len(), 2);
        assert!(o.contains(&eta.pow(3)));
        // λ(s) pairs with λ(s⁻¹): the conjugacy class.
        let o = orbit_of(&g.left_regular(1));
        assert_eq!(o.len(), 2);
        assert!(o.contains(&g.left_regular(3)));
    }

    #[test]
    fn orbit_dfs_finds_the_22_structures() {
        let g = q8();
        let subs = enumerate_regular_normalized(&g, &EnumConfig::default()).unwrap();
        assert_eq!(subs.len(), 22);
        let hist = type_histogram(&subs);
        assert_eq!(
            hist,
            vec![
                (GroupType::C2C2C2, 2),
                (GroupType::C4C2, 6),
                (GroupType::C8, 6),
                (GroupType::Q8, 2),
                (GroupType::D4, 6),
            ]
        );
        // Post-hoc verification independent of the search.
        for sub in &subs {
            assert!(regularity_certificate(sub.elements(), 8).unwrap().is_regular());
            assert!(is_normalized_by_lambda(sub.elements(), &g));
            assert!(sub.contains(&g.right_regular(2)));
            assert!(sub.name().is_some(), "every subgroup matches a named one");
        }
        // Set equality with the named constructions.
        let mut enumerated: Vec<_> = subs.iter().map(|s| s.canonical_key()).collect();
        let mut named: Vec<_> = all_named(&g).unwrap().iter().map(|s| s.canonical_key()).collect();
        enumerated.sort();
        named.sort();
        assert_eq!(enumerated, named);
    }

    #[test]
    fn orbit_dfs_is_order_independent() {
        let g = q8();
        let cands = candidate_elements(&g).unwrap();
        let orbits = conjugation_orbits(&cands, &g);
        let mut reversed = orbits.clone();
        reversed.reverse();
        let mut b1 = DEFAULT_BUDGET;
        let mut b2 = DEFAULT_BUDGET;
        let r1 = orbit_dfs(&g, &orbits, &mut b1).unwrap();
        let r2 = orbit_dfs(&g, &reversed, &mut b2).unwrap();
        let canon = |sets: Vec<Vec<Perm>>| -> Vec<Vec<Perm>> {
            let mut v: Vec<Vec<Perm>> = sets
                .into_iter()
                .map(|mut s| {
                    s.sort();
                    s
                })
                .collect();
            v.sort();
            v
        };
        assert_eq!(canon(r1), canon(r2));
    }

    #[test]
    fn pair_closure_agrees_with_orbit_dfs_within_default_budget() {
        let g = q8();
        let dfs = enumerate_regular_normalized(&g, &EnumConfig::default()).unwrap();
        let pc = enumerate_regular_normalized(
            &g,
            &EnumConfig {
                strategy: Strategy::PairClosure,
                budget: DEFAULT_BUDGET,
            },
        )
        .unwrap();
        assert_eq!(pc.len(), 22);
        let k1: Vec<_> = dfs.iter().map(|s| s.canonical_key()).collect();
        let k2: Vec<_> = pc.iter().map(|s| s.canonical_key()).collect();
        assert_eq!(k1, k2);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let g = q8();
        let config = EnumConfig {
            strategy: Strategy::OrbitDfs,
            budget: 50,
        };
        assert_eq!(
            enumerate_regular_normalized(&g, &config),
            Err(SubgroupError::BudgetExceeded(0))
        );
    }

    #[test]
    fn abelian_group_enumeration_is_sane() {
        // For an abelian G the two regular images coincide, and every
        // output still passes the full verification.
        let mut table = vec![vec![0usize; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                table[a][b] = (a + b) % 8;
            }
        }
        let c8 = FiniteGroup::new(table, (0..8).map(|i| i.to_string()).collect(), vec![1]).unwrap();
        assert!(!c8.is_q8());
        let subs = enumerate_regular_normalized(&c8, &EnumConfig::default()).unwrap();
        let rho: Vec<Perm> = (0..8).map(|x| c8.right_regular(x)).collect();
        let lambda: Vec<Perm> = (0..8).map(|x| c8.left_regular(x)).collect();
        let mut rho_sorted = rho.clone();
        rho_sorted.sort();
        let mut lambda_sorted = lambda;
        lambda_sorted.sort();
        assert_eq!(rho_sorted, lambda_sorted);
        assert!(subs
            .iter()
            .any(|s| s.canonical_key() == rho_sorted.iter().map(|p| p.image().to_vec()).collect::<Vec<_>>()));
        for sub in &subs {
            assert!(sub.name().is_none());
            assert!(is_normalized_by_lambda(sub.elements(), &c8));
        }
    }
}
