//! Subgroups of `Perm(G)`: closure, regularity and normalization tests,
//! and classification of order-8 groups by element orders.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SubgroupError;
use crate::group::FiniteGroup;
use crate::named::StructureName;
use crate::perm::Perm;

/// Default cap on closure size; anything past this signals a runaway
/// closure during enumeration pruning.
pub const DEFAULT_CLOSURE_CAP: usize = 64;

/// Isomorphism type of a group of order 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupType {
    C2C2C2,
    C4C2,
    C8,
    Q8,
    D4,
}

impl GroupType {
    pub const ALL: [GroupType; 5] = [
        GroupType::C2C2C2,
        GroupType::C4C2,
        GroupType::C8,
        GroupType::Q8,
        GroupType::D4,
    ];

    /// Canonical name, used in JSON output.
    pub fn label(self) -> &'static str {
        match self {
            GroupType::C2C2C2 => "C2xC2xC2",
            GroupType::C4C2 => "C4xC2",
            GroupType::C8 => "C8",
            GroupType::Q8 => "Q8",
            GroupType::D4 => "D4",
        }
    }

    /// Compact name used in histogram summaries.
    pub fn short_label(self) -> &'static str {
        match self {
            GroupType::C2C2C2 => "C2^3",
            GroupType::C4C2 => "C4xC2",
            GroupType::C8 => "C8",
            GroupType::Q8 => "Q8",
            GroupType::D4 => "D4",
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Composition-closure of a set of permutations, with a size cap.
///
/// The result contains the identity and is closed under composition and
/// (since every element has finite order) under inversion. Returned in
/// canonical sorted order.
pub fn closure(gens: &[Perm], cap: usize) -> Result<Vec<Perm>, SubgroupError> {
    let mut budget = u64::MAX;
    closure_budgeted(gens, cap, &mut budget)
}

/// As [`closure`], but decrements `budget` once per composition and fails
/// with [`SubgroupError::BudgetExceeded`] when it hits zero.
pub fn closure_budgeted(
    gens: &[Perm],
    cap: usize,
    budget: &mut u64,
) -> Result<Vec<Perm>, SubgroupError> {
    if gens.is_empty() {
        return Err(SubgroupError::EmptyGenerators);
    }
    let n = gens[0].degree();
    let mut elements: BTreeSet<Perm> = BTreeSet::new();
    elements.insert(Perm::identity(n));
    let mut frontier: Vec<Perm> = vec![Perm::identity(n)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            if *budget == 0 {
                return Err(SubgroupError::BudgetExceeded(0));
            }
            *budget -= 1;
            let y = g.compose(&x);
            if !elements.contains(&y) {
                if elements.len() + 1 > cap {
                    return Err(SubgroupError::SizeCapExceeded(cap));
                }
                elements.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    Ok(elements.into_iter().collect())
}

fn check_closed(elements: &[Perm]) -> Result<(), SubgroupError> {
    let set: HashSet<&Perm> = elements.iter().collect();
    for a in elements {
        for b in elements {
            if !set.contains(&a.compose(b)) {
                return Err(SubgroupError::NotClosed);
            }
        }
    }
    Ok(())
}

/// Outcome of the regularity test. All three properties are computed;
/// any two of them imply the third, which `consistent_with_tri_property`
/// cross-checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub full_order: bool,
    pub transitive: bool,
    pub trivial_stabilizers: bool,
}

impl RegularityCertificate {
    pub fn is_regular(&self) -> bool {
        self.full_order && self.transitive && self.trivial_stabilizers
    }

    /// True unless exactly two of the three properties hold, which the
    /// tri-property rules out for genuine subgroups.
    pub fn consistent_with_tri_property(&self) -> bool {
        let held = [self.full_order, self.transitive, self.trivial_stabilizers]
            .iter()
            .filter(|&&b| b)
            .count();
        held != 2
    }
}

/// Tests regularity of a closed subgroup of `Perm` acting on `n` points.
pub fn regularity_certificate(
    elements: &[Perm],
    n: usize,
) -> Result<RegularityCertificate, SubgroupError> {
    check_closed(elements)?;
    let full_order = elements.len() == n;
    let orbit_of_zero: HashSet<usize> = elements.iter().map(|p| p.apply(0)).collect();
    let transitive = orbit_of_zero.len() == n;
    let trivial_stabilizers = (0..n).all(|x| {
        elements
            .iter()
            .filter(|p| p.apply(x) == x)
            .all(|p| p.is_identity())
    });
    Ok(RegularityCertificate {
        full_order,
        transitive,
        trivial_stabilizers,
    })
}

pub fn is_regular(elements: &[Perm], n: usize) -> Result<bool, SubgroupError> {
    Ok(regularity_certificate(elements, n)?.is_regular())
}

/// Whether `λ(g) N λ(g)⁻¹ = N` for every g in G. Checking the designated
/// generators suffices because conjugation by λ is a homomorphism in g.
pub fn is_normalized_by_lambda(elements: &[Perm], group: &FiniteGroup) -> bool {
    let set: HashSet<&Perm> = elements.iter().collect();
    let gens: Vec<usize> = if group.generators().is_empty() {
        (0..group.order()).collect()
    } else {
        group.generators().to_vec()
    };
    gens.iter().all(|&g| {
        let lg = group.left_regular(g);
        elements.iter().all(|p| set.contains(&p.conjugated_by(&lg)))
    })
}

/// Classifies a group of order 8 by its element-order multiset.
pub fn classify_type(elements: &[Perm]) -> Result<GroupType, SubgroupError> {
    if elements.len() != 8 {
        return Err(SubgroupError::WrongOrderForType(elements.len()));
    }
    check_closed(elements)?;
    let mut of_order = [0usize; 9];
    for p in elements {
        of_order[p.order()] += 1;
    }
    let abelian = elements
        .iter()
        .all(|a| elements.iter().all(|b| a.compose(b) == b.compose(a)));
    match (of_order[2], of_order[4], of_order[8], abelian) {
        (7, 0, 0, true) => Ok(GroupType::C2C2C2),
        (3, 4, 0, true) => Ok(GroupType::C4C2),
        (1, 2, 4, true) => Ok(GroupType::C8),
        (5, 2, 0, false) => Ok(GroupType::D4),
        (1, 6, 0, false) => Ok(GroupType::Q8),
        _ => Err(SubgroupError::UnrecognisedType),
    }
}

/// A regular subgroup of `Perm(G)` normalized by `λ(G)`: the underlying
/// object of one Hopf-Galois structure on a G-extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSubgroup {
    elements: Vec<Perm>,
    generators: Vec<Perm>,
    type_label: GroupType,
    name: Option<StructureName>,
}

impl RegularSubgroup {
    /// Validates every defining property at construction: closure,
    /// identity membership, regularity, normalization by `λ(G)`.
    pub fn from_elements(
        elements: Vec<Perm>,
        group: &FiniteGroup,
    ) -> Result<Self, SubgroupError> {
        let n = group.order();
        if elements.iter().any(|p| p.degree() != n) {
            return Err(SubgroupError::DegreeMismatch(
                elements.first().map_or(0, |p| p.degree()),
                n,
            ));
        }
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        if !elements.iter().any(|p| p.is_identity()) {
            return Err(SubgroupError::NotRegularNormalized("identity"));
        }
        let cert = regularity_certificate(&elements, n)?;
        if !cert.is_regular() {
            return Err(SubgroupError::NotRegularNormalized("regularity"));
        }
        if !is_normalized_by_lambda(&elements, group) {
            return Err(SubgroupError::NotRegularNormalized("normalization"));
        }
        let type_label = classify_type(&elements)?;
        let generators = greedy_generators(&elements);
        Ok(RegularSubgroup {
            elements,
            generators,
            type_label,
            name: None,
        })
    }

    pub fn with_name(mut self, name: StructureName) -> Self {
        self.name = Some(name);
        self
    }

    pub fn set_name(&mut self, name: Option<StructureName>) {
        self.name = name;
    }

    /// Canonically sorted elements.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn type_label(&self) -> GroupType {
        self.type_label
    }

    pub fn name(&self) -> Option<&StructureName> {
        self.name.as_ref()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn position(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Canonical key: the sorted list of image arrays.
    pub fn canonical_key(&self) -> Vec<Vec<usize>> {
        self.elements.iter().map(|p| p.image().to_vec()).collect()
    }
}

/// A small generating set found greedily over the canonical element order.
fn greedy_generators(elements: &[Perm]) -> Vec<Perm> {
    let n = elements[0].degree();
    let mut gens: Vec<Perm> = Vec::new();
    let mut generated: Vec<Perm> = vec![Perm::identity(n)];
    for p in elements {
        if generated.contains(p) {
            continue;
        }
        gens.push(p.clone());
        generated = closure(&gens, elements.len()).expect("closure within a known subgroup");
        if generated.len() == elements.len() {
            break;
        }
    }
    gens
}
