//! The named families of regular subgroups on a Q8 extension.
//!
//! Five families cover all 22 structures: `E` (elementary abelian),
//! `A` (C4xC2), `C` (cyclic of order 8), the two regular images of the
//! group itself (Q8 type), and the dihedral pairs `D[.,lambda]`,
//! `D[.,rho]`. Each is built from its published generating permutations,
//! so a failure localizes to one family construction.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::NameError;
use crate::group::FiniteGroup;
use crate::perm::Perm;
use crate::subgroup::{closure, GroupType, RegularSubgroup, DEFAULT_CLOSURE_CAP};

/// A designated generator symbol of Q8, one of s, t, st.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GenSym {
    Sigma,
    Tau,
    SigmaTau,
}

impl GenSym {
    pub const ALL: [GenSym; 3] = [GenSym::Sigma, GenSym::Tau, GenSym::SigmaTau];

    /// Element index under the fixed Q8 indexing.
    pub fn index(self) -> usize {
        match self {
            GenSym::Sigma => 1,
            GenSym::Tau => 4,
            GenSym::SigmaTau => 5,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            GenSym::Sigma => "sigma",
            GenSym::Tau => "tau",
            GenSym::SigmaTau => "sigmatau",
        }
    }

    pub fn from_token(tok: &str) -> Option<GenSym> {
        match tok {
            "sigma" => Some(GenSym::Sigma),
            "tau" => Some(GenSym::Tau),
            "sigmatau" => Some(GenSym::SigmaTau),
            _ => None,
        }
    }

    /// The remaining symbol besides `a` and `b`.
    pub fn third(a: GenSym, b: GenSym) -> GenSym {
        *GenSym::ALL
            .iter()
            .find(|&&c| c != a && c != b)
            .expect("two distinct symbols leave exactly one")
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Which of the two dihedral constructions a D-name refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DihedralSide {
    Lambda,
    Rho,
}

impl DihedralSide {
    pub fn token(self) -> &'static str {
        match self {
            DihedralSide::Lambda => "lambda",
            DihedralSide::Rho => "rho",
        }
    }
}

/// The name of one of the 22 structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StructureName {
    E { s: GenSym, t: GenSym },
    A { s: GenSym, t: GenSym },
    C { s: GenSym, t: GenSym },
    Q8Rho,
    Q8Lambda,
    D { s: GenSym, side: DihedralSide },
}

impl StructureName {
    pub fn e(s: GenSym, t: GenSym) -> Result<Self, NameError> {
        let ok = s != t && s != GenSym::SigmaTau && t != GenSym::SigmaTau;
        if !ok {
            return Err(NameError::BadPair {
                family: "E",
                s: s.token().into(),
                t: t.token().into(),
            });
        }
        Ok(StructureName::E { s, t })
    }

    pub fn a(s: GenSym, t: GenSym) -> Result<Self, NameError> {
        if s == t {
            return Err(NameError::BadPair {
                family: "A",
                s: s.token().into(),
                t: t.token().into(),
            });
        }
        Ok(StructureName::A { s, t })
    }

    pub fn c(s: GenSym, t: GenSym) -> Result<Self, NameError> {
        if s == t {
            return Err(NameError::BadPair {
                family: "C",
                s: s.token().into(),
                t: t.token().into(),
            });
        }
        Ok(StructureName::C { s, t })
    }

    pub fn d(s: GenSym, side: DihedralSide) -> Self {
        StructureName::D { s, side }
    }

    pub fn family_label(&self) -> &'static str {
        match self {
            StructureName::E { .. } => "E",
            StructureName::A { .. } => "A",
            StructureName::C { .. } => "C",
            StructureName::Q8Rho | StructureName::Q8Lambda => "Q8",
            StructureName::D { .. } => "D",
        }
    }

    /// The isomorphism type the construction must produce.
    pub fn expected_type(&self) -> GroupType {
        match self {
            StructureName::E { .. } => GroupType::C2C2C2,
            StructureName::A { .. } => GroupType::C4C2,
            StructureName::C { .. } => GroupType::C8,
            StructureName::Q8Rho | StructureName::Q8Lambda => GroupType::Q8,
            StructureName::D { .. } => GroupType::D4,
        }
    }

    /// All 22 names in the canonical order: E, A, C, Q8, D.
    pub fn all() -> Vec<StructureName> {
        let mut out = Vec::with_capacity(22);
        out.push(StructureName::e(GenSym::Sigma, GenSym::Tau).unwrap());
        out.push(StructureName::e(GenSym::Tau, GenSym::Sigma).unwrap());
        for &s in &GenSym::ALL {
            for &t in &GenSym::ALL {
                if s != t {
                    out.push(StructureName::a(s, t).unwrap());
                }
            }
        }
        for &s in &GenSym::ALL {
            for &t in &GenSym::ALL {
                if s != t {
                    out.push(StructureName::c(s, t).unwrap());
                }
            }
        }
        out.push(StructureName::Q8Rho);
        out.push(StructureName::Q8Lambda);
        for &side in &[DihedralSide::Lambda, DihedralSide::Rho] {
            for &s in &GenSym::ALL {
                out.push(StructureName::d(s, side));
            }
        }
        out
    }
}

impl fmt::Display for StructureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureName::E { s, t } => write!(f, "E[s={},t={}]", s.token(), t.token()),
            StructureName::A { s, t } => write!(f, "A[s={},t={}]", s.token(), t.token()),
            StructureName::C { s, t } => write!(f, "C[s={},t={}]", s.token(), t.token()),
            StructureName::Q8Rho => write!(f, "Q8[rho]"),
            StructureName::Q8Lambda => write!(f, "Q8[lambda]"),
            StructureName::D { s, side } => {
                write!(f, "D[s={},side={}]", s.token(), side.token())
            }
        }
    }
}

impl FromStr for StructureName {
    type Err = NameError;

    fn from_str(input: &str) -> Result<Self, NameError> {
        let bad = || NameError::Parse(input.to_string());
        let (family, rest) = input.split_once('[').ok_or_else(bad)?;
        let body = rest.strip_suffix(']').ok_or_else(bad)?;
        match family {
            "Q8" => match body {
                "rho" => Ok(StructureName::Q8Rho),
                "lambda" => Ok(StructureName::Q8Lambda),
                _ => Err(bad()),
            },
            "E" | "A" | "C" => {
                let (s_part, t_part) = body.split_once(',').ok_or_else(bad)?;
                let s = GenSym::from_token(s_part.strip_prefix("s=").ok_or_else(bad)?)
                    .ok_or_else(bad)?;
                let t = GenSym::from_token(t_part.strip_prefix("t=").ok_or_else(bad)?)
                    .ok_or_else(bad)?;
                match family {
                    "E" => StructureName::e(s, t),
                    "A" => StructureName::a(s, t),
                    _ => StructureName::c(s, t),
                }
            }
            "D" => {
                let (s_part, side_part) = body.split_once(',').ok_or_else(bad)?;
                let s = GenSym::from_token(s_part.strip_prefix("s=").ok_or_else(bad)?)
                    .ok_or_else(bad)?;
                let side = match side_part.strip_prefix("side=").ok_or_else(bad)? {
                    "lambda" => DihedralSide::Lambda,
                    "rho" => DihedralSide::Rho,
                    _ => return Err(bad()),
                };
                Ok(StructureName::d(s, side))
            }
            _ => Err(bad()),
        }
    }
}

/// `λ(g)ρ(h)`, the commuting product of left and right translations.
pub fn lambda_rho(group: &FiniteGroup, g: usize, h: usize) -> Perm {
    group.left_regular(g).compose(&group.right_regular(h))
}

/// The order-8 cycle generating `C[s,t]`: it visits the group elements
/// in the order 1, s, t, (st)⁻¹, s², s⁻¹, t⁻¹, st.
pub fn c_family_generator(group: &FiniteGroup, s: GenSym, t: GenSym) -> Perm {
    let e = group.identity();
    let si = s.index();
    let ti = t.index();
    let st = group.mul(si, ti);
    let points = vec![
        e,
        si,
        ti,
        group.inv(st),
        group.mul(si, si),
        group.inv(si),
        group.inv(ti),
        st,
    ];
    Perm::from_cycles(group.order(), &[points]).expect("distinct points form a cycle")
}

/// Generating permutations for a named structure.
fn generators_for(name: StructureName, group: &FiniteGroup) -> Vec<Perm> {
    match name {
        StructureName::E { s, t } => {
            let si = s.index();
            let ti = t.index();
            let st = group.mul(si, ti);
            vec![
                lambda_rho(group, si, ti),
                group.left_regular(group.mul(si, si)),
                lambda_rho(group, ti, st),
            ]
        }
        StructureName::A { s, t } => {
            vec![group.left_regular(s.index()), group.right_regular(t.index())]
        }
        StructureName::C { s, t } => vec![c_family_generator(group, s, t)],
        StructureName::Q8Rho => vec![group.right_regular(1), group.right_regular(4)],
        StructureName::Q8Lambda => vec![group.left_regular(1), group.left_regular(4)],
        StructureName::D { s, side } => {
            let t = GenSym::ALL.iter().copied().find(|&t| t != s).unwrap();
            d_generators(group, s, t, side)
        }
    }
}

fn d_generators(group: &FiniteGroup, s: GenSym, t: GenSym, side: DihedralSide) -> Vec<Perm> {
    let si = s.index();
    let ti = t.index();
    match side {
        DihedralSide::Lambda => vec![group.left_regular(si), lambda_rho(group, ti, si)],
        DihedralSide::Rho => vec![group.right_regular(si), lambda_rho(group, si, ti)],
    }
}

/// Builds the named structure, asserting regularity, normalization, the
/// family's isomorphism type, and (for D) independence of the auxiliary
/// generator choice.
pub fn build(name: StructureName, group: &FiniteGroup) -> Result<RegularSubgroup, NameError> {
    if !group.is_q8() {
        return Err(NameError::NotQ8);
    }
    let gens = generators_for(name, group);
    let elements = closure(&gens, DEFAULT_CLOSURE_CAP)
        .map_err(|e| NameError::Parse(format!("closure failed: {e}")))?;
    if let StructureName::D { s, side } = name {
        // The published construction uses an auxiliary t; the subgroup
        // must not depend on which of the two valid choices is taken.
        let alts: Vec<GenSym> = GenSym::ALL.iter().copied().filter(|&t| t != s).collect();
        for &t in &alts {
            let alt = closure(&d_generators(group, s, t, side), DEFAULT_CLOSURE_CAP)
                .map_err(|e| NameError::Parse(format!("closure failed: {e}")))?;
            if alt != elements {
                return Err(NameError::TypeMismatch {
                    want: "auxiliary-independent D construction".into(),
                    got: format!("D[s={},side={}] varies with t", s, side.token()),
                });
            }
        }
    }
    let sub = RegularSubgroup::from_elements(elements, group).map_err(|e| {
        NameError::TypeMismatch {
            want: name.expected_type().label().into(),
            got: format!("invalid subgroup: {e}"),
        }
    })?;
    if sub.type_label() != name.expected_type() {
        return Err(NameError::TypeMismatch {
            want: name.expected_type().label().into(),
            got: sub.type_label().label().into(),
        });
    }
    Ok(sub.with_name(name))
}

/// All 22 named structures, pairwise distinct, in canonical name order.
pub fn all_named(group: &FiniteGroup) -> Result<Vec<RegularSubgroup>, NameError> {
    if !group.is_q8() {
        return Err(NameError::NotQ8);
    }
    let mut out = Vec::with_capacity(22);
    for name in StructureName::all() {
        out.push(build(name, group)?);
    }
    Ok(out)
}

/// For a `C[s,t]` structure, the exponent k with `λ(g) η λ(g)⁻¹ = η^k`.
pub fn conjugation_exponent(
    name: StructureName,
    g: GenSym,
    group: &FiniteGroup,
) -> Result<usize, NameError> {
    let StructureName::C { s, t } = name else {
        return Err(NameError::NotCFamily);
    };
    if g != s && g != t {
        return Err(NameError::ForeignGenerator(g.token().into()));
    }
    let eta = c_family_generator(group, s, t);
    let conj = eta.conjugated_by(&group.left_regular(g.index()));
    (1..8)
        .find(|&k| eta.pow(k) == conj)
        .ok_or_else(|| NameError::Parse("conjugate is not a generator power".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::is_normalized_by_lambda;

    fn q8() -> FiniteGroup {
        FiniteGroup::q8()
    }

    #[test]
    fn c_generator_matches_index_convention() {
        let g = q8();
        let eta = c_family_generator(&g, GenSym::Sigma, GenSym::Tau);
        let expected = Perm::from_cycles(8, &[vec![0, 1, 4, 7, 2, 3, 6, 5]]).unwrap();
        assert_eq!(eta, expected);
        assert_eq!(eta.order(), 8);
    }

    #[test]
    fn eta_fourth_power_is_rho_of_central_involution() {
        let g = q8();
        for &s in &GenSym::ALL {
            for &t in &GenSym::ALL {
                if s == t {
                    continue;
                }
                let eta = c_family_generator(&g, s, t);
                assert_eq!(eta.pow(4), g.right_regular(2));
            }
        }
    }

    #[test]
    fn e_family_element_list() {
        let g = q8();
        let (s, t) = (1usize, 4usize);
        let st = g.mul(s, t);
        let sub = build(StructureName::e(GenSym::Sigma, GenSym::Tau).unwrap(), &g).unwrap();
        let mut expected = vec![
            Perm::identity(8),
            g.left_regular(g.mul(s, s)),
            lambda_rho(&g, s, t),
            lambda_rho(&g, g.inv(s), t),
            lambda_rho(&g, t, st),
            lambda_rho(&g, g.inv(t), st),
            lambda_rho(&g, st, s),
            lambda_rho(&g, g.inv(st), s),
        ];
        expected.sort();
        assert_eq!(sub.elements(), &expected[..]);
        assert!(sub.elements().iter().all(|p| p.order() <= 2));
    }

    #[test]
    fn e_pair_is_distinct_with_witness() {
        let g = q8();
        let est = build(StructureName::e(GenSym::Sigma, GenSym::Tau).unwrap(), &g).unwrap();
        let ets = build(StructureName::e(GenSym::Tau, GenSym::Sigma).unwrap(), &g).unwrap();
        assert_ne!(est.elements(), ets.elements());
        // λ(t)ρ(s) lies in E[t,s] but not in E[s,t].
        let witness = lambda_rho(&g, 4, 1);
        assert!(ets.contains(&witness));
        assert!(!est.contains(&witness));
    }

    #[test]
    fn d_family_element_list_and_dihedral_relations() {
        let g = q8();
        let s = 1usize; // sigma
        let t = 4usize; // auxiliary tau
        let st = g.mul(s, t);
        let sub = build(StructureName::d(GenSym::Sigma, DihedralSide::Lambda), &g).unwrap();
        let mut expected = vec![
            Perm::identity(8),
            g.left_regular(s),
            g.left_regular(g.mul(s, s)),
            g.left_regular(g.inv(s)),
            lambda_rho(&g, t, s),
            lambda_rho(&g, st, s),
            lambda_rho(&g, g.inv(t), s),
            lambda_rho(&g, g.inv(st), s),
        ];
        expected.sort();
        assert_eq!(sub.elements(), &expected[..]);
        // rotation has order 4, reflection order 2, and they anticommute.
        let r = g.left_regular(s);
        let f = lambda_rho(&g, t, s);
        assert_eq!(r.order(), 4);
        assert_eq!(f.order(), 2);
        assert_eq!(f.compose(&r).compose(&f), r.inverse());
    }

    #[test]
    fn q8_rho_is_the_right_regular_image() {
        let g = q8();
        let sub = build(StructureName::Q8Rho, &g).unwrap();
        let mut expected: Vec<Perm> = (0..8).map(|x| g.right_regular(x)).collect();
        expected.sort();
        assert_eq!(sub.elements(), &expected[..]);
    }

    #[test]
    fn a_family_generators_commute_and_share_square() {
        let g = q8();
        for &s in &GenSym::ALL {
            for &t in &GenSym::ALL {
                if s == t {
                    continue;
                }
                let ls = g.left_regular(s.index());
                let rt = g.right_regular(t.index());
                assert_eq!(ls.compose(&rt), rt.compose(&ls));
                assert_eq!(ls.compose(&ls), rt.compose(&rt));
                assert_eq!(ls.order(), 4);
                assert_eq!(rt.order(), 4);
            }
        }
    }

    #[test]
    fn all_named_has_22_distinct_structures_with_expected_histogram() {
        let g = q8();
        let all = all_named(&g).unwrap();
        assert_eq!(all.len(), 22);
        let mut keys: Vec<_> = all.iter().map(|s| s.canonical_key()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 22);
        let count = |ty: GroupType| all.iter().filter(|s| s.type_label() == ty).count();
        assert_eq!(count(GroupType::C2C2C2), 2);
        assert_eq!(count(GroupType::C4C2), 6);
        assert_eq!(count(GroupType::C8), 6);
        assert_eq!(count(GroupType::Q8), 2);
        assert_eq!(count(GroupType::D4), 6);
        for sub in &all {
            assert!(is_normalized_by_lambda(sub.elements(), &g));
            // Every structure contains ρ(s²).
            assert!(sub.contains(&g.right_regular(2)));
        }
    }

    #[test]
    fn conjugation_exponents_for_c_family() {
        let g = q8();
        let name = StructureName::c(GenSym::Sigma, GenSym::Tau).unwrap();
        assert_eq!(conjugation_exponent(name, GenSym::Sigma, &g).unwrap(), 3);
        assert_eq!(conjugation_exponent(name, GenSym::Tau, &g).unwrap(), 1);
        // Conjugating twice by sigma: exponent 3^2 = 9 ≡ 1 (mod 8).
        let eta = c_family_generator(&g, GenSym::Sigma, GenSym::Tau);
        let ls = g.left_regular(1);
        assert_eq!(eta.conjugated_by(&ls).conjugated_by(&ls), eta.pow(9 % 8));
        assert_eq!(
            conjugation_exponent(name, GenSym::SigmaTau, &g),
            Err(NameError::ForeignGenerator("sigmatau".into()))
        );
    }

    #[test]
    fn name_parsing_roundtrip() {
        for name in StructureName::all() {
            let s = name.to_string();
            assert_eq!(s.parse::<StructureName>().unwrap(), name);
        }
        assert!("E[s=sigma,t=sigma]".parse::<StructureName>().is_err());
        assert!("E[s=sigmatau,t=tau]".parse::<StructureName>().is_err());
        assert!("X[s=sigma,t=tau]".parse::<StructureName>().is_err());
        assert_eq!(
            "E[s=sigma,t=tau]".parse::<StructureName>().unwrap().to_string(),
            "E[s=sigma,t=tau]"
        );
    }

    #[test]
    fn build_rejects_non_q8_groups() {
        let mut table = vec![vec![0usize; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                table[a][b] = (a + b) % 4;
            }
        }
        let c4 = FiniteGroup::new(
            table,
            (0..4).map(|i| i.to_string()).collect(),
            vec![1],
        )
        .unwrap();
        assert_eq!(all_named(&c4), Err(NameError::NotQ8));
    }
}
