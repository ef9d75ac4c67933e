//! Explicit fixed-algebra bases for each structure family, the exact
//! verification of their multiplication tables, and the dual-group orbit
//! decomposition used for the exponent-2 family.
//!
//! Each family has a published basis of `K[N]^G` built from character
//! idempotents and twisted group-algebra monomials. Reconstructing those
//! bases and recomputing every product pins the algebra structure down
//! entry by entry in exact arithmetic.

use num::{One, Zero};

use crate::biquad::{BiquadraticModel, K_LABELS};
use crate::error::AlgebraError;
use crate::group::FiniteGroup;
use crate::kalgebra::{kn_index, StructureContext};
use crate::linalg::{qi, qr, span_rank, Q};
use crate::named::{lambda_rho, DihedralSide, GenSym, StructureName};
use crate::perm::Perm;
use crate::subgroup::RegularSubgroup;

/// A published basis of the fixed algebra, with each vector assigned to
/// its template block.
#[derive(Clone, Debug)]
pub struct FamilyBasis {
    pub name: StructureName,
    pub labels: Vec<String>,
    /// Vectors in K[N] coordinates.
    pub vectors: Vec<Vec<Q>>,
    /// Template block index of each vector.
    pub block_of: Vec<usize>,
}

/// Outcome of recomputing a family's multiplication tables.
#[derive(Clone, Debug, Default)]
pub struct TableReport {
    pub family: String,
    pub entries_checked: usize,
    pub mismatches: Vec<String>,
}

impl TableReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn zero_vec(ctx: &StructureContext) -> Vec<Q> {
    vec![Q::zero(); ctx.algebra.dim()]
}

fn add_term(v: &mut [Q], sub: &RegularSubgroup, k: usize, eta: &Perm, c: Q) {
    let pos = sub.position(eta).expect("element of the subgroup");
    v[kn_index(sub, k, pos)] += c;
}

fn scale(v: &[Q], c: &Q) -> Vec<Q> {
    v.iter().map(|x| x * c).collect()
}

/// The idempotent ½(1 − z) cutting out the 4-dimensional block, where z
/// is the shared central involution ρ(s²) of every structure.
pub fn central_block_idempotent(ctx: &StructureContext, group: &FiniteGroup) -> Vec<Q> {
    let mut v = zero_vec(ctx);
    add_term(&mut v, &ctx.sub, 0, &Perm::identity(group.order()), qr(1, 2));
    add_term(&mut v, &ctx.sub, 0, &group.right_regular(2), qr(-1, 2));
    v
}

/// Idempotents of the four one-dimensional characters, defined through
/// the conjugacy classes {1}, {z}, A, B, C with the sign rows
/// (1,1,1,1,1), (1,1,1,−1,−1), (1,1,−1,1,−1), (1,1,−1,−1,1).
fn linear_character_idempotents(
    ctx: &StructureContext,
    classes: &[Vec<Perm>; 3],
    group: &FiniteGroup,
) -> Vec<Vec<Q>> {
    const ROWS: [[i64; 5]; 4] = [
        [1, 1, 1, 1, 1],
        [1, 1, 1, -1, -1],
        [1, 1, -1, 1, -1],
        [1, 1, -1, -1, 1],
    ];
    let z = group.right_regular(2);
    let class_of = |eta: &Perm| -> usize {
        if eta.is_identity() {
            0
        } else if *eta == z {
            1
        } else if classes[0].contains(eta) {
            2
        } else if classes[1].contains(eta) {
            3
        } else {
            debug_assert!(classes[2].contains(eta));
            4
        }
    };
    ROWS.iter()
        .map(|row| {
            let mut v = zero_vec(ctx);
            for eta in ctx.sub.elements() {
                add_term(&mut v, &ctx.sub, 0, eta, qr(row[class_of(eta)], 8));
            }
            v
        })
        .collect()
}

/// `c·𝔢·η` for a K-monomial c: the twisted monomial ½ c (η − zη).
fn twisted_monomial(
    ctx: &StructureContext,
    group: &FiniteGroup,
    k: usize,
    eta: &Perm,
    sign: i64,
) -> Vec<Q> {
    let z = group.right_regular(2);
    let mut v = zero_vec(ctx);
    add_term(&mut v, &ctx.sub, k, eta, qr(sign, 2));
    add_term(&mut v, &ctx.sub, k, &z.compose(eta), qr(-sign, 2));
    v
}

/// A character of an exponent-2 subgroup, stored as one sign per element
/// in canonical element order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualCharacter {
    signs: Vec<i64>,
}

impl DualCharacter {
    pub fn value(&self, pos: usize) -> i64 {
        self.signs[pos]
    }

    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    pub fn mul(&self, other: &DualCharacter) -> DualCharacter {
        DualCharacter {
            signs: self
                .signs
                .iter()
                .zip(&other.signs)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

/// Orbits of the dual group under `(ᵍχ)(η) = χ(ᵍ⁻¹η)`, with stabilizers
/// of each orbit's first representative.
#[derive(Clone, Debug)]
pub struct DualOrbits {
    pub orbits: Vec<Vec<DualCharacter>>,
    pub stabilizers: Vec<Vec<usize>>,
}

/// All characters of an exponent-2 subgroup.
pub fn characters_exponent_two(sub: &RegularSubgroup) -> Result<Vec<DualCharacter>, AlgebraError> {
    if sub.elements().iter().any(|p| p.order() > 2) {
        return Err(AlgebraError::NotExponentTwo);
    }
    let gens = sub.generators();
    // Express each element over the generating set (F2 coordinates).
    let mut words: Vec<Option<Vec<usize>>> = vec![None; sub.order()];
    let n = gens[0].degree();
    let mut frontier = vec![(Perm::identity(n), Vec::new())];
    while let Some((p, word)) = frontier.pop() {
        let pos = sub.position(&p).expect("closure stays inside");
        if words[pos].is_some() {
            continue;
        }
        words[pos] = Some(word.clone());
        for (k, g) in gens.iter().enumerate() {
            let mut w = word.clone();
            w.push(k);
            frontier.push((g.compose(&p), w));
        }
    }
    let mut out = Vec::new();
    for assign in 0..(1u32 << gens.len()) {
        let signs: Vec<i64> = (0..sub.order())
            .map(|pos| {
                words[pos]
                    .as_ref()
                    .expect("generators generate")
                    .iter()
                    .map(|&k| if assign >> k & 1 == 1 { -1 } else { 1 })
                    .product()
            })
            .collect();
        out.push(DualCharacter { signs });
    }
    out.sort();
    out.dedup();
    debug_assert_eq!(out.len(), sub.order());
    Ok(out)
}

/// Dual-group orbit decomposition for an exponent-2 subgroup.
pub fn dual_orbit_decomposition(
    sub: &RegularSubgroup,
    group: &FiniteGroup,
) -> Result<DualOrbits, AlgebraError> {
    let chars = characters_exponent_two(sub)?;
    let act = |g: usize, chi: &DualCharacter| -> DualCharacter {
        let l_inv = group.left_regular(group.inv(g));
        let signs = sub
            .elements()
            .iter()
            .map(|eta| {
                let moved = eta.conjugated_by(&l_inv);
                chi.value(sub.position(&moved).expect("normalized action"))
            })
            .collect();
        DualCharacter { signs }
    };
    let mut remaining: Vec<DualCharacter> = chars;
    let mut orbits = Vec::new();
    let mut stabilizers = Vec::new();
    while let Some(rep) = remaining.first().cloned() {
        let mut orbit: Vec<DualCharacter> =
            (0..group.order()).map(|g| act(g, &rep)).collect();
        orbit.sort();
        orbit.dedup();
        let stab: Vec<usize> = (0..group.order())
            .filter(|&g| act(g, &rep) == rep)
            .collect();
        remaining.retain(|c| !orbit.contains(c));
        orbits.push(orbit);
        stabilizers.push(stab);
    }
    Ok(DualOrbits { orbits, stabilizers })
}

/// Idempotent of one character of an exponent-2 subgroup.
fn character_idempotent(ctx: &StructureContext, chi: &DualCharacter) -> Vec<Q> {
    let mut v = zero_vec(ctx);
    for (pos, eta) in ctx.sub.elements().iter().enumerate() {
        add_term(&mut v, &ctx.sub, 0, eta, qr(chi.value(pos), 8));
    }
    v
}

/// The published basis of `K[N]^G` for the given family.
pub fn family_fixed_basis(
    name: StructureName,
    ctx: &StructureContext,
    model: &BiquadraticModel,
    group: &FiniteGroup,
) -> Result<FamilyBasis, AlgebraError> {
    match name {
        StructureName::E { .. } => e_basis(name, ctx, model, group),
        StructureName::A { s, t } => a_basis(name, s, t, ctx, model, group),
        StructureName::C { s, t } => c_basis(name, s, t, ctx, model, group),
        StructureName::Q8Rho | StructureName::Q8Lambda | StructureName::D { .. } => {
            quaternionic_basis(name, ctx, model, group)
        }
    }
}

fn e_basis(
    name: StructureName,
    ctx: &StructureContext,
    model: &BiquadraticModel,
    group: &FiniteGroup,
) -> Result<FamilyBasis, AlgebraError> {
    let dual = dual_orbit_decomposition(&ctx.sub, group)?;
    let mut labels = Vec::new();
    let mut vectors = Vec::new();
    let mut block_of = Vec::new();
    let mut big_orbit: Option<usize> = None;
    let mut block = 0;
    for (i, orbit) in dual.orbits.iter().enumerate() {
        if orbit.len() == 1 {
            labels.push(format!("e_chi{block}"));
            vectors.push(character_idempotent(ctx, &orbit[0]));
            block_of.push(block);
            block += 1;
        } else if big_orbit.replace(i).is_some() {
            return Err(AlgebraError::NoFamilyBasis(
                "expected a single non-singleton dual orbit".into(),
            ));
        }
    }
    let Some(big) = big_orbit else {
        return Err(AlgebraError::NoFamilyBasis("no big dual orbit".into()));
    };
    if vectors.len() != 4 || dual.orbits[big].len() != 4 {
        return Err(AlgebraError::NoFamilyBasis(
            "dual orbit sizes are not 1+1+1+1+4".into(),
        ));
    }
    // Rational idempotent attached to each character in the big orbit,
    // indexed by the coset representative moving the orbit rep there.
    let rep = dual.orbits[big][0].clone();
    let coset_reps = [0usize, 1, 4, 5];
    let act_char = |g: usize, chi: &DualCharacter| -> DualCharacter {
        let l_inv = group.left_regular(group.inv(g));
        let signs = ctx
            .sub
            .elements()
            .iter()
            .map(|eta| chi.value(ctx.sub.position(&eta.conjugated_by(&l_inv)).unwrap()))
            .collect();
        DualCharacter { signs }
    };
    for k in 0..4usize {
        // v(c) = Σ_g sign(g, c) · c · e_{ᵍχ} over the coset reps.
        let mut v = zero_vec(ctx);
        for &g in &coset_reps {
            let chi_g = act_char(g, &rep);
            let idem = character_idempotent(ctx, &chi_g);
            let sign = model.galois_sign(group, g, k);
            // move the rational idempotent into the monomial-k block
            for (pos, _) in ctx.sub.elements().iter().enumerate() {
                let src = kn_index(&ctx.sub, 0, pos);
                let dst = kn_index(&ctx.sub, k, pos);
                v[dst] += &idem[src] * qi(sign);
            }
        }
        labels.push(format!("v({})", K_LABELS[k]));
        vectors.push(v);
        block_of.push(4);
    }
    Ok(FamilyBasis {
        name,
        labels,
        vectors,
        block_of,
    })
}

fn a_basis(
    name: StructureName,
    s: GenSym,
    t: GenSym,
    ctx: &StructureContext,
    model: &BiquadraticModel,
    group: &FiniteGroup,
) -> Result<FamilyBasis, AlgebraError> {
    let ls = group.left_regular(s.index());
    let rt = group.right_regular(t.index());
    // The four rational characters, by their signs on (λ(s), ρ(t)).
    let char_signs = [(1i64, 1i64), (-1, -1), (1, -1), (-1, 1)];
    let mut labels = Vec::new();
    let mut vectors = Vec::new();
    let mut block_of = Vec::new();
    for (k, (cs, ct)) in char_signs.iter().enumerate() {
        let mut v = zero_vec(ctx);
        for i in 0..4u32 {
            for j in 0..2u32 {
                let eta = ls.pow(i as usize).compose(&rt.pow(j as usize));
                let sign = cs.pow(i) * ct.pow(j);
                add_term(&mut v, &ctx.sub, 0, &eta, qr(sign, 8));
            }
        }
        labels.push(format!("a{k}"));
        vectors.push(v);
        block_of.push(k);
    }
    let root = model.root_fixed_by(s);
    let lsrt = lambda_rho(group, s.index(), t.index());
    // a4,0 = 𝔢, a4,1 = −ξ𝔢λ(s)ρ(t), a4,2 = 𝔢ρ(t), a4,3 = ξ𝔢λ(s).
    let e_frak = central_block_idempotent(ctx, group);
    let v41 = twisted_monomial(ctx, group, root, &lsrt, -1);
    let v42 = twisted_monomial(ctx, group, 0, &rt, 1);
    let v43 = twisted_monomial(ctx, group, root, &ls, 1);
    labels.extend([
        "a4,0".to_string(),
        "a4,1".to_string(),
        "a4,2".to_string(),
        "a4,3".to_string(),
    ]);
    vectors.extend([e_frak, v41, v42, v43]);
    block_of.extend([4, 4, 4, 4]);
    Ok(FamilyBasis {
        name,
        labels,
        vectors,
        block_of,
    })
}

fn c_basis(
    name: StructureName,
    _s: GenSym,
    t: GenSym,
    ctx: &StructureContext,
    model: &BiquadraticModel,
    group: &FiniteGroup,
) -> Result<FamilyBasis, AlgebraError> {
    let StructureName::C { s, .. } = name else {
        unreachable!()
    };
    let eta = crate::named::c_family_generator(group, s, t);
    let zeta = model.root_fixed_by(t);
    let mut labels = Vec::new();
    let mut vectors = Vec::new();
    let mut block_of = Vec::new();
    // a0, a1: full and alternating averages over the cyclic group.
    for (k, alt) in [(0usize, false), (1, true)] {
        let mut v = zero_vec(ctx);
        for p in 0..8usize {
            let sign = if alt && p % 2 == 1 { -1 } else { 1 };
            add_term(&mut v, &ctx.sub, 0, &eta.pow(p), qr(sign, 8));
        }
        labels.push(format!("a{k}"));
        vectors.push(v);
        block_of.push(k);
    }
    // a2,0 = ¼(1 − η² + η⁴ − η⁶), a2,1 = ζ·a2,0·η.
    let mut a20 = zero_vec(ctx);
    for (p, sign) in [(0usize, 1i64), (2, -1), (4, 1), (6, -1)] {
        add_term(&mut a20, &ctx.sub, 0, &eta.pow(p), qr(sign, 4));
    }
    let mut a21 = zero_vec(ctx);
    for (p, sign) in [(1usize, 1i64), (3, -1), (5, 1), (7, -1)] {
        add_term(&mut a21, &ctx.sub, zeta, &eta.pow(p), qr(sign, 4));
    }
    labels.extend(["a2,0".to_string(), "a2,1".to_string()]);
    vectors.extend([a20, a21]);
    block_of.extend([2, 2]);
    // a3,0 = 𝔢 = ½(1 − η⁴), a3,1 = ζ𝔢η², a3,2 = 𝔢(η³ + η),
    // a3,3 = ζ𝔢(η³ − η).
    let a30 = central_block_idempotent(ctx, group);
    let a31 = twisted_monomial(ctx, group, zeta, &eta.pow(2), 1);
    let mut a32 = twisted_monomial(ctx, group, 0, &eta.pow(3), 1);
    let add2 = twisted_monomial(ctx, group, 0, &eta, 1);
    for (x, y) in a32.iter_mut().zip(&add2) {
        *x += y;
    }
    let mut a33 = twisted_monomial(ctx, group, zeta, &eta.pow(3), 1);
    let sub2 = twisted_monomial(ctx, group, zeta, &eta, -1);
    for (x, y) in a33.iter_mut().zip(&sub2) {
        *x += y;
    }
    labels.extend([
        "a3,0".to_string(),
        "a3,1".to_string(),
        "a3,2".to_string(),
        "a3,3".to_string(),
    ]);
    vectors.extend([a30, a31, a32, a33]);
    block_of.extend([3, 3, 3, 3]);
    Ok(FamilyBasis {
        name,
        labels,
        vectors,
        block_of,
    })
}

/// Shared construction for the Q8-type and dihedral families: four
/// character idempotents plus a quaternionic block.
fn quaternionic_basis(
    name: StructureName,
    ctx: &StructureContext,
    model: &BiquadraticModel,
    group: &FiniteGroup,
) -> Result<FamilyBasis, AlgebraError> {
    let data = quaternionic_block_data(name, ctx, model, group);
    let idems = linear_character_idempotents(ctx, &data.classes, group);
    let mut labels: Vec<String> = (0..4).map(|k| format!("e{k}")).collect();
    let mut vectors = idems;
    let mut block_of = vec![0, 1, 2, 3];
    labels.extend([
        "e".to_string(),
        data.u_label,
        data.v_label,
        data.w_label,
    ]);
    vectors.extend([
        central_block_idempotent(ctx, group),
        data.u,
        data.v,
        data.w,
    ]);
    block_of.extend([4, 4, 4, 4]);
    Ok(FamilyBasis {
        name,
        labels,
        vectors,
        block_of,
    })
}

struct QuaternionicData {
    classes: [Vec<Perm>; 3],
    u: Vec<Q>,
    v: Vec<Q>,
    w: Vec<Q>,
    u_label: String,
    v_label: String,
    w_label: String,
    /// Expected squares: u² = x·𝔢, v² = y·𝔢.
    x: i64,
    y: i64,
}

fn quaternionic_block_data(
    name: StructureName,
    ctx: &StructureContext,
    model: &BiquadraticModel,
    group: &FiniteGroup,
) -> QuaternionicData {
    // Each non-central conjugacy class is {a, z·a} with z the shared
    // central involution (for rotations z·a = a⁻¹, for reflections the
    // two reflections of the same axis pair).
    let z = group.right_regular(2);
    let pair = move |a: &Perm| -> Vec<Perm> { vec![a.clone(), z.compose(a)] };
    match name {
        StructureName::Q8Rho => {
            let (si, ti) = (1usize, 4usize);
            let st = group.mul(si, ti);
            QuaternionicData {
                classes: [
                    pair(&group.right_regular(si)),
                    pair(&group.right_regular(ti)),
                    pair(&group.right_regular(st)),
                ],
                u: twisted_monomial(ctx, group, 0, &group.right_regular(si), 1),
                v: twisted_monomial(ctx, group, 0, &group.right_regular(ti), 1),
                w: twisted_monomial(ctx, group, 0, &group.right_regular(st), 1),
                u_label: "e·rho(s)".into(),
                v_label: "e·rho(t)".into(),
                w_label: "e·rho(st)".into(),
                x: -1,
                y: -1,
            }
        }
        StructureName::Q8Lambda => {
            let (si, ti) = (1usize, 4usize);
            let st = group.mul(si, ti);
            QuaternionicData {
                classes: [
                    pair(&group.left_regular(si)),
                    pair(&group.left_regular(ti)),
                    pair(&group.left_regular(st)),
                ],
                u: twisted_monomial(ctx, group, 1, &group.left_regular(si), 1),
                v: twisted_monomial(ctx, group, 2, &group.left_regular(ti), 1),
                w: twisted_monomial(ctx, group, 3, &group.left_regular(st), 1),
                u_label: "alpha·e·lambda(s)".into(),
                v_label: "beta·e·lambda(t)".into(),
                w_label: "alphabeta·e·lambda(st)".into(),
                x: -model.a(),
                y: -model.b(),
            }
        }
        StructureName::D { s, side } => {
            let t = GenSym::ALL.iter().copied().find(|&t| t != s).unwrap();
            let (si, ti) = (s.index(), t.index());
            let st = group.mul(si, ti);
            let root_s = model.root_fixed_by(s);
            let root_t = model.root_fixed_by(t);
            match side {
                DihedralSide::Lambda => {
                    let (prod_k, prod_scalar) = model.mul_basis(root_s, root_t);
                    let w_raw = twisted_monomial(
                        ctx,
                        group,
                        prod_k,
                        &lambda_rho(group, st, si),
                        1,
                    );
                    QuaternionicData {
                        classes: [
                            pair(&group.left_regular(si)),
                            pair(&lambda_rho(group, ti, si)),
                            pair(&lambda_rho(group, st, si)),
                        ],
                        u: twisted_monomial(ctx, group, root_s, &group.left_regular(si), 1),
                        v: twisted_monomial(ctx, group, root_t, &lambda_rho(group, ti, si), 1),
                        w: scale(&w_raw, &qi(prod_scalar)),
                        u_label: "xi·e·lambda(s)".into(),
                        v_label: "zeta·e·lambda(t)rho(s)".into(),
                        w_label: "xi·zeta·e·lambda(st)rho(s)".into(),
                        x: -model.root_square(s),
                        y: model.root_square(t),
                    }
                }
                DihedralSide::Rho => QuaternionicData {
                    classes: [
                        pair(&group.right_regular(si)),
                        pair(&lambda_rho(group, si, ti)),
                        pair(&lambda_rho(group, si, st)),
                    ],
                    u: twisted_monomial(ctx, group, 0, &group.right_regular(si), 1),
                    v: twisted_monomial(ctx, group, root_s, &lambda_rho(group, si, ti), 1),
                    w: twisted_monomial(ctx, group, root_s, &lambda_rho(group, si, st), 1),
                    u_label: "e·rho(s)".into(),
                    v_label: "xi·e·lambda(s)rho(t)".into(),
                    w_label: "xi·e·lambda(s)rho(st)".into(),
                    x: -1,
                    y: model.root_square(s),
                },
            }
        }
        _ => unreachable!("quaternionic data only for Q8 and D families"),
    }
}

/// Checks that every basis vector is G-fixed, that the 8 vectors are
/// independent, and that they span exactly the computed fixed subspace.
pub fn verify_family_basis(
    fb: &FamilyBasis,
    ctx: &StructureContext,
) -> Result<(), AlgebraError> {
    for v in &fb.vectors {
        for g in 0..ctx.action.group_order() {
            if ctx.action.apply(g, v) != *v {
                return Err(AlgebraError::NoFamilyBasis(format!(
                    "{}: vector not fixed by g={g}",
                    fb.name
                )));
            }
        }
    }
    if span_rank(&fb.vectors) != fb.vectors.len() {
        return Err(AlgebraError::NoFamilyBasis(format!(
            "{}: vectors are dependent",
            fb.name
        )));
    }
    if !crate::linalg::same_span(&fb.vectors, &ctx.fixed.basis) {
        return Err(AlgebraError::NoFamilyBasis(format!(
            "{}: span differs from the fixed subspace",
            fb.name
        )));
    }
    Ok(())
}

/// Recomputes the family's multiplication tables and quaternion
/// relations, comparing every entry exactly.
pub fn verify_family_tables(
    name: StructureName,
    ctx: &StructureContext,
    model: &BiquadraticModel,
    group: &FiniteGroup,
) -> Result<TableReport, AlgebraError> {
    let fb = family_fixed_basis(name, ctx, model, group)?;
    verify_family_basis(&fb, ctx)?;
    let mut report = TableReport {
        family: name.to_string(),
        ..TableReport::default()
    };
    let mul = |i: usize, j: usize| ctx.algebra.mul_vec(&fb.vectors[i], &fb.vectors[j]);
    let check = |desc: String, got: Vec<Q>, expect: Vec<Q>, report: &mut TableReport| {
        report.entries_checked += 1;
        if got != expect {
            report.mismatches.push(desc);
        }
    };
    let lincomb = |terms: &[(usize, Q)]| -> Vec<Q> {
        let mut out = vec![Q::zero(); ctx.algebra.dim()];
        for (idx, c) in terms {
            for (o, x) in out.iter_mut().zip(&fb.vectors[*idx]) {
                *o += c * x;
            }
        }
        out
    };

    match name {
        StructureName::A { s, .. } => {
            // 4x4 block table over (a4,0 .. a4,3) at indices 4..8.
            let a = qi(model.root_square(s));
            let table: [[Vec<(usize, Q)>; 4]; 4] = [
                [vec![(4, qi(1))], vec![(5, qi(1))], vec![(6, qi(1))], vec![(7, qi(1))]],
                [
                    vec![(5, qi(1))],
                    vec![(4, a.clone())],
                    vec![(7, qi(1))],
                    vec![(6, a.clone())],
                ],
                [
                    vec![(6, qi(1))],
                    vec![(7, qi(1))],
                    vec![(4, qi(-1))],
                    vec![(5, qi(-1))],
                ],
                [
                    vec![(7, qi(1))],
                    vec![(6, a.clone())],
                    vec![(5, qi(-1))],
                    vec![(4, -a.clone())],
                ],
            ];
            for (i, row) in table.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    check(
                        format!("a4,{i}·a4,{j}"),
                        mul(4 + i, 4 + j),
                        lincomb(cell),
                        &mut report,
                    );
                }
            }
            orthogonality_checks(&fb, ctx, &mut report);
        }
        StructureName::C { t, .. } => {
            let b = qi(model.root_square(t));
            // 2x2 block: indices 2, 3 are a2,0 and a2,1.
            let table2: [[Vec<(usize, Q)>; 2]; 2] = [
                [vec![(2, qi(1))], vec![(3, qi(1))]],
                [vec![(3, qi(1))], vec![(2, -b.clone())]],
            ];
            for (i, row) in table2.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    check(
                        format!("a2,{i}·a2,{j}"),
                        mul(2 + i, 2 + j),
                        lincomb(cell),
                        &mut report,
                    );
                }
            }
            // 4x4 block: indices 4..8 are a3,0 .. a3,3.
            let table4: [[Vec<(usize, Q)>; 4]; 4] = [
                [vec![(4, qi(1))], vec![(5, qi(1))], vec![(6, qi(1))], vec![(7, qi(1))]],
                [
                    vec![(5, qi(1))],
                    vec![(4, -b.clone())],
                    vec![(7, qi(1))],
                    vec![(6, -b.clone())],
                ],
                [
                    vec![(6, qi(1))],
                    vec![(7, qi(1))],
                    vec![(4, qi(-2))],
                    vec![(5, qi(-2))],
                ],
                [
                    vec![(7, qi(1))],
                    vec![(6, -b.clone())],
                    vec![(5, qi(-2))],
                    vec![(4, qi(2) * b.clone())],
                ],
            ];
            for (i, row) in table4.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    check(
                        format!("a3,{i}·a3,{j}"),
                        mul(4 + i, 4 + j),
                        lincomb(cell),
                        &mut report,
                    );
                }
            }
            orthogonality_checks(&fb, ctx, &mut report);
        }
        StructureName::E { .. } => {
            // v(c)·v(c') = (scalar)·v(cc') for the four monomials.
            for i in 0..4usize {
                for j in 0..4usize {
                    let (k, scalar) = model.mul_basis(i, j);
                    check(
                        format!("v({})·v({})", K_LABELS[i], K_LABELS[j]),
                        mul(4 + i, 4 + j),
                        lincomb(&[(4 + k, qi(scalar))]),
                        &mut report,
                    );
                }
            }
            orthogonality_checks(&fb, ctx, &mut report);
        }
        StructureName::Q8Rho | StructureName::Q8Lambda | StructureName::D { .. } => {
            let data = quaternionic_block_data(name, ctx, model, group);
            // u² = x·𝔢, v² = y·𝔢, uv = w, vu = −w, w² = −xy·𝔢.
            check(
                "u·u".into(),
                mul(5, 5),
                lincomb(&[(4, qi(data.x))]),
                &mut report,
            );
            check(
                "v·v".into(),
                mul(6, 6),
                lincomb(&[(4, qi(data.y))]),
                &mut report,
            );
            check("u·v".into(), mul(5, 6), lincomb(&[(7, qi(1))]), &mut report);
            check(
                "v·u".into(),
                mul(6, 5),
                lincomb(&[(7, qi(-1))]),
                &mut report,
            );
            check(
                "w·w".into(),
                mul(7, 7),
                lincomb(&[(4, qi(-data.x * data.y))]),
                &mut report,
            );
            orthogonality_checks(&fb, ctx, &mut report);
        }
    }
    Ok(report)
}

/// Common idempotent/orthogonality laws: the one-dimensional idempotents
/// multiply by δ, vectors of distinct blocks multiply to zero, and the
/// block units sum to 1.
fn orthogonality_checks(fb: &FamilyBasis, ctx: &StructureContext, report: &mut TableReport) {
    let dim = ctx.algebra.dim();
    let zero = vec![Q::zero(); dim];
    for i in 0..fb.vectors.len() {
        for j in 0..fb.vectors.len() {
            if fb.block_of[i] != fb.block_of[j] {
                report.entries_checked += 1;
                let prod = ctx.algebra.mul_vec(&fb.vectors[i], &fb.vectors[j]);
                if prod != zero {
                    report
                        .mismatches
                        .push(format!("{}·{} should vanish", fb.labels[i], fb.labels[j]));
                }
            }
        }
    }
    // Idempotence of the singleton-block vectors.
    for i in 0..fb.vectors.len() {
        let singleton = fb.block_of.iter().filter(|&&b| b == fb.block_of[i]).count() == 1;
        if singleton {
            report.entries_checked += 1;
            let sq = ctx.algebra.mul_vec(&fb.vectors[i], &fb.vectors[i]);
            if sq != fb.vectors[i] {
                report
                    .mismatches
                    .push(format!("{} should be idempotent", fb.labels[i]));
            }
        }
    }
    // Block units sum to the algebra unit: the singleton idempotents
    // plus the first vector of each multi-dimensional block.
    let mut sum = vec![Q::zero(); dim];
    let mut seen_blocks = Vec::new();
    for i in 0..fb.vectors.len() {
        let b = fb.block_of[i];
        if seen_blocks.contains(&b) {
            continue;
        }
        seen_blocks.push(b);
        for (s, x) in sum.iter_mut().zip(&fb.vectors[i]) {
            *s += x;
        }
    }
    report.entries_checked += 1;
    if sum != ctx.algebra.unit().to_vec() {
        report
            .mismatches
            .push("block unit sum differs from 1".into());
    }
    let _ = Q::one();
}
