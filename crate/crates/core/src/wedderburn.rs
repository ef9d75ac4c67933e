//! Wedderburn decomposition of the fixed algebras over Q.
//!
//! The center of each 8-dimensional fixed algebra is split into
//! primitive idempotents by factoring minimal polynomials of center
//! elements — only through rational roots, quadratic discriminant tests,
//! and biquadratic quartic splits, since every eigenvalue in sight lives
//! in a multiquadratic extension. Blocks are then labelled: étale blocks
//! by their square-class towers, 4-dimensional noncommutative blocks by
//! locating an anticommuting pair u, v with rational squares, giving a
//! quaternion algebra classified by its ramification set.
//!
//! Every computed decomposition is compared against the family's
//! template; a mismatch is a bug signal, not a tolerated outcome.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use crate::arith::{ramification_set, Place, SquareClass};
use crate::biquad::BiquadraticModel;
use crate::error::AlgebraError;
use crate::forms::witt_embeddable;
use crate::group::FiniteGroup;
use crate::kalgebra::{structure_context, StructureAlgebra, StructureContext};
use crate::linalg::{qi, solve_in_span, QMat, Q};
use crate::named::{build, DihedralSide, GenSym, StructureName};

// ---------------------------------------------------------------------
// Polynomials over Q (dense, low-to-high coefficients)
// ---------------------------------------------------------------------

pub type QPoly = Vec<Q>;

fn poly_trim(p: &mut QPoly) {
    while p.len() > 1 && p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
}

fn poly_deg(p: &QPoly) -> usize {
    p.len() - 1
}

fn poly_is_zero(p: &QPoly) -> bool {
    p.iter().all(Zero::is_zero)
}

fn poly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

fn poly_scale(a: &QPoly, c: &Q) -> QPoly {
    let mut out: QPoly = a.iter().map(|x| x * c).collect();
    poly_trim(&mut out);
    out
}

/// Division with remainder by a monic divisor.
fn poly_divmod(a: &QPoly, d: &QPoly) -> (QPoly, QPoly) {
    assert!(d.last().map_or(false, One::is_one), "divisor must be monic");
    let mut rem = a.clone();
    poly_trim(&mut rem);
    let dd = poly_deg(d);
    if poly_deg(&rem) < dd || poly_is_zero(&rem) {
        return (vec![Q::zero()], rem);
    }
    let mut quot = vec![Q::zero(); poly_deg(&rem) - dd + 1];
    while !poly_is_zero(&rem) && poly_deg(&rem) >= dd {
        let shift = poly_deg(&rem) - dd;
        let c = rem.last().unwrap().clone();
        quot[shift] = c.clone();
        let mut sub = vec![Q::zero(); shift];
        sub.extend(d.iter().map(|x| x * &c));
        rem = poly_sub(&rem, &sub);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

fn poly_monic(a: &QPoly) -> QPoly {
    let lead = a.last().unwrap();
    poly_scale(a, &lead.recip())
}

fn poly_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !poly_is_zero(&y) {
        let (_, r) = poly_divmod(&x, &poly_monic(&y));
        // keep remainder against the monic version, scaled gcd is fine
        x = y;
        y = r;
    }
    poly_monic(&x)
}

fn poly_derivative(a: &QPoly) -> QPoly {
    if a.len() == 1 {
        return vec![Q::zero()];
    }
    let mut out: QPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * qi(i as i64))
        .collect();
    poly_trim(&mut out);
    out
}

fn poly_monic_is_squarefree(a: &QPoly) -> bool {
    let g = poly_gcd(a, &poly_derivative(a));
    poly_deg(&g) == 0
}

fn poly_eval(a: &QPoly, x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_shift(a: &QPoly, s: &Q) -> QPoly {
    // a(x + s) via repeated Horner on (x + s).
    let mut out = vec![a.last().unwrap().clone()];
    for c in a.iter().rev().skip(1) {
        // out = out * (x + s) + c
        let mut next = vec![Q::zero(); out.len() + 1];
        for (i, v) in out.iter().enumerate() {
            next[i + 1] += v;
            next[i] += v * s;
        }
        next[0] += c;
        out = next;
    }
    poly_trim(&mut out);
    out
}

fn poly_ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    // returns (g, u, v) with u·a + v·b = g, g monic
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0: QPoly = vec![Q::one()];
    let mut s1: QPoly = vec![Q::zero()];
    let mut t0: QPoly = vec![Q::zero()];
    let mut t1: QPoly = vec![Q::one()];
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    while !poly_is_zero(&r1) {
        let lead = r1.last().unwrap().clone();
        let monic_r1 = poly_scale(&r1, &lead.recip());
        let (q, r) = poly_divmod(&r0, &monic_r1);
        let q = poly_scale(&q, &lead.recip());
        let new_s = poly_sub(&s0, &poly_mul(&q, &s1));
        let new_t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    let lead = r0.last().unwrap().clone();
    let inv = lead.recip();
    (
        poly_scale(&r0, &inv),
        poly_scale(&s0, &inv),
        poly_scale(&t0, &inv),
    )
}

fn poly_x_minus(r: &Q) -> QPoly {
    vec![-r.clone(), Q::one()]
}

fn poly_to_string(p: &QPoly) -> String {
    p.iter()
        .enumerate()
        .map(|(i, c)| format!("{c}·x^{i}"))
        .collect::<Vec<_>>()
        .join(" + ")
}


// ---------------------------------------------------------------------
// Rational utilities
// ---------------------------------------------------------------------

fn big_to_i64(b: &BigInt) -> Result<i64, AlgebraError> {
    use num::ToPrimitive;
    b.to_i64().ok_or_else(|| AlgebraError::NoFamilyBasis(
        "integer overflow in square-class extraction".into(),
    ))
}

/// Square class of a nonzero rational: class of numerator × denominator.
fn class_of_rational(q: &Q) -> Result<SquareClass, AlgebraError> {
    let prod = q.numer() * q.denom();
    let n = big_to_i64(&prod)?;
    SquareClass::new(n).map_err(AlgebraError::Arith)
}

/// Exact square root of a rational, when it is a perfect square.
fn rational_sqrt(q: &Q) -> Option<Q> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.unsigned_abs();
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as i64);
            out.push((n / d) as i64);
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// All rational roots of a polynomial with rational coefficients.
fn rational_roots(p: &QPoly) -> Result<Vec<Q>, AlgebraError> {
    let mut p = p.clone();
    poly_trim(&mut p);
    if poly_deg(&p) == 0 {
        return Ok(Vec::new());
    }
    // Clear denominators to an integer polynomial.
    let mut denom_lcm = BigInt::one();
    for c in &p {
        let d = c.denom();
        let g = num::Integer::gcd(&denom_lcm, d);
        denom_lcm = &denom_lcm / &g * d;
    }
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&denom_lcm / c.denom())).collect();
    // x = 0 root?
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(Q::zero());
    }
    let a0 = ints
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero polynomial")
        .clone();
    let an = ints.last().unwrap().clone();
    let a0 = big_to_i64(&a0)?;
    let an = big_to_i64(&an)?;
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let cand = Q::new(BigInt::from(sign * num), BigInt::from(den));
                if poly_eval(&p, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Attempts a coprime factorization of a monic squarefree polynomial
/// using rational roots, quadratic discriminants, and quartic splits.
fn factor_coprime(m: &QPoly) -> Result<Option<(QPoly, QPoly)>, AlgebraError> {
    let deg = poly_deg(m);
    if deg < 2 {
        return Ok(None);
    }
    let roots = rational_roots(m)?;
    if let Some(r) = roots.first() {
        let f1 = poly_x_minus(r);
        let (f2, rem) = poly_divmod(m, &f1);
        debug_assert!(poly_is_zero(&rem));
        return Ok(Some((f1, f2)));
    }
    if deg != 4 {
        return Ok(None);
    }
    // Depress: x = y − c3/4.
    let shift = -(&m[3] / qi(4));
    let depressed = poly_shift(m, &shift);
    debug_assert!(depressed[3].is_zero());
    let qq = depressed[2].clone();
    let rr = depressed[1].clone();
    let ss = depressed[0].clone();
    let undepress = |f: &QPoly| poly_shift(f, &-shift.clone());
    if rr.is_zero() {
        // y⁴ + Q y² + S: split through the quadratic in y².
        let disc = &qq * &qq - qi(4) * &ss;
        let Some(d) = rational_sqrt(&disc) else {
            return Ok(None);
        };
        let y1 = (-&qq + &d) / qi(2);
        let y2 = (-&qq - &d) / qi(2);
        if y1 == y2 {
            return Ok(None);
        }
        let f1 = vec![-y1, Q::zero(), Q::one()];
        let f2 = vec![-y2, Q::zero(), Q::one()];
        return Ok(Some((undepress(&f1), undepress(&f2))));
    }
    // General quartic: y⁴ + Qy² + Ry + S = (y² + ty + m1)(y² − ty + m2)
    // with t² a root of the resolvent cubic T³ + 2QT² + (Q²−4S)T − R².
    let resolvent = vec![
        -(&rr * &rr),
        &qq * &qq - qi(4) * &ss,
        qi(2) * &qq,
        Q::one(),
    ];
    for t2 in rational_roots(&resolvent)? {
        if t2.is_zero() {
            continue;
        }
        let Some(t) = rational_sqrt(&t2) else {
            continue;
        };
        let m1 = ((&qq + &t2) - &rr / &t) / qi(2);
        let m2 = ((&qq + &t2) + &rr / &t) / qi(2);
        debug_assert_eq!(&m1 * &m2, ss);
        let f1 = vec![m1, t.clone(), Q::one()];
        let f2 = vec![m2, -t, Q::one()];
        return Ok(Some((undepress(&f1), undepress(&f2))));
    }
    Ok(None)
}

// ---------------------------------------------------------------------
// Element arithmetic inside a block
// ---------------------------------------------------------------------

/// Minimal polynomial of `w` in the unital subalgebra with identity `e`.
fn min_poly(alg: &StructureAlgebra, e: &[Q], w: &[Q], max_deg: usize) -> QPoly {
    let mut powers: Vec<Vec<Q>> = vec![e.to_vec()];
    loop {
        let last = powers.last().unwrap();
        let next = alg.mul_vec(last, w);
        if let Some(coeffs) = solve_in_span(&powers, &next) {
            // next = Σ coeffs_k · w^k, so m(x) = x^d − Σ coeffs_k x^k.
            let mut m = vec![Q::zero(); powers.len() + 1];
            for (k, c) in coeffs.into_iter().enumerate() {
                m[k] = -c;
            }
            m[powers.len()] = Q::one();
            debug_assert!(poly_monic_is_squarefree(&m), "étale elements have squarefree minimal polynomials");
            return m;
        }
        powers.push(next);
        assert!(
            powers.len() <= max_deg + 1,
            "minimal polynomial exceeds block dimension"
        );
    }
}

/// Evaluates a polynomial at an algebra element, with `e` as 1.
fn eval_at(alg: &StructureAlgebra, p: &QPoly, w: &[Q], e: &[Q]) -> Vec<Q> {
    let dim = e.len();
    let mut acc = vec![Q::zero(); dim];
    for c in p.iter().rev() {
        acc = alg.mul_vec(&acc, w);
        for (a, b) in acc.iter_mut().zip(e) {
            *a += c * b;
        }
    }
    acc
}

/// Basis of `e·A` for an idempotent e.
fn block_basis(alg: &StructureAlgebra, e: &[Q]) -> Vec<Vec<Q>> {
    let rows: Vec<Vec<Q>> = (0..alg.dim())
        .map(|i| alg.mul_vec(e, &alg.basis_vec(i)))
        .collect();
    let mut m = QMat::from_rows(rows);
    let pivots = m.rref();
    (0..pivots.len()).map(|r| m.row(r).to_vec()).collect()
}

fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

// ---------------------------------------------------------------------
// Splitting the center
// ---------------------------------------------------------------------

/// Splits a commutative unital subalgebra (given by its identity and a
/// spanning set) into primitive idempotents.
fn split_commutative(
    alg: &StructureAlgebra,
    unit: &[Q],
    span: &[Vec<Q>],
) -> Result<Vec<Vec<Q>>, AlgebraError> {
    let mut blocks: Vec<(Vec<Q>, Vec<Vec<Q>>)> = vec![(unit.to_vec(), span.to_vec())];
    loop {
        let mut next = Vec::new();
        let mut split_any = false;
        for (e, basis) in blocks {
            if basis.len() <= 1 {
                next.push((e, basis));
                continue;
            }
            match try_split(alg, &e, &basis)? {
                Some((e1, e2)) => {
                    split_any = true;
                    for part in [e1, e2] {
                        let part_basis: Vec<Vec<Q>> = {
                            let rows: Vec<Vec<Q>> =
                                basis.iter().map(|b| alg.mul_vec(&part, b)).collect();
                            let mut m = QMat::from_rows(rows);
                            let pivots = m.rref();
                            (0..pivots.len()).map(|r| m.row(r).to_vec()).collect()
                        };
                        next.push((part, part_basis));
                    }
                }
                None => next.push((e, basis)),
            }
        }
        blocks = next;
        if !split_any {
            break;
        }
    }
    Ok(blocks.into_iter().map(|(e, _)| e).collect())
}

/// One splitting attempt over a candidate pool drawn from the block.
fn try_split(
    alg: &StructureAlgebra,
    e: &[Q],
    basis: &[Vec<Q>],
) -> Result<Option<(Vec<Q>, Vec<Q>)>, AlgebraError> {
    let mut candidates: Vec<Vec<Q>> = basis.to_vec();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            candidates.push(alg.mul_vec(&basis[i], &basis[j]));
            if i != j {
                let sum: Vec<Q> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
                candidates.push(sum);
            }
        }
    }
    for w in &candidates {
        if is_zero_vec(w) {
            continue;
        }
        // Shortcut: w² = c·w yields the idempotent w/c directly.
        let w2 = alg.mul_vec(w, w);
        if !is_zero_vec(&w2) {
            if let Some(coeffs) = solve_in_span(&[w.to_vec()], &w2) {
                let c = &coeffs[0];
                if !c.is_zero() {
                    let cand: Vec<Q> = w.iter().map(|x| x / c).collect();
                    if cand != *e && alg.mul_vec(&cand, &cand) == cand {
                        let rest: Vec<Q> = e.iter().zip(&cand).map(|(a, b)| a - b).collect();
                        if !is_zero_vec(&rest) {
                            return Ok(Some((cand, rest)));
                        }
                    }
                }
            }
        }
        let m = min_poly(alg, e, w, basis.len());
        if poly_deg(&m) < 2 {
            continue;
        }
        if let Some((f1, f2)) = factor_coprime(&m)? {
            let (_, u1, u2) = poly_ext_gcd(&f1, &f2);
            // e1 := (u2·f2)(w) is 1 on the f1-part and 0 on the f2-part.
            let e1 = eval_at(alg, &poly_mul(&u2, &f2), w, e);
            let _ = u1;
            if !is_zero_vec(&e1) && e1 != *e {
                let e2: Vec<Q> = e.iter().zip(&e1).map(|(a, b)| a - b).collect();
                debug_assert_eq!(alg.mul_vec(&e1, &e1), e1);
                debug_assert!(is_zero_vec(&alg.mul_vec(&e1, &e2)));
                return Ok(Some((e1, e2)));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------
// Block labelling
// ---------------------------------------------------------------------

/// A Wedderburn block label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Block {
    /// Product of quadratic extensions: `classes` is the sorted list of
    /// all nontrivial square classes of the tower's class group, so the
    /// field has dimension `classes.len() + 1`; repeated `mult` times.
    Etale { classes: Vec<i64>, mult: u32 },
    /// Division quaternion algebra `(x, y | Q)` with its ramification.
    Quaternion {
        x: i64,
        y: i64,
        ramified: Vec<Place>,
    },
    /// The split case `M₂(Q)`, recorded with the pair that produced it.
    SplitQuaternion { x: i64, y: i64 },
}

/// Canonical identity of a block: étale towers by their class group and
/// multiplicity, quaternion algebras by their ramification set alone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlockKey {
    Etale(Vec<i64>, u32),
    Quaternion(Vec<Place>),
}

impl Block {
    pub fn key(&self) -> BlockKey {
        match self {
            Block::Etale { classes, mult } => BlockKey::Etale(classes.clone(), *mult),
            Block::Quaternion { ramified, .. } => BlockKey::Quaternion(ramified.clone()),
            Block::SplitQuaternion { .. } => BlockKey::Quaternion(Vec::new()),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Block::Etale { classes, mult } => (classes.len() + 1) * *mult as usize,
            Block::Quaternion { .. } | Block::SplitQuaternion { .. } => 4,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Etale { classes, mult } => {
                let base = if classes.is_empty() {
                    "Q".to_string()
                } else {
                    let gens = minimal_generators(classes);
                    let inner: Vec<String> =
                        gens.iter().map(|c| format!("sqrt({c})")).collect();
                    format!("Q({})", inner.join(","))
                };
                if *mult == 1 {
                    write!(f, "{base}")
                } else {
                    write!(f, "{base}^{mult}")
                }
            }
            Block::Quaternion { x, y, ramified } => {
                let places: Vec<String> = ramified.iter().map(|p| p.to_string()).collect();
                write!(f, "({x},{y}|Q)[ram {{{}}}]", places.join(","))
            }
            Block::SplitQuaternion { .. } => write!(f, "M2(Q)"),
        }
    }
}

/// A small generating subset of a square-class group listed by its
/// nontrivial elements.
fn minimal_generators(classes: &[i64]) -> Vec<i64> {
    let mut gens: Vec<i64> = Vec::new();
    let mut group: Vec<i64> = vec![1];
    for &c in classes {
        if group.contains(&c) {
            continue;
        }
        gens.push(c);
        let extra: Vec<i64> = group
            .iter()
            .map(|&g| SquareClass::new(g * c).expect("nonzero").rep())
            .map(|x| {
                // g and c are square-free but their product need not be
                x
            })
            .collect();
        group.extend(extra);
        group.sort_unstable();
        group.dedup();
    }
    gens
}

/// Canonical étale tower data from a list of square-class generators:
/// the sorted nontrivial classes of the generated group, and the
/// multiplicity doubling for every redundant generator.
pub fn tower_canonical(gens: &[SquareClass]) -> (Vec<i64>, u32) {
    let mut group: BTreeSet<SquareClass> = BTreeSet::new();
    group.insert(SquareClass::one());
    let mut mult = 1u32;
    for &c in gens {
        if group.contains(&c) {
            mult *= 2;
        } else {
            let extra: Vec<SquareClass> = group.iter().map(|g| g.mul(c)).collect();
            group.extend(extra);
        }
    }
    let classes = group
        .into_iter()
        .filter(|c| !c.is_one())
        .map(|c| c.rep())
        .collect();
    (classes, mult)
}

fn etale_block(gens: &[SquareClass], extra_mult: u32) -> Block {
    let (classes, mult) = tower_canonical(gens);
    Block::Etale {
        classes,
        mult: mult * extra_mult,
    }
}

fn quaternion_block(x: SquareClass, y: SquareClass) -> Block {
    let ram = ramification_set(x, y);
    if ram.is_empty() {
        Block::SplitQuaternion {
            x: x.rep(),
            y: y.rep(),
        }
    } else {
        Block::Quaternion {
            x: x.rep(),
            y: y.rep(),
            ramified: ram.into_iter().collect(),
        }
    }
}

/// A full decomposition: canonical blocks plus flags.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraDescriptor {
    pub blocks: Vec<Block>,
    pub flags: Vec<String>,
}

impl AlgebraDescriptor {
    fn canonicalize(mut blocks: Vec<Block>, flags: Vec<String>) -> Self {
        // Merge identical étale blocks into multiplicities.
        let mut merged: Vec<Block> = Vec::new();
        blocks.sort_by_key(Block::key);
        for b in blocks {
            if let Block::Etale { classes, mult } = &b {
                if let Some(Block::Etale {
                    classes: c0,
                    mult: m0,
                }) = merged.last_mut()
                {
                    if c0 == classes {
                        *m0 += mult;
                        continue;
                    }
                }
            }
            merged.push(b);
        }
        AlgebraDescriptor {
            blocks: merged,
            flags,
        }
    }

    pub fn key(&self) -> Vec<BlockKey> {
        self.blocks.iter().map(Block::key).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }

    pub fn same_algebra(&self, other: &AlgebraDescriptor) -> bool {
        self.key() == other.key()
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(" x "))?;
        if !self.flags.is_empty() {
            write!(f, "  [{}]", self.flags.join(", "))?;
        }
        Ok(())
    }
}

/// Flag attached when (a, b) admits no quaternionic extension, so the
/// fixed rings lose their field-theoretic reading (the algebra itself is
/// still computed).
pub const GATE_FLAG: &str = "no quaternionic extension exists for (a,b)";

// ---------------------------------------------------------------------
// Templates
// ---------------------------------------------------------------------

/// The published decomposition shape of each family, instantiated with
/// square-class arithmetic.
pub fn template_descriptor(
    name: StructureName,
    model: &BiquadraticModel,
) -> Result<AlgebraDescriptor, AlgebraError> {
    let minus_one = SquareClass::new(-1).expect("nonzero");
    let a = SquareClass::new(model.a()).expect("nonzero");
    let b = SquareClass::new(model.b()).expect("nonzero");
    let four_f = || {
        vec![
            etale_block(&[], 1),
            etale_block(&[], 1),
            etale_block(&[], 1),
            etale_block(&[], 1),
        ]
    };
    let blocks = match name {
        StructureName::E { .. } => {
            let mut blocks = four_f();
            blocks.push(etale_block(&[a, b], 1));
            blocks
        }
        StructureName::A { s, .. } => {
            // F⁴ × F(α, i)^d with α the s-fixed root and d = 2 when i
            // already lies in F(α).
            let c = model.root_class(s);
            let mut blocks = four_f();
            blocks.push(etale_block(&[c, minus_one], 1));
            blocks
        }
        StructureName::C { t, .. } => {
            // F² × F(βi)^{d₁} × F(r·i, βi)^{d₁d₂} with β the t-fixed
            // root and r² = 2.
            let c = model.root_class(t).neg();
            let minus_two = SquareClass::new(-2).expect("nonzero");
            // The degree symbols d₁ and d₂ fall out of the tower
            // reduction: a redundant generator halves the field degree
            // and doubles the multiplicity.
            vec![
                etale_block(&[], 1),
                etale_block(&[], 1),
                etale_block(&[c], 1),
                etale_block(&[minus_two, c], 1),
            ]
        }
        StructureName::Q8Rho => {
            let mut blocks = four_f();
            blocks.push(quaternion_block(minus_one, minus_one));
            blocks
        }
        StructureName::Q8Lambda => {
            let mut blocks = four_f();
            blocks.push(quaternion_block(a.neg(), b.neg()));
            blocks
        }
        StructureName::D { s, side } => {
            let mut blocks = four_f();
            match side {
                DihedralSide::Lambda => {
                    // (−a_s, b_t) for either auxiliary t; both must agree.
                    let others: Vec<GenSym> = GenSym::ALL
                        .iter()
                        .copied()
                        .filter(|&t| t != s)
                        .collect();
                    let q1 = quaternion_block(model.root_class(s).neg(), model.root_class(others[0]));
                    let q2 = quaternion_block(model.root_class(s).neg(), model.root_class(others[1]));
                    if q1.key() != q2.key() {
                        return Err(AlgebraError::BlockMismatch {
                            computed: format!("{q1}"),
                            template: format!("{q2}"),
                        });
                    }
                    blocks.push(q1);
                }
                DihedralSide::Rho => {
                    blocks.push(quaternion_block(minus_one, model.root_class(s)));
                }
            }
            blocks
        }
    };
    let flags = gate_flags(model)?;
    Ok(AlgebraDescriptor::canonicalize(blocks, flags))
}

fn gate_flags(model: &BiquadraticModel) -> Result<Vec<String>, AlgebraError> {
    let a = SquareClass::new(model.a()).expect("nonzero");
    let b = SquareClass::new(model.b()).expect("nonzero");
    let ok = witt_embeddable(a, b).map_err(AlgebraError::Arith)?;
    Ok(if ok { Vec::new() } else { vec![GATE_FLAG.to_string()] })
}

// ---------------------------------------------------------------------
// Computed decomposition
// ---------------------------------------------------------------------

/// Labels one block of the fixed algebra.
fn label_block(
    alg: &StructureAlgebra,
    e: &[Q],
) -> Result<Block, AlgebraError> {
    let basis = block_basis(alg, e);
    let dim = basis.len();
    let commutative = basis.iter().enumerate().all(|(i, x)| {
        basis[i..]
            .iter()
            .all(|y| alg.mul_vec(x, y) == alg.mul_vec(y, x))
    });
    match (dim, commutative) {
        (1, _) => Ok(etale_block(&[], 1)),
        (2, true) => {
            let c = quadratic_class(alg, e, &basis)?;
            Ok(etale_block(&[c], 1))
        }
        (4, true) => {
            let (c1, c2) = quartic_field_classes(alg, e, &basis)?;
            Ok(etale_block(&[c1, c2], 1))
        }
        (4, false) => {
            let (x, y) = quaternion_pair(alg, e, &basis)?;
            Ok(quaternion_block(x, y))
        }
        _ => Err(AlgebraError::StuckBlock(dim)),
    }
}

/// The square class defining a 2-dimensional field block.
fn quadratic_class(
    alg: &StructureAlgebra,
    e: &[Q],
    basis: &[Vec<Q>],
) -> Result<SquareClass, AlgebraError> {
    for w in basis {
        let m = min_poly(alg, e, w, 2);
        if poly_deg(&m) == 2 {
            // x² + px + q: the class of the discriminant.
            let disc = &m[1] * &m[1] - qi(4) * &m[0];
            let c = class_of_rational(&disc)?;
            if c.is_one() {
                return Err(AlgebraError::StuckBlock(2));
            }
            return Ok(c);
        }
    }
    Err(AlgebraError::StuckBlock(2))
}

/// The two square classes generating a 4-dimensional field block
/// (necessarily a biquadratic field here).
fn quartic_field_classes(
    alg: &StructureAlgebra,
    e: &[Q],
    basis: &[Vec<Q>],
) -> Result<(SquareClass, SquareClass), AlgebraError> {
    let mut quadratic_classes: BTreeSet<SquareClass> = BTreeSet::new();
    let mut candidates: Vec<Vec<Q>> = basis.to_vec();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            candidates.push(basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect());
        }
    }
    for w in &candidates {
        let m = min_poly(alg, e, w, 4);
        match poly_deg(&m) {
            2 => {
                let disc = &m[1] * &m[1] - qi(4) * &m[0];
                let c = class_of_rational(&disc)?;
                if !c.is_one() {
                    quadratic_classes.insert(c);
                }
            }
            4 => {
                // Depress and read off the subfield classes.
                let shift = -(&m[3] / qi(4));
                let d = poly_shift(&m, &shift);
                let qq = d[2].clone();
                let rr = d[1].clone();
                let ss = d[0].clone();
                if rr.is_zero() {
                    // Classes −Q ± 2s₀ with s₀ = √S (S is a rational
                    // square exactly when the quartic is biquadratic).
                    let Some(s0) = rational_sqrt(&ss) else {
                        continue;
                    };
                    let c1 = class_of_rational(&(-&qq + qi(2) * &s0))?;
                    let c2 = class_of_rational(&(-&qq - qi(2) * &s0))?;
                    return Ok((c1, c2));
                }
                // Resolvent roots are 4c²·(subfield class); all three
                // are rational for a biquadratic quartic.
                let resolvent = vec![
                    -(&rr * &rr),
                    &qq * &qq - qi(4) * &ss,
                    qi(2) * &qq,
                    Q::one(),
                ];
                let roots = rational_roots(&resolvent)?;
                if roots.len() == 3 {
                    let c1 = class_of_rational(&roots[0])?;
                    let c2 = class_of_rational(&roots[1])?;
                    let c3 = class_of_rational(&roots[2])?;
                    if c1.mul(c2) != c3 {
                        return Err(AlgebraError::NoFamilyBasis(format!(
                            "inconsistent quartic subfield classes from {}",
                            poly_to_string(&m)
                        )));
                    }
                    return Ok((c1, c2));
                }
            }
            _ => {}
        }
    }
    // Fall back to two independent quadratic classes.
    let classes: Vec<SquareClass> = quadratic_classes.into_iter().collect();
    for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            if classes[i].mul(classes[j]) != SquareClass::one() {
                return Ok((classes[i], classes[j]));
            }
        }
    }
    Err(AlgebraError::StuckBlock(4))
}

/// Finds anticommuting u, v with nonzero rational squares in a
/// 4-dimensional noncommutative block.
fn quaternion_pair(
    alg: &StructureAlgebra,
    e: &[Q],
    basis: &[Vec<Q>],
) -> Result<(SquareClass, SquareClass), AlgebraError> {
    let dim_parent = e.len();
    // Reduced-trace-zero subspace: tr(L_w) = 0 on the block.
    let trace_of = |w: &[Q]| -> Q {
        let mut tr = Q::zero();
        for b in basis {
            let img = alg.mul_vec(w, b);
            let coords = solve_in_span(basis, &img).expect("block is closed");
            let self_coords = solve_in_span(basis, b).expect("basis vector");
            for (c, s) in coords.iter().zip(&self_coords) {
                tr += c * s;
            }
        }
        tr
    };
    // Solve tr(Σ x_i b_i) = 0 as one linear condition on coordinates.
    let traces: Vec<Q> = basis.iter().map(|b| trace_of(b)).collect();
    let mut rows = vec![traces.clone()];
    let _ = &mut rows;
    let kernel = QMat::from_rows(vec![traces]).kernel_basis();
    let pure: Vec<Vec<Q>> = kernel
        .into_iter()
        .map(|coords| {
            let mut v = vec![Q::zero(); dim_parent];
            for (c, b) in coords.iter().zip(basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            v
        })
        .collect();
    if pure.len() != 3 {
        return Err(AlgebraError::StuckBlock(4));
    }
    let square_scalar = |w: &[Q]| -> Option<Q> {
        let w2 = alg.mul_vec(w, w);
        let coeffs = solve_in_span(&[e.to_vec()], &w2)?;
        Some(coeffs[0].clone())
    };
    // Candidate pure vectors with nonzero square.
    let mut pure_candidates: Vec<Vec<Q>> = pure.clone();
    for i in 0..pure.len() {
        for j in (i + 1)..pure.len() {
            pure_candidates.push(pure[i].iter().zip(&pure[j]).map(|(a, b)| a + b).collect());
            pure_candidates.push(pure[i].iter().zip(&pure[j]).map(|(a, b)| a - b).collect());
        }
    }
    let u = pure_candidates
        .iter()
        .find(|w| square_scalar(w).map_or(false, |c| !c.is_zero()))
        .cloned()
        .ok_or(AlgebraError::StuckBlock(4))?;
    let x = square_scalar(&u).unwrap();
    // Anticommutant of u inside the pure space: u·w + w·u = 0.
    let mut rows = Vec::new();
    for l in 0..dim_parent {
        let mut row = Vec::new();
        for p in &pure {
            let anti = alg.mul_vec(&u, p);
            let anti2 = alg.mul_vec(p, &u);
            row.push(&anti[l] + &anti2[l]);
        }
        rows.push(row);
    }
    let w_coords = QMat::from_rows(rows).kernel_basis();
    let mut w_vectors: Vec<Vec<Q>> = w_coords
        .iter()
        .map(|coords| {
            let mut v = vec![Q::zero(); dim_parent];
            for (c, p) in coords.iter().zip(&pure) {
                for (x, y) in v.iter_mut().zip(p) {
                    *x += c * y;
                }
            }
            v
        })
        .collect();
    let extra: Vec<Vec<Q>> = {
        let mut out = Vec::new();
        for i in 0..w_vectors.len() {
            for j in (i + 1)..w_vectors.len() {
                out.push(
                    w_vectors[i]
                        .iter()
                        .zip(&w_vectors[j])
                        .map(|(a, b)| a + b)
                        .collect(),
                );
                out.push(
                    w_vectors[i]
                        .iter()
                        .zip(&w_vectors[j])
                        .map(|(a, b)| a - b)
                        .collect(),
                );
            }
        }
        out
    };
    w_vectors.extend(extra);
    let v = w_vectors
        .iter()
        .find(|w| !is_zero_vec(w) && square_scalar(w).map_or(false, |c| !c.is_zero()))
        .cloned()
        .ok_or(AlgebraError::StuckBlock(4))?;
    let y = square_scalar(&v).unwrap();
    debug_assert!(is_zero_vec(
        &alg.mul_vec(&u, &v)
            .iter()
            .zip(&alg.mul_vec(&v, &u))
            .map(|(a, b)| a + b)
            .collect::<Vec<Q>>()
    ));
    Ok((class_of_rational(&x)?, class_of_rational(&y)?))
}

/// Outcome of the full decomposition of one structure's fixed algebra.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub name: StructureName,
    pub descriptor: AlgebraDescriptor,
    pub template: AlgebraDescriptor,
    pub embeddable: bool,
}

/// Computes the Wedderburn decomposition of `K[N]^G` from scratch —
/// central idempotents, block labelling, ramification — and checks it
/// against the family template.
pub fn decompose(
    name: StructureName,
    model: &BiquadraticModel,
    group: &FiniteGroup,
) -> Result<Decomposition, AlgebraError> {
    let sub = build(name, group)
        .map_err(|e| AlgebraError::NoFamilyBasis(format!("cannot build {name}: {e}")))?;
    let ctx = structure_context(sub, model, group)?;
    decompose_in_context(name, &ctx, model)
}

/// As [`decompose`], reusing an existing algebra context.
pub fn decompose_in_context(
    name: StructureName,
    ctx: &StructureContext,
    model: &BiquadraticModel,
) -> Result<Decomposition, AlgebraError> {
    let fixed = &ctx.fixed.algebra;
    let center = fixed.center();
    let idempotents = split_commutative(fixed, fixed.unit(), &center)?;
    let mut blocks = Vec::new();
    for e in &idempotents {
        blocks.push(label_block(fixed, e)?);
    }
    let flags = gate_flags(model)?;
    let descriptor = AlgebraDescriptor::canonicalize(blocks, flags.clone());
    if descriptor.total_dim() != fixed.dim() {
        return Err(AlgebraError::StuckBlock(descriptor.total_dim()));
    }
    let template = template_descriptor(name, model)?;
    if !descriptor.same_algebra(&template) {
        return Err(AlgebraError::BlockMismatch {
            computed: descriptor.to_string(),
            template: template.to_string(),
        });
    }
    Ok(Decomposition {
        name,
        descriptor,
        template,
        embeddable: flags.is_empty(),
    })
}

/// Partition of the 22 structures by F-algebra isomorphism, i.e. by
/// canonical descriptor equality.
#[derive(Clone, Debug)]
pub struct FAlgebraClasses {
    pub decompositions: Vec<Decomposition>,
    /// Indices into `decompositions`, grouped and ordered by first member.
    pub classes: Vec<Vec<usize>>,
}

pub fn f_algebra_classes(
    model: &BiquadraticModel,
    group: &FiniteGroup,
) -> Result<FAlgebraClasses, AlgebraError> {
    let mut decompositions = Vec::new();
    for name in StructureName::all() {
        decompositions.push(decompose(name, model, group)?);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, d) in decompositions.iter().enumerate() {
        if let Some(class) = classes
            .iter_mut()
            .find(|c| decompositions[c[0]].descriptor.same_algebra(&d.descriptor))
        {
            class.push(i);
        } else {
            classes.push(vec![i]);
        }
    }
    Ok(FAlgebraClasses {
        decompositions,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q8() -> FiniteGroup {
        FiniteGroup::q8()
    }

    fn model(a: i64, b: i64) -> BiquadraticModel {
        BiquadraticModel::new(a, b).unwrap()
    }

    #[test]
    fn poly_basics() {
        // (x−1)(x+2) = x² + x − 2
        let p = poly_mul(&poly_x_minus(&qi(1)), &vec![qi(2), qi(1)]);
        assert_eq!(p, vec![qi(-2), qi(1), qi(1)]);
        let (q, r) = poly_divmod(&p, &poly_x_minus(&qi(1)));
        assert_eq!(r, vec![Q::zero()]);
        assert_eq!(q, vec![qi(2), qi(1)]);
        let roots = rational_roots(&p).unwrap();
        assert_eq!(roots, vec![qi(-2), qi(1)]);
    }

    #[test]
    fn ext_gcd_of_coprime_factors() {
        let f1 = poly_x_minus(&qi(3));
        let f2 = vec![qi(1), qi(0), qi(1)]; // x² + 1
        let (g, u, v) = poly_ext_gcd(&f1, &f2);
        assert_eq!(g, vec![qi(1)]);
        let check = poly_sub(&poly_mul(&u, &f1), &poly_scale(&poly_mul(&v, &f2), &qi(-1)));
        assert_eq!(check, vec![qi(1)]);
    }

    #[test]
    fn quartic_factorizations() {
        // (x²−2)(x²−3) = x⁴ −5x² + 6: biquadratic split.
        let m = poly_mul(&vec![qi(-2), qi(0), qi(1)], &vec![qi(-3), qi(0), qi(1)]);
        let (f1, f2) = factor_coprime(&m).unwrap().unwrap();
        assert_eq!(poly_mul(&f1, &f2), m);
        // (x²+x+1)(x²−x+2) has R ≠ 0 after depression.
        let m = poly_mul(&vec![qi(1), qi(1), qi(1)], &vec![qi(2), qi(-1), qi(1)]);
        let (f1, f2) = factor_coprime(&m).unwrap().unwrap();
        assert_eq!(poly_mul(&f1, &f2), m);
        // Irreducible biquadratic x⁴ − 10x² + 1 must not split.
        let m = vec![qi(1), qi(0), qi(-10), qi(0), qi(1)];
        assert!(factor_coprime(&m).unwrap().is_none());
    }

    #[test]
    fn tower_canonical_forms() {
        let sc = |n: i64| SquareClass::new(n).unwrap();
        assert_eq!(tower_canonical(&[sc(11), sc(2)]), (vec![2, 11, 22], 1));
        // Q(√2,√3) = Q(√2,√6): same class group.
        assert_eq!(tower_canonical(&[sc(2), sc(3)]), tower_canonical(&[sc(2), sc(6)]));
        // Redundant generator doubles the multiplicity.
        assert_eq!(tower_canonical(&[sc(-2), sc(-2)]), (vec![-2], 2));
        assert_eq!(tower_canonical(&[]), (Vec::new(), 1));
    }

    #[test]
    fn templates_at_the_first_instance() {
        let m = model(11, 2);
        let g = q8();
        let _ = &g;
        let e = template_descriptor(
            StructureName::e(GenSym::Sigma, GenSym::Tau).unwrap(),
            &m,
        )
        .unwrap();
        assert_eq!(e.to_string(), "Q^4 x Q(sqrt(2),sqrt(11))");
        let rho = template_descriptor(StructureName::Q8Rho, &m).unwrap();
        let lambda = template_descriptor(StructureName::Q8Lambda, &m).unwrap();
        assert!(rho.same_algebra(&lambda));
        assert_eq!(rho.total_dim(), 8);
        // C with t = tau: Q² × Q(√−2) × Q(√−2)².
        let c = template_descriptor(
            StructureName::c(GenSym::Sigma, GenSym::Tau).unwrap(),
            &m,
        )
        .unwrap();
        let keys = c.key();
        assert_eq!(
            keys,
            vec![
                BlockKey::Etale(vec![], 2),
                BlockKey::Etale(vec![-2], 3),
            ]
        );
    }

    #[test]
    fn decompose_matches_templates_for_all_structures() {
        let g = q8();
        for (a, b) in [(11i64, 2i64), (11, 6)] {
            let m = model(a, b);
            for name in StructureName::all() {
                let d = decompose(name, &m, &g).unwrap();
                assert!(d.embeddable);
                assert_eq!(d.descriptor.total_dim(), 8);
            }
        }
    }
}
