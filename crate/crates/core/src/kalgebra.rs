//! Finite-dimensional Q-algebras from explicit structure constants, the
//! group algebra K[N] with its semilinear G-action, and the exact
//! computation of the fixed subalgebra K[N]^G.

use num::{One, Zero};

use crate::biquad::{BiquadraticModel, K_DIM, K_LABELS};
use crate::error::AlgebraError;
use crate::group::FiniteGroup;
use crate::linalg::{qi, solve_in_span, QMat, Q};
use crate::perm::Perm;
use crate::subgroup::RegularSubgroup;

/// Sparse vector: (coordinate, value) pairs with distinct coordinates.
pub type SparseVec = Vec<(usize, Q)>;

/// An algebra over Q given by a basis and structure constants, with a
/// designated unit. Associativity and the unit law are checked at
/// construction on every basis triple.
#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    dim: usize,
    labels: Vec<String>,
    unit: Vec<Q>,
    /// products[i][j] = e_i · e_j as a sparse vector.
    products: Vec<Vec<SparseVec>>,
}

impl StructureAlgebra {
    pub fn new(
        labels: Vec<String>,
        unit: Vec<Q>,
        products: Vec<Vec<SparseVec>>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        assert_eq!(unit.len(), dim);
        assert!(products.len() == dim && products.iter().all(|row| row.len() == dim));
        let alg = StructureAlgebra {
            dim,
            labels,
            unit,
            products,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim {
            let ei = self.basis_vec(i);
            if self.mul_vec(&self.unit, &ei) != ei || self.mul_vec(&ei, &self.unit) != ei {
                return Err(AlgebraError::BadUnit);
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.products[i][j].clone();
                for k in 0..self.dim {
                    // (e_i e_j) e_k vs e_i (e_j e_k), all sparse.
                    let left = self.mul_sparse_basis(&ij, k);
                    let right = self.mul_basis_sparse(i, &self.products[j][k]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }

    fn mul_sparse_basis(&self, v: &SparseVec, k: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (j, c) in v {
            for (l, d) in &self.products[*j][k] {
                out[*l] += c * d;
            }
        }
        out
    }

    fn mul_basis_sparse(&self, i: usize, v: &SparseVec) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (j, c) in v {
            for (l, d) in &self.products[i][*j] {
                out[*l] += c * d;
            }
        }
        out
    }

    /// Product of two coordinate vectors.
    pub fn mul_vec(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                for (l, d) in &self.products[i][j] {
                    out[*l] += &c * d;
                }
            }
        }
        out
    }

    /// Basis of the center `{ z : z·e_i = e_i·z for all i }`.
    pub fn center(&self) -> Vec<Vec<Q>> {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for l in 0..self.dim {
                // Row of the condition (z·e_i − e_i·z)_l = 0 over z_j.
                let mut row = vec![Q::zero(); self.dim];
                for j in 0..self.dim {
                    for (m, c) in &self.products[j][i] {
                        if *m == l {
                            row[j] += c;
                        }
                    }
                    for (m, c) in &self.products[i][j] {
                        if *m == l {
                            row[j] -= c;
                        }
                    }
                }
                rows.push(row);
            }
        }
        QMat::from_rows(rows).kernel_basis()
    }
}

/// A linear map per group element, each stored as the images of the
/// basis vectors (sparse).
#[derive(Clone, Debug)]
pub struct GAction {
    maps: Vec<Vec<SparseVec>>,
}

impl GAction {
    pub fn group_order(&self) -> usize {
        self.maps.len()
    }

    pub fn apply(&self, g: usize, v: &[Q]) -> Vec<Q> {
        let map = &self.maps[g];
        let mut out = vec![Q::zero(); v.len()];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, d) in &map[i] {
                out[*j] += c * d;
            }
        }
        out
    }

    /// Checks that every map is an algebra automorphism fixing the unit.
    pub fn verify_automorphisms(&self, alg: &StructureAlgebra) -> Result<(), AlgebraError> {
        for g in 0..self.maps.len() {
            if self.apply(g, alg.unit()) != alg.unit() {
                return Err(AlgebraError::ActionNotAutomorphism(g));
            }
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let ei = alg.basis_vec(i);
                    let ej = alg.basis_vec(j);
                    let lhs = self.apply(g, &alg.mul_vec(&ei, &ej));
                    let rhs = alg.mul_vec(&self.apply(g, &ei), &self.apply(g, &ej));
                    if lhs != rhs {
                        return Err(AlgebraError::ActionNotAutomorphism(g));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Coordinate of the K[N] basis element `monomial · η`.
pub fn kn_index(sub: &RegularSubgroup, k_idx: usize, eta_pos: usize) -> usize {
    k_idx * sub.order() + eta_pos
}

/// The group algebra K[N] as a 32-dimensional Q-algebra together with
/// the G-action: g acts on coefficients through the Galois signs and on
/// N by conjugation with λ(g).
pub fn group_algebra(
    sub: &RegularSubgroup,
    model: &BiquadraticModel,
    group: &FiniteGroup,
) -> Result<(StructureAlgebra, GAction), AlgebraError> {
    let n = sub.order();
    let dim = K_DIM * n;
    let pos_of = |p: &Perm| -> Option<usize> { sub.position(p) };

    let mut labels = Vec::with_capacity(dim);
    for k in 0..K_DIM {
        for eta in sub.elements() {
            let eta_str = if eta.is_identity() {
                "1".to_string()
            } else {
                eta.to_string()
            };
            labels.push(if k == 0 {
                eta_str
            } else {
                format!("{}·{}", K_LABELS[k], eta_str)
            });
        }
    }

    let id_pos = sub
        .position(&Perm::identity(group.order()))
        .expect("subgroups contain the identity");
    let mut unit = vec![Q::zero(); dim];
    unit[kn_index(sub, 0, id_pos)] = Q::one();

    let mut products = vec![vec![SparseVec::new(); dim]; dim];
    for k1 in 0..K_DIM {
        for (p1, eta1) in sub.elements().iter().enumerate() {
            for k2 in 0..K_DIM {
                for (p2, eta2) in sub.elements().iter().enumerate() {
                    let (k3, scalar) = model.mul_basis(k1, k2);
                    let prod = eta1.compose(eta2);
                    let p3 = pos_of(&prod).expect("subgroup is closed");
                    products[kn_index(sub, k1, p1)][kn_index(sub, k2, p2)] =
                        vec![(kn_index(sub, k3, p3), qi(scalar))];
                }
            }
        }
    }
    let algebra = StructureAlgebra::new(labels, unit, products)?;

    let mut maps = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let lg = group.left_regular(g);
        let mut map = vec![SparseVec::new(); dim];
        for k in 0..K_DIM {
            let sign = model.galois_sign(group, g, k);
            for (p, eta) in sub.elements().iter().enumerate() {
                let conj = eta.conjugated_by(&lg);
                let Some(cp) = pos_of(&conj) else {
                    return Err(AlgebraError::NotNormalized);
                };
                map[kn_index(sub, k, p)] = vec![(kn_index(sub, k, cp), qi(sign))];
            }
        }
        maps.push(map);
    }
    let action = GAction { maps };
    action.verify_automorphisms(&algebra)?;
    Ok((algebra, action))
}

/// The fixed subalgebra of an algebra under a verified G-action,
/// together with its embedding into the parent.
#[derive(Clone, Debug)]
pub struct FixedAlgebra {
    pub algebra: StructureAlgebra,
    /// Basis of the fixed subspace, as vectors in the parent algebra.
    pub basis: Vec<Vec<Q>>,
}

impl FixedAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Parent coordinates of a fixed-algebra coordinate vector.
    pub fn embed(&self, v: &[Q]) -> Vec<Q> {
        let parent_dim = self.basis[0].len();
        let mut out = vec![Q::zero(); parent_dim];
        for (c, b) in v.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    /// Coordinates in the fixed basis of a parent vector, when it lies
    /// in the fixed subspace.
    pub fn restrict(&self, parent_vec: &[Q]) -> Option<Vec<Q>> {
        solve_in_span(&self.basis, parent_vec)
    }
}

/// Exact kernel computation of the simultaneous fixed space, plus the
/// induced structure constants. Fails when the fixed space is not closed
/// under multiplication, which would signal an action bug.
pub fn fixed_subalgebra(
    alg: &StructureAlgebra,
    action: &GAction,
) -> Result<FixedAlgebra, AlgebraError> {
    let dim = alg.dim();
    // Stack (M_g − I) for every g.
    let mut rows = Vec::new();
    for g in 0..action.group_order() {
        let mut mat = vec![vec![Q::zero(); dim]; dim];
        for i in 0..dim {
            let img = action.apply(g, &alg.basis_vec(i));
            for (l, v) in img.into_iter().enumerate() {
                mat[l][i] = v;
            }
        }
        for (l, row) in mat.into_iter().enumerate() {
            let mut r = row;
            r[l] -= Q::one();
            rows.push(r);
        }
    }
    let basis = QMat::from_rows(rows).kernel_basis();
    if basis.is_empty() {
        return Err(AlgebraError::FixedSpaceNotClosed);
    }
    let sub_dim = basis.len();
    let mut products = vec![vec![SparseVec::new(); sub_dim]; sub_dim];
    for i in 0..sub_dim {
        for j in 0..sub_dim {
            let prod = alg.mul_vec(&basis[i], &basis[j]);
            let coeffs =
                solve_in_span(&basis, &prod).ok_or(AlgebraError::FixedSpaceNotClosed)?;
            products[i][j] = coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
    }
    let unit_coords =
        solve_in_span(&basis, alg.unit()).ok_or(AlgebraError::FixedSpaceNotClosed)?;
    let labels = (0..sub_dim).map(|i| format!("f{i}")).collect();
    let algebra = StructureAlgebra::new(labels, unit_coords, products)?;
    Ok(FixedAlgebra { algebra, basis })
}

/// Everything needed to work with one structure's algebra: the subgroup,
/// the 32-dimensional group algebra, the G-action, and the 8-dimensional
/// fixed subalgebra.
#[derive(Clone, Debug)]
pub struct StructureContext {
    pub sub: RegularSubgroup,
    pub algebra: StructureAlgebra,
    pub action: GAction,
    pub fixed: FixedAlgebra,
}

pub fn structure_context(
    sub: RegularSubgroup,
    model: &BiquadraticModel,
    group: &FiniteGroup,
) -> Result<StructureContext, AlgebraError> {
    let (algebra, action) = group_algebra(&sub, model, group)?;
    let fixed = fixed_subalgebra(&algebra, &action)?;
    Ok(StructureContext {
        sub,
        algebra,
        action,
        fixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{build, lambda_rho, GenSym, StructureName};

    fn setup(name: StructureName) -> (FiniteGroup, RegularSubgroup, BiquadraticModel) {
        let g = FiniteGroup::q8();
        let sub = build(name, &g).unwrap();
        let model = BiquadraticModel::new(11, 2).unwrap();
        (g, sub, model)
    }

    /// Parent vector with a single K[N] coordinate.
    fn kn_vec(sub: &RegularSubgroup, k: usize, eta: &Perm, c: Q) -> Vec<Q> {
        let mut v = vec![Q::zero(); K_DIM * sub.order()];
        v[kn_index(sub, k, sub.position(eta).unwrap())] = c;
        v
    }

    #[test]
    fn group_algebra_dimensions_and_unit() {
        let (g, sub, model) = setup(StructureName::Q8Rho);
        let (alg, action) = group_algebra(&sub, &model, &g).unwrap();
        assert_eq!(alg.dim(), 32);
        assert_eq!(action.group_order(), 8);
    }

    #[test]
    fn action_on_rho_fixes_group_part() {
        let (g, sub, model) = setup(StructureName::Q8Rho);
        let (_, action) = group_algebra(&sub, &model, &g).unwrap();
        // Any g fixes ρ(h) itself; only the coefficient can move.
        for h in 0..8 {
            let v = kn_vec(&sub, 0, &g.right_regular(h), qi(1));
            for gg in 0..8 {
                assert_eq!(action.apply(gg, &v), v);
            }
        }
    }

    #[test]
    fn action_of_t_on_alpha_lambda_s_rho_t() {
        // For N = A[s,t]: t sends α·λ(s)ρ(t) to −α·λ(s⁻¹)ρ(t).
        let g = FiniteGroup::q8();
        let sub = build(StructureName::a(GenSym::Sigma, GenSym::Tau).unwrap(), &g).unwrap();
        let model = BiquadraticModel::new(11, 2).unwrap();
        let (_, action) = group_algebra(&sub, &model, &g).unwrap();
        let src = kn_vec(&sub, 1, &lambda_rho(&g, 1, 4), qi(1));
        let expect = kn_vec(&sub, 1, &lambda_rho(&g, 3, 4), qi(-1));
        assert_eq!(action.apply(4, &src), expect);
    }

    #[test]
    fn central_involution_acts_trivially() {
        let (g, sub, model) = setup(StructureName::Q8Lambda);
        let (alg, action) = group_algebra(&sub, &model, &g).unwrap();
        for i in 0..alg.dim() {
            let v = alg.basis_vec(i);
            assert_eq!(action.apply(2, &v), v);
        }
    }

    #[test]
    fn fixed_subalgebra_of_rho_is_the_rational_group_algebra() {
        let (g, sub, model) = setup(StructureName::Q8Rho);
        let (alg, action) = group_algebra(&sub, &model, &g).unwrap();
        let fixed = fixed_subalgebra(&alg, &action).unwrap();
        assert_eq!(fixed.dim(), 8);
        // The fixed space is exactly the rational span of the group
        // elements: coefficients in K beyond Q die.
        let expected: Vec<Vec<Q>> = (0..8)
            .map(|h| kn_vec(&sub, 0, &g.right_regular(h), qi(1)))
            .collect();
        assert!(crate::linalg::same_span(&fixed.basis, &expected));
    }

    #[test]
    fn fixed_subalgebra_of_lambda_contains_the_twisted_monomials() {
        let (g, sub, model) = setup(StructureName::Q8Lambda);
        let (alg, action) = group_algebra(&sub, &model, &g).unwrap();
        let fixed = fixed_subalgebra(&alg, &action).unwrap();
        assert_eq!(fixed.dim(), 8);
        // α·𝔢·λ(s) with 𝔢 = (1 − λ(s²))/2: α(λ(s) − λ(s³))/2 is fixed.
        let e = |k: usize, h: usize, c: Q| kn_vec(&sub, k, &g.left_regular(h), c);
        let add = |u: &[Q], v: &[Q]| -> Vec<Q> {
            u.iter().zip(v).map(|(a, b)| a + b).collect()
        };
        let candidates = [
            add(&e(1, 1, qr(1, 2)), &e(1, 3, qr(-1, 2))), // α𝔢λ(s)
            add(&e(2, 4, qr(1, 2)), &e(2, 6, qr(-1, 2))), // β𝔢λ(t)
            add(&e(3, 5, qr(1, 2)), &e(3, 7, qr(-1, 2))), // αβ𝔢λ(st)
        ];
        for v in &candidates {
            assert!(
                fixed.restrict(v).is_some(),
                "twisted monomial should be G-fixed"
            );
        }
    }

    use crate::linalg::qr;

    #[test]
    fn all_structures_have_eight_dimensional_fixed_algebras() {
        let g = FiniteGroup::q8();
        let model = BiquadraticModel::new(11, 2).unwrap();
        for name in StructureName::all() {
            let sub = build(name, &g).unwrap();
            let (alg, action) = group_algebra(&sub, &model, &g).unwrap();
            let fixed = fixed_subalgebra(&alg, &action).unwrap();
            assert_eq!(fixed.dim(), 8, "dim of fixed algebra of {name}");
        }
    }
}
