//! The biquadratic coefficient field K = Q(α, β) with α² = a, β² = b,
//! as an exact 4-dimensional Q-algebra carrying the Galois action of
//! G/<s²>.
//!
//! Convention (fixed once for the whole crate): s fixes α and negates β,
//! t fixes β and negates α, so st fixes αβ and negates the other two.
//! A structure whose own designated generators differ just reads off the
//! root fixed by each of its symbols via [`BiquadraticModel::root_fixed_by`].

use crate::arith::SquareClass;
use crate::error::ArithError;
use crate::group::FiniteGroup;
use crate::named::GenSym;

/// Index of a K-basis monomial: 1, α, β, αβ.
pub type KIdx = usize;

pub const K_DIM: usize = 4;
pub const K_LABELS: [&str; 4] = ["1", "alpha", "beta", "alphabeta"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiquadraticModel {
    a: i64,
    b: i64,
}

impl BiquadraticModel {
    /// `a` and `b` are reduced to square classes; the three classes
    /// a, b, ab must all be nontrivial for K to be a field.
    pub fn new(a: i64, b: i64) -> Result<Self, ArithError> {
        let ca = SquareClass::new(a)?;
        let cb = SquareClass::new(b)?;
        if ca.is_one() || cb.is_one() || ca.mul(cb).is_one() {
            return Err(ArithError::DegenerateBiquadratic(ca.rep(), cb.rep()));
        }
        Ok(BiquadraticModel {
            a: ca.rep(),
            b: cb.rep(),
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Product of two basis monomials: `(k, scalar)` with the scalar an
    /// integer (a, b, or ab when a square gets absorbed).
    pub fn mul_basis(&self, i: KIdx, j: KIdx) -> (KIdx, i64) {
        // Monomials multiply like the Klein group 1, α, β, αβ; each
        // coincidence of a factor contributes its square.
        let k = i ^ j;
        let mut scalar = 1i64;
        if i & 1 == 1 && j & 1 == 1 {
            scalar *= self.a;
        }
        if i & 2 == 2 && j & 2 == 2 {
            scalar *= self.b;
        }
        (k, scalar)
    }

    /// The square of basis monomial `i` as a plain integer.
    pub fn monomial_square(&self, i: KIdx) -> i64 {
        self.mul_basis(i, i).1
    }

    /// Sign of the action of group element `g` on basis monomial `i`.
    ///
    /// Under the fixed indexing of Q8 an element s^i t^j negates α
    /// exactly when j = 1 (it involves t) and negates β exactly when
    /// i is odd (it involves s); the central s² acts trivially.
    pub fn galois_sign(&self, group: &FiniteGroup, g: usize, k: KIdx) -> i64 {
        debug_assert!(group.is_q8());
        let s_component = (g % 4) % 2; // exponent of s mod <s²>
        let t_component = g / 4; // exponent of t
        let mut sign = 1i64;
        if k & 1 == 1 && t_component == 1 {
            sign = -sign; // α is negated by anything involving t
        }
        if k & 2 == 2 && s_component == 1 {
            sign = -sign; // β is negated by anything involving s
        }
        sign
    }

    /// The K-basis monomial fixed by the symbol: α for s, β for t,
    /// αβ for st.
    pub fn root_fixed_by(&self, sym: GenSym) -> KIdx {
        match sym {
            GenSym::Sigma => 1,
            GenSym::Tau => 2,
            GenSym::SigmaTau => 3,
        }
    }

    /// The exact square of the root fixed by `sym` (a, b, or ab as an
    /// integer, not reduced).
    pub fn root_square(&self, sym: GenSym) -> i64 {
        self.monomial_square(self.root_fixed_by(sym))
    }

    /// The square class of the root fixed by `sym`.
    pub fn root_class(&self, sym: GenSym) -> SquareClass {
        SquareClass::new(self.root_square(sym)).expect("nonzero square")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_multiplication() {
        let k = BiquadraticModel::new(11, 2).unwrap();
        assert_eq!(k.mul_basis(1, 1), (0, 11)); // α² = a
        assert_eq!(k.mul_basis(2, 2), (0, 2)); // β² = b
        assert_eq!(k.mul_basis(3, 3), (0, 22)); // (αβ)² = ab
        assert_eq!(k.mul_basis(1, 2), (3, 1)); // αβ
        assert_eq!(k.mul_basis(1, 3), (2, 11)); // α·αβ = aβ
        assert_eq!(k.mul_basis(2, 3), (1, 2)); // β·αβ = bα
        assert_eq!(k.mul_basis(0, 3), (3, 1));
    }

    #[test]
    fn shared_prime_factors_are_kept_exact() {
        let k = BiquadraticModel::new(6, 10).unwrap();
        assert_eq!(k.mul_basis(3, 3), (0, 60)); // (αβ)² = 60, class 15
        assert_eq!(k.root_class(GenSym::SigmaTau).rep(), 15);
    }

    #[test]
    fn galois_signs_follow_the_convention() {
        let g = FiniteGroup::q8();
        let k = BiquadraticModel::new(11, 2).unwrap();
        let s = 1usize;
        let t = 4usize;
        let st = g.mul(s, t);
        // s fixes α, negates β; t negates α, fixes β; st negates both.
        assert_eq!(k.galois_sign(&g, s, 1), 1);
        assert_eq!(k.galois_sign(&g, s, 2), -1);
        assert_eq!(k.galois_sign(&g, t, 1), -1);
        assert_eq!(k.galois_sign(&g, t, 2), 1);
        assert_eq!(k.galois_sign(&g, st, 1), -1);
        assert_eq!(k.galois_sign(&g, st, 2), -1);
        assert_eq!(k.galois_sign(&g, st, 3), 1);
        // s² acts trivially on every monomial.
        for m in 0..K_DIM {
            assert_eq!(k.galois_sign(&g, 2, m), 1);
        }
        // The action is multiplicative in g.
        for x in 0..8 {
            for y in 0..8 {
                for m in 0..K_DIM {
                    // sign(xy, m) = sign(x, m)·sign(y, m): the action on
                    // each monomial is a character of G.
                    assert_eq!(
                        k.galois_sign(&g, g.mul(x, y), m),
                        k.galois_sign(&g, x, m) * k.galois_sign(&g, y, m)
                    );
                }
            }
        }
    }

    #[test]
    fn each_symbol_fixes_its_root() {
        let g = FiniteGroup::q8();
        let k = BiquadraticModel::new(11, 2).unwrap();
        for &sym in &GenSym::ALL {
            let root = k.root_fixed_by(sym);
            assert_eq!(k.galois_sign(&g, sym.index(), root), 1);
            for &other in &GenSym::ALL {
                if other != sym {
                    assert_eq!(k.galois_sign(&g, other.index(), root), -1);
                }
            }
        }
        assert_eq!(k.root_square(GenSym::Sigma), 11);
        assert_eq!(k.root_square(GenSym::Tau), 2);
        assert_eq!(k.root_square(GenSym::SigmaTau), 22);
    }

    #[test]
    fn degenerate_models_are_rejected() {
        assert!(BiquadraticModel::new(4, 3).is_err());
        assert!(BiquadraticModel::new(3, 4).is_err());
        assert!(BiquadraticModel::new(2, 2).is_err());
        assert!(BiquadraticModel::new(2, 8).is_err()); // same class
        assert!(BiquadraticModel::new(0, 3).is_err());
    }
}
