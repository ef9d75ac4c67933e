//! Diagonal ternary quadratic forms over Q: Hasse invariants, rational
//! equivalence, and the embeddability gate for biquadratic fields.
//!
//! Over Q a nondegenerate form is determined up to equivalence by its
//! rank, square-free discriminant, signature, and Hasse invariants; for
//! two ternary forms it suffices to compare the invariants at 2, at
//! infinity, and at the odd primes dividing some coefficient.

use crate::arith::{
    hilbert_symbol, odd_prime_divisors, Place, SquareClass,
};
use crate::error::ArithError;

/// A diagonal form `d0·x² + d1·y² + d2·z²` with square-free coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    diag: [SquareClass; 3],
}

impl TernaryForm {
    /// Coefficients are reduced to their square classes, which does not
    /// change the equivalence class of the form.
    pub fn new(d0: i64, d1: i64, d2: i64) -> Result<Self, ArithError> {
        Ok(TernaryForm {
            diag: [
                SquareClass::new(d0)?,
                SquareClass::new(d1)?,
                SquareClass::new(d2)?,
            ],
        })
    }

    pub fn diag(&self) -> [i64; 3] {
        [self.diag[0].rep(), self.diag[1].rep(), self.diag[2].rep()]
    }

    pub fn discriminant(&self) -> SquareClass {
        self.diag[0].mul(self.diag[1]).mul(self.diag[2])
    }

    /// (number of positive coefficients, number of negative coefficients).
    pub fn signature(&self) -> (usize, usize) {
        let pos = self.diag.iter().filter(|c| c.rep() > 0).count();
        (pos, 3 - pos)
    }
}

/// Hasse invariant: product of `(d_i, d_j)_v` over pairs i < j.
pub fn hasse_invariant(form: &TernaryForm, place: Place) -> Result<i32, ArithError> {
    let d = form.diag();
    let mut out = 1;
    for i in 0..3 {
        for j in (i + 1)..3 {
            out *= hilbert_symbol(d[i], d[j], place)?;
        }
    }
    Ok(out)
}

/// Rational equivalence of two ternary forms.
pub fn forms_equivalent(f1: &TernaryForm, f2: &TernaryForm) -> bool {
    if f1.discriminant() != f2.discriminant() || f1.signature() != f2.signature() {
        return false;
    }
    let mut places = vec![Place::Prime(2), Place::Infinity];
    for d in f1.diag().into_iter().chain(f2.diag()) {
        places.extend(odd_prime_divisors(d).into_iter().map(Place::Prime));
    }
    places.sort();
    places.dedup();
    places.into_iter().all(|v| {
        hasse_invariant(f1, v).expect("valid place") == hasse_invariant(f2, v).expect("valid place")
    })
}

/// Whether the biquadratic field Q(√a, √b) embeds into a quaternionic
/// extension of Q: the norm-form criterion asks `⟨a, b, ab⟩ ~ ⟨1, 1, 1⟩`.
pub fn witt_embeddable(a: SquareClass, b: SquareClass) -> Result<bool, ArithError> {
    let ab = a.mul(b);
    if a.is_one() || b.is_one() || ab.is_one() {
        return Err(ArithError::DegenerateBiquadratic(a.rep(), b.rep()));
    }
    let f = TernaryForm::new(a.rep(), b.rep(), ab.rep())?;
    let unit = TernaryForm::new(1, 1, 1)?;
    Ok(forms_equivalent(&f, &unit))
}

/// Whether `c` is a square in Q(√d): true exactly when c is 1 or d as a
/// square class.
pub fn square_in_quadratic(c: SquareClass, d: SquareClass) -> Result<bool, ArithError> {
    if d.is_one() {
        return Err(ArithError::DegenerateQuadratic(d.rep()));
    }
    Ok(c.is_one() || c == d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::relevant_places;

    fn sc(n: i64) -> SquareClass {
        SquareClass::new(n).unwrap()
    }

    #[test]
    fn embeddable_instances() {
        assert!(witt_embeddable(sc(11), sc(2)).unwrap());
        assert!(witt_embeddable(sc(11), sc(6)).unwrap());
        assert!(!witt_embeddable(sc(-1), sc(5)).unwrap());
    }

    #[test]
    fn degenerate_biquadratic_is_rejected() {
        assert_eq!(
            witt_embeddable(sc(4), sc(3)),
            Err(ArithError::DegenerateBiquadratic(1, 3))
        );
        // a·b square: a = 2, b = 2 gives ab ~ 1.
        assert_eq!(
            witt_embeddable(sc(2), sc(2)),
            Err(ArithError::DegenerateBiquadratic(2, 2))
        );
    }

    #[test]
    fn form_equivalence_examples() {
        let unit = TernaryForm::new(1, 1, 1).unwrap();
        assert!(forms_equivalent(&TernaryForm::new(11, 2, 22).unwrap(), &unit));
        assert!(forms_equivalent(&TernaryForm::new(11, 6, 66).unwrap(), &unit));
        for b in [2i64, 3, 5, 7, 11] {
            let f = TernaryForm::new(-1, b, -b).unwrap();
            assert!(!forms_equivalent(&f, &unit), "signature obstruction at b={b}");
        }
    }

    #[test]
    fn coefficients_reduce_to_square_classes() {
        let f = TernaryForm::new(44, 18, 22).unwrap();
        assert_eq!(f.diag(), [11, 2, 22]);
        assert_eq!(f.discriminant(), sc(1));
        assert_eq!(f.signature(), (3, 0));
    }

    #[test]
    fn hasse_product_over_all_places_is_trivial() {
        for (a, b, c) in [(11, 2, 22), (-1, 3, 5), (7, -6, 13), (2, 2, 2)] {
            let f = TernaryForm::new(a, b, c).unwrap();
            let mut places = vec![Place::Prime(2), Place::Infinity];
            for d in f.diag() {
                for p in odd_prime_divisors(d) {
                    places.push(Place::Prime(p));
                }
            }
            places.sort();
            places.dedup();
            // Each pair symbol satisfies the product formula, hence so
            // does the Hasse product.
            let prod: i32 = places
                .iter()
                .map(|&v| hasse_invariant(&f, v).unwrap())
                .product();
            // Any additional places contribute +1.
            let d = f.diag();
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let pairs: i32 = relevant_places(d[i], d[j])
                        .into_iter()
                        .map(|v| hilbert_symbol(d[i], d[j], v).unwrap())
                        .product();
                    assert_eq!(pairs, 1);
                }
            }
            assert_eq!(prod, 1);
        }
    }

    #[test]
    fn square_in_quadratic_examples() {
        assert!(!square_in_quadratic(sc(-1), sc(11)).unwrap());
        assert!(square_in_quadratic(sc(-2), sc(-2)).unwrap());
        assert!(square_in_quadratic(sc(1), sc(7)).unwrap());
        assert_eq!(
            square_in_quadratic(sc(3), sc(1)),
            Err(ArithError::DegenerateQuadratic(1))
        );
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric_on_samples() {
        let samples = [
            TernaryForm::new(1, 1, 1).unwrap(),
            TernaryForm::new(11, 2, 22).unwrap(),
            TernaryForm::new(-1, 3, 5).unwrap(),
            TernaryForm::new(2, 3, 6).unwrap(),
        ];
        for f in &samples {
            assert!(forms_equivalent(f, f));
            for g in &samples {
                assert_eq!(forms_equivalent(f, g), forms_equivalent(g, f));
            }
        }
    }
}
