//! Square classes, Hilbert symbols over Q, and quaternion-algebra
//! classification by ramification sets.
//!
//! The Hilbert symbol `(x, y)_v` records whether `z² = x·u² + y·v²` has a
//! nontrivial solution in the completion at the place v. It is computed
//! in closed form (Legendre symbols at odd primes, the ε/ω exponent
//! formulas at 2, a sign test at infinity); an independent brute-force
//! solvability oracle lives in [`crate::verify`].

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::ArithError;

/// Square-free part of `n`, preserving sign (trial division; inputs in
/// this crate stay far below overflow range).
pub fn squarefree_part(n: i64) -> i64 {
    assert!(n != 0, "zero has no square class");
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out: i64 = 1;
    let mut d: u64 = 2;
    while d * d <= m {
        let mut count = 0;
        while m % d == 0 {
            m /= d;
            count += 1;
        }
        if count % 2 == 1 {
            out *= d as i64;
        }
        d += 1;
    }
    sign * out * m as i64
}

/// An element of Q^×/(Q^×)², canonically a square-free integer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SquareClass(i64);

impl SquareClass {
    pub fn new(n: i64) -> Result<Self, ArithError> {
        if n == 0 {
            return Err(ArithError::ZeroInput);
        }
        Ok(SquareClass(squarefree_part(n)))
    }

    pub fn one() -> Self {
        SquareClass(1)
    }

    pub fn rep(self) -> i64 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }

    /// Class multiplication; self-inverse since every class squares to 1.
    pub fn mul(self, other: SquareClass) -> SquareClass {
        SquareClass(squarefree_part_i128(self.0 as i128 * other.0 as i128))
    }

    pub fn neg(self) -> SquareClass {
        SquareClass(-self.0)
    }
}

fn squarefree_part_i128(n: i128) -> i64 {
    let sign = n.signum() as i64;
    let mut m = n.unsigned_abs();
    let mut out: i64 = 1;
    let mut d: u128 = 2;
    while d * d <= m {
        let mut count = 0;
        while m % d == 0 {
            m /= d;
            count += 1;
        }
        if count % 2 == 1 {
            out *= d as i64;
        }
        d += 1;
    }
    sign * out * m as i64
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareClass({})", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Odd primes dividing `n`, ascending.
pub fn odd_prime_divisors(n: i64) -> Vec<u64> {
    let mut m = n.unsigned_abs();
    let mut out = Vec::new();
    while m % 2 == 0 {
        m /= 2;
    }
    let mut d = 3;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 2;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// A place of Q: a prime or the archimedean place.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl Place {
    pub fn validate(self) -> Result<Self, ArithError> {
        match self {
            Place::Infinity => Ok(self),
            Place::Prime(p) => {
                if is_prime(p) {
                    Ok(self)
                } else {
                    Err(ArithError::NotAPlace(p))
                }
            }
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Place::Prime(a), Place::Prime(b)) => a.cmp(b),
            (Place::Prime(_), Place::Infinity) => std::cmp::Ordering::Less,
            (Place::Infinity, Place::Prime(_)) => std::cmp::Ordering::Greater,
            (Place::Infinity, Place::Infinity) => std::cmp::Ordering::Equal,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// Legendre symbol (a/p) for an odd prime p, computed by Euler's
/// criterion with small exponentiation.
pub fn legendre(a: i64, p: u64) -> i32 {
    debug_assert!(p % 2 == 1 && is_prime(p));
    let a = (a.rem_euclid(p as i64)) as u64;
    if a == 0 {
        return 0;
    }
    let mut result: u64 = 1;
    let mut base = a % p;
    let mut exp = (p - 1) / 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

fn split_valuation(x: i64, p: u64) -> (u32, i64) {
    let mut v = 0;
    let mut u = x;
    while u % (p as i64) == 0 {
        u /= p as i64;
        v += 1;
    }
    (v, u)
}

/// Hilbert symbol `(x, y)_v ∈ {+1, −1}`.
pub fn hilbert_symbol(x: i64, y: i64, place: Place) -> Result<i32, ArithError> {
    if x == 0 || y == 0 {
        return Err(ArithError::ZeroInput);
    }
    let place = place.validate()?;
    Ok(match place {
        Place::Infinity => {
            if x < 0 && y < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(x, 2);
            let (beta, w) = split_valuation(y, 2);
            let eps = |n: i64| ((n - 1) / 2).rem_euclid(2);
            let omega = |n: i64| ((n * n - 1) / 8).rem_euclid(2);
            let exponent =
                eps(u) * eps(w) + alpha as i64 * omega(w) + beta as i64 * omega(u);
            if exponent % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(x, p);
            let (beta, w) = split_valuation(y, p);
            let eps_p = ((p - 1) / 2) % 2;
            let mut sign = 1i32;
            if alpha % 2 == 1 && beta % 2 == 1 && eps_p == 1 {
                sign = -sign;
            }
            if beta % 2 == 1 {
                sign *= legendre(u, p);
            }
            if alpha % 2 == 1 {
                sign *= legendre(w, p);
            }
            sign
        }
    })
}

/// Places where the symbol can possibly be −1: infinity, 2, and the odd
/// primes dividing `x·y`. Everywhere else both arguments are units and
/// the odd-prime formula gives +1.
pub fn relevant_places(x: i64, y: i64) -> Vec<Place> {
    let mut places = vec![Place::Prime(2)];
    let mut odd: BTreeSet<u64> = odd_prime_divisors(x).into_iter().collect();
    odd.extend(odd_prime_divisors(y));
    places.extend(odd.into_iter().map(Place::Prime));
    places.push(Place::Infinity);
    places
}

/// `{ v : (x, y)_v = −1 }`, always of even cardinality.
pub fn ramification_set(x: SquareClass, y: SquareClass) -> BTreeSet<Place> {
    relevant_places(x.rep(), y.rep())
        .into_iter()
        .filter(|&v| hilbert_symbol(x.rep(), y.rep(), v).expect("valid inputs") == -1)
        .collect()
}

/// The quaternion algebra `(x, y)` over Q, classified by its ramification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionClass {
    pub x: SquareClass,
    pub y: SquareClass,
    pub ramified: BTreeSet<Place>,
}

impl QuaternionClass {
    pub fn new(x: SquareClass, y: SquareClass) -> Self {
        let ramified = ramification_set(x, y);
        debug_assert!(ramified.len() % 2 == 0);
        QuaternionClass { x, y, ramified }
    }

    /// Split means isomorphic to the 2x2 matrix algebra.
    pub fn is_split(&self) -> bool {
        self.ramified.is_empty()
    }
}

impl fmt::Display for QuaternionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{} | Q)", self.x, self.y)
    }
}

/// Two quaternion algebras over Q are isomorphic exactly when their
/// ramification sets coincide.
pub fn quat_isomorphic(a: &QuaternionClass, b: &QuaternionClass) -> bool {
    a.ramified == b.ramified
}

/// Consistency report for the twist biconditional: `(−1, x) ≅ (−1, xy)`
/// holds if and only if `(−1, y)` splits. Both sides are computed
/// independently and compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub left: bool,
    pub right: bool,
}

impl TwistReport {
    pub fn agree(&self) -> bool {
        self.left == self.right
    }
}

pub fn twist_split_consistency(x: SquareClass, y: SquareClass) -> TwistReport {
    let minus_one = SquareClass::new(-1).unwrap();
    let left = quat_isomorphic(
        &QuaternionClass::new(minus_one, x),
        &QuaternionClass::new(minus_one, x.mul(y)),
    );
    let right = QuaternionClass::new(minus_one, y).is_split();
    TwistReport { left, right }
}
