//! Dynamic exact coefficient fields: the rationals `Q` and prime fields `F_p`.
//!
//! A [`Field`] is a lightweight descriptor; elements are [`FieldElem`]s that
//! only make sense relative to the field that produced them.  All arithmetic
//! goes through the field (`field.add(&a, &b)`), which keeps rationals in
//! lowest terms and residues reduced mod `p` at all times.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Largest admissible prime modulus (exclusive): residues stay below `2^31`
/// so products of two of them fit comfortably in a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not below 2^31")]
    ModulusTooLarge(u64),
}

/// An exact coefficient field: `Q` or `F_p` for a prime `p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An element of a [`Field`].  Rational values are always reduced with
/// positive denominator; residues are always in `[0, p)` for the field's `p`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum FieldElem {
    Rational(BigRational),
    Residue(u64),
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_zero(),
            FieldElem::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_one(),
            FieldElem::Residue(r) => *r == 1,
        }
    }

    /// The residue value of an `F_p` element; panics on a rational.
    pub fn residue(&self) -> u64 {
        match self {
            FieldElem::Residue(r) => *r,
            FieldElem::Rational(_) => panic!("expected a prime-field residue, found a rational"),
        }
    }

    /// The rational value of a `Q` element; panics on a residue.
    pub fn rational(&self) -> &BigRational {
        match self {
            FieldElem::Rational(r) => r,
            FieldElem::Residue(_) => panic!("expected a rational, found a prime-field residue"),
        }
    }
}

impl std::fmt::Display for FieldElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldElem::Rational(r) => write!(f, "{}", r),
            FieldElem::Residue(r) => write!(f, "{}", r),
        }
    }
}

impl Field {
    pub fn rationals() -> Field {
        Field::Rationals
    }

    /// Builds `F_p`, verifying primality by trial division.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p >= MAX_PRIME {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for `Q`, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rational(BigRational::zero()),
            Field::Prime(_) => FieldElem::Residue(0),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rational(BigRational::one()),
            Field::Prime(_) => FieldElem::Residue(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let p = *p as i128;
                FieldElem::Residue((n as i128).rem_euclid(p) as u64)
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                FieldElem::Residue(u64::try_from(r).expect("reduced residue fits u64"))
            }
        }
    }

    /// `a/b` as an element; panics if `b` reduces to zero.
    pub fn from_fraction(&self, a: i64, b: i64) -> FieldElem {
        match self {
            Field::Rationals => {
                assert!(b != 0, "zero denominator");
                FieldElem::Rational(BigRational::new(BigInt::from(a), BigInt::from(b)))
            }
            Field::Prime(_) => {
                let num = self.from_i64(a);
                let den = self.from_i64(b);
                self.div(&num, &den).expect("denominator is zero in this field")
            }
        }
    }

    /// Whether `e` structurally belongs to this field (variant and range).
    pub fn contains(&self, e: &FieldElem) -> bool {
        match (self, e) {
            (Field::Rationals, FieldElem::Rational(_)) => true,
            (Field::Prime(p), FieldElem::Residue(r)) => r < p,
            _ => false,
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rational(a.rational() + b.rational()),
            Field::Prime(p) => FieldElem::Residue((a.residue() + b.residue()) % p),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rational(a.rational() - b.rational()),
            Field::Prime(p) => FieldElem::Residue((p + a.residue() - b.residue()) % p),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rational(-a.rational()),
            Field::Prime(p) => FieldElem::Residue((p - a.residue()) % p),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rational(a.rational() * b.rational()),
            Field::Prime(p) => FieldElem::Residue(a.residue() * b.residue() % p),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        Some(match self {
            Field::Rationals => FieldElem::Rational(a.rational().recip()),
            Field::Prime(p) => FieldElem::Residue(pow_mod(a.residue(), p - 2, *p)),
        })
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|binv| self.mul(a, &binv))
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Sum of a slice of elements.
    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a FieldElem>) -> FieldElem {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Deterministic trial-division primality test for `n < 2^31`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `base^exp mod m` by binary exponentiation (`m < 2^31` so products fit).
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut b = base % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A generator of the cyclic group `F_p^*`.
fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime field has a primitive root")
}

/// All `x` in `[1, p)` with `x^n ≡ 1 (mod p)`, ascending.
///
/// There are exactly `gcd(n, p−1)` of them: the unique subgroup of that
/// order in the cyclic group `F_p^*`.
pub fn roots_of_unity(p: u64, n: u64) -> Vec<u64> {
    assert!(is_prime(p), "modulus {} is not prime", p);
    assert!(n > 0, "root order must be positive");
    let d = n.gcd(&(p - 1));
    let g = primitive_root(p);
    let h = pow_mod(g, (p - 1) / d, p);
    let mut out = Vec::with_capacity(d as usize);
    let mut x = 1;
    for _ in 0..d {
        out.push(x);
        x = x * h % p;
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn prime_constructor_validates() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(101).is_ok());
        assert_eq!(Field::prime(6), Err(FieldError::NotPrime(6)));
        assert_eq!(Field::prime(1), Err(FieldError::NotPrime(1)));
        assert_eq!(
            Field::prime(1 << 31),
            Err(FieldError::ModulusTooLarge(1 << 31))
        );
        // 2^31 - 1 is prime and just inside the bound.
        assert!(Field::prime((1 << 31) - 1).is_ok());
    }

    #[test]
    fn rational_arithmetic_reduces() {
        let f = q();
        let half = f.from_fraction(1, 2);
        let third = f.from_fraction(1, 3);
        assert_eq!(f.add(&half, &third), f.from_fraction(5, 6));
        assert_eq!(f.mul(&half, &third), f.from_fraction(1, 6));
        assert_eq!(f.from_fraction(2, 4), half);
        assert_eq!(f.from_fraction(-1, -2), half);
        assert_eq!(f.inv(&f.zero()), None);
    }

    #[test]
    fn residues_stay_reduced() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_i64(-1), FieldElem::Residue(4));
        assert_eq!(f.from_i64(12), FieldElem::Residue(2));
        assert_eq!(f.add(&f.from_i64(3), &f.from_i64(4)), FieldElem::Residue(2));
        assert_eq!(f.from_fraction(1, 2), FieldElem::Residue(3)); // 2·3 = 6 ≡ 1
    }

    #[test]
    fn every_nonzero_residue_has_inverse() {
        for p in [2u64, 3, 5, 7, 101] {
            let f = Field::prime(p).unwrap();
            for a in 1..p {
                let a = FieldElem::Residue(a);
                let inv = f.inv(&a).unwrap();
                assert!(f.mul(&a, &inv).is_one());
            }
        }
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(roots_of_unity(5, 1), vec![1]);
        assert_eq!(roots_of_unity(5, 4), vec![1, 2, 3, 4]);
        assert_eq!(roots_of_unity(7, 3), vec![1, 2, 4]);
        assert_eq!(roots_of_unity(2, 12), vec![1]);
    }

    #[test]
    fn roots_of_unity_match_brute_force_scan() {
        // Independent oracle: test every residue directly.
        for p in [2u64, 3, 5, 7, 11, 13, 97, 101] {
            for n in 1..=30 {
                let brute: Vec<u64> = (1..p).filter(|&x| pow_mod(x, n, p) == 1).collect();
                assert_eq!(roots_of_unity(p, n), brute, "p={} n={}", p, n);
                assert_eq!(brute.len() as u64, n.gcd(&(p - 1)));
            }
        }
    }

    #[test]
    fn roots_of_unity_closed_under_multiplication() {
        for (p, n) in [(7u64, 3u64), (13, 4), (101, 20)] {
            let roots = roots_of_unity(p, n);
            for &a in &roots {
                for &b in &roots {
                    assert!(roots.binary_search(&(a * b % p)).is_ok());
                }
            }
        }
    }

    fn arb_rational() -> impl Strategy<Value = FieldElem> {
        (-50i64..50, 1i64..20).prop_map(|(a, b)| Field::rationals().from_fraction(a, b))
    }

    fn arb_residue(p: u64) -> impl Strategy<Value = FieldElem> {
        (0..p).prop_map(FieldElem::Residue)
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            let f = q();
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
            if !a.is_zero() {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }

        #[test]
        fn prime_field_axioms(a in arb_residue(101), b in arb_residue(101), c in arb_residue(101)) {
            let f = Field::prime(101).unwrap();
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
            if !a.is_zero() {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }
    }
}
