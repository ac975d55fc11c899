//! Truncated power series over `Q` and the exponential pairing between a
//! finite local piece and the formal additive group.
//!
//! A [`TruncatedSeries`] keeps coefficients of `z^0 … z^(N−1)` and drops
//! everything above.  [`dual_basis_map`] sends the `i`-th divided-power
//! basis vector to `z^i/i!`, turning divided-power products
//! `ω_i·ω_j = C(i+j, i)·ω_{i+j}` into plain coefficient multiplication.
//! [`ga_pairing`] exponentiates nilpotents of a rational algebra:
//! `e^{αu}` is a finite sum, additive in both `α` and `u`.

use crate::algebra::{vec_add, vec_scale, FinCommAlgebra};
use crate::field::{Field, FieldElem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormalError {
    #[error("IndexOutOfTruncation: degree {index} does not exist below truncation {trunc}")]
    IndexOutOfTruncation { index: usize, trunc: usize },
    #[error("NotRational: the exponential pairing needs a rational algebra")]
    NotRational,
    #[error("NotNilpotent: the element is not nilpotent, so its exponential is not finite")]
    NotNilpotent,
}

/// A power series truncated at degree `trunc`: exactly `trunc` stored
/// coefficients, `z^trunc = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    trunc: usize,
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Builds a series from low-degree coefficients, padding with zeros;
    /// coefficients past the truncation are rejected rather than silently
    /// dropped.
    pub fn new(trunc: usize, coeffs: Vec<BigRational>) -> Result<TruncatedSeries, FormalError> {
        if coeffs.len() > trunc {
            return Err(FormalError::IndexOutOfTruncation { index: coeffs.len() - 1, trunc });
        }
        let mut coeffs = coeffs;
        coeffs.resize(trunc, BigRational::zero());
        Ok(TruncatedSeries { trunc, coeffs })
    }

    pub fn zero(trunc: usize) -> TruncatedSeries {
        TruncatedSeries { trunc, coeffs: vec![BigRational::zero(); trunc] }
    }

    pub fn one(trunc: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(trunc);
        if trunc > 0 {
            s.coeffs[0] = BigRational::one();
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Result<&BigRational, FormalError> {
        self.coeffs
            .get(i)
            .ok_or(FormalError::IndexOutOfTruncation { index: i, trunc: self.trunc })
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.trunc, other.trunc, "truncation orders must agree");
        TruncatedSeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.trunc, other.trunc, "truncation orders must agree");
        let mut coeffs = vec![BigRational::zero(); self.trunc];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= self.trunc {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { trunc: self.trunc, coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> TruncatedSeries {
        TruncatedSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The `i`-th divided-power basis vector as a series: `z^i / i!`.
pub fn dual_basis_map(i: usize, trunc: usize) -> Result<TruncatedSeries, FormalError> {
    if i >= trunc {
        return Err(FormalError::IndexOutOfTruncation { index: i, trunc });
    }
    let mut s = TruncatedSeries::zero(trunc);
    s.coeffs[i] = BigRational::new(BigInt::one(), factorial(i));
    Ok(s)
}

/// The truncated exponential `exp(αz) = Σ α^i z^i / i!`.
pub fn exp_element(alpha: &BigRational, trunc: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(trunc);
    let mut power = BigRational::one();
    for i in 0..trunc {
        s.coeffs[i] = &power / BigRational::from(factorial(i));
        power *= alpha;
    }
    s
}

/// The exponential pairing of a finite rational algebra with the formal
/// additive group: nilpotents pair with scalars through `e^{αu}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaPairing {
    algebra: FinCommAlgebra,
    radical: Vec<Vec<FieldElem>>,
}

/// Prepares the pairing for a rational algebra, recording the radical —
/// the elements that can be exponentiated.
pub fn ga_pairing(b: &FinCommAlgebra) -> Result<GaPairing, FormalError> {
    if b.field() != Field::Rationals {
        return Err(FormalError::NotRational);
    }
    let radical = b.radical();
    Ok(GaPairing { algebra: b.clone(), radical })
}

impl GaPairing {
    pub fn algebra(&self) -> &FinCommAlgebra {
        &self.algebra
    }

    /// Basis of the exponentiable (nilpotent) elements.
    pub fn radical(&self) -> &[Vec<FieldElem>] {
        &self.radical
    }

    /// `e^{αu} = Σ_i α^i u^i / i!` — a finite sum; fails on
    /// non-nilpotent `u`.
    pub fn exp(&self, alpha: &BigRational, u: &[FieldElem]) -> Result<Vec<FieldElem>, FormalError> {
        let f = self.algebra.field();
        let n = self.algebra.dim();
        assert_eq!(u.len(), n, "coordinate length");
        let mut result = self.algebra.unit().to_vec();
        let mut power = u.to_vec();
        let mut alpha_power = alpha.clone();
        for i in 1..=n {
            let coefficient = FieldElem::Rational(&alpha_power / BigRational::from(factorial(i)));
            result = vec_add(f, &result, &vec_scale(f, &coefficient, &power));
            power = self.algebra.mul_vec(&power, u);
            if power.iter().all(FieldElem::is_zero) {
                return Ok(result);
            }
            alpha_power *= alpha;
        }
        Err(FormalError::NotNilpotent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::rationals()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn series_arithmetic_truncates() {
        // (1 + z)(1 − z) = 1 − z².
        let a = TruncatedSeries::new(4, vec![rat(1, 1), rat(1, 1)]).unwrap();
        let b = TruncatedSeries::new(4, vec![rat(1, 1), rat(-1, 1)]).unwrap();
        let prod = a.mul(&b);
        assert_eq!(prod.coeffs(), &[rat(1, 1), rat(0, 1), rat(-1, 1), rat(0, 1)]);
        // z^(N−1) · z = 0.
        let znm1 = TruncatedSeries::new(4, vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)])
            .unwrap();
        let z = TruncatedSeries::new(4, vec![rat(0, 1), rat(1, 1)]).unwrap();
        assert_eq!(znm1.mul(&z), TruncatedSeries::zero(4));
    }

    #[test]
    fn coefficients_past_truncation_are_errors() {
        assert_eq!(
            TruncatedSeries::new(2, vec![rat(1, 1), rat(1, 1), rat(1, 1)]).unwrap_err(),
            FormalError::IndexOutOfTruncation { index: 2, trunc: 2 }
        );
        let s = TruncatedSeries::one(3);
        assert_eq!(
            s.coeff(5).unwrap_err(),
            FormalError::IndexOutOfTruncation { index: 5, trunc: 3 }
        );
        assert_eq!(
            dual_basis_map(7, 4).unwrap_err(),
            FormalError::IndexOutOfTruncation { index: 7, trunc: 4 }
        );
    }

    #[test]
    fn divided_powers_multiply_by_binomials() {
        let trunc = 12;
        for i in 0..6 {
            for j in 0..6 {
                let wi = dual_basis_map(i, trunc).unwrap();
                let wj = dual_basis_map(j, trunc).unwrap();
                let wij = dual_basis_map(i + j, trunc).unwrap();
                let binom = BigRational::from(
                    factorial(i + j) / (factorial(i) * factorial(j)),
                );
                assert_eq!(wi.mul(&wj), wij.scale(&binom), "ω_{i}·ω_{j}");
            }
        }
    }

    #[test]
    fn exponentials_multiply_like_exponentials() {
        let trunc = 12;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
            let b = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
            let lhs = exp_element(&a, trunc).mul(&exp_element(&b, trunc));
            let rhs = exp_element(&(&a + &b), trunc);
            assert_eq!(lhs, rhs);
        }
        assert_eq!(exp_element(&rat(0, 1), 5), TruncatedSeries::one(5));
    }

    #[test]
    fn exp_of_a_truncated_variable() {
        // Q[t]/(t³): e^{αt} = 1 + αt + α²t²/2.
        let b = FinCommAlgebra::truncated_polynomial(q(), 3);
        let pairing = ga_pairing(&b).unwrap();
        assert_eq!(pairing.radical().len(), 2);
        let t = vec![q().zero(), q().one(), q().zero()];
        let alpha = rat(3, 2);
        let e = pairing.exp(&alpha, &t).unwrap();
        assert_eq!(
            e,
            vec![
                q().one(),
                FieldElem::Rational(rat(3, 2)),
                FieldElem::Rational(rat(9, 8)), // (3/2)²/2
            ]
        );
    }

    #[test]
    fn pairing_is_biadditive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 2..=6usize {
            let b = FinCommAlgebra::truncated_polynomial(q(), k);
            let pairing = ga_pairing(&b).unwrap();
            for _ in 0..10 {
                let rand_radical = |rng: &mut ChaCha8Rng| -> Vec<FieldElem> {
                    let mut v = vec![q().zero(); k];
                    for basis_vec in pairing.radical() {
                        let c = FieldElem::Rational(rat(rng.gen_range(-5..=5), 1));
                        for (slot, x) in v.iter_mut().zip(basis_vec) {
                            *slot = q().add(slot, &q().mul(&c, x));
                        }
                    }
                    v
                };
                let u = rand_radical(&mut rng);
                let v = rand_radical(&mut rng);
                let alpha = rat(rng.gen_range(-5..=5), rng.gen_range(1..=5));
                let beta = rat(rng.gen_range(-5..=5), rng.gen_range(1..=5));
                // Additive in the algebra slot: e^{α(u+v)} = e^{αu}·e^{αv}.
                let sum: Vec<FieldElem> = u
                    .iter()
                    .zip(&v)
                    .map(|(a, b2)| q().add(a, b2))
                    .collect();
                let lhs = pairing.exp(&alpha, &sum).unwrap();
                let rhs = b.mul_vec(
                    &pairing.exp(&alpha, &u).unwrap(),
                    &pairing.exp(&alpha, &v).unwrap(),
                );
                assert_eq!(lhs, rhs);
                // Additive in the scalar slot: e^{(α+β)u} = e^{αu}·e^{βu}.
                let lhs2 = pairing.exp(&(&alpha + &beta), &u).unwrap();
                let rhs2 = b.mul_vec(
                    &pairing.exp(&alpha, &u).unwrap(),
                    &pairing.exp(&beta, &u).unwrap(),
                );
                assert_eq!(lhs2, rhs2);
            }
        }
    }

    #[test]
    fn non_nilpotents_are_rejected() {
        let b = FinCommAlgebra::truncated_polynomial(q(), 3);
        let pairing = ga_pairing(&b).unwrap();
        let one = b.unit().to_vec();
        assert_eq!(pairing.exp(&rat(1, 1), &one).unwrap_err(), FormalError::NotNilpotent);
    }

    #[test]
    fn modular_algebras_are_rejected() {
        let b = FinCommAlgebra::truncated_polynomial(Field::prime(5).unwrap(), 3);
        assert_eq!(ga_pairing(&b).unwrap_err(), FormalError::NotRational);
    }
}
