//! Exact arithmetic in cyclotomic integers `Z[zeta_N]`.
//!
//! Values are integer coefficient vectors over the powers `zeta^0 .. zeta^(N-1)`.
//! Equality is decided on the remainder modulo the cyclotomic polynomial
//! `Phi_N`, which is the canonical representative over the power basis.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(usize, usize),
    #[error("integer overflow in cyclotomic arithmetic")]
    Overflow,
}

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1, "conductor must be positive");
    // x^n - 1
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Exact quotient of `num` by the monic `den`; the remainder must vanish.
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let (q, r) = div_rem_monic(num, den);
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

fn div_rem_monic(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        rem.resize(dd, 0);
        return (vec![0], rem);
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let lead = rem[k];
        if lead == 0 {
            continue;
        }
        quot[k - dd] = lead;
        for (j, &c) in den.iter().enumerate() {
            rem[k - dd + j] -= lead * c;
        }
    }
    rem.truncate(dd);
    (quot, rem)
}

#[derive(Debug, Clone)]
pub struct CyclotomicValue {
    conductor: usize,
    coeffs: Vec<i64>,
}

impl CyclotomicValue {
    pub fn zero(conductor: usize) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        Self {
            conductor,
            coeffs: vec![0; conductor],
        }
    }

    pub fn integer(conductor: usize, n: i64) -> Self {
        let mut v = Self::zero(conductor);
        v.coeffs[0] = n;
        v
    }

    /// `coeff * zeta^power`, with the exponent reduced modulo the conductor.
    pub fn monomial(conductor: usize, coeff: i64, power: i64) -> Self {
        let mut v = Self::zero(conductor);
        let k = power.rem_euclid(conductor as i64) as usize;
        v.coeffs[k] = coeff;
        v
    }

    pub fn from_coefficients(conductor: usize, coeffs: &[i64]) -> Self {
        let mut v = Self::zero(conductor);
        for (i, &c) in coeffs.iter().enumerate() {
            v.coeffs[i % conductor] += c;
        }
        v
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    fn same_field(&self, other: &Self) -> Result<(), CyclotomicError> {
        if self.conductor == other.conductor {
            Ok(())
        } else {
            Err(CyclotomicError::ConductorMismatch(
                self.conductor,
                other.conductor,
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.same_field(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.checked_add(*b).ok_or(CyclotomicError::Overflow)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.same_field(other)?;
        let n = self.conductor;
        let mut out = Self::zero(n);
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in other.coeffs.iter().enumerate().filter(|(_, b)| **b != 0) {
                let slot = &mut out.coeffs[(i + j) % n];
                *slot = a
                    .checked_mul(b)
                    .and_then(|p| slot.checked_add(p))
                    .ok_or(CyclotomicError::Overflow)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Result<Self, CyclotomicError> {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = c.checked_mul(k).ok_or(CyclotomicError::Overflow)?;
        }
        Ok(out)
    }

    /// Complex conjugation, `zeta^i -> zeta^(N-i)`.
    pub fn conj(&self) -> Self {
        let n = self.conductor;
        let mut out = Self::zero(n);
        for (i, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[(n - i) % n] = c;
        }
        out
    }

    /// Canonical representative: remainder modulo `Phi_N`, of length `phi(N)`.
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.conductor);
        div_rem_monic(&self.coeffs, &phi).1
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduced();
        r.iter().skip(1).all(|&c| c == 0).then(|| r[0])
    }
}

impl PartialEq for CyclotomicValue {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.reduced() == other.reduced()
    }
}

impl Eq for CyclotomicValue {}

impl fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first && c > 0 {
                write!(f, "+")?;
            }
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (_, 1) => write!(f, "z^{i}")?,
                (_, -1) => write!(f, "-z^{i}")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), [-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), [1, 1]);
        assert_eq!(cyclotomic_polynomial(3), [1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), [1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), [1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), [1, 0, -1, 0, 1]);
        // Phi_21 has degree phi(21) = 12
        assert_eq!(cyclotomic_polynomial(21).len(), 13);
    }

    #[test]
    fn sum_of_roots_vanishes() {
        for n in 2..30 {
            let all = CyclotomicValue::from_coefficients(n, &vec![1; n]);
            assert_eq!(all.as_integer(), Some(0), "n = {n}");
        }
    }

    #[test]
    fn cube_roots_of_unity() {
        let w = CyclotomicValue::monomial(3, 1, 1);
        let w2 = w.mul(&w).unwrap();
        assert_eq!(w2, CyclotomicValue::monomial(3, 1, 2));
        assert_eq!(w.conj(), w2);
        assert_eq!(w.mul(&w2).unwrap().as_integer(), Some(1));
        // 1 + w + w^2 = 0
        let s = CyclotomicValue::integer(3, 1)
            .add(&w)
            .unwrap()
            .add(&w2)
            .unwrap();
        assert_eq!(s.as_integer(), Some(0));
        assert_eq!(w.as_integer(), None);
    }

    #[test]
    fn gauss_period_norm() {
        // eta = z + z^2 + z^4 for z a primitive 7th root: eta * conj(eta) = 2
        let n = 21;
        let eta = CyclotomicValue::from_coefficients(n, &[])
            .add(&CyclotomicValue::monomial(n, 1, 3))
            .unwrap()
            .add(&CyclotomicValue::monomial(n, 1, 6))
            .unwrap()
            .add(&CyclotomicValue::monomial(n, 1, 12))
            .unwrap();
        assert_eq!(eta.mul(&eta.conj()).unwrap().as_integer(), Some(2));
    }

    #[test]
    fn mismatched_conductors() {
        let a = CyclotomicValue::integer(3, 1);
        let b = CyclotomicValue::integer(5, 1);
        assert_eq!(a.add(&b), Err(CyclotomicError::ConductorMismatch(3, 5)));
    }

    proptest! {
        #[test]
        fn multiplication_commutes_and_conj_is_involutive(
            n in 1usize..16,
            a in proptest::collection::vec(-5i64..5, 16),
            b in proptest::collection::vec(-5i64..5, 16),
        ) {
            let x = CyclotomicValue::from_coefficients(n, &a);
            let y = CyclotomicValue::from_coefficients(n, &b);
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!(x.mul(&y).unwrap().conj(), x.conj().mul(&y.conj()).unwrap());
        }
    }
}
