//! Exact coefficient fields: the rationals ℚ and prime fields F_p.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::{Error, Result};

/// The coefficient field of a polynomial: ℚ or F_p with p prime.
///
/// User-facing entry points restrict F_p to `p < 2^31`; internally the same
/// arithmetic is reused with larger (64-bit) primes for factorization over ℚ.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

/// A single coefficient. The field it belongs to is carried by the enclosing
/// polynomial, not by the coefficient itself.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Coeff {
    Q(BigRational),
    Fp(u64),
}

impl FieldSpec {
    /// F_p with primality checked.
    pub fn fp(p: u64) -> Result<FieldSpec> {
        if is_prime_u64(p) {
            Ok(FieldSpec::Fp(p))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Q => 0,
            FieldSpec::Fp(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Q => Coeff::Q(BigRational::zero()),
            FieldSpec::Fp(_) => Coeff::Fp(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            FieldSpec::Q => Coeff::Q(BigRational::one()),
            FieldSpec::Fp(_) => Coeff::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Q => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Fp(p) => Coeff::Fp(n.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Coeff> {
        if den == 0 {
            return Err(Error::Parse("division by zero in coefficient".into()));
        }
        match self {
            FieldSpec::Q => Ok(Coeff::Q(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::Fp(_) => {
                let n = self.from_i64(num);
                let d = self.from_i64(den);
                if self.is_zero(&d) {
                    return Err(Error::Parse(format!(
                        "denominator {den} vanishes modulo {}",
                        self.characteristic()
                    )));
                }
                Ok(self.div(&n, &d))
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(r) => r.is_zero(),
            Coeff::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(r) => r.is_one(),
            Coeff::Fp(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Q, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (FieldSpec::Fp(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(addmod(*x, *y, *p)),
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Q, Coeff::Q(x)) => Coeff::Q(-x),
            (FieldSpec::Fp(p), Coeff::Fp(x)) => Coeff::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Q, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (FieldSpec::Fp(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(mulmod(*x, *y, *p)),
            _ => panic!("coefficient/field mismatch"),
        }
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    pub fn inv(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Q, Coeff::Q(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Coeff::Q(x.recip())
            }
            (FieldSpec::Fp(p), Coeff::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                Coeff::Fp(invmod(*x, *p))
            }
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    pub fn display(&self, a: &Coeff) -> String {
        match a {
            Coeff::Q(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Fp(v) => v.to_string(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl Coeff {
    /// True when the coefficient is a "negative" rational (for display).
    pub fn is_display_negative(&self) -> bool {
        match self {
            Coeff::Q(r) => r.is_negative(),
            Coeff::Fp(_) => false,
        }
    }
}

pub(crate) fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // Witness set sufficient for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_requires_prime() {
        assert!(FieldSpec::fp(5).is_ok());
        assert!(FieldSpec::fp(2).is_ok());
        assert!(matches!(FieldSpec::fp(6), Err(Error::NonPrimeModulus(6))));
        assert!(FieldSpec::fp(1).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = FieldSpec::fp(5).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(f.mul(&a, &b), Coeff::Fp(2));
        assert_eq!(f.add(&a, &b), Coeff::Fp(2));
        assert_eq!(f.inv(&a), Coeff::Fp(2));
        assert_eq!(f.from_i64(-1), Coeff::Fp(4));
    }

    #[test]
    fn q_arithmetic() {
        let f = FieldSpec::Q;
        let a = f.from_ratio(3, 2).unwrap();
        let b = f.from_i64(2);
        assert_eq!(f.mul(&a, &b), f.from_i64(3));
        assert!(f.is_one(&f.div(&a, &a)));
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        let slow = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..2000 {
            assert_eq!(is_prime_u64(n), slow(n), "n = {n}");
        }
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64((1 << 62) - 1));
    }
}
