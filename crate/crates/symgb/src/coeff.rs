//! Coefficient domains: exact rationals, prime fields F_p with a 64-bit
//! modulus, and the trait surface the polynomial layer is generic over.

use crate::monomial::Perm;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Ring element operations used by the generic polynomial code. Values are
/// immutable; all operations return fresh values.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Action of a variable permutation on the coefficient. Constants are
    /// fixed; parametric coefficients relabel their indices (see `param`).
    fn permute_vars(&self, _p: &Perm) -> Self {
        self.clone()
    }
}

/// Coefficients forming a field (or sitting inside their fraction field),
/// as needed for monic normalization and division.
pub trait FieldCoeff: Coeff {
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
}

impl Coeff for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl FieldCoeff for BigRational {
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

impl Coeff for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// An element of F_p. Every value carries its modulus; mixed-modulus
/// arithmetic is a bug and asserts in debug builds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        debug_assert!(is_prime_u64(p), "modulus {p} is not prime");
        let m = v.rem_euclid(p as i64) as u64;
        Fp { v: m % p, p }
    }

    pub fn from_u64(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    /// Reduction of an arbitrary-precision integer mod p.
    pub fn from_bigint(v: &BigInt, p: u64) -> Self {
        let m = v % BigInt::from(p);
        let m = if m.is_negative() { m + BigInt::from(p) } else { m };
        let digits = m.to_u64_digits().1;
        Fp { v: digits.first().copied().unwrap_or(0), p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Fp { v: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Coeff for Fp {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1 % self.p
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.v + rhs.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = if self.v >= rhs.v { self.v - rhs.v } else { self.v + self.p - rhs.v };
        Fp { v: s, p: self.p }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { v: ((self.v as u128 * rhs.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

impl FieldCoeff for Fp {
    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero in F_{}", self.p);
        self.pow(self.p - 2)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin over the full 64-bit range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
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
    fn prime_check() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(101));
        assert!(is_prime_u64(2_147_483_647));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(100));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn fp_arithmetic() {
        let p = 101;
        let a = Fp::new(77, p);
        let b = Fp::new(-3, p);
        assert_eq!(b.value(), 98);
        assert_eq!(a.add(&b).value(), (77 + 98) % 101);
        assert_eq!(a.mul(&a.inv()).value(), 1);
        assert_eq!(a.sub(&a).value(), 0);
        assert_eq!(Fp::new(0, p).neg().value(), 0);
    }

    #[test]
    fn rational_field_ops() {
        let a = BigRational::new(BigInt::from(3), BigInt::from(4));
        let b = FieldCoeff::inv(&a);
        assert!(Coeff::is_one(&Coeff::mul(&a, &b)));
    }
}
