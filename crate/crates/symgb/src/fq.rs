//! The field F_{p^e}: arithmetic in F_p[x] modulo a deterministically
//! chosen irreducible polynomial. Used to give the randomized generic
//! initial ideal oracle enough room in small characteristic: the vote is
//! only reliable when the field is large compared to the discriminants it
//! must avoid, so over F_2 or F_3 the matrix entries are drawn from an
//! extension of size at least about 2^20 while the ideal's coefficients
//! stay in the prime field.

use crate::coeff::{is_prime_u64, Coeff, FieldCoeff};
use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Shared description of F_{p^e}.
#[derive(PartialEq, Eq, Debug)]
pub struct FqField {
    p: u64,
    e: usize,
    /// Monic irreducible modulus of degree e; coefficients of 1, x, ...,
    /// x^{e-1} (the leading 1 is implicit).
    modulus_tail: Vec<u64>,
}

// dense F_p[x] helpers (little-endian coefficient vectors)

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // m monic
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    while r.len() >= m.len() {
        let lead = *r.last().unwrap();
        let shift = r.len() - m.len();
        for (i, &mc) in m.iter().enumerate() {
            let sub = (lead as u128 * mc as u128 % p as u128) as u64;
            let idx = shift + i;
            r[idx] = (r[idx] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ac) in a.iter().enumerate() {
        if ac == 0 {
            continue;
        }
        for (j, &bc) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ac as u128 as u64 * 0
                + ((ac as u128 * bc as u128) % p as u128) as u64)
                % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_powmod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = poly_rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        exp >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // make b monic for the remainder step
        let inv = mod_inv(*b.last().unwrap(), p);
        let monic: Vec<u64> =
            b.iter().map(|&c| ((c as u128 * inv as u128) % p as u128) as u64).collect();
        let r = poly_rem(&a, &monic, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    // f monic of degree e: irreducible iff x^{p^e} = x mod f and for every
    // prime divisor q of e, gcd(x^{p^{e/q}} - x, f) = 1
    let e = f.len() - 1;
    let x = vec![0u64, 1];
    let pow_tower = |levels: usize| -> Vec<u64> {
        // x^(p^levels) mod f by iterating the p-th power map
        let mut acc = x.clone();
        for _ in 0..levels {
            acc = poly_powmod(&acc, p, f, p);
        }
        acc
    };
    let frob_e = pow_tower(e);
    let mut diff = frob_e;
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    let mut d = diff;
    trim(&mut d);
    if !d.is_empty() {
        return false;
    }
    let mut primes = Vec::new();
    let mut n = e;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            primes.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    for q in primes {
        let mut diff = pow_tower(e / q);
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FqField {
    /// Constructs F_{p^e} with the deterministically first irreducible
    /// monic polynomial x^e + c_{e-1} x^{e-1} + ... + c_0 in counting order.
    pub fn new(p: u64, e: usize) -> Result<Arc<FqField>> {
        if !is_prime_u64(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Precondition("extension degree must be positive".into()));
        }
        if e == 1 {
            return Ok(Arc::new(FqField { p, e, modulus_tail: vec![0] }));
        }
        let mut counter: u64 = 1;
        loop {
            // digits of the counter in base p give the tail coefficients
            let mut tail = vec![0u64; e];
            let mut c = counter;
            for d in tail.iter_mut() {
                *d = c % p;
                c /= p;
            }
            if c > 0 {
                return Err(Error::Precondition(format!(
                    "no irreducible of degree {e} found over F_{p}"
                )));
            }
            let mut f = tail.clone();
            f.push(1);
            if is_irreducible(&f, p) {
                return Ok(Arc::new(FqField { p, e, modulus_tail: tail }));
            }
            counter += 1;
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    fn modulus(&self) -> Vec<u64> {
        let mut f = self.modulus_tail.clone();
        f.push(1);
        f
    }

    pub fn zero(self: &Arc<Self>) -> Fq {
        Fq { c: Vec::new(), field: Arc::clone(self) }
    }

    pub fn from_u64(self: &Arc<Self>, v: u64) -> Fq {
        let v = v % self.p;
        let c = if v == 0 { Vec::new() } else { vec![v] };
        Fq { c, field: Arc::clone(self) }
    }

    /// Element with the given coefficients of 1, x, x^2, ...
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> Fq {
        let mut c: Vec<u64> = coeffs.iter().map(|&v| v % self.p).collect();
        trim(&mut c);
        Fq { c: poly_rem(&c, &self.modulus(), self.p), field: Arc::clone(self) }
    }
}

/// An element of F_{p^e}.
#[derive(Clone, Debug)]
pub struct Fq {
    c: Vec<u64>, // little-endian, trimmed, length < e
    field: Arc<FqField>,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        debug_assert_eq!(self.field, other.field);
        self.c == other.c
    }
}
impl Eq for Fq {}

impl Coeff for Fq {
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn is_one(&self) -> bool {
        self.c == [1]
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        let p = self.field.p;
        let mut c = vec![0u64; self.c.len().max(rhs.c.len())];
        for (i, v) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = rhs.c.get(i).copied().unwrap_or(0);
            *v = (a + b) % p;
        }
        trim(&mut c);
        Fq { c, field: Arc::clone(&self.field) }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.field, rhs.field);
        let p = self.field.p;
        let c = poly_mulmod(&self.c, &rhs.c, &self.field.modulus(), p);
        Fq { c, field: Arc::clone(&self.field) }
    }

    fn neg(&self) -> Self {
        let p = self.field.p;
        let c = self.c.iter().map(|&v| (p - v) % p).collect();
        Fq { c, field: Arc::clone(&self.field) }
    }
}

impl FieldCoeff for Fq {
    fn inv(&self) -> Self {
        assert!(!self.c.is_empty(), "inverse of zero in F_{{{}^{}}}", self.field.p, self.field.e);
        // extended Euclid in F_p[x]: find s with s * self = 1 mod modulus
        let p = self.field.p;
        let mut r0 = self.field.modulus();
        let mut r1 = self.c.clone();
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // divide r0 by r1
            let inv_lead = mod_inv(*r1.last().unwrap(), p);
            let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
            let mut rem = r0.clone();
            while rem.len() >= r1.len() && !rem.is_empty() {
                let coef = ((rem.last().unwrap() % p) as u128 * inv_lead as u128 % p as u128) as u64;
                let shift = rem.len() - r1.len();
                if coef != 0 {
                    q[shift] = (q[shift] + coef) % p;
                    for (i, &rc) in r1.iter().enumerate() {
                        let sub = ((coef as u128 * rc as u128) % p as u128) as u64;
                        rem[shift + i] = (rem[shift + i] + p - sub) % p;
                    }
                }
                trim(&mut rem);
                if rem.len() < r1.len() {
                    break;
                }
            }
            // s_next = s0 - q * s1
            let mut qs1 = vec![0u64; q.len() + s1.len()];
            for (i, &qc) in q.iter().enumerate() {
                if qc == 0 {
                    continue;
                }
                for (j, &sc) in s1.iter().enumerate() {
                    qs1[i + j] =
                        (qs1[i + j] + ((qc as u128 * sc as u128) % p as u128) as u64) % p;
                }
            }
            let mut s_next = vec![0u64; s0.len().max(qs1.len())];
            for (i, v) in s_next.iter_mut().enumerate() {
                let a = s0.get(i).copied().unwrap_or(0);
                let b = qs1.get(i).copied().unwrap_or(0);
                *v = (a + p - b % p) % p;
            }
            trim(&mut s_next);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_next;
        }
        // r0 is the gcd, a nonzero constant; scale s0 by its inverse
        debug_assert_eq!(r0.len(), 1);
        let scale = mod_inv(r0[0], p);
        let mut c: Vec<u64> =
            s0.iter().map(|&v| ((v as u128 * scale as u128) % p as u128) as u64).collect();
        trim(&mut c);
        let c = poly_rem(&c, &self.field.modulus(), p);
        Fq { c, field: Arc::clone(&self.field) }
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| match i {
                0 => format!("{v}"),
                1 => format!("{v}w"),
                _ => format!("{v}w^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}
