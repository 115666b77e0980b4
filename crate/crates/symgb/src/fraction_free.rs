//! Fraction-free Buchberger over the integers with prime harvesting.
//!
//! Running Buchberger on integer polynomials with pseudo-reduction (scale,
//! then subtract) keeps everything in Z. Whenever an integer appears in a
//! leading position — the leading coefficient of an element entering the
//! basis, or a content cleared from a remainder — its prime divisors are
//! collected. For any prime p dividing none of the collected integers, the
//! whole run maps termwise to a valid mod-p run with the same leading
//! monomials, so the mod-p ideal-membership answer agrees with the
//! characteristic-zero one. The collected primes are the only candidates
//! for characteristic-dependent behavior; callers evaluate predicates
//! directly at each of them and spot-check the assumption at unharvested
//! primes.

use crate::coeff::is_prime_u64;
use crate::error::{Error, Result};
use crate::monomial::{SparseMono, VarId};
use crate::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::hash::Hash;

pub struct HarvestRun<M> {
    /// A Gröbner basis (over Q, cleared of denominators) of the input ideal:
    /// primitive integer polynomials.
    pub basis: Vec<Poly<BigInt, M>>,
    /// Every prime dividing a harvested leading coefficient or content.
    pub primes: BTreeSet<u64>,
    /// Whether the ideal contains 1 over Q (a nonzero constant survives).
    pub contains_one_q: bool,
}

fn harvest_into(n: &BigInt, primes: &mut BTreeSet<u64>) -> Result<()> {
    let mut n = n.abs();
    if n.is_zero() || n.is_one() {
        return Ok(());
    }
    for p in [2u64, 3, 5] {
        let bp = BigInt::from(p);
        while (&n % &bp).is_zero() {
            primes.insert(p);
            n /= &bp;
        }
    }
    let mut rest: u128 = match n.to_u128() {
        Some(v) => v,
        None => {
            return Err(Error::HarvestCheck(format!(
                "coefficient {n} too large to factor"
            )))
        }
    };
    let mut d: u128 = 7;
    while d * d <= rest && d < 100_000 {
        while rest % d == 0 {
            primes.insert(d as u64);
            rest /= d;
        }
        d += 2;
    }
    while rest > 1 {
        if rest <= u64::MAX as u128 && is_prime_u64(rest as u64) {
            primes.insert(rest as u64);
            break;
        }
        let f = pollard_rho(rest)?;
        let mut side = f;
        // fully split the factor (it may itself be composite)
        while side > 1 {
            if side <= u64::MAX as u128 && is_prime_u64(side as u64) {
                primes.insert(side as u64);
                break;
            }
            side = pollard_rho(side)?;
        }
        while rest % f == 0 {
            rest /= f;
        }
    }
    Ok(())
}

fn pollard_rho(n: u128) -> Result<u128> {
    if n % 2 == 0 {
        return Ok(2);
    }
    let mulmod = |a: u128, b: u128, m: u128| -> u128 {
        // schoolbook double-and-add to avoid overflow at 128 bits
        let mut acc: u128 = 0;
        let mut a = a % m;
        let mut b = b;
        while b > 0 {
            if b & 1 == 1 {
                acc = (acc + a) % m;
            }
            a = (a + a) % m;
            b >>= 1;
        }
        acc
    };
    for c in 1..64u128 {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            let diff = if x > y { x - y } else { y - x };
            d = gcd_u128(diff, n);
        }
        if d != n && d != 0 {
            return Ok(d);
        }
    }
    Err(Error::HarvestCheck(format!("failed to factor {n}")))
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Integer content (positive); zero for the zero polynomial.
fn content<V: VarId>(f: &Poly<BigInt, SparseMono<V>>) -> BigInt {
    let mut g = BigInt::zero();
    for (c, _) in f.terms() {
        g = g.gcd(c);
    }
    g
}

/// Makes the polynomial primitive with positive leading coefficient,
/// harvesting the stripped content.
fn primitive<V: VarId>(
    f: &Poly<BigInt, SparseMono<V>>,
    primes: &mut BTreeSet<u64>,
) -> Result<Poly<BigInt, SparseMono<V>>> {
    let mut c = content(f);
    harvest_into(&c, primes)?;
    if f.lc().is_negative() {
        c = -c;
    }
    Ok(f.map_coeffs(|x| x / &c))
}

/// Pseudo-reduction: repeatedly clears the largest reducible term, scaling
/// the running remainder by the quotient of leading coefficients so the
/// computation stays in Z. The scale factors divide reducer leading
/// coefficients, which are already harvested.
fn pseudo_reduce<V: VarId>(
    s: &Poly<BigInt, SparseMono<V>>,
    basis: &[Poly<BigInt, SparseMono<V>>],
) -> Poly<BigInt, SparseMono<V>> {
    let mut rest = s.clone();
    let mut done: Vec<(BigInt, SparseMono<V>)> = Vec::new();
    'outer: while !rest.is_zero() {
        let (c, m) = rest.lt().clone();
        for f in basis {
            if let Some(q) = m.try_div(f.lmon()) {
                let l = f.lc();
                let g = c.gcd(l);
                let w = l / &g;
                if !w.is_one() {
                    rest = rest.map_coeffs(|x| x * &w);
                    done = done.into_iter().map(|(x, mm)| (x * &w, mm)).collect();
                }
                rest = rest.sub(&f.mul_term(&(&c / &g), &q));
                continue 'outer;
            }
        }
        done.push((c, m));
        rest = Poly::from_terms(rest.terms()[1..].iter().cloned());
    }
    Poly::from_terms(done)
}

/// Runs Buchberger fraction-free over Z, harvesting primes from every
/// leading coefficient that enters the basis and every stripped content.
pub fn z_buchberger_harvest<V>(gens: &[Poly<BigInt, SparseMono<V>>]) -> Result<HarvestRun<SparseMono<V>>>
where
    V: VarId,
    SparseMono<V>: Hash,
{
    let mut primes = BTreeSet::new();
    let mut basis: Vec<Poly<BigInt, SparseMono<V>>> = Vec::new();
    for f in gens {
        if f.is_zero() {
            continue;
        }
        harvest_into(f.lc(), &mut primes)?;
        basis.push(primitive(f, &mut primes)?);
    }

    let mut pairs: BinaryHeap<Reverse<(u32, SparseMono<V>, usize, usize)>> = BinaryHeap::new();
    for j in 0..basis.len() {
        for i in 0..j {
            let lcm = basis[i].lmon().lcm(basis[j].lmon());
            pairs.push(Reverse((lcm.degree(), lcm, i, j)));
        }
    }

    while let Some(Reverse((_, _, i, j))) = pairs.pop() {
        if basis[i].lmon().is_coprime(basis[j].lmon()) {
            continue;
        }
        let (f, g) = (&basis[i], &basis[j]);
        let gamma = f.lmon().lcm(g.lmon());
        let d = f.lc().gcd(g.lc());
        let s = f
            .mul_term(&(g.lc() / &d), &gamma.try_div(f.lmon()).unwrap())
            .sub(&g.mul_term(&(f.lc() / &d), &gamma.try_div(g.lmon()).unwrap()));
        let r = pseudo_reduce(&s, &basis);
        if !r.is_zero() {
            harvest_into(r.lc(), &mut primes)?;
            let r = primitive(&r, &mut primes)?;
            basis.push(r);
            let j = basis.len() - 1;
            for i in 0..j {
                let lcm = basis[i].lmon().lcm(basis[j].lmon());
                pairs.push(Reverse((lcm.degree(), lcm, i, j)));
            }
        }
    }

    let contains_one_q = basis.iter().any(|g| g.lmon().is_one());
    Ok(HarvestRun { basis, primes, contains_one_q })
}
