//! Division with remainder and Buchberger's algorithm over a field, in
//! finitely many variables. This is the classical engine: it is both a
//! subroutine (generic initial ideals, radical membership) and the
//! truncation oracle certifying the symmetric engine.

use crate::coeff::FieldCoeff;
use crate::monomial::{Monomial, SparseMono, VarId};
use crate::poly::Poly;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::hash::Hash;

/// Division with remainder by a list of monic divisors. Deterministic: at
/// each step the grevlex-largest reducible term of the running remainder is
/// reduced by the lowest-index divisor whose leading monomial divides it.
///
/// Returns `(quotients, remainder)` with `h = sum_i q_i f_i + r`, no term of
/// `r` divisible by any leading monomial of `F`, and `lmon(q_i f_i) <= lmon(h)`.
pub fn divide<C, V>(
    h: &Poly<C, SparseMono<V>>,
    divisors: &[Poly<C, SparseMono<V>>],
) -> (Vec<Poly<C, SparseMono<V>>>, Poly<C, SparseMono<V>>)
where
    C: FieldCoeff,
    V: VarId,
{
    for f in divisors {
        debug_assert!(f.is_monic(), "divisors must be monic");
    }
    let mut quotients: Vec<Vec<(C, SparseMono<V>)>> = vec![Vec::new(); divisors.len()];
    let mut remainder: Vec<(C, SparseMono<V>)> = Vec::new();
    let mut rest = h.clone();
    'outer: while !rest.is_zero() {
        let (c, m) = rest.lt().clone();
        for (i, f) in divisors.iter().enumerate() {
            if let Some(q) = m.try_div(f.lmon()) {
                rest = rest.sub(&f.mul_term(&c, &q));
                quotients[i].push((c, q));
                continue 'outer;
            }
        }
        // irreducible: moves to the remainder; everything left is smaller
        remainder.push((c, m));
        rest = Poly::from_terms(rest.terms()[1..].iter().cloned());
    }
    (
        quotients.into_iter().map(Poly::from_terms).collect(),
        Poly::from_terms(remainder),
    )
}

/// Remainder only.
pub fn reduce<C, V>(
    h: &Poly<C, SparseMono<V>>,
    divisors: &[Poly<C, SparseMono<V>>],
) -> Poly<C, SparseMono<V>>
where
    C: FieldCoeff,
    V: VarId,
{
    divide(h, divisors).1
}

fn s_poly<C, V>(f: &Poly<C, SparseMono<V>>, g: &Poly<C, SparseMono<V>>) -> Poly<C, SparseMono<V>>
where
    C: FieldCoeff,
    V: VarId,
{
    let gamma = f.lmon().lcm(g.lmon());
    let qf = gamma.try_div(f.lmon()).unwrap();
    let qg = gamma.try_div(g.lmon()).unwrap();
    let cf = f.lc().inv();
    let cg = g.lc().inv();
    f.mul_term(&cf, &qf).sub(&g.mul_term(&cg, &qg))
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`:
/// monic, leading monomials a divisibility antichain, every element fully
/// reduced against the others, sorted grevlex-descending by leading
/// monomial. The reduced basis is unique, so the output is independent of
/// the input order.
///
/// Pair selection follows the normal strategy (smallest lcm first); pairs
/// with coprime leading monomials are skipped.
pub fn buchberger<C, V>(gens: &[Poly<C, SparseMono<V>>]) -> Vec<Poly<C, SparseMono<V>>>
where
    C: FieldCoeff,
    V: VarId,
    SparseMono<V>: Hash,
{
    let mut basis: Vec<Poly<C, SparseMono<V>>> = gens
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| f.make_monic())
        .collect();

    let mut pairs: BinaryHeap<Reverse<(u32, SparseMono<V>, usize, usize)>> = BinaryHeap::new();
    let push_pairs = |pairs: &mut BinaryHeap<_>, basis: &[Poly<C, SparseMono<V>>], j: usize| {
        for i in 0..j {
            let lcm = basis[i].lmon().lcm(basis[j].lmon());
            pairs.push(Reverse((lcm.degree(), lcm, i, j)));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&mut pairs, &basis, j);
    }

    while let Some(Reverse((_, lcm, i, j))) = pairs.pop() {
        if basis[i].lmon().is_coprime(basis[j].lmon()) {
            continue;
        }
        // stale pair guard: the stored lcm may be outdated only if basis
        // elements changed, which they never do during the main loop
        debug_assert_eq!(lcm, basis[i].lmon().lcm(basis[j].lmon()));
        let s = s_poly(&basis[i], &basis[j]);
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            basis.push(r.make_monic());
            push_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }

    interreduce(basis)
}

/// Minimizes and tail-reduces a Gröbner basis into the reduced basis.
fn interreduce<C, V>(basis: Vec<Poly<C, SparseMono<V>>>) -> Vec<Poly<C, SparseMono<V>>>
where
    C: FieldCoeff,
    V: VarId,
{
    let minimal: Vec<Poly<C, SparseMono<V>>> = basis
        .iter()
        .filter(|g| {
            !basis
                .iter()
                .any(|h| h.lmon() != g.lmon() && h.lmon().divides(g.lmon()))
        })
        .cloned()
        .collect();
    // equal leading monomials cannot occur mid-run, but inputs might repeat
    let mut seen: Vec<&SparseMono<V>> = Vec::new();
    let mut unique: Vec<Poly<C, SparseMono<V>>> = Vec::new();
    for g in &minimal {
        if !seen.contains(&g.lmon()) {
            seen.push(g.lmon());
            unique.push(g.clone());
        }
    }
    let mut reduced: Vec<Poly<C, SparseMono<V>>> = Vec::with_capacity(unique.len());
    for (k, g) in unique.iter().enumerate() {
        let others: Vec<_> = unique
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, h)| h.clone())
            .collect();
        reduced.push(reduce(g, &others));
    }
    reduced.sort_by(|a, b| b.lmon().cmp(a.lmon()));
    reduced
}

/// Buchberger criterion: every S-polynomial reduces to zero. Used as an
/// independent correctness check on candidate bases.
pub fn is_groebner_basis<C, V>(basis: &[Poly<C, SparseMono<V>>]) -> bool
where
    C: FieldCoeff,
    V: VarId,
{
    for i in 0..basis.len() {
        for j in 0..i {
            if !reduce(&s_poly(&basis[i], &basis[j]), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// True when the basis generates the unit ideal.
pub fn contains_one<C, V>(basis: &[Poly<C, SparseMono<V>>]) -> bool
where
    C: FieldCoeff,
    V: VarId,
{
    basis.iter().any(|g| !g.is_zero() && g.lmon().is_one())
}

/// Minimal generators of the monomial ideal spanned by `monomials`: drops
/// every element divisible by another, returns grevlex-descending order.
pub fn monomial_min_gens(monomials: &[Monomial]) -> Vec<Monomial> {
    let mut ms: Vec<Monomial> = monomials.to_vec();
    ms.sort_by(|a, b| b.cmp(a));
    ms.dedup();
    let keep: Vec<Monomial> = ms
        .iter()
        .filter(|m| !ms.iter().any(|d| *d != **m && d.divides(m)))
        .cloned()
        .collect();
    keep
}

/// Leading monomials of a basis, as minimal generators.
pub fn lead_monomials<C: FieldCoeff>(basis: &[Poly<C, Monomial>]) -> Vec<Monomial> {
    let leads: Vec<Monomial> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.lmon().clone())
        .collect();
    monomial_min_gens(&leads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type QPoly = Poly<BigRational, Monomial>;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn xm(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    fn poly(terms: &[(i64, &[(u32, u32)])]) -> QPoly {
        Poly::from_terms(terms.iter().map(|&(c, m)| (q(c), xm(m))))
    }

    #[test]
    fn divide_examples() {
        // h = x1^2, F = [x1] -> q = [x1], r = 0
        let (qs, r) = divide(&poly(&[(1, &[(1, 2)])]), &[poly(&[(1, &[(1, 1)])])]);
        assert_eq!(qs[0], poly(&[(1, &[(1, 1)])]));
        assert!(r.is_zero());

        // h = x1 x2 + x2^2, F = [x1 + x2] -> q = [x2], r = 0
        let (qs, r) = divide(
            &poly(&[(1, &[(1, 1), (2, 1)]), (1, &[(2, 2)])]),
            &[poly(&[(1, &[(1, 1)]), (1, &[(2, 1)])])],
        );
        assert_eq!(qs[0], poly(&[(1, &[(2, 1)])]));
        assert!(r.is_zero());

        // h = x2^3, F = [x1] -> q = [0], r = x2^3
        let (qs, r) = divide(&poly(&[(1, &[(2, 3)])]), &[poly(&[(1, &[(1, 1)])])]);
        assert!(qs[0].is_zero());
        assert_eq!(r, poly(&[(1, &[(2, 3)])]));

        // empty divisor list
        let h = poly(&[(3, &[(1, 1)])]);
        let (qs, r) = divide(&h, &[]);
        assert!(qs.is_empty());
        assert_eq!(r, h);
    }

    #[test]
    fn divide_reconstructs() {
        let f1 = poly(&[(1, &[(1, 1)]), (1, &[(2, 1)]), (1, &[(3, 1)])]);
        let f2 = poly(&[(1, &[(1, 2)]), (-1, &[(2, 1), (3, 1)])]);
        let h = poly(&[
            (2, &[(1, 3)]),
            (1, &[(1, 1), (2, 2)]),
            (-3, &[(3, 3)]),
            (1, &[(2, 1)]),
        ]);
        let divisors = vec![f1.clone(), f2.clone()];
        let (qs, r) = divide(&h, &divisors);
        let mut rebuilt = r.clone();
        for (qi, fi) in qs.iter().zip(&divisors) {
            rebuilt = rebuilt.add(&qi.mul(fi));
        }
        assert_eq!(rebuilt, h);
        for (_, m) in r.terms() {
            assert!(divisors.iter().all(|f| !f.lmon().divides(m)));
        }
    }

    #[test]
    fn buchberger_examples() {
        // <x1 + x2 + x3, x1^2 + x2^2 + x3^2>: leads {x1, x2^2}
        let gb = buchberger(&[
            poly(&[(1, &[(1, 1)]), (1, &[(2, 1)]), (1, &[(3, 1)])]),
            poly(&[(1, &[(1, 2)]), (1, &[(2, 2)]), (1, &[(3, 2)])]),
        ]);
        assert!(is_groebner_basis(&gb));
        assert_eq!(lead_monomials(&gb), vec![xm(&[(2, 2)]), xm(&[(1, 1)])]);

        // single monomial
        let gb = buchberger(&[poly(&[(1, &[(1, 1)])])]);
        assert_eq!(gb, vec![poly(&[(1, &[(1, 1)])])]);

        // <x1 x2 - x3^2, x2>: leads {x2, x3^2}
        let gb = buchberger(&[
            poly(&[(1, &[(1, 1), (2, 1)]), (-1, &[(3, 2)])]),
            poly(&[(1, &[(2, 1)])]),
        ]);
        assert!(is_groebner_basis(&gb));
        assert_eq!(lead_monomials(&gb), vec![xm(&[(3, 2)]), xm(&[(2, 1)])]);
    }

    #[test]
    fn reduced_basis_is_input_order_independent() {
        let f1 = poly(&[(1, &[(1, 1)]), (1, &[(2, 1)]), (1, &[(3, 1)])]);
        let f2 = poly(&[(1, &[(1, 2)]), (1, &[(2, 2)]), (1, &[(3, 2)])]);
        let f3 = poly(&[(2, &[(1, 1), (2, 1)]), (1, &[(3, 2)])]);
        let a = buchberger(&[f1.clone(), f2.clone(), f3.clone()]);
        let b = buchberger(&[f3, f1, f2]);
        assert_eq!(a, b);
    }

    #[test]
    fn min_gens() {
        assert_eq!(
            monomial_min_gens(&[xm(&[(1, 1)]), xm(&[(1, 2)]), xm(&[(1, 1), (2, 1)])]),
            vec![xm(&[(1, 1)])]
        );
        assert_eq!(monomial_min_gens(&[]), Vec::<Monomial>::new());
        let antichain = [xm(&[(1, 2)]), xm(&[(2, 3)]), xm(&[(1, 1), (2, 1)])];
        assert_eq!(
            monomial_min_gens(&antichain),
            vec![xm(&[(2, 3)]), xm(&[(1, 2)]), xm(&[(1, 1), (2, 1)])]
        );
    }
}
