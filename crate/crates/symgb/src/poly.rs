//! Sparse polynomials: a grevlex-descending term list over an exact
//! coefficient domain. The first term is the leading term.

use crate::coeff::{Coeff, FieldCoeff};
use crate::monomial::{Monomial, SparseMono, VarId};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::Hash;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C, M = Monomial> {
    terms: Vec<(C, M)>, // nonzero coefficients, strictly descending monomials
}

impl<C: Coeff, V: VarId> Poly<C, SparseMono<V>> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: vec![(c, SparseMono::one())] }
    }

    pub fn term(c: C, m: SparseMono<V>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: vec![(c, m)] }
    }

    /// Normalizes an arbitrary term list: sorts descending, merges equal
    /// monomials, drops zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (C, SparseMono<V>)>) -> Self {
        let mut terms: Vec<(C, SparseMono<V>)> = terms.into_iter().collect();
        terms.sort_by(|a, b| b.1.cmp(&a.1));
        let mut out: Vec<(C, SparseMono<V>)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some((lc, lm)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((c, m)),
            }
            if let Some((lc, _)) = out.last() {
                if lc.is_zero() {
                    out.pop();
                }
            }
        }
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(C, SparseMono<V>)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term; panics on zero.
    pub fn lt(&self) -> &(C, SparseMono<V>) {
        &self.terms[0]
    }

    pub fn lmon(&self) -> &SparseMono<V> {
        &self.terms[0].1
    }

    pub fn lc(&self) -> &C {
        &self.terms[0].0
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.terms[0].0.is_one()
    }

    /// Total degree (max over terms); 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(_, m)| m.degree()).max().unwrap_or(0)
    }

    /// The common degree of all terms, if the polynomial is homogeneous and
    /// nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.1.degree();
        self.terms.iter().all(|(_, m)| m.degree() == d).then_some(d)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out: Vec<(C, SparseMono<V>)> =
            Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match self.terms[i].1.cmp(&rhs.terms[j].1) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].0.add(&rhs.terms[j].0);
                    if !c.is_zero() {
                        out.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(c, m)| (c.neg(), m.clone())).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, c: &C, m: &SparseMono<V>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(tc, tm)| (tc.mul(c), tm.mul(m))).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(c, &SparseMono::one())
    }

    pub fn mul_mono(&self, m: &SparseMono<V>) -> Self {
        Poly {
            terms: self.terms.iter().map(|(tc, tm)| (tc.clone(), tm.mul(m))).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self
    where
        SparseMono<V>: Hash,
    {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut acc: HashMap<SparseMono<V>, C> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ac, am) in &self.terms {
            for (bc, bm) in &rhs.terms {
                let m = am.mul(bm);
                let c = ac.mul(bc);
                match acc.get_mut(&m) {
                    Some(cur) => *cur = cur.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_terms(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D, SparseMono<V>> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (f(c), m.clone()))
                .filter(|(c, _)| !c.is_zero())
                .collect(),
        }
    }
}

impl<C: FieldCoeff, V: VarId> Poly<C, SparseMono<V>> {
    /// Divides by the leading coefficient; panics on zero.
    pub fn make_monic(&self) -> Self {
        assert!(!self.is_zero(), "cannot normalize the zero polynomial");
        if self.is_monic() {
            return self.clone();
        }
        let inv = self.lc().inv();
        self.scale(&inv)
    }
}

impl<C: Coeff> Poly<C, Monomial> {
    /// f^(m): keeps only the terms supported on {x1, ..., xm}.
    pub fn truncate(&self, m: u32) -> Self {
        Poly {
            terms: self.terms.iter().filter(|(_, mo)| mo.within(m)).cloned().collect(),
        }
    }

    /// Largest variable index appearing; 0 for constants and zero.
    pub fn max_var(&self) -> u32 {
        self.terms.iter().map(|(_, m)| m.max_var()).max().unwrap_or(0)
    }

    /// Applies a variable permutation to every monomial (coefficients are
    /// permuted through their own action).
    pub fn permute(&self, p: &crate::monomial::Perm) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(c, m)| (c.permute_vars(p), m.permute(p))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn xm(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn normalization_and_arithmetic() {
        let f = Poly::from_terms(vec![
            (q(1), xm(&[(2, 1)])),
            (q(2), xm(&[(1, 1)])),
            (q(-1), xm(&[(2, 1)])),
        ]);
        assert_eq!(f.num_terms(), 1);
        assert_eq!(f.lmon(), &xm(&[(1, 1)]));

        let g = Poly::from_terms(vec![(q(1), xm(&[(1, 1)])), (q(1), xm(&[(2, 1)]))]);
        let h = g.mul(&g);
        // (x1 + x2)^2 = x1^2 + 2 x1 x2 + x2^2
        assert_eq!(
            h,
            Poly::from_terms(vec![
                (q(1), xm(&[(1, 2)])),
                (q(2), xm(&[(1, 1), (2, 1)])),
                (q(1), xm(&[(2, 2)])),
            ])
        );
        assert!(h.sub(&h).is_zero());
        assert_eq!(h.homogeneous_degree(), Some(2));
    }

    #[test]
    fn truncation() {
        let f = Poly::from_terms(vec![
            (q(1), xm(&[(1, 1)])),
            (q(1), xm(&[(2, 1)])),
            (q(1), xm(&[(3, 1)])),
        ]);
        let t = f.truncate(2);
        assert_eq!(
            t,
            Poly::from_terms(vec![(q(1), xm(&[(1, 1)])), (q(1), xm(&[(2, 1)]))])
        );
        let g = Poly::from_terms(vec![(q(1), xm(&[(1, 1), (3, 1)])), (q(1), xm(&[(2, 2)]))]);
        assert_eq!(g.truncate(2), Poly::from_terms(vec![(q(1), xm(&[(2, 2)]))]));
    }
}
