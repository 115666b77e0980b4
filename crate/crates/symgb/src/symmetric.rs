//! Buchberger's algorithm on representations of eventually invariant
//! series, and the truncation oracle that certifies its output against the
//! classical engine.
//!
//! The loop keeps a uniform level m for the basis and the queue: while some
//! queue element is visible at level m it is activated, normalized, and all
//! of its S-series against the current basis are reduced and enqueued; when
//! nothing is visible everything is expanded to level m+1. Termination for
//! field coefficients is a theorem (finite Gröbner bases exist under
//! grevlex), so the level cap is a safety valve whose trigger signals a bug
//! rather than a mathematical possibility.

use crate::buchberger::{buchberger, lead_monomials, monomial_min_gens};
use crate::coeff::FieldCoeff;
use crate::error::{Error, Result};
use crate::invariant::{expand, remainder, s_pair, Representation};
use crate::monomial::Monomial;

/// Default level cap for desk-scale runs.
pub const DEFAULT_LEVEL_CAP: u32 = 12;

#[derive(Clone, Debug)]
pub struct SymmetricBasis<C> {
    /// Level at which the computation stopped; all basis elements are
    /// m-representations for this m.
    pub level: u32,
    /// Inter-reduced monic basis, grevlex-descending by leading monomial.
    pub basis: Vec<Representation<C>>,
}

impl<C: FieldCoeff> SymmetricBasis<C> {
    /// Minimal generators of the leading monomial ideal.
    pub fn lead_set(&self) -> Vec<Monomial> {
        let leads: Vec<Monomial> =
            self.basis.iter().filter_map(|b| b.lmon().cloned()).collect();
        monomial_min_gens(&leads)
    }
}

/// Picks the queue element to activate: among the representations visible
/// at the current level, the one with the grevlex-largest leading monomial,
/// ties broken by insertion order.
pub(crate) fn select_visible<C: FieldCoeff>(queue: &[Representation<C>]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, f) in queue.iter().enumerate() {
        if !f.is_zero() && f.visible() {
            match best {
                None => best = Some(i),
                Some(j) => {
                    if f.lmon().unwrap() > queue[j].lmon().unwrap() {
                        best = Some(i);
                    }
                }
            }
        }
    }
    best
}

/// Computes a finite Gröbner basis of the ideal generated by eventually
/// invariant homogeneous series, given as n-representations over a field.
/// Returns the final level m and the inter-reduced monic basis.
pub fn symmetric_buchberger<C: FieldCoeff>(
    gens: &[Representation<C>],
    level_cap: u32,
) -> Result<SymmetricBasis<C>> {
    let mut queue: Vec<Representation<C>> =
        gens.iter().filter(|f| !f.is_zero()).cloned().collect();
    let Some(first) = queue.first() else {
        return Ok(SymmetricBasis { level: gens.first().map_or(0, |f| f.level()), basis: Vec::new() });
    };
    let n = first.level();
    if queue.iter().any(|f| f.level() != n) {
        return Err(Error::Precondition(
            "symmetric_buchberger requires all generators at one level".into(),
        ));
    }

    let mut m = n;
    let mut basis: Vec<Representation<C>> = Vec::new();
    loop {
        while let Some(i) = select_visible(&queue) {
            let f = queue.remove(i).make_monic();
            debug_assert!(f.lmon().unwrap().within(m));
            basis.push(f);
            let f = basis.last().unwrap().clone();
            for h in basis[..basis.len() - 1].to_vec() {
                let s = s_pair(m, &h, &f)?;
                let r = remainder(m, &s, &basis)?;
                if !r.is_zero() {
                    queue.push(r);
                }
            }
        }
        if queue.is_empty() {
            break;
        }
        if m >= level_cap {
            return Err(Error::LevelCap(format!(
                "symmetric Buchberger exceeded level cap {level_cap} with {} queued series",
                queue.len()
            )));
        }
        m += 1;
        for b in basis.iter_mut() {
            *b = expand(b, m)?;
            debug_assert!(b.is_monic());
        }
        for f in queue.iter_mut() {
            *f = expand(f, m)?;
        }
    }

    Ok(SymmetricBasis { level: m, basis: interreduce(m, basis)? })
}

/// Keeps the basis elements whose leading monomials are minimal, reduces
/// every tail against the others, and sorts. Reduction preserves the
/// Gröbner property, so this only canonicalizes the output.
fn interreduce<C: FieldCoeff>(
    m: u32,
    basis: Vec<Representation<C>>,
) -> Result<Vec<Representation<C>>> {
    let mut minimal: Vec<Representation<C>> = Vec::new();
    for g in &basis {
        let lg = g.lmon().unwrap();
        let redundant = basis
            .iter()
            .any(|h| h.lmon().unwrap() != lg && h.lmon().unwrap().divides(lg))
            || minimal.iter().any(|h| h.lmon().unwrap() == lg);
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Representation<C>> = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<Representation<C>> = minimal
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, h)| h.clone())
            .collect();
        reduced.push(remainder(m, g, &others)?);
    }
    reduced.sort_by(|a, b| b.lmon().unwrap().cmp(a.lmon().unwrap()));
    Ok(reduced)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleLevel {
    pub m: u32,
    /// Minimal generators of the leading monomial ideal of the ideal
    /// generated by the truncations at level m.
    pub leads: Vec<Monomial>,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub levels: Vec<OracleLevel>,
    /// Smallest level from which the lead set stays constant through m_max.
    /// `None` when the final level is the only one in its run, i.e. the
    /// generator sets were still moving at m_max.
    pub stable_at: Option<u32>,
}

impl OracleReport {
    pub fn stable_leads(&self) -> Option<&[Monomial]> {
        self.stable_at?;
        self.levels.last().map(|l| l.leads.as_slice())
    }
}

/// The truncation-stabilization oracle: for each m between the base level
/// and m_max, computes the classical reduced Gröbner basis of the ideal of
/// truncations in x1..xm and records the minimal generators of its lead
/// ideal. The symmetric engine's output must reproduce the stabilized set.
pub fn stabilization_oracle<C: FieldCoeff>(
    gens: &[Representation<C>],
    m_max: u32,
) -> Result<OracleReport> {
    let nonzero: Vec<&Representation<C>> = gens.iter().filter(|f| !f.is_zero()).collect();
    let n = nonzero.first().map_or(0, |f| f.level());
    if nonzero.iter().any(|f| f.level() != n) {
        return Err(Error::Precondition(
            "stabilization_oracle requires all generators at one level".into(),
        ));
    }
    if m_max < n {
        return Err(Error::Precondition(format!(
            "m_max {m_max} is below the base level {n}"
        )));
    }
    let mut levels = Vec::new();
    for m in n..=m_max {
        let truncs: Vec<_> = nonzero.iter().map(|f| f.truncation(m)).collect();
        let gb = buchberger(&truncs);
        levels.push(OracleLevel { m, leads: lead_monomials(&gb) });
    }
    let last = levels.last().expect("at least one level");
    let mut first_stable = last.m;
    for l in levels.iter().rev().skip(1) {
        if l.leads == last.leads {
            first_stable = l.m;
        } else {
            break;
        }
    }
    let stable_at = (first_stable < last.m).then_some(first_stable);
    Ok(OracleReport { levels, stable_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn xm(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    fn rep(n: u32, d: u32, terms: &[(i64, &[(u32, u32)])]) -> Representation<BigRational> {
        Representation::new(
            n,
            d,
            Poly::from_terms(terms.iter().map(|&(c, m)| (q(c), xm(m)))),
        )
        .unwrap()
    }

    #[test]
    fn single_generator() {
        let f = rep(1, 1, &[(1, &[(1, 1)]), (1, &[(2, 1)])]);
        let gb = symmetric_buchberger(&[f], DEFAULT_LEVEL_CAP).unwrap();
        assert_eq!(gb.lead_set(), vec![xm(&[(1, 1)])]);
        assert_eq!(gb.level, 1);
    }

    #[test]
    fn power_sums_example() {
        // generators: sum x_i and sum x_i^2 at level 1
        let f1 = rep(1, 1, &[(1, &[(1, 1)]), (1, &[(2, 1)])]);
        let f2 = rep(1, 2, &[(1, &[(1, 2)]), (1, &[(2, 2)])]);
        let gb = symmetric_buchberger(&[f1.clone(), f2.clone()], DEFAULT_LEVEL_CAP).unwrap();
        assert_eq!(gb.lead_set(), vec![xm(&[(2, 2)]), xm(&[(1, 1)])]);

        // the degree-2 element encodes sum_{i>=2} x_i^2 + sum_{2<=i<j} x_i x_j
        let deg2 = gb.basis.iter().find(|b| b.degree() == 2).unwrap();
        assert_eq!(
            deg2.body(),
            &Poly::from_terms(vec![
                (q(1), xm(&[(2, 2)])),
                (q(1), xm(&[(2, 1), (3, 1)])),
                (q(1), xm(&[(3, 2)])),
                (q(1), xm(&[(3, 1), (4, 1)])),
            ])
        );

        // certification against the truncation oracle
        let oracle = stabilization_oracle(&[f1, f2], 5).unwrap();
        assert!(oracle.stable_at.unwrap() <= 3);
        assert_eq!(oracle.stable_leads().unwrap(), gb.lead_set().as_slice());
    }

    #[test]
    fn squares_at_level_zero() {
        // body x1^2 at n=0 encodes sum x_i^2; certified only by the oracle
        let f = rep(0, 2, &[(1, &[(1, 2)])]);
        let gb = symmetric_buchberger(&[f.clone()], DEFAULT_LEVEL_CAP).unwrap();
        let oracle = stabilization_oracle(&[f], 5).unwrap();
        assert!(oracle.stable_at.is_some());
        assert_eq!(oracle.stable_leads().unwrap(), gb.lead_set().as_slice());
    }

    #[test]
    fn buchberger_criterion_at_exit() {
        use crate::invariant::{remainder, s_pair};
        let f1 = rep(1, 1, &[(1, &[(1, 1)]), (1, &[(2, 1)])]);
        let f2 = rep(1, 2, &[(1, &[(1, 2)]), (1, &[(2, 2)])]);
        let gb = symmetric_buchberger(&[f1, f2], DEFAULT_LEVEL_CAP).unwrap();
        for i in 0..gb.basis.len() {
            for j in 0..i {
                let s = s_pair(gb.level, &gb.basis[i], &gb.basis[j]).unwrap();
                let r = remainder(gb.level, &s, &gb.basis).unwrap();
                assert!(r.is_zero(), "S-pair ({i},{j}) does not reduce to zero");
            }
        }
    }

    #[test]
    fn level_cap_is_a_diagnostic() {
        // sum of squares needs level 1; cap 0 must refuse loudly
        let f = rep(0, 2, &[(1, &[(1, 2)])]);
        let err = symmetric_buchberger(&[f], 0).unwrap_err();
        assert!(matches!(err, crate::error::Error::LevelCap(_)));
    }

    #[test]
    fn oracle_trivial_case() {
        let f = rep(1, 1, &[(1, &[(1, 1)])]);
        let oracle = stabilization_oracle(&[f], 4).unwrap();
        assert_eq!(oracle.stable_at, Some(1));
        assert_eq!(oracle.stable_leads().unwrap(), &[xm(&[(1, 1)])]);
    }
}
