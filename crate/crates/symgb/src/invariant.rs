//! Finite encodings of eventually invariant grevlex series.
//!
//! A homogeneous series that is fixed by every permutation moving only
//! variable indices beyond n is determined by its coefficients on the
//! grevlex-largest monomial of each S_{>n}-orbit. The `Representation` type
//! stores exactly those terms. Arithmetic decodes representations to honest
//! truncations in finitely many variables, operates there, and filters the
//! result back to orbit-maximal terms.

use crate::coeff::{Coeff, FieldCoeff};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, Perm};
use crate::poly::Poly;

/// The n-representation of an S_{>n}-invariant homogeneous grevlex series:
/// the level n, the homogeneous degree, and the polynomial of orbit-maximal
/// terms. Valid bodies contain only monomials that are grevlex-largest in
/// their S_{>n}-orbit, and a degree-d monomial never involves a variable
/// beyond x_{n+d}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Representation<C> {
    level: u32,
    degree: u32,
    body: Poly<C>,
}

impl<C: Coeff> Representation<C> {
    pub fn new(level: u32, degree: u32, body: Poly<C>) -> Result<Self> {
        if let Some(d) = body.homogeneous_degree() {
            if d != degree {
                return Err(Error::Precondition(format!(
                    "body has degree {d}, expected {degree}"
                )));
            }
        } else if !body.is_zero() {
            return Err(Error::Precondition("body is not homogeneous".into()));
        }
        for (_, m) in body.terms() {
            if !m.is_orbit_max(level) {
                return Err(Error::Precondition(format!(
                    "monomial {m} is not orbit-maximal at level {level}"
                )));
            }
            if m.max_var() > level + degree {
                return Err(Error::Precondition(format!(
                    "monomial {m} exceeds the variable bound x{}",
                    level + degree
                )));
            }
        }
        Ok(Representation { level, degree, body })
    }

    /// Internal constructor for bodies already known to be valid.
    pub(crate) fn new_unchecked(level: u32, degree: u32, body: Poly<C>) -> Self {
        debug_assert!({
            let r = Representation::new(level, degree, body.clone());
            r.is_ok()
        });
        Representation { level, degree, body }
    }

    pub fn zero(level: u32, degree: u32) -> Self {
        Representation { level, degree, body: Poly::zero() }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn body(&self) -> &Poly<C> {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Leading monomial of the encoded series (the body's leading monomial:
    /// every other orbit member is smaller).
    pub fn lmon(&self) -> Option<&Monomial> {
        (!self.body.is_zero()).then(|| self.body.lmon())
    }

    pub fn lc(&self) -> Option<&C> {
        (!self.body.is_zero()).then(|| self.body.lc())
    }

    pub fn is_monic(&self) -> bool {
        self.body.is_monic()
    }

    /// True when the truncation to the representation's own level is
    /// nonzero. For a homogeneous series this holds exactly when the
    /// leading monomial lives in x1..x_level: among monomials of one degree
    /// everything supported there beats everything that is not.
    pub fn visible(&self) -> bool {
        !self.body.is_zero() && self.body.lmon().within(self.level)
    }

    /// The honest truncation f^(M) as a polynomial in x1..xM: every body
    /// term is expanded to all members of its S_{>level}-orbit supported on
    /// {x1..xM}, with the coefficient carried along the moving permutation.
    pub fn truncation(&self, m_target: u32) -> Poly<C> {
        let mut terms: Vec<(C, Monomial)> = Vec::new();
        for (c, alpha) in self.body.terms() {
            for (beta, pi) in orbit_members(alpha, self.level, m_target) {
                if beta.within(m_target) {
                    terms.push((c.permute_vars(&pi), beta));
                }
            }
        }
        Poly::from_terms(terms)
    }

    /// The representation minus its leading term.
    pub fn tail(&self) -> Self {
        if self.body.is_zero() {
            return self.clone();
        }
        Representation {
            level: self.level,
            degree: self.degree,
            body: Poly::from_terms(self.body.terms()[1..].iter().cloned()),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Representation<D> {
        Representation {
            level: self.level,
            degree: self.degree,
            body: self.body.map_coeffs(f),
        }
    }
}

impl<C: FieldCoeff> Representation<C> {
    pub fn make_monic(&self) -> Self {
        Representation {
            level: self.level,
            degree: self.degree,
            body: self.body.make_monic(),
        }
    }
}

/// Enumerates the tail placements shared by expansion and member listing.
///
/// `alpha` must be orbit-maximal at level `n`. Its exponents beyond n are
/// distributed over the window of positions n+1..=window_end, each position
/// taking at most one exponent; when `allow_suffix` is set the exponents
/// left over are packed in weakly decreasing order starting at
/// window_end + 1 (producing the orbit-maximal representative of a
/// sub-orbit), otherwise placements that do not exhaust the tail are
/// discarded. The returned permutation moves `alpha` to each output, fixing
/// 1..n, and is what acts on parametric coefficients.
fn tail_placements(
    alpha: &Monomial,
    n: u32,
    window_end: u32,
    allow_suffix: bool,
) -> Vec<(Monomial, Perm)> {
    debug_assert!(alpha.is_orbit_max(n), "{alpha} is not an n-representative");
    let (head, tail) = alpha.split_at_level(n);
    let mut out = Vec::new();
    // placed: (original position, value, target position)
    let mut placed: Vec<(u32, u32, u32)> = Vec::new();
    let mut remaining: Vec<(u32, u32)> = tail.clone();

    fn rec(
        pos: u32,
        window_end: u32,
        allow_suffix: bool,
        head: &[(u32, u32)],
        placed: &mut Vec<(u32, u32, u32)>,
        remaining: &mut Vec<(u32, u32)>,
        out: &mut Vec<(Monomial, Perm)>,
    ) {
        if pos > window_end {
            if !allow_suffix && !remaining.is_empty() {
                return;
            }
            let mut vars: Vec<(u32, u32)> = head.to_vec();
            let mut pairs: Vec<(u32, u32)> = Vec::new();
            for &(orig, val, target) in placed.iter() {
                vars.push((target, val));
                pairs.push((orig, target));
            }
            // leftovers keep their weakly decreasing order and are packed
            // contiguously after the window
            for (k, &(orig, val)) in remaining.iter().enumerate() {
                let target = window_end + 1 + k as u32;
                vars.push((target, val));
                pairs.push((orig, target));
            }
            out.push((Monomial::from_pairs(vars), Perm::from_pairs(&pairs)));
            return;
        }
        if !allow_suffix && remaining.len() > (window_end - pos + 1) as usize {
            return; // not enough positions left for the remaining exponents
        }
        // skip this position
        rec(pos + 1, window_end, allow_suffix, head, placed, remaining, out);
        // or place the first remaining entry of each distinct value here
        let mut last_val = None;
        for k in 0..remaining.len() {
            let (orig, val) = remaining[k];
            if last_val == Some(val) {
                continue;
            }
            last_val = Some(val);
            remaining.remove(k);
            placed.push((orig, val, pos));
            rec(pos + 1, window_end, allow_suffix, head, placed, remaining, out);
            placed.pop();
            remaining.insert(k, (orig, val));
        }
    }

    rec(n + 1, window_end, allow_suffix, &head, &mut placed, &mut remaining, &mut out);
    out
}

/// The grevlex-maximal representatives of the S_{>m}-orbits inside the
/// S_{>n}-orbit of `alpha`, each with a permutation realizing it.
pub fn orbit_reps_at(alpha: &Monomial, n: u32, m: u32) -> Vec<(Monomial, Perm)> {
    debug_assert!(m >= n);
    tail_placements(alpha, n, m, true)
}

/// All members of the S_{>n}-orbit of `alpha` supported on {x1..x_cap},
/// each with a permutation realizing it.
pub fn orbit_members(alpha: &Monomial, n: u32, cap: u32) -> Vec<(Monomial, Perm)> {
    if cap < n {
        // tail entries would have nowhere to go
        let (_, tail) = alpha.split_at_level(n);
        if tail.is_empty() {
            return vec![(alpha.clone(), Perm::identity())];
        }
        return Vec::new();
    }
    tail_placements(alpha, n, cap, false)
}

/// The m-expansion: re-encodes an n-representation at a level m >= n by
/// splitting every S_{>n}-orbit into its S_{>m}-orbits. Coefficients are
/// moved by the permutations (a trivial action for field constants).
pub fn expand<C: Coeff>(r: &Representation<C>, m: u32) -> Result<Representation<C>> {
    if m < r.level {
        return Err(Error::Precondition(format!(
            "cannot expand a level-{} representation down to {m}",
            r.level
        )));
    }
    if m == r.level {
        return Ok(r.clone());
    }
    let mut terms: Vec<(C, Monomial)> = Vec::new();
    for (c, alpha) in r.body.terms() {
        for (beta, pi) in orbit_reps_at(alpha, r.level, m) {
            terms.push((c.permute_vars(&pi), beta));
        }
    }
    Ok(Representation::new_unchecked(m, r.degree, Poly::from_terms(terms)))
}

/// Product of two n-representations: reconstructs the truncations at
/// n + deg(f) + deg(h), multiplies honestly, and keeps only the terms that
/// are grevlex-maximal in their S_{>n}-orbit. No representative of the
/// product is lost because a degree-e representative involves no variable
/// beyond x_{n+e}.
pub fn product<C: Coeff>(
    n: u32,
    f: &Representation<C>,
    h: &Representation<C>,
) -> Result<Representation<C>> {
    if f.level != n || h.level != n {
        return Err(Error::Precondition(format!(
            "product at level {n} got representations at levels {} and {}",
            f.level, h.level
        )));
    }
    let e = f.degree + h.degree;
    let cap = n + e;
    let ff = f.truncation(cap);
    let hh = h.truncation(cap);
    // multiply, keeping only the terms that are orbit-maximal at level n:
    // dropping the others at insertion time is the same filter the paper
    // applies after the full product
    let mut terms: Vec<(C, Monomial)> = Vec::new();
    for (ac, am) in ff.terms() {
        for (bc, bm) in hh.terms() {
            let m = am.mul(bm);
            if m.is_orbit_max(n) {
                terms.push((ac.mul(bc), m));
            }
        }
    }
    Ok(Representation::new_unchecked(n, e, Poly::from_terms(terms)))
}

/// S-series of two monic n-representations whose leading monomials live in
/// x1..x_n: with gamma = lcm of the leading monomials, forms
/// (gamma / lmon f) f - (gamma / lmon g) g through `product`.
pub fn s_pair<C: FieldCoeff>(
    n: u32,
    f: &Representation<C>,
    g: &Representation<C>,
) -> Result<Representation<C>> {
    if f.level != n || g.level != n {
        return Err(Error::Precondition("s_pair level mismatch".into()));
    }
    if !f.is_monic() || !g.is_monic() {
        return Err(Error::Precondition("s_pair requires monic representations".into()));
    }
    let (lf, lg) = (f.body.lmon(), g.body.lmon());
    if !lf.within(n) || !lg.within(n) {
        return Err(Error::Precondition(
            "s_pair requires leading monomials supported on x1..xn".into(),
        ));
    }
    let gamma = lf.lcm(lg);
    let qf = gamma.try_div(lf).unwrap();
    let qg = gamma.try_div(lg).unwrap();
    // the quotients live in x1..xn, where S_{>n} acts trivially, so the
    // product with either representation is the termwise monomial shift:
    // orbits and their maxima are carried along unchanged
    let a = f.body.mul_mono(&qf);
    let b = g.body.mul_mono(&qg);
    Ok(Representation::new_unchecked(n, gamma.degree(), a.sub(&b)))
}

/// Division with remainder on representations. Divisors must be monic with
/// leading monomials supported on x1..x_n (hence S_{>n}-invariant). The
/// loop removes the grevlex-largest divisible term c x^alpha by subtracting
/// Product(c x^alpha / lmon(f_i), f_i) for the lowest-index divisor f_i; the
/// removed term strictly decreases, and the set of candidate orbit-maximal
/// monomials of the fixed degree is finite, so the loop terminates. No term
/// of the result (equivalently, of the encoded series) is divisible by any
/// divisor's leading monomial.
pub fn remainder<C: FieldCoeff>(
    n: u32,
    h: &Representation<C>,
    divisors: &[Representation<C>],
) -> Result<Representation<C>> {
    if h.level != n {
        return Err(Error::Precondition("remainder level mismatch".into()));
    }
    for f in divisors {
        if f.level != n {
            return Err(Error::Precondition("remainder divisor level mismatch".into()));
        }
        if f.is_zero() || !f.is_monic() {
            return Err(Error::Precondition("remainder divisors must be monic".into()));
        }
        if !f.body.lmon().within(n) {
            return Err(Error::Precondition(format!(
                "divisor leading monomial {} involves a variable beyond x{n}",
                f.body.lmon()
            )));
        }
    }

    // every term of the homogeneous h has degree h.degree, so every product
    // formed below lives within x1..x_{n + deg h}: decode each divisor there
    // once instead of once per reduction step
    let cap = n + h.degree;
    let truncs: Vec<Poly<C>> = divisors.iter().map(|f| f.truncation(cap)).collect();

    let mut rest = h.body.clone();
    let mut done: Vec<(C, Monomial)> = Vec::new();
    let mut last_killed: Option<Monomial> = None;
    'outer: while !rest.is_zero() {
        let (c, mu) = rest.lt().clone();
        for (f, tf) in divisors.iter().zip(&truncs) {
            if let Some(q) = mu.try_div(f.body.lmon()) {
                if let Some(prev) = &last_killed {
                    debug_assert!(
                        mu < *prev,
                        "reducible term failed to decrease: {mu} after {prev}"
                    );
                }
                last_killed = Some(mu.clone());
                // Product(c x^mu / lmon f, f) with the divisor's truncation
                // cached: expand the quotient term to its orbit members and
                // multiply, keeping orbit-maximal monomials
                let mut prod: Vec<(C, Monomial)> = Vec::new();
                for (beta, pi) in orbit_members(&q, n, cap) {
                    let cq = c.permute_vars(&pi);
                    for (tc, tm) in tf.terms() {
                        let m2 = beta.mul(tm);
                        if m2.is_orbit_max(n) {
                            prod.push((cq.mul(tc), m2));
                        }
                    }
                }
                rest = rest.sub(&Poly::from_terms(prod));
                continue 'outer;
            }
        }
        // irreducible: everything after the leading term is smaller
        done.push((c, mu));
        rest = Poly::from_terms(rest.terms()[1..].iter().cloned());
    }
    Ok(Representation::new_unchecked(n, h.degree, Poly::from_terms(done)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type QRep = Representation<BigRational>;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn xm(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    fn body(terms: &[(i64, &[(u32, u32)])]) -> Poly<BigRational> {
        Poly::from_terms(terms.iter().map(|&(c, m)| (q(c), xm(m))))
    }

    fn rep(n: u32, d: u32, terms: &[(i64, &[(u32, u32)])]) -> QRep {
        Representation::new(n, d, body(terms)).unwrap()
    }

    #[test]
    fn validity() {
        assert!(Representation::new(1, 2, body(&[(1, &[(1, 2)]), (1, &[(2, 2)])])).is_ok());
        // x3 is not orbit-maximal at level 1
        assert!(Representation::new(1, 1, body(&[(1, &[(3, 1)])])).is_err());
        // not homogeneous
        assert!(Representation::new(1, 2, body(&[(1, &[(1, 2)]), (1, &[(1, 1)])])).is_err());
        // wrong degree
        assert!(Representation::new(0, 3, body(&[(1, &[(1, 2)])])).is_err());
    }

    #[test]
    fn expand_examples() {
        // (n=0, x1) to m=1: x1 + x2
        let r = rep(0, 1, &[(1, &[(1, 1)])]);
        let e = expand(&r, 1).unwrap();
        assert_eq!(e.body(), &body(&[(1, &[(1, 1)]), (1, &[(2, 1)])]));

        // (n=0, x1^2 + 2 x1 x2) to m=1: x1^2 + 2 x1 x2 + x2^2 + 2 x2 x3
        let r = rep(0, 2, &[(1, &[(1, 2)]), (2, &[(1, 1), (2, 1)])]);
        let e = expand(&r, 1).unwrap();
        assert_eq!(
            e.body(),
            &body(&[
                (1, &[(1, 2)]),
                (2, &[(1, 1), (2, 1)]),
                (1, &[(2, 2)]),
                (2, &[(2, 1), (3, 1)]),
            ])
        );

        // identity expansion
        let r = rep(1, 2, &[(1, &[(1, 1), (2, 1)])]);
        assert_eq!(expand(&r, 1).unwrap(), r);
    }

    #[test]
    fn expand_tower() {
        // expand(expand(r, m), m') == expand(r, m')
        let r = rep(0, 2, &[(1, &[(1, 2)]), (2, &[(1, 1), (2, 1)])]);
        let e12 = expand(&expand(&r, 1).unwrap(), 3).unwrap();
        let e3 = expand(&r, 3).unwrap();
        assert_eq!(e12, e3);
    }

    #[test]
    fn truncations() {
        // body x1 at n=0 encodes sum of all x_i
        let r = rep(0, 1, &[(1, &[(1, 1)])]);
        assert_eq!(
            r.truncation(3),
            body(&[(1, &[(1, 1)]), (1, &[(2, 1)]), (1, &[(3, 1)])])
        );
        // truncations computed from any expansion level agree
        let e = expand(&r, 2).unwrap();
        assert_eq!(e.truncation(3), r.truncation(3));
        assert_eq!(e.truncation(1), r.truncation(1));

        // x1^2 + 2 x1 x2 at n=0 encodes (sum x_i)^2
        let r = rep(0, 2, &[(1, &[(1, 2)]), (2, &[(1, 1), (2, 1)])]);
        let lin = body(&[(1, &[(1, 1)]), (1, &[(2, 1)]), (1, &[(3, 1)])]);
        assert_eq!(r.truncation(3), lin.mul(&lin));
    }

    #[test]
    fn product_examples() {
        // n=0: (sum x_i)^2 has representation x1^2 + 2 x1 x2
        let f = rep(0, 1, &[(1, &[(1, 1)])]);
        let p = product(0, &f, &f).unwrap();
        assert_eq!(p.body(), &body(&[(1, &[(1, 2)]), (2, &[(1, 1), (2, 1)])]));
        assert_eq!(p.degree(), 2);

        // multiplication by the constant 1
        let one = rep(0, 0, &[(1, &[])]);
        let p = product(0, &f, &one).unwrap();
        assert_eq!(p.body(), f.body());

        // n=1: x1 times sum_{i>=2} x_i is the single orbit of x1 x2
        let a = rep(1, 1, &[(1, &[(1, 1)])]);
        let b = rep(1, 1, &[(1, &[(2, 1)])]);
        let p = product(1, &a, &b).unwrap();
        assert_eq!(p.body(), &body(&[(1, &[(1, 1), (2, 1)])]));
    }

    #[test]
    fn s_pair_examples() {
        // self-pair is zero
        let f = rep(1, 1, &[(1, &[(1, 1)]), (1, &[(2, 1)])]);
        assert!(s_pair(1, &f, &f).unwrap().is_zero());

        // f = sum x_i, g = sum x_i^2 at n=1: S = x1 f - g = x1 x2 - x2^2
        let g = rep(1, 2, &[(1, &[(1, 2)]), (1, &[(2, 2)])]);
        let s = s_pair(1, &f, &g).unwrap();
        assert_eq!(
            s.body(),
            &body(&[(1, &[(1, 1), (2, 1)]), (-1, &[(2, 2)])])
        );
    }

    #[test]
    fn remainder_examples() {
        // n=1: sum x_i^2 reduced by sum x_i leaves 2 x2^2 + 2 x2 x3
        let h = rep(1, 2, &[(1, &[(1, 2)]), (1, &[(2, 2)])]);
        let f = rep(1, 1, &[(1, &[(1, 1)]), (1, &[(2, 1)])]);
        let r = remainder(1, &h, &[f.clone()]).unwrap();
        assert_eq!(
            r.body(),
            &body(&[(2, &[(2, 2)]), (2, &[(2, 1), (3, 1)])])
        );
        // nothing divisible: unchanged
        let r2 = remainder(1, &r, &[f.clone()]).unwrap();
        assert_eq!(r2, r);
        // exact division
        let z = remainder(1, &f, &[f.clone()]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn remainder_is_membership_certified() {
        // h - r lies in <f>: check on truncations m = 3..5 against the
        // classical engine
        use crate::buchberger::{buchberger, reduce};
        let h = rep(1, 2, &[(1, &[(1, 2)]), (1, &[(2, 2)])]);
        let f = rep(1, 1, &[(1, &[(1, 1)]), (1, &[(2, 1)])]);
        let r = remainder(1, &h, &[f.clone()]).unwrap();
        for m in 3..=5 {
            let diff = h.truncation(m).sub(&r.truncation(m));
            let gb = buchberger(&[f.truncation(m)]);
            assert!(reduce(&diff, &gb).is_zero(), "h - r not in <f> at m={m}");
        }
    }

    #[test]
    fn coprime_leads_reduce_to_zero() {
        // Buchberger's first criterion observed on representations:
        // lmon f = x1, lmon g = x2^2 at n=2
        let f = rep(2, 1, &[(1, &[(1, 1)]), (1, &[(3, 1)])]);
        let g = rep(2, 2, &[(1, &[(2, 2)]), (1, &[(3, 2)])]);
        let s = s_pair(2, &f, &g).unwrap();
        let r = remainder(2, &s, &[f, g]).unwrap();
        assert!(r.is_zero());
    }
}
