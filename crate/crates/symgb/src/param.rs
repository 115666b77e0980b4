//! The universal coefficient ring: integer polynomials in one variable
//! c_{i,alpha} per degree-d_i exponent alpha for each generator slot i,
//! together with the matrix variables g_{hj} used transiently, the
//! Rabinowitsch variable t, and the localization inverter u.
//!
//! `ParamElement` is a sparse integer polynomial over these variables.
//! `ParamFrac` is the localization used while running Buchberger on
//! universal series: a numerator in the ring over a denominator that stays
//! a product of inverted leading-coefficient numerators, so clearing the
//! denominator is always well defined.

use crate::coeff::{Coeff, FieldCoeff};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, Perm, SparseMono};
use crate::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

/// A variable of the universal coefficient ring. The ordering (C < G < T < U;
/// C-variables by slot, then by *descending* grevlex on alpha, so that the
/// coefficient of a grevlex-larger monomial behaves like an earlier variable)
/// fixes the grevlex order used by the Buchberger runs on parametric ideals;
/// any monomial order works, this one is canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ParamVar {
    /// c_{slot, alpha}: the coefficient of x^alpha in the slot-th universal
    /// series. Slots are 1-based.
    C { slot: u32, alpha: Monomial },
    /// g_{row, col}: an entry of the generic matrix (1-based).
    G { row: u32, col: u32 },
    /// Rabinowitsch variable for radical membership.
    T,
    /// Inverter for the localization at the nonvanishing set.
    U,
}

impl ParamVar {
    fn rank(&self) -> u8 {
        match self {
            ParamVar::C { .. } => 0,
            ParamVar::G { .. } => 1,
            ParamVar::T => 2,
            ParamVar::U => 3,
        }
    }
}

impl PartialOrd for ParamVar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParamVar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (ParamVar::C { slot: s1, alpha: a1 }, ParamVar::C { slot: s2, alpha: a2 }) => {
                s1.cmp(s2).then_with(|| a1.cmp(a2).reverse())
            }
            (ParamVar::G { row: r1, col: c1 }, ParamVar::G { row: r2, col: c2 }) => {
                r1.cmp(r2).then_with(|| c1.cmp(c2))
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for ParamVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamVar::C { slot, alpha } => {
                write!(f, "c_{slot}")?;
                let max = alpha.max_var();
                for v in 1..=max {
                    write!(f, "_{}", alpha.exponent_of(&v))?;
                }
                Ok(())
            }
            ParamVar::G { row, col } => write!(f, "g_{row}_{col}"),
            ParamVar::T => write!(f, "t"),
            ParamVar::U => write!(f, "u"),
        }
    }
}

pub type ParamMonomial = SparseMono<ParamVar>;

/// An element of the universal coefficient ring A (or of A extended by the
/// g, t, u variables during tests): an integer polynomial.
pub type ParamElement = Poly<BigInt, ParamMonomial>;

/// The variable c_{slot, alpha} as a ring element.
pub fn c_var(slot: u32, alpha: Monomial) -> ParamElement {
    Poly::term(BigInt::one(), ParamMonomial::from_pairs([(ParamVar::C { slot, alpha }, 1)]))
}

pub fn g_var(row: u32, col: u32) -> ParamElement {
    Poly::term(BigInt::one(), ParamMonomial::from_pairs([(ParamVar::G { row, col }, 1)]))
}

/// Positive gcd of all integer coefficients; zero for the zero polynomial.
pub fn content(f: &ParamElement) -> BigInt {
    let mut g = BigInt::zero();
    for (c, _) in f.terms() {
        g = g.gcd(c);
    }
    g
}

/// Divides all coefficients by the (positive) content and flips the sign so
/// the leading coefficient is positive. Returns (sign, content, primitive),
/// with sign in {1, -1} such that f = sign * content * primitive.
pub fn primitive_part(f: &ParamElement) -> (i8, BigInt, ParamElement) {
    if f.is_zero() {
        return (1, BigInt::zero(), Poly::zero());
    }
    let mut cont = content(f);
    let sign = if f.lc().is_negative() { -1i8 } else { 1i8 };
    if sign < 0 {
        cont = -cont;
    }
    let prim = f.map_coeffs(|c| c / &cont);
    (sign, cont.abs(), prim)
}

/// Sign-normalized copy: leading coefficient positive. Content is kept.
pub fn sign_normalize(f: &ParamElement) -> ParamElement {
    if !f.is_zero() && f.lc().is_negative() {
        f.neg()
    } else {
        f.clone()
    }
}

/// Exact division over the integers; `None` if g does not divide f.
pub fn exact_div(f: &ParamElement, g: &ParamElement) -> Option<ParamElement> {
    assert!(!g.is_zero(), "division by zero");
    let mut rest = f.clone();
    let mut q: Vec<(BigInt, ParamMonomial)> = Vec::new();
    while !rest.is_zero() {
        let (c, m) = rest.lt();
        let qm = m.try_div(g.lmon())?;
        let (qc, rem) = c.div_rem(g.lc());
        if !num_traits::Zero::is_zero(&rem) {
            return None;
        }
        rest = rest.sub(&g.mul_term(&qc, &qm));
        q.push((qc, qm));
    }
    Some(Poly::from_terms(q))
}

/// Applies an x-index permutation to every c_{i,alpha} variable.
pub fn permute_element(f: &ParamElement, p: &Perm) -> ParamElement {
    if p.is_identity() {
        return f.clone();
    }
    Poly::from_terms(f.terms().iter().map(|(c, m)| {
        let mapped = ParamMonomial::from_pairs(m.iter().map(|(v, e)| {
            let v = match v {
                ParamVar::C { slot, alpha } => {
                    ParamVar::C { slot: *slot, alpha: alpha.permute(p) }
                }
                other => other.clone(),
            };
            (v, *e)
        }));
        (c.clone(), mapped)
    }))
}

/// Largest x-index referenced by any c_{i,alpha} variable of f; 0 when none.
pub fn max_alpha_var(f: &ParamElement) -> u32 {
    f.terms()
        .iter()
        .flat_map(|(_, m)| m.iter())
        .map(|(v, _)| match v {
            ParamVar::C { alpha, .. } => alpha.max_var(),
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

impl Coeff for ParamElement {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.num_terms() == 1 && self.lmon().is_one() && Coeff::is_one(self.lc())
    }
    fn add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn permute_vars(&self, p: &Perm) -> Self {
        permute_element(self, p)
    }
}

/// An element of A localized at a finite set of ring elements: a numerator
/// over a denominator kept in factored form (an integer times a product of
/// primitive, sign-normalized factors). Denominator factors only ever enter
/// through division by previously collected leading coefficients, so the
/// factored shape is preserved by all arithmetic.
#[derive(Clone, Eq, Debug)]
pub struct ParamFrac {
    num: ParamElement,
    den_int: BigInt,                      // positive
    den_factors: Vec<(ParamElement, u32)>, // primitive, positive lead, sorted descending
}

impl ParamFrac {
    pub fn from_element(num: ParamElement) -> Self {
        ParamFrac { num, den_int: BigInt::one(), den_factors: Vec::new() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_element(Poly::constant(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_element(Poly::zero())
    }

    /// The numerator: the element of A obtained by clearing the factored
    /// denominator. Integer content is kept intact.
    pub fn numerator(&self) -> &ParamElement {
        &self.num
    }

    /// The denominator as a ring element.
    pub fn denominator(&self) -> ParamElement {
        let mut den = Poly::constant(self.den_int.clone());
        for (f, e) in &self.den_factors {
            for _ in 0..*e {
                den = den.mul(f);
            }
        }
        den
    }

    fn normalized(mut self) -> Self {
        if Poly::is_zero(&self.num) {
            return ParamFrac::zero();
        }
        // cancel denominator factors that divide the numerator exactly
        for k in 0..self.den_factors.len() {
            while self.den_factors[k].1 > 0 {
                match exact_div(&self.num, &self.den_factors[k].0) {
                    Some(q) => {
                        self.num = q;
                        self.den_factors[k].1 -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den_factors.retain(|(_, e)| *e > 0);
        // cancel shared integer content
        let g = content(&self.num).gcd(&self.den_int);
        if !num_traits::One::is_one(&g) {
            self.num = self.num.map_coeffs(|c| c / &g);
            self.den_int = &self.den_int / &g;
        }
        self
    }

    /// Divides by another fraction; the divisor's numerator joins the
    /// denominator in factored form.
    pub fn div_by(&self, b: &ParamFrac) -> ParamFrac {
        assert!(!Coeff::is_zero(b), "division by zero");
        let num = self.num.mul(&b.denominator());
        let (sign, cont, prim) = primitive_part(&b.num);
        let num = if sign < 0 { num.neg() } else { num };
        let mut den_factors = self.den_factors.clone();
        if !Coeff::is_one(&prim) {
            match den_factors.iter_mut().find(|(f, _)| *f == prim) {
                Some((_, e)) => *e += 1,
                None => den_factors.push((prim, 1)),
            }
        }
        den_factors.sort_by(|a, b| cmp_elements(&b.0, &a.0));
        ParamFrac { num, den_int: &self.den_int * cont, den_factors }.normalized()
    }
}

impl PartialEq for ParamFrac {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.denominator()) == other.num.mul(&self.denominator())
    }
}

impl Coeff for ParamFrac {
    fn is_zero(&self) -> bool {
        Poly::is_zero(&self.num)
    }

    fn is_one(&self) -> bool {
        self.num == self.denominator()
    }

    fn add(&self, rhs: &Self) -> Self {
        // common denominator: union of factor powers, lcm of the integers
        let mut factors: Vec<(ParamElement, u32)> = self.den_factors.clone();
        for (f, e) in &rhs.den_factors {
            match factors.iter_mut().find(|(g, _)| g == f) {
                Some((_, fe)) => *fe = (*fe).max(*e),
                None => factors.push((f.clone(), *e)),
            }
        }
        factors.sort_by(|a, b| cmp_elements(&b.0, &a.0));
        let den_int = self.den_int.lcm(&rhs.den_int);
        let lift = |x: &ParamFrac| -> ParamElement {
            let mut out = x.num.map_coeffs(|c| c * (&den_int / &x.den_int));
            for (f, e) in &factors {
                let have = x
                    .den_factors
                    .iter()
                    .find(|(g, _)| g == f)
                    .map(|(_, e)| *e)
                    .unwrap_or(0);
                for _ in have..*e {
                    out = out.mul(f);
                }
            }
            out
        };
        let num = lift(self).add(&lift(rhs));
        ParamFrac { num, den_int, den_factors: factors }.normalized()
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut factors = self.den_factors.clone();
        for (f, e) in &rhs.den_factors {
            match factors.iter_mut().find(|(g, _)| g == f) {
                Some((_, fe)) => *fe += *e,
                None => factors.push((f.clone(), *e)),
            }
        }
        factors.sort_by(|a, b| cmp_elements(&b.0, &a.0));
        ParamFrac {
            num: self.num.mul(&rhs.num),
            den_int: &self.den_int * &rhs.den_int,
            den_factors: factors,
        }
        .normalized()
    }

    fn neg(&self) -> Self {
        ParamFrac {
            num: self.num.neg(),
            den_int: self.den_int.clone(),
            den_factors: self.den_factors.clone(),
        }
    }

    fn permute_vars(&self, p: &Perm) -> Self {
        if p.is_identity() {
            return self.clone();
        }
        let num = permute_element(&self.num, p);
        let mut sign = 1i8;
        let mut den_factors: Vec<(ParamElement, u32)> = Vec::new();
        for (f, e) in &self.den_factors {
            let moved = permute_element(f, p);
            let normal = sign_normalize(&moved);
            if normal != moved && e % 2 == 1 {
                sign = -sign;
            }
            den_factors.push((normal, *e));
        }
        den_factors.sort_by(|a, b| cmp_elements(&b.0, &a.0));
        let num = if sign < 0 { num.neg() } else { num };
        ParamFrac { num, den_int: self.den_int.clone(), den_factors }
    }
}

impl FieldCoeff for ParamFrac {
    fn inv(&self) -> Self {
        assert!(!Coeff::is_zero(self), "inverse of zero");
        ParamFrac::from_element(self.denominator()).div_by(&ParamFrac::from_element(self.num.clone()))
    }

    fn div(&self, rhs: &Self) -> Self {
        self.div_by(rhs)
    }
}

/// Context for the universal system of k series of fixed degrees: owns the
/// memoized formal substitution c_{i,alpha} -> coefficient of x^alpha in
/// g f_i, per truncation level.
pub struct SubstitutionTable {
    degrees: Vec<u32>,
    cache: RefCell<HashMap<u32, HashMap<(u32, Monomial), ParamElement>>>,
}

impl SubstitutionTable {
    pub fn new(degrees: &[u32]) -> Self {
        SubstitutionTable { degrees: degrees.to_vec(), cache: RefCell::new(HashMap::new()) }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    fn ensure_level(&self, m: u32) {
        if self.cache.borrow().contains_key(&m) {
            return;
        }
        let mut table: HashMap<(u32, Monomial), ParamElement> = HashMap::new();
        // rows of the generic matrix as linear forms over the g-variables
        let rows: Vec<Poly<ParamElement, Monomial>> = (1..=m)
            .map(|h| {
                Poly::from_terms((1..=m).map(|j| (g_var(h, j), Monomial::var(j))))
            })
            .collect();
        for (i, &d) in self.degrees.iter().enumerate() {
            let slot = i as u32 + 1;
            // g f_i^(m), expanded with coefficients in Z[g, c]
            let mut image: Poly<ParamElement, Monomial> = Poly::zero();
            for beta in crate::gin::monomials_of_degree(m, d) {
                let mut prod: Option<Poly<ParamElement, Monomial>> = None;
                for &(h, e) in beta.iter() {
                    for _ in 0..e {
                        prod = Some(match prod {
                            None => rows[(h - 1) as usize].clone(),
                            Some(p) => p.mul(&rows[(h - 1) as usize]),
                        });
                    }
                }
                let c = c_var(slot, beta.clone());
                let contrib = match prod {
                    None => Poly::constant(c),
                    Some(p) => p.map_coeffs(|e| e.mul(&c)),
                };
                image = image.add(&contrib);
            }
            for (coeff, alpha) in image.terms() {
                table.insert((slot, alpha.clone()), coeff.clone());
            }
            // degree-d monomials with no x-support cannot occur (d >= 1),
            // but alpha values absent from the image map to zero implicitly
        }
        self.cache.borrow_mut().insert(m, table);
    }

    /// The formal substitution g^{-1} c_{slot, alpha} at level m.
    pub fn g_inverse_c(&self, slot: u32, alpha: &Monomial, m: u32) -> ParamElement {
        self.ensure_level(m);
        self.cache
            .borrow()
            .get(&m)
            .and_then(|t| t.get(&(slot, alpha.clone())))
            .cloned()
            .unwrap_or_else(Poly::zero)
    }

    /// g^{-1} r: replaces every c_{i,alpha} in r by its substitution at
    /// level m, expanding into Z[g, c].
    pub fn g_inverse(&self, r: &ParamElement, m: u32) -> Result<ParamElement> {
        let mut out = Poly::zero();
        for (coeff, mono) in r.terms() {
            let mut term = Poly::constant(coeff.clone());
            for (v, e) in mono.iter() {
                let sub = match v {
                    ParamVar::C { slot, alpha } => {
                        if alpha.max_var() > m {
                            return Err(Error::Precondition(format!(
                                "element references {v} outside A^({m})"
                            )));
                        }
                        self.g_inverse_c(*slot, alpha, m)
                    }
                    _ => {
                        return Err(Error::Precondition(
                            "g-substitution applies to elements of A only".into(),
                        ))
                    }
                };
                for _ in 0..*e {
                    term = term.mul(&sub);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// g^{-1} r split by g-monomial: each pair is a monomial in the g_{hj}
    /// together with its A-coefficient. Evaluating g at a concrete matrix
    /// recovers r at the translated point as the matching integer
    /// combination of the coefficients.
    pub fn orbit_closure_graded(
        &self,
        r: &ParamElement,
        m: u32,
    ) -> Result<Vec<(ParamMonomial, ParamElement)>> {
        let moved = self.g_inverse(r, m)?;
        let mut groups: HashMap<ParamMonomial, Vec<(BigInt, ParamMonomial)>> = HashMap::new();
        for (c, mono) in moved.terms() {
            let g_part = ParamMonomial::from_pairs(
                mono.iter()
                    .filter(|(v, _)| matches!(v, ParamVar::G { .. }))
                    .cloned(),
            );
            let c_part = ParamMonomial::from_pairs(
                mono.iter()
                    .filter(|(v, _)| !matches!(v, ParamVar::G { .. }))
                    .cloned(),
            );
            groups.entry(g_part).or_default().push((c.clone(), c_part));
        }
        let mut out: Vec<(ParamMonomial, ParamElement)> = groups
            .into_iter()
            .map(|(g, terms)| (g, Poly::from_terms(terms)))
            .filter(|(_, e)| !Poly::is_zero(e))
            .collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(out)
    }

    /// E_m(r): the set of nonzero A-coefficients of g^{-1} r read as a
    /// polynomial in the g_{hj}. Elements are sign-normalized and deduped;
    /// their integer contents are kept, since the primes dividing them
    /// matter for characteristic branching. The Z-span of E_m(r) is the
    /// span of the GL_m-orbit of r.
    pub fn orbit_closure(&self, r: &ParamElement, m: u32) -> Result<Vec<ParamElement>> {
        let mut out: Vec<ParamElement> = self
            .orbit_closure_graded(r, m)?
            .into_iter()
            .map(|(_, e)| sign_normalize(&e))
            .collect();
        out.sort_by(|a, b| cmp_elements(b, a));
        out.dedup();
        Ok(out)
    }
}

/// Deterministic total order on ring elements (termwise, grevlex-major).
pub fn cmp_elements(a: &ParamElement, b: &ParamElement) -> std::cmp::Ordering {
    let mut i = 0;
    loop {
        match (a.terms().get(i), b.terms().get(i)) {
            (None, None) => return std::cmp::Ordering::Equal,
            (None, Some(_)) => return std::cmp::Ordering::Less,
            (Some(_), None) => return std::cmp::Ordering::Greater,
            (Some((ca, ma)), Some((cb, mb))) => {
                match ma.cmp(mb).then_with(|| ca.cmp(cb)) {
                    std::cmp::Ordering::Equal => i += 1,
                    ord => return ord,
                }
            }
        }
    }
}

/// Evaluates an element of A at a concrete coefficient point. The mapping
/// sends each c_{i,alpha} to a field value (absent variables count as 0);
/// g, t, u variables must not occur.
pub fn evaluate<C: FieldCoeff>(
    f: &ParamElement,
    lift_int: &impl Fn(&BigInt) -> C,
    point: &impl Fn(u32, &Monomial) -> C,
) -> C {
    let mut acc: Option<C> = None;
    for (coeff, mono) in f.terms() {
        let mut val = lift_int(coeff);
        for (v, e) in mono.iter() {
            let base = match v {
                ParamVar::C { slot, alpha } => point(*slot, alpha),
                _ => panic!("evaluate applies to elements of A only"),
            };
            for _ in 0..*e {
                val = val.mul(&base);
            }
        }
        acc = Some(match acc {
            None => val,
            Some(a) => a.add(&val),
        });
    }
    match acc {
        Some(a) => a,
        None => {
            let one = lift_int(&BigInt::one());
            one.sub(&one)
        }
    }
}
