//! Generic initial ideals of concrete finite-variable ideals, computed by
//! random change of coordinates with a majority vote across trials.
//!
//! Over the rationals the matrix entries are random integers in
//! [-10000, 10000]; over F_p they are uniform field elements and p should be
//! reasonably large (say >= 101) for the vote to be reliable — over tiny
//! fields the oracle is probabilistic and more trials are needed. Singular
//! draws are rejected and redrawn. Disagreeing trials are reported, never
//! silently resolved.

use crate::buchberger::{buchberger, lead_monomials};
use crate::coeff::{FieldCoeff, Fp};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// An invertible square matrix acting on x1..xn, with the seed that
/// produced it recorded for reproducibility.
#[derive(Clone, Debug)]
pub struct CoordinateChange<C> {
    n: u32,
    entries: Vec<C>, // row-major; row h holds the image of x_{h+1}
    pub seed: u64,
}

impl<C: FieldCoeff> CoordinateChange<C> {
    pub fn new(n: u32, entries: Vec<C>, seed: u64) -> Result<Self> {
        if entries.len() != (n * n) as usize {
            return Err(Error::Precondition(format!(
                "expected {} entries for a {n}x{n} matrix",
                n * n
            )));
        }
        let g = CoordinateChange { n, entries, seed };
        if !g.is_invertible() {
            return Err(Error::Precondition("coordinate change is singular".into()));
        }
        Ok(g)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn entry(&self, h: u32, j: u32) -> &C {
        &self.entries[(h * self.n + j) as usize]
    }

    fn is_invertible(&self) -> bool {
        // Gaussian elimination; exact arithmetic, so any nonzero pivot works.
        let n = self.n as usize;
        let mut a = self.entries.clone();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return false;
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
            }
            let inv = a[col * n + col].inv();
            for r in col + 1..n {
                let factor = a[r * n + col].mul(&inv);
                for j in col..n {
                    let sub = factor.mul(&a[col * n + j]);
                    a[r * n + j] = a[r * n + j].sub(&sub);
                }
            }
        }
        true
    }

    /// Substitutes x_h -> sum_j g_{hj} x_j into `f`, which must be supported
    /// on x1..xn. Degree-preserving and linear in f.
    pub fn apply(&self, f: &Poly<C>) -> Result<Poly<C>> {
        if f.max_var() > self.n {
            return Err(Error::Precondition(format!(
                "polynomial uses x{} but the matrix has size {}",
                f.max_var(),
                self.n
            )));
        }
        let rows: Vec<Poly<C>> = (0..self.n)
            .map(|h| {
                Poly::from_terms(
                    (0..self.n)
                        .map(|j| (self.entry(h, j).clone(), Monomial::var(j + 1))),
                )
            })
            .collect();
        let mut powers: HashMap<(u32, u32), Poly<C>> = HashMap::new();
        let mut result = Poly::zero();
        for (c, m) in f.terms() {
            let mut term_val: Option<Poly<C>> = None;
            for &(v, e) in m.iter() {
                let key = (v, e);
                if !powers.contains_key(&key) {
                    let mut acc = rows[(v - 1) as usize].clone();
                    for _ in 1..e {
                        acc = acc.mul(&rows[(v - 1) as usize]);
                    }
                    powers.insert(key, acc);
                }
                let p = &powers[&key];
                term_val = Some(match term_val {
                    None => p.clone(),
                    Some(t) => t.mul(p),
                });
            }
            let val = match term_val {
                None => Poly::constant(c.clone()),
                Some(t) => t.scale(c),
            };
            result = result.add(&val);
        }
        Ok(result)
    }
}

/// Canonical random entry source over the rationals: integers in
/// [-10000, 10000].
pub fn rational_entries() -> impl Fn(&mut ChaCha8Rng) -> BigRational {
    |rng| BigRational::from(BigInt::from(rng.gen_range(-10_000i64..=10_000)))
}

/// Canonical random entry source over F_p: uniform field elements.
pub fn fp_entries(p: u64) -> impl Fn(&mut ChaCha8Rng) -> Fp {
    move |rng| Fp::from_u64(rng.gen_range(0..p), p)
}

/// Random entry source over an extension field F_{p^e}. In small
/// characteristic the vote needs a field that is large compared to the
/// discriminants the matrix columns must avoid, so draw the entries from a
/// big extension while the ideal's coefficients stay in the prime field.
pub fn fq_entries(field: std::sync::Arc<crate::fq::FqField>) -> impl Fn(&mut ChaCha8Rng) -> crate::fq::Fq {
    move |rng| {
        let coeffs: Vec<u64> =
            (0..field.degree()).map(|_| rng.gen_range(0..field.p())).collect();
        field.from_coeffs(&coeffs)
    }
}

/// Draws an invertible matrix, rejecting singular draws.
pub fn random_coordinate_change<C: FieldCoeff>(
    n: u32,
    rng: &mut ChaCha8Rng,
    seed: u64,
    entry: &impl Fn(&mut ChaCha8Rng) -> C,
) -> Result<CoordinateChange<C>> {
    for _ in 0..10_000 {
        let entries: Vec<C> = (0..n * n).map(|_| entry(rng)).collect();
        let g = CoordinateChange { n, entries, seed };
        if g.is_invertible() {
            return Ok(g);
        }
    }
    Err(Error::Precondition(
        "could not draw an invertible matrix; field too small?".into(),
    ))
}

#[derive(Clone, Debug)]
pub struct GinReport {
    /// The voted generic initial ideal, as minimal monomial generators in
    /// grevlex-descending order.
    pub gin: Vec<Monomial>,
    /// Outcome tally across trials, most frequent first.
    pub tally: Vec<(Vec<Monomial>, u32)>,
    pub trials: u32,
    pub seed: u64,
}

/// Computes the generic initial ideal of the ideal generated by the
/// homogeneous polynomials `gens` in x1..xn: for each trial a random
/// invertible change of coordinates is applied, the reduced Gröbner basis
/// is computed, and the minimal generators of its lead ideal are recorded.
/// The most frequent outcome wins; ties break toward the grevlex-largest
/// outcome. If all trials disagree pairwise the result is reported as
/// indeterminate, with the tally.
pub fn gin_random<C: FieldCoeff>(
    gens: &[Poly<C>],
    n: u32,
    trials: u32,
    seed: u64,
    entry: &impl Fn(&mut ChaCha8Rng) -> C,
) -> Result<GinReport> {
    if trials == 0 {
        return Err(Error::Precondition("gin needs at least one trial".into()));
    }
    let gens: Vec<&Poly<C>> = gens.iter().filter(|f| !f.is_zero()).collect();
    for f in &gens {
        if f.homogeneous_degree().is_none() {
            return Err(Error::Precondition("gin requires homogeneous generators".into()));
        }
        if f.max_var() > n {
            return Err(Error::Precondition(format!(
                "generator uses x{} outside x1..x{n}",
                f.max_var()
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally: Vec<(Vec<Monomial>, u32)> = Vec::new();
    for _ in 0..trials {
        let g = random_coordinate_change(n, &mut rng, seed, entry)?;
        let moved: Result<Vec<Poly<C>>> = gens.iter().map(|f| g.apply(f)).collect();
        let gb = buchberger(&moved?);
        let leads = lead_monomials(&gb);
        match tally.iter_mut().find(|(k, _)| *k == leads) {
            Some((_, c)) => *c += 1,
            None => tally.push((leads, 1)),
        }
    }
    tally.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| b.0.cmp(&a.0)));
    if trials > 1 && tally.iter().all(|&(_, c)| c == 1) {
        let lines: Vec<String> = tally
            .iter()
            .map(|(k, c)| format!("{:?} x{c}", k.iter().map(|m| m.to_string()).collect::<Vec<_>>()))
            .collect();
        return Err(Error::IndeterminateGin(lines.join("; ")));
    }
    Ok(GinReport { gin: tally[0].0.clone(), tally, trials, seed })
}

/// Values of the Hilbert function of R/I in degrees 0..=dmax, where I is
/// the monomial ideal generated by `leads` inside a polynomial ring in n
/// variables: counts the degree-e monomials divisible by no generator.
pub fn hilbert_values(leads: &[Monomial], n: u32, dmax: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(dmax as usize + 1);
    for e in 0..=dmax {
        let mut count = 0u64;
        for m in monomials_of_degree(n, e) {
            if !leads.iter().any(|l| l.divides(&m)) {
                count += 1;
            }
        }
        out.push(count);
    }
    out
}

/// All monomials of total degree e in x1..xn.
pub fn monomials_of_degree(n: u32, e: u32) -> Vec<Monomial> {
    fn rec(var: u32, n: u32, left: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<Monomial>) {
        if var > n {
            if left == 0 {
                out.push(Monomial::from_pairs(acc.iter().copied()));
            }
            return;
        }
        if var == n {
            if left > 0 {
                acc.push((var, left));
                out.push(Monomial::from_pairs(acc.iter().copied()));
                acc.pop();
            } else {
                out.push(Monomial::from_pairs(acc.iter().copied()));
            }
            return;
        }
        for take in 0..=left {
            if take > 0 {
                acc.push((var, take));
            }
            rec(var + 1, n, left - take, acc, out);
            if take > 0 {
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(1, n, e, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn xm(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    fn poly(terms: &[(i64, &[(u32, u32)])]) -> Poly<BigRational> {
        Poly::from_terms(terms.iter().map(|&(c, m)| (q(c), xm(m))))
    }

    #[test]
    fn coordinate_changes() {
        let id = CoordinateChange::new(2, vec![q(1), q(0), q(0), q(1)], 0).unwrap();
        let f = poly(&[(1, &[(1, 2)]), (3, &[(2, 1)])]);
        assert_eq!(id.apply(&f).unwrap(), f);

        let swap = CoordinateChange::new(2, vec![q(0), q(1), q(1), q(0)], 0).unwrap();
        assert_eq!(swap.apply(&poly(&[(1, &[(1, 1)])])).unwrap(), poly(&[(1, &[(2, 1)])]));

        // x1 -> x1 + x2, x2 -> x2
        let shear = CoordinateChange::new(2, vec![q(1), q(1), q(0), q(1)], 0).unwrap();
        assert_eq!(shear.apply(&poly(&[(1, &[(2, 2)])])).unwrap(), poly(&[(1, &[(2, 2)])]));
        assert_eq!(
            shear.apply(&poly(&[(1, &[(1, 2)])])).unwrap(),
            poly(&[(1, &[(1, 2)]), (2, &[(1, 1), (2, 1)]), (1, &[(2, 2)])])
        );

        assert!(CoordinateChange::new(2, vec![q(1), q(1), q(1), q(1)], 0).is_err());
    }

    #[test]
    fn gin_examples() {
        let entry = rational_entries();
        // any nonzero quadric in 3 variables: gin = <x1^2>
        let r = gin_random(&[poly(&[(1, &[(2, 1), (3, 1)])])], 3, 5, 7, &entry).unwrap();
        assert_eq!(r.gin, vec![xm(&[(1, 2)])]);

        // two independent linear forms
        let r = gin_random(
            &[poly(&[(1, &[(1, 1)])]), poly(&[(1, &[(2, 1)])])],
            2,
            5,
            7,
            &entry,
        )
        .unwrap();
        assert_eq!(r.gin, vec![xm(&[(1, 1)]), xm(&[(2, 1)])]);

        // a single linear form moves to lead x1
        let r = gin_random(&[poly(&[(1, &[(3, 1)])])], 3, 5, 7, &entry).unwrap();
        assert_eq!(r.gin, vec![xm(&[(1, 1)])]);
    }

    #[test]
    fn gin_invariances() {
        let entry = rational_entries();
        let f = poly(&[(1, &[(2, 1), (3, 1)]), (2, &[(1, 2)])]);
        let base = gin_random(&[f.clone()], 3, 5, 11, &entry).unwrap();

        // scaling a generator changes nothing
        let scaled = gin_random(&[f.scale(&q(-7))], 3, 5, 13, &entry).unwrap();
        assert_eq!(base.gin, scaled.gin);

        // pre-composing with a fixed invertible change changes nothing
        let g = CoordinateChange::new(
            3,
            vec![q(1), q(2), q(0), q(0), q(1), q(5), q(3), q(0), q(1)],
            0,
        )
        .unwrap();
        let moved = gin_random(&[g.apply(&f).unwrap()], 3, 5, 17, &entry).unwrap();
        assert_eq!(base.gin, moved.gin);
    }

    #[test]
    fn gin_over_fp() {
        let entry = fp_entries(101);
        let f: Poly<Fp> = Poly::from_terms(vec![(Fp::new(1, 101), xm(&[(2, 1), (3, 1)]))]);
        let r = gin_random(&[f], 3, 5, 7, &entry).unwrap();
        assert_eq!(r.gin, vec![xm(&[(1, 2)])]);
    }

    #[test]
    fn hilbert_agreement() {
        // gin {x1^2} of <x2 x3> in 3 variables: Hilbert functions agree
        let f = poly(&[(1, &[(2, 1), (3, 1)])]);
        let gb = buchberger(&[f]);
        let hf_ideal = hilbert_values(&lead_monomials(&gb), 3, 5);
        let hf_gin = hilbert_values(&[xm(&[(1, 2)])], 3, 5);
        assert_eq!(hf_ideal, hf_gin);
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 5).len(), 56);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
    }
}
