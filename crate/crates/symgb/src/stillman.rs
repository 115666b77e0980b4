//! Recursive stratification: enumerates every possible generic initial
//! ideal of k homogeneous forms of fixed degrees, over all infinite fields
//! of all characteristics, together with the constructible set of
//! characteristics and the coefficient vanishing/nonvanishing conditions
//! under which each occurs.
//!
//! The computation runs the symmetric Buchberger loop on the universal
//! series whose coefficients are the variables c_{i,alpha}. Each time a
//! leading coefficient numerator a is met, the recursion splits: on the
//! characteristics where a already vanishes on the current stratum the lead
//! term is deleted (branch I); where a can consistently vanish the stratum
//! gains the equation a = 0 (branch II); the main branch inverts a. All
//! ideal-theoretic tests happen in F_p tensor A^(m) localized at the
//! accumulated nonvanishing set, through the GL-orbit closure E_m and
//! Rabinowitsch's trick, with characteristic dependence resolved by a
//! fraction-free integer run that harvests the finitely many primes able to
//! behave differently.

use crate::buchberger::{buchberger, contains_one, monomial_min_gens};
use crate::coeff::Fp;
use crate::error::{Error, Result};
use crate::fraction_free::z_buchberger_harvest;
use crate::invariant::{expand, remainder, s_pair, Representation};
use crate::monomial::Monomial;
use crate::param::{
    c_var, cmp_elements, content, max_alpha_var, sign_normalize, ParamElement, ParamFrac,
    ParamMonomial, ParamVar, SubstitutionTable,
};
use crate::poly::Poly;
use crate::symmetric::select_visible;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt;

/// A constructible subset of Spec Z: either a finite set of nonzero primes,
/// or a cofinite set containing the generic point (0). Closed under the
/// intersections and differences the recursion performs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ConstructibleZ {
    /// Finitely many nonzero primes.
    Finite(BTreeSet<u64>),
    /// The generic point (0) and all primes outside `excluded`.
    CofiniteWithZero { excluded: BTreeSet<u64> },
}

impl ConstructibleZ {
    pub fn spec_z() -> Self {
        ConstructibleZ::CofiniteWithZero { excluded: BTreeSet::new() }
    }

    pub fn empty() -> Self {
        ConstructibleZ::Finite(BTreeSet::new())
    }

    pub fn finite(primes: impl IntoIterator<Item = u64>) -> Self {
        ConstructibleZ::Finite(primes.into_iter().collect())
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ConstructibleZ::Finite(s) if s.is_empty())
    }

    /// Membership; p = 0 is the generic point.
    pub fn contains(&self, p: u64) -> bool {
        match self {
            ConstructibleZ::Finite(s) => p != 0 && s.contains(&p),
            ConstructibleZ::CofiniteWithZero { excluded } => p == 0 || !excluded.contains(&p),
        }
    }

    pub fn contains_zero(&self) -> bool {
        matches!(self, ConstructibleZ::CofiniteWithZero { .. })
    }

    pub fn intersect(&self, other: &Self) -> Self {
        use ConstructibleZ::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.intersection(b).copied().collect()),
            (Finite(a), CofiniteWithZero { excluded }) => {
                Finite(a.iter().copied().filter(|p| !excluded.contains(p)).collect())
            }
            (CofiniteWithZero { .. }, Finite(_)) => other.intersect(self),
            (CofiniteWithZero { excluded: a }, CofiniteWithZero { excluded: b }) => {
                CofiniteWithZero { excluded: a.union(b).copied().collect() }
            }
        }
    }

    pub fn subtract(&self, other: &Self) -> Self {
        use ConstructibleZ::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.difference(b).copied().collect()),
            (Finite(a), CofiniteWithZero { excluded }) => {
                Finite(a.iter().copied().filter(|p| excluded.contains(p)).collect())
            }
            (CofiniteWithZero { excluded }, Finite(b)) => {
                CofiniteWithZero { excluded: excluded.union(b).copied().collect() }
            }
            (CofiniteWithZero { excluded: a }, CofiniteWithZero { excluded: b }) => {
                Finite(b.difference(a).copied().collect())
            }
        }
    }
}

impl fmt::Display for ConstructibleZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set_text = |s: &BTreeSet<u64>| {
            let items: Vec<String> = s.iter().map(|p| p.to_string()).collect();
            format!("{{{}}}", items.join(", "))
        };
        match self {
            ConstructibleZ::Finite(s) => write!(f, "primes {}", set_text(s)),
            ConstructibleZ::CofiniteWithZero { excluded } => {
                write!(f, "cofinite excluding {}", set_text(excluded))
            }
        }
    }
}

/// Weakly decreasing positive integer sequences summing to d, as monomials
/// x1^{p1} x2^{p2} ... — the supports of the universal representation.
pub fn partition_monomials(d: u32) -> Vec<Monomial> {
    fn rec(left: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (1..=left.min(max)).rev() {
            acc.push(part);
            rec(left - part, part, acc, out);
            acc.pop();
        }
    }
    let mut parts = Vec::new();
    rec(d, d, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .map(|p| {
            Monomial::from_pairs(p.into_iter().enumerate().map(|(i, e)| (i as u32 + 1, e)))
        })
        .collect()
}

/// The universal system: for each slot i, the 0-representation
/// sum over weakly decreasing alpha of degree d_i of c_{i,alpha} x^alpha,
/// one term per partition of d_i.
#[derive(Clone, Debug)]
pub struct UniversalSystem {
    pub degrees: Vec<u32>,
    pub reps: Vec<Representation<ParamFrac>>,
}

pub fn universal_system(k: u32, degrees: &[u32]) -> Result<UniversalSystem> {
    if k == 0 || degrees.len() != k as usize {
        return Err(Error::Precondition(format!(
            "need k >= 1 degrees, got k={k} with {} degrees",
            degrees.len()
        )));
    }
    if degrees.iter().any(|&d| d == 0) {
        return Err(Error::Precondition("degrees must be at least 1".into()));
    }
    let mut reps = Vec::new();
    for (i, &d) in degrees.iter().enumerate() {
        let slot = i as u32 + 1;
        let terms: Vec<(ParamFrac, Monomial)> = partition_monomials(d)
            .into_iter()
            .map(|alpha| (ParamFrac::from_element(c_var(slot, alpha.clone())), alpha))
            .collect();
        reps.push(Representation::new(0, d, Poly::from_terms(terms))?);
    }
    Ok(UniversalSystem { degrees: degrees.to_vec(), reps })
}

fn t_times_minus_one(a: &ParamElement) -> ParamElement {
    let t = ParamMonomial::from_pairs([(ParamVar::T, 1)]);
    a.mul_mono(&t).sub(&Poly::constant(BigInt::one()))
}

fn u_times_minus_one(n_set: &[ParamElement]) -> ParamElement {
    let u = ParamMonomial::from_pairs([(ParamVar::U, 1)]);
    let mut prod = Poly::constant(BigInt::one());
    for b in n_set {
        prod = prod.mul(b);
    }
    prod.mul_mono(&u).sub(&Poly::constant(BigInt::one()))
}

/// Generators over Z of the test ideal: the E_m-closures of Z, the
/// localization relation u * prod(N) - 1 (when N is nonempty), and the
/// Rabinowitsch relation t * a - 1 when testing radical membership of a.
fn test_generators(
    table: &SubstitutionTable,
    z_set: &[ParamElement],
    n_set: &[ParamElement],
    m: u32,
    rabinowitsch: Option<&ParamElement>,
) -> Result<Vec<ParamElement>> {
    let mut gens: Vec<ParamElement> = Vec::new();
    for r in z_set {
        gens.extend(table.orbit_closure(r, m)?);
    }
    if !n_set.is_empty() {
        gens.push(u_times_minus_one(n_set));
    }
    if let Some(a) = rabinowitsch {
        gens.push(t_times_minus_one(a));
    }
    Ok(gens)
}

fn ideal_contains_one(gens: &[ParamElement], p: u64) -> bool {
    if p == 0 {
        let lifted: Vec<Poly<BigRational, ParamMonomial>> = gens
            .iter()
            .map(|g| g.map_coeffs(|c| BigRational::from(c.clone())))
            .collect();
        contains_one(&buchberger(&lifted))
    } else {
        let lifted: Vec<Poly<Fp, ParamMonomial>> =
            gens.iter().map(|g| g.map_coeffs(|c| Fp::from_bigint(c, p))).collect();
        contains_one(&buchberger(&lifted))
    }
}

/// Decides a in sqrt(<union of E_m(r) for r in Z>) inside
/// F_p tensor A^(m)[N^{-1}], with p = 0 meaning the rationals: adjoins
/// t a - 1 and u prod(N) - 1 and tests whether the ideal is the unit ideal.
pub fn radical_member(
    table: &SubstitutionTable,
    a: &ParamElement,
    z_set: &[ParamElement],
    n_set: &[ParamElement],
    m: u32,
    p: u64,
) -> Result<bool> {
    if a.is_zero() {
        return Ok(true);
    }
    let gens = test_generators(table, z_set, n_set, m, Some(a))?;
    Ok(ideal_contains_one(&gens, p))
}

/// Decides 1 not in <union of E_m(Z)> inside F_p tensor A^(m)[N^{-1}]:
/// true when the stratum is consistent (0 != 1 survives).
pub fn consistent(
    table: &SubstitutionTable,
    z_set: &[ParamElement],
    n_set: &[ParamElement],
    m: u32,
    p: u64,
) -> Result<bool> {
    let gens = test_generators(table, z_set, n_set, m, None)?;
    Ok(!ideal_contains_one(&gens, p))
}

fn prime_factors(n: &BigInt) -> Result<BTreeSet<u64>> {
    // reuse the fraction-free harvester on the constant polynomial
    let p: Poly<BigInt, ParamMonomial> = Poly::constant(n.clone());
    if p.is_zero() {
        return Ok(BTreeSet::new());
    }
    let run = z_buchberger_harvest(&[p])?;
    Ok(run.primes)
}

/// Splits a constructible set by a characteristic-dependent predicate.
///
/// Finite sets are evaluated prime by prime. Cofinite sets run the
/// fraction-free harvest over the integer generators to obtain the finite
/// candidate set P of primes able to disagree with characteristic zero;
/// the predicate is evaluated at 0 and at each candidate inside the set,
/// and every other prime inherits the characteristic-zero answer. That
/// assumption is spot-checked at three unharvested primes on every call.
fn partition_by(
    y: &ConstructibleZ,
    gens_z: &[ParamElement],
    eval: &impl Fn(u64) -> Result<bool>,
) -> Result<(ConstructibleZ, ConstructibleZ)> {
    match y {
        ConstructibleZ::Finite(s) => {
            let mut yes = BTreeSet::new();
            let mut no = BTreeSet::new();
            for &p in s {
                if eval(p)? {
                    yes.insert(p);
                } else {
                    no.insert(p);
                }
            }
            Ok((ConstructibleZ::Finite(yes), ConstructibleZ::Finite(no)))
        }
        ConstructibleZ::CofiniteWithZero { excluded } => {
            let run = z_buchberger_harvest(gens_z)?;
            let char0 = eval(0)?;
            spot_check_harvest(&run.primes, excluded, char0, eval)?;
            let mut disagree = BTreeSet::new();
            for &p in &run.primes {
                if !excluded.contains(&p) && eval(p)? != char0 {
                    disagree.insert(p);
                }
            }
            let with = ConstructibleZ::CofiniteWithZero {
                excluded: excluded.union(&disagree).copied().collect(),
            };
            let without = ConstructibleZ::Finite(disagree);
            if char0 {
                Ok((with, without))
            } else {
                Ok((without, with))
            }
        }
    }
}

/// Validates the harvest assumption: three deterministic pseudo-random
/// primes outside the candidate set must agree with characteristic zero.
fn spot_check_harvest(
    harvested: &BTreeSet<u64>,
    excluded: &BTreeSet<u64>,
    char0: bool,
    eval: &impl Fn(u64) -> Result<bool>,
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5347_4221 ^ (harvested.len() as u64) << 8);
    let mut checked = 0;
    let mut guard = 0;
    while checked < 3 && guard < 100_000 {
        guard += 1;
        let q: u64 = rng.gen_range(1_000..1_000_000);
        if !crate::coeff::is_prime_u64(q) || harvested.contains(&q) || excluded.contains(&q) {
            continue;
        }
        if eval(q)? != char0 {
            return Err(Error::HarvestCheck(format!(
                "unharvested prime {q} disagrees with characteristic zero \
                 (harvested: {harvested:?})"
            )));
        }
        checked += 1;
    }
    Ok(())
}

/// Partition of y by radical membership of `a` modulo the stratum data at
/// level m. Fast path when Z is empty: the localized ring is a domain, so
/// membership holds exactly where a or the localization collapses mod p.
pub fn partition_radical(
    table: &SubstitutionTable,
    y: &ConstructibleZ,
    a: &ParamElement,
    z_set: &[ParamElement],
    n_set: &[ParamElement],
    m: u32,
) -> Result<(ConstructibleZ, ConstructibleZ)> {
    if a.is_zero() {
        return Ok((y.clone(), ConstructibleZ::empty()));
    }
    if z_set.is_empty() {
        let mut trues = prime_factors(&content(a))?;
        for b in n_set {
            trues.extend(prime_factors(&content(b))?);
        }
        let t = y.intersect(&ConstructibleZ::Finite(trues));
        let f = y.subtract(&t);
        return Ok((t, f));
    }
    let gens = test_generators(table, z_set, n_set, m, Some(a))?;
    partition_by(y, &gens, &|p| Ok(ideal_contains_one(&gens_for_char(&gens, p), p)))
}

/// Partition of y by consistency of (Z, N) at level m; the true part is
/// where 0 != 1 in the localized quotient. Fast path when Z is empty.
pub fn partition_consistent(
    table: &SubstitutionTable,
    y: &ConstructibleZ,
    z_set: &[ParamElement],
    n_set: &[ParamElement],
    m: u32,
) -> Result<(ConstructibleZ, ConstructibleZ)> {
    if z_set.is_empty() {
        let mut collapse = BTreeSet::new();
        for b in n_set {
            collapse.extend(prime_factors(&content(b))?);
        }
        let f = y.intersect(&ConstructibleZ::Finite(collapse));
        let t = y.subtract(&f);
        return Ok((t, f));
    }
    let gens = test_generators(table, z_set, n_set, m, None)?;
    partition_by(y, &gens, &|p| Ok(!ideal_contains_one(&gens_for_char(&gens, p), p)))
}

// The generator list is characteristic-independent as integer polynomials;
// this hook exists so the closure borrows cleanly.
fn gens_for_char(gens: &[ParamElement], _p: u64) -> Vec<ParamElement> {
    gens.to_vec()
}

/// One leaf of the recursion: a possible generic initial ideal S together
/// with the characteristics Y and the coefficient conditions (Z vanishing,
/// N nonvanishing) under which it occurs, and the level m reached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Stratum {
    pub leads: Vec<Monomial>,
    pub chars: ConstructibleZ,
    pub vanishing: Vec<ParamElement>,
    pub nonvanishing: Vec<ParamElement>,
    pub level: u32,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let leads: Vec<String> = crate::text::display_order(&self.leads)
            .iter()
            .map(|m| m.to_string())
            .collect();
        let z: Vec<String> = self.vanishing.iter().map(|e| e.to_string()).collect();
        let n: Vec<String> = self.nonvanishing.iter().map(|e| e.to_string()).collect();
        write!(
            f,
            "S={{{}}}; Y={}; Z=[{}]; N=[{}]; m={}",
            leads.join(", "),
            self.chars,
            z.join(", "),
            n.join(", "),
            self.level
        )
    }
}

impl Stratum {
    /// Whether a concrete specialization over a field of characteristic
    /// `char_p` (0 for characteristic zero) lies on this stratum: the
    /// characteristic belongs to Y, every Z-element vanishes after generic
    /// coordinate change (all of its E_n-closure vanishes at the point),
    /// and every N-element survives generic coordinate change (some
    /// E_n-closure element is nonzero at the point). `point` maps each
    /// c_{slot, alpha} with alpha supported on x1..xn to its value.
    pub fn is_satisfied_by<C: crate::coeff::FieldCoeff>(
        &self,
        table: &SubstitutionTable,
        n: u32,
        char_p: u64,
        lift_int: &impl Fn(&BigInt) -> C,
        point: &impl Fn(u32, &Monomial) -> C,
    ) -> Result<bool> {
        if !self.chars.contains(char_p) {
            return Ok(false);
        }
        let closure_all_zero = |r: &ParamElement| -> Result<bool> {
            if max_alpha_var(r) > n {
                return Err(Error::Precondition(format!(
                    "stratum element references variables beyond x{n}"
                )));
            }
            for e in table.orbit_closure(r, n)? {
                if !crate::param::evaluate(&e, lift_int, point).is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        for r in &self.vanishing {
            if !closure_all_zero(r)? {
                return Ok(false);
            }
        }
        for b in &self.nonvanishing {
            if closure_all_zero(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn stratum_sort_key(s: &Stratum) -> (Vec<Monomial>, ConstructibleZ, String, String) {
    (
        s.leads.clone(),
        s.chars.clone(),
        s.vanishing.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";"),
        s.nonvanishing.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";"),
    )
}

#[derive(Clone, Copy, Debug)]
pub struct StillmanOptions {
    pub level_cap: u32,
    /// Re-checks the paper's node invariant (0 != 1 in the localized
    /// quotient for every characteristic in Y) at every step.
    pub validate_consistency: bool,
}

impl Default for StillmanOptions {
    fn default() -> Self {
        StillmanOptions { level_cap: 6, validate_consistency: true }
    }
}

#[derive(Clone, Debug)]
pub struct StillmanReport {
    /// Canonically sorted strata, duplicates on (S, Y, Z, N) merged.
    pub strata: Vec<Stratum>,
    pub nodes: u64,
    pub leaves: u64,
    pub merged: u64,
}

impl StillmanReport {
    /// The distinct possible generic initial ideals.
    pub fn distinct_lead_sets(&self) -> Vec<Vec<Monomial>> {
        let mut sets: Vec<Vec<Monomial>> = self.strata.iter().map(|s| s.leads.clone()).collect();
        sets.sort();
        sets.dedup();
        sets
    }
}

struct Ctx {
    table: SubstitutionTable,
    cap: u32,
    validate: bool,
}

#[derive(Clone)]
struct Node {
    m: u32,
    basis: Vec<Representation<ParamFrac>>,
    queue: Vec<Representation<ParamFrac>>,
    y: ConstructibleZ,
    z: Vec<ParamElement>,
    n: Vec<ParamElement>,
}

fn describe(node: &Node) -> String {
    let z: Vec<String> = node.z.iter().map(|e| e.to_string()).collect();
    let n: Vec<String> = node.n.iter().map(|e| e.to_string()).collect();
    format!(
        "m={}, Y={}, Z=[{}], N=[{}], queue={}",
        node.m,
        node.y,
        z.join(", "),
        n.join(", "),
        node.queue.len()
    )
}

fn insert_canonical(set: &mut Vec<ParamElement>, e: ParamElement) {
    if !set.contains(&e) {
        set.push(e);
        set.sort_by(|a, b| cmp_elements(b, a));
    }
}

/// Enumerates all strata for ideals generated by k forms of the given
/// degrees. Depth-first, deterministic; the level cap aborts (with the
/// offending branch described) rather than truncate silently.
pub fn stillman_enumerate(
    k: u32,
    degrees: &[u32],
    opts: StillmanOptions,
) -> Result<StillmanReport> {
    let sys = universal_system(k, degrees)?;
    let ctx = Ctx {
        table: SubstitutionTable::new(degrees),
        cap: opts.level_cap,
        validate: opts.validate_consistency,
    };
    let root = Node {
        m: 0,
        basis: Vec::new(),
        queue: sys.reps,
        y: ConstructibleZ::spec_z(),
        z: Vec::new(),
        n: Vec::new(),
    };
    let mut strata = Vec::new();
    let mut stats = (0u64, 0u64); // nodes, leaves
    run(&ctx, root, &mut strata, &mut stats)?;

    strata.sort_by(|a, b| {
        stratum_sort_key(a)
            .cmp(&stratum_sort_key(b))
            .then_with(|| a.level.cmp(&b.level))
    });
    let before = strata.len() as u64;
    strata.dedup_by(|b, a| stratum_sort_key(a) == stratum_sort_key(b)); // keeps the smaller m
    let merged = before - strata.len() as u64;
    Ok(StillmanReport { strata, nodes: stats.0, leaves: stats.1, merged })
}

fn ensure_consistent(ctx: &Ctx, node: &Node) -> Result<()> {
    let (t, f) = partition_consistent(&ctx.table, &node.y, &node.z, &node.n, node.m)?;
    if !f.is_empty() || t != node.y {
        return Err(Error::Precondition(format!(
            "consistency invariant violated on {f} at node {}",
            describe(node)
        )));
    }
    Ok(())
}

fn run(ctx: &Ctx, mut node: Node, out: &mut Vec<Stratum>, stats: &mut (u64, u64)) -> Result<()> {
    stats.0 += 1;
    node.queue.retain(|f| !f.is_zero());
    loop {
        if node.y.is_empty() {
            return Ok(());
        }
        if ctx.validate {
            ensure_consistent(ctx, &node)?;
        }
        let Some(i) = select_visible(&node.queue) else {
            if node.queue.is_empty() {
                break;
            }
            if node.m >= ctx.cap {
                return Err(Error::LevelCap(describe(&node)));
            }
            node.m += 1;
            for b in node.basis.iter_mut() {
                *b = expand(b, node.m)?;
            }
            for f in node.queue.iter_mut() {
                *f = expand(f, node.m)?;
            }
            continue;
        };
        let f = node.queue.remove(i);

        // Queue cleaning modulo the stratum: the paper removes the zero
        // series from the queue; with parametric coefficients an element is
        // zero on a stratum when every coefficient numerator lies in the
        // radical closure. Characteristics where the whole element
        // vanishes continue without it (no progress would ever be made on
        // its endless expansion tail otherwise).
        let mut y_zero = node.y.clone();
        for (c, _) in f.body().terms() {
            if y_zero.is_empty() {
                break;
            }
            let num = c.numerator();
            let level = node.m.max(max_alpha_var(num));
            let (t, _) =
                partition_radical(&ctx.table, &y_zero, num, &node.z, &node.n, level)?;
            y_zero = t;
        }
        if !y_zero.is_empty() {
            let rest = node.y.subtract(&y_zero);
            if rest.is_empty() {
                continue; // f is the zero series on the whole stratum
            }
            let child = Node { y: y_zero, ..node.clone() };
            run(ctx, child, out, stats)?;
            node.y = rest;
        }

        let b = f.lc().expect("visible representation has a leading term").clone();
        let a = sign_normalize(b.numerator());
        let a_level = node.m.max(max_alpha_var(&a));
        let tail = f.tail();

        // branch (I): characteristics where a is already zero on the stratum
        let (y1, y_keep) =
            partition_radical(&ctx.table, &node.y, &a, &node.z, &node.n, a_level)?;
        if !y1.is_empty() {
            let mut queue = node.queue.clone();
            if !tail.is_zero() {
                queue.push(tail.clone());
            }
            let child = Node { y: y1, queue, ..node.clone() };
            run(ctx, child, out, stats)?;
        }
        node.y = y_keep;
        if node.y.is_empty() {
            return Ok(());
        }

        // branch (II): characteristics where a = 0 cuts a consistent stratum
        let mut z2 = node.z.clone();
        insert_canonical(&mut z2, a.clone());
        let (y2, _) = partition_consistent(&ctx.table, &node.y, &z2, &node.n, node.m)?;
        if !y2.is_empty() {
            let mut queue = node.queue.clone();
            if !tail.is_zero() {
                queue.push(tail.clone());
            }
            let child = Node { y: y2, queue, z: z2, ..node.clone() };
            run(ctx, child, out, stats)?;
        }

        // main branch: a is invertible from here on
        let monic = f.make_monic();
        insert_canonical(&mut node.n, a);
        node.basis.push(monic.clone());
        for h in node.basis[..node.basis.len() - 1].to_vec() {
            let s = s_pair(node.m, &h, &monic)?;
            let r = remainder(node.m, &s, &node.basis)?;
            if !r.is_zero() {
                node.queue.push(r);
            }
        }
    }

    stats.1 += 1;
    let leads: Vec<Monomial> = node.basis.iter().filter_map(|b| b.lmon().cloned()).collect();
    out.push(Stratum {
        leads: monomial_min_gens(&leads),
        chars: node.y,
        vanishing: node.z,
        nonvanishing: node.n,
        level: node.m,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xm(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    fn c(slot: u32, pairs: &[(u32, u32)]) -> ParamElement {
        c_var(slot, xm(pairs))
    }

    #[test]
    fn constructible_sets() {
        let all = ConstructibleZ::spec_z();
        let f23 = ConstructibleZ::finite([2, 3]);
        assert!(all.contains(0) && all.contains(7));
        assert!(!f23.contains(0) && f23.contains(2) && !f23.contains(7));
        assert_eq!(all.subtract(&f23), ConstructibleZ::CofiniteWithZero {
            excluded: BTreeSet::from([2, 3])
        });
        assert_eq!(all.subtract(&f23).subtract(&all.subtract(&f23)), ConstructibleZ::empty());
        assert_eq!(f23.intersect(&all.subtract(&f23)), ConstructibleZ::empty());
        assert_eq!(all.intersect(&f23), f23);
        let c5 = ConstructibleZ::CofiniteWithZero { excluded: BTreeSet::from([5]) };
        assert_eq!(all.subtract(&c5), ConstructibleZ::finite([5]));
    }

    #[test]
    fn universal_systems() {
        // p(1) = 1, p(2) = 2, p(3) = 3 terms
        let s = universal_system(1, &[1]).unwrap();
        assert_eq!(s.reps[0].body().num_terms(), 1);
        let s = universal_system(1, &[2]).unwrap();
        assert_eq!(s.reps[0].body().num_terms(), 2);
        assert_eq!(
            s.reps[0].body().lmon(),
            &xm(&[(1, 2)])
        );
        let s = universal_system(1, &[3]).unwrap();
        assert_eq!(s.reps[0].body().num_terms(), 3);
        let bodies: Vec<Monomial> =
            s.reps[0].body().terms().iter().map(|(_, m)| m.clone()).collect();
        assert_eq!(
            bodies,
            vec![xm(&[(1, 3)]), xm(&[(1, 2), (2, 1)]), xm(&[(1, 1), (2, 1), (3, 1)])]
        );
        assert_eq!(universal_system(1, &[4]).unwrap().reps[0].body().num_terms(), 5);
    }

    #[test]
    fn radical_membership_basics() {
        let table = SubstitutionTable::new(&[1, 1]);
        let a = c(1, &[(1, 1)]);
        // literal membership
        assert!(radical_member(&table, &a, &[a.clone()], &[], 1, 0).unwrap());
        // radical of a power
        let sq = a.mul(&a);
        assert!(radical_member(&table, &a, &[sq], &[], 1, 0).unwrap());
        assert!(radical_member(&table, &a, &[sq2()], &[], 1, 101).unwrap());
        // independent variables
        let b = c(2, &[(1, 1)]);
        assert!(!radical_member(&table, &a, &[b.clone()], &[], 1, 0).unwrap());
        assert!(!radical_member(&table, &a, &[b], &[], 1, 2).unwrap());

        fn sq2() -> ParamElement {
            let a = c_var(1, Monomial::var(1));
            a.mul(&a)
        }
    }

    #[test]
    fn consistency_basics() {
        let table = SubstitutionTable::new(&[1, 1]);
        let a = c(1, &[(1, 1)]);
        let b = c(2, &[(1, 1)]);
        assert!(consistent(&table, &[], &[], 1, 0).unwrap());
        // an element both zero and invertible
        assert!(!consistent(&table, &[a.clone()], &[a.clone()], 1, 0).unwrap());
        assert!(!consistent(&table, &[a.clone()], &[a.clone()], 1, 7).unwrap());
        // independent conditions are fine
        assert!(consistent(&table, &[a], &[b], 1, 0).unwrap());
    }

    #[test]
    fn partition_content_primes() {
        // Z = {2 c}: over Q the ideal closure contains c, so membership of c
        // holds; mod 2 the generator vanishes and membership fails.
        let table = SubstitutionTable::new(&[1]);
        let a = c(1, &[(1, 1)]);
        let two_a = a.scale(&BigInt::from(2));
        let y = ConstructibleZ::spec_z();
        let (t, f) = partition_radical(&table, &y, &a, &[two_a], &[], 1).unwrap();
        assert_eq!(t, ConstructibleZ::CofiniteWithZero { excluded: BTreeSet::from([2]) });
        assert_eq!(f, ConstructibleZ::finite([2]));
    }

    #[test]
    fn enumerate_one_linear_form() {
        let report = stillman_enumerate(1, &[1], StillmanOptions::default()).unwrap();
        let sets = report.distinct_lead_sets();
        assert_eq!(sets, vec![vec![], vec![xm(&[(1, 1)])]]);
        assert_eq!(report.strata.len(), 2);
        for s in &report.strata {
            assert!(!s.chars.is_empty());
        }
        // the zero stratum records the vanishing of the leading coefficient
        let zero = report.strata.iter().find(|s| s.leads.is_empty()).unwrap();
        assert_eq!(zero.vanishing, vec![c(1, &[(1, 1)])]);
        assert!(zero.chars.contains(0));
    }

    #[test]
    fn enumerate_one_quadric() {
        let report = stillman_enumerate(1, &[2], StillmanOptions::default()).unwrap();
        let sets = report.distinct_lead_sets();
        assert_eq!(sets, vec![vec![], vec![xm(&[(1, 2)])]]);
        for s in &report.strata {
            assert!(!s.chars.is_empty());
        }
    }

    #[test]
    fn enumerate_two_linear_forms() {
        let report = stillman_enumerate(2, &[1, 1], StillmanOptions::default()).unwrap();
        let sets = report.distinct_lead_sets();
        assert_eq!(
            sets,
            vec![vec![], vec![xm(&[(1, 1)])], vec![xm(&[(1, 1)]), xm(&[(2, 1)])]]
        );
        // the dependent-pair stratum pins the 2x2 determinant
        let det = c(1, &[(2, 1)])
            .mul(&c(2, &[(1, 1)]))
            .sub(&c(1, &[(1, 1)]).mul(&c(2, &[(2, 1)])));
        let dep = report
            .strata
            .iter()
            .find(|s| s.vanishing.iter().any(|z| *z == sign_normalize(&det)));
        assert!(dep.is_some(), "expected a stratum cut out by the determinant");
        assert_eq!(dep.unwrap().leads, vec![xm(&[(1, 1)])]);
    }
}
