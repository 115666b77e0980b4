//! Sparse monomials over an unbounded, 1-based variable set, ordered by
//! graded reverse lexicographic order (grevlex): compare total degree first;
//! on equal degree the monomial whose exponent is *smaller* at the largest
//! index where the exponent vectors differ is the *larger* monomial.
//!
//! The same sparse machinery is reused for monomials in the universal
//! coefficient variables (see `param`), so the core type is generic over the
//! variable identifier.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

/// Variable identifier usable in a sparse monomial. The `Ord` instance fixes
/// which variable counts as "last" in the grevlex comparison.
pub trait VarId: Clone + Eq + Ord + Hash + fmt::Debug {}
impl<V: Clone + Eq + Ord + Hash + fmt::Debug> VarId for V {}

/// A sparse monomial: strictly ascending `(variable, exponent)` pairs with
/// positive exponents, plus the cached total degree. The empty list is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SparseMono<V> {
    vars: Vec<(V, u32)>,
    degree: u32,
}

/// Monomial in the series variables x1, x2, ... (indices start at 1).
pub type Monomial = SparseMono<u32>;

impl<V: VarId> SparseMono<V> {
    pub fn one() -> Self {
        SparseMono { vars: Vec::new(), degree: 0 }
    }

    /// Builds from arbitrary (variable, exponent) pairs: merges duplicates,
    /// drops zero exponents, sorts ascending.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (V, u32)>) -> Self {
        let mut vars: Vec<(V, u32)> = Vec::new();
        for (v, e) in pairs {
            if e > 0 {
                vars.push((v, e));
            }
        }
        vars.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(V, u32)> = Vec::with_capacity(vars.len());
        for (v, e) in vars {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        let degree = merged.iter().map(|(_, e)| *e).sum();
        SparseMono { vars: merged, degree }
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent_of(&self, v: &V) -> u32 {
        self.vars
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.vars[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(V, u32)> {
        self.vars.iter()
    }

    pub fn vars(&self) -> &[(V, u32)] {
        &self.vars
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut vars = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            match self.vars[i].0.cmp(&other.vars[j].0) {
                Ordering::Less => {
                    vars.push(self.vars[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    vars.push(other.vars[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    vars.push((self.vars[i].0.clone(), self.vars[i].1 + other.vars[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&self.vars[i..]);
        vars.extend_from_slice(&other.vars[j..]);
        SparseMono { vars, degree: self.degree + other.degree }
    }

    /// Componentwise quotient, or `None` when `other` does not divide `self`.
    pub fn try_div(&self, other: &Self) -> Option<Self> {
        let mut vars = Vec::with_capacity(self.vars.len());
        let mut j = 0;
        for (v, e) in &self.vars {
            let mut e = *e;
            if j < other.vars.len() && other.vars[j].0 == *v {
                let oe = other.vars[j].1;
                if oe > e {
                    return None;
                }
                e -= oe;
                j += 1;
            }
            if e > 0 {
                vars.push((v.clone(), e));
            }
        }
        if j < other.vars.len() {
            return None;
        }
        Some(SparseMono { vars, degree: self.degree - other.degree })
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.try_div(self).is_some()
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Self) -> Self {
        let mut vars = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            match self.vars[i].0.cmp(&other.vars[j].0) {
                Ordering::Less => {
                    vars.push(self.vars[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    vars.push(other.vars[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    vars.push((self.vars[i].0.clone(), self.vars[i].1.max(other.vars[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&self.vars[i..]);
        vars.extend_from_slice(&other.vars[j..]);
        let degree = vars.iter().map(|(_, e)| *e).sum();
        SparseMono { vars, degree }
    }

    /// Disjoint supports, i.e. lcm(a, b) = a*b (the trivial S-pair criterion).
    pub fn is_coprime(&self, other: &Self) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            match self.vars[i].0.cmp(&other.vars[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    /// Grevlex: total degree first; on ties scan merged supports from the
    /// largest variable downward, and at the first index where the exponents
    /// differ the monomial with the *smaller* exponent is the larger one.
    pub fn grevlex_cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (self.vars.len(), other.vars.len());
        loop {
            match (i, j) {
                (0, 0) => return Ordering::Equal,
                (0, _) => return Ordering::Greater,
                (_, 0) => return Ordering::Less,
                _ => {}
            }
            let (va, ea) = &self.vars[i - 1];
            let (vb, eb) = &other.vars[j - 1];
            match va.cmp(vb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ea.cmp(eb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        i -= 1;
                        j -= 1;
                    }
                },
            }
        }
    }
}

impl<V: VarId> PartialOrd for SparseMono<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: VarId> Ord for SparseMono<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

/// Total grevlex comparison of two series monomials.
pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.grevlex_cmp(b)
}

/// A permutation of variable indices with finite support: indices missing
/// from the table are fixed. Used to move monomials (and the coefficient
/// variables riding along with them) between orbit representatives.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Perm {
    map: Vec<(u32, u32)>, // (source, image), sorted by source, bijective on the support
}

impl Perm {
    pub fn identity() -> Self {
        Perm { map: Vec::new() }
    }

    /// Builds the permutation sending `src_i -> dst_i` and completes it to a
    /// bijection by matching the leftover sources and targets in increasing
    /// order. Panics if the pairs cannot be completed (duplicate sources or
    /// targets).
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        let mut support: Vec<u32> = pairs.iter().flat_map(|&(s, d)| [s, d]).collect();
        support.sort_unstable();
        support.dedup();
        let srcs: Vec<u32> = pairs.iter().map(|&(s, _)| s).collect();
        let dsts: Vec<u32> = pairs.iter().map(|&(_, d)| d).collect();
        let mut free_srcs: Vec<u32> =
            support.iter().copied().filter(|v| !srcs.contains(v)).collect();
        let mut free_dsts: Vec<u32> =
            support.iter().copied().filter(|v| !dsts.contains(v)).collect();
        assert_eq!(free_srcs.len(), free_dsts.len(), "pairs are not injective");
        free_srcs.sort_unstable();
        free_dsts.sort_unstable();
        let mut map: Vec<(u32, u32)> = pairs.to_vec();
        map.extend(free_srcs.into_iter().zip(free_dsts));
        map.retain(|&(s, d)| s != d);
        map.sort_unstable_by_key(|&(s, _)| s);
        for w in map.windows(2) {
            assert!(w[0].0 < w[1].0, "duplicate source in permutation");
        }
        Perm { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.map
            .binary_search_by_key(&v, |&(s, _)| s)
            .map(|i| self.map[i].1)
            .unwrap_or(v)
    }
}

impl Monomial {
    /// The single variable x_i (1-based).
    pub fn var(i: u32) -> Self {
        assert!(i >= 1, "variable indices are 1-based");
        SparseMono { vars: vec![(i, 1)], degree: 1 }
    }

    pub fn var_pow(i: u32, e: u32) -> Self {
        assert!(i >= 1, "variable indices are 1-based");
        if e == 0 {
            return Self::one();
        }
        SparseMono { vars: vec![(i, e)], degree: e }
    }

    /// Largest variable index with a nonzero exponent; 0 for the monomial 1.
    pub fn max_var(&self) -> u32 {
        self.vars.last().map(|&(v, _)| v).unwrap_or(0)
    }

    /// True when the support lies in {x1, ..., xm}.
    pub fn within(&self, m: u32) -> bool {
        self.max_var() <= m
    }

    /// Applies a variable permutation: x_i -> x_{p(i)}.
    pub fn permute(&self, p: &Perm) -> Self {
        if p.is_identity() {
            return self.clone();
        }
        Self::from_pairs(self.vars.iter().map(|&(v, e)| (p.apply(v), e)))
    }

    /// The grevlex-largest monomial in the S_{>n}-orbit: exponents at
    /// positions <= n stay put, the tail exponents are re-packed onto
    /// n+1, n+2, ... in weakly decreasing order.
    pub fn orbit_rep(&self, n: u32) -> Self {
        let head: Vec<(u32, u32)> = self.vars.iter().filter(|&&(v, _)| v <= n).cloned().collect();
        let mut tail: Vec<u32> =
            self.vars.iter().filter(|&&(v, _)| v > n).map(|&(_, e)| e).collect();
        tail.sort_unstable_by(|a, b| b.cmp(a));
        let mut vars = head;
        for (k, e) in tail.into_iter().enumerate() {
            vars.push((n + 1 + k as u32, e));
        }
        SparseMono { vars, degree: self.degree }
    }

    /// True when this monomial is the grevlex-largest element of its
    /// S_{>n}-orbit: the exponents beyond position n sit consecutively at
    /// n+1, n+2, ... and weakly decrease.
    pub fn is_orbit_max(&self, n: u32) -> bool {
        let mut expected = n + 1;
        let mut prev = u32::MAX;
        for &(v, e) in self.vars.iter().filter(|&&(v, _)| v > n) {
            if v != expected || e > prev {
                return false;
            }
            prev = e;
            expected += 1;
        }
        true
    }

    /// Splits into the fixed part (variables <= n) and the tail positions
    /// and exponents beyond n, in ascending position order.
    pub fn split_at_level(&self, n: u32) -> (Vec<(u32, u32)>, Vec<(u32, u32)>) {
        let head = self.vars.iter().filter(|&&(v, _)| v <= n).cloned().collect();
        let tail = self.vars.iter().filter(|&&(v, _)| v > n).cloned().collect();
        (head, tail)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.vars {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}
