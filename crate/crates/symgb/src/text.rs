//! Text grammar shared by the CLI, the stratum files, and the tests.
//!
//! Polynomials are sums of terms joined by `+`/`-`; a coefficient is a
//! decimal integer or a fraction `a/b`; a monomial is `*`-joined variable
//! powers like `x1^2*x3`; the empty monomial is `1`. Coefficient-ring
//! variables print as `c_<slot>_<e1>_..._<ek>` with alpha's exponents
//! underscore-joined. Representations read
//! `rep(n=<level>, d=<degree>) <polynomial>`. Field specs are `QQ` or
//! `F<p>` with p prime.

use crate::coeff::{is_prime_u64, Fp};
use crate::error::{Error, Result};
use crate::invariant::Representation;
use crate::monomial::Monomial;
use crate::param::{ParamElement, ParamMonomial, ParamVar};
use crate::poly::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Coefficient rendering hooks for the shared term formatter.
pub trait CoeffText {
    fn is_disp_negative(&self) -> bool;
    /// Text of the absolute value.
    fn abs_text(&self) -> String;
    /// True when the absolute value renders as "1" (so it can be elided
    /// before a nonempty monomial).
    fn abs_is_one(&self) -> bool;
}

impl CoeffText for BigRational {
    fn is_disp_negative(&self) -> bool {
        self.is_negative()
    }
    fn abs_text(&self) -> String {
        let a = self.abs();
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn abs_is_one(&self) -> bool {
        self.abs().is_one()
    }
}

impl CoeffText for Fp {
    fn is_disp_negative(&self) -> bool {
        false
    }
    fn abs_text(&self) -> String {
        self.value().to_string()
    }
    fn abs_is_one(&self) -> bool {
        self.value() == 1
    }
}

impl CoeffText for BigInt {
    fn is_disp_negative(&self) -> bool {
        self.is_negative()
    }
    fn abs_text(&self) -> String {
        self.abs().to_string()
    }
    fn abs_is_one(&self) -> bool {
        self.abs().is_one()
    }
}

pub(crate) fn format_terms<C, M>(terms: &[(C, M)]) -> String
where
    C: CoeffText,
    M: fmt::Display,
{
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, m)) in terms.iter().enumerate() {
        let neg = c.is_disp_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = m.to_string();
        if mono == "1" {
            out.push_str(&c.abs_text());
        } else if c.abs_is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&c.abs_text());
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

impl fmt::Display for Poly<BigRational, Monomial> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(self.terms()))
    }
}

impl fmt::Display for Poly<Fp, Monomial> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(self.terms()))
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly<BigInt, ParamMonomial> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(self.terms()))
    }
}

impl fmt::Display for Representation<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rep(n={}, d={}) {}", self.level(), self.degree(), self.body())
    }
}

impl fmt::Display for Representation<Fp> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rep(n={}, d={}) {}", self.level(), self.degree(), self.body())
    }
}

/// Coefficient field selector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldSpec {
    QQ,
    Fp(u64),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<FieldSpec> {
        if s == "QQ" {
            return Ok(FieldSpec::QQ);
        }
        if let Some(digits) = s.strip_prefix('F') {
            let p: u64 = digits.parse().map_err(|_| Error::Parse {
                pos: 1,
                msg: format!("bad modulus in field spec '{s}'"),
            })?;
            if !is_prime_u64(p) {
                return Err(Error::Precondition(format!("modulus {p} is not prime")));
            }
            return Ok(FieldSpec::Fp(p));
        }
        Err(Error::Parse { pos: 0, msg: format!("unknown field spec '{s}' (expected QQ or F<p>)") })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::QQ => write!(f, "QQ"),
            FieldSpec::Fp(p) => write!(f, "F{p}"),
        }
    }
}

struct RawTerm {
    neg: bool,
    num: BigInt,
    den: BigInt,
    vars: Vec<(String, u32)>,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { src: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn small_integer(&mut self) -> Result<u32> {
        let n = self.integer()?;
        u32::try_from(&n).map_err(|_| Error::Parse { pos: self.pos, msg: format!("{n} too large") })
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a variable name");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
    }
}

fn parse_raw_terms(lex: &mut Lexer) -> Result<Vec<RawTerm>> {
    let mut terms = Vec::new();
    let mut neg = match lex.peek() {
        Some(b'-') => {
            lex.bump();
            true
        }
        Some(b'+') => {
            lex.bump();
            false
        }
        Some(_) => false,
        None => return lex.err("empty polynomial"),
    };
    loop {
        let mut term =
            RawTerm { neg, num: BigInt::one(), den: BigInt::one(), vars: Vec::new() };
        loop {
            match lex.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = lex.integer()?;
                    term.num *= n;
                    if lex.peek() == Some(b'/') {
                        lex.bump();
                        let d = lex.integer()?;
                        if d.is_zero() {
                            return lex.err("zero denominator");
                        }
                        term.den *= d;
                    }
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let name = lex.ident()?;
                    let mut exp = 1u32;
                    if lex.peek() == Some(b'^') {
                        lex.bump();
                        exp = lex.small_integer()?;
                    }
                    term.vars.push((name, exp));
                }
                _ => return lex.err("expected a coefficient or a variable"),
            }
            if lex.peek() == Some(b'*') {
                lex.bump();
                continue;
            }
            break;
        }
        terms.push(term);
        match lex.peek() {
            None => break,
            Some(b'+') => {
                lex.bump();
                neg = false;
            }
            Some(b'-') => {
                lex.bump();
                neg = true;
            }
            Some(c) => return lex.err(format!("unexpected character '{}'", c as char)),
        }
    }
    Ok(terms)
}

fn x_monomial(lex_pos: usize, vars: &[(String, u32)]) -> Result<Monomial> {
    let mut pairs = Vec::new();
    for (name, exp) in vars {
        let idx = name
            .strip_prefix('x')
            .and_then(|d| d.parse::<u32>().ok())
            .filter(|&i| i >= 1)
            .ok_or_else(|| Error::Parse {
                pos: lex_pos,
                msg: format!("expected a variable like x3, found '{name}'"),
            })?;
        pairs.push((idx, *exp));
    }
    Ok(Monomial::from_pairs(pairs))
}

/// Parses a polynomial with rational coefficients in the x-variables.
pub fn parse_qq_poly(s: &str) -> Result<Poly<BigRational, Monomial>> {
    let mut lex = Lexer::new(s);
    let raw = parse_raw_terms(&mut lex)?;
    let mut terms = Vec::new();
    for t in raw {
        let mut c = BigRational::new(t.num, t.den);
        if t.neg {
            c = -c;
        }
        terms.push((c, x_monomial(lex.pos, &t.vars)?));
    }
    Ok(Poly::from_terms(terms))
}

/// Parses a polynomial with F_p coefficients; fractions a/b are read as
/// a * b^{-1} mod p.
pub fn parse_fp_poly(s: &str, p: u64) -> Result<Poly<Fp, Monomial>> {
    let mut lex = Lexer::new(s);
    let raw = parse_raw_terms(&mut lex)?;
    let mut terms = Vec::new();
    for t in raw {
        let num = Fp::from_bigint(&t.num, p);
        let den = Fp::from_bigint(&t.den, p);
        if crate::coeff::Coeff::is_zero(&den) {
            return Err(Error::Parse { pos: 0, msg: format!("denominator vanishes mod {p}") });
        }
        let mut c = crate::coeff::FieldCoeff::div(&num, &den);
        if t.neg {
            c = crate::coeff::Coeff::neg(&c);
        }
        terms.push((c, x_monomial(lex.pos, &t.vars)?));
    }
    Ok(Poly::from_terms(terms))
}

/// Parses an integer polynomial in the coefficient-ring variables
/// `c_<slot>_<e1>_..._<ek>`.
pub fn parse_param_poly(s: &str) -> Result<ParamElement> {
    let mut lex = Lexer::new(s);
    let raw = parse_raw_terms(&mut lex)?;
    let mut terms = Vec::new();
    for t in raw {
        if !t.den.is_one() {
            return Err(Error::Parse {
                pos: 0,
                msg: "coefficient-ring elements have integer coefficients".into(),
            });
        }
        let mut pairs = Vec::new();
        for (name, exp) in &t.vars {
            let parts: Vec<&str> = name.split('_').collect();
            if parts.len() < 2 || parts[0] != "c" {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("expected a variable like c_1_2_0, found '{name}'"),
                });
            }
            let slot: u32 = parts[1]
                .parse()
                .map_err(|_| Error::Parse { pos: 0, msg: format!("bad slot in '{name}'") })?;
            let mut alpha_pairs = Vec::new();
            for (i, e) in parts[2..].iter().enumerate() {
                let e: u32 = e
                    .parse()
                    .map_err(|_| Error::Parse { pos: 0, msg: format!("bad exponent in '{name}'") })?;
                if e > 0 {
                    alpha_pairs.push((i as u32 + 1, e));
                }
            }
            pairs.push((
                ParamVar::C { slot, alpha: Monomial::from_pairs(alpha_pairs) },
                *exp,
            ));
        }
        let c = if t.neg { -t.num } else { t.num };
        terms.push((c, ParamMonomial::from_pairs(pairs)));
    }
    Ok(Poly::from_terms(terms))
}

fn parse_rep_header(s: &str) -> Result<(u32, u32, usize)> {
    let mut lex = Lexer::new(s);
    for expected in ["rep", "(", "n", "="] {
        lex.skip_ws();
        if lex.src[lex.pos..].starts_with(expected.as_bytes()) {
            lex.pos += expected.len();
        } else {
            return lex.err(format!("expected '{expected}' in representation header"));
        }
    }
    let n = lex.small_integer()?;
    for expected in [",", "d", "="] {
        lex.skip_ws();
        if lex.src[lex.pos..].starts_with(expected.as_bytes()) {
            lex.pos += expected.len();
        } else {
            return lex.err(format!("expected '{expected}' in representation header"));
        }
    }
    let d = lex.small_integer()?;
    lex.skip_ws();
    if lex.peek() != Some(b')') {
        return lex.err("expected ')' closing the representation header");
    }
    lex.bump();
    Ok((n, d, lex.pos))
}

/// Parses `rep(n=<level>, d=<degree>) <polynomial>` over the rationals,
/// validating the representation invariants.
pub fn parse_qq_rep(s: &str) -> Result<Representation<BigRational>> {
    let (n, d, body_at) = parse_rep_header(s)?;
    let body = parse_qq_poly(&s[body_at..])?;
    Representation::new(n, d, body)
}

/// Parses a representation over F_p.
pub fn parse_fp_rep(s: &str, p: u64) -> Result<Representation<Fp>> {
    let (n, d, body_at) = parse_rep_header(s)?;
    let body = parse_fp_poly(&s[body_at..], p)?;
    Representation::new(n, d, body)
}

/// Reading order for monomial sets: ascending degree, grevlex-descending
/// within a degree, so {x1, x2} and {x1, x2^2} print the way they are said.
pub fn display_order(ms: &[Monomial]) -> Vec<Monomial> {
    let mut out = ms.to_vec();
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    out
}

/// Canonical text for a monomial set in reading order; `{}` when empty.
pub fn monomial_set_text(ms: &[Monomial]) -> String {
    let items: Vec<String> = display_order(ms).iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}
