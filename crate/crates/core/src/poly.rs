//! Sparse multivariate Laurent polynomials with big-integer coefficients.
//!
//! Every polynomial invariant in the crate lives in `Z[a^±, z^±, l^±, m^±, t^±]`.
//! Terms are stored in a `BTreeMap` keyed by the exponent vector, so the
//! representation is canonical: no zero coefficients, unique keys, and the
//! zero polynomial is the empty map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The five polynomial variables, in rendering order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A,
    Z,
    L,
    M,
    T,
}

pub const NVARS: usize = 5;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::A, Var::Z, Var::L, Var::M, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            Var::A => 'a',
            Var::Z => 'z',
            Var::L => 'l',
            Var::M => 'm',
            Var::T => 't',
        }
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.symbol() == c)
    }
}

pub type Exponents = [i32; NVARS];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("binding for `{0}` is not a signed Laurent monomial")]
    NonMonomialBinding(char),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("inexact division")]
    InexactDivision,
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

fn add_exponents(x: &Exponents, y: &Exponents) -> Exponents {
    let mut out = [0; NVARS];
    for i in 0..NVARS {
        out[i] = x[i]
            .checked_add(y[i])
            .unwrap_or_else(|| panic!("Laurent exponent overflow: {} + {}", x[i], y[i]));
    }
    out
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, [0; NVARS])
    }

    pub fn monomial<C: Into<BigInt>>(c: C, exps: Exponents) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { terms }
    }

    /// `v^e`
    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut exps = [0; NVARS];
        exps[v.index()] = e;
        Self::monomial(1, exps)
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn from_terms<I, C>(it: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exps: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &Exponents) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Coefficient of `v^e` in a univariate polynomial in `v`.
    pub fn coeff_of(&self, v: Var, e: i32) -> BigInt {
        let mut exps = [0; NVARS];
        exps[v.index()] = e;
        self.coeff(&exps)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale<C: Into<BigInt>>(&self, c: C) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * &c)).collect(),
        }
    }

    /// Multiplies by a monomial `v^e`.
    pub fn shift(&self, v: Var, e: i32) -> Self {
        let mut d = [0; NVARS];
        d[v.index()] = e;
        LaurentPoly {
            terms: self.terms.iter().map(|(x, c)| (add_exponents(x, &d), c.clone())).collect(),
        }
    }

    /// Smallest and largest exponent of `v` among the terms.
    pub fn degree_range(&self, v: Var) -> Option<(i32, i32)> {
        let i = v.index();
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Returns `(sign, exponents)` when `self` is `±` a single monomial.
    pub fn as_signed_monomial(&self) -> Option<(i32, Exponents)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((1, *e))
        } else if (-c).is_one() {
            Some((-1, *e))
        } else {
            None
        }
    }

    /// Ring homomorphism sending each bound variable to a signed monomial.
    /// Unbound variables are left unchanged.
    pub fn substitute(&self, bindings: &[(Var, LaurentPoly)]) -> Result<LaurentPoly, PolyError> {
        let mut images: [(i32, Exponents); NVARS] = [(1, [0; NVARS]); NVARS];
        for v in Var::ALL {
            images[v.index()].1[v.index()] = 1;
        }
        for (v, target) in bindings {
            let m = target
                .as_signed_monomial()
                .ok_or(PolyError::NonMonomialBinding(v.symbol()))?;
            images[v.index()] = m;
        }
        let mut out = Self::zero();
        for (exps, c) in &self.terms {
            let mut sign = 1i32;
            let mut acc = [0i64; NVARS];
            for (i, &e) in exps.iter().enumerate() {
                let (s, img) = images[i];
                if s < 0 && e.rem_euclid(2) == 1 {
                    sign = -sign;
                }
                for j in 0..NVARS {
                    acc[j] += img[j] as i64 * e as i64;
                }
            }
            let mut new = [0; NVARS];
            for j in 0..NVARS {
                new[j] = i32::try_from(acc[j]).map_err(|_| PolyError::ExponentOverflow)?;
            }
            out.add_term(new, if sign < 0 { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// Replaces `v` by an arbitrary polynomial. Negative powers of `v` are
    /// not allowed here; multiply through by a power of `v` first.
    pub fn compose(&self, v: Var, image: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        let i = v.index();
        let mut out = Self::zero();
        for (exps, c) in &self.terms {
            let e = exps[i];
            if e < 0 {
                return Err(PolyError::NonMonomialBinding(v.symbol()));
            }
            let mut rest = *exps;
            rest[i] = 0;
            out = out + image.pow(e as u32) * LaurentPoly::monomial(c.clone(), rest);
        }
        Ok(out)
    }

    /// Reduces modulo `v^2 = -1`, returning the real and imaginary parts
    /// (the coefficients of `v^0` and `v^1`).
    pub fn reduce_imaginary(&self, v: Var) -> (LaurentPoly, LaurentPoly) {
        let i = v.index();
        let mut re = Self::zero();
        let mut im = Self::zero();
        for (exps, c) in &self.terms {
            let e = exps[i];
            let mut rest = *exps;
            rest[i] = 0;
            // v^e = (-1)^{floor(e/2)} * v^{e mod 2}
            let sign_neg = e.div_euclid(2).rem_euclid(2) == 1;
            let c = if sign_neg { -c.clone() } else { c.clone() };
            if e.rem_euclid(2) == 0 {
                re.add_term(rest, c);
            } else {
                im.add_term(rest, c);
            }
        }
        (re, im)
    }

    /// Exact division by a nonzero polynomial in the single variable `v`,
    /// where `self` may involve only `v` as well.
    pub fn div_exact_univariate(&self, v: Var, divisor: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        let (dlo, dhi) = divisor.degree_range(v).ok_or(PolyError::InexactDivision)?;
        let lead = divisor.coeff_of(v, dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((lo, hi)) = rem.degree_range(v) {
            if hi - lo < dhi - dlo {
                return Err(PolyError::InexactDivision);
            }
            let c = rem.coeff_of(v, hi);
            if !(&c % &lead).is_zero() {
                return Err(PolyError::InexactDivision);
            }
            let q = LaurentPoly::var_pow(v, hi - dhi).scale(&c / &lead);
            rem = rem - &q * divisor;
            quot = quot + q;
        }
        Ok(quot)
    }

    /// Canonical text: terms in descending lexicographic order of the
    /// exponent vector (a, z, l, m, t).
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (exps, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let abs = c.abs();
            let is_const = exps.iter().all(|&e| e == 0);
            if is_const || !abs.is_one() {
                out.push_str(&abs.to_string());
            }
            for v in Var::ALL {
                let e = exps[v.index()];
                if e == 0 {
                    continue;
                }
                out.push(v.symbol());
                if e != 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
        out
    }

    /// Parses the canonical text form (and tolerates `*` and spaces).
    pub fn parse(text: &str) -> Result<LaurentPoly, PolyError> {
        let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if s.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        let mut pos = 0;
        let mut out = Self::zero();
        let err = |p: usize, what: &str| PolyError::Parse(format!("{what} at offset {p}"));
        let read_int = |pos: &mut usize, allow_sign: bool| -> Option<String> {
            let start = *pos;
            if allow_sign && *pos < s.len() && (s[*pos] == '-' || s[*pos] == '+') {
                *pos += 1;
            }
            let digits_start = *pos;
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == digits_start {
                *pos = start;
                return None;
            }
            Some(s[start..*pos].iter().collect())
        };
        let mut first = true;
        while pos < s.len() {
            let mut neg = false;
            if s[pos] == '+' || s[pos] == '-' {
                neg = s[pos] == '-';
                pos += 1;
            } else if !first {
                return Err(err(pos, "expected sign"));
            }
            first = false;
            let had_digits = pos < s.len() && s[pos].is_ascii_digit();
            let coeff: BigInt = match read_int(&mut pos, false) {
                Some(d) => d.parse().map_err(|_| err(pos, "bad coefficient"))?,
                None => BigInt::one(),
            };
            let mut exps: Exponents = [0; NVARS];
            let mut saw_factor = false;
            while pos < s.len() {
                let Some(v) = Var::from_symbol(s[pos]) else { break };
                pos += 1;
                let mut e = 1i32;
                if pos < s.len() && s[pos] == '^' {
                    pos += 1;
                    let d = read_int(&mut pos, true).ok_or_else(|| err(pos, "expected exponent"))?;
                    e = d.parse().map_err(|_| err(pos, "bad exponent"))?;
                }
                exps[v.index()] = exps[v.index()].checked_add(e).ok_or(PolyError::ExponentOverflow)?;
                saw_factor = true;
            }
            if !saw_factor && !had_digits {
                return Err(err(pos, "empty term"));
            }
            if !saw_factor && pos < s.len() && s[pos] != '+' && s[pos] != '-' {
                return Err(err(pos, "unexpected character"));
            }
            out.add_term(exps, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }

    /// Evaluates a polynomial in `v` alone at an integer point.
    /// Negative exponents are allowed only when the point is ±1.
    pub fn eval_at_unit(&self, v: Var, sign: i32) -> BigInt {
        let i = v.index();
        self.terms
            .iter()
            .map(|(e, c)| if sign < 0 && e[i].rem_euclid(2) == 1 { -c.clone() } else { c.clone() })
            .fold(BigInt::zero(), |a, b| a + b)
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| JsonTerm {
                exponents: Var::ALL
                    .into_iter()
                    .filter(|v| e[v.index()] != 0)
                    .map(|v| (v.symbol().to_string(), e[v.index()]))
                    .collect(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[JsonTerm]) -> Result<LaurentPoly, PolyError> {
        let mut out = Self::zero();
        for t in terms {
            let mut exps = [0; NVARS];
            for (name, e) in &t.exponents {
                let mut chars = name.chars();
                let v = match (chars.next(), chars.next()) {
                    (Some(c), None) => Var::from_symbol(c),
                    _ => None,
                }
                .ok_or_else(|| PolyError::Parse(format!("unknown variable `{name}`")))?;
                exps[v.index()] = *e;
            }
            let c: BigInt = t.coeff.parse().map_err(|_| PolyError::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            out.add_term(exps, c);
        }
        Ok(out)
    }

    /// Coefficient as `i64` when it fits; used by small-range reports.
    pub fn coeff_i64(&self, exps: &Exponents) -> Option<i64> {
        self.coeff(exps).to_i64()
    }
}

/// One term of the JSON wire form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exponents: BTreeMap<String, i32>,
    pub coeff: String,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<JsonTerm>::deserialize(d)?;
        LaurentPoly::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.render())
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(add_exponents(e1, e2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        &self * rhs
    }
}

impl<'a> Add<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: &LaurentPoly) -> LaurentPoly {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
        self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    #[test]
    fn add_cancels() {
        assert_eq!(p("a^2+1") + p("-a^2+a^-2"), p("1+a^-2"));
        assert_eq!(p("z^3-2") + LaurentPoly::zero(), p("z^3-2"));
        assert_eq!(p("z") + p("z"), p("2z"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(LaurentPoly::var(Var::A) * LaurentPoly::var_pow(Var::A, -1), LaurentPoly::one());
        assert_eq!(p("z^2+1") * p("1-z^2"), p("1-z^4"));
        assert!((p("l+m^-1") * LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn substitute_examples() {
        let t = LaurentPoly::var(Var::T);
        assert_eq!(p("a+a^-1").substitute(&[(Var::A, t)]).unwrap(), p("t+t^-1"));
        let neg_l = -LaurentPoly::var(Var::L);
        assert_eq!(p("l+l^-1").substitute(&[(Var::L, neg_l)]).unwrap(), p("-l-l^-1"));
        let neg_z = -LaurentPoly::var(Var::Z);
        assert_eq!(p("m^2").substitute(&[(Var::M, neg_z)]).unwrap(), p("z^2"));
        assert_eq!(
            p("m").substitute(&[(Var::M, p("z+1"))]),
            Err(PolyError::NonMonomialBinding('m'))
        );
        assert_eq!(
            p("m").substitute(&[(Var::M, p("2z"))]),
            Err(PolyError::NonMonomialBinding('m'))
        );
    }

    #[test]
    fn render_examples() {
        assert_eq!(LaurentPoly::zero().render(), "0");
        assert_eq!(p("1+z^2").render(), "z^2+1");
        assert_eq!(p("-a^-2-a^2").render(), "-a^2-a^-2");
        assert_eq!(p("a^-12-a^-4").render(), "-a^-4+a^-12");
        assert_eq!(p("3l^-1m^2 - 1").render(), "-1+3l^-1m^2");
        assert_eq!(p("-1").render(), "-1");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(LaurentPoly::parse("").is_err());
        assert!(LaurentPoly::parse("a^").is_err());
        assert!(LaurentPoly::parse("2q").is_err());
        assert!(LaurentPoly::parse("1++a").is_err());
    }

    #[test]
    fn reduce_imaginary_unit() {
        // (1 + t)^2 = 2t when t^2 = -1
        let x = p("1+t").pow(2);
        let (re, im) = x.reduce_imaginary(Var::T);
        assert!(re.is_zero());
        assert_eq!(im, p("2"));
        let (re, im) = p("t^-2+t^3z").reduce_imaginary(Var::T);
        assert_eq!(re, p("-1"));
        assert_eq!(im, p("-z"));
    }

    #[test]
    fn exact_division() {
        let d = p("a^-2-a^2");
        let q = p("a^5-3a+a^-7");
        assert_eq!((&q * &d).div_exact_univariate(Var::A, &d).unwrap(), q);
        assert_eq!(p("a+1").div_exact_univariate(Var::A, &p("2a+2")), Err(PolyError::InexactDivision));
    }

    #[test]
    fn json_round_trip() {
        let x = p("-3a^2z^-1+7l^4m^-2t-1");
        let s = serde_json::to_string(&x).unwrap();
        let y: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert!(s.contains("\"coeff\":\"-3\""));
    }
}
