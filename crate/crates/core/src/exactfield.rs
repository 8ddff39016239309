//! Exact arithmetic in real quadratic fields Q(√d).
//!
//! Every capacity, flow value and push amount in the crate is a [`QuadValue`]:
//! a pair of arbitrary-precision rationals `(rat, irr)` standing for
//! `rat + irr·√d` with `d` square-free. Comparison is exact, so questions such
//! as "is this arc saturated" never depend on rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Discriminant used when a literal does not name one.
pub const DEFAULT_D: u64 = 5;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("mismatched field discriminants: sqrt({0}) vs sqrt({1})")]
    MismatchedField(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("discriminant {0} is not a square-free integer >= 2")]
    BadDiscriminant(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed quadratic literal {text:?}: {reason}")]
    Malformed { text: String, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// An element `rat + irr·√d` of Q(√d).
///
/// The representation is unique: both parts are reduced rationals, and the
/// value is zero iff both parts are zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadValue {
    rat: Rational,
    irr: Rational,
    d: u64,
}

pub fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

fn check_d(d: u64) -> Result<u64, FieldError> {
    if is_square_free(d) {
        Ok(d)
    } else {
        Err(FieldError::BadDiscriminant(d))
    }
}

fn rat_sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl QuadValue {
    pub fn new(rat: Rational, irr: Rational, d: u64) -> Result<Self, FieldError> {
        check_d(d)?;
        Ok(QuadValue { rat, irr, d })
    }

    pub fn from_rational(rat: Rational, d: u64) -> Result<Self, FieldError> {
        Self::new(rat, Rational::zero(), d)
    }

    /// Integer value `n` in Q(√d).
    ///
    /// Panics if `d` is not square-free.
    pub fn int(n: i64, d: u64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()), d).expect("valid discriminant")
    }

    /// Rational `p/q` in Q(√d). Panics on `q == 0` or a bad discriminant.
    pub fn frac(p: i64, q: i64, d: u64) -> Self {
        Self::from_rational(Rational::new(p.into(), q.into()), d).expect("valid discriminant")
    }

    /// `p1/q1 + (p2/q2)·√d`. Panics on zero denominators or a bad discriminant.
    pub fn from_parts(p1: i64, q1: i64, p2: i64, q2: i64, d: u64) -> Self {
        Self::new(
            Rational::new(p1.into(), q1.into()),
            Rational::new(p2.into(), q2.into()),
            d,
        )
        .expect("valid discriminant")
    }

    pub fn zero(d: u64) -> Self {
        Self::int(0, d)
    }

    pub fn one(d: u64) -> Self {
        Self::int(1, d)
    }

    /// The golden ratio (1 + √5)/2.
    pub fn golden() -> Self {
        Self::from_parts(1, 2, 1, 2, 5)
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn irr(&self) -> &Rational {
        &self.irr
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(FieldError::MismatchedField(self.d, other.d))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(QuadValue {
            rat: &self.rat + &other.rat,
            irr: &self.irr + &other.irr,
            d: self.d,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(QuadValue {
            rat: &self.rat - &other.rat,
            irr: &self.irr - &other.irr,
            d: self.d,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let d = Rational::from_integer(self.d.into());
        Ok(QuadValue {
            rat: &self.rat * &other.rat + &self.irr * &other.irr * d,
            irr: &self.rat * &other.irr + &other.rat * &self.irr,
            d: self.d,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let inv = other.recip()?;
        self.checked_mul(&inv)
    }

    /// `a - b√d`.
    pub fn conjugate(&self) -> Self {
        QuadValue {
            rat: self.rat.clone(),
            irr: -self.irr.clone(),
            d: self.d,
        }
    }

    /// Field norm `a² - b²d`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &self.irr * &self.irr * Rational::from_integer(self.d.into())
    }

    pub fn recip(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // Norm is nonzero because √d is irrational.
        let n = self.norm();
        Ok(QuadValue {
            rat: &self.rat / &n,
            irr: -(&self.irr / &n),
            d: self.d,
        })
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, k: &Rational) -> Self {
        QuadValue {
            rat: &self.rat * k,
            irr: &self.irr * k,
            d: self.d,
        }
    }

    /// Integer power; negative exponents invert. Panics on `0^negative`.
    pub fn scale_int(&self, k: u64) -> Self {
        self.scale(&Rational::from_integer(k.into()))
    }

    pub fn pow(&self, exp: i32) -> Self {
        let base = if exp < 0 {
            self.recip().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = Self::one(self.d);
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// Exact sign of `rat + irr·√d` as -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        let sr = rat_sign(&self.rat);
        let si = rat_sign(&self.irr);
        if si == 0 {
            return sr;
        }
        if sr == 0 || sr == si {
            return si;
        }
        // Opposite signs: the term with the larger square wins.
        let r2 = &self.rat * &self.rat;
        let i2 = &self.irr * &self.irr * Rational::from_integer(self.d.into());
        match r2.cmp(&i2) {
            Ordering::Greater => sr,
            Ordering::Less => si,
            Ordering::Equal => unreachable!("sqrt(d) is irrational for square-free d"),
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, FieldError> {
        let diff = self.checked_sub(other)?;
        Ok(diff.sign().cmp(&0))
    }

    /// Smaller of two values from the same field. Panics on mismatched fields.
    pub fn min_of<'a>(a: &'a Self, b: &'a Self) -> &'a Self {
        if a.try_cmp(b).expect("same field") == Ordering::Greater {
            b
        } else {
            a
        }
    }

    pub fn max_of<'a>(a: &'a Self, b: &'a Self) -> &'a Self {
        if a.try_cmp(b).expect("same field") == Ordering::Less {
            b
        } else {
            a
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// True iff `self / other` is rational.
    pub fn commensurable(&self, other: &Self) -> Result<bool, FieldError> {
        Ok(self.checked_div(other)?.is_rational())
    }

    /// Greatest integer `n` with `n <= self`.
    pub fn floor(&self) -> BigInt {
        // Bracket with the rational approximation, then fix up exactly.
        let approx = self.rat.clone()
            + &self.irr * Rational::new(isqrt(&BigInt::from(self.d * 1_000_000)), 1000.into());
        let mut n: BigInt = approx.floor().to_integer() - 2;
        let d = self.d;
        let val =
            |k: &BigInt| QuadValue::from_rational(Rational::from_integer(k.clone()), d).unwrap();
        while val(&(n.clone() + 1)).try_cmp(self).unwrap() != Ordering::Greater {
            n += 1;
        }
        while val(&n).try_cmp(self).unwrap() == Ordering::Greater {
            n -= 1;
        }
        n
    }

    /// Lossy conversion for display.
    pub fn to_f64(&self) -> f64 {
        self.to_decimal(17).parse().unwrap_or(f64::NAN)
    }

    /// Decimal expansion truncated toward zero at `frac_digits` places.
    ///
    /// The last digit may be off by one; use for display only.
    pub fn to_decimal(&self, frac_digits: usize) -> String {
        // Guard digits cover the magnitude of the irrational coefficient.
        let coeff_digits = self.irr.abs().ceil().to_integer().to_string().len();
        let work = frac_digits + coeff_digits + 4;
        let scale = BigInt::from(10u32).pow(work as u32);
        let root = isqrt(&(BigInt::from(self.d) * &scale * &scale));
        let scaled = self.rat.clone() * Rational::from_integer(scale.clone())
            + &self.irr * Rational::from_integer(root);
        let int = scaled.trunc().to_integer();
        let drop = BigInt::from(10u32).pow((work - frac_digits) as u32);
        let kept = &int / &drop;
        let neg = kept.is_negative() || (kept.is_zero() && int.is_negative());
        let digits = kept.abs().to_string();
        let digits = if digits.len() <= frac_digits {
            format!("{}{}", "0".repeat(frac_digits + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (whole, frac) = digits.split_at(digits.len() - frac_digits);
        let sign = if neg { "-" } else { "" };
        if frac_digits == 0 {
            format!("{sign}{whole}")
        } else {
            format!("{sign}{whole}.{frac}")
        }
    }

    /// Parse a literal such as `1/2 + 1/2*sqrt(5)`. A literal without a
    /// `sqrt` term lands in Q(√default_d).
    pub fn parse(text: &str, default_d: u64) -> Result<Self, ParseError> {
        parse_quad(text, default_d)
    }
}

pub(crate) fn isqrt(n: &BigInt) -> BigInt {
    match n.sign() {
        Sign::Minus => panic!("isqrt of negative"),
        _ => BigInt::from(n.magnitude().sqrt()),
    }
}

fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadValue {
    /// Canonical literal: `p/q`, or `p/q + r/s*sqrt(d)` with `r/s > 0` after
    /// the sign.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", fmt_rat(&self.rat));
        }
        let op = if self.irr.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{} {} {}*sqrt({})",
            fmt_rat(&self.rat),
            op,
            fmt_rat(&self.irr.abs()),
            self.d
        )
    }
}

impl fmt::Debug for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadValue({self})")
    }
}

impl FromStr for QuadValue {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_quad(s, DEFAULT_D)
    }
}

impl PartialOrd for QuadValue {
    /// `None` when the fields differ.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl Serialize for QuadValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        parse_quad(&s, DEFAULT_D).map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadValue> for &QuadValue {
            type Output = QuadValue;
            fn $method(self, rhs: &QuadValue) -> QuadValue {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<QuadValue> for QuadValue {
            type Output = QuadValue;
            fn $method(self, rhs: QuadValue) -> QuadValue {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadValue> for QuadValue {
            type Output = QuadValue;
            fn $method(self, rhs: &QuadValue) -> QuadValue {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &QuadValue {
    type Output = QuadValue;
    fn neg(self) -> QuadValue {
        QuadValue {
            rat: -self.rat.clone(),
            irr: -self.irr.clone(),
            d: self.d,
        }
    }
}

impl Neg for QuadValue {
    type Output = QuadValue;
    fn neg(self) -> QuadValue {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Literal grammar
//
//   RAT  := INT | INT "/" POSINT
//   QUAD := RAT | RAT? ("+"|"-") RAT "*" "sqrt(" POSINT ")"
//
// Whitespace may separate tokens but not split a number. A leading sign on a lone sqrt term is optional.
// ---------------------------------------------------------------------------

struct Lexer<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.chars().collect();
        Lexer { src, chars, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.pos), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, reason: impl Into<String>) -> ParseError {
        ParseError::Malformed {
            text: self.src.to_string(),
            reason: reason.into(),
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let want: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&want) {
            self.pos += want.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.chars.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn at_sqrt(&mut self) -> bool {
        self.skip_ws();
        let want: Vec<char> = "sqrt(".chars().collect();
        self.chars[self.pos..].starts_with(&want)
    }

    /// Unsigned rational `p` or `p/q`.
    fn unsigned_rat(&mut self) -> Result<Rational, ParseError> {
        let p = self.digits().ok_or_else(|| self.err("expected digits"))?;
        if self.eat('/') {
            let q = self
                .digits()
                .ok_or_else(|| self.err("expected denominator"))?;
            if q.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Rational::new(p, q))
        } else {
            Ok(Rational::from_integer(p))
        }
    }

    fn sqrt_tail(&mut self) -> Result<u64, ParseError> {
        if !self.eat_str("sqrt(") {
            return Err(self.err("expected sqrt("));
        }
        let d = self
            .digits()
            .and_then(|d| d.to_u64())
            .ok_or_else(|| self.err("expected discriminant"))?;
        if !self.eat(')') {
            return Err(self.err("expected )"));
        }
        Ok(d)
    }
}

fn parse_quad(text: &str, default_d: u64) -> Result<QuadValue, ParseError> {
    let mut lx = Lexer::new(text);
    if lx.peek().is_none() {
        return Err(lx.err("empty literal"));
    }
    let mut rat = Rational::zero();
    let mut irr = Rational::zero();
    let mut d = None;

    let first_neg = lx.eat('-');
    if !first_neg {
        lx.eat('+');
    }
    let first = lx.unsigned_rat()?;
    let first = if first_neg { -first } else { first };

    if lx.eat('*') {
        irr = first;
        d = Some(lx.sqrt_tail()?);
    } else {
        rat = first;
        if lx.peek().is_some() {
            let neg = if lx.eat('-') {
                true
            } else if lx.eat('+') {
                false
            } else {
                return Err(lx.err("expected + or -"));
            };
            if lx.at_sqrt() {
                return Err(lx.err("missing coefficient before sqrt"));
            }
            let coeff = lx.unsigned_rat()?;
            if !lx.eat('*') {
                return Err(lx.err("expected *"));
            }
            irr = if neg { -coeff } else { coeff };
            d = Some(lx.sqrt_tail()?);
        }
    }
    if lx.peek().is_some() {
        return Err(lx.err("trailing characters"));
    }
    let d = d.unwrap_or(default_d);
    if !is_square_free(d) {
        return Err(ParseError::Field(FieldError::BadDiscriminant(d)));
    }
    Ok(QuadValue::new(rat, irr, d)?)
}

/// Parse a rational literal `p` or `p/q` (with optional sign).
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let mut lx = Lexer::new(text);
    let neg = lx.eat('-');
    let r = lx.unsigned_rat()?;
    if lx.peek().is_some() {
        return Err(lx.err("trailing characters"));
    }
    Ok(if neg { -r } else { r })
}

/// Least common multiple of all denominators appearing in `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a QuadValue>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| {
        acc.lcm(v.rat.denom()).lcm(v.irr.denom())
    })
}
