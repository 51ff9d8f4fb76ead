//! Exact arithmetic in the rational function field Q(q).
//!
//! A [`ScalarQ`] is stored as a pair of integer polynomials in canonical form:
//! numerator and denominator are coprime over Q, the combined content is 1 and
//! the denominator has a positive leading coefficient. Two equal elements
//! therefore have identical representations and `==` is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QError {
    #[error("division by zero in Q(q)")]
    ZeroDivision,
    #[error("evaluation at a pole: denominator vanishes at q = {0}")]
    Pole(String),
    #[error("cannot parse rational function: {0}")]
    Parse(String),
}

/// Dense integer polynomial in `q`, coefficients in ascending order, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(a: BigInt) -> Self {
        Poly::from_coeffs(vec![a])
    }

    /// `a * q^k`.
    pub fn monomial(a: BigInt, k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k];
        c.push(a);
        Poly::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn ord(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    pub fn lc(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_else(BigInt::zero)
    }

    fn is_monomial(&self) -> bool {
        self.c.iter().filter(|x| !x.is_zero()).count() == 1
    }

    fn shift_down(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.c[k.min(self.c.len())..].to_vec())
    }

    fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    fn scale(&self, a: &BigInt) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|x| x * a).collect(),
        }
    }

    fn div_scalar(&self, a: &BigInt) -> Poly {
        Poly {
            c: self.c.iter().map(|x| x / a).collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        self.div_scalar(&g)
    }

    fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("pseudo-remainder by zero");
        let lb = b.lc();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc();
            r = &r.scale(&lb) - &b.shift_up(dr - db).scale(&lr);
        }
        r
    }

    /// Exact quotient `self / b` over Z, if it exists.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        let db = b.degree()?;
        let lb = b.lc();
        let mut r = self.clone();
        let mut quot = vec![BigInt::zero(); self.c.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let (qc, rem) = r.lc().div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            r = &r - &b.shift_up(dr - db).scale(&qc);
            quot[dr - db] = qc;
        }
        Some(Poly::from_coeffs(quot))
    }

    /// Greatest common divisor over Q, returned primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    fn fmt_desc(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i);
            let b = o.c.get(i);
            c.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(c)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }
}

/// Element of Q(q) in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    num: Poly,
    den: Poly,
}

impl Default for ScalarQ {
    fn default() -> Self {
        ScalarQ::zero()
    }
}

impl ScalarQ {
    pub fn zero() -> Self {
        ScalarQ {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        ScalarQ::from_int(1)
    }

    pub fn from_int(a: i64) -> Self {
        ScalarQ::from_bigint(BigInt::from(a))
    }

    pub fn from_bigint(a: BigInt) -> Self {
        ScalarQ {
            num: Poly::constant(a),
            den: Poly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        ScalarQ::normalize(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
    }

    pub fn q() -> Self {
        ScalarQ::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = Poly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            ScalarQ {
                num: m,
                den: Poly::one(),
            }
        } else {
            ScalarQ {
                num: Poly::one(),
                den: m,
            }
        }
    }

    /// `sign * q^k`, the common shape of matrix entries.
    pub fn signed_q_pow(sign: i64, k: i64) -> Self {
        let s = ScalarQ::q_pow(k);
        if sign < 0 {
            -s
        } else {
            s
        }
    }

    /// Laurent polynomial `sum_i coeffs[i] q^(low + i)`.
    pub fn laurent(coeffs: &[i64], low: i64) -> Self {
        let p = Poly::from_coeffs(coeffs.iter().map(|&a| BigInt::from(a)).collect());
        ScalarQ::from_polys(p, Poly::one()).expect("unit denominator") * ScalarQ::q_pow(low)
    }

    /// Symmetric q-integer `(q^n - q^-n) / (q - q^-1)`.
    pub fn q_int(n: i64) -> Self {
        let top = &ScalarQ::q_pow(n) - &ScalarQ::q_pow(-n);
        let bot = &ScalarQ::q() - &ScalarQ::q_pow(-1);
        top.checked_div(&bot).expect("q - q^-1 is nonzero")
    }

    pub fn from_polys(num: Poly, den: Poly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::ZeroDivision);
        }
        Ok(ScalarQ::normalize(num, den))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one_poly() && self.den.is_one_poly()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.den.is_one_poly() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.c.first().cloned().unwrap_or_else(BigInt::zero))
        } else {
            None
        }
    }

    /// If `self = c * q^k` for a rational `c`, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        if self.is_zero() || !self.num.is_monomial() || !self.den.is_monomial() {
            return None;
        }
        let (dn, dd) = (self.num.ord(), self.den.ord());
        let c = BigRational::new(self.num.c[dn].clone(), self.den.c[dd].clone());
        Some((c, dn as i64 - dd as i64))
    }

    fn normalize(mut num: Poly, mut den: Poly) -> Self {
        if num.is_zero() {
            return ScalarQ::zero();
        }
        let t = num.ord().min(den.ord());
        if t > 0 {
            num = num.shift_down(t);
            den = den.shift_down(t);
        }
        if !num.is_monomial() && !den.is_monomial() {
            let g = num.gcd(&den);
            if g.degree().unwrap_or(0) > 0 {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let mut g = num.content().gcd(&den.content());
        if den.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            num = num.div_scalar(&g);
            den = den.div_scalar(&g);
        }
        ScalarQ { num, den }
    }

    pub fn inv(&self) -> Result<Self, QError> {
        if self.is_zero() {
            return Err(QError::ZeroDivision);
        }
        Ok(ScalarQ::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &ScalarQ) -> Result<Self, QError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self, QError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = ScalarQ::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitute a rational value for `q`.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, QError> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(QError::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Parse text such as `(q^2 - 1)/(q)`, `-2*q^-3 + 1` or `q/(1+q)`.
    pub fn parse(s: &str) -> Result<Self, QError> {
        Parser::new(s)?.parse_all()
    }

    /// JSON form: ascending numerator and denominator coefficients plus a
    /// shift `k` standing for an extra factor `q^-k`.
    pub fn to_json(&self) -> Value {
        let shift = self.den.ord();
        let den = self.den.shift_down(shift);
        let arr = |p: &Poly| Value::Array(p.c.iter().map(int_to_json).collect());
        serde_json::json!({ "num": arr(&self.num), "den": arr(&den), "shift": shift })
    }

    pub fn from_json(v: &Value) -> Result<Self, QError> {
        let bad = || QError::Parse(format!("malformed JSON scalar: {v}"));
        let arr = |key: &str| -> Result<Poly, QError> {
            let a = v.get(key).and_then(Value::as_array).ok_or_else(bad)?;
            let c = a.iter().map(json_to_int).collect::<Option<Vec<_>>>().ok_or_else(bad)?;
            Ok(Poly::from_coeffs(c))
        };
        let shift = v.get("shift").and_then(Value::as_u64).unwrap_or(0) as usize;
        let num = arr("num")?;
        let den = arr("den")?.shift_up(shift);
        ScalarQ::from_polys(num, den)
    }
}

trait PolyOne {
    fn is_one_poly(&self) -> bool;
}

impl PolyOne for Poly {
    fn is_one_poly(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }
}

fn int_to_json(a: &BigInt) -> Value {
    match a.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(a.to_string()),
    }
}

fn json_to_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        self.num.fmt_desc(f)?;
        write!(f, ")/(")?;
        self.den.fmt_desc(f)?;
        write!(f, ")")
    }
}

impl Serialize for ScalarQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ScalarQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        match &v {
            Value::String(s) => ScalarQ::parse(s).map_err(serde::de::Error::custom),
            _ => ScalarQ::from_json(&v).map_err(serde::de::Error::custom),
        }
    }
}

impl<'a> Add<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn add(self, o: &ScalarQ) -> ScalarQ {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return ScalarQ::normalize(&self.num + &o.num, self.den.clone());
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        ScalarQ::normalize(n, &self.den * &o.den)
    }
}

impl<'a> Sub<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn sub(self, o: &ScalarQ) -> ScalarQ {
        self + &(-o)
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

impl<'a> Mul<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn mul(self, o: &ScalarQ) -> ScalarQ {
        if self.is_zero() || o.is_zero() {
            return ScalarQ::zero();
        }
        if self.den.is_one_poly() && o.den.is_one_poly() {
            return ScalarQ {
                num: &self.num * &o.num,
                den: Poly::one(),
            };
        }
        ScalarQ::normalize(&self.num * &o.num, &self.den * &o.den)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, o: ScalarQ) -> ScalarQ { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, o: &ScalarQ) -> ScalarQ { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl From<i64> for ScalarQ {
    fn from(a: i64) -> Self {
        ScalarQ::from_int(a)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Q,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    src: String,
}

impl Parser {
    fn new(s: &str) -> Result<Self, QError> {
        let mut toks = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            match ch {
                ' ' | '\t' | '\n' => {}
                '0'..='9' => {
                    let st = i;
                    while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                        i += 1;
                    }
                    let lit: String = chars[st..=i].iter().collect();
                    toks.push(Tok::Num(lit.parse().expect("digits")));
                }
                'q' => toks.push(Tok::Q),
                '+' => toks.push(Tok::Plus),
                '-' => toks.push(Tok::Minus),
                '*' => toks.push(Tok::Star),
                '/' => toks.push(Tok::Slash),
                '^' => toks.push(Tok::Caret),
                '(' => toks.push(Tok::LParen),
                ')' => toks.push(Tok::RParen),
                _ => return Err(QError::Parse(format!("unexpected '{ch}' in {s:?}"))),
            }
            i += 1;
        }
        Ok(Parser {
            toks,
            pos: 0,
            src: s.to_string(),
        })
    }

    fn err(&self, what: &str) -> QError {
        QError::Parse(format!("{what} at token {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_all(mut self) -> Result<ScalarQ, QError> {
        if self.toks.is_empty() {
            return Err(self.err("empty input"));
        }
        let v = self.expr()?;
        if self.pos != self.toks.len() {
            return Err(self.err("trailing input"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<ScalarQ, QError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ScalarQ, QError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.unary()?;
            } else if self.eat(&Tok::Slash) {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Q | Tok::LParen)) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ScalarQ, QError> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.unary()?);
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<ScalarQ, QError> {
        let base = self.primary()?;
        if self.eat(&Tok::Caret) {
            let k = self.exponent()?;
            return base.pow(k);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, QError> {
        let paren = self.eat(&Tok::LParen);
        let neg = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let k = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.to_i64().ok_or_else(|| self.err("exponent too large"))?
            }
            _ => return Err(self.err("expected integer exponent")),
        };
        if paren && !self.eat(&Tok::RParen) {
            return Err(self.err("expected ')'"));
        }
        Ok(if neg { -k } else { k })
    }

    fn primary(&mut self) -> Result<ScalarQ, QError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(ScalarQ::from_bigint(n))
            }
            Some(Tok::Q) => {
                self.pos += 1;
                Ok(ScalarQ::q())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            _ => Err(self.err("expected number, q or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ScalarQ {
        ScalarQ::parse(x).unwrap()
    }

    #[test]
    fn canonical_form_cancels_common_factor() {
        let a = s("(q^2 - 1)/(q - 1)");
        assert_eq!(a, s("q + 1"));
        assert_eq!(a.to_string(), "(q + 1)/(1)");
    }

    #[test]
    fn negative_powers_round_trip() {
        let a = s("q^-2 - 3");
        assert_eq!(a.to_string(), "(-3*q^2 + 1)/(q^2)");
        assert_eq!(s(&a.to_string()), a);
        let j = a.to_json();
        assert_eq!(j["shift"], 2);
        assert_eq!(ScalarQ::from_json(&j).unwrap(), a);
    }

    #[test]
    fn q_integer_two_is_q_plus_inverse() {
        assert_eq!(ScalarQ::q_int(2), s("q + q^-1"));
        assert_eq!(ScalarQ::q_int(1), ScalarQ::one());
        assert_eq!(ScalarQ::q_int(0), ScalarQ::zero());
    }

    #[test]
    fn division_by_zero_errors() {
        assert_eq!(ScalarQ::one().checked_div(&ScalarQ::zero()), Err(QError::ZeroDivision));
        assert!(ScalarQ::parse("1/(q - q)").is_err());
    }

    #[test]
    fn pole_is_reported() {
        let a = s("1/(q - 1)");
        assert!(matches!(a.eval(&BigRational::one()), Err(QError::Pole(_))));
        let two = BigRational::from_integer(BigInt::from(2));
        assert_eq!(a.eval(&two).unwrap(), BigRational::one());
    }

    #[test]
    fn denominator_sign_is_positive() {
        let a = s("1/(1 - q)");
        assert_eq!(a.to_string(), "(-1)/(q - 1)");
    }

    #[test]
    fn monomial_view() {
        let (c, k) = s("-3/(2*q^4)").as_monomial().unwrap();
        assert_eq!(k, -4);
        assert_eq!(c, BigRational::new((-3).into(), 2.into()));
        assert!(s("q + 1").as_monomial().is_none());
    }
}
