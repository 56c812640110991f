//! Exact coefficients: arbitrary-precision rationals and commutative
//! polynomials over them.
//!
//! A [`RingValue`] is kept in canonical form: a polynomial that happens to be
//! constant is stored as a rational, so structural equality is ring equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::ParseError;
use crate::syntax::Cursor;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let mut cur = Cursor::new(s);
    let q = rational_literal(&mut cur)?;
    cur.finish()?;
    Ok(q)
}

fn rational_literal(cur: &mut Cursor<'_>) -> Result<Rational, ParseError> {
    let negative = cur.eat('-');
    let num = cur.take_while(|c| c.is_ascii_digit());
    if num.is_empty() {
        return Err(cur.error("expected an integer"));
    }
    let mut q = Rational::from_integer(num.parse::<BigInt>().expect("digits"));
    // '/' directly followed by a digit is a fraction bar
    if cur.rest().trim_start().starts_with('/')
        && cur.rest().trim_start()[1..]
            .trim_start()
            .starts_with(|c: char| c.is_ascii_digit())
    {
        cur.expect('/')?;
        let den = cur.take_while(|c| c.is_ascii_digit());
        let den = den.parse::<BigInt>().expect("digits");
        if den.is_zero() {
            return Err(cur.error("zero denominator"));
        }
        q /= Rational::from_integer(den);
    }
    Ok(if negative { -q } else { q })
}

/// A monomial: variables with positive exponents, sorted by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (String, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<String, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_default() += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn vars(&self) -> &[(String, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Commutative polynomial with rational coefficients. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(q: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), q);
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(name), Rational::one());
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, q: Rational) {
        if q.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(q);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, q) = self.terms.iter().next().unwrap();
                m.is_one().then(|| q.clone())
            }
            _ => None,
        }
    }

    fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(m.clone(), q.clone());
        }
        out
    }

    fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), -q)).collect(),
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &other.terms {
                out.add_term(m1.mul(m2), q1 * q2);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest degree first reads more naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(a.0.cmp(b.0)));
        for (k, (m, q)) in terms.into_iter().enumerate() {
            let negative = q.is_negative();
            let abs = q.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

/// An exact coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingValue {
    Rational(Rational),
    Poly(Poly),
}

impl Default for RingValue {
    fn default() -> Self {
        RingValue::zero()
    }
}

impl RingValue {
    pub fn zero() -> Self {
        RingValue::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        RingValue::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        RingValue::Rational(int(n))
    }

    pub fn var(name: &str) -> Self {
        RingValue::Poly(Poly::var(name))
    }

    fn from_poly(p: Poly) -> Self {
        match p.as_constant() {
            Some(q) => RingValue::Rational(q),
            None => RingValue::Poly(p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingValue::Rational(q) => q.is_zero(),
            RingValue::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, RingValue::Rational(q) if q.is_one())
    }

    pub fn to_poly(&self) -> Poly {
        match self {
            RingValue::Rational(q) => Poly::constant(q.clone()),
            RingValue::Poly(p) => p.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RingValue::Rational(q) => Some(q),
            RingValue::Poly(_) => None,
        }
    }

    pub fn pow(&self, n: u32) -> RingValue {
        let mut acc = RingValue::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Text form accepted by [`RingValue::parse`].
    pub fn to_text(&self) -> String {
        match self {
            RingValue::Rational(q) => format_rational(q),
            RingValue::Poly(p) => p.to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<RingValue, ParseError> {
        let mut cur = Cursor::new(s);
        let v = parse_poly_expr(&mut cur)?;
        cur.finish()?;
        Ok(v)
    }

    /// Rational as `"p/q"`, polynomial as a list of
    /// `{"vars": {name: exponent}, "q": "p/q"}`.
    pub fn to_json(&self) -> Value {
        match self {
            RingValue::Rational(q) => Value::String(format_rational(q)),
            RingValue::Poly(p) => Value::Array(
                p.terms()
                    .map(|(m, q)| {
                        let vars: serde_json::Map<String, Value> = m
                            .vars()
                            .iter()
                            .map(|(v, e)| (v.clone(), json!(e)))
                            .collect();
                        json!({"vars": vars, "q": format_rational(q)})
                    })
                    .collect(),
            ),
        }
    }

    pub fn from_json(v: &Value) -> Result<RingValue, String> {
        match v {
            Value::String(s) => parse_rational(s)
                .map(RingValue::Rational)
                .map_err(|e| e.to_string()),
            Value::Number(n) => n
                .as_i64()
                .map(RingValue::from_int)
                .ok_or_else(|| format!("coefficient {n} is not an integer")),
            Value::Array(items) => {
                let mut p = Poly::zero();
                for item in items {
                    let vars = item
                        .get("vars")
                        .and_then(Value::as_object)
                        .ok_or("polynomial term without \"vars\" object")?;
                    let q = item
                        .get("q")
                        .and_then(Value::as_str)
                        .ok_or("polynomial term without \"q\" string")?;
                    let mut pairs = Vec::new();
                    for (name, e) in vars {
                        let e = e
                            .as_u64()
                            .filter(|&e| e > 0)
                            .ok_or_else(|| format!("bad exponent for {name}"))?;
                        pairs.push((name.clone(), e as u32));
                    }
                    let q = parse_rational(q).map_err(|e| e.to_string())?;
                    p.add_term(Monomial::from_pairs(pairs), q);
                }
                Ok(RingValue::from_poly(p))
            }
            other => Err(format!("unsupported coefficient JSON: {other}")),
        }
    }
}

impl From<Rational> for RingValue {
    fn from(q: Rational) -> Self {
        RingValue::Rational(q)
    }
}

impl From<i64> for RingValue {
    fn from(n: i64) -> Self {
        RingValue::from_int(n)
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// integers skip the gcd normalization
fn rational_add(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn rational_mul(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

impl Add for &RingValue {
    type Output = RingValue;
    fn add(self, rhs: &RingValue) -> RingValue {
        match (self, rhs) {
            (RingValue::Rational(a), RingValue::Rational(b)) => RingValue::Rational(rational_add(a, b)),
            _ => RingValue::from_poly(self.to_poly().add(&rhs.to_poly())),
        }
    }
}

impl Sub for &RingValue {
    type Output = RingValue;
    fn sub(self, rhs: &RingValue) -> RingValue {
        self + &(-rhs)
    }
}

impl Neg for &RingValue {
    type Output = RingValue;
    fn neg(self) -> RingValue {
        match self {
            RingValue::Rational(a) => RingValue::Rational(-a),
            RingValue::Poly(p) => RingValue::Poly(p.neg()),
        }
    }
}

impl Mul for &RingValue {
    type Output = RingValue;
    fn mul(self, rhs: &RingValue) -> RingValue {
        match (self, rhs) {
            (RingValue::Rational(a), RingValue::Rational(b)) => RingValue::Rational(rational_mul(a, b)),
            (RingValue::Rational(a), RingValue::Poly(p))
            | (RingValue::Poly(p), RingValue::Rational(a)) => {
                if a.is_zero() {
                    return RingValue::zero();
                }
                RingValue::Poly(Poly {
                    terms: p.terms.iter().map(|(m, q)| (m.clone(), q * a)).collect(),
                })
            }
            (RingValue::Poly(a), RingValue::Poly(b)) => RingValue::from_poly(a.mul(b)),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RingValue {
            type Output = RingValue;
            fn $m(self, rhs: RingValue) -> RingValue { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RingValue {
    type Output = RingValue;
    fn neg(self) -> RingValue {
        -&self
    }
}

impl std::iter::Sum for RingValue {
    fn sum<I: Iterator<Item = RingValue>>(iter: I) -> RingValue {
        iter.fold(RingValue::zero(), |a, b| &a + &b)
    }
}

/// poly := ['+'|'-'] product (('+'|'-') product)*
pub(crate) fn parse_poly_expr(cur: &mut Cursor<'_>) -> Result<RingValue, ParseError> {
    let mut acc = RingValue::zero();
    let mut negative = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        let term = parse_product(cur)?;
        acc = if negative { &acc - &term } else { &acc + &term };
        match cur.peek() {
            Some('+') => {
                cur.bump();
                negative = false;
            }
            Some('-') => {
                cur.bump();
                negative = true;
            }
            _ => return Ok(acc),
        }
    }
}

/// product := factor ('*' factor)*
pub(crate) fn parse_product(cur: &mut Cursor<'_>) -> Result<RingValue, ParseError> {
    let mut acc = parse_factor(cur)?;
    while cur.peek() == Some('*') {
        cur.bump();
        let f = parse_factor(cur)?;
        acc = &acc * &f;
    }
    Ok(acc)
}

/// factor := rational | ident ['^' n] | '(' poly ')'
pub(crate) fn parse_factor(cur: &mut Cursor<'_>) -> Result<RingValue, ParseError> {
    match cur.peek() {
        Some('(') => {
            cur.bump();
            let v = parse_poly_expr(cur)?;
            cur.expect(')')?;
            Ok(v)
        }
        Some(c) if c.is_ascii_digit() => Ok(RingValue::Rational(rational_literal(cur)?)),
        Some(c) if c.is_alphabetic() || c == '_' => {
            let name = cur.take_while(|c| c.is_alphanumeric() || c == '_');
            let base = RingValue::var(name);
            if cur.eat('^') {
                let e = cur.take_while(|c| c.is_ascii_digit());
                let e: u32 = e.parse().map_err(|_| cur.error("expected exponent"))?;
                Ok(base.pow(e))
            } else {
                Ok(base)
            }
        }
        _ => Err(cur.error("expected a coefficient")),
    }
}
