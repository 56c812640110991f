//! Text and JSON forms of series and tensors.
//!
//! Series text is a signed sum of terms `c*x^k`: `x^e` is the unit,
//! `x^3` an integer key, `x^{3:2}` a Dias key and `x^{11000}` or
//! `x^{v/v}` a tree key. A term without `x` is a multiple of the unit.

use std::fmt;

use serde_json::{json, Value};

use crate::coeff::{format_rational, parse_factor, RingValue};
use crate::error::{IoError, ParseError};
use crate::hopf::{Tensor, Word};
use crate::operad::{Instance, MonoidElement, Multiplicative};
use crate::series::{key_text, Carrier, GradedSeries};
use crate::syntax::Cursor;
use crate::tree::Tree;

/// Whether a series is read as a monoid series (with an optional product
/// name such as `over`) or as an operad series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Monoid(Option<String>),
    Operad,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum RawKey {
    Unit,
    /// `x^n` or bare `x`.
    Int(usize),
    /// Braced key text and its offset.
    Braced(String, usize),
}

fn parse_raw(text: &str) -> Result<Vec<(RawKey, RingValue)>, ParseError> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    if cur.at_end() {
        return Err(cur.error("empty series"));
    }
    let mut negative = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        let (key, mut c) = parse_term(&mut cur)?;
        if negative {
            c = -c;
        }
        out.push((key, c));
        match cur.peek() {
            Some('+') => negative = false,
            Some('-') => negative = true,
            None => return Ok(out),
            Some(_) => return Err(cur.error("expected '+', '-' or '*'")),
        }
        cur.bump();
    }
}

// term := factor ('*' factor)*, with at most one x-power among the factors
fn parse_term(cur: &mut Cursor<'_>) -> Result<(RawKey, RingValue), ParseError> {
    let mut key = None;
    let mut coeff = RingValue::one();
    loop {
        cur.skip_ws();
        let start = cur.pos();
        if starts_power(cur.rest()) {
            let k = parse_power(cur)?;
            if key.replace(k).is_some() {
                return Err(ParseError {
                    position: start,
                    message: "two powers of x in one term".into(),
                });
            }
        } else {
            coeff = &coeff * &parse_factor(cur)?;
        }
        if !cur.eat('*') {
            return Ok((key.unwrap_or(RawKey::Unit), coeff));
        }
    }
}

fn starts_power(rest: &str) -> bool {
    let mut chars = rest.chars();
    chars.next() == Some('x') && !chars.next().is_some_and(|c| c.is_alphanumeric() || c == '_')
}

fn parse_power(cur: &mut Cursor<'_>) -> Result<RawKey, ParseError> {
    cur.expect('x')?;
    if !cur.eat('^') {
        return Ok(RawKey::Int(1));
    }
    if cur.eat('{') {
        cur.skip_ws();
        let at = cur.pos();
        let body = cur.take_while(|c| c != '}').trim().to_string();
        cur.expect('}')?;
        return Ok(match body.as_str() {
            "e" => RawKey::Unit,
            _ => RawKey::Braced(body, at),
        });
    }
    if cur.eat('e') {
        return Ok(RawKey::Unit);
    }
    let digits = cur.take_while(|c| c.is_ascii_digit());
    match digits.parse() {
        Ok(n) => Ok(RawKey::Int(n)),
        Err(_) => Err(cur.error("expected an exponent: integer, e or {key}")),
    }
}

fn infer_instance(raw: &[(RawKey, RingValue)]) -> Result<Option<Instance>, ParseError> {
    let mut found: Option<Instance> = None;
    for (k, _) in raw {
        let (inst, at) = match k {
            RawKey::Unit => continue,
            RawKey::Int(_) => (Instance::As, 0),
            RawKey::Braced(s, at) if s.contains(':') => (Instance::Dias, *at),
            RawKey::Braced(_, at) => (Instance::Dup, *at),
        };
        match found {
            Some(f) if f != inst => {
                return Err(ParseError {
                    position: at,
                    message: format!("{inst} key in a {f} series"),
                })
            }
            _ => found = Some(inst),
        }
    }
    Ok(found)
}

fn resolve_key(inst: Instance, k: &RawKey) -> Result<MonoidElement, ParseError> {
    match k {
        RawKey::Unit => Ok(MonoidElement::Unit),
        RawKey::Int(n) => Ok(MonoidElement::Op(Instance::As.parse_element(&n.to_string())?)),
        RawKey::Braced(s, at) => {
            let shift = |e: ParseError| ParseError {
                position: at + e.position,
                message: e.message,
            };
            if inst == Instance::Dup {
                return Ok(MonoidElement::from_tree(Tree::parse(s).map_err(shift)?));
            }
            Ok(MonoidElement::Op(inst.parse_element(s).map_err(shift)?))
        }
    }
}

fn carrier_for(inst: Instance, shape: &Shape) -> Result<Carrier, IoError> {
    Ok(match shape {
        Shape::Operad => Carrier::Operad(inst),
        Shape::Monoid(p2) => {
            let name = match (p2.as_deref(), inst) {
                (Some(n), _) => n,
                (None, Instance::Dup) => "over",
                (None, Instance::As) => "as",
                (None, Instance::Dias) => "left",
            };
            Carrier::Monoid(Multiplicative::named(inst, name).map_err(|e| IoError::Document(e.to_string()))?)
        }
    })
}

/// Parse series text. The instance is read off the keys (`fallback` when
/// only unit terms occur); the truncation defaults to the largest grading
/// present.
pub fn parse_series(
    text: &str,
    shape: &Shape,
    fallback: Instance,
    truncation: Option<usize>,
) -> Result<GradedSeries, IoError> {
    let raw = parse_raw(text)?;
    let inst = infer_instance(&raw)?.unwrap_or(fallback);
    let carrier = carrier_for(inst, shape)?;
    let mut terms = Vec::with_capacity(raw.len());
    for (k, v) in raw.iter().filter(|(_, v)| !v.is_zero()) {
        terms.push((resolve_key(inst, k)?, v.clone()));
    }
    let n = truncation.unwrap_or_else(|| terms.iter().map(|(k, _)| carrier.grading(k)).max().unwrap_or(0));
    Ok(GradedSeries::from_terms(carrier, n, terms)?)
}

fn power_text(k: &MonoidElement) -> String {
    match k {
        MonoidElement::Unit => "x^e".into(),
        MonoidElement::Op(p) if p.instance() == Instance::As => match p.arity() {
            1 => "x".into(),
            n => format!("x^{n}"),
        },
        MonoidElement::Op(_) => format!("x^{{{}}}", key_text(k)),
    }
}

/// Canonical text form, accepted back by [`parse_series`].
pub fn format_series(s: &GradedSeries) -> String {
    let mut out = String::new();
    for (k, v) in s.terms() {
        let (negative, body) = match v.as_rational() {
            Some(q) => {
                let abs = num_traits::Signed::abs(q);
                let c = if num_traits::One::is_one(&abs) {
                    String::new()
                } else {
                    format!("{}*", format_rational(&abs))
                };
                (num_traits::Signed::is_negative(q), c)
            }
            None => match v.to_poly().terms().collect::<Vec<_>>().as_slice() {
                [(m, q)] => {
                    let abs = num_traits::Signed::abs(*q);
                    let c = if num_traits::One::is_one(&abs) {
                        format!("{m}*")
                    } else {
                        format!("{}*{m}*", format_rational(&abs))
                    };
                    (num_traits::Signed::is_negative(*q), c)
                }
                _ => (false, format!("({v})*")),
            },
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
        out.push_str(&power_text(k));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_series(self))
    }
}

pub fn series_to_json(s: &GradedSeries) -> Value {
    let (carrier, p2) = match s.carrier() {
        Carrier::Monoid(m) => ("monoid", Value::String(m.p2_name().into())),
        Carrier::Operad(_) => ("operad", Value::Null),
    };
    let terms: Vec<Value> = s
        .terms()
        .map(|(k, v)| json!({"key": key_text(k), "coeff": v.to_json()}))
        .collect();
    json!({
        "carrier": carrier,
        "instance": s.carrier().instance().name(),
        "p2": p2,
        "truncation": s.truncation(),
        "terms": terms,
    })
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, IoError> {
    v.get(name).ok_or_else(|| IoError::Document(format!("missing \"{name}\"")))
}

pub fn series_from_json(v: &Value) -> Result<GradedSeries, IoError> {
    let bad = |m: String| IoError::Document(m);
    let inst = field(v, "instance")?
        .as_str()
        .and_then(Instance::from_name)
        .ok_or_else(|| bad("\"instance\" must be as, dias or dup".into()))?;
    let shape = match field(v, "carrier")?.as_str() {
        Some("monoid") => Shape::Monoid(v.get("p2").and_then(Value::as_str).map(str::to_string)),
        Some("operad") => Shape::Operad,
        _ => return Err(bad("\"carrier\" must be monoid or operad".into())),
    };
    let carrier = carrier_for(inst, &shape)?;
    let n = field(v, "truncation")?
        .as_u64()
        .ok_or_else(|| bad("\"truncation\" must be a non-negative integer".into()))? as usize;
    let items = field(v, "terms")?
        .as_array()
        .ok_or_else(|| bad("\"terms\" must be a list".into()))?;
    let mut terms = Vec::with_capacity(items.len());
    for item in items {
        let key = match field(item, "key")? {
            Value::String(s) => s.clone(),
            Value::Number(x) => x.to_string(),
            other => return Err(bad(format!("bad key {other}"))),
        };
        let k = if key == "e" {
            MonoidElement::Unit
        } else if inst == Instance::Dup {
            MonoidElement::from_tree(Tree::parse(&key)?)
        } else {
            MonoidElement::Op(inst.parse_element(&key)?)
        };
        let c = RingValue::from_json(field(item, "coeff")?).map_err(bad)?;
        terms.push((k, c));
    }
    Ok(GradedSeries::from_terms(carrier, n, terms)?)
}

/// Read a series from JSON text or series text.
pub fn read_series(
    text: &str,
    shape: &Shape,
    fallback: Instance,
    truncation: Option<usize>,
) -> Result<GradedSeries, IoError> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| IoError::Document(e.to_string()))?;
        let s = series_from_json(&v)?;
        return Ok(match truncation {
            Some(n) => s.truncate(n),
            None => s,
        });
    }
    parse_series(text, shape, fallback, truncation)
}

fn codes(w: &Word) -> Value {
    Value::Array(w.iter().map(|g| Value::String(g.code())).collect())
}

/// One object per term: `{"left", "right", "q"}` for two legs, `{"left",
/// "q"}` for one, `{"legs", "q"}` otherwise.
pub fn tensor_to_json(t: &Tensor) -> Value {
    let terms = t.terms().map(|(words, q)| {
        let q = Value::String(format_rational(q));
        match words.as_slice() {
            [w] => json!({"left": codes(w), "q": q}),
            [l, r] => json!({"left": codes(l), "right": codes(r), "q": q}),
            _ => json!({"legs": words.iter().map(codes).collect::<Vec<_>>(), "q": q}),
        }
    });
    Value::Array(terms.collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;
    use crate::hopf::{Coproduct, Gen};
    use crate::sample::Sampler;
    use crate::tree::named::*;

    fn dup(text: &str) -> GradedSeries {
        parse_series(text, &Shape::Operad, Instance::Dup, None).unwrap()
    }

    #[test]
    fn reads_polynomial_coefficients() {
        let s = dup("x^{100} + (a+c)*x^{11000} + 2*a*c*x^{1110000}");
        assert_eq!(s.truncation(), 2);
        assert_eq!(s.tree_coeff(&ab()), RingValue::parse("a+c").unwrap());
        assert_eq!(s.tree_coeff(&abc()), RingValue::parse("2*a*c").unwrap());
    }

    #[test]
    fn tree_expressions_as_keys() {
        assert_eq!(dup("x^{v} + 3*x^{v\\v}"), dup("x^{100} + 3*x^{10100}"));
    }

    #[test]
    fn integer_and_dias_keys() {
        let s = parse_series("x + x^2 - 1/2*x^3", &Shape::Operad, Instance::Dup, None).unwrap();
        assert_eq!(s.carrier(), &Carrier::Operad(Instance::As));
        assert_eq!(format_series(&s), "x + x^2 - 1/2*x^3");
        let d = parse_series("x^{1:1} + x^{3:2}", &Shape::Operad, Instance::As, None).unwrap();
        assert_eq!(d.carrier(), &Carrier::Operad(Instance::Dias));
    }

    #[test]
    fn unit_terms() {
        let s = parse_series("1 - x^{100}", &Shape::Monoid(None), Instance::Dup, None).unwrap();
        assert_eq!(format_series(&s), "x^e - x^{100}");
        let t = parse_series("x^e - x^{100}", &Shape::Monoid(None), Instance::Dup, None).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_series("x^{100} + x^3", &Shape::Operad, Instance::Dup, None).unwrap_err();
        assert!(matches!(e, IoError::Parse(_)), "{e}");
        let e = parse_series("x^{((v}", &Shape::Operad, Instance::Dup, None).unwrap_err();
        let IoError::Parse(p) = e else { panic!() };
        assert_eq!(p.position, 6);
        assert!(parse_series("x^{100} x", &Shape::Operad, Instance::Dup, None).is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut s = Sampler::new(5);
        for m in [Multiplicative::dup_over(), Multiplicative::dup_under(), Multiplicative::as_plus()] {
            for n in 1..=5 {
                let f = s.monoid_series(&m, n);
                let shape = Shape::Monoid(Some(m.p2_name().into()));
                let back = parse_series(&format_series(&f), &shape, m.instance(), Some(n)).unwrap();
                assert_eq!(back, f);
            }
        }
        for n in 1..=4 {
            let mut f = s.operad_series(Instance::Dup, n);
            f.insert(MonoidElement::from_tree(ab()), s.poly()).unwrap();
            let back = parse_series(&format_series(&f), &Shape::Operad, Instance::Dup, Some(n)).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn json_round_trip() {
        let mut s = Sampler::new(6);
        let f = s.monoid_series(&Multiplicative::dup_under(), 3);
        assert_eq!(series_from_json(&series_to_json(&f)).unwrap(), f);
        let mut g = s.operad_series(Instance::As, 3);
        g.insert(MonoidElement::Op(crate::operad::OperadElement::As(2)), s.poly()).unwrap();
        let v = series_to_json(&g);
        assert_eq!(v["p2"], Value::Null);
        assert_eq!(series_from_json(&v).unwrap(), g);
    }

    #[test]
    fn tensor_json() {
        let d = Coproduct::Dif.generator(&Gen::Tree(abc()), false).unwrap();
        assert_eq!(d.coeff(&[vec![Gen::Tree(ab())], vec![Gen::Tree(ab())]]), int(2));
        let v = tensor_to_json(&d);
        let items = v.as_array().unwrap();
        assert_eq!(items.len(), 3);
        let twice = json!({"left": ["11000"], "right": ["11000"], "q": "2"});
        assert!(items.contains(&twice));
    }
}
