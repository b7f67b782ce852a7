//! Text grammar for polynomials.
//!
//! ```text
//! expr   := [sign] term (sign term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | ident ['^' int] | '(' expr ')' ['^' int]
//! ```
//!
//! Whitespace is ignored between tokens. Printing emits terms in graded-lex
//! order with no spaces, omits unit coefficients and unit exponents, and
//! writes non-integral coefficients as `p/q`.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{fmt_q_short, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos + 1, msg: msg.into() })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn ident(&mut self) -> (String, usize) {
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        (self.chars[start..self.pos].iter().collect(), start + 1)
    }
}

type RawTerm = (Q, Vec<(String, u32, usize)>);

/// A sum of monomials keyed by variable name, with the position where each
/// name first appeared (for error messages).
#[derive(Clone)]
struct Sparse(BTreeMap<BTreeMap<String, u32>, Q>);

impl Sparse {
    fn constant(c: Q) -> Self {
        Sparse(BTreeMap::from([(BTreeMap::new(), c)]))
    }

    fn add_into(&mut self, o: Sparse, sign: &Q) {
        for (m, c) in o.0 {
            let e = self.0.entry(m).or_insert_with(Q::zero);
            *e += c * sign;
        }
        self.0.retain(|_, c| !c.is_zero());
    }

    fn mul(&self, o: &Sparse) -> Sparse {
        let mut out = Sparse(BTreeMap::new());
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                let mut m = m1.clone();
                for (v, k) in m2 {
                    *m.entry(v.clone()).or_insert(0) += k;
                }
                out.add_into(Sparse(BTreeMap::from([(m, c1 * c2)])), &Q::one());
            }
        }
        out
    }

    fn pow(&self, k: u32) -> Sparse {
        (0..k).fold(Sparse::constant(Q::one()), |acc, _| acc.mul(self))
    }
}

fn exponent(c: &mut Cursor) -> Result<u32> {
    if c.peek() != Some('^') {
        return Ok(1);
    }
    c.pos += 1;
    let k = c.integer()?;
    u32::try_from(&k).or_else(|_| c.err("exponent too large"))
}

fn parse_factor(c: &mut Cursor, seen: &mut BTreeMap<String, usize>) -> Result<Sparse> {
    match c.peek() {
        Some(ch) if ch.is_ascii_digit() => {
            let n = c.integer()?;
            let mut val = Q::from_integer(n);
            if c.peek() == Some('/') {
                c.pos += 1;
                let d = c.integer()?;
                if d.is_zero() {
                    return c.err("zero denominator");
                }
                val /= Q::from_integer(d);
            }
            Ok(Sparse::constant(val))
        }
        Some(ch) if ch.is_alphabetic() || ch == '_' => {
            let (name, at) = c.ident();
            seen.entry(name.clone()).or_insert(at);
            let e = exponent(c)?;
            Ok(Sparse(BTreeMap::from([(BTreeMap::from([(name, e)]), Q::one())])))
        }
        Some('(') => {
            c.pos += 1;
            let inner = parse_sum(c, seen, true)?;
            if c.peek() != Some(')') {
                return c.err("expected ')'");
            }
            c.pos += 1;
            let e = exponent(c)?;
            Ok(inner.pow(e))
        }
        Some(_) => c.err("expected a number or a variable"),
        None => c.err("unexpected end of input"),
    }
}

fn parse_sum(c: &mut Cursor, seen: &mut BTreeMap<String, usize>, nested: bool) -> Result<Sparse> {
    let mut out = Sparse(BTreeMap::new());
    let mut first = true;
    loop {
        let mut sign = Q::one();
        match c.peek() {
            Some('-') => {
                c.pos += 1;
                sign = -sign;
            }
            Some('+') => c.pos += 1,
            None if first => return c.err("empty expression"),
            Some(')') if first && nested => return c.err("empty parentheses"),
            _ if !first => return c.err("expected '+' or '-'"),
            _ => {}
        }
        let mut term = parse_factor(c, seen)?;
        while c.peek() == Some('*') {
            c.pos += 1;
            term = term.mul(&parse_factor(c, seen)?);
        }
        out.add_into(term, &sign);
        first = false;
        match c.peek() {
            None => break,
            Some(')') if nested => break,
            _ => {}
        }
    }
    Ok(out)
}

fn parse_terms(text: &str) -> Result<Vec<RawTerm>> {
    let mut c = Cursor::new(text);
    let mut seen = BTreeMap::new();
    let sum = parse_sum(&mut c, &mut seen, false)?;
    let mut out: Vec<RawTerm> = sum
        .0
        .into_iter()
        .map(|(m, coef)| {
            (
                coef,
                m.into_iter()
                    .map(|(n, k)| {
                        let at = seen[&n];
                        (n, k, at)
                    })
                    .collect(),
            )
        })
        .collect();
    // names that cancelled still count for variable inference
    out.push((Q::zero(), seen.into_iter().map(|(n, at)| (n, 0, at)).collect()));
    Ok(out)
}

/// Natural order on names: alphabetic prefix, then numeric suffix.
fn name_key(s: &str) -> (String, u64, String) {
    let digits: String =
        s.chars().rev().take_while(|c| c.is_ascii_digit()).collect::<Vec<_>>().into_iter().rev().collect();
    let prefix = s[..s.len() - digits.len()].to_string();
    let num = digits.parse().unwrap_or(0);
    (prefix, num, s.to_string())
}

pub fn parse_poly(text: &str, vars: Option<&[&str]>) -> Result<Poly> {
    let raw = parse_terms(text)?;
    let names: Vec<String> = match vars {
        Some(v) => v.iter().map(|s| s.to_string()).collect(),
        None => {
            let mut seen: Vec<String> = Vec::new();
            for (_, vs) in &raw {
                for (n, _, _) in vs {
                    if !seen.contains(n) {
                        seen.push(n.clone());
                    }
                }
            }
            seen.sort_by_key(|s| name_key(s));
            seen
        }
    };
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut p = Poly::zero_owned(names.clone());
    for (coef, vs) in raw {
        let mut e = vec![0u32; names.len()];
        for (n, k, at) in vs {
            let Some(&i) = index.get(n.as_str()) else {
                return Err(Error::Parse { pos: at, msg: format!("unknown variable {n:?}") });
            };
            e[i] += k;
        }
        p.add_term(e, coef);
    }
    Ok(p)
}

pub fn print_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.sorted_terms().into_iter().enumerate() {
        let neg = c.is_negative();
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let a = c.abs();
        let mono: Vec<String> = e
            .iter()
            .zip(p.vars())
            .filter(|(k, _)| **k > 0)
            .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
            .collect();
        if mono.is_empty() {
            out.push_str(&fmt_q_short(&a));
        } else {
            if !a.is_one() {
                out.push_str(&fmt_q_short(&a));
                out.push('*');
            }
            out.push_str(&mono.join("*"));
        }
    }
    out
}
