//! JSON formats and a small expression parser for polynomials and field elements.
//!
//! Rationals are written as `"num/den"` strings. Integers in lattice Gram
//! matrices are plain JSON numbers when they fit in `i64`, strings otherwise.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cliffordks::CliffordElement;
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Rationals, Q};
use crate::matrix::Matrix;
use crate::numfield::{FieldElement, NumberField};
use crate::poly::{Poly, RootInterval};
use crate::quadform::{BilinearForm, QBilinearForm};
use crate::rmhodge::RMStructure;
use crate::spinbranch::WeightMultiset;
use crate::zlattice::{IntMatrix, IntegerLattice};

pub type RationalMatrixJson = Vec<Vec<String>>;

pub fn matrix_to_json(m: &Matrix<Q>) -> RationalMatrixJson {
    (0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect()).collect()
}

pub fn matrix_from_json(rows: &[Vec<String>]) -> Result<Matrix<Q>> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        return Ok(Matrix::from_vec(0, 0, Vec::new()));
    }
    Ok(Matrix::from_rows(parsed))
}

pub fn vector_to_json(v: &[Q]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn vector_from_json(v: &[String]) -> Result<Vec<Q>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn form_to_json(f: &QBilinearForm) -> RationalMatrixJson {
    matrix_to_json(f.gram())
}

pub fn form_from_json(rows: &[Vec<String>]) -> Result<QBilinearForm> {
    BilinearForm::new(Rationals, matrix_from_json(rows)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberFieldJson {
    pub min_poly: Vec<String>,
    pub roots: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub attested: bool,
}

impl NumberFieldJson {
    pub fn from_field(f: &NumberField) -> Self {
        NumberFieldJson {
            min_poly: vector_to_json(f.min_poly().coeffs()),
            roots: f
                .real_roots()
                .iter()
                .map(|iv| [format_rational(&iv.lo), format_rational(&iv.hi)])
                .collect(),
            attested: f.is_attested(),
        }
    }

    pub fn to_field(&self) -> Result<NumberField> {
        let poly = Poly::new(vector_from_json(&self.min_poly)?);
        let roots = self
            .roots
            .iter()
            .map(|[lo, hi]| Ok(RootInterval { lo: parse_rational(lo)?, hi: parse_rational(hi)? }))
            .collect::<Result<Vec<_>>>()?;
        NumberField::with_roots(poly, roots, self.attested)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RMStructureJson {
    pub field: NumberFieldJson,
    pub m: usize,
    pub action: Vec<RationalMatrixJson>,
    pub psi: RationalMatrixJson,
}

impl RMStructureJson {
    pub fn from_structure(s: &RMStructure) -> Self {
        RMStructureJson {
            field: NumberFieldJson::from_field(s.field()),
            m: s.m(),
            action: s.action().iter().map(matrix_to_json).collect(),
            psi: form_to_json(s.psi()),
        }
    }

    /// Rebuilds and revalidates the structure.
    pub fn to_structure(&self) -> Result<RMStructure> {
        let field = self.field.to_field()?;
        let action = self.action.iter().map(|a| matrix_from_json(a)).collect::<Result<Vec<_>>>()?;
        RMStructure::new(field, self.m, action, form_from_json(&self.psi)?)
    }
}

/// `{"bitmask": "num/den"}` for elements of a rational Clifford algebra.
pub fn clifford_to_json(u: &CliffordElement<Q>) -> BTreeMap<String, String> {
    u.terms().iter().map(|(m, c)| (m.to_string(), format_rational(c))).collect()
}

/// Terms of a Clifford element given as `{"bitmask": "num/den"}`.
pub fn clifford_terms_from_json(map: &BTreeMap<String, String>) -> Result<Vec<(u32, Q)>> {
    map.iter()
        .map(|(k, v)| {
            let mask = k.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad bitmask {k:?}")))?;
            Ok((mask, parse_rational(v)?))
        })
        .collect()
}

/// `{"bitmask": "expr"}` for Clifford elements over a number field.
pub fn clifford_field_to_json(f: &NumberField, u: &CliffordElement<FieldElement>) -> BTreeMap<String, String> {
    u.terms().iter().map(|(m, c)| (m.to_string(), format_element(f, c))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub weight: Vec<i64>,
    pub mult: u64,
}

/// Sorted by weight.
pub fn weights_to_json(w: &WeightMultiset) -> Vec<WeightEntry> {
    w.weights()
        .iter()
        .map(|(weight, mult)| WeightEntry { weight: weight.clone(), mult: *mult })
        .collect()
}

pub fn weights_from_json(rank: usize, entries: &[WeightEntry]) -> Result<WeightMultiset> {
    WeightMultiset::from_pairs(rank, entries.iter().map(|e| (e.weight.clone(), e.mult)))
}

fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        other => Err(Error::Parse(format!("not an integer: {other}"))),
    }
}

pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(int_to_json).collect()))
            .collect(),
    )
}

pub fn int_matrix_from_json(v: &Value) -> Result<IntMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("expected a row array".into()))?
                .iter()
                .map(int_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let width = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != width) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    if parsed.is_empty() {
        return Ok(Matrix::from_vec(0, 0, Vec::new()));
    }
    Ok(Matrix::from_rows(parsed))
}

pub fn lattice_to_json(l: &IntegerLattice) -> Value {
    int_matrix_to_json(l.gram())
}

pub fn lattice_from_json(v: &Value) -> Result<IntegerLattice> {
    IntegerLattice::new(int_matrix_from_json(v)?)
}

/// 3-index rational arrays `consts[i][j][k]`.
pub fn structure_constants_to_json(c: &[Vec<Vec<Q>>]) -> Vec<Vec<Vec<String>>> {
    c.iter().map(|row| row.iter().map(|v| vector_to_json(v)).collect()).collect()
}

// Expressions.

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str, var: char) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            d if d.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                let n = text.parse().map_err(|_| Error::Parse(format!("number too large: {text}")))?;
                out.push(Tok::Num(n));
            }
            v if v == var => out.push(Tok::Var),
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

/// Recursive descent over `expr := term (± term)*`, `term := factor ((*|/) factor)*`,
/// `factor := -factor | atom (^ n)?`, with implicit multiplication as in `2a`.
/// Division is only allowed by rational constants.
struct Parser<'a, F: Fn(&Poly) -> Poly> {
    toks: &'a [Tok],
    pos: usize,
    reduce: F,
}

impl<F: Fn(&Poly) -> Poly> Parser<'_, F> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(t @ (Tok::Plus | Tok::Minus)) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if t == Tok::Plus { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = (self.reduce)(&acc.mul(&rhs));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let c = match rhs.degree() {
                        Some(0) => rhs.coeff(0),
                        _ => return Err(Error::Parse("division by a non-constant".into())),
                    };
                    acc = acc.scale(&(Q::from_integer(1.into()) / c));
                }
                Some(Tok::Num(_) | Tok::Var | Tok::LParen) => {
                    let rhs = self.factor()?;
                    acc = (self.reduce)(&acc.mul(&rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        if self.peek() == Some(Tok::Minus) {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        if self.peek() == Some(Tok::Plus) {
            self.pos += 1;
            return self.factor();
        }
        let base = self.atom()?;
        if self.peek() == Some(Tok::Caret) {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Num(e)) => e,
                _ => return Err(Error::Parse("exponent must be a nonnegative integer".into())),
            };
            self.pos += 1;
            let mut out = Poly::constant(Q::from_integer(1.into()));
            for _ in 0..e {
                out = (self.reduce)(&out.mul(&base));
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(Q::from_integer(n.into())))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(Tok::RParen) {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_with(s: &str, var: char, reduce: impl Fn(&Poly) -> Poly) -> Result<Poly> {
    let toks = tokenize(s, var)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks: &toks, pos: 0, reduce };
    let out = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(out)
}

/// Parses a rational polynomial in `x`, e.g. `"x^3 - 3x + 1"`.
pub fn parse_poly(s: &str) -> Result<Poly> {
    parse_with(s, 'x', Poly::clone)
}

/// Parses an element of `F` written as a polynomial in the generator `a`,
/// e.g. `"1 - a"` or `"(2 + a)^2/3"`.
pub fn parse_element(f: &NumberField, s: &str) -> Result<FieldElement> {
    let min = f.min_poly().clone();
    let p = parse_with(s, 'a', |p| p.rem(&min))?;
    Ok(f.from_poly(&p))
}

fn format_coeff_poly(coeffs: &[Q], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Q::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let one = abs == Q::from_integer(1.into());
        let num = if abs.is_integer() { abs.numer().to_string() } else { format!("({}/{})", abs.numer(), abs.denom()) };
        match i {
            0 => out.push_str(&num),
            _ => {
                if !one {
                    out.push_str(&num);
                    out.push('*');
                }
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Inverse of [`parse_element`].
pub fn format_element(_f: &NumberField, a: &FieldElement) -> String {
    format_coeff_poly(a.coeffs(), "a")
}

/// Inverse of [`parse_poly`].
pub fn format_poly(p: &Poly) -> String {
    format_coeff_poly(p.coeffs(), "x")
}

/// Parses `"[[1,0],[0,-1/2]]"`-style or `"diag(1,-1,-1)"` rational matrices.
pub fn parse_rational_matrix(s: &str) -> Result<Matrix<Q>> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
        let entries = inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        return Ok(crate::matrix::diagonal(&Rationals, &entries));
    }
    let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
    let rows = v.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
    let strings = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("expected a row array".into()))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    other => Err(Error::Parse(format!("not a rational: {other}"))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    matrix_from_json(&strings)
}

/// Parses a field element list, separated by `;` or `,` at top level.
pub fn parse_element_list(f: &NumberField, s: &str) -> Result<Vec<FieldElement>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (c == ',' || c == ';') && depth == 0 {
            parts.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    parts.push(cur);
    parts.iter().map(|p| parse_element(f, p)).collect()
}
