//! Scalar literal grammar and the shared matrix JSON document
//! `{"ring":"rational"|"gaussian"|"laurent","dim":d,"entries":[[...]]}`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::gaussian::GaussRational;
use super::laurent::Laurent;
use super::matrix::Matrix;
use super::scalar::{Ring, RingKind, Q};
use super::AlgebraError;

/// A parse failure at a byte offset inside one scalar literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at column {}", .offset + 1)]
pub struct LiteralError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, LiteralError> {
        Err(LiteralError { offset: self.pos, message: message.into() })
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

    fn digits(&mut self) -> Result<BigInt, LiteralError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit run parses"))
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Laurent, LiteralError> {
        let mut acc = Laurent::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub_ref(&t) } else { acc.add_ref(&t) };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Laurent, LiteralError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul_ref(&f);
        }
        Ok(acc)
    }

    // factor := number ['i'] | 'i' | 't' ['^' ['-'] digits] | '(' expr ')'
    fn factor(&mut self) -> Result<Laurent, LiteralError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Laurent::constant(GaussRational::i()))
            }
            Some(b't') => {
                self.pos += 1;
                let mut exp = 1i64;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let neg = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.digits()?;
                    exp = i64::try_from(d).map_err(|_| LiteralError {
                        offset: at,
                        message: "exponent out of range".into(),
                    })?;
                    if neg {
                        exp = -exp;
                    }
                }
                Ok(Laurent::t_pow(exp))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let mut value = Q::from_integer(num);
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let den = self.digits()?;
                    if den == BigInt::from(0) {
                        self.pos -= 1;
                        return self.err("zero denominator");
                    }
                    value /= Q::from_integer(den);
                }
                if self.src.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                    return Ok(Laurent::constant(GaussRational::new(Q::zero(), value)));
                }
                Ok(Laurent::from(value))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of literal"),
        }
    }
}

/// Parses the general literal grammar into a Laurent polynomial.
pub fn parse_laurent(s: &str) -> Result<Laurent, LiteralError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

pub fn parse_gaussian(s: &str) -> Result<GaussRational, LiteralError> {
    let l = parse_laurent(s)?;
    l.constant_value().ok_or_else(|| LiteralError {
        offset: s.find('t').unwrap_or(0),
        message: "variable t not allowed in a gaussian literal".into(),
    })
}

pub fn parse_rational(s: &str) -> Result<Q, LiteralError> {
    let g = parse_gaussian(s)?;
    if !g.is_real() {
        return Err(LiteralError {
            offset: s.find('i').unwrap_or(0),
            message: "imaginary unit not allowed in a rational literal".into(),
        });
    }
    Ok(g.re)
}

/// Scalars that can be read from and written to entry literals.
pub trait Literal: Ring {
    fn parse_literal(s: &str) -> Result<Self, LiteralError>;
}

impl Literal for Q {
    fn parse_literal(s: &str) -> Result<Self, LiteralError> {
        parse_rational(s)
    }
}

impl Literal for GaussRational {
    fn parse_literal(s: &str) -> Result<Self, LiteralError> {
        parse_gaussian(s)
    }
}

impl Literal for Laurent {
    fn parse_literal(s: &str) -> Result<Self, LiteralError> {
        parse_laurent(s)
    }
}

/// Square matrix tagged with its scalar ring; the unit of file exchange.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactMatrix {
    Rational(Matrix<Q>),
    Gaussian(Matrix<GaussRational>),
    Laurent(Matrix<Laurent>),
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    ring: RingKind,
    dim: usize,
    entries: Vec<Vec<Value>>,
}

impl ExactMatrix {
    pub fn ring(&self) -> RingKind {
        match self {
            ExactMatrix::Rational(_) => RingKind::Rational,
            ExactMatrix::Gaussian(_) => RingKind::Gaussian,
            ExactMatrix::Laurent(_) => RingKind::Laurent,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ExactMatrix::Rational(m) => m.rows(),
            ExactMatrix::Gaussian(m) => m.rows(),
            ExactMatrix::Laurent(m) => m.rows(),
        }
    }

    pub fn to_json(&self) -> Value {
        fn rows<R: Ring>(m: &Matrix<R>) -> Vec<Vec<Value>> {
            m.row_vecs()
                .iter()
                .map(|r| r.iter().map(|e| Value::String(e.to_string())).collect())
                .collect()
        }
        let entries = match self {
            ExactMatrix::Rational(m) => rows(m),
            ExactMatrix::Gaussian(m) => rows(m),
            ExactMatrix::Laurent(m) => rows(m),
        };
        serde_json::to_value(MatrixDoc { ring: self.ring(), dim: self.dim(), entries })
            .expect("matrix document serializes")
    }

    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let doc: MatrixDoc = serde_json::from_value(v.clone())
            .map_err(|e| AlgebraError::Format(format!("matrix document: {e}")))?;
        if doc.entries.len() != doc.dim || doc.entries.iter().any(|r| r.len() != doc.dim) {
            return Err(AlgebraError::Format(format!(
                "entries must form a {d}x{d} array",
                d = doc.dim
            )));
        }
        match doc.ring {
            RingKind::Rational => parse_entries(&doc.entries).map(ExactMatrix::Rational),
            RingKind::Gaussian => parse_entries(&doc.entries).map(ExactMatrix::Gaussian),
            RingKind::Laurent => parse_entries(&doc.entries).map(ExactMatrix::Laurent),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, AlgebraError> {
        let v: Value = serde_json::from_str(s).map_err(|e| {
            AlgebraError::Format(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        ExactMatrix::from_json(&v)
    }

    pub fn as_rational(&self) -> Option<&Matrix<Q>> {
        match self {
            ExactMatrix::Rational(m) => Some(m),
            _ => None,
        }
    }
}

fn parse_entries<R: Literal>(rows: &[Vec<Value>]) -> Result<Matrix<R>, AlgebraError> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, v) in row.iter().enumerate() {
            let text = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                other => {
                    return Err(AlgebraError::Format(format!(
                        "entry [{i}][{j}]: expected string or integer, got {other}"
                    )))
                }
            };
            let x = R::parse_literal(&text).map_err(|e| AlgebraError::Literal {
                row: i,
                col: j,
                text: text.clone(),
                cause: e,
            })?;
            r.push(x);
        }
        out.push(r);
    }
    Ok(Matrix::from_rows(out))
}

impl From<Matrix<Q>> for ExactMatrix {
    fn from(m: Matrix<Q>) -> Self {
        ExactMatrix::Rational(m)
    }
}

impl From<Matrix<GaussRational>> for ExactMatrix {
    fn from(m: Matrix<GaussRational>) -> Self {
        ExactMatrix::Gaussian(m)
    }
}

impl From<Matrix<Laurent>> for ExactMatrix {
    fn from(m: Matrix<Laurent>) -> Self {
        ExactMatrix::Laurent(m)
    }
}

/// Parses a matrix from string literals, row by row.
pub fn matrix_from_literals<R: Literal>(rows: &[&[&str]]) -> Result<Matrix<R>, LiteralError> {
    let parsed: Result<Vec<Vec<R>>, _> = rows
        .iter()
        .map(|r| r.iter().map(|s| R::parse_literal(s)).collect())
        .collect();
    Ok(Matrix::from_rows(parsed?))
}
