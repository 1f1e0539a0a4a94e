//! Expression parser for polynomials, multivectors and forms.
//!
//! Grammar, with `*`, `/` and wedge `^` sharing one precedence level:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/' | '^') unary)*
//! unary   := '-' unary | postfix
//! postfix := atom ('^' INT)*
//! atom    := INT | IDENT | '(' expr ')'
//! ```
//!
//! A `^` followed by an integer literal is a power and binds tighter than
//! unary minus, so `-x^2` is `-(x^2)`. Any other `^` is the wedge product.
//! Division is only by nonzero constants.

use std::collections::BTreeMap;

use algebroid_core::graded::Blade;
use algebroid_core::scalars::{Context, Rational};
use algebroid_core::{Form, Multivector, Poly, Section};

use crate::error::ParseError;

/// Which basis an expression's symbols came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Vectors,
    Forms,
}

/// Names an expression may use: coordinates, two families of basis
/// symbols, and named constants such as `Lambda`.
#[derive(Clone, Debug)]
pub struct Symbols {
    pub ctx: Context,
    pub rank: usize,
    pub vectors: Vec<String>,
    pub forms: Vec<String>,
    pub constants: BTreeMap<String, Multivector>,
}

impl Symbols {
    /// A scalar-only table where every identifier is a variable of `ctx`.
    pub fn scalars(ctx: Context) -> Self {
        Symbols {
            ctx,
            rank: 0,
            vectors: vec![],
            forms: vec![],
            constants: BTreeMap::new(),
        }
    }
}

/// A parsed value: a sum of basis blades with polynomial coefficients,
/// tagged by the basis its symbols came from (`None` for scalars).
#[derive(Clone, Debug, PartialEq)]
pub struct Value {
    pub basis: Option<Basis>,
    pub terms: Multivector,
}

impl Value {
    fn scalar(rank: usize, f: Poly) -> Self {
        Value {
            basis: None,
            terms: Multivector::scalar(rank, f),
        }
    }

    pub fn as_poly(&self, ctx: &Context) -> Option<Poly> {
        if self.terms.terms().any(|(b, _)| b.degree() > 0) {
            return None;
        }
        Some(
            self.terms
                .coeff_or_zero(Blade::EMPTY)
                .recontext(ctx)
                .unwrap_or_else(|| Poly::zero(ctx)),
        )
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.terms().all(|(b, _)| b.degree() == 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(chars[start..i].iter().collect()), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(ParseError::new(
                line,
                col,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    syms: &'a Symbols,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    fn err<T>(&self, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.line, col, msg))
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            let col = self.col();
            self.pos += 1;
            let rhs = self.term()?;
            let rhs = if c == '-' { negate(rhs) } else { rhs };
            acc = self.combine(acc, rhs, col, |a, b| a.try_add(b).expect("same rank"))?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/' | '^'))) = self.peek().cloned() {
            let col = self.col();
            self.pos += 1;
            if c == '^' && self.peek() == Some(&Tok::Op('-')) {
                return self.err(col, "exponents must be nonnegative integers");
            }
            let rhs = self.unary()?;
            if c == '/' {
                let k = rhs
                    .as_poly(&self.syms.ctx)
                    .and_then(|p| p.as_constant())
                    .filter(|k| *k != Rational::from_integer(0.into()));
                let Some(k) = k else {
                    return self.err(col, "division is only by a nonzero constant");
                };
                acc.terms = acc.terms.scale(&k.recip());
            } else {
                acc = self.combine(acc, rhs, col, |a, b| a.wedge(b).expect("same rank"))?;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(negate(self.unary()?));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Value, ParseError> {
        let mut base = self.atom()?;
        while let (Some(Tok::Op('^')), Some(Tok::Int(n))) =
            (self.peek(), self.toks.get(self.pos + 1).map(|(t, _)| t))
        {
            let col = self.col();
            let n: u32 = n
                .parse()
                .or_else(|_| self.err(col, "exponent is too large"))?;
            self.pos += 2;
            let Some(f) = base.as_poly(&self.syms.ctx) else {
                return self.err(col, "powers apply only to scalars");
            };
            base = Value::scalar(self.syms.rank, f.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let col = self.col();
        let rank = self.syms.rank;
        let ctx = &self.syms.ctx;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let k: Rational = n
                    .parse()
                    .or_else(|_| self.err(col, "bad integer literal"))?;
                Ok(Value::scalar(rank, Poly::constant(ctx, k)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.syms.vectors.iter().position(|s| *s == name) {
                    return Ok(Value {
                        basis: Some(Basis::Vectors),
                        terms: Multivector::basis(rank, &[i]),
                    });
                }
                if let Some(i) = self.syms.forms.iter().position(|s| *s == name) {
                    return Ok(Value {
                        basis: Some(Basis::Forms),
                        terms: Multivector::basis(rank, &[i]),
                    });
                }
                if let Some(p) = self.syms.constants.get(&name) {
                    return Ok(Value {
                        basis: Some(Basis::Vectors),
                        terms: p.clone(),
                    });
                }
                if ctx.contains(&name) {
                    return Ok(Value::scalar(rank, Poly::var(ctx, &name)));
                }
                self.err(col, format!("unknown identifier `{name}`"))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => self.err(self.col(), "expected `)`"),
                }
            }
            Some(Tok::Op(c)) => self.err(col, format!("unexpected `{c}`")),
            None => self.err(col, "unexpected end of expression"),
        }
    }

    fn combine(
        &self,
        a: Value,
        b: Value,
        col: usize,
        op: impl Fn(&Multivector, &Multivector) -> Multivector,
    ) -> Result<Value, ParseError> {
        let basis = match (a.basis, b.basis) {
            (Some(x), Some(y)) if x != y => {
                return self.err(col, "expression mixes multivector and form symbols");
            }
            (x, y) => x.or(y),
        };
        Ok(Value {
            basis,
            terms: op(&a.terms, &b.terms),
        })
    }
}

fn negate(v: Value) -> Value {
    Value {
        basis: v.basis,
        terms: v.terms.neg(),
    }
}

/// Parses `src`, reporting errors at `line` with columns offset by `col0`.
pub fn parse_at(src: &str, syms: &Symbols, line: usize, col0: usize) -> Result<Value, ParseError> {
    let toks = tokenize(src, line, col0)?;
    let end_col = col0 + src.chars().count();
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col,
        syms,
    };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err(p.col(), "unexpected trailing input");
    }
    Ok(v)
}

/// Parses a single-line expression (columns start at 1).
pub fn parse(src: &str, syms: &Symbols) -> Result<Value, ParseError> {
    parse_at(src, syms, 1, 1)
}

pub fn parse_poly(src: &str, syms: &Symbols) -> Result<Poly, ParseError> {
    let v = parse(src, syms)?;
    v.as_poly(&syms.ctx)
        .ok_or_else(|| ParseError::new(1, 1, "expected a scalar expression"))
}

pub fn parse_multivector(src: &str, syms: &Symbols) -> Result<Multivector, ParseError> {
    let v = parse(src, syms)?;
    if v.basis == Some(Basis::Forms) {
        return Err(ParseError::new(
            1,
            1,
            "expected a multivector, found a form",
        ));
    }
    Ok(v.terms)
}

pub fn parse_form(src: &str, syms: &Symbols) -> Result<Form, ParseError> {
    let v = parse(src, syms)?;
    if v.basis == Some(Basis::Vectors) {
        return Err(ParseError::new(
            1,
            1,
            "expected a form, found a multivector",
        ));
    }
    Ok(v.terms.reinterpret())
}

pub fn parse_section(src: &str, syms: &Symbols) -> Result<Section, ParseError> {
    let p = parse_multivector(src, syms)?;
    if p.terms().any(|(b, _)| b.degree() != 1) {
        return Err(ParseError::new(1, 1, "expected a section (degree 1)"));
    }
    Section::from_multivector(&p, &syms.ctx).map_err(|e| ParseError::new(1, 1, e.to_string()))
}
