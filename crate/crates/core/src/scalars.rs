//! Exact multivariate polynomials over the rationals.
//!
//! Every coefficient function in the crate is a [`Poly`]. A polynomial
//! carries its own variable [`Context`] (a sorted list of names); binary
//! operations merge contexts by name, so polynomials built independently
//! can always be combined. Terms are kept in graded-lexicographic order
//! with no zero coefficients, which makes structural equality the same as
//! mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::Error;

/// Exact rational number; the coefficient field.
pub type Rational = BigRational;

/// Builds a rational from an integer pair. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A sorted, duplicate-free list of variable names shared between
/// polynomials.
#[derive(Clone, Debug, Eq)]
pub struct Context(Arc<[String]>);

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0[..] == other.0[..]
    }
}

impl Context {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = names.into_iter().map(Into::into).collect();
        v.sort();
        v.dedup();
        Context(v.into())
    }

    pub fn empty() -> Self {
        Context(Arc::from(Vec::<String>::new()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index(name).is_some()
    }

    /// Union of two contexts. Returns `self` unchanged (sharing storage)
    /// when `other` adds nothing.
    pub fn union(&self, other: &Context) -> Context {
        if self == other || other.0.iter().all(|n| self.contains(n)) {
            return self.clone();
        }
        if self.0.iter().all(|n| other.contains(n)) {
            return other.clone();
        }
        Context::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn is_subset_of(&self, other: &Context) -> bool {
        self == other || self.0.iter().all(|n| other.contains(n))
    }
}

/// Exponent vector, one entry per context variable.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the earliest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with rational coefficients.
#[derive(Clone, Debug)]
pub struct Poly {
    ctx: Context,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(ctx: &Context) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Context, c: Rational) -> Self {
        let mut p = Poly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn one(ctx: &Context) -> Self {
        Poly::constant(ctx, Rational::one())
    }

    pub fn from_int(ctx: &Context, n: i64) -> Self {
        Poly::constant(ctx, int(n))
    }

    /// The polynomial `name`. The variable is added to the context if absent.
    pub fn var(ctx: &Context, name: &str) -> Self {
        let ctx = if ctx.contains(name) {
            ctx.clone()
        } else {
            ctx.union(&Context::new([name]))
        };
        let idx = ctx.index(name).expect("variable just inserted");
        let mut m = Monomial::one(ctx.len());
        m.0[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::one());
        Poly { ctx, terms }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Names of the variables that actually occur.
    pub fn used_variables(&self) -> Vec<&str> {
        (0..self.ctx.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .map(|i| self.ctx.names()[i].as_str())
            .collect()
    }

    /// Re-expresses the polynomial over `ctx`. Fails (returning `None`)
    /// when a variable that occurs is missing from `ctx`.
    pub fn recontext(&self, ctx: &Context) -> Option<Poly> {
        if &self.ctx == ctx {
            return Some(self.clone());
        }
        let mut map = Vec::with_capacity(self.ctx.len());
        for (i, name) in self.ctx.names().iter().enumerate() {
            match ctx.index(name) {
                Some(j) => map.push(Some(j)),
                None if self.terms.keys().all(|m| m.0[i] == 0) => map.push(None),
                None => return None,
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut out = Monomial::one(ctx.len());
                for (i, e) in m.0.iter().enumerate() {
                    if let Some(j) = map[i] {
                        out.0[j] = *e;
                    }
                }
                (out, c.clone())
            })
            .collect();
        Some(Poly {
            ctx: ctx.clone(),
            terms,
        })
    }

    fn aligned(&self, other: &Poly) -> (Poly, Poly) {
        let ctx = self.ctx.union(&other.ctx);
        (
            self.recontext(&ctx).expect("union context"),
            other.recontext(&ctx).expect("union context"),
        )
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.ctx != other.ctx {
            let (a, b) = self.aligned(other);
            return a.add(&b);
        }
        let (mut acc, rest) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &rest.terms {
            acc.add_term(m.clone(), c.clone());
        }
        acc
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.ctx != other.ctx {
            let (a, b) = self.aligned(other);
            return a.mul(&b);
        }
        let mut out = Poly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative. Zero when `var` is not in the context.
    pub fn partial(&self, var: &str) -> Poly {
        let Some(idx) = self.ctx.index(var) else {
            return Poly::zero(&self.ctx);
        };
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[idx] -= 1;
            out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Exact evaluation. Only the variables that occur need a value.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, Error> {
        let mut values = Vec::with_capacity(self.ctx.len());
        for (i, name) in self.ctx.names().iter().enumerate() {
            match point.get(name) {
                Some(v) => values.push(Some(v.clone())),
                None if self.terms.keys().all(|m| m.0[i] == 0) => values.push(None),
                None => return Err(Error::MissingAssignment(name.clone())),
            }
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    let v = values[i].as_ref().expect("checked above");
                    t *= num_traits::pow(v.clone(), *e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(&self, subs: &BTreeMap<String, Poly>) -> Poly {
        let mut ctx = self.ctx.clone();
        for p in subs.values() {
            ctx = ctx.union(&p.ctx);
        }
        let mut out = Poly::zero(&ctx);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&ctx, c.clone());
            for (i, e) in m.0.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let name = &self.ctx.names()[i];
                let factor = match subs.get(name) {
                    Some(p) => p.pow(*e),
                    None => Poly::var(&ctx, name).pow(*e),
                };
                t = t.mul(&factor);
            }
            out = out.add(&t);
        }
        out
    }

    /// Groups terms by their exponents in the variables `vars`:
    /// `self = Σ vars^k · coeff_k`, with `coeff_k` free of `vars`.
    /// Keys list the exponents of `vars` in the order given.
    pub fn collect(&self, vars: &[String]) -> BTreeMap<Vec<u32>, Poly> {
        let idx: Vec<Option<usize>> = vars.iter().map(|v| self.ctx.index(v)).collect();
        let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = idx.iter().map(|i| i.map_or(0, |i| m.0[i])).collect();
            let mut rest = m.clone();
            for i in idx.iter().flatten() {
                rest.0[*i] = 0;
            }
            out.entry(key)
                .or_insert_with(|| Poly::zero(&self.ctx))
                .add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Set of total degrees in the variables `vars` over all terms.
    pub fn degrees_in(&self, vars: &[String]) -> Vec<u32> {
        let mut d: Vec<u32> = self.collect(vars).keys().map(|k| k.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx == other.ctx {
            self.terms == other.terms
        } else {
            let (a, b) = self.aligned(other);
            a.terms == b.terms
        }
    }
}

impl Eq for Poly {}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                Poly::$method(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                Poly::$method(&self, &rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                Poly::$method(&self, rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                Poly::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(&self)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

fn fmt_monomial(ctx: &Context, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.names()[i].clone()),
            e => parts.push(format!("{}^{}", ctx.names()[i], e)),
        }
    }
    parts.join("*")
}

/// Renders one term with its sign; `abs` drops the sign.
fn fmt_term(ctx: &Context, m: &Monomial, c: &Rational, abs: bool) -> String {
    let c = if abs { c.abs() } else { c.clone() };
    if m.degree() == 0 {
        return c.to_string();
    }
    let mono = fmt_monomial(ctx, m);
    if c.is_one() {
        mono
    } else if c == -Rational::one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k == 0 {
                f.write_str(&fmt_term(&self.ctx, m, c, false))?;
            } else if c.is_negative() {
                write!(f, " - {}", fmt_term(&self.ctx, m, c, true))?;
            } else {
                write!(f, " + {}", fmt_term(&self.ctx, m, c, true))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(["x", "y"])
    }

    fn x() -> Poly {
        Poly::var(&ctx(), "x")
    }

    fn y() -> Poly {
        Poly::var(&ctx(), "y")
    }

    fn c(n: i64) -> Poly {
        Poly::from_int(&ctx(), n)
    }

    #[test]
    fn add_cancels_and_doubles() {
        assert_eq!((x() + c(1)) + (-x()), c(1));
        assert_eq!(Poly::zero(&ctx()) + x(), x());
        let t = x() * x() * y();
        assert_eq!(&t + &t, c(2) * t);
    }

    #[test]
    fn mul_basics() {
        assert_eq!((x() + y()) * (x() - y()), x() * x() - y() * y());
        assert_eq!(c(1) * x(), x());
        assert!((Poly::zero(&ctx()) * x()).is_zero());
    }

    #[test]
    fn partials() {
        let x2y = x() * x() * y();
        assert_eq!(x2y.partial("x"), c(2) * x() * y());
        assert!(y().pow(3).partial("x").is_zero());
        assert_eq!((x() + x() * y()).partial("y"), x());
        assert!(x().partial("z").is_zero());
    }

    #[test]
    fn evaluation() {
        let p = x() * x() + y();
        let pt: BTreeMap<_, _> = [("x".to_string(), int(2)), ("y".to_string(), int(3))].into();
        assert_eq!(p.eval(&pt).unwrap(), int(7));
        assert_eq!(
            Poly::constant(&Context::empty(), int(5))
                .eval(&BTreeMap::new())
                .unwrap(),
            int(5)
        );
        assert_eq!((x() - x()).eval(&BTreeMap::new()).unwrap(), int(0));
        let err = p.eval(&[("x".to_string(), int(1))].into()).unwrap_err();
        assert!(matches!(err, Error::MissingAssignment(v) if v == "y"));
    }

    #[test]
    fn contexts_merge_by_name() {
        let a = Poly::var(&Context::empty(), "b");
        let b = Poly::var(&Context::empty(), "a");
        let s = &a + &b;
        assert_eq!(s.context().names(), &["a".to_string(), "b".to_string()]);
        assert_eq!(s.to_string(), "a + b");
        // equality ignores unused context variables
        assert_eq!(a, Poly::var(&Context::new(["a", "b", "c"]), "b"));
    }

    #[test]
    fn rendering() {
        let p = x() * x() * y() + Poly::constant(&ctx(), rat(1, 2));
        assert_eq!(p.to_string(), "x^2*y + 1/2");
        let q = -(x()) + y().pow(2).scale(&int(3)) - Poly::constant(&ctx(), rat(2, 5));
        assert_eq!(q.to_string(), "3*y^2 - x - 2/5");
        assert_eq!((x() * y()).scale(&rat(-1, 2)).to_string(), "-1/2*x*y");
        assert_eq!(Poly::zero(&ctx()).to_string(), "0");
    }

    #[test]
    fn substitution_and_collect() {
        let p = x() * y() + y();
        let subs: BTreeMap<_, _> = [("y".to_string(), x() + c(1))].into();
        assert_eq!(p.substitute(&subs), x() * x() + c(2) * x() + c(1));
        let parts = p.collect(&["y".to_string()]);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&vec![1]], x() + c(1));
        assert_eq!(p.degrees_in(&["y".to_string()]), vec![1]);
    }

    #[test]
    fn recontext_rejects_missing_variable() {
        assert!(x().recontext(&Context::new(["y"])).is_none());
        assert!(c(3).recontext(&Context::empty()).is_some());
    }
}
