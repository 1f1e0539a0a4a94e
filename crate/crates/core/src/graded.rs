//! Exterior algebras of sections and forms of a rank-k free module.
//!
//! A basis p-vector e_{i1}∧…∧e_{ip} (indices increasing) is a [`Blade`]; a
//! general element stores one [`Poly`] coefficient per blade. Multivectors
//! and forms share the same representation and differ only in the kind
//! parameter, which keeps the two from being mixed up by accident.
//!
//! Conventions: the wedge product is the unnormalized shuffle product, so
//! e_A∧e_B = (-1)^{#inversions} e_{A∪B}; the interior product contracts the
//! first slot, i(e_a)ε^I = (-1)^{#{i∈I : i<a}} ε^{I∖a}, and
//! i(P∧Q) = i(P)∘i(Q); the pairing ⟨ε^I, e_J⟩ is the Kronecker delta of the
//! index tuples.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use crate::scalars::{Context, Poly, Rational};
use crate::Error;

/// A strictly increasing index tuple, stored as a bit mask (indices < 32).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Blade(u32);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn single(i: usize) -> Blade {
        assert!(i < 32, "index {i} out of range");
        Blade(1 << i)
    }

    /// Blade of a strictly increasing tuple.
    pub fn from_sorted(indices: &[usize]) -> Blade {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "indices must increase"
        );
        indices
            .iter()
            .fold(Blade::EMPTY, |b, &i| Blade(b.0 | Blade::single(i).0))
    }

    /// Sorts an arbitrary tuple, returning the permutation sign; `None` if
    /// an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<(i32, Blade)> {
        let mut sign = 1;
        let mut b = Blade::EMPTY;
        for &i in indices {
            sign *= Blade::wedge_sign(b, Blade::single(i))?;
            b = Blade(b.0 | Blade::single(i).0);
        }
        Some((sign, b))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    /// Largest index plus one (zero for the empty blade).
    pub fn span(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn without(self, i: usize) -> Blade {
        Blade(self.0 & !(1 << i))
    }

    /// Sign of e_a∧e_b relative to e_{a∪b}; `None` when they overlap.
    pub fn wedge_sign(a: Blade, b: Blade) -> Option<i32> {
        if a.0 & b.0 != 0 {
            return None;
        }
        let mut inversions = 0;
        for j in b.indices() {
            inversions += (a.0 >> (j + 1)).count_ones();
        }
        Some(if inversions % 2 == 0 { 1 } else { -1 })
    }

    /// All blades of the given degree over `rank` indices, in canonical order.
    pub fn all_of_degree(rank: usize, degree: usize) -> Vec<Blade> {
        let mut out: Vec<Blade> = (0u32..(1u32 << rank))
            .filter(|m| m.count_ones() as usize == degree)
            .map(Blade)
            .collect();
        out.sort();
        out
    }

    /// All blades over `rank` indices, in canonical order.
    pub fn all(rank: usize) -> Vec<Blade> {
        (0..=rank)
            .flat_map(|p| Blade::all_of_degree(rank, p))
            .collect()
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Marker distinguishing multivectors from forms.
pub trait Kind: Clone + fmt::Debug + PartialEq + Eq + 'static {
    /// Default prefix of the basis symbols used when rendering.
    const SYMBOL: &'static str;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vectors;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covectors;

impl Kind for Vectors {
    const SYMBOL: &'static str = "e";
}

impl Kind for Covectors {
    const SYMBOL: &'static str = "eps";
}

/// Element of the exterior algebra of a rank-k free module with polynomial
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exterior<K: Kind> {
    rank: usize,
    terms: BTreeMap<Blade, Poly>,
    kind: PhantomData<K>,
}

/// Sections of ΛE.
pub type Multivector = Exterior<Vectors>;
/// Sections of ΛE*.
pub type Form = Exterior<Covectors>;

fn check_rank(a: usize, b: usize) -> Result<(), Error> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RankMismatch { left: a, right: b })
    }
}

impl<K: Kind> Exterior<K> {
    pub fn zero(rank: usize) -> Self {
        assert!(rank <= 32, "rank above 32 is not supported");
        Exterior {
            rank,
            terms: BTreeMap::new(),
            kind: PhantomData,
        }
    }

    pub fn scalar(rank: usize, f: Poly) -> Self {
        Self::monomial(rank, Blade::EMPTY, f)
    }

    /// `f` times the basis element of `blade`.
    pub fn monomial(rank: usize, blade: Blade, f: Poly) -> Self {
        assert!(blade.span() <= rank, "blade exceeds rank");
        let mut out = Self::zero(rank);
        out.add_term(blade, f);
        out
    }

    /// Basis element for an arbitrary index tuple (0-based), with sign.
    pub fn basis(rank: usize, indices: &[usize]) -> Self {
        match Blade::from_indices(indices) {
            None => Self::zero(rank),
            Some((s, b)) => Self::monomial(rank, b, Poly::from_int(&Context::empty(), s as i64)),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Blade, Poly)>>(rank: usize, terms: I) -> Self {
        let mut out = Self::zero(rank);
        for (b, f) in terms {
            assert!(b.span() <= rank, "blade exceeds rank");
            out.add_term(b, f);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero components in canonical order (degree, then index tuple).
    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, blade: Blade) -> Option<&Poly> {
        self.terms.get(&blade)
    }

    /// Coefficient of a blade, zero if absent.
    pub fn coeff_or_zero(&self, blade: Blade) -> Poly {
        self.terms
            .get(&blade)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&Context::empty()))
    }

    fn add_term(&mut self, blade: Blade, f: Poly) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&blade) {
            Some(g) => {
                *g = g.add(&f);
                if g.is_zero() {
                    self.terms.remove(&blade);
                }
            }
            None => {
                self.terms.insert(blade, f);
            }
        }
    }

    /// Sorted list of degrees with a nonzero component.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|b| b.degree()).collect();
        d.dedup();
        d
    }

    /// Degree if the element is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees()[..] {
            [d] => Some(d),
            _ => None,
        }
    }

    /// Component of degree `p`.
    pub fn part(&self, p: usize) -> Self {
        Self::from_terms(
            self.rank,
            self.terms
                .iter()
                .filter(|(b, _)| b.degree() == p)
                .map(|(b, f)| (*b, f.clone())),
        )
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        check_rank(self.rank, other.rank)?;
        let mut out = self.clone();
        for (b, f) in &other.terms {
            out.add_term(*b, f.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map(|f| f.neg())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, Error> {
        self.try_add(&other.neg())
    }

    /// Applies `op` to every coefficient.
    pub fn map<F: Fn(&Poly) -> Poly>(&self, op: F) -> Self {
        Self::from_terms(self.rank, self.terms.iter().map(|(b, f)| (*b, op(f))))
    }

    /// Multiplication by a function.
    pub fn mul_poly(&self, f: &Poly) -> Self {
        self.map(|g| g.mul(f))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|g| g.scale(c))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, Error> {
        check_rank(self.rank, other.rank)?;
        let mut out = Self::zero(self.rank);
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                if let Some(s) = Blade::wedge_sign(*a, *b) {
                    let mut fg = f.mul(g);
                    if s < 0 {
                        fg = fg.neg();
                    }
                    out.add_term(Blade(a.0 | b.0), fg);
                }
            }
        }
        Ok(out)
    }

    /// Same components read in the other exterior algebra.
    pub fn reinterpret<L: Kind>(&self) -> Exterior<L> {
        Exterior {
            rank: self.rank,
            terms: self.terms.clone(),
            kind: PhantomData,
        }
    }

    /// Re-expresses every coefficient over `ctx`, failing with the name of
    /// the first variable that is not available.
    pub fn recontext(&self, ctx: &Context) -> Result<Self, Error> {
        let mut out = Self::zero(self.rank);
        for (b, f) in &self.terms {
            out.terms.insert(*b, recontext_poly(f, ctx)?);
        }
        Ok(out)
    }

    /// Renders with explicit basis symbols, one per index.
    pub fn render(&self, symbols: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (b, f)) in self.terms.iter().enumerate() {
            let t = render_term(b, f, symbols);
            if k == 0 {
                out.push_str(&t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&t);
            }
        }
        out
    }

    pub fn default_symbols(rank: usize) -> Vec<String> {
        (1..=rank).map(|i| format!("{}{}", K::SYMBOL, i)).collect()
    }
}

pub(crate) fn recontext_poly(f: &Poly, ctx: &Context) -> Result<Poly, Error> {
    f.recontext(ctx).ok_or_else(|| {
        let bad = f
            .used_variables()
            .into_iter()
            .find(|v| !ctx.contains(v))
            .unwrap_or_default()
            .to_string();
        Error::ContextMismatch(bad)
    })
}

fn render_term(b: &Blade, f: &Poly, symbols: &[String]) -> String {
    let basis = b
        .indices()
        .iter()
        .map(|&i| symbols[i].as_str())
        .collect::<Vec<_>>()
        .join("^");
    if b.degree() == 0 {
        return f.to_string();
    }
    if let Some(c) = f.as_constant() {
        if c == Rational::from_integer(1.into()) {
            return basis;
        }
        if c == Rational::from_integer((-1).into()) {
            return format!("-{basis}");
        }
    }
    if f.num_terms() == 1 {
        format!("{f}*{basis}")
    } else {
        format!("({f})*{basis}")
    }
}

impl<K: Kind> fmt::Display for Exterior<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&Self::default_symbols(self.rank)))
    }
}

/// Interior product i(P)η, contracting the first slots of η.
///
/// For P of degree p and η of degree q the result has degree q−p, and
/// vanishes when q<p.
pub fn interior(p: &Multivector, eta: &Form) -> Result<Form, Error> {
    check_rank(p.rank, eta.rank)?;
    let mut out = Form::zero(eta.rank);
    for (a, f) in &p.terms {
        let ai = a.indices();
        for (i, g) in &eta.terms {
            let mut cur = *i;
            let mut sign = 1;
            let mut alive = true;
            for &idx in ai.iter().rev() {
                if !cur.contains(idx) {
                    alive = false;
                    break;
                }
                if (cur.0 & ((1u32 << idx) - 1)).count_ones() % 2 == 1 {
                    sign = -sign;
                }
                cur = cur.without(idx);
            }
            if alive {
                let mut fg = f.mul(g);
                if sign < 0 {
                    fg = fg.neg();
                }
                out.add_term(cur, fg);
            }
        }
    }
    Ok(out)
}

/// The pairing ⟨η, P⟩: zero across different degrees, the determinant
/// pairing on equal degrees.
pub fn pairing(eta: &Form, p: &Multivector) -> Result<Poly, Error> {
    check_rank(eta.rank, p.rank)?;
    let mut acc = Poly::zero(&Context::empty());
    for (b, f) in &eta.terms {
        if let Some(g) = p.terms.get(b) {
            acc = acc.add(&f.mul(g));
        }
    }
    Ok(acc)
}

/// Applies the graded commutator [F,G] = F∘G − (−1)^{deg F · deg G} G∘F to
/// `eta`.
pub fn graded_commutator_apply(
    f: &dyn Fn(&Form) -> Form,
    g: &dyn Fn(&Form) -> Form,
    deg_f: i32,
    deg_g: i32,
    eta: &Form,
) -> Form {
    let fg = f(&g(eta));
    let gf = g(&f(eta));
    if (deg_f * deg_g).rem_euclid(2) == 0 {
        fg.try_sub(&gf).expect("operators preserve rank")
    } else {
        fg.try_add(&gf).expect("operators preserve rank")
    }
}

/// A section of E: a degree-1 multivector stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    comps: Vec<Poly>,
}

impl Section {
    pub fn zero(rank: usize, ctx: &Context) -> Self {
        Section {
            comps: vec![Poly::zero(ctx); rank],
        }
    }

    /// The basis section σ_r (0-based).
    pub fn basis(rank: usize, r: usize, ctx: &Context) -> Self {
        let mut s = Section::zero(rank, ctx);
        s.comps[r] = Poly::one(ctx);
        s
    }

    pub fn new(comps: Vec<Poly>) -> Self {
        Section { comps }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn component(&self, r: usize) -> &Poly {
        &self.comps[r]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn try_add(&self, other: &Section) -> Result<Section, Error> {
        check_rank(self.rank(), other.rank())?;
        Ok(Section::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        ))
    }

    pub fn try_sub(&self, other: &Section) -> Result<Section, Error> {
        check_rank(self.rank(), other.rank())?;
        Ok(Section::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        ))
    }

    pub fn mul_poly(&self, f: &Poly) -> Section {
        Section::new(self.comps.iter().map(|a| a.mul(f)).collect())
    }

    pub fn to_multivector(&self) -> Multivector {
        Multivector::from_terms(
            self.rank(),
            self.comps
                .iter()
                .enumerate()
                .map(|(r, f)| (Blade::single(r), f.clone())),
        )
    }

    /// Fails unless `p` is purely of degree 1 (or zero).
    pub fn from_multivector(p: &Multivector, ctx: &Context) -> Result<Section, Error> {
        let mut s = Section::zero(p.rank(), ctx);
        for (b, f) in p.terms() {
            if b.degree() != 1 {
                return Err(Error::Invalid(format!(
                    "expected a section (degree 1), found a component of degree {}",
                    b.degree()
                )));
            }
            s.comps[b.indices()[0]] = f.clone();
        }
        Ok(s)
    }

    pub fn recontext(&self, ctx: &Context) -> Result<Section, Error> {
        Ok(Section::new(
            self.comps
                .iter()
                .map(|f| recontext_poly(f, ctx))
                .collect::<Result<_, _>>()?,
        ))
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_multivector().fmt(f)
    }
}
