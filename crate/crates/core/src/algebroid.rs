//! Lie algebroid data over a single polynomial chart.
//!
//! An [`Algebroid`] is given by coordinates x¹..xⁿ, basis sections
//! σ₁..σ_k, the anchor matrix ρ (ρ∘σ_r = Σ_a ρ[r][a] ∂/∂x^a) and structure
//! functions {σ_i,σ_j} = Σ_m c[i][j][m] σ_m. The bracket of arbitrary
//! sections follows from these by the Leibniz rule.

use std::collections::BTreeSet;
use std::fmt;

use crate::calculus;
use crate::graded::{graded_commutator_apply, interior, recontext_poly, Blade, Form, Multivector};
use crate::scalars::{Context, Poly};
use crate::{Error, Report, Section};

/// A polynomial vector field Σ_a v^a ∂/∂x^a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    coords: Vec<String>,
    comps: Vec<Poly>,
}

impl VectorField {
    pub fn new(coords: Vec<String>, comps: Vec<Poly>) -> Self {
        assert_eq!(coords.len(), comps.len(), "one component per coordinate");
        VectorField { coords, comps }
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// The derivative of `f` along the field.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(f.context());
        for (v, x) in self.comps.iter().zip(&self.coords) {
            if !v.is_zero() {
                acc = acc.add(&v.mul(&f.partial(x)));
            }
        }
        acc
    }

    /// Lie bracket of vector fields.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        let comps = (0..self.comps.len())
            .map(|a| {
                self.apply(&other.comps[a])
                    .sub(&other.apply(&self.comps[a]))
            })
            .collect();
        VectorField::new(self.coords.clone(), comps)
    }

    /// The field as a section of the tangent algebroid of its chart.
    pub fn to_multivector(&self) -> Multivector {
        Section::new(self.comps.clone()).to_multivector()
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbols: Vec<String> = self.coords.iter().map(|x| format!("d_{x}")).collect();
        f.write_str(&self.to_multivector().render(&symbols))
    }
}

/// Lie algebroid structure on a trivial bundle over a polynomial chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebroid {
    coords: Vec<String>,
    sections: Vec<String>,
    ctx: Context,
    anchor: Vec<Vec<Poly>>,
    structure: Vec<Vec<Vec<Poly>>>,
}

pub(crate) fn check_names<'a, I: IntoIterator<Item = &'a String>>(names: I) -> Result<(), Error> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::NameCollision(n.clone()));
        }
    }
    Ok(())
}

impl Algebroid {
    /// Algebroid with zero anchor and zero bracket.
    pub fn new(coords: Vec<String>, sections: Vec<String>) -> Result<Self, Error> {
        check_names(coords.iter().chain(&sections))?;
        if sections.len() > 32 {
            return Err(Error::Invalid("rank above 32 is not supported".into()));
        }
        let ctx = Context::new(coords.iter().cloned());
        let (n, k) = (coords.len(), sections.len());
        Ok(Algebroid {
            anchor: vec![vec![Poly::zero(&ctx); n]; k],
            structure: vec![vec![vec![Poly::zero(&ctx); k]; k]; k],
            coords,
            sections,
            ctx,
        })
    }

    /// Sets ρ[r][a].
    pub fn set_anchor(&mut self, r: usize, a: usize, f: Poly) -> Result<(), Error> {
        self.anchor[r][a] = recontext_poly(&f, &self.ctx)?;
        Ok(())
    }

    /// Sets c[i][j][m] and its antisymmetric partner c[j][i][m].
    pub fn set_structure(&mut self, i: usize, j: usize, m: usize, f: Poly) -> Result<(), Error> {
        let f = recontext_poly(&f, &self.ctx)?;
        if i == j {
            if f.is_zero() {
                return Ok(());
            }
            return Err(Error::Invalid(format!(
                "bracket of {} with itself must vanish",
                self.sections[i]
            )));
        }
        self.structure[j][i][m] = f.neg();
        self.structure[i][j][m] = f;
        Ok(())
    }

    pub fn with_anchor(mut self, r: usize, a: usize, f: Poly) -> Result<Self, Error> {
        self.set_anchor(r, a, f)?;
        Ok(self)
    }

    pub fn with_structure(mut self, i: usize, j: usize, m: usize, f: Poly) -> Result<Self, Error> {
        self.set_structure(i, j, m, f)?;
        Ok(self)
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn section_names(&self) -> &[String] {
        &self.sections
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn base_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn rank(&self) -> usize {
        self.sections.len()
    }

    pub fn anchor(&self, r: usize, a: usize) -> &Poly {
        &self.anchor[r][a]
    }

    pub fn structure(&self, i: usize, j: usize, m: usize) -> &Poly {
        &self.structure[i][j][m]
    }

    /// The same algebroid with renamed basis sections.
    pub fn with_section_names(mut self, names: Vec<String>) -> Result<Self, Error> {
        if names.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: names.len(),
            });
        }
        check_names(self.coords.iter().chain(&names))?;
        self.sections = names;
        Ok(self)
    }

    pub fn zero_poly(&self) -> Poly {
        Poly::zero(&self.ctx)
    }

    pub fn basis_section(&self, r: usize) -> Section {
        Section::basis(self.rank(), r, &self.ctx)
    }

    pub(crate) fn check_section(&self, x: &Section) -> Result<Section, Error> {
        if x.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: x.rank(),
            });
        }
        x.recontext(&self.ctx)
    }

    pub(crate) fn check_exterior<K: crate::graded::Kind>(
        &self,
        x: &crate::graded::Exterior<K>,
    ) -> Result<crate::graded::Exterior<K>, Error> {
        if x.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: x.rank(),
            });
        }
        x.recontext(&self.ctx)
    }

    /// ρ∘X for a section already over this chart.
    pub(crate) fn anchor_field(&self, x: &Section) -> VectorField {
        let comps = (0..self.base_dim())
            .map(|a| {
                let mut acc = self.zero_poly();
                for r in 0..self.rank() {
                    let (xr, rho) = (x.component(r), &self.anchor[r][a]);
                    if !xr.is_zero() && !rho.is_zero() {
                        acc = acc.add(&xr.mul(rho));
                    }
                }
                acc
            })
            .collect();
        VectorField::new(self.coords.clone(), comps)
    }

    /// The vector field ρ∘σ_r.
    pub(crate) fn basis_anchor_field(&self, r: usize) -> VectorField {
        VectorField::new(self.coords.clone(), self.anchor[r].clone())
    }

    /// (ρ∘X)^a = Σ_r X^r ρ[r][a].
    pub fn anchor_apply(&self, x: &Section) -> Result<VectorField, Error> {
        Ok(self.anchor_field(&self.check_section(x)?))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Section, y: &Section) -> Section {
        let k = self.rank();
        let mut out: Vec<Poly> = vec![self.zero_poly(); k];
        for i in 0..k {
            let xi = x.component(i);
            if xi.is_zero() {
                continue;
            }
            for j in 0..k {
                let yj = y.component(j);
                if yj.is_zero() || i == j {
                    continue;
                }
                let f = xi.mul(yj);
                for (m, o) in out.iter_mut().enumerate() {
                    let c = &self.structure[i][j][m];
                    if !c.is_zero() {
                        *o = o.add(&f.mul(c));
                    }
                }
            }
        }
        let rx = self.anchor_field(x);
        let ry = self.anchor_field(y);
        for (m, o) in out.iter_mut().enumerate() {
            *o = o
                .add(&rx.apply(y.component(m)))
                .sub(&ry.apply(x.component(m)));
        }
        Section::new(out)
    }

    /// The bracket {X,Y} of two sections.
    pub fn bracket_sections(&self, x: &Section, y: &Section) -> Result<Section, Error> {
        let x = self.check_section(x)?;
        let y = self.check_section(y)?;
        Ok(self.bracket_unchecked(&x, &y))
    }

    /// Exact residuals of the anchor-homomorphism and Jacobi identities on
    /// basis sections.
    pub fn check_axioms(&self) -> Report {
        let (n, k) = (self.base_dim(), self.rank());
        let mut report = Report::new();
        let d = |f: &Poly, r: usize| self.basis_anchor_field(r).apply(f);
        for i in 0..k {
            for j in i + 1..k {
                for a in 0..n {
                    let mut v = d(&self.anchor[j][a], i).sub(&d(&self.anchor[i][a], j));
                    for m in 0..k {
                        v = v.sub(&self.structure[i][j][m].mul(&self.anchor[m][a]));
                    }
                    report.check(
                        "anchor",
                        vec![
                            self.sections[i].clone(),
                            self.sections[j].clone(),
                            self.coords[a].clone(),
                        ],
                        v,
                    );
                }
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                for m in j + 1..k {
                    for l in 0..k {
                        let mut v = self.zero_poly();
                        for (a, b, c) in [(i, j, m), (j, m, i), (m, i, j)] {
                            for p in 0..k {
                                v = v.add(&self.structure[b][c][p].mul(&self.structure[a][p][l]));
                            }
                            v = v.add(&d(&self.structure[b][c][l], a));
                        }
                        report.check(
                            "jacobi",
                            vec![
                                self.sections[i].clone(),
                                self.sections[j].clone(),
                                self.sections[m].clone(),
                                self.sections[l].clone(),
                            ],
                            v,
                        );
                    }
                }
            }
        }
        report
    }

    pub(crate) fn require_valid(&self) -> Result<(), Error> {
        let report = self.check_axioms();
        match report.residuals.first() {
            None => Ok(()),
            Some(r) => Err(Error::InvalidAlgebroid(format!(
                "{} residual at [{}] is {}",
                r.identity,
                r.location.join(","),
                r.value
            ))),
        }
    }

    /// The exterior derivative d_ρ recorded on generators.
    pub fn to_derivation(&self) -> Result<Derivation1, Error> {
        self.require_valid()?;
        let k = self.rank();
        let on_functions = (0..self.base_dim())
            .map(|a| {
                Form::from_terms(
                    k,
                    (0..k).map(|r| (Blade::single(r), self.anchor[r][a].clone())),
                )
            })
            .collect();
        let on_coforms = (0..k)
            .map(|m| calculus::d_rho_unchecked(self, &Form::basis(k, &[m])))
            .collect();
        Ok(Derivation1 {
            coords: self.coords.clone(),
            sections: self.sections.clone(),
            ctx: self.ctx.clone(),
            on_functions,
            on_coforms,
        })
    }

    /// Rebuilds an algebroid from a square-zero derivation of degree 1.
    pub fn from_derivation(d: &Derivation1) -> Result<Algebroid, Error> {
        if let Some((generator, residual)) = d.square_residuals().into_iter().next() {
            return Err(Error::SquareNonzero {
                generator,
                residual: residual.to_string(),
            });
        }
        let k = d.rank();
        let mut a = Algebroid::new(d.coords.clone(), d.sections.clone())?;
        for (idx, df) in d.on_functions.iter().enumerate() {
            for r in 0..k {
                // ⟨δx^a, σ_r⟩
                a.set_anchor(r, idx, df.coeff_or_zero(Blade::single(r)))?;
            }
        }
        let delta = |eta: &Form| d.apply(eta);
        for i in 0..k {
            for j in i + 1..k {
                let ii = |eta: &Form| interior(&Multivector::basis(k, &[i]), eta).unwrap();
                let ij = |eta: &Form| interior(&Multivector::basis(k, &[j]), eta).unwrap();
                // [i(σ_i), δ] has degree 0.
                let inner = |eta: &Form| graded_commutator_apply(&ii, &delta, -1, 1, eta);
                for m in 0..k {
                    let v = graded_commutator_apply(&inner, &ij, 0, -1, &Form::basis(k, &[m]));
                    a.set_structure(i, j, m, v.coeff_or_zero(Blade::EMPTY))?;
                }
            }
        }
        Ok(a)
    }
}

/// A degree-1 derivation of the algebra of forms, given on generators:
/// the images of the coordinate functions (1-forms) and of the basis
/// 1-forms (2-forms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation1 {
    coords: Vec<String>,
    sections: Vec<String>,
    ctx: Context,
    on_functions: Vec<Form>,
    on_coforms: Vec<Form>,
}

impl Derivation1 {
    pub fn new(
        coords: Vec<String>,
        sections: Vec<String>,
        on_functions: Vec<Form>,
        on_coforms: Vec<Form>,
    ) -> Result<Self, Error> {
        check_names(coords.iter().chain(&sections))?;
        let ctx = Context::new(coords.iter().cloned());
        let k = sections.len();
        if on_functions.len() != coords.len() {
            return Err(Error::DimensionMismatch {
                expected: coords.len(),
                found: on_functions.len(),
            });
        }
        if on_coforms.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: on_coforms.len(),
            });
        }
        let fix = |f: &Form, deg: usize| -> Result<Form, Error> {
            if f.rank() != k {
                return Err(Error::RankMismatch {
                    left: k,
                    right: f.rank(),
                });
            }
            if f.degrees().iter().any(|&p| p != deg) {
                return Err(Error::Invalid(format!(
                    "derivation value {f} is not of degree {deg}"
                )));
            }
            f.recontext(&ctx)
        };
        let on_functions = on_functions
            .iter()
            .map(|f| fix(f, 1))
            .collect::<Result<_, _>>()?;
        let on_coforms = on_coforms
            .iter()
            .map(|f| fix(f, 2))
            .collect::<Result<_, _>>()?;
        Ok(Derivation1 {
            coords,
            sections,
            ctx,
            on_functions,
            on_coforms,
        })
    }

    pub fn rank(&self) -> usize {
        self.sections.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn on_functions(&self) -> &[Form] {
        &self.on_functions
    }

    pub fn on_coforms(&self) -> &[Form] {
        &self.on_coforms
    }

    fn on_poly(&self, f: &Poly) -> Form {
        let mut out = Form::zero(self.rank());
        for (a, x) in self.coords.iter().enumerate() {
            let df = f.partial(x);
            if !df.is_zero() {
                out = out.try_add(&self.on_functions[a].mul_poly(&df)).unwrap();
            }
        }
        out
    }

    /// δ extended to all forms as a derivation of degree 1.
    pub fn apply(&self, eta: &Form) -> Form {
        let k = self.rank();
        let mut out = Form::zero(k);
        for (b, f) in eta.terms() {
            let basis = Form::monomial(k, *b, Poly::one(&self.ctx));
            out = out
                .try_add(&self.on_poly(f).wedge(&basis).unwrap())
                .unwrap();
            let idx = b.indices();
            for (pos, &r) in idx.iter().enumerate() {
                let before = Form::monomial(k, Blade::from_sorted(&idx[..pos]), f.clone());
                let after =
                    Form::monomial(k, Blade::from_sorted(&idx[pos + 1..]), Poly::one(&self.ctx));
                let mut t = before
                    .wedge(&self.on_coforms[r])
                    .unwrap()
                    .wedge(&after)
                    .unwrap();
                if pos % 2 == 1 {
                    t = t.neg();
                }
                out = out.try_add(&t).unwrap();
            }
        }
        out
    }

    /// Nonzero values of δ∘δ on the generators x^a and ε^r.
    pub fn square_residuals(&self) -> Vec<(String, Form)> {
        let mut out = Vec::new();
        for (a, x) in self.coords.iter().enumerate() {
            let v = self.apply(&self.on_functions[a]);
            if !v.is_zero() {
                out.push((x.clone(), v));
            }
        }
        for r in 0..self.rank() {
            let v = self.apply(&self.on_coforms[r]);
            if !v.is_zero() {
                out.push((format!("eps{}", r + 1), v));
            }
        }
        out
    }
}
