//! The linear Poisson structure on the dual bundle E* of a Lie algebroid,
//! the inverse construction, the Euler-field homogeneity test and the
//! check that the transpose of the anchor is a Poisson map.
//!
//! On the chart (x¹..xⁿ, ξ₁..ξ_k) of E* the structure is
//! {x^a, x^b} = 0, {ξ_r, x^a} = ρ[r][a], {ξ_i, ξ_j} = Σ_m c[i][j][m] ξ_m.

use std::collections::BTreeMap;

use crate::algebroid::{check_names, Algebroid};
use crate::calculus::schouten_unchecked;
use crate::graded::Multivector;
use crate::poisson::{poisson_bracket, PoissonStructure};
use crate::scalars::{Context, Poly};
use crate::{Error, Report, Section};

/// Coordinates on the dual bundle: base variables, one fiber variable per
/// basis section, and the names of those sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualChart {
    base: Vec<String>,
    fiber: Vec<String>,
    sections: Vec<String>,
}

impl DualChart {
    pub fn new(
        base: Vec<String>,
        fiber: Vec<String>,
        sections: Vec<String>,
    ) -> Result<Self, Error> {
        check_names(base.iter().chain(&fiber))?;
        check_names(base.iter().chain(&sections))?;
        if fiber.len() != sections.len() {
            return Err(Error::DimensionMismatch {
                expected: fiber.len(),
                found: sections.len(),
            });
        }
        Ok(DualChart {
            base,
            fiber,
            sections,
        })
    }

    /// Chart for the dual of `a`, fiber variables named `xi1..xik`.
    pub fn for_algebroid(a: &Algebroid) -> Result<Self, Error> {
        let fiber = (1..=a.rank()).map(|i| format!("xi{i}")).collect();
        DualChart::new(a.coords().to_vec(), fiber, a.section_names().to_vec())
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn fiber(&self) -> &[String] {
        &self.fiber
    }

    pub fn sections(&self) -> &[String] {
        &self.sections
    }

    /// All chart variables, base first.
    pub fn coords(&self) -> Vec<String> {
        self.base.iter().chain(&self.fiber).cloned().collect()
    }

    pub fn context(&self) -> Context {
        Context::new(self.coords())
    }
}

/// Φ_X = Σ_r X^r ξ_r.
pub fn vertical_function(a: &Algebroid, chart: &DualChart, x: &Section) -> Result<Poly, Error> {
    let x = a.check_section(x)?;
    if chart.fiber.len() != a.rank() {
        return Err(Error::DimensionMismatch {
            expected: a.rank(),
            found: chart.fiber.len(),
        });
    }
    let ctx = chart.context();
    let mut acc = Poly::zero(&ctx);
    for (r, xi) in chart.fiber.iter().enumerate() {
        acc = acc.add(&x.component(r).mul(&Poly::var(&ctx, xi)));
    }
    Ok(acc)
}

/// The Poisson structure on E* induced by the algebroid.
pub fn dual_poisson(a: &Algebroid) -> Result<(PoissonStructure, DualChart), Error> {
    let chart = DualChart::for_algebroid(a)?;
    Ok((dual_poisson_on(a, &chart)?, chart))
}

/// [`dual_poisson`] on a chart with chosen fiber variable names.
pub fn dual_poisson_on(a: &Algebroid, chart: &DualChart) -> Result<PoissonStructure, Error> {
    a.require_valid()?;
    if chart.base != a.coords() || chart.fiber.len() != a.rank() {
        return Err(Error::Invalid("chart does not match the algebroid".into()));
    }
    let (n, k) = (a.base_dim(), a.rank());
    let mut l = PoissonStructure::new(chart.coords())?;
    let ctx = l.context().clone();
    let xi: Vec<Poly> = chart.fiber.iter().map(|v| Poly::var(&ctx, v)).collect();
    for r in 0..k {
        for b in 0..n {
            l.set(n + r, b, a.anchor(r, b).clone())?;
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let mut v = Poly::zero(&ctx);
            for (m, xm) in xi.iter().enumerate() {
                v = v.add(&a.structure(i, j, m).mul(xm));
            }
            l.set(n + i, n + j, v)?;
        }
    }
    Ok(l)
}

/// Residual of [Z, Λ] + Λ with Z = Σ ξ ∂_ξ the Euler field of the given
/// fiber variables.
pub fn euler_homogeneity_check(l: &PoissonStructure, fiber: &[String]) -> Result<Report, Error> {
    let n = l.dim();
    let ctx = l.context();
    let mut z = Multivector::zero(n);
    for v in fiber {
        let i = l
            .index_of(v)
            .ok_or_else(|| Error::ContextMismatch(v.clone()))?;
        z = z.try_add(&Multivector::basis(n, &[i]).mul_poly(&Poly::var(ctx, v)))?;
    }
    let lam = l.bivector();
    let residual = schouten_unchecked(&l.tangent(), &z, &lam).try_add(&lam)?;
    let mut report = Report::new();
    for (b, f) in residual.terms() {
        let loc = b.indices().iter().map(|&i| l.coords()[i].clone()).collect();
        report.check("euler", loc, f.clone());
    }
    Ok(report)
}

/// Recovers the algebroid whose dual carries the given homogeneous
/// Poisson structure.
pub fn algebroid_from_dual_poisson(
    l: &PoissonStructure,
    chart: &DualChart,
) -> Result<Algebroid, Error> {
    let mut declared = chart.coords();
    declared.sort();
    let mut actual = l.coords().to_vec();
    actual.sort();
    if declared != actual {
        return Err(Error::Invalid(format!(
            "chart variables {:?} do not match the structure's coordinates {:?}",
            chart.coords(),
            l.coords()
        )));
    }
    let report = euler_homogeneity_check(l, &chart.fiber)?;
    if let Some(r) = report.residuals.first() {
        return Err(Error::NonHomogeneous(format!(
            "[Z,Lambda] + Lambda has component {} on [{}]",
            r.value,
            r.location.join(",")
        )));
    }
    let idx = |v: &str| l.index_of(v).expect("checked above");
    let mut a = Algebroid::new(chart.base.clone(), chart.sections.clone())?;
    let base_ctx = a.context().clone();
    for (r, xi) in chart.fiber.iter().enumerate() {
        for (b, x) in chart.base.iter().enumerate() {
            let v = l.get(idx(xi), idx(x));
            let rho = v.recontext(&base_ctx).ok_or_else(|| Error::FiberDegree {
                bracket: format!("{{{xi},{x}}}"),
                value: v.to_string(),
            })?;
            a.set_anchor(r, b, rho)?;
        }
    }
    for (i, xi) in chart.fiber.iter().enumerate() {
        for (j, xj) in chart.fiber.iter().enumerate().skip(i + 1) {
            let v = l.get(idx(xi), idx(xj));
            let err = || Error::FiberDegree {
                bracket: format!("{{{xi},{xj}}}"),
                value: v.to_string(),
            };
            for (key, coeff) in v.collect(&chart.fiber) {
                let Some(m) = key.iter().position(|&e| e == 1) else {
                    return Err(err());
                };
                if key.iter().sum::<u32>() != 1 {
                    return Err(err());
                }
                let c = coeff.recontext(&base_ctx).ok_or_else(err)?;
                a.set_structure(i, j, m, c)?;
            }
        }
    }
    a.require_valid()?;
    Ok(a)
}

/// Checks that ᵗρ: T*M → E*, ξ_r ↦ Σ_a ρ[r][a] p_a, is a Poisson map for
/// the canonical structure on T*M (momenta named by `momenta`) on every
/// pair of generators x^a, ξ_r.
pub fn transpose_anchor_check_with(a: &Algebroid, momenta: &[String]) -> Result<Report, Error> {
    let (dual, chart) = dual_poisson(a)?;
    let tm = crate::library::tangent_of(a.coords());
    let cot_chart = DualChart::new(
        a.coords().to_vec(),
        momenta.to_vec(),
        tm.section_names().to_vec(),
    )?;
    let canonical = dual_poisson_on(&tm, &cot_chart)?;
    let cctx = canonical.context().clone();

    let mut subs = BTreeMap::new();
    for (r, xi) in chart.fiber.iter().enumerate() {
        let mut v = Poly::zero(&cctx);
        for (b, p) in momenta.iter().enumerate() {
            v = v.add(&a.anchor(r, b).mul(&Poly::var(&cctx, p)));
        }
        subs.insert(xi.clone(), v);
    }
    let pull = |f: &Poly| f.substitute(&subs);
    let generators: Vec<String> = chart.coords();
    let dctx = dual.context().clone();
    let mut report = Report::new();
    for (i, g1) in generators.iter().enumerate() {
        for g2 in generators.iter().skip(i + 1) {
            let (h1, h2) = (Poly::var(&dctx, g1), Poly::var(&dctx, g2));
            let lhs = poisson_bracket(&canonical, &pull(&h1), &pull(&h2))?;
            let rhs = pull(&poisson_bracket(&dual, &h1, &h2)?);
            report.check("poisson-map", vec![g1.clone(), g2.clone()], lhs.sub(&rhs));
        }
    }
    Ok(report)
}

/// [`transpose_anchor_check_with`] using momenta `p1..pn`.
pub fn transpose_anchor_check(a: &Algebroid) -> Result<Report, Error> {
    let momenta: Vec<String> = (1..=a.base_dim()).map(|i| format!("p{i}")).collect();
    transpose_anchor_check_with(a, &momenta)
}
