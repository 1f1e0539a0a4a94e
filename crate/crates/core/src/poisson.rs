//! Poisson structures on a polynomial chart.
//!
//! A bivector Λ = Σ_{i<j} Λ^{ij} ∂_i∧∂_j gives {f,g} = ⟨df∧dg, Λ⟩ =
//! Σ_{i,j} Λ^{ij} ∂_i f ∂_j g. Multivectors on the chart are taken over
//! the tangent algebroid of the same coordinates.

use crate::algebroid::{check_names, Algebroid, VectorField};
use crate::calculus::{d_rho_unchecked, schouten_unchecked};
use crate::graded::{pairing, recontext_poly, Blade, Form, Multivector};
use crate::library;
use crate::scalars::{Context, Poly};
use crate::{Error, Report};

/// An antisymmetric polynomial bivector on a named chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    coords: Vec<String>,
    ctx: Context,
    lambda: Vec<Vec<Poly>>,
}

impl PoissonStructure {
    /// The zero bivector on the given coordinates.
    pub fn new(coords: Vec<String>) -> Result<Self, Error> {
        check_names(&coords)?;
        let ctx = Context::new(coords.iter().cloned());
        let n = coords.len();
        Ok(PoissonStructure {
            lambda: vec![vec![Poly::zero(&ctx); n]; n],
            coords,
            ctx,
        })
    }

    /// Sets Λ^{ij} (and Λ^{ji} = −Λ^{ij}).
    pub fn set(&mut self, i: usize, j: usize, f: Poly) -> Result<(), Error> {
        let f = recontext_poly(&f, &self.ctx)?;
        if i == j {
            if f.is_zero() {
                return Ok(());
            }
            return Err(Error::Invalid(format!(
                "diagonal entry for {} must vanish",
                self.coords[i]
            )));
        }
        self.lambda[j][i] = f.neg();
        self.lambda[i][j] = f;
        Ok(())
    }

    pub fn with(mut self, i: usize, j: usize, f: Poly) -> Result<Self, Error> {
        self.set(i, j, f)?;
        Ok(self)
    }

    /// Builds the structure from a bivector over the tangent algebroid of
    /// `coords`.
    pub fn from_bivector(coords: Vec<String>, lambda: &Multivector) -> Result<Self, Error> {
        let mut out = PoissonStructure::new(coords)?;
        if lambda.rank() != out.dim() {
            return Err(Error::RankMismatch {
                left: out.dim(),
                right: lambda.rank(),
            });
        }
        for (b, f) in lambda.terms() {
            if b.degree() != 2 {
                return Err(Error::Invalid(format!(
                    "a Poisson bivector has only degree-2 components, found degree {}",
                    b.degree()
                )));
            }
            let idx = b.indices();
            out.set(idx[0], idx[1], f.clone())?;
        }
        Ok(out)
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.lambda[i][j]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.iter().flatten().all(Poly::is_zero)
    }

    /// Λ as a degree-2 multivector over [`PoissonStructure::tangent`].
    pub fn bivector(&self) -> Multivector {
        let n = self.dim();
        Multivector::from_terms(
            n,
            (0..n).flat_map(|i| {
                (i + 1..n).map(move |j| (Blade::from_sorted(&[i, j]), self.lambda[i][j].clone()))
            }),
        )
    }

    /// Tangent algebroid of the chart; its basis sections are named `d_x`.
    pub fn tangent(&self) -> Algebroid {
        library::tangent_of(&self.coords)
    }

    /// Exact [Λ,Λ].
    pub fn schouten_square(&self) -> Multivector {
        let lam = self.bivector();
        schouten_unchecked(&self.tangent(), &lam, &lam)
    }

    pub(crate) fn require_poisson(&self) -> Result<(), Error> {
        let sq = self.schouten_square();
        let first = sq.terms().next();
        match first {
            None => Ok(()),
            Some((b, f)) => Err(Error::NotPoisson(format!(
                "[{}] = {}",
                self.blade_names(*b).join(","),
                f
            ))),
        }
    }

    fn blade_names(&self, b: Blade) -> Vec<String> {
        b.indices()
            .into_iter()
            .map(|i| self.coords[i].clone())
            .collect()
    }

    fn differential(&self, f: &Poly) -> Form {
        d_rho_unchecked(&self.tangent(), &Form::scalar(self.dim(), f.clone()))
    }
}

/// Tangent algebroid of ℝⁿ: identity anchor, zero bracket.
pub fn tangent_algebroid(n: usize) -> Algebroid {
    library::tangent(n)
}

/// {f,g} = ⟨df∧dg, Λ⟩.
pub fn poisson_bracket(l: &PoissonStructure, f: &Poly, g: &Poly) -> Result<Poly, Error> {
    let f = recontext_poly(f, &l.ctx)?;
    let g = recontext_poly(g, &l.ctx)?;
    let dfdg = l.differential(&f).wedge(&l.differential(&g))?;
    let v = pairing(&dfdg, &l.bivector())?;
    Ok(v.recontext(&l.ctx).unwrap_or(v))
}

/// Reports every nonzero component of [Λ,Λ].
pub fn is_poisson(l: &PoissonStructure) -> Report {
    let mut report = Report::new();
    for (b, f) in l.schouten_square().terms() {
        report.check("schouten", l.blade_names(*b), f.clone());
    }
    report
}

/// Λ♯α with (Λ♯α)^b = Σ_i α_i Λ^{ib}.
pub fn sharp(l: &PoissonStructure, alpha: &Form) -> Result<VectorField, Error> {
    let n = l.dim();
    if alpha.rank() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: alpha.rank(),
        });
    }
    let alpha = alpha.recontext(&l.ctx)?;
    if alpha.degrees().iter().any(|&p| p != 1) {
        return Err(Error::Invalid("sharp takes a 1-form".into()));
    }
    let comps = (0..n)
        .map(|b| {
            let mut acc = Poly::zero(&l.ctx);
            for i in 0..n {
                if let Some(a) = alpha.coeff(Blade::single(i)) {
                    acc = acc.add(&a.mul(&l.lambda[i][b]));
                }
            }
            acc
        })
        .collect();
    Ok(VectorField::new(l.coords.clone(), comps))
}

/// The cotangent Lie algebroid T*M of a Poisson manifold, with basis
/// sections named `dx` for each coordinate `x`.
pub fn cotangent_algebroid(l: &PoissonStructure) -> Result<Algebroid, Error> {
    l.require_poisson()?;
    let n = l.dim();
    let names = l.coords.iter().map(|x| format!("d{x}")).collect();
    let mut a = Algebroid::new(l.coords.clone(), names)?;
    for i in 0..n {
        for b in 0..n {
            a.set_anchor(i, b, l.lambda[i][b].clone())?;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for m in 0..n {
                a.set_structure(i, j, m, l.lambda[i][j].partial(&l.coords[m]))?;
            }
        }
    }
    Ok(a)
}

/// The Lichnerowicz differential δ_Λ(P) = [Λ, P].
pub fn lichnerowicz(l: &PoissonStructure, p: &Multivector) -> Result<Multivector, Error> {
    l.require_poisson()?;
    let t = l.tangent();
    let p = t.check_exterior(p)?;
    Ok(schouten_unchecked(&t, &l.bivector(), &p))
}

/// Λ♯ extended multiplicatively to forms of every degree.
pub fn sharp_extend(l: &PoissonStructure, eta: &Form) -> Result<Multivector, Error> {
    l.require_poisson()?;
    let n = l.dim();
    if eta.rank() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: eta.rank(),
        });
    }
    let eta = eta.recontext(&l.ctx)?;
    let images: Vec<Multivector> = (0..n)
        .map(|i| {
            sharp(l, &Form::basis(n, &[i]))
                .expect("basis 1-form")
                .to_multivector()
        })
        .collect();
    let mut out = Multivector::zero(n);
    for (b, f) in eta.terms() {
        let mut t = Multivector::scalar(n, f.clone());
        for i in b.indices() {
            t = t.wedge(&images[i])?;
        }
        out = out.try_add(&t)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::d_rho;
    use crate::scalars::int;

    fn var(l: &PoissonStructure, name: &str) -> Poly {
        Poly::var(l.context(), name)
    }

    #[test]
    fn tangent_algebroids() {
        let t1 = tangent_algebroid(1);
        assert_eq!(t1.rank(), 1);
        assert_eq!(t1.anchor(0, 0), &Poly::one(t1.context()));
        let t0 = tangent_algebroid(0);
        assert_eq!((t0.rank(), t0.base_dim()), (0, 0));
        assert!(t0.check_axioms().is_valid());
        // d on the tangent algebroid is de Rham: d(x1 x2) = x2 dx1 + x1 dx2
        let t2 = tangent_algebroid(2);
        let (x1, x2) = (Poly::var(t2.context(), "x1"), Poly::var(t2.context(), "x2"));
        let d = d_rho(&t2, &Form::scalar(2, x1.mul(&x2))).unwrap();
        let expected = Form::basis(2, &[0])
            .mul_poly(&x2)
            .try_add(&Form::basis(2, &[1]).mul_poly(&x1))
            .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn darboux_bracket() {
        let l = library::darboux(1);
        let (x, y) = (var(&l, "x"), var(&l, "y"));
        assert_eq!(poisson_bracket(&l, &x, &y).unwrap(), int_poly(&l, -1));
        assert_eq!(poisson_bracket(&l, &y, &x).unwrap(), int_poly(&l, 1));
        assert!(poisson_bracket(&l, &x, &x).unwrap().is_zero());
    }

    fn int_poly(l: &PoissonStructure, n: i64) -> Poly {
        Poly::from_int(l.context(), n)
    }

    #[test]
    fn lie_poisson_bracket() {
        let l = library::lie_poisson_so3();
        let x: Vec<Poly> = (1..=3).map(|i| var(&l, &format!("x{i}"))).collect();
        assert_eq!(poisson_bracket(&l, &x[0], &x[1]).unwrap(), x[2]);
        assert_eq!(poisson_bracket(&l, &x[1], &x[2]).unwrap(), x[0]);
        assert_eq!(poisson_bracket(&l, &x[2], &x[0]).unwrap(), x[1]);
    }

    #[test]
    fn bracket_matches_matrix_contraction() {
        let l = library::quadratic_plane();
        let f = var(&l, "u").pow(2).mul(&var(&l, "v"));
        let g = var(&l, "u").add(&var(&l, "v").pow(3));
        let mut expected = Poly::zero(l.context());
        for i in 0..2 {
            for j in 0..2 {
                expected = expected.add(
                    &l.get(i, j)
                        .mul(&f.partial(&l.coords()[i]))
                        .mul(&g.partial(&l.coords()[j])),
                );
            }
        }
        assert_eq!(poisson_bracket(&l, &f, &g).unwrap(), expected);
    }

    #[test]
    fn poisson_gate() {
        assert!(is_poisson(&library::darboux(1)).is_valid());
        assert!(is_poisson(&library::darboux(2)).is_valid());
        assert!(is_poisson(&library::lie_poisson_so3()).is_valid());
        let bad = library::non_jacobi_bivector();
        let report = is_poisson(&bad);
        assert!(!report.is_valid());
        // brute-force Jacobiator over the coordinate triple
        let x: Vec<Poly> = (1..=3).map(|i| var(&bad, &format!("x{i}"))).collect();
        let br = |f: &Poly, g: &Poly| poisson_bracket(&bad, f, g).unwrap();
        let jac = br(&x[0], &br(&x[1], &x[2]))
            .add(&br(&x[1], &br(&x[2], &x[0])))
            .add(&br(&x[2], &br(&x[0], &x[1])));
        assert!(!jac.is_zero());
        assert!(matches!(
            cotangent_algebroid(&bad),
            Err(Error::NotPoisson(_))
        ));
    }

    #[test]
    fn sharp_examples() {
        let l = library::darboux(1);
        let dx = Form::basis(2, &[0]);
        let v = sharp(&l, &dx).unwrap();
        assert_eq!(v.components(), &[int_poly(&l, 0), int_poly(&l, -1)]);
        // ⟨dy, Λ♯dx⟩ = Λ(dx, dy)
        let dy = Form::basis(2, &[1]);
        assert_eq!(
            v.components()[1],
            pairing(&dx.wedge(&dy).unwrap(), &l.bivector()).unwrap()
        );
        assert!(sharp(&l, &Form::zero(2)).unwrap().is_zero());

        let so3 = library::lie_poisson_so3();
        let v = sharp(&so3, &Form::basis(3, &[0])).unwrap();
        let x: Vec<Poly> = (1..=3).map(|i| var(&so3, &format!("x{i}"))).collect();
        assert_eq!(
            v.components(),
            &[int_poly(&so3, 0), x[2].clone(), x[1].neg()]
        );
    }

    #[test]
    fn cotangent_examples() {
        let a = cotangent_algebroid(&library::darboux(1)).unwrap();
        assert!(a.check_axioms().is_valid());
        assert_eq!(a.section_names(), &["dx".to_string(), "dy".to_string()]);
        assert!(a.structure(0, 1, 0).is_zero() && a.structure(0, 1, 1).is_zero());

        let a = cotangent_algebroid(&library::lie_poisson_so3()).unwrap();
        assert!(a.check_axioms().is_valid());
        assert_eq!(a.structure(0, 1, 2), &Poly::one(a.context()));
        assert_eq!(a.structure(0, 2, 1), &Poly::from_int(a.context(), -1));

        let zero = PoissonStructure::new(vec!["a".into(), "b".into()]).unwrap();
        let a = cotangent_algebroid(&zero).unwrap();
        assert!(a.check_axioms().is_valid());
        assert!((0..2).all(|r| (0..2).all(|b| a.anchor(r, b).is_zero())));
    }

    #[test]
    fn lichnerowicz_examples() {
        let l = library::darboux(1);
        let x = var(&l, "x");
        let dx = Form::basis(2, &[0]);
        assert_eq!(
            lichnerowicz(&l, &Multivector::scalar(2, x)).unwrap(),
            sharp(&l, &dx).unwrap().to_multivector().neg()
        );
        assert!(lichnerowicz(&l, &l.bivector()).unwrap().is_zero());
        let p = Multivector::basis(2, &[0]).scale(&int(3));
        assert!(lichnerowicz(&l, &p).unwrap().is_zero());
    }

    #[test]
    fn sharp_extend_examples() {
        let l = library::darboux(1);
        let f = var(&l, "x").mul(&var(&l, "y"));
        assert_eq!(
            sharp_extend(&l, &Form::scalar(2, f.clone())).unwrap(),
            Multivector::scalar(2, f)
        );
        let dx = Form::basis(2, &[0]);
        let dy = Form::basis(2, &[1]);
        assert_eq!(
            sharp_extend(&l, &dx).unwrap(),
            sharp(&l, &dx).unwrap().to_multivector()
        );
        let expected = sharp(&l, &dx)
            .unwrap()
            .to_multivector()
            .wedge(&sharp(&l, &dy).unwrap().to_multivector())
            .unwrap();
        assert_eq!(sharp_extend(&l, &dx.wedge(&dy).unwrap()).unwrap(), expected);
        // Λ♯dx = −∂_y, Λ♯dy = ∂_x, so Λ♯(dx∧dy) = ∂_x∧∂_y
        assert_eq!(expected, Multivector::basis(2, &[0, 1]));
    }
}
