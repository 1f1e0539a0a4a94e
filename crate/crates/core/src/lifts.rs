//! Tangent lifts of Poisson structures and of Lie algebroids.
//!
//! Lifted coordinates are named by appending `dot`: `x` becomes `x, xdot`.
//! The lift of an algebroid has basis sections `{s}_c` (complete lifts)
//! followed by `{s}_v` (vertical lifts).

use crate::algebroid::{check_names, Algebroid};
use crate::duality::{algebroid_from_dual_poisson, dual_poisson, DualChart};
use crate::poisson::PoissonStructure;
use crate::scalars::Poly;
use crate::{Error, Section};

/// Coordinates on a tangent bundle: base variables and their velocities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentChart {
    base: Vec<String>,
    lifted: Vec<String>,
}

impl TangentChart {
    pub fn new(base: &[String]) -> Result<Self, Error> {
        let lifted: Vec<String> = base.iter().map(|x| dot(x)).collect();
        check_names(base.iter().chain(&lifted))?;
        Ok(TangentChart {
            base: base.to_vec(),
            lifted,
        })
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn lifted(&self) -> &[String] {
        &self.lifted
    }

    pub fn coords(&self) -> Vec<String> {
        self.base.iter().chain(&self.lifted).cloned().collect()
    }
}

pub fn dot(name: &str) -> String {
    format!("{name}dot")
}

/// The tangent lift of a Poisson structure, on the chart (x, xdot):
/// {xdot^i, x^j} = Λ^{ij}, {xdot^i, xdot^j} = Σ_k ∂_k Λ^{ij} xdot^k.
pub fn tangent_lift_poisson(
    l: &PoissonStructure,
) -> Result<(PoissonStructure, TangentChart), Error> {
    l.require_poisson()?;
    let chart = TangentChart::new(l.coords())?;
    let n = l.dim();
    let mut out = PoissonStructure::new(chart.coords())?;
    let ctx = out.context().clone();
    let xdot: Vec<Poly> = chart.lifted.iter().map(|v| Poly::var(&ctx, v)).collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            out.set(n + i, j, l.get(i, j).clone())?;
            if i < j {
                let mut v = Poly::zero(&ctx);
                for (k, xk) in xdot.iter().enumerate() {
                    v = v.add(&l.get(i, j).partial(&l.coords()[k]).mul(xk));
                }
                out.set(n + i, n + j, v)?;
            }
        }
    }
    Ok((out, chart))
}

fn lifted_sections(a: &Algebroid) -> Vec<String> {
    let names = a.section_names();
    names
        .iter()
        .map(|s| format!("{s}_c"))
        .chain(names.iter().map(|s| format!("{s}_v")))
        .collect()
}

/// Tangent lift of a Lie algebroid: a rank-2k algebroid over TM with
/// complete lifts ŝ_r and vertical lifts s_r^v as basis.
pub fn tangent_lift_algebroid(a: &Algebroid) -> Result<Algebroid, Error> {
    a.require_valid()?;
    let chart = TangentChart::new(a.coords())?;
    let (n, k) = (a.base_dim(), a.rank());
    let mut out = Algebroid::new(chart.coords(), lifted_sections(a))?;
    let ctx = out.context().clone();
    let xdot: Vec<Poly> = chart.lifted.iter().map(|v| Poly::var(&ctx, v)).collect();
    let tdot = |f: &Poly| -> Poly {
        let mut acc = Poly::zero(&ctx);
        for (b, xb) in xdot.iter().enumerate() {
            acc = acc.add(&f.partial(&a.coords()[b]).mul(xb));
        }
        acc
    };
    for r in 0..k {
        for c in 0..n {
            let rho = a.anchor(r, c);
            out.set_anchor(r, c, rho.clone())?;
            out.set_anchor(r, n + c, tdot(rho))?;
            out.set_anchor(k + r, n + c, rho.clone())?;
        }
    }
    for i in 0..k {
        for j in 0..k {
            for m in 0..k {
                let c = a.structure(i, j, m);
                if i < j {
                    out.set_structure(i, j, m, c.clone())?;
                    out.set_structure(i, j, k + m, tdot(c))?;
                }
                if i != j {
                    out.set_structure(i, k + j, k + m, c.clone())?;
                }
            }
        }
    }
    Ok(out)
}

/// The same lift obtained by composing the constructions: dualize, lift
/// the Poisson structure, and read the algebroid back off the fibration
/// whose fiber variables are (ξ̇, ξ). The complete lift ŝ_r corresponds to
/// ξ̇_r and the vertical lift s_r^v to ξ_r.
pub fn tangent_lift_algebroid_by_composition(a: &Algebroid) -> Result<Algebroid, Error> {
    let (dual, dchart) = dual_poisson(a)?;
    let (lifted, _) = tangent_lift_poisson(&dual)?;
    let base: Vec<String> = a
        .coords()
        .iter()
        .cloned()
        .chain(a.coords().iter().map(|x| dot(x)))
        .collect();
    let fiber: Vec<String> = dchart
        .fiber()
        .iter()
        .map(|xi| dot(xi))
        .chain(dchart.fiber().iter().cloned())
        .collect();
    let chart = DualChart::new(base, fiber, lifted_sections(a))?;
    algebroid_from_dual_poisson(&lifted, &chart)
}

/// TX = Σ_r X^r ŝ_r + Σ_{r,a} (∂_a X^r) ẋ^a s_r^v.
pub fn complete_lift_section(a: &Algebroid, x: &Section) -> Result<Section, Error> {
    let x = a.check_section(x)?;
    let chart = TangentChart::new(a.coords())?;
    let ctx = crate::scalars::Context::new(chart.coords());
    let k = a.rank();
    let mut comps: Vec<Poly> = Vec::with_capacity(2 * k);
    for r in 0..k {
        comps.push(x.component(r).recontext(&ctx).expect("base variables"));
    }
    for r in 0..k {
        let mut v = Poly::zero(&ctx);
        for (b, xb) in a.coords().iter().enumerate() {
            v = v.add(
                &x.component(r)
                    .partial(xb)
                    .mul(&Poly::var(&ctx, &chart.lifted[b])),
            );
        }
        comps.push(v);
    }
    Ok(Section::new(comps))
}

/// The vertical lift X^v = Σ_r X^r s_r^v.
pub fn vertical_lift_section(a: &Algebroid, x: &Section) -> Result<Section, Error> {
    let x = a.check_section(x)?;
    let chart = TangentChart::new(a.coords())?;
    let ctx = crate::scalars::Context::new(chart.coords());
    let k = a.rank();
    let mut comps = vec![Poly::zero(&ctx); k];
    for r in 0..k {
        comps.push(x.component(r).recontext(&ctx).expect("base variables"));
    }
    Ok(Section::new(comps))
}
