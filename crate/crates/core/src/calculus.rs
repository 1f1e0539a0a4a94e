//! Cartan calculus of a Lie algebroid: the exterior derivative d_ρ, Lie
//! derivatives of forms and multivectors, the Schouten–Nijenhuis bracket
//! and the Lie derivative by a multivector.
//!
//! Forms are evaluated on basis sections through the pairing, so
//! η(σ_{j1},…,σ_{jp}) is the component of η on ε^{j1}∧…∧ε^{jp} (with the
//! permutation sign when the indices are out of order).

use crate::algebroid::{Algebroid, VectorField};
use crate::graded::{graded_commutator_apply, interior, Blade, Form, Multivector};
use crate::library;
use crate::scalars::{int, Poly};
use crate::{Error, Section};

/// η(σ_{idx[0]},…) for an arbitrary index tuple.
fn eval_on(eta: &Form, idx: &[usize]) -> Option<Poly> {
    let (s, b) = Blade::from_indices(idx)?;
    let f = eta.coeff(b)?;
    Some(if s < 0 { f.neg() } else { f.clone() })
}

pub(crate) fn d_rho_unchecked(a: &Algebroid, eta: &Form) -> Form {
    let k = a.rank();
    let fields: Vec<VectorField> = (0..k).map(|r| a.basis_anchor_field(r)).collect();
    let mut out = Form::zero(k);
    for p in eta.degrees() {
        if p >= k {
            continue;
        }
        let part = eta.part(p);
        for j in Blade::all_of_degree(k, p + 1) {
            let idx = j.indices();
            let mut v = a.zero_poly();
            for (i, &r) in idx.iter().enumerate() {
                if let Some(f) = part.coeff(j.without(r)) {
                    let t = fields[r].apply(f);
                    v = if i % 2 == 0 { v.add(&t) } else { v.sub(&t) };
                }
            }
            for i in 0..idx.len() {
                for l in i + 1..idx.len() {
                    let rest: Vec<usize> = idx
                        .iter()
                        .enumerate()
                        .filter(|&(pos, _)| pos != i && pos != l)
                        .map(|(_, &r)| r)
                        .collect();
                    for m in 0..k {
                        let c = a.structure(idx[i], idx[l], m);
                        if c.is_zero() {
                            continue;
                        }
                        let mut tuple = vec![m];
                        tuple.extend(&rest);
                        if let Some(f) = eval_on(&part, &tuple) {
                            let t = c.mul(&f);
                            v = if (i + l) % 2 == 0 {
                                v.add(&t)
                            } else {
                                v.sub(&t)
                            };
                        }
                    }
                }
            }
            out = out.try_add(&Form::monomial(k, j, v)).unwrap();
        }
    }
    out
}

/// The exterior derivative d_ρ.
pub fn d_rho(a: &Algebroid, eta: &Form) -> Result<Form, Error> {
    let eta = a.check_exterior(eta)?;
    Ok(d_rho_unchecked(a, &eta))
}

pub(crate) fn lie_form_unchecked(a: &Algebroid, v: &Section, eta: &Form) -> Form {
    let k = a.rank();
    let rv = a.anchor_field(v);
    let w: Vec<Section> = (0..k)
        .map(|r| a.bracket_unchecked(v, &a.basis_section(r)))
        .collect();
    let mut out = Form::zero(k);
    for (j, f) in eta.terms() {
        out = out.try_add(&Form::monomial(k, *j, rv.apply(f))).unwrap();
    }
    for p in eta.degrees() {
        if p == 0 {
            continue;
        }
        let part = eta.part(p);
        for j in Blade::all_of_degree(k, p) {
            let idx = j.indices();
            let mut acc = a.zero_poly();
            for (pos, &r) in idx.iter().enumerate() {
                for m in 0..k {
                    let wm = w[r].component(m);
                    if wm.is_zero() {
                        continue;
                    }
                    let mut tuple = idx.clone();
                    tuple[pos] = m;
                    if let Some(f) = eval_on(&part, &tuple) {
                        acc = acc.add(&wm.mul(&f));
                    }
                }
            }
            out = out.try_sub(&Form::monomial(k, j, acc)).unwrap();
        }
    }
    out
}

/// Lie derivative L_ρ(V) of a form.
pub fn lie_form(a: &Algebroid, v: &Section, eta: &Form) -> Result<Form, Error> {
    let v = a.check_section(v)?;
    let eta = a.check_exterior(eta)?;
    Ok(lie_form_unchecked(a, &v, &eta))
}

pub(crate) fn lie_multivector_unchecked(
    a: &Algebroid,
    v: &Section,
    p: &Multivector,
) -> Multivector {
    let k = a.rank();
    let rv = a.anchor_field(v);
    let w: Vec<Multivector> = (0..k)
        .map(|r| a.bracket_unchecked(v, &a.basis_section(r)).to_multivector())
        .collect();
    let one = Poly::one(a.context());
    let mut out = Multivector::zero(k);
    for (b, f) in p.terms() {
        out = out
            .try_add(&Multivector::monomial(k, *b, rv.apply(f)))
            .unwrap();
        let idx = b.indices();
        for (pos, &r) in idx.iter().enumerate() {
            let before = Multivector::monomial(k, Blade::from_sorted(&idx[..pos]), f.clone());
            let after = Multivector::monomial(k, Blade::from_sorted(&idx[pos + 1..]), one.clone());
            let t = before.wedge(&w[r]).unwrap().wedge(&after).unwrap();
            out = out.try_add(&t).unwrap();
        }
    }
    out
}

/// Lie derivative L_ρ(V) of a multivector.
pub fn lie_multivector(a: &Algebroid, v: &Section, p: &Multivector) -> Result<Multivector, Error> {
    let v = a.check_section(v)?;
    let p = a.check_exterior(p)?;
    Ok(lie_multivector_unchecked(a, &v, &p))
}

fn sign_if(negative: bool, m: Multivector) -> Multivector {
    if negative {
        m.neg()
    } else {
        m
    }
}

/// Bracket of two single-term multivectors f·e_I and g·e_J.
fn schouten_term(a: &Algebroid, bi: Blade, f: &Poly, bj: Blade, g: &Poly) -> Multivector {
    let k = a.rank();
    let (p, q) = (bi.degree(), bj.degree());
    let mono = |b: Blade, h: &Poly| Multivector::monomial(k, b, h.clone());
    let as_section = |b: Blade, h: &Poly| {
        let mut s = Section::zero(k, a.context());
        s = s
            .try_add(&Section::basis(k, b.indices()[0], a.context()).mul_poly(h))
            .unwrap();
        s
    };
    match (p, q) {
        (0, 0) => Multivector::zero(k),
        (1, _) => lie_multivector_unchecked(a, &as_section(bi, f), &mono(bj, g)),
        (_, 1) => lie_multivector_unchecked(a, &as_section(bj, g), &mono(bi, f)).neg(),
        (0, _) => {
            // [f, e_j ∧ g e_R] = [f, e_j] ∧ g e_R − e_j ∧ [f, g e_R], with
            // [f, e_j] = −ρ(e_j) f.
            let j = bj.indices()[0];
            let rest = bj.without(j);
            let df = a.basis_anchor_field(j).apply(f).neg();
            let first = Multivector::monomial(k, rest, df.mul(g));
            let inner = schouten_term(a, bi, f, rest, g);
            let second = mono(Blade::single(j), &Poly::one(a.context()))
                .wedge(&inner)
                .unwrap();
            first.try_sub(&second).unwrap()
        }
        (_, 0) => sign_if(p % 2 == 1, schouten_term(a, bj, g, bi, f)),
        _ => {
            // [P, g e_j ∧ e_R] = [P, g e_j] ∧ e_R + (−1)^{p−1} g e_j ∧ [P, e_R]
            let j = bj.indices()[0];
            let rest = bj.without(j);
            let one = Poly::one(a.context());
            let head = Blade::single(j);
            let first = schouten_term(a, bi, f, head, g)
                .wedge(&mono(rest, &one))
                .unwrap();
            let second = mono(head, g)
                .wedge(&schouten_term(a, bi, f, rest, &one))
                .unwrap();
            first.try_add(&sign_if(p % 2 == 0, second)).unwrap()
        }
    }
}

pub(crate) fn schouten_unchecked(a: &Algebroid, p: &Multivector, q: &Multivector) -> Multivector {
    let mut out = Multivector::zero(a.rank());
    for (bi, f) in p.terms() {
        for (bj, g) in q.terms() {
            out = out.try_add(&schouten_term(a, *bi, f, *bj, g)).unwrap();
        }
    }
    out
}

/// Schouten–Nijenhuis bracket [P,Q], computed from the section bracket,
/// the anchor action, graded antisymmetry and the Leibniz rule.
pub fn schouten(a: &Algebroid, p: &Multivector, q: &Multivector) -> Result<Multivector, Error> {
    let p = a.check_exterior(p)?;
    let q = a.check_exterior(q)?;
    Ok(schouten_unchecked(a, &p, &q))
}

pub(crate) fn lie_by_multivector_unchecked(a: &Algebroid, p: &Multivector, eta: &Form) -> Form {
    let mut out = Form::zero(a.rank());
    for deg in p.degrees() {
        let pp = p.part(deg);
        let first = interior(&pp, &d_rho_unchecked(a, eta)).unwrap();
        let second = d_rho_unchecked(a, &interior(&pp, eta).unwrap());
        let t = if deg % 2 == 0 {
            first.try_sub(&second)
        } else {
            first.try_add(&second)
        };
        out = out.try_add(&t.unwrap()).unwrap();
    }
    out
}

/// Lie derivative by a multivector, L_ρ(P) = [i(P), d_ρ].
pub fn lie_by_multivector(a: &Algebroid, p: &Multivector, eta: &Form) -> Result<Form, Error> {
    let p = a.check_exterior(p)?;
    let eta = a.check_exterior(eta)?;
    Ok(lie_by_multivector_unchecked(a, &p, &eta))
}

/// The Schouten bracket of homogeneous P and Q recovered from the operator
/// [[i(P), d_ρ], i(Q)]: it is applied to every basis form of degree
/// p+q−1 and the resulting scalars are converted back into components.
///
/// This is an independent route to [`schouten`], used to cross-check it.
pub fn schouten_via_operators(
    a: &Algebroid,
    p: &Multivector,
    q: &Multivector,
) -> Result<Multivector, Error> {
    let p = a.check_exterior(p)?;
    let q = a.check_exterior(q)?;
    let k = a.rank();
    let (Some(dp), Some(dq)) = (p.homogeneous_degree(), q.homogeneous_degree()) else {
        if p.is_zero() || q.is_zero() {
            return Ok(Multivector::zero(k));
        }
        return Err(Error::Invalid("operands must be homogeneous".into()));
    };
    if dp + dq == 0 {
        return Ok(Multivector::zero(k));
    }
    let r = dp + dq - 1;
    let ip = |eta: &Form| interior(&p, eta).unwrap();
    let iq = |eta: &Form| interior(&q, eta).unwrap();
    let d = |eta: &Form| d_rho_unchecked(a, eta);
    let lie_p = |eta: &Form| graded_commutator_apply(&ip, &d, -(dp as i32), 1, eta);
    let sign = int(if (r * r.saturating_sub(1) / 2) % 2 == 0 {
        1
    } else {
        -1
    });
    let mut out = Multivector::zero(k);
    for b in Blade::all_of_degree(k, r) {
        let probe = Form::monomial(k, b, Poly::one(a.context()));
        let v = graded_commutator_apply(&lie_p, &iq, 1 - dp as i32, -(dq as i32), &probe);
        let value = v.coeff_or_zero(Blade::EMPTY).scale(&sign);
        out = out.try_add(&Multivector::monomial(k, b, value)).unwrap();
    }
    Ok(out)
}

/// ρ∘P: the multivector on the base obtained by pushing every factor
/// through the anchor, ρ∘(f σ_{i1}∧…) = f (ρ∘σ_{i1})∧…. The result lives
/// over the tangent algebroid of the chart.
pub fn anchor_multivector(a: &Algebroid, p: &Multivector) -> Result<Multivector, Error> {
    let p = a.check_exterior(p)?;
    let n = a.base_dim();
    let fields: Vec<Multivector> = (0..a.rank())
        .map(|r| a.basis_anchor_field(r).to_multivector())
        .collect();
    let mut out = Multivector::zero(n);
    for (b, f) in p.terms() {
        let mut t = Multivector::scalar(n, f.clone());
        for i in b.indices() {
            t = t.wedge(&fields[i]).unwrap();
        }
        out = out.try_add(&t).unwrap();
    }
    Ok(out)
}

/// Tangent algebroid of the same chart, the target of [`anchor_multivector`].
pub fn base_tangent(a: &Algebroid) -> Algebroid {
    library::tangent_of(a.coords())
}
