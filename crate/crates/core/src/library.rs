//! Example algebroids and Poisson structures used throughout the tests.

use crate::poisson::{cotangent_algebroid, PoissonStructure};
use crate::scalars::{Context, Poly};
use crate::Algebroid;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Tangent algebroid of ℝⁿ with coordinates x1..xn and sections e1..en.
pub fn tangent(n: usize) -> Algebroid {
    tangent_with(names("x", n), names("e", n))
}

/// Tangent algebroid of a chart with sections `d_x` for each coordinate `x`.
pub fn tangent_of(coords: &[String]) -> Algebroid {
    tangent_with(
        coords.to_vec(),
        coords.iter().map(|x| format!("d_{x}")).collect(),
    )
}

fn tangent_with(coords: Vec<String>, sections: Vec<String>) -> Algebroid {
    let n = coords.len();
    let mut a = Algebroid::new(coords, sections).expect("distinct names");
    for r in 0..n {
        let one = Poly::one(a.context());
        a.set_anchor(r, r, one).unwrap();
    }
    a
}

fn constant(a: &Algebroid, n: i64) -> Poly {
    Poly::from_int(a.context(), n)
}

/// so(3)-type constants {e1,e2} = c312 e3, {e2,e3} = e1, {e3,e1} = e2.
pub fn scaled_so3(c312: i64) -> Algebroid {
    let mut a = Algebroid::new(vec![], names("e", 3)).unwrap();
    let one = constant(&a, 1);
    a.set_structure(0, 1, 2, constant(&a, c312)).unwrap();
    a.set_structure(1, 2, 0, one.clone()).unwrap();
    a.set_structure(2, 0, 1, one).unwrap();
    a
}

/// The Lie algebra so(3) over a point: {e1,e2} = e3 and cyclic.
pub fn so3() -> Algebroid {
    scaled_so3(1)
}

/// so(3) with {e1,e2} = e3 + e1: Jacobi fails, since
/// {e3,{e1,e2}} = {e3,e1} = e2 while the other two cyclic terms vanish.
pub fn tampered_so3() -> Algebroid {
    let a = so3();
    let one = constant(&a, 1);
    a.with_structure(0, 1, 0, one).unwrap()
}

/// Tangent algebroid of ℝ² with a spurious bracket {e1,e2} = e1: the
/// anchor is no longer a homomorphism.
pub fn tampered_anchor() -> Algebroid {
    let a = tangent(2);
    let one = constant(&a, 1);
    a.with_structure(0, 1, 0, one).unwrap()
}

/// Rank 1 over the line, anchor s ↦ x ∂_x.
pub fn scaling_line() -> Algebroid {
    let a = Algebroid::new(vec!["x".into()], vec!["s".into()]).unwrap();
    let x = Poly::var(a.context(), "x");
    a.with_anchor(0, 0, x).unwrap()
}

/// The affine algebra acting on the line: ρ(s1) = ∂_x, ρ(s2) = x ∂_x,
/// {s1,s2} = s1.
pub fn affine_line() -> Algebroid {
    let a = Algebroid::new(vec!["x".into()], names("s", 2)).unwrap();
    let x = Poly::var(a.context(), "x");
    let one = constant(&a, 1);
    a.with_anchor(0, 0, one.clone())
        .and_then(|a| a.with_anchor(1, 0, x))
        .and_then(|a| a.with_structure(0, 1, 0, one))
        .unwrap()
}

/// sl(2) acting on the line by ∂_x, x ∂_x, x² ∂_x.
pub fn sl2_line() -> Algebroid {
    let a = Algebroid::new(vec!["x".into()], names("s", 3)).unwrap();
    let x = Poly::var(a.context(), "x");
    let one = constant(&a, 1);
    let two = constant(&a, 2);
    a.with_anchor(0, 0, one.clone())
        .and_then(|a| a.with_anchor(1, 0, x.clone()))
        .and_then(|a| a.with_anchor(2, 0, x.pow(2)))
        .and_then(|a| a.with_structure(0, 1, 0, one.clone()))
        .and_then(|a| a.with_structure(0, 2, 1, two))
        .and_then(|a| a.with_structure(1, 2, 2, one))
        .unwrap()
}

/// Darboux structure Λ = Σ ∂_{y_i}∧∂_{x^i} on ℝ^{2m}. Coordinates are
/// `x, y` for m = 1 and `x1..xm, y1..ym` otherwise.
pub fn darboux(m: usize) -> PoissonStructure {
    let (xs, ys) = if m == 1 {
        (vec!["x".to_string()], vec!["y".to_string()])
    } else {
        (names("x", m), names("y", m))
    };
    let coords: Vec<String> = xs.into_iter().chain(ys).collect();
    let mut l = PoissonStructure::new(coords).unwrap();
    for i in 0..m {
        let minus_one = Poly::from_int(l.context(), -1);
        l.set(i, m + i, minus_one).unwrap();
    }
    l
}

/// Lie–Poisson structure on so(3)*: {x1,x2} = x3 and cyclic.
pub fn lie_poisson_so3() -> PoissonStructure {
    let mut l = PoissonStructure::new(names("x", 3)).unwrap();
    let x = |i: usize| Poly::var(&Context::new(names("x", 3)), &format!("x{i}"));
    l.set(0, 1, x(3)).unwrap();
    l.set(1, 2, x(1)).unwrap();
    l.set(2, 0, x(2)).unwrap();
    l
}

/// {u,v} = u v on the plane (every bivector in dimension 2 is Poisson).
pub fn quadratic_plane() -> PoissonStructure {
    let l = PoissonStructure::new(vec!["u".into(), "v".into()]).unwrap();
    let uv = Poly::var(l.context(), "u").mul(&Poly::var(l.context(), "v"));
    l.with(0, 1, uv).unwrap()
}

/// Λ^{12} = 1, Λ^{13} = x1² on ℝ³; violates Jacobi.
pub fn non_jacobi_bivector() -> PoissonStructure {
    let l = PoissonStructure::new(names("x", 3)).unwrap();
    let one = Poly::one(l.context());
    let x1sq = Poly::var(l.context(), "x1").pow(2);
    l.with(0, 1, one).unwrap().with(0, 2, x1sq).unwrap()
}

/// Every valid example algebroid, by name.
pub fn verified() -> Vec<(&'static str, Algebroid)> {
    vec![
        ("tangent-1", tangent(1)),
        ("tangent-2", tangent(2)),
        ("tangent-3", tangent(3)),
        ("so3", so3()),
        (
            "cotangent-darboux-2",
            cotangent_algebroid(&darboux(1)).unwrap(),
        ),
        (
            "cotangent-darboux-4",
            cotangent_algebroid(&darboux(2)).unwrap(),
        ),
        (
            "cotangent-lie-poisson-so3",
            cotangent_algebroid(&lie_poisson_so3()).unwrap(),
        ),
        (
            "cotangent-quadratic-plane",
            cotangent_algebroid(&quadratic_plane()).unwrap(),
        ),
        ("scaling-line", scaling_line()),
        ("affine-line", affine_line()),
        ("sl2-line", sl2_line()),
    ]
}

/// Algebroids that fail the axioms.
pub fn tampered() -> Vec<(&'static str, Algebroid)> {
    vec![
        ("tampered-so3", tampered_so3()),
        ("tampered-anchor", tampered_anchor()),
    ]
}

/// Valid example Poisson structures, by name.
pub fn poisson_structures() -> Vec<(&'static str, PoissonStructure)> {
    vec![
        ("darboux-2", darboux(1)),
        ("darboux-4", darboux(2)),
        ("lie-poisson-so3", lie_poisson_so3()),
        ("quadratic-plane", quadratic_plane()),
    ]
}
