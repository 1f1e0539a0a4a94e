//! Seeded random generators for polynomials, sections and exterior
//! elements, used by the property tests.

use rand::Rng;

use crate::graded::{Blade, Exterior, Kind};
use crate::scalars::{rat, Context, Poly};
use crate::Section;

/// Random polynomial over `ctx` with total degree ≤ `max_degree` and at most
/// `max_terms` terms. Coefficients are small integers or halves.
pub fn random_poly<R: Rng>(rng: &mut R, ctx: &Context, max_degree: u32, max_terms: usize) -> Poly {
    let mut p = Poly::zero(ctx);
    let nterms = rng.gen_range(0..=max_terms);
    for _ in 0..nterms {
        let mut numer = rng.gen_range(-3i64..=3);
        if numer == 0 {
            numer = 1;
        }
        let denom = if rng.gen_bool(0.2) { 2 } else { 1 };
        let mut t = Poly::constant(ctx, rat(numer, denom));
        if !ctx.is_empty() {
            let deg = rng.gen_range(0..=max_degree);
            for _ in 0..deg {
                let v = &ctx.names()[rng.gen_range(0..ctx.len())];
                t = t.mul(&Poly::var(ctx, v));
            }
        }
        p = p.add(&t);
    }
    p
}

/// Random element of the exterior algebra of rank `rank`. With `degree`
/// set the result is homogeneous of that degree; otherwise components of
/// every degree may appear.
pub fn random_exterior<K: Kind, R: Rng>(
    rng: &mut R,
    rank: usize,
    ctx: &Context,
    degree: Option<usize>,
    max_degree: u32,
    max_terms: usize,
) -> Exterior<K> {
    let blades: Vec<Blade> = match degree {
        Some(p) if p > rank => Vec::new(),
        Some(p) => Blade::all_of_degree(rank, p),
        None => Blade::all(rank),
    };
    let mut terms = Vec::new();
    for b in blades {
        if rng.gen_bool(0.6) {
            terms.push((b, random_poly(rng, ctx, max_degree, max_terms)));
        }
    }
    Exterior::from_terms(rank, terms)
}

/// Random section with polynomial components.
pub fn random_section<R: Rng>(
    rng: &mut R,
    rank: usize,
    ctx: &Context,
    max_degree: u32,
    max_terms: usize,
) -> Section {
    Section::new(
        (0..rank)
            .map(|_| random_poly(rng, ctx, max_degree, max_terms))
            .collect(),
    )
}
