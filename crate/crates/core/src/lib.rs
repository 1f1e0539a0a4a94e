//! Exact symbolic calculus for Lie algebroids over polynomial charts.
//!
//! Coefficients are polynomials with rational coefficients ([`scalars`]).
//! On top of them sit the exterior algebras of sections and forms
//! ([`graded`]), Lie algebroid data and its bracket ([`algebroid`]), the
//! Cartan calculus and the Schouten–Nijenhuis bracket ([`calculus`]),
//! Poisson structures ([`poisson`]), the Poisson structure on the dual
//! bundle ([`duality`]) and tangent lifts ([`lifts`]). Every identity is
//! checked to literal zero.

pub mod algebroid;
pub mod calculus;
pub mod duality;
mod error;
pub mod graded;
pub mod library;
pub mod lifts;
pub mod poisson;
pub mod random;
mod report;
pub mod scalars;

pub use algebroid::{Algebroid, Derivation1, VectorField};
pub use duality::DualChart;
pub use error::Error;
pub use graded::{Blade, Form, Multivector, Section};
pub use lifts::TangentChart;
pub use poisson::PoissonStructure;
pub use report::{Report, Residual};
pub use scalars::{Context, Poly, Rational};
