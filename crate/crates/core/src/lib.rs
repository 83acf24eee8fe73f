//! Exact computation of Puiseux-series roots of monic polynomial equations
//! over multivariate formal power series, together with the supporting
//! calculus: order-preserving monomial blowing-ups, polyhedral S-cones,
//! principalization of finite exponent sets, and integral-closure tests for
//! Puiseux elements over formal power series rings.
//!
//! The solver (`newton::solve`) walks the Newton polygon of the equation in
//! `(x1, z)`, solving characteristic equations by recursion on the number of
//! variables. Every root comes back as a truncated series in prepared
//! (first-quadrant) coordinates plus a blow-down certificate describing the
//! S-cone that holds its support in the original coordinates, and a verified
//! residual floor.
//!
//! All arithmetic is exact (arbitrary-precision rationals); truncation depth
//! is tracked explicitly so that nothing exact is ever silently dropped.
//!
//! With the default `parallel` feature the branch tree of the solver is
//! explored with rayon; disabling it produces a fully sequential build with
//! identical output.

pub mod blowup;
pub mod closure;
pub mod cone;
pub mod error;
pub mod field;
pub mod lattice;
pub mod newton;
pub mod parse;
pub mod plant;
pub mod rational;
pub mod series;
pub mod zpoly;

pub use blowup::{principalize, MonomialMap, PrincipalizationResult};
pub use closure::{
    conjugate, is_integral_over_formal, minimal_polynomial, solve_over_cone_ring,
    ConeRingElement, ConjugateCharacter,
};
pub use cone::{common_enclosing, Cone, SConeCertificate};
pub use error::{Error, Result};
pub use field::{univariate_roots, FieldElement, UnivariatePoly};
pub use lattice::{ExponentVector, LatticeSet, ProductOrder};
pub use newton::{solve, solve_sequential, verify, PuiseuxRoot, SolveConfig};
pub use parse::{parse_rational, parse_series, parse_vector, parse_zpoly};
pub use rational::{DegreeBound, Rational};
pub use series::PuiseuxSeries;
pub use zpoly::ZPolynomial;
