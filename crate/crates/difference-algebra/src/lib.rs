//! Difference-polynomial algebra over the parameter field ℚ(Re, h, τ).
//!
//! The discretized flow equations are polynomials in shifted copies of the
//! grid functions u, v, p — e.g. `u(1,0,0)` is u one node to the right,
//! `p(0,0,1)` is p one time level up. This crate provides that polynomial
//! ring together with the pieces of Gröbner-style machinery the consistency
//! analysis needs: an admissible monomial order built on a ranking of the
//! shifted variables, divisibility up to shift, S-polynomials, and normal
//! forms with full cofactor bookkeeping. [`encode_fda`] turns the stencil
//! tables from the `schemes` crate into this representation.
//!
//! Coefficients are exact throughout: [`ParamRational`] is a reduced
//! fraction of integer-coefficient polynomials in Re, h, τ, so every
//! identity asserted downstream is an identity of rational functions,
//! not a float comparison.

mod divide;
mod encode;
mod order;
mod poly3;
mod polynomial;
mod rational;
mod shifted;

pub use divide::{divides, normal_form, spoly, spoly_parts, Reduction, ReductionStep, SPoly};
pub use encode::{encode_equation, encode_fda, encode_term, indet_of, EncodedFda};
pub use order::{AdmissibleOrder, OrderError};
pub use poly3::{gcd as poly_gcd, Mono3, Poly3, Var3};
pub use polynomial::DifferencePolynomial;
pub use rational::ParamRational;
pub use shifted::{
    shift_add, shift_is_nonneg, shift_sub, DifferenceMonomial, Indet, Shift, ShiftedVar,
};
