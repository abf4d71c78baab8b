//! The combination of shifted scheme equations that the S-polynomial of
//! (ê1, ê2) is matched against.
//!
//! For the wide scheme the match is exact: writing Dₜ, Dₓ, D_y for the
//! central divided differences and L for the scheme's own discrete
//! Laplacian, every scheme here satisfies the operator identity
//!
//!   Dₓ∘e2 + D_y∘e3 = Dₜ∘e1 + (quadratic/pressure content) − ν·L∘e1,
//!
//! and for the wide scheme the quadratic/pressure content is exactly e4.
//! Solving for the S-polynomial content σₜ∘e1/τ − σₓ∘e2/(2h) yields the
//! five cofactor groups below. For the compact schemes the same-shaped
//! combination leaves a nonzero residue — the obstruction candidate.

use difference_algebra::{DifferencePolynomial, EncodedFda, ParamRational};
use schemes::SchemeId;

pub(crate) struct IdentityParts {
    /// σₜ∘e1/τ − σₓ∘e2/(2h): the S-polynomial in the centered frame.
    pub s12: DifferencePolynomial,
    /// Labelled cofactor groups; their sum is compared against `s12`.
    pub groups: [(&'static str, DifferencePolynomial); 5],
}

pub(crate) fn identity_parts(enc: &EncodedFda) -> IdentityParts {
    let inv_tau = ParamRational::parameter_term(1, 1, 0, 0, -1);
    let inv_2h = ParamRational::parameter_term(1, 2, 0, -1, 0);
    let e1 = enc.raw_eq(1);
    let e2 = enc.raw_eq(2);
    let e3 = enc.raw_eq(3);

    let s12 = e1
        .shifted((0, 0, 1))
        .scale(&inv_tau)
        .sub(&e2.shifted((1, 0, 0)).scale(&inv_2h));

    let old_time = e1.scale(&inv_tau);
    let upwind = e2.shifted((-1, 0, 0)).scale(&inv_2h.neg());
    let transverse = e3
        .shifted((0, 1, 0))
        .sub(&e3.shifted((0, -1, 0)))
        .scale(&inv_2h);
    let viscous = viscous_group(enc);
    let pressure = enc.raw_eq(4).neg();

    IdentityParts {
        s12,
        groups: [
            ("e1 at the old time level over τ", old_time),
            ("minus the left e2 neighbour over 2h", upwind),
            ("central y-difference of e3", transverse),
            ("discrete Laplacian of e1 over Re", viscous),
            ("minus e4", pressure),
        ],
    }
}

/// ν·L∘e1 with L the second-difference shape the scheme itself uses in its
/// viscous terms: spacing 2 with 1/(4h²) for the wide scheme, spacing 1
/// with 1/h² for the compact ones. Using the scheme's own shape is what
/// cancels the viscous content exactly, so the compact schemes' residues
/// carry no 1/Re terms.
fn viscous_group(enc: &EncodedFda) -> DifferencePolynomial {
    let (step, coeff) = match enc.scheme {
        SchemeId::Fda1 => (2, ParamRational::parameter_term(1, 4, -1, -2, 0)),
        SchemeId::Fda2 | SchemeId::Fda3 => (1, ParamRational::parameter_term(1, 1, -1, -2, 0)),
    };
    let e1 = enc.raw_eq(1);
    let four = ParamRational::from_integer(4);
    e1.shifted((step, 0, 0))
        .add(&e1.shifted((-step, 0, 0)))
        .add(&e1.shifted((0, step, 0)))
        .add(&e1.shifted((0, -step, 0)))
        .sub(&e1.scale(&four))
        .scale(&coeff)
}
