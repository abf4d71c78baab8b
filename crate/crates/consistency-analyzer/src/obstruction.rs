//! Obstruction extraction for the compact schemes.
//!
//! Subtracting the identity-shaped combination from the S-polynomial
//! leaves a residue Δ. For the wide scheme Δ = 0 (that is the certificate);
//! for the compact schemes it is a genuine leftover whose Taylor content is
//! the candidate obstruction to strong consistency. The frozen-coefficient
//! scheme with explicit continuity multiples has those removed first, so
//! the reported remainder is the part not visibly inside the ideal.

use difference_algebra::{
    encode_fda, spoly_parts, DifferencePolynomial, Indet, ParamRational, SPoly, ShiftedVar,
};
use schemes::SchemeId;

use crate::identity::identity_parts;
use crate::jet::DifferentialPolynomial;
use crate::navier_stokes::obstruction_reference;
use crate::reduce::{differential_reduce, DiffReduction, DEFAULT_ORDER_BOUND};
use crate::taylor::{default_truncation, taylor_limit, LimitResult, TaylorError};

#[derive(Debug, Clone)]
pub struct Obstruction {
    pub scheme: SchemeId,
    /// The S-polynomial of (ê1, ê2) in its own window; the centered residue
    /// below is this up to the recorded shift and the 2hτ scale.
    pub s_polynomial: SPoly,
    /// S-polynomial minus the identity-shaped combination, centered frame.
    pub delta: DifferencePolynomial,
    /// Continuity multiples −u·Dₓ∘e1 − v·D_y∘e1 removed from `delta`
    /// before the limit is taken (the scheme that writes them explicitly).
    pub removed_continuity_multiples: Option<DifferencePolynomial>,
    /// `delta` with any continuity multiples taken back out.
    pub remainder: DifferencePolynomial,
    pub limit: LimitResult,
    /// Scalar c with principal = c · reference PDE, if one exists; the
    /// comparison is exact and c must be a pure function of Re.
    pub reference_scalar: Option<ParamRational>,
    /// Bounded-order normal form of the principal part: a nonzero remainder
    /// is the non-membership evidence that certifies the obstruction.
    pub principal_reduction: DiffReduction,
    pub truncation: u32,
    pub order_bound: u32,
}

impl Obstruction {
    /// Nonzero residue whose principal content does not reduce into the
    /// flow ideal at the order bound: the scheme is obstructed.
    pub fn certifies_obstruction(&self) -> bool {
        !self.delta.is_zero()
            && !self.limit.principal.is_zero()
            && !self.principal_reduction.remainder.is_zero()
    }
}

pub fn extract_obstruction(scheme: SchemeId) -> Result<Obstruction, TaylorError> {
    extract_obstruction_with(scheme, None, None)
}

pub fn extract_obstruction_with(
    scheme: SchemeId,
    truncation: Option<u32>,
    order_bound: Option<u32>,
) -> Result<Obstruction, TaylorError> {
    let enc = encode_fda(scheme);
    let parts = identity_parts(&enc);
    let order_bound = order_bound.unwrap_or(DEFAULT_ORDER_BOUND);
    let s_polynomial = spoly_parts(&enc.normalized[0], &enc.normalized[1])
        .expect("ê1, ê2 are nonzero and admit an S-polynomial");

    let combination = parts
        .groups
        .iter()
        .fold(DifferencePolynomial::zero(), |acc, (_, g)| acc.add(g));
    let delta = parts.s12.sub(&combination);

    let removed_continuity_multiples = match scheme {
        SchemeId::Fda3 => Some(continuity_multiples(&enc.raw[0])),
        _ => None,
    };
    let remainder = match &removed_continuity_multiples {
        Some(m) => delta.sub(m),
        None => delta.clone(),
    };

    let k = truncation.unwrap_or_else(|| default_truncation(&parts.s12).max(4));
    let limit = taylor_limit(&remainder, k)?;
    let reference_scalar = matching_scalar(&limit.principal, &obstruction_reference());
    let principal_reduction = differential_reduce(
        &limit.principal,
        order_bound.max(limit.principal.order()),
    );

    Ok(Obstruction {
        scheme,
        s_polynomial,
        delta,
        removed_continuity_multiples,
        remainder,
        limit,
        reference_scalar,
        principal_reduction,
        truncation: k,
        order_bound,
    })
}

/// Whether the two compact schemes' residues carry the same principal
/// Taylor content. They share the raw residue — the schemes print
/// identically — but the explicit continuity-multiple removal changes what
/// survives the limit, so the answer is recorded rather than presumed.
pub fn compact_principal_contents_coincide() -> Result<bool, TaylorError> {
    let frozen = extract_obstruction(SchemeId::Fda2)?;
    let compact = extract_obstruction(SchemeId::Fda3)?;
    Ok(frozen.limit.principal == compact.limit.principal
        && frozen.limit.principal_grade == compact.limit.principal_grade)
}

/// −u·Dₓ∘e1 − v·D_y∘e1 with u, v at the center node.
fn continuity_multiples(e1: &DifferencePolynomial) -> DifferencePolynomial {
    let inv_2h = ParamRational::parameter_term(1, 2, 0, -1, 0);
    let dx = e1
        .shifted((1, 0, 0))
        .sub(&e1.shifted((-1, 0, 0)))
        .scale(&inv_2h);
    let dy = e1
        .shifted((0, 1, 0))
        .sub(&e1.shifted((0, -1, 0)))
        .scale(&inv_2h);
    let u0 = DifferencePolynomial::var(ShiftedVar::new(Indet::U, (0, 0, 0)));
    let v0 = DifferencePolynomial::var(ShiftedVar::new(Indet::V, (0, 0, 0)));
    u0.mul(&dx).add(&v0.mul(&dy)).neg()
}

/// The exact scalar c with a = c·b, if any. Both polynomials must be
/// nonzero, share their leading monomial, and agree term by term after
/// rescaling; c must not involve the grid parameters.
pub fn matching_scalar(
    a: &DifferentialPolynomial,
    b: &DifferentialPolynomial,
) -> Option<ParamRational> {
    let (lm_a, lc_a) = a.leading()?;
    let (lm_b, lc_b) = b.leading()?;
    if lm_a != lm_b {
        return None;
    }
    let c = lc_a.div(lc_b);
    if !c.is_re_only() || *a != b.scale(&c) {
        return None;
    }
    Some(c)
}
