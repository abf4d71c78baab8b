//! Machine-checked strong-consistency certificate for the wide scheme.
//!
//! The proof obligation has three parts, all discharged by exact
//! arithmetic: the single nontrivial S-polynomial of the encoded scheme
//! equals a combination of shifted scheme equations; the summands of that
//! combination have pairwise distinct leading monomials (so no further
//! cancellation can occur in ideal elements); and each summand's Taylor
//! content is a member of the differential ideal of the flow equations,
//! witnessed by recorded reduction cofactors.

use difference_algebra::{
    encode_fda, spoly_parts, DifferenceMonomial, DifferencePolynomial, ParamRational, SPoly,
};
use schemes::SchemeId;

use crate::identity::identity_parts;
use crate::reduce::{differential_reduce, DiffReduction, DEFAULT_ORDER_BOUND};
use crate::taylor::{default_truncation, taylor_limit, LimitResult, TaylorError};

/// One cofactor group of the identity, in the centered frame, together
/// with its Taylor content and ideal-membership evidence.
#[derive(Debug, Clone)]
pub struct CertificateSummand {
    pub label: &'static str,
    pub poly: DifferencePolynomial,
    pub limit: LimitResult,
    /// Normal form of the h⁰τ⁰ component modulo the prolonged flow system.
    pub limit_reduction: DiffReduction,
    /// Normal form of the lowest-grade expansion component — the actual PDE
    /// content of the 1/τ- and 1/(2h)-scaled summands lives there.
    pub principal_reduction: DiffReduction,
}

impl CertificateSummand {
    pub fn in_ideal(&self) -> bool {
        self.limit_reduction.remainder.is_zero() && self.principal_reduction.remainder.is_zero()
    }
}

#[derive(Debug, Clone)]
pub struct Fda1Certificate {
    pub s_polynomial: SPoly,
    /// Exact equality of the S-polynomial and the combination, checked both
    /// in the centered frame and in the S-polynomial's own window.
    pub identity_holds: bool,
    /// Nonzero residue if the identity fails; would falsify the proof.
    pub counterexample: Option<DifferencePolynomial>,
    pub summands: Vec<CertificateSummand>,
    pub leading_monomials_distinct: bool,
    pub truncation: u32,
    pub order_bound: u32,
}

impl Fda1Certificate {
    pub fn certified(&self) -> bool {
        self.identity_holds
            && self.leading_monomials_distinct
            && self.summands.iter().all(CertificateSummand::in_ideal)
    }
}

pub fn certify_s_consistency_fda1() -> Result<Fda1Certificate, TaylorError> {
    certify_s_consistency_fda1_with(None, None)
}

pub fn certify_s_consistency_fda1_with(
    truncation: Option<u32>,
    order_bound: Option<u32>,
) -> Result<Fda1Certificate, TaylorError> {
    let enc = encode_fda(SchemeId::Fda1);
    let parts = identity_parts(&enc);
    let s_polynomial = spoly_parts(&enc.normalized[0], &enc.normalized[1])
        .expect("ê1, ê2 are nonzero and admit an S-polynomial");
    let order_bound = order_bound.unwrap_or(DEFAULT_ORDER_BOUND);

    let combination = parts
        .groups
        .iter()
        .fold(DifferencePolynomial::zero(), |acc, (_, g)| acc.add(g));
    let centered_residue = parts.s12.sub(&combination);
    // The S-polynomial of the monic pair lives in the window frame: it is
    // the centered content shifted by (1,2,0) and scaled by 2hτ. Checking
    // the residue there as well exercises an independent arithmetic path.
    let window_scale = ParamRational::parameter_term(2, 1, 0, 1, 1);
    let windowed_residue = s_polynomial
        .poly
        .sub(&combination.shifted((1, 2, 0)).scale(&window_scale));
    let identity_holds = centered_residue.is_zero() && windowed_residue.is_zero();
    let counterexample = if centered_residue.is_zero() {
        (!windowed_residue.is_zero()).then_some(windowed_residue)
    } else {
        Some(centered_residue)
    };

    let lms: Vec<DifferenceMonomial> = parts
        .groups
        .iter()
        .map(|(label, g)| {
            g.leading_monomial()
                .unwrap_or_else(|| panic!("summand `{label}` is zero"))
                .clone()
        })
        .collect();
    let leading_monomials_distinct = lms
        .iter()
        .enumerate()
        .all(|(i, m)| lms.iter().skip(i + 1).all(|m2| m2 != m));

    let k = truncation.unwrap_or_else(|| {
        parts
            .groups
            .iter()
            .map(|(_, g)| default_truncation(g))
            .max()
            .unwrap()
    });
    let mut summands = Vec::with_capacity(parts.groups.len());
    for (label, poly) in parts.groups {
        let limit = taylor_limit(&poly, k)?;
        let limit_reduction =
            differential_reduce(&limit.limit, order_bound.max(limit.limit.order()));
        let principal_reduction =
            differential_reduce(&limit.principal, order_bound.max(limit.principal.order()));
        summands.push(CertificateSummand {
            label,
            poly,
            limit,
            limit_reduction,
            principal_reduction,
        });
    }

    Ok(Fda1Certificate {
        s_polynomial,
        identity_holds,
        counterexample,
        summands,
        leading_monomials_distinct,
        truncation: k,
        order_bound,
    })
}
