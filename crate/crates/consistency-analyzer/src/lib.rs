//! Continuous limits of the encoded schemes and the consistency analysis
//! built on them.
//!
//! The pipeline: every shifted grid variable in a difference polynomial is
//! replaced by its truncated Taylor series about the base node, the result
//! is collected by (h, τ) grade with exact coefficients, and the graded
//! components are differential polynomials in the jet variables of u, v, p
//! ([`taylor::taylor_limit`]). On top of that sit
//!
//! * weak consistency: each equation's limit versus the flow equation it
//!   discretizes ([`wconsist::check_w_consistency`]),
//! * the strong-consistency certificate for the wide scheme: its single
//!   nontrivial S-polynomial rewritten exactly as a combination of shifted
//!   scheme equations with ideal-member limits
//!   ([`certificate::certify_s_consistency_fda1`]),
//! * obstruction extraction for the compact schemes: the residue of the
//!   same combination, its limit, and bounded-order non-membership
//!   evidence ([`obstruction::extract_obstruction`]),
//! * bounded differential reduction modulo the flow system with recorded
//!   cofactors ([`reduce::differential_reduce`]),
//! * serializable reports ([`report::full_report`]).
//!
//! All arithmetic is exact; nothing here touches floating point except the
//! optional numeric evaluation hooks on the polynomial types.

mod identity;

pub mod certificate;
pub mod jet;
pub mod navier_stokes;
pub mod obstruction;
pub mod reduce;
pub mod report;
pub mod taylor;
pub mod wconsist;

pub use certificate::{
    certify_s_consistency_fda1, certify_s_consistency_fda1_with, CertificateSummand,
    Fda1Certificate,
};
pub use jet::{Axis, DifferentialMonomial, DifferentialPolynomial, JetVar};
pub use navier_stokes::{flow_equation, flow_system, obstruction_reference};
pub use obstruction::{
    compact_principal_contents_coincide, extract_obstruction, extract_obstruction_with,
    matching_scalar, Obstruction,
};
pub use reduce::{
    differential_reduce, normal_form_against, prolonged_basis, BasisElement, DiffReduction,
    DiffReductionStep, DEFAULT_ORDER_BOUND,
};
pub use report::{full_report, render_text, ConsistencyReport, SVerdict};
pub use taylor::{
    default_truncation, taylor_expansion, taylor_limit, taylor_limit_default, Expansion, Grade,
    LimitResult, TaylorError,
};
pub use wconsist::{check_w_consistency, WVerdict};
