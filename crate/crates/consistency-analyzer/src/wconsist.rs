//! Per-equation weak-consistency verdicts.

use crate::jet::DifferentialPolynomial;
use crate::navier_stokes::flow_equation;
use crate::reduce::{differential_reduce, DEFAULT_ORDER_BOUND};
use crate::taylor::{default_truncation, taylor_limit, TaylorError};
use difference_algebra::encode_fda;
use schemes::SchemeId;

/// Verdict for one equation: does its continuous limit equal the
/// corresponding flow equation exactly?
#[derive(Debug, Clone)]
pub struct WVerdict {
    /// Equation index, 1-based.
    pub equation: usize,
    /// Limit exists and equals the flow equation, coefficient for
    /// coefficient.
    pub consistent: bool,
    pub exists: bool,
    pub limit: DifferentialPolynomial,
    pub expected: DifferentialPolynomial,
    /// limit − expected. The wide scheme's momentum and pressure equations
    /// leave a nonzero defect here: their divergence-form limits differ from
    /// the flow equations by multiples of continuity and its derivatives.
    pub defect: DifferentialPolynomial,
    /// Whether the defect reduces to zero modulo the flow system at the
    /// default order bound.
    pub defect_in_ideal: bool,
    /// Truncation order used for this equation.
    pub truncation: u32,
}

/// Limits of all four equations of `scheme` compared against the flow
/// system. `k` overrides the default truncation order.
pub fn check_w_consistency(
    scheme: SchemeId,
    k: Option<u32>,
) -> Result<[WVerdict; 4], TaylorError> {
    let enc = encode_fda(scheme);
    let mut verdicts = Vec::with_capacity(4);
    for i in 1..=4 {
        let f = enc.raw_eq(i);
        let truncation = k.unwrap_or_else(|| default_truncation(f));
        let lim = taylor_limit(f, truncation)?;
        let expected = flow_equation(i);
        let defect = lim.limit.sub(&expected);
        let consistent = lim.exists && defect.is_zero();
        let defect_in_ideal = defect.is_zero()
            || differential_reduce(&defect, DEFAULT_ORDER_BOUND.max(defect.order()))
                .remainder
                .is_zero();
        verdicts.push(WVerdict {
            equation: i,
            consistent,
            exists: lim.exists,
            limit: lim.limit,
            expected,
            defect,
            defect_in_ideal,
            truncation,
        });
    }
    Ok(verdicts.try_into().expect("four equations"))
}
