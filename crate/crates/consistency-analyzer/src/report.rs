//! Serializable consistency reports.
//!
//! The algebraic structures carry exact polynomials and reduction traces;
//! the report renders them to strings so a run can be archived as JSON and
//! read back without the polynomial types.

use serde::Serialize;

use schemes::SchemeId;

use crate::certificate::{certify_s_consistency_fda1, Fda1Certificate};
use crate::obstruction::{extract_obstruction, Obstruction};
use crate::reduce::{prolonged_basis, DiffReduction};
use crate::taylor::TaylorError;
use crate::wconsist::{check_w_consistency, WVerdict};

/// Human-readable reduction trace: one line per recorded cofactor.
fn trace_lines(red: &DiffReduction) -> Vec<String> {
    let basis = prolonged_basis(red.order_bound);
    red.steps
        .iter()
        .map(|s| {
            let b = &basis[s.basis_index];
            let (a, y, t) = b.derivative;
            format!(
                "subtract ({}) * {} * d^({a},{y},{t}) f{}",
                s.coefficient, s.monomial, b.equation
            )
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct WVerdictReport {
    pub equation: usize,
    pub consistent: bool,
    pub limit_exists: bool,
    pub limit: String,
    pub expected: String,
    pub defect: String,
    /// A nonzero defect that still reduces to zero modulo the flow system:
    /// the limit is a differential consequence, just not the named equation.
    pub defect_in_ideal: bool,
    pub truncation: u32,
}

impl WVerdictReport {
    fn from_verdict(v: &WVerdict) -> Self {
        WVerdictReport {
            equation: v.equation,
            consistent: v.consistent,
            limit_exists: v.exists,
            limit: v.limit.to_string(),
            expected: v.expected.to_string(),
            defect: v.defect.to_string(),
            defect_in_ideal: v.defect_in_ideal,
            truncation: v.truncation,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SummandReport {
    pub label: String,
    pub leading_monomial: String,
    pub limit: String,
    pub principal: String,
    pub principal_grade: Option<(i32, i32)>,
    pub limit_in_ideal: bool,
    pub principal_in_ideal: bool,
    pub reduction_steps: usize,
    /// The membership witness: cofactors that bring the principal content
    /// to its normal form.
    pub reduction_trace: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub identity_holds: bool,
    pub counterexample: Option<String>,
    pub leading_monomials_distinct: bool,
    pub summands: Vec<SummandReport>,
    pub certified: bool,
    pub s_polynomial: String,
}

impl CertificateReport {
    pub fn from_certificate(cert: &Fda1Certificate) -> Self {
        let summands = cert
            .summands
            .iter()
            .map(|s| SummandReport {
                label: s.label.to_string(),
                leading_monomial: s
                    .poly
                    .leading_monomial()
                    .map(|m| m.to_string())
                    .unwrap_or_default(),
                limit: s.limit.limit.to_string(),
                principal: s.limit.principal.to_string(),
                principal_grade: s.limit.principal_grade,
                limit_in_ideal: s.limit_reduction.remainder.is_zero(),
                principal_in_ideal: s.principal_reduction.remainder.is_zero(),
                reduction_steps: s.limit_reduction.steps.len() + s.principal_reduction.steps.len(),
                reduction_trace: trace_lines(&s.principal_reduction),
            })
            .collect();
        CertificateReport {
            identity_holds: cert.identity_holds,
            counterexample: cert.counterexample.as_ref().map(|p| p.to_string()),
            leading_monomials_distinct: cert.leading_monomials_distinct,
            summands,
            certified: cert.certified(),
            s_polynomial: cert.s_polynomial.poly.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    pub s_polynomial: String,
    pub delta_is_zero: bool,
    pub delta: String,
    pub delta_terms: usize,
    pub removed_continuity_multiples: bool,
    pub remainder_terms: usize,
    pub limit: String,
    pub principal: String,
    pub principal_grade: Option<(i32, i32)>,
    /// Scalar relating the principal part to the reference fourth-order
    /// PDE, when the match is exact.
    pub reference_scalar: Option<String>,
    pub normal_form: String,
    pub normal_form_nonzero: bool,
    pub reduction_steps: usize,
    pub reduction_trace: Vec<String>,
}

impl ObstructionReport {
    pub fn from_obstruction(obs: &Obstruction) -> Self {
        ObstructionReport {
            s_polynomial: obs.s_polynomial.poly.to_string(),
            delta_is_zero: obs.delta.is_zero(),
            delta: obs.delta.to_string(),
            delta_terms: obs.delta.num_terms(),
            removed_continuity_multiples: obs.removed_continuity_multiples.is_some(),
            remainder_terms: obs.remainder.num_terms(),
            limit: obs.limit.limit.to_string(),
            principal: obs.limit.principal.to_string(),
            principal_grade: obs.limit.principal_grade,
            reference_scalar: obs.reference_scalar.as_ref().map(|c| c.to_string()),
            normal_form: obs.principal_reduction.remainder.to_string(),
            normal_form_nonzero: !obs.principal_reduction.remainder.is_zero(),
            reduction_steps: obs.principal_reduction.steps.len(),
            reduction_trace: trace_lines(&obs.principal_reduction),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SVerdict {
    /// The S-polynomial identity holds exactly and every summand's Taylor
    /// content is a certified ideal member.
    CertifiedConsistent { certificate: CertificateReport },
    /// A nonzero residue whose principal Taylor content has a nonzero
    /// bounded-order normal form modulo the flow system.
    Obstructed { obstruction: ObstructionReport },
    /// Neither a certificate nor valid obstruction evidence at the bound.
    Undetermined {
        reason: String,
        certificate: Option<CertificateReport>,
        obstruction: Option<ObstructionReport>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub scheme: String,
    pub truncation: u32,
    pub order_bound: u32,
    pub w_consistent: bool,
    pub w_verdicts: Vec<WVerdictReport>,
    pub s_verdict: SVerdict,
}

pub fn full_report(scheme: SchemeId) -> Result<ConsistencyReport, TaylorError> {
    let w = check_w_consistency(scheme, None)?;
    let w_verdicts: Vec<WVerdictReport> = w.iter().map(WVerdictReport::from_verdict).collect();
    let w_consistent = w.iter().all(|v| v.consistent);

    let (truncation, order_bound, s_verdict) = match scheme {
        SchemeId::Fda1 => {
            let cert = certify_s_consistency_fda1()?;
            let view = CertificateReport::from_certificate(&cert);
            let verdict = if cert.certified() {
                SVerdict::CertifiedConsistent { certificate: view }
            } else {
                SVerdict::Undetermined {
                    reason: "certificate incomplete: identity or summand membership failed"
                        .to_string(),
                    certificate: Some(view),
                    obstruction: None,
                }
            };
            (cert.truncation, cert.order_bound, verdict)
        }
        SchemeId::Fda2 | SchemeId::Fda3 => {
            let obs = extract_obstruction(scheme)?;
            let view = ObstructionReport::from_obstruction(&obs);
            let verdict = if obs.delta.is_zero() {
                SVerdict::Undetermined {
                    reason: "residue is zero: the scheme unexpectedly satisfies the identity"
                        .to_string(),
                    certificate: None,
                    obstruction: Some(view),
                }
            } else if obs.certifies_obstruction() {
                SVerdict::Obstructed { obstruction: view }
            } else {
                SVerdict::Undetermined {
                    reason: "residue's principal part reduces to zero modulo the flow \
                             system at the order bound; no obstruction certified"
                        .to_string(),
                    certificate: None,
                    obstruction: Some(view),
                }
            };
            (obs.truncation, obs.order_bound, verdict)
        }
    };

    Ok(ConsistencyReport {
        scheme: scheme.to_string(),
        truncation,
        order_bound,
        w_consistent,
        w_verdicts,
        s_verdict,
    })
}

pub fn render_text(report: &ConsistencyReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: &str| {
        out.push_str(line);
        out.push('\n');
    };
    push(&mut out, &format!("scheme {}", report.scheme));
    push(
        &mut out,
        &format!(
            "  truncation K = {}, reduction order bound = {}",
            report.truncation, report.order_bound
        ),
    );
    for v in &report.w_verdicts {
        push(
            &mut out,
            &format!(
                "  e{}: limit {} | {}",
                v.equation,
                if v.consistent {
                    "matches the flow equation".to_string()
                } else if !v.limit_exists {
                    "does not exist (negative grid powers)".to_string()
                } else if v.defect_in_ideal {
                    format!("defect in the flow ideal: {}", v.defect)
                } else {
                    format!("defect outside the flow ideal: {}", v.defect)
                },
                v.limit
            ),
        );
    }
    match &report.s_verdict {
        SVerdict::CertifiedConsistent { certificate } => {
            push(&mut out, "  s-verdict: certified consistent");
            push(
                &mut out,
                &format!(
                    "    identity holds: {}, distinct leading monomials: {}",
                    certificate.identity_holds, certificate.leading_monomials_distinct
                ),
            );
            for s in &certificate.summands {
                push(
                    &mut out,
                    &format!(
                        "    summand [{}] lm {} principal {} (in ideal: {})",
                        s.label,
                        s.leading_monomial,
                        s.principal,
                        s.principal_in_ideal && s.limit_in_ideal
                    ),
                );
            }
        }
        SVerdict::Obstructed { obstruction } => {
            push(&mut out, "  s-verdict: obstructed");
            push(
                &mut out,
                &format!(
                    "    residue: {} terms, remainder: {} terms",
                    obstruction.delta_terms, obstruction.remainder_terms
                ),
            );
            push(
                &mut out,
                &format!(
                    "    principal content at grade {:?}: {}",
                    obstruction.principal_grade, obstruction.principal
                ),
            );
            push(
                &mut out,
                &format!(
                    "    reference scalar: {}",
                    obstruction.reference_scalar.as_deref().unwrap_or("none")
                ),
            );
            push(
                &mut out,
                &format!(
                    "    normal form nonzero: {} ({} reduction steps)",
                    obstruction.normal_form_nonzero, obstruction.reduction_steps
                ),
            );
        }
        SVerdict::Undetermined { reason, .. } => {
            push(&mut out, &format!("  s-verdict: undetermined ({reason})"));
        }
    }
    out
}
