//! Bridge from the numeric stencil tables to difference polynomials.
//!
//! Each scheme's four residual equations are re-read as polynomials in the
//! shifted grid functions, then brought into normalized form: translate so
//! every shift is nonnegative (e1 by (1,1,0), the rest by (2,2,0), putting
//! all three schemes on a common window) and clear the leading denominator.
//! The resulting polynomials are monic with the leading monomials demanded
//! of the encoded systems; tests pin both facts.

use exact_solution::Component;
use schemes::{equations, SchemeId, StencilTerm};

use crate::polynomial::DifferencePolynomial;
use crate::rational::ParamRational;
use crate::shifted::{DifferenceMonomial, Indet, Shift, ShiftedVar};

pub fn indet_of(component: Component) -> Indet {
    match component {
        Component::U => Indet::U,
        Component::V => Indet::V,
        Component::P => Indet::P,
    }
}

pub fn encode_term(term: &StencilTerm) -> (ParamRational, DifferenceMonomial) {
    let c = ParamRational::parameter_term(
        term.coef.num,
        term.coef.den,
        term.coef.pow_re,
        term.coef.pow_h,
        term.coef.pow_tau,
    );
    let mut m = DifferenceMonomial::one();
    for (component, slot) in &term.factors {
        let (a, b, t) = term.offsets[*slot];
        m = m.mul(&DifferenceMonomial::var(ShiftedVar::new(
            indet_of(*component),
            (a, b, t),
        )));
    }
    (c, m)
}

pub fn encode_equation(terms: &[StencilTerm]) -> DifferencePolynomial {
    let mut p = DifferencePolynomial::zero();
    for t in terms {
        let (c, m) = encode_term(t);
        p.insert_add(m, c);
    }
    p
}

#[derive(Debug, Clone)]
pub struct EncodedFda {
    pub scheme: SchemeId,
    /// Equations exactly as evaluated by the solver, centered at the node.
    pub raw: [DifferencePolynomial; 4],
    /// shift then scale applied to the raw equations; monic by construction.
    pub normalized: [DifferencePolynomial; 4],
    pub shifts: [Shift; 4],
    pub scales: [ParamRational; 4],
}

impl EncodedFda {
    /// 1-based accessors matching the equation numbering.
    pub fn raw_eq(&self, i: usize) -> &DifferencePolynomial {
        &self.raw[i - 1]
    }

    pub fn normalized_eq(&self, i: usize) -> &DifferencePolynomial {
        &self.normalized[i - 1]
    }
}

pub fn encode_fda(scheme: SchemeId) -> EncodedFda {
    let eqs = equations(scheme);
    let raw = [
        encode_equation(&eqs.e1),
        encode_equation(&eqs.e2),
        encode_equation(&eqs.e3),
        encode_equation(&eqs.e4),
    ];
    let shifts: [Shift; 4] = [(1, 1, 0), (2, 2, 0), (2, 2, 0), (2, 2, 0)];
    let two_h = ParamRational::parameter_term(2, 1, 0, 1, 0);
    let tau = ParamRational::parameter_term(1, 1, 0, 0, 1);
    let e4_scale = match scheme {
        // The wide second differences carry 1/4h², the compact ones 1/h².
        SchemeId::Fda1 => ParamRational::parameter_term(4, 1, 0, 2, 0),
        SchemeId::Fda2 | SchemeId::Fda3 => ParamRational::parameter_term(1, 1, 0, 2, 0),
    };
    let scales = [two_h, tau.clone(), tau, e4_scale];
    let normalized = std::array::from_fn(|i| raw[i].shifted(shifts[i]).scale(&scales[i]));
    EncodedFda {
        scheme,
        raw,
        normalized,
        shifts,
        scales,
    }
}
