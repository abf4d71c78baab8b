//! Difference divisibility, S-polynomials, and normal forms.
//!
//! Divisibility here means divisibility up to shift: α divides β when some
//! nonnegative shift σ and monomial cofactor μ give β = μ·(σ∘α). The shift
//! makes single polynomials act like infinite families, which is why the
//! S-polynomial and reduction below both carry explicit (μ, σ) bookkeeping.

use crate::polynomial::DifferencePolynomial;
use crate::rational::ParamRational;
use crate::shifted::{shift_is_nonneg, shift_sub, DifferenceMonomial, Shift};

/// Find (μ, σ) with β = μ·(σ∘α), σ ≥ 0, if any exist.
///
/// Only shifts that align α's highest-ranked variable with some variable of β
/// can work, so those are the only candidates tried. Among admissible shifts
/// the lexicographically smallest is returned, which keeps the result
/// deterministic when several alignments succeed.
pub fn divides(
    alpha: &DifferenceMonomial,
    beta: &DifferenceMonomial,
) -> Option<(DifferenceMonomial, Shift)> {
    if alpha.is_one() {
        return Some((beta.clone(), (0, 0, 0)));
    }
    let (anchor, anchor_exp) = alpha.factors().next_back().expect("nonempty");
    let mut best: Option<(DifferenceMonomial, Shift)> = None;
    for (w, w_exp) in beta.factors() {
        if w.indet != anchor.indet || w_exp < anchor_exp {
            continue;
        }
        let sigma = shift_sub(w.shift, anchor.shift);
        if !shift_is_nonneg(sigma) {
            continue;
        }
        let Some(mu) = beta.try_div(&alpha.shifted(sigma)) else {
            continue;
        };
        if best.as_ref().is_none_or(|(_, s)| sigma < *s) {
            best = Some((mu, sigma));
        }
    }
    best
}

/// S-polynomial of p and q together with the construction that produced it:
/// poly = m1·(σ1∘p)/lc(p) − m2·(σ2∘q)/lc(q).
#[derive(Debug, Clone)]
pub struct SPoly {
    pub m1: DifferenceMonomial,
    pub s1: Shift,
    pub m2: DifferenceMonomial,
    pub s2: Shift,
    pub poly: DifferencePolynomial,
}

/// Least common difference-multiple construction. Candidate matchings are
/// the unshifted pair σ1 = σ2 = 0 (the only one when the leading monomials
/// share no indeterminate) plus, for every pair (w, w') of like-named
/// variables from the two leading monomials, the alignment of w and w' at
/// their componentwise-max shift. Either way min(σ1, σ2) = 0 componentwise,
/// and γ = lcm(σ1∘lm(p), σ2∘lm(q)) makes the cofactors coprime. Candidates
/// whose γ is properly divisible (up to shift) by another candidate's γ are
/// not least common multiples and are dropped; among the survivors the
/// lexicographically smallest (σ1, σ2) wins, which is the componentwise
/// minimum whenever one exists. Candidates that would subtract a shifted
/// copy of p from the identical shifted copy are skipped, so a polynomial
/// whose leading monomial holds a single variable has no S-polynomial with
/// itself.
pub fn spoly_parts(p: &DifferencePolynomial, q: &DifferencePolynomial) -> Option<SPoly> {
    let lm_p = p.leading_monomial()?;
    let lm_q = q.leading_monomial()?;
    let same = p == q;
    let mut shift_pairs = vec![((0, 0, 0), (0, 0, 0))];
    for (w, _) in lm_p.factors() {
        for (w2, _) in lm_q.factors() {
            if w.indet != w2.indet {
                continue;
            }
            let target = (
                w.shift.0.max(w2.shift.0),
                w.shift.1.max(w2.shift.1),
                w.shift.2.max(w2.shift.2),
            );
            shift_pairs.push((shift_sub(target, w.shift), shift_sub(target, w2.shift)));
        }
    }
    let mut candidates = Vec::new();
    for (s1, s2) in shift_pairs {
        let gamma = lm_p.shifted(s1).lcm(&lm_q.shifted(s2));
        let m1 = gamma.try_div(&lm_p.shifted(s1)).expect("lcm divisible");
        let m2 = gamma.try_div(&lm_q.shifted(s2)).expect("lcm divisible");
        if same && s1 == s2 && m1 == m2 {
            continue;
        }
        candidates.push((gamma, SPolyShape { m1, s1, m2, s2 }));
    }
    let gammas: Vec<DifferenceMonomial> = candidates.iter().map(|(g, _)| g.clone()).collect();
    let SPolyShape { m1, s1, m2, s2 } = candidates
        .into_iter()
        .filter(|(g, _)| {
            !gammas
                .iter()
                .any(|g2| g2 != g && divides(g2, g).is_some())
        })
        .min_by_key(|(_, shape)| (shape.s1, shape.s2))?
        .1;
    let left = p
        .shifted(s1)
        .mul_monomial(&m1)
        .scale(&p.leading_coefficient().expect("nonzero").inverse());
    let right = q
        .shifted(s2)
        .mul_monomial(&m2)
        .scale(&q.leading_coefficient().expect("nonzero").inverse());
    Some(SPoly {
        m1,
        s1,
        m2,
        s2,
        poly: left.sub(&right),
    })
}

struct SPolyShape {
    m1: DifferenceMonomial,
    s1: Shift,
    m2: DifferenceMonomial,
    s2: Shift,
}

pub fn spoly(p: &DifferencePolynomial, q: &DifferencePolynomial) -> Option<DifferencePolynomial> {
    spoly_parts(p, q).map(|s| s.poly)
}

/// One elimination performed during reduction: the monomial under attack was
/// `coefficient · mu · (sigma ∘ lm(basis[g_index]))`.
#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub g_index: usize,
    pub mu: DifferenceMonomial,
    pub sigma: Shift,
    pub coefficient: ParamRational,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub remainder: DifferencePolynomial,
    pub steps: Vec<ReductionStep>,
}

impl Reduction {
    /// Rebuild the input: remainder + Σ c·μ·(σ∘g).
    pub fn reconstruct(&self, basis: &[DifferencePolynomial]) -> DifferencePolynomial {
        let mut acc = self.remainder.clone();
        for step in &self.steps {
            let part = basis[step.g_index]
                .shifted(step.sigma)
                .mul_monomial(&step.mu)
                .scale(&step.coefficient);
            acc = acc.add(&part);
        }
        acc
    }
}

const REDUCTION_STEP_CAP: usize = 200_000;

/// Full normal form of f modulo the basis: no monomial of the remainder is
/// divisible (up to shift) by any leading monomial of the basis. Monomials
/// are processed largest-first; an eliminated monomial only ever spawns
/// strictly smaller ones, so the loop terminates — the cap is a tripwire for
/// bugs, not a tuning knob.
pub fn normal_form(f: &DifferencePolynomial, basis: &[DifferencePolynomial]) -> Reduction {
    let leads: Vec<(&DifferenceMonomial, &ParamRational)> = basis
        .iter()
        .map(|g| g.leading().expect("basis polynomials must be nonzero"))
        .collect();
    let mut work = f.clone();
    let mut remainder = DifferencePolynomial::zero();
    let mut steps = Vec::new();
    let mut budget = REDUCTION_STEP_CAP;
    while let Some((m, c)) = work.leading() {
        assert!(budget > 0, "normal form exceeded {REDUCTION_STEP_CAP} steps");
        budget -= 1;
        let m = m.clone();
        let c = c.clone();
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, (lm, _))| divides(lm, &m).map(|(mu, sigma)| (i, mu, sigma)));
        match hit {
            Some((i, mu, sigma)) => {
                let coefficient = c.div(leads[i].1);
                let part = basis[i]
                    .shifted(sigma)
                    .mul_monomial(&mu)
                    .scale(&coefficient);
                work = work.sub(&part);
                steps.push(ReductionStep {
                    g_index: i,
                    mu,
                    sigma,
                    coefficient,
                });
            }
            None => {
                // Irreducible: park it. Everything still in `work` is smaller,
                // so this monomial can never reappear.
                work.insert_add(m.clone(), c.neg());
                remainder.insert_add(m, c);
            }
        }
    }
    Reduction { remainder, steps }
}
