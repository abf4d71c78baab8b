//! Bounded-order reduction modulo the flow system.
//!
//! Membership of a differential polynomial in the ideal generated by
//! f1..f4 is tested constructively: the generators are prolonged by total
//! derivatives up to a fixed order bound and the input is brought to normal
//! form against that finite set. A zero remainder certifies membership (the
//! recorded cofactors reconstruct the input); a nonzero remainder is
//! evidence of non-membership at that bound, never an unconditional proof.

use crate::jet::{DifferentialMonomial, DifferentialPolynomial};
use crate::navier_stokes::flow_system;
use difference_algebra::ParamRational;

/// One prolonged generator: ∂^μ f_i.
#[derive(Debug, Clone)]
pub struct BasisElement {
    /// Flow equation index, 1-based.
    pub equation: usize,
    pub derivative: (u32, u32, u32),
    pub poly: DifferentialPolynomial,
}

/// Multi-indices of total order ≤ `max_total`, smallest first.
fn multi_indices(max_total: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        for a in 0..=total {
            for b in 0..=(total - a) {
                out.push((a, b, total - a - b));
            }
        }
    }
    out
}

/// f1 prolonged to order `order_bound` − 1 and f2..f4 to `order_bound` − 2,
/// so every basis element has derivative order ≤ `order_bound`.
pub fn prolonged_basis(order_bound: u32) -> Vec<BasisElement> {
    assert!(order_bound >= 2, "order bound must cover the generators");
    let mut out = Vec::new();
    for (idx, f) in flow_system().iter().enumerate() {
        let own_order = if idx == 0 { 1 } else { 2 };
        for mu in multi_indices(order_bound - own_order) {
            out.push(BasisElement {
                equation: idx + 1,
                derivative: mu,
                poly: f.derive(mu),
            });
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct DiffReductionStep {
    /// Index into the basis the reduction ran against.
    pub basis_index: usize,
    pub monomial: DifferentialMonomial,
    pub coefficient: ParamRational,
}

#[derive(Debug, Clone)]
pub struct DiffReduction {
    pub remainder: DifferentialPolynomial,
    pub steps: Vec<DiffReductionStep>,
    pub order_bound: u32,
}

impl DiffReduction {
    /// Rebuild the input as remainder + Σ coefficient·monomial·basis element.
    pub fn reconstruct(&self, basis: &[BasisElement]) -> DifferentialPolynomial {
        let mut acc = self.remainder.clone();
        for step in &self.steps {
            let g = &basis[step.basis_index].poly;
            acc = acc.add(&g.mul_monomial(&step.monomial).scale(&step.coefficient));
        }
        acc
    }
}

/// Prolongation order used when no explicit bound is requested. High enough
/// to express every limit the three schemes produce, small enough that the
/// basis stays in the low hundreds of elements.
pub const DEFAULT_ORDER_BOUND: u32 = 6;

const REDUCTION_STEP_CAP: usize = 200_000;

/// Normal form of `f` against a prolonged basis.
pub fn normal_form_against(f: &DifferentialPolynomial, basis: &[BasisElement]) -> DiffReduction {
    let leads: Vec<(&DifferentialMonomial, &ParamRational)> = basis
        .iter()
        .map(|g| g.poly.leading().expect("basis elements are nonzero"))
        .collect();
    let mut work = f.clone();
    let mut remainder = DifferentialPolynomial::zero();
    let mut steps = Vec::new();
    let mut budget = REDUCTION_STEP_CAP;
    while let Some((lm, lc)) = work.leading() {
        assert!(budget > 0, "reduction exceeded the step cap");
        budget -= 1;
        let lm = lm.clone();
        let lc = lc.clone();
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, (glm, glc))| lm.try_div(glm).map(|mu| (i, mu, *glc)));
        match hit {
            Some((i, mu, glc)) => {
                let coefficient = lc.div(glc);
                work = work.sub(
                    &basis[i]
                        .poly
                        .mul_monomial(&mu)
                        .scale(&coefficient),
                );
                steps.push(DiffReductionStep {
                    basis_index: i,
                    monomial: mu,
                    coefficient,
                });
            }
            None => {
                work = work.sub(&DifferentialPolynomial::term(lc.clone(), lm.clone()));
                remainder.insert_add(lm, lc);
            }
        }
    }
    DiffReduction {
        remainder,
        steps,
        order_bound: 0,
    }
}

/// Reduce `f` by f1..f4 and their total derivatives up to `order_bound`.
pub fn differential_reduce(f: &DifferentialPolynomial, order_bound: u32) -> DiffReduction {
    assert!(
        f.order() <= order_bound,
        "order bound {order_bound} below the input's derivative order {}",
        f.order()
    );
    let basis = prolonged_basis(order_bound);
    let mut reduction = normal_form_against(f, &basis);
    reduction.order_bound = order_bound;
    reduction
}
