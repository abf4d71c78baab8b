//! Bounded-order reduction modulo the flow system.

use consistency_analyzer::{
    differential_reduce, flow_equation, normal_form_against, obstruction_reference,
    prolonged_basis, Axis, DifferentialMonomial, DifferentialPolynomial, JetVar,
};
use difference_algebra::{Indet, ParamRational};
use proptest::prelude::*;

#[test]
fn generators_reduce_in_one_step() {
    for i in 1..=4 {
        let red = differential_reduce(&flow_equation(i), 2);
        assert!(red.remainder.is_zero(), "f{i} is in its own ideal");
        assert_eq!(red.steps.len(), 1);
    }
}

#[test]
fn prolonged_consequences_reduce_to_zero() {
    // ∂x f2 + ∂y f3 and u·∂x f1 + v·∂y f1 are both ideal members.
    let g = flow_equation(2)
        .derive((1, 0, 0))
        .add(&flow_equation(3).derive((0, 1, 0)));
    assert!(differential_reduce(&g, 4).remainder.is_zero());

    let u = DifferentialPolynomial::var(JetVar::base(Indet::U));
    let v = DifferentialPolynomial::var(JetVar::base(Indet::V));
    let h = u
        .mul(&flow_equation(1).derive((1, 0, 0)))
        .add(&v.mul(&flow_equation(1).derive((0, 1, 0))));
    assert!(differential_reduce(&h, 3).remainder.is_zero());
}

#[test]
fn cofactors_reconstruct_the_input() {
    let g = flow_equation(2)
        .total_derivative(Axis::T)
        .add(&flow_equation(4).scale(&ParamRational::from_ratio(-1, 2)));
    let bound = 4;
    let red = differential_reduce(&g, bound);
    assert!(red.remainder.is_zero());
    let basis = prolonged_basis(bound);
    assert_eq!(red.reconstruct(&basis), g);
}

#[test]
fn normal_form_is_idempotent_and_reduced() {
    let bound = 6;
    let basis = prolonged_basis(bound);
    let red = differential_reduce(&obstruction_reference(), bound);
    assert!(!red.remainder.is_zero());

    let again = normal_form_against(&red.remainder, &basis);
    assert_eq!(again.remainder, red.remainder);
    assert!(again.steps.is_empty());

    // No remainder monomial is divisible by a basis leading monomial.
    for (m, _) in red.remainder.terms() {
        for b in &basis {
            let lm = b.poly.leading_monomial().unwrap();
            assert!(m.try_div(lm).is_none());
        }
    }
}

#[test]
fn reference_pde_is_not_a_bounded_consequence() {
    let red = differential_reduce(&obstruction_reference(), 6);
    assert!(!red.remainder.is_zero());
    assert_eq!(red.reconstruct(&prolonged_basis(6)), obstruction_reference());
}

#[test]
fn basis_respects_the_order_bound() {
    let basis = prolonged_basis(4);
    // f1 is prolonged through order 3 (20 multi-indices), f2..f4 through
    // order 2 (10 each).
    assert_eq!(basis.len(), 20 + 3 * 10);
    for b in &basis {
        assert!(b.poly.order() <= 4);
        assert!(!b.poly.is_zero());
        let (a, y, t) = b.derivative;
        let own = if b.equation == 1 { 1 } else { 2 };
        assert!(a + y + t + own <= 4);
    }
}

fn jet_var_strategy() -> impl Strategy<Value = JetVar> {
    (
        prop_oneof![Just(Indet::U), Just(Indet::V), Just(Indet::P)],
        0u32..3,
        0u32..3,
        0u32..2,
    )
        .prop_map(|(indet, a, b, c)| JetVar::new(indet, (a, b, c)))
}

fn polynomial_strategy() -> impl Strategy<Value = DifferentialPolynomial> {
    proptest::collection::vec(
        (proptest::collection::vec(jet_var_strategy(), 1..3), -3i64..=3),
        0..4,
    )
    .prop_map(|terms| {
        let mut p = DifferentialPolynomial::zero();
        for (vars, c) in terms {
            let m = vars
                .into_iter()
                .fold(DifferentialMonomial::one(), |acc, v| {
                    acc.mul(&DifferentialMonomial::var(v))
                });
            p.insert_add(m, ParamRational::from_integer(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Certified division: input = remainder + Σ cofactor·basis element,
    /// the normal form is a fixed point, and no remainder monomial is still
    /// divisible by a basis leading monomial.
    #[test]
    fn reduction_reconstructs_and_is_idempotent(f in polynomial_strategy()) {
        let bound = 4;
        let basis = prolonged_basis(bound);
        let red = normal_form_against(&f, &basis);
        prop_assert_eq!(red.reconstruct(&basis), f.clone());
        let again = normal_form_against(&red.remainder, &basis);
        prop_assert_eq!(&again.remainder, &red.remainder);
        prop_assert!(again.steps.is_empty());
        for (m, _) in red.remainder.terms() {
            for b in &basis {
                prop_assert!(m.try_div(b.poly.leading_monomial().unwrap()).is_none());
            }
        }
    }

    /// Combinations of prolonged continuity cancel summand by summand: the
    /// block of f1 prolongations has pairwise distinct linear leading
    /// monomials and is searched first.
    #[test]
    fn continuity_prolongations_reduce_to_zero(
        picks in proptest::collection::vec(
            ((0u32..3, 0u32..3, 0u32..2), 1i64..=3),
            1..4,
        ),
    ) {
        let mut g = DifferentialPolynomial::zero();
        let mut top = 0;
        for ((a, b, c), coeff) in &picks {
            let mu = (*a, *b, *c);
            top = top.max(a + b + c + 1);
            g = g.add(
                &flow_equation(1)
                    .derive(mu)
                    .scale(&ParamRational::from_integer(*coeff)),
            );
        }
        if g.is_zero() {
            return Ok(());
        }
        let red = differential_reduce(&g, top.max(2));
        prop_assert!(red.remainder.is_zero());
        prop_assert!(red.steps.len() <= picks.len());
    }
}
