//! Ring and ranking axioms for the differential polynomial side.

use consistency_analyzer::{Axis, DifferentialMonomial, DifferentialPolynomial, JetVar};
use difference_algebra::{Indet, ParamRational};
use proptest::prelude::*;

fn jet_var_strategy() -> impl Strategy<Value = JetVar> {
    (
        prop_oneof![Just(Indet::U), Just(Indet::V), Just(Indet::P)],
        0u32..3,
        0u32..3,
        0u32..2,
    )
        .prop_map(|(indet, a, b, c)| JetVar::new(indet, (a, b, c)))
}

fn monomial_strategy() -> impl Strategy<Value = DifferentialMonomial> {
    proptest::collection::vec((jet_var_strategy(), 1u32..3), 0..3).prop_map(|factors| {
        factors
            .into_iter()
            .fold(DifferentialMonomial::one(), |acc, (v, e)| {
                acc.mul(&DifferentialMonomial::power(v, e))
            })
    })
}

fn polynomial_strategy() -> impl Strategy<Value = DifferentialPolynomial> {
    proptest::collection::vec((monomial_strategy(), -3i64..=3), 0..4).prop_map(|terms| {
        let mut p = DifferentialPolynomial::zero();
        for (m, c) in terms {
            p.insert_add(m, ParamRational::from_integer(c));
        }
        p
    })
}

fn axis_strategy() -> impl Strategy<Value = Axis> {
    prop_oneof![Just(Axis::X), Just(Axis::Y), Just(Axis::T)]
}

proptest! {
    #[test]
    fn total_derivative_satisfies_leibniz(
        f in polynomial_strategy(),
        g in polynomial_strategy(),
        axis in axis_strategy(),
    ) {
        let lhs = f.mul(&g).total_derivative(axis);
        let rhs = f
            .total_derivative(axis)
            .mul(&g)
            .add(&f.mul(&g.total_derivative(axis)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn total_derivatives_commute(
        f in polynomial_strategy(),
        a in axis_strategy(),
        b in axis_strategy(),
    ) {
        let ab = f.total_derivative(a).total_derivative(b);
        let ba = f.total_derivative(b).total_derivative(a);
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn ranking_is_preserved_by_derivation(
        v in jet_var_strategy(),
        w in jet_var_strategy(),
        axis in axis_strategy(),
    ) {
        prop_assert_eq!(v.cmp(&w), v.derived(axis).cmp(&w.derived(axis)));
    }

    #[test]
    fn derivatives_rank_above_the_variable(
        v in jet_var_strategy(),
        axis in axis_strategy(),
    ) {
        prop_assert!(v < v.derived(axis));
    }

    #[test]
    fn monomial_order_is_multiplicative(
        a in monomial_strategy(),
        b in monomial_strategy(),
        c in monomial_strategy(),
    ) {
        prop_assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
        prop_assert!(DifferentialMonomial::one() <= a);
    }

    #[test]
    fn multiplication_distributes(
        f in polynomial_strategy(),
        g in polynomial_strategy(),
        h in polynomial_strategy(),
    ) {
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
    }
}

#[test]
fn ranking_puts_time_derivatives_on_top() {
    use Indet::{P, U, V};
    let u_t = JetVar::new(U, (0, 0, 1));
    let p_xxxx = JetVar::new(P, (4, 0, 0));
    assert!(u_t > p_xxxx, "any t-derivative outranks any spatial one");

    let p_xy = JetVar::new(P, (1, 1, 0));
    let u_xy = JetVar::new(U, (1, 1, 0));
    let v_xy = JetVar::new(V, (1, 1, 0));
    assert!(p_xy > u_xy && u_xy > v_xy, "p above u above v at equal order");

    let u_xx = JetVar::new(U, (2, 0, 0));
    let u_yy = JetVar::new(U, (0, 2, 0));
    assert!(u_xx > u_yy, "x-order breaks the remaining ties");
}

#[test]
fn display_spells_out_derivatives() {
    let v = JetVar::new(Indet::U, (2, 1, 0));
    assert_eq!(v.to_string(), "u_xxy");
    assert_eq!(JetVar::base(Indet::P).to_string(), "p");

    let m = DifferentialMonomial::power(v, 2).mul(&DifferentialMonomial::var(JetVar::base(
        Indet::V,
    )));
    assert_eq!(m.to_string(), "u_xxy^2*v");
    assert_eq!(DifferentialPolynomial::zero().to_string(), "0");
}

#[test]
fn derive_matches_repeated_total_derivatives() {
    let u = DifferentialPolynomial::var(JetVar::base(Indet::U));
    let p = u.mul(&u);
    let direct = p.derive((2, 0, 0));
    let stepwise = p.total_derivative(Axis::X).total_derivative(Axis::X);
    assert_eq!(direct, stepwise);
    // (u²)_xx = 2 u u_xx + 2 u_x²
    assert_eq!(direct.num_terms(), 2);
    assert_eq!(direct.order(), 2);
}

#[test]
fn eval_agrees_with_symbolic_arithmetic() {
    use Indet::U;
    // f = u·u_x + u_x² at u = 3, u_x = 2: 3·2 + 4 = 10.
    let u = DifferentialPolynomial::var(JetVar::base(U));
    let u_x = DifferentialPolynomial::var(JetVar::new(U, (1, 0, 0)));
    let f = u.mul(&u_x).add(&u_x.mul(&u_x));
    let got = f.eval_with(100.0, &mut |v| match v.deriv {
        (0, 0, 0) => 3.0,
        (1, 0, 0) => 2.0,
        _ => 0.0,
    });
    assert_eq!(got, 10.0);
}
