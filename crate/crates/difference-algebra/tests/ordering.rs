//! The ranking on shifted indeterminates and its extension to monomials:
//! the block structure (time shifts dominate, then total space shift, then
//! p ≻ u ≻ v), compatibility with shifts and products, and rejection of
//! unnormalized input.

use std::cmp::Ordering;

use difference_algebra::{
    AdmissibleOrder, DifferenceMonomial, Indet, OrderError, Shift, ShiftedVar,
};
use proptest::prelude::*;

fn var(indet: Indet, shift: Shift) -> ShiftedVar {
    ShiftedVar::new(indet, shift)
}

fn indet_strategy() -> impl Strategy<Value = Indet> {
    prop::sample::select(&Indet::ALL[..])
}

fn shift_strategy() -> impl Strategy<Value = Shift> {
    (0i32..4, 0i32..4, 0i32..3)
}

fn var_strategy() -> impl Strategy<Value = ShiftedVar> {
    (indet_strategy(), shift_strategy()).prop_map(|(i, s)| var(i, s))
}

fn monomial_strategy() -> impl Strategy<Value = DifferenceMonomial> {
    prop::collection::vec((var_strategy(), 1u32..3), 0..4).prop_map(|factors| {
        factors
            .into_iter()
            .fold(DifferenceMonomial::one(), |acc, (v, e)| {
                acc.mul(&DifferenceMonomial::power(v, e))
            })
    })
}

#[test]
fn time_shifts_dominate_space_shifts() {
    // One time level up outranks any purely spatial shift.
    assert!(var(Indet::U, (0, 0, 1)) > var(Indet::U, (5, 5, 0)));
    assert!(var(Indet::V, (0, 0, 1)) > var(Indet::P, (9, 9, 0)));
}

#[test]
fn ties_break_by_total_space_shift_then_function_then_x() {
    assert!(var(Indet::U, (1, 1, 0)) > var(Indet::U, (1, 0, 0)));
    // Same block, same total: p ≻ u ≻ v.
    assert!(var(Indet::P, (1, 0, 0)) > var(Indet::U, (1, 0, 0)));
    assert!(var(Indet::U, (1, 0, 0)) > var(Indet::V, (1, 0, 0)));
    // Same function and total: larger x-shift wins.
    assert!(var(Indet::U, (1, 0, 0)) > var(Indet::U, (0, 1, 0)));
}

#[test]
fn comparing_unnormalized_monomials_is_refused() {
    let order = AdmissibleOrder;
    let good = DifferenceMonomial::var(var(Indet::U, (1, 0, 0)));
    let bad = DifferenceMonomial::var(var(Indet::U, (-1, 0, 0)));
    assert_eq!(order.compare(&good, &good), Ok(Ordering::Equal));
    assert!(matches!(
        order.compare(&good, &bad),
        Err(OrderError::Unnormalized(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Ranking axiom: applying a further nontrivial shift strictly raises a
    /// variable.
    #[test]
    fn extra_shifts_raise_the_ranking(v in var_strategy(), extra in shift_strategy()) {
        prop_assume!(extra != (0, 0, 0));
        prop_assert!(v.shifted(extra) > v);
    }

    /// The monomial order restricted to single variables is the ranking.
    #[test]
    fn order_extends_the_ranking(a in var_strategy(), b in var_strategy()) {
        let ma = DifferenceMonomial::var(a);
        let mb = DifferenceMonomial::var(b);
        prop_assert_eq!(a.cmp(&b), ma.cmp(&mb));
    }

    /// Admissibility: 1 is strictly minimal.
    #[test]
    fn one_is_the_least_monomial(m in monomial_strategy()) {
        if m.is_one() {
            prop_assert_eq!(m.cmp(&DifferenceMonomial::one()), Ordering::Equal);
        } else {
            prop_assert!(m > DifferenceMonomial::one());
        }
    }

    /// Admissibility: multiplication by a common monomial and application of
    /// a common shift both preserve strict comparisons.
    #[test]
    fn products_and_shifts_preserve_the_order(
        a in monomial_strategy(),
        b in monomial_strategy(),
        c in monomial_strategy(),
        sigma in shift_strategy(),
    ) {
        let cmp = a.cmp(&b);
        prop_assert_eq!(a.mul(&c).cmp(&b.mul(&c)), cmp);
        prop_assert_eq!(a.shifted(sigma).cmp(&b.shifted(sigma)), cmp);
    }

    /// Total order sanity on random triples.
    #[test]
    fn comparison_is_transitive_and_antisymmetric(
        a in monomial_strategy(), b in monomial_strategy(), c in monomial_strategy(),
    ) {
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        prop_assert_eq!(a.cmp(&a), Ordering::Equal);
    }
}

/// The checked comparison agrees with the intrinsic order on normalized
/// monomials.
#[test]
fn checked_compare_matches_ord() {
    let order = AdmissibleOrder;
    let a = DifferenceMonomial::var(var(Indet::U, (2, 1, 0)));
    let b = DifferenceMonomial::var(var(Indet::U, (2, 2, 1)))
        .mul(&DifferenceMonomial::var(var(Indet::V, (0, 1, 0))));
    assert_eq!(order.compare(&a, &b), Ok(Ordering::Less));
    assert_eq!(order.cmp_unchecked(&a, &b), Ordering::Less);
}
