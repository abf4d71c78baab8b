//! The admissible monomial order used throughout the crate.
//!
//! Monomials compare lexicographically with respect to the ranking on the
//! shifted indeterminates: the highest-ranked variable whose exponents
//! differ decides. This is only a well-order on monomials in nonnegatively
//! shifted variables, so `compare` refuses unnormalized input instead of
//! silently producing something self-consistent but meaningless.

use std::cmp::Ordering;

use thiserror::Error;

use crate::shifted::DifferenceMonomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("monomial {0} carries a negative shift; normalize before comparing")]
    Unnormalized(String),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AdmissibleOrder;

impl AdmissibleOrder {
    pub fn compare(
        &self,
        a: &DifferenceMonomial,
        b: &DifferenceMonomial,
    ) -> Result<Ordering, OrderError> {
        for m in [a, b] {
            if !m.is_normalized() {
                return Err(OrderError::Unnormalized(m.to_string()));
            }
        }
        Ok(self.cmp_unchecked(a, b))
    }

    /// Comparison without the normalization check; `DifferenceMonomial`'s
    /// intrinsic `Ord` is exactly this order.
    pub fn cmp_unchecked(&self, a: &DifferenceMonomial, b: &DifferenceMonomial) -> Ordering {
        a.cmp(b)
    }
}
