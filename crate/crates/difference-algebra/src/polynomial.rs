//! Difference polynomials: finite sums of difference monomials with
//! coefficients in the parameter field ℚ(Re, h, τ).

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::ParamRational;
use crate::shifted::{DifferenceMonomial, Shift, ShiftedVar};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DifferencePolynomial {
    // Keyed by the admissible order, so the last entry is the leading term.
    terms: BTreeMap<DifferenceMonomial, ParamRational>,
}

impl DifferencePolynomial {
    pub fn zero() -> DifferencePolynomial {
        DifferencePolynomial::default()
    }

    pub fn one() -> DifferencePolynomial {
        DifferencePolynomial::constant(ParamRational::one())
    }

    pub fn constant(c: ParamRational) -> DifferencePolynomial {
        DifferencePolynomial::term(c, DifferenceMonomial::one())
    }

    pub fn var(v: ShiftedVar) -> DifferencePolynomial {
        DifferencePolynomial::term(ParamRational::one(), DifferenceMonomial::var(v))
    }

    pub fn term(c: ParamRational, m: DifferenceMonomial) -> DifferencePolynomial {
        let mut p = DifferencePolynomial::zero();
        p.insert_add(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending admissible order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&DifferenceMonomial, &ParamRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &DifferenceMonomial) -> ParamRational {
        self.terms.get(m).cloned().unwrap_or_else(ParamRational::zero)
    }

    pub fn insert_add(&mut self, m: DifferenceMonomial, c: ParamRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &DifferencePolynomial) -> DifferencePolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DifferencePolynomial {
        DifferencePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &DifferencePolynomial) -> DifferencePolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &DifferencePolynomial) -> DifferencePolynomial {
        let mut out = DifferencePolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &ParamRational) -> DifferencePolynomial {
        if c.is_zero() {
            return DifferencePolynomial::zero();
        }
        DifferencePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &DifferenceMonomial) -> DifferencePolynomial {
        DifferencePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Apply the shift σ to every monomial; coefficients are untouched, so
    /// this is the ring endomorphism induced by the grid translation.
    pub fn shifted(&self, sigma: Shift) -> DifferencePolynomial {
        DifferencePolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shifted(sigma), c.clone()))
                .collect(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.terms.keys().all(|m| m.is_normalized())
    }

    /// Smallest shift that makes every variable shift nonnegative, and the
    /// polynomial translated by it. Zero and already-normalized polynomials
    /// come back unchanged with shift (0,0,0).
    pub fn normalize(&self) -> (DifferencePolynomial, Shift) {
        let mut min: Option<Shift> = None;
        for m in self.terms.keys() {
            if let Some(s) = m.min_shift() {
                min = Some(match min {
                    None => s,
                    Some(acc) => (acc.0.min(s.0), acc.1.min(s.1), acc.2.min(s.2)),
                });
            }
        }
        let sigma = match min {
            Some((a, b, c)) => ((-a).max(0), (-b).max(0), (-c).max(0)),
            None => (0, 0, 0),
        };
        if sigma == (0, 0, 0) {
            (self.clone(), sigma)
        } else {
            (self.shifted(sigma), sigma)
        }
    }

    /// Leading term under the admissible order.
    pub fn leading(&self) -> Option<(&DifferenceMonomial, &ParamRational)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&DifferenceMonomial> {
        self.leading().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&ParamRational> {
        self.leading().map(|(_, c)| c)
    }

    /// Divide through by the leading coefficient; returns the monic
    /// polynomial and the coefficient taken out.
    pub fn monic(&self) -> Option<(DifferencePolynomial, ParamRational)> {
        let lc = self.leading_coefficient()?.clone();
        Some((self.scale(&lc.inverse()), lc))
    }

    /// Numeric evaluation: `value` supplies the grid-function samples.
    pub fn eval_with(
        &self,
        re: f64,
        h: f64,
        tau: f64,
        value: &mut dyn FnMut(ShiftedVar) -> f64,
    ) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut prod = c.eval(re, h, tau);
            for (v, e) in m.factors() {
                prod *= value(*v).powi(*e as i32);
            }
            acc += prod;
        }
        acc
    }
}

impl fmt::Display for DifferencePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}
