//! Jet variables and differential polynomials.
//!
//! The continuous side of the analysis lives in the differential polynomial
//! ring ℚ(Re){u, v, p}: polynomials in the partial derivatives
//! `u_(a,b,c) = ∂x^a ∂y^b ∂t^c u` and likewise for v and p. The ranking
//! mirrors the difference-side one — t-derivatives dominate, then total
//! space order, then p ≻ u ≻ v, then the x-order — and monomials compare by
//! the same descending lexicographic walk, so the two reduction engines
//! agree on what "leading" means.

use difference_algebra::{Indet, ParamRational};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// One of the three differentiation directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    T,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::T];
}

/// ∂x^a ∂y^b ∂t^c applied to one of u, v, p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JetVar {
    pub indet: Indet,
    pub deriv: (u32, u32, u32),
}

impl JetVar {
    pub fn new(indet: Indet, deriv: (u32, u32, u32)) -> JetVar {
        JetVar { indet, deriv }
    }

    /// The undifferentiated indeterminate.
    pub fn base(indet: Indet) -> JetVar {
        JetVar::new(indet, (0, 0, 0))
    }

    /// Total derivative order a + b + c.
    pub fn order(&self) -> u32 {
        self.deriv.0 + self.deriv.1 + self.deriv.2
    }

    pub fn derived(&self, axis: Axis) -> JetVar {
        let (a, b, c) = self.deriv;
        let deriv = match axis {
            Axis::X => (a + 1, b, c),
            Axis::Y => (a, b + 1, c),
            Axis::T => (a, b, c + 1),
        };
        JetVar::new(self.indet, deriv)
    }

    /// Orderly ranking key: t-order, total space order, p ≻ u ≻ v, x-order.
    fn key(&self) -> (u32, u32, u8, u32) {
        let (a, b, c) = self.deriv;
        (c, a + b, self.indet.rank(), a)
    }
}

impl Ord for JetVar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for JetVar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for JetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.indet.name())?;
        let (a, b, c) = self.deriv;
        if a + b + c > 0 {
            write!(f, "_")?;
            for _ in 0..a {
                write!(f, "x")?;
            }
            for _ in 0..b {
                write!(f, "y")?;
            }
            for _ in 0..c {
                write!(f, "t")?;
            }
        }
        Ok(())
    }
}

/// Power product of jet variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DifferentialMonomial {
    factors: BTreeMap<JetVar, u32>,
}

impl DifferentialMonomial {
    pub fn one() -> DifferentialMonomial {
        DifferentialMonomial::default()
    }

    pub fn var(v: JetVar) -> DifferentialMonomial {
        DifferentialMonomial::power(v, 1)
    }

    pub fn power(v: JetVar, e: u32) -> DifferentialMonomial {
        let mut factors = BTreeMap::new();
        if e > 0 {
            factors.insert(v, e);
        }
        DifferentialMonomial { factors }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn exponent(&self, v: &JetVar) -> u32 {
        self.factors.get(v).copied().unwrap_or(0)
    }

    /// Factors in ascending variable order.
    pub fn factors(&self) -> impl DoubleEndedIterator<Item = (&JetVar, &u32)> {
        self.factors.iter()
    }

    /// Highest derivative order of any variable in the monomial.
    pub fn order(&self) -> u32 {
        self.factors.keys().map(JetVar::order).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &DifferentialMonomial) -> DifferentialMonomial {
        let mut factors = self.factors.clone();
        for (v, e) in &other.factors {
            *factors.entry(*v).or_insert(0) += e;
        }
        DifferentialMonomial { factors }
    }

    pub fn try_div(&self, other: &DifferentialMonomial) -> Option<DifferentialMonomial> {
        let mut factors = self.factors.clone();
        for (v, e) in &other.factors {
            let have = factors.get_mut(v)?;
            if *have < *e {
                return None;
            }
            *have -= e;
            if *have == 0 {
                factors.remove(v);
            }
        }
        Some(DifferentialMonomial { factors })
    }
}

/// The admissible order: descending lexicographic comparison of the factor
/// lists, exactly as on the difference side.
impl Ord for DifferentialMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.factors.iter().rev();
        let mut b = other.factors.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => {
                    let step = va.cmp(vb).then(ea.cmp(eb));
                    if step != Ordering::Equal {
                        return step;
                    }
                }
            }
        }
    }
}

impl PartialOrd for DifferentialMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DifferentialMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.factors.iter().rev() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Differential polynomial with exact rational-function coefficients.
///
/// Coefficients are [`ParamRational`]s; everything this crate constructs
/// keeps them free of the grid spacings (functions of Re only), since the
/// continuous limit by definition contains no h or τ.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DifferentialPolynomial {
    terms: BTreeMap<DifferentialMonomial, ParamRational>,
}

impl DifferentialPolynomial {
    pub fn zero() -> DifferentialPolynomial {
        DifferentialPolynomial::default()
    }

    pub fn one() -> DifferentialPolynomial {
        DifferentialPolynomial::constant(ParamRational::one())
    }

    pub fn constant(c: ParamRational) -> DifferentialPolynomial {
        DifferentialPolynomial::term(c, DifferentialMonomial::one())
    }

    pub fn var(v: JetVar) -> DifferentialPolynomial {
        DifferentialPolynomial::term(ParamRational::one(), DifferentialMonomial::var(v))
    }

    pub fn term(c: ParamRational, m: DifferentialMonomial) -> DifferentialPolynomial {
        let mut p = DifferentialPolynomial::zero();
        p.insert_add(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order; the last one is leading.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&DifferentialMonomial, &ParamRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &DifferentialMonomial) -> ParamRational {
        self.terms.get(m).cloned().unwrap_or_else(ParamRational::zero)
    }

    pub fn insert_add(&mut self, m: DifferentialMonomial, c: ParamRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &DifferentialPolynomial) -> DifferentialPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DifferentialPolynomial {
        DifferentialPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &DifferentialPolynomial) -> DifferentialPolynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &DifferentialPolynomial) -> DifferentialPolynomial {
        let mut out = DifferentialPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &ParamRational) -> DifferentialPolynomial {
        if c.is_zero() {
            return DifferentialPolynomial::zero();
        }
        DifferentialPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &DifferentialMonomial) -> DifferentialPolynomial {
        DifferentialPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn leading(&self) -> Option<(&DifferentialMonomial, &ParamRational)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&DifferentialMonomial> {
        self.leading().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&ParamRational> {
        self.leading().map(|(_, c)| c)
    }

    /// Monic form together with the removed leading coefficient.
    pub fn monic(&self) -> Option<(DifferentialPolynomial, ParamRational)> {
        let (_, lc) = self.leading()?;
        let lc = lc.clone();
        Some((self.scale(&lc.inverse()), lc))
    }

    /// Highest derivative order appearing anywhere.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(DifferentialMonomial::order).max().unwrap_or(0)
    }

    /// True when no coefficient involves the grid spacings.
    pub fn is_re_only(&self) -> bool {
        self.terms.values().all(ParamRational::is_re_only)
    }

    /// Total derivative along one axis; coefficients are treated as
    /// constants (they depend on Re at most).
    pub fn total_derivative(&self, axis: Axis) -> DifferentialPolynomial {
        let mut out = DifferentialPolynomial::zero();
        for (m, c) in &self.terms {
            for (v, e) in m.factors() {
                let mut factors = DifferentialMonomial::power(*v, e - 1);
                for (w, k) in m.factors() {
                    if w != v {
                        factors = factors.mul(&DifferentialMonomial::power(*w, *k));
                    }
                }
                let bumped = factors.mul(&DifferentialMonomial::var(v.derived(axis)));
                out.insert_add(bumped, c.mul(&ParamRational::from_integer(*e as i64)));
            }
        }
        out
    }

    /// ∂x^a ∂y^b ∂t^c applied by repeated total derivatives.
    pub fn derive(&self, mu: (u32, u32, u32)) -> DifferentialPolynomial {
        let mut out = self.clone();
        for _ in 0..mu.0 {
            out = out.total_derivative(Axis::X);
        }
        for _ in 0..mu.1 {
            out = out.total_derivative(Axis::Y);
        }
        for _ in 0..mu.2 {
            out = out.total_derivative(Axis::T);
        }
        out
    }

    /// Numeric evaluation; coefficients must not involve h or τ.
    pub fn eval_with(&self, re: f64, value: &mut dyn FnMut(JetVar) -> f64) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            debug_assert!(c.is_re_only());
            let mut prod = c.eval(re, 1.0, 1.0);
            for (v, e) in m.factors() {
                prod *= value(*v).powi(*e as i32);
            }
            acc += prod;
        }
        acc
    }
}

impl fmt::Display for DifferentialPolynomial {
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
