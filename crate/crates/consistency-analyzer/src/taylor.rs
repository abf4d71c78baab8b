//! Taylor expansion of difference polynomials about a grid node.
//!
//! Every shifted variable `u(i1,i2,i3)` is replaced by its truncated series
//! Σ (i1·h)^a (i2·h)^b (i3·τ)^c / (a! b! c!) · u_(a,b,c), products are
//! multiplied out exactly, and the result is collected by powers of (h, τ).
//! The continuous limit of a difference polynomial is the (h⁰, τ⁰)
//! component; it exists when no negative power survives the cancellation.
//!
//! Coefficients of the input may carry grid powers (1/2h, 1/τ, …). Each one
//! is split into a function of Re times a signed (h, τ) monomial, which just
//! offsets the bigrade of the term it multiplies. Components are kept up to
//! the total grade that the per-variable truncation makes exact, and every
//! expansion is recomputed at K+1 as a defensive check that the retained
//! part is truncation-independent.

use crate::jet::{DifferentialPolynomial, JetVar};
use difference_algebra::{DifferencePolynomial, ParamRational, Poly3, ShiftedVar, Var3};
use num::{BigInt, BigRational, One};
use std::collections::BTreeMap;
use thiserror::Error;

/// (h power, τ power) of one expansion component.
pub type Grade = (i32, i32);

#[derive(Debug, Error)]
pub enum TaylorError {
    #[error("truncation order {given} is below the required minimum {required}")]
    TruncationTooSmall { required: u32, given: u32 },
    #[error("coefficient {0} is not a function of Re times a power of h and τ")]
    UnsupportedCoefficient(String),
    #[error("retained components changed when recomputed at K+1 (K = {k})")]
    TruncationUnstable { k: u32 },
}

/// Exact bigraded expansion, trustworthy up to total grade `trusted`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub components: BTreeMap<Grade, DifferentialPolynomial>,
    pub truncation: u32,
    pub trusted: i32,
}

impl Expansion {
    pub fn component(&self, g: Grade) -> DifferentialPolynomial {
        self.components.get(&g).cloned().unwrap_or_default()
    }
}

/// Outcome of [`taylor_limit`].
#[derive(Debug, Clone)]
pub struct LimitResult {
    /// The (h⁰, τ⁰) component.
    pub limit: DifferentialPolynomial,
    /// True iff no component with a negative h or τ power survives.
    pub exists: bool,
    /// The lowest surviving negative-power component, if any.
    pub offending: Option<(Grade, DifferentialPolynomial)>,
    /// The nonzero component of smallest total grade (the limit of the
    /// polynomial after scaling away a pure grid-power factor).
    pub principal: DifferentialPolynomial,
    pub principal_grade: Option<Grade>,
    pub expansion: Expansion,
}

/// Largest shift magnitude appearing in `f`.
pub fn max_shift(f: &DifferencePolynomial) -> i32 {
    f.terms().map(|(m, _)| m.max_abs_shift()).max().unwrap_or(0)
}

/// Default truncation order: well past the naive minimum, because the
/// obstruction analysis needs trustworthy fourth-order components.
pub fn default_truncation(f: &DifferencePolynomial) -> u32 {
    max_shift(f) as u32 + 4
}

fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n as i64 {
        acc *= BigInt::from(k);
    }
    acc
}

fn int_pow(base: i64, e: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= BigInt::from(base);
    }
    acc
}

fn rational_coefficient(c: BigRational) -> ParamRational {
    ParamRational::new(Poly3::constant(c), Poly3::one())
}

/// Split a coefficient into parts (function of Re, h power, τ power).
/// Fails when the denominator mixes grid variables non-monomially.
fn decompose_coefficient(c: &ParamRational) -> Result<Vec<(ParamRational, i32, i32)>, TaylorError> {
    let den = c.denominator();
    let den_mono = den.monomial_content();
    let den_core = den
        .divide_exact(&Poly3::term(den_mono, BigRational::one()))
        .expect("monomial content divides");
    if den_core.contains(Var3::H) || den_core.contains(Var3::Tau) {
        return Err(TaylorError::UnsupportedCoefficient(c.to_string()));
    }
    let den_re = den_core.mul(&Poly3::var(Var3::Re, den_mono.get(Var3::Re)));
    let h_off = -(den_mono.get(Var3::H) as i32);
    let tau_off = -(den_mono.get(Var3::Tau) as i32);

    let mut parts: BTreeMap<(i32, i32), Poly3> = BTreeMap::new();
    for (mono, q) in c.numerator().terms() {
        let grade = (
            mono.get(Var3::H) as i32 + h_off,
            mono.get(Var3::Tau) as i32 + tau_off,
        );
        let re_term = Poly3::term(
            difference_algebra::Mono3 {
                re: mono.get(Var3::Re),
                h: 0,
                tau: 0,
            },
            q.clone(),
        );
        let slot = parts.entry(grade).or_insert_with(Poly3::zero);
        *slot = slot.add(&re_term);
    }
    Ok(parts
        .into_iter()
        .filter(|(_, num)| !num.is_zero())
        .map(|(g, num)| (ParamRational::new(num, den_re.clone()), g.0, g.1))
        .collect())
}

type Series = BTreeMap<Grade, DifferentialPolynomial>;

/// Truncated Taylor series of one shifted variable, collected by bigrade.
fn expand_var(v: &ShiftedVar, k: u32) -> Series {
    let (i1, i2, i3) = v.shift;
    let mut out = Series::new();
    for a in 0..=k {
        if i1 == 0 && a > 0 {
            break;
        }
        for b in 0..=(k - a) {
            if i2 == 0 && b > 0 {
                break;
            }
            for c in 0..=(k - a - b) {
                if i3 == 0 && c > 0 {
                    break;
                }
                let num = int_pow(i1 as i64, a) * int_pow(i2 as i64, b) * int_pow(i3 as i64, c);
                let den = factorial(a) * factorial(b) * factorial(c);
                let coeff = BigRational::new(num, den);
                let grade = ((a + b) as i32, c as i32);
                let jet = JetVar::new(v.indet, (a, b, c));
                out.entry(grade)
                    .or_insert_with(DifferentialPolynomial::zero)
                    .insert_add(
                        crate::jet::DifferentialMonomial::var(jet),
                        rational_coefficient(coeff),
                    );
            }
        }
    }
    out
}

fn series_mul(a: &Series, b: &Series, budget: i32) -> Series {
    let mut out = Series::new();
    for (ga, pa) in a {
        for (gb, pb) in b {
            let g = (ga.0 + gb.0, ga.1 + gb.1);
            if g.0 + g.1 > budget {
                continue;
            }
            let prod = pa.mul(pb);
            match out.entry(g) {
                std::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert(prod);
                }
                std::collections::btree_map::Entry::Occupied(mut slot) => {
                    *slot.get_mut() = slot.get().add(&prod);
                }
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Exact bigraded expansion of `f`, truncating each variable's series at
/// total derivative order `k`.
pub fn taylor_expansion(f: &DifferencePolynomial, k: u32) -> Result<Expansion, TaylorError> {
    let required = max_shift(f) as u32 + 2;
    if k < required {
        return Err(TaylorError::TruncationTooSmall { required, given: k });
    }
    let budget = k as i32;

    let mut components = Series::new();
    let mut trusted = budget;
    for (mono, coef) in f.terms() {
        let parts = decompose_coefficient(coef)?;
        let mut acc = Series::new();
        acc.insert((0, 0), DifferentialPolynomial::one());
        for (v, e) in mono.factors() {
            let base = expand_var(v, k);
            for _ in 0..*e {
                acc = series_mul(&acc, &base, budget);
            }
        }
        for (re_part, gh, gt) in &parts {
            trusted = trusted.min(budget + gh + gt);
            for (g, poly) in &acc {
                let shifted = (g.0 + gh, g.1 + gt);
                let scaled = poly.scale(re_part);
                match components.entry(shifted) {
                    std::collections::btree_map::Entry::Vacant(slot) => {
                        slot.insert(scaled);
                    }
                    std::collections::btree_map::Entry::Occupied(mut slot) => {
                        *slot.get_mut() = slot.get().add(&scaled);
                    }
                }
            }
        }
    }
    components.retain(|g, p| g.0 + g.1 <= trusted && !p.is_zero());
    Ok(Expansion {
        components,
        truncation: k,
        trusted,
    })
}

/// Continuous limit of `f` per the expansion at truncation `k`, with the
/// automatic K+1 re-verification of the retained components.
pub fn taylor_limit(f: &DifferencePolynomial, k: u32) -> Result<LimitResult, TaylorError> {
    let expansion = taylor_expansion(f, k)?;
    let recheck = taylor_expansion(f, k + 1)?;
    let shared = expansion.trusted.min(recheck.trusted);
    let grades: std::collections::BTreeSet<Grade> = expansion
        .components
        .keys()
        .chain(recheck.components.keys())
        .copied()
        .filter(|g| g.0 + g.1 <= shared)
        .collect();
    for g in grades {
        if expansion.component(g) != recheck.component(g) {
            return Err(TaylorError::TruncationUnstable { k });
        }
    }

    let offending = expansion
        .components
        .iter()
        .filter(|(g, _)| g.0 < 0 || g.1 < 0)
        .map(|(g, p)| (*g, p.clone()))
        .next();
    let principal = expansion
        .components
        .iter()
        .min_by_key(|(g, _)| (g.0 + g.1, g.0, g.1))
        .map(|(g, p)| (*g, p.clone()));
    Ok(LimitResult {
        limit: expansion.component((0, 0)),
        exists: offending.is_none(),
        offending,
        principal: principal.as_ref().map(|(_, p)| p.clone()).unwrap_or_default(),
        principal_grade: principal.map(|(g, _)| g),
        expansion,
    })
}

/// [`taylor_limit`] at the default truncation for `f`.
pub fn taylor_limit_default(f: &DifferencePolynomial) -> Result<LimitResult, TaylorError> {
    taylor_limit(f, default_truncation(f))
}
