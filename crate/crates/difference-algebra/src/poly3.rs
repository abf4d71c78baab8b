//! Exact multivariate polynomials over ℚ in the three parameter symbols
//! Re, h, tau — the coefficient domain underneath [`crate::ParamRational`].
//!
//! Polynomial gcd (content/primitive-part recursion with a primitive
//! pseudo-remainder sequence in the main variable) keeps rational functions
//! canonical. Inputs in this crate are small, so robustness beats asymptotic
//! cleverness throughout.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var3 {
    Re,
    H,
    Tau,
}

impl Var3 {
    pub const ALL: [Var3; 3] = [Var3::Re, Var3::H, Var3::Tau];

    fn name(&self) -> &'static str {
        match self {
            Var3::Re => "Re",
            Var3::H => "h",
            Var3::Tau => "tau",
        }
    }
}

/// Monomial Re^re · h^h · tau^tau.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono3 {
    pub re: u32,
    pub h: u32,
    pub tau: u32,
}

impl Mono3 {
    pub const ONE: Mono3 = Mono3 { re: 0, h: 0, tau: 0 };

    pub fn get(&self, v: Var3) -> u32 {
        match v {
            Var3::Re => self.re,
            Var3::H => self.h,
            Var3::Tau => self.tau,
        }
    }

    fn set(mut self, v: Var3, e: u32) -> Mono3 {
        match v {
            Var3::Re => self.re = e,
            Var3::H => self.h = e,
            Var3::Tau => self.tau = e,
        }
        self
    }

    pub fn mul(&self, other: &Mono3) -> Mono3 {
        Mono3 {
            re: self.re + other.re,
            h: self.h + other.h,
            tau: self.tau + other.tau,
        }
    }

    pub fn try_div(&self, other: &Mono3) -> Option<Mono3> {
        if self.re >= other.re && self.h >= other.h && self.tau >= other.tau {
            Some(Mono3 {
                re: self.re - other.re,
                h: self.h - other.h,
                tau: self.tau - other.tau,
            })
        } else {
            None
        }
    }

    fn gcd(&self, other: &Mono3) -> Mono3 {
        Mono3 {
            re: self.re.min(other.re),
            h: self.h.min(other.h),
            tau: self.tau.min(other.tau),
        }
    }
}

/// Polynomial in ℚ[Re, h, tau]; zero coefficients never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly3 {
    terms: BTreeMap<Mono3, BigRational>,
}

impl Poly3 {
    pub fn zero() -> Poly3 {
        Poly3::default()
    }

    pub fn one() -> Poly3 {
        Poly3::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Poly3 {
        Poly3::term(Mono3::ONE, c)
    }

    pub fn from_integer(n: i64) -> Poly3 {
        Poly3::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn term(mono: Mono3, c: BigRational) -> Poly3 {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly3 { terms }
    }

    pub fn var(v: Var3, pow: u32) -> Poly3 {
        Poly3::term(Mono3::ONE.set(v, pow), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono3::ONE)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono3, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() <= 1
    }

    /// Leading term under the plain lexicographic ordering of `Mono3`.
    pub fn leading(&self) -> Option<(&Mono3, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self, v: Var3) -> u32 {
        self.terms.keys().map(|m| m.get(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self, v: Var3) -> u32 {
        self.terms.keys().map(|m| m.get(v)).min().unwrap_or(0)
    }

    pub fn contains(&self, v: Var3) -> bool {
        self.degree(v) > 0
    }

    fn insert_add(&mut self, mono: Mono3, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly3) -> Poly3 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly3 {
        if c.is_zero() {
            return Poly3::zero();
        }
        Poly3 {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_mono(&self, mono: &Mono3) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn divide_exact(&self, d: &Poly3) -> Option<Poly3> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly3::zero();
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (*m, c.clone())
        };
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.try_div(&dm)?;
            let qc = rc / &dc;
            let t = Poly3::term(qm, qc);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    pub fn eval(&self, re: f64, h: f64, tau: f64) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let c = rational_to_f64(c);
            acc += c * re.powi(m.re as i32) * h.powi(m.h as i32) * tau.powi(m.tau as i32);
        }
        acc
    }

    /// Common monomial factor of every term.
    pub fn monomial_content(&self) -> Mono3 {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => *m,
            None => return Mono3::ONE,
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Divide out the leading rational coefficient.
    pub fn monic(&self) -> Poly3 {
        match self.leading() {
            None => Poly3::zero(),
            Some((_, c)) => {
                let inv = BigRational::one() / c;
                self.scale(&inv)
            }
        }
    }

    /// Every term has the same exponent of `v`; returns it, or `None`.
    pub fn uniform_degree(&self, v: Var3) -> Option<u32> {
        let d = self.degree(v);
        if self.min_degree(v) == d {
            Some(d)
        } else {
            None
        }
    }

    // ── gcd machinery ──────────────────────────────────────────────────────

    /// View as univariate in `v`: exponent → coefficient polynomial.
    fn decompose(&self, v: Var3) -> BTreeMap<u32, Poly3> {
        let mut out: BTreeMap<u32, Poly3> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.get(v);
            out.entry(e)
                .or_insert_with(Poly3::zero)
                .insert_add(m.set(v, 0), c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Content of the univariate view in `v`: gcd of its coefficients.
    fn content_in(&self, v: Var3) -> Poly3 {
        let mut acc = Poly3::zero();
        for p in self.decompose(v).values() {
            acc = gcd(&acc, p);
            if acc.is_one() {
                break;
            }
        }
        acc
    }
}

fn rational_to_f64(c: &BigRational) -> f64 {
    let n = c.numer();
    let d = c.denom();
    // convert via string to keep magnitudes beyond i64 usable in tests
    let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

/// Pseudo-remainder of `f` by `g` in the variable `v` (both nonzero,
/// deg_v(f) ≥ deg_v(g) not required).
fn prem(f: &Poly3, g: &Poly3, v: Var3) -> Poly3 {
    let dg = g.degree(v);
    let g_parts = g.decompose(v);
    let lc_g = g_parts[&dg].clone();
    let mut r = f.clone();
    while !r.is_zero() {
        let dr = r.degree(v);
        if dr < dg {
            break;
        }
        let r_parts = r.decompose(v);
        let lc_r = r_parts[&dr].clone();
        // r ← lc_g·r − lc_r·v^{dr−dg}·g
        let shift = Poly3::var(v, dr - dg);
        r = r.mul(&lc_g).sub(&lc_r.mul(&shift).mul(g));
    }
    r
}

/// Greatest common divisor, normalized monic. gcd(0,0) = 0.
pub fn gcd(a: &Poly3, b: &Poly3) -> Poly3 {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }

    // split off monomial content: gcd(mₐ·A, m_b·B) = gcd(mₐ, m_b)·gcd(A, B)
    let shared = Poly3::term(
        a.monomial_content().gcd(&b.monomial_content()),
        BigRational::one(),
    );
    let unit = |m: Mono3| Poly3::term(m, BigRational::one());
    let pa = a
        .divide_exact(&unit(a.monomial_content()))
        .expect("monomial content divides");
    let pb = b
        .divide_exact(&unit(b.monomial_content()))
        .expect("monomial content divides");
    // a single term reduces to a constant here: nothing beyond the content
    if pa.is_monomial() || pb.is_monomial() {
        return shared;
    }
    // mutual divisibility: the smaller operand is the gcd
    if pb.divide_exact(&pa).is_some() {
        return shared.mul(&pa).monic();
    }
    if pa.divide_exact(&pb).is_some() {
        return shared.mul(&pb).monic();
    }

    // main variable: shared symbol with the smallest combined degree keeps
    // the remainder sequence short. A divisor can only name symbols both
    // operands name, so with none shared the gcd is the content alone.
    let v = match Var3::ALL
        .iter()
        .copied()
        .filter(|&v| pa.contains(v) && pb.contains(v))
        .min_by_key(|&v| pa.degree(v) + pb.degree(v))
    {
        Some(v) => v,
        None => return shared,
    };

    let cont_a = pa.content_in(v);
    let cont_b = pb.content_in(v);
    let pp_a = pa.divide_exact(&cont_a).expect("content divides");
    let pp_b = pb.divide_exact(&cont_b).expect("content divides");
    let c = shared.mul(&gcd(&cont_a, &cont_b));

    // primitive pseudo-remainder sequence in v
    let (mut f, mut g) = if pp_a.degree(v) >= pp_b.degree(v) {
        (pp_a, pp_b)
    } else {
        (pp_b, pp_a)
    };
    loop {
        let r = prem(&f, &g, v);
        if r.is_zero() {
            let pp_g = g.divide_exact(&g.content_in(v)).expect("content divides");
            return c.mul(&pp_g).monic();
        }
        if r.degree(v) == 0 {
            // coprime in v; only the content survives
            return c.monic();
        }
        let r_primitive = r.divide_exact(&r.content_in(v)).expect("content divides");
        f = g;
        g = r_primitive;
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut piece = String::new();
            for v in Var3::ALL {
                let e = m.get(v);
                if e == 1 {
                    piece.push_str(&format!("*{}", v.name()));
                } else if e > 1 {
                    piece.push_str(&format!("*{}^{}", v.name(), e));
                }
            }
            if first {
                write!(f, "{c}{piece}")?;
                first = false;
            } else if c < &BigRational::zero() {
                write!(f, " - {}{piece}", -c)?;
            } else {
                write!(f, " + {c}{piece}")?;
            }
        }
        Ok(())
    }
}
