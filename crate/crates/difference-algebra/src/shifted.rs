//! Shifted indeterminates and difference monomials.
//!
//! A difference indeterminate is one of the grid functions u, v, p acted on
//! by integer powers of the shift operators (σ_x, σ_y, σ_t). The ranking
//! (the total order on the indeterminates themselves) compares, in turn:
//! the time shift, the total space shift, the function (p ≻ u ≻ v), and the
//! x-shift — a block order with σ_t dominating, orderly within blocks.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub type Shift = (i32, i32, i32);

pub fn shift_add(a: Shift, b: Shift) -> Shift {
    (a.0 + b.0, a.1 + b.1, a.2 + b.2)
}

pub fn shift_sub(a: Shift, b: Shift) -> Shift {
    (a.0 - b.0, a.1 - b.1, a.2 - b.2)
}

pub fn shift_is_nonneg(s: Shift) -> bool {
    s.0 >= 0 && s.1 >= 0 && s.2 >= 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Indet {
    U,
    V,
    P,
}

impl Indet {
    pub const ALL: [Indet; 3] = [Indet::U, Indet::V, Indet::P];

    /// p ≻ u ≻ v.
    pub fn rank(&self) -> u8 {
        match self {
            Indet::P => 3,
            Indet::U => 2,
            Indet::V => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Indet::U => "u",
            Indet::V => "v",
            Indet::P => "p",
        }
    }
}

/// σ_x^{i1} σ_y^{i2} σ_t^{i3} ∘ indet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShiftedVar {
    pub indet: Indet,
    pub shift: Shift,
}

impl ShiftedVar {
    pub fn new(indet: Indet, shift: Shift) -> ShiftedVar {
        ShiftedVar { indet, shift }
    }

    pub fn shifted(&self, sigma: Shift) -> ShiftedVar {
        ShiftedVar {
            indet: self.indet,
            shift: shift_add(self.shift, sigma),
        }
    }

    /// Ranking key: (time shift, total space shift, function rank, x shift).
    fn key(&self) -> (i32, i64, u8, i32) {
        let (i1, i2, i3) = self.shift;
        (i3, i1 as i64 + i2 as i64, self.indet.rank(), i1)
    }
}

impl Ord for ShiftedVar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for ShiftedVar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ShiftedVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i1, i2, i3) = self.shift;
        write!(f, "{}({i1},{i2},{i3})", self.indet.name())
    }
}

/// Product of shifted indeterminates with positive integer exponents; the
/// empty product is 1.
///
/// `Ord` is the admissible order used everywhere in this crate: compare
/// lexicographically by descending variable ranking, so the highest-ranked
/// variable whose exponents differ decides. Polynomials keyed by this order
/// get their leading term for free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DifferenceMonomial {
    factors: BTreeMap<ShiftedVar, u32>,
}

impl Ord for DifferenceMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut xs = self.factors.iter().rev();
        let mut ys = other.factors.iter().rev();
        loop {
            match (xs.next(), ys.next()) {
                (None, None) => return Ordering::Equal,
                // A variable with a positive exponent beats its absence.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb).then(ea.cmp(eb)) {
                    Ordering::Equal => continue,
                    unequal => return unequal,
                },
            }
        }
    }
}

impl PartialOrd for DifferenceMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl DifferenceMonomial {
    pub fn one() -> DifferenceMonomial {
        DifferenceMonomial::default()
    }

    pub fn var(v: ShiftedVar) -> DifferenceMonomial {
        DifferenceMonomial::power(v, 1)
    }

    pub fn power(v: ShiftedVar, e: u32) -> DifferenceMonomial {
        let mut factors = BTreeMap::new();
        if e > 0 {
            factors.insert(v, e);
        }
        DifferenceMonomial { factors }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn exponent(&self, v: &ShiftedVar) -> u32 {
        self.factors.get(v).copied().unwrap_or(0)
    }

    /// Factors in ascending ranking order.
    pub fn factors(&self) -> impl DoubleEndedIterator<Item = (&ShiftedVar, &u32)> {
        self.factors.iter()
    }

    pub fn num_vars(&self) -> usize {
        self.factors.len()
    }

    pub fn mul(&self, other: &DifferenceMonomial) -> DifferenceMonomial {
        let mut out = self.clone();
        for (v, e) in &other.factors {
            *out.factors.entry(*v).or_insert(0) += e;
        }
        out
    }

    /// Exact variable-wise division.
    pub fn try_div(&self, other: &DifferenceMonomial) -> Option<DifferenceMonomial> {
        let mut out = self.clone();
        for (v, e) in &other.factors {
            let have = out.factors.get_mut(v)?;
            if *have < *e {
                return None;
            }
            *have -= e;
            if *have == 0 {
                out.factors.remove(v);
            }
        }
        Some(out)
    }

    /// Variable-wise least common multiple.
    pub fn lcm(&self, other: &DifferenceMonomial) -> DifferenceMonomial {
        let mut out = self.clone();
        for (v, e) in &other.factors {
            let have = out.factors.entry(*v).or_insert(0);
            *have = (*have).max(*e);
        }
        out
    }

    /// Apply σ to every factor; shifting 1 yields 1.
    pub fn shifted(&self, sigma: Shift) -> DifferenceMonomial {
        DifferenceMonomial {
            factors: self
                .factors
                .iter()
                .map(|(v, e)| (v.shifted(sigma), *e))
                .collect(),
        }
    }

    /// Componentwise minimum of all factor shifts; `None` for 1.
    pub fn min_shift(&self) -> Option<Shift> {
        let mut it = self.factors.keys();
        let first = it.next()?.shift;
        Some(it.fold(first, |acc, v| {
            (
                acc.0.min(v.shift.0),
                acc.1.min(v.shift.1),
                acc.2.min(v.shift.2),
            )
        }))
    }

    pub fn max_abs_shift(&self) -> i32 {
        self.factors
            .keys()
            .map(|v| v.shift.0.abs().max(v.shift.1.abs()).max(v.shift.2.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn is_normalized(&self) -> bool {
        self.factors.keys().all(|v| shift_is_nonneg(v.shift))
    }
}

impl fmt::Display for DifferenceMonomial {
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
