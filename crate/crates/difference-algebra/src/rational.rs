//! The exact coefficient field ℚ(Re, h, tau): quotients of [`Poly3`]s kept
//! canonical (gcd-reduced, denominator monic), so structural equality is
//! mathematical equality.

use crate::poly3::{gcd, Mono3, Poly3, Var3};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::One;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamRational {
    num: Poly3,
    den: Poly3,
}

impl ParamRational {
    /// Build `num/den` in canonical form. Panics on a zero denominator.
    pub fn new(num: Poly3, den: Poly3) -> ParamRational {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return ParamRational {
                num: Poly3::zero(),
                den: Poly3::one(),
            };
        }
        let g = gcd(&num, &den);
        let mut num = num.divide_exact(&g).expect("gcd divides numerator");
        let mut den = den.divide_exact(&g).expect("gcd divides denominator");
        // pin the unit: denominator monic under the monomial ordering
        let lc = den.leading_coefficient();
        let inv = BigRational::one() / lc;
        num = num.scale(&inv);
        den = den.scale(&inv);
        ParamRational { num, den }
    }

    pub fn zero() -> ParamRational {
        ParamRational {
            num: Poly3::zero(),
            den: Poly3::one(),
        }
    }

    pub fn one() -> ParamRational {
        ParamRational {
            num: Poly3::one(),
            den: Poly3::one(),
        }
    }

    pub fn from_integer(n: i64) -> ParamRational {
        ParamRational {
            num: Poly3::from_integer(n),
            den: Poly3::one(),
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> ParamRational {
        assert!(d != 0);
        ParamRational::new(Poly3::from_integer(n), Poly3::from_integer(d))
    }

    /// num/den · Re^re · h^h · tau^tau with signed exponents.
    pub fn parameter_term(n: i64, d: i64, re: i32, h: i32, tau: i32) -> ParamRational {
        let split = |e: i32| -> (u32, u32) {
            if e >= 0 {
                (e as u32, 0)
            } else {
                (0, (-e) as u32)
            }
        };
        let (re_n, re_d) = split(re);
        let (h_n, h_d) = split(h);
        let (tau_n, tau_d) = split(tau);
        let num = Poly3::term(
            Mono3 { re: re_n, h: h_n, tau: tau_n },
            BigRational::new(BigInt::from(n), BigInt::from(d)),
        );
        let den = Poly3::term(
            Mono3 { re: re_d, h: h_d, tau: tau_d },
            BigRational::one(),
        );
        ParamRational::new(num, den)
    }

    pub fn var(v: Var3) -> ParamRational {
        ParamRational {
            num: Poly3::var(v, 1),
            den: Poly3::one(),
        }
    }

    pub fn numerator(&self) -> &Poly3 {
        &self.num
    }

    pub fn denominator(&self) -> &Poly3 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn add(&self, other: &ParamRational) -> ParamRational {
        ParamRational::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> ParamRational {
        ParamRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &ParamRational) -> ParamRational {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ParamRational) -> ParamRational {
        ParamRational::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inverse(&self) -> ParamRational {
        assert!(!self.is_zero(), "inverse of zero");
        ParamRational::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &ParamRational) -> ParamRational {
        self.mul(&other.inverse())
    }

    /// Free of h and tau (a rational function of Re alone).
    pub fn is_re_only(&self) -> bool {
        !self.num.contains(Var3::H)
            && !self.num.contains(Var3::Tau)
            && !self.den.contains(Var3::H)
            && !self.den.contains(Var3::Tau)
    }

    /// Split into `(c, a, b)` with `self = c · h^a · tau^b` and `c` free of
    /// h and tau. Exists iff both exponents are uniform across numerator
    /// and denominator terms — true throughout the consistency pipeline.
    pub fn split_grid_powers(&self) -> Option<(ParamRational, i32, i32)> {
        if self.is_zero() {
            return Some((ParamRational::zero(), 0, 0));
        }
        let hn = self.num.uniform_degree(Var3::H)? as i32;
        let hd = self.den.uniform_degree(Var3::H)? as i32;
        let tn = self.num.uniform_degree(Var3::Tau)? as i32;
        let td = self.den.uniform_degree(Var3::Tau)? as i32;
        let strip = |p: &Poly3| -> Poly3 {
            let m = p.monomial_content();
            let grid_only = Mono3 { re: 0, h: m.h, tau: m.tau };
            p.divide_exact(&Poly3::term(grid_only, BigRational::one()))
                .expect("monomial content divides")
        };
        let c = ParamRational::new(strip(&self.num), strip(&self.den));
        debug_assert!(c.is_re_only());
        Some((c, hn - hd, tn - td))
    }

    /// Multiply by h^a · tau^b with signed exponents.
    pub fn mul_grid_powers(&self, a: i32, b: i32) -> ParamRational {
        self.mul(&ParamRational::parameter_term(1, 1, 0, a, b))
    }

    pub fn eval(&self, re: f64, h: f64, tau: f64) -> f64 {
        self.num.eval(re, h, tau) / self.den.eval(re, h, tau)
    }
}

impl fmt::Display for ParamRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.num_terms() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            let num = if self.num.num_terms() > 1 {
                format!("({})", self.num)
            } else {
                format!("{}", self.num)
            };
            let den = if self.den.num_terms() > 1 {
                format!("({})", self.den)
            } else {
                format!("{}", self.den)
            };
            write!(f, "{num}/{den}")
        }
    }
}
