//! The incompressible flow system as differential polynomials.
//!
//! f1 = u_x + v_y                                   (continuity)
//! f2 = u_t + u·u_x + v·u_y + p_x − (u_xx + u_yy)/Re
//! f3 = v_t + u·v_x + v·v_y + p_y − (v_xx + v_yy)/Re
//! f4 = u_x² + 2·v_x·u_y + v_y² + p_xx + p_yy        (pressure Poisson)

use crate::jet::{DifferentialMonomial, DifferentialPolynomial, JetVar};
use difference_algebra::{Indet, ParamRational};

fn jv(indet: Indet, a: u32, b: u32, c: u32) -> JetVar {
    JetVar::new(indet, (a, b, c))
}

fn mono1(v: JetVar) -> DifferentialMonomial {
    DifferentialMonomial::var(v)
}

fn mono2(v: JetVar, w: JetVar) -> DifferentialMonomial {
    DifferentialMonomial::var(v).mul(&DifferentialMonomial::var(w))
}

/// 1-based accessor for f1..f4.
pub fn flow_equation(i: usize) -> DifferentialPolynomial {
    use Indet::{P, U, V};
    let one = ParamRational::one;
    let nu = || ParamRational::parameter_term(-1, 1, -1, 0, 0);
    let mut f = DifferentialPolynomial::zero();
    match i {
        1 => {
            f.insert_add(mono1(jv(U, 1, 0, 0)), one());
            f.insert_add(mono1(jv(V, 0, 1, 0)), one());
        }
        2 => {
            f.insert_add(mono1(jv(U, 0, 0, 1)), one());
            f.insert_add(mono2(JetVar::base(U), jv(U, 1, 0, 0)), one());
            f.insert_add(mono2(JetVar::base(V), jv(U, 0, 1, 0)), one());
            f.insert_add(mono1(jv(P, 1, 0, 0)), one());
            f.insert_add(mono1(jv(U, 2, 0, 0)), nu());
            f.insert_add(mono1(jv(U, 0, 2, 0)), nu());
        }
        3 => {
            f.insert_add(mono1(jv(V, 0, 0, 1)), one());
            f.insert_add(mono2(JetVar::base(U), jv(V, 1, 0, 0)), one());
            f.insert_add(mono2(JetVar::base(V), jv(V, 0, 1, 0)), one());
            f.insert_add(mono1(jv(P, 0, 1, 0)), one());
            f.insert_add(mono1(jv(V, 2, 0, 0)), nu());
            f.insert_add(mono1(jv(V, 0, 2, 0)), nu());
        }
        4 => {
            f.insert_add(DifferentialMonomial::power(jv(U, 1, 0, 0), 2), one());
            f.insert_add(mono2(jv(V, 1, 0, 0), jv(U, 0, 1, 0)), ParamRational::from_integer(2));
            f.insert_add(DifferentialMonomial::power(jv(V, 0, 1, 0), 2), one());
            f.insert_add(mono1(jv(P, 2, 0, 0)), one());
            f.insert_add(mono1(jv(P, 0, 2, 0)), one());
        }
        _ => panic!("flow equation index {i} out of range 1..=4"),
    }
    f
}

pub fn flow_system() -> [DifferentialPolynomial; 4] {
    std::array::from_fn(|i| flow_equation(i + 1))
}

/// The fourth-order PDE the compact schemes' obstruction is measured
/// against: 2v·v_yyyy + 8v_y·v_yyy + 6v_yy² + 2u·u_xxxx + 8u_x·u_xxx
/// + 6u_xx² + p_yyyy + p_xxxx.
pub fn obstruction_reference() -> DifferentialPolynomial {
    use Indet::{P, U, V};
    let c = ParamRational::from_integer;
    let mut f = DifferentialPolynomial::zero();
    f.insert_add(mono2(JetVar::base(V), jv(V, 0, 4, 0)), c(2));
    f.insert_add(mono2(jv(V, 0, 1, 0), jv(V, 0, 3, 0)), c(8));
    f.insert_add(DifferentialMonomial::power(jv(V, 0, 2, 0), 2), c(6));
    f.insert_add(mono2(JetVar::base(U), jv(U, 4, 0, 0)), c(2));
    f.insert_add(mono2(jv(U, 1, 0, 0), jv(U, 3, 0, 0)), c(8));
    f.insert_add(DifferentialMonomial::power(jv(U, 2, 0, 0), 2), c(6));
    f.insert_add(mono1(jv(P, 0, 4, 0)), c(1));
    f.insert_add(mono1(jv(P, 4, 0, 0)), c(1));
    f
}
