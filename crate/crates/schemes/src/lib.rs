//! The three finite difference approximations of the 2D incompressible
//! Navier–Stokes system as executable stencils.
//!
//! Each scheme is four difference equations e1..e4 over the grid functions
//! (u, v, p):
//!
//! * e1 — discrete continuity (central first differences),
//! * e2, e3 — momentum; explicit in time, so they can be solved for the
//!   interior velocities at the next level,
//! * e4 — discrete pressure Poisson equation, assembled into an m²×m²
//!   linear system with exact out-of-interior values moved to the rhs.
//!
//! Scheme 1 discretizes the divergence-form convection (u², uv products at
//! neighbor nodes) and uses wide, spacing-2h second differences, so its
//! stencil is 5×5. Schemes 2 and 3 use the non-divergence convection
//! u·∂ₓu + v·∂ᵧu with compact spacing-h second differences on a 3×3
//! stencil; the two are listed separately (their source presents them as
//! distinct derivations) but their displayed equations coincide term by
//! term, and they are kept as separate identifiers so a corrected variant
//! can be substituted without API changes.
//!
//! Every equation is a plain sum of [`StencilTerm`]s; the same tables drive
//! numeric evaluation here and the exact difference-polynomial encoding in
//! the algebra crate, so there is a single transcription to audit. One
//! transcription note: e3 of scheme 1 is reproduced with a "+" joining its
//! two convective fractions, matching the structure of e2 (the source
//! display drops the operator between the fractions; without it the
//! equation has no continuous limit).

use exact_solution::{Component, ExactSolution};
use grid_core::{fill_exact, Field, GridSpec, Region, State};
use pressure_solver::SparseSystem;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeId {
    Fda1,
    Fda2,
    Fda3,
}

impl SchemeId {
    pub const ALL: [SchemeId; 3] = [SchemeId::Fda1, SchemeId::Fda2, SchemeId::Fda3];

    pub fn number(&self) -> u8 {
        match self {
            SchemeId::Fda1 => 1,
            SchemeId::Fda2 => 2,
            SchemeId::Fda3 => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<SchemeId> {
        match n {
            1 => Some(SchemeId::Fda1),
            2 => Some(SchemeId::Fda2),
            3 => Some(SchemeId::Fda3),
            _ => None,
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FDA {}", self.number())
    }
}

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error("{scheme} produced a non-finite value at step {level}, node ({j}, {k})")]
    Instability {
        scheme: SchemeId,
        level: usize,
        j: isize,
        k: isize,
    },
}

/// Exact rational coefficient `num/den · h^pow_h · tau^pow_tau · re^pow_re`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coef {
    pub num: i64,
    pub den: i64,
    pub pow_h: i32,
    pub pow_tau: i32,
    pub pow_re: i32,
}

impl Coef {
    pub fn value(&self, h: f64, tau: f64, re: f64) -> f64 {
        (self.num as f64 / self.den as f64)
            * h.powi(self.pow_h)
            * tau.powi(self.pow_tau)
            * re.powi(self.pow_re)
    }
}

/// One summand of a difference equation: coefficient times a product of
/// field values at node offsets. `factors` indexes into `offsets`, so a
/// squared factor references the same offset twice.
#[derive(Debug, Clone)]
pub struct StencilTerm {
    pub coef: Coef,
    pub offsets: Vec<(i32, i32, i32)>,
    pub factors: Vec<(Component, usize)>,
}

impl StencilTerm {
    /// True when the term is `coef · p` at a single offset (the linear
    /// pressure part that forms the matrix of the pressure system).
    pub fn is_linear_pressure(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].0 == Component::P
    }

    /// True when the term references time level n+1.
    pub fn uses_next_level(&self) -> bool {
        self.offsets.iter().any(|o| o.2 != 0)
    }
}

/// The four equations of one scheme.
#[derive(Debug, Clone)]
pub struct Equations {
    pub e1: Vec<StencilTerm>,
    pub e2: Vec<StencilTerm>,
    pub e3: Vec<StencilTerm>,
    pub e4: Vec<StencilTerm>,
}

impl Equations {
    pub fn by_index(&self, i: usize) -> &[StencilTerm] {
        match i {
            1 => &self.e1,
            2 => &self.e2,
            3 => &self.e3,
            4 => &self.e4,
            _ => panic!("equation index {i} out of range 1..=4"),
        }
    }
}

// ── table construction ─────────────────────────────────────────────────────

fn term(
    num: i64,
    den: i64,
    (pow_h, pow_tau, pow_re): (i32, i32, i32),
    factors: &[(Component, (i32, i32, i32))],
) -> StencilTerm {
    let mut offsets: Vec<(i32, i32, i32)> = Vec::new();
    let mut refs = Vec::new();
    for &(c, off) in factors {
        let idx = offsets.iter().position(|&o| o == off).unwrap_or_else(|| {
            offsets.push(off);
            offsets.len() - 1
        });
        refs.push((c, idx));
    }
    StencilTerm {
        coef: Coef {
            num,
            den,
            pow_h,
            pow_tau,
            pow_re,
        },
        offsets,
        factors: refs,
    }
}

use Component::{P, U, V};

const INV_2H: (i32, i32, i32) = (-1, 0, 0);
const INV_TAU: (i32, i32, i32) = (0, -1, 0);
const INV_H2: (i32, i32, i32) = (-2, 0, 0);
const INV_H2_RE: (i32, i32, i32) = (-2, 0, -1);

/// Central first differences of u in x plus v in y — shared by all schemes.
fn continuity() -> Vec<StencilTerm> {
    vec![
        term(1, 2, INV_2H, &[(U, (1, 0, 0))]),
        term(-1, 2, INV_2H, &[(U, (-1, 0, 0))]),
        term(1, 2, INV_2H, &[(V, (0, 1, 0))]),
        term(-1, 2, INV_2H, &[(V, (0, -1, 0))]),
    ]
}

/// Forward time difference of `c` at the base node.
fn time_difference(c: Component) -> [StencilTerm; 2] {
    [
        term(1, 1, INV_TAU, &[(c, (0, 0, 1))]),
        term(-1, 1, INV_TAU, &[(c, (0, 0, 0))]),
    ]
}

/// -1/Re times the wide (spacing 2h) five-point Laplacian of `c`.
fn wide_viscous(c: Component) -> [StencilTerm; 6] {
    [
        term(-1, 4, INV_H2_RE, &[(c, (2, 0, 0))]),
        term(2, 4, INV_H2_RE, &[(c, (0, 0, 0))]),
        term(-1, 4, INV_H2_RE, &[(c, (-2, 0, 0))]),
        term(-1, 4, INV_H2_RE, &[(c, (0, 2, 0))]),
        term(2, 4, INV_H2_RE, &[(c, (0, 0, 0))]),
        term(-1, 4, INV_H2_RE, &[(c, (0, -2, 0))]),
    ]
}

/// -1/Re times the compact five-point Laplacian of `c`.
fn compact_viscous(c: Component) -> [StencilTerm; 6] {
    [
        term(-1, 1, INV_H2_RE, &[(c, (1, 0, 0))]),
        term(2, 1, INV_H2_RE, &[(c, (0, 0, 0))]),
        term(-1, 1, INV_H2_RE, &[(c, (-1, 0, 0))]),
        term(-1, 1, INV_H2_RE, &[(c, (0, 1, 0))]),
        term(2, 1, INV_H2_RE, &[(c, (0, 0, 0))]),
        term(-1, 1, INV_H2_RE, &[(c, (0, -1, 0))]),
    ]
}

/// Central pressure gradient in direction `dir` (0 = x, 1 = y).
fn pressure_gradient(dir: usize) -> [StencilTerm; 2] {
    let plus = if dir == 0 { (1, 0, 0) } else { (0, 1, 0) };
    let minus = if dir == 0 { (-1, 0, 0) } else { (0, -1, 0) };
    [
        term(1, 2, INV_2H, &[(P, plus)]),
        term(-1, 2, INV_2H, &[(P, minus)]),
    ]
}

fn fda1_equations() -> Equations {
    let mut e2: Vec<StencilTerm> = time_difference(U).into();
    // divergence-form convection: ∂x(u²) + ∂y(vu), central differences
    e2.push(term(1, 2, INV_2H, &[(U, (1, 0, 0)), (U, (1, 0, 0))]));
    e2.push(term(-1, 2, INV_2H, &[(U, (-1, 0, 0)), (U, (-1, 0, 0))]));
    e2.push(term(1, 2, INV_2H, &[(V, (0, 1, 0)), (U, (0, 1, 0))]));
    e2.push(term(-1, 2, INV_2H, &[(V, (0, -1, 0)), (U, (0, -1, 0))]));
    e2.extend(pressure_gradient(0));
    e2.extend(wide_viscous(U));

    let mut e3: Vec<StencilTerm> = time_difference(V).into();
    e3.push(term(1, 2, INV_2H, &[(U, (1, 0, 0)), (V, (1, 0, 0))]));
    e3.push(term(-1, 2, INV_2H, &[(U, (-1, 0, 0)), (V, (-1, 0, 0))]));
    e3.push(term(1, 2, INV_2H, &[(V, (0, 1, 0)), (V, (0, 1, 0))]));
    e3.push(term(-1, 2, INV_2H, &[(V, (0, -1, 0)), (V, (0, -1, 0))]));
    e3.extend(pressure_gradient(1));
    e3.extend(wide_viscous(V));

    let mut e4 = vec![
        // wide second difference of u² in x
        term(1, 4, INV_H2, &[(U, (2, 0, 0)), (U, (2, 0, 0))]),
        term(-2, 4, INV_H2, &[(U, (0, 0, 0)), (U, (0, 0, 0))]),
        term(1, 4, INV_H2, &[(U, (-2, 0, 0)), (U, (-2, 0, 0))]),
        // wide second difference of v² in y
        term(1, 4, INV_H2, &[(V, (0, 2, 0)), (V, (0, 2, 0))]),
        term(-2, 4, INV_H2, &[(V, (0, 0, 0)), (V, (0, 0, 0))]),
        term(1, 4, INV_H2, &[(V, (0, -2, 0)), (V, (0, -2, 0))]),
        // mixed 2·∂x∂y(uv) on the diagonal neighbors
        term(2, 4, INV_H2, &[(U, (1, 1, 0)), (V, (1, 1, 0))]),
        term(-2, 4, INV_H2, &[(U, (1, -1, 0)), (V, (1, -1, 0))]),
        term(-2, 4, INV_H2, &[(U, (-1, 1, 0)), (V, (-1, 1, 0))]),
        term(2, 4, INV_H2, &[(U, (-1, -1, 0)), (V, (-1, -1, 0))]),
    ];
    // wide pressure Laplacian
    for (c, axis) in [(P, 0), (P, 1)] {
        let plus = if axis == 0 { (2, 0, 0) } else { (0, 2, 0) };
        let minus = if axis == 0 { (-2, 0, 0) } else { (0, -2, 0) };
        e4.push(term(1, 4, INV_H2, &[(c, plus)]));
        e4.push(term(-2, 4, INV_H2, &[(c, (0, 0, 0))]));
        e4.push(term(1, 4, INV_H2, &[(c, minus)]));
    }

    Equations {
        e1: continuity(),
        e2,
        e3,
        e4,
    }
}

fn fda23_equations() -> Equations {
    let mut e2: Vec<StencilTerm> = time_difference(U).into();
    // non-divergence convection u·∂x u + v·∂y u with frozen center factor
    e2.push(term(1, 2, INV_2H, &[(U, (0, 0, 0)), (U, (1, 0, 0))]));
    e2.push(term(-1, 2, INV_2H, &[(U, (0, 0, 0)), (U, (-1, 0, 0))]));
    e2.push(term(1, 2, INV_2H, &[(V, (0, 0, 0)), (U, (0, 1, 0))]));
    e2.push(term(-1, 2, INV_2H, &[(V, (0, 0, 0)), (U, (0, -1, 0))]));
    e2.extend(pressure_gradient(0));
    e2.extend(compact_viscous(U));

    let mut e3: Vec<StencilTerm> = time_difference(V).into();
    e3.push(term(1, 2, INV_2H, &[(U, (0, 0, 0)), (V, (1, 0, 0))]));
    e3.push(term(-1, 2, INV_2H, &[(U, (0, 0, 0)), (V, (-1, 0, 0))]));
    e3.push(term(1, 2, INV_2H, &[(V, (0, 0, 0)), (V, (0, 1, 0))]));
    e3.push(term(-1, 2, INV_2H, &[(V, (0, 0, 0)), (V, (0, -1, 0))]));
    e3.extend(pressure_gradient(1));
    e3.extend(compact_viscous(V));

    let mut e4 = vec![
        // (central ∂x u)², expanded
        term(1, 4, INV_H2, &[(U, (1, 0, 0)), (U, (1, 0, 0))]),
        term(-2, 4, INV_H2, &[(U, (1, 0, 0)), (U, (-1, 0, 0))]),
        term(1, 4, INV_H2, &[(U, (-1, 0, 0)), (U, (-1, 0, 0))]),
        // 2·(central ∂x v)(central ∂y u), expanded
        term(2, 4, INV_H2, &[(V, (1, 0, 0)), (U, (0, 1, 0))]),
        term(-2, 4, INV_H2, &[(V, (1, 0, 0)), (U, (0, -1, 0))]),
        term(-2, 4, INV_H2, &[(V, (-1, 0, 0)), (U, (0, 1, 0))]),
        term(2, 4, INV_H2, &[(V, (-1, 0, 0)), (U, (0, -1, 0))]),
        // (central ∂y v)², expanded
        term(1, 4, INV_H2, &[(V, (0, 1, 0)), (V, (0, 1, 0))]),
        term(-2, 4, INV_H2, &[(V, (0, 1, 0)), (V, (0, -1, 0))]),
        term(1, 4, INV_H2, &[(V, (0, -1, 0)), (V, (0, -1, 0))]),
    ];
    // compact pressure Laplacian
    for axis in [0, 1] {
        let plus = if axis == 0 { (1, 0, 0) } else { (0, 1, 0) };
        let minus = if axis == 0 { (-1, 0, 0) } else { (0, -1, 0) };
        e4.push(term(1, 1, INV_H2, &[(P, plus)]));
        e4.push(term(-2, 1, INV_H2, &[(P, (0, 0, 0))]));
        e4.push(term(1, 1, INV_H2, &[(P, minus)]));
    }

    Equations {
        e1: continuity(),
        e2,
        e3,
        e4,
    }
}

/// The cached equation tables of a scheme.
pub fn equations(id: SchemeId) -> &'static Equations {
    static FDA1: OnceLock<Equations> = OnceLock::new();
    static FDA2: OnceLock<Equations> = OnceLock::new();
    static FDA3: OnceLock<Equations> = OnceLock::new();
    match id {
        SchemeId::Fda1 => FDA1.get_or_init(fda1_equations),
        SchemeId::Fda2 => FDA2.get_or_init(fda23_equations),
        SchemeId::Fda3 => FDA3.get_or_init(fda23_equations),
    }
}

// ── evaluation ─────────────────────────────────────────────────────────────

/// Field views needed to evaluate stencil terms at one node: level n always,
/// level n+1 velocities where an equation references them.
#[derive(Clone, Copy)]
pub struct EvalCtx<'a> {
    pub spec: &'a GridSpec,
    pub u: &'a Field,
    pub v: &'a Field,
    pub p: &'a Field,
    pub u_next: Option<&'a Field>,
    pub v_next: Option<&'a Field>,
}

impl<'a> EvalCtx<'a> {
    pub fn of_state(state: &'a State) -> Self {
        EvalCtx {
            spec: &state.spec,
            u: &state.u,
            v: &state.v,
            p: &state.p,
            u_next: None,
            v_next: None,
        }
    }

    #[inline]
    fn factor(&self, which: Component, j: isize, k: isize, dn: i32) -> f64 {
        match (which, dn) {
            (Component::U, 0) => self.u.get(j, k),
            (Component::V, 0) => self.v.get(j, k),
            (Component::P, 0) => self.p.get(j, k),
            (Component::U, 1) => self.u_next.expect("next-level u required").get(j, k),
            (Component::V, 1) => self.v_next.expect("next-level v required").get(j, k),
            _ => panic!("no field for component {which:?} at level offset {dn}"),
        }
    }
}

/// Evaluate a sum of stencil terms at interior node (j, k).
pub fn eval_terms(terms: &[StencilTerm], ctx: &EvalCtx, j: isize, k: isize) -> f64 {
    let spec = ctx.spec;
    let mut acc = 0.0;
    for t in terms {
        let mut prod = t.coef.value(spec.h, spec.tau, spec.re);
        for &(which, oi) in &t.factors {
            let (dj, dk, dn) = t.offsets[oi];
            prod *= ctx.factor(which, j + dj as isize, k + dk as isize, dn);
        }
        acc += prod;
    }
    acc
}

/// Discrete continuity residual e1 at interior node (j, k) of `state`.
pub fn residual_e1(scheme: SchemeId, state: &State, j: isize, k: isize) -> f64 {
    debug_assert!(state.spec.is_interior(j, k));
    eval_terms(&equations(scheme).e1, &EvalCtx::of_state(state), j, k)
}

/// Max |e1| over all interior nodes.
pub fn max_continuity_residual(scheme: SchemeId, state: &State) -> f64 {
    let m = state.spec.m as isize;
    let ctx = EvalCtx::of_state(state);
    let e1 = &equations(scheme).e1;
    let mut max = 0.0f64;
    for j in 1..=m {
        for k in 1..=m {
            max = max.max(eval_terms(e1, &ctx, j, k).abs());
        }
    }
    max
}

/// Advance the interior velocities one step by solving e2 = 0, e3 = 0 for
/// the level-(n+1) values, then fill boundary and ghost entries exactly at
/// the new time. The state's own fields are untouched.
pub fn step_velocity(
    scheme: SchemeId,
    state: &State,
    sol: &ExactSolution,
) -> Result<(Field, Field), SchemeError> {
    let spec = &state.spec;
    let m = spec.m as isize;
    let eqs = equations(scheme);
    let ctx = EvalCtx::of_state(state);

    // e2 = u^{n+1}/tau + (level-n terms) = 0, so u^{n+1} = -tau · Σ level-n terms.
    let explicit: Vec<&StencilTerm> = eqs.e2.iter().filter(|t| !t.uses_next_level()).collect();
    let explicit3: Vec<&StencilTerm> = eqs.e3.iter().filter(|t| !t.uses_next_level()).collect();
    debug_assert_eq!(eqs.e2.len() - explicit.len(), 1);
    debug_assert_eq!(eqs.e3.len() - explicit3.len(), 1);

    let mut u_next = Field::zeros(spec.m);
    let mut v_next = Field::zeros(spec.m);
    for j in 1..=m {
        for k in 1..=m {
            let mut su = 0.0;
            for t in &explicit {
                let mut prod = t.coef.value(spec.h, spec.tau, spec.re);
                for &(which, oi) in &t.factors {
                    let (dj, dk, _) = t.offsets[oi];
                    prod *= ctx.factor(which, j + dj as isize, k + dk as isize, 0);
                }
                su += prod;
            }
            let mut sv = 0.0;
            for t in &explicit3 {
                let mut prod = t.coef.value(spec.h, spec.tau, spec.re);
                for &(which, oi) in &t.factors {
                    let (dj, dk, _) = t.offsets[oi];
                    prod *= ctx.factor(which, j + dj as isize, k + dk as isize, 0);
                }
                sv += prod;
            }
            let un = -spec.tau * su;
            let vn = -spec.tau * sv;
            if !un.is_finite() || !vn.is_finite() {
                return Err(SchemeError::Instability {
                    scheme,
                    level: state.level,
                    j,
                    k,
                });
            }
            u_next.set(j, k, un);
            v_next.set(j, k, vn);
        }
    }

    let t_next = spec.time_at(state.level + 1);
    fill_exact(&mut u_next, spec, sol, Component::U, t_next, Region::GhostAndBoundary);
    fill_exact(&mut v_next, spec, sol, Component::V, t_next, Region::GhostAndBoundary);
    Ok((u_next, v_next))
}

/// Assemble the pressure system from e4 = 0 over the interior: the linear
/// pressure terms with interior targets form the matrix; pressure references
/// outside the interior are evaluated with `p_bc` and moved to the rhs
/// together with all velocity terms. Row (j,k) maps to index (j-1)·m + (k-1).
pub fn assemble_pressure(
    scheme: SchemeId,
    spec: &GridSpec,
    u: &Field,
    v: &Field,
    p_bc: &dyn Fn(f64, f64) -> f64,
) -> SparseSystem {
    let m = spec.m as isize;
    let eqs = equations(scheme);
    let mut sys = SparseSystem::new(spec.m * spec.m);
    let row_of = |j: isize, k: isize| ((j - 1) * m + (k - 1)) as usize;

    for j in 1..=m {
        for k in 1..=m {
            let row = row_of(j, k);
            for t in &eqs.e4 {
                let c = t.coef.value(spec.h, spec.tau, spec.re);
                if t.is_linear_pressure() {
                    let (dj, dk, _) = t.offsets[t.factors[0].1];
                    let (tj, tk) = (j + dj as isize, k + dk as isize);
                    if spec.is_interior(tj, tk) {
                        sys.push_entry(row, row_of(tj, tk), c);
                    } else {
                        let x = tj as f64 * spec.h;
                        let y = tk as f64 * spec.h;
                        sys.add_rhs(row, -c * p_bc(x, y));
                    }
                } else {
                    let mut prod = c;
                    for &(which, oi) in &t.factors {
                        let (dj, dk, _) = t.offsets[oi];
                        let f = match which {
                            Component::U => u,
                            Component::V => v,
                            Component::P => unreachable!("nonlinear pressure term"),
                        };
                        prod *= f.get(j + dj as isize, k + dk as isize);
                    }
                    sys.add_rhs(row, -prod);
                }
            }
        }
    }
    sys
}
