//! Uniform orthogonal grid on Ω = [0,π]², scalar fields with ghost layers,
//! and the (u,v,p) state at one time level.
//!
//! The domain is discretized by the (m+2)² equispaced physical nodes
//! x_j = j·h, y_k = k·h for j,k = 0..m+1 with h = π/(m+1); the boundary
//! carries exact data and the m² nodes j,k = 1..m are the unknowns. Fields
//! additionally store one ghost ring (j,k = -1 and m+2) so that the wide
//! 5×5 stencils can be evaluated on the whole interior; compact 3×3 schemes
//! simply never read the outer ring. Ghost values, like boundary values,
//! are supplied from the exact solution.

use exact_solution::{Component, ExactSolution};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("need m >= 3 so the 5x5 stencil fits, got m = {0}")]
    TooFewNodes(usize),
    #[error("need at least one time step, got n_steps = 0")]
    NoSteps,
    #[error("invalid parameter: {0}")]
    BadParameter(&'static str),
    #[error("index ({j}, {k}, {n}) outside the ghosted grid range")]
    IndexOutOfRange { j: isize, k: isize, n: isize },
}

/// Non-fatal stability advisories derived from the usual explicit-scheme
/// heuristics; the time step is taken verbatim from the configuration, so
/// these are reported, never enforced.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StabilityAdvisories {
    /// tau > re·h²/4 (diffusive limit of the compact Laplacian).
    pub tau_exceeds_diffusive: bool,
    /// tau > h (convective limit for O(1) velocities).
    pub tau_exceeds_convective: bool,
}

impl StabilityAdvisories {
    pub fn any(&self) -> bool {
        self.tau_exceeds_diffusive || self.tau_exceeds_convective
    }
}

/// Mesh and time-stepping parameters shared by all fields of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Interior points per direction.
    pub m: usize,
    /// Spacing h = π/(m+1), identical in x and y.
    pub h: f64,
    /// Time step.
    pub tau: f64,
    /// Number of time steps N.
    pub n_steps: usize,
    /// Final time t_f = N·tau.
    pub t_f: f64,
    /// Reynolds number.
    pub re: f64,
    pub advisories: StabilityAdvisories,
}

/// Standard constructor: tau = t_f / n_steps.
pub fn make_grid(m: usize, n_steps: usize, t_f: f64, re: f64) -> Result<GridSpec, GridError> {
    if n_steps == 0 {
        return Err(GridError::NoSteps);
    }
    if !(t_f > 0.0) || !t_f.is_finite() {
        return Err(GridError::BadParameter("t_f must be positive and finite"));
    }
    make_grid_with_tau(m, n_steps, t_f / n_steps as f64, re)
}

/// Constructor for an explicit time-step override; t_f is re-derived as
/// n_steps·tau so that tau · N = t_f stays exact.
pub fn make_grid_with_tau(
    m: usize,
    n_steps: usize,
    tau: f64,
    re: f64,
) -> Result<GridSpec, GridError> {
    if m < 3 {
        return Err(GridError::TooFewNodes(m));
    }
    if n_steps == 0 {
        return Err(GridError::NoSteps);
    }
    if !(re > 0.0) || !re.is_finite() {
        return Err(GridError::BadParameter("re must be positive and finite"));
    }
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(GridError::BadParameter("tau must be positive and finite"));
    }
    let h = std::f64::consts::PI / (m + 1) as f64;
    let advisories = StabilityAdvisories {
        tau_exceeds_diffusive: tau > re * h * h / 4.0,
        tau_exceeds_convective: tau > h,
    };
    Ok(GridSpec {
        m,
        h,
        tau,
        n_steps,
        t_f: n_steps as f64 * tau,
        re,
        advisories,
    })
}

/// Degenerate zero-step spec: initial data only, final time 0. Used by the
/// harness for N = 0 sanity runs; the stepping loop never executes.
pub fn make_sampling_grid(m: usize, re: f64) -> Result<GridSpec, GridError> {
    if m < 3 {
        return Err(GridError::TooFewNodes(m));
    }
    if !(re > 0.0) || !re.is_finite() {
        return Err(GridError::BadParameter("re must be positive and finite"));
    }
    Ok(GridSpec {
        m,
        h: std::f64::consts::PI / (m + 1) as f64,
        tau: 0.0,
        n_steps: 0,
        t_f: 0.0,
        re,
        advisories: StabilityAdvisories::default(),
    })
}

impl GridSpec {
    /// Physical coordinates (j·h, k·h, n·tau) of a ghosted grid index.
    pub fn coords(&self, j: isize, k: isize, n: isize) -> Result<(f64, f64, f64), GridError> {
        let hi = self.m as isize + 2;
        if j < -1 || j > hi || k < -1 || k > hi || n < 0 {
            return Err(GridError::IndexOutOfRange { j, k, n });
        }
        Ok((j as f64 * self.h, k as f64 * self.h, n as f64 * self.tau))
    }

    /// Time of level n (also valid for the degenerate zero-step spec).
    pub fn time_at(&self, n: usize) -> f64 {
        n as f64 * self.tau
    }

    pub fn is_interior(&self, j: isize, k: isize) -> bool {
        (1..=self.m as isize).contains(&j) && (1..=self.m as isize).contains(&k)
    }
}

/// Free-function form of [`GridSpec::coords`].
pub fn coords(spec: &GridSpec, j: isize, k: isize, n: isize) -> Result<(f64, f64, f64), GridError> {
    spec.coords(j, k, n)
}

/// Which nodes a fill operation touches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Everything outside the interior 1..=m square: the physical boundary
    /// (j or k ∈ {0, m+1}) plus the ghost ring (-1, m+2).
    GhostAndBoundary,
    Everywhere,
}

/// One scalar grid function, stored over the ghosted index square
/// j,k ∈ {-1, …, m+2} in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    m: usize,
    values: Vec<f64>,
}

impl Field {
    pub fn zeros(m: usize) -> Self {
        let side = m + 4;
        Field {
            m,
            values: vec![0.0; side * side],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Lowest and highest valid index in each direction.
    pub fn index_range(&self) -> (isize, isize) {
        (-1, self.m as isize + 2)
    }

    #[inline]
    fn offset(&self, j: isize, k: isize) -> usize {
        let side = self.m + 4;
        debug_assert!(j >= -1 && j <= self.m as isize + 2, "j = {j} out of range");
        debug_assert!(k >= -1 && k <= self.m as isize + 2, "k = {k} out of range");
        (j + 1) as usize * side + (k + 1) as usize
    }

    #[inline]
    pub fn get(&self, j: isize, k: isize) -> f64 {
        self.values[self.offset(j, k)]
    }

    #[inline]
    pub fn set(&mut self, j: isize, k: isize, value: f64) {
        let o = self.offset(j, k);
        self.values[o] = value;
    }

    /// First non-finite entry, if any (instability detection).
    pub fn first_non_finite(&self) -> Option<(isize, isize)> {
        let (lo, hi) = self.index_range();
        for j in lo..=hi {
            for k in lo..=hi {
                if !self.get(j, k).is_finite() {
                    return Some((j, k));
                }
            }
        }
        None
    }

    /// Max of |self - other| over the interior 1..=m square.
    pub fn max_interior_diff(&self, other: &Field) -> f64 {
        assert_eq!(self.m, other.m);
        let mut max = 0.0f64;
        for j in 1..=self.m as isize {
            for k in 1..=self.m as isize {
                max = max.max((self.get(j, k) - other.get(j, k)).abs());
            }
        }
        max
    }
}

/// Overwrite the targeted region of `field` with exact values of `which`
/// at time `t`; the interior is untouched unless `region` is `Everywhere`.
pub fn fill_exact(
    field: &mut Field,
    spec: &GridSpec,
    sol: &ExactSolution,
    which: Component,
    t: f64,
    region: Region,
) {
    let (lo, hi) = field.index_range();
    for j in lo..=hi {
        for k in lo..=hi {
            if region == Region::GhostAndBoundary && spec.is_interior(j, k) {
                continue;
            }
            let x = j as f64 * spec.h;
            let y = k as f64 * spec.h;
            field.set(j, k, sol.eval(which, x, y, t));
        }
    }
}

/// Sample a fresh field of `which` everywhere at time `t`.
pub fn sampled_field(spec: &GridSpec, sol: &ExactSolution, which: Component, t: f64) -> Field {
    let mut f = Field::zeros(spec.m);
    fill_exact(&mut f, spec, sol, which, t, Region::Everywhere);
    f
}

/// The (u, v, p) triple at one time level.
#[derive(Debug, Clone)]
pub struct State {
    pub spec: GridSpec,
    pub u: Field,
    pub v: Field,
    pub p: Field,
    /// Time index n; the fields are meant at t = n·tau.
    pub level: usize,
}

impl State {
    /// Exact initial state at t = 0.
    pub fn initial(spec: GridSpec, sol: &ExactSolution) -> Self {
        State {
            spec,
            u: sampled_field(&spec, sol, Component::U, 0.0),
            v: sampled_field(&spec, sol, Component::V, 0.0),
            p: sampled_field(&spec, sol, Component::P, 0.0),
            level: 0,
        }
    }

    pub fn time(&self) -> f64 {
        self.spec.time_at(self.level)
    }
}
