//! Time-stepping driver, error metrics, and parameter sweeps.
//!
//! A run advances the explicit velocity update and the pressure solve in
//! lockstep from exact initial data, then measures the maximal relative
//! deviation from the closed-form solution at the final time,
//!
//! ```text
//! e_g = max over interior nodes of |g_num - g| / (1 + |g|),   g ∈ {u, v, p},
//! ```
//!
//! together with the maximal interior continuity residual. Sweeps evaluate a
//! list of configurations (rows run in parallel, output order preserved) and
//! emit one CSV row per successful run under a fixed schema so the error and
//! residual curves, as well as the error heatmaps, regenerate from artifacts
//! alone.

use exact_solution::{Component, ExactSolution};
use grid_core::{
    fill_exact, make_grid, make_grid_with_tau, make_sampling_grid, Field, GridError, GridSpec,
    Region, StabilityAdvisories, State,
};
use pressure_solver::SolveError;
use rayon::prelude::*;
use schemes::{assemble_pressure, max_continuity_residual, step_velocity, SchemeError, SchemeId};
use std::io::Write;
use std::time::Instant;
use thiserror::Error;

/// One experiment: a scheme, a grid resolution, and the time-stepping
/// parameters. `tau_override` replaces the derived step tau = t_f/n_steps;
/// the final time is then re-derived as n_steps·tau.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub scheme: SchemeId,
    pub m: usize,
    pub n_steps: usize,
    pub t_f: f64,
    pub re: f64,
    pub tau_override: Option<f64>,
}

impl ExperimentConfig {
    pub fn new(scheme: SchemeId, m: usize, n_steps: usize, t_f: f64, re: f64) -> Self {
        ExperimentConfig {
            scheme,
            m,
            n_steps,
            t_f,
            re,
            tau_override: None,
        }
    }

    pub fn grid(&self) -> Result<GridSpec, GridError> {
        match (self.n_steps, self.tau_override) {
            (0, _) => make_sampling_grid(self.m, self.re),
            (_, Some(tau)) => make_grid_with_tau(self.m, self.n_steps, tau, self.re),
            (_, None) => make_grid(self.m, self.n_steps, self.t_f, self.re),
        }
    }
}

/// Pressure-solve statistics for one time level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverStep {
    pub level: usize,
    pub iterations: usize,
    pub residual: f64,
}

/// Outcome of one run: maximal relative errors at the final time, the
/// interior continuity residual, wall time, and per-step solver statistics.
#[derive(Debug, Clone)]
pub struct ErrorReport {
    pub scheme: SchemeId,
    pub m: usize,
    pub n_steps: usize,
    pub tau: f64,
    pub re: f64,
    pub t_f: f64,
    pub err_u: f64,
    pub err_v: f64,
    pub err_p: f64,
    pub res_e1: f64,
    pub runtime_s: f64,
    pub solver_steps: Vec<SolverStep>,
    pub advisories: StabilityAdvisories,
}

impl ErrorReport {
    pub fn max_error(&self) -> f64 {
        self.err_u.max(self.err_v).max(self.err_p)
    }

    pub fn solver_max_residual(&self) -> f64 {
        self.solver_steps
            .iter()
            .map(|s| s.residual)
            .fold(0.0, f64::max)
    }

    pub fn solver_max_iterations(&self) -> usize {
        self.solver_steps.iter().map(|s| s.iterations).max().unwrap_or(0)
    }

    /// The numeric payload, ignoring wall time (which never reproduces).
    pub fn same_numbers(&self, other: &ErrorReport) -> bool {
        self.scheme == other.scheme
            && self.m == other.m
            && self.n_steps == other.n_steps
            && self.tau == other.tau
            && self.re == other.re
            && self.t_f == other.t_f
            && self.err_u == other.err_u
            && self.err_v == other.err_v
            && self.err_p == other.err_p
            && self.res_e1 == other.res_e1
            && self.solver_steps == other.solver_steps
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("pressure solve failed at step {level}: {source}")]
    Solver { level: usize, source: SolveError },
}

/// Relative-error tolerance of the conjugate-gradient pressure solve.
pub const SOLVER_TOL: f64 = 1e-12;

fn solver_max_iter(m: usize) -> usize {
    10 * m * m
}

/// Advance `state` one time level: explicit velocity update, exact
/// boundary fill, pressure assembly and solve (warm-started from the
/// current pressure), exact pressure boundary fill.
fn advance(
    scheme: SchemeId,
    state: &State,
    sol: &ExactSolution,
) -> Result<(State, SolverStep), RunError> {
    let spec = state.spec;
    let m = spec.m;
    let (u_next, v_next) = step_velocity(scheme, state, sol)?;

    let t_next = spec.time_at(state.level + 1);
    let mut sys = assemble_pressure(scheme, &spec, &u_next, &v_next, &|x, y| sol.p(x, y, t_next));
    // CG needs positive definiteness; the assembled Laplacian rows are
    // negative definite, and the h² factor keeps entries O(1).
    sys.scale(-spec.h * spec.h);

    let guess: Vec<f64> = (1..=m as isize)
        .flat_map(|j| (1..=m as isize).map(move |k| (j, k)))
        .map(|(j, k)| state.p.get(j, k))
        .collect();
    let out = sys
        .solve_with_guess(SOLVER_TOL, solver_max_iter(m), Some(&guess))
        .map_err(|source| RunError::Solver {
            level: state.level + 1,
            source,
        })?;

    let mut p_next = Field::zeros(m);
    for j in 1..=m as isize {
        for k in 1..=m as isize {
            p_next.set(j, k, out.x[((j - 1) * m as isize + (k - 1)) as usize]);
        }
    }
    fill_exact(&mut p_next, &spec, sol, Component::P, t_next, Region::GhostAndBoundary);

    let next = State {
        spec,
        u: u_next,
        v: v_next,
        p: p_next,
        level: state.level + 1,
    };
    let step = SolverStep {
        level: state.level + 1,
        iterations: out.iterations,
        residual: out.residual,
    };
    Ok((next, step))
}

/// Max over interior nodes of |field - g(x,y,t)| / (1 + |g(x,y,t)|).
pub fn relative_error_max(
    field: &Field,
    spec: &GridSpec,
    sol: &ExactSolution,
    which: Component,
    t: f64,
) -> f64 {
    let m = spec.m as isize;
    let mut worst = 0.0f64;
    for j in 1..=m {
        for k in 1..=m {
            let x = j as f64 * spec.h;
            let y = k as f64 * spec.h;
            let exact = sol.eval(which, x, y, t);
            worst = worst.max((field.get(j, k) - exact).abs() / (1.0 + exact.abs()));
        }
    }
    worst
}

/// Run one experiment and return the final state along with the report.
pub fn run_with_state(config: &ExperimentConfig) -> Result<(ErrorReport, State), RunError> {
    let spec = config.grid()?;
    let sol = ExactSolution::new(config.re);
    let mut state = State::initial(spec, &sol);
    let mut solver_steps = Vec::with_capacity(config.n_steps);

    let clock = Instant::now();
    for _ in 0..config.n_steps {
        let (next, step) = advance(config.scheme, &state, &sol)?;
        state = next;
        solver_steps.push(step);
    }
    let runtime_s = clock.elapsed().as_secs_f64();

    let t_f = spec.t_f;
    let report = ErrorReport {
        scheme: config.scheme,
        m: config.m,
        n_steps: config.n_steps,
        tau: spec.tau,
        re: config.re,
        t_f,
        err_u: relative_error_max(&state.u, &spec, &sol, Component::U, t_f),
        err_v: relative_error_max(&state.v, &spec, &sol, Component::V, t_f),
        err_p: relative_error_max(&state.p, &spec, &sol, Component::P, t_f),
        res_e1: max_continuity_residual(config.scheme, &state),
        runtime_s,
        solver_steps,
        advisories: spec.advisories,
    };
    Ok((report, state))
}

/// Run one experiment.
pub fn run(config: &ExperimentConfig) -> Result<ErrorReport, RunError> {
    run_with_state(config).map(|(report, _)| report)
}

/// Run every configuration, in parallel, preserving input order. Failed
/// rows are kept as errors so a sweep survives individual blow-ups.
pub fn sweep(configs: &[ExperimentConfig]) -> Vec<Result<ErrorReport, RunError>> {
    configs.par_iter().map(run).collect()
}

/// Pointwise relative error fields |g_num - g| / (1 + |g|) for u, v, p at
/// the state's own time, over the full ghosted index range.
pub fn error_field(state: &State, sol: &ExactSolution) -> [Field; 3] {
    let spec = &state.spec;
    let t = state.time();
    let mut out = [Field::zeros(spec.m), Field::zeros(spec.m), Field::zeros(spec.m)];
    for (which, numeric, target) in [
        (Component::U, &state.u, 0usize),
        (Component::V, &state.v, 1),
        (Component::P, &state.p, 2),
    ] {
        let (lo, hi) = numeric.index_range();
        for j in lo..=hi {
            for k in lo..=hi {
                let x = j as f64 * spec.h;
                let y = k as f64 * spec.h;
                let exact = sol.eval(which, x, y, t);
                let e = (numeric.get(j, k) - exact).abs() / (1.0 + exact.abs());
                out[target].set(j, k, e);
            }
        }
    }
    out
}

// ── CSV emission ───────────────────────────────────────────────────────────

pub const CSV_HEADER: &str =
    "fda,m,n_steps,tau,re,tf,err_u,err_v,err_p,res_e1,runtime_s,solver_max_residual";

/// Write the fixed-schema CSV: header plus one row per successful report,
/// in input order. Returns the number of rows written.
pub fn write_csv<'a, W: Write>(
    reports: impl IntoIterator<Item = &'a ErrorReport>,
    out: W,
) -> csv::Result<usize> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    let mut rows = 0;
    for r in reports {
        w.write_record(&[
            r.scheme.number().to_string(),
            r.m.to_string(),
            r.n_steps.to_string(),
            r.tau.to_string(),
            r.re.to_string(),
            r.t_f.to_string(),
            r.err_u.to_string(),
            r.err_v.to_string(),
            r.err_p.to_string(),
            r.res_e1.to_string(),
            r.runtime_s.to_string(),
            r.solver_max_residual().to_string(),
        ])?;
        rows += 1;
    }
    w.flush()?;
    Ok(rows)
}

/// Grid-valued CSV (j,k,x,y,value) over boundary and interior nodes, for
/// language-agnostic heatmap reproduction.
pub fn write_field_csv<W: Write>(field: &Field, spec: &GridSpec, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["j", "k", "x", "y", "value"])?;
    let m = spec.m as isize;
    for j in 0..=m + 1 {
        for k in 0..=m + 1 {
            w.write_record(&[
                j.to_string(),
                k.to_string(),
                (j as f64 * spec.h).to_string(),
                (k as f64 * spec.h).to_string(),
                field.get(j, k).to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Three-stop color ramp (dark violet → rose → yellow) on t ∈ [0, 1].
fn ramp(t: f64) -> (u8, u8, u8) {
    let t = t.clamp(0.0, 1.0);
    let lerp = |a: u8, b: u8, s: f64| (a as f64 + (b as f64 - a as f64) * s).round() as u8;
    let (a, b, s) = if t < 0.5 {
        ((13, 8, 135), (204, 71, 120), t * 2.0)
    } else {
        ((204, 71, 120), (240, 249, 33), (t - 0.5) * 2.0)
    };
    (lerp(a.0, b.0, s), lerp(a.1, b.1, s), lerp(a.2, b.2, s))
}

/// Minimal SVG heatmap of a field over boundary and interior nodes, scaled
/// linearly from 0 to the field's own maximum (given in the title).
pub fn write_field_svg<W: Write>(
    field: &Field,
    spec: &GridSpec,
    title: &str,
    mut out: W,
) -> std::io::Result<()> {
    let m = spec.m as isize;
    let n = (m + 2) as usize;
    let cell = 6usize;
    let margin = 20usize;
    let size = n * cell + 2 * margin;
    let mut vmax = 0.0f64;
    for j in 0..=m + 1 {
        for k in 0..=m + 1 {
            vmax = vmax.max(field.get(j, k).abs());
        }
    }
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )?;
    writeln!(out, "<title>{title} (max {vmax:.3e})</title>")?;
    writeln!(
        out,
        r#"<rect width="{size}" height="{size}" fill="white"/>"#
    )?;
    for j in 0..=m + 1 {
        for k in 0..=m + 1 {
            let t = if vmax > 0.0 { field.get(j, k).abs() / vmax } else { 0.0 };
            let (r, g, b) = ramp(t);
            // y flipped so the origin sits bottom-left like a plot
            let x = margin + j as usize * cell;
            let y = margin + (m + 1 - k) as usize * cell;
            writeln!(
                out,
                r#"<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="rgb({r},{g},{b})"/>"#
            )?;
        }
    }
    writeln!(out, "</svg>")
}

// ── figure presets ─────────────────────────────────────────────────────────

/// The preset parameter sweeps behind the four reference figures:
/// 1, 2 — all schemes, N=10, t_f=1, Re=10⁵, m ∈ {5,10,…,50} (errors
///        resp. continuity residuals over m);
/// 3    — all schemes, N=40, t_f=1, Re=100, m ∈ {10,20,…,100};
/// 4    — scheme 1 only, N=40, t_f=1, Re=100, m=100 (error heatmaps).
pub fn figure_configs(which: u8) -> Option<Vec<ExperimentConfig>> {
    let grid = |ms: &[usize], n_steps: usize, re: f64| -> Vec<ExperimentConfig> {
        let mut out = Vec::new();
        for &m in ms {
            for scheme in SchemeId::ALL {
                out.push(ExperimentConfig::new(scheme, m, n_steps, 1.0, re));
            }
        }
        out
    };
    match which {
        1 | 2 => {
            let ms: Vec<usize> = (1..=10).map(|i| 5 * i).collect();
            Some(grid(&ms, 10, 1e5))
        }
        3 => {
            let ms: Vec<usize> = (1..=10).map(|i| 10 * i).collect();
            Some(grid(&ms, 40, 100.0))
        }
        4 => Some(vec![ExperimentConfig::new(SchemeId::Fda1, 100, 40, 1.0, 100.0)]),
        _ => None,
    }
}
