//! Closed-form reference solution of the 2D incompressible Navier–Stokes
//! system on Ω = [0,π]²:
//!
//! ```text
//! u(x,y,t) = -exp(-2t/Re) cos(x) sin(y)
//! v(x,y,t) =  exp(-2t/Re) sin(x) cos(y)
//! p(x,y,t) = -exp(-4t/Re) (cos(2x) + cos(2y)) / 4
//! ```
//!
//! This decaying vortex satisfies analytically
//!
//! ```text
//! f1 = u_x + v_y                                      = 0
//! f2 = u_t + u u_x + v u_y + p_x - (u_xx + u_yy)/Re   = 0
//! f3 = v_t + u v_x + v v_y + p_y - (v_xx + v_yy)/Re   = 0
//! f4 = u_x² + 2 v_x u_y + v_y² + p_xx + p_yy          = 0
//! ```
//!
//! (f4 is the pressure Poisson equation, the divergence of the momentum
//! equations restricted to divergence-free fields). The solver crates use it
//! for initial data, boundary/ghost data and error measurement;
//! [`ExactSolution::residual_check`] doubles as a machine-precision oracle
//! for the test suites. All derivatives used there are hand-derived closed
//! forms, not numeric differentiation.

/// Which of the three unknown fields is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    U,
    V,
    P,
}

/// The reference solution, parameterized by the Reynolds number.
#[derive(Debug, Clone, Copy)]
pub struct ExactSolution {
    re: f64,
}

impl ExactSolution {
    /// `re` must be positive (the solution decays like exp(-2t/Re)).
    pub fn new(re: f64) -> Self {
        assert!(re > 0.0 && re.is_finite(), "Reynolds number must be positive");
        Self { re }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    #[inline]
    fn decay2(&self, t: f64) -> f64 {
        (-2.0 * t / self.re).exp()
    }

    #[inline]
    fn decay4(&self, t: f64) -> f64 {
        (-4.0 * t / self.re).exp()
    }

    #[inline]
    pub fn u(&self, x: f64, y: f64, t: f64) -> f64 {
        -self.decay2(t) * x.cos() * y.sin()
    }

    #[inline]
    pub fn v(&self, x: f64, y: f64, t: f64) -> f64 {
        self.decay2(t) * x.sin() * y.cos()
    }

    #[inline]
    pub fn p(&self, x: f64, y: f64, t: f64) -> f64 {
        -self.decay4(t) * ((2.0 * x).cos() + (2.0 * y).cos()) / 4.0
    }

    #[inline]
    pub fn eval(&self, which: Component, x: f64, y: f64, t: f64) -> f64 {
        match which {
            Component::U => self.u(x, y, t),
            Component::V => self.v(x, y, t),
            Component::P => self.p(x, y, t),
        }
    }

    // ── hand-derived first and second derivatives ──────────────────────────

    pub fn u_t(&self, x: f64, y: f64, t: f64) -> f64 {
        (2.0 / self.re) * self.decay2(t) * x.cos() * y.sin()
    }
    pub fn u_x(&self, x: f64, y: f64, t: f64) -> f64 {
        self.decay2(t) * x.sin() * y.sin()
    }
    pub fn u_y(&self, x: f64, y: f64, t: f64) -> f64 {
        -self.decay2(t) * x.cos() * y.cos()
    }
    pub fn u_xx(&self, x: f64, y: f64, t: f64) -> f64 {
        self.decay2(t) * x.cos() * y.sin()
    }
    pub fn u_yy(&self, x: f64, y: f64, t: f64) -> f64 {
        self.decay2(t) * x.cos() * y.sin()
    }

    pub fn v_t(&self, x: f64, y: f64, t: f64) -> f64 {
        -(2.0 / self.re) * self.decay2(t) * x.sin() * y.cos()
    }
    pub fn v_x(&self, x: f64, y: f64, t: f64) -> f64 {
        self.decay2(t) * x.cos() * y.cos()
    }
    pub fn v_y(&self, x: f64, y: f64, t: f64) -> f64 {
        -self.decay2(t) * x.sin() * y.sin()
    }
    pub fn v_xx(&self, x: f64, y: f64, t: f64) -> f64 {
        -self.decay2(t) * x.sin() * y.cos()
    }
    pub fn v_yy(&self, x: f64, y: f64, t: f64) -> f64 {
        -self.decay2(t) * x.sin() * y.cos()
    }

    pub fn p_x(&self, x: f64, _y: f64, t: f64) -> f64 {
        self.decay4(t) * (2.0 * x).sin() / 2.0
    }
    pub fn p_y(&self, _x: f64, y: f64, t: f64) -> f64 {
        self.decay4(t) * (2.0 * y).sin() / 2.0
    }
    pub fn p_xx(&self, x: f64, _y: f64, t: f64) -> f64 {
        self.decay4(t) * (2.0 * x).cos()
    }
    pub fn p_yy(&self, _x: f64, y: f64, t: f64) -> f64 {
        self.decay4(t) * (2.0 * y).cos()
    }

    // ── PDE residuals ──────────────────────────────────────────────────────

    /// The four residuals (f1, f2, f3, f4) at one point.
    pub fn residuals(&self, x: f64, y: f64, t: f64) -> [f64; 4] {
        let nu = 1.0 / self.re;
        let (u, v) = (self.u(x, y, t), self.v(x, y, t));
        let f1 = self.u_x(x, y, t) + self.v_y(x, y, t);
        let f2 = self.u_t(x, y, t) + u * self.u_x(x, y, t) + v * self.u_y(x, y, t)
            + self.p_x(x, y, t)
            - nu * (self.u_xx(x, y, t) + self.u_yy(x, y, t));
        let f3 = self.v_t(x, y, t) + u * self.v_x(x, y, t) + v * self.v_y(x, y, t)
            + self.p_y(x, y, t)
            - nu * (self.v_xx(x, y, t) + self.v_yy(x, y, t));
        let f4 = self.u_x(x, y, t).powi(2)
            + 2.0 * self.v_x(x, y, t) * self.u_y(x, y, t)
            + self.v_y(x, y, t).powi(2)
            + self.p_xx(x, y, t)
            + self.p_yy(x, y, t);
        [f1, f2, f3, f4]
    }

    /// Max |f_i| over the sample points and i ∈ {1..4}; 0 for an empty set.
    pub fn residual_check(&self, sample_points: &[(f64, f64, f64)]) -> f64 {
        sample_points
            .iter()
            .flat_map(|&(x, y, t)| self.residuals(x, y, t))
            .fold(0.0, |acc, r| acc.max(r.abs()))
    }
}
