use approx::assert_relative_eq;
use exact_solution::{Component, ExactSolution};
use grid_core::{
    coords, fill_exact, make_grid, make_grid_with_tau, Field, GridError, Region,
};
use proptest::prelude::*;
use std::f64::consts::PI;

#[test]
fn make_grid_examples() {
    let g = make_grid(5, 10, 1.0, 1e5).unwrap();
    assert_relative_eq!(g.h, PI / 6.0);
    assert_eq!(g.tau, 0.1);

    assert_eq!(make_grid(1, 10, 1.0, 1.0), Err(GridError::TooFewNodes(1)));

    let g = make_grid(100, 40, 1.0, 100.0).unwrap();
    assert_relative_eq!(g.h, PI / 101.0);
    assert_eq!(g.tau, 0.025);
}

#[test]
fn bad_parameters_rejected() {
    assert!(make_grid(5, 0, 1.0, 1.0).is_err());
    assert!(make_grid(5, 10, -1.0, 1.0).is_err());
    assert!(make_grid(5, 10, 1.0, 0.0).is_err());
    assert!(make_grid_with_tau(5, 10, 0.0, 1.0).is_err());
}

#[test]
fn spacing_times_node_count_is_pi() {
    for m in [3, 5, 17, 50, 100, 999] {
        let g = make_grid(m, 1, 1.0, 1.0).unwrap();
        assert!((g.h * (m + 1) as f64 - PI).abs() <= 4.0 * f64::EPSILON * PI);
    }
}

#[test]
fn stability_advisories() {
    // tau = 0.1 > h²·re/4 = π²/36/4 ≈ 0.069 at re = 1.
    let g = make_grid(5, 10, 1.0, 1.0).unwrap();
    assert!(g.advisories.tau_exceeds_diffusive);
    // h = π/6 ≈ 0.52 > tau = 0.1: no convective advisory.
    assert!(!g.advisories.tau_exceeds_convective);

    // Large re and big tau relative to h.
    let g = make_grid_with_tau(50, 10, 0.1, 1e5).unwrap();
    assert!(g.advisories.tau_exceeds_convective);
    assert!(!g.advisories.tau_exceeds_diffusive);
}

#[test]
fn coords_examples() {
    let g = make_grid(5, 10, 1.0, 1e5).unwrap();
    assert_eq!(g.coords(0, 0, 0).unwrap(), (0.0, 0.0, 0.0));
    let (x, y, t) = g.coords(6, 0, 0).unwrap();
    assert_relative_eq!(x, PI, max_relative = 4.0 * f64::EPSILON);
    assert_eq!((y, t), (0.0, 0.0));
    let (x, y, t) = g.coords(2, 3, 5).unwrap();
    assert_relative_eq!(x, PI / 3.0);
    assert_relative_eq!(y, PI / 2.0);
    assert_relative_eq!(t, 0.5);

    assert!(g.coords(-2, 0, 0).is_err());
    assert!(g.coords(0, 8, 0).is_err());
    assert!(coords(&g, 0, 0, -1).is_err());
}

#[test]
fn far_corner_reaches_domain_corner() {
    for m in [3, 10, 50] {
        let g = make_grid(m, 7, 1.4, 10.0).unwrap();
        let (x, y, t) = g.coords(m as isize + 1, m as isize + 1, 7).unwrap();
        assert_relative_eq!(x, PI, max_relative = 8.0 * f64::EPSILON);
        assert_relative_eq!(y, PI, max_relative = 8.0 * f64::EPSILON);
        assert_relative_eq!(t, g.t_f, max_relative = 8.0 * f64::EPSILON);
    }
}

#[test]
fn fill_regions_and_idempotence() {
    let g = make_grid(6, 4, 1.0, 20.0).unwrap();
    let sol = ExactSolution::new(g.re);

    let mut f = Field::zeros(g.m);
    // Poison the interior, fill ghost+boundary, interior must survive.
    for j in 1..=6 {
        for k in 1..=6 {
            f.set(j, k, 123.0);
        }
    }
    fill_exact(&mut f, &g, &sol, Component::U, 0.5, Region::GhostAndBoundary);
    for j in 1..=6 {
        for k in 1..=6 {
            assert_eq!(f.get(j, k), 123.0);
        }
    }
    // Boundary and ghost entries match the exact solution.
    let (lo, hi) = f.index_range();
    for j in lo..=hi {
        for k in lo..=hi {
            if g.is_interior(j, k) {
                continue;
            }
            let expect = sol.u(j as f64 * g.h, k as f64 * g.h, 0.5);
            assert_eq!(f.get(j, k), expect);
        }
    }

    // Idempotence: applying the same fill twice changes nothing.
    let once = f.clone();
    fill_exact(&mut f, &g, &sol, Component::U, 0.5, Region::GhostAndBoundary);
    assert_eq!(f, once);

    // u(0, 0, 0) = -cos(0)·sin(0) = 0.
    let mut f0 = Field::zeros(g.m);
    fill_exact(&mut f0, &g, &sol, Component::U, 0.0, Region::Everywhere);
    assert_eq!(f0.get(0, 0), 0.0);
}

#[test]
fn non_finite_detection() {
    let mut f = Field::zeros(4);
    assert_eq!(f.first_non_finite(), None);
    f.set(2, 3, f64::NAN);
    assert_eq!(f.first_non_finite(), Some((2, 3)));
}

proptest! {
    /// Field read/write round-trips bit-exactly over the ghosted range.
    #[test]
    fn field_roundtrip(m in 3usize..12, values in proptest::collection::vec(-1e30f64..1e30, 20)) {
        let mut f = Field::zeros(m);
        let (lo, hi) = f.index_range();
        let side = (hi - lo + 1) as usize;
        for (i, v) in values.iter().enumerate() {
            let j = lo + (i % side) as isize;
            let k = lo + ((i * 7) % side) as isize;
            f.set(j, k, *v);
            prop_assert_eq!(f.get(j, k), *v);
        }
    }

    /// coords(m+1, m+1, N) = (π, π, t_f) within ulp-scaled tolerance.
    #[test]
    fn coords_corner(m in 3usize..200, n in 1usize..50, tf in 0.1f64..10.0) {
        let g = make_grid(m, n, tf, 1.0).unwrap();
        let (x, y, t) = g.coords(m as isize + 1, m as isize + 1, n as isize).unwrap();
        prop_assert!((x - PI).abs() <= 8.0 * f64::EPSILON * PI);
        prop_assert!((y - PI).abs() <= 8.0 * f64::EPSILON * PI);
        prop_assert!((t - g.t_f).abs() <= 8.0 * f64::EPSILON * g.t_f.max(1.0));
    }
}
