//! Invariants checked on random inputs (proptest) and on fixed sweeps.

use approx::assert_relative_eq;
use proptest::prelude::*;

use singular_oscillator::model::{admissible_betas, beta_plus, ALPHA_CRITICAL};
use singular_oscillator::oracle::{fd_eigen, shoot_eigen, shooting_node_count, GridSpec};
use singular_oscillator::quad::{cauchy_pv, connection_residual, integrability_class, overlap, Integrability, QuadControl};
use singular_oscillator::specfun::{factorial, gamma_fn, hermite, kummer_m, laguerre, SeriesControl};
use singular_oscillator::spectrum::{energy, fullline_state, halfline_state, spectrum_table, Domain, Parity};
use singular_oscillator::BetaBranch;

fn coupling() -> impl Strategy<Value = f64> {
    prop_oneof![-0.2499f64..0.0, 0.0f64..1.0, 1.0f64..50.0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recurrence(z in 0.1f64..20.0) {
        let r = gamma_fn(z + 1.0).unwrap() / (z * gamma_fn(z).unwrap());
        prop_assert!((r - 1.0).abs() <= 1e-11, "z = {z}: ratio {r}");
    }

    #[test]
    fn laguerre_matches_kummer(n in 0usize..=8, ai in 0usize..3, y in 0.0f64..20.0) {
        let a = [-0.5, 0.5, 0.7][ai];
        let prefactor = gamma_fn(n as f64 + a + 1.0).unwrap() / (factorial(n) * gamma_fn(a + 1.0).unwrap());
        let via_m = prefactor * kummer_m(-(n as f64), a + 1.0, y, SeriesControl::default()).unwrap();
        let direct = laguerre(n, a, y);
        let scale = direct.abs().max(1e-300);
        // near a zero the comparison is against the size of the terms
        let terms = (0..=n).map(|k| y.powi(k as i32) / factorial(k)).sum::<f64>() * prefactor.abs();
        prop_assert!((via_m - direct).abs() <= 1e-10 * scale.max(1e-6 * terms), "n={n} a={a} y={y}: {via_m} vs {direct}");
    }

    #[test]
    fn hermite_laguerre_identities(x in 0.01f64..=4.0, n in 0usize..=6) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let c = factorial(n) * 4f64.powi(n as i32);
        let even = sign / c * hermite(2 * n, x);
        let odd = sign / (2.0 * c * x) * hermite(2 * n + 1, x);
        let l_even = laguerre(n, -0.5, x * x);
        let l_odd = laguerre(n, 0.5, x * x);
        // relative to the largest term of the polynomial, which bounds rounding near zeros
        let size = |a: f64| (0..=n).map(|k| (x * x).powi(k as i32) / factorial(k)).sum::<f64>() * gamma_fn(n as f64 + a + 1.0).unwrap() / factorial(n);
        prop_assert!((even - l_even).abs() <= 1e-10 * l_even.abs().max(1e-4 * size(-0.5)));
        prop_assert!((odd - l_odd).abs() <= 1e-10 * l_odd.abs().max(1e-4 * size(0.5)));
    }

    #[test]
    fn admissible_roots_solve_the_indicial_equation(alpha in coupling()) {
        let sol = admissible_betas(alpha);
        prop_assert!(!sol.supercritical);
        for &b in &sol.admissible {
            prop_assert!((b * (b + 1.0) - alpha).abs() <= 1e-12 * alpha.abs().max(1.0));
        }
        prop_assert_eq!(sol.admissible.len(), if alpha == 0.0 { 2 } else { 1 });
    }

    #[test]
    fn supercritical_flag_is_exact(alpha in -10.0f64..10.0) {
        prop_assert_eq!(admissible_betas(alpha).supercritical, alpha <= ALPHA_CRITICAL);
    }

    #[test]
    fn beta_and_energies_increase(a in coupling(), b in coupling(), n in 0usize..10) {
        prop_assume!(a != b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(beta_plus(lo) < beta_plus(hi));
        prop_assert!(energy(n, beta_plus(lo)) < energy(n, beta_plus(hi)));
    }

    #[test]
    fn ground_state_above_one(alpha in coupling()) {
        prop_assume!(alpha != 0.0);
        prop_assert!(halfline_state(alpha, 0, None).unwrap().energy_eps > 1.0);
        prop_assert!(fullline_state(alpha, 0, Parity::Even).unwrap().energy_eps > 1.0);
    }

    #[test]
    fn states_vanish_at_origin(alpha in coupling(), n in 0usize..6) {
        prop_assume!(alpha != 0.0);
        prop_assert_eq!(halfline_state(alpha, n, None).unwrap().psi(0.0), 0.0);
        prop_assert_eq!(fullline_state(alpha, n, Parity::Even).unwrap().psi(0.0), 0.0);
    }

    #[test]
    fn parities_are_degenerate(alpha in coupling(), n in 0usize..20) {
        prop_assume!(alpha != 0.0);
        let e = fullline_state(alpha, n, Parity::Even).unwrap().energy_eps;
        let o = fullline_state(alpha, n, Parity::Odd).unwrap().energy_eps;
        prop_assert_eq!(e, o);
    }

    #[test]
    fn integrability_separates_the_roots(alpha in prop_oneof![-0.2499f64..-1e-9, 1e-9f64..0.75]) {
        let plus = beta_plus(alpha);
        prop_assert_eq!(integrability_class(2.0 * plus), Integrability::Integrable);
        prop_assert_eq!(integrability_class(2.0 * (-1.0 - plus)), Integrability::NonIntegrable);
    }

    #[test]
    fn pv_of_odd_integrands_vanishes(c1 in -3.0f64..3.0, c3 in -3.0f64..3.0, w in 0.1f64..5.0, h in 0.1f64..4.0) {
        let f = |x: f64| c1 / x + c3 * x.powi(3) + (w * x).sin() / (x * x);
        let v = cauchy_pv(f, -h, h, 0.0, QuadControl::default()).unwrap();
        prop_assert!(v.abs() <= 1e-9, "{v}");
    }
}

#[test]
fn node_count_of_closed_forms() {
    for alpha in [-0.2, 0.5, 2.0] {
        for n in 0..8 {
            let s = halfline_state(alpha, n, None).unwrap();
            let xs: Vec<f64> = (1..=24000).map(|i| i as f64 * 5e-4).collect();
            let zeros = xs.windows(2).filter(|w| s.psi(w[0]) * s.psi(w[1]) < 0.0).count();
            assert_eq!(zeros, n, "alpha {alpha} n {n}");
        }
    }
}

#[test]
fn gram_matrices_are_identity() {
    let ctl = QuadControl::tight();
    for alpha in [-0.2, 0.0, 0.5, 2.0] {
        let branch = (alpha == 0.0).then_some(BetaBranch::Zero);
        let states: Vec<_> = (0..6).map(|n| halfline_state(alpha, n, branch).unwrap()).collect();
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let g = overlap(a, b, ctl).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g - want).abs() <= 1e-8, "alpha {alpha} ({i},{j}) = {g}");
            }
        }
    }
}

#[test]
fn cross_parity_overlaps_vanish() {
    let ctl = QuadControl::tight();
    for n in 0..=3 {
        for m in 0..=3 {
            let e = fullline_state(0.5, n, Parity::Even).unwrap();
            let o = fullline_state(0.5, m, Parity::Odd).unwrap();
            assert!(overlap(&e, &o, ctl).unwrap().abs() <= 1e-10);
        }
    }
}

#[test]
fn alpha_zero_levels_are_distinct() {
    let t = spectrum_table(0.0, 12, Domain::FullLine, None).unwrap();
    let e = t.level_energies();
    assert_eq!(e.len(), t.states.len());
    assert!(e.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn even_connection_residual_shrinks() {
    for alpha in [0.5, 2.0] {
        let s = fullline_state(alpha, 1, Parity::Even).unwrap();
        let r: Vec<f64> = [1e-2, 1e-3, 1e-4].iter().map(|&e| connection_residual(&s, e).unwrap().abs()).collect();
        assert!(r[0] > r[1] && r[1] > r[2], "alpha {alpha}: {r:?}");
    }
}

#[test]
fn fd_converges_at_second_order() {
    let errors: Vec<f64> = [1000, 2000, 4000]
        .iter()
        .map(|&n| (fd_eigen(2.0, GridSpec::new(1e-3, 12.0, n).unwrap(), 1).unwrap().eigenvalues[0] - 2.5).abs())
        .collect();
    for w in errors.windows(2) {
        let order = (w[0] / w[1]).log2();
        // the sinh grading also changes with the point count, so the order is only near 2
        assert!((1.6..2.6).contains(&order), "{errors:?}");
    }
}

#[test]
fn shooting_and_fd_agree_without_the_formula() {
    for alpha in [0.5, 2.0] {
        let fd = fd_eigen(alpha, GridSpec::default(), 4).unwrap();
        for n in 0..4 {
            let shot = shoot_eigen(alpha, n).unwrap().eigenvalues[0];
            assert_relative_eq!(shot, fd.eigenvalues[n], max_relative = 1e-3);
        }
    }
}

#[test]
fn shooting_solution_has_n_nodes() {
    for alpha in [-0.24, 0.5] {
        for n in 0..5 {
            let r = shoot_eigen(alpha, n).unwrap();
            let below = shooting_node_count(alpha, None, r.eigenvalues[0] - 1e-8, r.grid.x_max).unwrap();
            let above = shooting_node_count(alpha, None, r.eigenvalues[0] + 1e-8, r.grid.x_max).unwrap();
            assert_eq!(below, n);
            assert_eq!(above, n + 1);
        }
    }
}

#[test]
fn inner_cutoff_sensitivity() {
    for alpha in [0.5, 2.0] {
        let a = fd_eigen(alpha, GridSpec::default().with_x_min(1e-3), 3).unwrap();
        let b = fd_eigen(alpha, GridSpec::default().with_x_min(1e-4), 3).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert!((x - y).abs() < 1e-4, "alpha {alpha}: {x} vs {y}");
        }
    }
    // for α < 0 the cutoff shift scales like x₀^{2β+1}
    let alpha = -0.2;
    let p = 2.0 * beta_plus(alpha) + 1.0;
    let shift = |x0: f64| fd_eigen(alpha, GridSpec::default().with_x_min(x0), 1).unwrap().eigenvalues[0] - (beta_plus(alpha) + 1.5);
    let observed = (shift(1e-3) / shift(1e-5)).ln() / 100f64.ln();
    assert!((observed - p).abs() < 0.05, "observed {observed}, expected {p}");
}
