//! Seeded invariant checks across modules. Samples come from named streams
//! of seed 0, so failures reproduce exactly.

use std::f64::consts::PI;

use stokes_core::gamma_opt::g_prime_sign_changes;
use stokes_core::integrals::{
    closed_integral_from_angular, default_tol, family_modes, family_sum_bound_from_angular,
};
use stokes_core::sampling::{interior_point, stream, uniform, unit_direction};
use stokes_core::supnorms::{
    corner_max_2d, dir_sup_norm_sq_with_interior, oracle_dims, oracle_lipschitz_bound,
};
use stokes_core::*;

#[test]
fn residuals_vanish_for_indices_up_to_four() {
    let spec = QuadSpec::default();
    let mut rng = stream(0, "invariants.residuals");
    let points: Vec<Point3> = (0..100).map(|_| interior_point(&mut rng, 1e-3)).collect();
    for family in Family::ALL {
        for mode in family_modes(family, 4) {
            for p in &points {
                assert!(divergence(&mode, p).abs() <= 1e-12, "{mode} at {p:?}");
                let r = fd_residual(&mode, p, &spec).unwrap();
                assert!(r.eigen <= 1e-4, "{mode} eigen residual {}", r.eigen);
                assert!(r.div <= 1e-4, "{mode} fd divergence {}", r.div);
            }
        }
    }
}

#[test]
fn gram_matrix_is_identity_under_both_rules() {
    let modes: Vec<Mode> = enumerate_modes(20.0).into_iter().map(|(m, _)| m).collect();
    let trapezoid = QuadSpec::trapezoid_for(4);
    let gauss = QuadSpec::new(24, QuadScheme::Gauss, 1e-4).unwrap();
    for spec in [trapezoid, gauss] {
        let g = gram_matrix(&modes, &spec).unwrap();
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (v - expected).abs() <= 1e-9,
                    "{:?}: <{}, {}> = {v}",
                    spec.scheme(),
                    modes[i],
                    modes[j]
                );
            }
        }
    }
}

#[test]
fn v_and_w_factor_through_planar_modes() {
    let mut rng = stream(0, "invariants.factorization");
    let points: Vec<Point3> = (0..1000).map(|_| interior_point(&mut rng, 0.0)).collect();
    for family in [Family::V, Family::W] {
        for mode in family_modes(family, 3) {
            let worst = points
                .iter()
                .map(|p| factorization_residual(&mode, p).unwrap())
                .fold(0.0, f64::max);
            assert!(worst <= 1e-12, "{mode}: {worst}");
        }
    }
}

#[test]
fn bilinear_form_peaks_at_a_corner() {
    let n_grid = 201;
    for n in 1..=6u32 {
        for p in 1..=6u32 {
            let (wy, wz) = ((p * p) as f64, (n * n) as f64);
            let mut best = (f64::NEG_INFINITY, 0, 0);
            for i in 0..n_grid {
                for j in 0..n_grid {
                    let y = i as f64 / (n_grid - 1) as f64;
                    let z = j as f64 / (n_grid - 1) as f64;
                    let v = wy * y * (1.0 - z) + wz * (1.0 - y) * z;
                    if v > best.0 {
                        best = (v, i, j);
                    }
                }
            }
            let expected = wy.max(wz);
            assert!((best.0 - expected).abs() <= 1e-9, "(n, p) = ({n}, {p})");
            let corner = [0, n_grid - 1];
            assert!(corner.contains(&best.1) && corner.contains(&best.2));
            assert_eq!(corner_max_2d(wy, wz).0, expected);
        }
    }
}

/// Closed form minus the grid maximum, checked from both sides: the grid
/// never exceeds the closed form and misses it by at most `L·π/N`.
fn assert_oracle_brackets(mode: &Mode, e: Option<&Direction>, formula: f64, grid: &GridSpec) {
    let oracle = grid_sup_sq_oracle(mode, e, grid).value;
    let n = grid.points_per_axis() as f64;
    let slack = oracle_lipschitz_bound(mode, e) * PI / n;
    assert!(oracle <= formula + 1e-12, "{mode} {e:?}: {oracle} > {formula}");
    assert!(formula - oracle <= slack, "{mode} {e:?}: gap {} > {slack}", formula - oracle);
    assert!((formula - oracle) / formula <= 0.01, "{mode} {e:?}");
}

#[test]
fn sup_norm_oracle_brackets_closed_forms() {
    let coarse2 = GridSpec::new(400, false).unwrap();
    let coarse3 = GridSpec::new(120, false).unwrap();
    for family in Family::ALL {
        for mode in family_modes(family, 4) {
            let grid = if oracle_dims(&mode) == 3 { &coarse3 } else { &coarse2 };
            assert_oracle_brackets(&mode, None, sup_norm_sq(&mode), grid);
        }
    }
}

#[test]
fn directional_oracle_brackets_planar_and_v_formulas() {
    let grid = GridSpec::new(400, false).unwrap();
    let mut rng = stream(0, "invariants.directions");
    let dirs: Vec<Direction> = (0..10).map(|_| unit_direction(&mut rng)).collect();
    for family in [Family::X0, Family::Y0, Family::Z0, Family::V] {
        for mode in family_modes(family, 4) {
            for e in &dirs {
                assert_oracle_brackets(&mode, Some(e), dir_sup_norm_sq(&mode, e), &grid);
            }
        }
    }
}

#[test]
fn w_oracle_agrees_with_interior_critical_value() {
    let grid = GridSpec::new(120, true).unwrap();
    let mut rng = stream(0, "invariants.w-directions");
    let mut dirs = vec![Direction::normalized(1.0, -2.0, -2.0).unwrap()];
    dirs.extend((0..9).map(|_| unit_direction(&mut rng)));
    for mode in family_modes(Family::W, 3) {
        for e in &dirs {
            let exact = dir_sup_norm_sq_with_interior(&mode, e);
            let oracle = grid_sup_sq_oracle(&mode, Some(e), &grid).value;
            assert!(oracle <= exact + 1e-10, "{mode} {e:?}: {oracle} > {exact}");
            assert!((exact - oracle) / exact <= 0.01, "{mode} {e:?}: {oracle} vs {exact}");
        }
    }
}

#[test]
fn quadrature_matches_exact_angular_closed_forms() {
    let mut rng = stream(0, "invariants.integrals");
    for _ in 0..20 {
        let [a, b, c] = unit_direction(&mut rng).components();
        let mu = 10f64.powf(uniform(&mut rng, -1.0, 1.0));
        for (kind, tol) in [
            (IntegralKind::Angular, 1e-10),
            (IntegralKind::I1, 1e-7),
            (IntegralKind::I2, 1e-5),
        ] {
            let q = IntegralQuery::new(kind, 0.0, b, c, mu).unwrap();
            let quad = quad_integral(&q, &default_tol(kind)).unwrap().value;
            let exact = closed_integral_from_angular(&q);
            assert!(
                ((quad - exact) / exact).abs() <= tol,
                "{} b={b} c={c} mu={mu}: {quad} vs {exact}",
                kind.name()
            );
        }
        let q = IntegralQuery::new(IntegralKind::I3, a, b, c, mu).unwrap();
        let quad = quad_integral(&q, &default_tol(IntegralKind::I3)).unwrap().value;
        let bound = closed_integral_from_angular(&q);
        assert!(quad <= bound + 1e-8, "I3 ({a}, {b}, {c}) mu={mu}: {quad} > {bound}");
    }
}

#[test]
fn partial_sums_stay_below_exact_angular_bounds() {
    let mut rng = stream(0, "invariants.sums");
    for _ in 0..10 {
        let xi = interior_point(&mut rng, 0.0);
        let e = unit_direction(&mut rng);
        for mu in [0.5, 1.0, 2.0, 5.0] {
            for family in Family::ALL {
                let partial = family_sum_partial(&SumSpec::new(family, e, xi, mu, 40).unwrap());
                let bound = family_sum_bound_from_angular(family, &e, mu);
                assert!(partial <= bound, "{family:?} {xi:?} {e:?} mu={mu}: {partial} > {bound}");
            }
        }
    }
}

#[test]
fn family_bounds_combine_into_gamma() {
    let mut rng = stream(0, "invariants.combination");
    for _ in 0..100 {
        let e = unit_direction(&mut rng);
        let total: f64 = Family::ALL.iter().map(|&f| family_sum_bound(f, &e, 2.0)).sum();
        assert!((total - combined_sum_bound(&e)).abs() <= 1e-12);
    }
}

#[test]
fn g_prime_changes_sign_once_on_a_fine_scan() {
    let brackets = g_prime_sign_changes(10.0, 1e-3);
    assert_eq!(brackets.len(), 1, "{brackets:?}");
    let sigma = find_sigma(1e-14).unwrap();
    assert!(brackets[0].0 <= sigma && sigma <= brackets[0].1);
}

#[test]
fn sphere_oracle_agrees_with_closed_maximum() {
    let closed = gamma_max_closed().unwrap();
    let found = gamma_max_oracle(&SphereSearchSpec::new(1001, 4).unwrap());
    assert!(found.value <= closed + 5e-3);
    assert!(closed - found.value <= 5e-3);
    // The maximizer sits on b = c at a = 1/√(1+2σ²).
    let sigma = find_sigma(1e-14).unwrap();
    let a = 1.0 / (1.0 + 2.0 * sigma * sigma).sqrt();
    assert!((found.argmax[0] - a).abs() <= 1e-3);
    assert!((found.argmax[1] - found.argmax[2]).abs() <= 1e-3);
}
