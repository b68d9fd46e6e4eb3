//! Acceptance run: eleven criteria, one verdict line each.
//!
//! Tolerances, sample counts and time budgets are pinned below. Sampled
//! inputs come from named ChaCha8 streams of seed 0, so every run sees the
//! same points and directions.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Duration;

use stokes_core::gamma_opt::{g_prime_sign_changes, s_of_a, SphereMax};
use stokes_core::integrals::{default_tol, family_modes, upsilon_partial_b};
use stokes_core::sampling::{interior_point, stream, uniform, unit_direction};
use stokes_core::supnorms::dir_sup_norm_sq_with_interior;
use stokes_core::*;
use stokes_validation::{summarize, Recorder, Verdict};

const SEED: u64 = 0;

fn criterion_1() -> Verdict {
    let mut r = Recorder::new(1, "maximum of Gamma on the unit sphere");
    match gamma_max_closed() {
        Ok(closed) => {
            r.close("closed maximum vs 10.906", closed, 10.906, 0.010);
            let spec = SphereSearchSpec::new(1001, 4).expect("valid sphere search");
            let SphereMax { value, argmax, .. } = gamma_max_oracle(&spec);
            r.close("sphere grid oracle vs closed maximum", value, closed, 5e-3);
            r.check(
                "oracle maximizer lies on b = c",
                (argmax[1] - argmax[2]).abs() <= 1e-3,
                format!("argmax {argmax:?}"),
            );
        }
        Err(e) => r.check("closed maximum", false, e.to_string()),
    }
    r.within_budget(Duration::from_secs(10));
    r.finish()
}

fn criterion_2() -> Verdict {
    let mut r = Recorder::new(2, "critical point sigma of G and G(sigma)");
    let brackets = g_prime_sign_changes(10.0, 1e-2);
    r.check(
        "exactly one sign change of G' on [0, 10]",
        brackets.len() == 1,
        format!("brackets {brackets:?}"),
    );
    match find_sigma(1e-14).and_then(|s| Ok((s, g_profile(s)?.0))) {
        Ok((sigma, g_sigma)) => {
            r.close("sigma vs 0.672", sigma, 0.672, 0.002);
            r.close("G(sigma) vs 0.435", g_sigma, 0.435, 0.002);
        }
        Err(e) => r.check("sigma", false, e.to_string()),
    }
    r.within_budget(Duration::from_secs(1));
    r.finish()
}

fn criterion_3() -> Verdict {
    let mut r = Recorder::new(3, "orthonormality of all modes with eigenvalue <= 20");
    let modes: Vec<Mode> = enumerate_modes(20.0).into_iter().map(|(m, _)| m).collect();
    let kmax = modes.iter().map(Mode::max_wavenumber).max().unwrap_or(1);
    let spec = QuadSpec::trapezoid_for(kmax);
    match gram_matrix(&modes, &spec) {
        Ok(gram) => {
            let mut worst = (0.0_f64, 0, 0);
            for (i, row) in gram.iter().enumerate() {
                for (j, &g) in row.iter().enumerate() {
                    let dev = (g - if i == j { 1.0 } else { 0.0 }).abs();
                    if dev > worst.0 {
                        worst = (dev, i, j);
                    }
                }
            }
            r.check(
                format!("{} x {} Gram matrix is the identity", modes.len(), modes.len()),
                worst.0 <= 1e-9,
                format!(
                    "entry ({}, {}) = {} and {} deviates by {:.3e}",
                    worst.1, worst.2, modes[worst.1], modes[worst.2], worst.0
                ),
            );
        }
        Err(e) => r.check("Gram matrix", false, e.to_string()),
    }
    r.within_budget(Duration::from_secs(60));
    r.finish()
}

fn criterion_4() -> Verdict {
    let mut r = Recorder::new(4, "divergence and eigen-equation residuals");
    let spec = QuadSpec::new(32, QuadScheme::UniformTrapezoid, 1e-4).expect("valid spec");
    let mut rng = stream(SEED, "acceptance.residuals");
    let points: Vec<Point3> = (0..100).map(|_| interior_point(&mut rng, 1e-3)).collect();
    let (mut worst_div, mut worst_fd) = (0.0_f64, 0.0_f64);
    let mut errors = Vec::new();
    for family in Family::ALL {
        for mode in family_modes(family, 3) {
            for p in &points {
                worst_div = worst_div.max(divergence(&mode, p).abs());
                match fd_residual(&mode, p, &spec) {
                    Ok(res) => worst_fd = worst_fd.max(res.eigen),
                    Err(e) => errors.push(format!("{mode}: {e}")),
                }
            }
        }
    }
    r.at_most("max analytic |div|", worst_div, 1e-12);
    r.at_most("max finite-difference eigen residual (h = 1e-4)", worst_fd, 1e-4);
    r.check("residuals evaluable", errors.is_empty(), errors.join("; "));
    r.finish()
}

fn criterion_5() -> Verdict {
    let mut r = Recorder::new(5, "sup norms against the grid oracle, indices <= 4");
    let grid2 = GridSpec::new(400, true).expect("valid grid");
    let grid3 = GridSpec::new(120, true).expect("valid grid");
    for family in Family::ALL {
        for mode in family_modes(family, 4) {
            let grid = if supnorms::oracle_dims(&mode) == 3 { &grid3 } else { &grid2 };
            let oracle = grid_sup_sq_oracle(&mode, None, grid).value;
            let formula = sup_norm_sq(&mode);
            r.rel_close(format!("{mode} oracle within 1%"), oracle, formula, 0.01);
            r.at_most(format!("{mode} oracle <= formula"), oracle, formula + 1e-10);
        }
    }
    r.within_budget(Duration::from_secs(120));
    r.finish()
}

fn criterion_6() -> Verdict {
    let mut r = Recorder::new(6, "directional sup norms of X0, Y0, Z0, V");
    let grid = GridSpec::new(400, true).expect("valid grid");
    let mut rng = stream(SEED, "acceptance.directions");
    let dirs: Vec<Direction> = (0..20).map(|_| unit_direction(&mut rng)).collect();
    for family in [Family::X0, Family::Y0, Family::Z0, Family::V] {
        for mode in family_modes(family, 3) {
            for (k, e) in dirs.iter().enumerate() {
                let oracle = grid_sup_sq_oracle(&mode, Some(e), &grid).value;
                let formula = dir_sup_norm_sq(&mode, e);
                r.rel_close(format!("{mode} direction {k:02}"), oracle, formula, 0.01);
            }
        }
    }
    r.finish()
}

/// Formula and oracle for every W mode with indices <= 3 along `dirs`.
fn w_records(dirs: &[Direction], grid: &GridSpec) -> Vec<(Mode, usize, f64, f64)> {
    let mut out = Vec::new();
    for mode in family_modes(Family::W, 3) {
        for (k, e) in dirs.iter().enumerate() {
            let formula = dir_sup_norm_sq(&mode, e);
            let oracle = grid_sup_sq_oracle(&mode, Some(e), grid).value;
            out.push((mode, k, formula, oracle));
        }
    }
    out
}

fn criterion_7() -> Verdict {
    let mut r = Recorder::new(7, "adjudication of the W directional sup norm");
    let grid = GridSpec::new(120, true).expect("valid grid");
    let special = Direction::normalized(1.0, -2.0, -2.0).expect("nonzero");
    let mut rng = stream(SEED, "acceptance.w-directions");
    let mut dirs = vec![special];
    dirs.extend((0..49).map(|_| unit_direction(&mut rng)));

    let records = w_records(&dirs, &grid);
    r.check(
        "one record per W mode and direction",
        records.len() == 27 * 50,
        format!("{} records", records.len()),
    );
    let repeat = w_records(&dirs[..5], &grid);
    let first: Vec<_> = records.iter().filter(|rec| rec.1 < 5).cloned().collect();
    r.check(
        "records are bitwise reproducible",
        first == repeat,
        "a repeated oracle run produced different values",
    );

    let w111 = Mode::w(1, 1, 1).expect("valid mode");
    match records.iter().find(|rec| rec.0 == w111 && rec.1 == 0) {
        Some(&(_, _, formula, oracle)) => {
            r.check(
                "W(1,1,1) along (1,-2,-2)/3: oracle >= formula",
                oracle >= formula,
                format!("oracle {oracle:.12e} < formula {formula:.12e}"),
            );
            let exact = dir_sup_norm_sq_with_interior(&w111, &special);
            println!(
                "       W(1,1,1) along (1,-2,-2)/3: formula {formula:.9e}, oracle {oracle:.9e}, \
                 ratio {:.6}, interior critical value {exact:.9e}",
                oracle / formula
            );
        }
        None => r.check("W(1,1,1) record present", false, "missing"),
    }
    let exceed = records.iter().filter(|rec| rec.3 > rec.2 * (1.0 + 1e-9)).count();
    println!(
        "       oracle exceeds the formula in {exceed} of {} W records",
        records.len()
    );
    r.finish()
}

fn criterion_8() -> Verdict {
    let mut r = Recorder::new(8, "closed integrals against adaptive quadrature");
    let mut rng = stream(SEED, "acceptance.integrals");
    for k in 0..20 {
        let [_, b, c] = unit_direction(&mut rng).components();
        let mu = 10f64.powf(uniform(&mut rng, -1.0, 1.0));
        for (kind, tol) in [
            (IntegralKind::Angular, 1e-10),
            (IntegralKind::I1, 1e-7),
            (IntegralKind::I2, 1e-5),
        ] {
            let q = IntegralQuery::new(kind, 0.0, b, c, mu).expect("valid query");
            let label = format!("{} sample {k:02} (b={b:.4}, c={c:.4}, mu={mu:.4})", kind.name());
            match quad_integral(&q, &default_tol(kind)) {
                Ok(est) => r.rel_close(label, est.value, closed_integral(&q), tol),
                Err(e) => r.check(label, false, e.to_string()),
            }
        }
    }
    let mut rng = stream(SEED, "acceptance.integrals.i3");
    for k in 0..20 {
        let [a, b, c] = unit_direction(&mut rng).components();
        let mu = 10f64.powf(uniform(&mut rng, -1.0, 1.0));
        let q = IntegralQuery::new(IntegralKind::I3, a, b, c, mu).expect("valid query");
        let label = format!("I3 sample {k:02} (a={a:.4}, b={b:.4}, c={c:.4}, mu={mu:.4}) <= bound");
        match quad_integral(&q, &default_tol(IntegralKind::I3)) {
            Ok(est) => r.at_most(label, est.value, closed_integral(&q)),
            Err(e) => r.check(label, false, e.to_string()),
        }
    }
    r.within_budget(Duration::from_secs(120));
    r.finish()
}

fn criterion_9() -> Verdict {
    let mut r = Recorder::new(9, "spectral partial sums against their bounds");
    let mut rng = stream(SEED, "acceptance.sums");
    let samples: Vec<(Point3, Direction)> = (0..10)
        .map(|_| (interior_point(&mut rng, 0.0), unit_direction(&mut rng)))
        .collect();
    for (k, (xi, e)) in samples.iter().enumerate() {
        for mu in [0.5, 1.0, 2.0, 5.0] {
            for family in Family::ALL {
                let spec = SumSpec::new(family, *e, *xi, mu, 40).expect("valid sum");
                r.at_most(
                    format!("{} sample {k} mu={mu}", family.name()),
                    family_sum_partial(&spec),
                    family_sum_bound(family, e, mu),
                );
            }
        }
    }
    let mut rng = stream(SEED, "acceptance.combination");
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let e = unit_direction(&mut rng);
        let total: f64 = Family::ALL
            .iter()
            .map(|&f| family_sum_bound(f, &e, 2.0))
            .sum();
        let [a, b, c] = e.components();
        let gamma = gamma(a, b, c).expect("unit direction");
        worst = worst.max((total - gamma / (2.0 * PI.powi(3))).abs());
    }
    r.at_most("sum of family bounds at mu = 2 vs Gamma/(2 pi^3)", worst, 1e-12);
    r.finish()
}

fn criterion_10() -> Verdict {
    let mut r = Recorder::new(10, "mode enumeration counts");
    for (lambda, expected) in [(2.0, 3), (3.0, 5), (5.0, 11)] {
        let got = enumerate_modes(lambda).len();
        r.check(
            format!("lambda <= {lambda}"),
            got == expected,
            format!("{got} modes, expected {expected}"),
        );
    }
    r.finish()
}

fn criterion_11() -> Verdict {
    let mut r = Recorder::new(11, "reduction identity and derivative of Upsilon");
    let shift = FRAC_PI_2 + Constants::new().k2;
    let mut rng = stream(SEED, "acceptance.reduction");
    let mut worst = 0.0_f64;
    let mut failures = Vec::new();
    for _ in 0..500 {
        // a in (0, 1]: s(a) is finite there.
        let a = 1.0 - uniform(&mut rng, 0.0, 1.0 - 1e-9);
        let s = s_of_a(a);
        match (gamma_restricted(a), g_profile(s)) {
            (Ok(lambda), Ok((g, _))) => worst = worst.max((lambda - (g + shift)).abs()),
            (x, y) => failures.push(format!("a={a}: {x:?} {y:?}")),
        }
    }
    r.at_most("max |Lambda(a) - G(s(a)) - pi/2 - k2| over 500 points", worst, 1e-12);
    r.check("identity evaluable", failures.is_empty(), failures.join("; "));

    // The derivative formula holds on the open quadrant b, c > 0.
    let mut rng = stream(SEED, "acceptance.upsilon-derivative");
    let h = 1e-5;
    let (mut worst, mut min_value) = (0.0_f64, f64::INFINITY);
    for _ in 0..100 {
        let b = uniform(&mut rng, 0.05, 1.0);
        let c = uniform(&mut rng, 0.05, 1.0);
        let fd = (upsilon(b + h, c) - upsilon(b - h, c)) / (2.0 * h);
        let exact = upsilon_partial_b(b, c);
        worst = worst.max((exact - fd).abs());
        min_value = min_value.min(exact);
    }
    r.check("Upsilon_b >= 0", min_value >= 0.0, format!("minimum {min_value:e}"));
    r.at_most("max |Upsilon_b - central difference|", worst, 1e-6);
    r.finish()
}

fn main() -> ExitCode {
    let criteria: [fn() -> Verdict; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let verdicts: Vec<Verdict> = criteria
        .iter()
        .map(|run| {
            let v = run();
            println!("{}", v.render());
            v
        })
        .collect();
    ExitCode::from(summarize(&verdicts))
}
