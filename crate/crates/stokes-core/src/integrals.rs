//! `Υ`, the closed-form integrals built on it, adaptive quadrature of the
//! corresponding improper integrals, and spectral partial sums.
//!
//! The closed forms are
//!
//! ```text
//! angular  Υ(b,c)
//! I1       Υ(b,c) / (4μ)
//! I2       π Υ(b,c) / (8√μ)
//! I3       π/(12√μ) · [π a² + Υ(b,c)/2]        (upper bound)
//! ```
//!
//! with `Υ(b,c) = b² arctan|c/b| + c² arctan|b/c| + |bc|`. The integral they
//! stand for, `2∫₀^{π/2} max{b²cos²θ, c²sin²θ} dθ`, actually evaluates to
//! [`angular_max_integral`], which swaps the two arctangent arguments. The
//! two agree only when `|b| = |c|`. Both are exposed: `upsilon` because `Γ`
//! and its maximum are defined through it, `angular_max_integral` because
//! it is what the quadrature reproduces.

use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::eigenbasis::{Family, Mode, Point3};
use crate::error::{domain, Error, Result};
use crate::gamma_opt::gamma_unchecked;
use crate::quadrature::{integrate, integrate_half_line, AdaptiveTol, QuadEstimate};
use crate::supnorms::Direction;

/// `b² arctan|c/b| + c² arctan|b/c| + |bc|` with `arctan(+∞) = π/2`, so a
/// vanishing coefficient kills its own term.
pub fn upsilon(b: f64, c: f64) -> f64 {
    let (b, c) = (b.abs(), c.abs());
    b * b * c.atan2(b) + c * c * b.atan2(c) + b * c
}

/// `2∫₀^{π/2} max{b²cos²θ, c²sin²θ} dθ = b² arctan|b/c| + c² arctan|c/b| + |bc|`.
/// The two branches cross at `θ = arctan|b/c|`.
pub fn angular_max_integral(b: f64, c: f64) -> f64 {
    let (b, c) = (b.abs(), c.abs());
    b * b * b.atan2(c) + c * c * c.atan2(b) + b * c
}

/// `∂Υ/∂b = 2c³/(b²+c²) + 2b arctan(c/b)` for `b, c ≥ 0`, not both zero.
pub fn upsilon_partial_b(b: f64, c: f64) -> f64 {
    2.0 * c * c * c / (b * b + c * c) + 2.0 * b * c.atan2(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegralKind {
    Angular,
    I1,
    I2,
    I3,
}

impl IntegralKind {
    pub fn name(self) -> &'static str {
        match self {
            IntegralKind::Angular => "angular",
            IntegralKind::I1 => "I1",
            IntegralKind::I2 => "I2",
            IntegralKind::I3 => "I3",
        }
    }

    /// Whether the closed form is an equality (`true`) or an upper bound.
    pub fn is_equality(self) -> bool {
        !matches!(self, IntegralKind::I3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralQuery {
    kind: IntegralKind,
    a: f64,
    b: f64,
    c: f64,
    mu: f64,
}

impl IntegralQuery {
    pub fn new(kind: IntegralKind, a: f64, b: f64, c: f64, mu: f64) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return domain(format!("shift μ = {mu} must be positive"));
        }
        let norm_sq = a * a + b * b + c * c;
        if !(norm_sq.is_finite() && norm_sq <= 1.0 + 1e-12) {
            return domain(format!("a² + b² + c² = {norm_sq} exceeds 1"));
        }
        Ok(Self { kind, a, b, c, mu })
    }

    pub fn kind(&self) -> IntegralKind {
        self.kind
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
}

fn closed_with(q: &IntegralQuery, angular: f64) -> f64 {
    match q.kind {
        IntegralKind::Angular => angular,
        IntegralKind::I1 => angular / (4.0 * q.mu),
        IntegralKind::I2 => PI * angular / (8.0 * q.mu.sqrt()),
        IntegralKind::I3 => PI / (12.0 * q.mu.sqrt()) * (PI * q.a * q.a + 0.5 * angular),
    }
}

/// Closed forms in terms of [`upsilon`]; `I3` is an upper bound.
pub fn closed_integral(q: &IntegralQuery) -> f64 {
    closed_with(q, upsilon(q.b, q.c))
}

/// The same closed forms with the exact angular integral in place of `Υ`.
pub fn closed_integral_from_angular(q: &IntegralQuery) -> f64 {
    closed_with(q, angular_max_integral(q.b, q.c))
}

/// Default tolerances per integral: tight enough for the relative
/// comparisons the verification suites make.
pub fn default_tol(kind: IntegralKind) -> AdaptiveTol {
    match kind {
        IntegralKind::Angular => AdaptiveTol::new(1e-12, 1e-12),
        IntegralKind::I1 => AdaptiveTol::new(1e-13, 1e-10),
        IntegralKind::I2 | IntegralKind::I3 => AdaptiveTol::new(1e-11, 1e-8),
    }
}

/// Tolerance of every nested inner integral: purely relative, so that with a
/// nonnegative integrand the outer result inherits the same relative error.
/// An absolute floor would let the tiny inner values far out on a
/// semi-infinite axis converge with almost no correct digits.
fn inner_tol(outer: &AdaptiveTol) -> AdaptiveTol {
    AdaptiveTol::new(f64::MIN_POSITIVE, (outer.rel * 1e-2).max(1e-13))
        .with_max_panels(outer.max_panels)
}

/// Breakpoints in `s` for fixed `t`: the kink of `max{β²s², γ²t²}` at
/// `s = |γ/β| t`, and `s = t`, the width of the `1/(s²+t²)` peak.
fn crossing(beta: f64, gamma: f64, t: f64) -> Vec<f64> {
    if beta == 0.0 || gamma == 0.0 {
        vec![t]
    } else {
        vec![(gamma / beta).abs() * t, t]
    }
}

/// Numerical value of the left-hand side integral selected by `q`:
///
/// * angular: `2∫₀^{π/2} max{b²cos²θ, c²sin²θ} dθ`
/// * I1: `∫∫ max{b²y², c²x²} / ((x²+y²)(x²+y²+μ)²)`
/// * I2: `∫∫∫ max{b²y², c²x²} / ((x²+y²)(x²+y²+z²+μ)²)`
/// * I3: `∫∫∫ max{a²(y²+z²)², b²x²y², c²x²z²} / ((y²+z²)(x²+y²+z²)(x²+y²+z²+μ)²)`
///
/// over the positive quadrant/octant. Each semi-infinite axis is mapped
/// to `[0, 1)` by `t = u/(1-u)` and integrated with adaptive Gauss-Kronrod;
/// every kink of a `max` is a panel breakpoint.
pub fn quad_integral(q: &IntegralQuery, tol: &AdaptiveTol) -> Result<QuadEstimate> {
    let (a2, b, c, mu) = (q.a * q.a, q.b, q.c, q.mu);
    let (b2, c2) = (b * b, c * c);
    let inner = inner_tol(tol);
    let inner_failed = Cell::new(false);
    let track = |r: QuadEstimate| {
        if !r.converged {
            inner_failed.set(true);
        }
        r.value
    };

    let outer = match q.kind {
        IntegralKind::Angular => integrate(
            |t: f64| {
                let (s, co) = t.sin_cos();
                2.0 * (b2 * co * co).max(c2 * s * s)
            },
            0.0,
            FRAC_PI_2,
            &[b.abs().atan2(c.abs())],
            tol,
        ),
        IntegralKind::I1 => integrate_half_line(
            |x| {
                let fy = |y: f64| {
                    let r2 = x * x + y * y;
                    if r2 == 0.0 {
                        return 0.0;
                    }
                    (b2 * y * y).max(c2 * x * x) / (r2 * (r2 + mu) * (r2 + mu))
                };
                track(integrate_half_line(fy, &crossing(b, c, x), &inner))
            },
            &[mu.sqrt()],
            tol,
        ),
        IntegralKind::I2 => integrate_half_line(
            |z| {
                let fx = |x: f64| {
                    let fy = |y: f64| {
                        let r2 = x * x + y * y;
                        if r2 == 0.0 {
                            return 0.0;
                        }
                        let d = r2 + z * z + mu;
                        (b2 * y * y).max(c2 * x * x) / (r2 * d * d)
                    };
                    track(integrate_half_line(fy, &crossing(b, c, x), &inner))
                };
                track(integrate_half_line(fx, &[(z * z + mu).sqrt()], &inner))
            },
            &[mu.sqrt()],
            tol,
        ),
        IntegralKind::I3 => integrate_half_line(
            |y| {
                let fz = |z: f64| {
                    let s2 = y * y + z * z;
                    if s2 == 0.0 {
                        return 0.0;
                    }
                    // max{b²x²y², c²x²z²} = x² M; the a-term wins for x < x*.
                    let big_m = (b2 * y * y).max(c2 * z * z);
                    let mut kink = vec![s2.sqrt()];
                    if big_m > 0.0 && a2 > 0.0 {
                        kink.push((a2 * s2 * s2 / big_m).sqrt());
                    }
                    let fx = |x: f64| {
                        let r2 = s2 + x * x;
                        let d = r2 + mu;
                        (a2 * s2 * s2).max(x * x * big_m) / (s2 * r2 * d * d)
                    };
                    track(integrate_half_line(fx, &kink, &inner))
                };
                track(integrate_half_line(fz, &crossing(c, b, y), &inner))
            },
            &[mu.sqrt()],
            tol,
        ),
    };

    let error = outer.error + inner.rel * outer.value.abs();
    if !outer.converged || inner_failed.get() {
        return Err(Error::Accuracy {
            estimate: outer.value,
            error,
        });
    }
    Ok(QuadEstimate {
        value: outer.value,
        error,
        converged: true,
    })
}

/// Inputs of a spectral partial sum over one family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumSpec {
    pub family: Family,
    pub e: Direction,
    pub point: Point3,
    pub mu: f64,
    pub cutoff: u32,
}

impl SumSpec {
    pub fn new(family: Family, e: Direction, point: Point3, mu: f64, cutoff: u32) -> Result<Self> {
        if cutoff < 1 {
            return domain("cutoff must be at least 1");
        }
        if !(mu.is_finite() && mu > 0.0) {
            return domain(format!("shift μ = {mu} must be positive"));
        }
        Ok(Self {
            family,
            e,
            point,
            mu,
            cutoff,
        })
    }
}

/// Modes of `family` with every present index in `1..=cutoff`, sorted by
/// eigenvalue then indices.
pub fn family_modes(family: Family, cutoff: u32) -> Vec<Mode> {
    let third = if family.absent_axis().is_some() { 1 } else { cutoff };
    let mut modes = Vec::new();
    for i in 1..=cutoff {
        for j in 1..=cutoff {
            for k in 1..=third {
                modes.push(Mode::from_active(family, i, j, k).expect("indices are positive"));
            }
        }
    }
    modes.sort_by_key(|m| (m.eigenvalue(), *m));
    modes
}

/// `Σ (e·φ(ξ))² / (λ+μ)²` over [`family_modes`].
pub fn family_sum_partial(s: &SumSpec) -> f64 {
    let e = s.e.components();
    let Point3 { x, y, z } = s.point;
    family_modes(s.family, s.cutoff)
        .iter()
        .map(|mode| {
            let f = mode.field_at(x, y, z);
            let proj = e[0] * f[0] + e[1] * f[1] + e[2] * f[2];
            let shift = mode.eigenvalue() as f64 + s.mu;
            proj * proj / (shift * shift)
        })
        .sum()
}

fn sum_bound_with(family: Family, e: &Direction, mu: f64, ang: fn(f64, f64) -> f64) -> f64 {
    let [a, b, c] = e.components();
    let pi2 = PI * PI;
    let pi3 = pi2 * PI;
    match family {
        Family::X0 => ang(b, c) / (pi3 * mu),
        Family::Y0 => ang(a, c) / (pi3 * mu),
        Family::Z0 => ang(a, b) / (pi3 * mu),
        Family::V => ang(b, c) / (pi2 * mu.sqrt()),
        Family::W => 2.0 / (3.0 * pi2 * mu.sqrt()) * (PI * a * a + 0.5 * ang(b, c)),
    }
}

/// Bound on the complete spectral sum of one family, obtained from the
/// directional sup norms, the comparison of the sum with the integral over
/// the quadrant/octant, and the closed integrals in terms of `Υ`:
///
/// * `X0`: `Υ(b,c)/(π³μ)`, `Y0`: `Υ(a,c)/(π³μ)`, `Z0`: `Υ(a,b)/(π³μ)`
/// * `V`: `Υ(b,c)/(π²√μ)`
/// * `W`: `2/(3π²√μ) · [πa² + Υ(b,c)/2]`
pub fn family_sum_bound(family: Family, e: &Direction, mu: f64) -> f64 {
    sum_bound_with(family, e, mu, upsilon)
}

/// [`family_sum_bound`] with the exact angular integral in place of `Υ`.
pub fn family_sum_bound_from_angular(family: Family, e: &Direction, mu: f64) -> f64 {
    sum_bound_with(family, e, mu, angular_max_integral)
}

/// `Γ(a,b,c) / (2π³)`: the sum of the five family bounds at `μ = 2`, where
/// `π√μ = √2π` turns the coefficients into `k₀` and `k₁`.
pub fn combined_sum_bound(e: &Direction) -> f64 {
    let [a, b, c] = e.components();
    gamma_unchecked(a, b, c) / (2.0 * PI * PI * PI)
}
