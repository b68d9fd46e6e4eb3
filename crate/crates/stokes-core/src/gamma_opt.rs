//! Maximum of `Γ(a,b,c) = k₀Υ(b,c) + Υ(a,c) + Υ(a,b) + k₁a²` on the unit
//! sphere.
//!
//! On the symmetric slice `b = c` the problem reduces to maximizing
//! `Λ(a)` on `[0, 1]`; the substitution `s = √(1-a²)/(a√2)` turns
//! `Λ - k₂ - π/2` into `G(s)`, whose derivative has a single zero `σ`.
//! [`gamma_max_oracle`] searches the whole closed octant independently.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Error, Result};
use crate::integrals::upsilon;

/// The constants `k₀ = 1 + 4√2π/3`, `k₁ = (2/3)√2π²` and `k₂ = (π+2)/4 · k₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub k0: f64,
    pub k1: f64,
    pub k2: f64,
}

impl Constants {
    pub fn new() -> Self {
        let sqrt2 = std::f64::consts::SQRT_2;
        let k0 = 1.0 + 4.0 * sqrt2 * PI / 3.0;
        let k1 = 2.0 / 3.0 * sqrt2 * PI * PI;
        let k2 = (PI + 2.0) / 4.0 * k0;
        Self { k0, k1, k2 }
    }

    /// `k₁ - k₂ - π/2`, the constant term of `G`.
    fn g_shift(&self) -> f64 {
        self.k1 - self.k2 - FRAC_PI_2
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::new()
    }
}

/// `Γ` for any triple, without the unit-sphere check.
pub fn gamma_unchecked(a: f64, b: f64, c: f64) -> f64 {
    let k = Constants::new();
    k.k0 * upsilon(b, c) + upsilon(a, c) + upsilon(a, b) + k.k1 * a * a
}

/// `Γ(a, b, c)` on the unit sphere (`|a²+b²+c² - 1| ≤ 1e-9`).
pub fn gamma(a: f64, b: f64, c: f64) -> Result<f64> {
    let norm_sq = a * a + b * b + c * c;
    if !(norm_sq - 1.0).abs().le(&1e-9) {
        return domain(format!("({a}, {b}, {c}) is not on the unit sphere"));
    }
    Ok(gamma_unchecked(a, b, c))
}

/// `G(s) = (2(1-s²) arctan s + 2s + k₁ - k₂ - π/2) / (1 + 2s²)` and its
/// derivative
/// `G'(s) = 4[1 - (s³+s)(3 arctan s + k₁ - k₂ - π/2) - 2s⁴] / ((1+2s²)²(1+s²))`.
///
/// For `s > 1` both are evaluated after dividing through by the leading
/// power of `s`, so they stay finite for every finite `s`.
pub fn g_profile(s: f64) -> Result<(f64, f64)> {
    if !(s >= 0.0) || !s.is_finite() {
        return domain(format!("G is defined for finite s >= 0, got {s}"));
    }
    let shift = Constants::new().g_shift();
    let at = s.atan();
    if s <= 1.0 {
        let s2 = s * s;
        let g = (2.0 * (1.0 - s2) * at + 2.0 * s + shift) / (1.0 + 2.0 * s2);
        let num = 1.0 - (s2 * s + s) * (3.0 * at + shift) - 2.0 * s2 * s2;
        let den = (1.0 + 2.0 * s2).powi(2) * (1.0 + s2);
        Ok((g, 4.0 * num / den))
    } else {
        let t = 1.0 / s;
        let t2 = t * t;
        let g = (2.0 * (t2 - 1.0) * at + 2.0 * t + shift * t2) / (t2 + 2.0);
        // num / s⁴ and den / s⁶
        let num = t2 * t2 - (t + t2 * t) * (3.0 * at + shift) - 2.0;
        let den = (t2 + 2.0).powi(2) * (t2 + 1.0);
        Ok((g, 4.0 * num / den * t2))
    }
}

fn g_prime(s: f64) -> f64 {
    g_profile(s).expect("s >= 0").1
}

/// Number of sign changes of `G'` along `0, step, 2·step, …` up to `hi`,
/// with the bracketing intervals.
pub fn g_prime_sign_changes(hi: f64, step: f64) -> Vec<(f64, f64)> {
    let n = (hi / step).round() as usize;
    let mut out = Vec::new();
    let mut prev_s = 0.0;
    let mut prev = g_prime(0.0);
    for i in 1..=n {
        let s = (i as f64 * step).min(hi);
        let v = g_prime(s);
        if prev == 0.0 || prev.signum() != v.signum() {
            out.push((prev_s, s));
        }
        prev_s = s;
        prev = v;
    }
    out
}

/// The zero `σ` of `G'` on `[0, 10]`: sign scan with step `0.01`, then
/// bisection down to `tol`. Anything other than exactly one sign change is
/// an integrity error.
pub fn find_sigma(tol: f64) -> Result<f64> {
    if !(tol >= 1e-14) {
        return domain(format!("tolerance {tol} below 1e-14"));
    }
    let brackets = g_prime_sign_changes(10.0, 1e-2);
    let (mut lo, mut hi) = match brackets.as_slice() {
        [one] => *one,
        [] => return Err(Error::Integrity("G' has no zero on [0, 10]".into())),
        many => {
            return Err(Error::Integrity(format!(
                "G' changes sign {} times on [0, 10]",
                many.len()
            )))
        }
    };
    let mut f_lo = g_prime(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = g_prime(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `G(σ) + π/2 + k₂`, the maximum of `Γ` on the slice `b = c`.
pub fn gamma_max_closed() -> Result<f64> {
    let sigma = find_sigma(1e-14)?;
    let (g0, _) = g_profile(sigma)?;
    Ok(g0 + FRAC_PI_2 + Constants::new().k2)
}

/// `Λ(a) = k₀(1+π/2)(1-a²)/2 + 2Υ(a, √((1-a²)/2)) + k₁a²`, i.e. `Γ` at
/// `(a, b, b)` with `a² + 2b² = 1`.
pub fn gamma_restricted(a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) {
        return domain(format!("a = {a} outside [0, 1]"));
    }
    let k = Constants::new();
    let rest = (1.0 - a * a).max(0.0);
    let b = (0.5 * rest).sqrt();
    Ok(k.k0 * (1.0 + FRAC_PI_2) * rest / 2.0 + 2.0 * upsilon(a, b) + k.k1 * a * a)
}

/// `s(a) = √(1-a²) / (a√2)` for `a ∈ (0, 1]`.
pub fn s_of_a(a: f64) -> f64 {
    (1.0 - a * a).max(0.0).sqrt() / (a * std::f64::consts::SQRT_2)
}

/// `a(s) = 1 / √(1 + 2s²)`, inverse of [`s_of_a`].
pub fn a_of_s(s: f64) -> f64 {
    1.0 / (1.0 + 2.0 * s * s).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereSearchSpec {
    grid_per_angle: usize,
    refine_rounds: usize,
}

impl SphereSearchSpec {
    pub fn new(grid_per_angle: usize, refine_rounds: usize) -> Result<Self> {
        if grid_per_angle < 16 {
            return domain(format!(
                "sphere search needs at least 16 points per angle, got {grid_per_angle}"
            ));
        }
        Ok(Self {
            grid_per_angle,
            refine_rounds,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereMax {
    pub value: f64,
    pub argmax: [f64; 3],
    /// `(θ, φ)` with `a = cos θ`, `b = sin θ cos φ`, `c = sin θ sin φ`.
    pub angles: [f64; 2],
}

fn octant_point(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [ct, st * cp, st * sp]
}

fn search_box(theta: &[f64], phi: &[f64]) -> (f64, [f64; 2]) {
    let mut best = (f64::NEG_INFINITY, [0.0, 0.0]);
    for &t in theta {
        for &p in phi {
            let [a, b, c] = octant_point(t, p);
            let v = gamma_unchecked(a, b, c);
            if v > best.0 {
                best = (v, [t, p]);
            }
        }
    }
    best
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| (lo + h * i as f64).min(hi)).collect()
}

/// Grid search of `Γ` over the closed first octant of the sphere (great
/// circle arcs included) followed by `refine_rounds` local ×10 refinements
/// around the incumbent.
pub fn gamma_max_oracle(spec: &SphereSearchSpec) -> SphereMax {
    let n = spec.grid_per_angle;
    let axis = grid(0.0, FRAC_PI_2, n);
    let (mut value, mut angles) = search_box(&axis, &axis);
    let mut h = FRAC_PI_2 / (n - 1) as f64;
    for _ in 0..spec.refine_rounds {
        let local = |c: f64| grid((c - h).max(0.0), (c + h).min(FRAC_PI_2), 21);
        let (v, at) = search_box(&local(angles[0]), &local(angles[1]));
        if v > value {
            value = v;
            angles = at;
        }
        h /= 10.0;
    }
    SphereMax {
        value,
        argmax: octant_point(angles[0], angles[1]),
        angles,
    }
}
