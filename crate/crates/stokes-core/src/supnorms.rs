//! Sup norms and directional sup norms of the eigenfunctions.
//!
//! The closed forms reduce `|φ|²` to a multilinear function of
//! `(sin²(mx), sin²(ny), sin²(pz))` on the unit cube, whose maximum sits at
//! a corner. For the projection `e·W` the claimed value is
//! `max{A², B², C²}` with `A = a(n²+p²)`, `B = -bmn`, `C = -cmp`; interior
//! critical points of `K = A sXcYcZ + B cXsYcZ + C cXcYsZ` can exceed it (see
//! [`interior_critical_sq`]), so that claim is only ever reported next to
//! the grid oracle, never assumed.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::eigenbasis::{Family, Mode, Point3};
use crate::error::{domain, Result};

/// Unit vector `e = (a, b, c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    a: f64,
    b: f64,
    c: f64,
}

impl Direction {
    pub const UNIT_TOL: f64 = 1e-12;

    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let norm_sq = a * a + b * b + c * c;
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > Self::UNIT_TOL {
            return domain(format!("({a}, {b}, {c}) is not a unit vector"));
        }
        Ok(Self { a, b, c })
    }

    /// Rescales a nonzero vector onto the unit sphere.
    pub fn normalized(a: f64, b: f64, c: f64) -> Result<Self> {
        let norm = (a * a + b * b + c * c).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return domain("cannot normalize a zero or non-finite vector");
        }
        Self::new(a / norm, b / norm, c / norm)
    }

    pub fn axis(i: usize) -> Self {
        let mut v = [0.0; 3];
        v[i] = 1.0;
        Self {
            a: v[0],
            b: v[1],
            c: v[2],
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn components(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }
}

/// Coefficients `(A, B, C)` of the scalar function `K` behind `e·W`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionCoeffs(pub [f64; 3]);

impl ProjectionCoeffs {
    pub fn max_sq(&self) -> f64 {
        self.0.iter().map(|v| v * v).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    points_per_axis: usize,
    refine: bool,
}

impl GridSpec {
    pub fn new(points_per_axis: usize, refine: bool) -> Result<Self> {
        if points_per_axis < 8 {
            return domain(format!(
                "grid needs at least 8 points per axis, got {points_per_axis}"
            ));
        }
        Ok(Self {
            points_per_axis,
            refine,
        })
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }
    pub fn refine(&self) -> bool {
        self.refine
    }

    pub fn spacing(&self) -> f64 {
        PI / (self.points_per_axis - 1) as f64
    }
}

/// Closed-form `‖φ‖²_{L∞(Ω)}`.
pub fn sup_norm_sq(mode: &Mode) -> f64 {
    let [m, n, p] = mode.wave_vector();
    let pi3 = PI * PI * PI;
    match mode.family() {
        Family::X0 => 4.0 * (n * n).max(p * p) / (pi3 * (n * n + p * p)),
        Family::Y0 => 4.0 * (m * m).max(p * p) / (pi3 * (m * m + p * p)),
        Family::Z0 => 4.0 * (m * m).max(n * n) / (pi3 * (m * m + n * n)),
        Family::V => 8.0 * (n * n).max(p * p) / (pi3 * (n * n + p * p)),
        Family::W => {
            let np = n * n + p * p;
            8.0 * (np * np).max(m * m * n * n).max(m * m * p * p) / (pi3 * np * (m * m + np))
        }
    }
}

/// Closed-form `‖e·φ‖²_{L∞(Ω)}` as claimed for each family. For `W` this
/// is the claim `max{A², B², C²}` scaled by the normalization, which
/// [`grid_sup_sq_oracle`] shows to be too small for some directions.
pub fn dir_sup_norm_sq(mode: &Mode, e: &Direction) -> f64 {
    dir_sup_norm_sq_raw(mode, e.components())
}

/// Same formulas without the unit-length requirement; homogeneous of
/// degree two in `e`.
pub fn dir_sup_norm_sq_raw(mode: &Mode, e: [f64; 3]) -> f64 {
    let [a, b, c] = e;
    let [m, n, p] = mode.wave_vector();
    let pi3 = PI * PI * PI;
    let sq = |v: f64| v * v;
    match mode.family() {
        Family::X0 => 4.0 * sq(b * p).max(sq(c * n)) / (pi3 * (n * n + p * p)),
        Family::Y0 => 4.0 * sq(a * p).max(sq(c * m)) / (pi3 * (m * m + p * p)),
        Family::Z0 => 4.0 * sq(a * n).max(sq(b * m)) / (pi3 * (m * m + n * n)),
        Family::V => 8.0 * sq(b * p).max(sq(c * n)) / (pi3 * (n * n + p * p)),
        Family::W => w_prefactor(mode) * w_coeffs_raw(mode, e).max_sq(),
    }
}

/// `8 / (π³ (n²+p²)(m²+n²+p²))`, so that `(e·W)² = prefactor · K²`.
fn w_prefactor(mode: &Mode) -> f64 {
    let [m, n, p] = mode.wave_vector();
    let np = n * n + p * p;
    8.0 / (PI * PI * PI * np * (m * m + np))
}

fn w_coeffs_raw(mode: &Mode, e: [f64; 3]) -> ProjectionCoeffs {
    let [m, n, p] = mode.wave_vector();
    let [a, b, c] = e;
    ProjectionCoeffs([a * (n * n + p * p), -b * m * n, -c * m * p])
}

/// `(A, B, C) = (a(n²+p²), -bmn, -cmp)` for a `W` mode.
pub fn projection_coeffs(mode: &Mode, e: &Direction) -> Result<ProjectionCoeffs> {
    if mode.family() != Family::W {
        return domain(format!("projection coefficients are defined for W, not {mode}"));
    }
    Ok(w_coeffs_raw(mode, e.components()))
}

/// `‖φ_c‖²_{L∞}` of a single component: the squared amplitude, since the
/// trigonometric factors reach ±1 simultaneously.
pub fn component_sup_norm_sq(mode: &Mode, component: usize) -> f64 {
    let amp = mode.amplitudes()[component];
    amp * amp
}

/// Maximum of `wy·Y(1-Z) + wz·(1-Y)Z` over `[0,1]²`, taken at the corners.
pub fn corner_max_2d(wy: f64, wz: f64) -> (f64, [u8; 2]) {
    let f = |y: f64, z: f64| wy * y * (1.0 - z) + wz * (1.0 - y) * z;
    let mut best = (f64::NEG_INFINITY, [0, 0]);
    for cy in 0..2u8 {
        for cz in 0..2u8 {
            let v = f(cy as f64, cz as f64);
            if v > best.0 {
                best = (v, [cy, cz]);
            }
        }
    }
    best
}

/// Maximum of `w₀X(1-Y)(1-Z) + w₁(1-X)Y(1-Z) + w₂(1-X)(1-Y)Z` over `[0,1]³`,
/// taken at the corners.
pub fn corner_max_3d(w: [f64; 3]) -> (f64, [u8; 3]) {
    let f = |x: f64, y: f64, z: f64| {
        w[0] * x * (1.0 - y) * (1.0 - z)
            + w[1] * (1.0 - x) * y * (1.0 - z)
            + w[2] * (1.0 - x) * (1.0 - y) * z
    };
    let mut best = (f64::NEG_INFINITY, [0, 0, 0]);
    for cx in 0..2u8 {
        for cy in 0..2u8 {
            for cz in 0..2u8 {
                let v = f(cx as f64, cy as f64, cz as f64);
                if v > best.0 {
                    best = (v, [cx, cy, cz]);
                }
            }
        }
    }
    best
}

/// The interior critical-point quantities for `A² = α C²`, `B² = β C²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case22 {
    /// `K²/C² = 4αβ / (2(αβ+α+β) - α² - β² - 1)`.
    pub d: f64,
    /// `(cos²X, cos²Y, cos²Z)` at the critical point.
    pub cos_sq: [f64; 3],
    /// All three `cos²` values lie in `[0, 1]`.
    pub feasible: bool,
}

pub fn case22_value(alpha: f64, beta: f64) -> Result<Case22> {
    if !(alpha.is_finite() && beta.is_finite()) || !(0.0..=1.0).contains(&alpha)
        || !(0.0..=1.0).contains(&beta)
    {
        return domain(format!("(α, β) = ({alpha}, {beta}) outside [0, 1]²"));
    }
    let den = 2.0 * (alpha * beta + alpha + beta) - alpha * alpha - beta * beta - 1.0;
    if den <= 0.0 {
        return domain(format!(
            "(α, β) = ({alpha}, {beta}) outside the admissible region (denominator {den})"
        ));
    }
    let cos_sq = [
        2.0 * alpha * (beta + 1.0 - alpha) / den,
        2.0 * beta * (alpha + 1.0 - beta) / den,
        2.0 * (alpha + beta - 1.0) / den,
    ];
    let feasible = cos_sq.iter().all(|v| (0.0..=1.0).contains(v));
    Ok(Case22 {
        d: 4.0 * alpha * beta / den,
        cos_sq,
        feasible,
    })
}

/// Value of `K²` at an interior critical point with `ABC ≠ 0`, when one
/// exists: requires the three strict triangle inequalities among
/// `A², B², C²`. Then `K² = 4A²B²C² / (2(A²B²+A²C²+B²C²) - A⁴ - B⁴ - C⁴)`,
/// which exceeds `max{A², B², C²}` by `C²(A²+B²-C²)²/den` (with `C²` the
/// largest square).
pub fn interior_critical_sq(coeffs: &ProjectionCoeffs) -> Option<f64> {
    let [a2, b2, c2] = coeffs.0.map(|v| v * v);
    if a2 == 0.0 || b2 == 0.0 || c2 == 0.0 {
        return None;
    }
    if !(a2 + b2 > c2 && a2 + c2 > b2 && b2 + c2 > a2) {
        return None;
    }
    let den = 2.0 * (a2 * b2 + a2 * c2 + b2 * c2) - a2 * a2 - b2 * b2 - c2 * c2;
    (den > 0.0).then(|| 4.0 * a2 * b2 * c2 / den)
}

/// `‖e·φ‖²` with the interior critical points of `K` taken into account.
/// Equals [`dir_sup_norm_sq`] for every family except `W`, where it is
/// `prefactor · max{A², B², C², K²_interior}`.
pub fn dir_sup_norm_sq_with_interior(mode: &Mode, e: &Direction) -> f64 {
    if mode.family() != Family::W {
        return dir_sup_norm_sq(mode, e);
    }
    let coeffs = w_coeffs_raw(mode, e.components());
    let k2 = coeffs
        .max_sq()
        .max(interior_critical_sq(&coeffs).unwrap_or(0.0));
    w_prefactor(mode) * k2
}

/// Result of a grid maximization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleMax {
    pub value: f64,
    pub argmax: Point3,
}

/// Which coordinates the oracle scans for a family. Planar families do not
/// depend on their absent coordinate; `V` is scanned on the plane `x = 0`
/// where `cos²(mx) = 1`.
fn active_axes(family: Family) -> [bool; 3] {
    match family {
        Family::X0 | Family::V => [false, true, true],
        Family::Y0 => [true, false, true],
        Family::Z0 => [true, true, false],
        Family::W => [true, true, true],
    }
}

/// Per-axis factor tables: `tables[d][c][i]` is the factor of component
/// `c` along axis `d` at the `i`-th coordinate.
struct Tables {
    coords: [Vec<f64>; 3],
    factors: [[Vec<f64>; 3]; 3],
}

impl Tables {
    fn new(mode: &Mode, coords: [Vec<f64>; 3]) -> Self {
        let k = mode.wave_vector();
        let factors = std::array::from_fn(|d| {
            std::array::from_fn(|c| {
                coords[d]
                    .iter()
                    .map(|&t| if c == d { (k[d] * t).sin() } else { (k[d] * t).cos() })
                    .collect()
            })
        });
        Self { coords, factors }
    }
}

#[derive(Clone, Copy)]
struct Incumbent {
    value: f64,
    idx: [usize; 3],
}

impl Incumbent {
    const NONE: Self = Self {
        value: f64::NEG_INFINITY,
        idx: [usize::MAX; 3],
    };

    // Larger value wins; equal values keep the lexicographically smaller
    // index, which (coordinates being increasing) is the smaller point.
    fn better(self, other: Self) -> Self {
        if other.value > self.value || (other.value == self.value && other.idx < self.idx) {
            other
        } else {
            self
        }
    }
}

fn scan(tables: &Tables, weights: [f64; 3], projected: bool) -> Incumbent {
    let [fx, fy, fz] = &tables.factors;
    let (nx, ny, nz) = (
        tables.coords[0].len(),
        tables.coords[1].len(),
        tables.coords[2].len(),
    );
    (0..nx)
        .into_par_iter()
        .map(|i| {
            let mut best = Incumbent::NONE;
            for j in 0..ny {
                let pc: [f64; 3] =
                    std::array::from_fn(|c| weights[c] * fx[c][i] * fy[c][j]);
                for l in 0..nz {
                    let t0 = pc[0] * fz[0][l];
                    let t1 = pc[1] * fz[1][l];
                    let t2 = pc[2] * fz[2][l];
                    let v = if projected {
                        let s = t0 + t1 + t2;
                        s * s
                    } else {
                        t0 * t0 + t1 * t1 + t2 * t2
                    };
                    if v > best.value {
                        best = Incumbent {
                            value: v,
                            idx: [i, j, l],
                        };
                    }
                }
            }
            best
        })
        .reduce(|| Incumbent::NONE, Incumbent::better)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let h = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| (lo + h * i as f64).min(hi)).collect()
}

/// Maximum of `|φ|²` (or `(e·φ)²`) over a tensor grid of the closed cube,
/// optionally refined once by a ×10 subdivision of the cells around the
/// incumbent. The result is attained at a grid point, hence a lower bound
/// of the true supremum. Ties go to the lexicographically smallest point.
pub fn grid_sup_sq_oracle(mode: &Mode, e: Option<&Direction>, grid: &GridSpec) -> OracleMax {
    let active = active_axes(mode.family());
    let amp = mode.amplitudes();
    let weights = match e {
        Some(e) => {
            let d = e.components();
            std::array::from_fn(|c| d[c] * amp[c])
        }
        None => amp,
    };
    let projected = e.is_some();
    let n = grid.points_per_axis;
    let coords: [Vec<f64>; 3] = std::array::from_fn(|d| {
        if active[d] {
            linspace(0.0, PI, n)
        } else {
            vec![0.0]
        }
    });
    let tables = Tables::new(mode, coords);
    let best = scan(&tables, weights, projected);
    let point_of = |t: &Tables, idx: [usize; 3]| -> [f64; 3] {
        std::array::from_fn(|d| t.coords[d][idx[d]])
    };
    let mut value = best.value;
    let mut at = point_of(&tables, best.idx);

    if grid.refine {
        let h = grid.spacing();
        let local: [Vec<f64>; 3] = std::array::from_fn(|d| {
            if active[d] {
                let lo = (at[d] - h).max(0.0);
                let hi = (at[d] + h).min(PI);
                let pts = ((hi - lo) / h * 10.0).round() as usize + 1;
                linspace(lo, hi, pts.max(2))
            } else {
                vec![at[d]]
            }
        });
        let fine = Tables::new(mode, local);
        let refined = scan(&fine, weights, projected);
        if refined.value > value {
            value = refined.value;
            at = point_of(&fine, refined.idx);
        }
    }

    OracleMax {
        value,
        argmax: Point3::new(at[0], at[1], at[2]).expect("grid points lie in the cube"),
    }
}

/// Lipschitz constant of the oracle objective on the cube:
/// `2 (Σ_c |w_c|)² ‖k‖`, with `w_c = e_c amp_c` (or `amp_c` for `|φ|²`).
/// The grid maximum then misses the supremum by at most
/// `L · (√dims / 2) · spacing`.
pub fn oracle_lipschitz_bound(mode: &Mode, e: Option<&Direction>) -> f64 {
    let amp = mode.amplitudes();
    let k = mode.wave_vector();
    let w: f64 = match e {
        Some(e) => e
            .components()
            .iter()
            .zip(&amp)
            .map(|(d, a)| (d * a).abs())
            .sum(),
        None => amp.iter().map(|a| a.abs()).sum(),
    };
    let knorm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    2.0 * w * w * knorm
}

/// Number of coordinates the oracle scans for this mode.
pub fn oracle_dims(mode: &Mode) -> usize {
    active_axes(mode.family()).iter().filter(|&&a| a).count()
}
