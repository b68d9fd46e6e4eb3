//! The five explicit eigenfunction families of the Stokes problem on the
//! cube `Ω = (0, π)³`:
//!
//! ```text
//! -Δφ = λφ,  ∇·φ = 0  in Ω,
//! φ₁ = ∂ₓφ₂ = ∂ₓφ₃ = 0 on x ∈ {0, π}   (and cyclically for y, z).
//! ```
//!
//! Each component of every family is a single separable product in which
//! the component's own coordinate carries a sine and the other two carry
//! cosines:
//!
//! ```text
//! φ_c(ξ) = amp_c · sin(k_c ξ_c) · Π_{d≠c} cos(k_d ξ_d)
//! ```
//!
//! with wave vector `k = (m, n, p)` (the absent index of `X0`, `Y0`, `Z0`
//! is zero). [`Mode::amplitudes`] and [`Mode::wave_vector`] expose that
//! representation; everything else in this module is built on it.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::quadrature::{gauss_legendre, trapezoid_rule};

/// Eigenfunction family. The declaration order is the tie-break order used
/// when enumerating modes of equal eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X0,
    Y0,
    Z0,
    V,
    W,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::X0, Family::Y0, Family::Z0, Family::V, Family::W];

    pub fn name(self) -> &'static str {
        match self {
            Family::X0 => "X0",
            Family::Y0 => "Y0",
            Family::Z0 => "Z0",
            Family::V => "V",
            Family::W => "W",
        }
    }

    /// Index of the axis whose wavenumber is zero, if any.
    pub fn absent_axis(self) -> Option<usize> {
        match self {
            Family::X0 => Some(0),
            Family::Y0 => Some(1),
            Family::Z0 => Some(2),
            Family::V | Family::W => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One eigenfunction: a family tag plus the indices `(m, n, p)`, with `0`
/// standing for the index a planar family does not carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    family: Family,
    m: u32,
    n: u32,
    p: u32,
}

impl Mode {
    pub fn new(family: Family, m: u32, n: u32, p: u32) -> Result<Self> {
        let ok = match family {
            Family::X0 => m == 0 && n >= 1 && p >= 1,
            Family::Y0 => n == 0 && m >= 1 && p >= 1,
            Family::Z0 => p == 0 && m >= 1 && n >= 1,
            Family::V | Family::W => m >= 1 && n >= 1 && p >= 1,
        };
        if !ok {
            return domain(format!("invalid indices ({m},{n},{p}) for family {family}"));
        }
        Ok(Self { family, m, n, p })
    }

    pub fn x0(n: u32, p: u32) -> Result<Self> {
        Self::new(Family::X0, 0, n, p)
    }
    pub fn y0(m: u32, p: u32) -> Result<Self> {
        Self::new(Family::Y0, m, 0, p)
    }
    pub fn z0(m: u32, n: u32) -> Result<Self> {
        Self::new(Family::Z0, m, n, 0)
    }
    pub fn v(m: u32, n: u32, p: u32) -> Result<Self> {
        Self::new(Family::V, m, n, p)
    }
    pub fn w(m: u32, n: u32, p: u32) -> Result<Self> {
        Self::new(Family::W, m, n, p)
    }

    /// Builds a mode of `family` from the two or three indices it carries,
    /// listed in axis order; used by enumeration loops.
    pub fn from_active(family: Family, i: u32, j: u32, k: u32) -> Result<Self> {
        match family {
            Family::X0 => Self::x0(i, j),
            Family::Y0 => Self::y0(i, j),
            Family::Z0 => Self::z0(i, j),
            Family::V => Self::v(i, j, k),
            Family::W => Self::w(i, j, k),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn indices(&self) -> [u32; 3] {
        [self.m, self.n, self.p]
    }

    /// Largest of the three wavenumbers.
    pub fn max_wavenumber(&self) -> u32 {
        self.m.max(self.n).max(self.p)
    }

    /// `λ = m² + n² + p²`, with the absent index contributing nothing.
    pub fn eigenvalue(&self) -> u32 {
        self.m * self.m + self.n * self.n + self.p * self.p
    }

    pub fn wave_vector(&self) -> [f64; 3] {
        [self.m as f64, self.n as f64, self.p as f64]
    }

    /// Component amplitudes `amp_c` of the separable representation,
    /// normalization prefactor included.
    pub fn amplitudes(&self) -> [f64; 3] {
        let [m, n, p] = self.wave_vector();
        let pi3 = PI * PI * PI;
        match self.family {
            Family::X0 => {
                let k = 2.0 / (pi3 * (n * n + p * p)).sqrt();
                [0.0, k * p, -k * n]
            }
            Family::Y0 => {
                let k = 2.0 / (pi3 * (m * m + p * p)).sqrt();
                [-k * p, 0.0, k * m]
            }
            Family::Z0 => {
                let k = 2.0 / (pi3 * (m * m + n * n)).sqrt();
                [k * n, -k * m, 0.0]
            }
            Family::V => {
                let k = 2.0 * SQRT_2 / (pi3 * (n * n + p * p)).sqrt();
                [0.0, k * p, -k * n]
            }
            Family::W => {
                let np = n * n + p * p;
                let k = 2.0 * SQRT_2 / (pi3 * (m * m + np) * np).sqrt();
                [k * np, -k * m * n, -k * m * p]
            }
        }
    }

    /// Evaluates the field at an arbitrary point of `ℝ³` (the closed forms
    /// extend smoothly past the cube; finite differences rely on that).
    pub fn field_at(&self, x: f64, y: f64, z: f64) -> [f64; 3] {
        let k = self.wave_vector();
        let amp = self.amplitudes();
        let (s0, c0) = (k[0] * x).sin_cos();
        let (s1, c1) = (k[1] * y).sin_cos();
        let (s2, c2) = (k[2] * z).sin_cos();
        [amp[0] * s0 * c1 * c2, amp[1] * c0 * s1 * c2, amp[2] * c0 * c1 * s2]
    }

    /// Analytic Jacobian `J[c][d] = ∂_d φ_c` at an arbitrary point.
    pub fn jacobian_at(&self, x: f64, y: f64, z: f64) -> [[f64; 3]; 3] {
        let k = self.wave_vector();
        let amp = self.amplitudes();
        let xi = [x, y, z];
        let sc: [(f64, f64); 3] = std::array::from_fn(|d| (k[d] * xi[d]).sin_cos());
        let mut jac = [[0.0; 3]; 3];
        for (c, row) in jac.iter_mut().enumerate() {
            for (d, entry) in row.iter_mut().enumerate() {
                let mut prod = amp[c];
                for (e, &(s, co)) in sc.iter().enumerate() {
                    prod *= match (e == c, e == d) {
                        (true, false) => s,
                        (false, false) => co,
                        // d/dξ sin(kξ) = k cos(kξ)
                        (true, true) => k[e] * co,
                        // d/dξ cos(kξ) = -k sin(kξ)
                        (false, true) => -k[e] * s,
                    };
                }
                *entry = prod;
            }
        }
        jac
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{},{})", self.family, self.m, self.n, self.p)
    }
}

/// A point of the closed cube `[0, π]³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let inside = |t: f64| (0.0..=PI).contains(&t);
        if !(inside(x) && inside(y) && inside(z)) {
            return domain(format!("point ({x}, {y}, {z}) is outside [0, π]³"));
        }
        Ok(Self { x, y, z })
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Distance to the nearest face of the cube.
    pub fn boundary_distance(&self) -> f64 {
        self.coords()
            .iter()
            .map(|&t| t.min(PI - t))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Value of a vector field at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldValue(pub [f64; 3]);

impl FieldValue {
    pub fn dot(&self, other: &[f64; 3]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(&self.0)
    }

    pub fn max_abs_diff(&self, other: &FieldValue) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadScheme {
    UniformTrapezoid,
    Gauss,
}

/// Settings for the tensor-product quadrature and the finite-difference
/// residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    nodes_per_axis: usize,
    scheme: QuadScheme,
    fd_step: f64,
}

impl QuadSpec {
    pub fn new(nodes_per_axis: usize, scheme: QuadScheme, fd_step: f64) -> Result<Self> {
        if nodes_per_axis < 2 {
            return domain("nodes_per_axis must be at least 2");
        }
        if !(fd_step > 0.0 && fd_step <= 0.01) {
            return domain(format!("fd_step {fd_step} outside (0, 0.01]"));
        }
        Ok(Self {
            nodes_per_axis,
            scheme,
            fd_step,
        })
    }

    /// Trapezoid rule with enough nodes for modes up to `max_wavenumber`.
    pub fn trapezoid_for(max_wavenumber: u32) -> Self {
        Self {
            nodes_per_axis: 2 * max_wavenumber as usize + 2,
            scheme: QuadScheme::UniformTrapezoid,
            fd_step: 1e-4,
        }
    }

    pub fn nodes_per_axis(&self) -> usize {
        self.nodes_per_axis
    }
    pub fn scheme(&self) -> QuadScheme {
        self.scheme
    }
    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    fn rule(&self) -> (Vec<f64>, Vec<f64>) {
        match self.scheme {
            QuadScheme::UniformTrapezoid => trapezoid_rule(self.nodes_per_axis, 0.0, PI),
            QuadScheme::Gauss => gauss_legendre(self.nodes_per_axis, 0.0, PI),
        }
    }

    fn check_resolution(&self, max_wavenumber: u32) -> Result<()> {
        let need = 2 * max_wavenumber as usize + 2;
        if self.nodes_per_axis < need {
            return Err(Error::Precondition(format!(
                "{} nodes per axis cannot resolve wavenumber {max_wavenumber} (need {need})",
                self.nodes_per_axis
            )));
        }
        Ok(())
    }
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            nodes_per_axis: 32,
            scheme: QuadScheme::UniformTrapezoid,
            fd_step: 1e-4,
        }
    }
}

pub fn eigenvalue(mode: &Mode) -> u32 {
    mode.eigenvalue()
}

pub fn evaluate(mode: &Mode, point: &Point3) -> FieldValue {
    FieldValue(mode.field_at(point.x, point.y, point.z))
}

/// `∇·φ` from term-wise differentiation (trace of the analytic Jacobian).
pub fn divergence(mode: &Mode, point: &Point3) -> f64 {
    let j = mode.jacobian_at(point.x, point.y, point.z);
    j[0][0] + j[1][1] + j[2][2]
}

/// Finite-difference residuals of the eigen equation and of the divergence
/// constraint at an interior point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdResidual {
    /// `max_c |(-Δ_h φ - λφ)_c|` with central second differences.
    pub eigen: f64,
    /// `|∇_h · φ|` with central first differences.
    pub div: f64,
}

pub fn fd_residual(mode: &Mode, point: &Point3, spec: &QuadSpec) -> Result<FdResidual> {
    let h = spec.fd_step;
    if point.boundary_distance() < 2.0 * h {
        return domain(format!(
            "point within {} of the boundary; finite differences need distance >= {}",
            point.boundary_distance(),
            2.0 * h
        ));
    }
    let xi = point.coords();
    let at = |d: usize, off: f64| {
        let mut q = xi;
        q[d] += off;
        mode.field_at(q[0], q[1], q[2])
    };
    let center = mode.field_at(xi[0], xi[1], xi[2]);
    let lambda = mode.eigenvalue() as f64;

    let mut lap = [0.0; 3];
    let mut div = 0.0;
    for d in 0..3 {
        let fwd = at(d, h);
        let bwd = at(d, -h);
        for c in 0..3 {
            lap[c] += (fwd[c] - 2.0 * center[c] + bwd[c]) / (h * h);
        }
        div += (fwd[d] - bwd[d]) / (2.0 * h);
    }
    let eigen = (0..3)
        .map(|c| (-lap[c] - lambda * center[c]).abs())
        .fold(0.0, f64::max);
    Ok(FdResidual {
        eigen,
        div: div.abs(),
    })
}

/// Every valid mode with eigenvalue at most `lambda_max`, ordered by
/// eigenvalue, then family, then `(m, n, p)`.
pub fn enumerate_modes(lambda_max: f64) -> Vec<(Mode, u32)> {
    if !(lambda_max >= 2.0) {
        return Vec::new();
    }
    let kmax = lambda_max.sqrt().floor() as u32;
    let mut out = Vec::new();
    for family in Family::ALL {
        let third = if family.absent_axis().is_some() { 1 } else { kmax };
        for i in 1..=kmax {
            for j in 1..=kmax {
                for k in 1..=third {
                    let mode = Mode::from_active(family, i, j, k).expect("indices are positive");
                    let lambda = mode.eigenvalue();
                    if f64::from(lambda) <= lambda_max {
                        out.push((mode, lambda));
                    }
                }
            }
        }
    }
    out.sort_by_key(|&(mode, lambda)| (lambda, mode));
    out
}

/// Samples of a mode's field on the tensor grid of a quadrature rule.
fn sample_field(mode: &Mode, nodes: &[f64]) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(nodes.len().pow(3));
    for &x in nodes {
        for &y in nodes {
            for &z in nodes {
                out.push(mode.field_at(x, y, z));
            }
        }
    }
    out
}

fn tensor_weights(weights: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(weights.len().pow(3));
    for wx in weights {
        for wy in weights {
            for wz in weights {
                out.push(wx * wy * wz);
            }
        }
    }
    out
}

/// `∫_Ω φ_i · φ_j dξ` on the tensor grid of `spec`.
pub fn inner_product(mode_i: &Mode, mode_j: &Mode, spec: &QuadSpec) -> Result<f64> {
    spec.check_resolution(mode_i.max_wavenumber().max(mode_j.max_wavenumber()))?;
    let (nodes, weights) = spec.rule();
    let w = tensor_weights(&weights);
    let fi = sample_field(mode_i, &nodes);
    let fj = sample_field(mode_j, &nodes);
    Ok(pair_sum(&w, &fi, &fj))
}

fn pair_sum(w: &[f64], fi: &[[f64; 3]], fj: &[[f64; 3]]) -> f64 {
    w.iter()
        .zip(fi.iter().zip(fj))
        .map(|(w, (a, b))| w * (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]))
        .sum()
}

/// Gram matrix of `modes` under the `L²(Ω)` pairing. Fields are sampled once
/// per mode, so the cost is dominated by the pairwise sums.
pub fn gram_matrix(modes: &[Mode], spec: &QuadSpec) -> Result<Vec<Vec<f64>>> {
    let kmax = modes.iter().map(Mode::max_wavenumber).max().unwrap_or(0);
    spec.check_resolution(kmax)?;
    let (nodes, weights) = spec.rule();
    let w = tensor_weights(&weights);
    let fields: Vec<_> = modes.iter().map(|m| sample_field(m, &nodes)).collect();
    let n = modes.len();
    let mut gram = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = pair_sum(&w, &fields[i], &fields[j]);
            gram[i][j] = v;
            gram[j][i] = v;
        }
    }
    Ok(gram)
}

/// `∫_Ω ∇φ_i : ∇φ_j dξ`, which equals `λ_i δ_ij` for this basis.
pub fn gradient_inner_product(mode_i: &Mode, mode_j: &Mode, spec: &QuadSpec) -> Result<f64> {
    spec.check_resolution(mode_i.max_wavenumber().max(mode_j.max_wavenumber()))?;
    let (nodes, weights) = spec.rule();
    let mut total = 0.0;
    for (&x, wx) in nodes.iter().zip(&weights) {
        for (&y, wy) in nodes.iter().zip(&weights) {
            for (&z, wz) in nodes.iter().zip(&weights) {
                let a = mode_i.jacobian_at(x, y, z);
                let b = mode_j.jacobian_at(x, y, z);
                let mut s = 0.0;
                for c in 0..3 {
                    for d in 0..3 {
                        s += a[c][d] * b[c][d];
                    }
                }
                total += wx * wy * wz * s;
            }
        }
    }
    Ok(total)
}

/// Max-norm gap between a `V` or `W` mode and its factorization through
/// the planar families:
///
/// ```text
/// V_mnp = √2 cos(mx) X0_np
/// W_mnp = n√2√(m²+n²)/√(λ(n²+p²)) cos(pz) Z0_mn − p√2√(m²+p²)/√(λ(n²+p²)) cos(ny) Y0_mp
/// ```
pub fn factorization_residual(mode: &Mode, point: &Point3) -> Result<f64> {
    let (m, n, p) = (mode.m, mode.n, mode.p);
    let lhs = evaluate(mode, point);
    let rhs = match mode.family {
        Family::V => {
            let x0 = evaluate(&Mode::x0(n, p)?, point);
            let s = SQRT_2 * (m as f64 * point.x).cos();
            FieldValue(x0.0.map(|v| s * v))
        }
        Family::W => {
            let [mf, nf, pf] = mode.wave_vector();
            let denom = ((mf * mf + nf * nf + pf * pf) * (nf * nf + pf * pf)).sqrt();
            let cz = nf * SQRT_2 * (mf * mf + nf * nf).sqrt() / denom * (pf * point.z).cos();
            let cy = pf * SQRT_2 * (mf * mf + pf * pf).sqrt() / denom * (nf * point.y).cos();
            let z0 = evaluate(&Mode::z0(m, n)?, point);
            let y0 = evaluate(&Mode::y0(m, p)?, point);
            FieldValue(std::array::from_fn(|c| cz * z0.0[c] - cy * y0.0[c]))
        }
        other => return domain(format!("no factorization identity for family {other}")),
    };
    Ok(lhs.max_abs_diff(&rhs))
}
