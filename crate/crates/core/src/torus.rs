//! Penalized concentration simulator on a flat unit-volume torus.
//!
//! Discretizes J_α(u) = (∫|∇u|^p + α∫u^p)(∫u^q)^{p(1−θ)/(θq)} with a
//! forward-difference periodic gradient and minimizes it over the unit-L^r
//! sphere of nonnegative fields by projected gradient descent.
//!
//! Field reductions sort their addends before summing, so every reported sum
//! is invariant under permutations of the cells (discrete shifts included).

use serde::Serialize;
use thiserror::Error;

use crate::gn::{GnError, GnParams};

#[derive(Debug, Error)]
pub enum TorusError {
    #[error("field is identically zero")]
    ZeroField,
    #[error(transparent)]
    Domain(#[from] GnError),
}

/// Flat torus [0,1)^dim sampled on N points per side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusGrid {
    pub dim: u32,
    pub points_per_side: usize,
}

impl TorusGrid {
    pub fn new(dim: u32, points_per_side: usize) -> Result<Self, TorusError> {
        if dim != 2 && dim != 3 {
            return Err(GnError::domain(format!("grid dim must be 2 or 3, got {dim}")).into());
        }
        if points_per_side < 8 {
            return Err(GnError::domain(format!(
                "need at least 8 points per side, got {points_per_side}"
            ))
            .into());
        }
        Ok(TorusGrid {
            dim,
            points_per_side,
        })
    }

    pub fn side_length(&self) -> f64 {
        1.0
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.points_per_side as f64
    }

    pub fn cells(&self) -> usize {
        self.points_per_side.pow(self.dim)
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    pub fn coords(&self, idx: usize) -> Vec<usize> {
        let n = self.points_per_side;
        let mut c = vec![0usize; self.dim as usize];
        let mut rest = idx;
        for a in (0..self.dim as usize).rev() {
            c[a] = rest % n;
            rest /= n;
        }
        c
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        let n = self.points_per_side;
        coords.iter().fold(0, |acc, &c| acc * n + c)
    }

    /// Index of the periodic neighbor one step forward along `axis`.
    fn forward(&self, idx: usize, axis: usize) -> usize {
        let n = self.points_per_side;
        let stride = n.pow((self.dim as usize - 1 - axis) as u32);
        let pos = (idx / stride) % n;
        if pos + 1 == n {
            idx + stride - stride * n
        } else {
            idx + stride
        }
    }

    /// Index of the periodic neighbor one step backward along `axis`.
    fn backward(&self, idx: usize, axis: usize) -> usize {
        let n = self.points_per_side;
        let stride = n.pow((self.dim as usize - 1 - axis) as u32);
        let pos = (idx / stride) % n;
        if pos == 0 {
            idx + stride * n - stride
        } else {
            idx - stride
        }
    }
}

/// Nonnegative scalar field on a torus grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusField {
    pub grid: TorusGrid,
    values: Vec<f64>,
}

impl TorusField {
    pub fn new(grid: TorusGrid, values: Vec<f64>) -> Result<Self, TorusError> {
        if values.len() != grid.cells() {
            return Err(GnError::domain(format!(
                "expected {} values, got {}",
                grid.cells(),
                values.len()
            ))
            .into());
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(GnError::domain("field values must be finite and nonnegative").into());
        }
        Ok(TorusField { grid, values })
    }

    pub fn constant(grid: TorusGrid, c: f64) -> Result<Self, TorusError> {
        TorusField::new(grid, vec![c; grid.cells()])
    }

    pub fn from_fn(grid: TorusGrid, f: impl Fn(&[f64]) -> f64) -> Result<Self, TorusError> {
        let h = grid.spacing();
        let values = (0..grid.cells())
            .map(|idx| {
                let x: Vec<f64> = grid.coords(idx).iter().map(|&c| c as f64 * h).collect();
                f(&x)
            })
            .collect();
        TorusField::new(grid, values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// ∫ u^s dv, permutation-invariant summation.
    pub fn power_mass(&self, s: f64) -> f64 {
        let terms: Vec<f64> = self.values.iter().map(|&v| v.powf(s)).collect();
        stable_sum(terms) * self.grid.cell_volume()
    }

    pub fn lr_norm(&self, r: f64) -> f64 {
        self.power_mass(r).powf(1.0 / r)
    }
}

/// Sum after sorting by total order: deterministic and invariant under any
/// permutation of the addends.
fn stable_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.iter().sum()
}

/// Discrete p-Dirichlet energy Σ (|∇ₕu|² + δ²)^{p/2} h^dim with the
/// forward-difference periodic gradient.
pub fn p_dirichlet_energy(u: &TorusField, p: f64, delta: f64) -> f64 {
    let grid = u.grid;
    let h = grid.spacing();
    let d2 = delta * delta;
    let terms: Vec<f64> = (0..grid.cells())
        .map(|idx| {
            let mut s = d2;
            for axis in 0..grid.dim as usize {
                let du = (u.values[grid.forward(idx, axis)] - u.values[idx]) / h;
                s += du * du;
            }
            s.powf(0.5 * p)
        })
        .collect();
    stable_sum(terms) * grid.cell_volume()
}

/// Rescale to unit discrete L^r norm.
pub fn lr_normalize(u: &TorusField, r: f64) -> Result<TorusField, TorusError> {
    let norm = u.lr_norm(r);
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(TorusError::ZeroField);
    }
    let values = u.values.iter().map(|&v| v / norm).collect();
    Ok(TorusField {
        grid: u.grid,
        values,
    })
}

/// The discrete penalized functional
/// J_α(u) = (∫|∇ₕu|^p + α∫u^p)(∫u^q)^{p(1−θ)/(θq)}.
pub fn j_alpha(u: &TorusField, params: &GnParams, alpha: f64, delta: f64) -> f64 {
    let grad = p_dirichlet_energy(u, params.p, delta);
    let penalty_mass = u.power_mass(params.p);
    let q_mass = u.power_mass(params.q);
    (grad + alpha * penalty_mass) * q_mass.powf(params.mass_exponent())
}

/// L²-metric gradient of J_α (raw partials divided by the cell volume).
pub fn grad_j_alpha(u: &TorusField, params: &GnParams, alpha: f64, delta: f64) -> Vec<f64> {
    let grid = u.grid;
    let h = grid.spacing();
    let (p, q) = (params.p, params.q);
    let d2 = delta * delta;
    let cells = grid.cells();
    let dims = grid.dim as usize;

    // a(x) = (|∇ₕu|² + δ²)^{p/2−1}, shared by all difference terms at x
    let mut du = vec![vec![0.0; cells]; dims];
    let mut a = vec![0.0; cells];
    for idx in 0..cells {
        let mut s = d2;
        for axis in 0..dims {
            let d = (u.values[grid.forward(idx, axis)] - u.values[idx]) / h;
            du[axis][idx] = d;
            s += d * d;
        }
        a[idx] = s.powf(0.5 * p - 1.0);
    }

    let energy = p_dirichlet_energy(u, p, delta);
    let penalty_mass = u.power_mass(p);
    let q_mass = u.power_mass(q);
    let e = params.mass_exponent();
    let front = energy + alpha * penalty_mass;
    let mq_e = q_mass.powf(e);
    let chain = e * front * q_mass.powf(e - 1.0);

    (0..cells)
        .map(|idx| {
            let mut ge = 0.0;
            for axis in 0..dims {
                let back = grid.backward(idx, axis);
                ge += a[back] * du[axis][back] - a[idx] * du[axis][idx];
            }
            ge *= p / h;
            let v = u.values[idx];
            mq_e * (ge + alpha * p * v.powf(p - 1.0)) + chain * q * v.powf(q - 1.0)
        })
        .collect()
}

/// Options for the projected-gradient minimizer.
#[derive(Debug, Clone)]
pub struct SimOptions {
    /// Gradient-norm regularization; `None` picks 1e-8 for p < 2, else 0.
    pub delta: Option<f64>,
    pub max_iters: usize,
    pub rel_tol: f64,
    pub seed: u64,
    /// Radii for the concentration profile.
    pub radii: Vec<f64>,
    /// Extra starting point, tried alongside the bump and constant starts.
    pub warm_start: Option<TorusField>,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            delta: None,
            max_iters: 100_000,
            rel_tol: 1e-10,
            seed: 0,
            radii: vec![0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5],
            warm_start: None,
        }
    }
}

impl SimOptions {
    fn effective_delta(&self, p: f64) -> f64 {
        self.delta.unwrap_or(if p < 2.0 { 1e-8 } else { 0.0 })
    }
}

/// Per-run diagnostics; `q_mass = grad_energy + penalty` and
/// `mu_alpha·θ = nu_alpha` hold on every record.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct MinimizerDiagnostics {
    pub alpha: f64,
    pub nu_alpha: f64,
    #[serde(rename = "A_alpha")]
    pub a_alpha: f64,
    #[serde(rename = "B_alpha")]
    pub b_alpha: f64,
    pub mu_alpha: f64,
    pub grad_energy: f64,
    pub penalty: f64,
    pub q_mass: f64,
    pub max_index: Vec<usize>,
    pub concentration: Vec<(f64, f64)>,
    pub iterations: usize,
    pub converged: bool,
    pub el_residual: f64,
    pub final_step: f64,
}

/// Lowest lexicographic index among the cells attaining the maximum.
fn max_cell(u: &TorusField) -> usize {
    let mut best = 0;
    for (idx, &v) in u.values.iter().enumerate() {
        if v > u.values[best] {
            best = idx;
        }
    }
    best
}

/// Mass fraction of ∫u^r inside the periodic ball around the max cell, per
/// radius.
pub fn concentration_profile(u: &TorusField, r: f64, radii: &[f64]) -> Vec<(f64, f64)> {
    let grid = u.grid;
    let h = grid.spacing();
    let n = grid.points_per_side;
    let center = grid.coords(max_cell(u));
    let total = u.power_mass(r);
    let dist2: Vec<f64> = (0..grid.cells())
        .map(|idx| {
            let c = grid.coords(idx);
            let mut s = 0.0;
            for (a, &ci) in c.iter().enumerate() {
                let raw = ci.abs_diff(center[a]);
                let wrapped = raw.min(n - raw) as f64 * h;
                s += wrapped * wrapped;
            }
            s
        })
        .collect();
    radii
        .iter()
        .map(|&radius| {
            let terms: Vec<f64> = u
                .values
                .iter()
                .zip(&dist2)
                .filter(|&(_, &d2)| d2 <= radius * radius)
                .map(|(&v, _)| v.powf(r))
                .collect();
            let inside = stable_sum(terms) * grid.cell_volume();
            (radius, inside / total)
        })
        .collect()
}

struct RunResult {
    field: TorusField,
    nu: f64,
    iterations: usize,
    converged: bool,
    el_residual: f64,
    final_step: f64,
}

fn l2_inner(a: &[f64], b: &[f64], cell_volume: f64) -> f64 {
    let terms: Vec<f64> = a.iter().zip(b).map(|(&x, &y)| x * y).collect();
    stable_sum(terms) * cell_volume
}

fn descend(
    init: &TorusField,
    params: &GnParams,
    alpha: f64,
    options: &SimOptions,
) -> Result<RunResult, TorusError> {
    let delta = options.effective_delta(params.p);
    let grid = init.grid;
    let vol = grid.cell_volume();
    let r = params.r;
    let mut u = lr_normalize(init, r)?;
    let mut j = j_alpha(&u, params, alpha, delta);
    let mut step = 1.0;
    let mut streak = 0usize;
    let mut iterations = 0usize;
    let mut converged = false;
    let mut el_residual = f64::NAN;

    while iterations < options.max_iters {
        iterations += 1;
        let g = grad_j_alpha(&u, params, alpha, delta);
        let c: Vec<f64> = u.values.iter().map(|&v| v.powf(r - 1.0)).collect();
        let lambda = l2_inner(&g, &c, vol) / l2_inner(&c, &c, vol);
        let d: Vec<f64> = g.iter().zip(&c).map(|(&gi, &ci)| gi - lambda * ci).collect();
        let d_norm2 = l2_inner(&d, &d, vol);
        el_residual = d_norm2.sqrt();

        // Armijo backtracking along the tangential direction
        let mut accepted = false;
        let mut t = step;
        while t > 1e-18 {
            let trial: Vec<f64> = u
                .values
                .iter()
                .zip(&d)
                .map(|(&v, &di)| (v - t * di).max(0.0))
                .collect();
            let trial = TorusField {
                grid,
                values: trial,
            };
            let trial = match lr_normalize(&trial, r) {
                Ok(f) => f,
                Err(_) => {
                    t *= 0.5;
                    continue;
                }
            };
            let j_trial = j_alpha(&trial, params, alpha, delta);
            if j_trial <= j - 1e-4 * t * d_norm2 {
                let rel_change = (j - j_trial).abs() / j.abs().max(1e-300);
                u = trial;
                j = j_trial;
                step = (t * 1.5).min(1e6);
                accepted = true;
                if rel_change < options.rel_tol {
                    streak += 1;
                } else {
                    streak = 0;
                }
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            // no descent direction at machine precision: stationary point
            converged = true;
            step = t;
            break;
        }
        if streak >= 5 {
            converged = true;
            break;
        }
    }

    Ok(RunResult {
        field: u,
        nu: j,
        iterations,
        converged,
        el_residual,
        final_step: step,
    })
}

fn bump_start(grid: TorusGrid) -> Result<TorusField, TorusError> {
    let s = 0.15;
    TorusField::from_fn(grid, |x| {
        let mut d2 = 0.0;
        for &xi in x {
            let dx = (xi - 0.5).abs().min(1.0 - (xi - 0.5).abs());
            d2 += dx * dx;
        }
        (-d2 / (s * s)).exp()
    })
}

fn diagnostics_for(
    u: &TorusField,
    params: &GnParams,
    alpha: f64,
    options: &SimOptions,
    run: &RunResult,
) -> MinimizerDiagnostics {
    let delta = options.effective_delta(params.p);
    let energy = p_dirichlet_energy(u, params.p, delta);
    let penalty_mass = u.power_mass(params.p);
    let mq = u.power_mass(params.q);
    let front = energy + alpha * penalty_mass;
    let a_alpha = mq.powf(params.mass_exponent());
    let nu = front * a_alpha;
    let b_alpha = a_alpha * front / mq;
    MinimizerDiagnostics {
        alpha,
        nu_alpha: nu,
        a_alpha,
        b_alpha,
        mu_alpha: nu / params.theta,
        grad_energy: a_alpha * energy,
        penalty: a_alpha * (alpha * penalty_mass),
        q_mass: a_alpha * front,
        max_index: u.grid.coords(max_cell(u)),
        concentration: concentration_profile(u, params.r, &options.radii),
        iterations: run.iterations,
        converged: run.converged,
        el_residual: run.el_residual,
        final_step: run.final_step,
    }
}

/// Minimize J_α over the unit-L^r sphere from three starts (warm start if
/// given, centered bump, constant) and keep the lowest minimum.
pub fn minimize_j_alpha(
    params: &GnParams,
    grid: TorusGrid,
    alpha: f64,
    options: &SimOptions,
) -> Result<(TorusField, MinimizerDiagnostics), TorusError> {
    if !(alpha > 0.0) {
        return Err(GnError::domain(format!("alpha must be positive, got {alpha}")).into());
    }
    if params.p_star.is_finite() && params.r >= params.p_star {
        return Err(GnError::domain(format!(
            "simulator requires r < p* strictly (r = {}, p* = {})",
            params.r, params.p_star
        ))
        .into());
    }
    let mut starts: Vec<TorusField> = Vec::new();
    if let Some(w) = &options.warm_start {
        starts.push(w.clone());
    }
    starts.push(bump_start(grid)?);
    starts.push(TorusField::constant(grid, 1.0)?);

    let mut best: Option<RunResult> = None;
    for start in &starts {
        let run = descend(start, params, alpha, options)?;
        let better = match &best {
            None => true,
            Some(b) => run.nu < b.nu,
        };
        if better {
            best = Some(run);
        }
    }
    let run = best.expect("at least one start");
    let diag = diagnostics_for(&run.field, params, alpha, options, &run);
    Ok((run.field, diag))
}

/// Trend summary over the top half of an α-sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub records: Vec<MinimizerDiagnostics>,
    /// ν_α nondecreasing across the whole sweep (within 1e−8).
    pub nu_nondecreasing: bool,
    /// penalty/ν decreasing over the top half.
    pub penalty_share_decreasing: bool,
    /// concentration fraction at radius 0.2 nondecreasing over the top half.
    pub concentration_nondecreasing: bool,
}

pub fn concentration_at(diag: &MinimizerDiagnostics, radius: f64) -> Option<f64> {
    diag.concentration
        .iter()
        .find(|(r, _)| (r - radius).abs() < 1e-12)
        .map(|&(_, frac)| frac)
}

/// Run the sweep with warm starts and summarize the First and Second Step
/// trends.
pub fn alpha_sweep(
    params: &GnParams,
    grid: TorusGrid,
    alphas: &[f64],
    options: &SimOptions,
) -> Result<SweepReport, TorusError> {
    if alphas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(GnError::domain("alphas must be strictly increasing").into());
    }
    let mut records = Vec::with_capacity(alphas.len());
    let mut opts = options.clone();
    for &alpha in alphas {
        let (field, diag) = minimize_j_alpha(params, grid, alpha, &opts)?;
        opts.warm_start = Some(field);
        records.push(diag);
    }
    let nu_nondecreasing = records
        .windows(2)
        .all(|w| w[1].nu_alpha >= w[0].nu_alpha - 1e-8);
    let top = &records[records.len() / 2..];
    let penalty_share_decreasing = top.windows(2).all(|w| {
        w[1].penalty / w[1].nu_alpha < w[0].penalty / w[0].nu_alpha
    });
    let concentration_nondecreasing = top.windows(2).all(|w| {
        match (concentration_at(&w[0], 0.2), concentration_at(&w[1], 0.2)) {
            (Some(a), Some(b)) => b >= a,
            _ => false,
        }
    });
    Ok(SweepReport {
        records,
        nu_nondecreasing,
        penalty_share_decreasing,
        concentration_nondecreasing,
    })
}
