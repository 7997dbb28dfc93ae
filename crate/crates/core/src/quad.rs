//! Radial quadrature over ℝⁿ with power-law tail correction, the GN quotient,
//! the moment integrals I₁–I₅, the blow-up coefficient and the numerical
//! extremality check.
//!
//! Integrands here are algebraic at infinity with exactly known exponents, so
//! the truncated tail is estimated from the leading power-law term instead of
//! pushing the truncation radius out. Panel evaluations are summed in a fixed
//! order; results are deterministic.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::gn::{closed_form_a, extremal_profile, GnError, GnParams, RadialProfile};
use crate::special::unit_sphere_area;

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("tail divergence: {0}")]
    TailDivergence(String),
    #[error("accuracy not met: {0}")]
    AccuracyNotMet(String),
    #[error("profile is identically zero")]
    ZeroProfile,
    #[error("extremality violated: perturbation seed {seed}, gateaux derivative {gateaux:e} exceeds bound {bound:e}")]
    ExtremalityViolated { seed: u64, gateaux: f64, bound: f64 },
    #[error(transparent)]
    Domain(#[from] GnError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PanelRule {
    GaussLegendre(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailModel {
    /// Estimate ∫_R^∞ from the known leading power-law term.
    PowerLawCorrection,
    /// Plain truncation at R.
    Drop,
}

/// Radial quadrature configuration: composite Gauss–Legendre panels on [0, R]
/// with geometric grading towards the origin.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureScheme {
    pub panel_rule: PanelRule,
    pub truncation_radius: f64,
    pub panels: usize,
    pub tail_model: TailModel,
    pub target_rel_err: f64,
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        QuadratureScheme {
            panel_rule: PanelRule::GaussLegendre(16),
            truncation_radius: 1e4,
            panels: 64,
            tail_model: TailModel::PowerLawCorrection,
            target_rel_err: 1e-8,
        }
    }
}

impl QuadratureScheme {
    fn order(&self) -> usize {
        let PanelRule::GaussLegendre(order) = self.panel_rule;
        order
    }

    fn validate(&self) -> Result<(), QuadError> {
        if !(self.truncation_radius > 0.0) {
            return Err(QuadError::AccuracyNotMet(format!(
                "truncation radius must be positive (got {})",
                self.truncation_radius
            )));
        }
        if self.panels < 1 || self.order() < 2 {
            return Err(QuadError::AccuracyNotMet(
                "need at least 1 panel and order 2".into(),
            ));
        }
        Ok(())
    }
}

/// Radial integrand f(ρ) with its algebraic tail exponent
/// (f ~ C ρ^{−decay_exponent}; infinite for super-algebraic decay).
#[derive(Clone)]
pub struct RadialIntegrand {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub decay_exponent: f64,
}

impl RadialIntegrand {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static, decay_exponent: f64) -> Self {
        RadialIntegrand {
            f: Arc::new(f),
            decay_exponent,
        }
    }

    /// |u|^s for a radial profile.
    pub fn profile_power(u: &RadialProfile, s: f64) -> Self {
        let decay = s * u_decay(u.decay_exponent);
        let u = u.clone();
        RadialIntegrand::new(move |rho| u.evaluate(rho).abs().powf(s), decay)
    }

    /// |u′|^s.
    pub fn derivative_power(u: &RadialProfile, s: f64) -> Self {
        let decay = s * u_decay(u.derivative_decay_exponent);
        let u = u.clone();
        RadialIntegrand::new(move |rho| u.evaluate_derivative(rho).abs().powf(s), decay)
    }

    /// Multiply by the weight ρ^k (lowers the effective decay by k).
    pub fn with_radial_weight(self, k: f64) -> Self {
        let f = self.f.clone();
        RadialIntegrand {
            f: Arc::new(move |rho| f(rho) * rho.powf(k)),
            decay_exponent: self.decay_exponent - k,
        }
    }

    fn eval(&self, rho: f64) -> f64 {
        (self.f)(rho)
    }
}

fn u_decay(d: f64) -> f64 {
    // s · ∞ must stay ∞, and s · NaN must not poison the check
    if d.is_infinite() {
        f64::INFINITY
    } else {
        d
    }
}

/// Integral value with an attached absolute-error estimate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntegralResult {
    pub value: f64,
    pub abs_error: f64,
}

/// The five moment integrals of the blow-up display.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentIntegrals {
    pub i1: IntegralResult,
    pub i2: IntegralResult,
    pub i3: IntegralResult,
    pub i4: IntegralResult,
    pub i5: IntegralResult,
}

fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    // Newton iteration on P_order; nodes symmetric about 0
    let n = order;
    let mut out = vec![(0.0, 0.0); n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0_f64, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0_f64, x);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

/// ∫_a^b g(ρ) dρ on geometric panels, fixed summation order.
fn integrate_segment(
    g: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    panels: usize,
    nodes: &[(f64, f64)],
    geometric_from: f64,
) -> f64 {
    // first edge at `a`, then geometric spacing from `geometric_from` to b
    let mut edges = Vec::with_capacity(panels + 1);
    edges.push(a);
    if panels > 1 {
        let r0 = geometric_from.max(a.max(1e-300));
        let ratio = (b / r0).powf(1.0 / (panels as f64 - 1.0));
        let mut e = r0;
        for _ in 1..panels {
            edges.push(e);
            e *= ratio;
        }
    }
    edges.push(b);
    let mut total = 0.0;
    for w in edges.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let mut panel = 0.0;
        for &(x, wt) in nodes {
            panel += wt * g(mid + half * x);
        }
        total += panel * half;
    }
    total
}

struct CoreResult {
    value: f64,
    quad_error: f64,
    tail: f64,
    tail_error: f64,
}

fn integrate_core(
    integrand: &RadialIntegrand,
    n: u32,
    panels: usize,
    radius: f64,
    order: usize,
    tail_model: TailModel,
) -> CoreResult {
    let nodes = gauss_legendre(order);
    let nf = n as f64;
    let g = |rho: f64| integrand.eval(rho) * rho.powf(nf - 1.0);
    let r0 = (radius * 1e-8).clamp(1e-8, 1e-3);
    let coarse = integrate_segment(&g, 0.0, radius, panels, &nodes, r0);
    let fine = integrate_segment(&g, 0.0, radius, 2 * panels, &nodes, r0);
    let quad_error = (fine - coarse).abs();

    let d = integrand.decay_exponent;
    let power_tail = |x: f64| {
        if d.is_infinite() {
            0.0
        } else {
            integrand.eval(x) * x.powf(nf) / (d - nf)
        }
    };
    let (tail, tail_error) = match tail_model {
        TailModel::Drop => (0.0, (integrand.eval(radius) * radius.powf(nf)).abs()),
        TailModel::PowerLawCorrection => {
            // refine the one-term model by integrating [R, 8R] explicitly
            let seg = integrate_segment(&g, radius, 8.0 * radius, 8, &nodes, 1.001 * radius);
            let refined = seg + power_tail(8.0 * radius);
            let model = power_tail(radius);
            (refined, (model - refined).abs())
        }
    };
    CoreResult {
        value: fine,
        quad_error,
        tail,
        tail_error,
    }
}

/// ∫_{ℝⁿ} f(|x|) dx = ω_{n−1} ∫₀^∞ f(ρ) ρ^{n−1} dρ with adaptive panel and
/// truncation-radius refinement until the error estimate meets the target.
pub fn radial_integral(
    integrand: &RadialIntegrand,
    n: u32,
    scheme: &QuadratureScheme,
) -> Result<IntegralResult, QuadError> {
    scheme.validate()?;
    let d = integrand.decay_exponent;
    if scheme.tail_model == TailModel::PowerLawCorrection && !(d > n as f64) {
        return Err(QuadError::TailDivergence(format!(
            "integrand decay exponent {d} must exceed the dimension n = {n}"
        )));
    }
    let omega = unit_sphere_area(n);
    let mut panels = scheme.panels;
    let mut radius = scheme.truncation_radius;
    loop {
        let core = integrate_core(integrand, n, panels, radius, scheme.order(), scheme.tail_model);
        let value = omega * (core.value + core.tail);
        let abs_error = omega * 2.0 * (core.quad_error + core.tail_error);
        if !value.is_finite() {
            return Err(QuadError::AccuracyNotMet(format!(
                "non-finite integral at panels = {panels}, R = {radius}"
            )));
        }
        if abs_error <= scheme.target_rel_err * value.abs().max(1e-300) {
            return Ok(IntegralResult { value, abs_error });
        }
        let can_refine_panels = panels < 4096;
        let can_extend_radius = radius < 1e13 && scheme.tail_model == TailModel::PowerLawCorrection;
        if core.quad_error >= core.tail_error && can_refine_panels {
            panels *= 2;
        } else if can_extend_radius && core.tail_error > core.quad_error {
            radius *= 8.0;
        } else if can_refine_panels {
            panels *= 2;
        } else {
            return Err(QuadError::AccuracyNotMet(format!(
                "refinement stalled at panels = {panels}, R = {radius}, est rel err = {:e}",
                abs_error / value.abs().max(1e-300)
            )));
        }
    }
}

fn check_profile_tails(u: &RadialProfile, params: &GnParams) -> Result<(), QuadError> {
    let n = params.n as f64;
    let checks = [
        ("∫|u|^q", params.q * u_decay(u.decay_exponent)),
        ("∫|u|^r", params.r * u_decay(u.decay_exponent)),
        ("∫|∇u|^p", params.p * u_decay(u.derivative_decay_exponent)),
    ];
    for (name, d) in checks {
        if !(d > n) {
            return Err(QuadError::TailDivergence(format!(
                "{name} diverges: decay exponent {d} ≤ n = {n}"
            )));
        }
    }
    Ok(())
}

/// The scale-invariant quotient
/// Q(u) = (∫|∇u|^p)(∫|u|^q)^{p(1−θ)/(θq)} / (∫|u|^r)^{p/(rθ)};
/// its infimum is A(p,q,r)^{−1}.
pub fn gn_quotient(
    u: &RadialProfile,
    params: &GnParams,
    scheme: &QuadratureScheme,
) -> Result<f64, QuadError> {
    check_profile_tails(u, params)?;
    let grad = radial_integral(
        &RadialIntegrand::derivative_power(u, params.p),
        params.n,
        scheme,
    )?;
    let mass_q = radial_integral(&RadialIntegrand::profile_power(u, params.q), params.n, scheme)?;
    let mass_r = radial_integral(&RadialIntegrand::profile_power(u, params.r), params.n, scheme)?;
    if !(mass_r.value > 1e-280) {
        return Err(QuadError::ZeroProfile);
    }
    Ok(grad.value * mass_q.value.powf(params.mass_exponent())
        / mass_r.value.powf(params.constraint_exponent()))
}

/// The moment integrals I₁ = ∫w^q, I₂ = ∫|∇w|^p|x|², I₃ = ∫w^q|x|²,
/// I₄ = ∫|∇w|^p, I₅ = ∫w^r|x|², with convergence preconditions checked first.
pub fn moments(params: &GnParams, scheme: &QuadratureScheme) -> Result<MomentIntegrals, QuadError> {
    let (n, p, q, r) = (params.n as f64, params.p, params.q, params.r);
    if !(q > p) {
        return Err(QuadError::Domain(GnError::domain(format!(
            "moment integrals require q > p (got p = {p}, q = {q})"
        ))));
    }
    let d_w = p / (q - p);
    let d_dw = d_w + 1.0;
    // fixed check order determines which condition an error names
    let conditions = [
        ("I1", q * d_w, n),
        ("I3", q * d_w, n + 2.0),
        ("I5", r * d_w, n + 2.0),
        ("I4", p * d_dw, n),
        ("I2", p * d_dw, n + 2.0),
    ];
    for (name, decay, bound) in conditions {
        if !(decay > bound) {
            return Err(QuadError::TailDivergence(format!(
                "{name} diverges: decay exponent {decay} ≤ {bound}"
            )));
        }
    }
    let w = extremal_profile(params)?;
    let i1 = radial_integral(&RadialIntegrand::profile_power(&w, q), params.n, scheme)?;
    let i2 = radial_integral(
        &RadialIntegrand::derivative_power(&w, p).with_radial_weight(2.0),
        params.n,
        scheme,
    )?;
    let i3 = radial_integral(
        &RadialIntegrand::profile_power(&w, q).with_radial_weight(2.0),
        params.n,
        scheme,
    )?;
    let i4 = radial_integral(&RadialIntegrand::derivative_power(&w, p), params.n, scheme)?;
    let i5 = radial_integral(
        &RadialIntegrand::profile_power(&w, r).with_radial_weight(2.0),
        params.n,
        scheme,
    )?;
    Ok(MomentIntegrals { i1, i2, i3, i4, i5 })
}

/// The ε²-order bracket of the blow-up display,
/// A_opt (I₁^{e} I₂ + e I₁ I₄ I₃^{e−1}) − (p/(rθ)) I₅ with e = p(1−θ)/(θq),
/// exactly as printed.
pub fn blowup_coefficient(
    params: &GnParams,
    scheme: &QuadratureScheme,
) -> Result<f64, QuadError> {
    let a_opt = closed_form_a(params)?;
    let m = moments(params, scheme)?;
    let e = params.mass_exponent();
    let bracket = a_opt
        * (m.i1.value.powf(e) * m.i2.value
            + e * m.i1.value * m.i4.value * m.i3.value.powf(e - 1.0))
        - params.constraint_exponent() * m.i5.value;
    Ok(bracket)
}

pub const EXTREMALITY_EPSILON: f64 = 1e-4;
pub const EXTREMALITY_TOL: f64 = 1e-5;
pub const EXTREMALITY_TOL_GRAD: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
pub struct PerturbationRecord {
    pub seed: u64,
    pub support: (f64, f64),
    pub amplitude: f64,
    pub q_plus: f64,
    pub q_minus: f64,
    pub gateaux: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalityReport {
    pub q_w: f64,
    pub a_closed: f64,
    /// |Q(w)·A(p,q) − 1|
    pub gap: f64,
    pub epsilon: f64,
    pub tol: f64,
    pub tol_grad: f64,
    pub perturbations: Vec<PerturbationRecord>,
}

/// C² bump polynomial ((ρ−a)(b−ρ))³ normalized to peak `amplitude` on [a, b].
fn bump_profile(a: f64, b: f64, amplitude: f64) -> RadialProfile {
    let half = 0.5 * (b - a);
    let norm = half.powi(6);
    let value = move |rho: f64| {
        if rho <= a || rho >= b {
            0.0
        } else {
            amplitude * ((rho - a) * (b - rho)).powi(3) / norm
        }
    };
    let derivative = move |rho: f64| {
        if rho <= a || rho >= b {
            0.0
        } else {
            amplitude * 3.0 * ((rho - a) * (b - rho)).powi(2) * (a + b - 2.0 * rho) / norm
        }
    };
    RadialProfile::new(value, derivative, f64::INFINITY, f64::INFINITY)
}

/// Check Q(w)·A(p,q) = 1 and that seeded compactly-supported perturbations do
/// not decrease the quotient to first order.
pub fn verify_extremality(
    params: &GnParams,
    scheme: &QuadratureScheme,
    perturbations: u32,
    seed: u64,
) -> Result<ExtremalityReport, QuadError> {
    let w = extremal_profile(params)?;
    let a_closed = closed_form_a(params)?;
    let q_w = gn_quotient(&w, params, scheme)?;
    let gap = (q_w * a_closed - 1.0).abs();
    let eps = EXTREMALITY_EPSILON;
    let tol = EXTREMALITY_TOL * q_w;
    let tol_grad = EXTREMALITY_TOL_GRAD * q_w;

    let mut records = Vec::with_capacity(perturbations as usize);
    for k in 0..perturbations {
        let pert_seed = seed.wrapping_add(k as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(pert_seed);
        let a = rng.gen_range(0.1..1.5);
        let width = rng.gen_range(0.3..2.0);
        let amplitude = rng.gen_range(0.2..1.0);
        let phi = bump_profile(a, a + width, amplitude);

        let plus = w.add(&phi.scale(eps));
        let minus = w.add(&phi.scale(-eps));
        let q_plus = gn_quotient(&plus, params, scheme)?;
        let q_minus = gn_quotient(&minus, params, scheme)?;
        let gateaux = (q_plus - q_minus) / (2.0 * eps);
        if q_plus < q_w - tol || q_minus < q_w - tol || gateaux.abs() > tol_grad {
            return Err(QuadError::ExtremalityViolated {
                seed: pert_seed,
                gateaux,
                bound: tol_grad,
            });
        }
        records.push(PerturbationRecord {
            seed: pert_seed,
            support: (a, a + width),
            amplitude,
            q_plus,
            q_minus,
            gateaux,
        });
    }
    Ok(ExtremalityReport {
        q_w,
        a_closed,
        gap,
        epsilon: eps,
        tol,
        tol_grad,
        perturbations: records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gn::{dpd_r, validate_params};
    use approx::assert_relative_eq;

    fn drop_scheme() -> QuadratureScheme {
        QuadratureScheme {
            tail_model: TailModel::Drop,
            truncation_radius: 50.0,
            ..Default::default()
        }
    }

    #[test]
    fn gauss_legendre_weights_sum_to_two() {
        for order in [2, 4, 8, 16, 31] {
            let s: f64 = gauss_legendre(order).iter().map(|&(_, w)| w).sum();
            assert_relative_eq!(s, 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn gaussian_integral() {
        let f = RadialIntegrand::new(|rho| (-rho * rho).exp(), f64::INFINITY);
        let got = radial_integral(&f, 2, &drop_scheme()).unwrap();
        assert_relative_eq!(got.value, std::f64::consts::PI, max_relative = 1e-10);
    }

    #[test]
    fn ball_volume() {
        let f = RadialIntegrand::new(|rho| if rho < 1.0 { 1.0 } else { 0.0 }, f64::INFINITY);
        // discontinuous integrand: generous target, single panel edge near 1
        let scheme = QuadratureScheme {
            tail_model: TailModel::Drop,
            truncation_radius: 1.0,
            target_rel_err: 1e-6,
            panels: 64,
            ..Default::default()
        };
        let got = radial_integral(&f, 3, &scheme).unwrap();
        assert_relative_eq!(got.value, 4.0 * std::f64::consts::PI / 3.0, max_relative = 1e-8);
    }

    #[test]
    fn algebraic_integral_beta_oracle() {
        // ∫_{ℝ³} (1+ρ²)^{−3} dx = π²/4
        let f = RadialIntegrand::new(|rho| (1.0 + rho * rho).powi(-3), 6.0);
        let got = radial_integral(&f, 3, &QuadratureScheme::default()).unwrap();
        assert_relative_eq!(got.value, 2.4674011002723397, max_relative = 1e-9);
        assert!(got.abs_error <= 1e-8 * got.value);
    }

    #[test]
    fn tail_divergence_rejected() {
        let f = RadialIntegrand::new(|rho| (1.0 + rho * rho).powf(-1.4), 2.8);
        assert!(matches!(
            radial_integral(&f, 3, &QuadratureScheme::default()),
            Err(QuadError::TailDivergence(_))
        ));
    }

    #[test]
    fn error_estimate_covers_refinement() {
        // doubling R and panels moves the value by less than the estimate
        let slow = RadialIntegrand::new(|rho| (1.0 + rho * rho).powf(-1.8), 3.6);
        let scheme = QuadratureScheme::default();
        let base = radial_integral(&slow, 3, &scheme).unwrap();
        let refined = radial_integral(
            &slow,
            3,
            &QuadratureScheme {
                truncation_radius: 2.0 * scheme.truncation_radius,
                panels: 2 * scheme.panels,
                target_rel_err: 1e-10,
                ..scheme
            },
        )
        .unwrap();
        assert!((base.value - refined.value).abs() <= base.abs_error.max(1e-13 * base.value));
    }

    #[test]
    fn quotient_matches_closed_form() {
        let params = validate_params(3, 2.0, 3.0, 4.0).unwrap();
        let w = extremal_profile(&params).unwrap();
        let q = gn_quotient(&w, &params, &QuadratureScheme::default()).unwrap();
        assert_relative_eq!(q, 7.3038721193751092, max_relative = 1e-7);
    }

    #[test]
    fn quotient_rejects_zero_profile() {
        let params = validate_params(3, 2.0, 3.0, 4.0).unwrap();
        let zero = RadialProfile::new(|_| 0.0, |_| 0.0, 4.0, 5.0);
        assert!(matches!(
            gn_quotient(&zero, &params, &QuadratureScheme::default()),
            Err(QuadError::ZeroProfile)
        ));
    }

    #[test]
    fn moments_at_3_2_3() {
        let params = validate_params(3, 2.0, 3.0, 4.0).unwrap();
        let m = moments(&params, &QuadratureScheme::default()).unwrap();
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        // Beta-integral oracle values: ∫ρ^{a−1}(1+ρ²)^{−b}dρ = B(a/2, b−a/2)/2
        assert_relative_eq!(m.i1.value, pi2 / 4.0, max_relative = 1e-8);
        assert_relative_eq!(m.i2.value, 2.5 * pi2, max_relative = 1e-8);
        assert_relative_eq!(m.i3.value, 0.75 * pi2, max_relative = 1e-8);
        assert_relative_eq!(m.i4.value, pi2 / 2.0, max_relative = 1e-8);
        assert_relative_eq!(m.i5.value, pi2 / 8.0, max_relative = 1e-8);
    }

    #[test]
    fn moments_divergent_case_raises() {
        // q = 3.9 at (n, p) = (3, 2): I₃ needs pq/(q−p) > 5 but 7.8/1.9 ≈ 4.1
        let params = validate_params(3, 2.0, 3.9, dpd_r(2.0, 3.9).unwrap()).unwrap();
        match moments(&params, &QuadratureScheme::default()) {
            Err(QuadError::TailDivergence(msg)) => assert!(msg.contains("I3"), "got: {msg}"),
            other => panic!("expected TailDivergence, got {other:?}"),
        }
    }

    #[test]
    fn blowup_coefficient_pinned() {
        let params = validate_params(5, 2.2, 2.5, dpd_r(2.2, 2.5).unwrap()).unwrap();
        let b = blowup_coefficient(&params, &QuadratureScheme::default()).unwrap();
        assert_relative_eq!(b, 153.73904059155115, max_relative = 1e-6);
        assert!(b > 0.0);
    }

    #[test]
    fn null_perturbation_is_exact() {
        let params = validate_params(3, 2.0, 3.0, 4.0).unwrap();
        let w = extremal_profile(&params).unwrap();
        let zero = RadialProfile::new(|_| 0.0, |_| 0.0, f64::INFINITY, f64::INFINITY);
        let scheme = QuadratureScheme::default();
        let q_plus = gn_quotient(&w.add(&zero.scale(1e-4)), &params, &scheme).unwrap();
        let q_minus = gn_quotient(&w.add(&zero.scale(-1e-4)), &params, &scheme).unwrap();
        assert_eq!(q_plus, q_minus);
    }

    #[test]
    fn scaling_direction_is_flat() {
        // φ = w: homogeneity makes the derivative vanish up to quadrature error
        let params = validate_params(3, 2.0, 3.0, 4.0).unwrap();
        let w = extremal_profile(&params).unwrap();
        let scheme = QuadratureScheme::default();
        let q0 = gn_quotient(&w, &params, &scheme).unwrap();
        let eps = 1e-4;
        let q_plus = gn_quotient(&w.scale(1.0 + eps), &params, &scheme).unwrap();
        let q_minus = gn_quotient(&w.scale(1.0 - eps), &params, &scheme).unwrap();
        let gateaux = (q_plus - q_minus) / (2.0 * eps);
        assert!(gateaux.abs() <= 1e-6 * q0, "gateaux = {gateaux:e}");
    }
}
