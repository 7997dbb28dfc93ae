//! Parameter validation, regime classification, the interpolation exponent,
//! the closed-form best constant and the extremal radial profile.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::special::log_gamma;

#[derive(Debug, Error)]
pub enum GnError {
    #[error("{0}")]
    Domain(String),
}

impl GnError {
    pub fn domain(msg: impl Into<String>) -> Self {
        GnError::Domain(msg.into())
    }
}

/// Parameter regime, ordered weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// 1 < p < n, 1 ≤ q < r ≤ p*.
    GeneralGn,
    /// 1 < p ≤ 2 with p < r and 1 ≤ q < r < p*, or p = r > 1 with p²/2 ≤ q < p.
    TheoremValidity,
    /// p < q < p(n−1)/(n−p) with r = p(q−1)/(p−1): closed-form constant range.
    DelPinoDolbeault,
    /// Del Pino–Dolbeault constraints plus p > max{2, 2q/3}.
    BlowupNonvalidity,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::GeneralGn => "GeneralGN",
            Regime::TheoremValidity => "TheoremValidity",
            Regime::DelPinoDolbeault => "DelPinoDolbeault",
            Regime::BlowupNonvalidity => "BlowupNonvalidity",
        };
        f.write_str(s)
    }
}

/// Validated (n, p, q, r) tuple with derived quantities.
///
/// Regime comparisons are strict inequalities on the raw inputs; nothing is
/// snapped to a boundary. `theta` is computed once here and every downstream
/// exponent reads the stored value.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GnParams {
    pub n: u32,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub theta: f64,
    pub p_star: f64,
    pub regime: Regime,
}

impl GnParams {
    /// Mass-term exponent p(1−θ)/(θq) appearing in the functional.
    pub fn mass_exponent(&self) -> f64 {
        self.p * (1.0 - self.theta) / (self.theta * self.q)
    }

    /// Constraint-term exponent p/(rθ).
    pub fn constraint_exponent(&self) -> f64 {
        self.p / (self.r * self.theta)
    }
}

fn theta_formula(n: f64, p: f64, q: f64, r: f64) -> f64 {
    n * p * (r - q) / (r * (q * (p - n) + n * p))
}

/// Direct evaluation of θ(p,q,r) = np(r−q)/(r(q(p−n)+np)) on raw inputs.
pub fn theta_raw(n: u32, p: f64, q: f64, r: f64) -> f64 {
    theta_formula(n as f64, p, q, r)
}

/// r = p(q−1)/(p−1), the third exponent of the closed-form range.
pub fn dpd_r(p: f64, q: f64) -> Result<f64, GnError> {
    if !(p > 1.0) {
        return Err(GnError::domain(format!("p must exceed 1 (got p = {p})")));
    }
    Ok(p * (q - 1.0) / (p - 1.0))
}

/// Upper bound p(n−1)/(n−p) on q in the closed-form range.
pub fn dpd_q_upper(n: u32, p: f64) -> f64 {
    p * (n as f64 - 1.0) / (n as f64 - p)
}

fn dpd_constraints_hold(n: u32, p: f64, q: f64, r: f64) -> bool {
    p > 1.0
        && p < n as f64
        && q > p
        && q < dpd_q_upper(n, p)
        && r == p * (q - 1.0) / (p - 1.0)
}

/// Validate a raw tuple and classify it into the strongest regime it satisfies.
pub fn validate_params(n: u32, p: f64, q: f64, r: f64) -> Result<GnParams, GnError> {
    if n < 2 {
        return Err(GnError::domain(format!("n must be ≥ 2 (got n = {n})")));
    }
    for (name, v) in [("p", p), ("q", q), ("r", r)] {
        if !v.is_finite() {
            return Err(GnError::domain(format!("{name} must be finite (got {v})")));
        }
    }
    if !(p > 1.0) {
        return Err(GnError::domain(format!("p must exceed 1 (got p = {p})")));
    }
    if !(q >= 1.0) {
        return Err(GnError::domain(format!("q must be ≥ 1 (got q = {q})")));
    }
    let nf = n as f64;
    let p_star = if p < nf { nf * p / (nf - p) } else { f64::INFINITY };

    // p = r branch of the validity theorem: q sits below p, not above.
    let theorem_pr = p == r && p > 1.0 && q >= 1.0 && p * p / 2.0 <= q && q < p;

    if !theorem_pr {
        if !(q < r) {
            return Err(GnError::domain(format!("q must be < r (got q = {q}, r = {r})")));
        }
        if !(r <= p_star) {
            return Err(GnError::domain(format!(
                "r must be ≤ p* = {p_star} (got r = {r})"
            )));
        }
    }

    let general = p < nf && q < r && r <= p_star;
    let theorem = theorem_pr || (p <= 2.0 && p < r && q < r && r < p_star);
    let dpd = dpd_constraints_hold(n, p, q, r);
    let blowup = dpd && p > 2.0 && p > 2.0 * q / 3.0;

    let regime = if blowup {
        Regime::BlowupNonvalidity
    } else if dpd {
        Regime::DelPinoDolbeault
    } else if theorem {
        Regime::TheoremValidity
    } else if general {
        Regime::GeneralGn
    } else {
        return Err(GnError::domain(format!(
            "tuple (n={n}, p={p}, q={q}, r={r}) matches no regime: requires p < n = {n} for the general range"
        )));
    };

    let theta = theta_formula(nf, p, q, r);
    if !(theta > 0.0 && theta <= 1.0 + 1e-12) {
        return Err(GnError::domain(format!(
            "derived theta = {theta} falls outside (0, 1]"
        )));
    }

    Ok(GnParams {
        n,
        p,
        q,
        r,
        theta: theta.min(1.0),
        p_star,
        regime,
    })
}

/// The interpolation exponent np(r−q)/(r(q(p−n)+np)) of the stored tuple.
pub fn theta(params: &GnParams) -> f64 {
    params.theta
}

/// Closed-form best constant A(p,q) on the Del Pino–Dolbeault range
/// p < q ≤ p(n−1)/(n−p), evaluated through `log_gamma`.
///
/// The closed upper endpoint q = p(n−1)/(n−p) is the Sobolev case r = p*,
/// where the expression stays finite and θ = 1.
pub fn closed_form_a(params: &GnParams) -> Result<f64, GnError> {
    let (n, p, q) = (params.n as f64, params.p, params.q);
    if !(q > p) {
        return Err(GnError::domain(format!(
            "closed-form constant requires q > p (got p = {p}, q = {q})"
        )));
    }
    if params.p >= n {
        return Err(GnError::domain(format!(
            "closed-form constant requires p < n (got p = {p}, n = {n})"
        )));
    }
    let q_upper = dpd_q_upper(params.n, p);
    if q > q_upper {
        return Err(GnError::domain(format!(
            "closed-form constant requires q ≤ p(n-1)/(n-p) = {q_upper} (got q = {q})"
        )));
    }
    let r = p * (q - 1.0) / (p - 1.0);
    if (r - params.r).abs() > 1e-12 * r.abs().max(1.0) {
        return Err(GnError::domain(format!(
            "closed-form constant requires r = p(q-1)/(p-1) = {r} (got r = {})",
            params.r
        )));
    }
    let theta = params.theta;
    let sqrt_pi = std::f64::consts::PI.sqrt();

    let log_t1 = p * ((q - p) / (p * sqrt_pi)).ln();
    let log_t2 = (p * q / (n * (q - p))).ln();
    let log_t3 = (p / (r * theta)) * ((n * p - q * (n - p)) / (p * q)).ln();
    let log_gamma_quotient = log_gamma(q * (p - 1.0) / (q - p))?
        + log_gamma(n / 2.0 + 1.0)?
        - log_gamma((p - 1.0) / p * (n * p - q * (n - p)) / (q - p))?
        - log_gamma(n * (p - 1.0) / p + 1.0)?;
    let log_t4 = (p / n) * log_gamma_quotient;

    Ok((log_t1 + log_t2 + log_t3 + log_t4).exp())
}

/// A nonnegative radial function with known algebraic tail.
///
/// `decay_exponent` is d in value ~ C ρ^{−d} as ρ → ∞ (infinite for
/// super-algebraic decay); likewise for the derivative.
#[derive(Clone)]
pub struct RadialProfile {
    value: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    derivative: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub decay_exponent: f64,
    pub derivative_decay_exponent: f64,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("decay_exponent", &self.decay_exponent)
            .field("derivative_decay_exponent", &self.derivative_decay_exponent)
            .finish()
    }
}

impl RadialProfile {
    pub fn new(
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
        decay_exponent: f64,
        derivative_decay_exponent: f64,
    ) -> Self {
        RadialProfile {
            value: Arc::new(value),
            derivative: Arc::new(derivative),
            decay_exponent,
            derivative_decay_exponent,
        }
    }

    pub fn evaluate(&self, rho: f64) -> f64 {
        (self.value)(rho)
    }

    pub fn evaluate_derivative(&self, rho: f64) -> f64 {
        (self.derivative)(rho)
    }

    /// Gaussian e^{−(ρ/s)²}, super-algebraic tail.
    pub fn gaussian(amplitude: f64, width: f64) -> Self {
        let s2 = width * width;
        RadialProfile::new(
            move |rho| amplitude * (-rho * rho / s2).exp(),
            move |rho| amplitude * (-2.0 * rho / s2) * (-rho * rho / s2).exp(),
            f64::INFINITY,
            f64::INFINITY,
        )
    }

    /// Algebraic bump a (1 + ρ²)^{−k}, decay 2k.
    pub fn algebraic(amplitude: f64, k: f64) -> Self {
        RadialProfile::new(
            move |rho| amplitude * (1.0 + rho * rho).powf(-k),
            move |rho| amplitude * (-k) * (1.0 + rho * rho).powf(-k - 1.0) * 2.0 * rho,
            2.0 * k,
            2.0 * k + 1.0,
        )
    }

    /// Pointwise sum; tail exponents take the slower decay of the two.
    pub fn add(&self, other: &RadialProfile) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let (da, db) = (self.clone(), other.clone());
        RadialProfile::new(
            move |rho| a.evaluate(rho) + b.evaluate(rho),
            move |rho| da.evaluate_derivative(rho) + db.evaluate_derivative(rho),
            self.decay_exponent.min(other.decay_exponent),
            self.derivative_decay_exponent
                .min(other.derivative_decay_exponent),
        )
    }

    /// c · u(ρ).
    pub fn scale(&self, c: f64) -> Self {
        let (a, da) = (self.clone(), self.clone());
        RadialProfile::new(
            move |rho| c * a.evaluate(rho),
            move |rho| c * da.evaluate_derivative(rho),
            self.decay_exponent,
            self.derivative_decay_exponent,
        )
    }

    /// u(βρ), β > 0.
    pub fn dilate(&self, beta: f64) -> Self {
        let (a, da) = (self.clone(), self.clone());
        RadialProfile::new(
            move |rho| a.evaluate(beta * rho),
            move |rho| beta * da.evaluate_derivative(beta * rho),
            self.decay_exponent,
            self.derivative_decay_exponent,
        )
    }
}

/// The extremal profile w(ρ) = (1 + (q−p)/(p−1) ρ^{p/(p−1)})^{−(p−1)/(q−p)}.
///
/// Decay exponents are analytic in (p, q): p/(q−p) for w and p/(q−p)+1 for w′.
pub fn extremal_profile(params: &GnParams) -> Result<RadialProfile, GnError> {
    let (p, q) = (params.p, params.q);
    if !(q > p) {
        return Err(GnError::domain(format!(
            "extremal profile requires q > p (got p = {p}, q = {q})"
        )));
    }
    let k = (q - p) / (p - 1.0);
    let m = p / (p - 1.0);
    let s = (p - 1.0) / (q - p);
    let value = move |rho: f64| (1.0 + k * rho.powf(m)).powf(-s);
    let derivative = move |rho: f64| {
        if rho == 0.0 {
            // m > 1 for all p > 1, so the derivative vanishes at the origin
            return 0.0;
        }
        -s * (1.0 + k * rho.powf(m)).powf(-s - 1.0) * k * m * rho.powf(m - 1.0)
    };
    Ok(RadialProfile::new(
        value,
        derivative,
        p / (q - p),
        p / (q - p) + 1.0,
    ))
}

/// The two equivalent statements of the non-validity regime when
/// q = p(n−1)/(n−p): (p > max{2, 2q/3}, 2 < p < (n+2)/3).
pub fn blowup_regime_equivalence(n: u32, p: f64) -> (bool, bool) {
    let q = dpd_q_upper(n, p);
    let predicate1 = p > 2.0_f64.max(2.0 * q / 3.0);
    let predicate2 = 2.0 < p && p < (n as f64 + 2.0) / 3.0;
    (predicate1, predicate2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn regime_classification() {
        let dpd = validate_params(3, 2.0, 3.0, 4.0).unwrap();
        assert_eq!(dpd.regime, Regime::DelPinoDolbeault);
        assert_relative_eq!(dpd.theta, 0.5, epsilon = 1e-15);

        let sobolev = validate_params(3, 2.0, 3.0, 6.0).unwrap();
        assert_eq!(sobolev.regime, Regime::GeneralGn);
        assert!((sobolev.theta - 1.0).abs() <= 1e-12);

        assert!(validate_params(2, 1.0, 1.0, 2.0)
            .unwrap_err()
            .to_string()
            .contains("p must exceed 1"));
    }

    #[test]
    fn theorem_regime_allows_p_equal_n() {
        // dimension-2 simulator tuple
        let params = validate_params(2, 2.0, 2.0, 3.0).unwrap();
        assert_eq!(params.regime, Regime::TheoremValidity);
        assert!(params.p_star.is_infinite());
        assert_relative_eq!(params.theta, 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn theorem_regime_p_equals_r_branch() {
        // p = r > 1, p²/2 ≤ q < p
        let params = validate_params(4, 1.5, 1.2, 1.5).unwrap();
        assert_eq!(params.regime, Regime::TheoremValidity);
    }

    #[test]
    fn blowup_regime_detected() {
        let r = dpd_r(2.2, 2.5).unwrap();
        let params = validate_params(5, 2.2, 2.5, r).unwrap();
        assert_eq!(params.regime, Regime::BlowupNonvalidity);
        assert_relative_eq!(params.theta, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn theta_examples() {
        // Nash tuple: 4/(2·(0+4)) = 0.5
        assert_relative_eq!(theta_raw(2, 2.0, 1.0, 2.0), 0.5, epsilon = 1e-15);
        assert_relative_eq!(theta_raw(3, 2.0, 3.0, 4.0), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn dpd_r_examples() {
        assert_relative_eq!(dpd_r(2.0, 3.0).unwrap(), 4.0, epsilon = 1e-15);
        assert_relative_eq!(dpd_r(1.5, 2.0).unwrap(), 3.0, epsilon = 1e-15);
        assert_relative_eq!(dpd_r(2.0, 5.0).unwrap(), 2.0 * (5.0 - 1.0), epsilon = 1e-15);
        assert!(dpd_r(1.0, 2.0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let params = validate_params(3, 2.0, 3.0, 4.0).unwrap();
        let a = closed_form_a(&params).unwrap();
        // (1/(4π)) (4/√π)^{2/3}
        let expect = 1.0 / (4.0 * std::f64::consts::PI)
            * (4.0 / std::f64::consts::PI.sqrt()).powf(2.0 / 3.0);
        assert_relative_eq!(a, expect, max_relative = 1e-13);
        assert_relative_eq!(a, 0.13691367861538574, max_relative = 1e-12);

        let params = validate_params(4, 2.0, 2.5, dpd_r(2.0, 2.5).unwrap()).unwrap();
        assert_relative_eq!(
            closed_form_a(&params).unwrap(),
            0.080073286134432419,
            max_relative = 1e-12
        );
    }

    #[test]
    fn closed_form_near_sobolev_endpoint() {
        // q → p(n−1)/(n−p) = 4 at (n, p) = (3, 2): finite, no blow-up
        let mut prev = None;
        for q in [3.9, 3.95, 3.99, 3.999] {
            let params = validate_params(3, 2.0, q, dpd_r(2.0, q).unwrap()).unwrap();
            let a = closed_form_a(&params).unwrap();
            assert!(a.is_finite() && a > 0.0);
            if let Some(p) = prev {
                let ratio: f64 = a / p;
                assert!(ratio > 0.5 && ratio < 2.0, "no continuity blow-up");
            }
            prev = Some(a);
        }
    }

    #[test]
    fn closed_form_rejects_out_of_range() {
        let params = validate_params(3, 2.0, 3.0, 6.0).unwrap(); // r ≠ dpd_r
        assert!(closed_form_a(&params).is_err());
    }

    #[test]
    fn extremal_profile_examples() {
        let params = validate_params(3, 2.0, 4.0, dpd_r(2.0, 4.0).unwrap()).unwrap();
        let w = extremal_profile(&params).unwrap();
        assert_relative_eq!(w.evaluate(0.0), 1.0, epsilon = 1e-15);
        assert_relative_eq!(w.evaluate(1.0), 1.0 / 3.0_f64.sqrt(), max_relative = 1e-14);

        let params = validate_params(3, 2.0, 3.0, 4.0).unwrap();
        let w = extremal_profile(&params).unwrap();
        assert_relative_eq!(w.evaluate(2.0), 1.0 / 5.0, max_relative = 1e-14);
        assert_relative_eq!(w.decay_exponent, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn extremal_requires_q_above_p() {
        let params = validate_params(2, 2.0, 2.0, 3.0).unwrap();
        assert!(extremal_profile(&params).is_err());
    }

    #[test]
    fn profile_tail_constant() {
        // w(ρ) ρ^{p/(q−p)} → ((q−p)/(p−1))^{−(p−1)/(q−p)}
        for (n, p, q) in [(3, 2.0, 3.0), (3, 1.5, 2.0), (5, 1.8, 2.2)] {
            let params = validate_params(n, p, q, dpd_r(p, q).unwrap()).unwrap();
            let w = extremal_profile(&params).unwrap();
            let d = w.decay_exponent;
            let expect = ((q - p) / (p - 1.0)).powf(-(p - 1.0) / (q - p));
            let at = |rho: f64| w.evaluate(rho) * rho.powf(d);
            let (a, b) = (at(1e3), at(2e3));
            assert!((a / expect - 1.0).abs() < 0.01, "tail constant at 1e3: {a} vs {expect}");
            assert!((b / a - 1.0).abs() < 0.01, "ratio test {a} vs {b}");
        }
    }

    #[test]
    fn profile_strictly_decreasing_and_derivative_consistent() {
        let params = validate_params(3, 1.5, 2.0, 3.0).unwrap();
        let w = extremal_profile(&params).unwrap();
        let mut prev = w.evaluate(0.0);
        let mut rho = 0.05;
        while rho < 50.0 {
            let v = w.evaluate(rho);
            assert!(v < prev, "w not strictly decreasing at {rho}");
            // central finite difference check
            let h = 1e-6 * rho.max(1.0);
            let fd = (w.evaluate(rho + h) - w.evaluate(rho - h)) / (2.0 * h);
            let an = w.evaluate_derivative(rho);
            assert!(
                (fd - an).abs() <= 1e-6 * an.abs().max(1e-12),
                "derivative mismatch at {rho}: {fd} vs {an}"
            );
            prev = v;
            rho *= 1.4;
        }
    }

    #[test]
    fn blowup_equivalence_grid() {
        // full grid n ∈ {4..20}, p scanned in (1, n) step 0.01
        let mut checked = 0usize;
        for n in 4..=20u32 {
            let mut p = 1.01;
            while p < n as f64 - 1e-9 {
                let q = dpd_q_upper(n, p);
                let b1 = (p - 2.0_f64.max(2.0 * q / 3.0)).abs() > 1e-9;
                let b2 = (p - 2.0).abs() > 1e-9 && (p - (n as f64 + 2.0) / 3.0).abs() > 1e-9;
                if b1 && b2 {
                    let (lhs, rhs) = blowup_regime_equivalence(n, p);
                    assert_eq!(lhs, rhs, "mismatch at n = {n}, p = {p}");
                    checked += 1;
                }
                p += 0.01;
            }
        }
        assert!(checked > 10_000);
    }

    #[test]
    fn blowup_equivalence_examples() {
        assert_eq!(blowup_regime_equivalence(10, 3.0), (true, true));
        assert_eq!(blowup_regime_equivalence(10, 4.5), (false, false));
        assert_eq!(blowup_regime_equivalence(5, 2.1), (true, true));
    }
}
