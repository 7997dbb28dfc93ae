//! Gagliardo–Nirenberg toolkit: parameter validation and closed-form best
//! constants, radial quadrature with tail correction, and a flat-torus
//! penalized concentration simulator.

pub mod gn;
pub mod quad;
pub mod special;
pub mod torus;

pub use gn::{
    blowup_regime_equivalence, closed_form_a, dpd_q_upper, dpd_r, extremal_profile, theta_raw,
    validate_params, GnError, GnParams, RadialProfile, Regime,
};
pub use quad::{
    blowup_coefficient, gn_quotient, moments, radial_integral, verify_extremality,
    ExtremalityReport, IntegralResult, MomentIntegrals, PanelRule, QuadError, QuadratureScheme,
    RadialIntegrand, TailModel,
};
pub use torus::{
    alpha_sweep, concentration_at, concentration_profile, grad_j_alpha, j_alpha, lr_normalize,
    minimize_j_alpha, p_dirichlet_energy, MinimizerDiagnostics, SimOptions, SweepReport,
    TorusError, TorusField, TorusGrid,
};
