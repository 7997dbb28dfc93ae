//! Property tests for exponent identities and the quotient's invariances.

use gn_toolkit::gn::{dpd_r, theta_raw, validate_params, RadialProfile};
use gn_toolkit::quad::{gn_quotient, moments, QuadError, QuadratureScheme};
use gn_toolkit::{extremal_profile, gn_quotient as quotient};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn theta_is_in_unit_interval(
        n in 3u32..=10,
        pu in 0.01f64..0.95,
        qu in 0.0f64..0.95,
        ru in 0.05f64..1.0,
    ) {
        let p = 1.0 + pu * (n as f64 - 1.0);
        let p_star = n as f64 * p / (n as f64 - p);
        let q = 1.0 + qu * (p_star - 1.0 - 0.05);
        let r = q + ru * (p_star - q);
        let params = validate_params(n, p, q, r).unwrap();
        prop_assert!(params.theta > 0.0 && params.theta <= 1.0 + 1e-12);
        // theta = 1 exactly at the Sobolev endpoint, and only there
        if (r - p_star).abs() < 1e-14 {
            prop_assert!((params.theta - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn identity_dt_holds(
        n in 3u32..=10,
        pu in 0.01f64..0.95,
        qu in 0.0f64..0.95,
        ru in 0.05f64..0.95,
    ) {
        let nf = n as f64;
        let p = 1.0 + pu * (nf - 1.0);
        let p_star = nf * p / (nf - p);
        let q = 1.0 + qu * (p_star - 1.0 - 0.05);
        let r = q + ru * (p_star - q);
        let theta = theta_raw(n, p, q, r);
        prop_assume!(theta < 1.0 - 1e-10);
        let lhs = theta * q / (p * (1.0 - theta));
        let rhs = nf * (r - q) / (nf * p + r * p - nf * r);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }
}

fn random_admissible_profile(rng: &mut impl Rng) -> RadialProfile {
    // gaussian plus a fast algebraic bump: tails valid for (3, 2, 3, 4)
    let g = RadialProfile::gaussian(rng.gen_range(0.2..2.0), rng.gen_range(0.3..3.0));
    let a = RadialProfile::algebraic(rng.gen_range(0.2..2.0), rng.gen_range(2.0..5.0));
    g.add(&a)
}

#[test]
fn quotient_is_scaling_invariant() {
    let params = validate_params(3, 2.0, 3.0, 4.0).unwrap();
    let scheme = QuadratureScheme::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let u = random_admissible_profile(&mut rng);
        let base = gn_quotient(&u, &params, &scheme).unwrap();
        for c in [0.5, 2.0, 10.0] {
            let scaled = gn_quotient(&u.scale(c), &params, &scheme).unwrap();
            assert!(
                (scaled / base - 1.0).abs() <= 1e-10,
                "c = {c}: {scaled} vs {base}"
            );
        }
    }
}

#[test]
fn quotient_is_dilation_invariant() {
    let params = validate_params(3, 2.0, 3.0, 4.0).unwrap();
    let scheme = QuadratureScheme::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..5 {
        let u = random_admissible_profile(&mut rng);
        let base = gn_quotient(&u, &params, &scheme).unwrap();
        for beta in [0.5, 2.0] {
            let dilated = gn_quotient(&u.dilate(beta), &params, &scheme).unwrap();
            assert!(
                (dilated / base - 1.0).abs() <= 5.0 * scheme.target_rel_err,
                "beta = {beta}: {dilated} vs {base}"
            );
        }
    }
}

#[test]
fn extremal_profile_minimizes_the_quotient() {
    let params = validate_params(3, 2.0, 3.0, 4.0).unwrap();
    let scheme = QuadratureScheme::default();
    let w = extremal_profile(&params).unwrap();
    let q_w = quotient(&w, &params, &scheme).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for i in 0..50 {
        let u = random_admissible_profile(&mut rng);
        let q_u = quotient(&u, &params, &scheme).unwrap();
        assert!(
            q_u >= q_w * (1.0 - 5.0 * scheme.target_rel_err),
            "profile {i}: Q(u) = {q_u} below Q(w) = {q_w}"
        );
    }
}

#[test]
fn divergent_moment_tuples_are_rejected() {
    // at (n, p) = (3, 2) the I3 condition 2q/(q−2) > 5 fails for q ≥ 10/3
    let scheme = QuadratureScheme::default();
    for q in [3.4, 3.6, 3.8, 3.99] {
        let params = validate_params(3, 2.0, q, dpd_r(2.0, q).unwrap()).unwrap();
        match moments(&params, &scheme) {
            Err(QuadError::TailDivergence(_)) => {}
            other => panic!("q = {q}: expected TailDivergence, got {other:?}"),
        }
    }
}
