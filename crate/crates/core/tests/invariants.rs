//! Cross-module invariants: the equivalence between the algebraic
//! integrability conditions and flatness of the modified connection along
//! the traced moduli curve, the exclusivity of the orientation sign, scaling
//! behaviour, and property-based identities of the defining polynomials.

use num_complex::Complex64;
use proptest::prelude::*;
use wkspin_core::clifford::{quaternionic_map, Spinor};
use wkspin_core::moduli::{self, ab_coords, q_poly, q_via_symmetric, Branch};
use wkspin_core::space::ModuliParams;
use wkspin_core::spin;

fn curve_points(branch: Branch, n: usize) -> Vec<ModuliParams> {
    let curve = moduli::trace_branch(0.05, 10.0, n, branch).unwrap();
    let pts: Vec<ModuliParams> = curve
        .ok_samples()
        .map(|s| ModuliParams::new(1.0, s.l, s.m))
        .collect();
    assert_eq!(pts.len(), n, "all samples should enrich cleanly");
    pts
}

#[test]
fn conditions_equivalent_to_flatness_along_both_branches() {
    // residuals of the three conditions vanish exactly where the curvature
    // certificate reports flat, and the flipped sign breaks both
    for branch in [Branch::Plus, Branch::Minus] {
        for p in curve_points(branch, 100) {
            let lam = spin::wk_number(&p).unwrap();
            let res = spin::integrability_residuals(&p, &lam).unwrap();
            let om = spin::curvature_omega(&p, &lam).unwrap();
            assert!(om.flat, "not flat at {p:?}");
            assert!(res.max_abs() < 1e-8, "residuals {res:?} at {p:?}");

            let bad = lam.flipped();
            let res = spin::integrability_residuals(&p, &bad).unwrap();
            let om = spin::curvature_omega(&p, &bad).unwrap();
            assert!(!om.flat, "flipped sign must not be flat at {p:?}");
            assert!(om.max_norm > 1e-3);
            // the flipped second-condition residual is 8|lambda S T_a|, which
            // decays like M^4 toward the flat corner but stays well clear of
            // the vanishing threshold
            assert!(
                res.r2.max_abs() > 1e-8,
                "flipped residual too small at {p:?}"
            );
        }
    }
}

#[test]
fn sign_rule_covers_both_orientation_cases() {
    // negating a triple lands on the variety again (Q has even degree) with
    // M < -K, exercising the negative branch of the orientation rule
    for branch in [Branch::Plus, Branch::Minus] {
        for p in curve_points(branch, 25) {
            let lam = spin::wk_number(&p).unwrap();
            assert_eq!(lam.sign, 1, "traced points sit in the -K < M case");

            let neg = p.scale(-1.0);
            assert!(moduli::q_poly(neg.k, neg.l, neg.m).abs() < 1e-6);
            let lam_neg = spin::wk_number(&neg).unwrap();
            assert_eq!(lam_neg.sign, -1);
            assert!((lam_neg.lambda + lam.lambda).abs() < 1e-12 * (1.0 + lam.lambda.abs()));

            let om = spin::curvature_omega(&neg, &lam_neg).unwrap();
            assert!(om.flat, "sign rule must certify the negated triple");
            let om = spin::curvature_omega(&neg, &lam_neg.flipped()).unwrap();
            assert!(!om.flat && om.max_norm > 1e-3);
        }
    }
}

#[test]
fn connection_matrices_commute_with_j_along_curve() {
    let psi_samples = [
        Spinor::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        Spinor::new(Complex64::new(0.3, -0.7), Complex64::new(0.2, 0.9)),
    ];
    for p in curve_points(Branch::Minus, 40) {
        let lam = spin::wk_number(&p).unwrap();
        let conn = spin::spinor_connection(&p, &lam).unwrap();
        for a in 0..3 {
            for psi in &psi_samples {
                let lhs = quaternionic_map(&conn.matrix(a).apply(psi));
                let rhs = conn.matrix(a).apply(&quaternionic_map(psi));
                let gap = (lhs.0[0] - rhs.0[0]).norm() + (lhs.0[1] - rhs.0[1]).norm();
                assert!(gap < 1e-12 * (1.0 + conn.matrix(a).max_abs()));
            }
        }
    }
}

#[test]
fn lambda_and_curvature_scale_correctly_on_curve() {
    for p in curve_points(Branch::Plus, 20) {
        let lam = spin::wk_number(&p).unwrap();
        for mu in [0.5, 2.0, 7.0] {
            let q = p.scale(mu);
            let lam_q = spin::wk_number(&q).unwrap();
            assert!(
                (lam_q.lambda - mu * lam.lambda).abs() < 1e-10 * (1.0 + (mu * lam.lambda).abs())
            );
            let om = spin::curvature_omega(&p, &lam.flipped()).unwrap();
            let om_q = spin::curvature_omega(&q, &lam_q.flipped()).unwrap();
            assert!(
                (om_q.max_norm - mu * mu * om.max_norm).abs()
                    < 1e-10 * (1.0 + mu * mu * om.max_norm)
            );
        }
    }
}

#[test]
fn invariant_closed_form_matches_along_curve() {
    for branch in [Branch::Plus, Branch::Minus] {
        let curve = moduli::trace_branch(0.05, 10.0, 120, branch).unwrap();
        for s in curve.ok_samples() {
            let p = ModuliParams::new(1.0, s.l, s.m);
            let closed = spin::homothety_invariant_closed_form(&p).unwrap();
            assert!(
                (s.invariant - closed).abs() < 1e-10 * (1.0 + closed.abs()),
                "invariant mismatch at M = {}",
                s.m
            );
        }
    }
}

proptest! {
    #[test]
    fn q_forms_agree(k in -5.0f64..5.0, l in -5.0f64..5.0, m in -5.0f64..5.0) {
        let a = q_poly(k, l, m);
        let b = q_via_symmetric(k, l, m);
        let scale = 1.0f64.max(a.abs()).max(b.abs());
        prop_assert!((a - b).abs() <= 1e-12 * scale);
    }

    #[test]
    fn q_is_homogeneous_of_degree_six(
        k in -3.0f64..3.0, l in -3.0f64..3.0, m in -3.0f64..3.0, mu in 0.1f64..3.0
    ) {
        let q = q_poly(k, l, m);
        let q_mu = q_poly(mu * k, mu * l, mu * m);
        let scale = 1.0f64.max(q.abs() * mu.powi(6));
        prop_assert!((q_mu - mu.powi(6) * q).abs() <= 1e-11 * scale);
    }

    #[test]
    fn q_symmetry_in_k_negl_m(k in -5.0f64..5.0, l in -5.0f64..5.0, m in -5.0f64..5.0) {
        let base = q_poly(k, l, m);
        let scale = 1.0f64.max(base.abs());
        prop_assert!((q_poly(m, l, k) - base).abs() <= 1e-12 * scale);
        prop_assert!((q_poly(-l, -k, m) - base).abs() <= 1e-12 * scale);
        prop_assert!((q_poly(k, -m, -l) - base).abs() <= 1e-12 * scale);
    }

    #[test]
    fn ab_change_of_variables_identity(l in -3.0f64..3.0, m in -3.0f64..3.0) {
        let (a, b) = ab_coords(l, m);
        let gap = q_poly(1.0, l, m) + a.powi(3) - 4.0 * b * (1.0 + a);
        prop_assert!(gap.abs() <= 1e-12 * (1.0 + a.abs()).powi(3));
    }
}
