//! The `check` and `elliptic` subcommands.

use crate::{EXIT_DOMAIN, EXIT_OFF_VARIETY, EXIT_OK};
use num_complex::Complex64;
use serde::Serialize;
use wkspin_core::clifford::Spinor;
use wkspin_core::elliptic::{identity_residuals, lm_from_z, q_poly_complex, EllipticPoint, Sheet};
use wkspin_core::moduli::ModuliPoint;
use wkspin_core::space::{ricci_from_params, ModuliParams};
use wkspin_core::spin;

#[derive(Serialize)]
struct ParamsOut {
    k: f64,
    l: f64,
    m: f64,
}

#[derive(Serialize)]
struct RicciOut {
    a: f64,
    b: f64,
    c: f64,
    s: f64,
    ric_norm_sq: f64,
}

/// Aggregated report of one parameter triple.
#[derive(Serialize)]
pub struct CheckReport {
    schema: u32,
    params: ParamsOut,
    ricci: RicciOut,
    q_residual: f64,
    q_scale: f64,
    tol: f64,
    on_variety: bool,
    lambda: Option<f64>,
    lambda_sign: Option<i8>,
    r1: Option<f64>,
    r2: Option<[f64; 3]>,
    r3: Option<[f64; 3]>,
    max_curvature_norm: Option<f64>,
    flat: Option<bool>,
    einstein_residual: Option<f64>,
    einstein_sign: Option<f64>,
    invariant: Option<f64>,
    errors: Vec<String>,
}

pub fn build_report(k: f64, l: f64, m: f64, tol: f64) -> CheckReport {
    let p = ModuliParams::new(k, l, m);
    let r = ricci_from_params(&p);
    let pt = ModuliPoint::new(p);
    let mut report = CheckReport {
        schema: 1,
        params: ParamsOut { k, l, m },
        ricci: RicciOut {
            a: r.a,
            b: r.b,
            c: r.c,
            s: r.s,
            ric_norm_sq: r.ric_norm_sq,
        },
        q_residual: pt.q_residual,
        q_scale: pt.q_scale(),
        tol,
        on_variety: pt.is_on_variety(tol),
        lambda: None,
        lambda_sign: None,
        r1: None,
        r2: None,
        r3: None,
        max_curvature_norm: None,
        flat: None,
        einstein_residual: None,
        einstein_sign: None,
        invariant: None,
        errors: Vec::new(),
    };

    let lam = match spin::wk_number(&p) {
        Ok(lam) => lam,
        Err(e) => {
            report.errors.push(e.to_string());
            return report;
        }
    };
    report.lambda = Some(lam.lambda);
    report.lambda_sign = Some(lam.sign);

    match spin::integrability_residuals(&p, &lam) {
        Ok(res) => {
            report.r1 = Some(res.r1);
            report.r2 = Some([res.r2[0], res.r2[1], res.r2[2]]);
            report.r3 = Some([res.r3[0], res.r3[1], res.r3[2]]);
        }
        Err(e) => report.errors.push(e.to_string()),
    }

    match spin::curvature_omega(&p, &lam) {
        Ok(om) => {
            report.max_curvature_norm = Some(om.max_norm);
            // classify with the report tolerance so hand-entered decimals
            // are judged at their own precision
            let threshold = tol * (1.0 + p.norm_sq() + lam.lambda * lam.lambda);
            report.flat = Some(om.max_norm < threshold);
        }
        Err(e) => report.errors.push(e.to_string()),
    }

    let psi0 = Spinor::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    match spin::verify_einstein_from_wk(&p, &lam, &psi0) {
        Ok(check) => {
            report.einstein_residual = Some(check.residual);
            report.einstein_sign = Some(check.sign);
        }
        Err(e) => report.errors.push(e.to_string()),
    }

    match spin::homothety_invariant(&p, &lam) {
        Ok(v) => report.invariant = Some(v),
        Err(e) => report.errors.push(e.to_string()),
    }

    report
}

pub fn exit_code(report: &CheckReport) -> i32 {
    if report.on_variety && report.flat == Some(true) && report.errors.is_empty() {
        EXIT_OK
    } else if !report.on_variety && report.lambda.is_some() {
        EXIT_OFF_VARIETY
    } else {
        EXIT_DOMAIN
    }
}

fn print_text(report: &CheckReport) {
    println!(
        "params: K = {}  L = {}  M = {}",
        report.params.k, report.params.l, report.params.m
    );
    println!(
        "ricci:  A = {:.12}  B = {:.12}  C = {:.12}  S = {:.12}  |Ric|^2 = {:.12}",
        report.ricci.a, report.ricci.b, report.ricci.c, report.ricci.s, report.ricci.ric_norm_sq
    );
    println!(
        "Q = {:.6e}  (bound {:.1e} * {:.3e})  on_variety: {}",
        report.q_residual, report.tol, report.q_scale, report.on_variety
    );
    match (report.lambda, report.lambda_sign) {
        (Some(lam), Some(sign)) => println!(
            "lambda = {:.16}  (orientation sign {})",
            lam,
            if sign > 0 { "+: -K < M" } else { "-: M < -K" }
        ),
        _ => println!("lambda: unavailable"),
    }
    if let (Some(r1), Some(r2), Some(r3)) = (report.r1, report.r2, report.r3) {
        println!(
            "condition residuals: r1 = {:.3e}  r2 = [{:.3e} {:.3e} {:.3e}]  r3 = [{:.3e} {:.3e} {:.3e}]",
            r1, r2[0], r2[1], r2[2], r3[0], r3[1], r3[2]
        );
    }
    if let (Some(norm), Some(flat)) = (report.max_curvature_norm, report.flat) {
        println!("flat: {flat}  (max |Omega| = {norm:.3e})");
    }
    if let (Some(res), Some(sign)) = (report.einstein_residual, report.einstein_sign) {
        println!("einstein residual = {res:.3e}  (sign {sign:+})");
    }
    if let Some(inv) = report.invariant {
        println!("lambda^2 vol^(2/3) = {inv:.16}");
    }
    for e in &report.errors {
        println!("error: {e}");
    }
}

pub fn run(k: f64, l: f64, m: f64, json: bool, tol: f64) -> i32 {
    let report = build_report(k, l, m, tol);
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        print_text(&report);
    }
    exit_code(&report)
}

#[derive(Serialize)]
struct EllipticReport {
    schema: u32,
    z_re: f64,
    z_im: f64,
    sheet: &'static str,
    l_re: f64,
    l_im: f64,
    m_re: f64,
    m_im: f64,
    q_abs: f64,
    diff_residual: f64,
    prod_residual: f64,
}

pub fn run_elliptic(z_re: f64, z_im: f64, sheet: Sheet, json: bool) -> i32 {
    let pt = EllipticPoint::new(Complex64::new(z_re, z_im), sheet);
    let pair = match lm_from_z(&pt) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DOMAIN;
        }
    };
    let (diff_residual, prod_residual) = identity_residuals(&pt).unwrap();
    let q = q_poly_complex(Complex64::new(1.0, 0.0), pair.l, pair.m);
    let report = EllipticReport {
        schema: 1,
        z_re,
        z_im,
        sheet: sheet.label(),
        l_re: pair.l.re,
        l_im: pair.l.im,
        m_re: pair.m.re,
        m_im: pair.m.im,
        q_abs: q.norm(),
        diff_residual,
        prod_residual,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("z = {} + {}i  (sheet {})", z_re, z_im, sheet.label());
        println!("L = {} + {}i", pair.l.re, pair.l.im);
        println!("M = {} + {}i", pair.m.re, pair.m.im);
        println!("|Q(1, L, M)| = {:.3e}", q.norm());
        println!("identity residuals: L-M {diff_residual:.3e}, L*M {prod_residual:.3e}");
    }
    EXIT_OK
}
