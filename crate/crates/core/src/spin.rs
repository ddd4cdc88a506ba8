//! Integrability of the Einstein-Dirac equation on N3(K, L, M): the
//! WK-number with its orientation-coupled sign, the three algebraic
//! conditions of the constant-S criterion, the modified spinor connection,
//! its curvature and flatness certification, the Einstein-equation residual
//! from the weak-Killing substitution, and the homothety invariant
//! lambda^2 vol^(2/3).

use crate::clifford::{clifford_basis, cross, Mat2C, Spinor, SymTensor3, Vec3};
use crate::error::{Error, Result};
use crate::space::{
    nabla_ricci, omega, ricci_from_params, structure_constants, t_endomorphism, volume,
    ModuliParams, RicciData,
};

/// Base tolerance of the flatness certificate; scaled by
/// (1 + |(K,L,M)|^2 + lambda^2) because curvature is quadratic in the data.
pub const FLAT_TOL: f64 = 1e-9;

/// The WK-number lambda with its orientation-coupled sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WkNumber {
    pub lambda: f64,
    /// +1 when -K < M, -1 when M < -K
    pub sign: i8,
}

impl WkNumber {
    pub fn flipped(&self) -> WkNumber {
        WkNumber {
            lambda: -self.lambda,
            sign: -self.sign,
        }
    }
}

/// lambda = sign * S/(2 sqrt2) * sqrt(S / (S^2 - 2|Ric|^2)), with sign +1
/// for -K < M and -1 for M < -K.
///
/// Satisfies 8 lambda^2 (S^2 - 2|Ric|^2) = S^3 by construction.
pub fn wk_number(p: &ModuliParams) -> Result<WkNumber> {
    let r = ricci_from_params(p);
    if r.s == 0.0 {
        return Err(Error::ScalarFlat);
    }
    let d = r.s * r.s - 2.0 * r.ric_norm_sq;
    if d == 0.0 {
        return Err(Error::NoRealWk);
    }
    let radicand = r.s / d;
    if radicand <= 0.0 {
        return Err(Error::NoRealWk);
    }
    if p.m + p.k == 0.0 {
        return Err(Error::SignUndefined);
    }
    let sign: i8 = if -p.k < p.m { 1 } else { -1 };
    let magnitude = r.s / (2.0 * std::f64::consts::SQRT_2) * radicand.sqrt();
    Ok(WkNumber {
        lambda: f64::from(sign) * magnitude,
        sign,
    })
}

/// Raw residuals of the three conditions of the constant-S integrability
/// criterion, evaluated at (p, lambda).
#[derive(Clone, Copy, Debug)]
pub struct IntegrabilityResiduals {
    /// 8 lambda^2 (S^2 - 2|Ric|^2) - S^3
    pub r1: f64,
    /// per-frame-vector norms of
    /// 8 lambda^2 (S Ric - 2 Ric^2)(e_a) - 4 lambda S T(e_a) - S^2 Ric(e_a)
    pub r2: Vec3,
    /// residual norms of the third condition for the frame pairs
    /// (e1,e2), (e1,e3), (e2,e3)
    pub r3: Vec3,
}

impl IntegrabilityResiduals {
    pub fn max_abs(&self) -> f64 {
        self.r1.abs().max(self.r2.max_abs()).max(self.r3.max_abs())
    }
}

fn ric_apply(r: &RicciData, v: Vec3) -> Vec3 {
    Vec3::new(r.a * v[0], r.b * v[1], r.c * v[2])
}

pub fn integrability_residuals(p: &ModuliParams, lam: &WkNumber) -> Result<IntegrabilityResiduals> {
    let r = ricci_from_params(p);
    if r.s == 0.0 {
        return Err(Error::ScalarFlat);
    }
    let d = r.s * r.s - 2.0 * r.ric_norm_sq;
    let l2 = lam.lambda * lam.lambda;

    let r1 = 8.0 * l2 * d - r.s.powi(3);

    let t = t_endomorphism(p);
    let mut r2c = [0.0; 3];
    for (a, slot) in r2c.iter_mut().enumerate() {
        let ra = r.eigenvalue(a);
        *slot = (8.0 * l2 * (r.s * ra - 2.0 * ra * ra)
            - 4.0 * lam.lambda * r.s * t.entry(a, a)
            - r.s * r.s * ra)
            .abs();
    }

    // third condition for X = e_x, Y = e_y, x < y:
    //   8 l^2 (2Ric - S)(e_x) x (2Ric - S)(e_y)
    //   + 8 l S [ (nabla_x Ric)(e_y) - (nabla_y Ric)(e_x) ]
    //   + S^3 e_x x e_y
    //   - 2 S^2 sum_{i<j} (Ric_{j y} d_{i x} + Ric_{i x} d_{j y}) e_i x e_j
    let slices = nabla_ricci(p);
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let mut r3c = [0.0; 3];
    for (slot, &(x, y)) in r3c.iter_mut().zip(&pairs) {
        let ex = Vec3::basis(x);
        let ey = Vec3::basis(y);
        let u = ric_apply(&r, ex) * 2.0 - ex * r.s;
        let v = ric_apply(&r, ey) * 2.0 - ey * r.s;
        let mut res = cross(u, v) * (8.0 * l2);
        res = res + (slices[x].apply(ey) - slices[y].apply(ex)) * (8.0 * lam.lambda * r.s);
        res = res + cross(ex, ey) * r.s.powi(3);
        let ric = SymTensor3::from_diag(r.a, r.b, r.c);
        let mut rhs = Vec3::ZERO;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let coeff =
                    ric.entry(j, y) * f64::from(i == x) + ric.entry(i, x) * f64::from(j == y);
                if coeff != 0.0 {
                    rhs = rhs + cross(Vec3::basis(i), Vec3::basis(j)) * coeff;
                }
            }
        }
        res = res - rhs * (2.0 * r.s * r.s);
        *slot = res.norm();
    }

    Ok(IntegrabilityResiduals {
        r1,
        r2: Vec3::new(r2c[0], r2c[1], r2c[2]),
        r3: Vec3::new(r3c[0], r3c[1], r3c[2]),
    })
}

/// Connection matrices A_a of the modified spinor connection in the
/// invariant frame (constant scalar curvature, so both dS terms vanish):
///   A_a = 1/2 sum_{i<j} w_ij(e_a) Ei Ej - lambda (2 R_a / S - 1) E_a.
#[derive(Clone, Copy, Debug)]
pub struct SpinorConnection {
    pub a1: Mat2C,
    pub a2: Mat2C,
    pub a3: Mat2C,
}

impl SpinorConnection {
    pub fn matrix(&self, a: usize) -> &Mat2C {
        match a {
            0 => &self.a1,
            1 => &self.a2,
            2 => &self.a3,
            _ => panic!("frame index out of range: {a}"),
        }
    }
}

pub fn spinor_connection(p: &ModuliParams, lam: &WkNumber) -> Result<SpinorConnection> {
    let r = ricci_from_params(p);
    if r.s == 0.0 {
        // the flat limit K = L = M = 0 with lambda = 0 is still meaningful
        if lam.lambda == 0.0 && p.norm_sq() == 0.0 {
            return Ok(SpinorConnection {
                a1: Mat2C::ZERO,
                a2: Mat2C::ZERO,
                a3: Mat2C::ZERO,
            });
        }
        return Err(Error::ScalarFlat);
    }
    let rep = clifford_basis();
    let mut mats = [Mat2C::ZERO; 3];
    for (a, mat) in mats.iter_mut().enumerate() {
        let mut spin_part = Mat2C::ZERO;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let w = omega(p, i, j, a);
                if w != 0.0 {
                    spin_part = spin_part + (*rep.e(i) * *rep.e(j)).scale(0.5 * w);
                }
            }
        }
        let coeff = lam.lambda * (2.0 * r.eigenvalue(a) / r.s - 1.0);
        *mat = spin_part - rep.e(a).scale(coeff);
    }
    Ok(SpinorConnection {
        a1: mats[0],
        a2: mats[1],
        a3: mats[2],
    })
}

/// Curvature of the modified connection on the frame pairs, with the
/// flatness verdict.
#[derive(Clone, Copy, Debug)]
pub struct CurvatureReport {
    pub omega12: Mat2C,
    pub omega13: Mat2C,
    pub omega23: Mat2C,
    /// largest entry magnitude over the three curvature matrices
    pub max_norm: f64,
    pub flat: bool,
}

impl CurvatureReport {
    pub fn flat_threshold(p: &ModuliParams, lam: &WkNumber) -> f64 {
        FLAT_TOL * (1.0 + p.norm_sq() + lam.lambda * lam.lambda)
    }
}

/// Omega(e_a, e_b) = [A_a, A_b] - A([e_a, e_b]); the connection matrices are
/// constant in the invariant frame, so no derivative terms appear.
pub fn curvature_omega(p: &ModuliParams, lam: &WkNumber) -> Result<CurvatureReport> {
    let conn = spinor_connection(p, lam)?;
    let sc = structure_constants(p);
    let a = [conn.a1, conn.a2, conn.a3];

    let omega_ab = |x: usize, y: usize| -> Mat2C {
        let br = sc.bracket(x, y);
        let mut out = a[x].commutator(&a[y]);
        for (c, ac) in a.iter().enumerate() {
            if br[c] != 0.0 {
                out = out - ac.scale(br[c]);
            }
        }
        out
    };

    let omega12 = omega_ab(0, 1);
    let omega13 = omega_ab(0, 2);
    let omega23 = omega_ab(1, 2);
    let max_norm = omega12
        .max_abs()
        .max(omega13.max_abs())
        .max(omega23.max_abs());
    let flat = max_norm < CurvatureReport::flat_threshold(p, lam);
    Ok(CurvatureReport {
        omega12,
        omega13,
        omega23,
        max_norm,
        flat,
    })
}

/// Outcome of the Einstein-equation verification.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EinsteinCheck {
    /// Frobenius norm of Ric - S/2 g -+ 1/4 T_psi for the best global sign
    pub residual: f64,
    /// the sign realizing the minimum: +1 or -1
    pub sign: f64,
}

/// Verifies Ric - 1/2 S g = +- 1/4 T_psi for the energy-momentum tensor of a
/// spinor evolving by the constant-S weak-Killing equation.
///
/// The test spinor is scaled so |psi|^2 = |S| / |lambda| (the n = 3
/// normalization); the covariant derivatives are substituted from
/// nabla_a psi = lambda (2 R_a / S - 1) E_a psi, and
/// T_psi(e_a, e_b) = Re < E_a nabla_b psi + E_b nabla_a psi, psi >.
/// The residual is minimized over the global sign, which is reported.
pub fn verify_einstein_from_wk(
    p: &ModuliParams,
    lam: &WkNumber,
    psi0: &Spinor,
) -> Result<EinsteinCheck> {
    if lam.lambda == 0.0 {
        return Err(Error::ZeroLambda);
    }
    let r = ricci_from_params(p);
    if r.s == 0.0 {
        return Err(Error::ScalarFlat);
    }
    let n0 = psi0.norm_sq();
    if n0 == 0.0 {
        return Err(Error::InvalidInput("test spinor must be nonzero"));
    }
    let psi = psi0.scale((r.s.abs() / lam.lambda.abs() / n0).sqrt());

    let rep = clifford_basis();
    let grad: Vec<Spinor> = (0..3)
        .map(|a| {
            let coeff = lam.lambda * (2.0 * r.eigenvalue(a) / r.s - 1.0);
            rep.e(a).apply(&psi).scale(coeff)
        })
        .collect();

    let mut t_psi = [[0.0f64; 3]; 3];
    for a in 0..3 {
        for b in a..3 {
            let term = rep.e(a).apply(&grad[b]);
            let term2 = rep.e(b).apply(&grad[a]);
            let val = Spinor([term.0[0] + term2.0[0], term.0[1] + term2.0[1]])
                .inner(&psi)
                .re;
            t_psi[a][b] = val;
            t_psi[b][a] = val;
        }
    }
    let t_psi = SymTensor3::new(
        t_psi[0][0],
        t_psi[1][1],
        t_psi[2][2],
        t_psi[0][1],
        t_psi[0][2],
        t_psi[1][2],
    );

    let einstein = SymTensor3::from_diag(r.a - 0.5 * r.s, r.b - 0.5 * r.s, r.c - 0.5 * r.s);
    let plus = (einstein - t_psi.scale(0.25)).frobenius_norm();
    let minus = (einstein + t_psi.scale(0.25)).frobenius_norm();
    if plus <= minus {
        Ok(EinsteinCheck {
            residual: plus,
            sign: 1.0,
        })
    } else {
        Ok(EinsteinCheck {
            residual: minus,
            sign: -1.0,
        })
    }
}

/// The homothety invariant lambda^2 vol^(2/3), computed from the actual
/// volume.  Compare with [`homothety_invariant_closed_form`].
pub fn homothety_invariant(p: &ModuliParams, lam: &WkNumber) -> Result<f64> {
    let r = ricci_from_params(p);
    if r.s == 0.0 {
        return Err(Error::ScalarFlat);
    }
    let v = volume(p)?;
    Ok(lam.lambda * lam.lambda * v.powf(2.0 / 3.0))
}

/// Closed form of the invariant:
/// 1/8 (2 pi^2)^(2/3) S^3/(S^2 - 2|Ric|^2) / (|K-L| |M-L| |K+M|)^(2/3).
pub fn homothety_invariant_closed_form(p: &ModuliParams) -> Result<f64> {
    let r = ricci_from_params(p);
    if r.s == 0.0 {
        return Err(Error::ScalarFlat);
    }
    let d = r.s * r.s - 2.0 * r.ric_norm_sq;
    if d == 0.0 {
        return Err(Error::NoRealWk);
    }
    let kl = (p.k - p.l).abs();
    let ml = (p.m - p.l).abs();
    let km = (p.k + p.m).abs();
    if kl == 0.0 || ml == 0.0 || km == 0.0 {
        return Err(Error::DegenerateMetric("metric factor"));
    }
    let two_pi_sq = 2.0 * std::f64::consts::PI.powi(2);
    Ok(0.125 * two_pi_sq.powf(2.0 / 3.0) * r.s.powi(3) / d / (kl * ml * km).powf(2.0 / 3.0))
}
