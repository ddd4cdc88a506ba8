//! The homogeneous model space N3(K, L, M): structure constants of the
//! invariant frame, connection coefficients, Ricci tensor and its covariant
//! derivative, the T-endomorphism, the left-invariant metric and volume,
//! plus an independent curvature oracle built from the Koszul formula.
//!
//! Conventions.  The connection forms in the orthonormal invariant frame are
//! w12 = K s3, w13 = L s2, w23 = M s1, equivalently
//! ds1 = (L-K) s2^s3, ds2 = (M+K) s1^s3, ds3 = (L-M) s1^s2.
//! Brackets are recovered through ds^k(X, Y) = -s^k([X, Y]), which is
//! certified by the Koszul oracle reproducing the closed-form Ricci tensor.

use crate::clifford::{cross, SymTensor3, Vec3};
use crate::error::{Error, Result};

/// The real structure parameters (K, L, M) of the model space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModuliParams {
    pub k: f64,
    pub l: f64,
    pub m: f64,
}

impl ModuliParams {
    pub fn new(k: f64, l: f64, m: f64) -> Self {
        debug_assert!(k.is_finite() && l.is_finite() && m.is_finite());
        ModuliParams { k, l, m }
    }

    pub fn norm_sq(&self) -> f64 {
        self.k * self.k + self.l * self.l + self.m * self.m
    }

    /// Homothety (K, L, M) -> (mu K, mu L, mu M).
    pub fn scale(&self, mu: f64) -> ModuliParams {
        ModuliParams::new(mu * self.k, mu * self.l, mu * self.m)
    }
}

/// Diagonal Ricci data of N3(K, L, M) in the invariant frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RicciData {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// scalar curvature S = A + B + C
    pub s: f64,
    /// |Ric|^2 = A^2 + B^2 + C^2
    pub ric_norm_sq: f64,
}

impl RicciData {
    /// Ricci eigenvalue paired with the frame index a in 0..3.
    pub fn eigenvalue(&self, a: usize) -> f64 {
        [self.a, self.b, self.c][a]
    }
}

/// A = -2KL, B = 2KM, C = -2LM.
pub fn ricci_from_params(p: &ModuliParams) -> RicciData {
    let a = -2.0 * p.k * p.l;
    let b = 2.0 * p.k * p.m;
    let c = -2.0 * p.l * p.m;
    RicciData {
        a,
        b,
        c,
        s: a + b + c,
        ric_norm_sq: a * a + b * b + c * c,
    }
}

/// Bracket constants of the invariant frame:
/// [e2,e3] = c1_23 e1, [e1,e3] = c2_13 e2, [e1,e2] = c3_12 e3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureConstants {
    pub c1_23: f64,
    pub c2_13: f64,
    pub c3_12: f64,
}

impl StructureConstants {
    /// [e_a, e_b] as a frame vector, a, b in 0..3.
    pub fn bracket(&self, a: usize, b: usize) -> Vec3 {
        if a == b {
            return Vec3::ZERO;
        }
        let (i, j, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
        match (i, j) {
            (1, 2) => Vec3::basis(0) * (sign * self.c1_23),
            (0, 2) => Vec3::basis(1) * (sign * self.c2_13),
            (0, 1) => Vec3::basis(2) * (sign * self.c3_12),
            _ => unreachable!(),
        }
    }
}

/// c1_23 = K - L, c2_13 = -(M + K), c3_12 = M - L.
pub fn structure_constants(p: &ModuliParams) -> StructureConstants {
    StructureConstants {
        c1_23: p.k - p.l,
        c2_13: -(p.m + p.k),
        c3_12: p.m - p.l,
    }
}

/// Value of the connection form w_ij on e_a, with w12 = K s3, w13 = L s2,
/// w23 = M s1.  Antisymmetric in (i, j).
pub fn omega(p: &ModuliParams, i: usize, j: usize, a: usize) -> f64 {
    if i == j {
        return 0.0;
    }
    let (ii, jj, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
    sign * match (ii, jj) {
        (0, 1) => {
            if a == 2 {
                p.k
            } else {
                0.0
            }
        }
        (0, 2) => {
            if a == 1 {
                p.l
            } else {
                0.0
            }
        }
        (1, 2) => {
            if a == 0 {
                p.m
            } else {
                0.0
            }
        }
        _ => unreachable!(),
    }
}

/// The three slices (nabla_{e_a} Ric), a = 1, 2, 3.
///
/// The eigenvalues A, B, C are constant, so the diagonal derivative entries
/// vanish and the off-diagonal entries are (A-B) w12, (A-C) w13, (B-C) w23
/// evaluated on e_a.
pub fn nabla_ricci(p: &ModuliParams) -> [SymTensor3; 3] {
    let r = ricci_from_params(p);
    let mut slices = [SymTensor3::ZERO; 3];
    for (a, slice) in slices.iter_mut().enumerate() {
        let o12 = (r.a - r.b) * omega(p, 0, 1, a);
        let o13 = (r.a - r.c) * omega(p, 0, 2, a);
        let o23 = (r.b - r.c) * omega(p, 1, 2, a);
        *slice = SymTensor3::new(0.0, 0.0, 0.0, o12, o13, o23);
    }
    slices
}

/// T(X) = sum_i e_i x (nabla_{e_i} Ric)(X), assembled column by column.
///
/// For the diagonal Ricci tensor of N3(K, L, M) the resulting matrix is
/// diagonal.
pub fn t_endomorphism(p: &ModuliParams) -> SymTensor3 {
    let slices = nabla_ricci(p);
    let mut cols = [[0.0f64; 3]; 3];
    for b in 0..3 {
        let mut t_eb = Vec3::ZERO;
        for (i, slice) in slices.iter().enumerate() {
            t_eb = t_eb + cross(Vec3::basis(i), slice.apply(Vec3::basis(b)));
        }
        for i in 0..3 {
            cols[b][i] = t_eb[i];
        }
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            debug_assert!(
                (cols[j][i] - cols[i][j]).abs() < 1e-12 * (1.0 + p.norm_sq()),
                "T-endomorphism came out non-symmetric"
            );
        }
    }
    SymTensor3::new(
        cols[0][0], cols[1][1], cols[2][2], cols[1][0], cols[2][0], cols[2][1],
    )
}

fn metric_factors(p: &ModuliParams) -> Result<(f64, f64, f64)> {
    let kl = (p.k - p.l).abs();
    let ml = (p.m - p.l).abs();
    let km = (p.k + p.m).abs();
    if kl == 0.0 {
        return Err(Error::DegenerateMetric("|K - L|"));
    }
    if ml == 0.0 {
        return Err(Error::DegenerateMetric("|M - L|"));
    }
    if km == 0.0 {
        return Err(Error::DegenerateMetric("|K + M|"));
    }
    Ok((kl, ml, km))
}

/// Left-invariant metric in the standard basis of so(3):
/// diag(1/(|M-L||K+M|), 1/(|K-L||M-L|), 1/(|K-L||K+M|)).
pub fn metric_matrix(p: &ModuliParams) -> Result<SymTensor3> {
    let (kl, ml, km) = metric_factors(p)?;
    Ok(SymTensor3::from_diag(
        1.0 / (ml * km),
        1.0 / (kl * ml),
        1.0 / (kl * km),
    ))
}

/// vol(N3) = 2 pi^2 / (|K-L| |M-L| |K+M|).
pub fn volume(p: &ModuliParams) -> Result<f64> {
    let (kl, ml, km) = metric_factors(p)?;
    Ok(2.0 * std::f64::consts::PI.powi(2) / (kl * ml * km))
}

/// Independent Ricci oracle: Levi-Civita connection from the Koszul formula
/// on the bracket constants, then Riemann curvature, then the trace.
///
/// 2 <nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y> for invariant fields
/// in an orthonormal frame.  Must reproduce diag(-2KL, 2KM, -2LM).
pub fn ricci_oracle_via_curvature(p: &ModuliParams) -> SymTensor3 {
    let sc = structure_constants(p);

    // gamma[a][b] = nabla_{e_a} e_b expressed in the frame
    let mut gamma = [[Vec3::ZERO; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            let mut comps = [0.0f64; 3];
            for (c, comp) in comps.iter_mut().enumerate() {
                let ec = Vec3::basis(c);
                let t1 = sc.bracket(a, b).dot(&ec);
                let t2 = sc.bracket(b, c).dot(&Vec3::basis(a));
                let t3 = sc.bracket(c, a).dot(&Vec3::basis(b));
                *comp = 0.5 * (t1 - t2 + t3);
            }
            gamma[a][b] = Vec3::new(comps[0], comps[1], comps[2]);
        }
    }

    // nabla_{e_a} of an invariant field with constant frame components
    let nabla = |a: usize, v: Vec3| -> Vec3 {
        gamma[a][0] * v[0] + gamma[a][1] * v[1] + gamma[a][2] * v[2]
    };

    // R(e_a, e_b) e_c = nabla_a nabla_b e_c - nabla_b nabla_a e_c
    //                   - nabla_{[e_a, e_b]} e_c
    let riemann = |a: usize, b: usize, c: usize| -> Vec3 {
        let first = nabla(a, gamma[b][c]) - nabla(b, gamma[a][c]);
        let br = sc.bracket(a, b);
        let third = gamma[0][c] * br[0] + gamma[1][c] * br[1] + gamma[2][c] * br[2];
        first - third
    };

    let mut entries = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let mut sum = 0.0;
            for a in 0..3 {
                sum += riemann(a, i, j).dot(&Vec3::basis(a));
            }
            entries[i][j] = sum;
            entries[j][i] = sum;
        }
    }
    SymTensor3::new(
        entries[0][0],
        entries[1][1],
        entries[2][2],
        entries[0][1],
        entries[0][2],
        entries[1][2],
    )
}
