//! The moduli variety of the classification: the sextic Q, the auxiliary
//! squares P1..P3, the symmetric-function identity, root solving L(M) on the
//! two real branches, continuation tracing with all derived invariants, the
//! special parameter triples, and the a/b change of variables.

use crate::error::{Error, Result};
use crate::roots;
use crate::space::{ricci_from_params, t_endomorphism, volume, ModuliParams};
use crate::spin;

/// Scale-normalized tolerance on the degree-6 form below which a point
/// counts as lying on the variety: |Q| <= tol * max(1, |(K,L,M)|^6).
pub const ON_VARIETY_TOL: f64 = 1e-9;

/// The sextic whose real zero locus classifies the geometries:
/// Q = -K^2 L (L-M)^2 M + L^3 M^3 + K L^2 M^2 (M-L) + K^3 (L-M)(L+M)^2.
pub fn q_poly(k: f64, l: f64, m: f64) -> f64 {
    -k * k * l * (l - m) * (l - m) * m
        + l.powi(3) * m.powi(3)
        + k * l * l * m * m * (m - l)
        + k.powi(3) * (l - m) * (l + m) * (l + m)
}

/// Q through the elementary symmetric functions of {K, -L, M}:
/// Q = 4 g1 g2 g3 - g2^3 - 4 g3^2.
pub fn q_via_symmetric(k: f64, l: f64, m: f64) -> f64 {
    let g1 = k - l + m;
    let g2 = -k * l + k * m - l * m;
    let g3 = -k * l * m;
    4.0 * g1 * g2 * g3 - g2.powi(3) - 4.0 * g3 * g3
}

/// The three perfect squares P1, P2, P3 whose common real zeros are the flat
/// metric and the round sphere.
pub fn p_polys(k: f64, l: f64, m: f64) -> (f64, f64, f64) {
    let p1 = -k * l * l + l * l * m + k * k * (l + m);
    let p2 = k * m * m + l * m * m + k * k * (l + m);
    let p3 = l * m * (-l + m) + k * (l * l + m * m);
    (p1 * p1, p2 * p2, p3 * p3)
}

/// a = M - L - LM, b = (L - M) L M.  On the chart K = 1 the variety becomes
/// Q(1, L, M) = -a^3 + 4 b (1 + a).
pub fn ab_coords(l: f64, m: f64) -> (f64, f64) {
    (m - l - l * m, (l - m) * l * m)
}

/// A parameter triple together with its Q-residual.
#[derive(Clone, Copy, Debug)]
pub struct ModuliPoint {
    pub params: ModuliParams,
    pub q_residual: f64,
}

impl ModuliPoint {
    pub fn new(params: ModuliParams) -> Self {
        let q_residual = q_poly(params.k, params.l, params.m);
        ModuliPoint { params, q_residual }
    }

    /// Scale of the acceptance bound: max(1, |(K,L,M)|^6).
    pub fn q_scale(&self) -> f64 {
        self.params.norm_sq().powi(3).max(1.0)
    }

    pub fn is_on_variety(&self, tol: f64) -> bool {
        self.q_residual.abs() <= tol * self.q_scale()
    }
}

/// Which of the two real curve branches over M > 0, labeled by the sign of
/// L: L+ > 0 > L-.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

/// Coefficients of Q(1, L, M) as a cubic in L:
/// L^3 (M-1)^2 (M+1) + L^2 M (1+M)^2 - L M^2 (1+M) - M^3.
fn cubic_in_l(m: f64) -> [f64; 4] {
    [
        (m - 1.0) * (m - 1.0) * (m + 1.0),
        m * (1.0 + m) * (1.0 + m),
        -m * m * (1.0 + m),
        -m * m * m,
    ]
}

fn newton_polish(m: f64, mut l: f64) -> f64 {
    let [c3, c2, c1, c0] = cubic_in_l(m);
    for _ in 0..6 {
        let f = ((c3 * l + c2) * l + c1) * l + c0;
        let fp = (3.0 * c3 * l + 2.0 * c2) * l + c1;
        if fp == 0.0 {
            break;
        }
        let step = f / fp;
        l -= step;
        if step.abs() < 1e-16 * (1.0 + l.abs()) {
            break;
        }
    }
    l
}

fn pick_branch_root(real_roots: &[f64], branch: Branch, seed: Option<f64>) -> Option<f64> {
    let candidates: Vec<f64> = match branch {
        Branch::Plus => real_roots.iter().copied().filter(|&r| r > 0.0).collect(),
        Branch::Minus => real_roots.iter().copied().filter(|&r| r < 0.0).collect(),
    };
    if candidates.is_empty() {
        return None;
    }
    match seed {
        // continuation: stay close to the previous root
        Some(s) => candidates
            .into_iter()
            .min_by(|a, b| (a - s).abs().partial_cmp(&(b - s).abs()).unwrap()),
        // fresh solve: the curve branch is the root of smallest magnitude
        // (the cubic has a third real root far below -1 for most M)
        None => candidates
            .into_iter()
            .min_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap()),
    }
}

/// Root of the cubic Q(1, L, M) = 0 on the requested branch, polished with
/// Newton so that the residual passes the on-variety bound.
///
/// At M = 1 the leading coefficient vanishes and the solve degrades to the
/// quadratic 4L^2 - 2L - 1 = 0 with roots (1 +- sqrt(5))/4.  At M = 0 both
/// branches collapse into L = 0.
pub fn solve_l_given_m(m: f64, branch: Branch) -> Result<f64> {
    solve_l_seeded(m, branch, None)
}

/// `solve_l_given_m` with a continuation seed from a neighboring solve;
/// prevents branch jumping near the degenerate cubic at M = 1.
pub fn solve_l_seeded(m: f64, branch: Branch, seed: Option<f64>) -> Result<f64> {
    if m < 0.0 || m.is_nan() {
        return Err(Error::InvalidInput("solve_l_given_m requires M >= 0"));
    }
    if m == 0.0 {
        return Ok(0.0);
    }
    let [c3, c2, c1, c0] = cubic_in_l(m);
    let real_roots = roots::solve_cubic(c3, c2, c1, c0);
    let root = pick_branch_root(&real_roots, branch, seed).ok_or(Error::NoRealRoot(m))?;
    let l = newton_polish(m, root);
    let pt = ModuliPoint::new(ModuliParams::new(1.0, l, m));
    if !pt.is_on_variety(ON_VARIETY_TOL) {
        return Err(Error::NoRealRoot(m));
    }
    Ok(l)
}

/// One traced point of a curve branch with every derived invariant.
#[derive(Clone, Copy, Debug)]
pub struct BranchSample {
    pub m: f64,
    pub l: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub s: f64,
    pub lambda: f64,
    pub vol: f64,
    /// the homothety invariant lambda^2 vol^(2/3)
    pub invariant: f64,
}

/// A traced sample slot: the M value and either the enriched sample or the
/// error that flagged it.
#[derive(Clone, Debug)]
pub struct TraceSample {
    pub m: f64,
    pub sample: std::result::Result<BranchSample, Error>,
}

/// A traced branch, samples ordered by increasing M.
#[derive(Clone, Debug)]
pub struct CurveBranch {
    pub branch: Branch,
    pub samples: Vec<TraceSample>,
}

impl CurveBranch {
    pub fn ok_samples(&self) -> impl Iterator<Item = &BranchSample> {
        self.samples.iter().filter_map(|t| t.sample.as_ref().ok())
    }
}

fn enrich_sample(m: f64, l: f64) -> Result<BranchSample> {
    let p = ModuliParams::new(1.0, l, m);
    let r = ricci_from_params(&p);
    let lam = spin::wk_number(&p)?;
    let vol = volume(&p)?;
    let invariant = spin::homothety_invariant(&p, &lam)?;
    Ok(BranchSample {
        m,
        l,
        a: r.a,
        b: r.b,
        c: r.c,
        s: r.s,
        lambda: lam.lambda,
        vol,
        invariant,
    })
}

/// Trace a branch over [m_min, m_max] with n samples, seeding each Newton
/// solve with the previous root.  Per-sample failures are flagged in place
/// rather than aborting the trace.
pub fn trace_branch(m_min: f64, m_max: f64, n: usize, branch: Branch) -> Result<CurveBranch> {
    if !(m_min >= 0.0 && m_min < m_max) {
        return Err(Error::InvalidInput("trace requires 0 <= m_min < m_max"));
    }
    if n < 2 {
        return Err(Error::InvalidInput("trace requires at least 2 samples"));
    }
    let mut samples = Vec::with_capacity(n);
    let step = (m_max - m_min) / (n - 1) as f64;
    let mut seed = None;
    for i in 0..n {
        let m = if i + 1 == n {
            m_max
        } else {
            m_min + step * i as f64
        };
        let slot = match solve_l_seeded(m, branch, seed) {
            Ok(l) => {
                seed = Some(l);
                TraceSample {
                    m,
                    sample: enrich_sample(m, l),
                }
            }
            Err(e) => TraceSample { m, sample: Err(e) },
        };
        samples.push(slot);
    }
    Ok(CurveBranch { branch, samples })
}

/// Raw residuals of the three eliminated second-condition equations,
///   2 S (S^2 - 2|Ric|^2) T_a^2 - [S (S R_a - 2 R_a^2) - R_a (S^2 - 2|Ric|^2)]^2,
/// which factor as 64 * P_a * Q and therefore vanish on the variety and on
/// the round-sphere locus.
pub fn two_prime_residuals_raw(p: &ModuliParams) -> [f64; 3] {
    let r = ricci_from_params(p);
    let d = r.s * r.s - 2.0 * r.ric_norm_sq;
    let t = t_endomorphism(p);
    let mut out = [0.0; 3];
    for (a, slot) in out.iter_mut().enumerate() {
        let ra = r.eigenvalue(a);
        let ta = t.entry(a, a);
        let lhs = 2.0 * r.s * d * ta * ta;
        let rhs = r.s * (r.s * ra - 2.0 * ra * ra) - ra * d;
        *slot = lhs - rhs * rhs;
    }
    out
}

/// The same residuals normalized by the magnitude of their constituents, so
/// "vanishes" is meaningful across parameter scales.
pub fn two_prime_residuals(p: &ModuliParams) -> [f64; 3] {
    let r = ricci_from_params(p);
    let d = r.s * r.s - 2.0 * r.ric_norm_sq;
    let t = t_endomorphism(p);
    let raw = two_prime_residuals_raw(p);
    let mut out = [0.0; 3];
    for (a, slot) in out.iter_mut().enumerate() {
        let ra = r.eigenvalue(a);
        let ta = t.entry(a, a);
        let lhs = 2.0 * r.s * d * ta * ta;
        let rhs = r.s * (r.s * ra - 2.0 * ra * ra) - ra * d;
        *slot = raw[a].abs() / (1.0 + lhs.abs() + rhs * rhs);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialPointKind {
    /// singular point of the variety; flat metric direction
    SingularFlat,
    /// non-Einstein Sasakian metric, on the variety
    Sasakian,
    /// round sphere: common zero of P1, P2, P3, off the variety
    RoundSphere,
}

#[derive(Clone, Copy, Debug)]
pub struct SpecialPoint {
    pub label: &'static str,
    pub kind: SpecialPointKind,
    pub params: ModuliParams,
}

/// The labeled special parameter triples: the three singular/flat points,
/// the two Sasakian points, and the round sphere.
pub fn special_points() -> Vec<SpecialPoint> {
    let sqrt5 = 5.0f64.sqrt();
    vec![
        SpecialPoint {
            label: "[1:0:0] flat",
            kind: SpecialPointKind::SingularFlat,
            params: ModuliParams::new(1.0, 0.0, 0.0),
        },
        SpecialPoint {
            label: "[0:1:0] flat",
            kind: SpecialPointKind::SingularFlat,
            params: ModuliParams::new(0.0, 1.0, 0.0),
        },
        SpecialPoint {
            label: "[0:0:1] flat",
            kind: SpecialPointKind::SingularFlat,
            params: ModuliParams::new(0.0, 0.0, 1.0),
        },
        SpecialPoint {
            label: "Sasakian L = (1-sqrt5)/4",
            kind: SpecialPointKind::Sasakian,
            params: ModuliParams::new(1.0, (1.0 - sqrt5) / 4.0, 1.0),
        },
        SpecialPoint {
            label: "Sasakian L = (1+sqrt5)/4",
            kind: SpecialPointKind::Sasakian,
            params: ModuliParams::new(1.0, (1.0 + sqrt5) / 4.0, 1.0),
        },
        SpecialPoint {
            label: "round sphere",
            kind: SpecialPointKind::RoundSphere,
            params: ModuliParams::new(1.0, -1.0, 1.0),
        },
    ]
}
