//! The elliptic parametrization of the complex moduli variety: the quartic
//! radicand, the meromorphic pair L(z), M(z) with explicit square-root sheet
//! tracking, the closed-form identities for L - M and L * M, membership
//! checks, and the rational function Psi = L^2/(KM) with a numeric scan for
//! its critical points.

use crate::error::{Error, Result};
use crate::moduli::{self, Branch};
use crate::space::ModuliParams;
use num_complex::Complex64;

/// Choice of square root of the radicand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheet {
    Plus,
    Minus,
}

impl Sheet {
    pub fn factor(&self) -> f64 {
        match self {
            Sheet::Plus => 1.0,
            Sheet::Minus => -1.0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Sheet::Plus => "plus",
            Sheet::Minus => "minus",
        }
    }
}

/// A point of the parametrizing surface: z together with the sheet of
/// sqrt(radicand).
#[derive(Clone, Copy, Debug)]
pub struct EllipticPoint {
    pub z: Complex64,
    pub sheet: Sheet,
}

impl EllipticPoint {
    pub fn new(z: Complex64, sheet: Sheet) -> Self {
        EllipticPoint { z, sheet }
    }

    pub fn real(x: f64, sheet: Sheet) -> Self {
        EllipticPoint::new(Complex64::new(x, 0.0), sheet)
    }
}

/// A parameter pair (L, M) on the chart K = 1 of the complex variety.
#[derive(Clone, Copy, Debug)]
pub struct ParamPair {
    pub l: Complex64,
    pub m: Complex64,
}

/// The quartic radicand (z+1)(1 + 3z - 5z^2 + z^3).
///
/// Expanded: z^4 - 4z^3 - 2z^2 + 4z + 1 = (z^2 - 1)(z^2 - 4z - 1); its four
/// simple roots are -1, 1, 2 - sqrt(5), 2 + sqrt(5).
pub fn radicand(z: Complex64) -> Complex64 {
    (z + 1.0) * (1.0 + 3.0 * z - 5.0 * z * z + z * z * z)
}

/// Numeric roots of the radicand, found by Durand-Kerner iteration on the
/// expanded monic quartic and returned sorted.  All four are real.
pub fn radicand_roots() -> [f64; 4] {
    // z^4 - 4z^3 - 2z^2 + 4z + 1
    let coeffs = [-4.0, -2.0, 4.0, 1.0];
    let poly = |z: Complex64| -> Complex64 {
        (((z + coeffs[0]) * z + coeffs[1]) * z + coeffs[2]) * z + coeffs[3]
    };
    let mut zs: Vec<Complex64> = (0..4)
        .map(|k| Complex64::new(0.4, 0.9).powu(k as u32 + 1))
        .collect();
    for _ in 0..200 {
        let prev = zs.clone();
        let mut moved = 0.0f64;
        for i in 0..4 {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..4 {
                if j != i {
                    denom *= prev[i] - prev[j];
                }
            }
            let step = poly(prev[i]) / denom;
            zs[i] = prev[i] - step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    let mut out = [0.0; 4];
    for (slot, z) in out.iter_mut().zip(&zs) {
        debug_assert!(z.im.abs() < 1e-10);
        *slot = z.re;
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// L(z) = -(1+z)((z-1)^2 + s sqrt(R))/(4z),
/// M(z) = +(1+z)((z-1)^2 - s sqrt(R))/(4z), with s the sheet.
///
/// Both closed-form identities L - M = -(1+z)(z-1)^2/(2z) and
/// L M = -(1+z)^2 (z-1)/(2z) hold exactly on either sheet, using
/// (z-1)^4 - R = 8z(z-1), and the pair always satisfies Q(1, L, M) = 0.
pub fn lm_from_z(pt: &EllipticPoint) -> Result<ParamPair> {
    if pt.z.norm() == 0.0 {
        return Err(Error::PoleAtZero);
    }
    let z = pt.z;
    let sq = radicand(z).sqrt() * pt.sheet.factor();
    let w = (z - 1.0) * (z - 1.0);
    let l = -(z + 1.0) * (w + sq) / (4.0 * z);
    let m = (z + 1.0) * (w - sq) / (4.0 * z);
    Ok(ParamPair { l, m })
}

/// Residuals of the two closed-form identities at this point:
/// |(L-M) - (-(1+z)(z-1)^2/(2z))| and |LM - (-(1+z)^2(z-1)/(2z))|.
pub fn identity_residuals(pt: &EllipticPoint) -> Result<(f64, f64)> {
    let pair = lm_from_z(pt)?;
    let z = pt.z;
    let diff_expect = -(z + 1.0) * (z - 1.0) * (z - 1.0) / (2.0 * z);
    let prod_expect = -(z + 1.0) * (z + 1.0) * (z - 1.0) / (2.0 * z);
    Ok((
        (pair.l - pair.m - diff_expect).norm(),
        (pair.l * pair.m - prod_expect).norm(),
    ))
}

/// Q(K, L, M) over the complex numbers, for membership checks of the
/// parametrized points.
pub fn q_poly_complex(k: Complex64, l: Complex64, m: Complex64) -> Complex64 {
    -k * k * l * (l - m) * (l - m) * m
        + l * l * l * m * m * m
        + k * l * l * m * m * (m - l)
        + k * k * k * (l - m) * (l + m) * (l + m)
}

/// Psi = L^2 / (K M) at a real parameter triple.
pub fn psi(p: &ModuliParams) -> Result<f64> {
    if p.k * p.m == 0.0 {
        return Err(Error::PoleOfPsi);
    }
    Ok(p.l * p.l / (p.k * p.m))
}

/// Psi along the parametrized curve (chart K = 1).
pub fn psi_z(pt: &EllipticPoint) -> Result<Complex64> {
    let pair = lm_from_z(pt)?;
    if pair.m.norm() == 0.0 {
        return Err(Error::PoleOfPsi);
    }
    Ok(pair.l * pair.l / pair.m)
}

/// Rectangle in the z-plane for the critical-point scan.
#[derive(Clone, Copy, Debug)]
pub struct ScanRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl ScanRegion {
    fn contains(&self, z: Complex64, margin: f64) -> bool {
        z.re >= self.re_min - margin
            && z.re <= self.re_max + margin
            && z.im >= self.im_min - margin
            && z.im <= self.im_max + margin
    }
}

/// Estimated multiplicity class of a critical point of Psi.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RamOrder {
    /// Psi' = 0, Psi'' != 0
    One,
    /// Psi' = 0 and Psi'' below tolerance
    Two,
}

#[derive(Clone, Copy, Debug)]
pub struct CriticalPoint {
    pub z: Complex64,
    pub sheet: Sheet,
    pub psi_prime_abs: f64,
    pub psi_second_abs: f64,
    pub order: RamOrder,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub points: Vec<CriticalPoint>,
    /// Newton candidates that failed to converge and were dropped.
    pub dropped: usize,
}

/// |Psi'| threshold for accepting a refined candidate as critical.
const CRITICAL_TOL: f64 = 1e-7;
/// |Psi''| threshold below which a critical point is classified order two.
pub const ORDER_TWO_TOL: f64 = 1e-6;

fn psi_derivative(z: Complex64, sheet: Sheet) -> Option<Complex64> {
    let h = 1e-6 * (1.0 + z.norm());
    let a = psi_z(&EllipticPoint::new(z + h, sheet)).ok()?;
    let b = psi_z(&EllipticPoint::new(z - h, sheet)).ok()?;
    let d = (a - b) / (2.0 * h);
    d.is_finite().then_some(d)
}

fn psi_second(z: Complex64, sheet: Sheet) -> Option<Complex64> {
    // larger step than for Psi': the second difference divides by h^2
    let h = 1e-4 * (1.0 + z.norm());
    let a = psi_z(&EllipticPoint::new(z + h, sheet)).ok()?;
    let b = psi_z(&EllipticPoint::new(z, sheet)).ok()?;
    let c = psi_z(&EllipticPoint::new(z - h, sheet)).ok()?;
    let d = (a - 2.0 * b + c) / (h * h);
    d.is_finite().then_some(d)
}

fn psi_third(z: Complex64, sheet: Sheet) -> Option<Complex64> {
    let h = 1e-4 * (1.0 + z.norm());
    let a = psi_second(z + h, sheet)?;
    let b = psi_second(z - h, sheet)?;
    let d = (a - b) / (2.0 * h);
    d.is_finite().then_some(d)
}

fn too_close_to_excluded(z: Complex64, radius: f64) -> bool {
    if z.norm() < radius {
        return true;
    }
    radicand_roots().iter().any(|&r| (z - r).norm() < radius)
}

/// Newton refinement of a critical-point candidate.  Near a degenerate
/// critical point (tiny Psi'') the iteration switches to Newton on Psi'' = 0,
/// which stays quadratically convergent where plain Newton on Psi' stalls.
fn refine_candidate(mut z: Complex64, sheet: Sheet, region: &ScanRegion) -> Option<Complex64> {
    for _ in 0..80 {
        if !region.contains(z, 1.0) || too_close_to_excluded(z, 1e-3) {
            return None;
        }
        let g = psi_derivative(z, sheet)?;
        let g2 = psi_second(z, sheet)?;
        let step = if g2.norm() < 1e-4 {
            let g3 = psi_third(z, sheet)?;
            if g3.norm() < 1e-9 {
                return None;
            }
            g2 / g3
        } else {
            g / g2
        };
        z -= step;
        if step.norm() < 1e-10 * (1.0 + z.norm()) {
            return Some(z);
        }
    }
    None
}

/// Scans the rectangle on both sheets for critical points of Psi: grid
/// seeding, central-difference derivatives, Newton refinement, and
/// classification by the magnitude of Psi''.
///
/// The region must exclude z = 0 and the radicand roots; seeds falling near
/// them are skipped and non-converging candidates are counted in `dropped`.
pub fn psi_ramification_scan(region: &ScanRegion, nx: usize, ny: usize) -> ScanReport {
    let mut points: Vec<CriticalPoint> = Vec::new();
    let mut dropped = 0;
    let dx = (region.re_max - region.re_min) / (nx.max(2) - 1) as f64;
    let dy = if ny > 1 {
        (region.im_max - region.im_min) / (ny - 1) as f64
    } else {
        0.0
    };
    for sheet in [Sheet::Plus, Sheet::Minus] {
        for ix in 0..nx.max(2) {
            for iy in 0..ny.max(1) {
                let z0 = Complex64::new(
                    region.re_min + dx * ix as f64,
                    region.im_min + dy * iy as f64,
                );
                if too_close_to_excluded(z0, 0.05) {
                    continue;
                }
                // cheap pre-filter: only descend from seeds with a small
                // derivative relative to the local second derivative
                let (Some(g), Some(g2)) = (psi_derivative(z0, sheet), psi_second(z0, sheet)) else {
                    continue;
                };
                if g.norm() > 2.0 * g2.norm() * (dx + dy) + 1.0 {
                    continue;
                }
                let Some(z) = refine_candidate(z0, sheet, region) else {
                    dropped += 1;
                    continue;
                };
                if !region.contains(z, 0.0) || too_close_to_excluded(z, 1e-2) {
                    continue;
                }
                let (Some(gp), Some(gpp)) = (psi_derivative(z, sheet), psi_second(z, sheet)) else {
                    dropped += 1;
                    continue;
                };
                if gp.norm() > CRITICAL_TOL {
                    continue;
                }
                if points
                    .iter()
                    .any(|p| p.sheet == sheet && (p.z - z).norm() < 1e-6)
                {
                    continue;
                }
                let order = if gpp.norm() < ORDER_TWO_TOL {
                    RamOrder::Two
                } else {
                    RamOrder::One
                };
                points.push(CriticalPoint {
                    z,
                    sheet,
                    psi_prime_abs: gp.norm(),
                    psi_second_abs: gpp.norm(),
                    order,
                });
            }
        }
    }
    points.sort_by(|a, b| {
        (a.z.re, a.z.im, a.sheet.factor())
            .partial_cmp(&(b.z.re, b.z.im, b.sheet.factor()))
            .unwrap()
    });
    ScanReport { points, dropped }
}

/// The z-preimages of the two Sasakian parameter triples on the minus sheet:
/// z^2 = 1 + a with a = 1 - 2L, giving z = -(1+sqrt5)/2 and z = (sqrt5-1)/2.
pub fn sasakian_preimages() -> [EllipticPoint; 2] {
    let sqrt5 = 5.0f64.sqrt();
    [
        EllipticPoint::real(-(1.0 + sqrt5) / 2.0, Sheet::Minus),
        EllipticPoint::real((sqrt5 - 1.0) / 2.0, Sheet::Minus),
    ]
}

/// Behaviour of Psi at the flat direction `[1:0:0]` along the L+ branch:
/// returns (L^2(M)/M at M = 1e-7, d/dM (L^2(M)/M) at M = 1e-4).
///
/// The limits are 0 and 1.
pub fn psi_flat_point_limits() -> Result<(f64, f64)> {
    let g = |m: f64| -> Result<f64> {
        let l = moduli::solve_l_given_m(m, Branch::Plus)?;
        Ok(l * l / m)
    };
    let value = g(1e-7)?;
    let (md, h) = (1e-4, 1e-5);
    let derivative = (g(md + h)? - g(md - h)?) / (2.0 * h);
    Ok((value, derivative))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sqrt5() -> f64 {
        5.0f64.sqrt()
    }

    #[test]
    fn radicand_examples() {
        assert_eq!(radicand(Complex64::new(1.0, 0.0)).norm(), 0.0);
        assert!(radicand(Complex64::new(2.0 + sqrt5(), 0.0)).norm() < 1e-12);
        assert!(radicand(Complex64::new(2.0 - sqrt5(), 0.0)).norm() < 1e-13);
        assert_eq!(radicand(Complex64::new(-1.0, 0.0)).norm(), 0.0);
        let v = radicand(Complex64::new(0.5, 0.0));
        assert!((v.re - 2.0625).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn radicand_roots_are_the_four_algebraic_numbers() {
        let roots = radicand_roots();
        let expect = [-1.0, 2.0 - sqrt5(), 1.0, 2.0 + sqrt5()];
        for (r, e) in roots.iter().zip(expect) {
            assert!((r - e).abs() < 1e-12, "{r} vs {e}");
            assert!(radicand(Complex64::new(*r, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn lm_example_at_half() {
        let pt = EllipticPoint::real(0.5, Sheet::Plus);
        let pair = lm_from_z(&pt).unwrap();
        assert!((pair.l.re - -1.26461).abs() < 1e-5);
        assert!((pair.m.re - -0.88961).abs() < 1e-5);
        // a = M - L - LM = z^2 - 1
        let a = pair.m - pair.l - pair.l * pair.m;
        assert!((a.re - -0.75).abs() < 1e-12 && a.im.abs() < 1e-15);
    }

    #[test]
    fn lm_at_one_is_flat_direction() {
        let pair = lm_from_z(&EllipticPoint::real(1.0, Sheet::Plus)).unwrap();
        assert_eq!(pair.l.norm(), 0.0);
        assert_eq!(pair.m.norm(), 0.0);
    }

    #[test]
    fn lm_pole_at_zero() {
        assert_eq!(
            lm_from_z(&EllipticPoint::real(0.0, Sheet::Plus)).unwrap_err(),
            Error::PoleAtZero
        );
    }

    #[test]
    fn identities_at_minus_one() {
        let pt = EllipticPoint::real(-1.0, Sheet::Plus);
        let pair = lm_from_z(&pt).unwrap();
        assert!((pair.l - pair.m).norm() < 1e-15);
        assert!((pair.l * pair.m).norm() < 1e-15);
    }

    #[test]
    fn identities_and_membership_on_sampled_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for sheet in [Sheet::Plus, Sheet::Minus] {
            let mut checked = 0;
            while checked < 100 {
                let z = if checked % 2 == 0 {
                    Complex64::new(rng.gen_range(-4.0..4.0), 0.0)
                } else {
                    Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-2.0..2.0))
                };
                if too_close_to_excluded(z, 0.05) {
                    continue;
                }
                let pt = EllipticPoint::new(z, sheet);
                let pair = lm_from_z(&pt).unwrap();
                let q = q_poly_complex(Complex64::new(1.0, 0.0), pair.l, pair.m);
                let scale = (1.0 + pair.l.norm() + pair.m.norm()).powi(6);
                assert!(q.norm() < 1e-9 * scale, "membership fails at z = {z}");
                let (r1, r2) = identity_residuals(&pt).unwrap();
                let iscale = 1.0 + pair.l.norm() * pair.m.norm();
                assert!(r1 < 1e-10 * iscale && r2 < 1e-10 * iscale);
                checked += 1;
            }
        }
    }

    #[test]
    fn identity_residuals_at_complex_point() {
        let pt = EllipticPoint::new(Complex64::new(2.0, 0.5), Sheet::Minus);
        let (r1, r2) = identity_residuals(&pt).unwrap();
        assert!(r1 < 1e-10 && r2 < 1e-10);
    }

    #[test]
    fn ab_consistency_along_parametrization() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..200 {
            let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-1.5..1.5));
            if too_close_to_excluded(z, 0.05) {
                continue;
            }
            for sheet in [Sheet::Plus, Sheet::Minus] {
                let pair = lm_from_z(&EllipticPoint::new(z, sheet)).unwrap();
                let a = pair.m - pair.l - pair.l * pair.m;
                assert!((a - (z * z - 1.0)).norm() < 1e-12 * (1.0 + a.norm()));
                let b = (pair.l - pair.m) * pair.l * pair.m;
                let b_expect = (z * z - 1.0).powu(3) / (4.0 * z * z);
                assert!((b - b_expect).norm() < 1e-10 * (1.0 + b.norm()));
            }
        }
    }

    #[test]
    fn psi_examples() {
        let sas = ModuliParams::new(1.0, (1.0 - sqrt5()) / 4.0, 1.0);
        let v = psi(&sas).unwrap();
        assert!((v - sas.l * sas.l).abs() < 1e-15);
        assert_eq!(
            psi(&ModuliParams::new(0.0, 1.0, 0.0)).unwrap_err(),
            Error::PoleOfPsi
        );
    }

    #[test]
    fn sasakian_preimages_map_to_sasakian_points() {
        let pre = sasakian_preimages();
        let pair = lm_from_z(&pre[0]).unwrap();
        assert!((pair.l.re - (1.0 - sqrt5()) / 4.0).abs() < 1e-13);
        assert!((pair.m.re - 1.0).abs() < 1e-13);
        let pair = lm_from_z(&pre[1]).unwrap();
        assert!((pair.l.re - (1.0 + sqrt5()) / 4.0).abs() < 1e-13);
        assert!((pair.m.re - 1.0).abs() < 1e-13);
    }

    #[test]
    fn scan_finds_sasakian_critical_points() {
        let region = ScanRegion {
            re_min: -2.4,
            re_max: 1.5,
            im_min: -0.3,
            im_max: 0.3,
        };
        let report = psi_ramification_scan(&region, 40, 7);
        let pre = sasakian_preimages();
        for target in pre {
            let hit = report
                .points
                .iter()
                .find(|p| p.sheet == Sheet::Minus && (p.z - target.z).norm() < 1e-6)
                .unwrap_or_else(|| panic!("no critical point near z = {}", target.z));
            assert!(hit.psi_prime_abs < 1e-8);
        }
    }

    #[test]
    fn scan_measures_second_derivative_at_sasakian_points() {
        // Frozen values of |Psi''| at the two Sasakian preimages.  With the
        // parametrization in use these critical points are simple: the second
        // derivative does not vanish in the z chart (or any other chart).
        let region = ScanRegion {
            re_min: -2.4,
            re_max: 1.5,
            im_min: -0.1,
            im_max: 0.1,
        };
        let report = psi_ramification_scan(&region, 40, 3);
        let pre = sasakian_preimages();
        let expected = [0.1257354214, 4.374264579];
        for (target, psi2) in pre.iter().zip(expected) {
            let hit = report
                .points
                .iter()
                .find(|p| p.sheet == Sheet::Minus && (p.z - target.z).norm() < 1e-6)
                .expect("critical point found");
            assert!(
                (hit.psi_second_abs - psi2).abs() < 1e-4,
                "|Psi''| = {} vs frozen {psi2}",
                hit.psi_second_abs
            );
            assert_eq!(hit.order, RamOrder::One);
        }
    }

    #[test]
    fn scan_finds_complex_critical_quartet() {
        // away from the real axis the scan picks up two conjugate pairs of
        // simple critical points, one pair per sheet
        let region = ScanRegion {
            re_min: -1.0,
            re_max: 1.6,
            im_min: -0.8,
            im_max: 0.8,
        };
        let report = psi_ramification_scan(&region, 30, 20);
        let expected = [
            (Sheet::Minus, Complex64::new(-0.372513201, -0.164809345)),
            (Sheet::Minus, Complex64::new(-0.372513201, 0.164809345)),
            (Sheet::Plus, Complex64::new(1.122513201, -0.496628483)),
            (Sheet::Plus, Complex64::new(1.122513201, 0.496628483)),
        ];
        for (sheet, z) in expected {
            let hit = report
                .points
                .iter()
                .find(|p| p.sheet == sheet && (p.z - z).norm() < 1e-4)
                .unwrap_or_else(|| panic!("missing critical point near {z}"));
            assert!(hit.psi_prime_abs < 1e-7);
            assert_eq!(hit.order, RamOrder::One);
        }
    }

    #[test]
    fn flat_point_limits() {
        let (value, derivative) = psi_flat_point_limits().unwrap();
        assert!(value.abs() < 1e-6, "L^2/M at small M: {value}");
        assert!((derivative - 1.0).abs() < 1e-6, "d/dM: {derivative}");
    }
}
