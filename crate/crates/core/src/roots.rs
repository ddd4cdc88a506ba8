//! Real-root solvers for low-degree polynomials with degenerate-leading-
//! coefficient handling, used by the moduli-curve tracer.

/// Relative threshold below which a leading coefficient is treated as zero
/// and the degree drops.
const DEGENERATE_LEAD: f64 = 1e-12;

/// Real roots of c1 x + c0 = 0.
fn solve_linear(c1: f64, c0: f64) -> Vec<f64> {
    if c1 == 0.0 {
        Vec::new()
    } else {
        vec![-c0 / c1]
    }
}

/// Real roots of c2 x^2 + c1 x + c0 = 0, degenerating gracefully.
pub fn solve_quadratic(c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    let scale = c2.abs().max(c1.abs()).max(c0.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if c2.abs() < DEGENERATE_LEAD * scale {
        return solve_linear(c1, c0);
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc < 0.0 {
        return Vec::new();
    }
    // the classic citardauq trick avoids cancellation on the small root
    let q = -0.5 * (c1 + disc.sqrt().copysign(c1));
    let mut roots = vec![q / c2];
    if q != 0.0 {
        roots.push(c0 / q);
    } else {
        roots.push(0.0);
    }
    roots
}

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0 = 0.
///
/// Closed form (trigonometric for three real roots, Cardano otherwise); a
/// leading coefficient below `1e-12 * max|c_i|` drops the degree to the
/// quadratic.  Roots are raw closed-form values; callers polish with Newton.
pub fn solve_cubic(c3: f64, c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    let scale = c3.abs().max(c2.abs()).max(c1.abs()).max(c0.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if c3.abs() < DEGENERATE_LEAD * scale {
        return solve_quadratic(c2, c1, c0);
    }

    // depressed cubic t^3 + p t + q with x = t - b/3
    let b = c2 / c3;
    let c = c1 / c3;
    let d = c0 / c3;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let shift = -b / 3.0;

    let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    let mut roots = Vec::with_capacity(3);
    if disc > 0.0 {
        // one real root
        let sq = disc.sqrt();
        let u = (-q / 2.0 + sq).cbrt();
        let v = (-q / 2.0 - sq).cbrt();
        roots.push(u + v + shift);
    } else if disc == 0.0 {
        let u = (-q / 2.0).cbrt();
        roots.push(2.0 * u + shift);
        roots.push(-u + shift);
    } else {
        // three distinct real roots, trigonometric form
        let r = (-p / 3.0).sqrt();
        let cos_arg = (3.0 * q / (2.0 * p) / r).clamp(-1.0, 1.0);
        let theta = cos_arg.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        for k in 0..3 {
            roots.push(2.0 * r * (theta - tau * k as f64).cos() + shift);
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(c: [f64; 4], x: f64) -> f64 {
        ((c[0] * x + c[1]) * x + c[2]) * x + c[3]
    }

    #[test]
    fn cubic_three_real_roots() {
        // (x-1)(x+2)(x-3) = x^3 - 2x^2 - 5x + 6
        let roots = solve_cubic(1.0, -2.0, -5.0, 6.0);
        assert_eq!(roots.len(), 3);
        for (r, expect) in roots.iter().zip([-2.0, 1.0, 3.0]) {
            assert!((r - expect).abs() < 1e-9, "{r} vs {expect}");
        }
    }

    #[test]
    fn cubic_single_real_root() {
        // x^3 + x + 1: one real root near -0.6823
        let roots = solve_cubic(1.0, 0.0, 1.0, 1.0);
        assert_eq!(roots.len(), 1);
        assert!(eval([1.0, 0.0, 1.0, 1.0], roots[0]).abs() < 1e-12);
    }

    #[test]
    fn degenerate_leading_coefficient_falls_back() {
        // effectively 4x^2 - 2x - 1
        let roots = solve_cubic(1e-18, 4.0, -2.0, -1.0);
        assert_eq!(roots.len(), 2);
        let expect = [(1.0 + 5.0f64.sqrt()) / 4.0, (1.0 - 5.0f64.sqrt()) / 4.0];
        for e in expect {
            assert!(roots.iter().any(|r| (r - e).abs() < 1e-12));
        }
    }

    #[test]
    fn quadratic_no_real_roots() {
        assert!(solve_quadratic(1.0, 0.0, 1.0).is_empty());
    }

    #[test]
    fn linear_and_constant() {
        assert_eq!(solve_quadratic(0.0, 2.0, -4.0), vec![2.0]);
        assert!(solve_quadratic(0.0, 0.0, 1.0).is_empty());
    }

    #[test]
    fn random_cubics_are_solved() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let c: [f64; 4] = [
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            ];
            if c[0].abs() < 1e-3 {
                continue;
            }
            let roots = solve_cubic(c[0], c[1], c[2], c[3]);
            assert!(!roots.is_empty());
            for r in roots {
                // closed form before polish: modest tolerance
                assert!(eval(c, r).abs() < 1e-6 * (1.0 + r.abs().powi(3)));
            }
        }
    }
}
