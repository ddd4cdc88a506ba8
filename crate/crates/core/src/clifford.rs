//! Small fixed-size linear algebra: real 3-vectors, symmetric 3x3 tensors,
//! complex 2x2 matrices, and the fixed Clifford representation on the
//! two-dimensional spinor space with its quaternionic structure.

use num_complex::Complex64;
use std::ops::{Add, Index, Mul, Neg, Sub};

/// Real vector in the orthonormal invariant frame e1, e2, e3.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec3([f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);

    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        let v = Vec3([x1, x2, x3]);
        debug_assert!(v.is_finite(), "non-finite Vec3 component");
        v
    }

    /// i-th frame vector, i in 0..3.
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 3];
        c[i] = 1.0;
        Vec3(c)
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3([self[0] + rhs[0], self[1] + rhs[1], self[2] + rhs[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3([self[0] - rhs[0], self[1] - rhs[1], self[2] - rhs[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self[0], -self[1], -self[2]])
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3([self[0] * s, self[1] * s, self[2] * s])
    }
}

/// Right-handed cross product in the frame: e1 x e2 = e3 cyclically.
pub fn cross(x: Vec3, y: Vec3) -> Vec3 {
    Vec3([
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ])
}

/// Symmetric 3x3 tensor, stored as the six independent entries.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SymTensor3 {
    diag: [f64; 3],
    /// off-diagonal entries in the order (1,2), (1,3), (2,3)
    off: [f64; 3],
}

impl SymTensor3 {
    pub const ZERO: SymTensor3 = SymTensor3 {
        diag: [0.0; 3],
        off: [0.0; 3],
    };

    pub fn new(d11: f64, d22: f64, d33: f64, o12: f64, o13: f64, o23: f64) -> Self {
        SymTensor3 {
            diag: [d11, d22, d33],
            off: [o12, o13, o23],
        }
    }

    pub fn from_diag(a: f64, b: f64, c: f64) -> Self {
        SymTensor3 {
            diag: [a, b, c],
            off: [0.0; 3],
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else {
            match (i.min(j), i.max(j)) {
                (0, 1) => self.off[0],
                (0, 2) => self.off[1],
                (1, 2) => self.off[2],
                _ => unreachable!(),
            }
        }
    }

    /// Matrix action on a vector.
    pub fn apply(&self, v: Vec3) -> Vec3 {
        Vec3([
            self.entry(0, 0) * v[0] + self.entry(0, 1) * v[1] + self.entry(0, 2) * v[2],
            self.entry(1, 0) * v[0] + self.entry(1, 1) * v[1] + self.entry(1, 2) * v[2],
            self.entry(2, 0) * v[0] + self.entry(2, 1) * v[1] + self.entry(2, 2) * v[2],
        ])
    }

    pub fn trace(&self) -> f64 {
        self.diag[0] + self.diag[1] + self.diag[2]
    }

    pub fn frobenius_norm(&self) -> f64 {
        let d = self.diag.iter().map(|x| x * x).sum::<f64>();
        let o = self.off.iter().map(|x| x * x).sum::<f64>();
        (d + 2.0 * o).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.diag
            .iter()
            .chain(self.off.iter())
            .fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn scale(&self, s: f64) -> SymTensor3 {
        SymTensor3 {
            diag: [self.diag[0] * s, self.diag[1] * s, self.diag[2] * s],
            off: [self.off[0] * s, self.off[1] * s, self.off[2] * s],
        }
    }
}

impl Add for SymTensor3 {
    type Output = SymTensor3;
    fn add(self, rhs: SymTensor3) -> SymTensor3 {
        SymTensor3 {
            diag: [
                self.diag[0] + rhs.diag[0],
                self.diag[1] + rhs.diag[1],
                self.diag[2] + rhs.diag[2],
            ],
            off: [
                self.off[0] + rhs.off[0],
                self.off[1] + rhs.off[1],
                self.off[2] + rhs.off[2],
            ],
        }
    }
}

impl Sub for SymTensor3 {
    type Output = SymTensor3;
    fn sub(self, rhs: SymTensor3) -> SymTensor3 {
        self + rhs.scale(-1.0)
    }
}

/// Complex 2x2 matrix acting on the spinor space.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Mat2C {
    pub e: [[Complex64; 2]; 2],
}

impl Mat2C {
    pub const ZERO: Mat2C = Mat2C {
        e: [[Complex64::new(0.0, 0.0); 2]; 2],
    };

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        let m = Mat2C {
            e: [[a, b], [c, d]],
        };
        debug_assert!(m.is_finite(), "non-finite Mat2C entry");
        m
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().flatten().all(|x| x.is_finite())
    }

    pub fn identity() -> Self {
        Mat2C::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
    }

    pub fn scale(&self, s: f64) -> Mat2C {
        let mut out = *self;
        for row in out.e.iter_mut() {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Mat2C {
        Mat2C::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn conj_entries(&self) -> Mat2C {
        Mat2C::new(
            self.e[0][0].conj(),
            self.e[0][1].conj(),
            self.e[1][0].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn commutator(&self, other: &Mat2C) -> Mat2C {
        *self * *other - *other * *self
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().flatten().fold(0.0f64, |m, x| m.max(x.norm()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|x| x.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn apply(&self, psi: &Spinor) -> Spinor {
        Spinor([
            self.e[0][0] * psi.0[0] + self.e[0][1] * psi.0[1],
            self.e[1][0] * psi.0[0] + self.e[1][1] * psi.0[1],
        ])
    }
}

impl Add for Mat2C {
    type Output = Mat2C;
    fn add(self, rhs: Mat2C) -> Mat2C {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] += rhs.e[i][j];
            }
        }
        out
    }
}

impl Sub for Mat2C {
    type Output = Mat2C;
    fn sub(self, rhs: Mat2C) -> Mat2C {
        self + rhs.scale(-1.0)
    }
}

impl Mul for Mat2C {
    type Output = Mat2C;
    fn mul(self, rhs: Mat2C) -> Mat2C {
        let mut out = Mat2C::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[i][0] * rhs.e[0][j] + self.e[i][1] * rhs.e[1][j];
            }
        }
        out
    }
}

impl Neg for Mat2C {
    type Output = Mat2C;
    fn neg(self) -> Mat2C {
        self.scale(-1.0)
    }
}

/// Spinor: two complex components in the fixed spinor frame.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Spinor(pub [Complex64; 2]);

impl Spinor {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        Spinor([a, b])
    }

    /// Hermitian product, antilinear in the second argument.
    pub fn inner(&self, other: &Spinor) -> Complex64 {
        self.0[0] * other.0[0].conj() + self.0[1] * other.0[1].conj()
    }

    pub fn norm_sq(&self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    pub fn scale(&self, s: f64) -> Spinor {
        Spinor([self.0[0] * s, self.0[1] * s])
    }
}

/// The quaternionic structure J(psi) = (-conj(psi_2), conj(psi_1)).
///
/// J is antilinear, J^2 = -Id, and commutes with Clifford multiplication
/// by real vectors.
pub fn quaternionic_map(psi: &Spinor) -> Spinor {
    Spinor([-psi.0[1].conj(), psi.0[0].conj()])
}

/// The fixed Clifford representation: three 2x2 matrices with
/// Ei Ej + Ej Ei = -2 delta_ij Id.
#[derive(Clone, Copy, Debug)]
pub struct CliffordRep {
    pub e1: Mat2C,
    pub e2: Mat2C,
    pub e3: Mat2C,
}

/// Returns the representation E_k = i * sigma_k (Pauli matrices).
///
/// The volume element is E1 E2 E3 = +Id.  In dimension 3 the two
/// inequivalent irreducible representations differ by this sign; this one is
/// the choice for which the orientation rule for the WK-number (positive
/// lambda on -K < M) certifies flatness of the modified connection, checked
/// once at the non-Einstein Sasakian metrics.
pub fn clifford_basis() -> CliffordRep {
    let i = Complex64::new(0.0, 1.0);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    CliffordRep {
        // i * sigma_1 = [[0, i], [i, 0]]
        e1: Mat2C::new(zero, i, i, zero),
        // i * sigma_2 = [[0, 1], [-1, 0]]
        e2: Mat2C::new(zero, one, -one, zero),
        // i * sigma_3 = [[i, 0], [0, -i]]
        e3: Mat2C::new(i, zero, zero, -i),
    }
}

impl CliffordRep {
    pub fn e(&self, a: usize) -> &Mat2C {
        match a {
            0 => &self.e1,
            1 => &self.e2,
            2 => &self.e3,
            _ => panic!("frame index out of range: {a}"),
        }
    }

    /// Clifford multiplication by the vector x = x1 e1 + x2 e2 + x3 e3.
    pub fn vector(&self, x: Vec3) -> Mat2C {
        self.e1.scale(x[0]) + self.e2.scale(x[1]) + self.e3.scale(x[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-14;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0x77_6b_73_70_69_6e)
    }

    fn rand_spinor(rng: &mut impl Rng) -> Spinor {
        Spinor::new(
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        )
    }

    fn rand_vec3(rng: &mut impl Rng) -> Vec3 {
        Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        )
    }

    fn mat_close(a: &Mat2C, b: &Mat2C, tol: f64) -> bool {
        (*a - *b).max_abs() <= tol
    }

    #[test]
    fn cross_frame_orientation() {
        let e1 = Vec3::basis(0);
        let e2 = Vec3::basis(1);
        let e3 = Vec3::basis(2);
        assert_eq!(cross(e1, e2), e3);
        assert_eq!(cross(e2, e3), e1);
        assert_eq!(cross(e3, e1), e2);
    }

    #[test]
    fn cross_antisymmetry_and_hand_value() {
        let x = Vec3::new(1.0, 2.0, 3.0);
        assert_eq!(cross(x, x), Vec3::ZERO);
        let y = Vec3::new(4.0, 5.0, 6.0);
        assert_eq!(cross(x, y), Vec3::new(-3.0, 6.0, -3.0));
        assert_eq!(cross(y, x), Vec3::new(3.0, -6.0, 3.0));
    }

    #[test]
    fn cross_orthogonality_and_bilinearity() {
        let mut rng = rng();
        for _ in 0..200 {
            let x = rand_vec3(&mut rng);
            let y = rand_vec3(&mut rng);
            let z = rand_vec3(&mut rng);
            let s = rng.gen_range(-2.0..2.0);
            assert!(cross(x, y).dot(&x).abs() < TOL);
            assert!(cross(x, y).dot(&y).abs() < TOL);
            let lin = cross(x * s + z, y) - (cross(x, y) * s + cross(z, y));
            assert!(lin.max_abs() < TOL);
        }
    }

    #[test]
    fn clifford_relations_exact() {
        let rep = clifford_basis();
        let id = Mat2C::identity();
        for i in 0..3 {
            for j in 0..3 {
                let anti = *rep.e(i) * *rep.e(j) + *rep.e(j) * *rep.e(i);
                let expect = if i == j { id.scale(-2.0) } else { Mat2C::ZERO };
                assert!(
                    mat_close(&anti, &expect, 0.0),
                    "relation failed at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn volume_element_is_plus_identity() {
        // The sign is validated downstream against the Sasakian flatness
        // certification: with E1 E2 E3 = +Id the orientation rule
        // "-K < M => lambda > 0" yields a flat modified connection.
        let rep = clifford_basis();
        let vol = rep.e1 * rep.e2 * rep.e3;
        assert!(mat_close(&vol, &Mat2C::identity(), 0.0));
    }

    #[test]
    fn quaternionic_structure() {
        let rep = clifford_basis();
        let mut rng = rng();
        for _ in 0..100 {
            let psi = rand_spinor(&mut rng);
            // J^2 = -Id
            let jj = quaternionic_map(&quaternionic_map(&psi));
            assert!((jj.0[0] + psi.0[0]).norm() < TOL);
            assert!((jj.0[1] + psi.0[1]).norm() < TOL);
            // <J psi, psi> = 0
            assert!(quaternionic_map(&psi).inner(&psi).norm() < TOL);
            // J commutes with Clifford multiplication
            for a in 0..3 {
                let lhs = quaternionic_map(&rep.e(a).apply(&psi));
                let rhs = rep.e(a).apply(&quaternionic_map(&psi));
                assert!((lhs.0[0] - rhs.0[0]).norm() < TOL);
                assert!((lhs.0[1] - rhs.0[1]).norm() < TOL);
            }
        }
    }

    #[test]
    fn quaternionic_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let psi = Spinor::new(one, zero);
        let jj = quaternionic_map(&quaternionic_map(&psi));
        assert_eq!(jj, Spinor::new(-one, zero));

        let rep = clifford_basis();
        let psi = Spinor::new(one, i);
        let lhs = quaternionic_map(&rep.e1.apply(&psi));
        let rhs = rep.e1.apply(&quaternionic_map(&psi));
        assert!((lhs.0[0] - rhs.0[0]).norm() == 0.0);
        assert!((lhs.0[1] - rhs.0[1]).norm() == 0.0);
    }

    #[test]
    fn unit_vector_squares_to_minus_identity() {
        let rep = clifford_basis();
        let mut rng = rng();
        for _ in 0..100 {
            let mut x = rand_vec3(&mut rng);
            if x.norm() < 1e-3 {
                x = Vec3::new(1.0, 0.0, 0.0);
            }
            let x = x * (1.0 / x.norm());
            let cx = rep.vector(x);
            let sq = cx * cx + Mat2C::identity();
            assert!(sq.max_abs() < TOL);
        }
    }

    #[test]
    fn clifford_multiplication_is_skew_adjoint() {
        let rep = clifford_basis();
        let mut rng = rng();
        for _ in 0..100 {
            let x = rand_vec3(&mut rng);
            let psi = rand_spinor(&mut rng);
            let re = rep.vector(x).apply(&psi).inner(&psi).re;
            assert!(re.abs() < TOL * (1.0 + psi.norm_sq()));
        }
    }

    #[test]
    fn vector_squares_to_minus_norm() {
        let rep = clifford_basis();
        let mut rng = rng();
        for _ in 0..100 {
            let x = rand_vec3(&mut rng);
            let cx = rep.vector(x);
            let sq = cx * cx + Mat2C::identity().scale(x.norm_sq());
            assert!(sq.max_abs() < TOL);
        }
    }
}
