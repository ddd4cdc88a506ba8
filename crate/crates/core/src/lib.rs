//! Computation and numerical certification of the 3-dimensional
//! constant-scalar-curvature geometries carrying solutions of the
//! Einstein-Dirac equation.
//!
//! The crate models the homogeneous spaces N3(K, L, M) given by the
//! connection forms w12 = K s3, w13 = L s2, w23 = M s1 on an invariant
//! orthonormal frame.  Their moduli of weak-Killing-spinor geometries is the
//! real zero locus of a sextic Q(K, L, M); along it the WK-number lambda is
//! pinned by 8 lambda^2 (S^2 - 2|Ric|^2) = S^3 together with an orientation
//! sign rule, and existence of solutions is certified by the vanishing
//! curvature of a modified spinor connection.
//!
//! Modules:
//! - [`clifford`]: fixed-size vectors, tensors, 2x2 complex matrices, and the
//!   Clifford representation with its quaternionic structure;
//! - [`space`]: structure constants, Ricci data, T-endomorphism, metric and
//!   volume of N3(K, L, M), plus a Koszul-formula curvature oracle;
//! - [`moduli`]: the sextic Q, branch solving L(M), curve tracing, special
//!   points;
//! - [`spin`]: the WK-number, the integrability conditions, the modified
//!   connection and its flatness certificate, the Einstein residual, the
//!   homothety invariant;
//! - [`elliptic`]: the z-parametrization of the complex variety and the
//!   critical points of Psi = L^2/(KM).

// frame indices are meaningful names in tensor assembly; indexed loops stay
#![allow(clippy::needless_range_loop)]

pub mod clifford;
pub mod elliptic;
mod error;
pub mod moduli;
mod roots;
pub mod space;
pub mod spin;

pub use error::{Error, Result};
