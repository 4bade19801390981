//! Exact combinatorics of degenerating del Pezzo surfaces.
//!
//! Picard lattices and their (−2)- and (−1)-classes, simply-laced root
//! systems, fundamental cycles and divisor sequences, Chevalley structure
//! constants, the cup-product matrices whose surjectivity depends on the
//! characteristic, and the ten-dimensional `D_4` module in characteristic 2.
//!
//! Matrix code is generic over the scalar: integer matrices over any
//! [`IntegerScalar`](scalar::IntegerScalar), Lie-algebra elements over any
//! [`Ring`](scalar::Ring). The aliases below fix the common choices.

pub mod chains;
pub mod cup;
pub mod d4;
pub mod dynkin;
pub mod enumeration;
pub mod lattice;
pub mod linalg;
pub mod lie;
pub mod root_system;
pub mod scalar;
pub mod subsystem;

pub use dynkin::{DynkinType, Family, Irreducible};
pub use lattice::{LatticeVector, PicardLattice};
pub use linalg::{Matrix, SmithForm};
pub use root_system::RootSystem;

/// Arbitrary-precision integer matrix.
pub type IntMatrix = linalg::Matrix<num_bigint::BigInt>;
/// Machine-integer matrix for Gram and Cartan data.
pub type SmallIntMatrix = linalg::Matrix<i64>;
/// The prime field of two elements.
pub type F2 = scalar::Fp<2>;
/// The field of four elements.
pub type F4 = scalar::Gf4;
/// Lie-algebra element with integer coefficients.
pub type IntElement = lie::Element<i64>;
