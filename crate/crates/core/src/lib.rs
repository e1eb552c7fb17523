//! Computation with finitely presented modules over three computable
//! commutative coefficient rings: the integers, residues mod n, and
//! polynomials over a prime field.
//!
//! The library has three layers:
//!
//! * exact linear algebra — Smith and Hermite forms, Howell form over Z/n,
//!   kernels, syzygies, and membership solving ([`normal_form`], [`howell`],
//!   [`solve`]);
//! * finitely presented modules — presentations as relation-matrix
//!   cokernels, duals, transposes, Hom/Ext/Tor, torsionless and stability
//!   tests, uniform and hollow dimension, and the projective-plus-stable
//!   decomposition ([`presentation`], [`homalg`], [`decomp`], [`dimension`]);
//! * a brute-force oracle over explicit finite rings that checks every
//!   definitional notion literally at small scale ([`finlab`]).
//!
//! The `fpmod` binary exposes all of it as file-driven subcommands; see the
//! repository README.

pub mod engine;
pub mod error;
pub mod matrix;
pub mod normal_form;
pub mod howell;
pub mod solve;

pub use engine::{Elem, FpPoly, RingEngine};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use normal_form::{hermite_column_reduce, kernel_basis, smith_normal_form, SmithDecomposition};
