//! Exact construction, enumeration, counting and certification of Schmidt
//! arrangements: the orbit of the extended real line under `PSL_2(O_K)` for
//! an imaginary quadratic field `K`.

pub mod arith;
pub mod arrangement;
pub mod circle;
pub mod error;
pub mod lattice;
mod intlin;
pub mod moebius;
pub mod render;

pub use arith::{
    euclidean_div, is_coprime, kronecker, principal_generator, validate_discriminant,
    Discriminant, HalfInt, QuadInt,
};
pub use circle::{OrientedCircle, RationalPoint};
pub use error::{Error, Result};
pub use moebius::{Matrix2, ProjPoint};

/// Exact integer type for all coordinates.
pub type Int = i128;
