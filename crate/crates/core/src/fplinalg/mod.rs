//! Exact dense linear algebra over prime fields.
//!
//! Every matrix carries its modulus and binary operations refuse to mix
//! moduli. Storage is row-major `u32` with lazily reduced `u64`
//! accumulation in the multiplication kernel.

mod echelon;
mod matrix;
mod scalar;

pub use echelon::Echelon;
pub use matrix::{FpMatrix, Rref};
pub use scalar::{add_mod, binom_mod, inv_mod, is_prime, mul_mod, pow_mod, reduce, sub_mod, FpScalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("modulus mismatch: F_{left} vs F_{right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("modulus {0} is not an odd prime below 2^31")]
    InvalidModulus(u32),
    #[error("entry {entry} is not reduced mod {p}")]
    EntryOutOfRange { entry: i64, p: u32 },
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("empty block list")]
    Empty,
}

impl LinalgError {
    pub(crate) fn dims(op: &'static str, a: &FpMatrix, b: &FpMatrix) -> Self {
        LinalgError::DimensionMismatch {
            op,
            left: (a.rows(), a.cols()),
            right: (b.rows(), b.cols()),
        }
    }
}
