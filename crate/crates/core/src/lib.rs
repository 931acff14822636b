//! Exact affine structures on the set of complements of a fixed subspace `W`
//! of a left vector space `V = K^n` over a division ring `K`.

pub mod algebra;
pub mod chart;
pub mod dualspread;
pub mod error;
pub mod linalg;
pub mod par;
pub mod projective;
pub mod reguli;
pub mod serial;

pub use error::{Error, Result};
