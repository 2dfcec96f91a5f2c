//! Modified q-Bessel functions `I_ν^(j)` and q-Bessel-Macdonald functions
//! `K_ν^(j)` of kinds `j = 1, 2, 3`, with the q-calculus they are built on.
//!
//! Every function takes `(ν, z, q)` and returns the rescaled family
//! `I_ν^(j)((1−q²)z; q²)`, which tends to the classical `I_ν(z)` as `q → 1`.
//! All numerics are generic over [`Real`]: `f64` for normal use and
//! [`DoubleDouble`] (~31 digits) for reference values.
//!
//! ```
//! use qbessel::{modified_i, Kind, QBase, SeriesPolicy};
//! use num_complex::Complex;
//!
//! let qb = QBase::new(0.9).unwrap();
//! let v = modified_i(Kind::Three, 0.5, Complex::new(1.0, 0.0), &qb, &SeriesPolicy::default()).unwrap();
//! assert!(v.value.re > 0.0 && v.converged);
//! ```

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod cx;
mod dd;
mod error;
pub mod qbessel;
pub mod qcore;
pub mod qintegral;
pub mod qlaurent;
pub mod qmacdonald;
mod real;
pub mod verify;

pub use dd::{DoubleDouble, ParseDoubleDoubleError};
pub use error::{QError, QResult};

pub use qbessel::{jackson_j, modified_i, Kind};
pub use qcore::{QBase, SeriesPolicy, SeriesResult};
pub use qmacdonald::macdonald_k;

pub use real::Real;
