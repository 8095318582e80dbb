//! Normal modes of the closed circular dielectric billiard and quasi-normal
//! modes of the open circular dielectric microcavity (TE polarization).
//!
//! The numerical kernels are generic over [`Real`] (`f32`, `f64`); the
//! aliases below pin the `f64` instantiation used by the sweep drivers and
//! the command-line tool.

// `!(a < b)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod billiard;
pub mod cavity;
pub mod error;
pub mod fieldgrid;
pub mod format;
pub mod husimi;
pub mod mode;
pub mod scalar;
pub mod specfun;
pub mod sweep;
pub mod table;

pub use error::{Error, Result};
pub use scalar::Real;

/// Complex number in double precision.
pub type C64 = num_complex::Complex<f64>;

pub type BilliardEigenvalue64 = billiard::BilliardEigenvalue<f64>;
pub type Resonance64 = cavity::Resonance<f64>;
pub type SearchRegion64 = cavity::SearchRegion<f64>;
pub type LambShiftRecord64 = analysis::LambShiftRecord<f64>;
pub type BarrierData64 = analysis::BarrierData<f64>;
pub type GridSpec64 = fieldgrid::GridSpec<f64>;
pub type FieldGrid64 = fieldgrid::FieldGrid<f64>;
pub type HusimiMap64 = husimi::HusimiMap<f64>;
