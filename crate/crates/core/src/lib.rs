//! Exact classical and quantum solutions of time-dependent non-Hermitian
//! (Swanson-type) oscillators of Caldirola–Kanai form.
//!
//! Everything numerical is generic over a [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases at the crate root fix the scalar to `f64`.

pub mod classical;
pub mod ermakov;
pub mod error;
pub mod fd;
pub mod io;
pub mod model;
pub mod quad;
pub mod quantum;
pub mod scalar;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use specfun::SeriesControl;

pub use num_complex::Complex64;

pub type ModelConfig64 = model::ModelConfig<f64>;
pub type BosonicParams64 = model::BosonicParams<f64>;
pub type QuadratureParams64 = model::QuadratureParams<f64>;
pub type ClassicalState64 = classical::ClassicalState<f64>;
pub type ClassicalSolution64 = classical::ClassicalSolution<f64>;
pub type HomogeneousPair64 = ermakov::HomogeneousPair<f64>;
pub type ErmakovSolution64 = ermakov::ErmakovSolution<f64>;
pub type ErmakovValues64 = ermakov::ErmakovValues<f64>;
pub type PointTransform64 = quantum::PointTransform<f64>;
pub type TimeSlice64 = quantum::TimeSlice<f64>;
pub type GridSpec64 = quantum::GridSpec<f64>;
pub type WaveGrid64 = quantum::WaveGrid<f64>;
