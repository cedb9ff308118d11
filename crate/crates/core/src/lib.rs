//! Localization rates of spatial superpositions under directional scattering.
//!
//! The crate computes the complex localization rate `F(δx) = Φ_eff · F_ang(q δx)` that a stream
//! of particles imprints on a two-branch superposition, and the interferometric readout built on
//! it: visibility, phase, the `A sin φ` signal, click-detector efficiency, and the separation
//! window where the phase is largest ("Goldilocks zone").
//!
//! Kernel and readout algebra are generic over [`Real`] (`f32`/`f64`); the physical-unit layer
//! and the Monte Carlo oracle work in `f64`. Concrete `f64` aliases are exported at the root.

// Guards of the form `!(x > 0.0)` are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod interferometer;
pub mod kernels;
pub mod montecarlo;
pub mod physics;
pub mod scalar;
pub mod validation;

pub use error::{Error, Result};
pub use kernels::{AngularShape, KernelOptions as GenericKernelOptions, Method};
pub use scalar::Real;

pub type KernelResult = kernels::KernelResult<f64>;
pub type KernelResultF32 = kernels::KernelResult<f32>;
pub type KernelOptions = kernels::KernelOptions<f64>;
pub type LimitLaws = kernels::LimitLaws<f64>;
pub type ComplexRate = physics::ComplexRate<f64>;
pub type SpinState = interferometer::SpinState<f64>;
pub type SpinStateF32 = interferometer::SpinState<f32>;
pub type VisibilityPhase = interferometer::VisibilityPhase<f64>;
