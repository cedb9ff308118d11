//! The dimensionless angular kernel `F_ang(z)`, `z = q·δx`.
//!
//! For a beam along `+z` hitting a superposition separated along `z`, with differential
//! cross-section shape `½(1 + cos²θ')` and elastic scattering,
//!
//! ```text
//! F_ang(z) = ¼ ∫₋₁¹ (1 + u²) (1 − e^{iz(1−u)}) du,     u = cos θ'
//! ```
//!
//! Four independent evaluations are provided (closed form, adaptive quadrature, Jacobi–Anger
//! series, Taylor expansion) plus the isotropic counterpart and the limiting laws. The full
//! localization rate is `Φ_eff · F_ang(q δx)`; see [`crate::physics`].

mod bessel;
mod closed_form;
pub mod gauss_kronrod;
mod isotropic;
mod limits;
mod quadrature;
mod series;
mod taylor;

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::Real;

pub use bessel::{bessel_jn, bessel_jn_sequence, BESSEL_MAX_ARG, BESSEL_MAX_ORDER};
pub use closed_form::closed_form_kernel;
pub use closed_form::closed_form_kernel_with;
pub use isotropic::{isotropic_closed_form, isotropic_kernel};
pub use limits::{asymptotic_limits, LimitLaws};
pub use quadrature::quadrature_kernel;
pub use series::series_kernel;

use isotropic::isotropic_kernel_with;
use quadrature::quadrature_kernel_with;
pub use taylor::{taylor_coefficient, taylor_kernel, TAYLOR_C1_IM, TAYLOR_C2_RE, TAYLOR_C3_IM};

/// Total angular weight `¼∫(1+u²)du` of the `½(1+cos²θ)` shape, and the `z → ∞` limit of `Re F_ang`.
pub const SHAPE_WEIGHT: f64 = 2.0 / 3.0;

/// How a kernel value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    JacobiAnger,
    Taylor,
    Asymptotic,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::JacobiAnger => "jacobi_anger",
            Method::Taylor => "taylor",
            Method::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "closed_form" | "closed-form" => Ok(Method::ClosedForm),
            "quadrature" => Ok(Method::Quadrature),
            "jacobi_anger" | "jacobi-anger" | "series" => Ok(Method::JacobiAnger),
            "taylor" => Ok(Method::Taylor),
            "asymptotic" => Ok(Method::Asymptotic),
            other => Err(format!("unknown kernel method `{other}`")),
        }
    }
}

/// Angular environment: a beam along `+z`, or scatterers arriving uniformly from all directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngularShape {
    Directional,
    Isotropic,
}

impl AngularShape {
    pub fn as_str(self) -> &'static str {
        match self {
            AngularShape::Directional => "directional",
            AngularShape::Isotropic => "isotropic",
        }
    }
}

impl fmt::Display for AngularShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for AngularShape {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "directional" => Ok(AngularShape::Directional),
            "isotropic" => Ok(AngularShape::Isotropic),
            other => Err(format!("unknown angular mode `{other}`")),
        }
    }
}

/// A kernel value with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelResult<T> {
    pub value: Complex<T>,
    pub abs_error_estimate: T,
    pub method: Method,
    /// Function evaluations (quadrature), series terms (Jacobi–Anger), or expansion order (Taylor).
    pub terms_or_evals: usize,
}

impl<T: Real> KernelResult<T> {
    pub(crate) fn exact_zero(method: Method, terms_or_evals: usize) -> Self {
        Self {
            value: Complex::new(T::zero(), T::zero()),
            abs_error_estimate: T::zero(),
            method,
            terms_or_evals,
        }
    }

    /// Checks the bounds every value of the `½(1+cos²θ)` shape must satisfy:
    /// `0 ≤ Re ≤ 4/3`, `|Im| ≤ 2/3`, error estimate non-negative. `slack` absorbs round-off.
    pub fn within_shape_bounds(&self, slack: T) -> bool {
        let two_thirds = T::lit(SHAPE_WEIGHT);
        self.value.re >= -slack
            && self.value.re <= two_thirds + two_thirds + slack
            && self.value.im.abs() <= two_thirds + slack
            && self.abs_error_estimate >= T::zero()
    }
}

/// Tunables shared by the kernel evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelOptions<T> {
    /// Below this `z` the closed form switches to its Taylor expansion.
    pub taylor_switchover: T,
    /// Absolute tolerance for quadrature and series evaluation.
    pub tol: T,
    /// Maximum bisection depth for adaptive quadrature.
    pub max_depth: u32,
    /// Order used when [`Method::Taylor`] is requested through [`kernel`].
    pub taylor_order: u32,
}

impl<T: Real> Default for KernelOptions<T> {
    fn default() -> Self {
        Self {
            taylor_switchover: T::lit(1e-3),
            tol: T::lit(1e-10),
            max_depth: 48,
            taylor_order: 3,
        }
    }
}

pub(crate) fn check_z<T: Real>(z: T) -> Result<()> {
    if !z.is_finite() {
        return Err(domain(format!("z must be finite, got {z}")));
    }
    if z < T::zero() {
        return Err(domain(format!("z must be non-negative, got {z}")));
    }
    Ok(())
}

/// Evaluates `F_ang(z)` for the given angular environment with the requested method.
///
/// Isotropic environments support the closed form and quadrature; the series and Taylor methods
/// fall back to quadrature there. [`Method::Asymptotic`] returns the `z → ∞` limits.
pub fn kernel<T: Real>(z: T, shape: AngularShape, method: Method, opts: &KernelOptions<T>) -> Result<KernelResult<T>> {
    match (shape, method) {
        (_, Method::Asymptotic) => {
            check_z(z)?;
            let laws = asymptotic_limits::<T>(shape);
            Ok(KernelResult {
                value: Complex::new(laws.re_limit, laws.im_limit),
                abs_error_estimate: T::zero(),
                method: Method::Asymptotic,
                terms_or_evals: 0,
            })
        }
        (AngularShape::Directional, Method::ClosedForm) => closed_form_kernel_with(z, opts.taylor_switchover),
        (AngularShape::Directional, Method::Quadrature) => quadrature_kernel_with(z, opts.tol, opts.max_depth),
        (AngularShape::Directional, Method::JacobiAnger) => series_kernel(z, opts.tol),
        (AngularShape::Directional, Method::Taylor) => taylor_kernel(z, opts.taylor_order),
        (AngularShape::Isotropic, Method::ClosedForm) => isotropic_closed_form(z),
        (AngularShape::Isotropic, _) => isotropic_kernel_with(z, opts.tol, opts.max_depth),
    }
}
