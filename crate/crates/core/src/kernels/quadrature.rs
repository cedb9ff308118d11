//! Direct adaptive integration of the directional kernel over `u = cos θ' ∈ [−1, 1]`.

use num_complex::Complex;

use super::gauss_kronrod::{integrate, AdaptiveOptions};
use super::{check_z, KernelOptions, KernelResult, Method};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Above this `z` the interval is pre-split into pieces no longer than `π/z`.
pub const PRESPLIT_ABOVE: f64 = 500.0;

pub(crate) fn pieces_for<T: Real>(z: T, span: T) -> usize {
    if z > T::lit(PRESPLIT_ABOVE) {
        (z * span / T::PI()).ceil().to_usize().unwrap_or(1).max(1)
    } else {
        1
    }
}

pub(crate) fn check_tol<T: Real>(tol: T, lo: f64, hi: f64) -> Result<()> {
    if !(tol > T::lit(lo) && tol < T::lit(hi)) {
        return Err(domain(format!("tolerance must lie in ({lo:e}, {hi:e}), got {tol}")));
    }
    Ok(())
}

/// Directional kernel by adaptive Gauss–Kronrod quadrature to absolute tolerance `tol`.
pub fn quadrature_kernel<T: Real>(z: T, tol: T) -> Result<KernelResult<T>> {
    quadrature_kernel_with(z, tol, KernelOptions::<T>::default().max_depth)
}

pub(crate) fn quadrature_kernel_with<T: Real>(z: T, tol: T, max_depth: u32) -> Result<KernelResult<T>> {
    check_z(z)?;
    check_tol(tol, 1e-14, 1e-2)?;
    if z == T::zero() {
        return Ok(KernelResult::exact_zero(Method::Quadrature, 0));
    }
    let quarter = T::lit(0.25);
    let integrand = |u: T| -> Complex<T> {
        let weight = quarter * (T::one() + u * u);
        crate::scalar::one_minus_expi(z * (T::one() - u)) * weight
    };
    let opts = AdaptiveOptions {
        tol,
        max_depth,
        initial_pieces: pieces_for(z, T::lit(2.0)),
    };
    let out = integrate(integrand, -T::one(), T::one(), &opts);
    if !out.converged {
        return Err(Error::Convergence {
            method: Method::Quadrature,
            best_re: out.value.re.to_f64_lossy(),
            best_im: out.value.im.to_f64_lossy(),
            abs_error: out.abs_error.to_f64_lossy(),
            detail: format!("subdivision depth {max_depth} exhausted at z = {z}"),
        });
    }
    Ok(KernelResult {
        value: out.value,
        abs_error_estimate: out.abs_error,
        method: Method::Quadrature,
        terms_or_evals: out.evals,
    })
}
