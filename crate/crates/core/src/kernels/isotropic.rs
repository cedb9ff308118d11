//! Kernel for scatterers arriving uniformly from all directions.
//!
//! Averaging over both the incoming direction `μ = cos θ` and the outgoing one `μ'`, and over
//! their relative azimuth, the `½(1+cos²Θ)` shape becomes
//! `w(μ, μ') = ¾ − ¼μ² − ¼μ'² + ¾μ²μ'²` and
//!
//! ```text
//! F_iso(z) = ¼ ∫∫ w(μ, μ') (1 − e^{iz(μ−μ')}) dμ dμ'.
//! ```
//!
//! Writing `e^{iz(μ−μ')} − 1 = ab + a + b` with `a = e^{izμ} − 1`, `b = e^{−izμ'} − 1` separates the
//! double integral into the 1-D moments `E_k = ∫ μ^k (e^{izμ} − 1) dμ`, `k ∈ {0, 2}`, with no
//! cancellation at small `z`. The weight is symmetric, so the imaginary part vanishes.

use num_complex::Complex;

use super::gauss_kronrod::{integrate, AdaptiveOptions};
use super::quadrature::{check_tol, pieces_for};
use super::{check_z, KernelOptions, KernelResult, Method};
use crate::error::{Error, Result};
use crate::scalar::Real;

const WEIGHTS: [[f64; 2]; 2] = [[0.75, -0.25], [-0.25, 0.75]];
const PLAIN_MOMENTS: [f64; 2] = [2.0, 2.0 / 3.0];

fn assemble<T: Real>(e: [Complex<T>; 2]) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for j in 0..2 {
        for k in 0..2 {
            let w = T::lit(WEIGHTS[j][k]);
            let pj = T::lit(PLAIN_MOMENTS[j]);
            let pk = T::lit(PLAIN_MOMENTS[k]);
            let ek = e[k].conj();
            acc = acc + (e[j] * ek + e[j] * pk + ek * pj) * w;
        }
    }
    -acc * T::lit(0.25)
}

/// Analytic `E_k` for `k ∈ {0, 2}` (both real by parity).
fn moments_closed_form<T: Real>(z: T) -> [T; 2] {
    if z < T::one() {
        // Σ_{m≥1} (−1)^m z^{2m}/(2m)! · 2/(2m+k+1)
        let z2 = z * z;
        let mut power = T::one();
        let mut out = [T::zero(); 2];
        for m in 1..60u32 {
            let two_m = T::from_u32(2 * m).unwrap();
            power = -power * z2 / (two_m * (two_m - T::one()));
            let t0 = power * T::lit(2.0) / (two_m + T::one());
            let t2 = power * T::lit(2.0) / (two_m + T::lit(3.0));
            out[0] = out[0] + t0;
            out[1] = out[1] + t2;
            if t0.abs() <= T::epsilon() * out[0].abs() && t2.abs() <= T::epsilon() * out[1].abs() {
                break;
            }
        }
        out
    } else {
        let (s, c) = z.sin_cos();
        let two = T::lit(2.0);
        let e0 = two * s / z - two;
        let e2 = two * (s / z + two * c / (z * z) - two * s / (z * z * z)) - T::lit(2.0 / 3.0);
        [e0, e2]
    }
}

/// Isotropic kernel from the analytic moments.
pub fn isotropic_closed_form<T: Real>(z: T) -> Result<KernelResult<T>> {
    check_z(z)?;
    if z == T::zero() {
        return Ok(KernelResult::exact_zero(Method::ClosedForm, 0));
    }
    let [e0, e2] = moments_closed_form(z);
    let value = assemble([Complex::new(e0, T::zero()), Complex::new(e2, T::zero())]);
    Ok(KernelResult {
        value,
        abs_error_estimate: T::lit(32.0) * T::epsilon() * (T::one() + value.norm()),
        method: Method::ClosedForm,
        terms_or_evals: 1,
    })
}

/// Isotropic kernel with the moments obtained by adaptive quadrature to absolute tolerance `tol`.
pub fn isotropic_kernel<T: Real>(z: T, tol: T) -> Result<KernelResult<T>> {
    isotropic_kernel_with(z, tol, KernelOptions::<T>::default().max_depth)
}

pub(crate) fn isotropic_kernel_with<T: Real>(z: T, tol: T, max_depth: u32) -> Result<KernelResult<T>> {
    check_z(z)?;
    check_tol(tol, 1e-12, 1e-2)?;
    if z == T::zero() {
        return Ok(KernelResult::exact_zero(Method::Quadrature, 0));
    }
    // |∂F/∂E_k| ≤ ¼·Σ|W|·(|E| + P) ≤ 2 for |E_k| ≤ 4, so tol/8 per moment keeps the total below tol.
    let opts = AdaptiveOptions {
        tol: tol / T::lit(8.0),
        max_depth,
        initial_pieces: pieces_for(z, T::lit(2.0)),
    };
    let mut moments = [Complex::new(T::zero(), T::zero()); 2];
    let mut err = T::zero();
    let mut evals = 0;
    for (slot, power) in [0i32, 2].into_iter().enumerate() {
        let out = integrate(
            |mu: T| -crate::scalar::one_minus_expi(z * mu) * mu.powi(power),
            -T::one(),
            T::one(),
            &opts,
        );
        evals += out.evals;
        err = err + out.abs_error;
        moments[slot] = out.value;
        if !out.converged {
            let partial = assemble(moments);
            return Err(Error::Convergence {
                method: Method::Quadrature,
                best_re: partial.re.to_f64_lossy(),
                best_im: partial.im.to_f64_lossy(),
                abs_error: out.abs_error.to_f64_lossy(),
                detail: format!("isotropic moment E_{power} did not converge at z = {z}"),
            });
        }
    }
    let value = assemble(moments);
    Ok(KernelResult {
        value,
        abs_error_estimate: T::lit(2.0) * err,
        method: Method::Quadrature,
        terms_or_evals: evals,
    })
}
