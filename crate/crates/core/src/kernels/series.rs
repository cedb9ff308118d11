//! Jacobi–Anger evaluation of the directional kernel.
//!
//! With `u = cos θ`, `e^{−izu} = J₀(z) + 2 Σ_{n≥1} (−i)^n J_n(z) T_n(u)`. Each Chebyshev harmonic
//! integrates analytically against `1 + u²`; odd harmonics vanish, leaving a real sum
//! `I(z) = ∫₋₁¹ (1+u²) e^{−izu} du = Σ_k t_k` over even `n = 2k`, and `F_ang = 2/3 − ¼ e^{iz} I(z)`.

use num_complex::Complex;

use super::bessel::bessel_jn_sequence;
use super::{check_z, KernelResult, Method, SHAPE_WEIGHT};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

// Consecutive negligible terms required before truncating.
const QUIET_RUN: usize = 3;

/// `∫₋₁¹ T_k(u) du` for even `k`.
fn chebyshev_integral<T: Real>(k: u32) -> T {
    let k = T::from_u32(k).unwrap();
    T::lit(2.0) / (T::one() - k * k)
}

/// `m_n = ∫₋₁¹ (1+u²) T_n(u) du` for even `n`, using `u² = (1 + T₂)/2` and
/// `T₂ T_n = (T_{n+2} + T_{|n−2|})/2`.
fn harmonic_moment<T: Real>(n: u32) -> T {
    let base = chebyshev_integral::<T>(n);
    let up = chebyshev_integral::<T>(n + 2);
    let down = chebyshev_integral::<T>(n.abs_diff(2));
    T::lit(1.5) * base + T::lit(0.25) * (up + down)
}

/// Maximum harmonic order the series may reach before giving up.
pub fn max_harmonic<T: Real>(z: T) -> u32 {
    z.ceil().to_u32().unwrap_or(u32::MAX - 200) + 200
}

/// Directional kernel by Jacobi–Anger expansion, truncated once three consecutive terms fall
/// below `tol·|partial sum|` (or below `tol` when the sum is near zero).
pub fn series_kernel<T: Real>(z: T, tol: T) -> Result<KernelResult<T>> {
    check_z(z)?;
    if !(tol > T::zero()) || !tol.is_finite() {
        return Err(domain(format!("tolerance must be positive, got {tol}")));
    }
    let n_max = max_harmonic(z);
    let bessel = bessel_jn_sequence(n_max.min(super::BESSEL_MAX_ORDER), z)?;

    let mut sum = T::zero();
    let mut quiet = 0usize;
    let mut last_significant = 0usize;
    let mut tail = T::zero();
    let mut n = 0u32;
    let mut index = 0usize;
    loop {
        if n > n_max || n as usize >= bessel.len() {
            let best = finish(z, sum);
            return Err(Error::Convergence {
                method: Method::JacobiAnger,
                best_re: best.re.to_f64_lossy(),
                best_im: best.im.to_f64_lossy(),
                abs_error: tail.to_f64_lossy(),
                detail: format!("harmonic order exceeded N_max = {n_max} at z = {z}"),
            });
        }
        let sign = if (n / 2).is_multiple_of(2) { T::one() } else { -T::one() };
        let multiplicity = if n == 0 { T::one() } else { T::lit(2.0) };
        let term = multiplicity * sign * bessel[n as usize] * harmonic_moment::<T>(n);
        sum = sum + term;

        let floor = if sum.abs() > tol { tol * sum.abs() } else { tol };
        if term.abs() < floor {
            quiet += 1;
            tail = tail + term.abs();
        } else {
            quiet = 0;
            tail = T::zero();
            last_significant = index;
        }
        if quiet >= QUIET_RUN {
            break;
        }
        n += 2;
        index += 1;
    }

    let value = finish(z, sum);
    Ok(KernelResult {
        value,
        abs_error_estimate: T::lit(0.25) * tail + T::lit(8.0) * T::epsilon(),
        method: Method::JacobiAnger,
        terms_or_evals: last_significant + 1,
    })
}

fn finish<T: Real>(z: T, integral: T) -> Complex<T> {
    let (s, c) = z.sin_cos();
    let quarter = T::lit(0.25) * integral;
    Complex::new(T::lit(SHAPE_WEIGHT) - c * quarter, -s * quarter)
}
