//! Analytic reduction of the directional kernel.
//!
//! With `R(z) = ¼∫₋₁¹ (1+u²) cos(zu) du = sin z/z + cos z/z² − sin z/z³` (the sine part vanishes
//! by parity), `F_ang(z) = 2/3 − e^{iz} R(z)`. It is evaluated as
//! `Re F = (2/3 − R) + 2 sin²(z/2) R`, `Im F = −sin z · R`, so that nothing cancels near `z = 0`.

use num_complex::Complex;

use super::taylor::taylor_sum;
use super::{check_z, KernelOptions, KernelResult, Method, SHAPE_WEIGHT};
use crate::error::Result;
use crate::scalar::Real;

// Below this z, R and 2/3 − R come from their power series.
const SERIES_BELOW: f64 = 1.0;
// Taylor order used under the switchover; the next term is O(z⁷).
const SWITCHOVER_ORDER: u32 = 6;

/// Returns `(R(z), 2/3 − R(z))`.
fn r_and_deficit<T: Real>(z: T) -> (T, T) {
    if z < T::lit(SERIES_BELOW) {
        // R = Σ_m (−1)^m z^{2m}/(2m)! · [1/(2(2m+1)) + 1/(2(2m+3))]
        let z2 = z * z;
        let mut power = T::one();
        let mut deficit = T::zero();
        let mut m = 1u32;
        loop {
            let two_m = T::from_u32(2 * m).unwrap();
            power = -power * z2 / (two_m * (two_m - T::one()));
            let weight = T::lit(0.5) / (two_m + T::one()) + T::lit(0.5) / (two_m + T::lit(3.0));
            let term = power * weight;
            deficit = deficit - term;
            if term.abs() <= T::epsilon() * deficit.abs() || m > 40 {
                break;
            }
            m += 1;
        }
        (T::lit(SHAPE_WEIGHT) - deficit, deficit)
    } else {
        let (s, c) = z.sin_cos();
        let r = s / z + c / (z * z) - s / (z * z * z);
        (r, T::lit(SHAPE_WEIGHT) - r)
    }
}

/// Closed-form directional kernel with the default Taylor switchover `z* = 1e−3`.
pub fn closed_form_kernel<T: Real>(z: T) -> Result<KernelResult<T>> {
    closed_form_kernel_with(z, KernelOptions::<T>::default().taylor_switchover)
}

/// Closed-form directional kernel; below `switchover` the Taylor expansion is used instead.
pub fn closed_form_kernel_with<T: Real>(z: T, switchover: T) -> Result<KernelResult<T>> {
    check_z(z)?;
    if z == T::zero() {
        return Ok(KernelResult::exact_zero(Method::ClosedForm, 0));
    }
    if z < switchover {
        let (value, err) = taylor_sum(z, SWITCHOVER_ORDER);
        return Ok(KernelResult {
            value,
            abs_error_estimate: err + T::epsilon() * value.norm(),
            method: Method::ClosedForm,
            terms_or_evals: SWITCHOVER_ORDER as usize,
        });
    }
    let (r, deficit) = r_and_deficit(z);
    let half = z * T::lit(0.5);
    let sh = half.sin();
    let value = Complex::new(deficit + T::lit(2.0) * sh * sh * r, -z.sin() * r);
    // A handful of roundings on O(1) quantities.
    let abs_error_estimate = T::lit(16.0) * T::epsilon() * (T::one() + value.norm());
    Ok(KernelResult {
        value,
        abs_error_estimate,
        method: Method::ClosedForm,
        terms_or_evals: 1,
    })
}
