//! Small-`z` expansion of the directional kernel.
//!
//! Substituting `w = 1 − u` gives `F_ang(z) = −¼ Σ_{k≥1} (iz)^k/k! · M_k` with
//! `M_k = ∫₀² (2 − 2w + w²) w^k dw = 2^{k+2}/(k+1) − 2^{k+3}/(k+2) + 2^{k+3}/(k+3)`.

use num_complex::Complex;

use super::{check_z, KernelResult, Method};
use crate::error::{domain, Result};
use crate::scalar::Real;

/// Linear coefficient: `c₁ = −(i)·¼·M₁ = −(2/3) i`, `M₁ = 8/3`.
pub const TAYLOR_C1_IM: f64 = -2.0 / 3.0;
/// Quadratic coefficient: `c₂ = −(i²/2)·¼·M₂ = 7/15`, `M₂ = 56/15`.
pub const TAYLOR_C2_RE: f64 = 7.0 / 15.0;
/// Cubic coefficient: `c₃ = −(i³/6)·¼·M₃ = (11/45) i`, `M₃ = 32/4 − 64/5 + 64/6 = 88/15`.
pub const TAYLOR_C3_IM: f64 = 11.0 / 45.0;

fn moment(k: u32) -> f64 {
    let p = 2f64.powi(k as i32 + 2);
    let k = f64::from(k);
    p / (k + 1.0) - 2.0 * p / (k + 2.0) + 2.0 * p / (k + 3.0)
}

/// The `k`-th Taylor coefficient `c_k` of `F_ang(z) = Σ c_k z^k`, `k ≥ 1`.
pub fn taylor_coefficient<T: Real>(k: u32) -> Complex<T> {
    let mut factorial = 1.0;
    for n in 2..=k {
        factorial *= f64::from(n);
    }
    let magnitude = 0.25 * moment(k) / factorial;
    // −i^k
    let c = match k % 4 {
        0 => Complex::new(-magnitude, 0.0),
        1 => Complex::new(0.0, -magnitude),
        2 => Complex::new(magnitude, 0.0),
        _ => Complex::new(0.0, magnitude),
    };
    Complex::new(T::lit(c.re), T::lit(c.im))
}

/// Horner evaluation of `Σ_{k=1}^{order} c_k z^k` with error estimate `|c_{order+1}| z^{order+1}`.
pub(crate) fn taylor_sum<T: Real>(z: T, order: u32) -> (Complex<T>, T) {
    let mut acc = Complex::new(T::zero(), T::zero());
    for k in (1..=order).rev() {
        acc = (acc + taylor_coefficient::<T>(k)) * z;
    }
    let next = taylor_coefficient::<T>(order + 1).norm() * z.powi(order as i32 + 1);
    (acc, next)
}

/// Taylor expansion of the directional kernel to `order ∈ {1, 2, 3}`. Intended for `z ≪ 1`.
pub fn taylor_kernel<T: Real>(z: T, order: u32) -> Result<KernelResult<T>> {
    check_z(z)?;
    if !(1..=3).contains(&order) {
        return Err(domain(format!("Taylor order must be 1, 2 or 3, got {order}")));
    }
    let (value, err) = taylor_sum(z, order);
    Ok(KernelResult {
        value,
        abs_error_estimate: err,
        method: Method::Taylor,
        terms_or_evals: order as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_constants_match_generator() {
        assert!((taylor_coefficient::<f64>(1) - Complex::new(0.0, TAYLOR_C1_IM)).norm() < 1e-15);
        assert!((taylor_coefficient::<f64>(2) - Complex::new(TAYLOR_C2_RE, 0.0)).norm() < 1e-15);
        assert!((taylor_coefficient::<f64>(3) - Complex::new(0.0, TAYLOR_C3_IM)).norm() < 1e-15);
    }

    #[test]
    fn second_order_at_one_tenth() {
        let k = taylor_kernel(0.1f64, 2).unwrap();
        assert!((k.value.re - 4.666_666_666_666_667e-3).abs() < 1e-15);
        assert!((k.value.im + 6.666_666_666_666_667e-2).abs() < 1e-15);
        assert_eq!(k.terms_or_evals, 2);
        assert!((k.abs_error_estimate - TAYLOR_C3_IM * 1e-3).abs() < 1e-15);
    }

    #[test]
    fn zero_and_domain() {
        assert_eq!(taylor_kernel(0.0f64, 3).unwrap().value, Complex::new(0.0, 0.0));
        assert!(taylor_kernel(0.1f64, 0).is_err());
        assert!(taylor_kernel(0.1f64, 4).is_err());
        assert!(taylor_kernel(f64::INFINITY, 2).is_err());
    }
}
