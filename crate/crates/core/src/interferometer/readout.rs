//! Gate-level readout of the spin after the interferometer closes.

use num_complex::Complex;

use super::spin::{Mat2, SpinState, VisibilityPhase};
use crate::error::{domain, Result};
use crate::physics::ComplexRate;
use crate::scalar::Real;

fn check_time<T: Real>(t: T) -> Result<()> {
    if !(t.is_finite() && t >= T::zero()) {
        return Err(domain(format!("time must be finite and non-negative, got {t}")));
    }
    Ok(())
}

/// Non-unitary evolution under the localization rate: populations stay put and
/// `ρ₁₂(t) = ρ₁₂(0) · exp(−(deco_rate − i·phase_rate) t)`.
pub fn evolve<T: Real>(rho0: &SpinState<T>, rate: &ComplexRate<T>, t: T) -> Result<SpinState<T>> {
    check_time(t)?;
    let factor = Complex::from_polar((-rate.deco_rate * t).exp(), rate.phase_rate * t);
    let m = rho0.matrix().0;
    let c = m[0][1] * factor;
    Ok(SpinState::from_matrix_unchecked(Mat2::new(
        m[0][0],
        c,
        c.conj(),
        m[1][1],
    )))
}

/// `S = diag(1, i)`.
pub fn phase_gate<T: Real>() -> Mat2<T> {
    Mat2::diag(Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::one()))
}

/// `H = (1/√2) [[1, 1], [1, −1]]`.
pub fn hadamard<T: Real>() -> Mat2<T> {
    let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    Mat2::new(h, h, h, -h)
}

/// `ρ_f = H S ρ S† H`. For `ρ = ½[[a, A e^{iφ}], [A e^{−iφ}, b]]` the diagonal becomes
/// `(a + b ± 2 A sin φ)/4`. With `S = diag(1, −i)` instead, the sign of the signal flips.
pub fn apply_readout_gates<T: Real>(rho: &SpinState<T>) -> SpinState<T> {
    let u = hadamard::<T>() * phase_gate::<T>();
    SpinState::from_matrix_unchecked(rho.matrix().conjugate_by(&u))
}

/// `ρ_f,11 − ρ_f,22`; after [`apply_readout_gates`] this is `2 Im ρ₁₂` of the pre-gate state,
/// i.e. `A sin φ`.
pub fn signal<T: Real>(rho_f: &SpinState<T>) -> T {
    rho_f.population(0) - rho_f.population(1)
}

/// Visibility `A = e^{−deco_rate·t}` and phase `φ = phase_rate·t` after time `t`.
pub fn visibility_phase<T: Real>(rate: &ComplexRate<T>, t: T) -> Result<VisibilityPhase<T>> {
    check_time(t)?;
    Ok(VisibilityPhase {
        amplitude: (-rate.deco_rate * t).exp(),
        phase: rate.phase_rate * t,
    })
}

/// Click-detector efficiency `η = ⟨−|ρ(t)|−⟩` for `ρ(0) = |+⟩⟨+|`,
/// equal to `½(1 − e^{−deco_rate·t} cos(phase_rate·t))`.
pub fn efficiency<T: Real>(rate: &ComplexRate<T>, t: T) -> Result<T> {
    let rho = evolve(&SpinState::plus(), rate, t)?;
    let m = rho.matrix().0;
    // ⟨−|ρ|−⟩ = ½(ρ₁₁ + ρ₂₂ − ρ₁₂ − ρ₂₁)
    Ok(T::lit(0.5) * (m[0][0].re + m[1][1].re - m[0][1].re - m[1][0].re))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, LN_2, PI};

    use super::*;

    fn rate(deco: f64, phase: f64) -> ComplexRate<f64> {
        ComplexRate::new(deco, phase)
    }

    #[test]
    fn evolve_zero_time_is_identity() {
        let s = SpinState::from_parts(1.1, 0.9, 0.5, 0.3).unwrap();
        assert_eq!(evolve(&s, &rate(3.0, 2.0), 0.0).unwrap(), s);
    }

    #[test]
    fn pure_phase_flip() {
        let out = evolve(&SpinState::plus(), &rate(0.0, PI), 1.0).unwrap();
        assert!((out.coherence() - Complex::new(-0.5, 0.0)).norm() < 1e-15);
        assert!((out.matrix().0[0][0] - SpinState::<f64>::minus().matrix().0[0][0]).norm() < 1e-15);
        assert!((out.expectation([Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)]) / 2.0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn halving_coherence() {
        let out = evolve(&SpinState::plus(), &rate(LN_2, 0.0), 1.0).unwrap();
        assert!((out.coherence().re - 0.25).abs() < 1e-15);
        assert!((out.purity() - 0.625).abs() < 1e-15);
    }

    #[test]
    fn gates_on_mixed_state() {
        let out = apply_readout_gates(&SpinState::<f64>::maximally_mixed());
        assert!((out.population(0) - 0.5).abs() < 1e-15);
        assert!((out.population(1) - 0.5).abs() < 1e-15);
        assert_eq!(signal(&out), 0.0);
    }

    #[test]
    fn gates_project_phase_onto_populations() {
        let out = apply_readout_gates(&SpinState::from_parts(1.0, 1.0, 1.0, FRAC_PI_2).unwrap());
        assert!((out.population(0) - 1.0).abs() < 1e-15);
        assert!(out.population(1).abs() < 1e-15);
        assert!((signal(&out) - 1.0).abs() < 1e-15);

        // Explicit product oracle for A = 0.5, φ = π/6: diag = (2 ± 2·0.5·0.5)/4.
        let out = apply_readout_gates(&SpinState::from_parts(1.0, 1.0, 0.5, PI / 6.0).unwrap());
        assert!((out.population(0) - 0.625).abs() < 1e-15);
        assert!((out.population(1) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn signal_value() {
        let (a, phi) = ((-0.3f64).exp(), 0.8f64);
        let out = apply_readout_gates(&SpinState::from_parts(1.0, 1.0, a, phi).unwrap());
        assert!((signal(&out) - 0.531_430_462_855_377_1).abs() < 1e-12);
    }

    #[test]
    fn efficiency_values() {
        assert_eq!(efficiency(&rate(0.0, 0.0), 1.0).unwrap(), 0.0);
        assert!((efficiency(&rate(0.0, PI), 1.0).unwrap() - 1.0).abs() < 1e-12);
        let expected = 0.5 * (1.0 + (-1.0f64).exp());
        assert!((efficiency(&rate(1.0, PI), 1.0).unwrap() - expected).abs() < 1e-12);
        assert!(efficiency(&rate(1.0, 1.0), -1.0).is_err());
    }

    #[test]
    fn visibility_and_phase() {
        let vp = visibility_phase(&rate(0.3, 0.8), 1.0).unwrap();
        assert!((vp.amplitude - (-0.3f64).exp()).abs() < 1e-15);
        assert_eq!(vp.phase, 0.8);
    }
}
