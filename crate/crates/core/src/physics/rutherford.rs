use super::constants::{coulomb_constant_e2, BOLTZMANN};
use crate::error::{domain, Result};

/// Angular prefactor `(Z Z' e² / (4πε₀ k_B T))²` [m²] of Coulomb scattering at the thermal
/// wavenumber `ħ² q² = m k_B T`.
///
/// Substituting that `q` into `m² / (ħ⁴ q⁴) · (Z Z' e²/4πε₀)²` cancels the mass exactly, so `mass`
/// is only checked for positivity.
pub fn rutherford_prefactor(atom_charge: i32, particle_charge: i32, temperature: f64, mass: f64) -> Result<f64> {
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(domain(format!("temperature must be positive, got {temperature}")));
    }
    if !(mass.is_finite() && mass > 0.0) {
        return Err(domain(format!("mass must be positive, got {mass}")));
    }
    let length =
        f64::from(atom_charge) * f64::from(particle_charge) * coulomb_constant_e2() / (BOLTZMANN * temperature);
    Ok(length * length)
}

/// Effective interaction rate `Φ_eff = flux · (Z' e²/(4πε₀ k_B T))²` [1/s] for singly charged
/// ions (`Z = 1`) hitting a particle of charge `Z' e`.
///
/// This is the prefactor in front of the angular kernel; the ½(1+cos²θ) shape's total weight 2/3
/// enters through `F_ang` when the rate is turned into decoherence and phase.
pub fn ion_detection_rate(particle_charge: i32, temperature: f64, mass: f64, flux_density: f64) -> Result<f64> {
    if !(flux_density.is_finite() && flux_density >= 0.0) {
        return Err(domain(format!("flux density must be non-negative, got {flux_density}")));
    }
    Ok(flux_density * rutherford_prefactor(1, particle_charge, temperature, mass)?)
}

#[cfg(test)]
mod tests {
    use super::super::beam::thermal_wavenumber;
    use super::super::constants::HBAR;
    use super::super::cross_section::CrossSection;
    use super::*;

    #[test]
    fn unsimplified_route_agrees() {
        // m²/(ħ⁴q⁴)·(ZZ'e²/4πε₀)² with q from the thermal rule.
        let (m, t) = (1e-25, 100.0);
        let q = thermal_wavenumber(m, t).unwrap();
        let c = coulomb_constant_e2();
        let direct = (m / (HBAR * HBAR * q * q)).powi(2) * c * c;
        let p = rutherford_prefactor(1, 1, t, m).unwrap();
        assert!((direct - p).abs() < 1e-12 * p);
        let xs = CrossSection::Rutherford {
            atom_charge: 1,
            particle_charge: 1,
            mass: m,
        };
        assert!((xs.coupling(q) - p).abs() < 1e-12 * p);
    }

    #[test]
    fn mass_drops_out() {
        let p = rutherford_prefactor(1, 1, 100.0, 1e-25).unwrap();
        for m in [1e-26, 1e-24] {
            assert_eq!(rutherford_prefactor(1, 1, 100.0, m).unwrap(), p);
        }
        // (e²/4πε₀ / k_B T)² at 100 K from CODATA 2018.
        assert!((p / 2.792_272_6e-14 - 1.0).abs() < 1e-7, "{p:e}");
    }

    #[test]
    fn charge_scaling() {
        let one = rutherford_prefactor(1, 1, 100.0, 1e-25).unwrap();
        let ten = rutherford_prefactor(1, 10, 100.0, 1e-25).unwrap();
        assert!((ten / one - 100.0).abs() < 1e-12);
    }

    #[test]
    fn domain() {
        assert!(rutherford_prefactor(1, 1, 0.0, 1e-25).is_err());
        assert!(rutherford_prefactor(1, 1, 100.0, -1.0).is_err());
        assert!(ion_detection_rate(1, 100.0, 1e-25, -1.0).is_err());
    }
}
