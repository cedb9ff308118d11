use serde::{Deserialize, Serialize};

use super::constants::{BOLTZMANN, HBAR};
use super::cross_section::CrossSection;
use crate::error::{domain, Result};

/// Photons per transverse area per second assumed for shaped single-photon sources.
pub const PHOTONS_PER_PROFILE: f64 = 1.0e6;

/// One row of a tabulated beam: spectral flux `n(q)v(q)` per unit wavenumber at `wavenumber`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxSample {
    /// rad/m
    pub wavenumber: f64,
    /// particles m⁻² s⁻¹ per (rad/m)
    pub spectral_flux: f64,
}

/// Incident particles, always travelling along `+z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Beam {
    /// `n(q)v(q) = flux_density · δ(q − wavenumber)`.
    Monochromatic {
        /// rad/m
        wavenumber: f64,
        /// particles m⁻² s⁻¹
        flux_density: f64,
    },
    /// Spectral flux sampled on an ascending wavenumber grid, integrated by the trapezoid rule.
    Tabulated { samples: Vec<FluxSample> },
}

impl Beam {
    pub fn monochromatic(wavenumber: f64, flux_density: f64) -> Result<Self> {
        let beam = Beam::Monochromatic {
            wavenumber,
            flux_density,
        };
        beam.validate()?;
        Ok(beam)
    }

    pub fn from_wavelength(wavelength: f64, flux_density: f64) -> Result<Self> {
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(domain(format!("wavelength must be positive, got {wavelength}")));
        }
        Self::monochromatic(std::f64::consts::TAU / wavelength, flux_density)
    }

    /// Thermal beam with the single wavenumber fixed by `k_B T / 2 = ħ² q² / 2m`.
    pub fn thermal(mass: f64, temperature: f64, flux_density: f64) -> Result<Self> {
        Self::monochromatic(thermal_wavenumber(mass, temperature)?, flux_density)
    }

    /// Single photons of wavelength `λ` shaped to transverse area `area`, at
    /// [`PHOTONS_PER_PROFILE`] per area per second.
    pub fn photon_profile(wavelength: f64, area: f64) -> Result<Self> {
        if !(area.is_finite() && area > 0.0) {
            return Err(domain(format!("photon profile area must be positive, got {area}")));
        }
        Self::from_wavelength(wavelength, PHOTONS_PER_PROFILE / area)
    }

    /// Monochromatic beam whose flux makes the effective rate `g q₀^j n v` exactly 1 s⁻¹.
    pub fn unit_rate(wavenumber: f64, xs: &CrossSection) -> Result<Self> {
        xs.validate()?;
        let coupling = xs.coupling(wavenumber);
        if !(coupling.is_finite() && coupling > 0.0) {
            return Err(domain("cross-section coupling must be positive to normalise the flux"));
        }
        Self::monochromatic(wavenumber, 1.0 / coupling)
    }

    pub fn tabulated(samples: Vec<FluxSample>) -> Result<Self> {
        let beam = Beam::Tabulated { samples };
        beam.validate()?;
        Ok(beam)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Beam::Monochromatic {
                wavenumber,
                flux_density,
            } => {
                if !(wavenumber.is_finite() && *wavenumber > 0.0) {
                    return Err(domain(format!("wavenumber must be positive, got {wavenumber}")));
                }
                if !(flux_density.is_finite() && *flux_density >= 0.0) {
                    return Err(domain(format!("flux density must be non-negative, got {flux_density}")));
                }
            }
            Beam::Tabulated { samples } => {
                if samples.len() < 2 {
                    return Err(domain("tabulated beam needs at least two samples"));
                }
                for s in samples {
                    if !(s.wavenumber.is_finite() && s.wavenumber > 0.0) {
                        return Err(domain(format!("wavenumber must be positive, got {}", s.wavenumber)));
                    }
                    if !(s.spectral_flux.is_finite() && s.spectral_flux >= 0.0) {
                        return Err(domain(format!(
                            "spectral flux must be non-negative, got {}",
                            s.spectral_flux
                        )));
                    }
                }
                if samples.windows(2).any(|w| w[1].wavenumber <= w[0].wavenumber) {
                    return Err(domain("tabulated wavenumbers must be strictly ascending"));
                }
            }
        }
        Ok(())
    }

    /// `q₀` for monochromatic beams, the flux-weighted mean wavenumber for tabulated ones.
    pub fn reference_wavenumber(&self) -> f64 {
        match self {
            Beam::Monochromatic { wavenumber, .. } => *wavenumber,
            Beam::Tabulated { samples } => {
                let total = trapezoid(samples, |s| s.spectral_flux);
                if total > 0.0 {
                    trapezoid(samples, |s| s.spectral_flux * s.wavenumber) / total
                } else {
                    0.5 * (samples[0].wavenumber + samples[samples.len() - 1].wavenumber)
                }
            }
        }
    }

    pub fn reference_wavelength(&self) -> f64 {
        std::f64::consts::TAU / self.reference_wavenumber()
    }
}

/// Wavenumber with `k_B T / 2 = ħ² q² / 2m`, i.e. `q = √(m k_B T) / ħ`.
pub fn thermal_wavenumber(mass: f64, temperature: f64) -> Result<f64> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(domain(format!("mass must be positive, got {mass}")));
    }
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(domain(format!("temperature must be positive, got {temperature}")));
    }
    Ok((mass * BOLTZMANN * temperature).sqrt() / HBAR)
}

pub(crate) fn trapezoid(samples: &[FluxSample], f: impl Fn(&FluxSample) -> f64) -> f64 {
    samples
        .windows(2)
        .map(|w| 0.5 * (w[1].wavenumber - w[0].wavenumber) * (f(&w[0]) + f(&w[1])))
        .sum()
}
