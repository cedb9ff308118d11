//! SI-unit layer: cross-sections, beams, and the dimensional localization rate
//! `F(δx) = Φ_eff · F_ang(q₀ δx)`.

mod beam;
pub mod constants;
mod cross_section;
mod rate;
mod rutherford;

pub use beam::{thermal_wavenumber, Beam, FluxSample, PHOTONS_PER_PROFILE};
pub use cross_section::{CrossSection, RayleighFactor};
pub use rate::{effective_flux, localization_rate, ComplexRate};
pub use rutherford::{ion_detection_rate, rutherford_prefactor};
