use num_complex::Complex;

use super::beam::{trapezoid, Beam};
use super::cross_section::CrossSection;
use crate::error::{domain, Result};
use crate::kernels::{kernel, AngularShape, KernelOptions, Method};
use crate::scalar::Real;

/// The localization rate `F(δx)` split into its physical roles.
///
/// `F = deco_rate − i·phase_rate`: the coherence evolves as `ρ₁₂(t) = ρ₁₂(0) e^{−F t}`, so a
/// positive `phase_rate` advances the relative phase. For a directional beam at small `z` the
/// kernel's `−(2/3) i z` term makes `phase_rate` positive.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexRate<T> {
    /// 1/s
    pub deco_rate: T,
    /// rad/s
    pub phase_rate: T,
    /// m
    pub delta_x: T,
    /// `q₀ δx` (reference wavenumber for tabulated beams)
    pub z: T,
}

impl<T: Real> ComplexRate<T> {
    /// A rate with only the decoherence and phase components set.
    pub fn new(deco_rate: T, phase_rate: T) -> Self {
        Self {
            deco_rate,
            phase_rate,
            delta_x: T::zero(),
            z: T::zero(),
        }
    }

    /// `F = deco_rate − i·phase_rate`.
    pub fn as_complex(&self) -> Complex<T> {
        Complex::new(self.deco_rate, -self.phase_rate)
    }
}

/// `Φ_eff = ∫ dq n(q)v(q) g q^j` [1/s].
pub fn effective_flux(beam: &Beam, xs: &CrossSection) -> Result<f64> {
    beam.validate()?;
    xs.validate()?;
    Ok(match beam {
        Beam::Monochromatic {
            wavenumber,
            flux_density,
        } => flux_density * xs.coupling(*wavenumber),
        Beam::Tabulated { samples } => trapezoid(samples, |s| s.spectral_flux * xs.coupling(s.wavenumber)),
    })
}

/// `F(δx) = ∫ dq n(q)v(q) g q^j F_ang(q δx)` for the given environment and kernel method.
pub fn localization_rate(
    beam: &Beam,
    xs: &CrossSection,
    delta_x: f64,
    shape: AngularShape,
    method: Method,
    opts: &KernelOptions<f64>,
) -> Result<ComplexRate<f64>> {
    if !(delta_x.is_finite() && delta_x >= 0.0) {
        return Err(domain(format!(
            "separation must be finite and non-negative, got {delta_x}"
        )));
    }
    let flux = effective_flux(beam, xs)?;
    let reference_z = beam.reference_wavenumber() * delta_x;
    let f = match beam {
        Beam::Monochromatic { wavenumber, .. } => {
            let k = kernel(wavenumber * delta_x, shape, method, opts)?;
            k.value * flux
        }
        Beam::Tabulated { samples } => {
            let mut values = Vec::with_capacity(samples.len());
            for s in samples {
                let k = kernel(s.wavenumber * delta_x, shape, method, opts)?;
                values.push(k.value * (s.spectral_flux * xs.coupling(s.wavenumber)));
            }
            samples
                .windows(2)
                .zip(values.windows(2))
                .map(|(w, v)| (v[0] + v[1]) * (0.5 * (w[1].wavenumber - w[0].wavenumber)))
                .fold(Complex::new(0.0, 0.0), |acc, x| acc + x)
        }
    };
    Ok(ComplexRate {
        deco_rate: f.re,
        phase_rate: -f.im,
        delta_x,
        z: reference_z,
    })
}

#[cfg(test)]
mod tests {
    use super::super::beam::FluxSample;
    use super::*;

    fn opts() -> KernelOptions<f64> {
        KernelOptions::default()
    }

    #[test]
    fn zero_separation_zero_rate() {
        let beam = Beam::from_wavelength(1e-6, 1e20).unwrap();
        let r = localization_rate(
            &beam,
            &CrossSection::Thompson,
            0.0,
            AngularShape::Directional,
            Method::ClosedForm,
            &opts(),
        )
        .unwrap();
        assert_eq!((r.deco_rate, r.phase_rate), (0.0, 0.0));
    }

    #[test]
    fn zero_flux() {
        let beam = Beam::monochromatic(1e7, 0.0).unwrap();
        assert_eq!(effective_flux(&beam, &CrossSection::Thompson).unwrap(), 0.0);
    }

    #[test]
    fn rejects_negative_separation() {
        let beam = Beam::monochromatic(1e7, 1.0).unwrap();
        assert!(localization_rate(
            &beam,
            &CrossSection::Thompson,
            -1e-9,
            AngularShape::Directional,
            Method::ClosedForm,
            &opts()
        )
        .is_err());
    }

    #[test]
    fn flat_table_matches_monochromatic_average() {
        // A narrow flat table around q0 approaches the monochromatic result.
        let q0 = 1.0e7;
        let xs = CrossSection::PowerLaw { g: 1.0, j: 0 };
        let width = 1e-6 * q0;
        let samples = (0..=10)
            .map(|i| FluxSample {
                wavenumber: q0 - width / 2.0 + width * f64::from(i) / 10.0,
                spectral_flux: 1.0 / width,
            })
            .collect();
        let table = Beam::tabulated(samples).unwrap();
        let mono = Beam::monochromatic(q0, 1.0).unwrap();
        assert!((effective_flux(&table, &xs).unwrap() - 1.0).abs() < 1e-12);
        let dx = 0.3 / q0;
        let a = localization_rate(&table, &xs, dx, AngularShape::Directional, Method::ClosedForm, &opts()).unwrap();
        let b = localization_rate(&mono, &xs, dx, AngularShape::Directional, Method::ClosedForm, &opts()).unwrap();
        assert!((a.deco_rate - b.deco_rate).abs() < 1e-9);
        assert!((a.phase_rate - b.phase_rate).abs() < 1e-9);
        assert!((a.z - b.z).abs() < 1e-9);
    }
}
