use rayon::prelude::*;

use super::readout::{apply_readout_gates, evolve, signal, visibility_phase};
use super::spin::SpinState;
use crate::error::{domain, Result};
use crate::kernels::{AngularShape, KernelOptions, Method};
use crate::physics::{localization_rate, Beam, ComplexRate, CrossSection};

/// How the accumulated phase is obtained for each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseModel {
    /// `φ = phase_rate · t` from the localization rate.
    #[default]
    Kernel,
    /// `φ = 2π δx/λ` independent of time; visibility still decays with `deco_rate · t`.
    Linear,
}

/// One cell of a [`SignalMap`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalPoint {
    pub amplitude: f64,
    pub phase: f64,
    pub signal: f64,
}

/// `signal[i][j]` for separation `dx_over_lambda[i]` and time `times[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalMap {
    pub dx_over_lambda: Vec<f64>,
    pub times: Vec<f64>,
    /// Row-major, one row per separation.
    pub points: Vec<SignalPoint>,
}

impl SignalMap {
    pub fn at(&self, i: usize, j: usize) -> &SignalPoint {
        &self.points[i * self.times.len() + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[SignalPoint]> {
        self.points.chunks(self.times.len())
    }

    /// Grid indices of the largest signal.
    pub fn argmax(&self) -> (usize, usize) {
        let (best, _) = self
            .points
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bi, bv), (k, p)| {
                if p.signal > bv {
                    (k, p.signal)
                } else {
                    (bi, bv)
                }
            });
        (best / self.times.len(), best % self.times.len())
    }
}

fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(domain(format!("{name} grid is empty")));
    }
    if grid.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(domain(format!("{name} grid values must be finite and non-negative")));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(domain(format!("{name} grid must be strictly ascending")));
    }
    Ok(())
}

/// Readout signal `A sin φ` over a separation × time grid.
///
/// Each cell starts from `|+⟩⟨+|`, evolves under the localization rate for `t`, and applies the
/// `H S` readout. Separations are in units of the beam's reference wavelength. Rows are computed
/// in parallel and written back in grid order.
#[allow(clippy::too_many_arguments)]
pub fn signal_map(
    beam: &Beam,
    xs: &CrossSection,
    shape: AngularShape,
    dx_over_lambda: &[f64],
    times: &[f64],
    method: Method,
    opts: &KernelOptions<f64>,
    phase_model: PhaseModel,
) -> Result<SignalMap> {
    check_grid("separation", dx_over_lambda)?;
    check_grid("time", times)?;
    let wavelength = beam.reference_wavelength();

    let rows: Vec<Vec<SignalPoint>> = dx_over_lambda
        .par_iter()
        .map(|&ratio| -> Result<Vec<SignalPoint>> {
            let rate = localization_rate(beam, xs, ratio * wavelength, shape, method, opts)?;
            times.iter().map(|&t| cell(&rate, ratio, t, phase_model)).collect()
        })
        .collect::<Result<_>>()?;

    Ok(SignalMap {
        dx_over_lambda: dx_over_lambda.to_vec(),
        times: times.to_vec(),
        points: rows.into_iter().flatten().collect(),
    })
}

fn cell(rate: &ComplexRate<f64>, ratio: f64, t: f64, phase_model: PhaseModel) -> Result<SignalPoint> {
    let state = match phase_model {
        PhaseModel::Kernel => evolve(&SpinState::plus(), rate, t)?,
        PhaseModel::Linear => {
            let amplitude = visibility_phase(rate, t)?.amplitude;
            SpinState::from_parts(1.0, 1.0, amplitude, std::f64::consts::TAU * ratio)?
        }
    };
    let vp = super::spin::VisibilityPhase::of_state(&state);
    let s = signal(&apply_readout_gates(&state));
    Ok(SignalPoint {
        amplitude: vp.amplitude,
        phase: match phase_model {
            PhaseModel::Kernel => rate.phase_rate * t,
            PhaseModel::Linear => std::f64::consts::TAU * ratio,
        },
        signal: s,
    })
}
