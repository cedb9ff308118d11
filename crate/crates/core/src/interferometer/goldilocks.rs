//! Locating the separation where the readout phase is largest.

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::kernels::{kernel, AngularShape, KernelOptions, Method};
use crate::physics::{localization_rate, Beam, CrossSection};

/// What "optimal" means.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Criterion {
    /// Maximise `|Im F_ang(z)|`, the phase imprinted per unit effective flux.
    MaxAbsImKernel,
    /// Maximise `|A sin φ|` after the search time; the window is where it stays above
    /// `threshold × maximum`.
    SignalThreshold(f64),
}

/// Grid and refinement settings for [`goldilocks_search`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub z_min: f64,
    pub z_max: f64,
    /// Log-spaced grid points between `z_min` and `z_max`.
    pub grid_points: usize,
    /// Window fraction used with [`Criterion::MaxAbsImKernel`].
    pub window_fraction: f64,
    /// Objectives never exceeding this are treated as flat.
    pub flat_floor: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            z_min: 1e-3,
            z_max: 1e3,
            grid_points: 2001,
            window_fraction: 0.95,
            flat_floor: 1e-9,
        }
    }
}

/// Result of a search. Separations follow from `z / q_ref`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldilocksZone {
    pub z_star: f64,
    pub window: (f64, f64),
    pub value_at_star: f64,
    /// Fraction of the peak that defines the window.
    pub window_fraction: f64,
    /// Reference wavenumber of the beam used to convert `z` to separations.
    pub wavenumber: f64,
}

impl GoldilocksZone {
    pub fn dx_over_lambda_star(&self) -> f64 {
        self.z_star / std::f64::consts::TAU
    }

    pub fn window_dx_over_lambda(&self) -> (f64, f64) {
        (
            self.window.0 / std::f64::consts::TAU,
            self.window.1 / std::f64::consts::TAU,
        )
    }

    pub fn delta_x_star(&self) -> f64 {
        self.z_star / self.wavenumber
    }
}

struct Objective<'a> {
    beam: &'a Beam,
    xs: &'a CrossSection,
    shape: AngularShape,
    time: f64,
    criterion: Criterion,
    method: Method,
    opts: &'a KernelOptions<f64>,
    wavenumber: f64,
}

impl Objective<'_> {
    fn eval(&self, z: f64) -> Result<f64> {
        match self.criterion {
            Criterion::MaxAbsImKernel => Ok(kernel(z, self.shape, self.method, self.opts)?.value.im.abs()),
            Criterion::SignalThreshold(_) => {
                let rate = localization_rate(
                    self.beam,
                    self.xs,
                    z / self.wavenumber,
                    self.shape,
                    self.method,
                    self.opts,
                )?;
                let amplitude = (-rate.deco_rate * self.time).exp();
                Ok((amplitude * (rate.phase_rate * self.time).sin()).abs())
            }
        }
    }
}

/// Maximises the criterion over `z = q_ref δx` on a log grid, refines the peak by golden-section
/// search, and brackets the contiguous window around it where the objective stays above the
/// window fraction of the peak.
#[allow(clippy::too_many_arguments)]
pub fn goldilocks_search(
    beam: &Beam,
    xs: &CrossSection,
    shape: AngularShape,
    time: f64,
    criterion: Criterion,
    method: Method,
    opts: &KernelOptions<f64>,
    search: &SearchOptions,
) -> Result<GoldilocksZone> {
    beam.validate()?;
    xs.validate()?;
    if !(time.is_finite() && time >= 0.0) {
        return Err(domain(format!(
            "search time must be finite and non-negative, got {time}"
        )));
    }
    if !(search.z_min > 0.0 && search.z_max > search.z_min && search.grid_points >= 3) {
        return Err(domain("search grid needs 0 < z_min < z_max and at least 3 points"));
    }
    let fraction = match criterion {
        Criterion::MaxAbsImKernel => search.window_fraction,
        Criterion::SignalThreshold(s0) => s0,
    };
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(domain(format!("window threshold must lie in (0, 1), got {fraction}")));
    }

    let objective = Objective {
        beam,
        xs,
        shape,
        time,
        criterion,
        method,
        opts,
        wavenumber: beam.reference_wavenumber(),
    };
    let n = search.grid_points;
    let ratio = (search.z_max / search.z_min).ln();
    let grid: Vec<f64> = (0..n)
        .map(|i| search.z_min * (ratio * i as f64 / (n - 1) as f64).exp())
        .collect();
    let values: Vec<f64> = grid.par_iter().map(|&z| objective.eval(z)).collect::<Result<_>>()?;

    let (best, &peak) = values.iter().enumerate().fold(
        (0, &f64::NEG_INFINITY),
        |acc, (i, v)| if *v > *acc.1 { (i, v) } else { acc },
    );
    if !(peak > search.flat_floor) {
        return Err(Error::NoOptimum(format!(
            "objective never exceeds {:e} for the {shape} environment",
            search.flat_floor
        )));
    }

    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(n - 1)];
    let (z_star, value_at_star) = golden_section_max(&objective, lo, hi, (grid[best], peak))?;

    let threshold = fraction * value_at_star;
    let mut left = best;
    while left > 0 && values[left - 1] >= threshold {
        left -= 1;
    }
    let mut right = best;
    while right + 1 < n && values[right + 1] >= threshold {
        right += 1;
    }
    let z_lo = if left == 0 {
        grid[0]
    } else {
        bisect_crossing(&objective, grid[left - 1], grid[left], threshold)?
    };
    let z_hi = if right + 1 == n {
        grid[n - 1]
    } else {
        bisect_crossing(&objective, grid[right + 1], grid[right], threshold)?
    };

    Ok(GoldilocksZone {
        z_star,
        window: (z_lo.min(z_star), z_hi.max(z_star)),
        value_at_star,
        window_fraction: fraction,
        wavenumber: objective.wavenumber,
    })
}

fn golden_section_max(f: &Objective<'_>, mut a: f64, mut b: f64, fallback: (f64, f64)) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f.eval(c)?;
    let mut fd = f.eval(d)?;
    for _ in 0..100 {
        if (b - a) <= 1e-13 * (a.abs() + b.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f.eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f.eval(d)?;
        }
    }
    let z = 0.5 * (a + b);
    let v = f.eval(z)?;
    Ok(if v >= fallback.1 { (z, v) } else { fallback })
}

/// Finds where the objective crosses `threshold` between `outside` (below) and `inside` (above).
fn bisect_crossing(f: &Objective<'_>, mut outside: f64, mut inside: f64, threshold: f64) -> Result<f64> {
    for _ in 0..80 {
        let mid = 0.5 * (outside + inside);
        if f.eval(mid)? >= threshold {
            inside = mid;
        } else {
            outside = mid;
        }
        if (outside - inside).abs() <= 1e-13 * inside.abs() {
            break;
        }
    }
    Ok(inside)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::closed_form_kernel;

    fn unit_beam(xs: &CrossSection) -> Beam {
        Beam::unit_rate(std::f64::consts::TAU / 1e-6, xs).unwrap()
    }

    fn run(shape: AngularShape, xs: CrossSection, criterion: Criterion) -> Result<GoldilocksZone> {
        goldilocks_search(
            &unit_beam(&xs),
            &xs,
            shape,
            1.0,
            criterion,
            Method::ClosedForm,
            &KernelOptions::default(),
            &SearchOptions::default(),
        )
    }

    #[test]
    fn phase_optimum_matches_dense_grid() {
        let zone = run(
            AngularShape::Directional,
            CrossSection::Thompson,
            Criterion::MaxAbsImKernel,
        )
        .unwrap();
        // Dense linear grid oracle on the closed form.
        let (mut best_z, mut best_v) = (0.0, 0.0);
        for i in 1..=200_000 {
            let z = 5.0 * f64::from(i) / 200_000.0;
            let v = closed_form_kernel(z).unwrap().value.im.abs();
            if v > best_v {
                best_v = v;
                best_z = z;
            }
        }
        assert!((zone.z_star - best_z).abs() < 1e-4);
        assert!((zone.value_at_star - best_v).abs() < 1e-10);
        let ratio = zone.dx_over_lambda_star();
        assert!((0.15..=0.30).contains(&ratio), "{ratio}");
        assert!(zone.window.0 < zone.z_star && zone.z_star < zone.window.1);
    }

    #[test]
    fn rayleigh_has_same_optimum() {
        let a = run(
            AngularShape::Directional,
            CrossSection::Thompson,
            Criterion::MaxAbsImKernel,
        )
        .unwrap();
        let b = run(
            AngularShape::Directional,
            CrossSection::rayleigh_default(),
            Criterion::MaxAbsImKernel,
        )
        .unwrap();
        assert!((a.z_star - b.z_star).abs() < 1e-12);
    }

    #[test]
    fn isotropic_has_no_optimum() {
        for criterion in [Criterion::MaxAbsImKernel, Criterion::SignalThreshold(0.95)] {
            match run(AngularShape::Isotropic, CrossSection::Thompson, criterion) {
                Err(Error::NoOptimum(_)) => {}
                other => panic!("expected NoOptimum, got {other:?}"),
            }
        }
    }

    #[test]
    fn signal_window_contains_optimum() {
        let zone = run(
            AngularShape::Directional,
            CrossSection::Thompson,
            Criterion::SignalThreshold(0.95),
        )
        .unwrap();
        assert!(zone.window.0 < zone.window.1);
        assert!(zone.window.0 <= zone.z_star && zone.z_star <= zone.window.1);
        assert!(zone.value_at_star > 0.0 && zone.value_at_star <= 1.0);
    }

    #[test]
    fn threshold_domain() {
        assert!(run(
            AngularShape::Directional,
            CrossSection::Thompson,
            Criterion::SignalThreshold(1.5)
        )
        .is_err());
        assert!(run(
            AngularShape::Directional,
            CrossSection::Thompson,
            Criterion::SignalThreshold(0.0)
        )
        .is_err());
    }
}
