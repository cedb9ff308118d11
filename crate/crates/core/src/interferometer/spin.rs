use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T>(pub [[Complex<T>; 2]; 2]);

impl<T: Real> Mat2<T> {
    pub fn new(m00: Complex<T>, m01: Complex<T>, m10: Complex<T>, m11: Complex<T>) -> Self {
        Mat2([[m00, m01], [m10, m11]])
    }

    pub fn diag(d0: Complex<T>, d1: Complex<T>) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        Mat2::new(d0, zero, zero, d1)
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        self.0[0][0] + self.0[1][1]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.0.iter().flatten().fold(T::zero(), |acc, c| acc.max(c.norm()))
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &Mat2<T>) -> Self {
        *u * *self * u.adjoint()
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, rhs: Mat2<T>) -> Mat2<T> {
        let (a, b) = (&self.0, &rhs.0);
        let entry = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Mat2::new(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Mat2<T>;

    fn add(self, rhs: Mat2<T>) -> Mat2<T> {
        let (a, b) = (&self.0, &rhs.0);
        Mat2::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Mat2<T>;

    fn sub(self, rhs: Mat2<T>) -> Mat2<T> {
        let (a, b) = (&self.0, &rhs.0);
        Mat2::new(
            a[0][0] - b[0][0],
            a[0][1] - b[0][1],
            a[1][0] - b[1][0],
            a[1][1] - b[1][1],
        )
    }
}

/// Validation tolerance: 1e−12 in double precision, a few hundred ulps in single.
pub fn state_tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(256.0))
}

/// Density matrix of the embedded spin: Hermitian, unit trace, positive semidefinite.
///
/// In the interferometer parametrisation `ρ = ½ [[a, A e^{iφ}], [A e^{−iφ}, b]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState<T> {
    rho: Mat2<T>,
}

impl<T: Real> SpinState<T> {
    /// Validates and wraps a density matrix.
    pub fn new(rho: Mat2<T>) -> Result<Self> {
        let state = SpinState { rho };
        state.validate()?;
        Ok(state)
    }

    pub(crate) fn from_matrix_unchecked(rho: Mat2<T>) -> Self {
        SpinState { rho }
    }

    /// `½ [[a, A e^{iφ}], [A e^{−iφ}, b]]`; requires `a + b = 2` and `A² ≤ a b`.
    pub fn from_parts(a: T, b: T, amplitude: T, phase: T) -> Result<Self> {
        let half = T::lit(0.5);
        let coherence = Complex::from_polar(amplitude * half, phase);
        Self::new(Mat2::new(
            Complex::new(a * half, T::zero()),
            coherence,
            coherence.conj(),
            Complex::new(b * half, T::zero()),
        ))
    }

    /// `|+⟩⟨+|` with `|±⟩ = (|0⟩ ± |1⟩)/√2`.
    pub fn plus() -> Self {
        let h = Complex::new(T::lit(0.5), T::zero());
        SpinState::from_matrix_unchecked(Mat2::new(h, h, h, h))
    }

    /// `|−⟩⟨−|`.
    pub fn minus() -> Self {
        let h = Complex::new(T::lit(0.5), T::zero());
        SpinState::from_matrix_unchecked(Mat2::new(h, -h, -h, h))
    }

    /// `I/2`.
    pub fn maximally_mixed() -> Self {
        let h = Complex::new(T::lit(0.5), T::zero());
        SpinState::from_matrix_unchecked(Mat2::diag(h, h))
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.rho
    }

    pub fn population(&self, i: usize) -> T {
        self.rho.0[i][i].re
    }

    /// `ρ₁₂`.
    pub fn coherence(&self) -> Complex<T> {
        self.rho.0[0][1]
    }

    pub fn trace(&self) -> T {
        self.rho.trace().re
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> T {
        let m = &self.rho.0;
        m[0][0].norm_sqr() + m[1][1].norm_sqr() + m[0][1].norm_sqr() + m[1][0].norm_sqr()
    }

    /// Eigenvalues in ascending order (Hermitian part).
    pub fn eigenvalues(&self) -> [T; 2] {
        let m = &self.rho.0;
        let mean = (m[0][0].re + m[1][1].re) * T::lit(0.5);
        let half_gap = (m[0][0].re - m[1][1].re) * T::lit(0.5);
        let off = (m[0][1] + m[1][0].conj()) * T::lit(0.5);
        let radius = (half_gap * half_gap + off.norm_sqr()).sqrt();
        [mean - radius, mean + radius]
    }

    /// `⟨ψ|ρ|ψ⟩` for `ψ = (c0, c1)`.
    pub fn expectation(&self, psi: [Complex<T>; 2]) -> T {
        let m = &self.rho.0;
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..2 {
            for j in 0..2 {
                acc = acc + psi[i].conj() * m[i][j] * psi[j];
            }
        }
        acc.re
    }

    pub fn validate(&self) -> Result<()> {
        let tol = state_tolerance::<T>();
        let rho = &self.rho;
        if rho.0.iter().flatten().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let asym = (*rho - rho.adjoint()).max_abs();
        if asym > tol {
            return Err(Error::InvalidState(format!("not Hermitian (‖ρ − ρ†‖ = {asym:e})")));
        }
        let tr = rho.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let [low, _] = self.eigenvalues();
        if low < -tol {
            return Err(Error::InvalidState(format!("negative eigenvalue {low}")));
        }
        Ok(())
    }
}

/// Coherence amplitude `A` and accumulated phase `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityPhase<T> {
    pub amplitude: T,
    pub phase: T,
}

impl<T: Real> VisibilityPhase<T> {
    /// Reads `A e^{iφ} = 2 ρ₁₂` off a state.
    pub fn of_state(state: &SpinState<T>) -> Self {
        let c = state.coherence() * T::lit(2.0);
        VisibilityPhase {
            amplitude: c.norm(),
            phase: c.arg(),
        }
    }

    /// `A sin φ`.
    pub fn signal(&self) -> T {
        self.amplitude * self.phase.sin()
    }
}
