//! Adaptive Gauss–Kronrod (7, 15) integration of complex-valued integrands on a finite interval.

use num_complex::Complex;

use crate::scalar::Real;

// Kronrod abscissae on [0, 1]; the odd-indexed ones (and the centre) are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Controls for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions<T> {
    /// Absolute tolerance on the whole integral, apportioned to subintervals by length.
    pub tol: T,
    /// Maximum number of bisections applied to any initial piece.
    pub max_depth: u32,
    /// Number of equal pieces the interval is split into before adapting.
    pub initial_pieces: usize,
}

impl<T: Real> AdaptiveOptions<T> {
    pub fn new(tol: T) -> Self {
        Self {
            tol,
            max_depth: 48,
            initial_pieces: 1,
        }
    }
}

/// Outcome of an adaptive integration. `converged == false` means some subinterval hit the depth
/// limit before meeting its share of the tolerance; `value` is still the best available estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: Complex<T>,
    pub abs_error: T,
    pub evals: usize,
    pub intervals: usize,
    pub converged: bool,
}

/// One 15-point Kronrod evaluation: returns (integral, |K15 - G7|, ∫|f|).
fn gk15<T: Real, F: Fn(T) -> Complex<T>>(f: &F, lo: T, hi: T) -> (Complex<T>, T, T) {
    let half = (hi - lo) * T::lit(0.5);
    let centre = (hi + lo) * T::lit(0.5);
    let fc = f(centre);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    let mut absolute = fc.norm() * T::lit(WGK[7]);
    for k in 0..7 {
        let dx = half * T::lit(XGK[k]);
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        let pair = f1 + f2;
        kronrod = kronrod + pair * T::lit(WGK[k]);
        absolute = absolute + (f1.norm() + f2.norm()) * T::lit(WGK[k]);
        if k % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[k / 2]);
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    (kronrod, (kronrod - gauss).norm(), absolute * half.abs())
}

/// Integrates `f` over `[a, b]` by recursive bisection until every subinterval's Kronrod–Gauss
/// difference is below its length-weighted share of `opts.tol` (or at the round-off floor).
///
/// Subintervals are visited depth first in a fixed order, so results are reproducible.
pub fn integrate<T, F>(f: F, a: T, b: T, opts: &AdaptiveOptions<T>) -> Integral<T>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    let width = b - a;
    let pieces = opts.initial_pieces.max(1);
    let mut value = Complex::new(T::zero(), T::zero());
    let mut abs_error = T::zero();
    let mut evals = 0usize;
    let mut intervals = 0usize;
    let mut converged = true;
    let roundoff = T::epsilon() * T::lit(50.0);

    let mut stack: Vec<(T, T, u32)> = Vec::with_capacity(64);
    for p in (0..pieces).rev() {
        let lo = a + width * T::from_usize_lossy(p) / T::from_usize_lossy(pieces);
        let hi = if p + 1 == pieces {
            b
        } else {
            a + width * T::from_usize_lossy(p + 1) / T::from_usize_lossy(pieces)
        };
        stack.push((lo, hi, 0));
    }

    while let Some((lo, hi, depth)) = stack.pop() {
        let (estimate, err, absolute) = gk15(&f, lo, hi);
        evals += 15;
        let share = if width == T::zero() {
            opts.tol
        } else {
            opts.tol * ((hi - lo) / width).abs()
        };
        if err <= share || err <= roundoff * absolute {
            value = value + estimate;
            abs_error = abs_error + err;
            intervals += 1;
        } else if depth >= opts.max_depth {
            converged = false;
            value = value + estimate;
            abs_error = abs_error + err;
            intervals += 1;
        } else {
            let mid = (lo + hi) * T::lit(0.5);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }

    Integral {
        value,
        abs_error,
        evals,
        intervals,
        converged,
    }
}
