use super::taylor::{TAYLOR_C1_IM, TAYLOR_C2_RE};
use super::{AngularShape, SHAPE_WEIGHT};
use crate::scalar::Real;

/// Limiting behaviour of `F_ang`: `Re ≈ quadratic_re·z²`, `Im ≈ linear_im·z` for `z → 0`,
/// and `(re_limit, im_limit)` for `z → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitLaws<T> {
    pub re_limit: T,
    pub im_limit: T,
    pub quadratic_re: T,
    pub linear_im: T,
}

impl<T: Real> LimitLaws<T> {
    pub fn pair(&self) -> (T, T) {
        (self.re_limit, self.im_limit)
    }

    /// `∂² Re F_ang / ∂z²` at the origin. Multiply by `Φ_eff q²` for the position-space
    /// coefficient of the `(x − x')²` decoherence law.
    pub fn curvature(&self) -> T {
        self.quadratic_re + self.quadratic_re
    }

    /// Saturated decoherence rate per unit effective flux.
    pub fn saturation(&self) -> T {
        self.re_limit
    }
}

/// Limiting laws of the angular kernel for each environment.
///
/// Both environments saturate at the total shape weight 2/3 because the phase factor averages
/// out. Small-`z` coefficients: directional `7/15 z² − (2/3) i z`; isotropic `2/9 z²` with no
/// linear term.
pub fn asymptotic_limits<T: Real>(shape: AngularShape) -> LimitLaws<T> {
    match shape {
        AngularShape::Directional => LimitLaws {
            re_limit: T::lit(SHAPE_WEIGHT),
            im_limit: T::zero(),
            quadratic_re: T::lit(TAYLOR_C2_RE),
            linear_im: T::lit(TAYLOR_C1_IM),
        },
        AngularShape::Isotropic => LimitLaws {
            re_limit: T::lit(SHAPE_WEIGHT),
            im_limit: T::zero(),
            quadratic_re: T::lit(2.0 / 9.0),
            linear_im: T::zero(),
        },
    }
}
