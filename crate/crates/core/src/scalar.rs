//! Scalar abstraction shared by the numeric modules.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the simulator math is generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Wraps an angle into (−π, π].
pub fn wrap_angle<T: Scalar>(angle: T) -> T {
    let two_pi = T::TAU();
    let mut a = angle % two_pi;
    if a <= -T::PI() {
        a = a + two_pi;
    } else if a > T::PI() {
        a = a - two_pi;
    }
    a
}

/// Shortest signed angular difference `to − from`, wrapped into (−π, π].
pub fn angle_diff<T: Scalar>(to: T, from: T) -> T {
    wrap_angle(to - from)
}

pub fn deg<T: Scalar>(rad: T) -> T {
    rad.to_degrees()
}

pub fn rad<T: Scalar>(deg: T) -> T {
    deg.to_radians()
}

/// Converts a value between scalar types through `f64`.
pub fn cast<A: Scalar, B: Scalar>(x: A) -> B {
    B::lit(x.as_f64())
}
