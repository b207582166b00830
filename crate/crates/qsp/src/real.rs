//! Scalar abstraction for the planning math.
//!
//! All geometry, metric, and planner code is generic over [`Real`], which is
//! implemented for `f32` and `f64`. The crate root exposes `f64` aliases for
//! the common types; scene files and the CLI always plan at `f64`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, NumCast};
use rand::distributions::uniform::SampleUniform;

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + SampleUniform + Debug + Display + Default + Send + Sync + 'static
{
    fn from_f64(x: f64) -> Self {
        NumCast::from(x).expect("f64 value representable in scalar type")
    }

    fn from_usize(n: usize) -> Self {
        NumCast::from(n).expect("usize value representable in scalar type")
    }

    fn to_f64(self) -> f64 {
        NumCast::from(self).expect("scalar value representable in f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Normalizes an angle to the canonical interval `[-pi, pi)`.
///
/// Values already in range are returned unchanged, so configurations built
/// from canonical coordinates stay bit-identical.
pub fn normalize_angle<S: Real>(a: S) -> S {
    let pi = S::PI();
    let tau = S::TAU();
    if a >= -pi && a < pi {
        return a;
    }
    let mut r = (a + pi) % tau;
    if r < S::zero() {
        r = r + tau;
    }
    r - pi
}

/// Shortest signed angular difference `b - a`, in `[-pi, pi)`.
pub fn angle_delta<S: Real>(a: S, b: S) -> S {
    normalize_angle(b - a)
}
