//! Scalar traits shared by the symbolic and numeric layers.
//!
//! The symbolic layer ([`crate::words::NcPoly`]) is generic over any commutative
//! ring of coefficients; the crate root fixes exact rationals as the default.
//! The numeric layer ([`crate::replab`]) is generic over a real field `T` and
//! works with `Complex<T>` matrices.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::RealField;
use num_traits::{One, Zero};

/// Coefficient ring for noncommutative polynomials.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Send
        + Sync
{
}

/// Real field backing the complex matrices of the numeric layer (`f32` or `f64`).
pub trait Real: RealField + Copy + Send + Sync {
    fn from_f64(x: f64) -> Self {
        nalgebra::convert(x)
    }

    fn to_f64(self) -> f64 {
        self.to_subset().unwrap_or(f64::NAN)
    }

    fn machine_epsilon() -> f64;

    /// Smallest residual we can sensibly demand of a pure arithmetic identity.
    fn arithmetic_floor() -> f64 {
        Self::machine_epsilon() * 1.0e4
    }
}

impl Real for f32 {
    fn machine_epsilon() -> f64 {
        f32::EPSILON as f64
    }
}

impl Real for f64 {
    fn machine_epsilon() -> f64 {
        f64::EPSILON
    }
}
