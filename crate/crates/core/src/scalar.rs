//! Scalar types used by the tree recurrences.
//!
//! Characteristic polynomial values of large trees leave the binary64 range
//! long before they lose relative accuracy, so the eigenvector assembly runs
//! on [`ExtFloat`], a binary64 mantissa paired with a separate power-of-two
//! exponent. [`Dual`] carries a first derivative alongside any scalar.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Ring operations shared by `f64`, [`ExtFloat`] and [`Dual`].
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
}

/// `2^e` for `e` in the normal exponent range `-1022..=1023`.
fn pow2(e: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

/// `x * 2^e` without intermediate overflow or underflow of the scale factor.
pub fn ldexp(mut x: f64, mut e: i64) -> f64 {
    if (-1022..=1023).contains(&e) {
        return x * pow2(e);
    }
    const STEP: i64 = 1000;
    while e > STEP {
        x *= pow2(STEP);
        e -= STEP;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -STEP {
        x *= pow2(-STEP);
        e += STEP;
        if x == 0.0 {
            return x;
        }
    }
    x * pow2(e)
}

/// Splits a finite nonzero `x` into `m * 2^e` with `0.5 <= |m| < 1`.
fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i64;
    if raw == 0 {
        // subnormal
        let (m, e) = frexp(x * f64::powi(2.0, 64));
        return (m, e - 64);
    }
    let e = raw - 1022;
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, e)
}

/// Extended-range real: `mantissa * 2^exponent`.
#[derive(Debug, Clone, Copy)]
pub struct ExtFloat {
    mantissa: f64,
    exponent: i64,
}

impl ExtFloat {
    pub const ZERO: Self = Self {
        mantissa: 0.0,
        exponent: 0,
    };

    pub fn new(x: f64) -> Self {
        let (mantissa, exponent) = frexp(x);
        Self { mantissa, exponent }
    }

    fn normalized(mantissa: f64, exponent: i64) -> Self {
        if mantissa == 0.0 {
            return Self::ZERO;
        }
        let (m, e) = frexp(mantissa);
        Self {
            mantissa: m,
            exponent: exponent + e,
        }
    }

    pub fn mantissa(self) -> f64 {
        self.mantissa
    }

    /// Binary exponent; meaningless for zero.
    pub fn exponent(self) -> i64 {
        self.exponent
    }

    pub fn is_zero(self) -> bool {
        self.mantissa == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.mantissa.is_finite()
    }

    pub fn signum(self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    pub fn abs(self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Nearest `f64`, saturating to infinity or zero.
    pub fn to_f64(self) -> f64 {
        ldexp(self.mantissa, self.exponent)
    }

    /// The value scaled by `2^-shift`, as an `f64`.
    pub fn to_f64_scaled(self, shift: i64) -> f64 {
        ldexp(self.mantissa, self.exponent - shift)
    }

    pub fn log2_abs(self) -> f64 {
        if self.mantissa == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.mantissa.abs().log2() + self.exponent as f64
        }
    }

    /// Square root of a nonnegative value; NaN for negative input.
    pub fn sqrt(self) -> Self {
        if self.mantissa <= 0.0 {
            return Self::new(self.mantissa.sqrt());
        }
        if self.exponent % 2 == 0 {
            Self::normalized(self.mantissa.sqrt(), self.exponent / 2)
        } else {
            Self::normalized((2.0 * self.mantissa).sqrt(), (self.exponent - 1) / 2)
        }
    }

    pub fn recip(self) -> Self {
        Self::normalized(1.0 / self.mantissa, -self.exponent)
    }

    pub fn cmp_abs(self, other: Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self
                .exponent
                .cmp(&other.exponent)
                .then(self.mantissa.abs().total_cmp(&other.mantissa.abs())),
        }
    }
}

impl From<f64> for ExtFloat {
    fn from(x: f64) -> Self {
        Self::new(x)
    }
}

impl PartialEq for ExtFloat {
    fn eq(&self, other: &Self) -> bool {
        self.mantissa == other.mantissa && (self.mantissa == 0.0 || self.exponent == other.exponent)
    }
}

impl Add for ExtFloat {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.mantissa == 0.0 {
            return rhs;
        }
        if rhs.mantissa == 0.0 {
            return self;
        }
        let (big, small) = if self.exponent >= rhs.exponent {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let gap = big.exponent - small.exponent;
        if gap > 60 {
            return big;
        }
        Self::normalized(big.mantissa + small.mantissa * pow2(-gap), big.exponent)
    }
}

impl Neg for ExtFloat {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Sub for ExtFloat {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for ExtFloat {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::normalized(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Div for ExtFloat {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self::normalized(self.mantissa / rhs.mantissa, self.exponent - rhs.exponent)
    }
}

impl Scalar for ExtFloat {
    fn from_f64(x: f64) -> Self {
        Self::new(x)
    }
}

/// First-order dual number: a value and its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual<T> {
    pub value: T,
    pub deriv: T,
}

impl<T: Scalar> Dual<T> {
    pub fn constant(value: T) -> Self {
        Self {
            value,
            deriv: T::zero(),
        }
    }

    /// The independent variable evaluated at `x`.
    pub fn variable(x: T) -> Self {
        Self {
            value: x,
            deriv: T::one(),
        }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            deriv: self.deriv + rhs.deriv,
        }
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            value: self.value - rhs.value,
            deriv: self.deriv - rhs.deriv,
        }
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            value: self.value * rhs.value,
            deriv: self.deriv * rhs.value + self.value * rhs.deriv,
        }
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: -self.value,
            deriv: -self.deriv,
        }
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn from_f64(x: f64) -> Self {
        Self::constant(T::from_f64(x))
    }
}
