//! Coefficient fields: exact rationals and tolerance-compared reals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// Default comparison tolerance of the approximate field.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

// Zero bits stand for the default tolerance.
static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0);

/// Current global tolerance used by [`Approx`] comparisons.
pub fn tolerance() -> f64 {
    match TOLERANCE_BITS.load(Ordering::Relaxed) {
        0 => DEFAULT_TOLERANCE,
        bits => f64::from_bits(bits),
    }
}

/// Sets the global tolerance used by [`Approx`] comparisons.
pub fn set_tolerance(tol: f64) {
    assert!(tol > 0.0 && tol.is_finite(), "tolerance must be positive");
    TOLERANCE_BITS.store(tol.to_bits(), Ordering::Relaxed);
}

/// A field of coefficients.
///
/// Exact fields decide zero-ness exactly; tolerant fields compare against
/// the global tolerance, scaled by the magnitude of the data at hand.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    /// Absolute value as a float, used for pivot selection and scaling.
    fn magnitude(&self) -> f64;
    fn to_f64(&self) -> f64;
    /// Parses a coefficient literal (integer, or decimal for tolerant fields).
    fn parse_literal(s: &str) -> Option<Self>;
    /// Canonical text: `p/q` for rationals, shortest decimal for floats.
    fn to_text(&self) -> String;

    /// Zero test relative to a magnitude scale. Exact fields ignore the scale.
    fn is_negligible(&self, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tolerance() * scale.max(1.0)
        }
    }

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn parse_literal(s: &str) -> Option<Self> {
        if !s.chars().all(|c| c.is_ascii_digit()) || s.is_empty() {
            return None;
        }
        s.parse::<BigInt>().ok().map(BigRational::from_integer)
    }
    fn to_text(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Floating-point real whose zero test uses the global tolerance.
#[derive(Clone, Copy, Debug, Default)]
pub struct Approx(pub f64);

impl PartialEq for Approx {
    /// `|a-b| <= tol * max(1, |a|, |b|)`
    fn eq(&self, other: &Self) -> bool {
        let scale = 1f64.max(self.0.abs()).max(other.0.abs());
        (self.0 - other.0).abs() <= tolerance() * scale
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! approx_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for Approx {
            type Output = Approx;
            fn $method(self, rhs: Approx) -> Approx {
                Approx(self.0 $op rhs.0)
            }
        }
    };
}

approx_binop!(Add, add, +);
approx_binop!(Sub, sub, -);
approx_binop!(Mul, mul, *);
approx_binop!(Div, div, /);

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx(-self.0)
    }
}

impl Scalar for Approx {
    const EXACT: bool = false;

    fn zero() -> Self {
        Approx(0.0)
    }
    fn one() -> Self {
        Approx(1.0)
    }
    fn from_i64(v: i64) -> Self {
        Approx(v as f64)
    }
    fn from_rational(q: &BigRational) -> Self {
        Approx(ToPrimitive::to_f64(q).unwrap_or(f64::NAN))
    }
    fn is_zero(&self) -> bool {
        self.0.abs() <= tolerance()
    }
    fn magnitude(&self) -> f64 {
        self.0.abs()
    }
    fn to_f64(&self) -> f64 {
        self.0
    }
    fn parse_literal(s: &str) -> Option<Self> {
        let ok = !s.is_empty()
            && s.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E'))
            && s.starts_with(|c: char| c.is_ascii_digit() || c == '.');
        if !ok {
            return None;
        }
        s.parse::<f64>().ok().filter(|v| v.is_finite()).map(Approx)
    }
    fn to_text(&self) -> String {
        format!("{}", self.0)
    }
}

/// Shorthand for exact rationals.
pub type Q = BigRational;

/// Builds the rational `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Converts a scalar of one field into another (exactly when the source is exact).
pub fn convert<F: Scalar, G: Scalar>(v: &F) -> G {
    if F::EXACT {
        let q = parse_rational_text(&v.to_text()).expect("canonical rational text");
        G::from_rational(&q)
    } else {
        G::from_rational(&BigRational::from_float(v.to_f64()).unwrap_or_else(Zero::zero))
    }
}

/// Parses `p` or `p/q` with optional sign.
pub fn parse_rational_text(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_normalized() {
        let a = q(6, -4);
        assert_eq!(a.to_text(), "-3/2");
        assert_eq!(q(4, 2).to_text(), "2");
    }

    #[test]
    fn approx_equality_is_relative() {
        assert_eq!(Approx(1e9), Approx(1e9 + 1.0));
        assert_ne!(Approx(1.0), Approx(1.0 + 1e-6));
        assert!(Approx(1e-9).is_zero());
    }

    #[test]
    fn literals() {
        assert_eq!(Q::parse_literal("12"), Some(q(12, 1)));
        assert_eq!(Q::parse_literal("1.5"), None);
        assert_eq!(Approx::parse_literal("1.5").map(|a| a.0), Some(1.5));
        assert_eq!(parse_rational_text("-3/6"), Some(q(-1, 2)));
    }
}
