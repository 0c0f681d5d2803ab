//! Scalar fields used by the Fourier and LP code: exact rationals and `f64`.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Tolerance used by `f64` sign tests inside the simplex engine.
pub const FLOAT_EPS: f64 = 1e-10;

/// Arithmetic mode of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered field with the handful of operations the solvers need.
///
/// Sign predicates are exact for rationals and use [`FLOAT_EPS`] for floats.
pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    /// `cos(2π·num/den)`, or `None` when it is not representable.
    fn cos_turn(num: i64, den: i64) -> Option<Self>;
    fn to_f64(&self) -> f64;
    fn is_zero_tol(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    /// Magnitude used to rank pivot candidates.
    fn magnitude(&self) -> f64;
    fn render(&self) -> String;
    fn is_exactly_zero(&self) -> bool;
    /// Flush float round-off to zero; identity for exact scalars.
    fn snap(self) -> Self {
        self
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn cos_turn(num: i64, den: i64) -> Option<Self> {
        let (n, d) = reduce_turn(num, den);
        // Land exactly on the rational values where they exist.
        if let Some(v) = rational_cos(n, d) {
            return Some(Scalar::to_f64(&v));
        }
        Some((std::f64::consts::TAU * n as f64 / d as f64).cos())
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero_tol(&self) -> bool {
        self.abs() <= FLOAT_EPS
    }
    fn is_pos(&self) -> bool {
        *self > FLOAT_EPS
    }
    fn is_neg(&self) -> bool {
        *self < -FLOAT_EPS
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn render(&self) -> String {
        render_decimal(*self)
    }
    fn is_exactly_zero(&self) -> bool {
        *self == 0.0
    }
    fn snap(self) -> Self {
        if self.abs() < 1e-13 {
            0.0
        } else {
            self
        }
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn cos_turn(num: i64, den: i64) -> Option<Self> {
        let (n, d) = reduce_turn(num, den);
        rational_cos(n, d)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero_tol(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn magnitude(&self) -> f64 {
        // Any nonzero pivot is exact; prefer small denominators to limit growth.
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0 / (1.0 + self.denom().bits() as f64 + self.numer().bits() as f64)
        }
    }
    fn render(&self) -> String {
        render_rational(self)
    }
    fn is_exactly_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Reduce `num/den` to lowest terms with `0 <= num < den`.
fn reduce_turn(num: i64, den: i64) -> (i64, i64) {
    assert!(den > 0, "turn denominator must be positive");
    let n = num.rem_euclid(den);
    let g = n.gcd(&den);
    (n / g, den / g)
}

/// `cos(2πn/d)` for reduced `n/d` when the value is rational.
fn rational_cos(n: i64, d: i64) -> Option<Rational> {
    let v = match (n, d) {
        (0, 1) => (1, 1),
        (1, 2) => (-1, 1),
        (_, 3) => (-1, 2),
        (_, 4) => (0, 1),
        (1, 6) | (5, 6) => (1, 2),
        _ => return None,
    };
    Some(BigRational::new(BigInt::from(v.0), BigInt::from(v.1)))
}

/// Whether every character value `cos(2πk/e)` is rational.
pub fn exponent_allows_exact(exponent: u64) -> bool {
    matches!(exponent, 1 | 2 | 3 | 4 | 6)
}

/// `p/q` rendering; integers render without a denominator.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Round to 12 significant digits.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.11e}", x).parse().unwrap_or(x)
}

/// Decimal rendering with 12 significant digits.
pub fn render_decimal(x: f64) -> String {
    let r = round_sig12(x);
    if r == 0.0 {
        return "0".to_string();
    }
    let mag = r.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{:.*}", decimals, r);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_cosines() {
        assert_eq!(Rational::cos_turn(0, 4), Some(Rational::from_i64(1)));
        assert_eq!(Rational::cos_turn(2, 4), Some(-Rational::from_i64(1)));
        assert_eq!(Rational::cos_turn(1, 3), Some(Rational::from_ratio(-1, 2)));
        assert_eq!(Rational::cos_turn(5, 6), Some(Rational::from_ratio(1, 2)));
        assert_eq!(Rational::cos_turn(3, 12), Some(Rational::from_i64(0)));
        assert_eq!(Rational::cos_turn(1, 12), None);
        assert_eq!(Rational::cos_turn(-1, 6), Some(Rational::from_ratio(1, 2)));
    }

    #[test]
    fn float_cosines_match() {
        for d in 1..13 {
            for n in 0..d {
                let want = (std::f64::consts::TAU * n as f64 / d as f64).cos();
                assert!((f64::cos_turn(n, d).unwrap() - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(render_decimal(1.0 / 13f64.sqrt()), "0.277350098113");
        assert_eq!(render_decimal(0.5), "0.5");
        assert_eq!(render_decimal(1.0), "1");
        assert_eq!(render_decimal(1.0 / 512.0), "0.001953125");
    }
}
