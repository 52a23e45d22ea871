//! Extended-precision reals, exact rationals, compensated summation, and the
//! constants π and log 2.
//!
//! [`Real`] wraps an MPFR float and tags it with a working precision in
//! decimal digits (16 minimum, 40 default). Every arithmetic operation is
//! correctly rounded at the operand precision, so the relative error per
//! operation is far below the contractual 10^(2−digits); binary operations on
//! mixed precisions round to the *smaller* of the two. [`Rat`] is an exact
//! arbitrary-size rational kept in lowest terms with a positive denominator —
//! the brute-force oracles and exact identities live on it.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::{Error, Result};

/// Exact arbitrary-size rational; always in lowest terms, denominator > 0.
pub type Rat = rug::Rational;
/// Arbitrary-size integer used by power sums and oracles.
pub type Int = rug::Integer;

/// Smallest admissible working precision in decimal digits.
pub const MIN_DIGITS: u32 = 16;
/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 40;

const LOG2_10: f64 = 3.321_928_094_887_362;
/// Guard bits on top of the requested decimal precision; keeps per-operation
/// rounding well below 10^(2−digits) even over long reductions.
const GUARD_BITS: u32 = 16;

/// Binary precision backing `digits` decimal digits.
pub fn prec_bits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS
}

fn digits_of_prec(prec: u32) -> u32 {
    ((prec.saturating_sub(GUARD_BITS)) as f64 / LOG2_10).floor() as u32
}

/// Extended-precision real number tagged with its working precision.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Real {
    f: Float,
}

impl Real {
    /// Wraps a raw MPFR float. The float's precision is kept as-is.
    pub(crate) fn from_float(f: Float) -> Real {
        Real { f }
    }

    pub fn zero(digits: u32) -> Real {
        Real::from_float(Float::new(prec_bits(digits)))
    }

    pub fn one(digits: u32) -> Real {
        Real::from_float(Float::with_val(prec_bits(digits), 1))
    }

    pub fn from_u64(v: u64, digits: u32) -> Real {
        Real::from_float(Float::with_val(prec_bits(digits), v))
    }

    pub fn from_i64(v: i64, digits: u32) -> Real {
        Real::from_float(Float::with_val(prec_bits(digits), v))
    }

    pub fn from_f64(v: f64, digits: u32) -> Real {
        Real::from_float(Float::with_val(prec_bits(digits), v))
    }

    /// Correctly rounded embedding of an exact rational.
    pub fn from_rat(r: &Rat, digits: u32) -> Real {
        Real::from_float(Float::with_val(prec_bits(digits), r))
    }

    /// Ratio of two machine integers, correctly rounded.
    pub fn from_ratio(num: i64, den: u64, digits: u32) -> Real {
        Real::from_rat(&Rat::from((num, den)), digits)
    }

    /// Working precision in decimal digits.
    pub fn digits(&self) -> u32 {
        digits_of_prec(self.f.prec())
    }

    /// Re-rounds to a new working precision. Upcasts preserve the value.
    pub fn with_digits(&self, digits: u32) -> Real {
        Real::from_float(Float::with_val(prec_bits(digits), &self.f))
    }

    pub fn to_f64(&self) -> f64 {
        self.f.to_f64()
    }

    pub fn is_finite(&self) -> bool {
        self.f.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    /// Positive infinity; used by the harness to mark gated failures.
    pub fn infinity(digits: u32) -> Real {
        Real::from_float(Float::with_val(prec_bits(digits), f64::INFINITY))
    }

    pub(crate) fn as_float(&self) -> &Float {
        &self.f
    }

    pub(crate) fn into_float(self) -> Float {
        self.f
    }

    pub fn abs(&self) -> Real {
        Real::from_float(Float::with_val(self.f.prec(), self.f.abs_ref()))
    }

    pub fn neg(&self) -> Real {
        Real::from_float(Float::with_val(self.f.prec(), -&self.f))
    }

    pub fn ln(&self) -> Real {
        Real::from_float(Float::with_val(self.f.prec(), self.f.ln_ref()))
    }

    pub fn exp(&self) -> Real {
        Real::from_float(Float::with_val(self.f.prec(), self.f.exp_ref()))
    }

    pub fn sqrt(&self) -> Real {
        Real::from_float(Float::with_val(self.f.prec(), self.f.sqrt_ref()))
    }

    pub fn square(&self) -> Real {
        Real::from_float(Float::with_val(self.f.prec(), self.f.square_ref()))
    }

    pub fn recip(&self) -> Real {
        Real::from_float(Float::with_val(self.f.prec(), self.f.recip_ref()))
    }

    /// Integer power.
    pub fn pow_int(&self, n: i32) -> Real {
        Real::from_float(Float::with_val(self.f.prec(), (&self.f).pow(n)))
    }

    /// Real power `self^s`; both operands round to the smaller precision.
    pub fn pow(&self, s: &Real) -> Real {
        let prec = self.f.prec().min(s.f.prec());
        Real::from_float(Float::with_val(prec, (&self.f).pow(&s.f)))
    }

    pub fn min(&self, other: &Real) -> Real {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max(&self, other: &Real) -> Real {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// `10^(-e)` at this value's precision; handy for tolerance arithmetic.
    pub fn pow10(e: i32, digits: u32) -> Real {
        Real::from_float(Float::with_val(prec_bits(digits), Float::i_exp(10, 0)).pow(e))
    }

    /// Deterministic decimal rendering at the tagged precision. Plain
    /// notation for moderate exponents, `d.ddd…e±x` otherwise; trailing
    /// zeros trimmed.
    pub fn to_decimal_string(&self) -> String {
        let sig = self.digits().max(1) as usize;
        if !self.f.is_finite() {
            return if self.f.is_nan() {
                "nan".into()
            } else if self.f.is_sign_negative() {
                "-inf".into()
            } else {
                "inf".into()
            };
        }
        if self.f.is_zero() {
            return "0".into();
        }
        // rug's LowerExp precision counts significant digits.
        let formatted = format!("{:.*e}", sig, self.f);
        let (mantissa, exp_str) = formatted
            .split_once('e')
            .expect("exponent form always has an e");
        let exp: i64 = exp_str.parse().expect("valid exponent");
        let negative = mantissa.starts_with('-');
        let digits_only: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
        let digits_trimmed = digits_only.trim_end_matches('0');
        let digits_trimmed = if digits_trimmed.is_empty() {
            "0"
        } else {
            digits_trimmed
        };
        let body = if (-5..=(sig as i64 + 4)).contains(&exp) {
            render_plain(digits_trimmed, exp)
        } else {
            let mut s = String::new();
            s.push(digits_trimmed.as_bytes()[0] as char);
            if digits_trimmed.len() > 1 {
                s.push('.');
                s.push_str(&digits_trimmed[1..]);
            }
            s.push('e');
            s.push_str(&exp.to_string());
            s
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

/// Places the decimal point of digit string `d` so the value is `0.d × 10^(exp+1)`.
fn render_plain(d: &str, exp: i64) -> String {
    if exp >= 0 {
        let point = (exp + 1) as usize;
        if point >= d.len() {
            let mut s = String::from(d);
            s.push_str(&"0".repeat(point - d.len()));
            s
        } else {
            format!("{}.{}", &d[..point], &d[point..])
        }
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), d)
    }
}

impl std::fmt::Display for Real {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let prec = self.f.prec().min(rhs.f.prec());
                Real::from_float(Float::with_val(prec, std::ops::$trait::$method(&self.f, &rhs.f)))
            }
        }
        impl std::ops::$trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

macro_rules! real_scalar_binop {
    ($scalar:ty) => {
        impl std::ops::Add<$scalar> for &Real {
            type Output = Real;
            fn add(self, rhs: $scalar) -> Real {
                Real::from_float(Float::with_val(self.f.prec(), &self.f + rhs))
            }
        }
        impl std::ops::Sub<$scalar> for &Real {
            type Output = Real;
            fn sub(self, rhs: $scalar) -> Real {
                Real::from_float(Float::with_val(self.f.prec(), &self.f - rhs))
            }
        }
        impl std::ops::Mul<$scalar> for &Real {
            type Output = Real;
            fn mul(self, rhs: $scalar) -> Real {
                Real::from_float(Float::with_val(self.f.prec(), &self.f * rhs))
            }
        }
        impl std::ops::Div<$scalar> for &Real {
            type Output = Real;
            fn div(self, rhs: $scalar) -> Real {
                Real::from_float(Float::with_val(self.f.prec(), &self.f / rhs))
            }
        }
        impl std::ops::Add<$scalar> for Real {
            type Output = Real;
            fn add(self, rhs: $scalar) -> Real {
                &self + rhs
            }
        }
        impl std::ops::Sub<$scalar> for Real {
            type Output = Real;
            fn sub(self, rhs: $scalar) -> Real {
                &self - rhs
            }
        }
        impl std::ops::Mul<$scalar> for Real {
            type Output = Real;
            fn mul(self, rhs: $scalar) -> Real {
                &self * rhs
            }
        }
        impl std::ops::Div<$scalar> for Real {
            type Output = Real;
            fn div(self, rhs: $scalar) -> Real {
                &self / rhs
            }
        }
    };
}

real_scalar_binop!(u32);
real_scalar_binop!(i64);
real_scalar_binop!(u64);

impl std::ops::Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(self)
    }
}

impl std::ops::Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(&self)
    }
}

/// A numerically evaluated sum: value, number of terms actually summed, and
/// an upper bound on the omitted mass (absent for exact finite sums).
#[derive(Clone, Debug)]
pub struct SumResult {
    pub value: Real,
    pub terms_used: u64,
    pub tail_bound: Option<Real>,
}

impl SumResult {
    pub fn exact(value: Real, terms_used: u64) -> SumResult {
        SumResult {
            value,
            terms_used,
            tail_bound: None,
        }
    }
}

/// Correctly rounded embedding of an exact rational at `digits` decimal
/// digits of working precision. The result differs from `r` by at most
/// 10^(1−digits)·|r|.
pub fn real_of_rational(r: &Rat, digits: u32) -> Result<Real> {
    if digits < MIN_DIGITS {
        return Err(Error::PrecisionTooLow(digits));
    }
    Ok(Real::from_rat(r, digits))
}

/// π at `digits` decimal digits.
pub fn pi_const(digits: u32) -> Real {
    assert!(digits >= MIN_DIGITS, "precision below {MIN_DIGITS} digits");
    Real::from_float(Float::with_val(prec_bits(digits), Constant::Pi))
}

/// log 2 (natural logarithm of two) at `digits` decimal digits.
pub fn log2_const(digits: u32) -> Real {
    assert!(digits >= MIN_DIGITS, "precision below {MIN_DIGITS} digits");
    Real::from_float(Float::with_val(prec_bits(digits), Constant::Log2))
}

/// Neumaier-compensated summation in the given order. The result equals the
/// exact sum of the inputs up to 2·n·10^(2−digits)·Σ|tᵢ|; the empty sum is 0
/// at the default precision.
pub fn compensated_sum(terms: &[Real]) -> Real {
    let digits = terms
        .iter()
        .map(Real::digits)
        .min()
        .unwrap_or(DEFAULT_DIGITS);
    let prec = prec_bits(digits);
    let mut sum = Float::new(prec);
    let mut comp = Float::new(prec);
    let mut t = Float::new(prec);
    for term in terms {
        t.assign_from(&sum);
        t += &term.f;
        // Neumaier: recover whichever addend was truncated.
        if sum.clone().abs() >= term.f.clone().abs() {
            let mut lost = Float::with_val(prec, &sum - &t);
            lost += &term.f;
            comp += lost;
        } else {
            let mut lost = Float::with_val(prec, &term.f - &t);
            lost += &sum;
            comp += lost;
        }
        std::mem::swap(&mut sum, &mut t);
    }
    sum += comp;
    Real::from_float(sum)
}

trait AssignFrom {
    fn assign_from(&mut self, other: &Float);
}

impl AssignFrom for Float {
    fn assign_from(&mut self, other: &Float) {
        use rug::Assign;
        self.assign(other);
    }
}
