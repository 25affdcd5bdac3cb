//! Exact scalar abstraction.
//!
//! Every solver is generic over [`ExactField`], an ordered field with exact
//! arithmetic. The default instantiation is [`Rational`] (arbitrary precision);
//! `Ratio<i64>` also satisfies the bound and is handy for small tests.
//!
//! Euclidean distances are irrational in general, so geometry works with
//! squared distances and every `sqrt` comparison is rewritten into an exact
//! rational one (see [`le_plus_sqrt`]).

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{input, Result};

/// Arbitrary-precision rational, the default scalar.
pub type Rational = BigRational;

/// Ordered field with exact arithmetic.
///
/// Floating-point types deliberately do not qualify: they are not `Ord`.
pub trait ExactField:
    Clone + Ord + Debug + Display + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync
{
    fn of_usize(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize fits in scalar")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("i64 fits") / Self::from_i64(den).expect("i64 fits")
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl<T> ExactField for T where
    T: Clone + Ord + Debug + Display + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// Exact test of `a <= b + sqrt(c)` for `c >= 0`.
pub fn le_plus_sqrt<T: ExactField>(a: &T, b: &T, c: &T) -> bool {
    debug_assert!(!c.is_negative());
    let diff = a.clone() - b.clone();
    !diff.is_positive() || diff.square() <= *c
}

/// Exact test of `sq <= ((1 + sqrt 3) r)^2` given `r2 = r^2`, i.e.
/// `sq <= 4 r2 + sqrt(12 r2^2)`.
pub fn within_one_plus_sqrt3<T: ExactField>(sq: &T, r2: &T) -> bool {
    let four = T::of_usize(4);
    let twelve = T::of_usize(12);
    le_plus_sqrt(sq, &(four * r2.clone()), &(twelve * r2.square()))
}

/// Parses `"3"`, `"-0.25"`, `"1e3"`, `"2.5E-1"` or `"7/3"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(input("empty number"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim())
            .map_err(|_| input(format!("bad numerator in {text:?}")))?;
        let den = BigInt::from_str(den.trim())
            .map_err(|_| input(format!("bad denominator in {text:?}")))?;
        if den.is_zero() {
            return Err(input(format!("zero denominator in {text:?}")));
        }
        return Ok(Ratio::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..]
                .parse()
                .map_err(|_| input(format!("bad exponent in {text:?}")))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(input(format!("no digits in {text:?}")));
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(input(format!("not a decimal number: {text:?}")));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Ratio::from_integer(BigInt::from_str(&all_digits).unwrap_or_default());
    let scale = exponent - frac_part.len() as i32;
    let ten = Ratio::from_integer(BigInt::from(10));
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if negative { -value } else { value })
}

/// Canonical text form used in JSON output: `"n"` or `"n/d"`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal approximation of `sqrt(sq)` with 12 significant digits.
/// For display only; never feeds back into a solver.
pub fn approx_sqrt<T: ExactField>(sq: &T) -> String {
    let v = sq.to_f64().unwrap_or(f64::NAN).max(0.0).sqrt();
    format_significant(v, 12)
}

pub(crate) fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Converts a scalar to the default rational type through its `"n/d"` display form.
pub fn to_rational<T: ExactField>(value: &T) -> Option<Rational> {
    parse_rational(&value.to_string()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("1e3").unwrap(), q(1000, 1));
        assert_eq!(parse_rational("2.5E-1").unwrap(), q(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational("7/3").unwrap(), q(7, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), q(-2, 3));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1.2.3", "0x10", "-", "1e", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn format_round_trips() {
        for v in [q(1, 2), q(-7, 3), q(5, 1), q(0, 1)] {
            assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
        }
    }

    #[test]
    fn sqrt_three_bound_is_exact() {
        // (1 + sqrt 3)^2 = 4 + 2 sqrt 3 ~ 7.4641016
        let one = q(1, 1);
        assert!(within_one_plus_sqrt3(&q(74641, 10000), &one));
        assert!(!within_one_plus_sqrt3(&q(74642, 10000), &one));
        assert!(within_one_plus_sqrt3(&q(4, 1), &one));
        assert!(within_one_plus_sqrt3(&q(0, 1), &q(0, 1)));
        assert!(!within_one_plus_sqrt3(&q(1, 1000), &q(0, 1)));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(approx_sqrt(&q(9, 4)), "1.5");
        assert_eq!(approx_sqrt(&q(2, 1)), "1.41421356237");
        assert_eq!(approx_sqrt(&q(0, 1)), "0");
        assert_eq!(format_significant(123456.789, 4), "123457");
    }

    #[test]
    fn small_ratio_is_an_exact_field() {
        let a: Ratio<i64> = ExactField::from_ratio(1, 3);
        assert_eq!(a.square(), Ratio::new(1, 9));
    }
}
