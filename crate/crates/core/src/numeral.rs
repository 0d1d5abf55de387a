//! Base `b` and base `-b` digit strings, and the digit-wise operators built
//! on them.
//!
//! Everything in this module works directly on integers. None of it goes
//! through a transducer, which is what lets it serve as the oracle the
//! machines in [`crate::machines`] are checked against.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A single digit. Always `< b` for the radix it belongs to.
pub type Digit = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumeralError {
    #[error("radix must be at least 2, got {0}")]
    InvalidRadix(u32),
    #[error("digit {digit} is out of range for base {radix}")]
    DigitOutOfRange { digit: Digit, radix: u32 },
    #[error("expected a non-negative integer, got {0}")]
    Negative(BigInt),
    #[error("cannot parse digit string {0:?}")]
    Parse(String),
}

/// A validated radix `b >= 2`.
///
/// `b = 1` is refused: its only digit is 0, so nothing but zero has an
/// expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Radix(u32);

impl Radix {
    pub const BINARY: Radix = Radix(2);

    pub fn new(b: u32) -> Result<Self, NumeralError> {
        if b < 2 {
            return Err(NumeralError::InvalidRadix(b));
        }
        Ok(Radix(b))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Largest digit, `b - 1`.
    #[inline]
    pub fn max_digit(self) -> Digit {
        self.0 - 1
    }

    /// All digits `0..b` in ascending order.
    pub fn digits(self) -> std::ops::Range<Digit> {
        0..self.0
    }

    pub fn check_digit(self, digit: Digit) -> Result<Digit, NumeralError> {
        if digit < self.0 {
            Ok(digit)
        } else {
            Err(NumeralError::DigitOutOfRange {
                digit,
                radix: self.0,
            })
        }
    }
}

impl TryFrom<u32> for Radix {
    type Error = NumeralError;

    fn try_from(b: u32) -> Result<Self, Self::Error> {
        Radix::new(b)
    }
}

impl Serialize for Radix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u32(self.get())
    }
}

impl<'de> Deserialize<'de> for Radix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let b = u32::deserialize(d)?;
        Radix::new(b).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Radix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite digit sequence stored least-significant-first.
///
/// The stored form is canonical: every digit is below the radix and there
/// are no trailing (most significant) zeros, so zero is the empty sequence.
/// Whether the digits are read in base `b` or base `-b` is up to the caller.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    digits: Vec<Digit>,
    radix: Radix,
}

impl DigitString {
    pub fn zero(radix: Radix) -> Self {
        DigitString {
            digits: Vec::new(),
            radix,
        }
    }

    /// Validates `digits` (least-significant first) and strips trailing zeros.
    pub fn new(mut digits: Vec<Digit>, radix: Radix) -> Result<Self, NumeralError> {
        for &d in &digits {
            radix.check_digit(d)?;
        }
        strip_trailing_zeros(&mut digits);
        Ok(DigitString { digits, radix })
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<Digit> {
        self.digits
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Same as [`is_zero`](Self::is_zero): zero is the only empty string.
    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Renders most-significant digit first, left-padded with zeros to at
    /// least `pad` digits. Zero with no padding renders as `"0"`.
    ///
    /// Bases up to 10 give a contiguous string (`"110110"`); larger bases
    /// separate decimal digit values with commas (`"1,15,0"`).
    pub fn to_msb_string(&self, pad: usize) -> String {
        let width = self.digits.len().max(pad).max(1);
        let padded = (0..width)
            .rev()
            .map(|i| self.digits.get(i).copied().unwrap_or(0));
        if self.radix.get() <= 10 {
            padded
                .map(|d| char::from_digit(d, 10).expect("digit below 10"))
                .collect()
        } else {
            padded.map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    /// Inverse of [`DigitString::to_msb_string`]. Leading zeros are allowed.
    pub fn parse_msb(text: &str, radix: Radix) -> Result<Self, NumeralError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(NumeralError::Parse(text.to_owned()));
        }
        let msb: Vec<Digit> = if text.contains(',') || radix.get() > 10 {
            text.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<Digit>()
                        .map_err(|_| NumeralError::Parse(text.to_owned()))
                })
                .collect::<Result<_, _>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| NumeralError::Parse(text.to_owned()))
                })
                .collect::<Result<_, _>>()?
        };
        DigitString::new(msb.into_iter().rev().collect(), radix)
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_msb_string(0))
    }
}

pub(crate) fn strip_trailing_zeros(digits: &mut Vec<Digit>) {
    while digits.last() == Some(&0) {
        digits.pop();
    }
}

fn digit_of(value: &BigInt) -> Digit {
    value.to_u32().expect("residue fits in a digit")
}

/// Base `b` expansion of `n >= 0`.
pub fn to_base(n: &BigInt, radix: Radix) -> Result<DigitString, NumeralError> {
    if n.is_negative() {
        return Err(NumeralError::Negative(n.clone()));
    }
    let b = BigInt::from(radix.get());
    let mut digits = Vec::new();
    let mut rest = n.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&b);
        digits.push(digit_of(&r));
        rest = q;
    }
    Ok(DigitString { digits, radix })
}

/// Base `-b` expansion of any integer, digits in `0..b`.
///
/// Each step takes the least non-negative residue `r = z mod b` and
/// continues with `(z - r) / (-b)`, which divides exactly.
pub fn to_negabase(z: &BigInt, radix: Radix) -> DigitString {
    let b = BigInt::from(radix.get());
    let neg_b = -&b;
    let mut digits = Vec::new();
    let mut rest = z.clone();
    while !rest.is_zero() {
        let r = rest.mod_floor(&b);
        digits.push(digit_of(&r));
        rest = (rest - r) / &neg_b;
    }
    DigitString { digits, radix }
}

fn evaluate(digits: &[Digit], base: &BigInt) -> BigInt {
    digits
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, &d| acc * base + BigInt::from(d))
}

/// `sum digits[i] * b^i`
pub fn from_base(digits: &DigitString) -> BigInt {
    evaluate(&digits.digits, &BigInt::from(digits.radix.get()))
}

/// `sum digits[i] * (-b)^i`
pub fn from_negabase(digits: &DigitString) -> BigInt {
    evaluate(&digits.digits, &-BigInt::from(digits.radix.get()))
}

/// Combines two digit sequences position by position, treating missing
/// positions as zero, and returns the canonical result.
fn zip_digits(
    x: &[Digit],
    y: &[Digit],
    radix: Radix,
    combine: impl Fn(Digit, Digit) -> Digit,
) -> DigitString {
    let len = x.len().max(y.len());
    let mut digits: Vec<Digit> = (0..len)
        .map(|i| {
            combine(
                x.get(i).copied().unwrap_or(0),
                y.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    strip_trailing_zeros(&mut digits);
    DigitString { digits, radix }
}

/// `x (+)_{-b} y`: add the base `-b` digits of `x` and `y` mod `b`, then read
/// the resulting digits in base `+b`. Defined for all integers; the result
/// is never negative.
pub fn oplus_neg(x: &BigInt, y: &BigInt, radix: Radix) -> BigInt {
    let b = radix.get();
    let xs = to_negabase(x, radix);
    let ys = to_negabase(y, radix);
    from_base(&zip_digits(&xs.digits, &ys.digits, radix, |p, q| {
        (p + q) % b
    }))
}

/// `x (-)_b y`: subtract base `b` digits mod `b` (least non-negative
/// residue) and read the result in base `b`.
pub fn ominus(x: &BigInt, y: &BigInt, radix: Radix) -> Result<BigInt, NumeralError> {
    let b = radix.get();
    let xs = to_base(x, radix)?;
    let ys = to_base(y, radix)?;
    Ok(from_base(&zip_digits(
        &xs.digits,
        &ys.digits,
        radix,
        |p, q| (p + b - q) % b,
    )))
}

/// Replaces every base `b` digit `d` of `n` by `min(d, 1)`.
pub fn double_bar(n: &BigInt, radix: Radix) -> Result<BigInt, NumeralError> {
    let mut ds = to_base(n, radix)?;
    for d in &mut ds.digits {
        *d = (*d).min(1);
    }
    Ok(from_base(&ds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(b: u32) -> Radix {
        Radix::new(b).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// Repeated division by `b`, on machine integers.
    fn division_oracle(mut n: u64, b: u64) -> Vec<Digit> {
        let mut out = Vec::new();
        while n > 0 {
            out.push((n % b) as Digit);
            n /= b;
        }
        out
    }

    #[test]
    fn radix_rejects_zero_and_one() {
        assert_eq!(Radix::new(0), Err(NumeralError::InvalidRadix(0)));
        assert_eq!(Radix::new(1), Err(NumeralError::InvalidRadix(1)));
        assert_eq!(Radix::new(2).unwrap().get(), 2);
    }

    #[test]
    fn to_base_examples() {
        assert_eq!(to_base(&big(10), r(2)).unwrap().digits(), &[0, 1, 0, 1]);
        assert!(to_base(&big(0), r(7)).unwrap().is_zero());
        assert_eq!(division_oracle(30, 2), vec![0, 1, 1, 1, 1]);
        assert_eq!(to_base(&big(30), r(2)).unwrap().digits(), &[0, 1, 1, 1, 1]);
        assert_eq!(
            to_base(&big(-1), r(2)),
            Err(NumeralError::Negative(big(-1)))
        );
    }

    #[test]
    fn to_negabase_examples() {
        assert_eq!(to_negabase(&big(10), r(2)).digits(), &[0, 1, 1, 1, 1]);
        assert_eq!(to_negabase(&big(-10), r(2)).digits(), &[0, 1, 0, 1]);
        assert_eq!(to_negabase(&big(-14), r(2)).digits(), &[0, 1, 1, 0, 1, 1]);
        assert!(to_negabase(&big(0), r(5)).is_zero());
    }

    #[test]
    fn evaluation_examples() {
        let ds = DigitString::new(vec![0, 1, 0, 1], r(2)).unwrap();
        assert_eq!(from_base(&ds), big(10));
        assert_eq!(from_negabase(&ds), big(-10));
        assert_eq!(from_base(&DigitString::zero(r(9))), big(0));
    }

    #[test]
    fn digit_string_validates_and_strips() {
        assert_eq!(
            DigitString::new(vec![1, 2], r(2)),
            Err(NumeralError::DigitOutOfRange { digit: 2, radix: 2 })
        );
        let ds = DigitString::new(vec![1, 0, 0], r(2)).unwrap();
        assert_eq!(ds.digits(), &[1]);
    }

    #[test]
    fn operator_examples() {
        assert_eq!(oplus_neg(&big(10), &big(-10), r(2)), big(20));
        assert_eq!(oplus_neg(&big(14), &big(-14), r(2)), big(36));
        assert_eq!(oplus_neg(&big(0), &big(0), r(6)), big(0));
        // 1001 xor 0011
        assert_eq!(9 ^ 3, 10);
        assert_eq!(ominus(&big(9), &big(3), r(2)).unwrap(), big(10));
        assert_eq!(ominus(&big(30), &big(10), r(2)).unwrap(), big(20));
        assert_eq!(ominus(&big(77), &big(77), r(7)).unwrap(), big(0));
        assert!(ominus(&big(-1), &big(3), r(2)).is_err());
    }

    #[test]
    fn ominus_takes_least_nonnegative_residue() {
        // 1 - 2 in base 3 is 2, not -1.
        assert_eq!(ominus(&big(1), &big(2), r(3)).unwrap(), big(2));
    }

    #[test]
    fn double_bar_examples() {
        // 5 = 12 in base 3 -> 11 in base 3 = 4
        assert_eq!(division_oracle(5, 3), vec![2, 1]);
        assert_eq!(double_bar(&big(5), r(3)).unwrap(), big(4));
        assert_eq!(double_bar(&big(0), r(4)).unwrap(), big(0));
        assert!(double_bar(&big(-3), r(4)).is_err());
        for n in 0..200 {
            assert_eq!(double_bar(&big(n), r(2)).unwrap(), big(n));
        }
    }

    #[test]
    fn msb_rendering() {
        let neg14 = to_negabase(&big(-14), r(2));
        assert_eq!(neg14.to_msb_string(0), "110110");
        assert_eq!(to_negabase(&big(-10), r(2)).to_msb_string(6), "001010");
        assert_eq!(DigitString::zero(r(5)).to_msb_string(0), "0");
        let hex = to_base(&big(0x1f0), r(16)).unwrap();
        assert_eq!(hex.to_msb_string(0), "1,15,0");
        assert_eq!(DigitString::parse_msb("1,15,0", r(16)).unwrap(), hex);
        assert_eq!(
            DigitString::parse_msb("001010", r(2)).unwrap().digits(),
            &[0, 1, 0, 1]
        );
        assert!(DigitString::parse_msb("12", r(2)).is_err());
        assert!(DigitString::parse_msb("1x", r(2)).is_err());
    }

    proptest! {
        #[test]
        fn base_round_trip(n in 0u64..u64::MAX, b in 2u32..=16) {
            let ds = to_base(&BigInt::from(n), r(b)).unwrap();
            prop_assert_eq!(ds.digits().last().map(|&d| d != 0), if n == 0 { None } else { Some(true) });
            prop_assert_eq!(from_base(&ds), BigInt::from(n));
        }

        #[test]
        fn negabase_round_trip(z in any::<i64>(), b in 2u32..=16) {
            let ds = to_negabase(&BigInt::from(z), r(b));
            prop_assert!(ds.digits().iter().all(|&d| d < b));
            prop_assert_ne!(ds.digits().last(), Some(&0));
            prop_assert_eq!(from_negabase(&ds), BigInt::from(z));
        }

        #[test]
        fn ominus_is_xor_in_binary(x in 0u64..=1 << 16, y in 0u64..=1 << 16) {
            let got = ominus(&BigInt::from(x), &BigInt::from(y), Radix::BINARY).unwrap();
            prop_assert_eq!(got, BigInt::from(x ^ y));
        }

        #[test]
        fn oplus_neg_commutes(x in any::<i64>(), y in any::<i64>(), b in 2u32..=16) {
            let (x, y) = (BigInt::from(x), BigInt::from(y));
            prop_assert_eq!(oplus_neg(&x, &y, r(b)), oplus_neg(&y, &x, r(b)));
        }

        #[test]
        fn oplus_neg_self_is_zero_in_binary(x in any::<i64>()) {
            let x = BigInt::from(x);
            prop_assert_eq!(oplus_neg(&x, &x, Radix::BINARY), BigInt::zero());
        }

        #[test]
        fn double_bar_idempotent_and_bounded(n in 0u64..u64::MAX, b in 2u32..=16) {
            let n = BigInt::from(n);
            let once = double_bar(&n, r(b)).unwrap();
            prop_assert!(once >= BigInt::zero() && once <= n);
            prop_assert_eq!(double_bar(&once, r(b)).unwrap(), once);
        }

        #[test]
        fn msb_render_parse_round_trip(n in 0u64..u64::MAX, b in 2u32..=40, pad in 0usize..70) {
            let ds = to_base(&BigInt::from(n), r(b)).unwrap();
            let text = ds.to_msb_string(pad);
            prop_assert_eq!(DigitString::parse_msb(&text, r(b)).unwrap(), ds);
        }
    }
}
