//! Certified comparisons of `e · x` against 1 for exact rational `x`.
//!
//! `e` is enclosed in `[2.718281828459045, 2.718281828459046]`; a verdict is
//! only `Below` or `AtLeast` when both ends of the enclosure agree.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

/// Lower end of the enclosure of `e`, scaled by `E_SCALE`.
pub const E_LOWER_SCALED: u64 = 2_718_281_828_459_045;
/// Upper end of the enclosure of `e`, scaled by `E_SCALE`.
pub const E_UPPER_SCALED: u64 = 2_718_281_828_459_046;
pub const E_SCALE: u64 = 1_000_000_000_000_000;

/// Outcome of comparing `e · x` with 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// `e · x < 1` for every `e` in the enclosure.
    Correct,
    /// `e · x ≥ 1` for every `e` in the enclosure.
    Incorrect,
    /// The enclosure straddles 1.
    Borderline,
}

impl Verdict {
    pub fn is_correct(self) -> bool {
        self == Verdict::Correct
    }
}

/// Compares `e · num / den` with 1. `den` must be positive.
pub fn e_times_fraction(num: &BigUint, den: &BigUint) -> Verdict {
    assert!(*den != BigUint::ZERO, "zero denominator");
    let rhs = den * E_SCALE;
    if num * E_UPPER_SCALED < rhs {
        Verdict::Correct
    } else if num * E_LOWER_SCALED >= rhs {
        Verdict::Incorrect
    } else {
        Verdict::Borderline
    }
}

/// Compares `e · x` with 1 for a nonnegative rational `x`.
pub fn e_times(x: &BigRational) -> Verdict {
    let num = x.numer().to_biguint().expect("nonnegative rational");
    let den = x.denom().to_biguint().expect("positive denominator");
    e_times_fraction(&num, &den)
}

/// Rational enclosure `[lo, hi]` of `e · x`.
pub fn e_times_bounds(x: &BigRational) -> (BigRational, BigRational) {
    let scale = BigRational::from_integer(E_SCALE.into());
    let lo = BigRational::from_integer(E_LOWER_SCALED.into()) / &scale;
    let hi = BigRational::from_integer(E_UPPER_SCALED.into()) / &scale;
    (x * lo, x * hi)
}

/// Lossy conversion for display.
pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
