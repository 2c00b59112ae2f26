//! The block-count threshold `ℓ₀` and translate-set size `n = ℓ₀ |D|²`.
//!
//! With `q = 1 - k^{-|D|}`, let `f(ℓ) = e · q^ℓ · |D|² ℓ²`. `ℓ₀` is the least
//! integer with `f(ℓ) < 1` for every `ℓ ≥ ℓ₀`. `ln f` is concave in `ℓ` and
//! `f(1) ≥ e/2 > 1` whenever `k ≥ 2`, so `{ℓ : f(ℓ) ≥ 1}` is an interval
//! `[1, m]` and `ℓ₀ = m + 1`. The crossing point is located in floating point
//! and then certified: `f(ℓ₀) < 1`, `f(ℓ₀ - 1) ≥ 1` and
//! `q ((ℓ₀ + 1) / ℓ₀)² < 1`.
//!
//! Comparisons of `f(ℓ)` with 1 are exact (big integers and the rational
//! enclosure of `e`) while the integers stay below [`MAX_EXACT_BITS`]. Past
//! that, `ln f(ℓ)` is evaluated in `f64`, whose accumulated error is below
//! `1e-12` for every representable input, and a sign is only reported when
//! `|ln f(ℓ)|` exceeds [`LOG_MARGIN`].

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::certify::{e_times_fraction, Verdict};

/// Widest integers used for exact comparisons.
pub const MAX_EXACT_BITS: u64 = 1 << 18;
/// Safety margin for log-domain comparisons.
pub const LOG_MARGIN: f64 = 1e-9;
/// Largest `ℓ` the scan will consider.
pub const MAX_ELL: u64 = 1 << 50;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThresholdError {
    #[error("alphabet size must be at least 1")]
    InvalidAlphabet,
    #[error("pattern support must be nonempty")]
    EmptySupport,
    #[error("threshold exceeds the supported range (l > {MAX_ELL})")]
    TooLarge,
    #[error("comparison at l = {ell} cannot be certified with the enclosure of e")]
    Uncertified { ell: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub k: u32,
    pub support_size: u32,
    pub ell0: u64,
    pub n: u64,
    /// `k = 1`: every bad event has probability 0 or 1 and `f ≡ 0` for
    /// `ℓ ≥ 1`.
    pub degenerate_alphabet: bool,
}

fn check_args(k: u32, support_size: u32) -> Result<(), ThresholdError> {
    if k == 0 {
        return Err(ThresholdError::InvalidAlphabet);
    }
    if support_size == 0 {
        return Err(ThresholdError::EmptySupport);
    }
    Ok(())
}

fn log_q(k: u32, support_size: u32) -> f64 {
    (-(k as f64).powi(-(support_size as i32))).ln_1p()
}

/// `f(ℓ)` in floating point, for display.
pub fn endgame_value(k: u32, support_size: u32, ell: u64) -> f64 {
    if k == 1 {
        return 0.0;
    }
    log_endgame(log_q(k, support_size), support_size as f64, ell as f64).exp()
}

fn log_endgame(q_ln: f64, s: f64, ell: f64) -> f64 {
    1.0 + ell * q_ln + 2.0 * (s * ell).ln()
}

/// Exact numerator and denominator of `f(ℓ) / e`.
fn endgame_fraction(k: u32, support_size: u32, ell: u64) -> (BigUint, BigUint) {
    let block = BigUint::from(k).pow(support_size);
    let exp = u32::try_from(ell).expect("ell fits in u32 under the size guard");
    let num = (&block - 1u32).pow(exp) * BigUint::from(support_size as u64 * ell).pow(2);
    let den = block.pow(exp);
    (num, den)
}

/// Certified comparison of `f(ℓ) = e (1 - k^{-|D|})^ℓ |D|² ℓ²` with 1.
pub fn endgame_verdict(k: u32, support_size: u32, ell: u64) -> Result<Verdict, ThresholdError> {
    check_args(k, support_size)?;
    if k == 1 || ell == 0 {
        return Ok(Verdict::Correct);
    }
    if ell > MAX_ELL {
        return Err(ThresholdError::TooLarge);
    }
    let bits = ell as f64 * support_size as f64 * (k as f64).log2();
    if bits <= MAX_EXACT_BITS as f64 {
        let (num, den) = endgame_fraction(k, support_size, ell);
        return Ok(e_times_fraction(&num, &den));
    }
    let g = log_endgame(log_q(k, support_size), support_size as f64, ell as f64);
    Ok(if g < -LOG_MARGIN {
        Verdict::Correct
    } else if g > LOG_MARGIN {
        Verdict::Incorrect
    } else {
        Verdict::Borderline
    })
}

/// Certified check that `q ((ℓ+1)/ℓ)² < 1`, i.e. `f` decreases from `ℓ` on.
fn decreasing_from(k: u32, support_size: u32, ell: u64) -> bool {
    let block = BigUint::from(k).pow(support_size);
    let lhs = (&block - 1u32) * BigUint::from(ell + 1).pow(2);
    let rhs = block * BigUint::from(ell).pow(2);
    lhs < rhs
}

/// Least `ℓ₀` with `f(ℓ) < 1` for all `ℓ ≥ ℓ₀`.
pub fn compute_ell0(k: u32, support_size: u32) -> Result<u64, ThresholdError> {
    check_args(k, support_size)?;
    if k == 1 {
        return Ok(1);
    }
    let q_ln = log_q(k, support_size);
    let s = support_size as f64;
    // Peak of the concave log f, then the first integer past it where
    // log f < 0, by doubling and bisection.
    let peak = (-2.0 / q_ln).max(1.0);
    let mut lo = peak.floor();
    let mut hi = lo.max(1.0);
    while log_endgame(q_ln, s, hi) >= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > MAX_ELL as f64 {
            return Err(ThresholdError::TooLarge);
        }
    }
    while hi - lo > 1.0 {
        let mid = ((lo + hi) / 2.0).floor();
        if log_endgame(q_ln, s, mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut ell = hi.max(2.0) as u64;

    // Exact certification; the float estimate can be off by one near the
    // crossing.
    for _ in 0..64 {
        let here = endgame_verdict(k, support_size, ell)?;
        let before = endgame_verdict(k, support_size, ell - 1)?;
        match (here, before) {
            (Verdict::Correct, Verdict::Incorrect) => {
                assert!(decreasing_from(k, support_size, ell), "f must be decreasing past its crossing");
                return Ok(ell);
            }
            (Verdict::Incorrect, _) => ell += 1,
            (Verdict::Correct, Verdict::Correct) if ell > 2 => ell -= 1,
            (Verdict::Borderline, _) => return Err(ThresholdError::Uncertified { ell }),
            _ => return Err(ThresholdError::Uncertified { ell: ell - 1 }),
        }
    }
    Err(ThresholdError::Uncertified { ell })
}

/// `n = ℓ₀ |D|²`.
pub fn compute_n(k: u32, support_size: u32) -> Result<u64, ThresholdError> {
    Ok(compute_ell0(k, support_size)? * (support_size as u64).pow(2))
}

pub fn threshold(k: u32, support_size: u32) -> Result<Threshold, ThresholdError> {
    let ell0 = compute_ell0(k, support_size)?;
    Ok(Threshold {
        k,
        support_size,
        ell0,
        n: ell0 * (support_size as u64).pow(2),
        degenerate_alphabet: k == 1,
    })
}
