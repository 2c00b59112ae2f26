//! Seedable randomness for the solvers.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`. A symbol in `0..k` is drawn by taking `next_u32` values
//! until one falls below `⌊2³² / k⌋ · k` and reducing it mod `k`. Pinning both
//! steps makes resampling trajectories reproducible across builds.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SolverRng = ChaCha8Rng;

pub fn solver_rng(seed: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform symbol in `0..k`. `k` must be positive.
pub fn uniform_symbol<R: RngCore + ?Sized>(rng: &mut R, k: u32) -> u32 {
    assert!(k > 0, "alphabet must be nonempty");
    let limit = (1u64 << 32) / k as u64 * k as u64;
    loop {
        let x = rng.next_u32() as u64;
        if x < limit {
            return (x % k as u64) as u32;
        }
    }
}
