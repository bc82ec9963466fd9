//! Seeded sampler for stable points with zero moment map and nilpotent B.
//! Strategy: set s = 0 and zero out the reversed-orientation blocks, so every
//! moment-map summand has a zero factor, and fill the oriented blocks and t
//! with small random integers; retry until the stability fixpoint passes.

use super::adhm::{ADHMDatum, GradedDims};
use super::doubled::DoubledQuiver;
use super::ratmat::RatMat;
use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SAMPLE_RETRY_BUDGET: usize = 200;

pub fn sample_lagrangian_point(
    quiver: &DoubledQuiver,
    dims: &GradedDims,
    seed: u64,
) -> Result<ADHMDatum> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_RETRY_BUDGET {
        let mut d = ADHMDatum::random(quiver, dims.clone(), &mut rng, 3);
        for i in 0..dims.rank() {
            d.s[i] = RatMat::zeros(dims.v[i], dims.w[i]);
        }
        for (k, a) in quiver.arrows.iter().enumerate() {
            if a.sign < 0 {
                d.b[k] = RatMat::zeros(dims.v[a.inn], dims.v[a.out]);
            }
        }
        debug_assert!(d.moment_map_is_zero(quiver));
        if !d.is_nilpotent(quiver) {
            continue;
        }
        if d.is_stable(quiver).stable {
            return Ok(d);
        }
    }
    Err(Error::RetryBudgetExhausted(format!(
        "no stable point found for v={:?}, w={:?} in {} draws (the stable locus may be empty)",
        dims.v, dims.w, SAMPLE_RETRY_BUDGET
    )))
}
