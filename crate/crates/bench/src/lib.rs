//! Shared fixtures for the benchmarks.

use pp8_core::{FieldCtx, FieldElement, Octic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic batch of normalized octics over `ctx`.
pub fn random_octics(ctx: &FieldCtx, n: usize, seed: u64) -> Vec<Octic> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let t: [FieldElement; 7] =
                std::array::from_fn(|_| ctx.element(rng.gen_range(0..ctx.q())).unwrap());
            Octic::normalized(ctx, t).unwrap()
        })
        .collect()
}
