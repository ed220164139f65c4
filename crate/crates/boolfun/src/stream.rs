//! Deterministic per-trial rng derivation so parallel workers reproduce the
//! sequential run exactly.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 step: advances the state and returns a mixed output word.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// An rng for trial `stream` of the experiment seeded by `seed`. The same
/// pair always yields the same generator, and distinct trials get unrelated
/// key material, so results do not depend on how trials are scheduled.
pub fn derive_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut state = seed;
    // Burn the seed through the mixer once, then fold in the stream index
    // so (seed, stream) pairs with equal sums do not collide.
    splitmix64(&mut state);
    state ^= stream.wrapping_mul(0xA24B_AED4_963E_E407);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
