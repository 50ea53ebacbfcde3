use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 output function: a strong 64-bit mixer used to fold the
/// experiment coordinates into one seed.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Collapses (master seed, n, lambda index, trial index) into a single
/// well-mixed 64-bit key. Chaining the mixer keeps distinct coordinates
/// from colliding even when their raw values do (e.g. n == trial).
pub fn trial_key(master_seed: u64, n: usize, lambda_idx: usize, trial: usize) -> u64 {
    let mut k = splitmix64(master_seed);
    k = splitmix64(k ^ n as u64);
    k = splitmix64(k ^ lambda_idx as u64);
    splitmix64(k ^ trial as u64)
}

/// The generator a single trial owns. Counter-based derivation makes
/// each stream a pure function of the coordinates, independent of which
/// worker thread runs the trial and in what order.
pub fn trial_rng(master_seed: u64, n: usize, lambda_idx: usize, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_key(master_seed, n, lambda_idx, trial))
}
