//! Deterministic RNG streams keyed by (master seed, task path).
//!
//! Every stochastic task owns a stream derived from its structural identity,
//! never from execution order, so multi-threaded runs reproduce single-
//! threaded output bit for bit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Independent generator for the task at `path` under `master_seed`.
pub fn stream_rng(master_seed: u64, path: &str) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(master_seed.to_le_bytes());
    hasher.update([0u8]);
    hasher.update(path.as_bytes());
    let digest = hasher.finalize();
    let mut seed = [0u8; 32];
    seed.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(seed)
}
