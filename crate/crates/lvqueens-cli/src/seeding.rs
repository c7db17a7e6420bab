//! Per-trial seed derivation.
//!
//! Every trial's RNG seed is a pure function of (master seed, board size,
//! trial index), so a campaign's outcome is independent of how trials are
//! scheduled across threads, and any single trial can be replayed in
//! isolation with `solve --seed`.

/// splitmix64 step: golden-ratio increment followed by the finalizer. A
/// well-mixed bijection on `u64`, which is all seed derivation needs.
fn mix(z: u64) -> u64 {
    let z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    let z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable hash of (master seed, board size, trial index) used as the RNG
/// seed for that one trial. The chaining order is part of the file-format
/// contract: raw CSVs record these seeds.
pub fn trial_seed(master_seed: u64, n: u32, trial: u64) -> u64 {
    let h = mix(master_seed);
    let h = mix(h.wrapping_add(n as u64));
    mix(h.wrapping_add(trial))
}
