//! Seed derivation. Every random stage of the pipeline draws its seed from
//! one root seed expanded by a fixed label, so a single config value pins
//! the whole run.

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for a named pipeline stage.
pub fn stage_seed(root: u64, label: &str) -> u64 {
    let mut h = splitmix64(root ^ 0x51ab_7e0c_9d2f_1137);
    for &b in label.as_bytes() {
        h = splitmix64(h ^ u64::from(b));
    }
    h
}

/// Seed for repetition `index` within a stage (bootstrap reps, sweep points).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ splitmix64(index.wrapping_add(1)))
}
