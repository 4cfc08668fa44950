//! Deterministic counter-based PRNG used for all randomness in the library.
//!
//! SplitMix64: the state advances by a fixed increment per draw (a counter)
//! and each output is a finalizer over the state. Constants are pinned here
//! so scene fixtures and sweep sampling reproduce bit-identically on any
//! platform or reimplementation:
//!
//! ```text
//! state    += 0x9E3779B97F4A7C15
//! z  = state
//! z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
//! z ^= z >> 27;  z *= 0x94D049BB133111EB
//! z ^= z >> 31
//! ```
//!
//! Floats in [0, 1) take the top 53 bits: `(z >> 11) * 2^-53`. Gaussians use
//! Box-Muller on two consecutive uniforms with no caching: given u1 in (0, 1]
//! and u2 in [0, 1), the draw is `sqrt(-2 ln u1) * cos(2 pi u2)`.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX_1: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX_2: u64 = 0x94D0_49BB_1331_11EB;

/// SplitMix64 finalizer over a single word.
pub fn mix64(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(MIX_1);
    z ^= z >> 27;
    z = z.wrapping_mul(MIX_2);
    z ^= z >> 31;
    z
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Derive an independent stream from a root seed and a domain tag, so
    /// per-frame and per-surface draws do not depend on processing order.
    pub fn stream(seed: u64, tag: u64) -> Self {
        SplitMix64::new(mix64(seed ^ mix64(tag)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in [0, n). `n` must be positive. Computed by modulo;
    /// the bias is negligible for the index ranges used here and the result
    /// is bit-stable everywhere.
    pub fn next_index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    /// Standard normal draw via Box-Muller, two uniforms per draw.
    pub fn next_gaussian(&mut self) -> f64 {
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}
