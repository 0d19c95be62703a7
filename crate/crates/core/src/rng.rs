//! Deterministic, splittable random streams.
//!
//! One root seed plus a derivation path (e.g. `[window, pair, repetition]`)
//! identifies a stream, so every cell of a rolling-window computation gets
//! random numbers that are independent of evaluation order and of how work
//! is scheduled across threads. The generator is SplitMix64; the split is a
//! counter-style hash of the path into a fresh state.

use crate::math;
use core::f64::consts::TAU;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A SplitMix64 stream.
#[derive(Clone, Debug)]
pub struct RngStream {
    state: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream { state: seed }
    }

    /// Derive the stream identified by `seed` and a derivation path.
    ///
    /// Equal `(seed, path)` always yields the same stream; any change to the
    /// seed or to a path element yields an unrelated stream.
    pub fn derive(seed: u64, path: &[u64]) -> Self {
        let mut h = mix(seed ^ GOLDEN);
        for &tag in path {
            h = mix(h ^ tag.wrapping_mul(0xD1B5_4A32_D192_ED03).wrapping_add(GOLDEN));
        }
        RngStream::new(h)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }

    /// Uniform draw in `(0, 1]`.
    #[inline]
    pub fn next_open01(&mut self) -> f64 {
        1.0 - self.next_f64()
    }

    /// Uniform draw in `[lo, hi)`.
    #[inline]
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Standard normal draw (Box-Muller, cosine branch).
    ///
    /// Consumes exactly two `u64` draws per call, which keeps stream
    /// consumption independent of the values produced.
    #[inline]
    pub fn next_normal(&mut self) -> f64 {
        let u1 = self.next_open01();
        let u2 = self.next_f64();
        math::sqrt(-2.0 * math::ln(u1)) * math::sin_cos(TAU * u2).1
    }
}
