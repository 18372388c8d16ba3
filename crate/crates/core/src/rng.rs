//! Seedable, splittable random stream.
//!
//! A stream is identified by a 64-bit key and a ChaCha stream number. The root
//! stream for a seed uses stream 0; `substream(i)` selects stream `i + 1` under
//! the same key, so the children of a root are independent ChaCha streams.
//! Substreams of substreams re-key through a SplitMix64 mix of the parent's
//! (key, stream) pair. A substream always starts at the beginning of its own
//! sequence, regardless of how far the parent has advanced.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    key: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::keyed(seed, seed, 0)
    }

    fn keyed(seed: u64, key: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(key);
        rng.set_stream(stream);
        Self {
            seed,
            key,
            stream,
            rng,
        }
    }

    /// The root seed this stream descends from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn substream(&self, index: u64) -> RngStream {
        let key = if self.stream == 0 {
            self.key
        } else {
            splitmix64(self.key ^ splitmix64(self.stream))
        };
        Self::keyed(self.seed, key, index.wrapping_add(1))
    }

    /// Uniform in [0, 1).
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform in [lo, hi).
    #[inline]
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform angle in [0, 2pi).
    #[inline]
    pub fn angle(&mut self) -> f64 {
        std::f64::consts::TAU * self.uniform()
    }

    #[inline]
    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Fair coin.
    #[inline]
    pub fn coin(&mut self) -> bool {
        self.rng.random::<bool>()
    }

    /// Uniform integer in [0, n).
    #[inline]
    pub fn below(&mut self, n: u32) -> u32 {
        self.rng.random_range(0..n)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}
