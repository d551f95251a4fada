use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator type handed to samplers.
pub type StreamRng = ChaCha8Rng;

/// A reproducible, splittable random stream.
///
/// `(seed, stream)` selects a ChaCha8 keystream; distinct stream ids give
/// independent sequences under the same seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngStream { seed, stream }
    }

    /// Child stream keyed by `tag`. Children of distinct tags, and of
    /// distinct parents, have distinct ids with overwhelming probability.
    pub fn substream(&self, tag: u64) -> RngStream {
        RngStream { seed: self.seed, stream: splitmix(self.stream ^ splitmix(tag.wrapping_add(1))) }
    }

    pub fn rng(&self) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}
