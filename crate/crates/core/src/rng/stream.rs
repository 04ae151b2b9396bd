//! Counter-based random streams.
//!
//! A stream is keyed by `(master_seed, path)`; the `i`-th 64-bit output is a
//! keyed hash of `i`. Streams therefore never share state, and any worker can
//! rebuild any trial's stream from its path alone.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const PATH_SALT: u64 = 0xD1B5_4A32_D192_ED03;
const SECOND_KEY_SALT: u64 = 0x8CB9_2BA7_2F3D_8DD7;

#[inline(always)]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic random stream. Not suitable for cryptographic use.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    path: Vec<u64>,
    k1: u64,
    k2: u64,
    counter: u64,
    // Buffered fair coins for geometric draws, consumed from the low end.
    bits: u64,
    nbits: u32,
}

impl RngStream {
    /// Builds the stream for `(master_seed, path)`.
    pub fn derive(master_seed: u64, path: &[u64]) -> Self {
        let mut k = mix64(master_seed ^ GOLDEN);
        // Length first, so that [a] and [a, 0] differ.
        k = mix64(k ^ mix64((path.len() as u64).wrapping_add(PATH_SALT)));
        for &p in path {
            k = mix64(k.wrapping_add(GOLDEN) ^ mix64(p ^ PATH_SALT));
        }
        RngStream {
            seed: master_seed,
            path: path.to_vec(),
            k1: k,
            k2: mix64(k ^ SECOND_KEY_SALT),
            counter: 0,
            bits: 0,
            nbits: 0,
        }
    }

    /// Stream at `path ++ [tag]`.
    pub fn child(&self, tag: u64) -> Self {
        let mut path = self.path.clone();
        path.push(tag);
        RngStream::derive(self.seed, &path)
    }

    pub fn master_seed(&self) -> u64 {
        self.seed
    }

    pub fn path(&self) -> &[u64] {
        &self.path
    }

    /// Number of 64-bit words drawn so far.
    pub fn draws(&self) -> u64 {
        self.counter
    }

    /// The `index`-th word of this stream, independent of the cursor.
    #[inline(always)]
    pub fn word_at(&self, index: u64) -> u64 {
        mix64(mix64(index.wrapping_mul(GOLDEN).wrapping_add(self.k1)) ^ self.k2)
    }

    #[inline(always)]
    pub fn next_u64(&mut self) -> u64 {
        let w = self.word_at(self.counter);
        self.counter += 1;
        w
    }

    #[inline(always)]
    pub fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    /// Uniform on `[0, 1)` with 53 bits of resolution.
    #[inline(always)]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Exactly uniform on `0..n` (Lemire's multiply-and-reject).
    #[inline]
    pub fn uniform_below(&mut self, n: u32) -> u32 {
        assert!(n > 0, "uniform_below(0)");
        let mut m = u64::from(self.next_u32()) * u64::from(n);
        let mut low = m as u32;
        if low < n {
            let threshold = n.wrapping_neg() % n;
            while low < threshold {
                m = u64::from(self.next_u32()) * u64::from(n);
                low = m as u32;
            }
        }
        (m >> 32) as u32
    }

    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    #[inline(always)]
    fn refill(&mut self) {
        self.bits = self.next_u64();
        self.nbits = 64;
    }

    #[inline(always)]
    fn consume(&mut self, n: u32) {
        debug_assert!(n <= self.nbits);
        self.bits = if n >= 64 { 0 } else { self.bits >> n };
        self.nbits -= n;
    }

    /// Number of heads before the first tail in a run of fair coins:
    /// `P(k) = 2^-(k+1)`.
    #[inline]
    pub fn geometric_half(&mut self) -> u64 {
        let mut k = 0u64;
        loop {
            if self.nbits == 0 {
                self.refill();
            }
            // Bits above `nbits` are zero, so this never overruns the buffer.
            let ones = self.bits.trailing_ones();
            if ones < self.nbits {
                self.consume(ones + 1);
                return k + u64::from(ones);
            }
            k += u64::from(self.nbits);
            self.nbits = 0;
            self.bits = 0;
        }
    }

    /// Sum of `n` independent [`geometric_half`](Self::geometric_half) draws.
    ///
    /// Reads exactly the coins that `n` sequential draws would read, so the
    /// two are interchangeable on the same stream.
    pub fn geometric_half_sum(&mut self, n: u64) -> u64 {
        let mut heads = 0u64;
        let mut need = n;
        while need > 0 {
            if self.nbits == 0 {
                self.refill();
            }
            let mask = if self.nbits == 64 {
                u64::MAX
            } else {
                (1u64 << self.nbits) - 1
            };
            let seg = self.bits & mask;
            let ones = seg.count_ones();
            let zeros = u64::from(self.nbits - ones);
            if zeros < need {
                heads += u64::from(ones);
                need -= zeros;
                self.nbits = 0;
                self.bits = 0;
                continue;
            }
            // Position of the need-th tail inside the segment.
            let mut tails = !seg & mask;
            for _ in 1..need {
                tails &= tails - 1;
            }
            let pos = tails.trailing_zeros();
            let below = if pos == 0 { 0 } else { seg & ((1u64 << pos) - 1) };
            heads += u64::from(below.count_ones());
            self.consume(pos + 1);
            need = 0;
        }
        heads
    }
}

/// Convenience wrapper matching the operation name used throughout the docs.
pub fn derive_stream(master_seed: u64, path: &[u64]) -> RngStream {
    RngStream::derive(master_seed, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_is_identical() {
        let mut a = derive_stream(1, &[0]);
        let mut b = derive_stream(1, &[0]);
        for _ in 0..1000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn sibling_paths_differ() {
        let mut a = derive_stream(1, &[0]);
        let mut b = derive_stream(1, &[1]);
        assert_ne!(a.next_u64(), b.next_u64());
        assert_ne!(derive_stream(1, &[0]).next_u64(), derive_stream(1, &[0, 0]).next_u64());
        assert_ne!(
            derive_stream(1, &[7, 3]).next_u64(),
            derive_stream(1, &[3, 7]).next_u64()
        );
    }

    #[test]
    fn streams_do_not_share_state() {
        let mut reference = derive_stream(1, &[7, 3]);
        let expected: Vec<u64> = (0..16).map(|_| reference.next_u64()).collect();

        let mut busy = derive_stream(1, &[7, 2]);
        for _ in 0..1_000_000 {
            busy.next_u64();
        }
        let mut replay = derive_stream(1, &[7, 3]);
        let got: Vec<u64> = (0..16).map(|_| replay.next_u64()).collect();
        assert_eq!(expected, got);
        assert_eq!(replay.word_at(3), expected[3]);
    }

    #[test]
    fn geometric_sum_matches_sequential_draws() {
        for n in [0u64, 1, 2, 5, 31, 64, 65, 200, 5000] {
            let mut seq = derive_stream(9, &[n]);
            let mut bulk = seq.clone();
            let total: u64 = (0..n).map(|_| seq.geometric_half()).sum();
            assert_eq!(bulk.geometric_half_sum(n), total, "n = {n}");
            // Both left the coin buffer in the same place.
            assert_eq!(seq.geometric_half(), bulk.geometric_half());
            assert_eq!(seq.draws(), bulk.draws());
        }
    }

    #[test]
    fn uniform_below_covers_range() {
        let mut s = derive_stream(3, &[]);
        let mut seen = [0u32; 10];
        for _ in 0..10_000 {
            seen[s.uniform_below(10) as usize] += 1;
        }
        assert!(seen.iter().all(|&c| (850..1150).contains(&c)), "{seen:?}");
        assert_eq!(s.uniform_below(1), 0);
    }

    #[test]
    fn unit_interval() {
        let mut s = derive_stream(4, &[1]);
        for _ in 0..10_000 {
            let u = s.next_f64();
            assert!((0.0..1.0).contains(&u));
        }
    }
}
