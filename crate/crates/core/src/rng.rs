//! Seeded SplitMix64 stream used for every random fixture.
//!
//! The generator is fully specified so fixtures can be regenerated in any
//! language: the state advances by `0x9E3779B97F4A7C15` per draw and each
//! output is the standard SplitMix64 finaliser of the new state. Bounded
//! draws use rejection sampling on the top of the `u64` range, so they are
//! exactly uniform.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi as i128 - lo as i128 + 1) as u64;
        (lo as i128 + self.below(span) as i128) as i64
    }

    /// `count` distinct values from `0..n` (Floyd's algorithm), in draw order
    /// of acceptance.
    pub fn distinct_below(&mut self, n: u64, count: u64) -> Vec<u64> {
        assert!(count <= n);
        let mut seen = std::collections::HashSet::with_capacity(count as usize);
        let mut out = Vec::with_capacity(count as usize);
        for j in (n - count)..n {
            let t = self.below(j + 1);
            let pick = if seen.contains(&t) { j } else { t };
            seen.insert(pick);
            out.push(pick);
        }
        out
    }

    /// Derives an independent stream, e.g. for case `index` of a sweep.
    pub fn fork(seed: u64, index: u64) -> Self {
        let mut base = SplitMix64::new(seed ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03));
        SplitMix64::new(base.next_u64())
    }
}
