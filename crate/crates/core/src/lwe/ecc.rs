//! Repetition code with majority decoding. `rep` is odd, so ties cannot
//! occur; a block decodes correctly iff fewer than `rep / 2` bits flipped.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RepetitionCode {
    rep: usize,
}

impl RepetitionCode {
    pub fn new(rep: usize) -> Self {
        assert!(rep % 2 == 1, "repetition factor must be odd");
        Self { rep }
    }

    pub fn rep(&self) -> usize {
        self.rep
    }

    pub fn encode(&self, bits: &[bool]) -> Vec<bool> {
        bits.iter()
            .flat_map(|&b| std::iter::repeat_n(b, self.rep))
            .collect()
    }

    pub fn decode(&self, noisy: &[bool]) -> Vec<bool> {
        assert_eq!(noisy.len() % self.rep, 0);
        noisy
            .chunks(self.rep)
            .map(|block| 2 * block.iter().filter(|&&b| b).count() > self.rep)
            .collect()
    }

    /// Probability that a block of i.i.d. flips at rate `p` decodes wrongly:
    /// `P[Bin(rep, p) > rep / 2]`.
    pub fn block_failure(&self, p: f64) -> f64 {
        let n = self.rep as u64;
        let mut total = 0.0;
        let mut coeff = 1.0f64; // C(n, k) as f64
        for k in 0..=n {
            if 2 * k > n {
                total += coeff * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32);
            }
            coeff = coeff * (n - k) as f64 / (k + 1) as f64;
        }
        total
    }
}
