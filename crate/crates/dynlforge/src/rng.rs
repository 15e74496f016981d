//! Seeded splitmix64 generator for deterministic grid sampling.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in (-1, 1).
    pub fn next_sym(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    /// Uniform point in the closed ball of the given radius (rejection from
    /// the cube; dim 0 yields the empty point).
    pub fn next_in_ball(&mut self, dim: usize, radius: f64) -> Vec<f64> {
        if dim == 0 {
            return Vec::new();
        }
        loop {
            let v: Vec<f64> = (0..dim).map(|_| self.next_sym()).collect();
            let n2: f64 = v.iter().map(|x| x * x).sum();
            if n2 <= 1.0 {
                return v.iter().map(|x| x * radius).collect();
            }
        }
    }
}
