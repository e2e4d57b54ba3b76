//! Deterministic counter-based pseudo-random numbers.
//!
//! Every stochastic routine in this crate (Monte-Carlo averaging, the
//! restart draws of the trace-distance search) consumes randomness through
//! [`CounterRng`]: a keyed integer mixer evaluated at an incrementing
//! counter.  The generator carries no hidden state beyond `(key, counter)`,
//! so a fixed seed reproduces the exact same stream on every platform and
//! every run, and independent sub-streams are cheap to derive by re-keying.

/// Weyl increment used to decorrelate successive counter values.
const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// Finalizer from the splitmix64 generator; bijective on `u64`.
fn mix(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    z
}

/// Derive an independent stream seed from a base seed and a stream index.
///
/// Used to hand each Monte-Carlo partition and each search restart its own
/// reproducible sub-stream, independent of how many streams run or in what
/// order they are consumed.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    mix(seed ^ mix(index.wrapping_mul(GOLDEN).wrapping_add(GOLDEN)))
}

/// Keyed counter generator with `f64` and Gaussian output helpers.
#[derive(Debug, Clone)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self {
            key: mix(seed ^ 0x5851_f42d_4c95_7f2d),
            counter: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform in `[0, 1)` with 53 random mantissa bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`; safe as a logarithm argument.
    fn next_f64_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// One standard normal via the Box–Muller transform.
    ///
    /// Draws two uniforms and discards the second normal of the pair: the
    /// stream layout stays a fixed two draws per normal, which keeps
    /// partitioned consumers bit-reproducible.
    pub fn next_normal(&mut self) -> f64 {
        let r = (-2.0 * self.next_f64_open().ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * self.next_f64();
        r * theta.cos()
    }
}
