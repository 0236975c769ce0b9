//! Coefficient generators driven by dynamical systems.
//!
//! Every generator stores its output 0-based: entry `k` is `f(T^k ω)`.

mod fraction;
mod markov;
mod orbits;
mod sampling;
mod words;

pub use fraction::{HighPrecisionFraction, QuadraticSurd, SeedValue, MIN_PRECISION_BITS};
pub use markov::{MarkovChain, STATIONARY_TOLERANCE};
pub use orbits::{
    cat_map_iterate, cat_map_orbit, cat_map_orbit_f64, cat_map_step, fibonacci_number, skew_shift_iterate,
    skew_shift_orbit, skew_shift_step, TorusPoint,
};
pub use sampling::{sample_orbit, uamo_coefficients, CosineSampler};
pub use words::{
    couplings_from_word, fibonacci_rules, fibonacci_word, fibonacci_word_capped, substitution_fixed_point, Rules,
    SymbolicWord, DEFAULT_WORD_CAP,
};

use crate::error::{Error, Result};

/// Environment variable overriding the precision ceiling, in bits.
pub const PRECISION_CAP_ENV: &str = "LEEYANG_PRECISION_CAP";

/// Precision ceiling used when the environment does not set one.
pub const DEFAULT_PRECISION_CAP: u32 = 65_536;

/// Working-precision rules for torus orbits.
///
/// A request below the default for the orbit length is raised to it, never
/// lowered; anything above `cap_bits` is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub request_bits: Option<u32>,
    pub cap_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self { request_bits: None, cap_bits: DEFAULT_PRECISION_CAP }
    }
}

impl PrecisionPolicy {
    /// Default policy with the cap taken from `LEEYANG_PRECISION_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let cap_bits = match std::env::var(PRECISION_CAP_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidParameter(format!("{PRECISION_CAP_ENV}={raw:?} is not a bit count")))?,
            Err(_) => DEFAULT_PRECISION_CAP,
        };
        Ok(Self { request_bits: None, cap_bits })
    }

    pub fn with_request(self, bits: Option<u32>) -> Self {
        Self { request_bits: bits, ..self }
    }

    /// `⌈1.39 (2n+1)⌉ + 64`, tracking the growth of `F_{2n+1}`.
    pub fn cat_map_default(n: u64) -> u64 {
        (1.39 * (2 * n + 1) as f64).ceil() as u64 + 64
    }

    /// `⌈2 log2(n+1)⌉ + 128`.
    pub fn skew_shift_default(n: u64) -> u64 {
        (2.0 * ((n + 1) as f64).log2()).ceil() as u64 + 128
    }

    pub fn cat_map_bits(&self, n: u64) -> Result<u32> {
        self.resolve(Self::cat_map_default(n))
    }

    pub fn skew_shift_bits(&self, n: u64) -> Result<u32> {
        self.resolve(Self::skew_shift_default(n))
    }

    /// Applies the request and cap to an arbitrary minimum.
    pub fn resolve(&self, minimum: u64) -> Result<u32> {
        let bits = minimum.max(self.request_bits.unwrap_or(0) as u64).max(MIN_PRECISION_BITS as u64);
        if bits > self.cap_bits as u64 {
            return Err(Error::PrecisionCap { required: bits, cap: self.cap_bits });
        }
        Ok(bits as u32)
    }

    /// Same policy at twice the resolved precision, for stability checks.
    pub fn doubled(&self, resolved: u32) -> Self {
        Self { request_bits: Some(resolved.saturating_mul(2)), ..*self }
    }
}
