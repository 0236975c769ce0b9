//! Sampling functions `f(x, y) = offset + amplitude · cos(2πy)` and the
//! unitary almost-Mathieu coefficients.

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::CoefficientSequence;

use super::fraction::HighPrecisionFraction;
use super::orbits::TorusPoint;

/// `f(x, y) = offset + amplitude · cos(2πy)` with `|offset| + |amplitude| < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CosineSampler {
    pub offset: f64,
    pub amplitude: f64,
}

impl CosineSampler {
    pub fn new(offset: f64, amplitude: f64) -> Result<Self> {
        let bound = offset.abs() + amplitude.abs();
        if !(bound < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "sampling range |offset| + |amplitude| = {bound} must be below 1"
            )));
        }
        Ok(Self { offset, amplitude })
    }

    /// `1/2 + cos(2πy)/3`.
    pub fn shifted() -> Self {
        Self { offset: 0.5, amplitude: 1.0 / 3.0 }
    }

    /// `λ cos(2πy)`.
    pub fn pure(lambda: f64) -> Result<Self> {
        Self::new(0.0, lambda)
    }

    pub fn sample(&self, y: &HighPrecisionFraction) -> f64 {
        self.offset + self.amplitude * y.cos_2pi()
    }
}

/// `α_k = f(orbit_k)`, evaluated from the exact `y` coordinate.
pub fn sample_orbit(orbit: &[TorusPoint], sampler: &CosineSampler) -> Result<CoefficientSequence> {
    CoefficientSequence::from_real(&orbit.iter().map(|p| sampler.sample(&p.y)).collect::<Vec<_>>())
}

/// Unitary almost-Mathieu coefficients of length `len`, stored so that
/// storage index `k` is the coefficient `α_k`:
///
/// * `k = 2n` even: `√(1 - λ2²)`;
/// * `k = 2n - 1` odd: `λ1 · cos(2π(nγ + x))`, i.e. `n = (k + 1)/2`.
pub fn uamo_coefficients(
    lambda1: f64,
    lambda2: f64,
    gamma: &HighPrecisionFraction,
    x: &HighPrecisionFraction,
    len: usize,
) -> Result<CoefficientSequence> {
    for (name, v) in [("lambda1", lambda1), ("lambda2", lambda2)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::InvalidParameter(format!("{name} = {v} must lie in (0, 1)")));
        }
    }
    if len == 0 {
        return Err(Error::EmptySequence);
    }
    let bits = gamma.bits().max(x.bits()).max(128) + 2 * (usize::BITS - len.leading_zeros());
    let gamma = gamma.raised(bits);
    let x = x.raised(bits);
    let even = (1.0 - lambda2 * lambda2).sqrt();
    let alphas = (0..len)
        .map(|k| {
            let value = if k % 2 == 0 {
                even
            } else {
                let n = BigInt::from(k.div_ceil(2));
                lambda1 * gamma.mul_int(&n).add(&x).cos_2pi()
            };
            Complex64::new(value, 0.0)
        })
        .collect();
    CoefficientSequence::new(alphas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::fraction::QuadraticSurd;
    use proptest::prelude::*;

    // 0.9 cos(2π/√2), mpmath at 30 digits.
    const UAMO_FIRST_ODD: f64 = -0.239_629_807_837_273_939_75;

    fn at(y: f64) -> HighPrecisionFraction {
        HighPrecisionFraction::from_f64(y, 128).unwrap()
    }

    #[test]
    fn sampler_examples() {
        let shifted = CosineSampler::shifted();
        assert!((shifted.sample(&at(0.0)) - 5.0 / 6.0).abs() < 2e-16);
        assert!((shifted.sample(&at(0.5)) - 1.0 / 6.0).abs() < 2e-16);
        let pure = CosineSampler::pure(0.9).unwrap();
        assert!(pure.sample(&at(0.25)).abs() < 1e-16);
    }

    #[test]
    fn sampler_rejects_range_touching_the_circle() {
        assert!(CosineSampler::new(0.5, 0.5).is_err());
        assert!(CosineSampler::pure(1.0).is_err());
        assert!(CosineSampler::new(f64::NAN, 0.1).is_err());
        assert!(CosineSampler::new(-0.2, 0.7).is_ok());
    }

    #[test]
    fn uamo_examples() {
        let gamma = QuadraticSurd::inv_sqrt(2).to_fraction(256);
        let zero = HighPrecisionFraction::zero(256);
        let seq = uamo_coefficients(0.9, std::f64::consts::FRAC_1_SQRT_2, &gamma, &zero, 6).unwrap();
        assert!((seq.get(0).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((seq.get(2).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((seq.get(1).re - UAMO_FIRST_ODD).abs() < 1e-15);
        assert!(seq.iter().all(|a| a.im == 0.0));
    }

    #[test]
    fn uamo_rejects_out_of_range_parameters() {
        let g = HighPrecisionFraction::zero(128);
        assert!(uamo_coefficients(0.9, 1.0, &g, &g, 4).is_err());
        assert!(uamo_coefficients(0.0, 0.5, &g, &g, 4).is_err());
        assert!(uamo_coefficients(0.5, 0.5, &g, &g, 0).is_err());
    }

    proptest! {
        #[test]
        fn samples_stay_inside_the_range(offset in -0.49f64..0.49, amplitude in -0.5f64..0.5, y in 0.0f64..1.0) {
            let s = CosineSampler::new(offset, amplitude).unwrap();
            let v = s.sample(&at(y));
            prop_assert!(v.abs() <= offset.abs() + amplitude.abs() + 1e-16);
        }
    }
}
