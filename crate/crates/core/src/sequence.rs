//! Verblunsky coefficient and Ising coupling sequences.
//!
//! Both sequences are stored 0-based. Storage index `k` of a
//! [`CoefficientSequence`] is the CMV index `α_k`; storage index `k` of a
//! [`CouplingSequence`] is the bond `p_{k+1}` between spins `k+1` and `k+2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite sequence of Verblunsky coefficients in the open unit disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct CoefficientSequence {
    alphas: Vec<Complex64>,
}

impl CoefficientSequence {
    pub fn new(alphas: Vec<Complex64>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (index, a) in alphas.iter().enumerate() {
            let modulus = a.norm();
            // NaN fails this comparison as well.
            if !(modulus < 1.0) {
                return Err(Error::CoefficientOutsideDisk { index, modulus });
            }
        }
        Ok(Self { alphas })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, k: usize) -> Complex64 {
        self.alphas[k]
    }

    /// `ρ_k = sqrt(1 - |α_k|²)`.
    pub fn rho(&self, k: usize) -> f64 {
        rho(self.alphas[k])
    }

    pub fn rho_product(&self) -> f64 {
        self.alphas.iter().map(|&a| rho(a)).product()
    }

    /// Rotates left by `shift`: entry `k` of the result is entry `k + shift` of `self`.
    pub fn cyclic_shift(&self, shift: usize) -> Self {
        let mut alphas = self.alphas.clone();
        let len = alphas.len();
        alphas.rotate_left(shift % len);
        Self { alphas }
    }

    /// Two consecutive copies of the sequence.
    pub fn doubled(&self) -> Self {
        let mut alphas = Vec::with_capacity(2 * self.alphas.len());
        alphas.extend_from_slice(&self.alphas);
        alphas.extend_from_slice(&self.alphas);
        Self { alphas }
    }

    pub fn iter(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.alphas.iter().copied()
    }
}

impl TryFrom<Vec<Complex64>> for CoefficientSequence {
    type Error = Error;

    fn try_from(alphas: Vec<Complex64>) -> Result<Self> {
        Self::new(alphas)
    }
}

impl From<CoefficientSequence> for Vec<Complex64> {
    fn from(seq: CoefficientSequence) -> Self {
        seq.alphas
    }
}

pub(crate) fn rho(alpha: Complex64) -> f64 {
    (1.0 - alpha.norm_sqr()).sqrt()
}

/// Positive normalized couplings `p_n = J_n / (k_B τ)` of a periodic Ising chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct CouplingSequence {
    ps: Vec<f64>,
}

impl CouplingSequence {
    pub fn new(ps: Vec<f64>) -> Result<Self> {
        if ps.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (index, &value) in ps.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositiveCoupling { index, value });
            }
        }
        Ok(Self { ps })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.ps
    }

    pub fn len(&self) -> usize {
        self.ps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `β_n = e^{p_n}`.
    pub fn betas(&self) -> impl Iterator<Item = f64> + '_ {
        self.ps.iter().map(|p| p.exp())
    }
}

impl TryFrom<Vec<f64>> for CouplingSequence {
    type Error = Error;

    fn try_from(ps: Vec<f64>) -> Result<Self> {
        Self::new(ps)
    }
}

impl From<CouplingSequence> for Vec<f64> {
    fn from(seq: CouplingSequence) -> Self {
        seq.ps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_boundary_and_nan_coefficients() {
        assert!(CoefficientSequence::from_real(&[0.5, 1.0]).is_err());
        assert!(CoefficientSequence::from_real(&[f64::NAN]).is_err());
        assert!(CoefficientSequence::new(vec![]).is_err());
        let err = CoefficientSequence::new(vec![Complex64::new(0.0, 1.5)]).unwrap_err();
        assert!(matches!(err, Error::CoefficientOutsideDisk { index: 0, .. }));
    }

    #[test]
    fn rejects_nonpositive_couplings() {
        assert!(CouplingSequence::new(vec![1.0, 0.0]).is_err());
        assert!(CouplingSequence::new(vec![-1.0]).is_err());
        assert!(CouplingSequence::new(vec![f64::INFINITY]).is_err());
        assert!(CouplingSequence::new(vec![0.1, 2.0]).is_ok());
    }

    #[test]
    fn cyclic_shift_rotates_left() {
        let seq = CoefficientSequence::from_real(&[0.1, 0.2, 0.3]).unwrap();
        let shifted = seq.cyclic_shift(1);
        assert_eq!(shifted.get(0).re, 0.2);
        assert_eq!(shifted.get(2).re, 0.1);
        assert_eq!(seq.cyclic_shift(3), seq);
    }

    #[test]
    fn serde_validates() {
        let bad: std::result::Result<CoefficientSequence, _> = serde_json::from_str("[[1.5, 0.0]]");
        assert!(bad.is_err());
        let ok: CouplingSequence = serde_json::from_str("[0.5, 1.5]").unwrap();
        assert_eq!(ok.len(), 2);
    }
}
