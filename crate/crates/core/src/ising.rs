//! Periodic one-dimensional Ising chains: energies, partition functions and
//! the map from couplings to Verblunsky coefficients.
//!
//! Bond `k` (storage index of a [`CouplingSequence`]) joins spins `k` and
//! `k + 1 mod N`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, ZERO};
use crate::sequence::{CoefficientSequence, CouplingSequence};

/// Largest chain the brute-force sum accepts by default.
pub const BRUTE_FORCE_CAP: usize = 20;

/// Spin configuration `σ ∈ {±1}^N` with periodic closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinConfiguration {
    sigmas: Vec<i8>,
}

impl SpinConfiguration {
    pub fn new(sigmas: Vec<i8>) -> Result<Self> {
        if sigmas.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(s) = sigmas.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidParameter(format!("spin value {s} is not ±1")));
        }
        Ok(Self { sigmas })
    }

    pub fn all_up(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.sigmas
    }

    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `E(σ, q) = -Σ_n (p_n σ_n σ_{n+1} + q σ_n)`, `σ_{N+1} = σ_1`.
pub fn energy(sigma: &SpinConfiguration, ps: &CouplingSequence, q: f64) -> Result<f64> {
    let n = sigma.len();
    if ps.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: ps.len() });
    }
    let s = sigma.as_slice();
    let mut e = 0.0;
    for (k, &p) in ps.as_slice().iter().enumerate() {
        let here = s[k] as f64;
        let next = s[(k + 1) % n] as f64;
        e -= p * here * next + q * here;
    }
    Ok(e)
}

/// `𝒵_N(ζ) = Σ_σ Π_n β_n^{σ_n σ_{n+1}} ζ^{σ_n}` by enumerating all `2^N` states.
pub fn partition_bruteforce(ps: &CouplingSequence, zeta: Complex64) -> Result<Complex64> {
    partition_bruteforce_capped(ps, zeta, BRUTE_FORCE_CAP)
}

pub fn partition_bruteforce_capped(ps: &CouplingSequence, zeta: Complex64, cap: usize) -> Result<Complex64> {
    if zeta == ZERO {
        return Err(Error::ZeroFugacity);
    }
    let n = ps.len();
    let by_magnetization = weights_by_magnetization(ps, cap)?;
    let mut total = ZERO;
    for (j, w) in by_magnetization.iter().enumerate() {
        if *w != 0.0 {
            total += w * zeta.powi(j as i32 - n as i32);
        }
    }
    Ok(total)
}

/// Entry `j` sums `exp(Σ p_n σ_n σ_{n+1})` over states with `Σσ_n = j - N`.
fn weights_by_magnetization(ps: &CouplingSequence, cap: usize) -> Result<Vec<f64>> {
    let n = ps.len();
    if n > cap {
        return Err(Error::SizeCap { what: "brute-force chain length", size: n, cap });
    }
    let p = ps.as_slice();
    let mut weights = vec![0.0; 2 * n + 1];
    for mask in 0u64..(1u64 << n) {
        let spin = |k: usize| if mask >> k & 1 == 0 { 1.0 } else { -1.0 };
        let mut bonds = 0.0;
        for (k, &pk) in p.iter().enumerate() {
            bonds += pk * spin(k) * spin((k + 1) % n);
        }
        let down = mask.count_ones() as usize;
        weights[2 * (n - down)] += bonds.exp();
    }
    Ok(weights)
}

/// Coefficients `c_0, ..., c_{2N}` of `ζ^N 𝒵_N(ζ) = Σ_j c_j ζ^j`, from the
/// brute-force sum. Odd `j` always vanish.
pub fn partition_polynomial(ps: &CouplingSequence) -> Result<Vec<f64>> {
    weights_by_magnetization(ps, BRUTE_FORCE_CAP)
}

/// `M(β, ζ) = [[βζ, 1/β], [1/β, β/ζ]]`.
pub fn ising_transfer(beta: f64, zeta: Complex64) -> Result<Mat2> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("beta = {beta} must be finite and positive")));
    }
    if zeta == ZERO {
        return Err(Error::ZeroFugacity);
    }
    let inv = Complex64::new(1.0 / beta, 0.0);
    Ok(Mat2::new(beta * zeta, inv, inv, beta / zeta))
}

/// `Tr[M(β_N, ζ) ··· M(β_1, ζ)]`.
pub fn partition_via_trace(ps: &CouplingSequence, zeta: Complex64) -> Result<Complex64> {
    let mut acc = Mat2::IDENTITY;
    for beta in ps.betas() {
        acc = ising_transfer(beta, zeta)? * acc;
    }
    Ok(acc.trace())
}

/// `α_n = β_n^{-2} = e^{-2 p_n}`.
pub fn couplings_to_verblunsky(ps: &CouplingSequence) -> CoefficientSequence {
    let alphas: Vec<f64> = ps.as_slice().iter().map(|p| (-2.0 * p).exp()).collect();
    CoefficientSequence::from_real(&alphas).expect("e^{-2p} lies in (0, 1) for p > 0")
}

/// `(α_1, ..., α_N) ↦ (0, α_1, 0, α_2, ..., 0, α_N)`.
///
/// Storage index 0 is the rightmost factor `S(0, z)` of the transfer
/// product, so the product over the result is
/// `S(α_N, z) S(0, z) ··· S(α_1, z) S(0, z)`.
pub fn interleave_with_zeros(alphas: &CoefficientSequence) -> CoefficientSequence {
    let mut out = Vec::with_capacity(2 * alphas.len());
    for a in alphas.iter() {
        out.push(ZERO);
        out.push(a);
    }
    CoefficientSequence::new(out).expect("interleaving keeps coefficients in the disk")
}
