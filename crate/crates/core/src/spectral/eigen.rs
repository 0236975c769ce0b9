//! Eigenphases of unitary Floquet matrices.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmv::{floquet_for_odd_discriminant, floquet_matrix, FloquetMatrix};
use crate::error::{Error, Result};
use crate::ising::{couplings_to_verblunsky, interleave_with_zeros};
use crate::linalg::{unitarity_deviation, DenseMatrix};
use crate::sequence::{CoefficientSequence, CouplingSequence};

/// Largest `‖F*F - I‖_max` accepted before solving.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;
/// Largest `||λ| - 1|` accepted in the output.
pub const CIRCLE_TOLERANCE: f64 = 1e-10;
/// Largest matrix the zero pipelines will build.
pub const EIGENSOLVER_CAP: usize = 4000;
/// Largest `|λ - λ'|` within a doubled eigenvalue pair.
pub const PAIRING_TOLERANCE: f64 = 1e-8;

/// Eigenvalues `e^{2πiθ_k}` sorted by phase `θ_k ∈ [0, 1)`.
///
/// `source_len` is the length of the sequence the spectrum was built from:
/// the Ising chain length for Lee–Yang zeros, `N` for discriminant zeros.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenphaseList {
    phases: Vec<f64>,
    eigenvalues: Vec<Complex64>,
    source_len: usize,
    max_deviation: f64,
}

/// `arg(z) / 2π` reduced to `[0, 1)`.
pub fn phase_of(z: Complex64) -> f64 {
    let t = (z.arg() / TAU).rem_euclid(1.0);
    if t >= 1.0 {
        0.0
    } else {
        t
    }
}

impl EigenphaseList {
    fn from_eigenvalues(mut eigenvalues: Vec<Complex64>, source_len: usize) -> Self {
        eigenvalues.sort_by(|a, b| phase_of(*a).total_cmp(&phase_of(*b)));
        let phases = eigenvalues.iter().map(|&z| phase_of(z)).collect();
        let max_deviation = eigenvalues.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
        Self { phases, eigenvalues, source_len, max_deviation }
    }

    /// Points `e^{2πiθ}` exactly on the circle, e.g. read back from a file.
    pub fn from_phases(phases: &[f64], source_len: usize) -> Result<Self> {
        if let Some(t) = phases.iter().find(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter(format!("phase {t} is not finite")));
        }
        let eigenvalues = phases.iter().map(|&t| Complex64::from_polar(1.0, TAU * t)).collect();
        let mut list = Self::from_eigenvalues(eigenvalues, source_len);
        list.max_deviation = 0.0;
        Ok(list)
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn max_deviation(&self) -> f64 {
        self.max_deviation
    }

    /// Cyclic gaps `θ_{k+1} - θ_k`, the last one wrapping through 1. They sum to 1.
    pub fn spacings(&self) -> Vec<f64> {
        let n = self.phases.len();
        (0..n)
            .map(
                |k| {
                    if k + 1 < n {
                        self.phases[k + 1] - self.phases[k]
                    } else {
                        self.phases[0] + 1.0 - self.phases[k]
                    }
                },
            )
            .collect()
    }
}

/// All eigenvalues of a Floquet matrix.
pub fn eigenphases(f: &FloquetMatrix) -> Result<EigenphaseList> {
    eigenphases_of(&f.matrix, f.dim())
}

/// All eigenvalues of a unitary matrix, checked against the unitarity and
/// unit-circle tolerances.
pub fn eigenphases_of(matrix: &DenseMatrix, source_len: usize) -> Result<EigenphaseList> {
    let deviation = unitarity_deviation(matrix);
    if !(deviation <= UNITARITY_TOLERANCE) {
        return Err(Error::NotUnitary { deviation });
    }
    let values = matrix.eigenvalues().map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    if let Some((index, z)) = values.iter().enumerate().find(|(_, z)| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Eigensolver(format!("eigenvalue {index} is {z}")));
    }
    let list = EigenphaseList::from_eigenvalues(values, source_len);
    if let Some((index, z)) =
        list.eigenvalues.iter().enumerate().find(|(_, z)| (z.norm() - 1.0).abs() > CIRCLE_TOLERANCE)
    {
        return Err(Error::OffUnitCircle { index, deviation: (z.norm() - 1.0).abs() });
    }
    Ok(list)
}

/// Lee–Yang zeros in `ζ`: couplings → `α_n = e^{-2p_n}` → interleave with
/// zeros → `𝓕_{2N}(π/2)` → eigenphases. Returns `2N` phases.
pub fn lee_yang_zeros(ps: &CouplingSequence) -> Result<EigenphaseList> {
    lee_yang_zeros_capped(ps, EIGENSOLVER_CAP)
}

pub fn lee_yang_zeros_capped(ps: &CouplingSequence, cap: usize) -> Result<EigenphaseList> {
    let dim = 2 * ps.len();
    if dim > cap {
        return Err(Error::SizeCap { what: "Floquet matrix dimension", size: dim, cap });
    }
    let interleaved = interleave_with_zeros(&couplings_to_verblunsky(ps));
    let f = floquet_matrix(&interleaved, std::f64::consts::FRAC_PI_2)?;
    eigenphases_of(&f.matrix, ps.len())
}

/// Zeros of the discriminant on the circle: eigenvalues of `𝓕_N(π/2)` for
/// even `N`; for odd `N`, one representative of each doubled eigenvalue of
/// `𝓕_{2N}(π)`.
pub fn zeros_of_discriminant(alphas: &CoefficientSequence) -> Result<EigenphaseList> {
    let n = alphas.len();
    if n % 2 == 0 {
        if n > EIGENSOLVER_CAP {
            return Err(Error::SizeCap { what: "Floquet matrix dimension", size: n, cap: EIGENSOLVER_CAP });
        }
        let f = floquet_matrix(alphas, std::f64::consts::FRAC_PI_2)?;
        return eigenphases_of(&f.matrix, n);
    }
    if 2 * n > EIGENSOLVER_CAP {
        return Err(Error::SizeCap { what: "Floquet matrix dimension", size: 2 * n, cap: EIGENSOLVER_CAP });
    }
    let f = floquet_for_odd_discriminant(alphas)?;
    let doubled = eigenphases_of(&f.matrix, n)?;
    pair_doubled(&doubled, n)
}

/// Pairs neighbours in cyclic phase order, trying both alignments.
fn pair_doubled(doubled: &EigenphaseList, n: usize) -> Result<EigenphaseList> {
    let z = doubled.eigenvalues();
    let len = z.len();
    let mut best: Option<(f64, usize)> = None;
    for offset in 0..2 {
        let worst =
            (0..n).map(|k| (z[(2 * k + offset) % len] - z[(2 * k + offset + 1) % len]).norm()).fold(0.0, f64::max);
        if best.map_or(true, |(w, _)| worst < w) {
            best = Some((worst, offset));
        }
    }
    let (mismatch, offset) = best.expect("two alignments were tried");
    if mismatch > PAIRING_TOLERANCE {
        return Err(Error::Pairing { mismatch, tolerance: PAIRING_TOLERANCE });
    }
    let singles = (0..n)
        .map(|k| {
            let a = z[(2 * k + offset) % len];
            let b = z[(2 * k + offset + 1) % len];
            let mid = a + b;
            // Rescale the midpoint to the mean modulus of the pair.
            mid / mid.norm() * 0.5 * (a.norm() + b.norm())
        })
        .collect();
    Ok(EigenphaseList::from_eigenvalues(singles, n))
}
