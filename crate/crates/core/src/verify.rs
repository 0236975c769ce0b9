//! Self-checks of the identities the pipeline relies on, collected into a
//! serializable report.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cmv::{floquet_matrix, reorder, BandPermutation};
use crate::error::{Error, Result};
use crate::ising::{partition_bruteforce, partition_via_trace};
use crate::linalg::{max_abs_diff, max_band_offset};
use crate::sequence::{CoefficientSequence, CouplingSequence};
use crate::spectral::{eigenphases_of, lee_yang_zeros};
use crate::szego::{
    det_floquet_identity_check, det_floquet_identity_check_pi, doubling_pair, normalized_discriminant,
    similarity_witness,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub trace: f64,
    pub zeros: f64,
    pub circle: f64,
    pub determinant: f64,
    pub szego_doubling: f64,
    pub discriminant_doubling: f64,
    pub similarity: f64,
    pub band_phases: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            trace: 1e-10,
            zeros: 1e-8,
            circle: 1e-10,
            determinant: 1e-9,
            szego_doubling: 1e-13,
            discriminant_doubling: 1e-10,
            similarity: 1e-13,
            band_phases: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.trace,
            self.zeros,
            self.circle,
            self.determinant,
            self.szego_doubling,
            self.discriminant_doubling,
            self.similarity,
            self.band_phases,
        ];
        if all.iter().all(|t| *t > 0.0 && t.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidParameter("tolerances must be positive and finite".into()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// Worst residual over all cases.
    pub value: f64,
    pub tolerance: f64,
    pub cases: usize,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &str, value: f64, tolerance: f64, cases: usize) -> Self {
        Self { name: name.to_string(), value, tolerance, cases, passed: value <= tolerance }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

fn unit(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))
}

fn random_alphas(rng: &mut ChaCha8Rng, n: usize) -> Result<CoefficientSequence> {
    CoefficientSequence::new(
        (0..n).map(|_| Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..TAU))).collect(),
    )
}

fn random_couplings(rng: &mut ChaCha8Rng, n: usize) -> Result<CouplingSequence> {
    CouplingSequence::new((0..n).map(|_| rng.gen_range(0.01..3.0)).collect())
}

fn trace_check(rng: &mut ChaCha8Rng, tol: f64) -> Result<CheckResult> {
    let cases = 50;
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let n = rng.gen_range(1..=12);
        let ps = random_couplings(rng, n)?;
        let zeta = unit(rng);
        let brute = partition_bruteforce(&ps, zeta)?;
        worst = worst.max((partition_via_trace(&ps, zeta)? - brute).norm() / brute.norm());
    }
    Ok(CheckResult::new("trace_formula", worst, tol, cases))
}

fn zeros_check(rng: &mut ChaCha8Rng, tol: f64) -> Result<CheckResult> {
    let cases = 10;
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let n = rng.gen_range(1..=8);
        let ps = random_couplings(rng, n)?;
        let scale = partition_bruteforce(&ps, Complex64::new(1.0, 0.0))?.norm();
        for &z in lee_yang_zeros(&ps)?.eigenvalues() {
            worst = worst.max(partition_bruteforce(&ps, z)?.norm() / scale);
        }
    }
    Ok(CheckResult::new("zeros_annihilate_partition_function", worst, tol, cases))
}

fn circle_check(rng: &mut ChaCha8Rng, tol: f64) -> Result<CheckResult> {
    let sizes = [16, 64, 200];
    let mut worst: f64 = 0.0;
    for n in sizes {
        worst = worst.max(lee_yang_zeros(&random_couplings(rng, n)?)?.max_deviation());
    }
    Ok(CheckResult::new("unit_circle", worst, tol, sizes.len()))
}

fn determinant_checks(rng: &mut ChaCha8Rng, tol: f64) -> Result<[CheckResult; 2]> {
    let mut half_pi: f64 = 0.0;
    let mut pi: f64 = 0.0;
    let mut cases = 0;
    for n in [2, 4, 8, 16] {
        let alphas = random_alphas(rng, n)?;
        let odd = random_alphas(rng, n - 1)?;
        for _ in 0..50 {
            let z = unit(rng);
            half_pi = half_pi.max(det_floquet_identity_check(&alphas, z)?);
            pi = pi.max(det_floquet_identity_check_pi(&odd, z)?);
            cases += 1;
        }
    }
    Ok([
        CheckResult::new("determinant_identity", half_pi, tol, cases),
        CheckResult::new("determinant_identity_theta_pi", pi, tol, cases),
    ])
}

fn algebraic_checks(rng: &mut ChaCha8Rng, tol: &Tolerances) -> Result<[CheckResult; 3]> {
    let cases = 50;
    let (mut szego, mut disc, mut sim): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..cases {
        let alpha = Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..TAU));
        let (lhs, rhs) = doubling_pair(alpha, unit(rng))?;
        szego = szego.max(lhs.max_abs_diff(&rhs));

        let n = 2 * rng.gen_range(1..=8);
        let alphas = random_alphas(rng, n)?;
        let z = unit(rng);
        let single = normalized_discriminant(&alphas, z)?;
        let double = normalized_discriminant(&alphas.doubled(), z)?;
        disc = disc.max((double - (single * single - 2.0)).norm() / (single.norm_sqr() + 2.0));

        let (lhs, rhs) = similarity_witness(rng.gen_range(1.05..5.0), unit(rng))?;
        sim = sim.max(lhs.max_abs_diff(&rhs));
    }
    Ok([
        CheckResult::new("szego_doubling", szego, tol.szego_doubling, cases),
        CheckResult::new("discriminant_doubling", disc, tol.discriminant_doubling, cases),
        CheckResult::new("similarity_witness", sim, tol.similarity, cases),
    ])
}

fn bandwidth_checks(rng: &mut ChaCha8Rng, tol: f64) -> Result<[CheckResult; 2]> {
    let sizes = [6, 10, 24, 64];
    let mut offset = 0usize;
    let mut phases: f64 = 0.0;
    for n in sizes {
        let f = floquet_matrix(&random_alphas(rng, n)?, rng.gen_range(0.0..TAU))?;
        let g = reorder(&f.matrix, &BandPermutation::new(n)?)?;
        offset = offset.max(max_band_offset(&g, 0.0));
        let a = eigenphases_of(&f.matrix, n)?;
        let b = eigenphases_of(&g, n)?;
        for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
            phases = phases.max((x - y).norm());
        }
    }
    Ok([
        CheckResult::new("bandwidth", offset as f64, 4.0, sizes.len()),
        CheckResult::new("bandwidth_spectrum", phases, tol, sizes.len()),
    ])
}

/// Runs every check on inputs drawn from `seed`.
pub fn run_suite(seed: u64, tol: &Tolerances) -> Result<VerificationReport> {
    tol.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks =
        vec![trace_check(&mut rng, tol.trace)?, zeros_check(&mut rng, tol.zeros)?, circle_check(&mut rng, tol.circle)?];
    checks.extend(determinant_checks(&mut rng, tol.determinant)?);
    checks.extend(algebraic_checks(&mut rng, tol)?);
    checks.extend(bandwidth_checks(&mut rng, tol.band_phases)?);
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport { seed, checks, all_passed })
}

/// Unitarity and unit-circle certificate for one coefficient sequence.
pub fn certify_sequence(alphas: &CoefficientSequence, tol: f64) -> Result<CheckResult> {
    let f = floquet_matrix(alphas, FRAC_PI_2)?;
    let e = eigenphases_of(&f.matrix, alphas.len())?;
    let product = f.matrix.as_ref() * f.matrix.adjoint();
    let identity = crate::linalg::DenseMatrix::identity(alphas.len(), alphas.len());
    let value = e.max_deviation().max(max_abs_diff(&product, &identity));
    Ok(CheckResult::new("sequence_unit_circle", value, tol, 1))
}
