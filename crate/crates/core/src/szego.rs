//! Szegő transfer matrices, discriminants, and the identities tying them to
//! Ising transfer matrices and Floquet determinants.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmv::floquet_matrix;
use crate::error::{Error, Result};
use crate::ising::{couplings_to_verblunsky, interleave_with_zeros, ising_transfer};
use crate::linalg::{shifted_determinant, Mat2, ONE, ZERO};
use crate::sequence::{rho, CoefficientSequence, CouplingSequence};

/// `S(α, z) = (1 - |α|²)^{-1/2} [[z, -ᾱ], [-αz, 1]]` with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SzegoMatrix {
    pub alpha: Complex64,
    pub z: Complex64,
    pub matrix: Mat2,
}

pub fn szego_matrix(alpha: Complex64, z: Complex64) -> Result<SzegoMatrix> {
    let modulus = alpha.norm();
    if !(modulus < 1.0) {
        return Err(Error::CoefficientOutsideDisk { index: 0, modulus });
    }
    Ok(SzegoMatrix { alpha, z, matrix: szego_unchecked(alpha, z) })
}

fn szego_unchecked(alpha: Complex64, z: Complex64) -> Mat2 {
    let scale = Complex64::new(1.0 / rho(alpha), 0.0);
    Mat2::new(z, -alpha.conj(), -alpha * z, ONE).scale(scale)
}

/// `S(α_{N-1}, z) ··· S(α_0, z)`, accumulated right to left.
pub fn transfer_product(alphas: &CoefficientSequence, z: Complex64) -> Result<Mat2> {
    if z == ZERO {
        return Err(Error::ZeroSpectralParameter);
    }
    Ok(alphas.iter().fold(Mat2::IDENTITY, |acc, a| szego_unchecked(a, z) * acc))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscriminantFlavor {
    /// `T_N(z) = Tr Π S(α_n, z)`, any `N`.
    Unnormalized,
    /// `Δ_N(z) = z^{-N/2} T_N(z)`, even `N` only.
    Normalized,
    /// `D̃_N(z)` over the zero-interleaved sequence.
    Tilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscriminantValue {
    pub flavor: DiscriminantFlavor,
    pub value: Complex64,
}

/// `T_N` or `Δ_N`; the tilde flavor is only produced by [`tilde_discriminant`].
pub fn discriminant(
    alphas: &CoefficientSequence,
    z: Complex64,
    flavor: DiscriminantFlavor,
) -> Result<DiscriminantValue> {
    let trace = transfer_product(alphas, z)?.trace();
    let n = alphas.len();
    let value = match flavor {
        DiscriminantFlavor::Unnormalized => trace,
        DiscriminantFlavor::Normalized => {
            if n % 2 != 0 {
                return Err(Error::OddLength { what: "normalized discriminant", len: n });
            }
            trace * z.powi(-((n / 2) as i32))
        }
        DiscriminantFlavor::Tilde => {
            return Err(Error::InvalidParameter("the tilde discriminant is built from couplings".into()))
        }
    };
    Ok(DiscriminantValue { flavor, value })
}

/// `Δ_N(z)` for even `N`.
pub fn normalized_discriminant(alphas: &CoefficientSequence, z: Complex64) -> Result<Complex64> {
    Ok(discriminant(alphas, z, DiscriminantFlavor::Normalized)?.value)
}

/// `D̃_N(z) = Tr[S(β_N^{-2}, z) S(0, z) ··· S(β_1^{-2}, z) S(0, z)]`.
pub fn tilde_discriminant(ps: &CouplingSequence, z: Complex64) -> Result<DiscriminantValue> {
    let interleaved = interleave_with_zeros(&couplings_to_verblunsky(ps));
    let value = transfer_product(&interleaved, z)?.trace();
    Ok(DiscriminantValue { flavor: DiscriminantFlavor::Tilde, value })
}

/// `S(α, z) S(0, z)` and `S(α, z²)`.
pub fn doubling_pair(alpha: Complex64, z: Complex64) -> Result<(Mat2, Mat2)> {
    let lhs = szego_matrix(alpha, z)?.matrix * szego_matrix(ZERO, z)?.matrix;
    let rhs = szego_matrix(alpha, z * z)?.matrix;
    Ok((lhs, rhs))
}

/// Both sides of
/// `diag(-1, ζ) M(β, ζ) diag(-1, 1/ζ) = (β/ζ) √(1 - β^{-4}) S(β^{-2}, ζ²)`.
///
/// The scalar is `(β/ζ) ρ(β^{-2})`: it absorbs the normalization of `S`.
pub fn similarity_witness(beta: f64, zeta: Complex64) -> Result<(Mat2, Mat2)> {
    if !(beta > 1.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("similarity witness needs beta > 1, got {beta}")));
    }
    if zeta == ZERO {
        return Err(Error::ZeroFugacity);
    }
    let m = ising_transfer(beta, zeta)?;
    let lhs = Mat2::diag(-ONE, zeta) * m * Mat2::diag(-ONE, 1.0 / zeta);
    let alpha = Complex64::new(beta.powi(-2), 0.0);
    let scalar = beta / zeta * (1.0 - beta.powi(-4)).sqrt();
    let rhs = szego_matrix(alpha, zeta * zeta)?.matrix.scale(scalar);
    Ok((lhs, rhs))
}

/// Relative residual of `det(z - 𝓕_N(θ)) = z^{N/2} Π ρ_j (Δ_N(z) - 2 cos θ)`.
///
/// The residual is scaled by `|z|^{N/2} Π ρ_j (|Δ_N(z)| + 2)`, the size of the
/// right-hand side before cancellation.
pub fn det_identity_residual(alphas: &CoefficientSequence, theta: f64, z: Complex64) -> Result<f64> {
    let n = alphas.len();
    if n % 2 != 0 {
        return Err(Error::OddLength { what: "determinant identity", len: n });
    }
    if z == ZERO {
        return Err(Error::ZeroSpectralParameter);
    }
    let f = floquet_matrix(alphas, theta)?;
    let lhs = shifted_determinant(&f.matrix, z);
    let delta = normalized_discriminant(alphas, z)?;
    let prefactor = z.powi((n / 2) as i32) * alphas.rho_product();
    let rhs = prefactor * (delta - 2.0 * theta.cos());
    let scale = prefactor.norm() * (delta.norm() + 2.0);
    Ok((lhs - rhs).norm() / scale)
}

/// `det(z - 𝓕_N(π/2))` against `z^{N/2} Π ρ_j Δ_N(z)`.
pub fn det_floquet_identity_check(alphas: &CoefficientSequence, z: Complex64) -> Result<f64> {
    det_identity_residual(alphas, std::f64::consts::FRAC_PI_2, z)
}

/// `det(z - 𝓕_{2N}(π))` on the doubled sequence against
/// `z^N Π_{2N} ρ_j (Δ_{2N}(z) + 2)`, for any `N`.
pub fn det_floquet_identity_check_pi(alphas: &CoefficientSequence, z: Complex64) -> Result<f64> {
    det_identity_residual(&alphas.doubled(), std::f64::consts::PI, z)
}

/// `|Δ_{2N}(z) - (Δ_N(z)² - 2)|` for even `N`, using the doubled sequence.
pub fn doubling_residual(alphas: &CoefficientSequence, z: Complex64) -> Result<f64> {
    let single = normalized_discriminant(alphas, z)?;
    let double = normalized_discriminant(&alphas.doubled(), z)?;
    Ok((double - (single * single - 2.0)).norm())
}
