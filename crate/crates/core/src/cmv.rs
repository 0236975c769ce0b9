//! CMV blocks, Floquet CMV matrices and the bandwidth-reducing permutation.
//!
//! Coefficients are indexed as CMV indices `α_0, ..., α_{N-1}`, matching
//! storage order.

use std::ops::Range;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Mat2, ZERO};
use crate::sequence::{rho, CoefficientSequence};

/// `Θ(α) = [[ᾱ, ρ], [ρ, -α]]`.
pub fn theta_block(alpha: Complex64) -> Result<Mat2> {
    let modulus = alpha.norm();
    if !(modulus < 1.0) {
        return Err(Error::CoefficientOutsideDisk { index: 0, modulus });
    }
    let r = Complex64::new(rho(alpha), 0.0);
    Ok(Mat2::new(alpha.conj(), r, r, -alpha))
}

/// Floquet CMV matrix `𝓕_N(θ)` with boundary condition `u_{n+N} = e^{iθ} u_n`.
#[derive(Clone, Debug)]
pub struct FloquetMatrix {
    pub theta: f64,
    pub matrix: DenseMatrix,
}

impl FloquetMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

fn require_even(alphas: &CoefficientSequence, what: &'static str) -> Result<usize> {
    let n = alphas.len();
    if n % 2 != 0 {
        return Err(Error::OddLength { what, len: n });
    }
    Ok(n)
}

/// The factors `𝓛_N(θ) = ⊕ Θ(α_{2j})` and `𝓜_N(θ)`, where `𝓜_N` carries
/// `Θ(α_{2j+1})` on `{2j+1, 2j+2}` and the twisted block
/// `[[-α_{N-1}, e^{-iθ}ρ_{N-1}], [e^{iθ}ρ_{N-1}, ᾱ_{N-1}]]` on the corners.
pub fn floquet_factors(alphas: &CoefficientSequence, theta: f64) -> Result<(DenseMatrix, DenseMatrix)> {
    let n = require_even(alphas, "Floquet matrix")?;
    let a = alphas.as_slice();
    let mut l = DenseMatrix::zeros(n, n);
    let mut m = DenseMatrix::zeros(n, n);
    for j in (0..n).step_by(2) {
        let t = theta_block(a[j])?;
        for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            l[(j + r, j + c)] = t.entry(r, c);
        }
    }
    for j in (1..n - 1).step_by(2) {
        let t = theta_block(a[j])?;
        for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            m[(j + r, j + c)] = t.entry(r, c);
        }
    }
    let last = a[n - 1];
    let r = rho(last);
    m[(0, 0)] += -last;
    m[(0, n - 1)] += Complex64::from_polar(r, -theta);
    m[(n - 1, 0)] += Complex64::from_polar(r, theta);
    m[(n - 1, n - 1)] += last.conj();
    Ok((l, m))
}

/// The eight entries of row pair `(2j, 2j+1)` of the extended CMV matrix, as
/// `(row, unwrapped column, value)`. Columns run over `2j-1 ..= 2j+2`.
fn row_pair(j: i64, alpha: impl Fn(i64) -> Complex64) -> [(i64, i64, Complex64); 8] {
    let (r0, r1) = (2 * j, 2 * j + 1);
    let a_prev = alpha(r0 - 1);
    let a0 = alpha(r0);
    let a1 = alpha(r1);
    let rho_prev = rho(a_prev);
    let rho0 = rho(a0);
    let rho1 = rho(a1);
    let re = |x: f64| Complex64::new(x, 0.0);
    [
        (r0, r0 - 1, a0.conj() * rho_prev),
        (r0, r0, -a0.conj() * a_prev),
        (r0, r1, a1.conj() * rho0),
        (r0, r1 + 1, re(rho1 * rho0)),
        (r1, r0 - 1, re(rho0 * rho_prev)),
        (r1, r0, -rho0 * a_prev),
        (r1, r1, -a1.conj() * a0),
        (r1, r1 + 1, -rho1 * a0),
    ]
}

/// `𝓕_N(θ)` for even `N`.
///
/// `N = 2` and `N = 4` are written out entry by entry; larger sizes use the
/// periodic five-diagonal stencil with corner phases `e^{∓iθ}` on columns
/// that wrap below zero or past `N - 1`.
pub fn floquet_matrix(alphas: &CoefficientSequence, theta: f64) -> Result<FloquetMatrix> {
    let n = require_even(alphas, "Floquet matrix")?;
    let matrix = match n {
        2 => floquet_2(alphas.as_slice(), theta),
        4 => floquet_4(alphas.as_slice(), theta),
        _ => floquet_stencil(alphas.as_slice(), theta),
    };
    Ok(FloquetMatrix { theta, matrix })
}

fn floquet_2(a: &[Complex64], theta: f64) -> DenseMatrix {
    let (a0, a1) = (a[0], a[1]);
    let (r0, r1) = (rho(a0), rho(a1));
    let up = Complex64::from_polar(1.0, theta);
    let down = Complex64::from_polar(1.0, -theta);
    let mut f = DenseMatrix::zeros(2, 2);
    f[(0, 0)] = -a1 * a0.conj() + up * r1 * r0;
    f[(0, 1)] = down * r1 * a0.conj() + a1.conj() * r0;
    f[(1, 0)] = -a1 * r0 - up * r1 * a0;
    f[(1, 1)] = down * r1 * r0 - a1.conj() * a0;
    f
}

fn floquet_4(a: &[Complex64], theta: f64) -> DenseMatrix {
    let [r0, r1, r2, r3] = [rho(a[0]), rho(a[1]), rho(a[2]), rho(a[3])];
    let up = Complex64::from_polar(1.0, theta);
    let down = Complex64::from_polar(1.0, -theta);
    let c = |x: f64| Complex64::new(x, 0.0);
    let rows = [
        [-a[0].conj() * a[3], a[1].conj() * r0, c(r1 * r0), down * a[0].conj() * r3],
        [-a[3] * r0, -a[1].conj() * a[0], -a[0] * r1, down * r0 * r3],
        [up * r3 * r2, a[2].conj() * r1, -a[2].conj() * a[1], a[3].conj() * r2],
        [-up * r3 * a[2], c(r2 * r1), -a[1] * r2, -a[3].conj() * a[2]],
    ];
    DenseMatrix::from_fn(4, 4, |i, j| rows[i][j])
}

fn floquet_stencil(a: &[Complex64], theta: f64) -> DenseMatrix {
    let n = a.len() as i64;
    let up = Complex64::from_polar(1.0, theta);
    let down = Complex64::from_polar(1.0, -theta);
    let alpha = |k: i64| a[k.rem_euclid(n) as usize];
    let mut f = DenseMatrix::zeros(n as usize, n as usize);
    for j in 0..n / 2 {
        for (r, c, v) in row_pair(j, alpha) {
            let (col, phase) = if c < 0 {
                (c + n, down)
            } else if c >= n {
                (c - n, up)
            } else {
                (c, Complex64::new(1.0, 0.0))
            };
            // += keeps coinciding wrapped columns correct for small N.
            f[(r as usize, col as usize)] += phase * v;
        }
    }
    f
}

/// `𝓕_{2N}(π)` for the period-doubled sequence, for odd `N`. Its spectrum is
/// the zero set of `Δ_{2N} + 2 = Δ_N²`, each zero of `T_N` appearing twice.
pub fn floquet_for_odd_discriminant(alphas: &CoefficientSequence) -> Result<FloquetMatrix> {
    if alphas.len() % 2 == 0 {
        return Err(Error::EvenLength { what: "odd-period Floquet construction", len: alphas.len() });
    }
    floquet_matrix(&alphas.doubled(), std::f64::consts::PI)
}

/// Permutation bringing every `𝓕_N(θ)` to bandwidth at most 9.
///
/// Stored 0-based: `map[j] = p(j + 1) - 1`. For `N ≡ 2 (mod 4)` the index
/// `j = N/2` is odd and falls outside the four defining cases; it is sent to
/// `N - 1`, continuing the `2j - 1` branch, which is the only value left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandPermutation {
    map: Vec<usize>,
}

impl BandPermutation {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::OddLength { what: "band permutation", len: n });
        }
        let half = n / 2;
        let map = (1..=n)
            .map(|j| {
                let p = if j % 2 == 1 {
                    if j <= half {
                        2 * j - 1
                    } else {
                        2 * n + 1 - 2 * j
                    }
                } else if j <= half {
                    2 * j
                } else {
                    2 * n + 2 - 2 * j
                };
                p - 1
            })
            .collect();
        Ok(Self { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `p(j)` with `j` 0-based, result 0-based.
    pub fn apply(&self, j: usize) -> usize {
        self.map[j]
    }

    /// `(p(1), ..., p(N))` in the 1-based convention.
    pub fn one_based(&self) -> Vec<usize> {
        self.map.iter().map(|p| p + 1).collect()
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        for &p in &self.map {
            if p >= seen.len() || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        true
    }
}

/// `P F P*` with `P_{i,j} = δ_{i,p(j)}`, i.e. `F̃_{p(j),p(k)} = F_{j,k}`.
pub fn reorder(f: &DenseMatrix, p: &BandPermutation) -> Result<DenseMatrix> {
    let n = f.nrows();
    if p.len() != n || f.ncols() != n {
        return Err(Error::LengthMismatch { expected: n, actual: p.len() });
    }
    let mut out = DenseMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            out[(p.apply(j), p.apply(k))] = f[(j, k)];
        }
    }
    Ok(out)
}

/// Principal submatrix of the extended CMV matrix `ℰ` on rows and columns
/// `window`. Storage entry `i` of `alphas` is `α_{first_index + i}`.
///
/// The window must start at an even index, so that `(0, 0)` of the section
/// is `-ᾱ_s α_{s-1}` for window start `s`, and coefficients
/// `α_{s-1}, ..., α_{e-1}` must be available for window `s..e`.
pub fn extended_cmv_section(alphas: &CoefficientSequence, first_index: i64, window: Range<i64>) -> Result<DenseMatrix> {
    let (s, e) = (window.start, window.end);
    let last = first_index + alphas.len() as i64 - 1;
    if s % 2 != 0 {
        return Err(Error::InvalidParameter(format!("window must start at an even index, got {s}")));
    }
    if e <= s || s - 1 < first_index || e - 1 > last {
        return Err(Error::WindowOutOfRange { start: s, end: e, first: first_index, last });
    }
    let a = alphas.as_slice();
    let alpha = |k: i64| a[(k - first_index) as usize];
    let size = (e - s) as usize;
    let mut out = DenseMatrix::zeros(size, size);
    for j in s / 2..(e + 1) / 2 {
        // Entries needing α_e lie outside the window; clamp keeps the lookup in range.
        let clamped = |k: i64| if k > last { ZERO } else { alpha(k) };
        for (r, c, v) in row_pair(j, clamped) {
            if (s..e).contains(&r) && (s..e).contains(&c) {
                out[((r - s) as usize, (c - s) as usize)] = v;
            }
        }
    }
    Ok(out)
}
