//! Small complex matrices and dense-matrix utilities.

use std::collections::HashMap;
use std::ops::Mul;

use faer::Mat;
use num_complex::Complex64;

/// Dense complex matrix used throughout the crate.
pub type DenseMatrix = Mat<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// 2×2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Mat2([[a, ZERO], [ZERO, d]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Mat2([[s * m[0][0], s * m[0][1]], [s * m[1][0], s * m[1][1]]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.0[i][j]
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])
    }
}

/// `max |(A* A - I)_{jk}|`.
///
/// Accumulates `A* A` over the nonzero entries only, so the cost is linear in
/// the dimension for the sparse matrices built here.
pub fn unitarity_deviation(a: &DenseMatrix) -> f64 {
    let n = a.ncols();
    let mut gram: HashMap<(usize, usize), Complex64> = HashMap::new();
    for r in 0..a.nrows() {
        let row: Vec<(usize, Complex64)> = (0..n).map(|k| (k, a[(r, k)])).filter(|(_, v)| *v != ZERO).collect();
        for &(j, vj) in &row {
            for &(k, vk) in &row {
                *gram.entry((j, k)).or_insert(ZERO) += vj.conj() * vk;
            }
        }
    }
    let mut worst: f64 = 0.0;
    for j in 0..n {
        let diag = gram.get(&(j, j)).copied().unwrap_or(ZERO);
        worst = worst.max((diag - ONE).norm());
    }
    for (&(j, k), v) in &gram {
        if j != k {
            worst = worst.max(v.norm());
        }
    }
    worst
}

/// Largest `|j - k|` over entries with modulus above `tol`; zero for an empty
/// or diagonal matrix.
pub fn max_band_offset(a: &DenseMatrix, tol: f64) -> usize {
    let mut worst = 0;
    for j in 0..a.nrows() {
        for k in 0..a.ncols() {
            if a[(j, k)].norm() > tol {
                worst = worst.max(j.abs_diff(k));
            }
        }
    }
    worst
}

/// Nonzero entries as `(row, col, value)`, row-major.
pub fn nonzero_triplets(a: &DenseMatrix, tol: f64) -> Vec<(usize, usize, Complex64)> {
    let mut out = Vec::new();
    for j in 0..a.nrows() {
        for k in 0..a.ncols() {
            let v = a[(j, k)];
            if v.norm() > tol {
                out.push((j, k, v));
            }
        }
    }
    out
}

pub fn max_abs_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut worst: f64 = 0.0;
    for j in 0..a.nrows() {
        for k in 0..a.ncols() {
            worst = worst.max((a[(j, k)] - b[(j, k)]).norm());
        }
    }
    worst
}

/// `det(z I - A)`.
pub fn shifted_determinant(a: &DenseMatrix, z: Complex64) -> Complex64 {
    let n = a.nrows();
    let shifted = Mat::from_fn(n, n, |j, k| if j == k { z - a[(j, k)] } else { -a[(j, k)] });
    shifted.as_ref().determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mat2_product_and_invariants() {
        let a = Mat2::new(c(1.0, 2.0), c(0.5, 0.0), c(0.0, -1.0), c(3.0, 0.0));
        let b = Mat2::new(c(0.0, 1.0), c(2.0, 0.0), c(1.0, 1.0), c(-1.0, 0.0));
        let ab = a * b;
        assert!((ab.det() - a.det() * b.det()).norm() < 1e-14);
        assert!(((a * Mat2::IDENTITY).max_abs_diff(&a)) == 0.0);
        assert!(((a * b).trace() - (b * a).trace()).norm() < 1e-14);
    }

    #[test]
    fn determinant_of_diagonal_shift() {
        let a = Mat::from_fn(3, 3, |j, k| if j == k { c(j as f64, 0.0) } else { ZERO });
        let d = shifted_determinant(&a, c(5.0, 0.0));
        assert!((d - c(5.0 * 4.0 * 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn band_offset_of_permutation() {
        let a = Mat::from_fn(4, 4, |j, k| if k == 3 - j { ONE } else { ZERO });
        assert_eq!(max_band_offset(&a, 0.0), 3);
        assert_eq!(nonzero_triplets(&a, 0.0).len(), 4);
        assert!(unitarity_deviation(&a) < 1e-15);
    }
}
