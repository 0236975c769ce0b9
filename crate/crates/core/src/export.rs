//! CSV writers. Every float is printed with 17 significant digits so files
//! round-trip exactly.

use std::io::Write;

use crate::error::Result;
use crate::linalg::{nonzero_triplets, DenseMatrix};
use crate::sequence::{CoefficientSequence, CouplingSequence};
use crate::spectral::{EigenphaseList, GapReport, Histogram, IdsCurve};

fn f(x: f64) -> String {
    format!("{x:.16e}")
}

/// `n, re_alpha, im_alpha`.
pub fn write_coefficients<W: Write>(out: &mut W, alphas: &CoefficientSequence) -> Result<()> {
    writeln!(out, "n,re_alpha,im_alpha")?;
    for (n, a) in alphas.iter().enumerate() {
        writeln!(out, "{n},{},{}", f(a.re), f(a.im))?;
    }
    Ok(())
}

/// `n, p_n, alpha_n` with `α_n = e^{-2p_n}`.
pub fn write_couplings<W: Write>(out: &mut W, ps: &CouplingSequence) -> Result<()> {
    writeln!(out, "n,p_n,alpha_n")?;
    for (n, &p) in ps.as_slice().iter().enumerate() {
        writeln!(out, "{n},{},{}", f(p), f((-2.0 * p).exp()))?;
    }
    Ok(())
}

/// `k, theta, re, im, circle_deviation`.
pub fn write_zeros<W: Write>(out: &mut W, e: &EigenphaseList) -> Result<()> {
    writeln!(out, "k,theta,re,im,circle_deviation")?;
    for (k, (t, z)) in e.phases().iter().zip(e.eigenvalues()).enumerate() {
        writeln!(out, "{k},{},{},{},{}", f(*t), f(z.re), f(z.im), f(z.norm() - 1.0))?;
    }
    Ok(())
}

/// `theta, value` at every jump.
pub fn write_ids<W: Write>(out: &mut W, curve: &IdsCurve) -> Result<()> {
    writeln!(out, "theta,value")?;
    for (t, v) in curve.jumps() {
        writeln!(out, "{},{}", f(t), f(v))?;
    }
    Ok(())
}

/// `left_theta, right_theta, length, label, n, m, residual`; the match
/// columns are empty for unannotated gaps.
pub fn write_gaps<W: Write>(out: &mut W, report: &GapReport) -> Result<()> {
    writeln!(out, "left_theta,right_theta,length,label,n,m,residual")?;
    for g in &report.gaps {
        let (n, m, r) = match &g.label_match {
            Some(hit) => (hit.n.to_string(), hit.m.to_string(), f(hit.residual)),
            None => (String::new(), String::new(), String::new()),
        };
        writeln!(out, "{},{},{},{},{n},{m},{r}", f(g.left), f(g.right), f(g.length), f(g.label))?;
    }
    Ok(())
}

/// `bin_left, bin_right, count, proportion`.
pub fn write_histogram<W: Write>(out: &mut W, h: &Histogram) -> Result<()> {
    writeln!(out, "bin_left,bin_right,count,proportion")?;
    for b in &h.bins {
        writeln!(out, "{},{},{},{}", f(b.left), f(b.right), b.count, f(b.proportion))?;
    }
    Ok(())
}

/// `row, col, re, im` for entries with modulus above `tol`.
pub fn write_matrix_triplets<W: Write>(out: &mut W, a: &DenseMatrix, tol: f64) -> Result<()> {
    writeln!(out, "row,col,re,im")?;
    for (i, j, z) in nonzero_triplets(a, tol) {
        writeln!(out, "{i},{j},{},{}", f(z.re), f(z.im))?;
    }
    Ok(())
}
