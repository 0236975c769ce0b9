//! Gap detection on finite spectra and spacing histograms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::eigen::EigenphaseList;
use super::ids::{ids_with_reference, Normalization};
use super::labels::{match_label, LabelGroup, LabelMatch};

/// A spacing counts as a gap when it exceeds this multiple of the mean spacing.
pub const DEFAULT_GAP_MULTIPLIER: f64 = 5.0;

/// Arc `(left, right)` between consecutive phases, with `right < left` when
/// the arc wraps through 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub left: f64,
    pub right: f64,
    pub length: f64,
    /// IDS value on the plateau.
    pub label: f64,
    pub label_match: Option<LabelMatch>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    /// Gaps in order of their left endpoint.
    pub gaps: Vec<Gap>,
    pub threshold: f64,
    pub reference: f64,
    pub normalization: Normalization,
    pub total_mass: f64,
}

impl GapReport {
    /// The `k` longest gaps, longest first.
    pub fn widest(&self, k: usize) -> Vec<Gap> {
        let mut sorted = self.gaps.clone();
        sorted.sort_by(|a, b| b.length.total_cmp(&a.length));
        sorted.truncate(k);
        sorted
    }

    /// Matches every label against `group`.
    pub fn annotate(&mut self, group: &LabelGroup, m_max: u32) {
        for gap in &mut self.gaps {
            gap.label_match = Some(match_label(gap.label, group, m_max));
        }
    }
}

/// Gaps with labels measured from phase 0.
pub fn detect_gaps(e: &EigenphaseList, multiplier: f64, normalization: Normalization) -> Result<GapReport> {
    detect_gaps_from(e, multiplier, normalization, 0.0)
}

/// All cyclic spacings longer than `multiplier / #phases`. The gap containing
/// the reference gets label 0.
pub fn detect_gaps_from(
    e: &EigenphaseList,
    multiplier: f64,
    normalization: Normalization,
    reference: f64,
) -> Result<GapReport> {
    let n = e.len();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("gap detection needs at least 2 phases, got {n}")));
    }
    if !(multiplier > 0.0) {
        return Err(Error::InvalidParameter(format!("gap multiplier must be positive, got {multiplier}")));
    }
    let curve = ids_with_reference(e, normalization, reference);
    let reference = curve.reference();
    let threshold = multiplier / n as f64;
    let phases = e.phases();
    let mut gaps = Vec::new();
    for (k, length) in e.spacings().into_iter().enumerate() {
        if length <= threshold {
            continue;
        }
        let left = phases[k];
        let right = phases[(k + 1) % n];
        let offset = (reference - left).rem_euclid(1.0);
        let label = if offset > 0.0 && offset < length { 0.0 } else { curve.value_at(left) };
        gaps.push(Gap { left, right, length, label, label_match: None });
    }
    Ok(GapReport { gaps, threshold, reference, normalization, total_mass: curve.total_mass() })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub left: f64,
    pub right: f64,
    pub count: usize,
    pub proportion: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bins: Vec<HistogramBin>,
    pub total: usize,
}

/// Histogram of the cyclic spacings on `[0, max spacing]`, equal-width bins,
/// last bin closed.
pub fn gap_histogram(e: &EigenphaseList, bins: usize) -> Result<Histogram> {
    if bins == 0 {
        return Err(Error::InvalidParameter("histogram needs at least one bin".into()));
    }
    let spacings = e.spacings();
    let total = spacings.len();
    let top = spacings.iter().copied().fold(0.0, f64::max);
    let width = if top > 0.0 { top / bins as f64 } else { 1.0 / bins as f64 };
    let mut counts = vec![0usize; bins];
    for s in &spacings {
        let i = ((s / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    let bins = counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin {
            left: i as f64 * width,
            right: (i + 1) as f64 * width,
            count,
            proportion: if total == 0 { 0.0 } else { count as f64 / total as f64 },
        })
        .collect();
    Ok(Histogram { bins, total })
}
