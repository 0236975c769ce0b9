//! Gap-label groups and nearest-element matching.

use serde::{Deserialize, Serialize};

use crate::dynamics::MarkovChain;
use crate::error::Result;

const TIE_TOLERANCE: f64 = 1e-14;
const MARKOV_WORD_CAP: usize = 1 << 20;

/// A countable subgroup of ℝ containing ℤ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LabelGroup {
    Integers,
    /// `ℤ + γℤ`.
    Rank2 {
        generator: f64,
    },
    /// `ℤ + g_1ℤ + ... + g_kℤ`, matched one generator at a time.
    Generated {
        generators: Vec<f64>,
    },
}

impl LabelGroup {
    /// `ℤ + αℤ` with `α = (√5 - 1)/2`.
    pub fn fibonacci() -> Self {
        LabelGroup::Rank2 { generator: (5f64.sqrt() - 1.0) / 2.0 }
    }
}

/// `label ≈ n + m·g`, with `g` the generator at `generator_index` (`None` when
/// `m = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelMatch {
    pub n: i64,
    pub m: i64,
    pub residual: f64,
    pub generator_index: Option<usize>,
}

impl LabelMatch {
    fn better_than(&self, other: &LabelMatch) -> bool {
        if self.residual < other.residual - TIE_TOLERANCE {
            return true;
        }
        if self.residual > other.residual + TIE_TOLERANCE {
            return false;
        }
        (self.m.abs(), self.n.abs()) < (other.m.abs(), other.n.abs())
    }
}

fn nearest_integer(label: f64) -> LabelMatch {
    let n = label.round();
    LabelMatch { n: n as i64, m: 0, residual: (label - n).abs(), generator_index: None }
}

fn best_for_generator(label: f64, g: f64, index: usize, m_max: u32, best: &mut LabelMatch) {
    let m_max = i64::from(m_max);
    for m in -m_max..=m_max {
        let x = label - m as f64 * g;
        for n in [x.floor(), x.ceil()] {
            let candidate =
                LabelMatch { n: n as i64, m, residual: (x - n).abs(), generator_index: (m != 0).then_some(index) };
            if candidate.better_than(best) {
                *best = candidate;
            }
        }
    }
}

/// Element `n + m·g` of `group` nearest to `label` with `|m| ≤ m_max`. Ties
/// (within 1e-14) go to smaller `|m|`, then smaller `|n|`.
pub fn match_label(label: f64, group: &LabelGroup, m_max: u32) -> LabelMatch {
    let mut best = nearest_integer(label);
    match group {
        LabelGroup::Integers => {}
        LabelGroup::Rank2 { generator } => best_for_generator(label, *generator, 0, m_max, &mut best),
        LabelGroup::Generated { generators } => {
            for (i, &g) in generators.iter().enumerate() {
                best_for_generator(label, g, i, m_max, &mut best);
            }
        }
    }
    best
}

/// Stationary vector of a Markov chain with its cylinder-measure label group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovLabels {
    pub stationary: Vec<f64>,
    /// `‖pP - p‖₁`.
    pub residual: f64,
    pub group: LabelGroup,
}

/// Generators `{μ(Ξ_u) : u admissible, |u| ≤ max_word_len}`, deduplicated.
pub fn markov_label_group(chain: &MarkovChain, max_word_len: usize) -> Result<MarkovLabels> {
    let stationary = chain.stationary();
    let residual = chain.stationary_residual(&stationary);
    let generators = chain.cylinder_measures(max_word_len, MARKOV_WORD_CAP)?;
    Ok(MarkovLabels { stationary, residual, group: LabelGroup::Generated { generators } })
}
