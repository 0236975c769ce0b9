//! Integrated density of states read off a finite set of zeros.

use serde::{Deserialize, Serialize};

use super::eigen::EigenphaseList;

/// Denominator of the zero-counting measure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Divide by the source length (the Ising chain length for Lee–Yang
    /// zeros, so the total mass is 2). Spelled `paper` in configs.
    #[default]
    #[serde(rename = "paper", alias = "source")]
    Source,
    /// Divide by the number of phases (total mass 1).
    Operator,
}

impl Normalization {
    pub fn denominator(self, e: &EigenphaseList) -> f64 {
        match self {
            Normalization::Source => e.source_len().max(1) as f64,
            Normalization::Operator => e.len().max(1) as f64,
        }
    }
}

/// `θ ↦ #{k : θ_k ∈ (r, θ]} / denominator` on the window `[r, r + 1]`.
///
/// A phase sitting exactly on the reference `r` is counted at the end of the
/// window, never at the start.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdsCurve {
    reference: f64,
    normalization: Normalization,
    denominator: f64,
    /// Offsets `θ_k - r` in `(0, 1]`, ascending.
    offsets: Vec<f64>,
}

/// IDS counted from phase 0, i.e. from `z = 1`.
pub fn ids(e: &EigenphaseList, normalization: Normalization) -> IdsCurve {
    ids_with_reference(e, normalization, 0.0)
}

pub fn ids_with_reference(e: &EigenphaseList, normalization: Normalization, reference: f64) -> IdsCurve {
    let reference = reference.rem_euclid(1.0);
    let mut offsets: Vec<f64> = e
        .phases()
        .iter()
        .map(|&t| {
            let u = (t - reference).rem_euclid(1.0);
            if u <= 0.0 {
                1.0
            } else {
                u
            }
        })
        .collect();
    offsets.sort_by(f64::total_cmp);
    IdsCurve { reference, normalization, denominator: normalization.denominator(e), offsets }
}

impl IdsCurve {
    pub fn reference(&self) -> f64 {
        self.reference
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn denominator(&self) -> f64 {
        self.denominator
    }

    fn offset_of(&self, theta: f64) -> f64 {
        let mut u = theta - self.reference;
        if u < 0.0 {
            u += 1.0;
        }
        u.clamp(0.0, 1.0)
    }

    fn count_at_offset(&self, u: f64) -> usize {
        self.offsets.partition_point(|&v| v <= u)
    }

    /// Value at a phase `θ ∈ [0, 1]`. `θ = r` gives 0; `θ = r + 1` (or `θ = 1`
    /// when `r = 0`) gives the total mass.
    pub fn value_at(&self, theta: f64) -> f64 {
        self.count_at_offset(self.offset_of(theta)) as f64 / self.denominator
    }

    /// `(θ, value just after the jump)` for every phase, with `θ` in `(r, r + 1]`.
    pub fn jumps(&self) -> Vec<(f64, f64)> {
        self.offsets.iter().enumerate().map(|(k, &u)| (self.reference + u, (k + 1) as f64 / self.denominator)).collect()
    }

    pub fn total_mass(&self) -> f64 {
        self.offsets.len() as f64 / self.denominator
    }

    /// `sup_θ |F(θ) - G(θ)|` over the common window. Both curves must share
    /// their reference; both are right-continuous step functions, so the
    /// supremum is attained at a jump.
    pub fn sup_distance(&self, other: &IdsCurve) -> f64 {
        let mut sup: f64 = 0.0;
        for &u in self.offsets.iter().chain(&other.offsets) {
            let a = self.count_at_offset(u) as f64 / self.denominator;
            let b = other.count_at_offset(u) as f64 / other.denominator;
            sup = sup.max((a - b).abs());
        }
        sup
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn list(phases: &[f64], source_len: usize) -> EigenphaseList {
        EigenphaseList::from_phases(phases, source_len).unwrap()
    }

    #[test]
    fn two_phase_example() {
        let curve = ids(&list(&[0.25, 0.75], 2), Normalization::Operator);
        assert_eq!(curve.value_at(0.5), 0.5);
        assert_eq!(curve.value_at(1.0), 1.0);
        assert_eq!(curve.value_at(0.0), 0.0);
        assert_eq!(curve.jumps(), vec![(0.25, 0.5), (0.75, 1.0)]);
    }

    #[test]
    fn paper_normalization_has_mass_two_for_ising_output() {
        let e = list(&[0.1, 0.2, 0.6, 0.9], 2);
        assert_eq!(ids(&e, Normalization::Source).total_mass(), 2.0);
        assert_eq!(ids(&e, Normalization::Operator).total_mass(), 1.0);
    }

    #[test]
    fn free_case_is_linear() {
        let n = 64;
        let phases: Vec<f64> = (0..n).map(|k| (2 * k + 1) as f64 / (2 * n) as f64).collect();
        let curve = ids(&list(&phases, n), Normalization::Operator);
        for k in 0..=100 {
            let t = k as f64 / 100.0;
            assert!((curve.value_at(t) - t).abs() <= 1.0 / n as f64 + 1e-15);
        }
    }

    #[test]
    fn phase_on_reference_counts_last() {
        let curve = ids_with_reference(&list(&[0.0, 0.5], 2), Normalization::Operator, 0.0);
        assert_eq!(curve.value_at(0.0), 0.0);
        assert_eq!(curve.value_at(0.7), 0.5);
        assert_eq!(curve.value_at(1.0), 1.0);
        let shifted = ids_with_reference(&list(&[0.1, 0.5], 2), Normalization::Operator, 0.3);
        assert_eq!(shifted.value_at(0.2), 1.0);
        assert_eq!(shifted.value_at(0.6), 0.5);
        assert_eq!(shifted.value_at(0.05), 0.5);
    }

    #[test]
    fn sup_distance_of_shifted_staircases() {
        let a = ids(&list(&[0.25, 0.75], 2), Normalization::Operator);
        let b = ids(&list(&[0.3, 0.75], 2), Normalization::Operator);
        assert_eq!(a.sup_distance(&b), 0.5);
        assert_eq!(a.sup_distance(&a), 0.0);
    }

    proptest! {
        #[test]
        fn nondecreasing_and_bounded(
            phases in prop::collection::vec(0.0f64..1.0, 1..40),
            r in 0.0f64..1.0,
        ) {
            let e = list(&phases, phases.len());
            let curve = ids_with_reference(&e, Normalization::Operator, r);
            let mut prev = 0.0;
            for k in 0..=200 {
                let v = curve.value_at(k as f64 / 200.0 * (1.0 - r) + r);
                prop_assert!(v >= prev && v <= 1.0);
                prev = v;
            }
            prop_assert_eq!(curve.value_at(r), 0.0);
        }
    }
}
