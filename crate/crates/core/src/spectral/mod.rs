//! Eigenphases, Lee–Yang zeros, integrated density of states, gaps and labels.

mod eigen;
mod gaps;
mod ids;
mod labels;

pub use eigen::{
    eigenphases, eigenphases_of, lee_yang_zeros, lee_yang_zeros_capped, phase_of, zeros_of_discriminant,
    EigenphaseList, CIRCLE_TOLERANCE, EIGENSOLVER_CAP, PAIRING_TOLERANCE, UNITARITY_TOLERANCE,
};
pub use gaps::{
    detect_gaps, detect_gaps_from, gap_histogram, Gap, GapReport, Histogram, HistogramBin, DEFAULT_GAP_MULTIPLIER,
};
pub use ids::{ids, ids_with_reference, IdsCurve, Normalization};
pub use labels::{markov_label_group, match_label, LabelGroup, LabelMatch, MarkovLabels};
