//! Finite-state Markov chains behind subshifts of finite type.

use rand::Rng;

use crate::error::{Error, Result};

use super::words::SymbolicWord;

/// Target for `‖pP - p‖₁` in [`MarkovChain::stationary`].
pub const STATIONARY_TOLERANCE: f64 = 1e-13;

const ROW_SUM_TOLERANCE: f64 = 1e-12;
const MAX_POWER_STEPS: usize = 1_000_000;

/// Primitive row-stochastic matrix over a labelled alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovChain {
    alphabet: Vec<char>,
    transition: Vec<Vec<f64>>,
}

impl MarkovChain {
    pub fn new(alphabet: Vec<char>, transition: Vec<Vec<f64>>) -> Result<Self> {
        let n = transition.len();
        if n == 0 {
            return Err(Error::EmptySequence);
        }
        if alphabet.len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: alphabet.len() });
        }
        let mut sorted = alphabet.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::InvalidParameter("alphabet letters must be distinct".into()));
        }
        for (i, row) in transition.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotStochastic(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(v) = row.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                return Err(Error::NotStochastic(format!("row {i} has entry {v}")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                return Err(Error::NotStochastic(format!("row {i} sums to {sum}")));
            }
        }
        let chain = Self { alphabet, transition };
        if !chain.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        Ok(chain)
    }

    /// Chain on letters `a, b, c, ...`.
    pub fn with_default_alphabet(transition: Vec<Vec<f64>>) -> Result<Self> {
        let alphabet = (0..transition.len()).map(|i| (b'a' + (i % 26) as u8) as char).collect();
        Self::new(alphabet, transition)
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn transition(&self) -> &[Vec<f64>] {
        &self.transition
    }

    pub fn size(&self) -> usize {
        self.transition.len()
    }

    /// Some power `A^k`, `k ≤ n²`, of the support pattern is strictly positive.
    fn is_primitive(&self) -> bool {
        let n = self.size();
        let support: Vec<Vec<bool>> =
            self.transition.iter().map(|row| row.iter().map(|&v| v > 0.0).collect()).collect();
        let mut power = support.clone();
        for _ in 0..n * n {
            if power.iter().all(|row| row.iter().all(|&b| b)) {
                return true;
            }
            let mut next = vec![vec![false; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if power[i][k] {
                        for j in 0..n {
                            next[i][j] |= support[k][j];
                        }
                    }
                }
            }
            power = next;
        }
        power.iter().all(|row| row.iter().all(|&b| b))
    }

    /// `p ↦ pP`.
    pub fn step(&self, p: &[f64]) -> Vec<f64> {
        let n = self.size();
        let mut out = vec![0.0; n];
        for (i, &pi) in p.iter().enumerate() {
            for (o, t) in out.iter_mut().zip(&self.transition[i]) {
                *o += pi * t;
            }
        }
        out
    }

    /// `‖pP - p‖₁`.
    pub fn stationary_residual(&self, p: &[f64]) -> f64 {
        self.step(p).iter().zip(p).map(|(a, b)| (a - b).abs()).sum()
    }

    /// Unique invariant probability vector, by power iteration from the
    /// uniform vector until the residual drops below [`STATIONARY_TOLERANCE`].
    pub fn stationary(&self) -> Vec<f64> {
        let n = self.size();
        let mut p = vec![1.0 / n as f64; n];
        for _ in 0..MAX_POWER_STEPS {
            let mut next = self.step(&p);
            let total: f64 = next.iter().sum();
            next.iter_mut().for_each(|v| *v /= total);
            let change: f64 = next.iter().zip(&p).map(|(a, b)| (a - b).abs()).sum();
            p = next;
            if change <= STATIONARY_TOLERANCE * 1e-2 {
                break;
            }
        }
        p
    }

    /// `μ(Ξ_u) = p_{u_1} Π P_{u_j u_{j+1}}` for a word given as state indices.
    pub fn cylinder_measure(&self, stationary: &[f64], word: &[usize]) -> f64 {
        let Some((&first, rest)) = word.split_first() else {
            return 1.0;
        };
        let mut measure = stationary[first];
        let mut prev = first;
        for &s in rest {
            measure *= self.transition[prev][s];
            prev = s;
        }
        measure
    }

    /// Measures of all admissible words of length `1..=max_len`, sorted and
    /// deduplicated (relative tolerance `1e-14`).
    pub fn cylinder_measures(&self, max_len: usize, cap: usize) -> Result<Vec<f64>> {
        let stationary = self.stationary();
        let mut out = Vec::new();
        let mut frontier: Vec<(usize, f64)> =
            (0..self.size()).map(|s| (s, stationary[s])).filter(|&(_, m)| m > 0.0).collect();
        for len in 1..=max_len {
            out.extend(frontier.iter().map(|&(_, m)| m));
            if out.len() > cap {
                return Err(Error::SizeCap { what: "cylinder words", size: out.len(), cap });
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for &(last, m) in &frontier {
                for (s, &t) in self.transition[last].iter().enumerate() {
                    if t > 0.0 {
                        next.push((s, m * t));
                    }
                }
            }
            frontier = next;
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs().max(1e-300));
        Ok(out)
    }

    /// Sample path started from the stationary distribution.
    pub fn sample_word<R: Rng + ?Sized>(&self, len: usize, rng: &mut R) -> Result<SymbolicWord> {
        if len == 0 {
            return Err(Error::EmptySequence);
        }
        let stationary = self.stationary();
        let mut state = draw(&stationary, rng);
        let mut letters = Vec::with_capacity(len);
        letters.push(self.alphabet[state]);
        for _ in 1..len {
            state = draw(&self.transition[state], rng);
            letters.push(self.alphabet[state]);
        }
        SymbolicWord::new(letters, &self.alphabet)
    }
}

fn draw<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return i;
        }
    }
    // Rounding can leave acc slightly below one; fall back to the last positive weight.
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn uniform_two_state_chain() {
        let chain = MarkovChain::with_default_alphabet(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        let p = chain.stationary();
        assert!((p[0] - 0.5).abs() <= 1e-15 && (p[1] - 0.5).abs() <= 1e-15);
        assert!((chain.cylinder_measure(&p, &[0, 1]) - 0.25).abs() <= 1e-15);
    }

    #[test]
    fn golden_mean_shift_chain() {
        let chain = MarkovChain::with_default_alphabet(vec![vec![0.0, 1.0], vec![0.5, 0.5]]).unwrap();
        let p = chain.stationary();
        assert!((p[0] - 1.0 / 3.0).abs() <= 1e-15, "{p:?}");
        assert!((p[1] - 2.0 / 3.0).abs() <= 1e-15, "{p:?}");
        assert!((chain.cylinder_measure(&p, &[0]) - 1.0 / 3.0).abs() <= 1e-15);
        // "aa" is forbidden; ab, ba and bb all have measure 1/3.
        let measures = chain.cylinder_measures(2, 100).unwrap();
        assert_eq!(measures.len(), 2, "{measures:?}");
        assert!((measures[0] - 1.0 / 3.0).abs() <= 1e-15 && (measures[1] - 2.0 / 3.0).abs() <= 1e-15);
        assert_eq!(chain.cylinder_measure(&p, &[0, 0]), 0.0);
    }

    #[test]
    fn single_state_chain() {
        let chain = MarkovChain::with_default_alphabet(vec![vec![1.0]]).unwrap();
        assert_eq!(chain.stationary(), vec![1.0]);
        assert_eq!(chain.cylinder_measures(4, 100).unwrap(), vec![1.0]);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(
            MarkovChain::with_default_alphabet(vec![vec![0.5, 0.6], vec![0.5, 0.5]]),
            Err(Error::NotStochastic(_))
        ));
        assert!(matches!(
            MarkovChain::with_default_alphabet(vec![vec![0.0, 1.0], vec![1.0, 0.0]]),
            Err(Error::NotPrimitive)
        ));
        assert!(matches!(
            MarkovChain::with_default_alphabet(vec![vec![1.0, 0.0], vec![0.0, 1.0]]),
            Err(Error::NotPrimitive)
        ));
        assert!(MarkovChain::with_default_alphabet(vec![vec![-0.5, 1.5], vec![0.5, 0.5]]).is_err());
    }

    #[test]
    fn sampled_words_respect_forbidden_transitions() {
        let chain = MarkovChain::with_default_alphabet(vec![vec![0.0, 1.0], vec![0.5, 0.5]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let word = chain.sample_word(2000, &mut rng).unwrap();
        assert!(!word.to_string().contains("aa"));
        let freq = word.count('a') as f64 / 2000.0;
        assert!((freq - 1.0 / 3.0).abs() < 0.05);
    }

    fn random_stochastic(n: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let row: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
                let s: f64 = row.iter().sum();
                row.into_iter().map(|v| v / s).collect()
            })
            .collect()
    }

    proptest! {
        #[test]
        fn stationary_vector_is_invariant(seed in any::<u64>()) {
            let chain = MarkovChain::with_default_alphabet(random_stochastic(5, seed)).unwrap();
            let p = chain.stationary();
            prop_assert!(chain.stationary_residual(&p) <= 1e-12);
            prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-14);
        }
    }
}
