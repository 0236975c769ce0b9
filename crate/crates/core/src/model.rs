//! Model descriptions and the sequences they generate.
//!
//! Coupling models (Fibonacci, substitution, subshift of finite type, explicit
//! couplings) go through the Ising pipeline; torus models (cat map, skew
//! shift, unitary almost-Mathieu) and explicit coefficients go straight to
//! the discriminant.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    cat_map_orbit, couplings_from_word, fibonacci_word, sample_orbit, skew_shift_orbit, substitution_fixed_point,
    uamo_coefficients, CosineSampler, MarkovChain, PrecisionPolicy, QuadraticSurd, Rules, SeedValue, TorusPoint,
};
use crate::error::{Error, Result};
use crate::ising::couplings_to_verblunsky;
use crate::sequence::{CoefficientSequence, CouplingSequence};
use crate::spectral::{lee_yang_zeros, markov_label_group, zeros_of_discriminant, EigenphaseList, LabelGroup};

fn default_fibonacci_couplings() -> BTreeMap<char, f64> {
    BTreeMap::from([('a', 2.0 / 3.0), ('b', 0.01)])
}

fn default_label_word_len() -> usize {
    3
}

fn default_cat_x() -> SeedValue {
    QuadraticSurd::inv_sqrt(2).into()
}

fn default_cat_y() -> SeedValue {
    QuadraticSurd::inv_sqrt(3).into()
}

fn default_gamma() -> SeedValue {
    QuadraticSurd::inv_sqrt(2).into()
}

fn default_zero() -> SeedValue {
    SeedValue::Float(0.0)
}

fn default_lambda1() -> f64 {
    0.9
}

fn default_lambda2() -> f64 {
    std::f64::consts::FRAC_1_SQRT_2
}

/// What to generate. Serialized with a `kind` tag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelSpec {
    /// Couplings along `u_k = S^k(a)`, `|u_k| = F_{k+2}`.
    Fibonacci {
        k: u32,
        #[serde(default = "default_fibonacci_couplings")]
        couplings: BTreeMap<char, f64>,
    },
    /// Couplings along the first `length` letters of a substitution fixed point.
    Substitution { rules: Rules, seed: char, length: usize, couplings: BTreeMap<char, f64> },
    /// Couplings along a Markov sample path; `seed` drives the sampler.
    Sft {
        transition: Vec<Vec<f64>>,
        #[serde(default)]
        alphabet: Option<Vec<char>>,
        length: usize,
        couplings: BTreeMap<char, f64>,
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_label_word_len")]
        label_word_len: usize,
    },
    /// `α_k = f(T_cat^k(x, y))`.
    CatMap {
        length: usize,
        #[serde(default = "default_cat_x")]
        x: SeedValue,
        #[serde(default = "default_cat_y")]
        y: SeedValue,
        #[serde(default = "CosineSampler::shifted")]
        sampler: CosineSampler,
        #[serde(default)]
        precision_bits: Option<u32>,
    },
    /// `α_k = f(T_γ^k(x, y))`; `x` defaults to `γ/2`, `y` to 0.
    SkewShift {
        length: usize,
        #[serde(default = "default_gamma")]
        gamma: SeedValue,
        #[serde(default)]
        x: Option<SeedValue>,
        #[serde(default = "default_zero")]
        y: SeedValue,
        #[serde(default = "CosineSampler::shifted")]
        sampler: CosineSampler,
        #[serde(default)]
        precision_bits: Option<u32>,
    },
    /// Unitary almost-Mathieu coefficients.
    Uamo {
        length: usize,
        #[serde(default = "default_lambda1")]
        lambda1: f64,
        #[serde(default = "default_lambda2")]
        lambda2: f64,
        #[serde(default = "default_gamma")]
        gamma: SeedValue,
        #[serde(default = "default_zero")]
        x: SeedValue,
        #[serde(default)]
        precision_bits: Option<u32>,
    },
    /// Explicit couplings (Ising pipeline) or explicit coefficients, not both.
    ExplicitList {
        #[serde(default)]
        couplings: Option<Vec<f64>>,
        #[serde(default)]
        alphas: Option<Vec<Complex64>>,
    },
}

/// Which operator the zeros come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    /// Couplings → interleaved coefficients → `𝓕_{2N}(π/2)`.
    Ising,
    /// Coefficients → zeros of `Δ_N`.
    Cmv,
}

/// A generated sequence, ready for the spectral stage.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedModel {
    pub couplings: Option<CouplingSequence>,
    /// `α_n` (for coupling models, `e^{-2p_n}` before interleaving).
    pub alphas: CoefficientSequence,
    pub pipeline: Pipeline,
    pub label_group: Option<LabelGroup>,
    /// Precision floor used for the orbit, when the model has one.
    pub precision_bits: Option<u32>,
}

impl GeneratedModel {
    fn from_couplings(ps: CouplingSequence, label_group: Option<LabelGroup>) -> Self {
        Self {
            alphas: couplings_to_verblunsky(&ps),
            couplings: Some(ps),
            pipeline: Pipeline::Ising,
            label_group,
            precision_bits: None,
        }
    }

    /// Lee–Yang zeros (Ising pipeline) or discriminant zeros (CMV pipeline).
    pub fn zeros(&self) -> Result<EigenphaseList> {
        match (&self.couplings, self.pipeline) {
            (Some(ps), Pipeline::Ising) => lee_yang_zeros(ps),
            _ => zeros_of_discriminant(&self.alphas),
        }
    }
}

fn to_fraction(value: &SeedValue, bits: u32) -> Result<crate::dynamics::HighPrecisionFraction> {
    value.to_fraction(bits)
}

fn half(value: &SeedValue) -> SeedValue {
    match value {
        SeedValue::Surd(s) => SeedValue::Surd(s.divided_by(2)),
        SeedValue::Float(x) => SeedValue::Float(x / 2.0),
    }
}

fn check_length(length: usize) -> Result<()> {
    if length == 0 {
        Err(Error::EmptySequence)
    } else {
        Ok(())
    }
}

impl ModelSpec {
    /// Same model with its size parameter replaced (`k` for Fibonacci, the
    /// sequence length otherwise).
    pub fn with_size(mut self, n: usize) -> Result<Self> {
        match &mut self {
            ModelSpec::Fibonacci { k, .. } => {
                *k = u32::try_from(n).map_err(|_| Error::InvalidParameter(format!("k = {n} is too large")))?;
            }
            ModelSpec::Substitution { length, .. }
            | ModelSpec::Sft { length, .. }
            | ModelSpec::CatMap { length, .. }
            | ModelSpec::SkewShift { length, .. }
            | ModelSpec::Uamo { length, .. } => *length = n,
            ModelSpec::ExplicitList { .. } => {
                return Err(Error::InvalidParameter("explicit lists have a fixed size".into()));
            }
        }
        Ok(self)
    }

    /// Same model with a precision request, where the model has one.
    pub fn with_precision(mut self, bits: Option<u32>) -> Self {
        if bits.is_some() {
            if let ModelSpec::CatMap { precision_bits, .. }
            | ModelSpec::SkewShift { precision_bits, .. }
            | ModelSpec::Uamo { precision_bits, .. } = &mut self
            {
                *precision_bits = bits;
            }
        }
        self
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ModelSpec::Fibonacci { .. } => "fibonacci",
            ModelSpec::Substitution { .. } => "substitution",
            ModelSpec::Sft { .. } => "sft",
            ModelSpec::CatMap { .. } => "cat-map",
            ModelSpec::SkewShift { .. } => "skew-shift",
            ModelSpec::Uamo { .. } => "uamo",
            ModelSpec::ExplicitList { .. } => "explicit-list",
        }
    }

    /// Precision ceiling taken from the environment.
    pub fn generate(&self) -> Result<GeneratedModel> {
        self.generate_with(&PrecisionPolicy::from_env()?)
    }

    pub fn generate_with(&self, policy: &PrecisionPolicy) -> Result<GeneratedModel> {
        match self {
            ModelSpec::Fibonacci { k, couplings } => {
                let word = fibonacci_word(*k)?;
                let ps = couplings_from_word(&word, couplings)?;
                Ok(GeneratedModel::from_couplings(ps, Some(LabelGroup::fibonacci())))
            }
            ModelSpec::Substitution { rules, seed, length, couplings } => {
                let word = substitution_fixed_point(rules, *seed, *length)?;
                Ok(GeneratedModel::from_couplings(couplings_from_word(&word, couplings)?, None))
            }
            ModelSpec::Sft { transition, alphabet, length, couplings, seed, label_word_len } => {
                check_length(*length)?;
                let chain = match alphabet {
                    Some(letters) => MarkovChain::new(letters.clone(), transition.clone())?,
                    None => MarkovChain::with_default_alphabet(transition.clone())?,
                };
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let word = chain.sample_word(*length, &mut rng)?;
                let labels = markov_label_group(&chain, *label_word_len)?;
                Ok(GeneratedModel::from_couplings(couplings_from_word(&word, couplings)?, Some(labels.group)))
            }
            ModelSpec::CatMap { length, x, y, sampler, precision_bits } => {
                check_length(*length)?;
                let sampler = CosineSampler::new(sampler.offset, sampler.amplitude)?;
                let policy = policy.with_request(*precision_bits);
                let bits = policy.cat_map_bits(*length as u64 - 1)?;
                let p = TorusPoint::new(to_fraction(x, bits)?, to_fraction(y, bits)?);
                let orbit = cat_map_orbit(&p, *length, &policy)?;
                Ok(GeneratedModel {
                    couplings: None,
                    alphas: sample_orbit(&orbit, &sampler)?,
                    pipeline: Pipeline::Cmv,
                    label_group: Some(LabelGroup::Integers),
                    precision_bits: Some(bits),
                })
            }
            ModelSpec::SkewShift { length, gamma, x, y, sampler, precision_bits } => {
                check_length(*length)?;
                let sampler = CosineSampler::new(sampler.offset, sampler.amplitude)?;
                let policy = policy.with_request(*precision_bits);
                let bits = policy.skew_shift_bits(*length as u64 - 1)?;
                let x = x.unwrap_or_else(|| half(gamma));
                let g = to_fraction(gamma, bits)?;
                let p = TorusPoint::new(to_fraction(&x, bits)?, to_fraction(y, bits)?);
                let orbit = skew_shift_orbit(&g, &p, *length, &policy)?;
                Ok(GeneratedModel {
                    couplings: None,
                    alphas: sample_orbit(&orbit, &sampler)?,
                    pipeline: Pipeline::Cmv,
                    label_group: Some(LabelGroup::Rank2 { generator: gamma.approx() }),
                    precision_bits: Some(bits),
                })
            }
            ModelSpec::Uamo { length, lambda1, lambda2, gamma, x, precision_bits } => {
                check_length(*length)?;
                let policy = policy.with_request(*precision_bits);
                let bits = policy.skew_shift_bits(*length as u64)?;
                let alphas =
                    uamo_coefficients(*lambda1, *lambda2, &to_fraction(gamma, bits)?, &to_fraction(x, bits)?, *length)?;
                Ok(GeneratedModel {
                    couplings: None,
                    alphas,
                    pipeline: Pipeline::Cmv,
                    label_group: None,
                    precision_bits: Some(bits),
                })
            }
            ModelSpec::ExplicitList { couplings, alphas } => match (couplings, alphas) {
                (Some(ps), None) => Ok(GeneratedModel::from_couplings(CouplingSequence::new(ps.clone())?, None)),
                (None, Some(a)) => Ok(GeneratedModel {
                    couplings: None,
                    alphas: CoefficientSequence::new(a.clone())?,
                    pipeline: Pipeline::Cmv,
                    label_group: None,
                    precision_bits: None,
                }),
                _ => Err(Error::InvalidParameter("explicit-list needs exactly one of `couplings` and `alphas`".into())),
            },
        }
    }
}
