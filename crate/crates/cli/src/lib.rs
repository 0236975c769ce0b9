//! Run configuration and subcommand implementations for the `leeyang` binary.

use std::f64::consts::FRAC_PI_2;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use leeyang::cmv::{floquet_matrix, reorder, BandPermutation};
use leeyang::export;
use leeyang::ising::interleave_with_zeros;
use leeyang::linalg::max_band_offset;
use leeyang::model::{GeneratedModel, ModelSpec, Pipeline};
use leeyang::spectral::{detect_gaps_from, gap_histogram, ids_with_reference, EigenphaseList, GapReport, LabelGroup};
use leeyang::verify::{certify_sequence, run_suite, Tolerances, VerificationReport};
use leeyang::Normalization;

/// Everything a run needs. Command-line flags override fields read from a
/// config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: Option<ModelSpec>,
    /// Stage to run when the config is used on its own.
    pub stage: Option<Stage>,
    pub out: PathBuf,
    pub tolerances: Tolerances,
    pub normalization: Normalization,
    /// Phase from which IDS values and gap labels are counted.
    pub reference: f64,
    pub gap_multiplier: f64,
    pub m_max: u32,
    pub bins: usize,
    /// Quasi-momentum for the bandwidth pictures.
    pub theta: f64,
    pub seed: u64,
    /// Overrides the model's default label group.
    pub label_group: Option<LabelGroup>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: None,
            stage: None,
            out: PathBuf::from("out"),
            tolerances: Tolerances::default(),
            normalization: Normalization::Source,
            reference: 0.0,
            gap_multiplier: leeyang::spectral::DEFAULT_GAP_MULTIPLIER,
            m_max: 30,
            bins: 20,
            theta: FRAC_PI_2,
            seed: 42,
            label_group: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Coeffs,
    Zeros,
    Ids,
    Gaps,
    Labels,
    Hist,
    Bandwidth,
    Verify,
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        if !(self.gap_multiplier > 0.0 && self.gap_multiplier.is_finite()) {
            bail!(leeyang::Error::InvalidParameter(format!(
                "gap multiplier must be positive, got {}",
                self.gap_multiplier
            )));
        }
        if self.bins == 0 {
            bail!(leeyang::Error::InvalidParameter("bins must be at least 1".into()));
        }
        if !self.reference.is_finite() || !self.theta.is_finite() {
            bail!(leeyang::Error::InvalidParameter("reference and theta must be finite".into()));
        }
        Ok(())
    }

    fn model(&self) -> Result<&ModelSpec> {
        self.model.as_ref().ok_or_else(|| leeyang::Error::InvalidParameter("no model given".into()).into())
    }

    fn generate(&self) -> Result<GeneratedModel> {
        Ok(self.model()?.generate()?)
    }
}

/// Default description of a model kind, sized by `n` when given.
pub fn default_model(kind: &str, n: Option<usize>) -> Result<ModelSpec> {
    let json = match kind {
        "fibonacci" => r#"{"kind":"fibonacci","k":10}"#,
        "cat-map" => r#"{"kind":"cat-map","length":100}"#,
        "skew-shift" => r#"{"kind":"skew-shift","length":100}"#,
        "uamo" => r#"{"kind":"uamo","length":100}"#,
        "substitution" | "sft" | "explicit-list" => {
            bail!(leeyang::Error::InvalidParameter(format!(
                "model kind `{kind}` needs parameters; pass a JSON description"
            )))
        }
        other => bail!(leeyang::Error::InvalidParameter(format!("unknown model kind `{other}`"))),
    };
    let spec: ModelSpec = serde_json::from_str(json)?;
    Ok(match n {
        Some(n) => spec.with_size(n)?,
        None => spec,
    })
}

/// Parses `--model`: a kind name, or an inline JSON description.
pub fn parse_model(arg: &str, n: Option<usize>) -> Result<ModelSpec> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        let spec: ModelSpec = serde_json::from_str(trimmed)?;
        return Ok(match n {
            Some(n) => spec.with_size(n)?,
            None => spec,
        });
    }
    default_model(arg, n)
}

/// Paths written by one command.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Written {
    pub files: Vec<PathBuf>,
    /// Overall verdict for `verify`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_passed: Option<bool>,
}

fn create(dir: &Path, name: &str, written: &mut Written) -> Result<BufWriter<File>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    written.files.push(path);
    Ok(BufWriter::new(file))
}

fn finish(mut w: BufWriter<File>) -> Result<()> {
    w.flush()?;
    Ok(())
}

fn zeros_of(config: &RunConfig) -> Result<(GeneratedModel, EigenphaseList)> {
    let model = config.generate()?;
    let zeros = model.zeros()?;
    Ok((model, zeros))
}

fn gap_report(
    config: &RunConfig,
    model: &GeneratedModel,
    zeros: &EigenphaseList,
) -> Result<(GapReport, Option<LabelGroup>)> {
    let mut report = detect_gaps_from(zeros, config.gap_multiplier, config.normalization, config.reference)?;
    let group = config.label_group.clone().or_else(|| model.label_group.clone());
    if let Some(g) = &group {
        report.annotate(g, config.m_max);
    }
    Ok((report, group))
}

pub fn cmd_coeffs(config: &RunConfig) -> Result<Written> {
    let model = config.generate()?;
    let mut written = Written::default();
    let mut w = create(&config.out, "coefficients.csv", &mut written)?;
    export::write_coefficients(&mut w, &model.alphas)?;
    finish(w)?;
    if let Some(ps) = &model.couplings {
        let mut w = create(&config.out, "couplings.csv", &mut written)?;
        export::write_couplings(&mut w, ps)?;
        finish(w)?;
    }
    Ok(written)
}

pub fn cmd_zeros(config: &RunConfig) -> Result<Written> {
    let (_, zeros) = zeros_of(config)?;
    let mut written = Written::default();
    let mut w = create(&config.out, "zeros.csv", &mut written)?;
    export::write_zeros(&mut w, &zeros)?;
    finish(w)?;
    Ok(written)
}

pub fn cmd_ids(config: &RunConfig) -> Result<Written> {
    let (_, zeros) = zeros_of(config)?;
    let curve = ids_with_reference(&zeros, config.normalization, config.reference);
    let mut written = Written::default();
    let mut w = create(&config.out, "ids.csv", &mut written)?;
    export::write_ids(&mut w, &curve)?;
    finish(w)?;
    Ok(written)
}

pub fn cmd_gaps(config: &RunConfig) -> Result<Written> {
    let (model, zeros) = zeros_of(config)?;
    let (report, _) = gap_report(config, &model, &zeros)?;
    let mut written = Written::default();
    let mut w = create(&config.out, "gaps.csv", &mut written)?;
    export::write_gaps(&mut w, &report)?;
    finish(w)?;
    Ok(written)
}

#[derive(Serialize)]
struct LabelsFile<'a> {
    group: Option<&'a LabelGroup>,
    m_max: u32,
    normalization: Normalization,
    total_mass: f64,
    gaps: &'a [leeyang::spectral::Gap],
}

pub fn cmd_labels(config: &RunConfig) -> Result<Written> {
    let (model, zeros) = zeros_of(config)?;
    let (report, group) = gap_report(config, &model, &zeros)?;
    let widest = report.widest(report.gaps.len());
    let file = LabelsFile {
        group: group.as_ref(),
        m_max: config.m_max,
        normalization: config.normalization,
        total_mass: report.total_mass,
        gaps: &widest,
    };
    let mut written = Written::default();
    let mut w = create(&config.out, "labels.json", &mut written)?;
    serde_json::to_writer_pretty(&mut w, &file)?;
    writeln!(w)?;
    finish(w)?;
    Ok(written)
}

pub fn cmd_hist(config: &RunConfig) -> Result<Written> {
    let (_, zeros) = zeros_of(config)?;
    let h = gap_histogram(&zeros, config.bins)?;
    let mut written = Written::default();
    let mut w = create(&config.out, "histogram.csv", &mut written)?;
    export::write_histogram(&mut w, &h)?;
    finish(w)?;
    Ok(written)
}

#[derive(Serialize)]
struct BandwidthFile {
    n: usize,
    theta: f64,
    max_offset: usize,
    max_offset_reordered: usize,
    permutation: Vec<usize>,
}

/// Sparsity patterns of `𝓕_N(θ)` before and after the band permutation.
/// Coupling models use the zero-interleaved sequence.
pub fn cmd_bandwidth(config: &RunConfig) -> Result<Written> {
    let model = config.generate()?;
    let alphas = match model.pipeline {
        Pipeline::Ising => interleave_with_zeros(&model.alphas),
        Pipeline::Cmv => model.alphas.clone(),
    };
    let f = floquet_matrix(&alphas, config.theta)?;
    let p = BandPermutation::new(alphas.len())?;
    let g = reorder(&f.matrix, &p)?;
    let mut written = Written::default();
    let mut w = create(&config.out, "floquet_triplets.csv", &mut written)?;
    export::write_matrix_triplets(&mut w, &f.matrix, 0.0)?;
    finish(w)?;
    let mut w = create(&config.out, "reordered_triplets.csv", &mut written)?;
    export::write_matrix_triplets(&mut w, &g, 0.0)?;
    finish(w)?;
    let summary = BandwidthFile {
        n: alphas.len(),
        theta: config.theta,
        max_offset: max_band_offset(&f.matrix, 0.0),
        max_offset_reordered: max_band_offset(&g, 0.0),
        permutation: p.one_based(),
    };
    let mut w = create(&config.out, "bandwidth.json", &mut written)?;
    serde_json::to_writer_pretty(&mut w, &summary)?;
    writeln!(w)?;
    finish(w)?;
    Ok(written)
}

/// Identity suite on seeded random inputs, plus a unit-circle certificate
/// for the configured model when there is one.
pub fn cmd_verify(config: &RunConfig) -> Result<Written> {
    let mut report: VerificationReport = run_suite(config.seed, &config.tolerances)?;
    if let Some(spec) = &config.model {
        let model = spec.generate()?;
        let alphas = match model.pipeline {
            Pipeline::Ising => interleave_with_zeros(&model.alphas),
            Pipeline::Cmv if model.alphas.len() % 2 == 1 => model.alphas.doubled(),
            Pipeline::Cmv => model.alphas.clone(),
        };
        report.checks.push(certify_sequence(&alphas, config.tolerances.circle)?);
        report.all_passed = report.checks.iter().all(|c| c.passed);
    }
    let mut written = Written { all_passed: Some(report.all_passed), ..Written::default() };
    let mut w = create(&config.out, "verify.json", &mut written)?;
    serde_json::to_writer_pretty(&mut w, &report)?;
    writeln!(w)?;
    finish(w)?;
    Ok(written)
}

pub fn run(stage: Stage, config: &RunConfig) -> Result<Written> {
    config.validate()?;
    match stage {
        Stage::Coeffs => cmd_coeffs(config),
        Stage::Zeros => cmd_zeros(config),
        Stage::Ids => cmd_ids(config),
        Stage::Gaps => cmd_gaps(config),
        Stage::Labels => cmd_labels(config),
        Stage::Hist => cmd_hist(config),
        Stage::Bandwidth => cmd_bandwidth(config),
        Stage::Verify => cmd_verify(config),
    }
}

/// `{"error": kind, "message": text}` for failures.
pub fn error_json(err: &anyhow::Error) -> serde_json::Value {
    let kind = err
        .downcast_ref::<leeyang::Error>()
        .map(|e| e.kind())
        .or_else(|| err.downcast_ref::<serde_json::Error>().map(|_| "json"))
        .or_else(|| err.downcast_ref::<std::io::Error>().map(|_| "io"))
        .unwrap_or("other");
    serde_json::json!({ "error": kind, "message": format!("{err:#}") })
}
