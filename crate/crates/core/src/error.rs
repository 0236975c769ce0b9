use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence must contain at least one entry")]
    EmptySequence,

    #[error("coefficient {index} has modulus {modulus}, expected < 1")]
    CoefficientOutsideDisk { index: usize, modulus: f64 },

    #[error("coupling {index} is {value}, expected a finite positive number")]
    NonPositiveCoupling { index: usize, value: f64 },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{what} requires an even length, got {len}")]
    OddLength { what: &'static str, len: usize },

    #[error("{what} requires an odd length, got {len}")]
    EvenLength { what: &'static str, len: usize },

    #[error("fugacity must be nonzero")]
    ZeroFugacity,

    #[error("spectral parameter z must be nonzero")]
    ZeroSpectralParameter,

    #[error("{what}: size {size} exceeds the configured cap {cap}")]
    SizeCap { what: &'static str, size: usize, cap: usize },

    #[error("required precision {required} bits exceeds the cap of {cap} bits")]
    PrecisionCap { required: u64, cap: u32 },

    #[error("letter {letter:?} is not in the alphabet")]
    UnknownLetter { letter: char },

    #[error("substitution is not prolongable at seed {seed:?}")]
    NotProlongable { seed: char },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not unitary: max |F*F - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("eigenvalue {index} lies off the unit circle by {deviation:e}")]
    OffUnitCircle { index: usize, deviation: f64 },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("could not pair doubled eigenvalues: smallest mismatch {mismatch:e} exceeds {tolerance:e}")]
    Pairing { mismatch: f64, tolerance: f64 },

    #[error("matrix is not row-stochastic: {0}")]
    NotStochastic(String),

    #[error("transition matrix is not primitive")]
    NotPrimitive,

    #[error("window {start}..{end} needs coefficients outside the available range {first}..{last}")]
    WindowOutOfRange { start: i64, end: i64, first: i64, last: i64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag for each variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptySequence => "empty_sequence",
            Error::CoefficientOutsideDisk { .. } => "coefficient_outside_disk",
            Error::NonPositiveCoupling { .. } => "non_positive_coupling",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::OddLength { .. } => "odd_length",
            Error::EvenLength { .. } => "even_length",
            Error::ZeroFugacity => "zero_fugacity",
            Error::ZeroSpectralParameter => "zero_spectral_parameter",
            Error::SizeCap { .. } => "size_cap",
            Error::PrecisionCap { .. } => "precision_cap",
            Error::UnknownLetter { .. } => "unknown_letter",
            Error::NotProlongable { .. } => "not_prolongable",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::NotUnitary { .. } => "not_unitary",
            Error::OffUnitCircle { .. } => "off_unit_circle",
            Error::Eigensolver(_) => "eigensolver",
            Error::Pairing { .. } => "pairing",
            Error::NotStochastic(_) => "not_stochastic",
            Error::NotPrimitive => "not_primitive",
            Error::WindowOutOfRange { .. } => "window_out_of_range",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
