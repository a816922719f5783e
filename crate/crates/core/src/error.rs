use thiserror::Error;

/// Errors raised anywhere in the measurement, statistics and classification pipeline.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },

    #[error("malformed annotation: {0}")]
    Malformed(String),

    #[error("reference times out of order: {0}")]
    Ordering(String),

    #[error("class/times inconsistency: {0}")]
    ClassConsistency(String),

    #[error("unknown word id `{0}`")]
    UnknownWord(String),

    #[error("unknown consonant `{symbol}` for class {class}")]
    UnknownConsonant { symbol: String, class: String },

    #[error("unsupported audio: {0}")]
    UnsupportedAudio(String),

    #[error("truncated audio: {0}")]
    TruncatedAudio(String),

    #[error("times exceed waveform: {0}")]
    OutOfBounds(String),

    #[error("frame kind {kind} is not defined for class {class}")]
    FrameClassMismatch { kind: String, class: String },

    #[error("segment {segment} is not defined for class {class}")]
    SegmentClassMismatch { segment: String, class: String },

    #[error("waveform too short: {len} samples, need at least {need}")]
    WaveformTooShort { len: usize, need: usize },

    #[error("waveform required for {0}")]
    MissingWaveform(&'static str),

    #[error("silent segment [{start}, {end})")]
    SilentSegment { start: usize, end: usize },

    #[error("insufficient resonances: found {}, need 3", found.len())]
    InsufficientResonances { found: Vec<f64> },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("insufficient data: need at least {need}, got {got}")]
    InsufficientData { need: usize, got: usize },

    #[error("zero variance: {0}")]
    ZeroVariance(&'static str),

    #[error("unbalanced design: {0}")]
    Unbalanced(String),

    #[error("empty cell: {0}")]
    EmptyCell(String),

    #[error("invalid degrees of freedom: df1={df1}, df2={df2}")]
    InvalidDf { df1: f64, df2: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(&'static str),

    #[error("no crossing between the class means")]
    NoPepRoot,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("empty group `{0}`")]
    EmptyGroup(String),

    #[error("cue {cue} has no values in group `{group}`")]
    CueNotApplicable { cue: String, group: String },

    #[error("unknown table `{0}`")]
    UnknownTable(String),

    #[error("csv: {0}")]
    Csv(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Row { .. } => "row",
            Error::Malformed(_) => "malformed",
            Error::Ordering(_) => "ordering",
            Error::ClassConsistency(_) => "class_consistency",
            Error::UnknownWord(_) => "unknown_word",
            Error::UnknownConsonant { .. } => "unknown_consonant",
            Error::UnsupportedAudio(_) => "unsupported_audio",
            Error::TruncatedAudio(_) => "truncated_audio",
            Error::OutOfBounds(_) => "out_of_bounds",
            Error::FrameClassMismatch { .. } => "frame_class_mismatch",
            Error::SegmentClassMismatch { .. } => "segment_class_mismatch",
            Error::WaveformTooShort { .. } => "waveform_too_short",
            Error::MissingWaveform(_) => "missing_waveform",
            Error::SilentSegment { .. } => "silent_segment",
            Error::InsufficientResonances { .. } => "insufficient_resonances",
            Error::LengthMismatch(..) => "length_mismatch",
            Error::InsufficientData { .. } => "insufficient_data",
            Error::ZeroVariance(_) => "zero_variance",
            Error::Unbalanced(_) => "unbalanced",
            Error::EmptyCell(_) => "empty_cell",
            Error::InvalidDf { .. } => "invalid_df",
            Error::DegenerateFit(_) => "degenerate_fit",
            Error::NoPepRoot => "no_pep_root",
            Error::Precondition(_) => "precondition",
            Error::EmptyGroup(_) => "empty_group",
            Error::CueNotApplicable { .. } => "cue_not_applicable",
            Error::UnknownTable(_) => "unknown_table",
            Error::Csv(_) => "csv",
            Error::Io(_) => "io",
        }
    }

    pub fn at_row(self, row: usize) -> Error {
        match self {
            Error::Row { .. } => self,
            other => Error::Row { row, message: other.to_string() },
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
