//! Run configuration: a flat `key = value` file merged under command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use gemination::acoustics::AnalysisConfig;
use gemination::classify::{Cue, GenderSel};

use crate::error::CliError;

/// How subjects are identified for the split-plot ANOVA.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubjectKey {
    /// Each speaker contributes one subject per form.
    SpeakerForm,
    /// The speaker id alone; a speaker recorded in both forms is rejected.
    Speaker,
}

impl FromStr for SubjectKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "speaker-form" => Ok(SubjectKey::SpeakerForm),
            "speaker" => Ok(SubjectKey::Speaker),
            other => Err(format!("unknown subject key `{other}` (expected speaker-form or speaker)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub annotations: Option<PathBuf>,
    pub audio_dir: Option<PathBuf>,
    pub measurements: Option<PathBuf>,
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub alpha: f64,
    pub class: Option<String>,
    pub gender: Option<GenderSel>,
    pub cues: Option<Vec<Cue>>,
    pub table: Option<String>,
    pub n_per_cell: usize,
    pub subject: SubjectKey,
    pub curve_min: f64,
    pub curve_max: f64,
    pub curve_step: f64,
    pub analysis: AnalysisConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            annotations: None,
            audio_dir: None,
            measurements: None,
            out: PathBuf::from("out"),
            seed: None,
            alpha: 0.05,
            class: None,
            gender: None,
            cues: None,
            table: None,
            n_per_cell: 100,
            subject: SubjectKey::SpeakerForm,
            curve_min: 0.0,
            curve_max: 3.0,
            curve_step: 0.01,
            analysis: AnalysisConfig::default(),
        }
    }
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| CliError::Config {
            line: Some(i + 1),
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = k.trim().replace('-', "_");
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(CliError::Config { line: Some(i + 1), message: format!("duplicate key `{key}`") });
        }
    }
    Ok(map)
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| CliError::Config { line: None, message: format!("bad value for `{key}`: {e}") })
}

pub fn parse_cues(list: &str) -> Result<Vec<Cue>, CliError> {
    list.split(';')
        .flat_map(|s| s.split_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| parse::<Cue>("cues", s))
        .collect()
}

impl RunConfig {
    /// Applies every entry of a parsed config file.
    pub fn apply(&mut self, entries: &BTreeMap<String, String>) -> Result<(), CliError> {
        for (k, v) in entries {
            let a = &mut self.analysis;
            match k.as_str() {
                "annotations" => self.annotations = Some(PathBuf::from(v)),
                "audio_dir" => self.audio_dir = Some(PathBuf::from(v)),
                "measurements" => self.measurements = Some(PathBuf::from(v)),
                "out" => self.out = PathBuf::from(v),
                "seed" => self.seed = Some(parse(k, v)?),
                "alpha" => self.alpha = parse(k, v)?,
                "class" => self.class = Some(v.clone()),
                "gender" => self.gender = Some(parse(k, v)?),
                "cues" => self.cues = Some(parse_cues(v)?),
                "table" => self.table = Some(v.clone()),
                "n_per_cell" => self.n_per_cell = parse(k, v)?,
                "subject" => self.subject = parse(k, v)?,
                "curve_min" => self.curve_min = parse(k, v)?,
                "curve_max" => self.curve_max = parse(k, v)?,
                "curve_step" => self.curve_step = parse(k, v)?,
                "voicing_threshold" => a.voicing_threshold = parse(k, v)?,
                "f0_min" => a.f0_min = parse(k, v)?,
                "f0_max" => a.f0_max = parse(k, v)?,
                "preemph" => a.preemph = parse(k, v)?,
                "lpc_order" => a.lpc_order = Some(parse(k, v)?),
                "bw_max" => a.bw_max = parse(k, v)?,
                "formant_floor" => a.formant_floor = parse(k, v)?,
                "formant_edge" => a.formant_edge = parse(k, v)?,
                other => return Err(CliError::Config { line: None, message: format!("unknown key `{other}`") }),
            }
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let entries = parse_config_text(&text).map_err(|e| e.in_file(path))?;
        self.apply(&entries).map_err(|e| e.in_file(path))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |message: String| CliError::Config { line: None, message };
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(bad(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if !(self.curve_step > 0.0 && self.curve_step.is_finite()) {
            return Err(bad(format!("curve_step must be positive, got {}", self.curve_step)));
        }
        if !(self.curve_min.is_finite() && self.curve_max.is_finite() && self.curve_min < self.curve_max) {
            return Err(bad("curve_min must be below curve_max".into()));
        }
        Ok(())
    }

    /// Thresholds `curve_min + i·step` up to `curve_max`.
    pub fn curve_grid(&self) -> Vec<f64> {
        let steps = ((self.curve_max - self.curve_min) / self.curve_step + 1e-9).floor() as usize;
        (0..=steps).map(|i| self.curve_min + i as f64 * self.curve_step).collect()
    }
}
