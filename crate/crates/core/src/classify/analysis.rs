use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::threshold::{resubstitution_error, resubstitution_error_2d, Method};
use crate::corpus::{ConsonantClass, Form, Gender};
use crate::error::{Error, Result};
use crate::measurement::MeasurementRow;

/// Classification cue. `C` is closure duration for closure-bearing classes and
/// consonant duration otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Cue {
    V1d,
    Cd,
    C1d,
    C2d,
    V2d,
    Utd,
    #[serde(rename = "Cd/V1d")]
    CdOverV1d,
    #[serde(rename = "C1d/V1d")]
    C1dOverV1d,
    C,
    #[serde(rename = "C/V1d")]
    COverV1d,
    #[serde(rename = "(Cd,V1d)")]
    CdV1d,
    #[serde(rename = "(C1d,V1d)")]
    C1dV1d,
    #[serde(rename = "(C,V1d)")]
    CV1d,
}

impl Cue {
    pub const ALL: [Cue; 13] = [
        Cue::V1d,
        Cue::Cd,
        Cue::C1d,
        Cue::C2d,
        Cue::V2d,
        Cue::Utd,
        Cue::CdOverV1d,
        Cue::C1dOverV1d,
        Cue::C,
        Cue::COverV1d,
        Cue::CdV1d,
        Cue::C1dV1d,
        Cue::CV1d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Cue::V1d => "V1d",
            Cue::Cd => "Cd",
            Cue::C1d => "C1d",
            Cue::C2d => "C2d",
            Cue::V2d => "V2d",
            Cue::Utd => "Utd",
            Cue::CdOverV1d => "Cd/V1d",
            Cue::C1dOverV1d => "C1d/V1d",
            Cue::C => "C",
            Cue::COverV1d => "C/V1d",
            Cue::CdV1d => "(Cd,V1d)",
            Cue::C1dV1d => "(C1d,V1d)",
            Cue::CV1d => "(C,V1d)",
        }
    }

    pub fn is_2d(self) -> bool {
        matches!(self, Cue::CdV1d | Cue::C1dV1d | Cue::CV1d)
    }

    pub fn methods(self) -> &'static [Method] {
        if self.is_2d() {
            &[Method::Mlc]
        } else {
            &[Method::Mlc, Method::Heuristic]
        }
    }

    /// Scalar value of a 1-D cue, `None` if the row's class lacks it.
    pub fn value(self, row: &MeasurementRow) -> Option<f64> {
        let t = &row.time;
        let r = &row.ratios;
        let closure = row.class.has_closure();
        match self {
            Cue::V1d => Some(t.v1d.as_ms()),
            Cue::Cd => Some(t.cd.as_ms()),
            Cue::C1d => t.c1d.map(|d| d.as_ms()),
            Cue::C2d => t.c2d.map(|d| d.as_ms()),
            Cue::V2d => Some(t.v2d.as_ms()),
            Cue::Utd => Some(t.utd.as_ms()),
            Cue::CdOverV1d => Some(r.cd_over_v1d),
            Cue::C1dOverV1d => r.c1d_over_v1d,
            Cue::C => {
                if closure {
                    t.c1d.map(|d| d.as_ms())
                } else {
                    Some(t.cd.as_ms())
                }
            }
            Cue::COverV1d => {
                if closure {
                    r.c1d_over_v1d
                } else {
                    Some(r.cd_over_v1d)
                }
            }
            Cue::CdV1d | Cue::C1dV1d | Cue::CV1d => None,
        }
    }

    pub fn pair(self, row: &MeasurementRow) -> Option<[f64; 2]> {
        let first = match self {
            Cue::CdV1d => Cue::Cd,
            Cue::C1dV1d => Cue::C1d,
            Cue::CV1d => Cue::C,
            _ => return None,
        };
        Some([first.value(row)?, row.time.v1d.as_ms()])
    }
}

impl fmt::Display for Cue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Cue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Cue::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Malformed(format!("unknown cue `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenderSel {
    Combined,
    Male,
    Female,
}

impl GenderSel {
    pub const ALL: [GenderSel; 3] = [GenderSel::Combined, GenderSel::Male, GenderSel::Female];

    pub fn name(self) -> &'static str {
        match self {
            GenderSel::Combined => "combined",
            GenderSel::Male => "male",
            GenderSel::Female => "female",
        }
    }

    pub fn admits(self, g: Gender) -> bool {
        match self {
            GenderSel::Combined => true,
            GenderSel::Male => g == Gender::Male,
            GenderSel::Female => g == Gender::Female,
        }
    }
}

impl FromStr for GenderSel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GenderSel::ALL
            .into_iter()
            .find(|g| g.name() == s.trim())
            .ok_or_else(|| Error::Malformed(format!("unknown gender selection `{s}`")))
    }
}

/// Which tokens enter a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Selection {
    Class(ConsonantClass),
    /// Affricates split by place: `[ts, dz]` when true, `[tʃ, dʒ]` when false.
    Affricates {
        dental: bool,
    },
    /// Every class; optionally leaving out dental affricates.
    All {
        exclude_dental: bool,
    },
}

impl Selection {
    pub fn label(self) -> String {
        match self {
            Selection::Class(c) => c.name().to_string(),
            Selection::Affricates { dental: true } => "affricate-dental".into(),
            Selection::Affricates { dental: false } => "affricate-nondental".into(),
            Selection::All { exclude_dental: false } => "all".into(),
            Selection::All { exclude_dental: true } => "all-nondental".into(),
        }
    }

    pub fn admits(self, row: &MeasurementRow) -> bool {
        match self {
            Selection::Class(c) => row.class == c,
            Selection::Affricates { dental } => row.class == ConsonantClass::Affricate && row.dental == Some(dental),
            Selection::All { exclude_dental } => {
                !(exclude_dental && row.class == ConsonantClass::Affricate && row.dental != Some(false))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Grouping {
    pub selection: Selection,
    pub gender: GenderSel,
}

impl Grouping {
    pub fn new(selection: Selection, gender: GenderSel) -> Self {
        Grouping { selection, gender }
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.selection.label(), self.gender.name())
    }

    pub fn admits(&self, row: &MeasurementRow) -> bool {
        self.selection.admits(row) && self.gender.admits(row.gender)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierReport {
    pub group: String,
    pub cue: Cue,
    pub method: Method,
    pub threshold: Option<f64>,
    pub error_percent: f64,
    pub n_s: usize,
    pub n_g: usize,
    pub errors_s: usize,
    pub errors_g: usize,
}

/// Splits the cue values of a group by form.
pub fn cue_values(rows: &[&MeasurementRow], cue: Cue, group: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let (mut s, mut g) = (Vec::new(), Vec::new());
    for row in rows {
        let v = cue
            .value(row)
            .ok_or_else(|| Error::CueNotApplicable { cue: cue.name().to_string(), group: group.to_string() })?;
        match row.form {
            Form::Singleton => s.push(v),
            Form::Geminate => g.push(v),
        }
    }
    Ok((s, g))
}

type PairSplit = (Vec<[f64; 2]>, Vec<[f64; 2]>);

fn cue_pairs(rows: &[&MeasurementRow], cue: Cue, group: &str) -> Result<PairSplit> {
    let (mut s, mut g) = (Vec::new(), Vec::new());
    for row in rows {
        let p = cue
            .pair(row)
            .ok_or_else(|| Error::CueNotApplicable { cue: cue.name().to_string(), group: group.to_string() })?;
        match row.form {
            Form::Singleton => s.push(p),
            Form::Geminate => g.push(p),
        }
    }
    Ok((s, g))
}

pub fn select<'a>(rows: &'a [MeasurementRow], grouping: &Grouping) -> Result<Vec<&'a MeasurementRow>> {
    let picked: Vec<&MeasurementRow> = rows.iter().filter(|r| grouping.admits(r)).collect();
    let n_s = picked.iter().filter(|r| r.form == Form::Singleton).count();
    if n_s == 0 || n_s == picked.len() {
        return Err(Error::EmptyGroup(format!(
            "{}: {} singleton, {} geminate tokens",
            grouping.label(),
            n_s,
            picked.len() - n_s
        )));
    }
    Ok(picked)
}

/// Every cue under every grouping, with MLC for all cues and the heuristic
/// sweep for 1-D cues. Rows are ordered by group, cue, method.
pub fn run_group_analysis(
    rows: &[MeasurementRow],
    cues: &[Cue],
    groupings: &[Grouping],
) -> Result<Vec<ClassifierReport>> {
    let mut groupings = groupings.to_vec();
    groupings.sort_by_key(|g| g.label());
    groupings.dedup();
    let mut cues = cues.to_vec();
    cues.sort();
    cues.dedup();
    let mut out = Vec::new();
    for grouping in &groupings {
        let label = grouping.label();
        let picked = select(rows, grouping)?;
        for &cue in &cues {
            for &method in cue.methods() {
                let outcome = if cue.is_2d() {
                    let (s, g) = cue_pairs(&picked, cue, &label)?;
                    resubstitution_error_2d(&s, &g)
                } else {
                    let (s, g) = cue_values(&picked, cue, &label)?;
                    resubstitution_error(&s, &g, method)
                }
                .map_err(|e| Error::Precondition(format!("{label}, {cue}, {}: {e}", method.name())))?;
                let c = outcome.counts;
                out.push(ClassifierReport {
                    group: label.clone(),
                    cue,
                    method,
                    threshold: outcome.threshold,
                    error_percent: c.error_percent(),
                    n_s: c.n_s,
                    n_g: c.n_g,
                    errors_s: c.errors_s,
                    errors_g: c.errors_g,
                });
            }
        }
    }
    Ok(out)
}

/// Cues that apply to every token of a selection.
pub fn cues_for(selection: Selection) -> Vec<Cue> {
    use Cue::*;
    match selection {
        Selection::Class(c) if c.has_closure() => {
            vec![V1d, Cd, C1d, C2d, V2d, Utd, CdOverV1d, C1dOverV1d, C, COverV1d, CdV1d, C1dV1d, CV1d]
        }
        Selection::Class(_) => vec![V1d, Cd, V2d, Utd, CdOverV1d, C, COverV1d, CdV1d, CV1d],
        Selection::Affricates { .. } => {
            vec![V1d, Cd, C1d, C2d, V2d, Utd, CdOverV1d, C1dOverV1d, C, COverV1d, CdV1d, C1dV1d, CV1d]
        }
        Selection::All { .. } => vec![V1d, C, V2d, Utd, COverV1d, CV1d],
    }
}

/// The standard grid for a data set: every class present, the dental split
/// when place is known, and the cross-class groups when several classes are present.
pub fn default_plan(rows: &[MeasurementRow]) -> Vec<(Selection, Vec<Cue>)> {
    let mut classes: Vec<ConsonantClass> = rows.iter().map(|r| r.class).collect();
    classes.sort();
    classes.dedup();
    let mut selections: Vec<Selection> = classes.iter().map(|&c| Selection::Class(c)).collect();
    let affricates = rows.iter().filter(|r| r.class == ConsonantClass::Affricate);
    let place_known = affricates.clone().next().is_some() && affricates.clone().all(|r| r.dental.is_some());
    if place_known {
        selections.push(Selection::Affricates { dental: true });
        selections.push(Selection::Affricates { dental: false });
    }
    if classes.len() > 1 {
        selections.push(Selection::All { exclude_dental: false });
        if place_known {
            selections.push(Selection::All { exclude_dental: true });
        }
    }
    selections.into_iter().map(|s| (s, cues_for(s))).collect()
}

/// Runs a plan across genders and merges the rows in group, cue, method order.
/// Groups that are empty for a gender are skipped.
pub fn run_plan(
    rows: &[MeasurementRow],
    plan: &[(Selection, Vec<Cue>)],
    genders: &[GenderSel],
) -> Result<Vec<ClassifierReport>> {
    let mut out = Vec::new();
    for (selection, cues) in plan {
        for &gender in genders {
            let grouping = Grouping::new(*selection, gender);
            match run_group_analysis(rows, cues, &[grouping]) {
                Ok(r) => out.extend(r),
                Err(Error::EmptyGroup(_)) if gender != GenderSel::Combined => {}
                Err(e) => return Err(e),
            }
        }
    }
    out.sort_by(|a, b| (&a.group, a.cue, a.method).cmp(&(&b.group, b.cue, b.method)));
    Ok(out)
}

pub const REPORT_HEADER: [&str; 9] =
    ["group", "cue", "method", "threshold", "error_percent", "n_s", "n_g", "errors_s", "errors_g"];

pub fn write_reports(reports: &[ClassifierReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(REPORT_HEADER)?;
    for r in reports {
        w.write_record([
            r.group.clone(),
            r.cue.name().to_string(),
            r.method.name().to_string(),
            r.threshold.map(|t| t.to_string()).unwrap_or_default(),
            r.error_percent.to_string(),
            r.n_s.to_string(),
            r.n_g.to_string(),
            r.errors_s.to_string(),
            r.errors_g.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn write_curve(curve: &[(f64, f64)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["threshold", "error_percent"])?;
    for (t, e) in curve {
        w.write_record([t.to_string(), e.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}
