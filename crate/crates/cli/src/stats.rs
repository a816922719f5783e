//! ANOVA and correlation tables over a measurement set.

use std::collections::BTreeMap;

use gemination::classify::GenderSel;
use gemination::corpus::{ConsonantClass, Form};
use gemination::measurement::MeasurementRow;
use gemination::stats::{anova_factorial, anova_mixed, pearson, spearman, AnovaTable, Observation, SubjectObservation};
use serde::Serialize;

use crate::config::{RunConfig, SubjectKey};
use crate::error::CliError;

type Getter = fn(&MeasurementRow) -> Option<f64>;
type LevelOf = fn(&MeasurementRow) -> String;

const PARAMS: [(&str, Getter); 9] = [
    ("V1d", |r| Some(r.time.v1d.as_ms())),
    ("Cd", |r| Some(r.time.cd.as_ms())),
    ("C1d", |r| r.time.c1d.map(|d| d.as_ms())),
    ("C2d", |r| r.time.c2d.map(|d| d.as_ms())),
    ("V2d", |r| Some(r.time.v2d.as_ms())),
    ("Utd", |r| Some(r.time.utd.as_ms())),
    ("Cd/V1d", |r| Some(r.ratios.cd_over_v1d)),
    ("C1d/V1d", |r| r.ratios.c1d_over_v1d),
    ("C2d/V1d", |r| r.ratios.c2d_over_v1d),
];

/// Durations entering the correlation matrices.
const CORRELATED: [&str; 6] = ["V1d", "Cd", "C1d", "C2d", "V2d", "Utd"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaRow {
    pub design: &'static str,
    pub class: String,
    pub gender: String,
    pub parameter: String,
    pub effect: String,
    pub ss: f64,
    pub df1: usize,
    pub df2: usize,
    pub ms: f64,
    pub f: f64,
    pub p: f64,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationRow {
    pub class: String,
    pub gender: String,
    pub group: String,
    pub x: String,
    pub y: String,
    pub method: &'static str,
    pub coefficient: f64,
    pub n: usize,
    pub p: f64,
}

#[derive(Debug, Clone, Default)]
pub struct StatsReport {
    pub anova: Vec<AnovaRow>,
    pub correlations: Vec<CorrelationRow>,
}

fn is_word_level(rows: &[&MeasurementRow]) -> bool {
    rows.iter().all(|r| r.vowel.is_some() && r.consonant.is_some())
}

fn levels(rows: &[&MeasurementRow], f: impl Fn(&MeasurementRow) -> String) -> usize {
    let mut v: Vec<String> = rows.iter().map(|r| f(r)).collect();
    v.sort();
    v.dedup();
    v.len()
}

fn vowel_of(r: &MeasurementRow) -> String {
    r.vowel.map(|v| v.letter().to_string()).unwrap_or_default()
}

fn consonant_of(r: &MeasurementRow) -> String {
    r.consonant.clone().unwrap_or_default()
}

fn table_rows(design: &'static str, class: &str, gender: GenderSel, param: &str, t: AnovaTable) -> Vec<AnovaRow> {
    t.cells
        .into_iter()
        .map(|c| AnovaRow {
            design,
            class: class.to_string(),
            gender: gender.name().to_string(),
            parameter: param.to_string(),
            effect: c.effect,
            ss: c.ss,
            df1: c.df1,
            df2: c.df2,
            ms: c.ms,
            f: c.f,
            p: c.p,
            significant: c.significant,
        })
        .collect()
}

fn context(class: &str, gender: GenderSel, param: &str, design: &str, e: gemination::Error) -> CliError {
    CliError::from(e).context(format!("{design} ANOVA of {param} for {class}/{}", gender.name()))
}

fn anova_for(
    rows: &[&MeasurementRow],
    class: &str,
    gender: GenderSel,
    cfg: &RunConfig,
) -> Result<Vec<AnovaRow>, CliError> {
    let word = is_word_level(rows);
    let mut within: Vec<(&str, LevelOf)> = Vec::new();
    if word {
        if levels(rows, vowel_of) > 1 {
            within.push(("Vowel", vowel_of));
        }
        if levels(rows, consonant_of) > 1 {
            within.push(("Consonant", consonant_of));
        }
    }
    let mut out = Vec::new();
    for (param, get) in PARAMS {
        let values: Vec<f64> = match rows.iter().map(|r| get(r)).collect::<Option<Vec<_>>>() {
            Some(v) => v,
            None => continue,
        };
        let mut factors = vec!["Form"];
        factors.extend(within.iter().map(|(n, _)| *n));
        let obs: Vec<Observation> = rows
            .iter()
            .zip(&values)
            .map(|(r, &value)| {
                let mut levels = BTreeMap::new();
                levels.insert("Form".to_string(), r.form.name().to_string());
                for (name, f) in &within {
                    levels.insert(name.to_string(), f(r));
                }
                Observation { levels, value }
            })
            .collect();
        let t =
            anova_factorial(&obs, &factors, cfg.alpha).map_err(|e| context(class, gender, param, "factorial", e))?;
        out.extend(table_rows("factorial", class, gender, param, t));

        if word && !within.is_empty() {
            let sobs: Vec<SubjectObservation> = rows
                .iter()
                .zip(&values)
                .map(|(r, &value)| SubjectObservation {
                    subject: match cfg.subject {
                        SubjectKey::SpeakerForm => format!("{}:{}", r.speaker_id, r.form.name()),
                        SubjectKey::Speaker => r.speaker_id.clone(),
                    },
                    between: r.form.name().to_string(),
                    within: within.iter().map(|(n, f)| (n.to_string(), f(r))).collect(),
                    value,
                })
                .collect();
            let names: Vec<&str> = within.iter().map(|(n, _)| *n).collect();
            let t =
                anova_mixed(&sobs, "Form", &names, cfg.alpha).map_err(|e| context(class, gender, param, "mixed", e))?;
            out.extend(table_rows("mixed", class, gender, param, t));
        }
    }
    Ok(out)
}

fn correlations_for(rows: &[&MeasurementRow], class: &str, gender: GenderSel) -> Result<Vec<CorrelationRow>, CliError> {
    let params: Vec<(&str, Getter)> = PARAMS
        .iter()
        .filter(|(n, get)| CORRELATED.contains(n) && rows.iter().all(|r| get(r).is_some()))
        .copied()
        .collect();
    let mut out = Vec::new();
    for (group, form) in [("singleton", Some(Form::Singleton)), ("geminate", Some(Form::Geminate)), ("combined", None)]
    {
        let picked: Vec<&MeasurementRow> = rows.iter().copied().filter(|r| form.is_none_or(|f| r.form == f)).collect();
        if picked.len() < 3 {
            continue;
        }
        for (i, (xn, xg)) in params.iter().enumerate() {
            for (yn, yg) in &params[i + 1..] {
                let x: Vec<f64> = picked.iter().filter_map(|r| xg(r)).collect();
                let y: Vec<f64> = picked.iter().filter_map(|r| yg(r)).collect();
                for (method, f) in [("pearson", pearson as fn(&[f64], &[f64]) -> _), ("spearman", spearman)] {
                    let c = f(&x, &y).map_err(|e| {
                        CliError::from(e)
                            .context(format!("{method} {xn} vs {yn} for {class}/{}/{group}", gender.name()))
                    })?;
                    out.push(CorrelationRow {
                        class: class.to_string(),
                        gender: gender.name().to_string(),
                        group: group.to_string(),
                        x: xn.to_string(),
                        y: yn.to_string(),
                        method,
                        coefficient: c.coefficient,
                        n: c.n,
                        p: c.p,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Runs the ANOVA and correlation grids per class and gender selection.
pub fn run_stats(rows: &[MeasurementRow], cfg: &RunConfig) -> Result<StatsReport, CliError> {
    let mut classes: Vec<ConsonantClass> = rows.iter().map(|r| r.class).collect();
    classes.sort();
    classes.dedup();
    let want_all = cfg.class.as_deref().is_none_or(|c| c == "all");
    if let Some(f) = cfg.class.as_deref().filter(|c| *c != "all") {
        let class: ConsonantClass = f.parse()?;
        classes.retain(|c| *c == class);
        if classes.is_empty() {
            return Err(gemination::Error::EmptyGroup(format!("no rows of class `{f}`")).into());
        }
    } else if cfg.class.is_some() {
        classes.clear();
    }
    let genders = match cfg.gender {
        Some(g) => vec![g],
        None => GenderSel::ALL.to_vec(),
    };

    let mut report = StatsReport::default();
    for class in &classes {
        for &gender in &genders {
            let picked: Vec<&MeasurementRow> =
                rows.iter().filter(|r| r.class == *class && gender.admits(r.gender)).collect();
            if picked.is_empty() {
                if gender == GenderSel::Combined {
                    return Err(gemination::Error::EmptyGroup(class.name().to_string()).into());
                }
                continue;
            }
            report.anova.extend(anova_for(&picked, class.name(), gender, cfg)?);
            report.correlations.extend(correlations_for(&picked, class.name(), gender)?);
        }
    }
    let distinct = {
        let mut c: Vec<_> = rows.iter().map(|r| r.class).collect();
        c.sort();
        c.dedup();
        c.len()
    };
    if want_all && distinct > 1 {
        for &gender in &genders {
            let picked: Vec<&MeasurementRow> = rows.iter().filter(|r| gender.admits(r.gender)).collect();
            if picked.is_empty() {
                continue;
            }
            report.correlations.extend(correlations_for(&picked, "all", gender)?);
        }
    }
    Ok(report)
}

fn to_csv<I: IntoIterator<Item = Vec<String>>>(header: &[&str], rows: I) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: String| CliError::from(gemination::Error::Io(e));
    w.write_record(header).map_err(|e| io(e.to_string()))?;
    for r in rows {
        w.write_record(&r).map_err(|e| io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| io(e.to_string()))
}

pub const ANOVA_HEADER: [&str; 12] =
    ["design", "class", "gender", "parameter", "effect", "ss", "df1", "df2", "ms", "f", "p", "significant"];

pub const CORRELATION_HEADER: [&str; 9] = ["class", "gender", "group", "x", "y", "method", "coefficient", "n", "p"];

pub fn write_anova(rows: &[AnovaRow]) -> Result<String, CliError> {
    to_csv(
        &ANOVA_HEADER,
        rows.iter().map(|r| {
            vec![
                r.design.to_string(),
                r.class.clone(),
                r.gender.clone(),
                r.parameter.clone(),
                r.effect.clone(),
                r.ss.to_string(),
                r.df1.to_string(),
                r.df2.to_string(),
                r.ms.to_string(),
                r.f.to_string(),
                r.p.to_string(),
                r.significant.to_string(),
            ]
        }),
    )
}

pub fn write_correlations(rows: &[CorrelationRow]) -> Result<String, CliError> {
    to_csv(
        &CORRELATION_HEADER,
        rows.iter().map(|r| {
            vec![
                r.class.clone(),
                r.gender.clone(),
                r.group.clone(),
                r.x.clone(),
                r.y.clone(),
                r.method.to_string(),
                r.coefficient.to_string(),
                r.n.to_string(),
                r.p.to_string(),
            ]
        }),
    )
}
