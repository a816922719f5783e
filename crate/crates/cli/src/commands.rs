use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use gemination::classify::{
    cue_values, default_plan, error_curve, run_plan, select, write_curve, write_reports, ClassifierReport, Cue,
    GenderSel, Grouping, Selection,
};
use gemination::corpus::{
    build_token, load_audio, parse_annotations, serialize_annotations, ConsonantClass, Inventory,
};
use gemination::measurement::{measure_token, parse_measurements, write_measurements, MeasurementRow};
use gemination::synth::{load_builtin_stats, sample_corpus, to_annotations, TableId};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::write_atomic;
use crate::stats::{run_stats, write_anova, write_correlations, StatsReport};

pub const MEASUREMENTS_FILE: &str = "measurements.csv";
pub const ANNOTATIONS_FILE: &str = "annotations.csv";
pub const CLASSIFICATION_FILE: &str = "classification.csv";
pub const ANOVA_FILE: &str = "anova.csv";
pub const CORRELATIONS_FILE: &str = "correlations.csv";
pub const REPORT_FILE: &str = "report.json";
pub const CURVES_DIR: &str = "curves";

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn required<'a>(p: &'a Option<PathBuf>, what: &str, flag: &str) -> Result<&'a Path, CliError> {
    p.as_deref().ok_or_else(|| {
        CliError::MissingInput(format!("{what} required (--{flag} or `{}` in the config)", flag.replace('-', "_")))
    })
}

pub fn load_measurements(cfg: &RunConfig) -> Result<Vec<MeasurementRow>, CliError> {
    let path = required(&cfg.measurements, "measurement CSV", "measurements")?;
    parse_measurements(&read(path)?).map_err(|e| CliError::from(e).in_file(path))
}

/// Measures every annotated token. All token failures are collected.
pub fn measure(cfg: &RunConfig) -> Result<Vec<PathBuf>, Vec<CliError>> {
    let one = |e: CliError| vec![e];
    let path = required(&cfg.annotations, "annotation CSV", "annotations").map_err(one)?;
    let text = read(path).map_err(one)?;
    let inventory = Inventory::with_extensions();
    let records = parse_annotations(&text, &inventory).map_err(|e| one(CliError::from(e).in_file(path)))?;

    let mut rows = Vec::with_capacity(records.len());
    let mut failures = Vec::new();
    for rec in records {
        match measure_record(cfg, rec) {
            Ok(r) => rows.push(r),
            Err(e) => failures.push(e),
        }
    }
    if !failures.is_empty() {
        return Err(failures);
    }
    let text = write_measurements(&rows, &[]).map_err(|e| one(e.into()))?;
    let out = cfg.out.join(MEASUREMENTS_FILE);
    write_atomic(&out, text.as_bytes()).map_err(one)?;
    Ok(vec![out])
}

fn measure_record(cfg: &RunConfig, rec: gemination::corpus::AnnotationRecord) -> Result<MeasurementRow, CliError> {
    let id = rec.token_id.clone();
    let waveform = match &cfg.audio_dir {
        None => None,
        Some(dir) => {
            let wav = dir.join(format!("{id}.wav"));
            let bytes = std::fs::read(&wav).map_err(|e| match e.kind() {
                std::io::ErrorKind::NotFound => CliError::MissingAudio { token: id.clone(), path: wav.clone() },
                _ => CliError::io(&wav, e),
            })?;
            Some(load_audio(&bytes).map_err(|e| CliError::from(e).in_file(&wav).for_token(&id))?)
        }
    };
    let token = build_token(rec.identity, rec.times, waveform).map_err(|e| CliError::from(e).for_token(&id))?;
    measure_token(&id, &token, &cfg.analysis).map_err(|e| CliError::from(e).for_token(&id))
}

pub fn stats(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let rows = load_measurements(cfg)?;
    let report = run_stats(&rows, cfg)?;
    write_stats(cfg, &report)
}

fn write_stats(cfg: &RunConfig, report: &StatsReport) -> Result<Vec<PathBuf>, CliError> {
    let anova = cfg.out.join(ANOVA_FILE);
    write_atomic(&anova, write_anova(&report.anova)?.as_bytes())?;
    let corr = cfg.out.join(CORRELATIONS_FILE);
    write_atomic(&corr, write_correlations(&report.correlations)?.as_bytes())?;
    Ok(vec![anova, corr])
}

/// Whether `selection` falls under a `--class` filter. The filter names a
/// consonant class or a group label such as `affricate-dental` or `all`.
fn class_filter_admits(filter: &str, selection: Selection) -> bool {
    if selection.label() == filter {
        return true;
    }
    match (selection, filter.parse::<ConsonantClass>()) {
        (Selection::Affricates { .. }, Ok(ConsonantClass::Affricate)) => true,
        (Selection::Class(c), Ok(f)) => c == f,
        _ => false,
    }
}

pub fn classification_plan(rows: &[MeasurementRow], cfg: &RunConfig) -> Result<Vec<(Selection, Vec<Cue>)>, CliError> {
    let mut plan = default_plan(rows);
    if let Some(f) = &cfg.class {
        plan.retain(|(s, _)| class_filter_admits(f, *s));
        if plan.is_empty() {
            return Err(gemination::Error::EmptyGroup(format!("no group matches class filter `{f}`")).into());
        }
    }
    if let Some(cues) = &cfg.cues {
        for (_, have) in plan.iter_mut() {
            have.retain(|c| cues.contains(c));
        }
        plan.retain(|(_, c)| !c.is_empty());
        if plan.is_empty() {
            return Err(gemination::Error::EmptyGroup("no group admits the requested cues".into()).into());
        }
    }
    Ok(plan)
}

fn genders(cfg: &RunConfig) -> Vec<GenderSel> {
    match cfg.gender {
        Some(g) => vec![g],
        None => GenderSel::ALL.to_vec(),
    }
}

const CURVE_CUES: [Cue; 3] = [Cue::CdOverV1d, Cue::C1dOverV1d, Cue::COverV1d];

fn cue_slug(cue: Cue) -> String {
    cue.name().to_ascii_lowercase().replace('/', "_over_").replace(['(', ')'], "").replace(',', "_")
}

/// File name of the error curve for a group label and cue.
pub fn curve_file_name(group: &str, cue: Cue) -> String {
    format!("{}_{}.csv", group.replace('/', "_"), cue_slug(cue))
}

pub struct ClassifyOutput {
    pub reports: Vec<ClassifierReport>,
    pub files: Vec<PathBuf>,
}

pub fn classify_rows(rows: &[MeasurementRow], cfg: &RunConfig) -> Result<ClassifyOutput, CliError> {
    let plan = classification_plan(rows, cfg)?;
    let reports = run_plan(rows, &plan, &genders(cfg))?;
    let mut files = Vec::new();
    let path = cfg.out.join(CLASSIFICATION_FILE);
    write_atomic(&path, write_reports(&reports)?.as_bytes())?;
    files.push(path);

    let grid = cfg.curve_grid();
    let done: BTreeSet<(String, Cue)> =
        reports.iter().filter(|r| CURVE_CUES.contains(&r.cue)).map(|r| (r.group.clone(), r.cue)).collect();
    for (selection, _) in &plan {
        for gender in genders(cfg) {
            let grouping = Grouping::new(*selection, gender);
            let label = grouping.label();
            for cue in CURVE_CUES {
                if !done.contains(&(label.clone(), cue)) {
                    continue;
                }
                let picked = select(rows, &grouping)?;
                let (s, g) = cue_values(&picked, cue, &label)?;
                let curve = error_curve(&s, &g, &grid)?;
                let path = cfg.out.join(CURVES_DIR).join(curve_file_name(&label, cue));
                write_atomic(&path, write_curve(&curve)?.as_bytes())?;
                files.push(path);
            }
        }
    }
    Ok(ClassifyOutput { reports, files })
}

pub fn classify(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let rows = load_measurements(cfg)?;
    Ok(classify_rows(&rows, cfg)?.files)
}

pub fn synth(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let table = cfg
        .table
        .as_deref()
        .ok_or_else(|| CliError::MissingInput("table id required (--table or `table` in the config)".into()))?;
    let seed = cfg
        .seed
        .ok_or_else(|| CliError::MissingInput("seed required for synth (--seed or `seed` in the config)".into()))?;
    let id: TableId = table.parse()?;
    let stats = load_builtin_stats(id.name())?;
    let rows = sample_corpus(&stats, cfg.n_per_cell, seed)?;
    let meta = format!("table={} n_per_cell={} seed={seed} generator=chacha8-boxmuller", id.name(), cfg.n_per_cell);

    let mut files = Vec::new();
    let path = cfg.out.join(MEASUREMENTS_FILE);
    write_atomic(&path, write_measurements(&rows, std::slice::from_ref(&meta))?.as_bytes())?;
    files.push(path);
    if id != TableId::ClassSummary {
        let records = to_annotations(&rows, &Inventory::with_extensions())?;
        let text = format!("# {meta}\n{}", serialize_annotations(&records)?);
        let path = cfg.out.join(ANNOTATIONS_FILE);
        write_atomic(&path, text.as_bytes())?;
        files.push(path);
    }
    Ok(files)
}

#[derive(Serialize)]
struct Report<'a> {
    tokens: usize,
    classes: Vec<ConsonantClass>,
    alpha: f64,
    anova: &'a [crate::stats::AnovaRow],
    correlations: &'a [crate::stats::CorrelationRow],
    classification: &'a [ClassifierReport],
    files: Vec<String>,
}

pub fn report(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let rows = load_measurements(cfg)?;
    let stats = run_stats(&rows, cfg)?;
    let mut files = write_stats(cfg, &stats)?;
    let classified = classify_rows(&rows, cfg)?;
    files.extend(classified.files);

    let mut classes: Vec<ConsonantClass> = rows.iter().map(|r| r.class).collect();
    classes.sort();
    classes.dedup();
    let rel = |p: &PathBuf| p.strip_prefix(&cfg.out).unwrap_or(p).to_string_lossy().replace('\\', "/");
    let report = Report {
        tokens: rows.len(),
        classes,
        alpha: cfg.alpha,
        anova: &stats.anova,
        correlations: &stats.correlations,
        classification: &classified.reports,
        files: files.iter().map(rel).collect(),
    };
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Io { path: cfg.out.join(REPORT_FILE), message: e.to_string() })?;
    let path = cfg.out.join(REPORT_FILE);
    write_atomic(&path, format!("{json}\n").as_bytes())?;
    files.push(path);
    Ok(files)
}
