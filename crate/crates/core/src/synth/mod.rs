//! Seeded synthetic duration corpora drawn from published summary statistics,
//! and the two-Gaussian error oracle used to check classifiers against them.

mod fixtures;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::acoustics::{RatioParams, TimeParams};
use crate::classify::{pep_threshold, Gaussian1D};
use crate::corpus::{
    load_word_inventory, AnnotationRecord, ConsonantClass, Form, Gender, Inventory, Msec, ReferenceTimes, Vowel,
    WordIdentity,
};
use crate::error::{Error, Result};
use crate::measurement::MeasurementRow;
use crate::stats::normal_cdf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TableId {
    #[serde(rename = "tableXX")]
    ClassSummary,
    #[serde(rename = "tableXXVI")]
    AffricateWords,
    #[serde(rename = "tableXXVIII")]
    FricativeWords,
}

impl TableId {
    pub const ALL: [TableId; 3] = [TableId::ClassSummary, TableId::AffricateWords, TableId::FricativeWords];

    pub fn name(self) -> &'static str {
        match self {
            TableId::ClassSummary => "tableXX",
            TableId::AffricateWords => "tableXXVI",
            TableId::FricativeWords => "tableXXVIII",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL.into_iter().find(|t| t.name() == s.trim()).ok_or_else(|| Error::UnknownTable(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Param {
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
    #[serde(rename = "C2d/V1d")]
    C2dOverV1d,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::V1d => "V1d",
            Param::Cd => "Cd",
            Param::C1d => "C1d",
            Param::C2d => "C2d",
            Param::V2d => "V2d",
            Param::Utd => "Utd",
            Param::CdOverV1d => "Cd/V1d",
            Param::C1dOverV1d => "C1d/V1d",
            Param::C2dOverV1d => "C2d/V1d",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    pub fn gaussian(&self) -> Result<Gaussian1D> {
        Gaussian1D::new(self.mean, self.std)
    }
}

/// Statistics of one class/form or one word.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellStats {
    pub id: String,
    pub class: ConsonantClass,
    pub form: Form,
    pub word_id: Option<String>,
    pub consonant: Option<String>,
    pub dental: Option<bool>,
    pub vowel: Option<Vowel>,
    pub params: BTreeMap<Param, MeanStd>,
}

impl CellStats {
    pub fn get(&self, p: Param) -> Option<MeanStd> {
        self.params.get(&p).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub table: TableId,
    pub cells: Vec<CellStats>,
}

impl SummaryStats {
    pub fn cell(&self, id: &str) -> Option<&CellStats> {
        self.cells.iter().find(|c| c.id == id)
    }

    /// Where a value sits in its source table, as `table/cell/parameter`.
    pub fn coordinate(&self, cell: &str, param: Param) -> Option<String> {
        let c = self.cell(cell)?;
        c.params.contains_key(&param).then(|| format!("{}/{}/{}", self.table, c.id, param.name()))
    }
}

fn class_cell_id(class: ConsonantClass, form: Form) -> String {
    format!("{}-{}", class.name(), form.name())
}

pub fn load_builtin_stats(table: &str) -> Result<SummaryStats> {
    let table: TableId = table.parse()?;
    let inv = load_word_inventory();
    let cells = match table {
        TableId::ClassSummary => class_cells(),
        TableId::AffricateWords => word_cells(
            &inv,
            ConsonantClass::Affricate,
            &fixtures::AFFRICATE_CONSONANTS,
            &fixtures::AFFRICATE_WORDS.map(|r| r.to_vec()),
            &[Param::V1d, Param::C1d, Param::C2d, Param::Cd, Param::V2d, Param::Utd],
        )?,
        TableId::FricativeWords => word_cells(
            &inv,
            ConsonantClass::Fricative,
            &fixtures::FRICATIVE_CONSONANTS,
            &fixtures::FRICATIVE_WORDS.map(|r| r.to_vec()),
            &[Param::V1d, Param::Cd, Param::V2d, Param::Utd],
        )?,
    };
    Ok(SummaryStats { table, cells })
}

fn class_cells() -> Vec<CellStats> {
    const COLUMNS: [Param; 9] = [
        Param::V1d,
        Param::Cd,
        Param::C1d,
        Param::C2d,
        Param::V2d,
        Param::Utd,
        Param::CdOverV1d,
        Param::C1dOverV1d,
        Param::C2dOverV1d,
    ];
    fixtures::CLASS_TABLE
        .iter()
        .map(|(class, form, row)| CellStats {
            id: class_cell_id(*class, *form),
            class: *class,
            form: *form,
            word_id: None,
            consonant: None,
            dental: None,
            vowel: None,
            params: COLUMNS
                .iter()
                .zip(row)
                .filter_map(|(&p, v)| v.map(|(mean, std)| (p, MeanStd { mean, std })))
                .collect(),
        })
        .collect()
}

fn word_cells(
    inv: &Inventory,
    class: ConsonantClass,
    consonants: &[&str],
    rows: &[Vec<f64>],
    columns: &[Param],
) -> Result<Vec<CellStats>> {
    let mut cells = Vec::with_capacity(rows.len());
    let mut rows = rows.iter();
    for vowel in Vowel::ALL {
        for sym in consonants {
            let consonant = inv.consonant(class, sym)?;
            for form in [Form::Singleton, Form::Geminate] {
                let row = rows.next().ok_or_else(|| Error::Malformed("fixture too short".into()))?;
                let word_id = consonant.word_id(vowel, form);
                let params = columns
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (p, MeanStd { mean: row[2 * i], std: row[2 * i + 1] }))
                    .collect();
                cells.push(CellStats {
                    id: word_id.clone(),
                    class,
                    form,
                    word_id: Some(word_id),
                    consonant: Some(consonant.symbol.clone()),
                    dental: consonant.dental,
                    vowel: Some(vowel),
                    params,
                });
            }
        }
    }
    Ok(cells)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3))
}

/// Seed of a cell's generator. Depends only on the run seed and the cell id,
/// so cells can be generated in any order.
pub fn cell_seed(seed: u64, cell_id: &str) -> u64 {
    splitmix64(seed ^ fnv1a(cell_id))
}

/// Box-Muller, cosine branch.
fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1 = 1.0 - rng.gen::<f64>();
    let u2 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

const FLOOR: Msec = Msec::from_micros(1000);

fn draw_ms(rng: &mut ChaCha8Rng, s: MeanStd) -> Msec {
    loop {
        let d = Msec::from_ms(s.mean + s.std * standard_normal(rng));
        if d >= FLOOR {
            return d;
        }
    }
}

fn draw_ratio(rng: &mut ChaCha8Rng, s: MeanStd) -> f64 {
    loop {
        let r = s.mean + s.std * standard_normal(rng);
        if r > 0.0 {
            return r;
        }
    }
}

fn missing(cell: &CellStats, p: Param) -> Error {
    Error::Precondition(format!("cell {} lacks {} statistics", cell.id, p.name()))
}

/// Draws one token's durations and ratios. Closure classes get C2d = Cd - C1d,
/// and Utd is always V1d + Cd + V2d, so both identities hold exactly.
fn draw_token(rng: &mut ChaCha8Rng, cell: &CellStats) -> Result<(TimeParams, RatioParams)> {
    let need = |p| cell.get(p).ok_or_else(|| missing(cell, p));
    let v1d = draw_ms(rng, need(Param::V1d)?);
    let (cd, c1d) = if cell.class.has_closure() {
        let (cd_s, c1_s) = (need(Param::Cd)?, need(Param::C1d)?);
        loop {
            let cd = draw_ms(rng, cd_s);
            let c1 = draw_ms(rng, c1_s);
            if cd - c1 >= FLOOR {
                break (cd, Some(c1));
            }
        }
    } else {
        (draw_ms(rng, need(Param::Cd)?), None)
    };
    let v2d = draw_ms(rng, need(Param::V2d)?);
    let time = TimeParams { v1d, c1d, c2d: c1d.map(|c1| cd - c1), cd, v2d, utd: v1d + cd + v2d };
    let v1 = v1d.as_ms();
    let mut ratio = |p: Param, computed: Option<f64>| match (cell.get(p), computed) {
        (Some(s), Some(_)) => Some(draw_ratio(rng, s)),
        (_, c) => c,
    };
    let ratios = RatioParams {
        cd_over_v1d: ratio(Param::CdOverV1d, Some(cd.as_ms() / v1)).unwrap_or_default(),
        c1d_over_v1d: ratio(Param::C1dOverV1d, time.c1d.map(|d| d.as_ms() / v1)),
        c2d_over_v1d: ratio(Param::C2dOverV1d, time.c2d.map(|d| d.as_ms() / v1)),
    };
    Ok((time, ratios))
}

/// Six speakers, the first three male, assigned in rotation.
fn speaker(i: usize) -> (String, Gender, u32) {
    let k = i % 6;
    let gender = if k < 3 { Gender::Male } else { Gender::Female };
    (format!("s{}", k + 1), gender, (i / 6 + 1) as u32)
}

/// `n_per_cell` independent tokens per cell, in fixture cell order.
pub fn sample_corpus(stats: &SummaryStats, n_per_cell: usize, seed: u64) -> Result<Vec<MeasurementRow>> {
    let mut rows = Vec::with_capacity(stats.cells.len() * n_per_cell);
    for cell in &stats.cells {
        let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(seed, &cell.id));
        for i in 0..n_per_cell {
            let (time, ratios) = draw_token(&mut rng, cell)?;
            let (speaker_id, gender, repetition) = speaker(i);
            rows.push(MeasurementRow {
                token_id: format!("{}-{:06}", cell.id, i + 1),
                speaker_id,
                gender,
                repetition,
                word_id: cell.word_id.clone(),
                class: cell.class,
                dental: cell.dental,
                consonant: cell.consonant.clone(),
                vowel: cell.vowel,
                form: cell.form,
                time,
                ratios,
                energy: None,
                freq: None,
            });
        }
    }
    Ok(rows)
}

/// Lead silence before V1 onset in synthetic annotations.
pub const ANNOTATION_LEAD: Msec = Msec::from_micros(50_000);

/// Reference times for word-level synthetic rows.
pub fn to_annotations(rows: &[MeasurementRow], inventory: &Inventory) -> Result<Vec<AnnotationRecord>> {
    rows.iter()
        .map(|r| {
            let word_id = r.word_id.as_deref().ok_or_else(|| {
                Error::Precondition(format!("token {} has no word id; annotations need words", r.token_id))
            })?;
            let w = inventory.word(word_id)?;
            let t = &r.time;
            let v1_onset = ANNOTATION_LEAD;
            let v1_offset = v1_onset + t.v1d;
            let v2_onset = v1_offset + t.cd;
            Ok(AnnotationRecord {
                token_id: r.token_id.clone(),
                identity: WordIdentity {
                    word_id: w.word_id.clone(),
                    speaker_id: r.speaker_id.clone(),
                    gender: r.gender,
                    repetition: r.repetition,
                    vowel: w.vowel,
                    consonant: w.consonant.clone(),
                    form: w.form,
                },
                times: ReferenceTimes {
                    v1_onset,
                    v1_offset,
                    c1_offset: t.c1d.map(|c1| v1_offset + c1),
                    v2_onset,
                    v2_offset: v2_onset + t.v2d,
                },
            })
        })
        .collect()
}

/// Equal-prior error, in percent, of thresholding two Gaussians at their
/// between-means crossing.
pub fn analytic_min_error(g_s: &Gaussian1D, g_g: &Gaussian1D) -> Result<f64> {
    if g_s.mean == g_g.mean && g_s.std == g_g.std {
        return Ok(50.0);
    }
    let t = pep_threshold(g_s, g_g)?;
    let above_s = normal_cdf(-(t - g_s.mean) / g_s.std);
    let below_g = normal_cdf((t - g_g.mean) / g_g.std);
    Ok(50.0 * (above_s + below_g))
}
