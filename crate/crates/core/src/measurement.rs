//! Per-token measurement rows and their flat CSV form.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::acoustics::{
    energy_params, freq_params, ratios, time_params, AnalysisConfig, EnergyParams, Formants, FrameFreq, FreqParams,
    Pitch, RatioParams, TimeParams, VOWEL_FRAMES,
};
use crate::corpus::{ConsonantClass, Form, Gender, Msec, Vowel, WordToken};
use crate::error::{Error, Result};
use crate::framing::FrameKind;

/// One output row. Word-level fields are `None` for class-level synthetic data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRow {
    pub token_id: String,
    pub speaker_id: String,
    pub gender: Gender,
    pub repetition: u32,
    pub word_id: Option<String>,
    pub class: ConsonantClass,
    pub dental: Option<bool>,
    pub consonant: Option<String>,
    pub vowel: Option<Vowel>,
    pub form: Form,
    pub time: TimeParams,
    pub ratios: RatioParams,
    pub energy: Option<EnergyParams>,
    pub freq: Option<FreqParams>,
}

/// Measures a token. Energy and frequency parameters need a waveform.
pub fn measure_token(token_id: &str, token: &WordToken, cfg: &AnalysisConfig) -> Result<MeasurementRow> {
    let id = &token.identity;
    let time = time_params(&token.times, token.class())?;
    let (energy, freq) = if token.waveform.is_some() {
        (Some(energy_params(token)?), Some(freq_params(token, cfg)?))
    } else {
        (None, None)
    };
    Ok(MeasurementRow {
        token_id: token_id.to_string(),
        speaker_id: id.speaker_id.clone(),
        gender: id.gender,
        repetition: id.repetition,
        word_id: Some(id.word_id.clone()),
        class: id.class(),
        dental: id.consonant.dental,
        consonant: Some(id.consonant.symbol.clone()),
        vowel: Some(id.vowel),
        form: id.form,
        ratios: ratios(&time)?,
        time,
        energy,
        freq,
    })
}

const IDENTITY: [&str; 10] =
    ["token_id", "speaker_id", "gender", "repetition", "word_id", "class", "dental", "consonant", "vowel", "form"];
const TIME: [&str; 6] = ["v1d_ms", "c1d_ms", "c2d_ms", "cd_ms", "v2d_ms", "utd_ms"];
const RATIO: [&str; 3] = ["cd_over_v1d", "c1d_over_v1d", "c2d_over_v1d"];
const ENERGY: [&str; 16] = [
    "e_tot_v1",
    "p_v1",
    "e_tot_c",
    "p_c",
    "e_tot_c1",
    "p_c1",
    "e_tot_c2",
    "p_c2",
    "e_i_v1_cent",
    "e_i_v1_c",
    "e_i_c_cent",
    "e_i_c_off",
    "e_i_c1_cent",
    "e_i_c1_c2",
    "e_i_c2_cent",
    "e_i_c2_off",
];

fn f0_column(k: FrameKind) -> String {
    format!("f0_{}", k.name().to_ascii_lowercase())
}

fn formant_column(n: usize, k: FrameKind) -> String {
    format!("f{n}_{}", k.name().to_ascii_lowercase())
}

/// Full column list, identical for every class.
pub fn measurement_header() -> Vec<String> {
    let mut h: Vec<String> = IDENTITY.iter().chain(&TIME).chain(&RATIO).chain(&ENERGY).map(|s| s.to_string()).collect();
    h.extend(FrameKind::ALL.iter().map(|&k| f0_column(k)));
    for k in VOWEL_FRAMES {
        for n in 1..=3 {
            h.push(formant_column(n, k));
        }
    }
    h
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn energy_cells(e: Option<&EnergyParams>) -> Vec<String> {
    let Some(e) = e else {
        return vec![String::new(); ENERGY.len()];
    };
    let vals = [
        Some(e.e_tot_v1),
        Some(e.p_v1),
        Some(e.e_tot_c),
        Some(e.p_c),
        e.e_tot_c1,
        e.p_c1,
        e.e_tot_c2,
        e.p_c2,
        Some(e.e_i_v1_cent),
        Some(e.e_i_v1_c),
        e.e_i_c_cent,
        e.e_i_c_off,
        e.e_i_c1_cent,
        e.e_i_c1_c2,
        e.e_i_c2_cent,
        e.e_i_c2_off,
    ];
    vals.into_iter().map(opt).collect()
}

fn freq_cells(f: Option<&FreqParams>) -> Vec<String> {
    let frame = |k| f.and_then(|f| f.get(k));
    let mut out: Vec<String> = FrameKind::ALL.iter().map(|&k| opt(frame(k).and_then(|fr| fr.f0))).collect();
    for k in VOWEL_FRAMES {
        let fm = frame(k).and_then(|fr| fr.formants);
        out.push(opt(fm.map(|x| x.f1)));
        out.push(opt(fm.map(|x| x.f2)));
        out.push(opt(fm.map(|x| x.f3)));
    }
    out
}

impl MeasurementRow {
    pub fn cells(&self) -> Vec<String> {
        let t = &self.time;
        let r = &self.ratios;
        let mut c = vec![
            self.token_id.clone(),
            self.speaker_id.clone(),
            self.gender.to_string(),
            self.repetition.to_string(),
            self.word_id.clone().unwrap_or_default(),
            self.class.to_string(),
            opt(self.dental),
            self.consonant.clone().unwrap_or_default(),
            opt(self.vowel),
            self.form.to_string(),
            t.v1d.to_string(),
            opt(t.c1d),
            opt(t.c2d),
            t.cd.to_string(),
            t.v2d.to_string(),
            t.utd.to_string(),
            r.cd_over_v1d.to_string(),
            opt(r.c1d_over_v1d),
            opt(r.c2d_over_v1d),
        ];
        c.extend(energy_cells(self.energy.as_ref()));
        c.extend(freq_cells(self.freq.as_ref()));
        c
    }
}

/// Serialises rows after optional `#` metadata lines.
pub fn write_measurements(rows: &[MeasurementRow], metadata: &[String]) -> Result<String> {
    let mut text = String::new();
    for m in metadata {
        text.push_str("# ");
        text.push_str(m);
        text.push('\n');
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(measurement_header())?;
    for row in rows {
        w.write_record(row.cells())?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    text.push_str(&String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))?);
    Ok(text)
}

struct Cells<'a> {
    index: &'a HashMap<String, usize>,
    record: &'a csv::StringRecord,
}

impl Cells<'_> {
    fn raw(&self, name: &str) -> &str {
        self.index.get(name).and_then(|&i| self.record.get(i)).unwrap_or("")
    }

    fn req(&self, name: &str) -> Result<&str> {
        let v = self.raw(name);
        if v.is_empty() {
            Err(Error::Malformed(format!("missing {name}")))
        } else {
            Ok(v)
        }
    }

    fn num(&self, name: &str) -> Result<Option<f64>> {
        let v = self.raw(name);
        if v.is_empty() {
            return Ok(None);
        }
        v.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(Some)
            .ok_or_else(|| Error::Malformed(format!("{name}: `{v}` is not a number")))
    }

    fn msec(&self, name: &str) -> Result<Option<Msec>> {
        let v = self.raw(name);
        if v.is_empty() {
            Ok(None)
        } else {
            v.parse().map(Some)
        }
    }

    fn pitch(&self, name: &str) -> Result<Option<Pitch>> {
        match self.raw(name) {
            "" => Ok(None),
            "unvoiced" => Ok(Some(Pitch::Unvoiced)),
            _ => Ok(self.num(name)?.map(Pitch::Voiced)),
        }
    }
}

fn parse_energy(c: &Cells) -> Result<Option<EnergyParams>> {
    let Some(e_tot_v1) = c.num("e_tot_v1")? else {
        return Ok(None);
    };
    let need = |n: &str| c.num(n)?.ok_or_else(|| Error::Malformed(format!("missing {n}")));
    Ok(Some(EnergyParams {
        e_tot_v1,
        p_v1: need("p_v1")?,
        e_tot_c: need("e_tot_c")?,
        p_c: need("p_c")?,
        e_tot_c1: c.num("e_tot_c1")?,
        p_c1: c.num("p_c1")?,
        e_tot_c2: c.num("e_tot_c2")?,
        p_c2: c.num("p_c2")?,
        e_i_v1_cent: need("e_i_v1_cent")?,
        e_i_v1_c: need("e_i_v1_c")?,
        e_i_c_cent: c.num("e_i_c_cent")?,
        e_i_c_off: c.num("e_i_c_off")?,
        e_i_c1_cent: c.num("e_i_c1_cent")?,
        e_i_c1_c2: c.num("e_i_c1_c2")?,
        e_i_c2_cent: c.num("e_i_c2_cent")?,
        e_i_c2_off: c.num("e_i_c2_off")?,
    }))
}

fn parse_freq(c: &Cells) -> Result<Option<FreqParams>> {
    let mut frames = Vec::new();
    for k in FrameKind::ALL {
        let f0 = c.pitch(&f0_column(k))?;
        let formants = if VOWEL_FRAMES.contains(&k) {
            match (c.num(&formant_column(1, k))?, c.num(&formant_column(2, k))?, c.num(&formant_column(3, k))?) {
                (Some(f1), Some(f2), Some(f3)) => Some(Formants { f1, f2, f3 }),
                _ => None,
            }
        } else {
            None
        };
        if f0.is_some() || formants.is_some() {
            frames.push(FrameFreq { frame: k, f0, formants });
        }
    }
    Ok((!frames.is_empty()).then(|| FreqParams { frames, failures: Vec::new() }))
}

fn parse_row(c: &Cells) -> Result<MeasurementRow> {
    let class: ConsonantClass = c.req("class")?.parse()?;
    let repetition: u32 = c
        .req("repetition")?
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Malformed("repetition must be a positive integer".into()))?;
    let dental = match c.raw("dental") {
        "" => None,
        "true" => Some(true),
        "false" => Some(false),
        other => return Err(Error::Malformed(format!("dental: `{other}`"))),
    };
    let nonempty = |n: &str| Some(c.raw(n).to_string()).filter(|s| !s.is_empty());
    let vowel = nonempty("vowel").map(|v| v.parse()).transpose()?;
    let need_ms = |n: &str| c.msec(n)?.ok_or_else(|| Error::Malformed(format!("missing {n}")));
    let time = TimeParams {
        v1d: need_ms("v1d_ms")?,
        c1d: c.msec("c1d_ms")?,
        c2d: c.msec("c2d_ms")?,
        cd: need_ms("cd_ms")?,
        v2d: need_ms("v2d_ms")?,
        utd: need_ms("utd_ms")?,
    };
    if class.has_closure() != (time.c1d.is_some() && time.c2d.is_some()) || time.c1d.is_some() != time.c2d.is_some() {
        return Err(Error::ClassConsistency(format!("C1d/C2d presence does not match class {class}")));
    }
    time.check()?;
    let ratios = RatioParams {
        cd_over_v1d: c.num("cd_over_v1d")?.ok_or_else(|| Error::Malformed("missing cd_over_v1d".into()))?,
        c1d_over_v1d: c.num("c1d_over_v1d")?,
        c2d_over_v1d: c.num("c2d_over_v1d")?,
    };
    Ok(MeasurementRow {
        token_id: c.req("token_id")?.to_string(),
        speaker_id: c.req("speaker_id")?.to_string(),
        gender: c.req("gender")?.parse()?,
        repetition,
        word_id: nonempty("word_id"),
        class,
        dental,
        consonant: nonempty("consonant"),
        vowel,
        form: c.req("form")?.parse()?,
        time,
        ratios,
        energy: parse_energy(c)?,
        freq: parse_freq(c)?,
    })
}

/// Parses a measurement CSV. Only the identity, time and ratio columns are
/// required; energy and frequency columns may be absent.
pub fn parse_measurements(text: &str) -> Result<Vec<MeasurementRow>> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
    let index: HashMap<String, usize> = reader.headers()?.iter().enumerate().map(|(i, h)| (h.to_string(), i)).collect();
    for col in IDENTITY.iter().chain(&TIME).chain(&RATIO) {
        if !index.contains_key(*col) {
            return Err(Error::Malformed(format!("measurement header lacks `{col}`")));
        }
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let cells = Cells { index: &index, record: &record };
        rows.push(parse_row(&cells).map_err(|e| e.at_row(line))?);
    }
    Ok(rows)
}
