use std::fmt;

use serde::{Deserialize, Serialize};

use super::AnalysisConfig;
use crate::corpus::Waveform;
use crate::error::{Error, Result};
use crate::framing::{FrameSpan, FRAME_LEN};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pitch {
    Voiced(f64),
    Unvoiced,
}

impl Pitch {
    pub fn hz(self) -> Option<f64> {
        match self {
            Pitch::Voiced(f) => Some(f),
            Pitch::Unvoiced => None,
        }
    }
}

impl fmt::Display for Pitch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pitch::Voiced(hz) => write!(f, "{hz}"),
            Pitch::Unvoiced => f.write_str("unvoiced"),
        }
    }
}

pub(crate) fn frame_slice(wave: &Waveform, span: FrameSpan) -> Result<&[f64]> {
    if span.end() > wave.len() {
        return Err(Error::OutOfBounds(format!(
            "frame [{}, {}) beyond {} samples",
            span.start,
            span.end(),
            wave.len()
        )));
    }
    Ok(&wave.samples[span.range()])
}

fn ncc(x: &[f64], y: &[f64]) -> f64 {
    let (mut xy, mut xx, mut yy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        xy += a * b;
        xx += a * a;
        yy += b * b;
    }
    if xx <= 0.0 || yy <= 0.0 {
        0.0
    } else {
        xy / (xx * yy).sqrt()
    }
}

/// Normalised cross-correlation pitch estimate.
///
/// The frame is correlated with a window shifted by each candidate lag, forward
/// into the waveform when the samples exist, else backward, else within the
/// frame itself. The shortest lag whose peak reaches 90% of the global maximum
/// is taken, which guards against picking a multiple of the period.
pub fn estimate_f0(wave: &Waveform, span: FrameSpan, cfg: &AnalysisConfig) -> Result<Pitch> {
    let x = frame_slice(wave, span)?;
    let fs = f64::from(wave.sample_rate);
    let lag_min = ((fs / cfg.f0_max).floor() as usize).max(2);
    let lag_max = (fs / cfg.f0_min).ceil() as usize;
    if lag_max <= lag_min {
        return Ok(Pitch::Unvoiced);
    }
    let reach = lag_max + 1;
    let s = span.start;
    let corr = |lag: usize| -> f64 {
        if s + reach + FRAME_LEN <= wave.len() {
            ncc(x, &wave.samples[s + lag..s + lag + FRAME_LEN])
        } else if s >= reach {
            ncc(x, &wave.samples[s - lag..s - lag + FRAME_LEN])
        } else if lag < FRAME_LEN {
            ncc(&x[..FRAME_LEN - lag], &x[lag..])
        } else {
            0.0
        }
    };
    // r[i] holds lag lag_min - 1 + i.
    let r: Vec<f64> = (lag_min - 1..=reach).map(corr).collect();
    let at = |lag: usize| r[lag + 1 - lag_min];
    let global = (lag_min..=lag_max).map(at).fold(f64::NEG_INFINITY, f64::max);
    if !(global >= cfg.voicing_threshold) {
        return Ok(Pitch::Unvoiced);
    }
    let peak = (lag_min..=lag_max)
        .find(|&l| at(l) >= 0.9 * global && at(l) >= at(l - 1) && at(l) >= at(l + 1))
        .unwrap_or_else(|| (lag_min..=lag_max).max_by(|&a, &b| at(a).total_cmp(&at(b))).unwrap_or(lag_min));
    let (a, b, c) = (at(peak - 1), at(peak), at(peak + 1));
    let denom = a - 2.0 * b + c;
    let delta = if denom < 0.0 { (0.5 * (a - c) / denom).clamp(-0.5, 0.5) } else { 0.0 };
    let f0 = fs / (peak as f64 + delta);
    if f0 < cfg.f0_min || f0 > cfg.f0_max {
        return Ok(Pitch::Unvoiced);
    }
    Ok(Pitch::Voiced(f0))
}
