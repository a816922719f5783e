use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::pitch::frame_slice;
use super::AnalysisConfig;
use crate::corpus::Waveform;
use crate::error::{Error, Result};
use crate::framing::FrameSpan;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Formants {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
}

/// A candidate resonance: frequency and 3 dB bandwidth, Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub freq: f64,
    pub bandwidth: f64,
}

/// Autocorrelation LPC via Levinson-Durbin. Returns `a[1..=order]` of
/// `A(z) = 1 + a1 z^-1 + ... + ap z^-p`.
pub fn lpc(x: &[f64], order: usize) -> Result<Vec<f64>> {
    if x.len() <= order {
        return Err(Error::InsufficientData { need: order + 1, got: x.len() });
    }
    let r: Vec<f64> = (0..=order).map(|k| x[..x.len() - k].iter().zip(&x[k..]).map(|(a, b)| a * b).sum()).collect();
    if r[0] <= 0.0 {
        return Err(Error::DegenerateFit("zero-energy frame"));
    }
    let mut a = vec![0.0; order + 1];
    a[0] = 1.0;
    let mut err = r[0];
    for i in 1..=order {
        let acc: f64 = (0..i).map(|j| a[j] * r[i - j]).sum();
        let k = -acc / err;
        let prev = a.clone();
        for j in 1..i {
            a[j] = prev[j] + k * prev[i - j];
        }
        a[i] = k;
        err *= 1.0 - k * k;
        if err <= 0.0 {
            return Err(Error::DegenerateFit("prediction error vanished"));
        }
    }
    a.remove(0);
    Ok(a)
}

/// Resonances of `1/A(z)` from the upper-half-plane roots of A.
pub fn resonances(a: &[f64], sample_rate: f64) -> Vec<Resonance> {
    let p = a.len();
    if p == 0 {
        return Vec::new();
    }
    let mut companion = DMatrix::<f64>::zeros(p, p);
    for (j, &c) in a.iter().enumerate() {
        companion[(0, j)] = -c;
    }
    for i in 1..p {
        companion[(i, i - 1)] = 1.0;
    }
    let mut out: Vec<Resonance> = companion
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im > 0.0)
        .map(|z| Resonance {
            freq: z.im.atan2(z.re) * sample_rate / (2.0 * PI),
            bandwidth: -(sample_rate / PI) * z.norm().ln(),
        })
        .collect();
    out.sort_by(|x, y| x.freq.total_cmp(&y.freq));
    out
}

/// Frequencies of every resonance in a frame that passes the bandwidth and
/// frequency-range filters, ascending.
pub fn formant_candidates(wave: &Waveform, span: FrameSpan, cfg: &AnalysisConfig) -> Result<Vec<f64>> {
    let x = frame_slice(wave, span)?;
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::SilentSegment { start: span.start, end: span.end() });
    }
    let fs = f64::from(wave.sample_rate);
    let n = x.len();
    let mut prev = if span.start > 0 { wave.samples[span.start - 1] } else { 0.0 };
    let y: Vec<f64> = x
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let e = v - cfg.preemph * prev;
            prev = v;
            let w = 0.54 - 0.46 * (2.0 * PI * i as f64 / (n - 1) as f64).cos();
            e * w
        })
        .collect();
    let order = cfg.lpc_order_for(wave.sample_rate);
    let a = lpc(&y, order)?;
    let upper = fs / 2.0 - cfg.formant_edge;
    Ok(resonances(&a, fs)
        .into_iter()
        .filter(|r| r.bandwidth < cfg.bw_max && r.freq > cfg.formant_floor && r.freq < upper)
        .map(|r| r.freq)
        .collect())
}

/// Linear-prediction formants F1-F3 of one frame.
pub fn estimate_formants(wave: &Waveform, span: FrameSpan, cfg: &AnalysisConfig) -> Result<Formants> {
    let kept = formant_candidates(wave, span, cfg)?;
    match kept[..] {
        [f1, f2, f3, ..] => Ok(Formants { f1, f2, f3 }),
        _ => Err(Error::InsufficientResonances { found: kept }),
    }
}
