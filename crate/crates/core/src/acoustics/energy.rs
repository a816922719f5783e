use serde::{Deserialize, Serialize};

use crate::corpus::{Waveform, WordToken};
use crate::error::{Error, Result};
use crate::framing::{frame_for, interval_samples, FrameKind, FrameSpan, Segment};

/// Total energy and average power of a segment, both in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Energy {
    pub e_tot: f64,
    pub p: f64,
}

/// Log energies and powers. Closure fields are set for affricates and stops,
/// `e_i_c_*` for the other classes.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EnergyParams {
    pub e_tot_v1: f64,
    pub p_v1: f64,
    pub e_tot_c: f64,
    pub p_c: f64,
    pub e_tot_c1: Option<f64>,
    pub p_c1: Option<f64>,
    pub e_tot_c2: Option<f64>,
    pub p_c2: Option<f64>,
    pub e_i_v1_cent: f64,
    pub e_i_v1_c: f64,
    pub e_i_c_cent: Option<f64>,
    pub e_i_c_off: Option<f64>,
    pub e_i_c1_cent: Option<f64>,
    pub e_i_c1_c2: Option<f64>,
    pub e_i_c2_cent: Option<f64>,
    pub e_i_c2_off: Option<f64>,
}

fn sum_sq(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn segment_energy(wave: &Waveform, interval: (usize, usize)) -> Result<Energy> {
    let (start, end) = interval;
    if end <= start {
        return Err(Error::Precondition(format!("empty interval [{start}, {end})")));
    }
    if end > wave.len() {
        return Err(Error::OutOfBounds(format!("interval end {end} beyond {} samples", wave.len())));
    }
    let e = sum_sq(&wave.samples[start..end]);
    if e <= 0.0 {
        return Err(Error::SilentSegment { start, end });
    }
    let e_tot = 10.0 * e.log10();
    let n = (end - start) as f64;
    Ok(Energy { e_tot, p: e_tot - 10.0 * n.log10() })
}

pub fn frame_energy(wave: &Waveform, span: FrameSpan) -> Result<f64> {
    segment_energy(wave, (span.start, span.end())).map(|e| e.e_tot)
}

pub fn energy_params(token: &WordToken) -> Result<EnergyParams> {
    let wave = token.waveform()?;
    let class = token.class();
    let t = &token.times;
    let rate = wave.sample_rate;
    let seg = |s: Segment| -> Result<Energy> { segment_energy(wave, interval_samples(t, s, class, rate)?) };
    let frame = |k: FrameKind| -> Result<f64> { frame_energy(wave, frame_for(t, k, class, rate, wave.len())?) };
    let v1 = seg(Segment::V1)?;
    let c = seg(Segment::C)?;
    let mut out = EnergyParams {
        e_tot_v1: v1.e_tot,
        p_v1: v1.p,
        e_tot_c: c.e_tot,
        p_c: c.p,
        e_i_v1_cent: frame(FrameKind::V1Centre)?,
        e_i_v1_c: frame(FrameKind::V1ToCTransition)?,
        ..EnergyParams::default()
    };
    if class.has_closure() {
        let c1 = seg(Segment::C1)?;
        let c2 = seg(Segment::C2)?;
        out.e_tot_c1 = Some(c1.e_tot);
        out.p_c1 = Some(c1.p);
        out.e_tot_c2 = Some(c2.e_tot);
        out.p_c2 = Some(c2.p);
        out.e_i_c1_cent = Some(frame(FrameKind::C1Centre)?);
        out.e_i_c1_c2 = Some(frame(FrameKind::C1ToC2Transition)?);
        out.e_i_c2_cent = Some(frame(FrameKind::C2Centre)?);
        out.e_i_c2_off = Some(frame(FrameKind::C2Offset)?);
    } else {
        out.e_i_c_cent = Some(frame(FrameKind::CCentre)?);
        out.e_i_c_off = Some(frame(FrameKind::COffset)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wave(v: Vec<f64>) -> Waveform {
        Waveform::new(v, 16_000).unwrap()
    }

    #[test]
    fn constant_segments() {
        let e = segment_energy(&wave(vec![1.0; 100]), (0, 100)).unwrap();
        assert!((e.e_tot - 20.0).abs() < 1e-12);
        assert!(e.p.abs() < 1e-12);
        let e = segment_energy(&wave(vec![2.0; 256]), (0, 256)).unwrap();
        assert!((e.e_tot - 30.103).abs() < 1e-3);
        assert!((e.p - 6.021).abs() < 1e-3);
    }

    #[test]
    fn frames() {
        let w = wave(vec![1.0; 300]);
        let e = frame_energy(&w, FrameSpan { start: 10 }).unwrap();
        assert!((e - 24.082).abs() < 1e-3);
        let e = frame_energy(&w.scaled(0.5), FrameSpan { start: 10 }).unwrap();
        assert!((e - 18.062).abs() < 1e-3);
    }

    #[test]
    fn silence_is_an_error() {
        let w = wave(vec![0.0; 300]);
        assert!(matches!(segment_energy(&w, (0, 300)), Err(Error::SilentSegment { .. })));
        assert!(matches!(frame_energy(&w, FrameSpan { start: 0 }), Err(Error::SilentSegment { .. })));
        assert!(segment_energy(&w, (5, 5)).is_err());
        assert!(segment_energy(&w, (0, 301)).is_err());
    }
}
