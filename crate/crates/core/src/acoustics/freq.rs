use serde::{Deserialize, Serialize};

use super::{estimate_f0, estimate_formants, AnalysisConfig, Formants, Pitch};
use crate::corpus::WordToken;
use crate::error::Result;
use crate::framing::{frame_for, FrameKind};

/// Frequency measurements in one reference frame. `None` means not attempted
/// for this class/voicing, or attempted and failed (see `failures`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameFreq {
    pub frame: FrameKind,
    pub f0: Option<Pitch>,
    pub formants: Option<Formants>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FreqParams {
    pub frames: Vec<FrameFreq>,
    pub failures: Vec<(FrameKind, String)>,
}

impl FreqParams {
    pub fn get(&self, kind: FrameKind) -> Option<&FrameFreq> {
        self.frames.iter().find(|f| f.frame == kind)
    }
}

pub const VOWEL_FRAMES: [FrameKind; 5] =
    [FrameKind::V1Centre, FrameKind::V1Offset, FrameKind::V1ToCTransition, FrameKind::V2Onset, FrameKind::V2Centre];

/// Consonant frames carrying F0 for voiced consonants. Transition frames inside
/// the consonant are energy-only.
pub const CONSONANT_F0_FRAMES: [FrameKind; 7] = [
    FrameKind::COnset,
    FrameKind::C1Onset,
    FrameKind::C1Centre,
    FrameKind::C2Centre,
    FrameKind::CCentre,
    FrameKind::C2Offset,
    FrameKind::COffset,
];

/// Frames in which F0 and formants are attempted for `token`, in measurement order.
pub fn frequency_plan(token: &WordToken) -> Vec<(FrameKind, bool)> {
    let class = token.class();
    let voiced = token.identity.consonant.voiced;
    FrameKind::ALL
        .into_iter()
        .filter(|k| k.applies_to(class))
        .filter_map(|k| {
            if VOWEL_FRAMES.contains(&k) {
                Some((k, true))
            } else if voiced && CONSONANT_F0_FRAMES.contains(&k) {
                Some((k, false))
            } else {
                None
            }
        })
        .collect()
}

pub fn freq_params(token: &WordToken, cfg: &AnalysisConfig) -> Result<FreqParams> {
    let wave = token.waveform()?;
    let class = token.class();
    let mut out = FreqParams::default();
    for (kind, with_formants) in frequency_plan(token) {
        let span = frame_for(&token.times, kind, class, wave.sample_rate, wave.len())?;
        let f0 = match estimate_f0(wave, span, cfg) {
            Ok(p) => Some(p),
            Err(e) => {
                out.failures.push((kind, format!("F0: {e}")));
                None
            }
        };
        let formants = if with_formants {
            match estimate_formants(wave, span, cfg) {
                Ok(f) => Some(f),
                Err(e) => {
                    out.failures.push((kind, format!("formants: {e}")));
                    None
                }
            }
        } else {
            None
        };
        out.frames.push(FrameFreq { frame: kind, f0, formants });
    }
    Ok(out)
}
