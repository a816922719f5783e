//! Time, energy and frequency parameters of a token.

mod durations;
mod energy;
mod formants;
mod freq;
mod pitch;

use serde::{Deserialize, Serialize};

pub use durations::{ratios, time_params, RatioParams, TimeParams};
pub use energy::{energy_params, frame_energy, segment_energy, Energy, EnergyParams};
pub use formants::{estimate_formants, formant_candidates, lpc, resonances, Formants, Resonance};
pub use freq::{freq_params, frequency_plan, FrameFreq, FreqParams, CONSONANT_F0_FRAMES, VOWEL_FRAMES};
pub use pitch::{estimate_f0, Pitch};

/// Estimator constants for F0 and formants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub voicing_threshold: f64,
    pub f0_min: f64,
    pub f0_max: f64,
    pub preemph: f64,
    /// `None` selects `2 + round(sample_rate / 1000)`.
    pub lpc_order: Option<usize>,
    pub bw_max: f64,
    pub formant_floor: f64,
    /// Resonances must lie this far below Nyquist.
    pub formant_edge: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            voicing_threshold: 0.30,
            f0_min: 50.0,
            f0_max: 500.0,
            preemph: 0.97,
            lpc_order: None,
            bw_max: 400.0,
            formant_floor: 90.0,
            formant_edge: 50.0,
        }
    }
}

impl AnalysisConfig {
    pub fn lpc_order_for(&self, sample_rate: u32) -> usize {
        self.lpc_order.unwrap_or_else(|| 2 + ((f64::from(sample_rate) / 1000.0).round() as usize))
    }
}
