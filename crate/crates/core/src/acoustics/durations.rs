use serde::{Deserialize, Serialize};

use crate::corpus::{ConsonantClass, Msec, ReferenceTimes};
use crate::error::{Error, Result};

/// Segment durations. `c1d`/`c2d` exist only for closure-bearing classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeParams {
    pub v1d: Msec,
    pub c1d: Option<Msec>,
    pub c2d: Option<Msec>,
    pub cd: Msec,
    pub v2d: Msec,
    pub utd: Msec,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioParams {
    pub cd_over_v1d: f64,
    pub c1d_over_v1d: Option<f64>,
    pub c2d_over_v1d: Option<f64>,
}

pub fn time_params(times: &ReferenceTimes, class: ConsonantClass) -> Result<TimeParams> {
    times.validate(class)?;
    let t = times;
    Ok(TimeParams {
        v1d: t.v1_offset - t.v1_onset,
        c1d: t.c1_offset.map(|c1| c1 - t.v1_offset),
        c2d: t.c1_offset.map(|c1| t.v2_onset - c1),
        cd: t.v2_onset - t.v1_offset,
        v2d: t.v2_offset - t.v2_onset,
        utd: t.v2_offset - t.v1_onset,
    })
}

impl TimeParams {
    /// Checks positivity and the two additivity identities.
    pub fn check(&self) -> Result<()> {
        let all = [Some(self.v1d), self.c1d, self.c2d, Some(self.cd), Some(self.v2d), Some(self.utd)];
        if all.iter().flatten().any(|d| !d.is_positive()) {
            return Err(Error::Precondition("durations must be positive".into()));
        }
        if let (Some(c1), Some(c2)) = (self.c1d, self.c2d) {
            if c1 + c2 != self.cd {
                return Err(Error::Precondition(format!("C1d {c1} + C2d {c2} != Cd {}", self.cd)));
            }
        }
        if self.v1d + self.cd + self.v2d != self.utd {
            return Err(Error::Precondition(format!("V1d + Cd + V2d != Utd {}", self.utd)));
        }
        Ok(())
    }

    /// Class-appropriate consonant cue: closure duration when present, else Cd.
    pub fn consonant_cue(&self) -> Msec {
        self.c1d.unwrap_or(self.cd)
    }
}

pub fn ratios(tp: &TimeParams) -> Result<RatioParams> {
    if !tp.v1d.is_positive() {
        return Err(Error::Precondition(format!("V1d {} must be positive", tp.v1d)));
    }
    let v1 = tp.v1d.as_ms();
    Ok(RatioParams {
        cd_over_v1d: tp.cd.as_ms() / v1,
        c1d_over_v1d: tp.c1d.map(|c| c.as_ms() / v1),
        c2d_over_v1d: tp.c2d.map(|c| c.as_ms() / v1),
    })
}
