//! 256-sample reference frames and segment sample intervals.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::{midpoint_sample, to_sample, ConsonantClass, Msec, ReferenceTimes};
use crate::error::{Error, Result};

pub const FRAME_LEN: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FrameKind {
    V1Centre,
    V1Offset,
    V1ToCTransition,
    COnset,
    C1Onset,
    C1Centre,
    CCentre,
    C2Centre,
    C1ToC2Transition,
    COffset,
    C2Offset,
    V2Onset,
    V2Centre,
}

/// How a frame sits relative to its anchor instant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Placement {
    Centred,
    StartingAt,
    EndingAt,
}

impl FrameKind {
    pub const ALL: [FrameKind; 13] = [
        FrameKind::V1Centre,
        FrameKind::V1Offset,
        FrameKind::V1ToCTransition,
        FrameKind::COnset,
        FrameKind::C1Onset,
        FrameKind::C1Centre,
        FrameKind::CCentre,
        FrameKind::C2Centre,
        FrameKind::C1ToC2Transition,
        FrameKind::COffset,
        FrameKind::C2Offset,
        FrameKind::V2Onset,
        FrameKind::V2Centre,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrameKind::V1Centre => "V1_CENTRE",
            FrameKind::V1Offset => "V1_OFFSET",
            FrameKind::V1ToCTransition => "V1_TO_C_TRANSITION",
            FrameKind::COnset => "C_ONSET",
            FrameKind::C1Onset => "C1_ONSET",
            FrameKind::C1Centre => "C1_CENTRE",
            FrameKind::CCentre => "C_CENTRE",
            FrameKind::C2Centre => "C2_CENTRE",
            FrameKind::C1ToC2Transition => "C1_TO_C2_TRANSITION",
            FrameKind::COffset => "C_OFFSET",
            FrameKind::C2Offset => "C2_OFFSET",
            FrameKind::V2Onset => "V2_ONSET",
            FrameKind::V2Centre => "V2_CENTRE",
        }
    }

    /// Whether this frame exists for `class`.
    pub fn applies_to(self, class: ConsonantClass) -> bool {
        use FrameKind::*;
        match self {
            C1Onset | C1Centre | C2Centre | C1ToC2Transition | C2Offset => class.has_closure(),
            COnset | CCentre | COffset => !class.has_closure(),
            V1Centre | V1Offset | V1ToCTransition | V2Onset | V2Centre => true,
        }
    }

    /// Frames lying inside the consonant.
    pub fn is_consonantal(self) -> bool {
        use FrameKind::*;
        matches!(self, COnset | C1Onset | C1Centre | CCentre | C2Centre | C1ToC2Transition | COffset | C2Offset)
    }

    pub fn for_class(class: ConsonantClass) -> impl Iterator<Item = FrameKind> {
        FrameKind::ALL.into_iter().filter(move |k| k.applies_to(class))
    }
}

impl fmt::Display for FrameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A 256-sample window `[start, start + 256)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSpan {
    pub start: usize,
}

impl FrameSpan {
    pub const fn len(&self) -> usize {
        FRAME_LEN
    }

    pub const fn is_empty(&self) -> bool {
        false
    }

    pub fn end(&self) -> usize {
        self.start + FRAME_LEN
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.end()
    }
}

/// Anchor sample (rounded once) and placement for a frame.
fn anchor(times: &ReferenceTimes, kind: FrameKind, sample_rate: u32) -> Result<(i64, Placement)> {
    use FrameKind::*;
    use Placement::*;
    let t = times;
    let c1 = || t.c1_offset.ok_or_else(|| Error::ClassConsistency(format!("{kind} needs c1_offset")));
    let at = |m: Msec| to_sample(m, sample_rate);
    let mid = |a: Msec, b: Msec| midpoint_sample(a, b, sample_rate);
    Ok(match kind {
        V1Centre => (mid(t.v1_onset, t.v1_offset), Centred),
        V1Offset => (at(t.v1_offset), EndingAt),
        V1ToCTransition => (at(t.v1_offset), Centred),
        COnset | C1Onset => (at(t.v1_offset), StartingAt),
        C1Centre => (mid(t.v1_offset, c1()?), Centred),
        CCentre => (mid(t.v1_offset, t.v2_onset), Centred),
        C2Centre => (mid(c1()?, t.v2_onset), Centred),
        C1ToC2Transition => (at(c1()?), Centred),
        COffset | C2Offset => (at(t.v2_onset), EndingAt),
        V2Onset => (at(t.v2_onset), StartingAt),
        V2Centre => (mid(t.v2_onset, t.v2_offset), Centred),
    })
}

/// Places a reference frame, shifting it inward when it would cross a waveform edge.
pub fn frame_for(
    times: &ReferenceTimes,
    kind: FrameKind,
    class: ConsonantClass,
    sample_rate: u32,
    waveform_len: usize,
) -> Result<FrameSpan> {
    if !kind.applies_to(class) {
        return Err(Error::FrameClassMismatch { kind: kind.to_string(), class: class.to_string() });
    }
    if waveform_len < FRAME_LEN {
        return Err(Error::WaveformTooShort { len: waveform_len, need: FRAME_LEN });
    }
    let (a, placement) = anchor(times, kind, sample_rate)?;
    let half = (FRAME_LEN / 2) as i64;
    let start = match placement {
        Placement::Centred => a - half,
        Placement::StartingAt => a,
        Placement::EndingAt => a - FRAME_LEN as i64,
    };
    let max_start = (waveform_len - FRAME_LEN) as i64;
    Ok(FrameSpan { start: start.clamp(0, max_start) as usize })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Segment {
    V1,
    C,
    C1,
    C2,
    V2,
    Word,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Segment::V1 => "V1",
            Segment::C => "C",
            Segment::C1 => "C1",
            Segment::C2 => "C2",
            Segment::V2 => "V2",
            Segment::Word => "WORD",
        };
        f.write_str(s)
    }
}

/// Half-open sample interval `[round(start), round(end))` of a segment.
pub fn interval_samples(
    times: &ReferenceTimes,
    segment: Segment,
    class: ConsonantClass,
    sample_rate: u32,
) -> Result<(usize, usize)> {
    let t = times;
    let closure = || match (class.has_closure(), t.c1_offset) {
        (true, Some(c1)) => Ok(c1),
        _ => Err(Error::SegmentClassMismatch { segment: segment.to_string(), class: class.to_string() }),
    };
    let (a, b) = match segment {
        Segment::V1 => (t.v1_onset, t.v1_offset),
        Segment::C => (t.v1_offset, t.v2_onset),
        Segment::C1 => (t.v1_offset, closure()?),
        Segment::C2 => (closure()?, t.v2_onset),
        Segment::V2 => (t.v2_onset, t.v2_offset),
        Segment::Word => (t.v1_onset, t.v2_offset),
    };
    let s = to_sample(a, sample_rate).max(0) as usize;
    let e = to_sample(b, sample_rate).max(0) as usize;
    Ok((s, e))
}
