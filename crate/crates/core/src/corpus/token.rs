use serde::{Deserialize, Serialize};

use super::{ceil_sample, Consonant, ConsonantClass, Form, Gender, Msec, Vowel, Waveform};
use crate::error::{Error, Result};

/// Who said which word, and which repetition it was.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordIdentity {
    pub word_id: String,
    pub speaker_id: String,
    pub gender: Gender,
    pub repetition: u32,
    /// Same vowel before and after the consonant.
    pub vowel: Vowel,
    pub consonant: Consonant,
    pub form: Form,
}

impl WordIdentity {
    pub fn class(&self) -> ConsonantClass {
        self.consonant.class
    }
}

/// Hand-labelled segment boundaries, milliseconds from waveform start.
///
/// Segments are contiguous: the consonant starts at `v1_offset` and ends at
/// `v2_onset`; `c1_offset` splits closure from release for closure-bearing classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceTimes {
    pub v1_onset: Msec,
    pub v1_offset: Msec,
    pub c1_offset: Option<Msec>,
    pub v2_onset: Msec,
    pub v2_offset: Msec,
}

impl ReferenceTimes {
    pub fn validate(&self, class: ConsonantClass) -> Result<()> {
        let t = self;
        if t.v1_onset < Msec::ZERO {
            return Err(Error::Ordering(format!("v1_onset {} is negative", t.v1_onset)));
        }
        if t.v1_onset >= t.v1_offset {
            return Err(Error::Ordering(format!("v1_onset {} must precede v1_offset {}", t.v1_onset, t.v1_offset)));
        }
        match (class.has_closure(), t.c1_offset) {
            (true, None) => return Err(Error::ClassConsistency(format!("{class} requires c1_offset"))),
            (false, Some(c1)) => {
                return Err(Error::ClassConsistency(format!("{class} has no closure but c1_offset {c1} was given")))
            }
            (true, Some(c1)) => {
                if !(t.v1_offset < c1 && c1 < t.v2_onset) {
                    return Err(Error::Ordering(format!(
                        "c1_offset {c1} must lie strictly between v1_offset {} and v2_onset {}",
                        t.v1_offset, t.v2_onset
                    )));
                }
            }
            (false, None) => {}
        }
        if t.v1_offset >= t.v2_onset {
            return Err(Error::Ordering(format!("v1_offset {} must precede v2_onset {}", t.v1_offset, t.v2_onset)));
        }
        if t.v2_onset >= t.v2_offset {
            return Err(Error::Ordering(format!("v2_onset {} must precede v2_offset {}", t.v2_onset, t.v2_offset)));
        }
        Ok(())
    }

    pub fn shifted(&self, by: Msec) -> ReferenceTimes {
        ReferenceTimes {
            v1_onset: self.v1_onset + by,
            v1_offset: self.v1_offset + by,
            c1_offset: self.c1_offset.map(|c| c + by),
            v2_onset: self.v2_onset + by,
            v2_offset: self.v2_offset + by,
        }
    }
}

/// A validated utterance. Without a waveform only durational analysis applies.
#[derive(Debug, Clone, PartialEq)]
pub struct WordToken {
    pub identity: WordIdentity,
    pub times: ReferenceTimes,
    pub waveform: Option<Waveform>,
}

impl WordToken {
    pub fn class(&self) -> ConsonantClass {
        self.identity.class()
    }

    pub fn waveform(&self) -> Result<&Waveform> {
        self.waveform.as_ref().ok_or(Error::MissingWaveform("energy and frequency measurements"))
    }
}

pub fn build_token(identity: WordIdentity, times: ReferenceTimes, waveform: Option<Waveform>) -> Result<WordToken> {
    times.validate(identity.class())?;
    if let Some(w) = &waveform {
        let need = ceil_sample(times.v2_offset, w.sample_rate);
        if (w.len() as i64) < need {
            return Err(Error::OutOfBounds(format!(
                "v2_offset {} ms needs {need} samples, waveform has {}",
                times.v2_offset,
                w.len()
            )));
        }
    }
    Ok(WordToken { identity, times, waveform })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::load_word_inventory;
    use proptest::prelude::*;

    fn identity(word: &str) -> WordIdentity {
        let inv = load_word_inventory();
        let w = inv.word(word).unwrap();
        WordIdentity {
            word_id: w.word_id.clone(),
            speaker_id: "s1".into(),
            gender: Gender::Male,
            repetition: 1,
            vowel: w.vowel,
            consonant: w.consonant.clone(),
            form: w.form,
        }
    }

    fn ms(v: f64) -> Msec {
        Msec::from_ms(v)
    }

    fn atfa_times() -> ReferenceTimes {
        ReferenceTimes {
            v1_onset: ms(0.0),
            v1_offset: ms(160.0),
            c1_offset: Some(ms(233.1)),
            v2_onset: ms(334.0),
            v2_offset: ms(446.3),
        }
    }

    #[test]
    fn durational_only_token() {
        let tok = build_token(identity("atʃa"), atfa_times(), None).unwrap();
        assert!(tok.waveform.is_none());
        assert!(tok.waveform().is_err());
    }

    #[test]
    fn waveform_too_short() {
        let wave = Waveform::new(vec![0.1; 16_000 * 446 / 1000], 16_000).unwrap();
        let err = build_token(identity("atʃa"), atfa_times(), Some(wave)).unwrap_err();
        assert!(matches!(err, Error::OutOfBounds(_)));
    }

    #[test]
    fn fricative_with_waveform() {
        let times = ReferenceTimes {
            v1_onset: ms(0.0),
            v1_offset: ms(125.3),
            c1_offset: None,
            v2_onset: ms(375.4),
            v2_offset: ms(489.1),
        };
        let wave = Waveform::new(vec![0.1; 8000], 16_000).unwrap();
        assert!(build_token(identity("assa"), times, Some(wave)).is_ok());
    }

    #[test]
    fn fricative_with_closure_is_inconsistent() {
        let mut times = atfa_times();
        times.c1_offset = Some(ms(200.0));
        let err = build_token(identity("assa"), times, None).unwrap_err();
        assert!(matches!(err, Error::ClassConsistency(_)));
        times.c1_offset = None;
        let err = build_token(identity("atʃa"), times, None).unwrap_err();
        assert!(matches!(err, Error::ClassConsistency(_)));
    }

    fn expected_valid(t: &[i64; 5], closure: bool) -> bool {
        let [a, b, c, d, e] = *t;
        let base = a >= 0 && a < b && b < d && d < e;
        if closure {
            base && b < c && c < d
        } else {
            base
        }
    }

    proptest! {
        // Acceptance of a random five-point labelling matches the ordering rule exactly.
        #[test]
        fn accepts_exactly_the_ordered_times(raw in proptest::array::uniform5(-5i64..40)) {
            for (word, closure) in [("atʃa", true), ("assa", false)] {
                let times = ReferenceTimes {
                    v1_onset: Msec::from_micros(raw[0] * 1000),
                    v1_offset: Msec::from_micros(raw[1] * 1000),
                    c1_offset: closure.then(|| Msec::from_micros(raw[2] * 1000)),
                    v2_onset: Msec::from_micros(raw[3] * 1000),
                    v2_offset: Msec::from_micros(raw[4] * 1000),
                };
                let ok = build_token(identity(word), times, None).is_ok();
                prop_assert_eq!(ok, expected_valid(&raw, closure));
            }
        }
    }
}
