//! Word inventory, token identity, reference times and audio ingestion.

mod annotations;
mod audio;
mod inventory;
mod time;
mod token;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use annotations::{parse_annotations, serialize_annotations, AnnotationRecord, ANNOTATION_HEADER};
pub use audio::{load_audio, Waveform};
pub use inventory::{load_word_inventory, Consonant, Inventory, WordType};
pub use time::{ceil_sample, midpoint_sample, to_sample, Msec};
pub use token::{build_token, ReferenceTimes, WordIdentity, WordToken};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Male,
    Female,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Vowel {
    A,
    I,
    U,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Singleton,
    Geminate,
}

/// Manner class of the intervocalic consonant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConsonantClass {
    Affricate,
    Fricative,
    Stop,
    Nasal,
    Liquid,
}

impl ConsonantClass {
    pub const ALL: [ConsonantClass; 5] = [
        ConsonantClass::Affricate,
        ConsonantClass::Fricative,
        ConsonantClass::Stop,
        ConsonantClass::Nasal,
        ConsonantClass::Liquid,
    ];

    /// Affricates and stops are split into closure (C1) and release (C2).
    pub fn has_closure(self) -> bool {
        matches!(self, ConsonantClass::Affricate | ConsonantClass::Stop)
    }

    pub fn name(self) -> &'static str {
        match self {
            ConsonantClass::Affricate => "affricate",
            ConsonantClass::Fricative => "fricative",
            ConsonantClass::Stop => "stop",
            ConsonantClass::Nasal => "nasal",
            ConsonantClass::Liquid => "liquid",
        }
    }
}

impl Gender {
    pub fn name(self) -> &'static str {
        match self {
            Gender::Male => "male",
            Gender::Female => "female",
        }
    }
}

impl Vowel {
    pub const ALL: [Vowel; 3] = [Vowel::A, Vowel::I, Vowel::U];

    pub fn letter(self) -> char {
        match self {
            Vowel::A => 'a',
            Vowel::I => 'i',
            Vowel::U => 'u',
        }
    }
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::Singleton => "singleton",
            Form::Geminate => "geminate",
        }
    }
}

macro_rules! display_via {
    ($ty:ty, $method:ident) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.$method())
            }
        }
    };
}

display_via!(ConsonantClass, name);
display_via!(Gender, name);
display_via!(Form, name);
display_via!(Vowel, letter);

impl FromStr for ConsonantClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let singular = lower.strip_suffix('s').unwrap_or(&lower);
        ConsonantClass::ALL
            .into_iter()
            .find(|c| c.name() == singular)
            .ok_or_else(|| Error::Malformed(format!("unknown consonant class `{s}`")))
    }
}

impl FromStr for Gender {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "male" | "m" => Ok(Gender::Male),
            "female" | "f" => Ok(Gender::Female),
            _ => Err(Error::Malformed(format!("unknown gender `{s}`"))),
        }
    }
}

impl FromStr for Vowel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" => Ok(Vowel::A),
            "i" => Ok(Vowel::I),
            "u" => Ok(Vowel::U),
            _ => Err(Error::Malformed(format!("unknown vowel `{s}`"))),
        }
    }
}

impl FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "singleton" | "s" => Ok(Form::Singleton),
            "geminate" | "g" => Ok(Form::Geminate),
            _ => Err(Error::Malformed(format!("unknown form `{s}`"))),
        }
    }
}
