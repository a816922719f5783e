//! Durational, spectral and energy analysis of singleton and geminate
//! consonants in VCV/VCCV words: annotation parsing, reference framing,
//! acoustic measurement, ANOVA and correlation, threshold classifiers, and
//! seeded synthetic corpora.

// Negated float comparisons are used so that NaN falls on the rejecting side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acoustics;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod framing;
pub mod measurement;
pub mod stats;
pub mod synth;

pub use error::{Error, Result};
