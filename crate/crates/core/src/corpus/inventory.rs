use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ConsonantClass, Form, Vowel};
use crate::error::{Error, Result};

/// An intervocalic consonant together with the properties the analyses key on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Consonant {
    pub symbol: String,
    pub class: ConsonantClass,
    pub voiced: bool,
    /// `Some` only for affricates: dental {ts, dz} vs non-dental {tʃ, dʒ}.
    pub dental: Option<bool>,
}

impl Consonant {
    pub fn new(symbol: &str, class: ConsonantClass, voiced: bool) -> Self {
        let dental = (class == ConsonantClass::Affricate).then_some(matches!(symbol, "ts" | "dz"));
        Consonant { symbol: symbol.to_string(), class, voiced, dental }
    }

    /// Spelling of the geminate: the first segment is doubled (`tʃ` → `ttʃ`).
    pub fn geminate_spelling(&self) -> String {
        let mut chars = self.symbol.chars();
        match chars.next() {
            Some(first) => format!("{first}{}", self.symbol),
            None => String::new(),
        }
    }

    pub fn word_id(&self, vowel: Vowel, form: Form) -> String {
        let v = vowel.letter();
        match form {
            Form::Singleton => format!("{v}{}{v}", self.symbol),
            Form::Geminate => format!("{v}{}{v}", self.geminate_spelling()),
        }
    }
}

/// One symmetric VCV / VCCV word type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordType {
    pub word_id: String,
    pub vowel: Vowel,
    pub consonant: Consonant,
    pub form: Form,
}

/// Open registry of word types keyed by word id.
#[derive(Debug, Clone, Default)]
pub struct Inventory {
    words: BTreeMap<String, WordType>,
    consonants: Vec<Consonant>,
}

const AFFRICATES: [(&str, bool); 4] = [("tʃ", false), ("dʒ", true), ("ts", false), ("dz", true)];
const FRICATIVES: [(&str, bool); 3] = [("f", false), ("v", true), ("s", false)];
const STOPS: [(&str, bool); 6] = [("p", false), ("t", false), ("k", false), ("b", true), ("d", true), ("g", true)];
const NASALS: [(&str, bool); 2] = [("m", true), ("n", true)];
const LIQUIDS: [(&str, bool); 2] = [("l", true), ("r", true)];

/// The affricate and fricative word sets: 24 + 18 word types.
pub fn load_word_inventory() -> Inventory {
    let mut inv = Inventory::default();
    for (sym, voiced) in AFFRICATES {
        inv.register(Consonant::new(sym, ConsonantClass::Affricate, voiced));
    }
    for (sym, voiced) in FRICATIVES {
        inv.register(Consonant::new(sym, ConsonantClass::Fricative, voiced));
    }
    inv
}

impl Inventory {
    /// Affricates and fricatives plus the stop, nasal and liquid extension classes.
    pub fn with_extensions() -> Self {
        let mut inv = load_word_inventory();
        for (class, set) in [
            (ConsonantClass::Stop, &STOPS[..]),
            (ConsonantClass::Nasal, &NASALS[..]),
            (ConsonantClass::Liquid, &LIQUIDS[..]),
        ] {
            for &(sym, voiced) in set {
                inv.register(Consonant::new(sym, class, voiced));
            }
        }
        inv
    }

    /// Adds the six word types (3 vowels × 2 forms) of a consonant.
    /// Re-registering a symbol of the same class is a no-op.
    pub fn register(&mut self, consonant: Consonant) {
        if self.consonants.iter().any(|c| c.symbol == consonant.symbol && c.class == consonant.class) {
            return;
        }
        for vowel in Vowel::ALL {
            for form in [Form::Singleton, Form::Geminate] {
                let word_id = consonant.word_id(vowel, form);
                self.words.insert(word_id.clone(), WordType { word_id, vowel, consonant: consonant.clone(), form });
            }
        }
        self.consonants.push(consonant);
    }

    pub fn word(&self, word_id: &str) -> Result<&WordType> {
        self.words.get(word_id).ok_or_else(|| Error::UnknownWord(word_id.to_string()))
    }

    pub fn consonant(&self, class: ConsonantClass, symbol: &str) -> Result<&Consonant> {
        self.consonants
            .iter()
            .find(|c| c.class == class && c.symbol == symbol)
            .ok_or_else(|| Error::UnknownConsonant { symbol: symbol.to_string(), class: class.to_string() })
    }

    pub fn consonants(&self) -> &[Consonant] {
        &self.consonants
    }

    pub fn words(&self) -> impl Iterator<Item = &WordType> {
        self.words.values()
    }

    pub fn words_of(&self, class: ConsonantClass) -> impl Iterator<Item = &WordType> {
        self.words.values().filter(move |w| w.consonant.class == class)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}
