//! Partitioned alphabets, generalized run-length (GRL) encodings and the
//! counting formulas for arrangements over `r` symbol classes.
//!
//! A [`PartitionedAlphabet`] is an ordered list of named, pairwise-disjoint,
//! non-empty symbol classes. Class indices are the declaration order
//! (0-based in code, printed 1-based by the CLI where it matters).

mod counting;
mod grl;

pub use counting::{count_all, count_balanced, count_surjective, stirling2};
pub(crate) use counting::binomial as binomial_big;
pub use grl::{
    grl_encode, phi_compress, psi_expand, run_pattern, AbstractGrlVector, Arrangement,
    GrlEncoding, GrlRun, Multiset,
};

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("an alphabet needs at least one class")]
    NoClasses,
    #[error("class `{0}` is empty")]
    EmptyClass(String),
    #[error("duplicate class name `{0}`")]
    DuplicateClass(String),
    #[error("symbol {symbol:?} appears in both `{first}` and `{second}`")]
    OverlappingClasses {
        symbol: char,
        first: String,
        second: String,
    },
    #[error("class entry {0:?} is not a single character")]
    NotASymbol(String),
    #[error("symbol {symbol:?} at position {position} belongs to no class")]
    UnknownSymbol { symbol: char, position: usize },
    #[error("invalid run-length vector: {0}")]
    InvalidVector(String),
    #[error("label {label} is outside 1..={classes}")]
    InvalidLabel { label: usize, classes: usize },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("malformed alphabet file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolClass {
    pub name: String,
    pub symbols: BTreeSet<char>,
}

/// An ordered collection of disjoint symbol classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedAlphabet {
    classes: Vec<SymbolClass>,
    complete: bool,
    case_fold: bool,
    lookup: HashMap<char, usize>,
}

impl PartitionedAlphabet {
    /// Validates and builds an alphabet. Class order is preserved and becomes
    /// the class index.
    pub fn new<I, N, S>(classes: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = (N, S)>,
        N: Into<String>,
        S: IntoIterator<Item = char>,
    {
        let mut built = Vec::new();
        let mut lookup = HashMap::new();
        for (name, symbols) in classes {
            let name = name.into();
            if built.iter().any(|c: &SymbolClass| c.name == name) {
                return Err(AlphabetError::DuplicateClass(name));
            }
            let symbols: BTreeSet<char> = symbols.into_iter().collect();
            if symbols.is_empty() {
                return Err(AlphabetError::EmptyClass(name));
            }
            let index = built.len();
            for &symbol in &symbols {
                if let Some(&other) = lookup.get(&symbol) {
                    let other: &SymbolClass = &built[other];
                    return Err(AlphabetError::OverlappingClasses {
                        symbol,
                        first: other.name.clone(),
                        second: name,
                    });
                }
                lookup.insert(symbol, index);
            }
            built.push(SymbolClass { name, symbols });
        }
        if built.is_empty() {
            return Err(AlphabetError::NoClasses);
        }
        Ok(Self {
            classes: built,
            complete: false,
            case_fold: false,
            lookup,
        })
    }

    /// Marks the alphabet as complete: its classes cover the whole symbol set
    /// that raw text is expected to draw letters from.
    pub fn with_complete(mut self, complete: bool) -> Self {
        self.complete = complete;
        self
    }

    /// Raw sentences are uppercased before lookup when set.
    pub fn with_case_fold(mut self, case_fold: bool) -> Self {
        self.case_fold = case_fold;
        self
    }

    pub fn classes(&self) -> &[SymbolClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, index: usize) -> Option<&SymbolClass> {
        self.classes.get(index)
    }

    pub fn class_name(&self, index: usize) -> &str {
        &self.classes[index].name
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn case_fold(&self) -> bool {
        self.case_fold
    }

    /// Class index of `symbol`, if it belongs to any class.
    pub fn classify(&self, symbol: char) -> Option<usize> {
        self.lookup.get(&symbol).copied()
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.lookup.contains_key(&symbol)
    }

    /// Applies the alphabet's case policy to one raw character.
    pub fn normalize(&self, symbol: char) -> char {
        if self.case_fold {
            let mut upper = symbol.to_uppercase();
            match (upper.next(), upper.next()) {
                (Some(u), None) => u,
                _ => symbol,
            }
        } else {
            symbol
        }
    }

    /// Normalizes `text` and keeps only symbols that belong to a class.
    ///
    /// Characters outside every class are dropped, except that a complete
    /// alphabet rejects alphabetic characters it does not know.
    pub fn strip(&self, text: &str) -> Result<Vec<char>, AlphabetError> {
        let mut kept = Vec::new();
        for (position, raw) in text.chars().enumerate() {
            let symbol = self.normalize(raw);
            if self.contains(symbol) {
                kept.push(symbol);
            } else if self.complete && symbol.is_alphabetic() {
                return Err(AlphabetError::UnknownSymbol { symbol, position });
            }
        }
        Ok(kept)
    }

    /// Parses the JSON alphabet file format:
    /// `{"classes": {"name": ["a", "b"], ...}, "complete": bool, "case_fold": bool}`.
    /// Both flags default to false.
    pub fn from_json(text: &str) -> Result<Self, AlphabetError> {
        let file: AlphabetFile =
            serde_json::from_str(text).map_err(|e| AlphabetError::Format(e.to_string()))?;
        let (complete, case_fold) = (file.complete, file.case_fold);
        let mut classes = Vec::new();
        for (name, entries) in file.classes_in_order()? {
            let mut symbols = Vec::with_capacity(entries.len());
            for entry in entries {
                let mut chars = entry.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => symbols.push(c),
                    _ => return Err(AlphabetError::NotASymbol(entry)),
                }
            }
            classes.push((name, symbols));
        }
        Ok(Self::new(classes)?
            .with_complete(complete)
            .with_case_fold(case_fold))
    }

    pub fn to_json(&self) -> String {
        let file = AlphabetFile {
            classes: self
                .classes
                .iter()
                .map(|c| {
                    let symbols = c.symbols.iter().map(|s| serde_json::Value::String(s.to_string())).collect();
                    (c.name.clone(), serde_json::Value::Array(symbols))
                })
                .collect(),
            complete: self.complete,
            case_fold: self.case_fold,
        };
        serde_json::to_string_pretty(&file).expect("alphabet serializes")
    }
}

// serde_json is built with `preserve_order`, so `Map` keeps file order.
#[derive(Serialize, Deserialize)]
struct AlphabetFile {
    classes: serde_json::Map<String, serde_json::Value>,
    #[serde(default)]
    complete: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    case_fold: bool,
}

impl AlphabetFile {
    fn classes_in_order(self) -> Result<Vec<(String, Vec<String>)>, AlphabetError> {
        self.classes
            .into_iter()
            .map(|(name, value)| {
                serde_json::from_value::<Vec<String>>(value)
                    .map(|symbols| (name.clone(), symbols))
                    .map_err(|e| AlphabetError::Format(format!("class `{name}`: {e}")))
            })
            .collect()
    }
}

pub const STRAIGHT_LETTERS: &str = "AEFHIKLMNTVWXYZ";
pub const CURVED_LETTERS: &str = "BCDGJOPQRSU";

/// The 26 uppercase English letters split into letters drawn only with
/// straight strokes (class 0) and letters with at least one curve (class 1).
pub fn english_partition() -> PartitionedAlphabet {
    PartitionedAlphabet::new([
        ("straight", STRAIGHT_LETTERS.chars()),
        ("curved", CURVED_LETTERS.chars()),
    ])
    .expect("built-in partition is valid")
    .with_complete(true)
    .with_case_fold(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab_cde() -> PartitionedAlphabet {
        PartitionedAlphabet::new([("A1", "ab".chars()), ("A2", "cde".chars())]).unwrap()
    }

    #[test]
    fn builds_two_class_alphabet() {
        let a = ab_cde();
        assert_eq!(a.class_count(), 2);
        assert_eq!(a.classify('b'), Some(0));
        assert_eq!(a.classify('e'), Some(1));
        assert_eq!(a.classify('z'), None);
        assert_eq!(a.class_name(1), "A2");
    }

    #[test]
    fn single_class_alphabet() {
        let a = PartitionedAlphabet::new([("A", "x".chars())]).unwrap();
        assert_eq!(a.class_count(), 1);
        assert_eq!(a.classify('x'), Some(0));
    }

    #[test]
    fn rejects_overlap_and_empty() {
        let err = PartitionedAlphabet::new([("A", "a".chars()), ("B", "a".chars())]).unwrap_err();
        assert!(matches!(err, AlphabetError::OverlappingClasses { symbol: 'a', .. }));
        let err = PartitionedAlphabet::new([("A", "a".chars()), ("B", "".chars())]).unwrap_err();
        assert_eq!(err, AlphabetError::EmptyClass("B".into()));
        let none: Vec<(&str, std::str::Chars)> = vec![];
        assert_eq!(PartitionedAlphabet::new(none).unwrap_err(), AlphabetError::NoClasses);
    }

    #[test]
    fn english_partition_sizes() {
        let e = english_partition();
        assert_eq!(e.classes()[0].symbols.len(), 15);
        assert_eq!(e.classes()[1].symbols.len(), 11);
        assert!(e.is_complete());
        for c in 'A'..='Z' {
            assert!(e.contains(c), "{c} missing");
        }
        assert_eq!(e.classify('W'), Some(0));
        assert_eq!(e.classify('B'), Some(1));
    }

    #[test]
    fn strip_drops_punctuation_and_folds_case() {
        let e = english_partition();
        let kept: String = e.strip("we, burden!").unwrap().into_iter().collect();
        assert_eq!(kept, "WEBURDEN");
        assert!(matches!(
            e.strip("CAFÉ"),
            Err(AlphabetError::UnknownSymbol { symbol: 'É', position: 3 })
        ));
    }

    #[test]
    fn incomplete_alphabet_strips_unknown_letters() {
        let a = ab_cde();
        let kept: String = a.strip("a-b z c").unwrap().into_iter().collect();
        assert_eq!(kept, "abc");
    }

    #[test]
    fn json_preserves_class_order() {
        let text = r#"{"classes": {"zeta": ["c", "d"], "alpha": ["a", "b"]}, "complete": true}"#;
        let a = PartitionedAlphabet::from_json(text).unwrap();
        assert_eq!(a.class_name(0), "zeta");
        assert_eq!(a.classify('a'), Some(1));
        assert!(a.is_complete());
        let back = PartitionedAlphabet::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn json_rejects_multichar_symbols() {
        let text = r#"{"classes": {"A": ["ab"]}, "complete": false}"#;
        assert_eq!(
            PartitionedAlphabet::from_json(text).unwrap_err(),
            AlphabetError::NotASymbol("ab".into())
        );
    }
}
