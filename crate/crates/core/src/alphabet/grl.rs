use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AlphabetError, PartitionedAlphabet};

/// A multiset of symbols stored as a sorted sequence with repetition, so
/// equal multisets compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Multiset(Vec<char>);

impl Multiset {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Self {
        let mut v: Vec<char> = symbols.into_iter().collect();
        v.sort_unstable();
        Self(v)
    }

    /// Cardinality, counting multiplicity.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn count(&self, symbol: char) -> usize {
        self.0.iter().filter(|&&c| c == symbol).count()
    }

    /// The underlying set, ignoring multiplicity.
    pub fn support(&self) -> BTreeSet<char> {
        self.0.iter().copied().collect()
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl From<&str> for Multiset {
    fn from(s: &str) -> Self {
        Multiset::new(s.chars())
    }
}

/// One run `(C_j, k_j)` of a GRL encoding; `k_j` is `letters.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrlRun {
    pub letters: Multiset,
    pub class: usize,
}

impl GrlRun {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// A sequence of runs whose letters each lie inside one class, with
/// consecutive runs drawn from different classes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrlEncoding {
    runs: Vec<GrlRun>,
}

impl GrlEncoding {
    /// Builds an encoding from per-run multisets, deriving each run's class.
    pub fn new(
        alphabet: &PartitionedAlphabet,
        runs: impl IntoIterator<Item = Multiset>,
    ) -> Result<Self, AlphabetError> {
        let mut out: Vec<GrlRun> = Vec::new();
        for letters in runs {
            let class = class_of(alphabet, &letters)?;
            if let Some(prev) = out.last() {
                if prev.class == class {
                    return Err(AlphabetError::InvalidVector(format!(
                        "runs {} and {} both use class `{}`",
                        out.len(),
                        out.len() + 1,
                        alphabet.class_name(class)
                    )));
                }
            }
            out.push(GrlRun { letters, class });
        }
        Ok(Self { runs: out })
    }

    pub fn runs(&self) -> &[GrlRun] {
        &self.runs
    }

    pub fn len(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Total length `n = Σ k_j`.
    pub fn total_length(&self) -> usize {
        self.runs.iter().map(GrlRun::len).sum()
    }

    /// Drops the letters, keeping `(class, length)` with 1-based class labels.
    pub fn abstract_vector(&self) -> AbstractGrlVector {
        AbstractGrlVector {
            runs: self.runs.iter().map(|r| (r.class + 1, r.len())).collect(),
        }
    }
}

fn class_of(alphabet: &PartitionedAlphabet, letters: &Multiset) -> Result<usize, AlphabetError> {
    let mut class = None;
    for (position, &symbol) in letters.symbols().iter().enumerate() {
        let c = alphabet
            .classify(symbol)
            .ok_or(AlphabetError::UnknownSymbol { symbol, position })?;
        match class {
            None => class = Some(c),
            Some(prev) if prev != c => {
                return Err(AlphabetError::InvalidVector(format!(
                    "multiset `{letters}` mixes classes"
                )))
            }
            _ => {}
        }
    }
    class.ok_or_else(|| AlphabetError::InvalidVector("empty run".into()))
}

/// Splits `text` into maximal same-class runs.
pub fn grl_encode(
    alphabet: &PartitionedAlphabet,
    text: impl IntoIterator<Item = char>,
) -> Result<GrlEncoding, AlphabetError> {
    let mut runs: Vec<(usize, Vec<char>)> = Vec::new();
    for (position, symbol) in text.into_iter().enumerate() {
        let class = alphabet
            .classify(symbol)
            .ok_or(AlphabetError::UnknownSymbol { symbol, position })?;
        match runs.last_mut() {
            Some((c, letters)) if *c == class => letters.push(symbol),
            _ => runs.push((class, vec![symbol])),
        }
    }
    Ok(GrlEncoding {
        runs: runs
            .into_iter()
            .map(|(class, letters)| GrlRun {
                letters: Multiset::new(letters),
                class,
            })
            .collect(),
    })
}

/// The integer sequence `(k_1, ..., k_m)`.
pub fn run_pattern(enc: &GrlEncoding) -> Vec<usize> {
    enc.runs.iter().map(GrlRun::len).collect()
}

/// A sequence of group labels `g_1..g_n`; labels are 1-based.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrangement(Vec<usize>);

impl Arrangement {
    /// Checks every label lies in `1..=classes`.
    pub fn new(labels: Vec<usize>, classes: usize) -> Result<Self, AlphabetError> {
        if let Some(&label) = labels.iter().find(|&&l| l == 0 || l > classes) {
            return Err(AlphabetError::InvalidLabel { label, classes });
        }
        Ok(Self(labels))
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Partition-level run vector: `(class label, run length)` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbstractGrlVector {
    runs: Vec<(usize, usize)>,
}

impl AbstractGrlVector {
    /// Rejects zero-length runs and equal adjacent labels.
    pub fn new(runs: Vec<(usize, usize)>) -> Result<Self, AlphabetError> {
        if let Some(i) = runs.iter().position(|&(_, len)| len == 0) {
            return Err(AlphabetError::InvalidVector(format!(
                "run {} has zero length",
                i + 1
            )));
        }
        if let Some(i) = runs.windows(2).position(|w| w[0].0 == w[1].0) {
            return Err(AlphabetError::InvalidVector(format!(
                "runs {} and {} share label {}",
                i + 1,
                i + 2,
                runs[i].0
            )));
        }
        Ok(Self { runs })
    }

    pub fn runs(&self) -> &[(usize, usize)] {
        &self.runs
    }

    pub fn total_length(&self) -> usize {
        self.runs.iter().map(|&(_, s)| s).sum()
    }
}

/// φ: merges maximal runs of equal labels.
pub fn phi_compress(a: &Arrangement) -> AbstractGrlVector {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &label in a.labels() {
        match runs.last_mut() {
            Some((l, len)) if *l == label => *len += 1,
            _ => runs.push((label, 1)),
        }
    }
    AbstractGrlVector { runs }
}

/// ψ: repeats each label by its run length.
pub fn psi_expand(v: &AbstractGrlVector) -> Arrangement {
    Arrangement(
        v.runs
            .iter()
            .flat_map(|&(label, len)| std::iter::repeat_n(label, len))
            .collect(),
    )
}
