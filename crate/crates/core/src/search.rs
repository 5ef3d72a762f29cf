//! Run-constrained sentence search: existence for a fixed `t`, search over
//! both alternation phases, and checking raw sentences against a pattern.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::alphabet::{grl_encode, run_pattern, AlphabetError, GrlEncoding, Multiset, PartitionedAlphabet};
use crate::block_automata::{build_block_dfa, build_word_lattice, to_block_pattern, AutomataError, Block, BlockPattern};
use crate::grammar::{cky_lattice, to_cnf, CnfGrammar, DictionaryCfg, GrammarError, ParseWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error("sequence search needs a two-class alphabet, got {0} classes")]
    NeedsTwoClasses(usize),
    #[error("run lengths must all be at least 1")]
    InvalidLengths,
    #[error("dictionary is empty")]
    EmptyDictionary,
    #[error("exhaustive search passed the candidate cap of {cap}")]
    SearchBudgetExceeded { cap: u64 },
    #[error("letters do not fit the pattern: {0}")]
    PatternMismatch(String),
}

/// Concatenates the words of a sentence.
pub fn spell<S: AsRef<str>>(sentence: &[S]) -> String {
    sentence.iter().map(AsRef::as_ref).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub t: GrlEncoding,
    pub sentence: Vec<String>,
    pub spelled: String,
}

impl Solution {
    /// JSON form: `{"t": [{"letters", "class", "k"}], "sentence", "spelled"}`.
    pub fn to_json(&self, alphabet: &PartitionedAlphabet) -> serde_json::Value {
        let t: Vec<serde_json::Value> = self
            .t
            .runs()
            .iter()
            .map(|run| {
                serde_json::json!({
                    "letters": run.letters.to_string(),
                    "class": alphabet.class_name(run.class),
                    "k": run.len(),
                })
            })
            .collect();
        serde_json::json!({
            "t": t,
            "sentence": self.sentence,
            "spelled": self.spelled,
        })
    }
}

/// Lattice + CKY for one block pattern.
pub fn check_pattern<S: AsRef<str>>(
    pattern: &BlockPattern,
    dictionary: &[S],
    grammar: &CnfGrammar,
) -> Result<Option<ParseWitness>, AutomataError> {
    let lattice = build_word_lattice(&build_block_dfa(pattern), dictionary)?;
    Ok(cky_lattice(grammar, &lattice))
}

/// Looks for a sentence of `grammar` whose spelling lies in `L_t`.
pub fn check_existence<S: AsRef<str>>(
    t: &GrlEncoding,
    dictionary: &[S],
    grammar: &CnfGrammar,
) -> Result<Option<Solution>, AutomataError> {
    Ok(check_pattern(&to_block_pattern(t), dictionary, grammar)?.map(|w| Solution {
        t: t.clone(),
        spelled: spell(&w.words),
        sentence: w.words,
    }))
}

/// Splits `letters` into blocks of the given lengths and records each
/// block's multiset.
pub fn reconstruct_t(
    letters: &str,
    alphabet: &PartitionedAlphabet,
    lengths: &[usize],
) -> Result<GrlEncoding, SearchError> {
    let chars: Vec<char> = letters.chars().collect();
    let total: usize = lengths.iter().sum();
    if chars.len() != total {
        return Err(SearchError::PatternMismatch(format!(
            "{} letters for a pattern of length {total}",
            chars.len()
        )));
    }
    let mut blocks = Vec::with_capacity(lengths.len());
    let mut at = 0;
    for &k in lengths {
        blocks.push(Multiset::new(chars[at..at + k].iter().copied()));
        at += k;
    }
    GrlEncoding::new(alphabet, blocks).map_err(|e| SearchError::PatternMismatch(e.to_string()))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Every multiset choice per block, in lexicographic order.
    #[default]
    Exhaustive,
    /// One check per phase with each block allowed every dictionary letter
    /// of its class.
    Maximal,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Maximal => "maximal",
        })
    }
}

impl FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "maximal" => Ok(SearchMode::Maximal),
            other => Err(format!("unknown search mode `{other}`")),
        }
    }
}

pub const DEFAULT_CANDIDATE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone)]
pub struct SearchInstance {
    alphabet: PartitionedAlphabet,
    lengths: Vec<usize>,
    dictionary: Vec<String>,
    grammar: DictionaryCfg,
    pub mode: SearchMode,
    pub candidate_cap: u64,
}

impl SearchInstance {
    /// Validates the instance. With a case-folding alphabet, dictionary and
    /// grammar words are normalized the same way raw text is.
    pub fn new(
        alphabet: PartitionedAlphabet,
        lengths: Vec<usize>,
        dictionary: Vec<String>,
        grammar: DictionaryCfg,
    ) -> Result<Self, SearchError> {
        if alphabet.class_count() != 2 {
            return Err(SearchError::NeedsTwoClasses(alphabet.class_count()));
        }
        if lengths.contains(&0) {
            return Err(SearchError::InvalidLengths);
        }
        if dictionary.is_empty() {
            return Err(SearchError::EmptyDictionary);
        }
        let fold = |w: &str| w.chars().map(|c| alphabet.normalize(c)).collect::<String>();
        let mut seen = BTreeSet::new();
        let dictionary: Vec<String> = dictionary
            .iter()
            .map(|w| fold(w))
            .filter(|w| seen.insert(w.clone()))
            .collect();
        let grammar = grammar.map_words(fold);
        if let Some(w) = grammar
            .productions()
            .iter()
            .flat_map(|p| p.body.iter())
            .find_map(|s| match s {
                crate::grammar::Symbol::Word(w) if !seen.contains(w) => Some(w.clone()),
                _ => None,
            })
        {
            return Err(GrammarError::UnknownTerminal(w).into());
        }
        Ok(Self {
            alphabet,
            lengths,
            dictionary,
            grammar,
            mode: SearchMode::default(),
            candidate_cap: DEFAULT_CANDIDATE_CAP,
        })
    }

    pub fn with_mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_candidate_cap(mut self, cap: u64) -> Self {
        self.candidate_cap = cap;
        self
    }

    pub fn alphabet(&self) -> &PartitionedAlphabet {
        &self.alphabet
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn dictionary(&self) -> &[String] {
        &self.dictionary
    }

    pub fn grammar(&self) -> &DictionaryCfg {
        &self.grammar
    }

    /// Class of block `i` in the given phase: phase 0 starts with class 0.
    fn class_at(phase: usize, i: usize) -> usize {
        (phase + i) % 2
    }

    /// Candidates the exhaustive mode enumerates when nothing is found:
    /// the sum over both phases of `Π C(|α_i| + k_i − 1, k_i)`.
    pub fn exhaustive_candidate_count(&self) -> BigUint {
        (0..2)
            .map(|phase| {
                self.lengths
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| {
                        let size = self.alphabet.classes()[Self::class_at(phase, i)].symbols.len();
                        multiset_count(size, k)
                    })
                    .product::<BigUint>()
            })
            .sum()
    }
}

fn multiset_count(symbols: usize, k: usize) -> BigUint {
    if symbols == 0 {
        return if k == 0 { BigUint::from(1u32) } else { BigUint::zero() };
    }
    crate::alphabet::binomial_big((symbols + k - 1) as u32, k as u32)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub solution: Option<Solution>,
    /// Sequences `t` enumerated, before deduplication.
    pub candidates: u64,
    /// Lattice parses actually run.
    pub checks: u64,
    /// Phase of the solution: 0 when block 1 uses the first class.
    pub phase: Option<usize>,
}

/// Size-`k` multisets over `symbols` (sorted), in lexicographic order.
fn multisets(symbols: &[char], k: usize) -> Vec<Multiset> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    if symbols.is_empty() {
        return out;
    }
    loop {
        out.push(Multiset::new(idx.iter().map(|&i| symbols[i])));
        // advance the rightmost index that can still grow
        let Some(p) = (0..k).rev().find(|&p| idx[p] + 1 < symbols.len()) else {
            return out;
        };
        let v = idx[p] + 1;
        idx[p..].iter_mut().for_each(|x| *x = v);
    }
}

/// Searches both alternation phases for a sequence `t` and a sentence.
pub fn find_sequence_and_sentence(inst: &SearchInstance) -> Result<SearchOutcome, SearchError> {
    let cnf = to_cnf(&inst.grammar);
    match inst.mode {
        SearchMode::Exhaustive => exhaustive(inst, &cnf),
        SearchMode::Maximal => maximal(inst, &cnf),
    }
}

fn exhaustive(inst: &SearchInstance, cnf: &CnfGrammar) -> Result<SearchOutcome, SearchError> {
    let mut candidates = 0u64;
    let mut checks = 0u64;
    for phase in 0..2 {
        let choices: Vec<Vec<(Multiset, BTreeSet<char>)>> = inst
            .lengths
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let class = &inst.alphabet.classes()[SearchInstance::class_at(phase, i)];
                let symbols: Vec<char> = class.symbols.iter().copied().collect();
                multisets(&symbols, k)
                    .into_iter()
                    .map(|m| {
                        let s = m.support();
                        (m, s)
                    })
                    .collect()
            })
            .collect();
        let mut tried: HashSet<Vec<BTreeSet<char>>> = HashSet::new();
        let mut odometer = vec![0usize; choices.len()];
        loop {
            candidates += 1;
            if candidates > inst.candidate_cap {
                return Err(SearchError::SearchBudgetExceeded {
                    cap: inst.candidate_cap,
                });
            }
            let signature: Vec<BTreeSet<char>> = odometer
                .iter()
                .zip(&choices)
                .map(|(&c, options)| options[c].1.clone())
                .collect();
            if tried.insert(signature.clone()) {
                checks += 1;
                let pattern = BlockPattern::new(
                    signature
                        .into_iter()
                        .zip(&inst.lengths)
                        .map(|(allowed, &len)| Block { allowed, len })
                        .collect(),
                )?;
                if let Some(w) = check_pattern(&pattern, &inst.dictionary, cnf)? {
                    let runs = odometer.iter().zip(&choices).map(|(&c, o)| o[c].0.clone());
                    let t = GrlEncoding::new(&inst.alphabet, runs)?;
                    return Ok(SearchOutcome {
                        solution: Some(Solution {
                            t,
                            spelled: spell(&w.words),
                            sentence: w.words,
                        }),
                        candidates,
                        checks,
                        phase: Some(phase),
                    });
                }
            }
            let Some(p) = (0..odometer.len()).rev().find(|&p| odometer[p] + 1 < choices[p].len()) else {
                break;
            };
            odometer[p] += 1;
            odometer[p + 1..].iter_mut().for_each(|x| *x = 0);
        }
    }
    Ok(SearchOutcome {
        solution: None,
        candidates,
        checks,
        phase: None,
    })
}

fn maximal(inst: &SearchInstance, cnf: &CnfGrammar) -> Result<SearchOutcome, SearchError> {
    let used: BTreeSet<char> = inst.dictionary.iter().flat_map(|w| w.chars()).collect();
    let mut checks = 0u64;
    for phase in 0..2 {
        let blocks: Option<Vec<Block>> = inst
            .lengths
            .iter()
            .enumerate()
            .map(|(i, &len)| {
                let class = &inst.alphabet.classes()[SearchInstance::class_at(phase, i)];
                let allowed: BTreeSet<char> = class.symbols.intersection(&used).copied().collect();
                (!allowed.is_empty()).then_some(Block { allowed, len })
            })
            .collect();
        // A block with no usable letter cannot be spelled in this phase.
        let Some(blocks) = blocks else { continue };
        checks += 1;
        if let Some(w) = check_pattern(&BlockPattern::new(blocks)?, &inst.dictionary, cnf)? {
            let spelled = spell(&w.words);
            let t = reconstruct_t(&spelled, &inst.alphabet, &inst.lengths)?;
            return Ok(SearchOutcome {
                solution: Some(Solution {
                    t,
                    sentence: w.words,
                    spelled,
                }),
                candidates: checks,
                checks,
                phase: Some(phase),
            });
        }
    }
    Ok(SearchOutcome {
        solution: None,
        candidates: checks,
        checks,
        phase: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LetterDiagnostic {
    /// Index in the stripped letter sequence.
    pub index: usize,
    pub letter: char,
    pub class: String,
    /// 1-based run the letter falls in.
    pub run: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SentenceReport {
    pub letters: String,
    pub observed: Vec<usize>,
    pub expected: Vec<usize>,
    pub matches: bool,
    /// 1-based index of the first run that differs.
    pub first_mismatch: Option<usize>,
    pub diagnostics: Vec<LetterDiagnostic>,
}

impl fmt::Display for SentenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "letters:  {}", self.letters)?;
        writeln!(f, "observed: {:?}", self.observed)?;
        writeln!(f, "expected: {:?}", self.expected)?;
        match self.first_mismatch {
            None => writeln!(f, "match"),
            Some(run) => {
                writeln!(f, "first differing run: {run}")?;
                for d in &self.diagnostics {
                    writeln!(f, "  {:>3} {} {:<10} run {}", d.index + 1, d.letter, d.class, d.run)?;
                }
                Ok(())
            }
        }
    }
}

/// Strips `text` to alphabet letters and compares its run pattern to
/// `lengths`, keeping per-letter class assignments.
pub fn sentence_report(
    text: &str,
    alphabet: &PartitionedAlphabet,
    lengths: &[usize],
) -> Result<SentenceReport, AlphabetError> {
    let letters = alphabet.strip(text)?;
    let enc = grl_encode(alphabet, letters.iter().copied())?;
    let observed = run_pattern(&enc);
    let mut diagnostics = Vec::with_capacity(letters.len());
    let mut index = 0;
    for (r, run) in enc.runs().iter().enumerate() {
        for _ in 0..run.len() {
            let letter = letters[index];
            diagnostics.push(LetterDiagnostic {
                index,
                letter,
                class: alphabet.class_name(run.class).to_string(),
                run: r + 1,
            });
            index += 1;
        }
    }
    let first_mismatch = (0..observed.len().max(lengths.len()))
        .find(|&i| observed.get(i) != lengths.get(i))
        .map(|i| i + 1);
    Ok(SentenceReport {
        letters: letters.into_iter().collect(),
        matches: first_mismatch.is_none(),
        observed,
        expected: lengths.to_vec(),
        first_mismatch,
        diagnostics,
    })
}

pub fn check_sentence(
    text: &str,
    alphabet: &PartitionedAlphabet,
    lengths: &[usize],
) -> Result<bool, AlphabetError> {
    Ok(sentence_report(text, alphabet, lengths)?.matches)
}
