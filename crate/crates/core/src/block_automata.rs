//! Block languages, their positional DFA, and the word lattice obtained by
//! reading dictionary words through that DFA.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::GrlEncoding;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("block {0} has an empty symbol set")]
    EmptyBlockSet(usize),
    #[error("block {0} has length zero")]
    ZeroLengthBlock(usize),
    #[error("block language has more than {limit} strings")]
    LimitExceeded { limit: usize },
    #[error("the dictionary contains the empty word")]
    EmptyWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub allowed: BTreeSet<char>,
    pub len: usize,
}

/// `(Σ_1)^{k_1} ... (Σ_m)^{k_m}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockPattern {
    blocks: Vec<Block>,
}

impl BlockPattern {
    pub fn new(blocks: Vec<Block>) -> Result<Self, AutomataError> {
        for (i, b) in blocks.iter().enumerate() {
            if b.allowed.is_empty() {
                return Err(AutomataError::EmptyBlockSet(i + 1));
            }
            if b.len == 0 {
                return Err(AutomataError::ZeroLengthBlock(i + 1));
            }
        }
        Ok(Self { blocks })
    }

    /// Convenience constructor from `(symbols, length)` pairs.
    pub fn from_sets<'a>(blocks: impl IntoIterator<Item = (&'a str, usize)>) -> Result<Self, AutomataError> {
        Self::new(
            blocks
                .into_iter()
                .map(|(symbols, len)| Block {
                    allowed: symbols.chars().collect(),
                    len,
                })
                .collect(),
        )
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Total length `K`.
    pub fn total_len(&self) -> usize {
        self.blocks.iter().map(|b| b.len).sum()
    }

    /// `Π |Σ_i|^{k_i}`, saturating.
    pub fn language_size(&self) -> usize {
        self.blocks.iter().fold(1usize, |acc, b| {
            let per = (b.allowed.len()).saturating_pow(b.len as u32);
            acc.saturating_mul(per)
        })
    }
}

/// Collapses each run's multiset to its underlying set.
pub fn to_block_pattern(t: &GrlEncoding) -> BlockPattern {
    BlockPattern {
        blocks: t
            .runs()
            .iter()
            .map(|run| Block {
                allowed: run.letters.support(),
                len: run.len(),
            })
            .collect(),
    }
}

/// Positional DFA with states `0..=K`. State `j` advances on symbols allowed
/// at position `j + 1`; there is no sink state, a missing transition rejects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDfa {
    pattern: BlockPattern,
    /// Block index owning position `j + 1`, for each state `j < K`.
    owner: Vec<usize>,
}

pub fn build_block_dfa(pattern: &BlockPattern) -> BlockDfa {
    let owner = pattern
        .blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| std::iter::repeat_n(i, b.len))
        .collect();
    BlockDfa {
        pattern: pattern.clone(),
        owner,
    }
}

impl BlockDfa {
    pub fn state_count(&self) -> usize {
        self.owner.len() + 1
    }

    pub fn accepting_state(&self) -> usize {
        self.owner.len()
    }

    pub fn pattern(&self) -> &BlockPattern {
        &self.pattern
    }

    /// Symbols readable from `state`.
    pub fn allowed_at(&self, state: usize) -> Option<&BTreeSet<char>> {
        self.owner
            .get(state)
            .map(|&block| &self.pattern.blocks[block].allowed)
    }

    pub fn step(&self, state: usize, symbol: char) -> Option<usize> {
        self.allowed_at(state)
            .filter(|allowed| allowed.contains(&symbol))
            .map(|_| state + 1)
    }

    /// Extended transition: reads every symbol of `s` from `state`.
    pub fn run(&self, state: usize, s: impl IntoIterator<Item = char>) -> Option<usize> {
        s.into_iter().try_fold(state, |q, c| self.step(q, c))
    }

    /// Transition table over `symbols`: row `j` holds `δ(q_j, σ)` per symbol.
    pub fn transition_table(&self, symbols: &[char]) -> Vec<Vec<Option<usize>>> {
        (0..self.state_count())
            .map(|q| symbols.iter().map(|&c| self.step(q, c)).collect())
            .collect()
    }
}

pub fn dfa_accepts(dfa: &BlockDfa, s: impl IntoIterator<Item = char>) -> bool {
    dfa.run(0, s) == Some(dfa.accepting_state())
}

/// Every string of the block language, if there are at most `limit`.
pub fn enumerate_block_language(
    pattern: &BlockPattern,
    limit: usize,
) -> Result<BTreeSet<String>, AutomataError> {
    if pattern.language_size() > limit {
        return Err(AutomataError::LimitExceeded { limit });
    }
    let mut out = vec![String::new()];
    for block in &pattern.blocks {
        for _ in 0..block.len {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    block.allowed.iter().map(move |&c| {
                        let mut s = prefix.clone();
                        s.push(c);
                        s
                    })
                })
                .collect();
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeEdge {
    pub from: usize,
    pub word: String,
    pub to: usize,
}

/// Word-labeled DAG over DFA states `0..=K`. Edges are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordLattice {
    k: usize,
    edges: BTreeSet<LatticeEdge>,
}

impl WordLattice {
    /// Final position `K`.
    pub fn end(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> impl Iterator<Item = &LatticeEdge> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, from: usize, word: &str, to: usize) -> bool {
        self.edges.contains(&LatticeEdge {
            from,
            word: word.to_string(),
            to,
        })
    }

    /// The linear lattice spelling exactly `words`, one edge per word.
    pub fn linear(words: &[&str]) -> Self {
        let mut edges = BTreeSet::new();
        let mut at = 0;
        for w in words {
            let next = at + w.chars().count();
            edges.insert(LatticeEdge {
                from: at,
                word: (*w).to_string(),
                to: next,
            });
            at = next;
        }
        Self { k: at, edges }
    }

    /// Builds a lattice from raw edges. Each edge must advance by the
    /// character length of its word and stay within `0..=k`.
    pub fn from_edges(k: usize, edges: impl IntoIterator<Item = LatticeEdge>) -> Result<Self, AutomataError> {
        let mut set = BTreeSet::new();
        for e in edges {
            if e.word.is_empty() {
                return Err(AutomataError::EmptyWord);
            }
            assert!(
                e.to == e.from + e.word.chars().count() && e.to <= k,
                "edge {e:?} does not advance by its word length within 0..={k}"
            );
            set.insert(e);
        }
        Ok(Self { k, edges: set })
    }
}

/// Tests every `(word, start state)` pair and keeps the ones that read
/// through the DFA without rejection.
pub fn build_word_lattice<S: AsRef<str>>(
    dfa: &BlockDfa,
    dictionary: &[S],
) -> Result<WordLattice, AutomataError> {
    let k = dfa.accepting_state();
    let mut edges = BTreeSet::new();
    for word in dictionary {
        let word = word.as_ref();
        if word.is_empty() {
            return Err(AutomataError::EmptyWord);
        }
        let len = word.chars().count();
        if len > k {
            continue;
        }
        for start in 0..=k - len {
            if let Some(end) = dfa.run(start, word.chars()) {
                edges.insert(LatticeEdge {
                    from: start,
                    word: word.to_string(),
                    to: end,
                });
            }
        }
    }
    Ok(WordLattice { k, edges })
}

/// Parses a dictionary file: one word per line, blank lines and `#` comments
/// skipped, optionally uppercased. Duplicates are dropped, first occurrence
/// order kept.
pub fn parse_dictionary(text: &str, uppercase: bool) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut words = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let word = if uppercase {
            line.to_uppercase()
        } else {
            line.to_string()
        };
        if seen.insert(word.clone()) {
            words.push(word);
        }
    }
    words
}
