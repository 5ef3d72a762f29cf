//! Context-free grammars whose terminals are whole dictionary words.
//!
//! Grammar files hold one rule per line, `Head -> alt | alt`. Quoted tokens
//! are words, bare tokens are nonterminals, an empty alternative derives the
//! empty sequence, and `#` starts a comment. The first head is the start
//! symbol.

mod cky;
mod cnf;

pub use cky::{cky_lattice, cky_lattice_with_stats, enumerate_witnesses, CkyStats, Derivation, ParseWitness};
pub use cnf::{to_cnf, CnfGrammar};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("nonterminal `{name}` at line {line} has no rules")]
    UndefinedNonterminal { name: String, line: usize },
    #[error("terminal \"{0}\" is not in the dictionary")]
    UnknownTerminal(String),
    #[error("grammar has no rules")]
    MissingStart,
    #[error("witness limit {limit} exceeded")]
    LimitExceeded { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Symbol {
    Nonterminal(usize),
    Word(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Production {
    pub head: usize,
    pub body: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictionaryCfg {
    nonterminals: Vec<String>,
    dictionary: BTreeSet<String>,
    productions: Vec<Production>,
}

impl DictionaryCfg {
    /// Builds a grammar programmatically. Nonterminal 0 is the start symbol.
    ///
    /// # Panics
    /// If a production refers to a nonterminal index out of range.
    pub fn new(
        nonterminals: Vec<String>,
        productions: Vec<Production>,
        dictionary: Option<BTreeSet<String>>,
    ) -> Result<Self, GrammarError> {
        if nonterminals.is_empty() || productions.is_empty() {
            return Err(GrammarError::MissingStart);
        }
        let words = terminal_words(&productions);
        let dictionary = match dictionary {
            Some(d) => {
                if let Some(w) = words.iter().find(|w| !d.contains(*w)) {
                    return Err(GrammarError::UnknownTerminal(w.clone()));
                }
                d
            }
            None => words,
        };
        for p in &productions {
            assert!(p.head < nonterminals.len(), "production head out of range");
            for s in &p.body {
                if let Symbol::Nonterminal(n) = s {
                    assert!(*n < nonterminals.len(), "nonterminal out of range");
                }
            }
        }
        let g = Self {
            nonterminals,
            dictionary,
            productions,
        };
        if let Some(missing) = (0..g.nonterminals.len()).find(|&n| !g.productions.iter().any(|p| p.head == n)) {
            return Err(GrammarError::UndefinedNonterminal {
                name: g.nonterminals[missing].clone(),
                line: 0,
            });
        }
        Ok(g)
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn nonterminal_name(&self, n: usize) -> &str {
        &self.nonterminals[n]
    }

    pub fn dictionary(&self) -> &BTreeSet<String> {
        &self.dictionary
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    /// Applies `f` to every terminal and dictionary word.
    pub fn map_words(&self, f: impl Fn(&str) -> String) -> Self {
        let productions = self
            .productions
            .iter()
            .map(|p| Production {
                head: p.head,
                body: p
                    .body
                    .iter()
                    .map(|s| match s {
                        Symbol::Word(w) => Symbol::Word(f(w)),
                        other => other.clone(),
                    })
                    .collect(),
            })
            .collect();
        Self {
            nonterminals: self.nonterminals.clone(),
            dictionary: self.dictionary.iter().map(|w| f(w)).collect(),
            productions,
        }
    }

    /// Whether the grammar derives `words`, by a fixpoint over spans. Cubic
    /// in the sentence length; meant for re-verification, not search.
    pub fn derives<S: AsRef<str>>(&self, words: &[S]) -> bool {
        let n = words.len();
        let nt = self.nonterminals.len();
        // derivable[(a, i, j)]
        let mut known = vec![false; nt * (n + 1) * (n + 1)];
        let idx = |a: usize, i: usize, j: usize| (a * (n + 1) + i) * (n + 1) + j;
        loop {
            let mut changed = false;
            for p in &self.productions {
                for i in 0..=n {
                    // reach[j]: the body prefix processed so far can cover words[i..j]
                    let mut reach = vec![false; n + 1];
                    reach[i] = true;
                    for sym in &p.body {
                        let mut next = vec![false; n + 1];
                        for j in i..=n {
                            if !reach[j] {
                                continue;
                            }
                            match sym {
                                Symbol::Word(w) => {
                                    if j < n && words[j].as_ref() == w {
                                        next[j + 1] = true;
                                    }
                                }
                                Symbol::Nonterminal(b) => {
                                    for l in j..=n {
                                        if known[idx(*b, j, l)] {
                                            next[l] = true;
                                        }
                                    }
                                }
                            }
                        }
                        reach = next;
                    }
                    for (j, &ok) in reach.iter().enumerate() {
                        if ok && !known[idx(p.head, i, j)] {
                            known[idx(p.head, i, j)] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return known[idx(0, 0, n)];
            }
        }
    }
}

impl fmt::Display for DictionaryCfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (head, name) in self.nonterminals.iter().enumerate() {
            let alts: Vec<String> = self
                .productions
                .iter()
                .filter(|p| p.head == head)
                .map(|p| {
                    p.body
                        .iter()
                        .map(|s| match s {
                            Symbol::Nonterminal(n) => self.nonterminals[*n].clone(),
                            Symbol::Word(w) => format!("\"{w}\""),
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            writeln!(f, "{name} -> {}", alts.join(" | "))?;
        }
        Ok(())
    }
}

fn terminal_words(productions: &[Production]) -> BTreeSet<String> {
    productions
        .iter()
        .flat_map(|p| p.body.iter())
        .filter_map(|s| match s {
            Symbol::Word(w) => Some(w.clone()),
            _ => None,
        })
        .collect()
}

/// Parses a grammar file; its dictionary is the set of quoted words.
pub fn parse_grammar(text: &str) -> Result<DictionaryCfg, GrammarError> {
    parse_inner(text, None)
}

/// Parses a grammar file against a separately supplied dictionary, which
/// must contain every quoted word.
pub fn parse_grammar_with_dictionary<S: AsRef<str>>(
    text: &str,
    dictionary: &[S],
) -> Result<DictionaryCfg, GrammarError> {
    let dict = dictionary.iter().map(|w| w.as_ref().to_string()).collect();
    parse_inner(text, Some(dict))
}

#[derive(Debug, PartialEq)]
enum Token {
    Bare(String),
    Quoted(String),
    Arrow,
    Bar,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> GrammarError {
    GrammarError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

fn tokenize(line_no: usize, line: &str) -> Result<Vec<(usize, Token)>, GrammarError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            break;
        } else if c == '|' {
            out.push((col, Token::Bar));
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((col, Token::Arrow));
            i += 2;
        } else if c == '"' {
            let mut word = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err(syntax(line_no, col, "unterminated quoted word")),
                    Some('"') => break,
                    Some('\\') => {
                        let escaped = chars
                            .get(i + 1)
                            .ok_or_else(|| syntax(line_no, i + 1, "dangling escape"))?;
                        word.push(*escaped);
                        i += 2;
                    }
                    Some(&ch) => {
                        word.push(ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            if word.is_empty() {
                return Err(syntax(line_no, col, "empty quoted word"));
            }
            out.push((col, Token::Quoted(word)));
        } else {
            let start = i;
            while i < chars.len()
                && !chars[i].is_whitespace()
                && !matches!(chars[i], '"' | '|' | '#')
                && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>'))
            {
                i += 1;
            }
            out.push((col, Token::Bare(chars[start..i].iter().collect())));
        }
    }
    Ok(out)
}

fn parse_inner(text: &str, dictionary: Option<BTreeSet<String>>) -> Result<DictionaryCfg, GrammarError> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut first_use: HashMap<usize, usize> = HashMap::new();
    let mut defined: BTreeSet<usize> = BTreeSet::new();
    let mut productions = Vec::new();

    let mut intern = |name: &str, line: usize, names: &mut Vec<String>| -> usize {
        *index.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            first_use.insert(names.len() - 1, line);
            names.len() - 1
        })
    };

    for (line_idx, line) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let tokens = tokenize(line_no, line)?;
        if tokens.is_empty() {
            continue;
        }
        let head = match &tokens[0] {
            (_, Token::Bare(name)) => name.clone(),
            (col, _) => return Err(syntax(line_no, *col, "expected a nonterminal name")),
        };
        match tokens.get(1) {
            Some((_, Token::Arrow)) => {}
            Some((col, _)) => return Err(syntax(line_no, *col, "expected `->`")),
            None => return Err(syntax(line_no, line.chars().count() + 1, "expected `->`")),
        }
        let head = intern(&head, line_no, &mut names);
        defined.insert(head);

        let mut body = Vec::new();
        for (col, tok) in tokens[2..].iter().chain(std::iter::once(&(0, Token::Bar))) {
            match tok {
                Token::Bar => productions.push(Production {
                    head,
                    body: std::mem::take(&mut body),
                }),
                Token::Quoted(w) => body.push(Symbol::Word(w.clone())),
                Token::Bare(n) => body.push(Symbol::Nonterminal(intern(n, line_no, &mut names))),
                Token::Arrow => return Err(syntax(line_no, *col, "unexpected `->`")),
            }
        }
    }

    if productions.is_empty() {
        return Err(GrammarError::MissingStart);
    }
    if let Some(n) = (0..names.len()).find(|n| !defined.contains(n)) {
        return Err(GrammarError::UndefinedNonterminal {
            name: names[n].clone(),
            line: first_use[&n],
        });
    }
    DictionaryCfg::new(names, productions, dictionary)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const THREE_WORDS: &str = r#"
# three words from a five-word dictionary
S -> W W W
W -> "aa" | "ac" | "ab" | "c" | "ca"
"#;

    #[test]
    fn parses_word_grammar() {
        let g = parse_grammar(THREE_WORDS).unwrap();
        assert_eq!(g.nonterminals(), &["S", "W"]);
        assert_eq!(g.productions().len(), 6);
        assert_eq!(g.dictionary().len(), 5);
        assert_eq!(
            g.productions()[0].body,
            vec![Symbol::Nonterminal(1); 3]
        );
        assert!(g.derives(&["aa", "c", "aa"]));
        assert!(!g.derives(&["aa", "c"]));
    }

    #[test]
    fn single_production() {
        let g = parse_grammar(r#"S -> "x""#).unwrap();
        assert_eq!(g.productions().len(), 1);
        assert!(g.derives(&["x"]));
    }

    #[test]
    fn undefined_nonterminal() {
        let err = parse_grammar("S -> T").unwrap_err();
        assert_eq!(
            err,
            GrammarError::UndefinedNonterminal {
                name: "T".into(),
                line: 1
            }
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert!(matches!(
            parse_grammar("S \"a\""),
            Err(GrammarError::Syntax { line: 1, col: 3, .. })
        ));
        assert!(matches!(
            parse_grammar("S -> \"a"),
            Err(GrammarError::Syntax { line: 1, col: 6, .. })
        ));
        assert!(matches!(
            parse_grammar("\n\"a\" -> S"),
            Err(GrammarError::Syntax { line: 2, col: 1, .. })
        ));
        assert!(matches!(
            parse_grammar("S -> \"\""),
            Err(GrammarError::Syntax { .. })
        ));
        assert_eq!(parse_grammar("# nothing\n\n"), Err(GrammarError::MissingStart));
    }

    #[test]
    fn empty_alternative_and_comments() {
        let g = parse_grammar("S -> \"a\" S | # trailing\nS -> \"b\"").unwrap();
        assert_eq!(g.productions().len(), 3);
        assert!(g.productions()[1].body.is_empty());
        assert!(g.derives::<&str>(&[]));
        assert!(g.derives(&["a", "a", "b"]));
        assert!(g.derives(&["a", "a"]));
    }

    #[test]
    fn supplied_dictionary_must_cover_terminals() {
        let err = parse_grammar_with_dictionary(THREE_WORDS, &["aa", "ac"]).unwrap_err();
        assert!(matches!(err, GrammarError::UnknownTerminal(_)));
        let g = parse_grammar_with_dictionary(r#"S -> "aa""#, &["aa", "bb"]).unwrap();
        assert_eq!(g.dictionary().len(), 2);
    }

    #[test]
    fn display_roundtrips() {
        let g = parse_grammar(THREE_WORDS).unwrap();
        assert_eq!(parse_grammar(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn left_recursion_terminates() {
        let g = parse_grammar("S -> S \"a\" | \"a\" | S").unwrap();
        assert!(g.derives(&["a", "a", "a"]));
        assert!(!g.derives(&["b"]));
    }
}
