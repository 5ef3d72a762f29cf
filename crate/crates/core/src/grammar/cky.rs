use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{CnfGrammar, GrammarError};
use crate::block_automata::WordLattice;

/// A derivation node spanning lattice positions `from..to`. Leaves carry the
/// word they read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub symbol: String,
    pub from: usize,
    pub to: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Derivation>,
}

impl Derivation {
    /// Leaf words, left to right.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match &self.word {
            Some(w) => out.push(w),
            None => self.children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseWitness {
    pub words: Vec<String>,
    /// Absent only for the empty sentence.
    pub tree: Option<Derivation>,
}

/// Work done by one chart fill.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CkyStats {
    /// Spans `(i, j)` visited.
    pub cells: usize,
    /// Lexical rule applications seeded from lattice edges.
    pub leaf_seeds: usize,
    /// `(i, m, j, A -> B C)` combinations examined.
    pub binary_checks: usize,
}

#[derive(Debug, Clone, Copy)]
enum Back {
    Leaf(usize),
    Split { mid: usize, rule: usize },
}

struct Chart {
    k: usize,
    nt: usize,
    cells: Vec<Option<Back>>,
    filled: Vec<bool>,
}

impl Chart {
    fn span(&self, i: usize, j: usize) -> usize {
        i * (self.k + 1) + j
    }

    fn get(&self, i: usize, j: usize, a: usize) -> Option<Back> {
        self.cells[self.span(i, j) * self.nt + a]
    }

    fn set(&mut self, i: usize, j: usize, a: usize, b: Back) -> bool {
        let s = self.span(i, j);
        let slot = &mut self.cells[s * self.nt + a];
        if slot.is_some() {
            return false;
        }
        *slot = Some(b);
        self.filled[s] = true;
        true
    }
}

/// Edge indices keyed by `(from, to)`.
type SpanIndex = HashMap<(usize, usize), Vec<usize>>;

/// Edge words grouped by span, each group in sorted order.
fn spans(lattice: &WordLattice) -> (Vec<String>, SpanIndex) {
    let mut words = Vec::new();
    let mut by_span = SpanIndex::new();
    for e in lattice.edges() {
        by_span.entry((e.from, e.to)).or_default().push(words.len());
        words.push(e.word.clone());
    }
    (words, by_span)
}

fn lexicon(g: &CnfGrammar) -> HashMap<&str, Vec<usize>> {
    let mut lex: HashMap<&str, Vec<usize>> = HashMap::new();
    for (a, w) in g.lexical_rules() {
        lex.entry(w.as_str()).or_default().push(*a);
    }
    lex
}

fn fill(g: &CnfGrammar, lattice: &WordLattice) -> (Chart, Vec<String>, CkyStats) {
    let k = lattice.end();
    let nt = g.nonterminals().len();
    let mut chart = Chart {
        k,
        nt,
        cells: vec![None; (k + 1) * (k + 1) * nt],
        filled: vec![false; (k + 1) * (k + 1)],
    };
    let mut stats = CkyStats::default();
    let (words, by_span) = spans(lattice);
    let lex = lexicon(g);

    for len in 1..=k {
        for i in 0..=k - len {
            let j = i + len;
            stats.cells += 1;
            if let Some(edges) = by_span.get(&(i, j)) {
                for &e in edges {
                    for &a in lex.get(words[e].as_str()).into_iter().flatten() {
                        stats.leaf_seeds += 1;
                        chart.set(i, j, a, Back::Leaf(e));
                    }
                }
            }
            for mid in i + 1..j {
                if !chart.filled[chart.span(i, mid)] || !chart.filled[chart.span(mid, j)] {
                    continue;
                }
                for (rule, &(a, b, c)) in g.binary_rules().iter().enumerate() {
                    stats.binary_checks += 1;
                    if chart.get(i, mid, b).is_some() && chart.get(mid, j, c).is_some() {
                        chart.set(i, j, a, Back::Split { mid, rule });
                    }
                }
            }
        }
    }
    (chart, words, stats)
}

fn extract(g: &CnfGrammar, chart: &Chart, words: &[String], a: usize, i: usize, j: usize) -> Derivation {
    let symbol = g.nonterminals()[a].clone();
    match chart.get(i, j, a).expect("back-pointer present on derived span") {
        Back::Leaf(e) => Derivation {
            symbol,
            from: i,
            to: j,
            word: Some(words[e].clone()),
            children: Vec::new(),
        },
        Back::Split { mid, rule } => {
            let (_, b, c) = g.binary_rules()[rule];
            Derivation {
                symbol,
                from: i,
                to: j,
                word: None,
                children: vec![
                    extract(g, chart, words, b, i, mid),
                    extract(g, chart, words, c, mid, j),
                ],
            }
        }
    }
}

/// Finds a derivation of the start symbol over the whole lattice.
///
/// Ties are broken deterministically: lexical seeds before binary rules,
/// then the lowest split point, then rule declaration order.
pub fn cky_lattice(g: &CnfGrammar, lattice: &WordLattice) -> Option<ParseWitness> {
    cky_lattice_with_stats(g, lattice).0
}

pub fn cky_lattice_with_stats(g: &CnfGrammar, lattice: &WordLattice) -> (Option<ParseWitness>, CkyStats) {
    let k = lattice.end();
    if k == 0 {
        let w = g.nullable_start().then(|| ParseWitness {
            words: Vec::new(),
            tree: None,
        });
        return (w, CkyStats::default());
    }
    let (chart, words, stats) = fill(g, lattice);
    let witness = chart.get(0, k, g.start()).map(|_| {
        let tree = extract(g, &chart, &words, g.start(), 0, k);
        ParseWitness {
            words: tree.leaves().into_iter().map(String::from).collect(),
            tree: Some(tree),
        }
    });
    (witness, stats)
}

/// All distinct word sequences derivable over the whole lattice, sorted
/// lexicographically. Fails when there are more than `limit`.
pub fn enumerate_witnesses(
    g: &CnfGrammar,
    lattice: &WordLattice,
    limit: usize,
) -> Result<Vec<ParseWitness>, GrammarError> {
    let k = lattice.end();
    if k == 0 {
        let out: Vec<ParseWitness> = g
            .nullable_start()
            .then(|| ParseWitness {
                words: Vec::new(),
                tree: None,
            })
            .into_iter()
            .collect();
        if out.len() > limit {
            return Err(GrammarError::LimitExceeded { limit });
        }
        return Ok(out);
    }

    let nt = g.nonterminals().len();
    let cap = limit.saturating_add(1);
    let span = |i: usize, j: usize| (i * (k + 1) + j) * nt;
    let mut sets: Vec<BTreeSet<Vec<String>>> = vec![BTreeSet::new(); (k + 1) * (k + 1) * nt];
    let (words, by_span) = spans(lattice);
    let lex = lexicon(g);

    // A capped set still holds `limit + 1` sequences, and concatenation with
    // a fixed non-empty partner is injective, so any capped cell on a path to
    // the root forces the root over the limit as well.
    for len in 1..=k {
        for i in 0..=k - len {
            let j = i + len;
            let base = span(i, j);
            if let Some(edges) = by_span.get(&(i, j)) {
                for &e in edges {
                    for &a in lex.get(words[e].as_str()).into_iter().flatten() {
                        if sets[base + a].len() < cap {
                            sets[base + a].insert(vec![words[e].clone()]);
                        }
                    }
                }
            }
            for mid in i + 1..j {
                for &(a, b, c) in g.binary_rules() {
                    let (left, right) = (&sets[span(i, mid) + b], &sets[span(mid, j) + c]);
                    if left.is_empty() || right.is_empty() || sets[base + a].len() >= cap {
                        continue;
                    }
                    let mut fresh = Vec::new();
                    'outer: for x in left {
                        for y in right {
                            if sets[base + a].len() + fresh.len() >= cap {
                                break 'outer;
                            }
                            let mut s = x.clone();
                            s.extend(y.iter().cloned());
                            if !sets[base + a].contains(&s) {
                                fresh.push(s);
                            }
                        }
                    }
                    for s in fresh {
                        if sets[base + a].len() < cap {
                            sets[base + a].insert(s);
                        }
                    }
                }
            }
        }
    }

    let root = &sets[span(0, k) + g.start()];
    if root.len() > limit {
        return Err(GrammarError::LimitExceeded { limit });
    }
    Ok(root
        .iter()
        .map(|seq| {
            let refs: Vec<&str> = seq.iter().map(String::as_str).collect();
            let tree = cky_lattice(g, &WordLattice::linear(&refs)).and_then(|w| w.tree);
            ParseWitness {
                words: seq.clone(),
                tree,
            }
        })
        .collect())
}
