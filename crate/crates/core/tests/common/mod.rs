//! Brute-force oracles and random instance generators shared by the
//! integration tests. Nothing here reuses the library's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use circlang::alphabet::PartitionedAlphabet;
use circlang::grammar::{DictionaryCfg, Production, Symbol};
use rand::seq::SliceRandom;
use rand::Rng;

/// Recursive-descent membership with memoization. Cycles are handled by
/// re-running the descent with the spans proven so far until nothing new is
/// proven.
pub fn grammar_derives<S: AsRef<str>>(g: &DictionaryCfg, words: &[S]) -> bool {
    let words: Vec<&str> = words.iter().map(AsRef::as_ref).collect();
    let mut proven: HashSet<(usize, usize, usize)> = HashSet::new();
    loop {
        let mut memo = HashMap::new();
        let result = descend(g, &words, 0, 0, words.len(), &proven, &mut memo);
        let fresh: Vec<_> = memo
            .into_iter()
            .filter(|&(key, v)| v && !proven.contains(&key))
            .map(|(key, _)| key)
            .collect();
        if fresh.is_empty() {
            return result;
        }
        proven.extend(fresh);
    }
}

fn descend(
    g: &DictionaryCfg,
    words: &[&str],
    a: usize,
    i: usize,
    j: usize,
    proven: &HashSet<(usize, usize, usize)>,
    memo: &mut HashMap<(usize, usize, usize), bool>,
) -> bool {
    if let Some(&v) = memo.get(&(a, i, j)) {
        return v;
    }
    let known = proven.contains(&(a, i, j));
    memo.insert((a, i, j), known);
    let mut ok = known;
    for p in g.productions().iter().filter(|p| p.head == a) {
        if ok {
            break;
        }
        ok = body_matches(g, words, &p.body, i, j, proven, memo);
    }
    memo.insert((a, i, j), ok);
    ok
}

fn body_matches(
    g: &DictionaryCfg,
    words: &[&str],
    body: &[Symbol],
    i: usize,
    j: usize,
    proven: &HashSet<(usize, usize, usize)>,
    memo: &mut HashMap<(usize, usize, usize), bool>,
) -> bool {
    match body.split_first() {
        None => i == j,
        Some((Symbol::Word(w), rest)) => {
            i < j && words[i] == w && body_matches(g, words, rest, i + 1, j, proven, memo)
        }
        Some((Symbol::Nonterminal(b), rest)) => (i..=j).any(|m| {
            descend(g, words, *b, i, m, proven, memo) && body_matches(g, words, rest, m, j, proven, memo)
        }),
    }
}

/// Maximal same-class run lengths of `letters`.
pub fn runs_of(alphabet: &PartitionedAlphabet, letters: &str) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    let mut prev = None;
    for c in letters.chars() {
        let class = alphabet.classes().iter().position(|cl| cl.symbols.contains(&c));
        if class.is_some() && class == prev {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
        }
        prev = class;
    }
    out
}

/// Every word sequence over `dictionary` whose spelling has the run pattern
/// `lengths` and which the grammar derives. Sequences are grown word by word
/// and dropped as soon as a letter's class disagrees with both alternation
/// phases.
pub fn brute_force_sentences(
    alphabet: &PartitionedAlphabet,
    lengths: &[usize],
    dictionary: &[String],
    grammar: &DictionaryCfg,
) -> Vec<Vec<String>> {
    let total: usize = lengths.iter().sum();
    let mut block_of = Vec::with_capacity(total);
    for (b, &k) in lengths.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, k));
    }
    let class_of = |c: char| alphabet.classes().iter().position(|cl| cl.symbols.contains(&c));
    let fits = |letters: &[char], phase: usize| {
        letters
            .iter()
            .enumerate()
            .all(|(p, &c)| class_of(c) == Some((phase + block_of[p]) % 2))
    };

    let mut found = Vec::new();
    let mut stack: Vec<(Vec<String>, Vec<char>)> = vec![(Vec::new(), Vec::new())];
    while let Some((seq, letters)) = stack.pop() {
        if letters.len() == total {
            if !seq.is_empty() && grammar_derives(grammar, &seq) {
                found.push(seq);
            }
            continue;
        }
        for w in dictionary {
            let mut next = letters.clone();
            next.extend(w.chars());
            if next.len() > total || !(fits(&next, 0) || fits(&next, 1)) {
                continue;
            }
            let mut s = seq.clone();
            s.push(w.clone());
            stack.push((s, next));
        }
    }
    found.sort();
    found
}

/// A grammar with at most `max_nt` nonterminals and `max_rules` rules
/// whose terminals come from `words`. Every nonterminal gets at least one
/// rule.
pub fn random_grammar(rng: &mut impl Rng, words: &[String], max_nt: usize, max_rules: usize) -> DictionaryCfg {
    let nt = rng.gen_range(1..=max_nt);
    let rules = rng.gen_range(nt..=max_rules.max(nt));
    let mut productions = Vec::new();
    for r in 0..rules {
        let head = if r < nt { r } else { rng.gen_range(0..nt) };
        let len = rng.gen_range(0..=3);
        let body = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Symbol::Word(words.choose(rng).unwrap().clone())
                } else {
                    Symbol::Nonterminal(rng.gen_range(0..nt))
                }
            })
            .collect();
        productions.push(Production { head, body });
    }
    let names = (0..nt).map(|i| format!("N{i}")).collect();
    DictionaryCfg::new(names, productions, Some(words.iter().cloned().collect())).unwrap()
}

/// `S -> W | W S` with `W` any dictionary word.
pub fn any_sequence_grammar(words: &[String]) -> DictionaryCfg {
    let mut productions = vec![
        Production {
            head: 0,
            body: vec![Symbol::Nonterminal(1)],
        },
        Production {
            head: 0,
            body: vec![Symbol::Nonterminal(1), Symbol::Nonterminal(0)],
        },
    ];
    for w in words {
        productions.push(Production {
            head: 1,
            body: vec![Symbol::Word(w.clone())],
        });
    }
    DictionaryCfg::new(vec!["S".into(), "W".into()], productions, None).unwrap()
}

/// Random search instance: a 2-class alphabet of at most 4 letters, up to 4
/// blocks of length at most 3, up to 6 dictionary words.
pub struct RandomInstance {
    pub alphabet: PartitionedAlphabet,
    pub lengths: Vec<usize>,
    pub dictionary: Vec<String>,
    pub grammar: DictionaryCfg,
}

pub fn random_instance(rng: &mut impl Rng) -> RandomInstance {
    let letters: Vec<char> = "abcd".chars().take(rng.gen_range(2..=4)).collect();
    let split = rng.gen_range(1..letters.len());
    let alphabet = PartitionedAlphabet::new([
        ("A", letters[..split].to_vec()),
        ("B", letters[split..].to_vec()),
    ])
    .unwrap();
    let lengths: Vec<usize> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(1..=3)).collect();
    let mut dict = BTreeSet::new();
    let size = rng.gen_range(1..=6);
    while dict.len() < size {
        let len = rng.gen_range(1..=3);
        dict.insert((0..len).map(|_| *letters.choose(rng).unwrap()).collect::<String>());
    }
    let dictionary: Vec<String> = dict.into_iter().collect();
    let grammar = if rng.gen_bool(0.5) {
        any_sequence_grammar(&dictionary)
    } else {
        random_grammar(rng, &dictionary, 4, 8)
    };
    RandomInstance {
        alphabet,
        lengths,
        dictionary,
        grammar,
    }
}

/// Every arrangement of length `n` over labels `1..=r`.
pub fn all_arrangements(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|a| {
                (1..=r).map(move |l| {
                    let mut b = a.clone();
                    b.push(l);
                    b
                })
            })
            .collect();
    }
    out
}

/// Seat-by-seat elimination walk, independent of the library's ring.
pub fn walk_elimination(n: usize, step: usize, count: usize) -> Vec<usize> {
    let mut alive = vec![true; n];
    let mut out = Vec::new();
    let mut pos = n - 1;
    for _ in 0..count {
        let mut seen = 0;
        while seen < step {
            pos = (pos + 1) % n;
            if alive[pos] {
                seen += 1;
            }
        }
        alive[pos] = false;
        out.push(pos + 1);
    }
    out
}

/// Group sizes are all ⌊n/r⌋ or ⌈n/r⌉, groups are disjoint and cover 1..=n.
pub fn balanced_cover(groups: &[Vec<usize>], n: usize, r: usize) -> Result<(), String> {
    if groups.len() != r {
        return Err(format!("{} groups, expected {r}", groups.len()));
    }
    let (lo, hi) = (n / r, n.div_ceil(r));
    let mut seen = vec![false; n + 1];
    for g in groups {
        if g.len() < lo || g.len() > hi {
            return Err(format!("group {g:?} has size {}, allowed {lo}..={hi}", g.len()));
        }
        for &x in g {
            if x == 0 || x > n || seen[x] {
                return Err(format!("object {x} out of range or repeated"));
            }
            seen[x] = true;
        }
    }
    if seen[1..].iter().all(|&s| s) {
        Ok(())
    } else {
        Err("objects missing".into())
    }
}
