use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::{DictionaryCfg, Symbol};

/// Chomsky normal form: every rule is `A -> B C` or `A -> w`. The empty
/// sequence survives only through `nullable_start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfGrammar {
    nonterminals: Vec<String>,
    start: usize,
    binary: Vec<(usize, usize, usize)>,
    lexical: Vec<(usize, String)>,
    nullable_start: bool,
}

impl CnfGrammar {
    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// `(A, B, C)` for each `A -> B C`, in declaration order.
    pub fn binary_rules(&self) -> &[(usize, usize, usize)] {
        &self.binary
    }

    /// `(A, w)` for each `A -> w`, in declaration order.
    pub fn lexical_rules(&self) -> &[(usize, String)] {
        &self.lexical
    }

    pub fn nullable_start(&self) -> bool {
        self.nullable_start
    }

    pub fn rule_count(&self) -> usize {
        self.binary.len() + self.lexical.len()
    }
}

impl fmt::Display for CnfGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut order: Vec<usize> = vec![self.start];
        order.extend((0..self.nonterminals.len()).filter(|&n| n != self.start));
        for head in order {
            let mut alts: Vec<String> = self
                .binary
                .iter()
                .filter(|r| r.0 == head)
                .map(|&(_, b, c)| format!("{} {}", self.nonterminals[b], self.nonterminals[c]))
                .collect();
            alts.extend(
                self.lexical
                    .iter()
                    .filter(|r| r.0 == head)
                    .map(|(_, w)| format!("\"{}\"", w.replace('\\', "\\\\").replace('"', "\\\""))),
            );
            if head == self.start && self.nullable_start {
                alts.push(String::new());
            }
            if !alts.is_empty() {
                writeln!(f, "{} -> {}", self.nonterminals[head], alts.join(" | "))?;
            }
        }
        Ok(())
    }
}

struct Work {
    names: Vec<String>,
    taken: BTreeSet<String>,
    rules: Vec<(usize, Vec<Symbol>)>,
}

impl Work {
    fn fresh(&mut self, base: &str) -> usize {
        let mut name = base.to_string();
        let mut i = 1;
        while self.taken.contains(&name) {
            name = format!("{base}{i}");
            i += 1;
        }
        self.taken.insert(name.clone());
        self.names.push(name);
        self.names.len() - 1
    }
}

/// Converts `g` by the usual pipeline: fresh start symbol (only when the
/// start occurs in a body), terminal lifting, binarization, ε-removal, unit
/// removal, then pruning of useless nonterminals.
pub fn to_cnf(g: &DictionaryCfg) -> CnfGrammar {
    let mut w = Work {
        names: g.nonterminals().to_vec(),
        taken: g.nonterminals().iter().cloned().collect(),
        rules: g
            .productions()
            .iter()
            .map(|p| (p.head, p.body.clone()))
            .collect(),
    };
    let mut start = g.start();

    // START
    let start_in_body = w
        .rules
        .iter()
        .any(|(_, b)| b.contains(&Symbol::Nonterminal(start)));
    if start_in_body {
        let base = format!("{}0", w.names[start]);
        let s0 = w.fresh(&base);
        w.rules.insert(0, (s0, vec![Symbol::Nonterminal(start)]));
        start = s0;
    }

    // TERM
    let mut lifted: HashMap<String, usize> = HashMap::new();
    let mut extra = Vec::new();
    for i in 0..w.rules.len() {
        if w.rules[i].1.len() < 2 {
            continue;
        }
        for j in 0..w.rules[i].1.len() {
            if let Symbol::Word(word) = &w.rules[i].1[j] {
                let word = word.clone();
                let nt = match lifted.get(&word) {
                    Some(&nt) => nt,
                    None => {
                        let nt = w.fresh(&format!("T_{word}"));
                        lifted.insert(word.clone(), nt);
                        extra.push((nt, vec![Symbol::Word(word)]));
                        nt
                    }
                };
                w.rules[i].1[j] = Symbol::Nonterminal(nt);
            }
        }
    }
    w.rules.extend(extra);

    // BIN
    let mut binarized = Vec::with_capacity(w.rules.len());
    for (head, body) in std::mem::take(&mut w.rules) {
        if body.len() <= 2 {
            binarized.push((head, body));
            continue;
        }
        let mut current = head;
        let last = body.len() - 2;
        for (i, sym) in body[..=last].iter().enumerate() {
            if i == last {
                binarized.push((current, vec![sym.clone(), body[last + 1].clone()]));
            } else {
                let next = w.fresh("X");
                binarized.push((current, vec![sym.clone(), Symbol::Nonterminal(next)]));
                current = next;
            }
        }
    }
    w.rules = binarized;

    // DEL
    let nt_count = w.names.len();
    let mut nullable = vec![false; nt_count];
    loop {
        let mut changed = false;
        for (head, body) in &w.rules {
            if !nullable[*head]
                && body
                    .iter()
                    .all(|s| matches!(s, Symbol::Nonterminal(n) if nullable[*n]))
            {
                nullable[*head] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let is_nullable = |s: &Symbol| matches!(s, Symbol::Nonterminal(n) if nullable[*n]);
    let mut seen = BTreeSet::new();
    let mut without_eps = Vec::new();
    for (head, body) in &w.rules {
        let mut variants = vec![body.clone()];
        for (i, sym) in body.iter().enumerate() {
            if is_nullable(sym) {
                let mut v = body.clone();
                v.remove(i);
                variants.push(v);
            }
        }
        for v in variants {
            if !v.is_empty() && seen.insert((*head, format!("{v:?}"))) {
                without_eps.push((*head, v));
            }
        }
    }
    w.rules = without_eps;
    let nullable_start = nullable[start];

    // UNIT
    let unit_target = |body: &[Symbol]| match body {
        [Symbol::Nonterminal(n)] => Some(*n),
        _ => None,
    };
    let mut closed = Vec::new();
    let mut seen = BTreeSet::new();
    for a in 0..nt_count {
        let mut reach = vec![a];
        let mut k = 0;
        while k < reach.len() {
            let b = reach[k];
            for (head, body) in &w.rules {
                if *head == b {
                    if let Some(c) = unit_target(body) {
                        if !reach.contains(&c) {
                            reach.push(c);
                        }
                    }
                }
            }
            k += 1;
        }
        for &b in &reach {
            for (head, body) in &w.rules {
                if *head == b && unit_target(body).is_none() && seen.insert((a, format!("{body:?}"))) {
                    closed.push((a, body.clone()));
                }
            }
        }
    }
    w.rules = closed;

    // Prune unproductive, then unreachable.
    let mut productive = vec![false; nt_count];
    loop {
        let mut changed = false;
        for (head, body) in &w.rules {
            if !productive[*head]
                && body
                    .iter()
                    .all(|s| !matches!(s, Symbol::Nonterminal(n) if !productive[*n]))
            {
                productive[*head] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    w.rules.retain(|(head, body)| {
        productive[*head]
            && body
                .iter()
                .all(|s| !matches!(s, Symbol::Nonterminal(n) if !productive[*n]))
    });
    let mut reachable = vec![false; nt_count];
    reachable[start] = true;
    let mut stack = vec![start];
    while let Some(a) = stack.pop() {
        for (head, body) in &w.rules {
            if *head == a {
                for s in body {
                    if let Symbol::Nonterminal(n) = s {
                        if !reachable[*n] {
                            reachable[*n] = true;
                            stack.push(*n);
                        }
                    }
                }
            }
        }
    }
    w.rules.retain(|(head, _)| reachable[*head]);

    let mut renumber = vec![usize::MAX; nt_count];
    let mut names = Vec::new();
    for n in 0..nt_count {
        if reachable[n] {
            renumber[n] = names.len();
            names.push(w.names[n].clone());
        }
    }
    let mut binary = Vec::new();
    let mut lexical = Vec::new();
    for (head, body) in w.rules {
        match body.as_slice() {
            [Symbol::Word(word)] => lexical.push((renumber[head], word.clone())),
            [Symbol::Nonterminal(b), Symbol::Nonterminal(c)] => {
                binary.push((renumber[head], renumber[*b], renumber[*c]))
            }
            other => unreachable!("non-CNF body survived conversion: {other:?}"),
        }
    }
    CnfGrammar {
        nonterminals: names,
        start: renumber[start],
        binary,
        lexical,
        nullable_start,
    }
}
