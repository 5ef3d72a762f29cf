//! Circular elimination and two-class mnemonic arrangements.
//!
//! Positions are 1-based. Counting starts at position 1, which is itself
//! counted; after each removal counting resumes at the next remaining
//! position.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JosephusError {
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("invalid circle: {0}")]
    InvalidCircle(String),
}

/// Which position a count of `k` removes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EliminationConvention {
    /// The k-th counted position is removed; the first removal is position k.
    #[default]
    CountK,
    /// k positions are skipped and the next is removed; the first removal is
    /// position k + 1.
    SkipK,
}

impl fmt::Display for EliminationConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::CountK => "count-k",
            Self::SkipK => "skip-k",
        })
    }
}

impl FromStr for EliminationConvention {
    type Err = JosephusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "count-k" => Ok(Self::CountK),
            "skip-k" => Ok(Self::SkipK),
            other => Err(JosephusError::DomainError(format!(
                "unknown convention `{other}` (expected count-k or skip-k)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationTrace {
    pub n: usize,
    pub k: usize,
    pub convention: EliminationConvention,
    /// Eliminated positions in removal order.
    pub removed: Vec<usize>,
    pub survivors: BTreeSet<usize>,
}

/// Removes `count` positions from a circle of `n`.
pub fn eliminate(
    n: usize,
    k: usize,
    count: usize,
    convention: EliminationConvention,
) -> Result<EliminationTrace, JosephusError> {
    if n == 0 {
        return Err(JosephusError::DomainError("circle size must be at least 1".into()));
    }
    if k == 0 {
        return Err(JosephusError::DomainError("step must be at least 1".into()));
    }
    if count > n {
        return Err(JosephusError::DomainError(format!(
            "cannot remove {count} of {n} positions"
        )));
    }
    let removed = elimination_order(n, k, count, convention);
    let gone: BTreeSet<usize> = removed.iter().copied().collect();
    let survivors = (1..=n).filter(|p| !gone.contains(p)).collect();
    Ok(EliminationTrace {
        n,
        k,
        convention,
        removed,
        survivors,
    })
}

/// The first `count` removals on a circle of `n`. Inputs are assumed valid.
pub(crate) fn elimination_order(
    n: usize,
    k: usize,
    count: usize,
    convention: EliminationConvention,
) -> Vec<usize> {
    let offset = match convention {
        EliminationConvention::CountK => k - 1,
        EliminationConvention::SkipK => k,
    };
    let mut ring: Vec<usize> = (1..=n).collect();
    let mut at = 0;
    let mut removed = Vec::with_capacity(count);
    for _ in 0..count {
        at = (at + offset) % ring.len();
        removed.push(ring.remove(at));
        if !ring.is_empty() {
            at %= ring.len();
        }
    }
    removed
}

/// Which of the two classes a position belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Self {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// A circle whose positions carry one of two classes, described by
/// alternating run lengths.
///
/// `first_class` is the protected class: a valid arrangement keeps only
/// first-class positions alive. `leading` says which class the first run
/// belongs to; it is `Second` only when position 1 itself must be removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoClassCircle {
    runs: Vec<usize>,
    pub first_class: String,
    pub second_class: String,
    pub leading: Side,
}

impl TwoClassCircle {
    pub fn new(runs: Vec<usize>) -> Result<Self, JosephusError> {
        if runs.is_empty() {
            return Err(JosephusError::InvalidCircle("no runs".into()));
        }
        if runs.contains(&0) {
            return Err(JosephusError::InvalidCircle("run lengths must be >= 1".into()));
        }
        Ok(Self {
            runs,
            first_class: "first".into(),
            second_class: "second".into(),
            leading: Side::First,
        })
    }

    pub fn with_names(mut self, first: impl Into<String>, second: impl Into<String>) -> Self {
        self.first_class = first.into();
        self.second_class = second.into();
        self
    }

    pub fn with_leading(mut self, leading: Side) -> Self {
        self.leading = leading;
        self
    }

    pub fn runs(&self) -> &[usize] {
        &self.runs
    }

    pub fn n(&self) -> usize {
        self.runs.iter().sum()
    }

    pub fn class_name(&self, side: Side) -> &str {
        match side {
            Side::First => &self.first_class,
            Side::Second => &self.second_class,
        }
    }

    /// Parses comma-separated run lengths such as `4,5,2,1`.
    pub fn parse_runs(text: &str) -> Result<Vec<usize>, JosephusError> {
        text.split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|e| {
                    JosephusError::InvalidCircle(format!("bad run length `{}`: {e}", t.trim()))
                })
            })
            .collect()
    }
}

/// The class of each position, in order.
pub fn label_circle(circle: &TwoClassCircle) -> Vec<Side> {
    let mut side = circle.leading;
    let mut out = Vec::with_capacity(circle.n());
    for &len in &circle.runs {
        out.extend(std::iter::repeat_n(side, len));
        side = side.other();
    }
    out
}

/// True iff removing `count` positions leaves only first-class survivors.
pub fn verify_arrangement(
    circle: &TwoClassCircle,
    k: usize,
    convention: EliminationConvention,
    count: usize,
) -> Result<bool, JosephusError> {
    let labels = label_circle(circle);
    let trace = eliminate(labels.len(), k, count, convention)?;
    Ok(trace.survivors.iter().all(|&p| labels[p - 1] == Side::First))
}

/// Builds the circle whose second-class positions are exactly the first
/// `second_count` removals.
pub fn solve_arrangement(
    first_count: usize,
    second_count: usize,
    k: usize,
    convention: EliminationConvention,
) -> Result<TwoClassCircle, JosephusError> {
    let n = first_count + second_count;
    let trace = eliminate(n, k, second_count, convention)?;
    let gone: BTreeSet<usize> = trace.removed.iter().copied().collect();
    let sides: Vec<Side> = (1..=n)
        .map(|p| if gone.contains(&p) { Side::Second } else { Side::First })
        .collect();
    let mut runs: Vec<usize> = Vec::new();
    for (i, side) in sides.iter().enumerate() {
        if i > 0 && sides[i - 1] == *side {
            *runs.last_mut().expect("non-empty") += 1;
        } else {
            runs.push(1);
        }
    }
    Ok(TwoClassCircle::new(runs)?.with_leading(sides[0]))
}

/// All step sizes in `1..=k_max` for which the circle verifies, ascending.
pub fn solve_step_size(
    circle: &TwoClassCircle,
    convention: EliminationConvention,
    count: usize,
    k_max: usize,
) -> Result<Vec<usize>, JosephusError> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        if verify_arrangement(circle, k, convention, count)? {
            out.push(k);
        }
    }
    Ok(out)
}
