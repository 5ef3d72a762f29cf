//! Balanced partitions of `{1..n}` into `r` groups by stepping around a
//! circle with step size `k`.
//!
//! Two constructions are provided. [`partition_removal`] runs a Josephus-style
//! elimination over the circle padded with dummy objects and fills groups in
//! selection order. [`partition_nonremoval`] leaves objects in place and groups
//! them by the cycles of the `+k` map ([`algorithm_a`]), optionally subdividing
//! each cycle again ([`algorithm_b`]), padding with dummy objects and dummy
//! groups as needed.
//!
//! Every position at the interface is 1-based. Objects numbered above `n` are
//! dummies.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::josephus::{elimination_order, EliminationConvention};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("invalid partition spec: {0}")]
    InvalidSpec(String),
    #[error("no padding satisfies the {case} strategy for n = {n}, r = {r}, k = {k}")]
    ConstructionFailure {
        case: &'static str,
        n: usize,
        r: usize,
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionSpec {
    pub n: usize,
    pub r: usize,
    pub k: usize,
}

impl PartitionSpec {
    pub fn new(n: usize, r: usize, k: usize) -> Result<Self, PartitionError> {
        if n == 0 || r == 0 || k == 0 {
            return Err(PartitionError::InvalidSpec(format!(
                "n, r and k must be positive (n = {n}, r = {r}, k = {k})"
            )));
        }
        if r > n {
            return Err(PartitionError::InvalidSpec(format!(
                "cannot split {n} objects into {r} non-empty groups"
            )));
        }
        Ok(Self { n, r, k })
    }

    /// Step size reduced into `1..=n`; stepping by `k` and by this value
    /// visits the same positions.
    pub fn effective_k(&self) -> usize {
        (self.k - 1) % self.n + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionMode {
    Removal,
    NonRemoval,
}

impl fmt::Display for PartitionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Removal => "removal",
            Self::NonRemoval => "non-removal",
        })
    }
}

impl FromStr for PartitionMode {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "removal" => Ok(Self::Removal),
            "non-removal" | "nonremoval" => Ok(Self::NonRemoval),
            other => Err(PartitionError::InvalidSpec(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SwapPhase {
    /// Removal mode: a dummy bound for an already-filled group trades places
    /// with one of that group's real objects.
    Redirect,
    /// Real objects leave dummy groups.
    Purify,
    /// Surplus dummies move so real groups differ by at most one dummy.
    Level,
}

/// One exchange of a dummy object with a real object. Group numbers are
/// 1-based construction order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Swap {
    pub phase: SwapPhase,
    pub dummy: usize,
    pub real: usize,
    /// Group the dummy moved into.
    pub dummy_to: usize,
    /// Group the real object moved into.
    pub real_to: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionTrace {
    /// `removal`, or one of the non-removal strategies: `cycles`, `dummy-groups`,
    /// `divisor-padding`, `group-padding`, `consecutive`.
    pub case: String,
    pub effective_k: usize,
    /// Objects on the circle including dummies (`N` or `m`).
    pub objects: usize,
    /// Groups built including dummy groups.
    pub groups_built: usize,
    /// Extra dummy objects beyond those filling dummy groups.
    pub s: usize,
    /// Dummy groups added (non-removal).
    pub t: usize,
    /// Dummy groups (removal).
    pub a: usize,
    /// Dummies routed one per real group (removal).
    pub b: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<usize>,
    /// Number of cycle-splitting rounds (1 = [`algorithm_a`], 2 = [`algorithm_b`]).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    /// `divisor-padding` chose `s` by `k | m` and `gcd(m/k, k) = r/k`.
    pub substitute_condition: bool,
    /// Needed more than two splitting rounds because `r > k²`.
    pub generalized_subdivision: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub elimination_order: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dummy_groups: Vec<usize>,
    pub swaps: Vec<Swap>,
    /// Groups after all swaps, dummies still present.
    pub before_removal: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionResult {
    pub groups: Vec<Vec<usize>>,
    pub mode: PartitionMode,
    pub trace: PartitionTrace,
}

pub fn partition(spec: PartitionSpec, mode: PartitionMode) -> Result<PartitionResult, PartitionError> {
    match mode {
        PartitionMode::Removal => Ok(partition_removal(spec)),
        PartitionMode::NonRemoval => partition_nonremoval(spec),
    }
}

/// Josephus-style construction.
///
/// `s` dummies bring the circle to `N = r·⌈n/r⌉`. Objects are selected by
/// count-k elimination from position 1 and dealt into groups of `⌈n/r⌉` in
/// selection order. The i-th dummy selected always ends up in group i: it is
/// placed there directly, reserved there ahead of time, or swapped with the
/// lowest-numbered real object of that already-full group.
pub fn partition_removal(spec: PartitionSpec) -> PartitionResult {
    let PartitionSpec { n, r, .. } = spec;
    let k = spec.effective_k();
    let size = n.div_ceil(r);
    let total = r * size;
    let s = total - n;
    // s < r always, so every dummy is routed to a distinct real group and no
    // dummy group is needed.
    let (a, b) = (0, s);

    let order = elimination_order(total, k, total, EliminationConvention::CountK);
    let mut groups: Vec<Vec<usize>> = vec![Vec::with_capacity(size); r];
    let mut swaps = Vec::new();
    let mut current = 0;
    let mut dummies_seen = 0;

    for &object in &order {
        if object <= n {
            groups[current].push(object);
        } else {
            dummies_seen += 1;
            let target = dummies_seen - 1;
            if dummies_seen > b || target == current {
                groups[current].push(object);
            } else if target > current {
                groups[target].push(object);
            } else {
                let slot = lowest_real_slot(&groups[target], n).expect("full group holds a real object");
                let real = std::mem::replace(&mut groups[target][slot], object);
                groups[current].push(real);
                swaps.push(Swap {
                    phase: SwapPhase::Redirect,
                    dummy: object,
                    real,
                    dummy_to: target + 1,
                    real_to: current + 1,
                });
            }
        }
        while current < r && groups[current].len() >= size {
            current += 1;
        }
    }

    let mut before_removal = groups;
    before_removal.iter_mut().for_each(|g| g.sort_unstable());
    let groups = strip_dummies(&before_removal, n);
    PartitionResult {
        groups,
        mode: PartitionMode::Removal,
        trace: PartitionTrace {
            case: "removal".into(),
            effective_k: k,
            objects: total,
            groups_built: r + a,
            s,
            a,
            b,
            elimination_order: order,
            swaps,
            before_removal,
            ..Default::default()
        },
    }
}

/// Cycles of the `+k` map on a circle of `m` positions.
///
/// Each cycle starts at the lowest position not yet visited and lists
/// positions in visiting order, starting position included. There are
/// `gcd(m, k)` cycles of `m / gcd(m, k)` positions each.
pub fn algorithm_a(m: usize, k: usize) -> Vec<Vec<usize>> {
    assert!(m >= 1 && k >= 1, "algorithm_a needs m, k >= 1");
    let mut visited = vec![false; m];
    let mut groups = Vec::new();
    for start in 0..m {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut at = start;
        while !visited[at] {
            visited[at] = true;
            cycle.push(at + 1);
            at = (at + k) % m;
        }
        groups.push(cycle);
    }
    groups
}

/// [`algorithm_a`], then again on each group laid out on its own
/// circle in increasing position order. Yields `g·f` groups with
/// `g = gcd(m, k)` and `f = gcd(m/g, k)`.
pub fn algorithm_b(m: usize, k: usize) -> Vec<Vec<usize>> {
    subdivide(m, k, 2)
}

/// `depth` rounds of cycle splitting; depth 1 is [`algorithm_a`], depth 2 is
/// [`algorithm_b`].
fn subdivide(m: usize, k: usize, depth: usize) -> Vec<Vec<usize>> {
    let mut groups = vec![(1..=m).collect::<Vec<_>>()];
    for _ in 0..depth {
        groups = groups
            .into_iter()
            .flat_map(|mut group| {
                group.sort_unstable();
                algorithm_a(group.len(), k)
                    .into_iter()
                    .map(|cycle| cycle.into_iter().map(|i| group[i - 1]).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    groups
}

/// Non-removal construction with the full case dispatch.
///
/// * `k ≥ r` (`cycles`, or `dummy-groups` when `t > 0`): add `t` dummy groups of `⌈n/r⌉` dummies so that
///   `T = r + t` divides `k`, then `s` more dummies so that `gcd(m, k) = T`,
///   and run [`algorithm_a`].
/// * `1 < k < r` with `k | r` (`divisor-padding`): `s` dummies with `k | m` and
///   `gcd(m/k, k) = r/k`, then [`algorithm_b`]. Falls through to `group-padding` when no
///   such `s` exists.
/// * `1 < k < r` otherwise (`group-padding`): dummy groups bring the group count to
///   `T = k·f` with `f | k`, dummies make [`algorithm_b`] emit exactly `T`
///   groups. When `r > k²` no such `T` exists and the splitting is repeated
///   until `k^d ≥ r` groups exist.
/// * `k = 1 < r` (`consecutive`): consecutive blocks.
///
/// The last `t` groups in construction order are the dummy groups. Real
/// objects are swapped out of them first; then surplus dummies in real groups
/// move to the lowest-labeled groups holding the fewest dummies.
pub fn partition_nonremoval(spec: PartitionSpec) -> Result<PartitionResult, PartitionError> {
    let PartitionSpec { n, r, .. } = spec;
    let k = spec.effective_k();
    let size = n.div_ceil(r);
    let mut trace = PartitionTrace {
        effective_k: k,
        ..Default::default()
    };

    let (groups, total_groups) = if k >= r {
        let groups_total = (r..=k).find(|t| k.is_multiple_of(*t)).expect("k itself divides k");
        let t = groups_total - r;
        let base = n + t * size;
        let s = (0..k)
            .find(|s| gcd(base + s, k) == groups_total)
            .ok_or(PartitionError::ConstructionFailure { case: "cycles", n, r, k })?;
        let m = base + s;
        trace.case = if t == 0 { "cycles" } else { "dummy-groups" }.into();
        trace.t = t;
        trace.s = s;
        trace.objects = m;
        trace.g = Some(gcd(m, k));
        trace.depth = Some(1);
        (algorithm_a(m, k), groups_total)
    } else if k == 1 {
        trace.case = "consecutive".into();
        trace.objects = n;
        let (q, big) = (n / r, n % r);
        let mut groups = Vec::with_capacity(r);
        let mut next = 1;
        for i in 0..r {
            let len = if i < big { q + 1 } else { q };
            groups.push((next..next + len).collect());
            next += len;
        }
        (groups, r)
    } else {
        let direct = if r % k == 0 {
            (0..k * r).find(|s| (n + s) % k == 0 && gcd((n + s) / k, k) == r / k)
        } else {
            None
        };
        if let Some(s) = direct {
            let m = n + s;
            trace.case = "divisor-padding".into();
            trace.substitute_condition = true;
            trace.s = s;
            trace.objects = m;
            trace.g = Some(gcd(m, k));
            trace.f = Some(gcd(m / gcd(m, k), k));
            trace.depth = Some(2);
            (algorithm_b(m, k), r)
        } else if let Some(groups_total) =
            (r..=k * k).find(|t| t.is_multiple_of(k) && k.is_multiple_of(t / k))
        {
            let t = groups_total - r;
            let base = n + t * size;
            let want = groups_total / k;
            let s = (0..k * k)
                .find(|s| (base + s) % k == 0 && gcd((base + s) / k, k) == want)
                .ok_or(PartitionError::ConstructionFailure { case: "group-padding", n, r, k })?;
            let m = base + s;
            trace.case = "group-padding".into();
            trace.t = t;
            trace.s = s;
            trace.objects = m;
            trace.g = Some(gcd(m, k));
            trace.f = Some(gcd(m / gcd(m, k), k));
            trace.depth = Some(2);
            (algorithm_b(m, k), groups_total)
        } else {
            let mut depth = 1;
            let mut groups_total = k;
            while groups_total < r {
                groups_total *= k;
                depth += 1;
            }
            let t = groups_total - r;
            let m = groups_total * size;
            trace.case = "group-padding".into();
            trace.generalized_subdivision = true;
            trace.t = t;
            trace.objects = m;
            trace.depth = Some(depth);
            (subdivide(m, k, depth), groups_total)
        }
    };

    if groups.len() != total_groups {
        return Err(PartitionError::ConstructionFailure {
            case: "group count",
            n,
            r,
            k,
        });
    }
    trace.groups_built = total_groups;
    let dummy_groups: Vec<usize> = (r..total_groups).collect();
    trace.dummy_groups = dummy_groups.iter().map(|g| g + 1).collect();

    let mut groups = groups;
    purify(&mut groups, n, r, &mut trace.swaps);
    level(&mut groups[..r], n, &mut trace.swaps);
    groups.iter_mut().for_each(|g| g.sort_unstable());

    let result_groups = strip_dummies(&groups[..r], n);
    trace.before_removal = groups;
    Ok(PartitionResult {
        groups: result_groups,
        mode: PartitionMode::NonRemoval,
        trace,
    })
}

/// Moves every real object out of the dummy groups (indices `r..`), taking
/// dummies from real groups in label order.
fn purify(groups: &mut [Vec<usize>], n: usize, r: usize, swaps: &mut Vec<Swap>) {
    for real_group in 0..r {
        let mut dummies: Vec<usize> = groups[real_group].iter().copied().filter(|&o| o > n).collect();
        dummies.sort_unstable();
        for dummy in dummies {
            let Some(source) = (r..groups.len()).find(|&g| groups[g].iter().any(|&o| o <= n)) else {
                return;
            };
            let slot = lowest_real_slot(&groups[source], n).expect("source holds a real object");
            let real = std::mem::replace(&mut groups[source][slot], dummy);
            let at = groups[real_group].iter().position(|&o| o == dummy).expect("dummy present");
            groups[real_group][at] = real;
            swaps.push(Swap {
                phase: SwapPhase::Purify,
                dummy,
                real,
                dummy_to: source + 1,
                real_to: real_group + 1,
            });
        }
    }
}

/// Equalizes dummy counts across real groups to within one.
fn level(groups: &mut [Vec<usize>], n: usize, swaps: &mut Vec<Swap>) {
    loop {
        let counts: Vec<usize> = groups
            .iter()
            .map(|g| g.iter().filter(|&&o| o > n).count())
            .collect();
        let (Some(&most), Some(&least)) = (counts.iter().max(), counts.iter().min()) else {
            return;
        };
        if most - least <= 1 {
            return;
        }
        let donor = counts.iter().rposition(|&c| c == most).expect("max exists");
        let receiver = counts.iter().position(|&c| c == least).expect("min exists");
        let (d_slot, dummy) = groups[donor]
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, o)| o > n)
            .max_by_key(|&(_, o)| o)
            .expect("donor holds a dummy");
        let r_slot = lowest_real_slot(&groups[receiver], n).expect("receiver holds a real object");
        let real = std::mem::replace(&mut groups[receiver][r_slot], dummy);
        groups[donor][d_slot] = real;
        swaps.push(Swap {
            phase: SwapPhase::Level,
            dummy,
            real,
            dummy_to: receiver + 1,
            real_to: donor + 1,
        });
    }
}

fn lowest_real_slot(group: &[usize], n: usize) -> Option<usize> {
    group
        .iter()
        .enumerate()
        .filter(|&(_, &o)| o <= n)
        .min_by_key(|&(_, &o)| o)
        .map(|(i, _)| i)
}

fn strip_dummies(groups: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    groups
        .iter()
        .map(|g| {
            let mut real: Vec<usize> = g.iter().copied().filter(|&o| o <= n).collect();
            real.sort_unstable();
            real
        })
        .collect()
}

/// True iff `groups` partition `{1..n}` into `r` groups with exactly
/// `n mod r` of size `⌈n/r⌉` and the rest of size `⌊n/r⌋`.
pub fn is_balanced(groups: &[Vec<usize>], n: usize, r: usize) -> bool {
    if r == 0 || groups.len() != r {
        return false;
    }
    let mut seen = vec![false; n + 1];
    for &o in groups.iter().flatten() {
        if o == 0 || o > n || seen[o] {
            return false;
        }
        seen[o] = true;
    }
    if !seen[1..].iter().all(|&s| s) {
        return false;
    }
    let (q, big) = (n / r, n % r);
    let large = groups.iter().filter(|g| g.len() == q + 1).count();
    let small = groups.iter().filter(|g| g.len() == q).count();
    if big == 0 {
        small == r
    } else {
        large == big && small == r - big
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(groups: &[Vec<usize>]) -> Vec<Vec<usize>> {
        groups
            .iter()
            .map(|g| {
                let mut g = g.clone();
                g.sort_unstable();
                g
            })
            .collect()
    }

    fn spec(n: usize, r: usize, k: usize) -> PartitionSpec {
        PartitionSpec::new(n, r, k).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(PartitionSpec::new(3, 4, 1).is_err());
        assert!(PartitionSpec::new(0, 0, 1).is_err());
        assert!(PartitionSpec::new(3, 1, 0).is_err());
        assert_eq!(spec(10, 3, 14).effective_k(), 4);
        assert_eq!(spec(10, 3, 10).effective_k(), 10);
        assert_eq!(spec(10, 3, 20).effective_k(), 10);
    }

    #[test]
    fn removal_ten_into_three_step_four() {
        let res = partition_removal(spec(10, 3, 4));
        assert_eq!(res.trace.elimination_order, vec![4, 8, 12, 5, 10, 3, 11, 7, 6, 9, 2, 1]);
        assert_eq!((res.trace.s, res.trace.a, res.trace.b), (2, 0, 2));
        assert_eq!(res.trace.objects, 12);
        assert_eq!(
            res.trace.before_removal,
            vec![vec![4, 5, 8, 12], vec![3, 7, 10, 11], vec![1, 2, 6, 9]]
        );
        assert_eq!(res.groups, vec![vec![4, 5, 8], vec![3, 7, 10], vec![1, 2, 6, 9]]);
        assert!(res.trace.swaps.is_empty());
    }

    #[test]
    fn removal_singletons_follow_elimination_order() {
        let res = partition_removal(spec(5, 5, 1));
        assert_eq!(res.groups, vec![vec![1], vec![2], vec![3], vec![4], vec![5]]);
        let res = partition_removal(spec(4, 4, 3));
        // ring order 3, 2, 4, 1
        assert_eq!(res.groups, vec![vec![3], vec![2], vec![4], vec![1]]);
    }

    #[test]
    fn removal_seven_two_three() {
        // 8-ring with dummy 8, count-3 order: 3,6,1,5,2,8,4,7.
        // Group 1 <- 3,6,1,5; dummy 8 is first dummy but group 1 is full,
        // so it swaps with 1 (lowest real of group 1); group 2 <- 2,1,4,7.
        let res = partition_removal(spec(7, 2, 3));
        assert_eq!(res.trace.elimination_order, vec![3, 6, 1, 5, 2, 8, 4, 7]);
        assert_eq!(res.groups, vec![vec![3, 5, 6], vec![1, 2, 4, 7]]);
        assert_eq!(res.trace.swaps.len(), 1);
        assert_eq!(res.trace.swaps[0].phase, SwapPhase::Redirect);
        assert_eq!((res.trace.swaps[0].dummy, res.trace.swaps[0].real), (8, 1));
    }

    #[test]
    fn removal_reserves_slot_ahead_of_time() {
        // 12-ring for n = 9, r = 4 with dummies 10, 11, 12. The first dummy
        // arrives after group 1 is full (swap); the second arrives while group
        // 1 is still filling, so it is parked in group 2 ahead of time.
        let res = partition_removal(spec(9, 4, 8));
        assert_eq!(res.groups, vec![vec![4, 8], vec![1, 3], vec![6, 7], vec![2, 5, 9]]);
        let phases: Vec<SwapPhase> = res.trace.swaps.iter().map(|s| s.phase).collect();
        assert_eq!(phases, vec![SwapPhase::Redirect]);
        let dummy_homes: Vec<usize> = res
            .trace
            .before_removal
            .iter()
            .map(|g| g.iter().filter(|&&o| o > 9).count())
            .collect();
        assert_eq!(dummy_homes, vec![1, 1, 1, 0]);
    }

    #[test]
    fn algorithm_a_cycles() {
        assert_eq!(
            algorithm_a(12, 4),
            vec![vec![1, 5, 9], vec![2, 6, 10], vec![3, 7, 11], vec![4, 8, 12]]
        );
        assert_eq!(algorithm_a(5, 5), (1..=5).map(|i| vec![i]).collect::<Vec<_>>());
        assert_eq!(sets(&algorithm_a(6, 4)), vec![vec![1, 3, 5], vec![2, 4, 6]]);
        assert_eq!(algorithm_a(6, 4)[0], vec![1, 5, 3]);
    }

    #[test]
    fn algorithm_b_subgroups() {
        assert_eq!(
            sets(&algorithm_b(12, 2)),
            vec![vec![1, 5, 9], vec![3, 7, 11], vec![2, 6, 10], vec![4, 8, 12]]
        );
        assert_eq!(algorithm_b(7, 1), vec![(1..=7).collect::<Vec<_>>()]);
        assert_eq!(
            sets(&algorithm_b(8, 2)),
            vec![vec![1, 5], vec![3, 7], vec![2, 6], vec![4, 8]]
        );
    }

    #[test]
    fn nonremoval_ten_into_four_step_four() {
        let res = partition_nonremoval(spec(10, 4, 4)).unwrap();
        assert_eq!(res.trace.case, "cycles");
        assert_eq!(res.trace.s, 2);
        assert_eq!(res.groups, vec![vec![1, 5, 9], vec![2, 6, 10], vec![3, 7], vec![4, 8]]);
        assert!(res.trace.swaps.is_empty());
    }

    #[test]
    fn nonremoval_twelve_into_three_step_four() {
        let res = partition_nonremoval(spec(12, 3, 4)).unwrap();
        assert_eq!(res.trace.case, "dummy-groups");
        assert_eq!((res.trace.t, res.trace.s, res.trace.objects), (1, 0, 16));
        assert_eq!(res.trace.dummy_groups, vec![4]);
        let pairs: Vec<(usize, usize)> = res.trace.swaps.iter().map(|s| (s.real, s.dummy)).collect();
        assert_eq!(pairs, vec![(4, 13), (8, 14), (12, 15)]);
        assert_eq!(res.trace.before_removal[3], vec![13, 14, 15, 16]);
        assert_eq!(
            res.groups,
            vec![vec![1, 4, 5, 9], vec![2, 6, 8, 10], vec![3, 7, 11, 12]]
        );
    }

    #[test]
    fn nonremoval_unit_step() {
        let res = partition_nonremoval(spec(7, 3, 1)).unwrap();
        assert_eq!(res.trace.case, "consecutive");
        assert_eq!(res.groups, vec![vec![1, 2, 3], vec![4, 5], vec![6, 7]]);
    }

    #[test]
    fn nonremoval_divisor_padding_flags_substitute() {
        let res = partition_nonremoval(spec(10, 4, 2)).unwrap();
        assert_eq!(res.trace.case, "divisor-padding");
        assert!(res.trace.substitute_condition);
        assert_eq!(res.trace.s, 2);
        assert!(is_balanced(&res.groups, 10, 4));
    }

    #[test]
    fn nonremoval_group_padding() {
        let res = partition_nonremoval(spec(10, 3, 2)).unwrap();
        assert_eq!(res.trace.case, "group-padding");
        assert_eq!(res.trace.t, 1);
        assert!(is_balanced(&res.groups, 10, 3));
        // divisor padding has no valid s here and falls back to group padding (6/2 = 3 does not divide 2)
        let res = partition_nonremoval(spec(13, 6, 2)).unwrap();
        assert_eq!(res.trace.case, "group-padding");
        assert!(res.trace.generalized_subdivision);
        assert_eq!(res.trace.depth, Some(3));
        assert!(is_balanced(&res.groups, 13, 6));
    }

    #[test]
    fn balance_predicate() {
        let ex2 = vec![vec![1, 5, 9], vec![2, 6, 10], vec![3, 7], vec![4, 8]];
        assert!(is_balanced(&ex2, 10, 4));
        assert!(is_balanced(&[vec![1], vec![2, 3]], 3, 2));
        assert!(!is_balanced(&[vec![1, 2], vec![1, 3]], 3, 2));
        assert!(!is_balanced(&[vec![1], vec![2, 3, 4]], 4, 2));
        assert!(!is_balanced(&[vec![1, 2]], 3, 1));
    }

    #[test]
    fn small_sweep_is_balanced() {
        for n in 1..=16 {
            for r in 1..=n {
                for k in 1..=2 * n {
                    let s = spec(n, r, k);
                    let a = partition_removal(s);
                    assert!(is_balanced(&a.groups, n, r), "removal {n} {r} {k}: {:?}", a.groups);
                    let b = partition_nonremoval(s).unwrap();
                    assert!(is_balanced(&b.groups, n, r), "non-removal {n} {r} {k}: {:?}", b.groups);
                }
            }
        }
    }
}
