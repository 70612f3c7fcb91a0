//! Strong and branching bisimulation: equivalence checks and quotients.
//!
//! Two LTSs are compared by refining their disjoint union and asking whether
//! both initial states end up in the same block. Branching bisimulation is
//! the divergence-blind variant.

mod partition;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::lts::{Lts, LtsBuilder};
use crate::semantics::Label;
pub use partition::Partition;
use partition::{branching_partition, branching_signature, strong_levels, strong_partition, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Strong,
    Branching,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Strong => "strong",
            Relation::Branching => "branching",
        })
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strong" => Ok(Relation::Strong),
            "branching" => Ok(Relation::Branching),
            other => Err(format!(
                "unknown relation `{other}` (expected strong or branching)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A winning attack in the strong bisimulation game, played along one
/// concrete defence.
///
/// `trace[i]` is performed from `left[i]` to `left[i + 1]` in the left LTS
/// and from `right[i]` to `right[i + 1]` in the right one. At the end of the
/// path `offending` is enabled on `offending_side` and not on the other. At
/// every step the attacker's move could not be answered by any move into a
/// bisimilar pair, so the path length is the minimal separation depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub trace: Vec<Label>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub offending: Label,
    pub offending_side: Side,
}

impl Witness {
    /// Replays the witness on both LTSs; true iff every recorded step is a
    /// real transition and the final divergence is genuine.
    pub fn replays(&self, l1: &Lts, l2: &Lts) -> bool {
        let n = self.trace.len();
        if self.left.len() != n + 1 || self.right.len() != n + 1 {
            return false;
        }
        if self.left[0] != l1.initial() || self.right[0] != l2.initial() {
            return false;
        }
        let has = |l: &Lts, s: usize, label: &Label, t: Option<usize>| {
            l.transitions().iter().any(|tr| {
                tr.src == s && l.label(tr.label) == label && t.is_none_or(|t| tr.dst == t)
            })
        };
        for i in 0..n {
            if !has(l1, self.left[i], &self.trace[i], Some(self.left[i + 1]))
                || !has(l2, self.right[i], &self.trace[i], Some(self.right[i + 1]))
            {
                return false;
            }
        }
        let (l_end, r_end) = (self.left[n], self.right[n]);
        let in_left = has(l1, l_end, &self.offending, None);
        let in_right = has(l2, r_end, &self.offending, None);
        match self.offending_side {
            Side::Left => in_left && !in_right,
            Side::Right => in_right && !in_left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongResult {
    pub equivalent: bool,
    pub witness: Option<Witness>,
}

/// Why two initial states are not branching bisimilar: the state on `side`
/// can, after inert internal steps, take `label` into a class that the other
/// initial state cannot reach the same way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureGap {
    pub side: Side,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchingResult {
    pub equivalent: bool,
    pub gap: Option<SignatureGap>,
    pub classes: usize,
}

pub fn strong_bisim_equal(l1: &Lts, l2: &Lts) -> StrongResult {
    let g = Graph::union(l1, l2);
    let levels = strong_levels(&g);
    let (s, t) = (l1.initial(), l2.initial() + l1.n_states());
    let last = levels.last().unwrap();
    if last.block_of(s) == last.block_of(t) {
        return StrongResult {
            equivalent: true,
            witness: None,
        };
    }
    let offset = l1.n_states();
    StrongResult {
        equivalent: false,
        witness: Some(build_witness(&g, &levels, s, t, offset)),
    }
}

fn first_separation(levels: &[Partition], s: usize, t: usize) -> usize {
    levels
        .iter()
        .position(|p| p.block_of(s) != p.block_of(t))
        .expect("states are separated")
}

fn build_witness(
    g: &Graph,
    levels: &[Partition],
    mut s: usize,
    mut t: usize,
    offset: usize,
) -> Witness {
    let mut trace = Vec::new();
    let mut left = vec![s];
    let mut right = vec![t - offset];
    loop {
        let k = first_separation(levels, s, t);
        let prev = &levels[k - 1];
        // Look for an attack from either side: a move whose target class
        // (at level k-1) no same-label move of the other side reaches.
        let mut attack = None;
        'search: for (side, a, b) in [(Side::Left, s, t), (Side::Right, t, s)] {
            for &(l, a2) in &g.adj[a] {
                let answers: Vec<usize> = g.adj[b]
                    .iter()
                    .filter(|&&(m, _)| m == l)
                    .map(|&(_, d)| d)
                    .collect();
                if answers
                    .iter()
                    .all(|&b2| prev.block_of(b2) != prev.block_of(a2))
                {
                    attack = Some((side, l, a2, answers));
                    break 'search;
                }
            }
        }
        let (side, l, a2, answers) = attack.expect("separated states admit an attack");
        let label = g.labels[l].clone();
        let Some(&b2) = answers.first() else {
            return Witness {
                trace,
                left,
                right,
                offending: label,
                offending_side: side,
            };
        };
        let (s2, t2) = match side {
            Side::Left => (a2, b2),
            Side::Right => (b2, a2),
        };
        trace.push(label);
        left.push(s2);
        right.push(t2 - offset);
        s = s2;
        t = t2;
    }
}

pub fn branching_bisim_equal(l1: &Lts, l2: &Lts) -> BranchingResult {
    let g = Graph::union(l1, l2);
    let p = branching_partition(&g);
    let (s, t) = (l1.initial(), l2.initial() + l1.n_states());
    if p.block_of(s) == p.block_of(t) {
        return BranchingResult {
            equivalent: true,
            gap: None,
            classes: p.n_blocks(),
        };
    }
    // Signatures are compared against the final partition, pretending both
    // initial states share a block so their inert steps are comparable.
    let sig = |x: usize| branching_signature(&g, &p, x);
    let (sig_s, sig_t) = (sig(s), sig(t));
    let gap = sig_s
        .iter()
        .find(|e| !sig_t.contains(e))
        .map(|&(l, _)| SignatureGap {
            side: Side::Left,
            label: g.labels[l].clone(),
        })
        .or_else(|| {
            sig_t
                .iter()
                .find(|e| !sig_s.contains(e))
                .map(|&(l, _)| SignatureGap {
                    side: Side::Right,
                    label: g.labels[l].clone(),
                })
        });
    BranchingResult {
        equivalent: false,
        gap,
        classes: p.n_blocks(),
    }
}

pub fn equivalent(l1: &Lts, l2: &Lts, relation: Relation) -> bool {
    match relation {
        Relation::Strong => strong_bisim_equal(l1, l2).equivalent,
        Relation::Branching => branching_bisim_equal(l1, l2).equivalent,
    }
}

/// The coarsest partition of `lts`'s states under `relation`.
pub fn partition(lts: &Lts, relation: Relation) -> Partition {
    let g = Graph::of(lts);
    match relation {
        Relation::Strong => strong_partition(&g),
        Relation::Branching => branching_partition(&g),
    }
}

/// Quotient of the reachable part of `lts` under `relation`.
///
/// Numbering is canonical: the initial class is 0, the other classes follow
/// in order of their smallest original state; transitions are sorted by
/// source, label and target. Applying it to its own result is the identity.
pub fn minimize(lts: &Lts, relation: Relation) -> Lts {
    let g = Graph::of(lts);
    let p = match relation {
        Relation::Strong => strong_partition(&g),
        Relation::Branching => branching_partition(&g),
    };

    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for t in lts.transitions() {
        let (b, c) = (p.block_of(t.src), p.block_of(t.dst));
        let inert = relation == Relation::Branching && Some(t.label) == g.tau && b == c;
        if !inert {
            edges.push((b, t.label, c));
        }
    }
    edges.sort_unstable();
    edges.dedup();

    // Reachable classes.
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); p.n_blocks()];
    for &(b, l, c) in &edges {
        out[b].push((l, c));
    }
    let init = p.block_of(lts.initial());
    let mut reachable = vec![false; p.n_blocks()];
    reachable[init] = true;
    let mut queue = VecDeque::from([init]);
    while let Some(b) = queue.pop_front() {
        for &(_, c) in &out[b] {
            if !reachable[c] {
                reachable[c] = true;
                queue.push_back(c);
            }
        }
    }

    let mut min_member = vec![usize::MAX; p.n_blocks()];
    for s in 0..lts.n_states() {
        let b = p.block_of(s);
        min_member[b] = min_member[b].min(s);
    }
    let mut order: Vec<usize> = (0..p.n_blocks())
        .filter(|&b| reachable[b] && b != init)
        .collect();
    order.sort_by_key(|&b| min_member[b]);
    order.insert(0, init);
    let rank: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &b)| (b, i)).collect();

    let mut quotient: Vec<(usize, &Label, usize)> = edges
        .iter()
        .filter(|(b, _, _)| reachable[*b])
        .map(|&(b, l, c)| (rank[&b], &g.labels[l], rank[&c]))
        .collect();
    quotient.sort();
    let mut builder = LtsBuilder::new(order.len(), 0);
    for (b, l, c) in quotient {
        builder.add_transition(b, l, c);
    }
    builder.finish()
}
