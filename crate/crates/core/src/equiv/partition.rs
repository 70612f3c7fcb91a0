//! Signature-based partition refinement.

use std::collections::HashMap;

use crate::lts::Lts;
use crate::semantics::Label;

/// Adjacency view of one LTS or of the disjoint union of two.
#[derive(Debug, Clone)]
pub(crate) struct Graph {
    pub labels: Vec<Label>,
    pub tau: Option<usize>,
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    pub fn of(lts: &Lts) -> Self {
        let labels = lts.labels().to_vec();
        let tau = labels.iter().position(Label::is_tau);
        Graph {
            labels,
            tau,
            adj: lts.adjacency(),
        }
    }

    /// States of `a` keep their indices; states of `b` are shifted by
    /// `a.n_states()`. Labels are identified by value.
    pub fn union(a: &Lts, b: &Lts) -> Self {
        let mut labels = a.labels().to_vec();
        let remap: Vec<usize> = b
            .labels()
            .iter()
            .map(|l| match labels.iter().position(|x| x == l) {
                Some(i) => i,
                None => {
                    labels.push(l.clone());
                    labels.len() - 1
                }
            })
            .collect();
        let offset = a.n_states();
        let mut adj = a.adjacency();
        adj.extend(b.adjacency().into_iter().map(|out| {
            out.into_iter()
                .map(|(l, d)| (remap[l], d + offset))
                .collect::<Vec<_>>()
        }));
        let tau = labels.iter().position(Label::is_tau);
        Graph { labels, tau, adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }
}

/// Assignment of states to equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    block: Vec<usize>,
    n_blocks: usize,
}

impl Partition {
    pub fn universal(n: usize) -> Self {
        Partition {
            block: vec![0; n],
            n_blocks: usize::from(n > 0),
        }
    }

    pub fn block_of(&self, s: usize) -> usize {
        self.block[s]
    }

    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    pub fn blocks(&self) -> &[usize] {
        &self.block
    }

    /// Splits every block by signature. Block ids are assigned in order of
    /// the smallest member, so the result depends only on the relation.
    fn refine_by<S: std::hash::Hash + Eq>(&self, sigs: Vec<S>) -> Partition {
        let mut ids: HashMap<(usize, S), usize> = HashMap::new();
        let mut block = Vec::with_capacity(sigs.len());
        for (s, sig) in sigs.into_iter().enumerate() {
            let next = ids.len();
            let id = *ids.entry((self.block[s], sig)).or_insert(next);
            block.push(id);
        }
        Partition {
            n_blocks: ids.len(),
            block,
        }
    }
}

fn strong_signature(g: &Graph, p: &Partition, s: usize) -> Vec<(usize, usize)> {
    let mut sig: Vec<(usize, usize)> = g.adj[s].iter().map(|&(l, d)| (l, p.block[d])).collect();
    sig.sort_unstable();
    sig.dedup();
    sig
}

/// Every intermediate partition of strong refinement: entry `k` is
/// `k`-step bisimilarity, the last entry is strong bisimilarity.
pub(crate) fn strong_levels(g: &Graph) -> Vec<Partition> {
    let mut levels = vec![Partition::universal(g.n())];
    loop {
        let p = levels.last().unwrap();
        let sigs = (0..g.n()).map(|s| strong_signature(g, p, s)).collect();
        let next = p.refine_by(sigs);
        if next.n_blocks == p.n_blocks {
            return levels;
        }
        levels.push(next);
    }
}

pub(crate) fn strong_partition(g: &Graph) -> Partition {
    strong_levels(g).pop().unwrap()
}

/// States reachable from `s` by tau steps that stay inside `s`'s block,
/// including `s` itself.
pub(crate) fn inert_closure(g: &Graph, p: &Partition, s: usize) -> Vec<usize> {
    let Some(tau) = g.tau else {
        return vec![s];
    };
    let b = p.block[s];
    let mut seen = vec![s];
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for &(l, d) in &g.adj[u] {
            if l == tau && p.block[d] == b && !seen.contains(&d) {
                seen.push(d);
                stack.push(d);
            }
        }
    }
    seen
}

/// `{(a, B(t)) | s =inert tau*=> s' -a-> t, not (a = tau and B(t) = B(s))}`.
pub(crate) fn branching_signature(g: &Graph, p: &Partition, s: usize) -> Vec<(usize, usize)> {
    let b = p.block[s];
    let mut sig = Vec::new();
    for u in inert_closure(g, p, s) {
        for &(l, d) in &g.adj[u] {
            let inert = Some(l) == g.tau && p.block[d] == b;
            if !inert {
                sig.push((l, p.block[d]));
            }
        }
    }
    sig.sort_unstable();
    sig.dedup();
    sig
}

/// Divergence-blind branching bisimilarity by iterating signatures to a
/// fixpoint from the universal partition.
pub(crate) fn branching_partition(g: &Graph) -> Partition {
    let mut p = Partition::universal(g.n());
    loop {
        let sigs = (0..g.n()).map(|s| branching_signature(g, &p, s)).collect();
        let next = p.refine_by(sigs);
        if next.n_blocks == p.n_blocks {
            return next;
        }
        p = next;
    }
}
