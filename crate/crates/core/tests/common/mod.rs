//! Brute-force reference computations that only read raw graph data.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use markov_morita::{IsoWitness, LabelledGraph, TransitionMatrix};

/// Nonzero ANDs of every nonempty subset of rows, as bitmasks.
pub fn f_classes_by_subsets(t: &TransitionMatrix) -> BTreeSet<u64> {
    let rows: Vec<u64> = t.rows().iter().map(|r| r.bits()).collect();
    let n = rows.len();
    (1u32..1 << n)
        .map(|mask| {
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .fold(u64::MAX, |acc, i| acc & rows[i])
        })
        .filter(|&v| v != 0)
        .collect()
}

/// Vertex count, order matrix, and each label as `(range, sorted sources)`.
pub struct RawGraph {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub labels: Vec<(usize, Vec<usize>)>,
}

impl RawGraph {
    pub fn of(g: &LabelledGraph) -> Self {
        let n = g.vertex_count();
        let ids: Vec<_> = g.vertices().collect();
        let leq = ids
            .iter()
            .map(|&a| ids.iter().map(|&b| g.order().leq(a, b)).collect())
            .collect();
        let mut labels: Vec<(usize, Vec<usize>)> = g
            .label_ids()
            .map(|l| (g.label(l).range.0, Vec::new()))
            .collect();
        for e in g.edges() {
            assert_eq!(
                e.range.0, labels[e.label.0].0,
                "edge range differs from its label's range"
            );
            labels[e.label.0].1.push(e.source.0);
        }
        for l in &mut labels {
            l.1.sort_unstable();
        }
        Self { n, leq, labels }
    }

    fn mapped_labels(&self, pi: &[usize]) -> Vec<(usize, Vec<usize>)> {
        let mut out: Vec<(usize, Vec<usize>)> = self
            .labels
            .iter()
            .map(|(r, s)| {
                let mut s: Vec<usize> = s.iter().map(|&x| pi[x]).collect();
                s.sort_unstable();
                (pi[*r], s)
            })
            .collect();
        out.sort();
        out
    }

    fn preserves_order(&self, other: &Self, pi: &[usize]) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.leq[a][b] == other.leq[pi[a]][pi[b]]))
    }
}

/// Tries every vertex bijection; labels must then match as a multiset of
/// `(range, sources)` pairs.
pub fn isomorphic(g1: &RawGraph, g2: &RawGraph) -> bool {
    if g1.n != g2.n || g1.labels.len() != g2.labels.len() {
        return false;
    }
    let edges = |g: &RawGraph| g.labels.iter().map(|l| l.1.len()).sum::<usize>();
    if edges(g1) != edges(g2) {
        return false;
    }
    let mut target = g2.labels.clone();
    target.sort();
    (0..g1.n)
        .permutations(g1.n)
        .any(|pi| g1.preserves_order(g2, &pi) && g1.mapped_labels(&pi) == target)
}

/// Checks a decider witness using only raw data.
pub fn witness_valid(g1: &LabelledGraph, g2: &LabelledGraph, w: &IsoWitness) -> bool {
    let (r1, r2) = (RawGraph::of(g1), RawGraph::of(g2));
    let pi: Vec<usize> = w.vertices.iter().map(|d| d.0).collect();
    let distinct: BTreeSet<usize> = pi.iter().copied().collect();
    if r1.n != r2.n
        || pi.len() != r1.n
        || distinct.len() != r1.n
        || distinct.iter().any(|&x| x >= r1.n)
    {
        return false;
    }
    if w.labels.len() != r1.labels.len()
        || w.labels.iter().map(|l| l.0).collect::<BTreeSet<_>>().len() != r2.labels.len()
    {
        return false;
    }
    let labels_ok = r1.labels.iter().zip(&w.labels).all(|((r, s), m)| {
        let (r_img, s_img) = &r2.labels[m.0];
        let mut s: Vec<usize> = s.iter().map(|&x| pi[x]).collect();
        s.sort_unstable();
        pi[*r] == *r_img && &s == s_img
    });
    labels_ok && r1.preserves_order(&r2, &pi)
}
