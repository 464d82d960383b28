//! Inverse semigroups of labelled graph spaces.
//!
//! A labelled path `a_1 … a_n` is read with `a_1` at the range end: a
//! representative is a chain of edges `λ_1 … λ_n` with `s(λ_i) = r(λ_{i+1})`.
//! [`GraphSpace`] evaluates relative sources straight from representatives and
//! serves as the reference; [`Lgis`] assumes a strongly right resolving graph
//! and uses the two-case source formula.

use std::collections::BTreeSet;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::graph::{LabelId, LabelledGraph};

pub mod axioms;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LgisError {
    #[error("{0} vertices exceed the supported maximum of 64")]
    TooManyVertices(usize),
    #[error("edge {edge} refers to a missing vertex or label")]
    BadEdge { edge: usize },
    #[error("vertex set {0:#x} mentions a missing vertex")]
    SetOutOfRange(u64),
    #[error("the family does not contain the empty set")]
    FamilyWithoutEmpty,
    #[error("the family is not closed under intersection: {0:#x} and {1:#x}")]
    FamilyNotIntersectionClosed(u64, u64),
    #[error("the family does not contain the relative source {set:#x} of label {label}")]
    FamilyNotSourceClosed { set: u64, label: usize },
    #[error("the graph is not strongly right resolving (label {0} has two ranges)")]
    NotStronglyResolving(usize),
    #[error("label {0} carries no edge")]
    UnusedLabel(usize),
    #[error("{0} is not a labelled path")]
    NotAPath(String),
    #[error("vertex set {0:#x} is not in the family")]
    NotInFamily(u64),
    #[error("vertex set {set:#x} is not inside the source of {path}")]
    OutsideSource { set: u64, path: String },
}

/// A set of vertices, as a bit mask over vertex indices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_vertices(vs: impl IntoIterator<Item = usize>) -> Self {
        VertexSet(vs.into_iter().fold(0, |acc, v| acc | 1 << v))
    }

    pub fn all(n: usize) -> Self {
        VertexSet(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn intersect(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn vertices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&v| self.contains(v))
    }
}

/// A labelled path; the empty path is `ω`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelPath(pub SmallVec<[LabelId; 4]>);

impl LabelPath {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_labels(labels: impl IntoIterator<Item = LabelId>) -> Self {
        LabelPath(labels.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[LabelId] {
        &self.0
    }

    pub fn concat(&self, other: &[LabelId]) -> Self {
        let mut out = self.0.clone();
        out.extend_from_slice(other);
        LabelPath(out)
    }

    /// The rest of `self` after the prefix `p`, if `p` is a prefix.
    pub fn strip_prefix(&self, p: &LabelPath) -> Option<&[LabelId]> {
        self.0.strip_prefix(p.0.as_slice())
    }
}

impl fmt::Display for LabelPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ω");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{}", l.0)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpaceEdge {
    pub label: LabelId,
    pub source: usize,
    pub range: usize,
}

/// A labelled graph together with a family `B` of vertex sets.
#[derive(Debug, Clone)]
pub struct GraphSpace {
    vertex_count: usize,
    label_count: usize,
    edges: Vec<SpaceEdge>,
    family: Vec<VertexSet>,
}

impl GraphSpace {
    /// Checks that every edge and set fits the graph and that the family
    /// holds `∅` and is closed under intersection.
    pub fn new(
        vertex_count: usize,
        label_count: usize,
        edges: Vec<SpaceEdge>,
        family: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self, LgisError> {
        if vertex_count > 64 {
            return Err(LgisError::TooManyVertices(vertex_count));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.source >= vertex_count || e.range >= vertex_count || e.label.0 >= label_count {
                return Err(LgisError::BadEdge { edge: i });
            }
        }
        let all = VertexSet::all(vertex_count);
        let family: Vec<VertexSet> = family
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if let Some(bad) = family.iter().find(|s| !s.is_subset(all)) {
            return Err(LgisError::SetOutOfRange(bad.0));
        }
        if family.first() != Some(&VertexSet::EMPTY) {
            return Err(LgisError::FamilyWithoutEmpty);
        }
        for a in &family {
            for b in &family {
                if family.binary_search(&a.intersect(*b)).is_err() {
                    return Err(LgisError::FamilyNotIntersectionClosed(a.0, b.0));
                }
            }
        }
        Ok(Self {
            vertex_count,
            label_count,
            edges,
            family,
        })
    }

    /// The space of a hull graph: vertices are D-classes, `B` is the set of
    /// down-sets `B_v` together with `∅`.
    pub fn from_graph(g: &LabelledGraph) -> Result<Self, LgisError> {
        let edges = g
            .edges()
            .iter()
            .map(|e| SpaceEdge {
                label: e.label,
                source: e.source.0,
                range: e.range.0,
            })
            .collect();
        let mut family = vec![VertexSet::EMPTY];
        for v in g.vertices() {
            family.push(VertexSet::from_vertices(
                g.order().down_set(v).into_iter().map(|d| d.0),
            ));
        }
        Self::new(g.vertex_count(), g.labels().len(), edges, family)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn label_count(&self) -> usize {
        self.label_count
    }

    pub fn edges(&self) -> &[SpaceEdge] {
        &self.edges
    }

    /// Sorted, starting with `∅`.
    pub fn family(&self) -> &[VertexSet] {
        &self.family
    }

    pub fn in_family(&self, s: VertexSet) -> bool {
        self.family.binary_search(&s).is_ok()
    }

    /// `s(A, α)` from representatives: sources of edge chains labelled `α`
    /// whose range lies in `A`.
    pub fn relative_source(&self, a: VertexSet, path: &[LabelId]) -> VertexSet {
        path.iter().fold(a, |current, &l| {
            self.edges
                .iter()
                .filter(|e| e.label == l && current.contains(e.range))
                .fold(VertexSet::EMPTY, |acc, e| {
                    acc.union(VertexSet::singleton(e.source))
                })
        })
    }

    pub fn source(&self, path: &[LabelId]) -> VertexSet {
        self.relative_source(VertexSet::all(self.vertex_count), path)
    }

    /// True when `path` has a representative.
    pub fn is_path(&self, path: &[LabelId]) -> bool {
        path.is_empty() || !self.source(path).is_empty()
    }

    /// Every labelled path of length `≤ maxlen`, shortest first, then by
    /// label sequence.
    pub fn paths_up_to(&self, maxlen: usize) -> Vec<LabelPath> {
        let mut out = vec![LabelPath::empty()];
        let mut layer = vec![LabelPath::empty()];
        for _ in 0..maxlen {
            let mut next = Vec::new();
            for p in &layer {
                for l in 0..self.label_count {
                    let q = p.concat(&[LabelId(l)]);
                    if self.is_path(q.labels()) {
                        next.push(q);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Equal labels force equal ranges.
    pub fn is_strongly_right_resolving(&self) -> bool {
        (0..self.label_count).all(|l| {
            let mut ranges = self
                .edges
                .iter()
                .filter(|e| e.label.0 == l)
                .map(|e| e.range);
            match ranges.next() {
                Some(r) => ranges.all(|x| x == r),
                None => true,
            }
        })
    }

    /// `s(A ∩ B, α) = s(A, α) ∩ s(B, α)` for all `A, B ∈ B` and all paths of
    /// length 1 to 3.
    pub fn is_weakly_right_resolving(&self) -> bool {
        let paths = self.paths_up_to(3);
        paths.iter().filter(|p| !p.is_empty()).all(|p| {
            self.family.iter().all(|&a| {
                self.family.iter().all(|&b| {
                    self.relative_source(a.intersect(b), p.labels())
                        == self
                            .relative_source(a, p.labels())
                            .intersect(self.relative_source(b, p.labels()))
                })
            })
        })
    }

    /// `(weak, strong)`.
    pub fn check_resolving(&self) -> (bool, bool) {
        (
            self.is_weakly_right_resolving(),
            self.is_strongly_right_resolving(),
        )
    }

    /// Product of triples computed from representative-based relative
    /// sources, with no resolving shortcut.
    pub fn multiply_reference(&self, x: &LgisElement, y: &LgisElement) -> LgisElement {
        let (Some((alpha, a, beta)), Some((gamma, b, delta))) = (x.parts(), y.parts()) else {
            return LgisElement::Zero;
        };
        if let Some(rest) = gamma.strip_prefix(beta) {
            LgisElement::triple(
                alpha.concat(rest),
                self.relative_source(a, rest).intersect(b),
                delta.clone(),
            )
        } else if let Some(rest) = beta.strip_prefix(gamma) {
            LgisElement::triple(
                alpha.clone(),
                a.intersect(self.relative_source(b, rest)),
                delta.concat(rest),
            )
        } else {
            LgisElement::Zero
        }
    }
}

/// An element of the labelled graph inverse semigroup: zero or `(α, A, β)`
/// with `A` nonempty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LgisElement {
    Zero,
    Triple {
        alpha: LabelPath,
        set: VertexSet,
        beta: LabelPath,
    },
}

impl LgisElement {
    /// Collapses an empty middle set to zero.
    pub fn triple(alpha: LabelPath, set: VertexSet, beta: LabelPath) -> Self {
        if set.is_empty() {
            LgisElement::Zero
        } else {
            LgisElement::Triple { alpha, set, beta }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, LgisElement::Zero)
    }

    pub fn parts(&self) -> Option<(&LabelPath, VertexSet, &LabelPath)> {
        match self {
            LgisElement::Zero => None,
            LgisElement::Triple { alpha, set, beta } => Some((alpha, *set, beta)),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            LgisElement::Zero => LgisElement::Zero,
            LgisElement::Triple { alpha, set, beta } => LgisElement::Triple {
                alpha: beta.clone(),
                set: *set,
                beta: alpha.clone(),
            },
        }
    }

    /// Zero or `(α, A, α)`.
    pub fn is_idempotent(&self) -> bool {
        self.parts().is_none_or(|(a, _, b)| a == b)
    }
}

impl fmt::Display for LgisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LgisElement::Zero => f.write_str("0"),
            LgisElement::Triple { alpha, set, beta } => {
                write!(f, "({alpha}, {:#x}, {beta})", set.0)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Green {
    R,
    L,
    D,
}

/// The semigroup of a strongly right resolving graph space.
#[derive(Debug, Clone)]
pub struct Lgis {
    space: GraphSpace,
    range: Vec<usize>,
    source: Vec<VertexSet>,
}

impl Lgis {
    /// Requires every label to be used, equal labels to share a range, and
    /// `B` to contain every label source.
    pub fn new(space: GraphSpace) -> Result<Self, LgisError> {
        let mut range = Vec::with_capacity(space.label_count);
        let mut source = Vec::with_capacity(space.label_count);
        for l in 0..space.label_count {
            let mut r = None;
            let mut s = VertexSet::EMPTY;
            for e in space.edges.iter().filter(|e| e.label.0 == l) {
                if r.is_some_and(|r| r != e.range) {
                    return Err(LgisError::NotStronglyResolving(l));
                }
                r = Some(e.range);
                s = s.union(VertexSet::singleton(e.source));
            }
            let r = r.ok_or(LgisError::UnusedLabel(l))?;
            if !space.in_family(s) {
                return Err(LgisError::FamilyNotSourceClosed { set: s.0, label: l });
            }
            range.push(r);
            source.push(s);
        }
        Ok(Self {
            space,
            range,
            source,
        })
    }

    pub fn from_graph(g: &LabelledGraph) -> Result<Self, LgisError> {
        Self::new(GraphSpace::from_graph(g)?)
    }

    pub fn space(&self) -> &GraphSpace {
        &self.space
    }

    pub fn label_range(&self, l: LabelId) -> usize {
        self.range[l.0]
    }

    pub fn label_source(&self, l: LabelId) -> VertexSet {
        self.source[l.0]
    }

    /// Consecutive labels fit: `r(a_{i+1}) ∈ s(a_i)`.
    pub fn is_path(&self, path: &[LabelId]) -> bool {
        path.iter().all(|l| l.0 < self.range.len())
            && path
                .windows(2)
                .all(|w| self.source[w[0].0].contains(self.range[w[1].0]))
    }

    /// `s(α)`; the whole vertex set for `ω`.
    pub fn source(&self, path: &[LabelId]) -> VertexSet {
        match path.last() {
            Some(l) => self.source[l.0],
            None => VertexSet::all(self.space.vertex_count),
        }
    }

    /// `s(A, α)`: `A` for `ω`, otherwise `s(a_n)` when `r(a_1) ∈ A` and `∅`
    /// when not.
    pub fn relative_source(&self, a: VertexSet, path: &[LabelId]) -> VertexSet {
        match (path.first(), path.last()) {
            (Some(first), Some(last)) if a.contains(self.range[first.0]) => self.source[last.0],
            (Some(_), _) => VertexSet::EMPTY,
            _ => a,
        }
    }

    /// Validated constructor for `(α, A, β)`.
    pub fn element(
        &self,
        alpha: LabelPath,
        set: VertexSet,
        beta: LabelPath,
    ) -> Result<LgisElement, LgisError> {
        for p in [&alpha, &beta] {
            if !self.is_path(p.labels()) {
                return Err(LgisError::NotAPath(p.to_string()));
            }
        }
        if !self.space.in_family(set) {
            return Err(LgisError::NotInFamily(set.0));
        }
        for p in [&alpha, &beta] {
            if !set.is_subset(self.source(p.labels())) {
                return Err(LgisError::OutsideSource {
                    set: set.0,
                    path: p.to_string(),
                });
            }
        }
        Ok(LgisElement::triple(alpha, set, beta))
    }

    pub fn multiply(&self, x: &LgisElement, y: &LgisElement) -> LgisElement {
        let (Some((alpha, a, beta)), Some((gamma, b, delta))) = (x.parts(), y.parts()) else {
            return LgisElement::Zero;
        };
        if let Some(rest) = gamma.strip_prefix(beta) {
            LgisElement::triple(
                alpha.concat(rest),
                self.relative_source(a, rest).intersect(b),
                delta.clone(),
            )
        } else if let Some(rest) = beta.strip_prefix(gamma) {
            LgisElement::triple(
                alpha.clone(),
                a.intersect(self.relative_source(b, rest)),
                delta.concat(rest),
            )
        } else {
            LgisElement::Zero
        }
    }

    pub fn inverse(&self, x: &LgisElement) -> LgisElement {
        x.inverse()
    }

    /// `x ≤ y` iff `y = (γ, B, δ)` and `x = (γμ, A, δμ)` with `A ⊆ s(B, μ)`.
    pub fn leq(&self, x: &LgisElement, y: &LgisElement) -> bool {
        let Some((alpha, a, beta)) = x.parts() else {
            return true;
        };
        let Some((gamma, b, delta)) = y.parts() else {
            return false;
        };
        match (alpha.strip_prefix(gamma), beta.strip_prefix(delta)) {
            (Some(m1), Some(m2)) => m1 == m2 && a.is_subset(self.relative_source(b, m1)),
            _ => false,
        }
    }

    /// The natural order read off the product: `x = x x* y`.
    pub fn leq_algebraic(&self, x: &LgisElement, y: &LgisElement) -> bool {
        let e = self.multiply(x, &x.inverse());
        self.multiply(&e, y) == *x
    }

    pub fn r_related(&self, x: &LgisElement, y: &LgisElement) -> bool {
        match (x.parts(), y.parts()) {
            (Some((a1, s1, _)), Some((a2, s2, _))) => a1 == a2 && s1 == s2,
            (None, None) => true,
            _ => false,
        }
    }

    pub fn l_related(&self, x: &LgisElement, y: &LgisElement) -> bool {
        match (x.parts(), y.parts()) {
            (Some((_, s1, b1)), Some((_, s2, b2))) => b1 == b2 && s1 == s2,
            (None, None) => true,
            _ => false,
        }
    }

    /// An element `z` with `x R z L y`, searched among `candidates`.
    pub fn d_witness<'a>(
        &self,
        x: &LgisElement,
        y: &LgisElement,
        candidates: &'a [LgisElement],
    ) -> Option<&'a LgisElement> {
        candidates
            .iter()
            .find(|z| self.r_related(x, z) && self.l_related(z, y))
    }

    /// R and L use the triple characterizations; D searches `candidates`.
    pub fn green_check(
        &self,
        x: &LgisElement,
        y: &LgisElement,
        relation: Green,
        candidates: &[LgisElement],
    ) -> bool {
        match relation {
            Green::R => self.r_related(x, y),
            Green::L => self.l_related(x, y),
            Green::D => self.d_witness(x, y, candidates).is_some(),
        }
    }

    /// Paths of length `≤ maxlen`, shortest first, then by label sequence.
    pub fn paths_up_to(&self, maxlen: usize) -> Vec<LabelPath> {
        let mut out = vec![LabelPath::empty()];
        let mut layer = vec![LabelPath::empty()];
        for _ in 0..maxlen {
            let mut next = Vec::new();
            for p in &layer {
                for l in 0..self.range.len() {
                    let fits =
                        p.0.last()
                            .is_none_or(|last| self.source[last.0].contains(self.range[l]));
                    if fits {
                        next.push(p.concat(&[LabelId(l)]));
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Zero, then every `(α, A, β)` with `|α|, |β| ≤ maxlen`, ordered by `α`,
    /// then `β`, then `A`.
    pub fn enumerate_elements(&self, maxlen: usize) -> Vec<LgisElement> {
        let paths = self.paths_up_to(maxlen);
        let sets: Vec<VertexSet> = self
            .space
            .family
            .iter()
            .copied()
            .filter(|s| !s.is_empty())
            .collect();
        let mut out = vec![LgisElement::Zero];
        for alpha in &paths {
            let sa = self.source(alpha.labels());
            for beta in &paths {
                let allowed = sa.intersect(self.source(beta.labels()));
                for &s in &sets {
                    if s.is_subset(allowed) {
                        out.push(LgisElement::Triple {
                            alpha: alpha.clone(),
                            set: s,
                            beta: beta.clone(),
                        });
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::order::DClassId;
    use crate::shift::{FollowerVector, Letter, TransitionMatrix};

    fn graph(rows: &[&[u8]]) -> LabelledGraph {
        build_graph(&TransitionMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn example() -> LabelledGraph {
        graph(&[&[1, 1, 0], &[0, 1, 1], &[1, 1, 1]])
    }

    fn vid(g: &LabelledGraph, s: &str) -> DClassId {
        let v =
            FollowerVector::from_letters(s.bytes().map(|c| Letter(c - b'a')), g.matrix().size());
        g.order().id_of(&v).unwrap()
    }

    fn down(g: &LabelledGraph, s: &str) -> VertexSet {
        VertexSet::from_vertices(g.order().down_set(vid(g, s)).into_iter().map(|d| d.0))
    }

    fn path(ls: &[usize]) -> LabelPath {
        LabelPath::from_labels(ls.iter().map(|&l| LabelId(l)))
    }

    const ALPHA: usize = 0;
    const BETA: usize = 1;
    const GAMMA: usize = 2;

    #[test]
    fn relative_sources_on_example_graph() {
        let g = example();
        let s = Lgis::from_graph(&g).unwrap();
        let (ba, bb, bc, bd) = (
            down(&g, "ab"),
            down(&g, "bc"),
            down(&g, "abc"),
            down(&g, "b"),
        );
        // γ is the (b, cc^-1) label; its edges come from every vertex
        assert_eq!(s.relative_source(bc, &[LabelId(GAMMA)]), bc);
        assert_eq!(s.relative_source(bd, &[LabelId(ALPHA)]), VertexSet::EMPTY);
        assert_eq!(s.relative_source(bb, &[LabelId(BETA)]), bb);
        assert_eq!(s.relative_source(bb, &[LabelId(ALPHA)]), VertexSet::EMPTY);
        for set in s.space().family() {
            assert_eq!(s.relative_source(*set, &[]), *set);
        }
        for p in s.paths_up_to(3) {
            for &set in s.space().family() {
                assert_eq!(
                    s.relative_source(set, p.labels()),
                    s.space().relative_source(set, p.labels())
                );
            }
        }
        assert_eq!(s.source(&[LabelId(ALPHA)]), ba);
    }

    #[test]
    fn paths_agree_with_representatives() {
        for rows in [
            &[&[1u8, 1, 0][..], &[0, 1, 1], &[1, 1, 1]][..],
            &[&[1, 1], &[1, 0]],
            &[&[1]],
        ] {
            let s = Lgis::from_graph(&graph(rows)).unwrap();
            assert_eq!(s.paths_up_to(3), s.space().paths_up_to(3));
        }
    }

    #[test]
    fn products() {
        let g = example();
        let s = Lgis::from_graph(&g).unwrap();
        let (ba, bc, bd) = (down(&g, "ab"), down(&g, "abc"), down(&g, "b"));
        let x = s.element(path(&[]), bc, path(&[GAMMA])).unwrap();
        let y = s.element(path(&[GAMMA, ALPHA]), ba, path(&[])).unwrap();
        let p = s.multiply(&x, &y);
        assert_eq!(p, s.element(path(&[ALPHA]), ba, path(&[])).unwrap());
        assert_eq!(p, s.space().multiply_reference(&x, &y));

        let x = s.element(path(&[ALPHA]), ba, path(&[GAMMA])).unwrap();
        let y = s.element(path(&[GAMMA]), bd, path(&[BETA])).unwrap();
        assert_eq!(
            s.multiply(&x, &y),
            s.element(path(&[ALPHA]), bd, path(&[BETA])).unwrap()
        );
        assert_eq!(s.multiply(&x, &LgisElement::Zero), LgisElement::Zero);
        assert_eq!(s.multiply(&LgisElement::Zero, &x), LgisElement::Zero);

        let x = s.element(path(&[]), bd, path(&[ALPHA])).unwrap();
        let y = s.element(path(&[BETA]), bd, path(&[])).unwrap();
        assert_eq!(s.multiply(&x, &y), LgisElement::Zero);
    }

    #[test]
    fn element_validation() {
        let g = example();
        let s = Lgis::from_graph(&g).unwrap();
        assert!(matches!(
            s.element(path(&[GAMMA]), down(&g, "abc"), path(&[ALPHA])),
            Err(LgisError::OutsideSource { .. })
        ));
        assert!(matches!(
            s.element(path(&[ALPHA, GAMMA]), down(&g, "b"), path(&[])),
            Err(LgisError::NotAPath(_))
        ));
        let lone = VertexSet::singleton(vid(&g, "ab").0);
        assert_eq!(
            s.element(path(&[]), lone, path(&[])),
            Err(LgisError::NotInFamily(lone.0))
        );
        assert_eq!(
            s.element(path(&[]), VertexSet::EMPTY, path(&[])).unwrap(),
            LgisElement::Zero
        );
    }

    #[test]
    fn inverses_and_order() {
        let g = example();
        let s = Lgis::from_graph(&g).unwrap();
        let x = s
            .element(path(&[ALPHA]), down(&g, "b"), path(&[GAMMA]))
            .unwrap();
        let xi = s.inverse(&x);
        assert_eq!(
            xi,
            s.element(path(&[GAMMA]), down(&g, "b"), path(&[ALPHA]))
                .unwrap()
        );
        assert_eq!(s.multiply(&s.multiply(&x, &xi), &x), x);
        assert_eq!(s.inverse(&LgisElement::Zero), LgisElement::Zero);
        let e = s
            .element(path(&[BETA]), down(&g, "b"), path(&[BETA]))
            .unwrap();
        assert_eq!(s.inverse(&e), e);
        assert!(e.is_idempotent());

        let y = s.element(path(&[]), down(&g, "abc"), path(&[])).unwrap();
        let below = s
            .element(path(&[GAMMA]), down(&g, "abc"), path(&[GAMMA]))
            .unwrap();
        assert!(s.leq(&below, &y));
        assert!(s.leq_algebraic(&below, &y));
        assert!(s.leq(&x, &x));
        assert!(s.leq(&LgisElement::Zero, &x));
        assert!(!s.leq(&y, &below));
    }

    #[test]
    fn green_relations() {
        let g = example();
        let s = Lgis::from_graph(&g).unwrap();
        let bd = down(&g, "b");
        let x = s.element(path(&[ALPHA]), bd, path(&[BETA])).unwrap();
        let y = s.element(path(&[ALPHA]), bd, path(&[GAMMA])).unwrap();
        let z = s.element(path(&[GAMMA]), bd, path(&[BETA])).unwrap();
        let all = s.enumerate_elements(1);
        assert!(s.green_check(&x, &y, Green::R, &all));
        assert!(s.green_check(&x, &z, Green::L, &all));
        assert!(!s.green_check(&y, &z, Green::R, &all));
        assert!(s.green_check(&y, &z, Green::D, &all));
        let w = s.d_witness(&y, &z, &all).unwrap();
        assert_eq!(*w, s.element(path(&[ALPHA]), bd, path(&[BETA])).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let s = Lgis::from_graph(&graph(&[&[1]])).unwrap();
        assert_eq!(s.enumerate_elements(0).len(), 2);
        assert_eq!(s.enumerate_elements(1).len(), 5);

        let s = Lgis::from_graph(&example()).unwrap();
        let zero = s.enumerate_elements(0);
        assert_eq!(zero.len(), 5);
        let one = s.enumerate_elements(1);
        assert!(zero.iter().all(|x| one.contains(x)));
        assert_eq!(one, s.enumerate_elements(1));
    }

    #[test]
    fn resolving_predicates() {
        assert_eq!(
            GraphSpace::from_graph(&example())
                .unwrap()
                .check_resolving(),
            (true, true)
        );
        let loop_space = GraphSpace::new(
            1,
            1,
            vec![SpaceEdge {
                label: LabelId(0),
                source: 0,
                range: 0,
            }],
            [VertexSet::EMPTY, VertexSet(1)],
        )
        .unwrap();
        assert_eq!(loop_space.check_resolving(), (true, true));

        let split = GraphSpace::new(
            2,
            1,
            vec![
                SpaceEdge {
                    label: LabelId(0),
                    source: 0,
                    range: 0,
                },
                SpaceEdge {
                    label: LabelId(0),
                    source: 0,
                    range: 1,
                },
            ],
            [VertexSet::EMPTY, VertexSet(1), VertexSet(2), VertexSet(3)],
        )
        .unwrap();
        assert!(!split.check_resolving().1);
        assert!(matches!(
            Lgis::new(split),
            Err(LgisError::NotStronglyResolving(0))
        ));
    }

    #[test]
    fn family_validation() {
        let e = vec![];
        assert_eq!(
            GraphSpace::new(2, 0, e.clone(), [VertexSet(1)]).unwrap_err(),
            LgisError::FamilyWithoutEmpty
        );
        assert_eq!(
            GraphSpace::new(
                2,
                0,
                e.clone(),
                [VertexSet::EMPTY, VertexSet(3), VertexSet(6)]
            )
            .unwrap_err(),
            LgisError::SetOutOfRange(6)
        );
        assert!(matches!(
            GraphSpace::new(3, 0, e, [VertexSet::EMPTY, VertexSet(3), VertexSet(6)]),
            Err(LgisError::FamilyNotIntersectionClosed(..))
        ));
        assert_eq!(
            GraphSpace::new(65, 0, vec![], []).unwrap_err(),
            LgisError::TooManyVertices(65)
        );
    }
}
