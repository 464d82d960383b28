//! Morita equivalence of two Markov hulls, decided by searching for an
//! isomorphism of their labelled graphs whose vertex map respects `⪯`.

use std::collections::BTreeMap;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{GraphError, LabelId, LabelledGraph};
use crate::order::DClassId;
use crate::shift::TransitionMatrix;
use crate::smorita::{build_cd, cd_isomorphic, SmoritaError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeciderError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Smorita(#[from] SmoritaError),
    #[error("graph search says {graph}, combinatorial data says {cd}")]
    CrossCheck { graph: bool, cd: bool },
    #[error("returned witness failed verification")]
    BadWitness,
}

/// Vertex, edge, and label bijections from the first graph to the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub vertices: Vec<DClassId>,
    /// Index into the second graph's edge list for each edge of the first.
    pub edges: Vec<usize>,
    pub labels: Vec<LabelId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub equivalent: bool,
    pub witness: Option<IsoWitness>,
    /// The first invariant that tells the graphs apart, on refusal.
    pub certificate: Option<String>,
    /// Whether the combinatorial data were compared as well.
    pub cross_checked: bool,
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n
        && map
            .iter()
            .all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

/// Checks all three bijections, the commuting conditions on every edge, and
/// that the vertex map is an order isomorphism.
pub fn verify_witness(g1: &LabelledGraph, g2: &LabelledGraph, w: &IsoWitness) -> bool {
    let n = g1.vertex_count();
    let v: Vec<usize> = w.vertices.iter().map(|d| d.0).collect();
    let l: Vec<usize> = w.labels.iter().map(|x| x.0).collect();
    if g2.vertex_count() != n
        || !is_bijection(&v, n)
        || !is_bijection(&w.edges, g2.edges().len())
        || w.edges.len() != g1.edges().len()
        || !is_bijection(&l, g2.labels().len())
        || l.len() != g1.labels().len()
    {
        return false;
    }
    let order_iso = g1.vertices().all(|a| {
        g1.vertices()
            .all(|b| g1.order().leq(a, b) == g2.order().leq(w.vertices[a.0], w.vertices[b.0]))
    });
    let edges_ok = g1.edges().iter().zip(&w.edges).all(|(e, &j)| {
        let f = &g2.edges()[j];
        f.source == w.vertices[e.source.0]
            && f.range == w.vertices[e.range.0]
            && f.label == w.labels[e.label.0]
    });
    order_iso && edges_ok
}

/// Per-vertex data preserved by any order-respecting isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct VertexProfile {
    down: usize,
    up: usize,
    /// Edge counts of the labels ranging here, sorted.
    in_by_label: Vec<usize>,
    out_degree: usize,
}

fn vertex_profiles(g: &LabelledGraph) -> Vec<VertexProfile> {
    let o = g.order();
    g.vertices()
        .map(|v| {
            let mut in_by_label: Vec<usize> = g
                .label_ids()
                .filter(|&l| g.label(l).range == v)
                .map(|l| g.label_sources(l).len())
                .collect();
            in_by_label.sort_unstable();
            VertexProfile {
                down: o.ids().filter(|&b| o.leq(b, v)).count(),
                up: o.ids().filter(|&b| o.leq(v, b)).count(),
                in_by_label,
                out_degree: g.edges().iter().filter(|e| e.source == v).count(),
            }
        })
        .collect()
}

fn sorted<T: Ord + Clone>(xs: &[T]) -> Vec<T> {
    let mut v = xs.to_vec();
    v.sort();
    v
}

/// The first cheap invariant on which the graphs differ.
fn distinguishing_profile(g1: &LabelledGraph, g2: &LabelledGraph) -> Option<String> {
    let counts = |g: &LabelledGraph| (g.vertex_count(), g.labels().len(), g.edges().len());
    let (c1, c2) = (counts(g1), counts(g2));
    if c1.0 != c2.0 {
        return Some(format!("vertices: {} vs {}", c1.0, c2.0));
    }
    if c1.1 != c2.1 {
        return Some(format!("labels: {} vs {}", c1.1, c2.1));
    }
    if c1.2 != c2.2 {
        return Some(format!("edges: {} vs {}", c1.2, c2.2));
    }
    let ranks = |g: &LabelledGraph| {
        sorted(
            &vertex_profiles(g)
                .iter()
                .map(|p| (p.down, p.up))
                .collect::<Vec<_>>(),
        )
    };
    let (r1, r2) = (ranks(g1), ranks(g2));
    if r1 != r2 {
        return Some(format!("order ranks (down, up): {r1:?} vs {r2:?}"));
    }
    let (p1, p2) = (sorted(&vertex_profiles(g1)), sorted(&vertex_profiles(g2)));
    if p1 != p2 {
        let fmt = |ps: &[VertexProfile]| {
            ps.iter()
                .map(|p| format!("({},{},{:?},{})", p.down, p.up, p.in_by_label, p.out_degree))
                .collect::<Vec<_>>()
                .join(" ")
        };
        return Some(format!(
            "vertex profiles (down, up, in-by-label, out): {} vs {}",
            fmt(&p1),
            fmt(&p2)
        ));
    }
    None
}

/// Completes a vertex bijection to labels and edges, if the labels can be
/// matched. Labels with the same range and source set carry identical edge
/// sets, so they are paired in id order.
fn complete(g1: &LabelledGraph, g2: &LabelledGraph, vertices: &[DClassId]) -> Option<IsoWitness> {
    let key = |g: &LabelledGraph, l: LabelId, map: &dyn Fn(DClassId) -> DClassId| {
        let mut sources: Vec<DClassId> = g.label_sources(l).into_iter().map(map).collect();
        sources.sort();
        (map(g.label(l).range), sources)
    };
    let mut pool: BTreeMap<(DClassId, Vec<DClassId>), Vec<LabelId>> = BTreeMap::new();
    let ids: Vec<LabelId> = g2.label_ids().collect();
    for &l in ids.iter().rev() {
        pool.entry(key(g2, l, &|d| d)).or_default().push(l);
    }
    let mut labels = Vec::with_capacity(g1.labels().len());
    for l in g1.label_ids() {
        labels.push(pool.get_mut(&key(g1, l, &|d| vertices[d.0]))?.pop()?);
    }
    let mut edges = Vec::with_capacity(g1.edges().len());
    for e in g1.edges() {
        let image = crate::graph::Edge {
            label: labels[e.label.0],
            source: vertices[e.source.0],
            range: vertices[e.range.0],
        };
        edges.push(g2.edges().binary_search(&image).ok()?);
    }
    Some(IsoWitness {
        vertices: vertices.to_vec(),
        edges,
        labels,
    })
}

/// Backtracking search over vertex bijections, pruned by vertex profiles and
/// by order compatibility with the vertices already placed. Candidates are
/// tried in id order, so the witness is deterministic.
pub fn graphs_isomorphic_ordered(g1: &LabelledGraph, g2: &LabelledGraph) -> Option<IsoWitness> {
    if distinguishing_profile(g1, g2).is_some() {
        return None;
    }
    let (p1, p2) = (vertex_profiles(g1), vertex_profiles(g2));
    let n = g1.vertex_count();
    let mut map: Vec<DClassId> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let w = search(g1, g2, &p1, &p2, &mut map, &mut used)?;
    debug_assert!(
        verify_witness(g1, g2, &w),
        "search produced an invalid witness"
    );
    Some(w)
}

fn search(
    g1: &LabelledGraph,
    g2: &LabelledGraph,
    p1: &[VertexProfile],
    p2: &[VertexProfile],
    map: &mut Vec<DClassId>,
    used: &mut [bool],
) -> Option<IsoWitness> {
    let a = map.len();
    if a == p1.len() {
        return complete(g1, g2, map);
    }
    let (o1, o2) = (g1.order(), g2.order());
    for b in 0..p2.len() {
        if used[b] || p1[a] != p2[b] {
            continue;
        }
        let fits = map.iter().enumerate().all(|(c, &d)| {
            o1.leq(DClassId(a), DClassId(c)) == o2.leq(DClassId(b), d)
                && o1.leq(DClassId(c), DClassId(a)) == o2.leq(d, DClassId(b))
        });
        if !fits {
            continue;
        }
        map.push(DClassId(b));
        used[b] = true;
        if let Some(w) = search(g1, g2, p1, p2, map, used) {
            return Some(w);
        }
        map.pop();
        used[b] = false;
    }
    None
}

/// Reference check: tries every vertex bijection with no pruning.
pub fn brute_force_isomorphic(g1: &LabelledGraph, g2: &LabelledGraph) -> bool {
    let n = g1.vertex_count();
    if n != g2.vertex_count()
        || g1.labels().len() != g2.labels().len()
        || g1.edges().len() != g2.edges().len()
    {
        return false;
    }
    (0..n).permutations(n).any(|perm| {
        let vertices: Vec<DClassId> = perm.into_iter().map(DClassId).collect();
        complete(g1, g2, &vertices).is_some_and(|w| verify_witness(g1, g2, &w))
    })
}

/// Decides from two prebuilt graphs; `cross_check` also compares the
/// combinatorial data and fails if the two answers differ.
pub fn decide_graphs(
    g1: &LabelledGraph,
    g2: &LabelledGraph,
    cross_check: bool,
) -> Result<Verdict, DeciderError> {
    let witness = graphs_isomorphic_ordered(g1, g2);
    if let Some(w) = &witness {
        if !verify_witness(g1, g2, w) {
            return Err(DeciderError::BadWitness);
        }
    }
    let equivalent = witness.is_some();
    if cross_check {
        let cd = cd_isomorphic(&build_cd(g1.order())?, &build_cd(g2.order())?).is_some();
        if cd != equivalent {
            return Err(DeciderError::CrossCheck {
                graph: equivalent,
                cd,
            });
        }
    }
    let certificate = if equivalent {
        None
    } else {
        Some(
            distinguishing_profile(g1, g2)
                .unwrap_or_else(|| "no order-preserving isomorphism exists".into()),
        )
    };
    Ok(Verdict {
        equivalent,
        witness,
        certificate,
        cross_checked: cross_check,
    })
}

pub fn decide_morita(
    t1: &TransitionMatrix,
    t2: &TransitionMatrix,
    cross_check: bool,
) -> Result<Verdict, DeciderError> {
    let g1 = LabelledGraph::from_matrix(t1.clone())?;
    let g2 = LabelledGraph::from_matrix(t2.clone())?;
    decide_graphs(&g1, &g2, cross_check)
}
