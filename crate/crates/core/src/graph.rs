//! The labelled graph of the inverse hull.
//!
//! Vertices are the nonzero D-classes. For a vertex `a` and a cover `f` of
//! its representative `e_a`, the label `(a, f)` is used unless `f` is itself
//! a class representative whose class is `⪯ a`. A used label carries one edge
//! into `a` from every vertex `b ⪯ [f]`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::hull::{Hull, HullIdempotent};
use crate::order::{CoreOrder, DClassId, OrderError};
use crate::shift::TransitionMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("cover {cover} of {vertex} does not lie in a nonzero D-class")]
    CoverWithoutClass { vertex: String, cover: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(pub usize);

/// The pair `(a, f)`: range vertex and the cover of `e_a` it comes from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub range: DClassId,
    pub cover: HullIdempotent,
    /// `[f]`, the D-class of the cover.
    pub class: DClassId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub label: LabelId,
    pub source: DClassId,
    pub range: DClassId,
}

#[derive(Debug, Clone)]
pub struct LabelledGraph {
    order: CoreOrder,
    labels: Vec<Label>,
    edges: Vec<Edge>,
}

impl LabelledGraph {
    pub fn build(hull: Hull) -> Result<Self, GraphError> {
        Self::from_order(CoreOrder::build(hull)?)
    }

    pub fn from_matrix(matrix: TransitionMatrix) -> Result<Self, GraphError> {
        Self::build(Hull::new(matrix))
    }

    pub fn from_order(order: CoreOrder) -> Result<Self, GraphError> {
        let hull = order.hull();
        let mut labels = Vec::new();
        for a in order.ids() {
            let covers = hull
                .covers_below(order.vector(a))
                .map_err(OrderError::from)?;
            for f in covers {
                let class =
                    order
                        .id_of(f.vector())
                        .ok_or_else(|| GraphError::CoverWithoutClass {
                            vertex: order.name(a),
                            cover: f.display(hull.matrix()).to_string(),
                        })?;
                if f.is_base() {
                    // F-type cover: it is its own class representative
                    if order.leq(class, a) {
                        continue;
                    }
                } else {
                    // O-type cover: never a representative, always kept
                    assert_ne!(f, HullIdempotent::base(*order.vector(class)));
                }
                labels.push(Label {
                    range: a,
                    cover: f,
                    class,
                });
            }
        }
        labels.sort();
        let mut edges = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            for b in order.down_set(l.class) {
                edges.push(Edge {
                    label: LabelId(i),
                    source: b,
                    range: l.range,
                });
            }
        }
        edges.sort();
        Ok(Self {
            order,
            labels,
            edges,
        })
    }

    pub fn order(&self) -> &CoreOrder {
        &self.order
    }

    pub fn matrix(&self) -> &TransitionMatrix {
        self.order.hull().matrix()
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = DClassId> {
        self.order.ids()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, id: LabelId) -> &Label {
        &self.labels[id.0]
    }

    pub fn label_ids(&self) -> impl Iterator<Item = LabelId> {
        (0..self.labels.len()).map(LabelId)
    }

    /// Sorted by label, then source.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Every vertex `⪯ v`.
    pub fn b_set(&self, v: DClassId) -> Result<Vec<DClassId>, GraphError> {
        if v.0 >= self.vertex_count() {
            return Err(GraphError::UnknownVertex(v.0));
        }
        Ok(self.order.down_set(v))
    }

    /// Sources of the edges carrying `label`.
    pub fn label_sources(&self, label: LabelId) -> Vec<DClassId> {
        self.edges
            .iter()
            .filter(|e| e.label == label)
            .map(|e| e.source)
            .collect()
    }

    /// Equal labels force equal ranges.
    pub fn is_strongly_right_resolving(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.range == self.labels[e.label.0].range)
    }

    pub fn vertex_name(&self, v: DClassId) -> String {
        self.order.name(v)
    }

    /// Greek letters in label order, then `ℓ24`, `ℓ25`, ...
    pub fn label_name(&self, id: LabelId) -> String {
        const GREEK: [&str; 24] = [
            "α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ", "λ", "μ", "ν", "ξ", "ο", "π", "ρ",
            "σ", "τ", "υ", "φ", "χ", "ψ", "ω",
        ];
        GREEK
            .get(id.0)
            .map_or_else(|| format!("ℓ{}", id.0), |s| s.to_string())
    }

    /// `bb^-1` for `θ_b θ_b⁻¹`, `e{u}` for a class representative, `(w, {v})`
    /// otherwise.
    pub fn cover_name(&self, cover: &HullIdempotent) -> String {
        let t = self.matrix();
        if cover.is_base() {
            return format!("e{}", t.format_vector(cover.vector()));
        }
        if cover.depth() == 1 {
            let b = cover.word().letters()[0];
            if *cover.vector() == t.rows()[b.index()] {
                let s = t.alphabet().symbol(b);
                return format!("{s}{s}^-1");
            }
        }
        cover.display(t).to_string()
    }

    /// `(range, cover)` rendering of a label.
    pub fn label_text(&self, id: LabelId) -> String {
        let l = self.label(id);
        format!(
            "({}, {})",
            self.vertex_name(l.range),
            self.cover_name(&l.cover)
        )
    }
}

/// Builds the labelled graph of the hull of `matrix`.
pub fn build_graph(matrix: &TransitionMatrix) -> Result<LabelledGraph, GraphError> {
    LabelledGraph::from_matrix(matrix.clone())
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Deterministic DOT text: vertices in id order, edges by (label, source),
/// drawn from source to range.
pub fn to_dot(g: &LabelledGraph) -> String {
    let mut out = String::from("digraph labelled_graph {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  \"{}\";", dot_escape(&g.vertex_name(v)));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{} {}\"];",
            dot_escape(&g.vertex_name(e.source)),
            dot_escape(&g.vertex_name(e.range)),
            g.label_name(e.label),
            dot_escape(&g.label_text(e.label)),
        );
    }
    out.push_str("}\n");
    out
}
