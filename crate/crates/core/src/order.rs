//! Cores of idempotents and the order they induce on D-classes.
//!
//! The core of an idempotent `e` is the least subset of `e`'s down-set that
//! contains `e` and is closed under three rules: nonzero products of members,
//! absorption of incomparable covers with a nonzero product, and filling the
//! interval between two comparable members. Two D-classes `a ⪯' b` when some
//! core contains representatives `f ≤ g` of them; `⪯` is the transitive
//! closure. For Markov hulls every base core consists of F-class
//! representatives, and `⪯` is a meet-semilattice order.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::hull::{Hull, HullError, HullIdempotent};
use crate::shift::FollowerVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error(transparent)]
    Hull(#[from] HullError),
    #[error("core of {core} contains {member}, which is not an F-class representative")]
    CoreLeavesFClasses { core: String, member: String },
    #[error("order is not antisymmetric: {0} and {1} are mutually below each other")]
    NotAntisymmetric(String, String),
    #[error("meet of {0} and {1} is not their greatest lower bound")]
    BadMeet(String, String),
}

/// Index of a nonzero D-class in [`Hull::classes`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DClassId(pub usize);

/// The three closure rules after the seed, in the order they are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreRule {
    Products,
    IncomparableCovers,
    Intervals,
}

pub const DEFAULT_RULE_ORDER: [CoreRule; 3] = [
    CoreRule::Products,
    CoreRule::IncomparableCovers,
    CoreRule::Intervals,
];

/// Core of an arbitrary idempotent, computed inside its down-set.
pub fn core_of_idempotent(
    hull: &Hull,
    e: &HullIdempotent,
    rules: [CoreRule; 3],
) -> BTreeSet<HullIdempotent> {
    let mut covers: BTreeMap<HullIdempotent, Vec<HullIdempotent>> = BTreeMap::new();
    let mut core: BTreeSet<HullIdempotent> = BTreeSet::from([e.clone()]);
    loop {
        let mut changed = false;
        for rule in rules {
            let members: Vec<HullIdempotent> = core.iter().cloned().collect();
            let mut fresh = Vec::new();
            match rule {
                CoreRule::Products => {
                    for (i, f) in members.iter().enumerate() {
                        for g in &members[i + 1..] {
                            if let Some(p) = f.product(g) {
                                fresh.push(p);
                            }
                        }
                    }
                }
                CoreRule::IncomparableCovers => {
                    for h in &members {
                        covers.entry(h.clone()).or_insert_with(|| hull.covers_of(h));
                    }
                    let below: Vec<&HullIdempotent> =
                        members.iter().flat_map(|h| covers[h].iter()).collect();
                    for (i, f) in below.iter().enumerate() {
                        for g in &below[i + 1..] {
                            if !f.leq(g) && !g.leq(f) && f.product(g).is_some() {
                                fresh.push((*f).clone());
                                fresh.push((*g).clone());
                            }
                        }
                    }
                }
                CoreRule::Intervals => {
                    for lo in &members {
                        for hi in &members {
                            fresh.extend(hull.strictly_between(lo, hi));
                        }
                    }
                }
            }
            for x in fresh {
                changed |= core.insert(x);
            }
        }
        if !changed {
            return core;
        }
    }
}

/// Core of the F-class idempotent `(ε, v)`, as follower vectors.
pub fn core_of(hull: &Hull, v: &FollowerVector) -> Result<BTreeSet<FollowerVector>, OrderError> {
    core_with_rules(hull, v, DEFAULT_RULE_ORDER)
}

pub fn core_with_rules(
    hull: &Hull,
    v: &FollowerVector,
    rules: [CoreRule; 3],
) -> Result<BTreeSet<FollowerVector>, OrderError> {
    if !hull.is_f_class(v) {
        return Err(HullError::NotAnFClass(hull.matrix().format_vector(v)).into());
    }
    let core = core_of_idempotent(hull, &HullIdempotent::base(*v), rules);
    core.into_iter()
        .map(|f| {
            if f.is_base() {
                Ok(*f.vector())
            } else {
                Err(OrderError::CoreLeavesFClasses {
                    core: hull.matrix().format_vector(v),
                    member: f.display(hull.matrix()).to_string(),
                })
            }
        })
        .collect()
}

/// Nonzero D-classes ordered by `⪯`, with meets.
#[derive(Debug, Clone)]
pub struct CoreOrder {
    hull: Hull,
    cores: Vec<BTreeSet<FollowerVector>>,
    leq: Vec<Vec<bool>>,
    meets: Vec<Vec<Option<DClassId>>>,
}

impl CoreOrder {
    #[allow(clippy::needless_range_loop)]
    pub fn build(hull: Hull) -> Result<Self, OrderError> {
        let classes = hull.classes().to_vec();
        let n = classes.len();
        let index =
            |v: &FollowerVector| DClassId(hull.class_index(v).expect("core member is an F-class"));

        let cores = classes
            .iter()
            .map(|v| core_of(&hull, v))
            .collect::<Result<Vec<_>, _>>()?;

        let mut leq = vec![vec![false; n]; n];
        for core in &cores {
            for f in core {
                for g in core {
                    if f.is_subset(g) {
                        leq[index(f).0][index(g).0] = true;
                    }
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }

        let name = |i: usize| hull.matrix().format_vector(&classes[i]);
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(OrderError::NotAntisymmetric(name(i), name(j)));
                }
            }
        }

        let mut meets = vec![vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                let has_lower = (0..n).any(|c| leq[c][a] && leq[c][b]);
                if !has_lower {
                    continue;
                }
                let m = classes[a]
                    .meet(&classes[b])
                    .and_then(|v| hull.class_index(&v))
                    .ok_or_else(|| OrderError::BadMeet(name(a), name(b)))?;
                let glb = leq[m][a]
                    && leq[m][b]
                    && (0..n).all(|c| !(leq[c][a] && leq[c][b]) || leq[c][m]);
                if !glb {
                    return Err(OrderError::BadMeet(name(a), name(b)));
                }
                meets[a][b] = Some(DClassId(m));
            }
        }

        Ok(Self {
            hull,
            cores,
            leq,
            meets,
        })
    }

    pub fn hull(&self) -> &Hull {
        &self.hull
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = DClassId> {
        (0..self.len()).map(DClassId)
    }

    pub fn vector(&self, a: DClassId) -> &FollowerVector {
        &self.hull.classes()[a.0]
    }

    pub fn id_of(&self, v: &FollowerVector) -> Option<DClassId> {
        self.hull.class_index(v).map(DClassId)
    }

    pub fn core(&self, a: DClassId) -> &BTreeSet<FollowerVector> {
        &self.cores[a.0]
    }

    /// `a ⪯ b`.
    pub fn leq(&self, a: DClassId, b: DClassId) -> bool {
        self.leq[a.0][b.0]
    }

    /// `None` is the zero class.
    pub fn meet(&self, a: DClassId, b: DClassId) -> Option<DClassId> {
        self.meets[a.0][b.0]
    }

    /// Meet with the zero class absorbing.
    pub fn meet_opt(&self, a: Option<DClassId>, b: Option<DClassId>) -> Option<DClassId> {
        self.meet(a?, b?)
    }

    /// Every class `⪯ a`, in id order.
    pub fn down_set(&self, a: DClassId) -> Vec<DClassId> {
        self.ids().filter(|&b| self.leq(b, a)).collect()
    }

    /// Covering pairs `(a, b)` with `a ≺ b` and nothing in between.
    pub fn hasse(&self) -> Vec<(DClassId, DClassId)> {
        let mut out = Vec::new();
        for a in self.ids() {
            for b in self.ids() {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = self
                    .ids()
                    .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn name(&self, a: DClassId) -> String {
        self.hull.matrix().format_vector(self.vector(a))
    }
}

/// Convenience: hull plus order for a matrix.
pub fn build_order(hull: &Hull) -> Result<CoreOrder, OrderError> {
    CoreOrder::build(hull.clone())
}

/// Checks that class representatives multiply like meets: `e_a e_b = e_{a∧b}`
/// whenever `a ∧ b ≠ 0`, and whenever `a, b ⪯ c` for some `c`.
pub fn check_meet_products(order: &CoreOrder) -> bool {
    let product = |a: DClassId, b: DClassId| order.vector(a).meet(order.vector(b));
    let meet_vector = |a: DClassId, b: DClassId| order.meet(a, b).map(|m| *order.vector(m));
    for a in order.ids() {
        for b in order.ids() {
            if order.meet(a, b).is_some() && product(a, b) != meet_vector(a, b) {
                return false;
            }
            let bounded = order.ids().any(|c| order.leq(a, c) && order.leq(b, c));
            if bounded && product(a, b) != meet_vector(a, b) {
                return false;
            }
        }
    }
    true
}
