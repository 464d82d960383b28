//! Idempotents of the semigroup `S^⪯` built from the McAlister function
//! `p_{u,v} = e_{u∧v}`, and the combinatorial data `CD = C ∪ C^≪` inside it.
//!
//! An idempotent of `S^⪯` is a class `[u, g, u]` with `g ≤ e_u` in the hull.
//! Two triples with the same nonzero middle coincide when their classes
//! meet; each such class of triples has a least index `u`, which is the
//! stored representative. Middles are limited to hull words of length at
//! most one, which covers every element of `CD`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::hull::{HullIdempotent, ZeroOrIdem};
use crate::order::{CoreOrder, DClassId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmoritaError {
    #[error("unknown class index {0}")]
    UnknownClass(usize),
    #[error("middle {middle} is not below the representative of {class}")]
    NotBelow { class: String, middle: String },
    #[error("middle {0} has a word longer than one letter")]
    DeepMiddle(String),
    #[error("no least index for middle {0}")]
    NoLeastIndex(String),
}

/// `[u, g, u]`, or zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SIdem {
    Zero,
    Idem { u: DClassId, g: HullIdempotent },
}

impl SIdem {
    /// Validates `g ≤ e_u` and puts the triple in canonical form.
    pub fn new(order: &CoreOrder, u: DClassId, g: ZeroOrIdem) -> Result<Self, SmoritaError> {
        let raw = Self::unnormalized(order, u, g)?;
        normalize(order, &raw)
    }

    /// Validated but keeps `u` as given.
    pub fn unnormalized(
        order: &CoreOrder,
        u: DClassId,
        g: ZeroOrIdem,
    ) -> Result<Self, SmoritaError> {
        if u.0 >= order.len() {
            return Err(SmoritaError::UnknownClass(u.0));
        }
        let ZeroOrIdem::Idem(g) = g else {
            return Ok(SIdem::Zero);
        };
        let m = order.hull().matrix();
        if g.depth() > 1 {
            return Err(SmoritaError::DeepMiddle(g.display(m).to_string()));
        }
        if !g.leq(&rep(order, u)) {
            return Err(SmoritaError::NotBelow {
                class: order.name(u),
                middle: g.display(m).to_string(),
            });
        }
        Ok(SIdem::Idem { u, g })
    }

    /// `[a, e_a, a]`.
    pub fn class_rep(order: &CoreOrder, a: DClassId) -> Self {
        SIdem::Idem {
            u: a,
            g: rep(order, a),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SIdem::Zero)
    }

    pub fn index(&self) -> Option<DClassId> {
        match self {
            SIdem::Zero => None,
            SIdem::Idem { u, .. } => Some(*u),
        }
    }

    pub fn middle(&self) -> Option<&HullIdempotent> {
        match self {
            SIdem::Zero => None,
            SIdem::Idem { g, .. } => Some(g),
        }
    }

    pub fn display<'a>(&'a self, order: &'a CoreOrder) -> impl fmt::Display + 'a {
        Shown { x: self, order }
    }
}

struct Shown<'a> {
    x: &'a SIdem,
    order: &'a CoreOrder,
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.x {
            SIdem::Zero => f.write_str("0"),
            SIdem::Idem { u, g } => {
                let name = self.order.name(*u);
                write!(
                    f,
                    "[{name}, {}, {name}]",
                    g.display(self.order.hull().matrix())
                )
            }
        }
    }
}

fn rep(order: &CoreOrder, a: DClassId) -> HullIdempotent {
    HullIdempotent::base(*order.vector(a))
}

/// Replaces `u` by the least index giving the same element.
pub fn normalize(order: &CoreOrder, x: &SIdem) -> Result<SIdem, SmoritaError> {
    let SIdem::Idem { u, g } = x else {
        return Ok(SIdem::Zero);
    };
    let mut least = *u;
    for w in order.ids() {
        if g.leq(&rep(order, w)) && order.meet(*u, w).is_some() {
            least = order.meet(least, w).ok_or_else(|| {
                SmoritaError::NoLeastIndex(g.display(order.hull().matrix()).to_string())
            })?;
        }
    }
    if !g.leq(&rep(order, least)) {
        return Err(SmoritaError::NoLeastIndex(
            g.display(order.hull().matrix()).to_string(),
        ));
    }
    Ok(SIdem::Idem {
        u: least,
        g: g.clone(),
    })
}

/// Same middle, and either both zero or the indices meet.
pub fn sidem_equal(order: &CoreOrder, x: &SIdem, y: &SIdem) -> bool {
    match (x, y) {
        (SIdem::Zero, SIdem::Zero) => true,
        (SIdem::Idem { u, g }, SIdem::Idem { u: w, g: h }) => {
            g == h && order.meet(*u, *w).is_some()
        }
        _ => false,
    }
}

/// Zero is below everything; otherwise the middles are ordered and the
/// indices meet.
pub fn sidem_leq(order: &CoreOrder, x: &SIdem, y: &SIdem) -> bool {
    match (x, y) {
        (SIdem::Zero, _) => true,
        (_, SIdem::Zero) => false,
        (SIdem::Idem { u, g }, SIdem::Idem { u: w, g: h }) => {
            g.leq(h) && order.meet(*u, *w).is_some()
        }
    }
}

/// `[u, g, u][v, h, v] = [u, g e_{u∧v} h, v]`, which equals the triple
/// indexed by `u ∧ v`.
pub fn sidem_product(order: &CoreOrder, x: &SIdem, y: &SIdem) -> Result<SIdem, SmoritaError> {
    let (SIdem::Idem { u, g }, SIdem::Idem { u: v, g: h }) = (x, y) else {
        return Ok(SIdem::Zero);
    };
    let Some(m) = order.meet(*u, *v) else {
        return Ok(SIdem::Zero);
    };
    let k = g.product(&rep(order, m)).and_then(|gm| gm.product(h));
    SIdem::new(order, m, k.into())
}

/// The D-class of a nonzero element, read off its middle.
pub fn sidem_dclass(order: &CoreOrder, x: &SIdem) -> Option<DClassId> {
    x.middle().and_then(|g| order.id_of(&g.dclass_rep()))
}

/// Every idempotent of `S^⪯` whose middle has a word of length at most
/// one, canonical and sorted, zero first.
pub fn enumerate_sidems(order: &CoreOrder) -> Vec<SIdem> {
    let mut out = std::collections::BTreeSet::from([SIdem::Zero]);
    let middles = order.hull().idempotents_up_to(1);
    for u in order.ids() {
        for g in &middles {
            if g.leq(&rep(order, u)) {
                out.insert(SIdem::new(order, u, g.clone().into()).expect("middle is below e_u"));
            }
        }
    }
    out.into_iter().collect()
}

/// Covers of `[v, e_v, v]` among idempotents of `S^⪯`.
fn covers_in_smorita(order: &CoreOrder, v: DClassId) -> Vec<SIdem> {
    order
        .hull()
        .covers_below(order.vector(v))
        .expect("class representative is an F-class")
        .into_iter()
        .map(|f| SIdem::new(order, v, f.into()).expect("cover is below e_v"))
        .collect()
}

/// `C` and `C^≪` inside `S^⪯`, with the product table on `{0} ∪ C ∪ C^≪`.
#[derive(Debug, Clone)]
pub struct CdSet {
    order: CoreOrder,
    /// Zero, then `C` in class order, then `C^≪` sorted.
    elements: Vec<SIdem>,
    index: BTreeMap<SIdem, usize>,
    /// `None` when the product leaves the set.
    table: Vec<Vec<Option<usize>>>,
}

impl CdSet {
    pub fn build(order: CoreOrder) -> Result<Self, SmoritaError> {
        let mut elements = vec![SIdem::Zero];
        elements.extend(order.ids().map(|a| SIdem::class_rep(&order, a)));
        let mut cll = std::collections::BTreeSet::new();
        for b in order.ids() {
            for f in order.hull().covers_below(order.vector(b)).expect("F-class") {
                let class = order.id_of(&f.dclass_rep());
                let guarded = f.is_base() && class.is_some_and(|c| order.leq(c, b));
                if !guarded {
                    cll.insert(SIdem::new(&order, b, f.into())?);
                }
            }
        }
        elements.extend(cll);
        let index: BTreeMap<SIdem, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect();
        let mut table = Vec::with_capacity(elements.len());
        for x in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for y in &elements {
                let p = sidem_product(&order, x, y)?;
                row.push(index.get(&p).copied());
            }
            table.push(row);
        }
        Ok(Self {
            order,
            elements,
            index,
            table,
        })
    }

    pub fn order(&self) -> &CoreOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SIdem] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &SIdem {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &SIdem) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Indices of `C` without zero.
    pub fn c_indices(&self) -> std::ops::Range<usize> {
        1..1 + self.order.len()
    }

    pub fn cll_indices(&self) -> std::ops::Range<usize> {
        1 + self.order.len()..self.elements.len()
    }

    pub fn c_members(&self) -> &[SIdem] {
        &self.elements[self.c_indices()]
    }

    pub fn cll_members(&self) -> &[SIdem] {
        &self.elements[self.cll_indices()]
    }

    /// Index of `[a, e_a, a]`.
    pub fn c_index(&self, a: DClassId) -> usize {
        1 + a.0
    }

    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.table[i][j]
    }

    pub fn is_closed(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// `x ≤ y` read from the table.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.table[i][j] == Some(i)
    }

    pub fn dclass(&self, i: usize) -> Option<DClassId> {
        sidem_dclass(&self.order, &self.elements[i])
    }

    /// Nonzero and minimal among the nonzero elements.
    pub fn is_primitive(&self, i: usize) -> bool {
        i != 0 && (1..self.len()).all(|j| j == i || !self.leq(j, i))
    }

    pub fn primitive_indices(&self) -> Vec<usize> {
        (1..self.len()).filter(|&i| self.is_primitive(i)).collect()
    }

    pub fn name(&self, i: usize) -> String {
        self.elements[i].display(&self.order).to_string()
    }

    /// The product rules on `CD`: `C` multiplies like meets, a member
    /// `[a, f, a]` of `C^≪` survives multiplication by `[b, e_b, b]` exactly
    /// when `a ⪯ b`, and distinct members of `C^≪` multiply to zero.
    pub fn check_case_rules(&self) -> bool {
        let o = &self.order;
        for a in o.ids() {
            for b in o.ids() {
                let expected = o.meet(a, b).map(|m| self.c_index(m)).unwrap_or(0);
                if self.product(self.c_index(a), self.c_index(b)) != Some(expected) {
                    return false;
                }
            }
        }
        for x in self.cll_indices() {
            let a = self.elements[x].index().expect("nonzero");
            for b in o.ids() {
                let expected = if o.leq(a, b) { x } else { 0 };
                let c = self.c_index(b);
                if self.product(x, c) != Some(expected) || self.product(c, x) != Some(expected) {
                    return false;
                }
            }
            for y in self.cll_indices() {
                let expected = if x == y { x } else { 0 };
                if self.product(x, y) != Some(expected) {
                    return false;
                }
            }
        }
        true
    }
}

pub fn build_cd(order: &CoreOrder) -> Result<CdSet, SmoritaError> {
    CdSet::build(order.clone())
}

/// Which condition of coherence failed first, if any.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoherenceFailure {
    #[error("not a transversal: {0}")]
    NotATransversal(String),
    #[error("product of {0} and {1} leaves the set")]
    NotClosed(String, String),
    #[error("{middle} lies between {lower} and {upper} but is missing")]
    Interval {
        lower: String,
        middle: String,
        upper: String,
    },
    #[error("product of incomparable covers {0} and {1} is missing")]
    IncomparableCovers(String, String),
}

/// Checks that `C` is a coherent set of `S^⪯`: one member per D-class,
/// closed under products, closed under intervals (over idempotents with
/// middles of word length at most one), and containing the products of
/// incomparable covers of its members.
pub fn coherent_check(order: &CoreOrder) -> Result<(), CoherenceFailure> {
    let members: Vec<SIdem> = std::iter::once(SIdem::Zero)
        .chain(order.ids().map(|a| SIdem::class_rep(order, a)))
        .collect();
    let in_c = |x: &SIdem| members.contains(x);
    let name = |x: &SIdem| x.display(order).to_string();
    let product = |x: &SIdem, y: &SIdem| {
        sidem_product(order, x, y).expect("products of valid idempotents normalize")
    };

    let mut classes: Vec<Option<DClassId>> =
        members.iter().map(|x| sidem_dclass(order, x)).collect();
    classes.sort();
    classes.dedup();
    if classes.len() != members.len() {
        return Err(CoherenceFailure::NotATransversal(
            "two members share a D-class".into(),
        ));
    }

    for x in &members {
        for y in &members {
            if !in_c(&product(x, y)) {
                return Err(CoherenceFailure::NotClosed(name(x), name(y)));
            }
        }
    }

    let all = enumerate_sidems(order);
    for lower in members.iter().filter(|x| !x.is_zero()) {
        for upper in &members {
            if !sidem_leq(order, lower, upper) {
                continue;
            }
            for f in &all {
                if sidem_leq(order, lower, f) && sidem_leq(order, f, upper) && !in_c(f) {
                    return Err(CoherenceFailure::Interval {
                        lower: name(lower),
                        middle: name(f),
                        upper: name(upper),
                    });
                }
            }
        }
    }

    for v in order.ids() {
        let covers = covers_in_smorita(order, v);
        for (i, f) in covers.iter().enumerate() {
            for g in &covers[i + 1..] {
                let comparable = sidem_leq(order, f, g) || sidem_leq(order, g, f);
                if !comparable && !in_c(&product(f, g)) {
                    return Err(CoherenceFailure::IncomparableCovers(name(f), name(g)));
                }
            }
        }
    }
    Ok(())
}

/// A D-class preserving isomorphism between two combinatorial data sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdWitness {
    /// Image of each class.
    pub classes: Vec<DClassId>,
    /// Image of each element index of the first set.
    pub elements: Vec<usize>,
}

/// Verifies that `w` is a bijection that preserves products and the
/// D-relation.
pub fn verify_cd_witness(cd1: &CdSet, cd2: &CdSet, w: &CdWitness) -> bool {
    let n = cd1.len();
    if cd2.len() != n || w.elements.len() != n || w.classes.len() != cd1.order.len() {
        return false;
    }
    let mut seen = vec![false; n];
    for &j in &w.elements {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return false;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let (Some(p1), Some(p2)) =
                (cd1.product(i, j), cd2.product(w.elements[i], w.elements[j]))
            else {
                return false;
            };
            if w.elements[p1] != p2 {
                return false;
            }
            let d1 = cd1.dclass(i) == cd1.dclass(j);
            let d2 = cd2.dclass(w.elements[i]) == cd2.dclass(w.elements[j]);
            if d1 != d2 {
                return false;
            }
        }
    }
    cd1.order
        .ids()
        .all(|a| w.elements[cd1.c_index(a)] == cd2.c_index(w.classes[a.0]))
}

/// Counts per class: members of `C^≪` below `[a, e_a, a]`, members whose
/// least index is `a`, and members in the D-class of `a`.
fn class_profile(cd: &CdSet) -> Vec<(usize, usize, usize, usize, usize)> {
    let o = &cd.order;
    o.ids()
        .map(|a| {
            let c = cd.c_index(a);
            let below = cd.cll_indices().filter(|&x| cd.leq(x, c)).count();
            let anchored = cd
                .cll_indices()
                .filter(|&x| cd.element(x).index() == Some(a))
                .count();
            let same_d = cd
                .cll_indices()
                .filter(|&x| cd.dclass(x) == Some(a))
                .count();
            let down = o.ids().filter(|&b| o.leq(b, a)).count();
            let up = o.ids().filter(|&b| o.leq(a, b)).count();
            (below, anchored, same_d, down, up)
        })
        .collect()
}

/// Searches for a D-class preserving isomorphism. Classes are matched by
/// backtracking under order and count constraints; members of `C^≪` are
/// then paired by their image signature, and the result is re-verified.
pub fn cd_isomorphic(cd1: &CdSet, cd2: &CdSet) -> Option<CdWitness> {
    let (o1, o2) = (&cd1.order, &cd2.order);
    let n = o1.len();
    if n != o2.len() || cd1.len() != cd2.len() || !cd1.is_closed() || !cd2.is_closed() {
        return None;
    }
    let (p1, p2) = (class_profile(cd1), class_profile(cd2));
    let mut m1 = p1.clone();
    let mut m2 = p2.clone();
    m1.sort();
    m2.sort();
    if m1 != m2 {
        return None;
    }

    let mut sigma: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    find_class_map(cd1, cd2, &p1, &p2, 0, &mut sigma, &mut used)
}

fn find_class_map(
    cd1: &CdSet,
    cd2: &CdSet,
    p1: &[(usize, usize, usize, usize, usize)],
    p2: &[(usize, usize, usize, usize, usize)],
    a: usize,
    sigma: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> Option<CdWitness> {
    let (o1, o2) = (&cd1.order, &cd2.order);
    let n = o1.len();
    if a == n {
        let classes: Vec<DClassId> = sigma
            .iter()
            .map(|s| DClassId(s.expect("complete")))
            .collect();
        return pair_cll(cd1, cd2, &classes);
    }
    for b in 0..n {
        if used[b] || p1[a] != p2[b] {
            continue;
        }
        let consistent = (0..a).all(|c| {
            let d = sigma[c].expect("assigned");
            o1.leq(DClassId(a), DClassId(c)) == o2.leq(DClassId(b), DClassId(d))
                && o1.leq(DClassId(c), DClassId(a)) == o2.leq(DClassId(d), DClassId(b))
        });
        if !consistent {
            continue;
        }
        sigma[a] = Some(b);
        used[b] = true;
        if let Some(w) = find_class_map(cd1, cd2, p1, p2, a + 1, sigma, used) {
            return Some(w);
        }
        sigma[a] = None;
        used[b] = false;
    }
    None
}

fn pair_cll(cd1: &CdSet, cd2: &CdSet, classes: &[DClassId]) -> Option<CdWitness> {
    let n = cd1.len();
    let mut elements = vec![usize::MAX; n];
    elements[0] = 0;
    for a in cd1.order.ids() {
        elements[cd1.c_index(a)] = cd2.c_index(classes[a.0]);
    }
    // a member of C^≪ is determined up to symmetry by the members of C
    // above it and by its D-class
    let signature1 = |x: usize| -> (Vec<usize>, Option<DClassId>) {
        let above = cd1
            .order
            .ids()
            .filter(|&b| cd1.leq(x, cd1.c_index(b)))
            .map(|b| classes[b.0].0)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        (above, cd1.dclass(x).map(|d| classes[d.0]))
    };
    let signature2 = |y: usize| -> (Vec<usize>, Option<DClassId>) {
        let above = cd2
            .order
            .ids()
            .filter(|&b| cd2.leq(y, cd2.c_index(b)))
            .map(|b| b.0)
            .collect();
        (above, cd2.dclass(y))
    };
    let mut pool: BTreeMap<(Vec<usize>, Option<DClassId>), Vec<usize>> = BTreeMap::new();
    for y in cd2.cll_indices() {
        pool.entry(signature2(y)).or_default().push(y);
    }
    for bucket in pool.values_mut() {
        bucket.reverse();
    }
    for x in cd1.cll_indices() {
        let y = pool.get_mut(&signature1(x))?.pop()?;
        elements[x] = y;
    }
    let w = CdWitness {
        classes: classes.to_vec(),
        elements,
    };
    verify_cd_witness(cd1, cd2, &w).then_some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::Hull;
    use crate::shift::{FollowerVector, Letter, TransitionMatrix, Word};

    fn order(rows: &[&[u8]]) -> CoreOrder {
        CoreOrder::build(Hull::new(TransitionMatrix::from_rows(rows).unwrap())).unwrap()
    }

    fn example() -> CoreOrder {
        order(&[&[1, 1, 0], &[0, 1, 1], &[1, 1, 1]])
    }

    fn id(o: &CoreOrder, s: &str) -> DClassId {
        o.id_of(&vector(o, s)).unwrap()
    }

    fn vector(o: &CoreOrder, s: &str) -> FollowerVector {
        FollowerVector::from_letters(
            s.bytes().map(|c| Letter(c - b'a')),
            o.hull().matrix().size(),
        )
    }

    fn letter_idem(o: &CoreOrder, c: u8) -> HullIdempotent {
        o.hull().letter_idempotent(Letter(c - b'a'))
    }

    #[test]
    fn equality() {
        let o = example();
        let (a, b, d) = (id(&o, "ab"), id(&o, "bc"), id(&o, "b"));
        let ed = rep(&o, d);
        let x = SIdem::unnormalized(&o, a, ed.clone().into()).unwrap();
        let y = SIdem::unnormalized(&o, b, ed.clone().into()).unwrap();
        assert!(sidem_equal(&o, &x, &y));
        assert_eq!(normalize(&o, &x).unwrap(), normalize(&o, &y).unwrap());
        assert_eq!(normalize(&o, &x).unwrap(), SIdem::class_rep(&o, d));
        assert!(!sidem_equal(
            &o,
            &SIdem::class_rep(&o, a),
            &SIdem::class_rep(&o, b)
        ));
        assert!(sidem_equal(
            &o,
            &SIdem::Zero,
            &SIdem::new(&o, a, ZeroOrIdem::Zero).unwrap()
        ));
    }

    #[test]
    fn validation() {
        let o = example();
        let (a, d) = (id(&o, "ab"), id(&o, "b"));
        assert!(matches!(
            SIdem::new(&o, d, rep(&o, a).into()),
            Err(SmoritaError::NotBelow { .. })
        ));
        let deep = o
            .hull()
            .idempotent(Word(vec![Letter(0), Letter(0)]), vector(&o, "ab"))
            .unwrap();
        assert!(matches!(
            SIdem::new(&o, id(&o, "abc"), deep.into()),
            Err(SmoritaError::DeepMiddle(_))
        ));
        assert_eq!(
            SIdem::new(&o, DClassId(9), ZeroOrIdem::Zero),
            Err(SmoritaError::UnknownClass(9))
        );
    }

    #[test]
    fn order_and_products() {
        let o = example();
        let (a, b, c, d) = (id(&o, "ab"), id(&o, "bc"), id(&o, "abc"), id(&o, "b"));
        let (ca, cb, cd) = (
            SIdem::class_rep(&o, a),
            SIdem::class_rep(&o, b),
            SIdem::class_rep(&o, d),
        );
        let f = SIdem::new(&o, a, letter_idem(&o, b'a').into()).unwrap();
        assert!(sidem_leq(&o, &f, &ca));
        assert!(sidem_leq(&o, &cd, &ca));
        assert!(!sidem_leq(&o, &ca, &cb));
        assert!(sidem_leq(&o, &SIdem::Zero, &f));
        assert_eq!(sidem_product(&o, &ca, &cb).unwrap(), cd);
        assert_eq!(
            sidem_product(&o, &ca, &SIdem::class_rep(&o, c)).unwrap(),
            ca
        );
        assert_eq!(sidem_product(&o, &ca, &SIdem::Zero).unwrap(), SIdem::Zero);
        let g = SIdem::new(&o, d, letter_idem(&o, b'b').into()).unwrap();
        assert_eq!(sidem_product(&o, &f, &g).unwrap(), SIdem::Zero);
        assert_eq!(sidem_product(&o, &f, &f).unwrap(), f);
    }

    #[test]
    fn example_cd() {
        let o = example();
        let cd = build_cd(&o).unwrap();
        assert_eq!(cd.c_members().len(), 4);
        let mut names: Vec<String> = cd.cll_indices().map(|i| cd.name(i)).collect();
        names.sort();
        assert_eq!(
            names,
            vec![
                "[{a,b}, (a, {a,b}), {a,b}]",
                "[{b,c}, (c, {a,b,c}), {b,c}]",
                "[{b}, (b, {b,c}), {b}]"
            ]
        );
        assert!(cd.is_closed());
        assert!(cd.check_case_rules());
        assert_eq!(cd.primitive_indices(), cd.cll_indices().collect::<Vec<_>>());
        assert_eq!(coherent_check(&o), Ok(()));
    }

    #[test]
    fn one_letter_cd() {
        let o = order(&[&[1]]);
        let cd = build_cd(&o).unwrap();
        assert_eq!((cd.c_members().len(), cd.cll_members().len()), (1, 1));
        assert_eq!(coherent_check(&o), Ok(()));
    }

    #[test]
    fn isomorphisms() {
        let cd = build_cd(&example()).unwrap();
        let w = cd_isomorphic(&cd, &cd).unwrap();
        assert_eq!(w.elements, (0..cd.len()).collect::<Vec<_>>());

        let t = TransitionMatrix::from_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 1, 1]]).unwrap();
        let permuted = t.permuted(&[2, 0, 1]);
        let cd2 = build_cd(&CoreOrder::build(Hull::new(permuted)).unwrap()).unwrap();
        let w = cd_isomorphic(&cd, &cd2).unwrap();
        assert!(verify_cd_witness(&cd, &cd2, &w));

        let full2 = build_cd(&order(&[&[1, 1], &[1, 1]])).unwrap();
        let full3 = build_cd(&order(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]])).unwrap();
        assert_eq!(
            (full2.cll_members().len(), full3.cll_members().len()),
            (2, 3)
        );
        assert!(cd_isomorphic(&full2, &full3).is_none());
    }

    #[test]
    fn enumeration_is_canonical() {
        let o = example();
        let all = enumerate_sidems(&o);
        for (i, x) in all.iter().enumerate() {
            assert_eq!(normalize(&o, x).unwrap(), *x);
            for y in &all[i + 1..] {
                assert!(!sidem_equal(&o, x, y));
            }
        }
    }
}
