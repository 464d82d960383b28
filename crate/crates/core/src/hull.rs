//! Idempotents of the inverse hull of a Markov shift in canonical form.
//!
//! Every nonzero idempotent of the hull is the identity on a set of words of
//! the form `w·t` where `t` is a nonempty allowed word whose first letter lies
//! in a follower vector `v`. The pair `(w, v)` is the canonical form used
//! throughout the crate; products and the natural order are computed on it
//! directly. The [`oracle`] submodule rebuilds the same idempotents from
//! truncated partial bijections and is used to cross-check this module.

pub mod oracle;

use std::fmt;

use thiserror::Error;

use crate::shift::{FollowerVector, Letter, ShiftError, TransitionMatrix, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error("vector {0} is not an intersection of rows")]
    NotAnFClass(String),
    #[error("word {0} is not allowed")]
    WordNotAllowed(String),
    #[error("vector {vector} is not contained in the follower set of the last letter of {word}")]
    OutsideFollower { word: String, vector: String },
    #[error("idempotents over alphabets of size {0} and {1} cannot be combined")]
    AlphabetMismatch(usize, usize),
    #[error("oracle depth {got} is too small, at least {needed} is required")]
    DepthTooSmall { needed: usize, got: usize },
}

/// Nonzero idempotent `θ_w e_v θ_w⁻¹` of the hull.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HullIdempotent {
    word: Word,
    vector: FollowerVector,
}

impl HullIdempotent {
    /// The F-class idempotent `(ε, v)`; no validation.
    pub fn base(vector: FollowerVector) -> Self {
        Self {
            word: Word::empty(),
            vector,
        }
    }

    /// Skips every invariant check. Meant for negative controls in tests.
    pub fn from_parts_unchecked(word: Word, vector: FollowerVector) -> Self {
        Self { word, vector }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn vector(&self) -> &FollowerVector {
        &self.vector
    }

    pub fn depth(&self) -> usize {
        self.word.len()
    }

    /// Word-length-zero idempotents are exactly the F-class representatives.
    pub fn is_base(&self) -> bool {
        self.word.is_empty()
    }

    /// The follower vector indexing the D-class of this idempotent.
    pub fn dclass_rep(&self) -> FollowerVector {
        self.vector
    }

    /// Canonical form of the intersection of the two domains.
    pub fn product(&self, other: &Self) -> Option<Self> {
        let (short, long) = if self.word.len() <= other.word.len() {
            (self, other)
        } else {
            (other, self)
        };
        if !short.word.is_prefix_of(&long.word) {
            return None;
        }
        if short.word.len() == long.word.len() {
            return short.vector.meet(&long.vector).map(|vector| Self {
                word: short.word.clone(),
                vector,
            });
        }
        let next = long.word.letters()[short.word.len()];
        short.vector.contains(next).then(|| long.clone())
    }

    /// Natural partial order: `self ≤ other` iff `self·other = self`.
    pub fn leq(&self, other: &Self) -> bool {
        self.product(other).as_ref() == Some(self)
    }

    /// `true` when the domain contains `word`.
    pub fn domain_contains(&self, word: &Word) -> bool {
        word.len() > self.word.len()
            && self.word.is_prefix_of(word)
            && self.vector.contains(word.letters()[self.word.len()])
    }

    pub fn display<'a>(&'a self, matrix: &'a TransitionMatrix) -> impl fmt::Display + 'a {
        DisplayIdem { idem: self, matrix }
    }
}

struct DisplayIdem<'a> {
    idem: &'a HullIdempotent,
    matrix: &'a TransitionMatrix,
}

impl fmt::Display for DisplayIdem<'_> {
    /// `(w, {v})`, with `ε` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.idem.word.is_empty() {
            "ε".to_string()
        } else {
            self.matrix.format_word(&self.idem.word)
        };
        write!(
            f,
            "({}, {})",
            w,
            self.matrix.format_vector(&self.idem.vector)
        )
    }
}

/// An idempotent of the hull or zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZeroOrIdem {
    Zero,
    Idem(HullIdempotent),
}

impl ZeroOrIdem {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroOrIdem::Zero)
    }

    pub fn as_idem(&self) -> Option<&HullIdempotent> {
        match self {
            ZeroOrIdem::Zero => None,
            ZeroOrIdem::Idem(e) => Some(e),
        }
    }

    fn alphabet_len(&self) -> Option<usize> {
        self.as_idem().map(|e| e.vector.len())
    }
}

impl From<Option<HullIdempotent>> for ZeroOrIdem {
    fn from(e: Option<HullIdempotent>) -> Self {
        e.map_or(ZeroOrIdem::Zero, ZeroOrIdem::Idem)
    }
}

impl From<HullIdempotent> for ZeroOrIdem {
    fn from(e: HullIdempotent) -> Self {
        ZeroOrIdem::Idem(e)
    }
}

/// Product of two hull idempotents; zero absorbs.
pub fn idem_product(e1: &ZeroOrIdem, e2: &ZeroOrIdem) -> Result<ZeroOrIdem, HullError> {
    if let (Some(n1), Some(n2)) = (e1.alphabet_len(), e2.alphabet_len()) {
        if n1 != n2 {
            return Err(HullError::AlphabetMismatch(n1, n2));
        }
    }
    Ok(match (e1, e2) {
        (ZeroOrIdem::Idem(a), ZeroOrIdem::Idem(b)) => a.product(b).into(),
        _ => ZeroOrIdem::Zero,
    })
}

/// `e1 ≤ e2` in the natural partial order.
pub fn idem_leq(e1: &HullIdempotent, e2: &HullIdempotent) -> bool {
    e1.leq(e2)
}

/// A transition matrix together with its F-classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull {
    matrix: TransitionMatrix,
    classes: Vec<FollowerVector>,
}

impl Hull {
    pub fn new(matrix: TransitionMatrix) -> Self {
        let classes = matrix.f_classes();
        Self { matrix, classes }
    }

    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }

    /// Sorted F-classes; one per nonzero D-class.
    pub fn classes(&self) -> &[FollowerVector] {
        &self.classes
    }

    pub fn class_index(&self, v: &FollowerVector) -> Option<usize> {
        self.classes.binary_search(v).ok()
    }

    pub fn is_f_class(&self, v: &FollowerVector) -> bool {
        self.class_index(v).is_some()
    }

    /// Validated constructor for canonical idempotents.
    pub fn idempotent(
        &self,
        word: Word,
        vector: FollowerVector,
    ) -> Result<HullIdempotent, HullError> {
        if !self.matrix.word_allowed(&word)? {
            return Err(HullError::WordNotAllowed(self.matrix.format_word(&word)));
        }
        if vector.len() != self.matrix.size() {
            return Err(HullError::AlphabetMismatch(
                vector.len(),
                self.matrix.size(),
            ));
        }
        if !self.is_f_class(&vector) {
            return Err(HullError::NotAnFClass(self.matrix.format_vector(&vector)));
        }
        if let Some(last) = word.last() {
            if !vector.is_subset(&self.matrix.rows()[last.index()]) {
                return Err(HullError::OutsideFollower {
                    word: self.matrix.format_word(&word),
                    vector: self.matrix.format_vector(&vector),
                });
            }
        }
        Ok(HullIdempotent { word, vector })
    }

    /// `θ_b θ_b⁻¹`, the identity on words `b·t` with `t` nonempty.
    pub fn letter_idempotent(&self, b: Letter) -> HullIdempotent {
        HullIdempotent {
            word: Word(vec![b]),
            vector: self.matrix.rows()[b.index()],
        }
    }

    /// All nonzero idempotents immediately below `(ε, v)`.
    pub fn covers_below(&self, v: &FollowerVector) -> Result<Vec<HullIdempotent>, HullError> {
        if !self.is_f_class(v) {
            return Err(HullError::NotAnFClass(self.matrix.format_vector(v)));
        }
        Ok(self.covers_of(&HullIdempotent::base(*v)))
    }

    /// All nonzero idempotents immediately below `e`.
    ///
    /// Anything strictly below `(w, v)` is either `(w, u)` with `u ⊊ v` or
    /// lies below `(w·b, row(b))` for some `b ∈ v`, so the covers are the
    /// maximal elements among those candidates.
    pub fn covers_of(&self, e: &HullIdempotent) -> Vec<HullIdempotent> {
        let v = &e.vector;
        let mut candidates: Vec<HullIdempotent> = self
            .classes
            .iter()
            .filter(|u| *u != v && u.is_subset(v))
            .map(|u| HullIdempotent {
                word: e.word.clone(),
                vector: *u,
            })
            .collect();
        candidates.extend(v.letters().map(|b| {
            let mut word = e.word.clone();
            word.0.push(b);
            HullIdempotent {
                word,
                vector: self.matrix.rows()[b.index()],
            }
        }));
        candidates
            .iter()
            .filter(|c| !candidates.iter().any(|d| d != *c && c.leq(d)))
            .cloned()
            .collect()
    }

    /// Idempotents `g` with `lower < g < upper`. Their words sit between the
    /// two words in the prefix order, so the search is finite.
    pub fn strictly_between(
        &self,
        lower: &HullIdempotent,
        upper: &HullIdempotent,
    ) -> Vec<HullIdempotent> {
        if !(lower.leq(upper) && lower != upper) {
            return Vec::new();
        }
        let mut out = Vec::new();
        for len in upper.word.len()..=lower.word.len() {
            let word = Word(lower.word.letters()[..len].to_vec());
            for v in &self.classes {
                let fits = word
                    .last()
                    .is_none_or(|l| v.is_subset(&self.matrix.rows()[l.index()]));
                if !fits {
                    continue;
                }
                let g = HullIdempotent {
                    word: word.clone(),
                    vector: *v,
                };
                if g != *lower && g != *upper && lower.leq(&g) && g.leq(upper) {
                    out.push(g);
                }
            }
        }
        out
    }

    /// Every canonical idempotent whose word has length at most `max_depth`,
    /// ordered by word and then vector.
    pub fn idempotents_up_to(&self, max_depth: usize) -> Vec<HullIdempotent> {
        let mut out = Vec::new();
        let mut layer = vec![Word::empty()];
        for depth in 0..=max_depth {
            for w in &layer {
                for v in &self.classes {
                    let ok = w
                        .last()
                        .is_none_or(|l| v.is_subset(&self.matrix.rows()[l.index()]));
                    if ok {
                        out.push(HullIdempotent {
                            word: w.clone(),
                            vector: *v,
                        });
                    }
                }
            }
            if depth == max_depth {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|w| {
                    self.matrix
                        .alphabet()
                        .letters()
                        .filter(move |&b| w.last().is_none_or(|l| self.matrix.allows(l, b)))
                        .map(move |b| {
                            let mut next = w.clone();
                            next.0.push(b);
                            next
                        })
                })
                .collect();
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Hull {
        Hull::new(TransitionMatrix::parse("a b c\n110\n011\n111").unwrap())
    }

    fn v(h: &Hull, s: &str) -> FollowerVector {
        let t = h.matrix();
        FollowerVector::from_letters(
            s.chars()
                .map(|c| t.alphabet().letter(&c.to_string()).unwrap()),
            t.size(),
        )
    }

    fn idem(h: &Hull, w: &str, s: &str) -> HullIdempotent {
        h.idempotent(h.matrix().parse_word(w).unwrap(), v(h, s))
            .unwrap()
    }

    #[test]
    fn product_examples() {
        let h = example();
        let e1 = ZeroOrIdem::from(idem(&h, "", "ab"));
        let e2 = ZeroOrIdem::from(idem(&h, "", "bc"));
        assert_eq!(idem_product(&e1, &e2).unwrap(), idem(&h, "", "b").into());

        let a = ZeroOrIdem::from(idem(&h, "a", "ab"));
        let b = ZeroOrIdem::from(idem(&h, "b", "bc"));
        assert_eq!(idem_product(&a, &b).unwrap(), ZeroOrIdem::Zero);

        assert_eq!(idem_product(&e1, &a).unwrap(), a);
        assert_eq!(
            idem_product(&a, &ZeroOrIdem::Zero).unwrap(),
            ZeroOrIdem::Zero
        );
    }

    #[test]
    fn product_rejects_mismatched_alphabets() {
        let h = example();
        let other = Hull::new(TransitionMatrix::parse("a\n1").unwrap());
        let e1 = ZeroOrIdem::from(idem(&h, "", "ab"));
        let e2 = ZeroOrIdem::from(HullIdempotent::base(other.classes()[0]));
        assert_eq!(
            idem_product(&e1, &e2),
            Err(HullError::AlphabetMismatch(3, 1))
        );
    }

    #[test]
    fn deeper_extension_needs_next_letter() {
        let h = example();
        // c ∉ {a,b}: the cylinder of "ca" misses the domain of (ε,{a,b})
        let ca = idem(&h, "ca", "ab");
        assert_eq!(HullIdempotent::base(v(&h, "ab")).product(&ca), None);
        assert_eq!(
            HullIdempotent::base(v(&h, "bc")).product(&ca),
            Some(ca.clone())
        );
    }

    #[test]
    fn leq_examples() {
        let h = example();
        assert!(idem_leq(&idem(&h, "a", "ab"), &idem(&h, "", "ab")));
        assert!(!idem_leq(&idem(&h, "", "ab"), &idem(&h, "", "bc")));
        let e = idem(&h, "b", "b");
        assert!(idem_leq(&e, &e));
    }

    #[test]
    fn cover_examples() {
        let h = example();
        let set = |xs: Vec<HullIdempotent>| {
            let mut xs = xs;
            xs.sort();
            xs
        };
        assert_eq!(
            set(h.covers_below(&v(&h, "abc")).unwrap()),
            set(vec![idem(&h, "", "ab"), idem(&h, "", "bc")])
        );
        assert_eq!(
            set(h.covers_below(&v(&h, "ab")).unwrap()),
            set(vec![idem(&h, "", "b"), idem(&h, "a", "ab")])
        );
        assert_eq!(
            h.covers_below(&v(&h, "b")).unwrap(),
            vec![idem(&h, "b", "bc")]
        );
        assert_eq!(
            set(h.covers_below(&v(&h, "bc")).unwrap()),
            set(vec![idem(&h, "", "b"), idem(&h, "c", "abc")])
        );
        assert!(matches!(
            h.covers_below(&v(&h, "a")),
            Err(HullError::NotAnFClass(_))
        ));
    }

    #[test]
    fn dclass_rep_examples() {
        let h = example();
        assert_eq!(idem(&h, "a", "ab").dclass_rep(), v(&h, "ab"));
        assert_eq!(idem(&h, "", "b").dclass_rep(), v(&h, "b"));
        assert_eq!(idem(&h, "b", "bc").dclass_rep(), v(&h, "bc"));
    }

    #[test]
    fn constructor_validates() {
        let h = example();
        let t = h.matrix();
        assert!(matches!(
            h.idempotent(t.parse_word("ac").unwrap(), v(&h, "ab")),
            Err(HullError::WordNotAllowed(_))
        ));
        assert!(matches!(
            h.idempotent(Word::empty(), v(&h, "a")),
            Err(HullError::NotAnFClass(_))
        ));
        assert!(matches!(
            h.idempotent(t.parse_word("a").unwrap(), v(&h, "bc")),
            Err(HullError::OutsideFollower { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        let h = example();
        // depth 0: 4 classes; depth 1: a→{ab,b}, b→{bc,b}, c→all 4
        assert_eq!(h.idempotents_up_to(0).len(), 4);
        assert_eq!(h.idempotents_up_to(1).len(), 4 + 2 + 2 + 4);
    }

    #[test]
    fn semilattice_laws_at_depth_two() {
        let h = example();
        let all: Vec<ZeroOrIdem> = std::iter::once(ZeroOrIdem::Zero)
            .chain(h.idempotents_up_to(2).into_iter().map(ZeroOrIdem::from))
            .collect();
        let mul = |a: &ZeroOrIdem, b: &ZeroOrIdem| idem_product(a, b).unwrap();
        for x in &all {
            assert_eq!(&mul(x, x), x);
            for y in &all {
                assert_eq!(mul(x, y), mul(y, x));
                for z in &all {
                    assert_eq!(mul(&mul(x, y), z), mul(x, &mul(y, z)));
                }
            }
        }
    }
}
