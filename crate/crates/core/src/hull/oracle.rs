//! Brute-force model of the hull as partial bijections on allowed words.
//!
//! Words are truncated at a fixed depth `N`: the universe holds every
//! nonempty allowed word of length at most `N`, and a composite drops any
//! input whose image, or any intermediate image, would be longer than `N`.
//! Two maps are only compared when they were built over the same universe.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::hull::{HullError, HullIdempotent};
use crate::shift::{Letter, TransitionMatrix, Word};

/// Every nonempty allowed word of length `1..=depth`, in (length, lex) order.
#[derive(Debug)]
pub struct WordUniverse {
    depth: usize,
    words: Vec<Word>,
    index: HashMap<Word, u32>,
}

impl WordUniverse {
    pub fn new(matrix: &TransitionMatrix, depth: usize) -> Self {
        let mut words = Vec::new();
        let mut layer: Vec<Word> = matrix.alphabet().letters().map(|l| Word(vec![l])).collect();
        for len in 1..=depth {
            words.extend(layer.iter().cloned());
            if len == depth {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|w| {
                    let last = w.last().unwrap();
                    matrix.rows()[last.index()].letters().map(move |b| {
                        let mut next = w.clone();
                        next.0.push(b);
                        next
                    })
                })
                .collect();
        }
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        Self {
            depth,
            words,
            index,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn id(&self, word: &Word) -> Option<u32> {
        self.index.get(word).copied()
    }

    pub fn word(&self, id: u32) -> &Word {
        &self.words[id as usize]
    }
}

/// Finite partial injection on the words of a [`WordUniverse`].
#[derive(Debug, Clone)]
pub struct TruncatedPartialMap {
    universe: Arc<WordUniverse>,
    image: Vec<Option<u32>>,
}

impl PartialEq for TruncatedPartialMap {
    fn eq(&self, other: &Self) -> bool {
        assert!(
            Arc::ptr_eq(&self.universe, &other.universe),
            "truncated maps from different universes are not comparable"
        );
        self.image == other.image
    }
}

impl Eq for TruncatedPartialMap {}

impl TruncatedPartialMap {
    pub fn empty(universe: Arc<WordUniverse>) -> Self {
        let image = vec![None; universe.len()];
        Self { universe, image }
    }

    pub fn identity(universe: Arc<WordUniverse>) -> Self {
        let image = (0..universe.len() as u32).map(Some).collect();
        Self { universe, image }
    }

    /// Identity on the words accepted by `keep`.
    pub fn identity_on(universe: Arc<WordUniverse>, keep: impl Fn(&Word) -> bool) -> Self {
        let image = universe
            .words()
            .iter()
            .enumerate()
            .map(|(i, w)| keep(w).then_some(i as u32))
            .collect();
        Self { universe, image }
    }

    pub fn depth(&self) -> usize {
        self.universe.depth
    }

    pub fn universe(&self) -> &Arc<WordUniverse> {
        &self.universe
    }

    pub fn get(&self, word: &Word) -> Option<&Word> {
        let id = self.universe.id(word)?;
        self.image[id as usize].map(|j| self.universe.word(j))
    }

    /// Number of pairs in the graph.
    pub fn len(&self) -> usize {
        self.image.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.image.iter().all(Option::is_none)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Word, &Word)> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter_map(|(i, j)| j.map(|j| (self.universe.word(i as u32), self.universe.word(j))))
    }

    /// `self ∘ before`: apply `before` first.
    pub fn after(&self, before: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.universe, &before.universe));
        let image = before
            .image
            .iter()
            .map(|j| j.and_then(|j| self.image[j as usize]))
            .collect();
        Self {
            universe: self.universe.clone(),
            image,
        }
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![None; self.image.len()];
        for (i, j) in self.image.iter().enumerate() {
            if let Some(j) = j {
                debug_assert!(image[*j as usize].is_none(), "map is not injective");
                image[*j as usize] = Some(i as u32);
            }
        }
        Self {
            universe: self.universe.clone(),
            image,
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        self.image
            .iter()
            .flatten()
            .all(|&j| !std::mem::replace(&mut seen[j as usize], true))
    }

    pub fn is_partial_identity(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, j)| j.is_none_or(|j| j as usize == i))
    }

    /// Drops every pair whose input is longer than `max_len`.
    pub fn restrict(&self, max_len: usize) -> Self {
        let image = self
            .image
            .iter()
            .enumerate()
            .map(|(i, j)| {
                if self.universe.words[i].len() <= max_len {
                    *j
                } else {
                    None
                }
            })
            .collect();
        Self {
            universe: self.universe.clone(),
            image,
        }
    }

    /// Graph inclusion.
    pub fn is_restriction_of(&self, other: &Self) -> bool {
        assert!(Arc::ptr_eq(&self.universe, &other.universe));
        self.image
            .iter()
            .zip(&other.image)
            .all(|(a, b)| a.is_none() || a == b)
    }

    /// Sorted `input -> output` lines.
    pub fn dump(&self, matrix: &TransitionMatrix) -> String {
        let mut lines: Vec<String> = self
            .pairs()
            .map(|(a, b)| format!("{} -> {}", matrix.format_word(a), matrix.format_word(b)))
            .collect();
        lines.sort();
        let mut out = String::new();
        for l in lines {
            let _ = writeln!(out, "{l}");
        }
        out
    }
}

/// `θ_a` or `θ_a⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    pub letter: Letter,
    pub inverse: bool,
}

impl Generator {
    pub fn theta(letter: Letter) -> Self {
        Self {
            letter,
            inverse: false,
        }
    }

    pub fn theta_inv(letter: Letter) -> Self {
        Self {
            letter,
            inverse: true,
        }
    }
}

/// The prepend maps `θ_a` truncated at a fixed depth.
#[derive(Debug, Clone)]
pub struct Oracle {
    universe: Arc<WordUniverse>,
    theta: Vec<TruncatedPartialMap>,
    theta_inv: Vec<TruncatedPartialMap>,
}

impl Oracle {
    /// For each letter `a`, the map `w ↦ aw` on nonempty allowed `w` with
    /// `aw` allowed and `|aw| ≤ depth`.
    pub fn build(matrix: &TransitionMatrix, depth: usize) -> Result<Self, HullError> {
        if depth < 2 {
            return Err(HullError::DepthTooSmall {
                needed: 2,
                got: depth,
            });
        }
        let universe = Arc::new(WordUniverse::new(matrix, depth));
        let theta: Vec<TruncatedPartialMap> = matrix
            .alphabet()
            .letters()
            .map(|a| {
                let image = universe
                    .words()
                    .iter()
                    .map(|w| {
                        if !matrix.allows(a, w.first().unwrap()) {
                            return None;
                        }
                        let mut aw = Vec::with_capacity(w.len() + 1);
                        aw.push(a);
                        aw.extend_from_slice(w.letters());
                        universe.id(&Word(aw))
                    })
                    .collect();
                TruncatedPartialMap {
                    universe: universe.clone(),
                    image,
                }
            })
            .collect();
        let theta_inv = theta.iter().map(TruncatedPartialMap::inverse).collect();
        Ok(Self {
            universe,
            theta,
            theta_inv,
        })
    }

    pub fn depth(&self) -> usize {
        self.universe.depth
    }

    pub fn universe(&self) -> &Arc<WordUniverse> {
        &self.universe
    }

    pub fn theta(&self, letter: Letter) -> &TruncatedPartialMap {
        &self.theta[letter.index()]
    }

    pub fn generator(&self, g: Generator) -> &TruncatedPartialMap {
        if g.inverse {
            &self.theta_inv[g.letter.index()]
        } else {
            &self.theta[g.letter.index()]
        }
    }

    /// Composite of a written product of generators. As for functions, the
    /// rightmost factor is applied first.
    pub fn eval(&self, expr: &[Generator]) -> TruncatedPartialMap {
        expr.iter().rev().fold(
            TruncatedPartialMap::identity(self.universe.clone()),
            |acc, g| self.generator(*g).after(&acc),
        )
    }

    /// The partial identity the oracle produces for `e`.
    pub fn idempotent_map(
        &self,
        matrix: &TransitionMatrix,
        e: &HullIdempotent,
    ) -> TruncatedPartialMap {
        self.eval(&generator_word(matrix, e))
    }

    /// The identity on the canonical domain of `e`, cut to the inputs the
    /// canonical generator word can process without exceeding the depth:
    /// `|w·t| ≤ N` and `|t| + 1 ≤ N`.
    pub fn predicted_map(&self, e: &HullIdempotent) -> TruncatedPartialMap {
        let n = self.depth();
        let w_len = e.word().len();
        TruncatedPartialMap::identity_on(self.universe.clone(), |u| {
            e.domain_contains(u) && u.len() - w_len < n
        })
    }

    /// Checks the canonical form of `e` against the composed generators.
    pub fn matches(
        &self,
        matrix: &TransitionMatrix,
        e: &HullIdempotent,
    ) -> Result<bool, HullError> {
        let needed = e.word().len() + 2;
        if self.depth() < needed {
            return Err(HullError::DepthTooSmall {
                needed,
                got: self.depth(),
            });
        }
        Ok(self.idempotent_map(matrix, e) == self.predicted_map(e))
    }
}

/// `θ_w · ∏ θ_x⁻¹θ_x · θ_w⁻¹`, the product running over every letter `x`
/// whose row contains the vector of `e`.
pub fn generator_word(matrix: &TransitionMatrix, e: &HullIdempotent) -> Vec<Generator> {
    let w = e.word().letters();
    let mut expr: Vec<Generator> = w.iter().map(|&l| Generator::theta(l)).collect();
    for x in matrix.alphabet().letters() {
        if e.vector().is_subset(&matrix.rows()[x.index()]) {
            expr.push(Generator::theta_inv(x));
            expr.push(Generator::theta(x));
        }
    }
    expr.extend(w.iter().rev().map(|&l| Generator::theta_inv(l)));
    expr
}

/// Builds an oracle of depth `depth` and checks `e` against it.
pub fn oracle_matches(
    matrix: &TransitionMatrix,
    e: &HullIdempotent,
    depth: usize,
) -> Result<bool, HullError> {
    let needed = e.word().len() + 2;
    if depth < needed {
        return Err(HullError::DepthTooSmall { needed, got: depth });
    }
    Oracle::build(matrix, depth)?.matches(matrix, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::Hull;
    use crate::shift::FollowerVector;

    fn example() -> TransitionMatrix {
        TransitionMatrix::parse("a b c\n110\n011\n111").unwrap()
    }

    fn w(t: &TransitionMatrix, s: &str) -> Word {
        t.parse_word(s).unwrap()
    }

    #[test]
    fn theta_a_at_depth_two() {
        let t = example();
        let o = Oracle::build(&t, 2).unwrap();
        assert_eq!(o.theta(Letter(0)).dump(&t), "a -> aa\nb -> ab\n");
        assert_eq!(o.theta(Letter(1)).dump(&t), "b -> bb\nc -> bc\n");

        let id = TransitionMatrix::from_rows(&[&[1, 0], &[0, 1]]).unwrap();
        let o = Oracle::build(&id, 2).unwrap();
        assert_eq!(o.theta(Letter(0)).dump(&id), "a -> aa\n");
    }

    #[test]
    fn depth_below_two_is_rejected() {
        assert!(matches!(
            Oracle::build(&example(), 1),
            Err(HullError::DepthTooSmall { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn source_projection_of_a() {
        let t = example();
        let o = Oracle::build(&t, 3).unwrap();
        let a = Letter(0);
        let m = o.eval(&[Generator::theta_inv(a), Generator::theta(a)]);
        assert!(m.is_partial_identity());
        // θ_a pushes length-3 inputs past the depth, so only |u| ≤ 2 survive
        let expected = TruncatedPartialMap::identity_on(o.universe().clone(), |u| {
            u.len() <= 2 && (u.first() == Some(Letter(0)) || u.first() == Some(Letter(1)))
        });
        assert_eq!(m, expected);
    }

    #[test]
    fn theta_a_theta_b_inverse() {
        let t = example();
        let o = Oracle::build(&t, 3).unwrap();
        let m = o.eval(&[Generator::theta(Letter(0)), Generator::theta_inv(Letter(1))]);
        assert_eq!(m.dump(&t), "bb -> ab\nbbb -> abb\nbbc -> abc\n");
        for (x, y) in m.pairs() {
            assert_eq!(x.first(), Some(Letter(1)));
            assert_eq!(y.first(), Some(Letter(0)));
            assert_eq!(x.letters()[1..], y.letters()[1..]);
        }
    }

    #[test]
    fn letter_projections_are_orthogonal() {
        let t = example();
        let o = Oracle::build(&t, 4).unwrap();
        let (a, b) = (Letter(0), Letter(1));
        let m = o.eval(&[
            Generator::theta(a),
            Generator::theta_inv(a),
            Generator::theta(b),
            Generator::theta_inv(b),
        ]);
        assert!(m.is_empty());
    }

    #[test]
    fn matches_examples() {
        let t = example();
        let h = Hull::new(t.clone());
        let vb = FollowerVector::from_letters([Letter(1)], 3);
        let vab = FollowerVector::from_letters([Letter(0), Letter(1)], 3);
        let e = h.idempotent(Word::empty(), vb).unwrap();
        assert!(oracle_matches(&t, &e, 4).unwrap());
        let e = h.idempotent(w(&t, "a"), vab).unwrap();
        assert!(oracle_matches(&t, &e, 4).unwrap());

        let corrupted = HullIdempotent::from_parts_unchecked(
            Word::empty(),
            FollowerVector::from_letters([Letter(0)], 3),
        );
        assert!(!oracle_matches(&t, &corrupted, 4).unwrap());

        let deep = h
            .idempotent(
                w(&t, "ab"),
                FollowerVector::from_letters([Letter(1), Letter(2)], 3),
            )
            .unwrap();
        assert!(matches!(
            oracle_matches(&t, &deep, 3),
            Err(HullError::DepthTooSmall { needed: 4, got: 3 })
        ));
    }

    #[test]
    fn generators_are_injective() {
        let t = example();
        let o = Oracle::build(&t, 4).unwrap();
        for a in t.alphabet().letters() {
            assert!(o.theta(a).is_injective());
            assert_eq!(o.theta(a).inverse().inverse(), *o.theta(a));
        }
    }
}
