//! Enumeration of small transition matrices and the exhaustive checks run
//! over them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decider::{
    brute_force_isomorphic, decide_graphs, graphs_isomorphic_ordered, verify_witness,
};
use crate::graph::{build_graph, LabelledGraph};
use crate::hull::oracle::{Oracle, TruncatedPartialMap};
use crate::hull::{Hull, HullIdempotent};
use crate::lgis::axioms::{check_axioms, Associativity};
use crate::lgis::Lgis;
use crate::order::{check_meet_products, CoreOrder, DClassId};
use crate::shift::{Alphabet, FollowerVector, TransitionMatrix};
use crate::smorita::{build_cd, cd_isomorphic, coherent_check, CdSet};

/// Every valid matrix over the standard alphabet of exactly `size` letters,
/// in lexicographic order of the row masks.
pub fn matrices_of_size(size: usize) -> Vec<TransitionMatrix> {
    assert!(
        (1..=4).contains(&size),
        "exhaustive enumeration is limited to 4 letters"
    );
    let alphabet = Alphabet::standard(size).expect("standard alphabet");
    let nonzero_rows: Vec<u64> = (1..1u64 << size).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; size];
    loop {
        let rows = choice
            .iter()
            .map(|&c| FollowerVector::from_bits(nonzero_rows[c], size))
            .collect();
        out.push(TransitionMatrix::new(alphabet.clone(), rows).expect("rows are nonzero"));
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < nonzero_rows.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Every valid matrix with 1 to `max_size` letters.
pub fn all_matrices(max_size: usize) -> Vec<TransitionMatrix> {
    (1..=max_size).flat_map(matrices_of_size).collect()
}

/// Result of one exhaustive check over many matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOutcome {
    pub name: &'static str,
    pub cases: usize,
    /// One line per failing case, capped at [`MAX_REPORTED`].
    pub failures: Vec<String>,
    pub failed: usize,
}

pub const MAX_REPORTED: usize = 10;

impl SweepOutcome {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

fn one_line(t: &TransitionMatrix) -> String {
    t.to_text().trim_end().replace('\n', " / ")
}

/// Canonical forms against truncated partial bijections, for every
/// idempotent with a word of length at most two: the generator word
/// reproduces the predicted map, distinct forms give distinct maps, and
/// products, the order, and covers of class representatives agree with
/// composition and inclusion of maps.
pub fn oracle_sweep(matrices: &[TransitionMatrix], depth: usize) -> SweepOutcome {
    let mut out = SweepOutcome::new("oracle");
    for t in matrices {
        let failure = oracle_case(t, depth).err();
        out.record(failure.is_none(), || {
            format!("{}: {}", one_line(t), failure.unwrap_or_default())
        });
    }
    out
}

fn oracle_case(t: &TransitionMatrix, depth: usize) -> Result<(), String> {
    let hull = Hull::new(t.clone());
    let oracle = Oracle::build(t, depth).map_err(|e| e.to_string())?;
    let idems = hull.idempotents_up_to(2);
    let exact = depth - 2;
    let mut maps = Vec::with_capacity(idems.len());
    for e in &idems {
        if !oracle.matches(t, e).map_err(|x| x.to_string())? {
            return Err(format!("generator word of {} disagrees", e.display(t)));
        }
        maps.push(oracle.idempotent_map(t, e).restrict(exact));
    }
    let show = |i: usize| idems[i].display(t).to_string();
    for i in 0..idems.len() {
        for j in 0..idems.len() {
            if i != j && maps[i] == maps[j] {
                return Err(format!("{} and {} give the same map", show(i), show(j)));
            }
            let composed = maps[i].after(&maps[j]);
            let expected = match idems[i].product(&idems[j]) {
                Some(p) => oracle.idempotent_map(t, &p).restrict(exact),
                None => TruncatedPartialMap::empty(oracle.universe().clone()),
            };
            if composed != expected {
                return Err(format!("product of {} and {}", show(i), show(j)));
            }
            if idems[i].leq(&idems[j]) != maps[i].is_restriction_of(&maps[j]) {
                return Err(format!("order between {} and {}", show(i), show(j)));
            }
        }
    }
    let strictly_below = |i: usize, j: usize| i != j && maps[i].is_restriction_of(&maps[j]);
    for v in hull.classes() {
        let top = idems
            .iter()
            .position(|e| *e == HullIdempotent::base(*v))
            .expect("class representatives have the empty word");
        let mut from_maps: Vec<&HullIdempotent> = (0..idems.len())
            .filter(|&f| strictly_below(f, top))
            .filter(|&f| !(0..idems.len()).any(|g| strictly_below(f, g) && strictly_below(g, top)))
            .map(|f| &idems[f])
            .collect();
        from_maps.sort();
        let mut covers = hull.covers_below(v).map_err(|e| e.to_string())?;
        covers.sort();
        if covers.iter().collect::<Vec<_>>() != from_maps {
            return Err(format!("covers of {}", t.format_vector(v)));
        }
    }
    Ok(())
}

/// `⪯` is a partial order, meets are commutative, associative, idempotent
/// greatest lower bounds, and representatives multiply like meets.
pub fn order_sweep(matrices: &[TransitionMatrix]) -> SweepOutcome {
    let mut out = SweepOutcome::new("order");
    for t in matrices {
        let failure = order_case(t).err();
        out.record(failure.is_none(), || {
            format!("{}: {}", one_line(t), failure.unwrap_or_default())
        });
    }
    out
}

fn order_case(t: &TransitionMatrix) -> Result<(), String> {
    let o = CoreOrder::build(Hull::new(t.clone())).map_err(|e| e.to_string())?;
    let ids: Vec<DClassId> = o.ids().collect();
    for &a in &ids {
        if !o.leq(a, a) {
            return Err(format!("{} is not below itself", o.name(a)));
        }
        if o.meet(a, a) != Some(a) {
            return Err(format!("meet of {} with itself", o.name(a)));
        }
        for &b in &ids {
            if a != b && o.leq(a, b) && o.leq(b, a) {
                return Err(format!(
                    "{} and {} are mutually below",
                    o.name(a),
                    o.name(b)
                ));
            }
            if o.meet(a, b) != o.meet(b, a) {
                return Err(format!(
                    "meet of {} and {} is not commutative",
                    o.name(a),
                    o.name(b)
                ));
            }
            let lower: Vec<DClassId> = ids
                .iter()
                .copied()
                .filter(|&c| o.leq(c, a) && o.leq(c, b))
                .collect();
            match o.meet(a, b) {
                None if !lower.is_empty() => {
                    return Err(format!("{} and {} lack a meet", o.name(a), o.name(b)))
                }
                Some(m) if !lower.iter().all(|&c| o.leq(c, m)) || !lower.contains(&m) => {
                    return Err(format!(
                        "meet of {} and {} is not the greatest lower bound",
                        o.name(a),
                        o.name(b)
                    ))
                }
                _ => {}
            }
            for &c in &ids {
                if o.leq(a, b) && o.leq(b, c) && !o.leq(a, c) {
                    return Err(format!("not transitive at {}", o.name(b)));
                }
                let left = o.meet_opt(o.meet(a, b), Some(c));
                let right = o.meet_opt(Some(a), o.meet(b, c));
                if left != right {
                    return Err("meet is not associative".into());
                }
            }
        }
    }
    if !check_meet_products(&o) {
        return Err("representatives do not multiply like meets".into());
    }
    Ok(())
}

/// The inverse semigroup axioms and structure properties on every element
/// with paths of length at most `maxlen`, associativity checked on all
/// triples.
pub fn lgis_sweep(matrices: &[TransitionMatrix], maxlen: usize) -> SweepOutcome {
    let mut out = SweepOutcome::new("lgis");
    for t in matrices {
        let failure = lgis_case(t, maxlen).err();
        out.record(failure.is_none(), || {
            format!("{}: {}", one_line(t), failure.unwrap_or_default())
        });
    }
    out
}

fn lgis_case(t: &TransitionMatrix, maxlen: usize) -> Result<(), String> {
    let g = build_graph(t).map_err(|e| e.to_string())?;
    let s = Lgis::from_graph(&g).map_err(|e| e.to_string())?;
    let report = check_axioms(&s, maxlen, Associativity::Exhaustive);
    let first = report
        .failures()
        .next()
        .map(|c| format!("{}: {}", c.name, c.detail.clone().unwrap_or_default()));
    first.map_or(Ok(()), Err)
}

/// Coherence of `C`, closure and case rules of the `CD` product table, and
/// primitivity of exactly the members of `C^≪`, which also match the graph
/// labels one to one.
pub fn cd_sweep(matrices: &[TransitionMatrix]) -> SweepOutcome {
    let mut out = SweepOutcome::new("cd");
    for t in matrices {
        let failure = cd_case(t).err();
        out.record(failure.is_none(), || {
            format!("{}: {}", one_line(t), failure.unwrap_or_default())
        });
    }
    out
}

fn cd_case(t: &TransitionMatrix) -> Result<(), String> {
    let g = build_graph(t).map_err(|e| e.to_string())?;
    coherent_check(g.order()).map_err(|e| format!("{e:?}"))?;
    let cd = build_cd(g.order()).map_err(|e| e.to_string())?;
    if !cd.is_closed() {
        return Err("CD is not closed under products".into());
    }
    if !cd.check_case_rules() {
        return Err("CD products break the case rules".into());
    }
    if cd.primitive_indices() != cd.cll_indices().collect::<Vec<_>>() {
        return Err("primitive idempotents differ from the guarded covers".into());
    }
    if cd.cll_members().len() != g.labels().len() {
        return Err(format!(
            "{} guarded covers for {} labels",
            cd.cll_members().len(),
            g.labels().len()
        ));
    }
    Ok(())
}

/// Over all unordered pairs (including a matrix with itself): the
/// backtracking search agrees with trying every bijection and with the
/// comparison of combinatorial data.
pub fn decision_sweep(matrices: &[TransitionMatrix]) -> SweepOutcome {
    let mut out = SweepOutcome::new("decision");
    let graphs: Vec<LabelledGraph> = matrices
        .iter()
        .map(|t| build_graph(t).expect("valid matrix"))
        .collect();
    let cds: Vec<CdSet> = graphs
        .iter()
        .map(|g| build_cd(g.order()).expect("valid order"))
        .collect();
    for i in 0..graphs.len() {
        for j in i..graphs.len() {
            let search = graphs_isomorphic_ordered(&graphs[i], &graphs[j]);
            let witness_ok = search
                .as_ref()
                .is_none_or(|w| verify_witness(&graphs[i], &graphs[j], w));
            let search = search.is_some();
            let brute = brute_force_isomorphic(&graphs[i], &graphs[j]);
            let cd = cd_isomorphic(&cds[i], &cds[j]).is_some();
            out.record(witness_ok && search == brute && search == cd, || {
                format!(
                    "{} vs {}: search {search}, brute force {brute}, cd {cd}, witness ok {witness_ok}",
                    one_line(&matrices[i]),
                    one_line(&matrices[j])
                )
            });
        }
    }
    out
}

/// A random matrix with `size` letters: each entry is 1 with probability
/// one half, and empty rows get one random entry.
pub fn random_matrix<R: Rng>(rng: &mut R, size: usize) -> TransitionMatrix {
    let alphabet = Alphabet::standard(size).expect("standard alphabet");
    let rows = (0..size)
        .map(|_| {
            let mut bits = rng.gen_range(0..1u64 << size);
            if bits == 0 {
                bits = 1 << rng.gen_range(0..size);
            }
            FollowerVector::from_bits(bits, size)
        })
        .collect();
    TransitionMatrix::new(alphabet, rows).expect("rows are nonzero")
}

/// Random matrices against random renamings of their symbols: always
/// equivalent, with a witness that passes verification.
pub fn symmetry_sweep(count: usize, max_size: usize, seed: u64) -> SweepOutcome {
    let mut out = SweepOutcome::new("symmetry");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let size = rng.gen_range(1..=max_size);
        let t = random_matrix(&mut rng, size);
        let mut perm: Vec<usize> = (0..size).collect();
        perm.shuffle(&mut rng);
        let p = t.permuted(&perm);
        let ok = match (build_graph(&t), build_graph(&p)) {
            (Ok(g1), Ok(g2)) => decide_graphs(&g1, &g2, true)
                .map(|v| v.equivalent && v.witness.is_some_and(|w| verify_witness(&g1, &g2, &w)))
                .unwrap_or(false),
            _ => false,
        };
        out.record(ok, || format!("{} under {perm:?}", one_line(&t)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(matrices_of_size(1).len(), 1);
        assert_eq!(matrices_of_size(2).len(), 9);
        assert_eq!(matrices_of_size(3).len(), 343);
        assert_eq!(all_matrices(3).len(), 353);
    }

    #[test]
    fn small_sweeps_pass() {
        let ms = all_matrices(2);
        for o in [
            oracle_sweep(&ms, 5),
            order_sweep(&ms),
            lgis_sweep(&ms, 1),
            cd_sweep(&ms),
            decision_sweep(&ms),
            symmetry_sweep(10, 3, 1),
        ] {
            assert!(o.passed(), "{}: {:?}", o.name, o.failures);
        }
    }

    #[test]
    fn decision_sweep_counts_pairs() {
        let ms = all_matrices(2);
        assert_eq!(decision_sweep(&ms).cases, 10 * 11 / 2);
    }

    #[test]
    fn random_matrices_are_valid_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        for size in 1..=4 {
            let t = random_matrix(&mut a, size);
            assert_eq!(t.size(), size);
            assert!(t.rows().iter().all(|r| !r.is_zero()));
            assert_eq!(t, random_matrix(&mut b, size));
        }
    }

    #[test]
    fn outcome_caps_reports() {
        let mut o = SweepOutcome::new("x");
        for i in 0..(MAX_REPORTED + 5) {
            o.record(i % 2 == 0, || i.to_string());
        }
        assert_eq!(o.cases, MAX_REPORTED + 5);
        assert_eq!(o.failed, (MAX_REPORTED + 5) / 2);
        assert!(o.failures.len() <= MAX_REPORTED);
        assert!(!o.passed());
    }
}
