//! Acceptance criteria 1 to 7. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use markov_morita::order::DClassId;
use markov_morita::sweep::{self, SweepOutcome};
use markov_morita::{build_graph, decide_morita, FollowerVector, LabelledGraph, TransitionMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::RawGraph;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn from_sweep(o: &SweepOutcome) -> Outcome {
    if o.passed() {
        Ok(format!("{} {} cases", o.cases, o.name))
    } else {
        Err(format!(
            "{} of {} {} cases failed, first: {}",
            o.failed,
            o.cases,
            o.name,
            o.failures.join("; ")
        ))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let t = TransitionMatrix::parse("a b c\n110\n011\n111\n").map_err(|e| e.to_string())?;
    let g = build_graph(&t).map_err(|e| e.to_string())?;
    let v = |s: &str| {
        let bits = s.bytes().fold(0u64, |acc, c| acc | 1 << (c - b'a'));
        g.order().id_of(&FollowerVector::from_bits(bits, 3))
    };
    let (a, b, c, d) = match (v("ab"), v("bc"), v("abc"), v("b")) {
        (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
        _ => return Err("missing one of the four expected classes".into()),
    };
    ensure(g.vertex_count() == 4, || {
        format!("{} vertices", g.vertex_count())
    })?;
    let brute = common::f_classes_by_subsets(&t);
    let ours: BTreeSet<u64> = g.vertices().map(|x| g.order().vector(x).bits()).collect();
    ensure(brute == ours, || {
        "vertices differ from the brute-force F-classes".into()
    })?;

    let hasse: BTreeSet<(DClassId, DClassId)> = g.order().hasse().into_iter().collect();
    let expected: BTreeSet<_> = [(d, a), (d, b), (a, c), (b, c)].into_iter().collect();
    ensure(hasse == expected, || format!("order covers {hasse:?}"))?;

    ensure(g.labels().len() == 3, || {
        format!("{} labels", g.labels().len())
    })?;
    let label = |range: DClassId, cover: &str| {
        g.label_ids()
            .find(|&l| g.label(l).range == range && g.cover_name(&g.label(l).cover) == cover)
            .ok_or_else(|| format!("no label ({}, {cover})", g.vertex_name(range)))
    };
    let alpha = label(a, "aa^-1")?;
    let beta = label(d, "bb^-1")?;
    let gamma = label(b, "cc^-1")?;

    let edges: BTreeSet<_> = g
        .edges()
        .iter()
        .map(|e| (e.label, e.source, e.range))
        .collect();
    let expected: BTreeSet<_> = [
        (alpha, a, a),
        (alpha, d, a),
        (beta, b, d),
        (beta, d, d),
        (gamma, a, b),
        (gamma, b, b),
        (gamma, c, b),
        (gamma, d, b),
    ]
    .into_iter()
    .collect();
    ensure(g.edges().len() == 8 && edges == expected, || {
        format!("edges {edges:?}")
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed.as_secs_f64() < 1.0, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "4 classes, 4 covers, 3 labels, 8 edges in {elapsed:.2?}"
    ))
}

fn criterion_2(matrices: &[TransitionMatrix]) -> Outcome {
    let start = Instant::now();
    let out = sweep::oracle_sweep(matrices, 6);
    let elapsed = start.elapsed();
    from_sweep(&out)?;
    ensure(elapsed.as_secs() < 60, || format!("took {elapsed:?}"))?;
    for t in matrices {
        let brute = common::f_classes_by_subsets(t);
        let ours: BTreeSet<u64> = t.f_classes().iter().map(|v| v.bits()).collect();
        ensure(brute == ours, || {
            format!("F-classes of {}", t.to_text().trim().replace('\n', " / "))
        })?;
    }
    Ok(format!(
        "{} matrices at depth 6 in {elapsed:.2?}",
        out.cases
    ))
}

fn criterion_3(matrices: &[TransitionMatrix]) -> Outcome {
    from_sweep(&sweep::order_sweep(matrices))
}

fn criterion_4(matrices: &[TransitionMatrix]) -> Outcome {
    let start = Instant::now();
    let out = sweep::lgis_sweep(matrices, 2);
    from_sweep(&out).map(|s| {
        format!(
            "{s}, paths of length <= 2, exhaustive associativity, {:.2?}",
            start.elapsed()
        )
    })
}

fn criterion_5(matrices: &[TransitionMatrix]) -> Outcome {
    from_sweep(&sweep::cd_sweep(matrices))
}

fn criterion_6(matrices: &[TransitionMatrix]) -> Outcome {
    let start = Instant::now();
    let out = sweep::decision_sweep(matrices);
    from_sweep(&out)?;
    let graphs: Vec<LabelledGraph> = matrices
        .iter()
        .map(|t| build_graph(t).expect("valid"))
        .collect();
    let raw: Vec<RawGraph> = graphs.iter().map(RawGraph::of).collect();
    let mut equivalent = 0;
    for i in 0..graphs.len() {
        for j in i..graphs.len() {
            let reference = common::isomorphic(&raw[i], &raw[j]);
            let verdict = markov_morita::decide_graphs(&graphs[i], &graphs[j], false)
                .map_err(|e| e.to_string())?;
            ensure(verdict.equivalent == reference, || {
                format!(
                    "pair ({i}, {j}): decider {} vs reference {reference}",
                    verdict.equivalent
                )
            })?;
            if let Some(w) = &verdict.witness {
                ensure(common::witness_valid(&graphs[i], &graphs[j], w), || {
                    format!("witness for ({i}, {j})")
                })?;
            }
            equivalent += usize::from(reference);
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed.as_secs() < 600, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} pairs, {equivalent} equivalent, in {elapsed:.2?}",
        out.cases
    ))
}

fn criterion_7() -> Outcome {
    let out = sweep::symmetry_sweep(100, 4, 0x5eed);
    from_sweep(&out)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xfeed);
    for k in 0..100 {
        let size = rng.gen_range(1..=4);
        let t = sweep::random_matrix(&mut rng, size);
        let mut perm: Vec<usize> = (0..size).collect();
        perm.shuffle(&mut rng);
        let p = t.permuted(&perm);
        let v = decide_morita(&t, &p, true).map_err(|e| e.to_string())?;
        let (g1, g2) = (build_graph(&t).unwrap(), build_graph(&p).unwrap());
        let ok = v.equivalent
            && v.witness
                .as_ref()
                .is_some_and(|w| common::witness_valid(&g1, &g2, w));
        ensure(ok, || {
            format!(
                "case {k}: {} under {perm:?}",
                t.to_text().trim().replace('\n', " / ")
            )
        })?;
    }
    Ok("200 random matrices with |A| <= 4 against renamings".into())
}

fn main() {
    let matrices = sweep::all_matrices(3);
    let results: Vec<(&str, Outcome)> = vec![
        ("worked example", criterion_1()),
        ("oracle equivalence", criterion_2(&matrices)),
        ("order structure", criterion_3(&matrices)),
        ("inverse semigroup axioms", criterion_4(&matrices)),
        ("coherence and combinatorial data", criterion_5(&matrices)),
        ("decision agreement", criterion_6(&matrices)),
        ("symmetry", criterion_7()),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
