use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use markov_morita::hull::oracle::Oracle;
use markov_morita::lgis::axioms::{check_axioms, Associativity};
use markov_morita::sweep::{self, SweepOutcome};
use markov_morita::{
    build_cd, coherent_check, decide_graphs, to_dot, FollowerVector, Hull, HullIdempotent,
    LabelledGraph, Lgis, TransitionMatrix,
};

/// Sampled associativity above this path length.
const EXHAUSTIVE_MAXLEN: usize = 2;
const SAMPLED_TRIPLES: usize = 20_000;
const SAMPLE_SEED: u64 = 7;
const SYMMETRY_SEED: u64 = 20_240_611;

#[derive(Parser, Debug)]
#[command(
    name = "markov-morita",
    version,
    about = "Morita-equivalence invariants of Markov shift inverse hulls"
)]
struct Cli {
    /// Print the report as JSON instead of key: value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Labelled graph: vertices, order covers, labels, edges.
    Fgraph {
        file: PathBuf,
        /// Also write the graph in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// D-classes, covers of the order, and the meet table.
    Order { file: PathBuf },
    /// The core of every D-class.
    Cores { file: PathBuf },
    /// Coherent transversal, guarded covers, and their product table.
    Cd { file: PathBuf },
    /// Inverse semigroup axioms on the elements with short paths.
    LgisCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        maxlen: usize,
    },
    /// Canonical idempotents against composed partial bijections.
    OracleCheck {
        file: PathBuf,
        /// Longest word the partial bijections act on (at least 4).
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Check these idempotents, one `(w, {v})` per line, instead of the
        /// computed ones.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Decide Morita equivalence of two shifts.
    Decide {
        first: PathBuf,
        second: PathBuf,
        /// Compare the combinatorial data as well.
        #[arg(long)]
        cross_check: bool,
    },
    /// Run the exhaustive sweeps over small alphabets.
    Selftest {
        /// Largest alphabet in the exhaustive sweeps (1 to 3).
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
        max_size: u8,
    },
}

/// Failures carrying their exit code.
#[derive(Debug)]
enum Failure {
    Usage(anyhow::Error),
    Violation(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Violation(_) => 3,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Usage(e) | Failure::Violation(e) => e,
        }
    }
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn violation(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Violation(e.into())
}

/// Ordered report. Scalars print as `key: value`, lists as one `key: item`
/// line per item.
struct Report {
    entries: Vec<(String, Value)>,
    ok: bool,
}

impl Report {
    fn new() -> Self {
        Self {
            entries: Vec::new(),
            ok: true,
        }
    }

    fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.entries.push((key.to_string(), value.into()));
    }

    fn list(&mut self, key: &str, items: Vec<String>) {
        self.put(
            key,
            Value::Array(items.into_iter().map(Value::String).collect()),
        );
    }

    /// Count under `count_key`, then the items.
    fn counted(&mut self, count_key: &str, key: &str, items: Vec<String>) {
        self.put(count_key, items.len());
        self.list(key, items);
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            match v {
                Value::Array(items) => {
                    for item in items {
                        let _ = writeln!(out, "{k}: {}", scalar(item));
                    }
                }
                other => {
                    let _ = writeln!(out, "{k}: {}", scalar(other));
                }
            }
        }
        out
    }

    fn json(&self) -> String {
        let mut map = Map::new();
        for (k, v) in &self.entries {
            map.insert(k.clone(), v.clone());
        }
        let mut s =
            serde_json::to_string_pretty(&Value::Object(map)).expect("report is valid JSON");
        s.push('\n');
        s
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn load(path: &Path) -> Result<TransitionMatrix, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(usage)?;
    TransitionMatrix::parse(&text)
        .with_context(|| format!("cannot parse {}", path.display()))
        .map_err(usage)
}

fn graph_of(path: &Path) -> Result<LabelledGraph, Failure> {
    LabelledGraph::from_matrix(load(path)?).map_err(violation)
}

fn fgraph(file: &Path, dot: Option<&Path>) -> Result<Report, Failure> {
    let g = graph_of(file)?;
    let o = g.order();
    let mut r = Report::new();
    r.put("alphabet", g.matrix().alphabet().symbols().join(" "));
    r.counted(
        "vertices",
        "vertex",
        g.vertices().map(|v| g.vertex_name(v)).collect(),
    );
    r.list(
        "cover",
        o.hasse()
            .iter()
            .map(|&(a, b)| format!("{} < {}", o.name(a), o.name(b)))
            .collect(),
    );
    r.counted(
        "labels",
        "label",
        g.label_ids()
            .map(|l| {
                format!(
                    "{} = {} class {}",
                    g.label_name(l),
                    g.label_text(l),
                    o.name(g.label(l).class)
                )
            })
            .collect(),
    );
    r.counted(
        "edges",
        "edge",
        g.edges()
            .iter()
            .map(|e| {
                format!(
                    "{}: {} -> {}",
                    g.label_name(e.label),
                    g.vertex_name(e.source),
                    g.vertex_name(e.range)
                )
            })
            .collect(),
    );
    if let Some(out) = dot {
        fs::write(out, to_dot(&g))
            .with_context(|| format!("cannot write {}", out.display()))
            .map_err(usage)?;
        r.put("dot", out.display().to_string());
    }
    Ok(r)
}

fn order(file: &Path) -> Result<Report, Failure> {
    let g = graph_of(file)?;
    let o = g.order();
    let mut r = Report::new();
    r.counted("classes", "class", o.ids().map(|a| o.name(a)).collect());
    r.list(
        "cover",
        o.hasse()
            .iter()
            .map(|&(a, b)| format!("{} < {}", o.name(a), o.name(b)))
            .collect(),
    );
    let mut meets = Vec::new();
    for a in o.ids() {
        for b in o.ids().filter(|&b| b >= a) {
            let m = o.meet(a, b).map_or_else(|| "0".to_string(), |m| o.name(m));
            meets.push(format!("{} ^ {} = {m}", o.name(a), o.name(b)));
        }
    }
    r.list("meet", meets);
    Ok(r)
}

fn cores(file: &Path) -> Result<Report, Failure> {
    let g = graph_of(file)?;
    let o = g.order();
    let t = g.matrix();
    let mut r = Report::new();
    r.put("classes", o.len());
    r.list(
        "core",
        o.ids()
            .map(|a| {
                let members: Vec<String> = o.core(a).iter().map(|v| t.format_vector(v)).collect();
                format!("{}: {}", o.name(a), members.join(" "))
            })
            .collect(),
    );
    Ok(r)
}

fn cd(file: &Path) -> Result<Report, Failure> {
    let g = graph_of(file)?;
    let o = g.order();
    let cd = build_cd(o).map_err(violation)?;
    let mut r = Report::new();
    r.counted("c_size", "c", cd.c_indices().map(|i| cd.name(i)).collect());
    r.counted(
        "cll_size",
        "cll",
        cd.cll_indices().map(|i| cd.name(i)).collect(),
    );
    let mut table = Vec::new();
    for i in 1..cd.len() {
        for j in 1..cd.len() {
            let p = cd
                .product(i, j)
                .map_or_else(|| "undefined".to_string(), |k| cd.name(k));
            table.push(format!("{} * {} = {p}", cd.name(i), cd.name(j)));
        }
    }
    r.list("product", table);
    let coherence = coherent_check(o);
    r.put(
        "coherent",
        match &coherence {
            Ok(()) => "yes".to_string(),
            Err(e) => format!("no ({e})"),
        },
    );
    let rules = cd.is_closed() && cd.check_case_rules();
    r.put("case_rules", if rules { "yes" } else { "no" });
    if coherence.is_err() || !rules {
        return Err(violation(anyhow!(
            "combinatorial data failed its checks:\n{}",
            r.text()
        )));
    }
    Ok(r)
}

fn lgis_check(file: &Path, maxlen: usize) -> Result<Report, Failure> {
    let g = graph_of(file)?;
    let s = Lgis::from_graph(&g).map_err(violation)?;
    let mode = if maxlen <= EXHAUSTIVE_MAXLEN {
        Associativity::Exhaustive
    } else {
        Associativity::Sampled {
            triples: SAMPLED_TRIPLES,
            seed: SAMPLE_SEED,
        }
    };
    let report = check_axioms(&s, maxlen, mode);
    let mut r = Report::new();
    r.put("maxlen", maxlen);
    r.put(
        "associativity",
        match mode {
            Associativity::Exhaustive => "exhaustive".to_string(),
            Associativity::Sampled { seed, .. } => format!("sampled (seed {seed})"),
        },
    );
    r.put("elements", report.elements);
    r.put("idempotents", report.idempotents);
    r.put("triples", report.triples_checked);
    r.list(
        "check",
        report
            .checks
            .iter()
            .map(|c| match &c.detail {
                None => format!("{}: {}", c.name, verdict(c.passed)),
                Some(d) => format!("{}: {} ({d})", c.name, verdict(c.passed)),
            })
            .collect(),
    );
    r.put("result", verdict(report.passed()));
    if !report.passed() {
        return Err(violation(anyhow!("axiom checks failed:\n{}", r.text())));
    }
    Ok(r)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// `(w, {v})` with `ε` or nothing for the empty word.
fn parse_idempotent(t: &TransitionMatrix, line: &str) -> Result<HullIdempotent> {
    let open = line
        .find('{')
        .ok_or_else(|| anyhow!("missing '{{' in {line:?}"))?;
    let close = line
        .rfind('}')
        .ok_or_else(|| anyhow!("missing '}}' in {line:?}"))?;
    let word_text = line[..open]
        .trim()
        .trim_start_matches('(')
        .trim()
        .trim_end_matches(',')
        .trim();
    let word = if word_text.is_empty() || word_text == "ε" {
        Default::default()
    } else {
        t.parse_word(word_text)?
    };
    let mut vector = FollowerVector::empty(t.size());
    for s in line[open + 1..close]
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
    {
        vector.insert(t.alphabet().letter(s)?);
    }
    Ok(HullIdempotent::from_parts_unchecked(word, vector))
}

fn oracle_check(file: &Path, depth: usize, table: Option<&Path>) -> Result<Report, Failure> {
    if depth < 4 {
        return Err(usage(anyhow!("depth must be at least 4, got {depth}")));
    }
    let t = load(file)?;
    let idems = match table {
        None => Hull::new(t.clone()).idempotents_up_to(2),
        Some(p) => {
            let text = fs::read_to_string(p)
                .with_context(|| format!("cannot read {}", p.display()))
                .map_err(usage)?;
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| parse_idempotent(&t, l))
                .collect::<Result<Vec<_>>>()
                .with_context(|| format!("cannot parse {}", p.display()))
                .map_err(usage)?
        }
    };
    let oracle = Oracle::build(&t, depth).map_err(violation)?;
    let mut r = Report::new();
    r.put("depth", depth);
    r.put("idempotents", idems.len());
    let mut lines = Vec::new();
    let mut failed = 0;
    for e in &idems {
        let ok = oracle.matches(&t, e).map_err(usage)?;
        failed += usize::from(!ok);
        lines.push(format!("{}: {}", e.display(&t), verdict(ok)));
    }
    r.list("idempotent", lines);
    r.put("failed", failed);
    r.put("result", verdict(failed == 0));
    r.ok = failed == 0;
    Ok(r)
}

fn decide(first: &Path, second: &Path, cross_check: bool) -> Result<Report, Failure> {
    let g1 = graph_of(first)?;
    let g2 = graph_of(second)?;
    let v = decide_graphs(&g1, &g2, cross_check).map_err(violation)?;
    let mut r = Report::new();
    r.put(
        "verdict",
        if v.equivalent {
            "EQUIVALENT"
        } else {
            "NOT EQUIVALENT"
        },
    );
    r.put("cross_checked", if v.cross_checked { "yes" } else { "no" });
    if let Some(w) = &v.witness {
        r.list(
            "vertex",
            g1.vertices()
                .map(|a| {
                    format!(
                        "{} -> {}",
                        g1.vertex_name(a),
                        g2.vertex_name(w.vertices[a.0])
                    )
                })
                .collect(),
        );
        r.list(
            "label",
            g1.label_ids()
                .map(|l| {
                    let m = w.labels[l.0];
                    format!(
                        "{} {} -> {} {}",
                        g1.label_name(l),
                        g1.label_text(l),
                        g2.label_name(m),
                        g2.label_text(m)
                    )
                })
                .collect(),
        );
        r.put("edges_mapped", w.edges.len());
    }
    if let Some(c) = &v.certificate {
        r.put("certificate", c.clone());
    }
    r.ok = v.equivalent;
    Ok(r)
}

fn selftest(max_size: usize) -> Result<Report, Failure> {
    let matrices = sweep::all_matrices(max_size);
    let outcomes: Vec<SweepOutcome> = vec![
        sweep::oracle_sweep(&matrices, 6),
        sweep::order_sweep(&matrices),
        sweep::lgis_sweep(&matrices, 2),
        sweep::cd_sweep(&matrices),
        sweep::decision_sweep(&matrices),
        sweep::symmetry_sweep(100, max_size + 1, SYMMETRY_SEED),
    ];
    let mut r = Report::new();
    r.put("matrices", matrices.len());
    r.list(
        "sweep",
        outcomes
            .iter()
            .map(|o| {
                format!(
                    "{}: {} ({} cases, {} failed)",
                    o.name,
                    verdict(o.passed()),
                    o.cases,
                    o.failed
                )
            })
            .collect(),
    );
    r.list(
        "failure",
        outcomes
            .iter()
            .flat_map(|o| o.failures.iter().map(move |f| format!("{}: {f}", o.name)))
            .collect(),
    );
    let ok = outcomes.iter().all(SweepOutcome::passed);
    r.put("result", verdict(ok));
    if !ok {
        return Err(violation(anyhow!("self-test failed:\n{}", r.text())));
    }
    Ok(r)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Fgraph { file, dot } => fgraph(file, dot.as_deref()),
        Command::Order { file } => order(file),
        Command::Cores { file } => cores(file),
        Command::Cd { file } => cd(file),
        Command::LgisCheck { file, maxlen } => lgis_check(file, *maxlen),
        Command::OracleCheck { file, depth, table } => oracle_check(file, *depth, table.as_deref()),
        Command::Decide {
            first,
            second,
            cross_check,
        } => decide(first, second, *cross_check),
        Command::Selftest { max_size } => selftest(usize::from(*max_size)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.json());
            } else {
                print!("{}", report.text());
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(f) => {
            if cli.json {
                println!(
                    "{}",
                    json!({ "error": format!("{:#}", f.error()), "exit": f.code() })
                );
            }
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}
