//! Property suite for a finite slice of a labelled graph inverse semigroup.
//!
//! Elements are interned so that products are table lookups; products that
//! leave the enumerated slice are interned too.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GraphSpace, Lgis, LgisElement};

/// How associativity is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Associativity {
    Exhaustive,
    Sampled { triples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    /// First counterexample, when failed.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub maxlen: usize,
    pub elements: usize,
    pub idempotents: usize,
    pub triples_checked: u64,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

const ZERO: u32 = 0;
const NO_SLOT: u32 = u32::MAX;

struct Table<'a> {
    lgis: &'a Lgis,
    arena: Vec<LgisElement>,
    ids: HashMap<LgisElement, u32>,
    base: usize,
    /// `base × base` products.
    prod: Vec<u32>,
    /// Slot of each product appearing in `prod`, or `NO_SLOT`.
    slot: Vec<u32>,
    /// `slots × base`: `p · z`.
    left: Vec<u32>,
    /// `base × slots`: `x · p`.
    right: Vec<u32>,
    slots: usize,
}

impl<'a> Table<'a> {
    fn new(lgis: &'a Lgis, elements: Vec<LgisElement>) -> Self {
        debug_assert_eq!(elements.first(), Some(&LgisElement::Zero));
        let base = elements.len();
        let ids = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        let mut t = Self {
            lgis,
            arena: elements,
            ids,
            base,
            prod: Vec::new(),
            slot: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
            slots: 0,
        };
        let mut prod = Vec::with_capacity(base * base);
        for x in 0..base {
            for y in 0..base {
                prod.push(t.mul_ids(x as u32, y as u32));
            }
        }
        t.prod = prod;
        t
    }

    /// Tabulates `p · z` and `x · p` for every base product `p`.
    fn tabulate_triples(&mut self) {
        let mut products: Vec<u32> = self.prod.clone();
        products.sort_unstable();
        products.dedup();
        self.slot = vec![NO_SLOT; self.arena.len()];
        for (i, &p) in products.iter().enumerate() {
            self.slot[p as usize] = i as u32;
        }
        self.slots = products.len();
        let mut left = Vec::with_capacity(self.slots * self.base);
        for &p in &products {
            for z in 0..self.base {
                left.push(self.mul_ids(p, z as u32));
            }
        }
        let mut right = Vec::with_capacity(self.slots * self.base);
        for x in 0..self.base {
            for &p in &products {
                right.push(self.mul_ids(x as u32, p));
            }
        }
        self.left = left;
        self.right = right;
    }

    fn associative(&self, x: usize, y: usize, z: usize) -> bool {
        let xy = self.slot[self.p(x, y) as usize] as usize;
        let yz = self.slot[self.p(y, z) as usize] as usize;
        self.left[xy * self.base + z] == self.right[x * self.slots + yz]
    }

    fn intern(&mut self, x: LgisElement) -> u32 {
        if let Some(&i) = self.ids.get(&x) {
            return i;
        }
        let i = self.arena.len() as u32;
        self.arena.push(x.clone());
        self.ids.insert(x, i);
        i
    }

    fn mul_ids(&mut self, x: u32, y: u32) -> u32 {
        if x == ZERO || y == ZERO {
            return ZERO;
        }
        let p = self
            .lgis
            .multiply(&self.arena[x as usize], &self.arena[y as usize]);
        self.intern(p)
    }

    fn p(&self, x: usize, y: usize) -> u32 {
        self.prod[x * self.base + y]
    }

    fn inverse(&mut self, x: usize) -> u32 {
        let inv = self.arena[x].inverse();
        self.intern(inv)
    }
}

fn fail(name: &'static str, detail: String) -> AxiomCheck {
    AxiomCheck {
        name,
        passed: false,
        detail: Some(detail),
    }
}

fn pass(name: &'static str) -> AxiomCheck {
    AxiomCheck {
        name,
        passed: true,
        detail: None,
    }
}

/// Runs the axiom and property suite on every element with paths of length
/// `≤ maxlen`.
pub fn check_axioms(lgis: &Lgis, maxlen: usize, mode: Associativity) -> AxiomReport {
    let elements = lgis.enumerate_elements(maxlen);
    let n = elements.len();
    let mut t = Table::new(lgis, elements.clone());
    let mut checks = Vec::new();

    // associativity
    let mut triples = 0u64;
    let mut assoc = pass("associativity");
    t.tabulate_triples();
    match mode {
        Associativity::Exhaustive => {
            'outer: for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        triples += 1;
                        if !t.associative(x, y, z) {
                            assoc = fail(
                                "associativity",
                                format!("{} {} {}", elements[x], elements[y], elements[z]),
                            );
                            break 'outer;
                        }
                    }
                }
            }
        }
        Associativity::Sampled {
            triples: count,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let (x, y, z) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                triples += 1;
                if !t.associative(x, y, z) {
                    assoc = fail(
                        "associativity",
                        format!("{} {} {}", elements[x], elements[y], elements[z]),
                    );
                    break;
                }
            }
        }
    }
    checks.push(assoc);

    // x x* x = x, x* x x* = x*, and no other y inverts x
    let inv: Vec<u32> = (0..n).map(|x| t.inverse(x)).collect();
    let mut inverses = pass("unique inverses");
    'inv: for x in 0..n {
        let xi = inv[x];
        let xxi = t.mul_ids(x as u32, xi);
        let xix = t.mul_ids(xi, x as u32);
        if t.mul_ids(xxi, x as u32) != x as u32 || t.mul_ids(xix, xi) != xi {
            inverses = fail(
                "unique inverses",
                format!(
                    "{} is not inverted by {}",
                    elements[x], t.arena[xi as usize]
                ),
            );
            break;
        }
        for y in 0..n {
            if y as u32 == xi {
                continue;
            }
            let xy = t.p(x, y);
            let yx = t.p(y, x);
            if t.mul_ids(xy, x as u32) == x as u32 && t.mul_ids(yx, y as u32) == y as u32 {
                inverses = fail(
                    "unique inverses",
                    format!("{} has a second inverse {}", elements[x], elements[y]),
                );
                break 'inv;
            }
        }
    }
    checks.push(inverses);

    // idempotents are exactly zero and the (α, A, α)
    let idem: Vec<bool> = (0..n).map(|x| t.p(x, x) == x as u32).collect();
    let shape = (0..n).find(|&x| idem[x] != elements[x].is_idempotent());
    checks.push(match shape {
        None => pass("idempotent shape"),
        Some(x) => fail("idempotent shape", elements[x].to_string()),
    });
    let idems: Vec<usize> = (0..n).filter(|&x| idem[x]).collect();
    let commuting = idems
        .iter()
        .flat_map(|&e| idems.iter().map(move |&f| (e, f)))
        .find(|&(e, f)| t.p(e, f) != t.p(f, e));
    checks.push(match commuting {
        None => pass("commuting idempotents"),
        Some((e, f)) => fail(
            "commuting idempotents",
            format!("{} {}", elements[e], elements[f]),
        ),
    });

    // Green's relations and the order
    let rr: Vec<u32> = (0..n).map(|x| t.mul_ids(x as u32, inv[x])).collect();
    let ll: Vec<u32> = (0..n).map(|x| t.mul_ids(inv[x], x as u32)).collect();
    let mut green = pass("green R/L/D");
    let mut order = pass("natural order");
    'pairs: for x in 0..n {
        for y in 0..n {
            let (ex, ey) = (&elements[x], &elements[y]);
            if lgis.r_related(ex, ey) != (rr[x] == rr[y])
                || lgis.l_related(ex, ey) != (ll[x] == ll[y])
            {
                green = fail("green R/L/D", format!("{ex} {ey}"));
                break 'pairs;
            }
            let same_set = ex.parts().map(|p| p.1) == ey.parts().map(|p| p.1);
            match lgis.d_witness(ex, ey, &elements) {
                Some(z) => {
                    let zi = z.inverse();
                    let algebraic = lgis.multiply(z, &zi) == t.arena[rr[x] as usize]
                        && lgis.multiply(&zi, z) == t.arena[ll[y] as usize];
                    if !algebraic || !same_set {
                        green = fail("green R/L/D", format!("bad witness {z} for {ex} {ey}"));
                        break 'pairs;
                    }
                }
                None if same_set => {
                    green = fail("green R/L/D", format!("no witness for {ex} {ey}"));
                    break 'pairs;
                }
                None => {}
            }
            let algebraic = t.mul_ids(rr[x], y as u32) == x as u32;
            if lgis.leq(ex, ey) != algebraic || lgis.leq_algebraic(ex, ey) != algebraic {
                order = fail("natural order", format!("{ex} {ey}"));
                break 'pairs;
            }
        }
    }
    checks.push(green);
    checks.push(order);

    // combinatorial: (xx*, x*x) determines x
    let mut seen: HashMap<(u32, u32), usize> = HashMap::new();
    let mut combinatorial = pass("combinatorial");
    for x in 0..n {
        if let Some(&y) = seen.get(&(rr[x], ll[x])) {
            combinatorial = fail("combinatorial", format!("{} {}", elements[y], elements[x]));
            break;
        }
        seen.insert((rr[x], ll[x]), x);
    }
    checks.push(combinatorial);

    // 0-E-unitary: a nonzero idempotent below x makes x idempotent
    let unitary = idems
        .iter()
        .filter(|&&e| e != ZERO as usize)
        .flat_map(|&e| (0..n).map(move |x| (e, x)))
        .find(|&(e, x)| !idem[x] && t.mul_ids(rr[e], x as u32) == e as u32);
    checks.push(match unitary {
        None => pass("0-E-unitary"),
        Some((e, x)) => fail("0-E-unitary", format!("{} <= {}", elements[e], elements[x])),
    });

    checks.push(space_checks(lgis.space(), lgis, maxlen, &elements));

    AxiomReport {
        maxlen,
        elements: n,
        idempotents: idems.len(),
        triples_checked: triples,
        checks,
    }
}

/// Resolving predicates, source chaining, and agreement of the shortcut
/// formulas with representative-based evaluation.
fn space_checks(
    space: &GraphSpace,
    lgis: &Lgis,
    maxlen: usize,
    elements: &[LgisElement],
) -> AxiomCheck {
    const NAME: &str = "relative sources";
    if space.check_resolving() != (true, true) {
        return fail(
            NAME,
            format!("resolving predicates {:?}", space.check_resolving()),
        );
    }
    let paths = lgis.paths_up_to(maxlen.max(1) * 2);
    if paths != space.paths_up_to(maxlen.max(1) * 2) {
        return fail(NAME, "path sets differ".into());
    }
    for p in &paths {
        for &a in space.family() {
            let whole = lgis.relative_source(a, p.labels());
            if whole != space.relative_source(a, p.labels()) || !space.in_family(whole) {
                return fail(NAME, format!("s({:#x}, {p})", a.0));
            }
            for k in 0..=p.len() {
                let (head, tail) = p.labels().split_at(k);
                if lgis.relative_source(lgis.relative_source(a, head), tail) != whole {
                    return fail(NAME, format!("chain at {k} for s({:#x}, {p})", a.0));
                }
            }
        }
    }
    for x in elements {
        for y in elements {
            if lgis.multiply(x, y) != space.multiply_reference(x, y) {
                return fail(NAME, format!("product {x} {y}"));
            }
        }
    }
    pass(NAME)
}
