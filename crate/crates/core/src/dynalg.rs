//! The powerset dynamic algebra over a test monoid.
//!
//! Elements are finite sets of monoid elements. Join is union, the product
//! and involution act elementwise, and `~A` is the single projection onto
//! the orthocomplement of `⋁ a(1)`. The powerset itself is never
//! materialized: only sets that a caller builds exist.

use crate::config::Limits;
use crate::oml::{check_ortho_iso, validate_oml, Elem, Oml, OrthoIso};
use crate::report::{Check, Mode, Tally, ValidationReport};
use crate::testmonoid::InvMonoid;
use fixedbitset::FixedBitSet;
use rand::seq::index::sample as index_sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;
use thiserror::Error;

/// A test `{π_m}`, named by its lattice element `m`.
pub type TestElem = Elem;

/// Subset quantifiers with more than this many pairs are sampled.
const PAIR_BUDGET: usize = 1 << 16;
const TRIPLE_BUDGET: usize = 1 << 14;
/// Hard ceiling on exhaustive subset enumeration whatever the threshold says.
const EXHAUSTIVE_HARD_MAX: usize = 16;

#[derive(Debug, Error, Clone)]
pub enum DynError {
    #[error("element lives over a monoid of {found} elements, expected {expected}")]
    Mismatch { expected: usize, found: usize },
    #[error("monoid id {id} is not in the carrier")]
    OutsideCarrier { id: usize },
    #[error("test {m} out of range for a lattice of {n} elements")]
    TestOutOfRange { m: usize, n: usize },
    #[error("~~ closed form {closed} disagrees with iterated ~ {iterated} on {arg}")]
    ClosedForm {
        arg: String,
        closed: String,
        iterated: String,
    },
    #[error("test lattice extraction failed: {}", first_failure(.0))]
    Extraction(Box<ValidationReport>),
}

fn first_failure(r: &ValidationReport) -> String {
    match r.failures().next() {
        Some(c) => format!(
            "{} ({})",
            c.name,
            c.witness.as_deref().unwrap_or("no witness")
        ),
        None => "no failing check".into(),
    }
}

/// A set of monoid elements, kept as a bitset over monoid ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynElem {
    bits: FixedBitSet,
}

impl DynElem {
    /// Sorted, duplicate-free monoid ids.
    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.bits.contains(id)
    }

    /// Quantale order: set inclusion.
    pub fn is_subset(&self, other: &DynElem) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Size of the monoid this element lives over.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }
}

/// `𝒫(L)` for a test monoid `L`, optionally with a restricted carrier.
#[derive(Debug)]
pub struct DynAlgebra {
    mono: Arc<InvMonoid>,
    carrier: FixedBitSet,
}

impl DynAlgebra {
    pub fn new(mono: Arc<InvMonoid>) -> Self {
        let mut carrier = FixedBitSet::with_capacity(mono.len());
        carrier.insert_range(..);
        DynAlgebra { mono, carrier }
    }

    /// The same operations over a carrier with monoid element `id` removed.
    /// Used as a negative control: minimality must then fail.
    pub fn without(mono: Arc<InvMonoid>, id: usize) -> Result<Self, DynError> {
        if id >= mono.len() {
            return Err(DynError::OutsideCarrier { id });
        }
        let mut alg = DynAlgebra::new(mono);
        alg.carrier.set(id, false);
        Ok(alg)
    }

    pub fn monoid(&self) -> &Arc<InvMonoid> {
        &self.mono
    }

    pub fn lattice(&self) -> &Arc<Oml> {
        self.mono.lattice()
    }

    pub fn carrier(&self) -> impl Iterator<Item = usize> + '_ {
        self.carrier.ones()
    }

    pub fn carrier_len(&self) -> usize {
        self.carrier.count_ones(..)
    }

    pub fn is_full(&self) -> bool {
        self.carrier_len() == self.mono.len()
    }

    fn blank(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.mono.len())
    }

    /// Checked constructor from monoid ids.
    pub fn elem(&self, ids: impl IntoIterator<Item = usize>) -> Result<DynElem, DynError> {
        let mut bits = self.blank();
        for id in ids {
            if id >= self.mono.len() || !self.carrier.contains(id) {
                return Err(DynError::OutsideCarrier { id });
            }
            bits.insert(id);
        }
        Ok(DynElem { bits })
    }

    fn collect_ids(&self, ids: impl IntoIterator<Item = usize>) -> DynElem {
        let mut bits = self.blank();
        bits.extend(ids);
        DynElem { bits }
    }

    pub fn check(&self, a: &DynElem) -> Result<(), DynError> {
        if a.universe() != self.mono.len() {
            return Err(DynError::Mismatch {
                expected: self.mono.len(),
                found: a.universe(),
            });
        }
        Ok(())
    }

    /// `0 = ∅`.
    pub fn empty(&self) -> DynElem {
        DynElem { bits: self.blank() }
    }

    /// `1`, the whole carrier.
    pub fn full(&self) -> DynElem {
        DynElem {
            bits: self.carrier.clone(),
        }
    }

    /// `e = {id}`.
    pub fn unit(&self) -> DynElem {
        self.singleton(self.mono.unit())
    }

    pub fn singleton(&self, id: usize) -> DynElem {
        self.collect_ids([id])
    }

    /// `δ(m) = {π_m}`.
    pub fn test(&self, m: TestElem) -> DynElem {
        self.singleton(self.mono.proj(m))
    }

    pub fn union(&self, a: &DynElem, b: &DynElem) -> DynElem {
        let mut bits = a.bits.clone();
        bits.union_with(&b.bits);
        DynElem { bits }
    }

    pub fn union_all<'a>(&self, parts: impl IntoIterator<Item = &'a DynElem>) -> DynElem {
        let mut bits = self.blank();
        for p in parts {
            bits.union_with(&p.bits);
        }
        DynElem { bits }
    }

    /// `A ⊙ B = {a ∘ b}`.
    pub fn mul(&self, a: &DynElem, b: &DynElem) -> DynElem {
        let mut bits = self.blank();
        for x in a.ids() {
            for y in b.ids() {
                bits.insert(self.mono.mul(x, y));
            }
        }
        DynElem { bits }
    }

    /// `A* = {a*}`.
    pub fn star(&self, a: &DynElem) -> DynElem {
        self.collect_ids(a.ids().map(|x| self.mono.star(x)))
    }

    /// `⋁_{a∈A} a(1)`.
    pub fn sup(&self, a: &DynElem) -> Elem {
        let l = self.lattice();
        l.join_all(a.ids().map(|x| self.mono.at_top(x)))
    }

    /// `~A = {π_{(⋁ a(1))⊥}}`.
    pub fn tilde(&self, a: &DynElem) -> DynElem {
        self.test(self.lattice().perp(self.sup(a)))
    }

    /// Closed form `~~A = {π_{⋁ a(1)}}`.
    pub fn tilde_closed(&self, a: &DynElem) -> DynElem {
        self.test(self.sup(a))
    }

    /// `~~A`, computed both by iterating `~` and by the closed form.
    pub fn tilde_tilde(&self, a: &DynElem) -> Result<DynElem, DynError> {
        let iterated = self.tilde(&self.tilde(a));
        let closed = self.tilde_closed(a);
        if iterated == closed {
            Ok(iterated)
        } else {
            Err(DynError::ClosedForm {
                arg: self.describe(a),
                closed: self.describe(&closed),
                iterated: self.describe(&iterated),
            })
        }
    }

    /// The lattice element `m` when `a = {π_m}`.
    pub fn as_test(&self, a: &DynElem) -> Option<TestElem> {
        let mut ids = a.ids();
        let id = ids.next()?;
        if ids.next().is_some() {
            return None;
        }
        let m = self.mono.at_top(id);
        (self.mono.proj(m) == id).then_some(m)
    }

    /// `k • v = ~~(k ⊙ δ(v))`, computed through the set operations.
    pub fn action(&self, k: &DynElem, v: TestElem) -> TestElem {
        let prod = self.mul(k, &self.test(v));
        self.as_test(&self.tilde(&self.tilde(&prod)))
            .expect("~ always yields a projection")
    }

    /// `⋁_{a∈k} a(v)`, the action evaluated directly on tables.
    pub fn action_direct(&self, k: &DynElem, v: TestElem) -> TestElem {
        self.lattice()
            .join_all(k.ids().map(|a| self.mono.apply(a, v)))
    }

    /// First test on which `s` and `t` act differently.
    pub fn equiv_witness(&self, s: &DynElem, t: &DynElem) -> Option<TestElem> {
        self.lattice()
            .elements()
            .find(|&v| self.action_direct(s, v) != self.action_direct(t, v))
    }

    /// `s ≡ t`: equal action on every test.
    pub fn equiv(&self, s: &DynElem, t: &DynElem) -> bool {
        self.equiv_witness(s, t).is_none()
    }

    /// `S_a`: the singletons whose union is `a`, sorted like [`Self::h_map`].
    pub fn normal_form(&self, a: &DynElem) -> Vec<DynElem> {
        let mut v: Vec<DynElem> = a.ids().map(|x| self.singleton(x)).collect();
        v.sort();
        v
    }

    /// `h(a) = {w ∈ 𝒯(K) : w ⊑ a}`, found by an inclusion scan over all
    /// singletons of the carrier rather than by splitting `a`. Sorted by the
    /// `DynElem` order, which is not id order once the universe spans blocks.
    pub fn h_map(&self, a: &DynElem) -> Vec<DynElem> {
        let mut v: Vec<DynElem> = self
            .carrier()
            .map(|x| self.singleton(x))
            .filter(|w| w.is_subset(a))
            .collect();
        v.sort();
        v
    }

    pub fn word(&self, id: usize) -> String {
        let w = self.mono.word(id);
        if w.is_empty() {
            "id".into()
        } else {
            w
        }
    }

    /// e.g. `{pi_a, pi_a pi_b}`.
    pub fn describe(&self, a: &DynElem) -> String {
        let parts: Vec<_> = a.ids().map(|x| self.word(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

pub fn dyn_mul(alg: &DynAlgebra, a: &DynElem, b: &DynElem) -> Result<DynElem, DynError> {
    alg.check(a)?;
    alg.check(b)?;
    Ok(alg.mul(a, b))
}

pub fn dyn_star(alg: &DynAlgebra, a: &DynElem) -> Result<DynElem, DynError> {
    alg.check(a)?;
    Ok(alg.star(a))
}

pub fn dyn_tilde(alg: &DynAlgebra, a: &DynElem) -> Result<DynElem, DynError> {
    alg.check(a)?;
    Ok(alg.tilde(a))
}

pub fn action(alg: &DynAlgebra, k: &DynElem, v: TestElem) -> Result<TestElem, DynError> {
    alg.check(k)?;
    let n = alg.lattice().len();
    if v >= n {
        return Err(DynError::TestOutOfRange { m: v, n });
    }
    Ok(alg.action(k, v))
}

pub fn equiv(alg: &DynAlgebra, s: &DynElem, t: &DynElem) -> Result<bool, DynError> {
    alg.check(s)?;
    alg.check(t)?;
    Ok(alg.equiv(s, t))
}

/// The tests `~K` materialized as a lattice, with `δ: M → ~K`.
#[derive(Debug, Clone)]
pub struct TestLattice {
    oml: Arc<Oml>,
    tests: Vec<usize>,
    index: HashMap<usize, Elem>,
    delta: OrthoIso,
    report: ValidationReport,
}

impl TestLattice {
    pub fn oml(&self) -> &Arc<Oml> {
        &self.oml
    }

    pub fn delta(&self) -> &OrthoIso {
        &self.delta
    }

    /// Monoid id of the projection standing at test-lattice index `x`.
    pub fn test_id(&self, x: Elem) -> usize {
        self.tests[x]
    }

    pub fn index_of(&self, id: usize) -> Option<Elem> {
        self.index.get(&id).copied()
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    /// Table of `k • (−)` on the test lattice, i.e. `ν(k)`.
    pub fn action_table(&self, alg: &DynAlgebra, k: &DynElem) -> Vec<Elem> {
        (0..self.tests.len())
            .map(|x| {
                let v = alg.monoid().at_top(self.tests[x]);
                self.delta.apply(alg.action(k, v))
            })
            .collect()
    }
}

/// Extract `~K` with order `x ⪯ y ⇔ ⋁{x,y} = y` and complement `~`.
pub fn test_lattice(alg: &DynAlgebra) -> Result<TestLattice, DynError> {
    let l = alg.lattice().clone();
    let mono = alg.monoid();
    let id_of = |a: &DynElem| a.ids().next().expect("nonempty test");

    let mut found = BTreeSet::new();
    found.insert(id_of(&alg.tilde(&alg.empty())));
    for x in alg.carrier() {
        found.insert(id_of(&alg.tilde(&alg.singleton(x))));
    }
    loop {
        let cur: Vec<usize> = found.iter().copied().collect();
        let before = found.len();
        for &x in &cur {
            for &y in &cur {
                let u = alg.collect_ids([x, y]);
                found.insert(id_of(&alg.tilde(&u)));
            }
        }
        if found.len() == before {
            break;
        }
    }
    let tests: Vec<usize> = found.into_iter().collect();
    let index: HashMap<usize, Elem> = tests.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let k = tests.len();
    let vee =
        |x: usize, y: usize| id_of(&alg.tilde(&alg.tilde(&alg.collect_ids([tests[x], tests[y]]))));
    let leq: Vec<Vec<bool>> = (0..k)
        .map(|x| (0..k).map(|y| vee(x, y) == tests[y]).collect())
        .collect();
    let perp: Vec<Elem> = (0..k)
        .map(|x| index[&id_of(&alg.tilde(&alg.singleton(tests[x])))])
        .collect();
    let names: Vec<String> = tests.iter().map(|&t| alg.word(t)).collect();
    let name = format!("~K({})", l.name());

    let mut report = ValidationReport::new(format!("test lattice of {}", l.name()));
    let oml = match Oml::from_order(name, names, &leq, perp) {
        Ok(o) => Arc::new(o),
        Err(e) => {
            report.push(Check::fail(
                "test order is a lattice",
                Mode::Exhaustive,
                e.to_string(),
            ));
            return Err(DynError::Extraction(Box::new(report)));
        }
    };
    report.extend(validate_oml(&oml));

    let ex = Mode::Exhaustive;
    let mut join = Tally::new("join is ~(~(x ⊔ y))", ex);
    let mut meet = Tally::new("meet is ~(~x ⊔ ~y)", ex);
    for x in 0..k {
        for y in 0..k {
            let j = index[&vee(x, y)];
            join.case(oml.join(x, y) == j, || {
                format!(
                    "{} v {}: lattice {} vs formula {}",
                    oml.label(x),
                    oml.label(y),
                    oml.label(oml.join(x, y)),
                    oml.label(j)
                )
            });
            let nx = alg.tilde(&alg.singleton(tests[x]));
            let ny = alg.tilde(&alg.singleton(tests[y]));
            let m = index[&id_of(&alg.tilde(&alg.union(&nx, &ny)))];
            meet.case(oml.meet(x, y) == m, || {
                format!(
                    "{} ^ {}: lattice {} vs formula {}",
                    oml.label(x),
                    oml.label(y),
                    oml.label(oml.meet(x, y)),
                    oml.label(m)
                )
            });
        }
    }
    report.push(join.finish());
    report.push(meet.finish());

    let mut lands = Tally::new("delta lands in tests", ex);
    let mut map = Vec::with_capacity(l.len());
    for m in l.elements() {
        let t = index.get(&mono.proj(m)).copied();
        lands.case(t.is_some(), || format!("pi_{} is not a test", l.label(m)));
        map.push(t.unwrap_or(0));
    }
    report.push(lands.finish());
    let delta = match OrthoIso::new(l.clone(), oml.clone(), map) {
        Ok(d) => d,
        Err(e) => {
            report.push(Check::fail(
                "delta is an ortholattice isomorphism",
                ex,
                e.to_string(),
            ));
            return Err(DynError::Extraction(Box::new(report)));
        }
    };
    for mut c in check_ortho_iso(&delta).checks {
        c.name = format!("delta {}", c.name);
        report.push(c);
    }
    if report.has_failures() {
        return Err(DynError::Extraction(Box::new(report)));
    }
    Ok(TestLattice {
        oml,
        tests,
        index,
        delta,
        report,
    })
}

/// Which subsets stand in for "all subsets" in the axiom suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplePolicy {
    pub seed: u64,
    pub samples: usize,
    pub exhaustive_threshold: usize,
}

impl Default for SamplePolicy {
    fn default() -> Self {
        SamplePolicy::from_limits(&Limits::default())
    }
}

/// A family of algebra elements and how it was chosen.
#[derive(Clone, Debug)]
pub struct Sample {
    pub elems: Vec<DynElem>,
    pub mode: Mode,
}

impl SamplePolicy {
    pub fn from_limits(limits: &Limits) -> Self {
        SamplePolicy {
            seed: limits.seed,
            samples: limits.samples,
            exhaustive_threshold: limits.exhaustive_threshold,
        }
    }

    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn is_exhaustive(&self, alg: &DynAlgebra) -> bool {
        let n = alg.carrier_len();
        n <= self.exhaustive_threshold && n <= EXHAUSTIVE_HARD_MAX
    }

    /// Every subset of the carrier when it is small enough, otherwise the
    /// structured family plus seeded random subsets.
    pub fn family(&self, alg: &DynAlgebra) -> Sample {
        let ids: Vec<usize> = alg.carrier().collect();
        if self.is_exhaustive(alg) {
            let elems = (0u32..1 << ids.len())
                .map(|mask| {
                    alg.collect_ids(
                        ids.iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, &x)| x),
                    )
                })
                .collect();
            return Sample {
                elems,
                mode: Mode::Exhaustive,
            };
        }
        let mut seen = HashSet::new();
        let mut elems = Vec::new();
        let mut push = |e: DynElem, elems: &mut Vec<DynElem>| {
            if seen.insert(e.clone()) {
                elems.push(e);
            }
        };
        push(alg.empty(), &mut elems);
        push(alg.full(), &mut elems);
        for &x in &ids {
            push(alg.singleton(x), &mut elems);
        }
        let l = alg.lattice();
        let gens: Vec<usize> = l
            .elements()
            .map(|m| alg.monoid().proj(m))
            .filter(|p| alg.carrier.contains(*p))
            .collect();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                push(alg.collect_ids([a, b]), &mut elems);
            }
        }
        let base: Vec<DynElem> = elems.iter().take(128).cloned().collect();
        for w in base.windows(2) {
            push(alg.mul(&w[0], &w[1]), &mut elems);
            push(alg.star(&w[0]), &mut elems);
            push(alg.tilde(&w[0]), &mut elems);
        }
        let mut rng = self.rng(0x5EED);
        for _ in 0..self.samples {
            let size = rng.gen_range(0..=ids.len());
            let picked = index_sample(&mut rng, ids.len(), size);
            push(alg.collect_ids(picked.iter().map(|i| ids[i])), &mut elems);
        }
        Sample {
            elems,
            mode: Mode::Sampled,
        }
    }
}

/// All index tuples when there are at most `budget`, otherwise `budget`
/// seeded random ones. The flag says whether the list is exhaustive.
fn tuples<const K: usize>(
    n: usize,
    budget: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<[usize; K]>, bool) {
    let total = (n as u128).pow(K as u32);
    if n == 0 {
        return (Vec::new(), true);
    }
    if total <= budget as u128 {
        let mut out = Vec::with_capacity(total as usize);
        let mut t = [0usize; K];
        'outer: loop {
            out.push(t);
            for slot in (0..K).rev() {
                t[slot] += 1;
                if t[slot] < n {
                    continue 'outer;
                }
                t[slot] = 0;
            }
            break;
        }
        (out, true)
    } else {
        let out = (0..budget)
            .map(|_| std::array::from_fn(|_| rng.gen_range(0..n)))
            .collect();
        (out, false)
    }
}

fn mode_of(sample: Mode, exhaustive_tuples: bool) -> Mode {
    if sample == Mode::Exhaustive && exhaustive_tuples {
        Mode::Exhaustive
    } else {
        Mode::Sampled
    }
}

/// IDA1 (involutive unital quantale) and IDA2–IDA5 over the sample family.
pub fn verify_ida(alg: &DynAlgebra, policy: &SamplePolicy) -> ValidationReport {
    let l = alg.lattice();
    let mut r = ValidationReport::new(format!("IDA axioms on Γ({})", l.name()));
    let fam = policy.family(alg);
    let xs = &fam.elems;
    let d = |a: &DynElem| alg.describe(a);
    let mut rng = policy.rng(1);
    let (pairs, pairs_ex) = tuples::<2>(xs.len(), PAIR_BUDGET, &mut rng);
    let (triples, triples_ex) = tuples::<3>(xs.len(), TRIPLE_BUDGET, &mut rng);
    let pm = mode_of(fam.mode, pairs_ex);
    let tm = mode_of(fam.mode, triples_ex);
    let e = alg.unit();
    let zero = alg.empty();

    let mut assoc = Tally::new("IDA1 associativity", tm);
    let mut ldist = Tally::new("IDA1 left distributivity", tm);
    let mut rdist = Tally::new("IDA1 right distributivity", tm);
    for &[i, j, k] in &triples {
        let (x, y, z) = (&xs[i], &xs[j], &xs[k]);
        assoc.case(
            alg.mul(&alg.mul(x, y), z) == alg.mul(x, &alg.mul(y, z)),
            || format!("x = {}, y = {}, z = {}", d(x), d(y), d(z)),
        );
        let yz = alg.union(y, z);
        ldist.case(
            alg.mul(x, &yz) == alg.union(&alg.mul(x, y), &alg.mul(x, z)),
            || format!("x = {}, y = {}, z = {}", d(x), d(y), d(z)),
        );
        rdist.case(
            alg.mul(&yz, x) == alg.union(&alg.mul(y, x), &alg.mul(z, x)),
            || format!("x = {}, y = {}, z = {}", d(x), d(y), d(z)),
        );
    }
    for x in xs {
        ldist.case(alg.mul(x, &zero).is_empty(), || {
            format!("x ⊙ 0 ≠ 0 for x = {}", d(x))
        });
        rdist.case(alg.mul(&zero, x).is_empty(), || {
            format!("0 ⊙ x ≠ 0 for x = {}", d(x))
        });
    }
    r.push(assoc.finish());
    r.push(ldist.finish());
    r.push(rdist.finish());

    let mut unit = Tally::new("IDA1 unit", fam.mode);
    let mut inv = Tally::new("IDA1 involution", pm);
    let mut ida4 = Tally::new("IDA4", fam.mode);
    let mut closed = Tally::new("~~ closed form", fam.mode);
    for x in xs {
        unit.case(alg.mul(&e, x) == *x && alg.mul(x, &e) == *x, || {
            format!("x = {}", d(x))
        });
        inv.case(alg.star(&alg.star(x)) == *x, || {
            format!("x** ≠ x for x = {}", d(x))
        });
        let t = alg.tilde(x);
        ida4.case(alg.star(&t) == t, || format!("x = {}", d(x)));
        closed.case(alg.tilde_tilde(x).is_ok(), || {
            alg.tilde_tilde(x)
                .err()
                .map(|e| e.to_string())
                .unwrap_or_default()
        });
    }

    let mut ida2 = Tally::new("IDA2", pm);
    let mut ida3 = Tally::new("IDA3", pm);
    let mut ida5 = Tally::new("IDA5", pm);
    for &[i, j] in &pairs {
        let (x, y) = (&xs[i], &xs[j]);
        let w = || format!("x = {}, y = {}", d(x), d(y));
        inv.case(
            alg.star(&alg.mul(x, y)) == alg.mul(&alg.star(y), &alg.star(x)),
            w,
        );
        inv.case(
            alg.star(&alg.union(x, y)) == alg.union(&alg.star(x), &alg.star(y)),
            w,
        );
        let tty = alg.tilde(&alg.tilde(y));
        ida2.case(alg.tilde(&alg.mul(x, &tty)) == alg.tilde(&alg.mul(x, y)), w);
        let ttx = alg.tilde(&alg.tilde(x));
        ida3.case(
            alg.tilde(&alg.union(&ttx, &tty)) == alg.tilde(&alg.union(x, y)),
            w,
        );
        let lhs = alg.tilde(&alg.tilde(&alg.mul(&ttx, y)));
        let tx = alg.tilde(x);
        let rhs = alg.tilde(&alg.union(&tx, &alg.tilde(&alg.union(&tx, y))));
        ida5.case(lhs == rhs, w);
    }
    // IDA3 for the whole family at once, an arbitrary join.
    let all_tt = alg.union_all(
        xs.iter()
            .map(|x| alg.tilde(&alg.tilde(x)))
            .collect::<Vec<_>>()
            .iter(),
    );
    ida3.case(
        alg.tilde(&all_tt) == alg.tilde(&alg.union_all(xs.iter())),
        || "the whole sample family".into(),
    );
    ida3.case(alg.tilde(&zero) == alg.tilde(&zero), String::new);

    r.push(unit.finish());
    r.push(inv.finish());
    r.push(ida2.finish());
    r.push(ida3.finish());
    r.push(ida4.finish());
    r.push(ida5.finish());
    r.push(closed.finish());
    r
}

/// Monoid ids generated from the tests and `e` by products and involution.
pub fn test_closure(alg: &DynAlgebra) -> FixedBitSet {
    let mono = alg.monoid();
    let mut seen = alg.blank();
    let mut gens: Vec<usize> = vec![mono.unit()];
    let mut tests = BTreeSet::new();
    tests.insert(alg.tilde(&alg.empty()));
    for x in alg.carrier() {
        tests.insert(alg.tilde(&alg.singleton(x)));
    }
    gens.extend(tests.iter().flat_map(|t| t.to_vec()));
    let mut queue = Vec::new();
    for &g in &gens {
        if !seen.put(g) {
            queue.push(g);
        }
    }
    while let Some(a) = queue.pop() {
        let mut next = vec![mono.star(a)];
        next.extend(gens.iter().flat_map(|&g| [mono.mul(a, g), mono.mul(g, a)]));
        for b in next {
            if !seen.put(b) {
                queue.push(b);
            }
        }
    }
    seen
}

/// TODA1–TODA4 plus the atom and normal-form properties.
pub fn verify_toda(alg: &DynAlgebra, policy: &SamplePolicy) -> ValidationReport {
    let l = alg.lattice();
    let mono = alg.monoid();
    let mut r = ValidationReport::new(format!("TODA axioms on Γ({})", l.name()));
    let fam = policy.family(alg);
    let xs = &fam.elems;
    let d = |a: &DynElem| alg.describe(a);
    let st = Mode::Structural;

    r.push(match test_lattice(alg) {
        Ok(t) => Check::pass("TODA1", Mode::Exhaustive, t.oml().len() as u64),
        Err(DynError::Extraction(rep)) => {
            Check::fail("TODA1", Mode::Exhaustive, first_failure(&rep))
        }
        Err(e) => Check::fail("TODA1", Mode::Exhaustive, e.to_string()),
    });

    let closure = test_closure(alg);
    let mut toda2 = Tally::new("TODA2", fam.mode);
    for x in closure.ones() {
        toda2.case(alg.carrier.contains(x), || {
            format!(
                "{} is generated by the tests but missing from the carrier",
                alg.word(x)
            )
        });
    }
    for x in alg.carrier() {
        toda2.case(closure.contains(x), || {
            format!(
                "{} is in the carrier but not generated by the tests",
                alg.word(x)
            )
        });
    }
    let generated = DynElem { bits: closure };
    for a in xs {
        // Every element must come back as a union of generated singletons.
        let regen = alg.union_all(
            alg.normal_form(a)
                .iter()
                .filter(|s| s.is_subset(&generated)),
        );
        toda2.case(regen == *a, || format!("{} is not regenerated", d(a)));
    }
    r.push(toda2.finish());

    let mut rng = policy.rng(2);
    let (pairs, _) = tuples::<2>(xs.len(), PAIR_BUDGET, &mut rng);
    let mut toda3 = Tally::new("TODA3", st);
    for &[i, j] in &pairs {
        let (a, b) = (&xs[i], &xs[j]);
        let ja = alg.union_all(alg.normal_form(a).iter());
        let jb = alg.union_all(alg.normal_form(b).iter());
        toda3.case(
            (ja == jb) == (alg.normal_form(a) == alg.normal_form(b)),
            || format!("S = {}, T = {}", d(a), d(b)),
        );
    }
    r.push(toda3.finish());

    let mut toda4 = Tally::new("TODA4", Mode::Exhaustive);
    let ids: Vec<usize> = alg.carrier().collect();
    for (i, &s) in ids.iter().enumerate() {
        for &t in &ids[i + 1..] {
            let (a, b) = (alg.singleton(s), alg.singleton(t));
            toda4.case(alg.equiv_witness(&a, &b).is_some(), || {
                format!("{} ≡ {} but they differ", alg.word(s), alg.word(t))
            });
        }
    }
    r.push(toda4.finish());

    // Atoms of ⊑ over the family together with all singletons.
    let mut family: Vec<DynElem> = xs.clone();
    family.extend(ids.iter().map(|&x| alg.singleton(x)));
    family.sort();
    family.dedup();
    let atoms: BTreeSet<DynElem> = family
        .iter()
        .filter(|a| !a.is_empty())
        .filter(|a| {
            !family
                .iter()
                .any(|b| !b.is_empty() && b != *a && b.is_subset(a))
        })
        .cloned()
        .collect();
    let singles: BTreeSet<DynElem> = ids.iter().map(|&x| alg.singleton(x)).collect();
    let mut at = Tally::new("atoms are the singletons", st);
    at.case(atoms == singles, || {
        let extra = atoms
            .symmetric_difference(&singles)
            .next()
            .map(d)
            .unwrap_or_default();
        format!("atom sets differ at {extra}")
    });
    r.push(at.finish());

    let mut nf = Tally::new("normal form", fam.mode);
    let mut h = Tally::new("h is a bijection", fam.mode);
    for a in xs {
        let s = alg.normal_form(a);
        nf.case(
            alg.union_all(s.iter()) == *a && s.len() == a.len() && s.iter().all(|p| p.len() == 1),
            || format!("S_a does not rebuild a = {}", d(a)),
        );
        let ha = alg.h_map(a);
        nf.case(ha == s, || {
            format!("inclusion scan and split disagree on {}", d(a))
        });
        h.case(alg.union_all(ha.iter()) == *a, || {
            format!("⊔h(a) ≠ a for a = {}", d(a))
        });
        h.case(alg.h_map(&alg.union_all(ha.iter())) == ha, || {
            format!("h(⊔h(a)) ≠ h(a) for a = {}", d(a))
        });
    }
    r.push(nf.finish());
    r.push(h.finish());

    // Transported operations computed atom by atom.
    let mut tr = Tally::new("h intertwines operations", mode_of(fam.mode, true));
    let atom_id = |w: &DynElem| w.ids().next().expect("atom");
    tr.case(
        alg.h_map(&alg.unit()) == vec![alg.singleton(mono.unit())],
        || "unit".into(),
    );
    for &[i, j] in pairs.iter().take(PAIR_BUDGET / 4) {
        let (a, b) = (&xs[i], &xs[j]);
        let (ha, hb) = (alg.h_map(a), alg.h_map(b));
        let mut u: Vec<DynElem> = ha.iter().chain(hb.iter()).cloned().collect();
        u.sort();
        u.dedup();
        tr.case(alg.h_map(&alg.union(a, b)) == u, || {
            format!("union on {}, {}", d(a), d(b))
        });
        let mut p: Vec<DynElem> = ha
            .iter()
            .flat_map(|x| hb.iter().map(move |y| (atom_id(x), atom_id(y))))
            .map(|(x, y)| alg.singleton(mono.mul(x, y)))
            .collect();
        p.sort();
        p.dedup();
        tr.case(alg.h_map(&alg.mul(a, b)) == p, || {
            format!("product on {}, {}", d(a), d(b))
        });
    }
    for a in xs {
        let ha = alg.h_map(a);
        let mut s: Vec<DynElem> = ha
            .iter()
            .map(|x| alg.singleton(mono.star(atom_id(x))))
            .collect();
        s.sort();
        tr.case(alg.h_map(&alg.star(a)) == s, || format!("star on {}", d(a)));
        let top = l.join_all(ha.iter().map(|x| mono.at_top(atom_id(x))));
        let t = vec![alg.singleton(mono.proj(l.perp(top)))];
        tr.case(alg.h_map(&alg.tilde(a)) == t, || format!("~ on {}", d(a)));
    }
    r.push(tr.finish());
    r
}

/// Module axioms A1–A4 for `•`, and the `~~` homomorphism.
pub fn verify_module(alg: &DynAlgebra, policy: &SamplePolicy) -> ValidationReport {
    let l = alg.lattice();
    let mono = alg.monoid();
    let mut r = ValidationReport::new(format!("module structure on Γ({})", l.name()));
    let fam = policy.family(alg);
    let xs = &fam.elems;
    let d = |a: &DynElem| alg.describe(a);
    let lb = |x: Elem| l.label(x).to_string();
    let mut rng = policy.rng(3);
    let (pairs, pairs_ex) = tuples::<2>(xs.len(), PAIR_BUDGET, &mut rng);
    let pm = mode_of(fam.mode, pairs_ex);
    let tests: Vec<Elem> = l.elements().collect();

    let mut a1 = Tally::new("A1", fam.mode);
    let mut direct = Tally::new("action via set operations", fam.mode);
    // Action tables of the family, reused as the right-hand sides below.
    let table: Vec<Vec<Elem>> = xs
        .iter()
        .map(|k| tests.iter().map(|&v| alg.action(k, v)).collect())
        .collect();
    for (k, acts) in xs.iter().zip(&table) {
        for &v in &tests {
            direct.case(acts[v] == alg.action_direct(k, v), || {
                format!("k = {}, v = {}", d(k), lb(v))
            });
        }
        a1.case(acts[l.bot()] == l.bot(), || {
            format!("k • 0 ≠ 0 for k = {}", d(k))
        });
        for &x in &tests {
            for &y in &tests {
                let lhs = acts[l.join(x, y)];
                let rhs = l.join(acts[x], acts[y]);
                a1.case(lhs == rhs, || {
                    format!("k = {}, v = {} v {}", d(k), lb(x), lb(y))
                });
            }
        }
    }
    r.push(a1.finish());

    let mut a2 = Tally::new("A2", pm);
    let mut a3 = Tally::new("A3", pm);
    for &v in &tests {
        a2.case(alg.action(&alg.empty(), v) == l.bot(), || {
            format!("0 • {} ≠ 0", lb(v))
        });
    }
    for &[i, j] in &pairs {
        let (u, w) = (&xs[i], &xs[j]);
        let uw = alg.mul(u, w);
        let un = alg.union(u, w);
        for &v in &tests {
            let lhs = alg.action(&un, v);
            let rhs = l.join(table[i][v], table[j][v]);
            a2.case(lhs == rhs, || {
                format!("s = {}, t = {}, v = {}", d(u), d(w), lb(v))
            });
            let lhs = alg.action(&uw, v);
            let rhs = table[i][table[j][v]];
            a3.case(lhs == rhs, || {
                format!("u = {}, w = {}, v = {}", d(u), d(w), lb(v))
            });
        }
    }
    r.push(a2.finish());
    r.push(a3.finish());

    let mut a4 = Tally::new("A4", Mode::Exhaustive);
    for &v in &tests {
        a4.case(alg.action(&alg.unit(), v) == v, || {
            format!("e • {} = {}", lb(v), lb(alg.action(&alg.unit(), v)))
        });
    }
    r.push(a4.finish());

    let mut ttt = Tally::new("~~~v = ~v", fam.mode);
    for x in xs {
        ttt.case(alg.tilde(&alg.tilde_closed(x)) == alg.tilde(x), || {
            format!("v = {}", d(x))
        });
    }
    r.push(ttt.finish());

    let mut hj = Tally::new("~~ preserves joins", pm);
    let mut hm = Tally::new("~~ intertwines product and action", pm);
    let zero_test = alg.test(l.bot());
    hj.case(alg.tilde_closed(&alg.empty()) == zero_test, || {
        "~~0 ≠ {pi_0}".into()
    });
    for &[i, j] in &pairs {
        let (x, y) = (&xs[i], &xs[j]);
        let lhs = alg.tilde_closed(&alg.union(x, y));
        let rhs = alg.tilde_closed(&alg.union(&alg.tilde_closed(x), &alg.tilde_closed(y)));
        hj.case(lhs == rhs, || format!("x = {}, y = {}", d(x), d(y)));
        let lhs = alg.as_test(&alg.tilde_closed(&alg.mul(x, y)));
        let v = alg.as_test(&alg.tilde_closed(y)).expect("test");
        hm.case(lhs == Some(alg.action(x, v)), || {
            format!("k = {}, x = {}", d(x), d(y))
        });
    }
    let mut onto = Tally::new("~~ is onto the tests", Mode::Exhaustive);
    for &v in &tests {
        onto.case(alg.tilde_closed(&alg.test(v)) == alg.test(v), || {
            format!("{} is not hit", lb(v))
        });
    }
    r.push(hj.finish());
    r.push(hm.finish());
    r.push(onto.finish());

    let mut pi = Tally::new("u • (-) = pi_u", Mode::Exhaustive);
    for &u in &tests {
        let tu = alg.test(u);
        for &v in &tests {
            let got = alg.action(&tu, v);
            let want = l.project(u, v);
            pi.case(got == want, || {
                format!(
                    "{{pi_{}}} • {} = {} but pi_{}({}) = {}",
                    lb(u),
                    lb(v),
                    lb(got),
                    lb(u),
                    lb(v),
                    lb(want)
                )
            });
        }
    }
    r.push(pi.finish());

    // Equivalent pairs: pad with the zero map, plus collisions in the family.
    let zero = alg.singleton(mono.zero());
    let mut eq_pairs: Vec<(DynElem, DynElem)> = xs
        .iter()
        .take(128)
        .map(|a| (a.clone(), alg.union(a, &zero)))
        .collect();
    let mut by_sig: HashMap<Vec<Elem>, usize> = HashMap::new();
    for (i, a) in xs.iter().enumerate() {
        let sig: Vec<Elem> = tests.iter().map(|&v| alg.action_direct(a, v)).collect();
        if let Some(&j) = by_sig.get(&sig) {
            if eq_pairs.len() < 256 {
                eq_pairs.push((xs[j].clone(), a.clone()));
            }
        } else {
            by_sig.insert(sig, i);
        }
    }
    let mut cong = Tally::new("≡ is a congruence", Mode::Sampled);
    let others: Vec<&DynElem> = xs.iter().take(32).collect();
    for (s, t) in &eq_pairs {
        cong.case(alg.equiv(s, t), || {
            format!("{} and {} were expected equivalent", d(s), d(t))
        });
        for &q in &others {
            let w = || format!("s = {}, t = {}, r = {}", d(s), d(t), d(q));
            cong.case(alg.equiv(&alg.mul(q, s), &alg.mul(q, t)), w);
            cong.case(alg.equiv(&alg.mul(s, q), &alg.mul(t, q)), w);
            cong.case(alg.equiv(&alg.union(s, q), &alg.union(t, q)), w);
        }
    }
    r.push(cong.finish());
    r
}

/// All three suites plus the semi-Foulis verdict.
pub fn verify_all(alg: &DynAlgebra, policy: &SamplePolicy) -> ValidationReport {
    let l = alg.lattice();
    let mut r = ValidationReport::new(format!("dynamic algebra Γ({})", l.name()));
    let ida = verify_ida(alg, policy);
    let toda = verify_toda(alg, policy);
    let sfda = ida.all_pass() && toda.check("TODA1").is_some_and(|c| c.passed());
    r.extend(ida);
    r.push(if sfda {
        Check::pass("SFDA", Mode::Structural, 1)
    } else {
        Check::fail("SFDA", Mode::Structural, "IDA suite or TODA1 failed")
    });
    r.extend(toda);
    r.extend(verify_module(alg, policy));
    r
}

/// An element whose `~~` image is a singleton set it is not equivalent to,
/// with the test that separates them.
pub fn tilde_equiv_counterexample(
    alg: &DynAlgebra,
    policy: &SamplePolicy,
) -> Option<(DynElem, TestElem)> {
    policy
        .family(alg)
        .elems
        .into_iter()
        .filter(|a| a.len() > 1)
        .find_map(|a| {
            let tt = alg.tilde_closed(&a);
            alg.equiv_witness(&a, &tt).map(|v| (a, v))
        })
}

/// Human summary of a family, used in reports.
pub fn describe_all(alg: &DynAlgebra, xs: &[DynElem]) -> String {
    let mut s = String::new();
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{}", alg.describe(x));
    }
    s
}
