//! Linear endomaps of a finite orthomodular lattice and the Foulis quantale
//! they form.
//!
//! A map `f` is linear when some `g` satisfies `f(x) ⊥ y ⇔ x ⊥ g(y)`. The
//! candidate `g` is always `y ↦ (f_⊣(y⊥))⊥` where `f_⊣` is the order adjoint,
//! so linearity is decided by computing it and checking the biconditional.

use crate::config::DEFAULT_SEED;
use crate::oml::{check_ortho_iso, validate_oml, Elem, LatticeError, Oml, OrthoIso};
use crate::report::{Check, Mode, Tally, ValidationReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

pub use crate::config::DEFAULT_LIN_CAP;

/// Largest lattice the `n^n` brute-force oracle accepts.
pub const BRUTE_FORCE_MAX: usize = 6;
/// Triple quantifiers run exhaustively up to this many cases, then sample.
const TRIPLE_BUDGET: u64 = 1 << 21;
const TRIPLE_SAMPLES: u64 = 1 << 16;
/// Pair quantifiers over a carrier run exhaustively up to this many cases.
const PAIR_BUDGET: u64 = 1 << 22;
const PAIR_SAMPLES: u64 = 1 << 16;
/// Carriers up to this size get every subset for the indexed-family checks.
const SUBSET_CARRIER_MAX: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("maps are defined on different lattices ({0} and {1})")]
    LatticeMismatch(String, String),
    #[error("table has {got} entries but the lattice has {want} elements")]
    SizeMismatch { got: usize, want: usize },
    #[error("table entry {value} is out of range for {n} elements")]
    OutOfRange { value: Elem, n: usize },
    #[error("map does not preserve joins: {0}")]
    NotJoinPreserving(String),
    #[error("more than {cap} candidate maps (search space up to {estimate})")]
    SizeExceeded { estimate: u128, cap: u64 },
    #[error("brute force is limited to {max} elements, lattice has {n}")]
    TooLargeForBruteForce { n: usize, max: usize },
    #[error("carrier is not closed: {0}")]
    NotClosed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A map `M -> M` given by its table.
#[derive(Clone)]
pub struct EndoMap {
    l: Arc<Oml>,
    tbl: Vec<Elem>,
}

impl PartialEq for EndoMap {
    fn eq(&self, other: &Self) -> bool {
        self.tbl == other.tbl && same_lattice(&self.l, &other.l)
    }
}

impl Eq for EndoMap {}

impl fmt::Debug for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

fn same_lattice(a: &Arc<Oml>, b: &Arc<Oml>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl EndoMap {
    pub fn new(l: Arc<Oml>, tbl: Vec<Elem>) -> Result<Self, LinError> {
        if tbl.len() != l.len() {
            return Err(LinError::SizeMismatch {
                got: tbl.len(),
                want: l.len(),
            });
        }
        if let Some(&value) = tbl.iter().find(|&&v| v >= l.len()) {
            return Err(LinError::OutOfRange { value, n: l.len() });
        }
        Ok(EndoMap { l, tbl })
    }

    pub fn identity(l: Arc<Oml>) -> Self {
        let tbl = l.elements().collect();
        EndoMap { l, tbl }
    }

    pub fn constant(l: Arc<Oml>, c: Elem) -> Self {
        let tbl = vec![c; l.len()];
        EndoMap { l, tbl }
    }

    pub fn zero(l: Arc<Oml>) -> Self {
        let b = l.bot();
        Self::constant(l, b)
    }

    pub fn sasaki(l: Arc<Oml>, m: Elem) -> Self {
        let tbl = l.projection_table(m);
        EndoMap { l, tbl }
    }

    pub fn hook(l: Arc<Oml>, m: Elem) -> Self {
        let tbl = l.elements().map(|n| l.hook(m, n)).collect();
        EndoMap { l, tbl }
    }

    pub fn lattice(&self) -> &Arc<Oml> {
        &self.l
    }

    pub fn table(&self) -> &[Elem] {
        &self.tbl
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.tbl[x]
    }

    pub fn is_monotone(&self) -> bool {
        let l = &self.l;
        l.elements()
            .all(|x| l.up_set(x).ones().all(|y| l.leq(self.tbl[x], self.tbl[y])))
    }

    /// First violation of `f(0) = 0` or `f(x ∨ y) = f(x) ∨ f(y)`.
    ///
    /// On a finite lattice these two cover every subset join.
    pub fn join_violation(&self) -> Option<(Elem, Elem)> {
        let l = &self.l;
        if self.tbl[l.bot()] != l.bot() {
            return Some((l.bot(), l.bot()));
        }
        for x in l.elements() {
            for y in (x + 1)..l.len() {
                if self.tbl[l.join(x, y)] != l.join(self.tbl[x], self.tbl[y]) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn compose(&self, g: &EndoMap) -> EndoMap {
        EndoMap {
            l: self.l.clone(),
            tbl: g.tbl.iter().map(|&x| self.tbl[x]).collect(),
        }
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .l
            .elements()
            .map(|x| format!("{}->{}", self.l.label(x), self.l.label(self.tbl[x])))
            .collect();
        format!("[{}]", parts.join(" "))
    }
}

/// The right order adjoint `f_⊣(y) = ⋁{x : f(x) ≤ y}`.
pub fn order_adjoint(f: &EndoMap) -> Result<EndoMap, LinError> {
    let l = &f.l;
    if let Some((x, y)) = f.join_violation() {
        return Err(LinError::NotJoinPreserving(format!(
            "{{{}, {}}}",
            l.label(x),
            l.label(y)
        )));
    }
    let tbl = l
        .elements()
        .map(|y| l.join_all(l.elements().filter(|&x| l.leq(f.tbl[x], y))))
        .collect();
    Ok(EndoMap { l: l.clone(), tbl })
}

/// Why a map failed the linearity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotLinear {
    pub x: Elem,
    pub y: Elem,
    pub reason: String,
}

impl fmt::Display for NotLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.reason)
    }
}

/// A linear map together with its orthogonality adjoint.
#[derive(Clone, PartialEq, Eq)]
pub struct LinMap {
    base: EndoMap,
    adj: EndoMap,
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base.describe())
    }
}

/// Test linearity of `f` and return it with its adjoint.
pub fn orth_adjoint(f: &EndoMap) -> Result<LinMap, NotLinear> {
    let l = &f.l;
    let lb = |x| l.label(x);
    let upper = order_adjoint(f).map_err(|_| {
        let (x, y) = f.join_violation().unwrap_or((0, 0));
        NotLinear {
            x,
            y,
            reason: format!("does not preserve the join of {} and {}", lb(x), lb(y)),
        }
    })?;
    let adj: Vec<Elem> = l.elements().map(|y| l.perp(upper.tbl[l.perp(y)])).collect();
    for x in l.elements() {
        for y in l.elements() {
            if l.orthogonal(f.tbl[x], y) != l.orthogonal(x, adj[y]) {
                return Err(NotLinear {
                    x,
                    y,
                    reason: format!(
                        "f({}) ⊥ {} disagrees with {} ⊥ f*({})",
                        lb(x),
                        lb(y),
                        lb(x),
                        lb(y)
                    ),
                });
            }
        }
    }
    Ok(LinMap {
        base: f.clone(),
        adj: EndoMap {
            l: l.clone(),
            tbl: adj,
        },
    })
}

impl LinMap {
    pub fn identity(l: Arc<Oml>) -> Self {
        let id = EndoMap::identity(l);
        LinMap {
            base: id.clone(),
            adj: id,
        }
    }

    pub fn zero(l: Arc<Oml>) -> Self {
        let z = EndoMap::zero(l);
        LinMap {
            base: z.clone(),
            adj: z,
        }
    }

    /// The Sasaki projection onto `m`, which is its own adjoint.
    pub fn sasaki(l: Arc<Oml>, m: Elem) -> Self {
        let p = EndoMap::sasaki(l, m);
        debug_assert!(orth_adjoint(&p).is_ok_and(|f| f.adj == p));
        LinMap {
            base: p.clone(),
            adj: p,
        }
    }

    /// An ortholattice automorphism, whose adjoint is its inverse.
    pub fn from_automorphism(l: Arc<Oml>, g: &OrthoIso) -> Option<Self> {
        let inv = g.inverse()?;
        let base = EndoMap::new(l.clone(), g.map().to_vec()).ok()?;
        let adj = EndoMap::new(l, inv.map().to_vec()).ok()?;
        debug_assert!(orth_adjoint(&base).is_ok_and(|f| f.adj == adj));
        Some(LinMap { base, adj })
    }

    pub fn base(&self) -> &EndoMap {
        &self.base
    }

    pub fn adj(&self) -> &EndoMap {
        &self.adj
    }

    pub fn lattice(&self) -> &Arc<Oml> {
        &self.base.l
    }

    pub fn table(&self) -> &[Elem] {
        &self.base.tbl
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.base.tbl[x]
    }

    /// The involution: swap a map with its adjoint.
    pub fn star(&self) -> LinMap {
        LinMap {
            base: self.adj.clone(),
            adj: self.base.clone(),
        }
    }

    /// `f⊥ = π_{f(1)⊥}`.
    pub fn perp(&self) -> LinMap {
        let l = self.lattice();
        LinMap::sasaki(l.clone(), l.perp(self.apply(l.top())))
    }

    /// `[f] = π_{f*(1)⊥}`.
    pub fn bracket(&self) -> LinMap {
        let l = self.lattice();
        LinMap::sasaki(l.clone(), l.perp(self.adj.tbl[l.top()]))
    }

    /// `self ∘ g` (apply `g` first), with adjoint `g* ∘ self*`.
    pub fn then_after(&self, g: &LinMap) -> LinMap {
        LinMap {
            base: self.base.compose(&g.base),
            adj: g.adj.compose(&self.adj),
        }
    }

    /// Pointwise join; the adjoint is the pointwise join of the adjoints.
    pub fn join(&self, g: &LinMap) -> LinMap {
        let l = self.lattice();
        let pj = |a: &EndoMap, b: &EndoMap| EndoMap {
            l: l.clone(),
            tbl: l.elements().map(|x| l.join(a.tbl[x], b.tbl[x])).collect(),
        };
        LinMap {
            base: pj(&self.base, &g.base),
            adj: pj(&self.adj, &g.adj),
        }
    }

    pub fn is_zero(&self) -> bool {
        let b = self.lattice().bot();
        self.base.tbl.iter().all(|&x| x == b)
    }

    /// The quantale relation `self ≤ t ⇔ self = t ⊙ self`.
    pub fn below(&self, t: &LinMap) -> bool {
        self.base.tbl.iter().all(|&x| t.base.tbl[x] == x)
    }

    /// The pointwise order `⊑`.
    pub fn pointwise_le(&self, t: &LinMap) -> bool {
        let l = self.lattice();
        l.elements().all(|x| l.leq(self.apply(x), t.apply(x)))
    }

    pub fn describe(&self) -> String {
        self.base.describe()
    }
}

/// `f ⊙ g = f ∘ g`.
pub fn compose(f: &LinMap, g: &LinMap) -> Result<LinMap, LinError> {
    check_same(f.lattice(), g.lattice())?;
    let h = f.then_after(g);
    debug_assert!(orth_adjoint(&h.base).is_ok_and(|k| k.adj == h.adj));
    Ok(h)
}

/// Pointwise join of a family; the empty family gives the zero map.
pub fn pointwise_join(l: &Arc<Oml>, fs: &[LinMap]) -> Result<LinMap, LinError> {
    let mut acc = LinMap::zero(l.clone());
    for f in fs {
        check_same(l, f.lattice())?;
        acc = acc.join(f);
    }
    debug_assert!(orth_adjoint(&acc.base).is_ok_and(|k| k.adj == acc.adj));
    Ok(acc)
}

/// `f⊥ = π_{f(1)⊥}`; the bracket `[f]` is `foulis_perp(f*)`.
pub fn foulis_perp(f: &LinMap) -> LinMap {
    f.perp()
}

pub fn bracket(f: &LinMap) -> LinMap {
    f.bracket()
}

fn check_same(a: &Arc<Oml>, b: &Arc<Oml>) -> Result<(), LinError> {
    if same_lattice(a, b) {
        Ok(())
    } else {
        Err(LinError::LatticeMismatch(a.name().into(), b.name().into()))
    }
}

/// Every linear endomap of `l`, sorted by table.
///
/// A join-preserving map is fixed by its values on join-irreducibles, which
/// must form a monotone assignment; each such assignment is extended by joins
/// and then tested. At most `cap` assignments are examined.
pub fn enumerate_lin(l: &Arc<Oml>, cap: u64) -> Result<Vec<LinMap>, LinError> {
    let mut ji = l.join_irreducibles();
    ji.sort_by_key(|&j| (l.down_set(j).count_ones(..), j));
    let n = l.len();
    let estimate = (n as u128)
        .checked_pow(ji.len() as u32)
        .unwrap_or(u128::MAX);
    let mut assign = vec![usize::MAX; ji.len()];
    let mut count = 0u64;
    let mut out = Vec::new();
    let mut exceeded = false;

    #[allow(clippy::too_many_arguments)]
    fn go(
        l: &Arc<Oml>,
        ji: &[Elem],
        pos: usize,
        assign: &mut [Elem],
        count: &mut u64,
        cap: u64,
        exceeded: &mut bool,
        out: &mut Vec<LinMap>,
    ) {
        if *exceeded {
            return;
        }
        if pos == ji.len() {
            *count += 1;
            if *count > cap {
                *exceeded = true;
                return;
            }
            let tbl: Vec<Elem> = l
                .elements()
                .map(|x| {
                    l.join_all(
                        ji.iter()
                            .zip(assign.iter())
                            .filter(|(&j, _)| l.leq(j, x))
                            .map(|(_, &v)| v),
                    )
                })
                .collect();
            let f = EndoMap { l: l.clone(), tbl };
            if let Ok(lin) = orth_adjoint(&f) {
                out.push(lin);
            }
            return;
        }
        let j = ji[pos];
        for v in l.elements() {
            // Monotone on join-irreducibles already assigned below j.
            let ok = ji[..pos]
                .iter()
                .zip(assign.iter())
                .all(|(&i, &w)| !l.leq(i, j) || l.leq(w, v));
            if ok {
                assign[pos] = v;
                go(l, ji, pos + 1, assign, count, cap, exceeded, out);
            }
        }
        assign[pos] = usize::MAX;
    }

    go(
        l,
        &ji,
        0,
        &mut assign,
        &mut count,
        cap,
        &mut exceeded,
        &mut out,
    );
    if exceeded {
        return Err(LinError::SizeExceeded { estimate, cap });
    }
    out.sort_by(|a, b| a.table().cmp(b.table()));
    Ok(out)
}

/// Reference oracle: test all `n^n` tables.
pub fn brute_force_lin(l: &Arc<Oml>) -> Result<Vec<LinMap>, LinError> {
    let n = l.len();
    if n > BRUTE_FORCE_MAX {
        return Err(LinError::TooLargeForBruteForce {
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    let mut tbl = vec![0; n];
    let mut out = Vec::new();
    loop {
        let f = EndoMap {
            l: l.clone(),
            tbl: tbl.clone(),
        };
        if let Ok(lin) = orth_adjoint(&f) {
            out.push(lin);
        }
        // Odometer in lexicographic order.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            tbl[i] += 1;
            if tbl[i] < n {
                break;
            }
            tbl[i] = 0;
        }
    }
}

/// Idempotence, self-adjointness, image and value at 1 of every Sasaki
/// projection, and agreement of its order adjoint with the Sasaki hook.
pub fn verify_sasaki_characterization(l: &Arc<Oml>) -> ValidationReport {
    let mut r = ValidationReport::new(format!("Sasaki projections of {}", l.name()));
    let ex = Mode::Exhaustive;
    let mut idem = Tally::new("idempotent", ex);
    let mut selfadj = Tally::new("self-adjoint", ex);
    let mut image = Tally::new("image is down-set", ex);
    let mut at_top = Tally::new("value at top", ex);
    let mut hook = Tally::new("order adjoint is hook", ex);
    for m in l.elements() {
        let p = EndoMap::sasaki(l.clone(), m);
        let lm = l.label(m);
        idem.case(p.compose(&p) == p, || format!("m = {lm}"));
        selfadj.case(orth_adjoint(&p).is_ok_and(|f| f.adj == p), || {
            format!("m = {lm}")
        });
        let img: BTreeSet<Elem> = p.tbl.iter().copied().collect();
        let down: BTreeSet<Elem> = l.down_set(m).ones().collect();
        image.case(img == down, || format!("m = {lm}"));
        at_top.case(p.apply(l.top()) == m, || format!("m = {lm}"));
        hook.case(
            order_adjoint(&p).is_ok_and(|h| h == EndoMap::hook(l.clone(), m)),
            || format!("m = {lm}"),
        );
    }
    for t in [idem, selfadj, image, at_top, hook] {
        r.push(t.finish());
    }
    r
}

/// `π_m(x) ≤ y ⇔ x ≤ π^m(y)` for every triple.
pub fn verify_galois(l: &Oml) -> ValidationReport {
    let mut r = ValidationReport::new(format!("Galois adjunction on {}", l.name()));
    let mut t = Tally::new("projection left adjoint to hook", Mode::Exhaustive);
    for m in l.elements() {
        for x in l.elements() {
            let px = l.project(m, x);
            for y in l.elements() {
                t.case(l.leq(px, y) == l.leq(x, l.hook(m, y)), || {
                    format!(
                        "(m, x, y) = ({}, {}, {})",
                        l.label(m),
                        l.label(x),
                        l.label(y)
                    )
                });
            }
        }
    }
    r.push(t.finish());
    r
}

/// Triples `u ≤ v`, `x` with `π_u(x) ≰ π_v(x)`, in index order.
pub fn nonmonotone_triples(l: &Oml) -> Vec<(Elem, Elem, Elem)> {
    let mut out = Vec::new();
    for u in l.elements() {
        for v in l.up_set(u).ones() {
            for x in l.elements() {
                if !l.leq(l.project(u, x), l.project(v, x)) {
                    out.push((u, v, x));
                }
            }
        }
    }
    out
}

/// Structural facts about a full enumeration of Lin(M): involution,
/// anti-multiplicativity of `*`, brackets are exactly the Sasaki projections,
/// and Sasaki projections are characterized among all linear maps.
pub fn verify_lin_invariants(l: &Arc<Oml>, maps: &[LinMap]) -> ValidationReport {
    verify_lin_invariants_seeded(l, maps, DEFAULT_SEED)
}

/// [`verify_lin_invariants`] with an explicit seed for sampled pairs.
pub fn verify_lin_invariants_seeded(l: &Arc<Oml>, maps: &[LinMap], seed: u64) -> ValidationReport {
    let mut r = ValidationReport::new(format!("Lin({}) invariants", l.name()));
    let ex = Mode::Exhaustive;
    let mut inv = Tally::new("adjoint is an involution", ex);
    for f in maps {
        inv.case(orth_adjoint(&f.adj).is_ok_and(|g| g.adj == f.base), || {
            f.describe()
        });
    }
    r.push(inv.finish());

    let m = maps.len();
    let exhaustive = (m as u64).pow(2) <= PAIR_BUDGET;
    let mut anti = Tally::new(
        "(f g)* = g* f*",
        if exhaustive { ex } else { Mode::Sampled },
    );
    let mut pair = |f: &LinMap, g: &LinMap| {
        let fg = f.base.compose(&g.base);
        anti.case(
            orth_adjoint(&fg).is_ok_and(|h| h.adj == g.adj.compose(&f.adj)),
            || format!("{} ; {}", f.describe(), g.describe()),
        );
    };
    if exhaustive {
        for f in maps {
            for g in maps {
                pair(f, g);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..PAIR_SAMPLES {
            pair(&maps[rng.gen_range(0..m)], &maps[rng.gen_range(0..m)]);
        }
    }
    r.push(anti.finish());

    let brackets: BTreeSet<Vec<Elem>> = maps.iter().map(|f| f.bracket().table().to_vec()).collect();
    let projections: BTreeSet<Vec<Elem>> = l.elements().map(|m| l.projection_table(m)).collect();
    r.push(if brackets == projections {
        Check::pass("brackets are the Sasaki projections", ex, maps.len() as u64)
    } else {
        Check::fail(
            "brackets are the Sasaki projections",
            ex,
            format!(
                "{} brackets vs {} projections",
                brackets.len(),
                projections.len()
            ),
        )
    });

    let mut ch = Tally::new("Sasaki characterization", ex);
    for f in maps {
        let top = f.apply(l.top());
        let idem = f.base.compose(&f.base) == f.base;
        let selfadj = f.adj == f.base;
        let img: BTreeSet<Elem> = f.table().iter().copied().collect();
        let down: BTreeSet<Elem> = l.down_set(top).ones().collect();
        if idem && selfadj && img == down {
            ch.case(f.table() == l.projection_table(top).as_slice(), || {
                f.describe()
            });
        }
    }
    r.push(ch.finish());
    r
}

/// Index of carrier maps by table, plus helpers shared by the verifiers.
struct Carrier<'a> {
    maps: &'a [LinMap],
    index: HashMap<&'a [Elem], usize>,
}

impl<'a> Carrier<'a> {
    fn new(maps: &'a [LinMap]) -> Self {
        let index = maps
            .iter()
            .enumerate()
            .map(|(i, f)| (f.table(), i))
            .collect();
        Carrier { maps, index }
    }

    fn contains(&self, f: &LinMap) -> bool {
        self.index.contains_key(f.table())
    }

    /// First operation whose result leaves the carrier.
    fn closure_gap(&self, l: &Arc<Oml>) -> Option<String> {
        if !self.contains(&LinMap::zero(l.clone())) {
            return Some("zero map missing".into());
        }
        if !self.contains(&LinMap::identity(l.clone())) {
            return Some("identity missing".into());
        }
        for f in self.maps {
            for (op, g) in [
                ("*", f.star()),
                ("perp", f.perp()),
                ("bracket", f.bracket()),
            ] {
                if !self.contains(&g) {
                    return Some(format!("{op} of {}", f.describe()));
                }
            }
            for g in self.maps {
                if !self.contains(&f.then_after(g)) {
                    return Some(format!("{} ∘ {}", f.describe(), g.describe()));
                }
                if !self.contains(&f.join(g)) {
                    return Some(format!("{} ⊔ {}", f.describe(), g.describe()));
                }
            }
        }
        None
    }
}

/// Iterate triples exhaustively within budget, otherwise a seeded sample.
fn for_triples(m: usize, seed: u64, mut body: impl FnMut(usize, usize, usize)) -> Mode {
    let total = (m as u64).pow(3);
    if total <= TRIPLE_BUDGET {
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    body(a, b, c);
                }
            }
        }
        Mode::Exhaustive
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..TRIPLE_SAMPLES {
            body(
                rng.gen_range(0..m),
                rng.gen_range(0..m),
                rng.gen_range(0..m),
            );
        }
        Mode::Sampled
    }
}

/// Quantale, involution and Foulis axioms over a carrier of linear maps.
///
/// Equalities are checked on computed tables, so they are meaningful even on
/// a carrier that is not closed. The existential in FQ3 and O3 searches the
/// carrier, so on a carrier that is not closed they are reported inconclusive
/// unless a genuine counterexample turns up.
pub fn verify_foulis(l: &Arc<Oml>, maps: &[LinMap]) -> ValidationReport {
    verify_foulis_seeded(l, maps, DEFAULT_SEED)
}

/// [`verify_foulis`] with an explicit seed for the sampled triples.
pub fn verify_foulis_seeded(l: &Arc<Oml>, maps: &[LinMap], seed: u64) -> ValidationReport {
    let mut r = ValidationReport::new(format!(
        "Foulis quantale axioms on {} maps over {}",
        maps.len(),
        l.name()
    ));
    let q = Carrier::new(maps);
    let m = maps.len();
    let gap = q.closure_gap(l);
    let ex = Mode::Exhaustive;
    let e = LinMap::identity(l.clone());
    let zero = LinMap::zero(l.clone());
    let d = |f: &LinMap| f.describe();

    // Q1 and Q2/Q3 for binary joins.
    let mut assoc = Tally::new("Q1 associativity", ex);
    let mut ldist = Tally::new("Q2 left distributivity", ex);
    let mut rdist = Tally::new("Q3 right distributivity", ex);
    let mode = for_triples(m, seed, |a, b, c| {
        let (fa, fb, fc) = (&maps[a], &maps[b], &maps[c]);
        assoc.case(
            fa.then_after(&fb.then_after(fc)) == fa.then_after(fb).then_after(fc),
            || format!("({}, {}, {})", d(fa), d(fb), d(fc)),
        );
        ldist.case(
            fa.then_after(&fb.join(fc)) == fa.then_after(fb).join(&fa.then_after(fc)),
            || format!("({}, {}, {})", d(fa), d(fb), d(fc)),
        );
        rdist.case(
            fb.join(fc).then_after(fa) == fb.then_after(fa).join(&fc.then_after(fa)),
            || format!("({}, {}, {})", d(fa), d(fb), d(fc)),
        );
    });
    // Empty and full joins.
    let all = pointwise_join(l, maps).expect("carrier maps share the lattice");
    for f in maps {
        ldist.case(f.then_after(&zero) == zero, || format!("{} ⊙ 0", d(f)));
        rdist.case(zero.then_after(f) == zero, || format!("0 ⊙ {}", d(f)));
        let left: Vec<LinMap> = maps.iter().map(|g| f.then_after(g)).collect();
        let right: Vec<LinMap> = maps.iter().map(|g| g.then_after(f)).collect();
        ldist.case(
            f.then_after(&all) == pointwise_join(l, &left).unwrap(),
            || format!("{} ⊙ ⊔Q", d(f)),
        );
        rdist.case(
            all.then_after(f) == pointwise_join(l, &right).unwrap(),
            || format!("⊔Q ⊙ {}", d(f)),
        );
    }
    for t in [assoc, ldist, rdist] {
        let mut c = t.finish();
        if c.passed() {
            c.mode = mode;
        }
        r.push(c);
    }

    let mut unit = Tally::new("unit", ex);
    for f in maps {
        unit.case(f.then_after(&e) == *f && e.then_after(f) == *f, || d(f));
    }
    r.push(unit.finish());

    let mut inv = Tally::new("involution", ex);
    inv.case(e.star() == e && zero.star() == zero, || "e* or 0*".into());
    let all_star: Vec<LinMap> = maps.iter().map(LinMap::star).collect();
    inv.case(all.star() == pointwise_join(l, &all_star).unwrap(), || {
        "(⊔Q)*".into()
    });
    for f in maps {
        inv.case(f.star().star() == *f, || format!("{}**", d(f)));
        for g in maps {
            inv.case(
                f.then_after(g).star() == g.star().then_after(&f.star()),
                || format!("({} ⊙ {})*", d(f), d(g)),
            );
            inv.case(f.join(g).star() == f.star().join(&g.star()), || {
                format!("({} ⊔ {})*", d(f), d(g))
            });
        }
    }
    r.push(inv.finish());

    let mut fq1 = Tally::new("FQ1 bracket is a self-adjoint idempotent", ex);
    let mut o1 = Tally::new("O1 perp is a self-adjoint idempotent", ex);
    for f in maps {
        let b = f.bracket();
        fq1.case(b.then_after(&b) == b && b.star() == b, || d(f));
        let p = f.perp();
        o1.case(p.then_after(&p) == p && p.star() == p, || d(f));
    }
    r.push(fq1.finish());
    r.push(o1.finish());

    let mut fq2 = Tally::new("FQ2 [e] = 0", ex);
    fq2.case(e.bracket() == zero, || e.bracket().describe());
    r.push(fq2.finish());
    let mut o2 = Tally::new("O2 e⊥ = 0", ex);
    o2.case(e.perp() == zero, || e.perp().describe());
    r.push(o2.finish());

    // FQ3: s ⊙ x = 0 ⇔ ∃y. x = [s] ⊙ y;  O3: s* ⊙ x = 0 ⇔ ∃y. x = s⊥ ⊙ y.
    for (name, lhs, factor) in [
        (
            "FQ3 annihilator",
            (|s: &LinMap, x: &LinMap| s.then_after(x).is_zero()) as fn(&LinMap, &LinMap) -> bool,
            LinMap::bracket as fn(&LinMap) -> LinMap,
        ),
        (
            "O3 orthogonality",
            |s: &LinMap, x: &LinMap| s.star().then_after(x).is_zero(),
            LinMap::perp,
        ),
    ] {
        let mut genuine: Option<String> = None;
        let mut missing: Option<String> = None;
        let mut cases = 0u64;
        for s in maps {
            let k = factor(s);
            let reach: HashSet<Vec<Elem>> = maps
                .iter()
                .map(|y| k.then_after(y).table().to_vec())
                .collect();
            for x in maps {
                cases += 1;
                let orth = lhs(s, x);
                let exists = reach.contains(x.table());
                if exists && !orth && genuine.is_none() {
                    genuine = Some(format!(
                        "s = {}, x = {}: x factors but s does not annihilate it",
                        d(s),
                        d(x)
                    ));
                }
                if orth && !exists && missing.is_none() {
                    missing = Some(format!(
                        "s = {}, x = {}: no factor y in the carrier",
                        d(s),
                        d(x)
                    ));
                }
            }
        }
        r.push(match (genuine, missing, &gap) {
            (Some(w), _, _) => Check::fail(name, ex, w),
            (None, Some(w), None) => Check::fail(name, ex, w),
            (None, w, Some(g)) => Check::inconclusive(
                name,
                match w {
                    Some(w) => format!("carrier not closed ({g}); {w}"),
                    None => format!("carrier not closed ({g})"),
                },
            ),
            (None, None, None) => Check::pass(name, ex, cases),
        });
    }

    let mut star1 = Tally::new("(*) annihilation", ex);
    let mut star2 = Tally::new("(**) antitone", ex);
    let mut star3 = Tally::new("(***) symmetry", ex);
    let mut item2 = Tally::new("identity: (x ⊙ y⊥⊥)⊥ = (x ⊙ y)⊥", ex);
    let mut item4 = Tally::new("identity: (x⊥⊥ ⊙ y)⊥⊥ = (x⊥ ⊔ (x⊥ ⊔ y)⊥)⊥", ex);
    for rr in maps {
        let rp = rr.perp();
        for t in maps {
            let a = rr.star().then_after(t).is_zero();
            let b = *t == rp.then_after(t);
            let c = t.below(&rp);
            star1.case(a == b && b == c, || format!("r = {}, t = {}", d(rr), d(t)));
            if t.below(rr) {
                star2.case(rp.below(&t.perp()), || {
                    format!("t = {}, r = {}", d(t), d(rr))
                });
            }
            star3.case(t.below(&rp) == rr.below(&t.perp()), || {
                format!("t = {}, r = {}", d(t), d(rr))
            });
            let (x, y) = (rr, t);
            item2.case(
                x.then_after(&y.perp().perp()).perp() == x.then_after(y).perp(),
                || format!("x = {}, y = {}", d(x), d(y)),
            );
            let xp = x.perp();
            item4.case(
                xp.perp().then_after(y).perp().perp() == xp.join(&xp.join(y).perp()).perp(),
                || format!("x = {}, y = {}", d(x), d(y)),
            );
        }
    }
    for f in maps {
        for k in [f.perp(), f.bracket()] {
            star2.case(k.perp().perp() == k, || format!("k = {}", d(&k)));
        }
    }
    r.push(star1.finish());
    r.push(star2.finish());
    r.push(star3.finish());

    let mut item1 = Tally::new("identity: 0⊥ = e = e⊥⊥, e⊥ = 0 = 0⊥⊥", ex);
    item1.case(zero.perp() == e && e.perp().perp() == e, || {
        "0⊥ or e⊥⊥".into()
    });
    item1.case(e.perp() == zero && zero.perp().perp() == zero, || {
        "e⊥ or 0⊥⊥".into()
    });
    r.push(item1.finish());
    r.push(item2.finish());

    let mut item3 = Tally::new("identity: (⊔ x_i⊥⊥)⊥ = (⊔ x_i)⊥", ex);
    let family = |fam: &[LinMap]| {
        let cc: Vec<LinMap> = fam.iter().map(|x| x.perp().perp()).collect();
        pointwise_join(l, &cc).unwrap().perp() == pointwise_join(l, fam).unwrap().perp()
    };
    let item3_mode = if m <= SUBSET_CARRIER_MAX {
        for mask in 0u32..(1u32 << m) {
            let fam: Vec<LinMap> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| maps[i].clone())
                .collect();
            item3.case(family(&fam), || format!("subset mask {mask:#x}"));
        }
        Mode::Exhaustive
    } else {
        item3.case(family(&[]), || "empty family".into());
        item3.case(family(maps), || "whole carrier".into());
        for a in 0..m {
            for b in a..m {
                item3.case(family(&[maps[a].clone(), maps[b].clone()]), || {
                    format!("{{{}, {}}}", d(&maps[a]), d(&maps[b]))
                });
            }
        }
        Mode::Sampled
    };
    let mut c3 = item3.finish();
    if c3.passed() {
        c3.mode = item3_mode;
    }
    r.push(c3);
    r.push(item4.finish());

    // ≤ and ⊑ are different relations; record how far apart they are.
    let (mut only_q, mut only_pw) = (0u64, 0u64);
    for s in maps {
        for t in maps {
            match (s.below(t), s.pointwise_le(t)) {
                (true, false) => only_q += 1,
                (false, true) => only_pw += 1,
                _ => {}
            }
        }
    }
    r.push(
        Check::pass(
            "relations ≤ and ⊑ kept distinct",
            Mode::Structural,
            (m * m) as u64,
        )
        .with_note(format!(
            "{only_q} pairs with s ≤ t but not s ⊑ t; {only_pw} pairs with s ⊑ t but not s ≤ t"
        )),
    );
    if let Some(g) = gap {
        r.push(Check::inconclusive(
            "carrier closed",
            format!("carrier not closed: {g}"),
        ));
    } else {
        r.push(Check::pass("carrier closed", Mode::Exhaustive, m as u64));
    }
    r
}

/// A1–A4 for the action `f • x = f(x)` of a carrier of maps on M.
pub fn verify_left_module_on_m(l: &Arc<Oml>, maps: &[LinMap]) -> ValidationReport {
    let mut r = ValidationReport::new(format!(
        "left module of {} maps on {}",
        maps.len(),
        l.name()
    ));
    let ex = Mode::Exhaustive;
    let n = l.len();
    let d = |f: &LinMap| f.describe();

    let mut a1 = Tally::new("A1 join in the module argument", ex);
    let subset_mode = if n <= 20 {
        for f in maps {
            for mask in 0u64..(1u64 << n) {
                let s = (0..n).filter(|i| mask >> i & 1 == 1);
                let lhs = f.apply(l.join_all(s.clone()));
                let rhs = l.join_all(s.map(|x| f.apply(x)));
                a1.case(lhs == rhs, || {
                    format!("f = {}, subset mask {mask:#x}", d(f))
                });
            }
        }
        Mode::Exhaustive
    } else {
        for f in maps {
            a1.case(f.apply(l.bot()) == l.bot(), || {
                format!("f = {}, empty set", d(f))
            });
            for x in l.elements() {
                for y in l.elements() {
                    a1.case(
                        f.apply(l.join(x, y)) == l.join(f.apply(x), f.apply(y)),
                        || format!("f = {}, {{{}, {}}}", d(f), l.label(x), l.label(y)),
                    );
                }
            }
        }
        Mode::Structural
    };
    let mut c = a1.finish();
    if c.passed() {
        c.mode = subset_mode;
        if subset_mode == Mode::Structural {
            c = c.with_note("binary joins and the empty join determine all finite joins");
        }
    }
    r.push(c);

    let mut a2 = Tally::new("A2 join in the quantale argument", ex);
    let all = pointwise_join(l, maps).unwrap();
    let zero = LinMap::zero(l.clone());
    for x in l.elements() {
        a2.case(zero.apply(x) == l.bot(), || {
            format!("empty family at {}", l.label(x))
        });
        a2.case(
            all.apply(x) == l.join_all(maps.iter().map(|f| f.apply(x))),
            || format!("whole carrier at {}", l.label(x)),
        );
        for f in maps {
            for g in maps {
                a2.case(f.join(g).apply(x) == l.join(f.apply(x), g.apply(x)), || {
                    format!("({} ⊔ {}) at {}", d(f), d(g), l.label(x))
                });
            }
        }
    }
    r.push(a2.finish());

    let mut a3 = Tally::new("A3 compatibility with composition", ex);
    for u in maps {
        for v in maps {
            let uv = u.then_after(v);
            for x in l.elements() {
                a3.case(u.apply(v.apply(x)) == uv.apply(x), || {
                    format!("u = {}, v = {}, x = {}", d(u), d(v), l.label(x))
                });
            }
        }
    }
    r.push(a3.finish());

    let mut a4 = Tally::new("A4 unit", ex);
    let e = LinMap::identity(l.clone());
    for x in l.elements() {
        a4.case(e.apply(x) == x, || l.label(x).to_string());
    }
    r.push(a4.finish());
    r
}

/// The lattice of Sasaki projections read off a carrier of linear maps.
#[derive(Clone, Debug)]
pub struct SasakiLattice {
    pub lattice: Arc<Oml>,
    pub carrier: Vec<LinMap>,
    /// `k ↦ k(1)` into the original lattice.
    pub iso: OrthoIso,
    pub report: ValidationReport,
}

/// Build `{[t] : t ∈ maps}` with the order `k₁ ≤ k₂ ⇔ k₁ = k₂ ⊙ k₁` and
/// orthocomplement `[k]`, then check the meet and join formulas and the
/// isomorphism `k ↦ k(1)` back to `l`.
pub fn extract_sasaki_lattice(l: &Arc<Oml>, maps: &[LinMap]) -> Result<SasakiLattice, LinError> {
    let mut carrier: Vec<LinMap> = Vec::new();
    {
        let mut seen = HashSet::new();
        for t in maps {
            let b = t.bracket();
            if seen.insert(b.table().to_vec()) {
                carrier.push(b);
            }
        }
    }
    carrier.sort_by(|a, b| a.table().cmp(b.table()));
    let idx: HashMap<Vec<Elem>, usize> = carrier
        .iter()
        .enumerate()
        .map(|(i, k)| (k.table().to_vec(), i))
        .collect();
    let find = |k: &LinMap| idx.get(k.table()).copied();
    let k_count = carrier.len();
    let leq: Vec<Vec<bool>> = carrier
        .iter()
        .map(|a| carrier.iter().map(|b| a.below(b)).collect())
        .collect();
    let perp = carrier
        .iter()
        .map(|k| {
            find(&k.bracket()).ok_or_else(|| {
                LinError::NotClosed(format!(
                    "[{}] is not a bracket of the carrier",
                    k.describe()
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let names = carrier
        .iter()
        .map(|k| format!("pi[{}]", l.label(k.apply(l.top()))))
        .collect();
    let lat = Arc::new(Oml::from_order(
        format!("[Lin({})]", l.name()),
        names,
        &leq,
        perp,
    )?);

    let mut report =
        ValidationReport::new(format!("Sasaki lattice extracted from Lin({})", l.name()));
    report.extend(validate_oml(&lat));
    let ex = Mode::Exhaustive;
    let zero = LinMap::zero(l.clone());

    let mut top = Tally::new("top is [0]", ex);
    top.case(find(&zero.bracket()) == Some(lat.top()), || {
        zero.bracket().describe()
    });
    report.push(top.finish());

    let mut meet = Tally::new("meet formula", ex);
    let mut join = Tally::new("join formula", ex);
    for i in 0..k_count {
        for j in 0..k_count {
            let (k1, k2) = (&carrier[i], &carrier[j]);
            let mf = k1
                .then_after(&k2.bracket().then_after(k1).bracket())
                .perp()
                .perp();
            meet.case(find(&mf) == Some(lat.meet(i, j)), || {
                format!("({}, {})", lat.label(i), lat.label(j))
            });
            let jf = k1.join(k2).bracket().bracket();
            join.case(find(&jf) == Some(lat.join(i, j)), || {
                format!("({}, {})", lat.label(i), lat.label(j))
            });
        }
    }
    if k_count <= SUBSET_CARRIER_MAX {
        for mask in 0u32..(1u32 << k_count) {
            let s: Vec<LinMap> = (0..k_count)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| carrier[i].clone())
                .collect();
            let jf = pointwise_join(l, &s).unwrap().bracket().bracket();
            let want = lat.join_all((0..k_count).filter(|i| mask >> i & 1 == 1));
            join.case(find(&jf) == Some(want), || format!("subset mask {mask:#x}"));
        }
    }
    report.push(meet.finish());
    report.push(join.finish());

    // Right action of the two-element quantale: k ∘ e = k, k ∘ 0 = 0.
    let mut two = Tally::new("right 2-module", ex);
    let e = LinMap::identity(l.clone());
    for k in &carrier {
        two.case(
            k.then_after(&e) == *k && k.then_after(&zero) == zero,
            || k.describe(),
        );
    }
    report.push(two.finish());

    let map: Vec<Elem> = carrier.iter().map(|k| k.apply(l.top())).collect();
    let iso = OrthoIso::new(lat.clone(), l.clone(), map)
        .map_err(|e| LinError::NotClosed(e.to_string()))?;
    report.extend(check_ortho_iso(&iso));
    Ok(SasakiLattice {
        lattice: lat,
        carrier,
        iso,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oml::catalog;
    use crate::report::Status;

    fn arc(name: &str, k: usize) -> Arc<Oml> {
        Arc::new(catalog(name, k).unwrap())
    }

    fn idx(l: &Oml, s: &str) -> Elem {
        l.index_of(s).unwrap()
    }

    #[test]
    fn adjoints_of_basic_maps() {
        let l = arc("mo", 2);
        let id = EndoMap::identity(l.clone());
        assert_eq!(order_adjoint(&id).unwrap(), id);
        let z = EndoMap::zero(l.clone());
        assert_eq!(
            order_adjoint(&z).unwrap(),
            EndoMap::constant(l.clone(), l.top())
        );
        assert_eq!(orth_adjoint(&z).unwrap().adj, z);
        for m in l.elements() {
            let p = EndoMap::sasaki(l.clone(), m);
            assert_eq!(order_adjoint(&p).unwrap(), EndoMap::hook(l.clone(), m));
            assert_eq!(orth_adjoint(&p).unwrap().adj, p);
        }
    }

    #[test]
    fn constant_top_is_not_linear() {
        let l = arc("boolean", 2);
        let f = EndoMap::constant(l.clone(), l.top());
        let err = orth_adjoint(&f).unwrap_err();
        assert_eq!((err.x, err.y), (l.bot(), l.bot()));
    }

    #[test]
    fn composite_of_projections_on_mo2() {
        let l = arc("mo", 2);
        let (a, b) = (idx(&l, "a"), idx(&l, "b"));
        let pa = LinMap::sasaki(l.clone(), a);
        let pb = LinMap::sasaki(l.clone(), b);
        let h = compose(&pa, &pb).unwrap();
        for x in l.elements() {
            let want = if x == l.bot() || x == idx(&l, "b'") {
                l.bot()
            } else {
                a
            };
            assert_eq!(h.apply(x), want, "at {}", l.label(x));
        }
        assert_eq!(h.adj().table(), pb.then_after(&pa).table());
    }

    #[test]
    fn perp_and_bracket() {
        let l = arc("mo", 2);
        for m in l.elements() {
            let p = LinMap::sasaki(l.clone(), m);
            assert_eq!(foulis_perp(&p), LinMap::sasaki(l.clone(), l.perp(m)));
            assert_eq!(bracket(&p), foulis_perp(&p));
        }
        assert_eq!(
            foulis_perp(&LinMap::identity(l.clone())),
            LinMap::zero(l.clone())
        );
        assert_eq!(
            foulis_perp(&LinMap::zero(l.clone())),
            LinMap::identity(l.clone())
        );
    }

    #[test]
    fn joins() {
        let l = arc("mo", 2);
        assert_eq!(pointwise_join(&l, &[]).unwrap(), LinMap::zero(l.clone()));
        let pa = LinMap::sasaki(l.clone(), idx(&l, "a"));
        let pb = LinMap::sasaki(l.clone(), idx(&l, "b"));
        assert_eq!(pointwise_join(&l, std::slice::from_ref(&pa)).unwrap(), pa);
        let j = pointwise_join(&l, &[pa.clone(), pb.clone()]).unwrap();
        for x in l.elements() {
            assert_eq!(j.apply(x), l.join(pa.apply(x), pb.apply(x)));
        }
        assert_eq!(orth_adjoint(j.base()).unwrap(), j);
    }

    #[test]
    fn lattice_mismatch() {
        let a = LinMap::identity(arc("mo", 2));
        let b = LinMap::identity(arc("boolean", 2));
        assert!(matches!(
            compose(&a, &b),
            Err(LinError::LatticeMismatch(_, _))
        ));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (name, k) in [
            ("chain2", 0),
            ("boolean", 1),
            ("boolean", 2),
            ("mo", 1),
            ("mo", 2),
            ("o6", 0),
        ] {
            let l = arc(name, k);
            let fast = enumerate_lin(&l, DEFAULT_LIN_CAP).unwrap();
            let slow = brute_force_lin(&l).unwrap();
            assert_eq!(fast, slow, "{name}{k}");
        }
        let chain = enumerate_lin(&arc("chain2", 0), DEFAULT_LIN_CAP).unwrap();
        assert_eq!(chain.len(), 2);
    }

    #[test]
    fn enumeration_cap() {
        let l = arc("mo", 2);
        assert!(matches!(
            enumerate_lin(&l, 10),
            Err(LinError::SizeExceeded { cap: 10, .. })
        ));
        assert!(matches!(
            brute_force_lin(&arc("boolean", 3)),
            Err(LinError::TooLargeForBruteForce { n: 8, max: 6 })
        ));
    }

    #[test]
    fn foulis_on_small_lins() {
        for (name, k) in [("chain2", 0), ("boolean", 2)] {
            let l = arc(name, k);
            let lin = enumerate_lin(&l, DEFAULT_LIN_CAP).unwrap();
            let r = verify_foulis(&l, &lin);
            assert!(r.all_pass(), "{r}");
            assert!(verify_lin_invariants(&l, &lin).all_pass());
            assert!(verify_left_module_on_m(&l, &lin).all_pass());
        }
    }

    #[test]
    fn identity_alone_is_inconclusive() {
        let l = arc("boolean", 2);
        let r = verify_foulis(&l, &[LinMap::identity(l.clone())]);
        assert_eq!(
            r.check("O3 orthogonality").unwrap().status,
            Status::Inconclusive
        );
        assert!(!r.has_failures(), "{r}");
    }

    #[test]
    fn extracted_lattice_is_isomorphic() {
        for (name, k) in [("chain2", 0), ("boolean", 2), ("mo", 2)] {
            let l = arc(name, k);
            let lin = enumerate_lin(&l, DEFAULT_LIN_CAP).unwrap();
            let s = extract_sasaki_lattice(&l, &lin).unwrap();
            assert!(s.report.all_pass(), "{}", s.report);
            assert_eq!(s.lattice.len(), l.len());
        }
    }

    #[test]
    fn characterization_and_galois() {
        for (name, k) in [("chain2", 0), ("boolean", 3), ("mo", 3)] {
            let l = arc(name, k);
            assert!(verify_sasaki_characterization(&l).all_pass());
            assert!(verify_galois(&l).all_pass());
        }
    }

    #[test]
    fn projections_on_boolean_lattices_are_meets() {
        let l = arc("boolean", 3);
        assert!(nonmonotone_triples(&l).is_empty());
        for m in l.elements() {
            for n in l.elements() {
                assert_eq!(l.project(m, n), l.meet(m, n));
            }
        }
        let mo2 = arc("mo", 2);
        let t = nonmonotone_triples(&mo2);
        assert!(t.contains(&(idx(&mo2, "a"), mo2.top(), idx(&mo2, "b"))));
    }
}
