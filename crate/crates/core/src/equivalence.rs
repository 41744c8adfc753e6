//! The functors Γ and Ψ, the components μ and λ, and naturality checks.
//!
//! Γ sends a lattice to the dynamic algebra over its test monoid and an
//! isomorphism `k` to conjugation `a ↦ k∘a∘k⁻¹`. Ψ sends a verified algebra
//! to its test lattice and a morphism to its restriction on tests.

use crate::config::Limits;
use crate::dynalg::{
    test_lattice, verify_all, DynAlgebra, DynElem, DynError, SamplePolicy, TestLattice,
};
use crate::oml::{check_ortho_iso, validate_oml, Elem, Oml, OrthoIso};
use crate::report::{Check, Mode, Status, Tally, ValidationReport};
use crate::testmonoid::{generate_t, MonoidError};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum EquivError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("test monoid exceeds the cap of {cap} elements ({partial} generated so far)")]
    SizeExceeded { partial: usize, cap: usize },
    #[error("axiom suites failed on Γ({})", .0.subject)]
    SuiteFailure(Box<ValidationReport>),
    #[error("handle for {0} is not verified")]
    Unverified(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("nu does not separate {0} and {1}")]
    Separation(String, String),
}

impl From<MonoidError> for EquivError {
    fn from(e: MonoidError) -> Self {
        match e {
            MonoidError::SizeExceeded { partial, cap } => EquivError::SizeExceeded { partial, cap },
            MonoidError::InvalidLattice(s) => EquivError::Precondition(s),
            other => EquivError::Internal(other.to_string()),
        }
    }
}

impl From<DynError> for EquivError {
    fn from(e: DynError) -> Self {
        match e {
            DynError::Extraction(r) => EquivError::SuiteFailure(r),
            other => EquivError::Internal(other.to_string()),
        }
    }
}

/// `Γ(M)` together with its test lattice and cached suite results.
#[derive(Debug)]
pub struct TodaHandle {
    oml: Arc<Oml>,
    alg: Arc<DynAlgebra>,
    tests: TestLattice,
    suites: ValidationReport,
    verified: bool,
    limits: Limits,
}

impl TodaHandle {
    pub fn oml(&self) -> &Arc<Oml> {
        &self.oml
    }

    pub fn algebra(&self) -> &Arc<DynAlgebra> {
        &self.alg
    }

    pub fn test_lattice(&self) -> &TestLattice {
        &self.tests
    }

    pub fn suites(&self) -> &ValidationReport {
        &self.suites
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn policy(&self) -> SamplePolicy {
        SamplePolicy::from_limits(&self.limits)
    }
}

/// `Γ(M)`, with every dynamic-algebra suite run and required to pass.
pub fn gamma_object(m: Arc<Oml>, limits: &Limits) -> Result<TodaHandle, EquivError> {
    let h = build_handle(m, limits, true)?;
    if h.verified {
        Ok(h)
    } else {
        Err(EquivError::SuiteFailure(Box::new(h.suites)))
    }
}

/// `Γ(M)` without the axiom suites; only the test lattice is extracted.
pub fn gamma_object_unverified(m: Arc<Oml>, limits: &Limits) -> Result<TodaHandle, EquivError> {
    build_handle(m, limits, false)
}

fn build_handle(m: Arc<Oml>, limits: &Limits, verify: bool) -> Result<TodaHandle, EquivError> {
    let v = validate_oml(&m);
    if let Some(c) = v.failures().next() {
        return Err(EquivError::Precondition(format!(
            "{} is not orthomodular: {} fails ({})",
            m.name(),
            c.name,
            c.witness.as_deref().unwrap_or("")
        )));
    }
    let mono = Arc::new(generate_t(&m, limits.monoid_cap)?);
    let alg = Arc::new(DynAlgebra::new(mono));
    let tests = test_lattice(&alg)?;
    let suites = if verify {
        verify_all(&alg, &SamplePolicy::from_limits(limits))
    } else {
        ValidationReport::new(format!("dynamic algebra Γ({}) (suites not run)", m.name()))
    };
    let verified = verify && suites.all_pass();
    Ok(TodaHandle {
        oml: m,
        alg,
        tests,
        suites,
        verified,
        limits: *limits,
    })
}

/// A map between dynamic algebras that acts elementwise on monoid ids.
#[derive(Clone, Debug)]
pub struct DynMorphism {
    src: Arc<DynAlgebra>,
    dst: Arc<DynAlgebra>,
    map: Vec<usize>,
}

impl DynMorphism {
    pub fn new(
        src: Arc<DynAlgebra>,
        dst: Arc<DynAlgebra>,
        map: Vec<usize>,
    ) -> Result<Self, EquivError> {
        if map.len() != src.monoid().len() || map.iter().any(|&y| y >= dst.monoid().len()) {
            return Err(EquivError::EndpointMismatch(format!(
                "map of length {} does not fit monoids of sizes {} and {}",
                map.len(),
                src.monoid().len(),
                dst.monoid().len()
            )));
        }
        Ok(DynMorphism { src, dst, map })
    }

    pub fn identity(alg: Arc<DynAlgebra>) -> Self {
        let map = alg.monoid().ids().collect();
        DynMorphism {
            src: alg.clone(),
            dst: alg,
            map,
        }
    }

    pub fn src(&self) -> &Arc<DynAlgebra> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<DynAlgebra> {
        &self.dst
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Image of a set, element by element.
    pub fn apply(&self, a: &DynElem) -> DynElem {
        self.dst
            .elem(a.ids().map(|x| self.map[x]))
            .expect("image lies in the target carrier")
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DynMorphism) -> Result<DynMorphism, EquivError> {
        if !same_algebra(&self.dst, &other.src) {
            return Err(EquivError::EndpointMismatch(
                "morphisms are not composable".into(),
            ));
        }
        Ok(DynMorphism {
            src: self.src.clone(),
            dst: other.dst.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Option<DynMorphism> {
        let mut inv = vec![usize::MAX; self.dst.monoid().len()];
        for (x, &y) in self.map.iter().enumerate() {
            if inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        if inv.contains(&usize::MAX) {
            return None;
        }
        Some(DynMorphism {
            src: self.dst.clone(),
            dst: self.src.clone(),
            map: inv,
        })
    }

    pub fn is_identity(&self) -> bool {
        same_algebra(&self.src, &self.dst) && self.map.iter().enumerate().all(|(i, &x)| i == x)
    }
}

fn same_algebra(a: &DynAlgebra, b: &DynAlgebra) -> bool {
    **a.monoid() == **b.monoid()
}

/// Bijectivity and preservation of `∪, ⊙, *, ~` and the unit.
pub fn verify_dyn_morphism(phi: &DynMorphism, policy: &SamplePolicy) -> ValidationReport {
    let (s, t) = (&phi.src, &phi.dst);
    let (ms, mt) = (s.monoid(), t.monoid());
    let mut r = ValidationReport::new(format!(
        "dynamic algebra morphism Γ({}) -> Γ({})",
        s.lattice().name(),
        t.lattice().name()
    ));
    let ex = Mode::Exhaustive;
    let mut bij = Tally::new("bijective", ex);
    bij.case(ms.len() == mt.len(), || {
        format!("sizes {} and {}", ms.len(), mt.len())
    });
    bij.case(phi.inverse().is_some(), || {
        "map is not a bijection on monoid elements".into()
    });
    r.push(bij.finish());

    let mut prod = Tally::new("preserves product", ex);
    for a in ms.ids() {
        for b in ms.ids() {
            prod.case(
                phi.map[ms.mul(a, b)] == mt.mul(phi.map[a], phi.map[b]),
                || format!("a = {}, b = {}", s.word(a), s.word(b)),
            );
        }
    }
    r.push(prod.finish());

    let mut star = Tally::new("preserves involution", ex);
    for a in ms.ids() {
        star.case(phi.map[ms.star(a)] == mt.star(phi.map[a]), || {
            format!("a = {}", s.word(a))
        });
    }
    r.push(star.finish());

    let mut unit = Tally::new("preserves unit", ex);
    unit.case(phi.apply(&s.unit()) == t.unit(), || "image of e".into());
    r.push(unit.finish());

    let fam = policy.family(s);
    let mut join = Tally::new("preserves union", fam.mode);
    let mut tilde = Tally::new("preserves ~", fam.mode);
    for (i, a) in fam.elems.iter().enumerate() {
        tilde.case(phi.apply(&s.tilde(a)) == t.tilde(&phi.apply(a)), || {
            format!("A = {}", s.describe(a))
        });
        let b = &fam.elems[(i * 7 + 1) % fam.elems.len()];
        join.case(
            phi.apply(&s.union(a, b)) == t.union(&phi.apply(a), &phi.apply(b)),
            || format!("A = {}, B = {}", s.describe(a), s.describe(b)),
        );
    }
    r.push(join.finish());
    r.push(tilde.finish());
    r
}

/// Conjugation by `k` between the algebras over `k`'s endpoints.
fn conjugation(
    k: &OrthoIso,
    src: &Arc<DynAlgebra>,
    dst: &Arc<DynAlgebra>,
) -> Result<DynMorphism, EquivError> {
    if **k.src() != **src.lattice() || **k.dst() != **dst.lattice() {
        return Err(EquivError::EndpointMismatch(format!(
            "{} -> {} does not connect {} and {}",
            k.src().name(),
            k.dst().name(),
            src.lattice().name(),
            dst.lattice().name()
        )));
    }
    let iso = check_ortho_iso(k);
    if let Some(c) = iso.failures().next() {
        return Err(EquivError::Precondition(format!(
            "not an ortholattice isomorphism: {} ({})",
            c.name,
            c.witness.as_deref().unwrap_or("")
        )));
    }
    let kinv = k
        .inverse()
        .ok_or_else(|| EquivError::Precondition("not invertible".into()))?;
    let (ms, mt) = (src.monoid(), dst.monoid());
    let n = dst.lattice().len();
    let mut map = Vec::with_capacity(ms.len());
    for a in ms.ids() {
        let tbl: Vec<Elem> = (0..n)
            .map(|y| k.apply(ms.apply(a, kinv.apply(y))))
            .collect();
        let id = mt.lookup(&tbl).ok_or_else(|| {
            EquivError::Internal(format!(
                "conjugate of {} is missing from the target monoid",
                src.word(a)
            ))
        })?;
        map.push(id);
    }
    DynMorphism::new(src.clone(), dst.clone(), map)
}

/// `Γ(k): A ↦ {k∘a∘k⁻¹}`.
pub fn gamma_morphism(
    k: &OrthoIso,
    src: &TodaHandle,
    dst: &TodaHandle,
) -> Result<DynMorphism, EquivError> {
    conjugation(k, &src.alg, &dst.alg)
}

/// `Ψ(K)`, the test lattice of a verified handle.
pub fn psi_object(h: &TodaHandle) -> Result<Arc<Oml>, EquivError> {
    if !h.verified {
        return Err(EquivError::Unverified(h.oml.name().to_string()));
    }
    Ok(h.tests.oml().clone())
}

/// `Ψ(φ)`, the restriction of `φ` to tests as a map of test lattices.
pub fn psi_morphism(
    phi: &DynMorphism,
    src: &TodaHandle,
    dst: &TodaHandle,
) -> Result<OrthoIso, EquivError> {
    if !same_algebra(&phi.src, &src.alg) || !same_algebra(&phi.dst, &dst.alg) {
        return Err(EquivError::EndpointMismatch(
            "morphism does not connect the given handles".into(),
        ));
    }
    restrict(phi, &src.tests, &dst.tests)
}

fn restrict(phi: &DynMorphism, ts: &TestLattice, td: &TestLattice) -> Result<OrthoIso, EquivError> {
    let mut map = Vec::with_capacity(ts.oml().len());
    for x in ts.oml().elements() {
        let img = phi.map[ts.test_id(x)];
        let y = td.index_of(img).ok_or_else(|| {
            EquivError::Internal(format!(
                "test {} is sent to the non-test {}",
                ts.oml().label(x),
                phi.dst.word(img)
            ))
        })?;
        map.push(y);
    }
    OrthoIso::new(ts.oml().clone(), td.oml().clone(), map)
        .map_err(|e| EquivError::Internal(e.to_string()))
}

fn delta_images(h: &TodaHandle) -> Vec<Elem> {
    h.oml.elements().map(|m| h.tests.delta().apply(m)).collect()
}

/// The square `Ψ(Γ(k)) ∘ μ_{M1} = μ_{M2} ∘ k`, element by element.
pub fn check_naturality_mu(
    k: &OrthoIso,
    src: &TodaHandle,
    dst: &TodaHandle,
) -> Result<ValidationReport, EquivError> {
    let g = gamma_morphism(k, src, dst)?;
    let psi = psi_morphism(&g, src, dst)?;
    let mut r = ValidationReport::new(format!(
        "mu naturality for {} ({})",
        k.describe(),
        src.oml.name()
    ));
    r.extend(check_ortho_iso(&psi));
    let (d1, d2) = (delta_images(src), delta_images(dst));
    let mono2 = dst.alg.monoid();
    let mut sq = Tally::new("mu square commutes", Mode::Exhaustive);
    for m in src.oml.elements() {
        let left = psi.apply(d1[m]);
        let right = d2[k.apply(m)];
        let km = k.apply(m);
        sq.case(
            left == right && dst.tests.test_id(left) == mono2.proj(km),
            || {
                format!(
                    "m = {}: {} vs {}",
                    src.oml.label(m),
                    dst.tests.oml().label(left),
                    dst.tests.oml().label(right)
                )
            },
        );
    }
    r.push(sq.finish());
    Ok(r)
}

/// `λ_K: K → 𝒫(𝒯(Lin(~K)))`, `λ(k) = {ν(s) : s ∈ S_k}`.
#[derive(Clone, Debug)]
pub struct LambdaComponent {
    pub morphism: DynMorphism,
    pub target_tests: TestLattice,
}

impl LambdaComponent {
    pub fn apply(&self, a: &DynElem) -> DynElem {
        self.morphism.apply(a)
    }

    pub fn target(&self) -> &Arc<DynAlgebra> {
        self.morphism.dst()
    }
}

/// Build `λ` for a handle, with `ν(s)` looked up in `𝒯(Lin(~K))`.
pub fn lambda_component(h: &TodaHandle) -> Result<LambdaComponent, EquivError> {
    let test_oml = h.tests.oml().clone();
    let target = Arc::new(DynAlgebra::new(Arc::new(generate_t(
        &test_oml,
        h.limits.monoid_cap,
    )?)));
    let target_tests = test_lattice(&target)?;
    let mono = h.alg.monoid();
    let mut map = Vec::with_capacity(mono.len());
    let mut owner = vec![usize::MAX; target.monoid().len()];
    for s in mono.ids() {
        let tbl = h.tests.action_table(&h.alg, &h.alg.singleton(s));
        let id = target.monoid().lookup(&tbl).ok_or_else(|| {
            EquivError::Internal(format!("nu({}) is not in the action monoid", h.alg.word(s)))
        })?;
        if owner[id] != usize::MAX {
            return Err(EquivError::Separation(h.alg.word(owner[id]), h.alg.word(s)));
        }
        owner[id] = s;
        map.push(id);
    }
    Ok(LambdaComponent {
        morphism: DynMorphism::new(h.alg.clone(), target, map)?,
        target_tests,
    })
}

/// λ is an isomorphism with the listed special values, and the generic
/// atom-based route agrees with the singleton route.
pub fn verify_lambda(h: &TodaHandle, lam: &LambdaComponent) -> ValidationReport {
    let policy = h.policy();
    let alg = &h.alg;
    let tgt = lam.target();
    let mut r = verify_dyn_morphism(&lam.morphism, &policy);
    r.subject = format!("lambda component on Γ({})", h.oml.name());
    let mut special = Tally::new("lambda special values", Mode::Exhaustive);
    special.case(lam.apply(&alg.empty()).is_empty(), || "λ(0) ≠ 0".into());
    special.case(lam.apply(&alg.unit()) == tgt.unit(), || {
        "λ(e) ≠ {id}".into()
    });
    let fam = policy.family(alg);
    let nu = |s: usize| {
        tgt.monoid()
            .lookup(&h.tests.action_table(alg, &alg.singleton(s)))
    };
    for a in &fam.elems {
        let ta = alg.tilde(a);
        let want = nu(ta.ids().next().expect("test")).map(|id| tgt.singleton(id));
        special.case(Some(lam.apply(&ta)) == want, || {
            format!("λ(~k) ≠ {{ν(~k)}} for k = {}", alg.describe(a))
        });
    }
    r.push(special.finish());
    let mut generic = Tally::new("lambda via atoms matches singletons", fam.mode);
    for a in &fam.elems {
        let via_atoms: Option<Vec<usize>> = alg
            .h_map(a)
            .iter()
            .map(|w| nu(w.ids().next().expect("atom")))
            .collect();
        let ok = via_atoms.is_some_and(|ids| tgt.elem(ids).ok() == Some(lam.apply(a)));
        generic.case(ok && lam.apply(a).len() == a.len(), || {
            format!("A = {}", alg.describe(a))
        });
    }
    r.push(generic.finish());
    r
}

/// The square `(Γ∘Ψ)(φ) ∘ λ_{K1} = λ_{K2} ∘ φ` on atoms, two-element sets
/// and the sampled family.
pub fn check_naturality_lambda(
    phi: &DynMorphism,
    src: &TodaHandle,
    dst: &TodaHandle,
) -> Result<ValidationReport, EquivError> {
    let lam1 = lambda_component(src)?;
    let lam2 = lambda_component(dst)?;
    check_naturality_lambda_with(phi, src, dst, &lam1, &lam2)
}

fn check_naturality_lambda_with(
    phi: &DynMorphism,
    src: &TodaHandle,
    dst: &TodaHandle,
    lam1: &LambdaComponent,
    lam2: &LambdaComponent,
) -> Result<ValidationReport, EquivError> {
    let psi = psi_morphism(phi, src, dst)?;
    let gp = conjugation(&psi, lam1.target(), lam2.target())?;
    let alg = &src.alg;
    let mut r = ValidationReport::new(format!(
        "lambda naturality Γ({}) -> Γ({})",
        src.oml.name(),
        dst.oml.name()
    ));
    let ids: Vec<usize> = alg.carrier().collect();
    let mut family: Vec<DynElem> = ids.iter().map(|&x| alg.singleton(x)).collect();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            family.push(alg.elem([a, b]).expect("carrier ids"));
        }
    }
    let fam = src.policy().family(alg);
    family.extend(fam.elems);
    let mut sq = Tally::new("lambda square commutes", Mode::Sampled);
    for a in &family {
        let left = gp.apply(&lam1.apply(a));
        let right = lam2.apply(&phi.apply(a));
        sq.case(left == right, || format!("A = {}", alg.describe(a)));
    }
    r.push(sq.finish());
    Ok(r)
}

/// Verdict and sections of a full round trip.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub subject: String,
    pub seed: u64,
    pub verdict: Status,
    pub sections: Vec<ValidationReport>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn section(&self, prefix: &str) -> Option<&ValidationReport> {
        self.sections.iter().find(|s| s.subject.starts_with(prefix))
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (seed {})", self.subject, self.seed)?;
        for s in &self.sections {
            write!(f, "{s}")?;
        }
        let v = match self.verdict {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        writeln!(f, "verdict: {v}")
    }
}

/// Composite `h ∘ λ⁻¹: 𝒫(𝒯(Lin(~K))) → 𝒫(𝒯(K))` preserves the operations.
fn corollary_section(h: &TodaHandle, lam: &LambdaComponent) -> ValidationReport {
    let alg = &h.alg;
    let mono = alg.monoid();
    let tgt = lam.target();
    let mut r = ValidationReport::new(format!("three-way isomorphism for Γ({})", h.oml.name()));
    let Some(inv) = lam.morphism.inverse() else {
        r.push(Check::fail(
            "lambda invertible",
            Mode::Exhaustive,
            "λ is not a bijection",
        ));
        return r;
    };
    let f = |b: &DynElem| alg.h_map(&inv.apply(b));
    let atom = |w: &DynElem| w.ids().next().expect("atom");
    let sorted = |mut v: Vec<DynElem>| {
        v.sort();
        v.dedup();
        v
    };
    let fam = h.policy().family(tgt);
    let mut t = Tally::new("h after lambda inverse preserves operations", fam.mode);
    t.case(f(&tgt.unit()) == vec![alg.unit()], || "unit".into());
    for (i, b) in fam.elems.iter().enumerate() {
        let c = &fam.elems[(i * 5 + 3) % fam.elems.len()];
        let (fb, fc) = (f(b), f(c));
        t.case(alg.union_all(fb.iter()) == inv.apply(b), || {
            format!("join of h on {}", tgt.describe(b))
        });
        let un = sorted(fb.iter().chain(fc.iter()).cloned().collect());
        t.case(f(&tgt.union(b, c)) == un, || {
            format!("union on {}, {}", tgt.describe(b), tgt.describe(c))
        });
        let pr = sorted(
            fb.iter()
                .flat_map(|x| fc.iter().map(move |y| (atom(x), atom(y))))
                .map(|(x, y)| alg.singleton(mono.mul(x, y)))
                .collect(),
        );
        t.case(f(&tgt.mul(b, c)) == pr, || {
            format!("product on {}, {}", tgt.describe(b), tgt.describe(c))
        });
        let st = sorted(
            fb.iter()
                .map(|x| alg.singleton(mono.star(atom(x))))
                .collect(),
        );
        t.case(f(&tgt.star(b)) == st, || {
            format!("star on {}", tgt.describe(b))
        });
        let top = alg
            .lattice()
            .join_all(fb.iter().map(|x| mono.at_top(atom(x))));
        let ti = vec![alg.singleton(mono.proj(alg.lattice().perp(top)))];
        t.case(f(&tgt.tilde(b)) == ti, || {
            format!("~ on {}", tgt.describe(b))
        });
    }
    r.push(t.finish());
    r
}

/// Functor laws on the supplied endomorphisms of `h`'s lattice.
fn functor_section(h: &TodaHandle, autos: &[OrthoIso]) -> Result<ValidationReport, EquivError> {
    let policy = h.policy();
    let mut r = ValidationReport::new(format!("functor laws on {}", h.oml.name()));
    let mut id = Tally::new("Γ(id) = id and Ψ(id) = id", Mode::Exhaustive);
    let gid = gamma_morphism(&OrthoIso::identity(h.oml.clone()), h, h)?;
    id.case(gid.is_identity(), || "Γ(id) moves an element".into());
    let pid = psi_morphism(&DynMorphism::identity(h.alg.clone()), h, h)?;
    id.case(pid.is_identity(), || "Ψ(id) moves a test".into());
    r.push(id.finish());

    let fam = policy.family(&h.alg);
    let mut comp = Tally::new("Γ(l∘k) = Γ(l)∘Γ(k) and Ψ preserves composition", fam.mode);
    let mut gamma_ok = Tally::new("Γ(k) is a morphism", Mode::Exhaustive);
    for k in autos {
        let gk = gamma_morphism(k, h, h)?;
        let rep = verify_dyn_morphism(&gk, &policy);
        gamma_ok.case(rep.all_pass(), || {
            format!(
                "k = {}: {}",
                k.describe(),
                rep.failures()
                    .next()
                    .map(|c| c.name.clone())
                    .unwrap_or_default()
            )
        });
        let inv = gamma_morphism(&k.inverse().expect("iso"), h, h)?;
        gamma_ok.case(gk.then(&inv)?.is_identity(), || {
            format!("Γ(k⁻¹) is not inverse to Γ({})", k.describe())
        });
    }
    for (i, k) in autos.iter().enumerate() {
        let l = &autos[(i + 1) % autos.len()];
        let lk = k.then(l).map_err(|e| EquivError::Internal(e.to_string()))?;
        let (gk, gl, glk) = (
            gamma_morphism(k, h, h)?,
            gamma_morphism(l, h, h)?,
            gamma_morphism(&lk, h, h)?,
        );
        let both = gk.then(&gl)?;
        for a in &fam.elems {
            comp.case(glk.apply(a) == both.apply(a), || {
                format!(
                    "k = {}, l = {}, A = {}",
                    k.describe(),
                    l.describe(),
                    h.alg.describe(a)
                )
            });
        }
        let (pk, pl, plk) = (
            psi_morphism(&gk, h, h)?,
            psi_morphism(&gl, h, h)?,
            psi_morphism(&both, h, h)?,
        );
        let composed = pk
            .then(&pl)
            .map_err(|e| EquivError::Internal(e.to_string()))?;
        comp.case(plk == composed, || {
            format!("Ψ on k = {}, l = {}", k.describe(), l.describe())
        });
    }
    r.push(gamma_ok.finish());
    r.push(comp.finish());
    Ok(r)
}

/// Everything the equivalence asserts, for `Γ(M)` and the given morphisms
/// out of `M`. Morphisms ending at `M` reuse its handle.
pub fn round_trip_report(
    m: Arc<Oml>,
    morphisms: &[OrthoIso],
    limits: &Limits,
) -> Result<EquivalenceReport, EquivError> {
    let h = gamma_object(m.clone(), limits)?;
    let mut sections = vec![h.suites.clone()];

    let mut mu = h.tests.report().clone();
    mu.subject = format!("mu component (delta) for {}", m.name());
    sections.push(mu);

    let lam = lambda_component(&h)?;
    sections.push(verify_lambda(&h, &lam));

    let autos: Vec<OrthoIso> = morphisms
        .iter()
        .filter(|k| **k.dst() == *m)
        .cloned()
        .collect();
    let mut all = vec![OrthoIso::identity(m.clone())];
    all.extend(morphisms.iter().cloned());
    for k in &all {
        if **k.src() != *m {
            return Err(EquivError::EndpointMismatch(format!(
                "morphism starts at {}, expected {}",
                k.src().name(),
                m.name()
            )));
        }
        let other;
        let dst = if **k.dst() == *m {
            &h
        } else {
            other = gamma_object(k.dst().clone(), limits)?;
            &other
        };
        sections.push(check_naturality_mu(k, &h, dst)?);
        let g = gamma_morphism(k, &h, dst)?;
        let lam2 = if std::ptr::eq(dst, &h) {
            lam.clone()
        } else {
            lambda_component(dst)?
        };
        let mut nat = check_naturality_lambda_with(&g, &h, dst, &lam, &lam2)?;
        nat.subject = format!("lambda naturality for Γ({})", k.describe());
        sections.push(nat);
    }
    if autos.len() >= 2 {
        let g = gamma_morphism(&autos[0], &h, &h)?.then(&gamma_morphism(&autos[1], &h, &h)?)?;
        let mut nat = check_naturality_lambda_with(&g, &h, &h, &lam, &lam)?;
        nat.subject = format!(
            "lambda naturality for Γ({}) then Γ({})",
            autos[0].describe(),
            autos[1].describe()
        );
        sections.push(nat);
    }
    let mut fa = autos.clone();
    fa.insert(0, OrthoIso::identity(m.clone()));
    sections.push(functor_section(&h, &fa)?);
    sections.push(corollary_section(&h, &lam));

    let verdict = if sections.iter().all(|s| s.all_pass()) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(EquivalenceReport {
        subject: format!("equivalence round trip for {}", m.name()),
        seed: limits.seed,
        verdict,
        sections,
    })
}
