//! The involutive monoid generated by the Sasaki projections of a lattice.
//!
//! Elements are endomaps identified by their image table. Generation is a
//! breadth-first closure under left and right multiplication by projections,
//! so every element carries a shortest word over the generators.

use crate::linmap::{orth_adjoint, EndoMap};
use crate::oml::{validate_oml, Elem, Oml};
use crate::report::{Check, Mode, Tally, ValidationReport};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;
use thiserror::Error;

pub use crate::config::DEFAULT_MONOID_CAP;

/// Monoids up to this size get a memoized Cayley table.
const DENSE_CACHE_MAX: usize = 2048;
const EMPTY: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("monoid exceeds the cap of {cap} elements ({partial} generated so far)")]
    SizeExceeded { partial: usize, cap: usize },
    #[error("not an orthomodular lattice: {0}")]
    InvalidLattice(String),
    #[error("element id {id} out of range for a monoid of {size} elements")]
    OutOfRange { id: usize, size: usize },
    #[error("table is not an element of the monoid")]
    Foreign,
}

/// One element: its table, a shortest generating word and its involution.
///
/// The word `[m1, .., mj]` stands for `π_{m1} ∘ .. ∘ π_{mj}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidElem {
    pub id: usize,
    pub tbl: Vec<Elem>,
    pub witness: Vec<Elem>,
    pub star_id: usize,
}

#[derive(Debug)]
pub struct InvMonoid {
    l: Arc<Oml>,
    elems: Vec<MonoidElem>,
    index: HashMap<Vec<Elem>, usize>,
    proj: Vec<usize>,
    unit_id: usize,
    zero_id: usize,
    mul: Option<Vec<AtomicU32>>,
}

impl PartialEq for InvMonoid {
    fn eq(&self, other: &Self) -> bool {
        *self.l == *other.l && self.elems == other.elems
    }
}

fn compose_tbl(a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    b.iter().map(|&x| a[x]).collect()
}

/// Generate the closure of `{π_m}` under composition.
pub fn generate_t(l: &Arc<Oml>, cap: usize) -> Result<InvMonoid, MonoidError> {
    let report = validate_oml(l);
    if let Some(c) = report.failures().next() {
        return Err(MonoidError::InvalidLattice(format!(
            "{}: {}",
            c.name,
            c.witness.as_deref().unwrap_or("")
        )));
    }
    let gens: Vec<(Elem, Vec<Elem>)> = l.elements().map(|m| (m, l.projection_table(m))).collect();
    let mut elems: Vec<MonoidElem> = Vec::new();
    let mut index: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut push = |tbl: Vec<Elem>,
                    witness: Vec<Elem>,
                    elems: &mut Vec<MonoidElem>|
     -> Result<Option<usize>, MonoidError> {
        if index.contains_key(&tbl) {
            return Ok(None);
        }
        let id = elems.len();
        if id >= cap {
            return Err(MonoidError::SizeExceeded { partial: id, cap });
        }
        index.insert(tbl.clone(), id);
        elems.push(MonoidElem {
            id,
            tbl,
            witness,
            star_id: usize::MAX,
        });
        Ok(Some(id))
    };
    let mut frontier = Vec::new();
    for (m, t) in &gens {
        if let Some(id) = push(t.clone(), vec![*m], &mut elems)? {
            frontier.push(id);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &id in &frontier {
            for (m, g) in &gens {
                let (tbl, word) = {
                    let e = &elems[id];
                    let mut w = vec![*m];
                    w.extend_from_slice(&e.witness);
                    (compose_tbl(g, &e.tbl), w)
                };
                if let Some(new) = push(tbl, word, &mut elems)? {
                    next.push(new);
                }
                let (tbl, word) = {
                    let e = &elems[id];
                    let mut w = e.witness.clone();
                    w.push(*m);
                    (compose_tbl(&e.tbl, g), w)
                };
                if let Some(new) = push(tbl, word, &mut elems)? {
                    next.push(new);
                }
            }
        }
        frontier = next;
    }
    let index: HashMap<Vec<Elem>, usize> = elems.iter().map(|e| (e.tbl.clone(), e.id)).collect();
    // Generators are self-adjoint, so the adjoint of a word is its reversal.
    for e in elems.iter_mut() {
        let tbl = word_table(l, e.witness.iter().rev().copied());
        e.star_id = *index.get(&tbl).expect("reversed word stays in the closure");
    }
    let proj = gens.iter().map(|(_, t)| index[t]).collect::<Vec<_>>();
    let unit_id = proj[l.top()];
    let zero_id = proj[l.bot()];
    let size = elems.len();
    let mul = (size <= DENSE_CACHE_MAX)
        .then(|| (0..size * size).map(|_| AtomicU32::new(EMPTY)).collect());
    Ok(InvMonoid {
        l: l.clone(),
        elems,
        index,
        proj,
        unit_id,
        zero_id,
        mul,
    })
}

/// Table of `π_{w1} ∘ .. ∘ π_{wj}`; the empty word is the identity.
pub fn word_table(l: &Oml, word: impl DoubleEndedIterator<Item = Elem>) -> Vec<Elem> {
    let mut tbl: Vec<Elem> = l.elements().collect();
    for m in word.rev() {
        tbl = tbl.iter().map(|&x| l.project(m, x)).collect();
    }
    tbl
}

impl InvMonoid {
    pub fn lattice(&self) -> &Arc<Oml> {
        &self.l
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[MonoidElem] {
        &self.elems
    }

    pub fn elem(&self, id: usize) -> &MonoidElem {
        &self.elems[id]
    }

    pub fn ids(&self) -> std::ops::Range<usize> {
        0..self.elems.len()
    }

    pub fn unit(&self) -> usize {
        self.unit_id
    }

    pub fn zero(&self) -> usize {
        self.zero_id
    }

    /// Id of the Sasaki projection `π_m`.
    pub fn proj(&self, m: Elem) -> usize {
        self.proj[m]
    }

    pub fn lookup(&self, tbl: &[Elem]) -> Option<usize> {
        self.index.get(tbl).copied()
    }

    fn check(&self, id: usize) -> Result<(), MonoidError> {
        if id < self.len() {
            Ok(())
        } else {
            Err(MonoidError::OutOfRange {
                id,
                size: self.len(),
            })
        }
    }

    /// Product `a ⊙ b` (apply `b` first) without range checks.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let s = self.len();
        if let Some(cache) = &self.mul {
            let slot = &cache[a * s + b];
            let v = slot.load(Ordering::Relaxed);
            if v != EMPTY {
                return v as usize;
            }
            let p = self.mul_uncached(a, b);
            slot.store(p as u32, Ordering::Relaxed);
            p
        } else {
            self.mul_uncached(a, b)
        }
    }

    fn mul_uncached(&self, a: usize, b: usize) -> usize {
        let tbl = compose_tbl(&self.elems[a].tbl, &self.elems[b].tbl);
        *self
            .index
            .get(&tbl)
            .expect("monoid is closed under composition")
    }

    #[inline]
    pub fn star(&self, a: usize) -> usize {
        self.elems[a].star_id
    }

    /// Value of element `a` at lattice element `x`.
    #[inline]
    pub fn apply(&self, a: usize, x: Elem) -> Elem {
        self.elems[a].tbl[x]
    }

    /// `f(1)`, the element the map projects onto when it is a projection.
    pub fn at_top(&self, a: usize) -> Elem {
        self.elems[a].tbl[self.l.top()]
    }

    /// Human-readable word, e.g. `pi_a pi_b`.
    pub fn word(&self, a: usize) -> String {
        self.elems[a]
            .witness
            .iter()
            .map(|&m| format!("pi_{}", self.l.label(m)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn as_endomap(&self, a: usize) -> EndoMap {
        EndoMap::new(self.l.clone(), self.elems[a].tbl.clone()).expect("valid table")
    }

    /// Full Cayley table as CSV `row,col,product`.
    pub fn cayley_csv(&self) -> String {
        let mut out = String::from("row,col,product\n");
        for a in self.ids() {
            for b in self.ids() {
                let _ = writeln!(out, "{a},{b},{}", self.mul(a, b));
            }
        }
        out
    }
}

pub fn mono_compose(m: &InvMonoid, a: usize, b: usize) -> Result<usize, MonoidError> {
    m.check(a)?;
    m.check(b)?;
    Ok(m.mul(a, b))
}

pub fn mono_star(m: &InvMonoid, a: usize) -> Result<usize, MonoidError> {
    m.check(a)?;
    Ok(m.star(a))
}

/// Pair quantifiers run exhaustively up to this many cases.
const PAIR_BUDGET: usize = 1 << 22;

/// Structural audit of a generated monoid.
pub fn verify_monoid(m: &InvMonoid) -> ValidationReport {
    let l = &m.l;
    let mut r = ValidationReport::new(format!(
        "test monoid of {} ({} elements)",
        l.name(),
        m.len()
    ));
    let ex = Mode::Exhaustive;
    let s = m.len();

    let mut words = Tally::new("tables match witness words", ex);
    let mut rev = Tally::new("involution reverses words", ex);
    let mut adj = Tally::new("involution is the orthogonality adjoint", ex);
    for e in &m.elems {
        words.case(word_table(l, e.witness.iter().copied()) == e.tbl, || {
            m.word(e.id)
        });
        let st = &m.elems[e.star_id];
        rev.case(
            word_table(l, e.witness.iter().rev().copied()) == st.tbl,
            || m.word(e.id),
        );
        adj.case(
            orth_adjoint(&m.as_endomap(e.id)).is_ok_and(|f| f.adj().table() == st.tbl.as_slice()),
            || m.word(e.id),
        );
    }
    r.push(words.finish());
    r.push(rev.finish());
    r.push(adj.finish());

    let mut gens = Tally::new("contains every projection and the unit", ex);
    for x in l.elements() {
        gens.case(m.elems[m.proj(x)].tbl == l.projection_table(x), || {
            l.label(x).to_string()
        });
    }
    gens.case(
        m.elems[m.unit_id]
            .tbl
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x),
        || "unit".into(),
    );
    r.push(gens.finish());

    if s * s <= PAIR_BUDGET {
        let mut closed = Tally::new("closed under composition", ex);
        let mut anti = Tally::new("(ab)* = b* a*", ex);
        let mut decomposable = vec![false; s];
        for a in m.ids() {
            for b in m.ids() {
                let tbl = compose_tbl(&m.elems[a].tbl, &m.elems[b].tbl);
                let p = m.index.get(&tbl).copied();
                closed.case(p.is_some(), || format!("{} ; {}", m.word(a), m.word(b)));
                if let Some(p) = p {
                    anti.case(m.star(p) == m.mul(m.star(b), m.star(a)), || {
                        format!("{} ; {}", m.word(a), m.word(b))
                    });
                    if p != a && p != b {
                        decomposable[p] = true;
                    }
                }
            }
        }
        r.push(closed.finish());
        r.push(anti.finish());
        // Least closed set: each non-generator is a product of other elements.
        let is_gen: Vec<bool> = {
            let mut g = vec![false; s];
            for x in l.elements() {
                g[m.proj(x)] = true;
            }
            g
        };
        let mut least = Tally::new("no removable element", ex);
        for a in m.ids() {
            if !is_gen[a] {
                least.case(decomposable[a], || m.word(a));
            }
        }
        r.push(least.finish());
    } else {
        r.push(Check::inconclusive(
            "closed under composition",
            format!("{s} elements exceed the pair budget"),
        ));
    }
    let mut inv = Tally::new("star is an involution", ex);
    for a in m.ids() {
        inv.case(m.star(m.star(a)) == a, || m.word(a));
    }
    inv.case(m.star(m.unit_id) == m.unit_id, || "unit".into());
    r.push(inv.finish());
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oml::catalog;
    use std::collections::HashSet;

    fn arc(name: &str, k: usize) -> Arc<Oml> {
        Arc::new(catalog(name, k).unwrap())
    }

    /// Naive fixpoint over raw tables, independent of the BFS.
    fn brute_closure(l: &Oml) -> HashSet<Vec<Elem>> {
        let mut set: HashSet<Vec<Elem>> = l.elements().map(|m| l.projection_table(m)).collect();
        loop {
            let items: Vec<Vec<Elem>> = set.iter().cloned().collect();
            let before = set.len();
            for a in &items {
                for b in &items {
                    set.insert(b.iter().map(|&x| a[x]).collect());
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    #[test]
    fn sizes_match_oracle() {
        assert_eq!(generate_t(&arc("chain2", 0), 100).unwrap().len(), 2);
        for k in 0..=4 {
            assert_eq!(generate_t(&arc("boolean", k), 1000).unwrap().len(), 1 << k);
        }
        for k in 1..=3 {
            let l = arc("mo", k);
            let m = generate_t(&l, 1000).unwrap();
            let oracle = brute_closure(&l);
            let got: HashSet<Vec<Elem>> = m.elems().iter().map(|e| e.tbl.clone()).collect();
            assert_eq!(got, oracle);
            // zero, identity, and one map per ordered pair of atoms
            let want = if k == 1 { 4 } else { 4 * k * k + 2 };
            assert_eq!(m.len(), want, "MO{k}");
        }
    }

    #[test]
    fn audits_pass() {
        for (name, k) in [("chain2", 0), ("boolean", 3), ("mo", 2), ("mo", 3)] {
            let m = generate_t(&arc(name, k), 1000).unwrap();
            let r = verify_monoid(&m);
            assert!(r.all_pass(), "{r}");
        }
    }

    #[test]
    fn mo2_products_and_star() {
        let l = arc("mo", 2);
        let m = generate_t(&l, 100).unwrap();
        let a = l.index_of("a").unwrap();
        let b = l.index_of("b").unwrap();
        let (pa, pb) = (m.proj(a), m.proj(b));
        let ab = mono_compose(&m, pa, pb).unwrap();
        let want: Vec<Elem> = l
            .elements()
            .map(|x| {
                if x == l.bot() || x == l.index_of("b'").unwrap() {
                    l.bot()
                } else {
                    a
                }
            })
            .collect();
        assert_eq!(m.elem(ab).tbl, want);
        assert_eq!(mono_star(&m, ab).unwrap(), m.mul(pb, pa));
        assert_eq!(mono_star(&m, pa).unwrap(), pa);
        assert_eq!(m.star(m.unit()), m.unit());
        for x in m.ids() {
            assert_eq!(m.mul(m.unit(), x), x);
            assert_eq!(m.mul(x, m.unit()), x);
        }
        assert!(mono_compose(&m, 99, 0).is_err());
    }

    #[test]
    fn boolean_monoid_is_the_meet_semilattice() {
        let l = arc("boolean", 3);
        let m = generate_t(&l, 100).unwrap();
        for x in l.elements() {
            for y in l.elements() {
                assert_eq!(m.mul(m.proj(x), m.proj(y)), m.proj(l.meet(x, y)));
            }
        }
    }

    #[test]
    fn cap_and_invalid_lattice() {
        assert_eq!(
            generate_t(&arc("mo", 2), 10).unwrap_err(),
            MonoidError::SizeExceeded {
                partial: 10,
                cap: 10
            }
        );
        assert!(matches!(
            generate_t(&arc("o6", 0), 100),
            Err(MonoidError::InvalidLattice(_))
        ));
    }

    #[test]
    fn cayley_csv_shape() {
        let m = generate_t(&arc("chain2", 0), 10).unwrap();
        let csv = m.cayley_csv();
        assert_eq!(csv.lines().count(), 1 + 4);
        assert!(csv.starts_with("row,col,product\n"));
    }

    #[test]
    fn shortest_words() {
        let m = generate_t(&arc("mo", 3), 1000).unwrap();
        // complementary atoms need a detour: pi_a' pi_b pi_a
        assert_eq!(m.elems().iter().map(|e| e.witness.len()).max(), Some(3));
    }
}
