//! Finite orthomodular lattices.
//!
//! Elements are identified by their declaration index; labels are only used for
//! presentation. Meet and join tables are derived once from the order relation,
//! so every lattice operation afterwards is a table lookup.

mod catalog;
mod iso;
mod parse;
mod validate;

pub use catalog::{catalog, CatalogError};
pub use iso::{automorphisms, check_ortho_iso, find_isomorphism, IsoError, OrthoIso};
pub use parse::{parse_lattice, parse_lattice_file, parse_lattice_json, ParseError, ParseOptions};
pub use validate::validate_oml;

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// Index of a lattice element.
pub type Elem = usize;

/// Default element limit for parsed lattices.
pub const DEFAULT_MAX_ELEMENTS: usize = 64;
/// Largest lattice the crate will build (the `boolean(10)` catalog entry).
pub const HARD_MAX_ELEMENTS: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("order relation is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(String, String),
    #[error("not a lattice: {a} and {b} have no {kind}; maximal candidates {x} and {y}")]
    NotLattice {
        a: String,
        b: String,
        kind: &'static str,
        x: String,
        y: String,
    },
    #[error("lattice has no elements")]
    Empty,
    #[error("{n} elements exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("table sizes do not match the element count {0}")]
    Malformed(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("element index {index} out of range for a lattice of {n} elements")]
pub struct OutOfRange {
    pub index: usize,
    pub n: usize,
}

/// A finite bounded lattice with an orthocomplementation map.
///
/// Values built by [`Oml::from_order`] always have consistent meet/join tables;
/// whether the orthomodular axioms hold is decided separately by
/// [`validate_oml`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oml {
    name: String,
    names: Vec<String>,
    // up[i] = { j : i <= j }
    up: Vec<FixedBitSet>,
    // down[i] = { j : j <= i }
    down: Vec<FixedBitSet>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    perp: Vec<Elem>,
    bot: Elem,
    top: Elem,
}

impl Oml {
    /// Build a lattice from a reflexive-transitive order matrix and a perp map.
    ///
    /// `leq[i][j]` is true iff element `i` is below `j`. The relation must
    /// already be closed; use [`transitive_closure`] for generating relations.
    pub fn from_order(
        name: impl Into<String>,
        names: Vec<String>,
        leq: &[Vec<bool>],
        perp: Vec<Elem>,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if n > HARD_MAX_ELEMENTS {
            return Err(LatticeError::TooLarge {
                n,
                max: HARD_MAX_ELEMENTS,
            });
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) || perp.len() != n {
            return Err(LatticeError::Malformed(n));
        }
        if perp.iter().any(|&p| p >= n) {
            return Err(LatticeError::Malformed(n));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(LatticeError::NotAntisymmetric(
                        names[i].clone(),
                        names[j].clone(),
                    ));
                }
            }
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        let height: Vec<usize> = down.iter().map(|d| d.count_ones(..)).collect();
        let depth: Vec<usize> = up.iter().map(|u| u.count_ones(..)).collect();

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let m = bound(&down, &down[i], &down[j], &height).map_err(|(x, y)| {
                    LatticeError::NotLattice {
                        a: names[i].clone(),
                        b: names[j].clone(),
                        kind: "meet",
                        x: names[x].clone(),
                        y: names[y].clone(),
                    }
                })?;
                meet[i * n + j] = m;
                meet[j * n + i] = m;
            }
        }
        // Joins in a second pass, so a missing meet is the reported witness.
        for i in 0..n {
            for j in i..n {
                let u = bound(&up, &up[i], &up[j], &depth).map_err(|(x, y)| {
                    LatticeError::NotLattice {
                        a: names[i].clone(),
                        b: names[j].clone(),
                        kind: "join",
                        x: names[x].clone(),
                        y: names[y].clone(),
                    }
                })?;
                join[i * n + j] = u;
                join[j * n + i] = u;
            }
        }
        let bot = (0..n).fold(0, |acc, x| meet[acc * n + x]);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        Ok(Oml {
            name: name.into(),
            names,
            up,
            down,
            meet,
            join,
            perp,
            bot,
            top,
        })
    }

    /// Assemble a lattice from explicit tables without checking them.
    ///
    /// Only sizes are checked. This exists so that [`validate_oml`] can be run
    /// on deliberately broken structures.
    #[allow(clippy::too_many_arguments)]
    pub fn from_raw_parts(
        name: impl Into<String>,
        names: Vec<String>,
        leq: &[Vec<bool>],
        meet: Vec<Elem>,
        join: Vec<Elem>,
        perp: Vec<Elem>,
        bot: Elem,
        top: Elem,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        let sized = leq.len() == n
            && leq.iter().all(|r| r.len() == n)
            && meet.len() == n * n
            && join.len() == n * n
            && perp.len() == n
            && bot < n
            && top < n
            && meet.iter().chain(&join).chain(&perp).all(|&x| x < n);
        if n == 0 || !sized {
            return Err(LatticeError::Malformed(n));
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        Ok(Oml {
            name: name.into(),
            names,
            up,
            down,
            meet,
            join,
            perp,
            bot,
            top,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.names.iter().position(|s| s == label)
    }

    pub fn bot(&self) -> Elem {
        self.bot
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.len() + y]
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.len() + y]
    }

    #[inline]
    pub fn perp(&self, x: Elem) -> Elem {
        self.perp[x]
    }

    /// `x ⊥ y`, i.e. `x <= perp(y)`.
    #[inline]
    pub fn orthogonal(&self, x: Elem, y: Elem) -> bool {
        self.leq(x, self.perp(y))
    }

    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Elements below `x`, as a bitset over element indices.
    pub fn down_set(&self, x: Elem) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn up_set(&self, x: Elem) -> &FixedBitSet {
        &self.up[x]
    }

    /// Atoms: elements covering the bottom.
    pub fn atoms(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&x| x != self.bot && self.down[x].count_ones(..) == 2)
            .collect()
    }

    /// Join-irreducible elements: non-bottom elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&x| x != self.bot && self.lower_covers(x).len() == 1)
            .collect()
    }

    pub fn lower_covers(&self, x: Elem) -> Vec<Elem> {
        self.down[x]
            .ones()
            .filter(|&y| y != x)
            .filter(|&y| {
                // no z with y < z < x
                !self.down[x]
                    .ones()
                    .any(|z| z != x && z != y && self.leq(y, z))
            })
            .collect()
    }

    pub fn check_index(&self, x: Elem) -> Result<(), OutOfRange> {
        if x < self.len() {
            Ok(())
        } else {
            Err(OutOfRange {
                index: x,
                n: self.len(),
            })
        }
    }

    /// `m ∧ (m⊥ ∨ n)` without range checks.
    #[inline]
    pub fn project(&self, m: Elem, n: Elem) -> Elem {
        self.meet(m, self.join(self.perp(m), n))
    }

    /// `m⊥ ∨ (m ∧ n)` without range checks.
    #[inline]
    pub fn hook(&self, m: Elem, n: Elem) -> Elem {
        self.join(self.perp(m), self.meet(m, n))
    }

    /// The Sasaki projection onto `m`, evaluated at `n`.
    pub fn sasaki_projection(&self, m: Elem, n: Elem) -> Result<Elem, OutOfRange> {
        self.check_index(m)?;
        self.check_index(n)?;
        Ok(self.project(m, n))
    }

    /// The Sasaki hook from `m`, evaluated at `n`.
    pub fn sasaki_hook(&self, m: Elem, n: Elem) -> Result<Elem, OutOfRange> {
        self.check_index(m)?;
        self.check_index(n)?;
        Ok(self.hook(m, n))
    }

    /// Table of the Sasaki projection onto `m`.
    pub fn projection_table(&self, m: Elem) -> Vec<Elem> {
        self.elements().map(|n| self.project(m, n)).collect()
    }

    /// The order as a dense boolean matrix.
    pub fn order_matrix(&self) -> Vec<Vec<bool>> {
        self.elements()
            .map(|i| self.elements().map(|j| self.leq(i, j)).collect())
            .collect()
    }

    /// Same structure with elements renamed through `names`.
    pub fn relabeled(&self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.len());
        Oml {
            names,
            ..self.clone()
        }
    }
}

/// Greatest element of `a ∩ b` with respect to the sets in `rows`
/// (`rows[x]` = elements on the "lower" side of `x`). Returns two maximal
/// candidates when no greatest element exists.
fn bound(
    rows: &[FixedBitSet],
    a: &FixedBitSet,
    b: &FixedBitSet,
    size: &[usize],
) -> Result<Elem, (Elem, Elem)> {
    let mut common = a.clone();
    common.intersect_with(b);
    let mut best: Option<Elem> = None;
    for x in common.ones() {
        if best.is_none_or(|b| size[x] > size[b]) {
            best = Some(x);
        }
    }
    match best {
        Some(g) if common.is_subset(&rows[g]) => Ok(g),
        _ => {
            let maximal: Vec<Elem> = common
                .ones()
                .filter(|&x| !common.ones().any(|y| y != x && rows[y].contains(x)))
                .collect();
            let x = maximal.first().copied().unwrap_or(0);
            let y = maximal.get(1).copied().unwrap_or(x);
            Err((x, y))
        }
    }
}

/// Reflexive-transitive closure of a relation given as a dense matrix.
pub fn transitive_closure(rel: &mut [Vec<bool>]) {
    let n = rel.len();
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    let mut rows: Vec<FixedBitSet> = rel
        .iter()
        .map(|r| {
            let mut b = FixedBitSet::with_capacity(n);
            for (j, &v) in r.iter().enumerate() {
                b.set(j, v);
            }
            b
        })
        .collect();
    for k in 0..n {
        let rk = rows[k].clone();
        for row in rows.iter_mut() {
            if row.contains(k) {
                row.union_with(&rk);
            }
        }
    }
    for (i, r) in rel.iter_mut().enumerate() {
        for (j, v) in r.iter_mut().enumerate() {
            *v = rows[i].contains(j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mo2() -> Oml {
        catalog("mo", 2).unwrap()
    }

    #[test]
    fn mo2_meets_and_joins() {
        let l = mo2();
        let a = l.index_of("a").unwrap();
        let b = l.index_of("b").unwrap();
        assert_eq!(l.join(a, b), l.top());
        assert_eq!(l.meet(a, b), l.bot());
    }

    #[test]
    fn sasaki_examples() {
        let l = mo2();
        let a = l.index_of("a").unwrap();
        let a_ = l.index_of("a'").unwrap();
        let b = l.index_of("b").unwrap();
        assert_eq!(l.sasaki_projection(a, b).unwrap(), a);
        assert_eq!(l.sasaki_hook(a, b).unwrap(), a_);
        for x in l.elements() {
            assert_eq!(l.sasaki_projection(l.top(), x).unwrap(), x);
            assert_eq!(l.sasaki_projection(x, l.top()).unwrap(), x);
            assert_eq!(l.sasaki_hook(l.bot(), x).unwrap(), l.top());
        }
    }

    #[test]
    fn sasaki_on_boolean_pair() {
        let l = catalog("boolean", 2).unwrap();
        let p = l.index_of("p").unwrap();
        let q = l.index_of("q").unwrap();
        assert_eq!(l.sasaki_hook(p, q).unwrap(), q);
        assert_eq!(l.sasaki_projection(p, q).unwrap(), l.bot());
    }

    #[test]
    fn out_of_range_is_reported() {
        let l = mo2();
        assert_eq!(
            l.sasaki_projection(6, 0),
            Err(OutOfRange { index: 6, n: 6 })
        );
        assert!(l.sasaki_hook(0, 99).is_err());
    }

    #[test]
    fn closure_of_chain() {
        let mut r = vec![vec![false; 3]; 3];
        r[0][1] = true;
        r[1][2] = true;
        transitive_closure(&mut r);
        assert!(r[0][2] && r[1][1] && !r[2][0]);
    }

    #[test]
    fn join_irreducibles_of_mo2_are_atoms() {
        let l = mo2();
        assert_eq!(l.join_irreducibles(), l.atoms());
        assert_eq!(l.atoms().len(), 4);
        let b3 = catalog("boolean", 3).unwrap();
        assert_eq!(b3.join_irreducibles().len(), 3);
    }
}
