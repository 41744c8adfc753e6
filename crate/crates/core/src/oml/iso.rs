//! Ortholattice isomorphisms between finite lattices.

use super::{Elem, Oml};
use crate::report::{Mode, Tally, ValidationReport};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("map has {got} entries but the source lattice has {want} elements")]
    SizeMismatch { got: usize, want: usize },
    #[error("map entry {value} is not an element of the target (size {n})")]
    OutOfRange { value: Elem, n: usize },
    #[error(
        "cannot compose: target of the first map is {first}, source of the second is {second}"
    )]
    NotComposable { first: String, second: String },
}

/// A candidate ortholattice isomorphism, given by its element table.
///
/// Construction only checks sizes; [`check_ortho_iso`] decides whether the
/// table really is an isomorphism.
#[derive(Clone, Debug)]
pub struct OrthoIso {
    src: Arc<Oml>,
    dst: Arc<Oml>,
    map: Vec<Elem>,
}

impl PartialEq for OrthoIso {
    fn eq(&self, other: &Self) -> bool {
        *self.src == *other.src && *self.dst == *other.dst && self.map == other.map
    }
}

impl Eq for OrthoIso {}

impl OrthoIso {
    pub fn new(src: Arc<Oml>, dst: Arc<Oml>, map: Vec<Elem>) -> Result<Self, IsoError> {
        if map.len() != src.len() {
            return Err(IsoError::SizeMismatch {
                got: map.len(),
                want: src.len(),
            });
        }
        if let Some(&value) = map.iter().find(|&&v| v >= dst.len()) {
            return Err(IsoError::OutOfRange {
                value,
                n: dst.len(),
            });
        }
        Ok(OrthoIso { src, dst, map })
    }

    pub fn identity(l: Arc<Oml>) -> Self {
        let map = l.elements().collect();
        OrthoIso {
            src: l.clone(),
            dst: l,
            map,
        }
    }

    /// Build from label pairs; unmentioned elements map to the equally named
    /// element of the target.
    pub fn from_labels(
        src: Arc<Oml>,
        dst: Arc<Oml>,
        pairs: &[(&str, &str)],
    ) -> Result<Self, String> {
        let mut map = Vec::with_capacity(src.len());
        for x in src.elements() {
            let from = src.label(x);
            let to = pairs
                .iter()
                .find(|(a, _)| *a == from)
                .map_or(from, |(_, b)| *b);
            map.push(
                dst.index_of(to)
                    .ok_or_else(|| format!("`{to}` is not an element of {}", dst.name()))?,
            );
        }
        OrthoIso::new(src, dst, map).map_err(|e| e.to_string())
    }

    pub fn src(&self) -> &Arc<Oml> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<Oml> {
        &self.dst
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// The inverse table, if the map is a bijection.
    pub fn inverse(&self) -> Option<OrthoIso> {
        if self.src.len() != self.dst.len() {
            return None;
        }
        let mut inv = vec![usize::MAX; self.dst.len()];
        for (x, &y) in self.map.iter().enumerate() {
            if inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        Some(OrthoIso {
            src: self.dst.clone(),
            dst: self.src.clone(),
            map: inv,
        })
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &OrthoIso) -> Result<OrthoIso, IsoError> {
        if *self.dst != *other.src {
            return Err(IsoError::NotComposable {
                first: self.dst.name().to_string(),
                second: other.src.name().to_string(),
            });
        }
        Ok(OrthoIso {
            src: self.src.clone(),
            dst: other.dst.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        *self.src == *self.dst && self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Short human-readable form listing the elements that move.
    pub fn describe(&self) -> String {
        let moved: Vec<String> = self
            .map
            .iter()
            .enumerate()
            .filter(|&(x, &y)| self.src.label(x) != self.dst.label(y))
            .map(|(x, &y)| format!("{}->{}", self.src.label(x), self.dst.label(y)))
            .collect();
        if moved.is_empty() {
            "id".to_string()
        } else {
            moved.join(",")
        }
    }
}

/// Check that `g` is an ortholattice isomorphism.
///
/// Meet and join preservation follow from the other properties; they are
/// reported as separate checks all the same.
pub fn check_ortho_iso(g: &OrthoIso) -> ValidationReport {
    let (s, d) = (&*g.src, &*g.dst);
    let mut report = ValidationReport::new(format!(
        "ortholattice isomorphism {} -> {}",
        s.name(),
        d.name()
    ));
    let ex = Mode::Exhaustive;
    let ls = |x| s.label(x).to_string();

    let mut bij = Tally::new("bijective", ex);
    bij.case(s.len() == d.len(), || {
        format!("{} elements vs {}", s.len(), d.len())
    });
    let mut seen = vec![None; d.len()];
    for x in s.elements() {
        let y = g.map[x];
        bij.case(seen[y].is_none(), || {
            format!(
                "{} and {} both map to {}",
                ls(seen[y].unwrap_or(x)),
                ls(x),
                d.label(y)
            )
        });
        seen[y] = Some(x);
    }
    report.push(bij.finish());

    let mut fwd = Tally::new("order-preserving", ex);
    let mut back = Tally::new("order-reflecting", ex);
    let mut meet = Tally::new("meet-preserving", ex);
    let mut join = Tally::new("join-preserving", ex);
    for x in s.elements() {
        for y in s.elements() {
            let (gx, gy) = (g.map[x], g.map[y]);
            if s.leq(x, y) {
                fwd.case(d.leq(gx, gy), || format!("{} <= {}", ls(x), ls(y)));
            } else {
                back.case(!d.leq(gx, gy), || {
                    format!("{} <= {} after mapping", ls(x), ls(y))
                });
            }
            meet.case(g.map[s.meet(x, y)] == d.meet(gx, gy), || {
                format!("({}, {})", ls(x), ls(y))
            });
            join.case(g.map[s.join(x, y)] == d.join(gx, gy), || {
                format!("({}, {})", ls(x), ls(y))
            });
        }
    }
    let mut perp = Tally::new("perp-preserving", ex);
    for x in s.elements() {
        perp.case(g.map[s.perp(x)] == d.perp(g.map[x]), || ls(x));
    }
    report.push(fwd.finish());
    report.push(back.finish());
    report.push(perp.finish());
    report.push(meet.finish());
    report.push(join.finish());
    report
}

/// Search for an ortholattice isomorphism `a -> b`.
pub fn find_isomorphism(a: &Arc<Oml>, b: &Arc<Oml>) -> Option<OrthoIso> {
    let mut found = None;
    search(a, b, &mut |map| {
        found = Some(map.to_vec());
        false
    });
    found.map(|map| OrthoIso {
        src: a.clone(),
        dst: b.clone(),
        map,
    })
}

/// All ortholattice automorphisms of `l`, in lexicographic order of their
/// tables. The identity comes first.
pub fn automorphisms(l: &Arc<Oml>) -> Vec<OrthoIso> {
    let mut all = Vec::new();
    search(l, l, &mut |map| {
        all.push(map.to_vec());
        true
    });
    all.sort();
    all.into_iter()
        .map(|map| OrthoIso {
            src: l.clone(),
            dst: l.clone(),
            map,
        })
        .collect()
}

/// Backtracking over order- and perp-compatible bijections. `visit` returns
/// whether to keep searching.
fn search(a: &Oml, b: &Oml, visit: &mut dyn FnMut(&[Elem]) -> bool) {
    let n = a.len();
    if n != b.len() {
        return;
    }
    let sig = |l: &Oml, x: Elem| (l.down[x].count_ones(..), l.up[x].count_ones(..));
    // Assign elements bottom-up so comparabilities prune early.
    let mut order: Vec<Elem> = a.elements().collect();
    order.sort_by_key(|&x| (sig(a, x), x));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        a: &Oml,
        b: &Oml,
        order: &[Elem],
        pos: usize,
        map: &mut [Elem],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> bool {
        let Some(&x) = order.get(pos) else {
            return visit(map);
        };
        if map[x] != usize::MAX {
            return go(a, b, order, pos + 1, map, used, visit);
        }
        let px = a.perp(x);
        for y in b.elements() {
            if used[y] {
                continue;
            }
            if a.down[x].count_ones(..) != b.down[y].count_ones(..)
                || a.up[x].count_ones(..) != b.up[y].count_ones(..)
            {
                continue;
            }
            let py = b.perp(y);
            if px == x {
                if py != y {
                    continue;
                }
            } else if py == y || used[py] {
                continue;
            }
            let consistent = |z: Elem, w: Elem, map: &[Elem]| {
                a.elements().all(|u| {
                    let v = map[u];
                    v == usize::MAX || (a.leq(u, z) == b.leq(v, w) && a.leq(z, u) == b.leq(w, v))
                })
            };
            if !consistent(x, y, map) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            let ok = px == x || {
                let c = consistent(px, py, map);
                if c {
                    map[px] = py;
                    used[py] = true;
                }
                c
            };
            if ok {
                if !go(a, b, order, pos + 1, map, used, visit) {
                    return false;
                }
                if px != x {
                    map[px] = usize::MAX;
                    used[py] = false;
                }
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        true
    }
    go(a, b, &order, 0, &mut map, &mut used, visit);
}

#[cfg(test)]
mod tests {
    use super::super::catalog;
    use super::*;
    use crate::report::Status;

    fn arc(name: &str, k: usize) -> Arc<Oml> {
        Arc::new(catalog(name, k).unwrap())
    }

    #[test]
    fn identity_and_swap_on_mo2() {
        let l = arc("mo", 2);
        assert!(check_ortho_iso(&OrthoIso::identity(l.clone())).all_pass());
        let swap = OrthoIso::from_labels(
            l.clone(),
            l.clone(),
            &[("a", "b"), ("b", "a"), ("a'", "b'"), ("b'", "a'")],
        )
        .unwrap();
        assert!(check_ortho_iso(&swap).all_pass());
        assert_eq!(swap.then(&swap).unwrap(), OrthoIso::identity(l));
    }

    #[test]
    fn perp_violation_witness() {
        let l = arc("mo", 2);
        let bad = OrthoIso::from_labels(
            l.clone(),
            l.clone(),
            &[("a", "b"), ("b", "a"), ("b'", "b'")],
        )
        .unwrap();
        let r = check_ortho_iso(&bad);
        let c = r.check("perp-preserving").unwrap();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness.as_deref(), Some("a"));
        assert!(r.check("order-preserving").unwrap().passed());
    }

    #[test]
    fn size_mismatch() {
        let l = arc("mo", 2);
        assert_eq!(
            OrthoIso::new(l.clone(), l, vec![0, 1]),
            Err(IsoError::SizeMismatch { got: 2, want: 6 })
        );
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&arc("mo", 2)).len(), 8);
        assert_eq!(automorphisms(&arc("mo", 3)).len(), 48);
        assert_eq!(automorphisms(&arc("boolean", 3)).len(), 6);
        assert_eq!(automorphisms(&arc("chain2", 0)).len(), 1);
        assert_eq!(automorphisms(&arc("o6", 0)).len(), 2);
        for g in automorphisms(&arc("mo", 3)) {
            assert!(check_ortho_iso(&g).all_pass(), "{}", g.describe());
        }
        assert!(automorphisms(&arc("mo", 2))[0].is_identity());
    }

    #[test]
    fn chain2_is_b1_and_mo1_is_b2() {
        assert!(find_isomorphism(&arc("chain2", 0), &arc("boolean", 1)).is_some());
        let g = find_isomorphism(&arc("mo", 1), &arc("boolean", 2)).unwrap();
        assert!(check_ortho_iso(&g).all_pass());
        assert!(find_isomorphism(&arc("mo", 2), &arc("boolean", 3)).is_none());
        assert!(find_isomorphism(&arc("o6", 0), &arc("mo", 2)).is_none());
    }

    #[test]
    fn inverse_round_trips() {
        let l = arc("mo", 3);
        for g in automorphisms(&l) {
            let inv = g.inverse().unwrap();
            assert!(g.then(&inv).unwrap().is_identity());
        }
    }
}
