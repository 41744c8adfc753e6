//! Subspaces of three-dimensional rational space with exact arithmetic.
//!
//! A subspace is stored as the integer row-reduced echelon basis with
//! primitive rows and positive pivots, so equality of values is equality of
//! subspaces. Nothing here touches floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;

pub type Vec3 = [BigInt; 3];

pub fn vec3(a: i64, b: i64, c: i64) -> Vec3 {
    [a.into(), b.into(), c.into()]
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatSubspace {
    basis: Vec<Vec3>,
}

fn primitive(mut v: Vec3) -> Vec3 {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Fraction-free reduced echelon form of the given rows.
fn rref(rows: Vec<Vec3>) -> Vec<Vec3> {
    let mut rows: Vec<Vec3> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(primitive)
        .collect();
    let mut out: Vec<Vec3> = Vec::new();
    for col in 0..3 {
        let Some(p) = rows.iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        let mut pivot = rows.swap_remove(p);
        if pivot[col].is_negative() {
            for x in pivot.iter_mut() {
                *x = -x.clone();
            }
        }
        let elim = |r: &Vec3, pivot: &Vec3| -> Vec3 {
            if r[col].is_zero() {
                return r.clone();
            }
            let (a, b) = (pivot[col].clone(), r[col].clone());
            primitive(std::array::from_fn(|i| &r[i] * &a - &pivot[i] * &b))
        };
        rows = rows
            .iter()
            .map(|r| elim(r, &pivot))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        out = out.iter().map(|r| elim(r, &pivot)).collect();
        out.push(pivot);
    }
    // Rows above a pivot were cleared by scaling; restore positive pivots.
    out.into_iter()
        .map(|mut r| {
            if let Some(lead) = r.iter().find(|x| !x.is_zero()) {
                if lead.is_negative() {
                    for x in r.iter_mut() {
                        *x = -x.clone();
                    }
                }
            }
            primitive(r)
        })
        .collect()
}

/// Integer basis of `{h : ⟨h, r⟩ = 0 for every row r}`.
fn nullspace(rows: &[Vec3]) -> Vec<Vec3> {
    let pivots: Vec<usize> = rows
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect();
    let mut out = Vec::new();
    for free in (0..3).filter(|c| !pivots.contains(c)) {
        // Scale so every pivot coefficient divides evenly.
        let scale = rows
            .iter()
            .zip(&pivots)
            .fold(BigInt::one(), |acc, (r, &p)| acc.lcm(&r[p]));
        let mut v: Vec3 = std::array::from_fn(|_| BigInt::zero());
        v[free] = scale.clone();
        for (r, &p) in rows.iter().zip(&pivots) {
            v[p] = -(&r[free] * &scale) / &r[p];
        }
        out.push(primitive(v));
    }
    out
}

impl RatSubspace {
    pub fn zero() -> Self {
        RatSubspace { basis: Vec::new() }
    }

    pub fn full() -> Self {
        span(&[vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)])
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec3] {
        &self.basis
    }

    pub fn contains_vec(&self, v: &Vec3) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.clone());
        rref(rows).len() == self.dim()
    }

    /// `self ⊆ other`.
    pub fn le(&self, other: &RatSubspace) -> bool {
        self.basis.iter().all(|v| other.contains_vec(v))
    }

    /// Basis rows as plain integers, for reports.
    pub fn rows(&self) -> Vec<[String; 3]> {
        self.basis
            .iter()
            .map(|r| std::array::from_fn(|i| r[i].to_string()))
            .collect()
    }
}

impl fmt::Display for RatSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| format!("({}, {}, {})", r[0], r[1], r[2]))
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

impl Serialize for RatSubspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

pub fn span(vectors: &[Vec3]) -> RatSubspace {
    RatSubspace {
        basis: rref(vectors.to_vec()),
    }
}

pub fn join(a: &RatSubspace, b: &RatSubspace) -> RatSubspace {
    span(&[a.basis.clone(), b.basis.clone()].concat())
}

pub fn orth(a: &RatSubspace) -> RatSubspace {
    if a.dim() == 0 {
        return RatSubspace::full();
    }
    span(&nullspace(&a.basis))
}

/// `a ∩ b = (a⊥ ∨ b⊥)⊥`.
pub fn meet(a: &RatSubspace, b: &RatSubspace) -> RatSubspace {
    orth(&join(&orth(a), &orth(b)))
}

/// `π_u(x) = u ∧ (x ∨ u⊥)`.
pub fn sasaki3(u: &RatSubspace, x: &RatSubspace) -> RatSubspace {
    meet(u, &join(x, &orth(u)))
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub u: RatSubspace,
    pub v: RatSubspace,
    pub x: RatSubspace,
    pub pi_u_x: RatSubspace,
    pub pi_v_x: RatSubspace,
    pub monotone_violation: bool,
    /// The four facts of the standard witness, when `x` is the standard one.
    #[serde(skip)]
    pub facts: Vec<(String, bool)>,
}

impl WitnessReport {
    /// True when `x` breaks monotonicity, and for the standard `x` when all
    /// four facts hold as well.
    pub fn passed(&self) -> bool {
        self.monotone_violation && self.facts.iter().all(|(_, ok)| *ok)
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "u = {}", self.u)?;
        writeln!(f, "v = {}", self.v)?;
        writeln!(f, "x = {}", self.x)?;
        writeln!(f, "pi_u(x) = {}", self.pi_u_x)?;
        writeln!(f, "pi_v(x) = {}", self.pi_v_x)?;
        for (name, ok) in &self.facts {
            writeln!(f, "[{}] {name}", if *ok { "PASS" } else { "FAIL" })?;
        }
        writeln!(f, "monotone violation: {}", self.monotone_violation)
    }
}

/// The standard witness `u = ⟨e1⟩ ⊆ v = ⟨e1, e2⟩`, `x = ⟨e1+e2+e3⟩`.
pub fn witness_report() -> WitnessReport {
    witness_report_for(&span(&[vec3(1, 1, 1)]))
}

/// Evaluate the witness at an arbitrary `x`. The four facts are asserted
/// only for the standard `x`; other inputs just report their values.
pub fn witness_report_for(x: &RatSubspace) -> WitnessReport {
    let u = span(&[vec3(1, 0, 0)]);
    let v = span(&[vec3(1, 0, 0), vec3(0, 1, 0)]);
    let pu = sasaki3(&u, x);
    let pv = sasaki3(&v, x);
    let monotone_violation = u.le(&v) && !pu.le(&pv);
    let mut facts = Vec::new();
    if *x == span(&[vec3(1, 1, 1)]) {
        facts.push(("u is contained in v".to_string(), u.le(&v)));
        facts.push((
            "pi_u(x) = span(e1)".to_string(),
            pu == span(&[vec3(1, 0, 0)]),
        ));
        facts.push((
            "pi_v(x) = span(e1+e2)".to_string(),
            pv == span(&[vec3(1, 1, 0)]),
        ));
        facts.push((
            "span(e1) is not contained in span(e1+e2)".to_string(),
            !pu.le(&pv),
        ));
    }
    WitnessReport {
        u,
        v,
        x: x.clone(),
        pi_u_x: pu,
        pi_v_x: pv,
        monotone_violation,
        facts,
    }
}

/// Seeded random subspaces with entries in `[-3, 3]`, plus `0` and the
/// whole space.
pub fn stress_set(seed: u64, count: usize) -> Vec<RatSubspace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![RatSubspace::zero(), RatSubspace::full()];
    while out.len() < count {
        let k = rng.gen_range(1..=2);
        let vs: Vec<Vec3> = (0..k)
            .map(|_| {
                vec3(
                    rng.gen_range(-3..=3),
                    rng.gen_range(-3..=3),
                    rng.gen_range(-3..=3),
                )
            })
            .collect();
        out.push(span(&vs));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::DEFAULT_SEED;

    fn dot(a: &Vec3, b: &Vec3) -> BigInt {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn span_examples() {
        assert_eq!(span(&[vec3(1, 0, 0)]).dim(), 1);
        assert_eq!(span(&[vec3(1, 1, 1)]).basis(), &[vec3(1, 1, 1)]);
        assert_eq!(span(&[vec3(1, 0, 0), vec3(1, 0, 0)]).dim(), 1);
        assert_eq!(span(&[vec3(0, 0, 0)]).dim(), 0);
        assert_eq!(span(&[vec3(-2, -2, 0)]), span(&[vec3(1, 1, 0)]));
        assert_eq!(
            span(&[vec3(1, 2, 0), vec3(2, 1, 0)]),
            span(&[vec3(1, 0, 0), vec3(0, 1, 0)])
        );
    }

    #[test]
    fn lattice_operation_examples() {
        let u = span(&[vec3(1, 0, 0)]);
        assert_eq!(orth(&u), span(&[vec3(0, 1, 0), vec3(0, 0, 1)]));
        assert_eq!(meet(&u, &orth(&u)).dim(), 0);
        let j = join(&span(&[vec3(1, 1, 0)]), &span(&[vec3(0, 0, 1)]));
        assert_eq!(j, span(&[vec3(1, 1, 0), vec3(0, 0, 1)]));
        assert_eq!(sasaki3(&u, &RatSubspace::zero()).dim(), 0);
    }

    #[test]
    fn standard_witness() {
        let r = witness_report();
        assert!(r.passed(), "{r}");
        assert_eq!(r.pi_u_x, span(&[vec3(1, 0, 0)]));
        assert_eq!(r.pi_v_x, span(&[vec3(1, 1, 0)]));
    }

    #[test]
    fn perturbed_witnesses() {
        let r = witness_report_for(&span(&[vec3(1, 0, 0)]));
        assert!(!r.monotone_violation);
        assert!(!r.passed());
        let r = witness_report_for(&span(&[vec3(0, 1, 1)]));
        assert!(r.facts.is_empty());
    }

    #[test]
    fn stress_set_is_an_orthomodular_sample() {
        let s = stress_set(DEFAULT_SEED, 50);
        assert_eq!(s.len(), 50);
        for a in &s {
            assert_eq!(a.dim() + orth(a).dim(), 3);
            for p in orth(a).basis() {
                assert!(a.basis().iter().all(|q| dot(p, q).is_zero()));
            }
            assert_eq!(&orth(&orth(a)), a);
            for b in &s {
                if a.le(b) {
                    assert!(orth(b).le(&orth(a)));
                    assert_eq!(&join(a, &meet(&orth(a), b)), b);
                }
                let m = meet(a, b);
                assert!(m.le(a) && m.le(b));
                for v in m.basis() {
                    assert!(a.contains_vec(v) && b.contains_vec(v));
                }
            }
        }
    }
}
