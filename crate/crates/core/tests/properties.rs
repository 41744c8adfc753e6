//! Property tests for the algebraic invariants, on random inputs.

use num_bigint::BigInt;
use omloq::config::DEFAULT_LIN_CAP;
use omloq::dynalg::{DynAlgebra, DynElem};
use omloq::hilbert3::{join, meet, orth, sasaki3, span, vec3, RatSubspace, Vec3};
use omloq::linmap::{enumerate_lin, orth_adjoint, LinMap};
use omloq::oml::{catalog, Oml};
use omloq::testmonoid::{generate_t, DEFAULT_MONOID_CAP};
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

fn lattices() -> &'static [Arc<Oml>] {
    static L: OnceLock<Vec<Arc<Oml>>> = OnceLock::new();
    L.get_or_init(|| {
        let mut v = vec![Arc::new(catalog("chain2", 0).unwrap())];
        v.extend((1..=4).map(|k| Arc::new(catalog("boolean", k).unwrap())));
        v.extend((1..=4).map(|k| Arc::new(catalog("mo", k).unwrap())));
        v
    })
}

fn lin_mo2() -> &'static (Arc<Oml>, Vec<LinMap>) {
    static L: OnceLock<(Arc<Oml>, Vec<LinMap>)> = OnceLock::new();
    L.get_or_init(|| {
        let l = Arc::new(catalog("mo", 2).unwrap());
        let maps = enumerate_lin(&l, DEFAULT_LIN_CAP).unwrap();
        (l, maps)
    })
}

fn gammas() -> &'static [DynAlgebra] {
    static G: OnceLock<Vec<DynAlgebra>> = OnceLock::new();
    G.get_or_init(|| {
        [("boolean", 3), ("mo", 2), ("mo", 3)]
            .iter()
            .map(|&(n, k)| {
                let l = Arc::new(catalog(n, k).unwrap());
                DynAlgebra::new(Arc::new(generate_t(&l, DEFAULT_MONOID_CAP).unwrap()))
            })
            .collect()
    })
}

fn subset(g: &DynAlgebra, mask: &[bool]) -> DynElem {
    let ids: Vec<usize> = g
        .carrier()
        .zip(mask.iter().cycle())
        .filter(|(_, &b)| b)
        .map(|(x, _)| x)
        .collect();
    g.elem(ids).unwrap()
}

fn dot(a: &Vec3, b: &Vec3) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn subspace() -> impl Strategy<Value = RatSubspace> {
    prop::collection::vec((-4i64..=4, -4i64..=4, -4i64..=4), 0..=3).prop_map(|vs| {
        span(
            &vs.into_iter()
                .map(|(a, b, c)| vec3(a, b, c))
                .collect::<Vec<_>>(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn oml_laws_on_catalog_lattices(li in 0usize..9, x in 0usize..64, y in 0usize..64) {
        let l = &lattices()[li];
        let (x, y) = (x % l.len(), y % l.len());
        prop_assert_eq!(l.perp(l.perp(x)), x);
        prop_assert_eq!(l.perp(l.join(x, y)), l.meet(l.perp(x), l.perp(y)));
        prop_assert_eq!(l.meet(x, l.perp(x)), l.bot());
        prop_assert_eq!(l.join(x, l.perp(x)), l.top());
        if l.leq(x, y) {
            prop_assert!(l.leq(l.perp(y), l.perp(x)));
            prop_assert_eq!(l.join(x, l.meet(l.perp(x), y)), y);
        }
    }

    #[test]
    fn sasaki_projection_and_hook(li in 0usize..9, m in 0usize..64, x in 0usize..64, y in 0usize..64) {
        let l = &lattices()[li];
        let (m, x, y) = (m % l.len(), x % l.len(), y % l.len());
        let p = l.project(m, x);
        prop_assert_eq!(l.project(m, p), p);
        prop_assert!(l.leq(p, m));
        prop_assert_eq!(l.leq(p, y), l.leq(x, l.hook(m, y)));
        prop_assert_eq!(l.orthogonal(p, y), l.orthogonal(x, l.project(m, y)));
    }

    #[test]
    fn lin_composition_and_adjoints(i in 0usize..234, j in 0usize..234, x in 0usize..6, y in 0usize..6) {
        let (l, maps) = lin_mo2();
        prop_assert_eq!(maps.len(), 234);
        let (f, g) = (&maps[i], &maps[j]);
        let fg = f.then_after(g);
        let adj = orth_adjoint(fg.base()).unwrap();
        prop_assert_eq!(adj.adj(), &g.adj().compose(f.adj()));
        prop_assert_eq!(l.orthogonal(f.apply(x), y), l.orthogonal(x, f.star().apply(y)));
        prop_assert_eq!(f.apply(l.join(x, y)), l.join(f.apply(x), f.apply(y)));
        // The bracket of any map is a Sasaki projection.
        let b = f.bracket();
        let want = l.projection_table(b.apply(l.top()));
        prop_assert_eq!(b.table(), want.as_slice());
    }

    #[test]
    fn dynamic_algebra_laws(gi in 0usize..3, ma in prop::collection::vec(any::<bool>(), 1..40),
                            mb in prop::collection::vec(any::<bool>(), 1..40), v in 0usize..64) {
        let g = &gammas()[gi];
        let l = g.lattice();
        let v = v % l.len();
        let (a, b) = (subset(g, &ma), subset(g, &mb));
        let ab = g.mul(&a, &b);
        prop_assert_eq!(g.action(&g.union(&a, &b), v), l.join(g.action(&a, v), g.action(&b, v)));
        prop_assert_eq!(g.action(&ab, v), g.action(&a, g.action(&b, v)));
        prop_assert_eq!(g.action(&a, v), g.action_direct(&a, v));
        prop_assert_eq!(g.star(&g.star(&a)), a.clone());
        prop_assert_eq!(g.star(&ab), g.mul(&g.star(&b), &g.star(&a)));
        prop_assert_eq!(g.tilde(&g.tilde(&a)), g.tilde_closed(&a));
        prop_assert_eq!(g.tilde(&g.tilde_closed(&a)), g.tilde(&a));
        prop_assert_eq!(g.union_all(g.normal_form(&a).iter()), a.clone());
        prop_assert_eq!(g.h_map(&a), g.normal_form(&a));
    }

    #[test]
    fn equivalence_is_a_congruence(gi in 0usize..3, ma in prop::collection::vec(any::<bool>(), 1..40),
                                   mr in prop::collection::vec(any::<bool>(), 1..40)) {
        let g = &gammas()[gi];
        let a = subset(g, &ma);
        let r = subset(g, &mr);
        // Adding the zero map never changes the action.
        let t = g.union(&a, &g.singleton(g.monoid().zero()));
        prop_assert!(g.equiv(&a, &t));
        prop_assert!(g.equiv(&g.mul(&r, &a), &g.mul(&r, &t)));
        prop_assert!(g.equiv(&g.mul(&a, &r), &g.mul(&t, &r)));
        prop_assert!(g.equiv(&g.union(&a, &r), &g.union(&t, &r)));
    }

    #[test]
    fn subspace_lattice_laws(a in subspace(), b in subspace()) {
        prop_assert_eq!(a.dim() + orth(&a).dim(), 3);
        prop_assert_eq!(orth(&orth(&a)), a.clone());
        prop_assert_eq!(join(&a, &b).dim() + meet(&a, &b).dim(), a.dim() + b.dim());
        prop_assert!(meet(&a, &b).le(&a) && a.le(&join(&a, &b)));
        prop_assert_eq!(orth(&join(&a, &b)), meet(&orth(&a), &orth(&b)));
        for u in a.basis() {
            for w in orth(&a).basis() {
                prop_assert_eq!(dot(u, w), BigInt::from(0));
            }
        }
    }

    #[test]
    fn hilbert_sasaki_projection(u in subspace(), x in subspace(), y in subspace()) {
        let p = sasaki3(&u, &x);
        prop_assert!(p.le(&u));
        prop_assert_eq!(sasaki3(&u, &p), p.clone());
        // Left adjoint to the hook y ↦ u⊥ ∨ (u ∧ y).
        let hook = join(&orth(&u), &meet(&u, &y));
        prop_assert_eq!(p.le(&y), x.le(&hook));
        if x.le(&u) {
            prop_assert_eq!(p, x);
        }
    }
}
