//! Operations of the powerset algebra over the test monoid: product, star,
//! `~`, the action on tests and the equivalence it induces.

use omloq::dynalg::{tilde_equiv_counterexample, DynAlgebra, SamplePolicy};
use omloq::oml::catalog;
use omloq::testmonoid::{generate_t, DEFAULT_MONOID_CAP};
use std::sync::Arc;

fn main() {
    let l = Arc::new(catalog("mo", 2).unwrap());
    let g = DynAlgebra::new(Arc::new(generate_t(&l, DEFAULT_MONOID_CAP).unwrap()));
    let el = |s: &str| l.index_of(s).unwrap();
    let (pa, pb) = (g.test(el("a")), g.test(el("b")));

    let both = g.union(&pa, &pb);
    println!("A = {}", g.describe(&both));
    println!("A ⊙ A = {}", g.describe(&g.mul(&both, &both)));
    println!("(pa ⊙ pb)* = {}", g.describe(&g.star(&g.mul(&pa, &pb))));
    println!(
        "~A = {}, ~~A = {}",
        g.describe(&g.tilde(&both)),
        g.describe(&g.tilde_closed(&both))
    );
    for v in l.elements() {
        println!("A • {} = {}", l.label(v), l.label(g.action(&both, v)));
    }
    match g.equiv_witness(&pa, &pb) {
        Some(v) => println!("{{pi_a}} and {{pi_b}} differ at {}", l.label(v)),
        None => println!("{{pi_a}} ≡ {{pi_b}}"),
    }
    if let Some((a, v)) = tilde_equiv_counterexample(&g, &SamplePolicy::default()) {
        println!(
            "A = {} is not equivalent to ~~A (differ at {})",
            g.describe(&a),
            l.label(v)
        );
    }
}
