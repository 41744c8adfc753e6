//! Run the IDA, SFDA, TODA and module suites on the algebra of a lattice,
//! then show that removing one word breaks minimality.

use omloq::dynalg::{verify_all, verify_toda, DynAlgebra, SamplePolicy};
use omloq::oml::catalog;
use omloq::testmonoid::{generate_t, DEFAULT_MONOID_CAP};
use std::sync::Arc;

fn main() {
    let l = Arc::new(catalog("mo", 2).unwrap());
    let mono = Arc::new(generate_t(&l, DEFAULT_MONOID_CAP).unwrap());
    let g = DynAlgebra::new(mono.clone());
    let policy = SamplePolicy::default();
    print!("{}", verify_all(&g, &policy));

    let victim = mono.mul(
        mono.proj(l.index_of("a").unwrap()),
        mono.proj(l.index_of("b").unwrap()),
    );
    let bad = DynAlgebra::without(mono.clone(), victim).unwrap();
    let r = verify_toda(&bad, &policy);
    println!(
        "without {}: TODA2 {:?}",
        mono.word(victim),
        r.check("TODA2").map(|c| c.status)
    );
}
