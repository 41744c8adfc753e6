//! Generate the monoid of Sasaki projection words and print its Cayley table.

use omloq::oml::catalog;
use omloq::testmonoid::{generate_t, verify_monoid, DEFAULT_MONOID_CAP};
use std::sync::Arc;

fn main() {
    for k in 1..=4 {
        let l = Arc::new(catalog("mo", k).unwrap());
        let t = generate_t(&l, DEFAULT_MONOID_CAP).unwrap();
        println!("|T(Lin({}))| = {}", l.name(), t.len());
    }
    let l = Arc::new(catalog("mo", 2).unwrap());
    let t = generate_t(&l, DEFAULT_MONOID_CAP).unwrap();
    for id in t.ids() {
        println!(
            "{:>3}  {:<16} star = {}",
            id,
            t.word(id),
            t.word(t.star(id))
        );
    }
    print!("{}", verify_monoid(&t));
    println!("{}", t.cayley_csv().lines().next().unwrap_or(""));
}
