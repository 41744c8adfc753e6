//! Sasaki projections and hooks on MO2, and the adjunction between them.

use omloq::linmap::{verify_galois, verify_sasaki_characterization};
use omloq::oml::catalog;
use std::sync::Arc;

fn main() {
    let l = Arc::new(catalog("mo", 2).unwrap());
    let a = l.index_of("a").unwrap();
    for n in l.elements() {
        println!(
            "pi_a({0}) = {1}    hook_a({0}) = {2}",
            l.label(n),
            l.label(l.project(a, n)),
            l.label(l.hook(a, n))
        );
    }
    print!("{}", verify_sasaki_characterization(&l));
    print!("{}", verify_galois(&l));
}
