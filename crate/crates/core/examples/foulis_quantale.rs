//! Enumerate Lin(M) and run the Foulis quantale axioms on it.

use omloq::config::DEFAULT_LIN_CAP;
use omloq::linmap::{brute_force_lin, enumerate_lin, verify_foulis, verify_left_module_on_m};
use omloq::oml::catalog;
use std::sync::Arc;

fn main() {
    for (name, k) in [("chain2", 0), ("boolean", 2), ("mo", 2)] {
        let l = Arc::new(catalog(name, k).unwrap());
        let maps = enumerate_lin(&l, DEFAULT_LIN_CAP).unwrap();
        let brute = brute_force_lin(&l).unwrap();
        println!(
            "|Lin({})| = {} (brute force {})",
            l.name(),
            maps.len(),
            brute.len()
        );
        if maps.len() <= 64 {
            print!("{}", verify_foulis(&l, &maps));
            print!("{}", verify_left_module_on_m(&l, &maps));
        }
    }
}
