//! Parse a lattice from text and validate the orthomodular axioms.
//!
//! Run with `cargo run --example check_lattice`.

use omloq::oml::{catalog, parse_lattice, validate_oml};

const MO2: &str = "\
name MO2
elements 0 a a' b b' 1
leq 0 a
leq 0 a'
leq 0 b
leq 0 b'
leq a 1
leq a' 1
leq b 1
leq b' 1
perp 0 1
perp a a'
perp b b'
";

fn main() {
    let mo2 = parse_lattice(MO2).expect("well-formed lattice");
    print!("{}", validate_oml(&mo2));

    // The hexagon is an ortholattice but fails the orthomodular law.
    let o6 = catalog("o6", 0).unwrap();
    let r = validate_oml(&o6);
    for c in r.failures() {
        println!(
            "O6 fails {}: {}",
            c.name,
            c.witness.as_deref().unwrap_or("")
        );
    }
}
