//! Recover an orthomodular lattice from the Sasaki projections in Lin(M).

use omloq::config::DEFAULT_LIN_CAP;
use omloq::linmap::{enumerate_lin, extract_sasaki_lattice};
use omloq::oml::catalog;
use std::sync::Arc;

fn main() {
    let l = Arc::new(catalog("mo", 2).unwrap());
    let maps = enumerate_lin(&l, DEFAULT_LIN_CAP).unwrap();
    let s = extract_sasaki_lattice(&l, &maps).unwrap();
    println!("{} brackets out of {} maps", s.carrier.len(), maps.len());
    print!("{}", s.report);
    println!("iso back to {}: {}", l.name(), s.iso.describe());
}
