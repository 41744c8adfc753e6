//! The full round trip between lattices and dynamic algebras for MO2 and its
//! block swap.

use omloq::config::Limits;
use omloq::equivalence::round_trip_report;
use omloq::oml::{catalog, OrthoIso};
use std::sync::Arc;

fn main() {
    let l = Arc::new(catalog("mo", 2).unwrap());
    let swap = OrthoIso::from_labels(
        l.clone(),
        l.clone(),
        &[("a", "b"), ("b", "a"), ("a'", "b'"), ("b'", "a'")],
    )
    .unwrap();
    let report = round_trip_report(l, &[swap], &Limits::default()).unwrap();
    print!("{report}");
}
