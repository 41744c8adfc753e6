//! Functors on morphisms: an automorphism of MO3 becomes a conjugation of its
//! algebra, and restricting back to tests recovers it.

use omloq::config::Limits;
use omloq::equivalence::{
    check_naturality_mu, gamma_morphism, gamma_object, psi_morphism, verify_dyn_morphism,
};
use omloq::oml::{automorphisms, catalog};
use std::sync::Arc;

fn main() {
    let l = Arc::new(catalog("mo", 3).unwrap());
    let h = gamma_object(l.clone(), &Limits::default()).unwrap();
    let autos = automorphisms(&l);
    println!("{} has {} automorphisms", l.name(), autos.len());
    let k = autos.iter().find(|k| !k.is_identity()).unwrap();
    let g = gamma_morphism(k, &h, &h).unwrap();
    print!("{}", verify_dyn_morphism(&g, &h.policy()));
    let back = psi_morphism(&g, &h, &h).unwrap();
    // Ψ(Γ(k)) lives on the test lattice; δ carries k onto it.
    let delta = h.test_lattice().delta();
    let agrees = l
        .elements()
        .all(|x| back.apply(delta.apply(x)) == delta.apply(k.apply(x)));
    println!(
        "k = {}, Ψ(Γ(k)) = {}, agrees through δ: {agrees}",
        k.describe(),
        back.describe()
    );
    print!("{}", check_naturality_mu(k, &h, &h).unwrap());
}
