//! Sasaki projections in three-dimensional rational space are not monotone
//! in the projecting subspace.

use omloq::hilbert3::{sasaki3, span, vec3, witness_report};

fn main() {
    let w = witness_report();
    println!("u = {}\nv = {}\nx = {}", w.u, w.v, w.x);
    println!("pi_u(x) = {}\npi_v(x) = {}", w.pi_u_x, w.pi_v_x);
    println!("u ≤ v but pi_u(x) ≤ pi_v(x) is {}", w.pi_u_x.le(&w.pi_v_x));

    // The projection onto a plane of a line inside it is the line.
    let plane = span(&[vec3(1, 0, 0), vec3(0, 1, 0)]);
    let line = span(&[vec3(2, -3, 0)]);
    println!("pi_plane(line) = {}", sasaki3(&plane, &line));
}
