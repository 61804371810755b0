//! Generate a bounded-degree instance and print it in the text format.

use hglca::hypergraph::{generate, serialize, GenParams};

fn main() {
    let h = generate(&GenParams {
        n: 60,
        m: 12,
        k: 6,
        max_edge_degree: 3,
        seed: 7,
        clustering: None,
    })
    .expect("feasible parameters");
    println!("# n={} m={} k={} max edge degree={}", h.n(), h.m(), h.k(), h.max_edge_degree());
    print!("{}", String::from_utf8(serialize(&h)).expect("ascii"));
}
