//! Enumerate (2,3)-trees and witness structures on a small instance.

use hglca::analysis::{amortization_bound_check, enumerate_23_trees, witness_count_bounds};
use hglca::hypergraph::parse;

fn main() {
    let h = parse(b"h 9 4 3\ne 0 1 2\ne 2 3 4\ne 4 5 6\ne 6 7 8\n").expect("valid instance");
    for u in 1..=3 {
        let trees = enumerate_23_trees(&h, u).expect("small");
        let r = witness_count_bounds(&h, u).expect("small");
        println!(
            "u={u}: trees {trees:?}; count_23 {} < {}; witnesses {:?} < {}",
            r.count_23, r.bound_23, r.count_ws, r.bound_ws
        );
    }
    println!("{:?}", amortization_bound_check(20, 5));
}
