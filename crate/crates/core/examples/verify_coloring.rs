//! Write a colouring file, read it back and check it.

use hglca::hypergraph::parse;
use hglca::verify::{brute_force_two_color, check_proper, read_coloring, write_coloring};

fn main() {
    let h = parse(b"h 7 3 3\ne 0 1 2\ne 2 3 4\ne 4 5 6\n").expect("valid instance");
    let exact = brute_force_two_color(&h).expect("small").expect("colourable");
    let text = write_coloring(&exact.iter().copied().map(Some).collect::<Vec<_>>());
    print!("{text}");
    let back = read_coloring(&text, h.n()).expect("well formed");
    println!("proper: {}", check_proper(&h, &back).is_proper());

    let mut partial = back;
    partial[3] = None;
    let r = check_proper(&h, &partial);
    println!("undecided edges with vertex 3 blank: {:?}", r.undecided);
}
