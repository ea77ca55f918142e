//! Quick tour: encode an order, enumerate a domain, print its cover digraph.
//!
//! Run with `cargo run --example tour`.

use single_peaked::{enumerate_sp, BruhatDigraph, LinearOrder, SignSeq};

fn main() {
    let order: LinearOrder = "34251".parse().unwrap();
    let signs = SignSeq::encode(&order).unwrap();
    println!("{order} encodes as {signs} with {} inversions", signs.inversion_count());
    assert_eq!(signs.decode(), order);

    let sp5 = enumerate_sp(5).unwrap();
    println!("|SP([5])| = {}", sp5.len());

    let digraph = BruhatDigraph::build(&sp5);
    println!("{}", digraph.to_dot());
}
