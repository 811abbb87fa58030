//! Enumerate the colorings of the builtin diagrams and print the Hom sets.
//!
//! Run with: cargo run --example colorings

use singquandle::diagram::{builtin, colorings};
use singquandle::fixtures;

fn main() {
    let d = builtin("1_1^l").unwrap();
    let q = fixtures::structure("z4_a3b2c3").unwrap();
    let found = colorings(&d, &q);
    println!(
        "{} has {} colorings by {} on arcs ({}):",
        d.name(),
        found.len(),
        q.name(),
        d.arcs().join(", ")
    );
    for c in &found {
        println!("  {}", c.render(&q));
    }

    let d = builtin("4_1^k").unwrap();
    let q = fixtures::structure("z8_a3b7c6").unwrap();
    let found = colorings(&d, &q);
    println!(
        "\n{} has {} colorings by {} on arcs ({}):",
        d.name(),
        found.len(),
        q.name(),
        d.arcs().join(", ")
    );
    for c in &found {
        println!("  {}", c.render(&q));
    }
}
