//! Build structures from the affine family, verify the axioms, and look at
//! closures and profiles.
//!
//! Run with: cargo run --example structures

use std::collections::BTreeSet;

use singquandle::algebra::{
    build_linear, closure, profiles, sqp, verify_axioms, LinearSingquandleSpec,
};
use singquandle::polynomial::render;

fn main() {
    // x*y = 3x-2y, R1 = 2x+3y, R2 = x over Z4.
    let z4 = build_linear(LinearSingquandleSpec {
        modulus: 4,
        a: 3,
        b: 2,
        c: 3,
    })
    .unwrap();
    println!("{} on elements {:?}", z4.name(), z4.labels());
    println!("all axioms hold: {}", verify_axioms(&z4).all_pass());
    for (x, p) in z4.elements().zip(profiles(&z4)) {
        println!("  profile of {}: {:?}", z4.label(x), p.as_array());
    }
    println!("structure polynomial: {}", render(&sqp(&z4)));

    // Closures generate subsingquandles.
    let z8 = build_linear(LinearSingquandleSpec {
        modulus: 8,
        a: 3,
        b: 7,
        c: 6,
    })
    .unwrap();
    let seed: BTreeSet<_> = [z8.index_of("1").unwrap(), z8.index_of("7").unwrap()].into();
    let closed = closure(&z8, &seed);
    let labels: Vec<&str> = closed.iter().map(|&e| z8.label(e)).collect();
    println!(
        "\n{}: closure of {{1, 7}} = {{{}}}",
        z8.name(),
        labels.join(", ")
    );

    // Not every affine triple satisfies the compatibility axioms: the
    // obstruction is (a-1)(b+c-1) mod n.
    let z10 = build_linear(LinearSingquandleSpec {
        modulus: 10,
        a: 3,
        b: 4,
        c: 6,
    })
    .unwrap();
    let report = verify_axioms(&z10);
    println!("\n{} axiom report:", z10.name());
    for check in &report.checks {
        match check.witness {
            None => println!("  {}: ok", check.axiom),
            Some(w) => println!(
                "  {}: FAIL at ({}, {}, {})",
                check.axiom,
                z10.label(w[0]),
                z10.label(w[1]),
                z10.label(w[2])
            ),
        }
    }
}
