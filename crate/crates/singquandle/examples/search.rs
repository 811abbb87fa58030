//! Exhaustive searches: affine structures passing the axioms, and
//! polynomial shadow actions over a host.
//!
//! Run with: cargo run --example search

use singquandle::algebra::enumerate_linear;
use singquandle::fixtures;
use singquandle::shadow::search_polynomial_shadows;

fn main() {
    for n in [4u64, 6, 8] {
        let specs = enumerate_linear(n);
        println!("Z{n}: {} axiom-passing affine triples", specs.len());
        for s in specs.iter().take(8) {
            println!("  (a = {}, b = {}, c = {})", s.a, s.b, s.c);
        }
        if specs.len() > 8 {
            println!("  ... and {} more", specs.len() - 8);
        }
    }

    let host = fixtures::structure("z8_a5b3c4").unwrap();
    let found = search_polynomial_shadows(&host, 4, 2);
    println!(
        "\n{} polynomial actions of Z4 over {}:",
        found.len(),
        host.name()
    );
    for spec in found.iter().take(12) {
        println!("  coeffs {:?}", spec.coeffs);
    }
    if found.len() > 12 {
        println!("  ... and {} more", found.len() - 12);
    }
}
