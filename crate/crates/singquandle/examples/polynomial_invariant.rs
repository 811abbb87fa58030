//! The subsingquandle polynomial invariant: one structure polynomial per
//! coloring image, collected as a multiset.
//!
//! Run with: cargo run --example polynomial_invariant

use singquandle::diagram::builtin;
use singquandle::fixtures;
use singquandle::invariants::ssqp_invariant;
use singquandle::polynomial::render_multiset;

fn main() {
    let z4 = fixtures::structure("z4_a3b2c3").unwrap();
    let m = ssqp_invariant(&builtin("1_1^l").unwrap(), &z4);
    println!("phi_ssqp(1_1^l, {}) = {}", z4.name(), render_multiset(&m));

    // The two six-and-seven arc knots share the counting invariant and this
    // polynomial invariant.
    let z8 = fixtures::structure("z8_a3b7c6").unwrap();
    let a = ssqp_invariant(&builtin("4_1^k").unwrap(), &z8);
    let b = ssqp_invariant(&builtin("5_4^k").unwrap(), &z8);
    println!("phi_ssqp(4_1^k, {}) = {}", z8.name(), render_multiset(&a));
    println!("phi_ssqp(5_4^k, {}) = {}", z8.name(), render_multiset(&b));
    println!("equal: {}", a == b);
}
