//! The shadow polynomial link invariant SP: for every shadow coloring, the
//! polynomial of its region-color set scored against the coloring's image.
//!
//! Run with: cargo run --example shadow_polynomial_invariant

use singquandle::diagram::builtin;
use singquandle::fixtures;
use singquandle::invariants::{counting, shadow_counting, sp_invariant};
use singquandle::polynomial::render_multiset;

fn main() {
    let sh = fixtures::shadow("shadow_z8_z6").unwrap();
    for name in ["4_1^k", "5_4^k"] {
        let d = builtin(name).unwrap();
        println!(
            "{name}: #Col = {}, shadow #Col = {}, SP = {}",
            counting(&d, sh.host()),
            shadow_counting(&d, &sh),
            render_multiset(&sp_invariant(&d, &sh).unwrap())
        );
    }

    println!();
    let sh = fixtures::shadow("shadow_z12_z8").unwrap();
    for name in ["K1", "K2", "K3"] {
        let d = builtin(name).unwrap();
        println!(
            "{name}: #Col = {}, shadow #Col = {}, SP = {}",
            counting(&d, sh.host()),
            shadow_counting(&d, &sh),
            render_multiset(&sp_invariant(&d, &sh).unwrap())
        );
    }
}
