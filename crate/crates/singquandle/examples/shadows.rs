//! Shadow structures: building them from matrices and polynomial action
//! formulas, their polynomials, and telling them apart.
//!
//! Run with: cargo run --example shadows

use std::collections::BTreeSet;

use singquandle::fixtures;
use singquandle::polynomial::render;
use singquandle::shadow::{shadow_isomorphisms, sp, subsp, Subshadow};

fn main() {
    let z6z2 = fixtures::shadow("shadow_z6_z2").unwrap();
    println!(
        "shadow of Z2 over {}: sp = {}",
        z6z2.host().name(),
        render(&sp(&z6z2))
    );

    // Subshadow polynomials restrict both the shadow set and the acting
    // columns.
    let y: BTreeSet<_> = [z6z2.x_index_of("1").unwrap()].into();
    let whole_host = Subshadow {
        s_subset: z6z2.host().elements().collect(),
        x_subset: y.clone(),
    };
    println!(
        "  Subsp(S, {{1}}) = {}",
        render(&subsp(&z6z2, &whole_host).unwrap())
    );
    let even = Subshadow {
        s_subset: ["2", "4", "0"]
            .iter()
            .map(|l| z6z2.host().index_of(l).unwrap())
            .collect(),
        x_subset: y,
    };
    println!(
        "  Subsp({{2,4,0}}, {{1}}) = {}",
        render(&subsp(&z6z2, &even).unwrap())
    );

    // Two shadows over the same host with different polynomials cannot be
    // isomorphic, and the search confirms it.
    let z8z4 = fixtures::shadow("shadow_z8_z4").unwrap();
    let z8w = fixtures::shadow("shadow_z8_w").unwrap();
    println!("\nsp of the x+2s+s^2 action on Z4: {}", render(&sp(&z8z4)));
    println!("sp of the negation action on Z4:  {}", render(&sp(&z8w)));
    println!(
        "isomorphisms between them: {}",
        shadow_isomorphisms(&z8z4, &z8w).len()
    );
}
