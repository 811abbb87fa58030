//! Planar face tracing and region colorings of a diagram.
//!
//! Run with: cargo run --example regions

use singquandle::diagram::{
    builtin, colorings, region_coloring_with_map, trace_regions, Role, VertexKind,
};
use singquandle::fixtures;

fn main() {
    let d = builtin("3_1^k").unwrap();
    let rm = trace_regions(&d).unwrap();
    println!(
        "{}: {} vertices, {} faces (euler: v + 2 = {})",
        d.name(),
        d.vertices().len(),
        rm.face_count(),
        d.vertices().len() + 2
    );
    for (face, corners) in rm.face_corners.iter().enumerate() {
        println!("  face {face}: {} corners", corners.len());
    }

    // Color the regions by the Z10 shadow: the unique coloring is all-zero,
    // and each base value at the central region gives one region coloring.
    let q = fixtures::structure("z10_a3b4c6").unwrap();
    let sh = fixtures::shadow("shadow_z10_z4").unwrap();
    let f = &colorings(&d, &q)[0];
    let singular = d
        .vertices()
        .iter()
        .position(|v| v.kind == VertexKind::Singular)
        .unwrap();
    let center = rm.face_of_corner(
        singular,
        d.vertices()[singular].slot_of_role(Role::RightOut),
    );
    println!("\nregion colorings from the central face {center}:");
    for x0 in sh.x_elements() {
        let phi = region_coloring_with_map(&d, &rm, &sh, f, center, x0).unwrap();
        let labels: Vec<&str> = phi.iter().map(|&x| sh.x_label(x)).collect();
        println!("  base {} -> faces colored {:?}", sh.x_label(x0), labels);
    }
}
