//! Compare two diagrams under all four invariants at once.
//!
//! Run with: cargo run --example distinguish

use singquandle::diagram::builtin;
use singquandle::fixtures;
use singquandle::invariants::distinguish;

fn print_report(left: &str, right: &str, shadow: &str) {
    let d1 = builtin(left).unwrap();
    let d2 = builtin(right).unwrap();
    let sh = fixtures::shadow(shadow).unwrap();
    let report = distinguish(&d1, &d2, &sh).unwrap();
    let verdict = |eq: bool| if eq { "equal" } else { "DIFFERENT" };
    println!("{left} vs {right} over {shadow}:");
    println!(
        "  counting:        {} | {} -> {}",
        report.counting.left,
        report.counting.right,
        verdict(report.counting.equal)
    );
    println!(
        "  shadow counting: {} | {} -> {}",
        report.shadow_counting.left,
        report.shadow_counting.right,
        verdict(report.shadow_counting.equal)
    );
    println!(
        "  ssqp:            {} -> {}",
        report.ssqp.left,
        verdict(report.ssqp.equal)
    );
    println!("  SP left:         {}", report.sp.left);
    println!("  SP right:        {}", report.sp.right);
    println!("  SP:              {}", verdict(report.sp.equal));
    println!();
}

fn main() {
    // Same counting invariant, same polynomial invariant, different SP.
    print_report("4_1^k", "5_4^k", "shadow_z8_z6");
    // SP also separates the middle member of the trefoil family.
    print_report("K1", "K2", "shadow_z12_z8");
    print_report("K1", "K3", "shadow_z12_z8");
}
