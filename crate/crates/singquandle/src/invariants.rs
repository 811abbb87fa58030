//! The link invariants: coloring counts, the subsingquandle polynomial
//! invariant, shadow images, the shadow polynomial invariant, and a
//! side-by-side comparison report for two diagrams.
//!
//! A difference in any invariant certifies that two diagrams present
//! different singular links; agreement certifies nothing.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{closure, FiniteSingquandle};
use crate::diagram::{
    colorings_with_workers, region_coloring_with_map, trace_regions, ColoringAssignment,
    DiagramError, SingularDiagram,
};
use crate::polynomial::{render_multiset, InvariantMultiset};
use crate::shadow::{forward_closure, restricted_poly, ShadowStructure, Subshadow, XId};

/// Number of colorings of the diagram by the structure.
pub fn counting(d: &SingularDiagram, q: &FiniteSingquandle) -> u64 {
    counting_with_workers(d, q, 1)
}

pub fn counting_with_workers(d: &SingularDiagram, q: &FiniteSingquandle, workers: usize) -> u64 {
    colorings_with_workers(d, q, workers).len() as u64
}

/// Number of shadow colorings: one per coloring and per shadow element.
/// When the diagram traces to a plane embedding, the count is cross-checked
/// by propagating every region coloring directly.
pub fn shadow_counting(d: &SingularDiagram, sh: &ShadowStructure) -> u64 {
    shadow_counting_with_workers(d, sh, 1)
}

pub fn shadow_counting_with_workers(
    d: &SingularDiagram,
    sh: &ShadowStructure,
    workers: usize,
) -> u64 {
    let cols = colorings_with_workers(d, sh.host(), workers);
    let count = cols.len() as u64 * sh.x_size() as u64;
    if let Ok(rm) = trace_regions(d) {
        let mut direct = 0u64;
        for f in &cols {
            for x0 in sh.x_elements() {
                region_coloring_with_map(d, &rm, sh, f, 0, x0)
                    .expect("verified shadows propagate consistently");
                direct += 1;
            }
        }
        assert_eq!(direct, count);
    }
    count
}

/// The multiset of structure polynomials of coloring images: for each
/// coloring, the polynomial of the subsingquandle its colors generate.
pub fn ssqp_invariant(d: &SingularDiagram, q: &FiniteSingquandle) -> InvariantMultiset {
    ssqp_invariant_with_workers(d, q, 1)
}

pub fn ssqp_invariant_with_workers(
    d: &SingularDiagram,
    q: &FiniteSingquandle,
    workers: usize,
) -> InvariantMultiset {
    let mut out = InvariantMultiset::new();
    for f in colorings_with_workers(d, q, workers) {
        let image = closure(q, &f.image());
        let poly = crate::algebra::ssqp(q, &image).expect("closures are closed");
        out.insert(poly);
    }
    out
}

/// The shadow image of a shadow coloring: the subsingquandle generated by
/// the arc colors together with the orbit of the base value under it.
///
/// When the diagram is supplied, the orbit is cross-checked against the
/// closure of the actual region-color set, which it always equals (any
/// nonempty subset of an orbit closes to the whole orbit).
pub fn shadow_image(
    sh: &ShadowStructure,
    f: &ColoringAssignment,
    x0: XId,
    diagram: Option<&SingularDiagram>,
) -> Subshadow {
    let s_subset = closure(sh.host(), &f.image());
    let x_subset = forward_closure(sh, &[x0].into(), &s_subset);
    if let Some(d) = diagram {
        let rm = trace_regions(d).expect("shadow image cross-check needs planar data");
        let phi = region_coloring_with_map(d, &rm, sh, f, 0, x0)
            .expect("verified shadows propagate consistently");
        let region_colors: BTreeSet<XId> = phi.into_iter().collect();
        let literal = forward_closure(sh, &region_colors, &s_subset);
        assert_eq!(
            literal, x_subset,
            "region-color closure must equal the base orbit"
        );
    }
    Subshadow { s_subset, x_subset }
}

/// The shadow polynomial invariant: over every coloring and every base
/// value, the polynomial `Σ t^{r(x)}` of the region-color set, with `r`
/// counted over the coloring's image subsingquandle.
pub fn sp_invariant(
    d: &SingularDiagram,
    sh: &ShadowStructure,
) -> Result<InvariantMultiset, DiagramError> {
    sp_invariant_with_workers(d, sh, 1)
}

pub fn sp_invariant_with_workers(
    d: &SingularDiagram,
    sh: &ShadowStructure,
    workers: usize,
) -> Result<InvariantMultiset, DiagramError> {
    let rm = trace_regions(d)?;
    let mut out = InvariantMultiset::new();
    for f in colorings_with_workers(d, sh.host(), workers) {
        let image = closure(sh.host(), &f.image());
        for x0 in sh.x_elements() {
            let phi = region_coloring_with_map(d, &rm, sh, &f, 0, x0)?;
            let region_colors: BTreeSet<XId> = phi.into_iter().collect();
            out.insert(restricted_poly(sh, &region_colors, &image));
        }
    }
    Ok(out)
}

/// Two values of one invariant, with an equality flag. Inequality on any
/// entry certifies the diagrams present different singular links.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantPair<T: PartialEq> {
    pub left: T,
    pub right: T,
    pub equal: bool,
}

impl<T: PartialEq> InvariantPair<T> {
    fn new(left: T, right: T) -> Self {
        let equal = left == right;
        InvariantPair { left, right, equal }
    }
}

/// All four invariants of two diagrams under one shadow (counting and the
/// polynomial invariant use the shadow's host).
#[derive(Debug, Clone, Serialize)]
pub struct DistinguishReport {
    pub counting: InvariantPair<u64>,
    pub shadow_counting: InvariantPair<u64>,
    pub ssqp: InvariantPair<String>,
    pub sp: InvariantPair<String>,
}

impl DistinguishReport {
    pub fn all_equal(&self) -> bool {
        self.counting.equal && self.shadow_counting.equal && self.ssqp.equal && self.sp.equal
    }
}

pub fn distinguish(
    d1: &SingularDiagram,
    d2: &SingularDiagram,
    sh: &ShadowStructure,
) -> Result<DistinguishReport, DiagramError> {
    let host = sh.host();
    Ok(DistinguishReport {
        counting: InvariantPair::new(counting(d1, host), counting(d2, host)),
        shadow_counting: InvariantPair::new(shadow_counting(d1, sh), shadow_counting(d2, sh)),
        ssqp: InvariantPair::new(
            render_multiset(&ssqp_invariant(d1, host)),
            render_multiset(&ssqp_invariant(d2, host)),
        ),
        sp: InvariantPair::new(
            render_multiset(&sp_invariant(d1, sh)?),
            render_multiset(&sp_invariant(d2, sh)?),
        ),
    })
}
