//! Finite oriented singquandles, their shadow structures, and the invariants
//! of singular links they induce.
//!
//! The crate is organized around small immutable values:
//!
//! - [`algebra`]: singquandles as operation tables, axiom verification,
//!   closures, structure polynomials, isomorphism search, the linear family.
//! - [`polynomial`]: canonical multivariate polynomials and polynomial
//!   multisets in the `Σ k·u^{P}` form.
//! - [`shadow`]: sets acted on by a singquandle, shadow polynomials.
//! - [`diagram`]: singular link diagrams, coloring enumeration, planar
//!   region tracing, builtin fixture diagrams.
//! - [`invariants`]: counting invariants and the polynomial-valued
//!   enhancements assembled from the other modules.
//! - [`cli`]: the command-line front end (`verify`, `colorings`,
//!   `invariant`, `regions`, `distinguish`, `search`, `builtin`).
//!
//! Runnable walkthroughs live in `examples/`, and the file formats accepted
//! on the command line are documented on the `from_json_str` functions of
//! each module.
//!
//! ```
//! use singquandle::{diagram, fixtures, invariants, polynomial};
//!
//! let knot = diagram::builtin("4_1^k")?;
//! let shadow = fixtures::shadow("shadow_z8_z6").unwrap();
//! assert_eq!(invariants::counting(&knot, shadow.host()), 16);
//! let sp = invariants::sp_invariant(&knot, &shadow)?;
//! assert_eq!(
//!     polynomial::render_multiset(&sp),
//!     "24*u^{t^2} + 24*u^{t} + 48*u^{2}"
//! );
//! # Ok::<(), singquandle::diagram::DiagramError>(())
//! ```

pub mod algebra;
pub mod cli;
pub mod diagram;
pub mod fixtures;
pub mod invariants;
pub mod polynomial;
pub mod shadow;
