//! Exact computations in the ×-homotopy theory of finite graphs with loops.
//!
//! The crate covers graph maps and their categorical constructions
//! ([`colimits`]), folds, stiff cores and ×-homotopies ([`homotopy`]),
//! homotopy extension and lifting problems ([`lifting`]), and a set of
//! self-contained checks reproducing known counterexamples ([`verifier`]).

pub mod colimits;
pub mod enumerate;
mod error;
pub mod graph;
mod guard;
pub mod homotopy;
pub mod io;
pub mod lifting;
mod search;
pub mod verifier;

pub use colimits::{disjoint_union, glue, product, pushout, quotient, PushoutResult};
pub use error::{Error, Result};
pub use graph::{compose, family, identity, is_isomorphic, Family, FoldSequence, Graph, GraphMap};
pub use guard::SizeGuard;
pub use homotopy::{are_homotopic, are_x_equivalent, is_x_equivalence, stiff_core, Homotopy};
pub use lifting::{find_lift, HepClass, LiftingSquare};
pub use verifier::{CheckReport, Verdict};
