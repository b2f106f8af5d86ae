//! Stable stems and the exact sequences of Moore spectra.
//!
//! The table is data: it holds the handful of stems the computations
//! need, extensible by a JSON file, and answers "unknown" for anything
//! else.

mod group;
mod les;
mod table;

pub use group::{mult_by_n, AbelianGroup, Factor};
pub use les::{
    associator_obstruction, moore_endomorphisms, moore_homotopy, positive_n_order,
    two_times_identity_of_mod_two_moore_is_nonzero, Computed, GroupExtensionProblem, MooreEndomorphisms, Resolution,
};
pub use table::{NamedGenerator, Provenance, Stem, StemsEntry, StemsTable};
