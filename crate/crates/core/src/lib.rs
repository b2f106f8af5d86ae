//! Machine checks for torsion phenomena in triangulated categories.
//!
//! * [`adem`]: the mod-p Steenrod algebra, an expression parser and the
//!   Adem-relation normal form.
//! * [`oracle`]: an independent action of raw words on polynomial algebras,
//!   used to cross-check normalization.
//! * [`modules`]: finite graded modules over the Steenrod algebra, tensor
//!   products, relation checks and decomposability.
//! * [`stems`]: stable stems data and the exact sequences computing the
//!   homotopy of Moore spectra.
//! * [`exotic`]: the triangulated category of free Z/4-modules.
//! * [`scenario`]: end-to-end verification reports.
//! * [`cli`]: the `torsion-bench` command line.
//!
//! The `examples/` directory has one runnable program per area.

pub mod adem;
pub mod cli;
pub mod error;
pub mod exotic;
pub mod linalg;
pub mod modules;
pub mod oracle;
pub mod prime;
pub mod scenario;
pub mod stems;

pub use error::{Error, Result};
pub use prime::Prime;
