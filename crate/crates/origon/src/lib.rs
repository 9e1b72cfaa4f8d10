//! Construction, validation and export of crease patterns for positive
//! and canonical negative origon gadgets in origami extrusions.
//!
//! Every construction is computed both by simulated ruler-and-compass
//! geometry and by closed-form trigonometry; the two paths are compared
//! inside the constructing function and any disagreement beyond
//! tolerance is an [`Error::InternalInconsistency`], never a silently
//! wrong pattern.
//!
//! Start with [`params::validate`], then [`frame::build_frame`], then
//! one of [`positive::positive_pattern`], [`negative::negative_pattern`]
//! or [`canonical::build_pair`]. The `book/` directory holds a guide
//! whose code blocks compile as doc-tests of this crate.

pub mod canonical;
pub mod critical;
pub mod error;
pub mod euclid;
pub mod export;
pub mod frame;
pub mod negative;
pub mod params;
pub mod positive;
pub mod pattern;
pub mod tol;
pub mod verify;

pub use error::{ConditionTag, Error, Result, Side};

// The guide's code blocks run as doc-tests so the book cannot drift
// from the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct _Introduction;
    #[doc = include_str!("../../../book/src/parameters.md")]
    struct _Parameters;
    #[doc = include_str!("../../../book/src/frame.md")]
    struct _Frame;
    #[doc = include_str!("../../../book/src/critical.md")]
    struct _Critical;
    #[doc = include_str!("../../../book/src/canonical.md")]
    struct _Canonical;
    #[doc = include_str!("../../../book/src/export.md")]
    struct _Export;
}
