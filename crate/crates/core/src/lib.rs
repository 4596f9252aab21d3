//! Exact constructions for partial representations of finite groups.
//!
//! Everything is computed over the rationals with no rounding. The layers
//! build on each other: [`exact`] linear algebra, [`algebra`] structure
//! constants, [`hopf`] group Hopf algebras, [`partial`] partial modules,
//! [`pargroup`] the group-specific models, [`dilation`] and [`glob`].

pub mod algebra;
pub mod dilation;
pub mod error;
pub mod exact;
pub mod glob;
pub mod group;
pub mod groupoid;
pub mod hopf;
pub mod io;
pub mod pargroup;
pub mod partial;
pub mod report;

pub use error::{Error, Result};
