//! Exact slope-stability computations for `C×C` and for Kodaira fibrations
//! built as cyclic branched covers of `B×C`.
//!
//! All intersection numbers, slopes and window endpoints are exact rationals
//! or certified root enclosures; nothing is decided in floating point.

pub mod error;
pub mod exec;
pub mod kodaira;
pub mod lattice;
pub mod numeric;
pub mod positivity;
pub mod scan;
pub mod stability;
pub mod surfaces;

pub use error::{Error, Result};
pub use exec::ExecMode;
pub use lattice::{BasisLabel, DivisorClass, Lattice, SurfaceId};
pub use numeric::{Endpoint, Interval, IsolatedRoot, Poly, Rational, RationalInterval};
pub use surfaces::{
    cover_surface, kodaira_surface, product_surface, KodairaParams, ProductSurfaceParams, ScMode, SurfaceKind,
    SurfaceModel,
};
