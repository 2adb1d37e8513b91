//! Exact Poincaré series of minimal double-coset representatives in finite
//! and affine Weyl groups.

pub mod affineweyl;
pub mod conecount;
pub mod exactalg;
pub mod finiteweyl;
pub mod fixtures;
pub mod linalg;
pub mod pipeline;
pub mod report;
pub mod rootdata;
pub mod seriesmatrix;
pub mod subset;

pub use affineweyl::{AffineElement, AffineRoot, AffineTable};
pub use exactalg::{ExactError, IntPoly, RatFun};
pub use rootdata::{CartanKind, CartanType, RootSystem};
pub use finiteweyl::{GroupTable, WeylElement};
pub use pipeline::AffinePipeline;
pub use report::CheckReport;
pub use seriesmatrix::SeriesMatrix;
pub use subset::Subset;
