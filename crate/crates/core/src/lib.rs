//! Exact spectres, centers of distances, achievement sets and gap lemmas
//! for finite sets in Abelian metric groups.
//!
//! All arithmetic is exact ([`exact::Rat`]). Compact sets are represented by
//! finite sets, series by finite-support term lists, so every predicate in
//! the crate is decidable and decided without tolerances.

pub mod error;
pub mod exact;
pub mod group;
pub mod hyper;
pub mod pointset;
pub mod psums;
pub mod report;
pub mod series1d;
pub mod series2d;

pub use error::{Error, Result};
pub use exact::{parse_rat, Point, Rat};
pub use group::{DistValue, GroupCtx, Metric};
pub use pointset::{FiniteSet, SpectreMode};
pub use report::LemmaReport;
pub use series1d::{Budget, SeriesSpec};
