//! Exact combinatorics of strict partitions and their sequence statistics.
//!
//! The crate is organised bottom-up: [`partition`] and [`family`] hold the
//! objects and their brute-force enumerators, [`series`] and
//! [`double_sum`] the truncated q-series engine, [`bijection`] and
//! [`involution`] the constructive maps, and [`registry`] ties identities to
//! the three verification routes.

pub mod bijection;
pub mod double_sum;
pub mod error;
pub mod family;
pub mod gf;
pub mod involution;
pub mod partition;
pub mod poly;
pub mod registry;
pub mod series;

pub use error::{Error, Result, SeriesError};
pub use family::{classify, enumerate, Family, FamilyTag, Verdict};
pub use partition::{ferrers, sequences, sl_count, stats, Partition, PartitionStats, SequenceBlock};
pub use poly::{IntPoly, Var};
pub use series::{series_equal, MatchReport, QSeries, Truncation};
