//! Exact combinatorics for dispersed Dyck paths: lattice paths from `(0,0)`
//! to `(n,0)` with up and down steps that never dip below the axis, plus
//! right steps allowed only on the axis.
//!
//! * [`path`]: step words, classification and per-path statistics;
//! * [`enumerate`]: lexicographic generators and brute-force totals;
//! * [`bijection`]: the reflection, up/down and ascent-removal maps;
//! * [`closed`]: exact closed forms and the asymptotic estimate;
//! * [`verify`]: the oracle-backed verification harness.

pub mod bijection;
pub mod closed;
pub mod enumerate;
mod error;
mod json;
pub mod path;
pub mod verify;

pub use bijection::{BijectionRecord, Bijection, SlotRef};
pub use closed::BigCount;
pub use enumerate::{CountRow, DistributionTable, Enumerator, Family, DEFAULT_CAP};
pub use error::{Error, Result};
pub use path::{parse_path, PathClass, PathStats, PathWord, Step};
pub use verify::{CheckId, Harness, VerificationReport};
