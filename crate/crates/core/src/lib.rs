//! Nim-value machinery for finite subtraction games under the sink and wall
//! terminal conventions.
//!
//! The crate computes exact nim-value sequences, detects minimal pre-periods
//! and periods through window-state repetition, evaluates the closed-form
//! period length of the additive family S(m, δ) = {m, m+δ, 2m+δ}, builds the
//! symbolic candidate period words behind that formula, verifies words
//! against the mex recursion (including a factor-level reachability and
//! anti-collision audit), runs parameter scans with CSV reports, and renders
//! period rasters as PPM images.

pub mod additive;
pub mod explorer;
pub mod nim;
pub mod period;
pub mod render;
pub mod verifier;

pub use additive::{AdditiveParams, BlockTag, CaseTag, Factor, PeriodWord};
pub use nim::{mex, Convention, GrundySequence, Nimber, SubtractionSet};
pub use period::{detect_period, minimal_rotation_equivalent, PeriodInfo};
pub use verifier::{verify_mex_consistency, MexViolation};
