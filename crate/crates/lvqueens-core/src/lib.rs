//! Solvers for the n-queens problem and statistics over their runtime behaviour.
//!
//! Two solvers are provided:
//!
//! * [`lv::las_vegas`] — a randomized solver that places queens on uniformly
//!   sampled cells of a shrinking *valid space* (cells not attacked by any
//!   queen placed so far) and restarts from scratch whenever the valid space
//!   empties before the board is full. Its cost is measured in *attempts*
//!   (queen placements, accumulated across restarts).
//! * [`bt::solve_backtracking`] — a deterministic depth-first baseline that
//!   finds the lexicographically smallest solution and counts every candidate
//!   safety test it performs.
//!
//! The [`stats`] module turns per-trial attempt counts into descriptive
//! statistics, histograms, and maximum-likelihood fits of four heavy-tail
//! candidate distributions selected by Kolmogorov–Smirnov distance.

pub mod board;
pub mod bt;
pub mod lv;
pub mod pruning;
pub mod stats;

pub use board::{BoardError, BoardSize, Position, Solution};
pub use bt::{solve_backtracking, BacktrackOutcome, BtError};
pub use lv::{las_vegas, las_vegas_budgeted, LvError, TrialOutcome};
