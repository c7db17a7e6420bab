//! Randomized n-queens solver with pruned uniform sampling and full restarts.
//!
//! One *pass* places queens one at a time on cells drawn uniformly from the
//! current valid space (cells attacked by no placed queen). Placing a queen
//! removes its cell and every cell it attacks. If the valid space empties
//! while the board is incomplete the pass is a dead end and the solver
//! restarts from an empty board. Every queen placement — across all passes —
//! counts as one *attempt*; attempts are never reset, so the final count is
//! the total work spent on the trial.
//!
//! The sampling source is abstracted behind [`Sampler`] so tests can script
//! exact placement sequences; production runs use [`SeededSampler`], a
//! counter-seeded ChaCha stream that makes every trial reproducible from a
//! single `u64`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::board::{attacks, BoardSize, Position, Solution};

/// Errors from the randomized solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LvError {
    /// No arrangement exists: the 2x2 and 3x3 boards have no solution.
    #[error("no {n}-queens arrangement exists on a {n}x{n} board")]
    Unsolvable { n: usize },
    /// A queen was placed on a cell that is not currently valid.
    #[error("cell {position} is not in the valid space")]
    NotInValidSpace { position: Position },
    /// The attempt budget ran out before a solution was found.
    #[error("attempt budget of {budget} exhausted after {restarts} restarts")]
    BudgetExhausted {
        budget: u64,
        attempts: u64,
        restarts: u64,
    },
    /// An audited run found the incremental valid space out of sync with a
    /// from-scratch recomputation; indicates a solver bug.
    #[error("valid-space invariant violated: {detail}")]
    InvariantViolation { detail: String },
}

/// Marker for "this cell is not in `valid_space`" in the slot map.
const NO_SLOT: usize = usize::MAX;

/// Incremental solver state: placed queens plus the surviving valid space.
///
/// The valid space is kept three ways, all updated together: a boolean mask
/// over flat cell indices, a dense unordered list of the valid flat indices
/// (what the sampler draws from), and a map from flat index to its slot in
/// that list so removal is O(1) swap-remove.
#[derive(Debug, Clone)]
pub struct BoardState {
    size: BoardSize,
    queens: Vec<Position>,
    valid: Vec<bool>,
    valid_space: Vec<usize>,
    slot_of: Vec<usize>,
}

impl BoardState {
    /// Fresh state for `size`: no queens, every cell valid.
    pub fn new(size: BoardSize) -> Self {
        let cells = size.cell_count();
        let mut state = BoardState {
            size,
            queens: Vec::with_capacity(size.n()),
            valid: vec![false; cells],
            valid_space: Vec::with_capacity(cells),
            slot_of: vec![NO_SLOT; cells],
        };
        state.reset();
        state
    }

    /// Clears all queens and restores every cell to the valid space,
    /// reusing the existing buffers.
    pub fn reset(&mut self) {
        self.queens.clear();
        self.valid_space.clear();
        for flat in 0..self.size.cell_count() {
            self.valid[flat] = true;
            self.slot_of[flat] = flat;
            self.valid_space.push(flat);
        }
    }

    pub fn size(&self) -> BoardSize {
        self.size
    }

    pub fn queens(&self) -> &[Position] {
        &self.queens
    }

    /// Flat indices of the currently valid cells, in no particular order.
    pub fn valid_space(&self) -> &[usize] {
        &self.valid_space
    }

    pub fn is_valid_cell(&self, p: Position) -> bool {
        self.size.contains(p) && self.valid[self.size.flat_of(p)]
    }

    /// All queens placed: the state holds a full solution.
    pub fn is_complete(&self) -> bool {
        self.queens.len() == self.size.n()
    }

    /// Valid space exhausted before the board filled: the pass must restart.
    pub fn is_dead_end(&self) -> bool {
        self.valid_space.is_empty() && !self.is_complete()
    }

    /// Places a queen on `p`, removing `p` and every cell it attacks from
    /// the valid space. Fails if `p` is not currently valid.
    pub fn place_queen(&mut self, p: Position) -> Result<(), LvError> {
        if !self.size.contains(p) || !self.valid[self.size.flat_of(p)] {
            return Err(LvError::NotInValidSpace { position: p });
        }
        self.remove_flat(self.size.flat_of(p));

        // Sweep the queen's four lines directly instead of materializing an
        // attack set; removal checks membership, so overlap at the queen's
        // own lines needs no dedup. This runs once per attempt and dominates
        // solver time on large boards.
        let n = self.size.n() as isize;
        let (i, j) = (p.row as isize, p.col as isize);
        for x in 0..n {
            self.remove_if_valid(x, j); // column
            self.remove_if_valid(i, x); // row
            self.remove_if_valid(x, i + j - x); // anti-diagonal
            self.remove_if_valid(x, x - i + j); // diagonal
        }

        self.queens.push(p);
        Ok(())
    }

    fn remove_if_valid(&mut self, row: isize, col: isize) {
        let n = self.size.n() as isize;
        if row < 0 || row >= n || col < 0 || col >= n {
            return;
        }
        let flat = row as usize * self.size.n() + col as usize;
        if self.valid[flat] {
            self.remove_flat(flat);
        }
    }

    fn remove_flat(&mut self, flat: usize) {
        let slot = self.slot_of[flat];
        debug_assert!(slot != NO_SLOT);
        let last = *self.valid_space.last().expect("slot map said non-empty");
        self.valid_space.swap_remove(slot);
        if last != flat {
            self.slot_of[last] = slot;
        }
        self.slot_of[flat] = NO_SLOT;
        self.valid[flat] = false;
    }

    /// Converts a complete state into its solution.
    ///
    /// Panics if the board is not full; engine code only calls this after
    /// `is_complete()`.
    pub fn to_solution(&self) -> Solution {
        Solution::new(self.size, self.queens.clone()).expect("complete state has n on-board queens")
    }

    #[cfg(test)]
    fn corrupt_for_test(&mut self) {
        // Desynchronize the mask from the dense list without touching the
        // list, which the auditor must catch.
        if let Some(&flat) = self.valid_space.first() {
            self.valid[flat] = false;
        }
    }
}

/// Recomputes the valid space from scratch (a cell is valid iff no placed
/// queen attacks or occupies it) and checks it against the incremental
/// state, including the internal mask/list/slot-map consistency.
///
/// Returns `true` when everything agrees. Solver passes maintain this by
/// construction; [`run_las_vegas_audited`] calls it after every placement.
pub fn audit_invariant(state: &BoardState) -> bool {
    let size = state.size();
    // Mask must match a from-scratch recomputation. `attacks(q, q)` is true,
    // so occupied cells are excluded by the same test.
    for flat in 0..size.cell_count() {
        let p = size.position_at(flat);
        let expected = state.queens().iter().all(|&q| !attacks(q, p));
        if state.valid[flat] != expected {
            return false;
        }
    }
    // Dense list and slot map must mirror the mask exactly.
    let valid_count = state.valid.iter().filter(|&&v| v).count();
    if state.valid_space.len() != valid_count {
        return false;
    }
    for (slot, &flat) in state.valid_space.iter().enumerate() {
        if flat >= size.cell_count() || !state.valid[flat] || state.slot_of[flat] != slot {
            return false;
        }
    }
    for flat in 0..size.cell_count() {
        if !state.valid[flat] && state.slot_of[flat] != NO_SLOT {
            return false;
        }
    }
    true
}

/// A source of placement choices: picks a slot in `valid_space`.
///
/// `valid_space` is always non-empty and the returned index must be in
/// `0..valid_space.len()`.
pub trait Sampler {
    fn pick(&mut self, valid_space: &[usize]) -> usize;
}

/// Uniform sampler backed by a ChaCha stream seeded from a single `u64`.
///
/// The generator is platform-independent, so a (size, seed) pair identifies
/// one exact solver trajectory everywhere.
#[derive(Debug, Clone)]
pub struct SeededSampler {
    rng: ChaCha8Rng,
}

impl SeededSampler {
    pub fn new(seed: u64) -> Self {
        SeededSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Sampler for SeededSampler {
    fn pick(&mut self, valid_space: &[usize]) -> usize {
        self.rng.random_range(0..valid_space.len())
    }
}

/// Test sampler that replays a fixed sequence of flat cell indices.
///
/// Panics if the script runs out or names a cell that is not currently
/// valid — a scripted test that drifts from the real state should fail
/// loudly, not silently.
#[derive(Debug, Clone)]
pub struct ScriptedSampler {
    flats: Vec<usize>,
    cursor: usize,
}

impl ScriptedSampler {
    pub fn new(flats: Vec<usize>) -> Self {
        ScriptedSampler { flats, cursor: 0 }
    }

    /// Convenience constructor from `(row, col)` pairs.
    pub fn from_positions(size: BoardSize, cells: &[(usize, usize)]) -> Self {
        let flats = cells
            .iter()
            .map(|&(row, col)| size.flat_of(Position { row, col }))
            .collect();
        Self::new(flats)
    }
}

impl Sampler for ScriptedSampler {
    fn pick(&mut self, valid_space: &[usize]) -> usize {
        let flat = *self
            .flats
            .get(self.cursor)
            .expect("scripted sampler ran out of moves");
        self.cursor += 1;
        valid_space
            .iter()
            .position(|&f| f == flat)
            .unwrap_or_else(|| panic!("scripted cell {flat} is not in the valid space"))
    }
}

/// Result of one randomized run, without timing or seed bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LvRun {
    pub solution: Solution,
    /// Total queen placements across all passes.
    pub attempts: u64,
    /// Dead ends hit before the successful pass.
    pub restarts: u64,
}

/// Runs the solver with an arbitrary sampler until it finds a solution or
/// exhausts `budget` placements (if given).
pub fn run_las_vegas(
    size: BoardSize,
    sampler: &mut dyn Sampler,
    budget: Option<u64>,
) -> Result<LvRun, LvError> {
    run_engine(size, sampler, budget, false)
}

/// Like [`run_las_vegas`] but checks [`audit_invariant`] after every single
/// placement, failing with [`LvError::InvariantViolation`] on the first
/// mismatch. Orders of magnitude slower; meant for validation runs.
pub fn run_las_vegas_audited(
    size: BoardSize,
    sampler: &mut dyn Sampler,
    budget: Option<u64>,
) -> Result<LvRun, LvError> {
    run_engine(size, sampler, budget, true)
}

fn run_engine(
    size: BoardSize,
    sampler: &mut dyn Sampler,
    budget: Option<u64>,
    audit: bool,
) -> Result<LvRun, LvError> {
    let n = size.n();
    if n == 2 || n == 3 {
        return Err(LvError::Unsolvable { n });
    }

    let mut state = BoardState::new(size);
    let mut attempts: u64 = 0;
    let mut restarts: u64 = 0;
    loop {
        state.reset();
        loop {
            if state.is_complete() {
                return Ok(LvRun {
                    solution: state.to_solution(),
                    attempts,
                    restarts,
                });
            }
            if state.is_dead_end() {
                restarts += 1;
                break;
            }
            if let Some(b) = budget {
                if attempts >= b {
                    return Err(LvError::BudgetExhausted {
                        budget: b,
                        attempts,
                        restarts,
                    });
                }
            }
            let slot = sampler.pick(state.valid_space());
            assert!(slot < state.valid_space().len(), "sampler index out of range");
            let p = size.position_at(state.valid_space()[slot]);
            state.place_queen(p).expect("sampled cell is valid");
            attempts += 1;
            if audit && !audit_invariant(&state) {
                return Err(LvError::InvariantViolation {
                    detail: format!(
                        "after placing queen {} at {p} on n={n}",
                        state.queens().len()
                    ),
                });
            }
        }
    }
}

/// One finished randomized trial, with the seed and wall time that produced it.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub size: BoardSize,
    pub solution: Solution,
    pub attempts: u64,
    pub restarts: u64,
    pub seed: u64,
    pub duration: Duration,
}

/// Runs one seeded trial to completion (no budget).
///
/// Identical (size, seed) pairs yield identical solutions, attempt counts,
/// and restart counts; only `duration` varies.
pub fn las_vegas(size: BoardSize, seed: u64) -> Result<TrialOutcome, LvError> {
    las_vegas_budgeted(size, seed, None)
}

/// Runs one seeded trial, giving up with [`LvError::BudgetExhausted`] once
/// `budget` placements have been spent without finding a solution.
pub fn las_vegas_budgeted(
    size: BoardSize,
    seed: u64,
    budget: Option<u64>,
) -> Result<TrialOutcome, LvError> {
    let mut sampler = SeededSampler::new(seed);
    let start = Instant::now();
    let run = run_las_vegas(size, &mut sampler, budget)?;
    let duration = start.elapsed();
    Ok(TrialOutcome {
        size,
        solution: run.solution,
        attempts: run.attempts,
        restarts: run.restarts,
        seed,
        duration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn pos(row: usize, col: usize) -> Position {
        Position { row, col }
    }

    fn valid_positions(state: &BoardState) -> BTreeSet<Position> {
        state
            .valid_space()
            .iter()
            .map(|&f| state.size().position_at(f))
            .collect()
    }

    #[test]
    fn fresh_state_is_all_valid() {
        let size = BoardSize::new(5).unwrap();
        let state = BoardState::new(size);
        assert_eq!(state.valid_space().len(), 25);
        assert!(state.queens().is_empty());
        assert!(!state.is_complete());
        assert!(!state.is_dead_end());
        assert!(audit_invariant(&state));
    }

    #[test]
    fn placement_prunes_to_the_known_survivors() {
        // 4x4 board, queen at (1, 0): 16 cells shrink to the six survivors.
        let size = BoardSize::new(4).unwrap();
        let mut state = BoardState::new(size);
        state.place_queen(pos(1, 0)).unwrap();
        assert_eq!(state.valid_space().len(), 6);
        let expected: BTreeSet<Position> = [(0, 2), (0, 3), (2, 2), (2, 3), (3, 1), (3, 3)]
            .into_iter()
            .map(|(r, c)| pos(r, c))
            .collect();
        assert_eq!(valid_positions(&state), expected);
        assert!(audit_invariant(&state));

        // Second queen at (0, 2): three cells survive. Note (3, 3) stays —
        // neither queen reaches it.
        state.place_queen(pos(0, 2)).unwrap();
        assert_eq!(state.valid_space().len(), 3);
        let expected: BTreeSet<Position> = [(2, 3), (3, 1), (3, 3)]
            .into_iter()
            .map(|(r, c)| pos(r, c))
            .collect();
        assert_eq!(valid_positions(&state), expected);
        assert!(audit_invariant(&state));
    }

    #[test]
    fn place_rejects_invalid_cells() {
        let size = BoardSize::new(4).unwrap();
        let mut state = BoardState::new(size);
        state.place_queen(pos(1, 0)).unwrap();
        // The queen's own cell and an attacked cell are both out.
        for p in [pos(1, 0), pos(3, 0), pos(9, 9)] {
            assert_eq!(
                state.place_queen(p),
                Err(LvError::NotInValidSpace { position: p })
            );
        }
        // Rejection must not have mutated anything.
        assert_eq!(state.valid_space().len(), 6);
        assert!(audit_invariant(&state));
    }

    #[test]
    fn audit_detects_corruption() {
        let size = BoardSize::new(4).unwrap();
        let mut state = BoardState::new(size);
        state.place_queen(pos(1, 0)).unwrap();
        assert!(audit_invariant(&state));
        state.corrupt_for_test();
        assert!(!audit_invariant(&state));
    }

    #[test]
    fn scripted_dead_end_then_solution() {
        // First pass: (1,0), (0,3), then (3,1) kills the last cell (2,2) —
        // three placements and a restart. Second pass walks straight to the
        // solution {(0,2), (1,0), (2,3), (3,1)}.
        let size = BoardSize::new(4).unwrap();
        let mut sampler = ScriptedSampler::from_positions(
            size,
            &[
                (1, 0),
                (0, 3),
                (3, 1),
                (0, 2),
                (1, 0),
                (2, 3),
                (3, 1),
            ],
        );
        let run = run_las_vegas_audited(size, &mut sampler, None).unwrap();
        assert_eq!(run.attempts, 7);
        assert_eq!(run.restarts, 1);
        let got: BTreeSet<Position> = run.solution.queens().iter().copied().collect();
        let expected: BTreeSet<Position> = [(0, 2), (1, 0), (2, 3), (3, 1)]
            .into_iter()
            .map(|(r, c)| pos(r, c))
            .collect();
        assert_eq!(got, expected);
        assert!(run.solution.verify());
    }

    #[test]
    fn trivial_board_takes_one_attempt() {
        let size = BoardSize::new(1).unwrap();
        let outcome = las_vegas(size, 7).unwrap();
        assert_eq!(outcome.attempts, 1);
        assert_eq!(outcome.restarts, 0);
        assert_eq!(outcome.solution.queens(), &[pos(0, 0)]);
    }

    #[test]
    fn impossible_sizes_are_rejected() {
        for n in [2, 3] {
            let size = BoardSize::new(n).unwrap();
            assert_eq!(las_vegas(size, 0).unwrap_err(), LvError::Unsolvable { n });
        }
    }

    #[test]
    fn budget_exhaustion_reports_progress() {
        // A 4x4 solution needs at least four placements, so a budget of
        // three can never succeed.
        let size = BoardSize::new(4).unwrap();
        let err = las_vegas_budgeted(size, 123, Some(3)).unwrap_err();
        match err {
            LvError::BudgetExhausted {
                budget, attempts, ..
            } => {
                assert_eq!(budget, 3);
                assert_eq!(attempts, 3);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn same_seed_same_trajectory() {
        let size = BoardSize::new(8).unwrap();
        let a = las_vegas(size, 0xDEADBEEF).unwrap();
        let b = las_vegas(size, 0xDEADBEEF).unwrap();
        assert_eq!(a.solution, b.solution);
        assert_eq!(a.attempts, b.attempts);
        assert_eq!(a.restarts, b.restarts);
        assert!(a.solution.verify());

        let c = las_vegas(size, 0xDEADBEF0).unwrap();
        // Different seeds almost surely diverge somewhere.
        assert!(c.attempts != a.attempts || c.solution != a.solution);
    }

    #[test]
    fn attempts_lower_bound_and_restart_consistency() {
        // Every successful trial spends at least n attempts (the final pass
        // alone places n queens) and at most n per pass.
        for seed in 0..20 {
            let size = BoardSize::new(6).unwrap();
            let out = las_vegas(size, seed).unwrap();
            assert!(out.attempts >= 6);
            assert!(out.attempts <= (out.restarts + 1) * 6);
            assert!(out.solution.verify());
        }
    }

    // The equality derives on LvError make the assert_eq! forms above work;
    // TrialOutcome carries a Duration so it stays non-Eq on purpose.
    #[test]
    fn error_display_is_informative() {
        let err = LvError::Unsolvable { n: 3 };
        assert!(err.to_string().contains("3x3"));
        let err = LvError::BudgetExhausted {
            budget: 10,
            attempts: 10,
            restarts: 2,
        };
        assert!(err.to_string().contains("10"));
    }
}
