//! Deterministic backtracking baseline with candidate-test counting.
//!
//! Rows are filled top to bottom; within a row, columns are tried left to
//! right. Every column considered costs one *candidate test* (the safety
//! check against previously placed queens) whether it passes or fails, and
//! tests spent inside abandoned subtrees are kept — the final count is the
//! total work of the search, and it is the deterministic cost baseline the
//! randomized solver is compared against. The first solution found this way
//! is the lexicographically smallest column assignment.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::board::{BoardSize, Position, Solution};

/// Errors from the backtracking solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BtError {
    /// No arrangement exists: the 2x2 and 3x3 boards have no solution.
    #[error("no {n}-queens arrangement exists on a {n}x{n} board")]
    Unsolvable { n: usize },
}

/// Result of a backtracking run.
#[derive(Debug, Clone)]
pub struct BacktrackOutcome {
    pub size: BoardSize,
    /// The lexicographically smallest solution (by column per row).
    pub solution: Solution,
    /// Total safety checks performed, counting failures and abandoned
    /// subtrees.
    pub candidate_tests: u64,
    pub duration: Duration,
}

struct Search {
    n: usize,
    cols: Vec<bool>,
    diag: Vec<bool>, // indexed by row - col + n - 1
    anti: Vec<bool>, // indexed by row + col
    placed: Vec<usize>,
    tests: u64,
}

impl Search {
    fn is_safe(&self, row: usize, col: usize) -> bool {
        !self.cols[col] && !self.diag(row, col) && !self.anti[row + col]
    }

    fn diag(&self, row: usize, col: usize) -> bool {
        self.diag[row + self.n - 1 - col]
    }

    fn solve(&mut self, row: usize) -> bool {
        if row == self.n {
            return true;
        }
        for col in 0..self.n {
            self.tests += 1;
            if self.is_safe(row, col) {
                self.set_lines(row, col, true);
                self.placed.push(col);
                if self.solve(row + 1) {
                    return true;
                }
                self.placed.pop();
                self.set_lines(row, col, false);
            }
        }
        false
    }

    fn set_lines(&mut self, row: usize, col: usize, value: bool) {
        self.cols[col] = value;
        self.diag[row + self.n - 1 - col] = value;
        self.anti[row + col] = value;
    }
}

/// Solves the n-queens problem by depth-first backtracking.
///
/// Rejects the unsolvable sizes 2 and 3; every other size has a solution,
/// so the search cannot come back empty.
pub fn solve_backtracking(size: BoardSize) -> Result<BacktrackOutcome, BtError> {
    let n = size.n();
    if n == 2 || n == 3 {
        return Err(BtError::Unsolvable { n });
    }

    let start = Instant::now();
    let mut search = Search {
        n,
        cols: vec![false; n],
        diag: vec![false; 2 * n - 1],
        anti: vec![false; 2 * n - 1],
        placed: Vec::with_capacity(n),
        tests: 0,
    };
    let found = search.solve(0);
    let duration = start.elapsed();
    assert!(found, "every size outside {{2, 3}} has a solution");

    let queens = search
        .placed
        .iter()
        .enumerate()
        .map(|(row, &col)| Position { row, col })
        .collect();
    let solution = Solution::new(size, queens).expect("search placed one queen per row");
    Ok(BacktrackOutcome {
        size,
        solution,
        candidate_tests: search.tests,
        duration,
    })
}
