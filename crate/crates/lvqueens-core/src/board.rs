//! Board geometry: sizes, positions, attack tests, and solution checking.
//!
//! Everything here is deterministic and allocation-light; the solvers build
//! on these primitives and the test suites use [`brute_force_attacked_set`]
//! as an independent oracle for the pruning rules.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Errors for board construction and solution validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    /// Boards must have at least one cell.
    #[error("board size must be at least 1")]
    ZeroSize,
    /// A position lay outside the board it was used with.
    #[error("position ({row}, {col}) is outside a {n}x{n} board")]
    OffBoard { row: usize, col: usize, n: usize },
    /// A solution candidate did not have exactly one queen per row's worth of queens.
    #[error("expected {expected} queens, got {got}")]
    WrongQueenCount { expected: usize, got: usize },
}

/// The side length of a square board, guaranteed to be at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoardSize(usize);

impl BoardSize {
    /// Creates a board size; `n` must be at least 1.
    pub fn new(n: usize) -> Result<Self, BoardError> {
        if n == 0 {
            return Err(BoardError::ZeroSize);
        }
        Ok(BoardSize(n))
    }

    /// Side length of the board.
    pub fn n(self) -> usize {
        self.0
    }

    /// Total number of cells, `n * n`.
    pub fn cell_count(self) -> usize {
        self.0 * self.0
    }

    /// Whether `p` lies on this board.
    pub fn contains(self, p: Position) -> bool {
        p.row < self.0 && p.col < self.0
    }

    /// Row-major flat index of an on-board position.
    pub fn flat_of(self, p: Position) -> usize {
        debug_assert!(self.contains(p));
        p.row * self.0 + p.col
    }

    /// Position for a row-major flat index in `0..cell_count()`.
    pub fn position_at(self, flat: usize) -> Position {
        debug_assert!(flat < self.cell_count());
        Position {
            row: flat / self.0,
            col: flat % self.0,
        }
    }
}

impl fmt::Display for BoardSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A cell on the board, zero-indexed from the top-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

impl Position {
    pub fn new(row: usize, col: usize) -> Self {
        Position { row, col }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// Whether two queens on `a` and `b` attack each other: same row, same
/// column, or same diagonal (|Δrow| == |Δcol|).
///
/// The relation is symmetric. A position trivially attacks itself; callers
/// compare distinct positions.
pub fn attacks(a: Position, b: Position) -> bool {
    let dr = a.row.abs_diff(b.row);
    let dc = a.col.abs_diff(b.col);
    a.row == b.row || a.col == b.col || dr == dc
}

/// A full placement of `n` queens on an `n x n` board, one per cell listed.
///
/// Construction checks shape only (queen count and bounds); use
/// [`Solution::verify`] to check that no two queens attack each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    size: BoardSize,
    queens: Vec<Position>,
}

impl Solution {
    /// Wraps `queens` as a candidate solution for `size`.
    ///
    /// Fails if the count differs from `size.n()` or any queen is off-board.
    pub fn new(size: BoardSize, queens: Vec<Position>) -> Result<Self, BoardError> {
        if queens.len() != size.n() {
            return Err(BoardError::WrongQueenCount {
                expected: size.n(),
                got: queens.len(),
            });
        }
        for &q in &queens {
            if !size.contains(q) {
                return Err(BoardError::OffBoard {
                    row: q.row,
                    col: q.col,
                    n: size.n(),
                });
            }
        }
        Ok(Solution { size, queens })
    }

    pub fn size(&self) -> BoardSize {
        self.size
    }

    pub fn n(&self) -> usize {
        self.size.n()
    }

    pub fn queens(&self) -> &[Position] {
        &self.queens
    }

    /// True when no pair of queens attacks each other.
    pub fn verify(&self) -> bool {
        self.find_conflict().is_none()
    }

    /// First attacking pair in queen-list order, if any.
    pub fn find_conflict(&self) -> Option<(Position, Position)> {
        for (i, &a) in self.queens.iter().enumerate() {
            for &b in &self.queens[i + 1..] {
                if attacks(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// Every on-board cell attacked by a queen on `q`, excluding `q` itself,
/// found by scanning all `n * n` cells with [`attacks`].
///
/// Quadratic and meant as a test oracle for the pruning rules; `q` must be
/// on the board.
pub fn brute_force_attacked_set(size: BoardSize, q: Position) -> BTreeSet<Position> {
    assert!(size.contains(q), "queen {q} is off a {size}x{size} board");
    let mut out = BTreeSet::new();
    for row in 0..size.n() {
        for col in 0..size.n() {
            let p = Position { row, col };
            if p != q && attacks(q, p) {
                out.insert(p);
            }
        }
    }
    out
}
