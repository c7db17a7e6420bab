//! Attack-set pruning: which cells a newly placed queen removes from play.
//!
//! For a queen at `(i, j)` the attacked cells are generated directly, one
//! board-length sweep per line: `(x, j)` and `(i, x)` for the column and row,
//! `(x, i + j - x)` for the anti-diagonal and `(x, x - i + j)` for the
//! diagonal, keeping only on-board cells and dropping `(i, j)` itself.

use std::collections::BTreeSet;

use crate::board::{BoardError, BoardSize, Position};

/// The set of cells attacked by one queen, deduplicated and ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackSet {
    cells: BTreeSet<Position>,
}

impl AttackSet {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, p: Position) -> bool {
        self.cells.contains(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = Position> + '_ {
        self.cells.iter().copied()
    }

    pub fn cells(&self) -> &BTreeSet<Position> {
        &self.cells
    }
}

/// Cells attacked by a queen on `q`, excluding `q` itself.
///
/// Rejects off-board queens. The result never contains off-board cells and
/// agrees cell-for-cell with [`crate::board::brute_force_attacked_set`].
pub fn invalid_points(size: BoardSize, q: Position) -> Result<AttackSet, BoardError> {
    if !size.contains(q) {
        return Err(BoardError::OffBoard {
            row: q.row,
            col: q.col,
            n: size.n(),
        });
    }

    let n = size.n() as isize;
    let (i, j) = (q.row as isize, q.col as isize);
    let mut cells = BTreeSet::new();
    let mut push = |row: isize, col: isize| {
        if row >= 0 && row < n && col >= 0 && col < n {
            cells.insert(Position {
                row: row as usize,
                col: col as usize,
            });
        }
    };

    for x in 0..n {
        push(x, j); // column
        push(i, x); // row
        push(x, i + j - x); // anti-diagonal
        push(x, x - i + j); // diagonal
    }
    cells.remove(&q);

    Ok(AttackSet { cells })
}
