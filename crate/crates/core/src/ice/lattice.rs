//! The three square-ice geometries, flattened into a row-major walk.
//!
//! Orientation bits: a horizontal edge is `true` when it points right, a
//! vertical edge is `true` when it points up. Left boundary edges always
//! point into the grid (right); bottom boundary edges point out (down).

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Boundary {
    /// n×n grid with domain-wall boundary.
    Dwbc(usize),
    /// 2n×n grid, rows 2i−1 and 2i joined by a U-turn on the right.
    UTurn(usize),
    /// Lower triangle of a 2n×2n grid, closed by corner vertices on the diagonal.
    Os(usize),
}

impl Boundary {
    pub fn n(&self) -> usize {
        match *self {
            Boundary::Dwbc(n) | Boundary::UTurn(n) | Boundary::Os(n) => n,
        }
    }

    pub fn rows(&self) -> usize {
        match *self {
            Boundary::Dwbc(n) => n,
            Boundary::UTurn(n) | Boundary::Os(n) => 2 * n,
        }
    }

    /// Number of vertical lines.
    pub fn columns(&self) -> usize {
        match *self {
            Boundary::Dwbc(n) | Boundary::UTurn(n) => n,
            Boundary::Os(n) => 2 * n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Boundary::Dwbc(_) => "dwbc",
            Boundary::UTurn(_) => "uturn",
            Boundary::Os(_) => "os",
        }
    }

    pub(crate) fn steps(&self) -> Vec<Step> {
        let mut steps = Vec::new();
        match *self {
            Boundary::Dwbc(n) => {
                for row in 0..n {
                    steps.push(Step::RowStart);
                    steps.extend((0..n).map(|col| Step::Vertex { row, col }));
                    steps.push(Step::RowEnd);
                }
            }
            Boundary::UTurn(n) => {
                for pair in 0..n {
                    for half in 0..2 {
                        let row = 2 * pair + half;
                        steps.push(Step::RowStart);
                        steps.extend((0..n).map(|col| Step::Vertex { row, col }));
                        steps.push(if half == 0 {
                            Step::UTurnOpen
                        } else {
                            Step::UTurnClose { pair }
                        });
                    }
                }
            }
            Boundary::Os(n) => {
                for row in 0..2 * n {
                    steps.push(Step::RowStart);
                    steps.extend((0..row).map(|col| Step::Vertex { row, col }));
                    steps.push(Step::Corner { col: row });
                }
            }
        }
        steps
    }

    /// Vertical edges entering the first row from above (`true` = up/out).
    /// OS columns are opened later by their corner vertex.
    pub(crate) fn initial_vertical(&self) -> u64 {
        match *self {
            Boundary::Dwbc(n) | Boundary::UTurn(n) => (1u64 << n) - 1,
            Boundary::Os(_) => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Step {
    RowStart,
    Vertex {
        row: usize,
        col: usize,
    },
    /// Right boundary of a DWBC row: the edge must point left, into the grid.
    RowEnd,
    /// Right end of the upper row of a U-turn pair.
    UTurnOpen,
    /// Right end of the lower row: exactly one of the two edges points in.
    UTurnClose {
        pair: usize,
    },
    /// Diagonal corner of the OS triangle: its two edges point both in or
    /// both out, matching a zero on the diagonal of the symmetric matrix.
    Corner {
        col: usize,
    },
}

/// The six tetravalent vertex configurations, named by the horizontal and
/// vertical flow through a zero vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexType {
    /// Both horizontal edges in, both vertical out: ASM entry +1.
    Plus,
    /// Both horizontal edges out, both vertical in: ASM entry −1.
    Minus,
    RightUp,
    LeftDown,
    RightDown,
    LeftUp,
}

impl VertexType {
    pub fn entry(&self) -> i8 {
        match self {
            VertexType::Plus => 1,
            VertexType::Minus => -1,
            _ => 0,
        }
    }
}

/// Edge orientations around one tetravalent vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexConfig {
    pub row: usize,
    pub col: usize,
    pub left: bool,
    pub right: bool,
    pub top: bool,
    pub bottom: bool,
}

impl VertexConfig {
    pub fn in_count(&self) -> u8 {
        self.left as u8 + !self.right as u8 + !self.top as u8 + self.bottom as u8
    }

    pub fn vertex_type(&self) -> VertexType {
        match (self.left, self.right, self.top, self.bottom) {
            (true, false, true, false) => VertexType::Plus,
            (false, true, false, true) => VertexType::Minus,
            (true, true, true, true) => VertexType::RightUp,
            (true, true, false, false) => VertexType::RightDown,
            (false, false, true, true) => VertexType::LeftUp,
            (false, false, false, false) => VertexType::LeftDown,
            _ => panic!("vertex violates the ice rule: {self:?}"),
        }
    }
}

/// Completions `(right, bottom)` of a vertex with known left and top edges
/// that satisfy two-in two-out.
pub(crate) fn completions(left: bool, top: bool) -> impl Iterator<Item = (bool, bool)> {
    [(true, true), (true, false), (false, true), (false, false)]
        .into_iter()
        .filter(move |&(right, bottom)| left as u8 + !right as u8 + !top as u8 + bottom as u8 == 2)
}
