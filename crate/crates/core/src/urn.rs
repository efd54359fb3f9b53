//! The 2m-2 color ball-replacement process equivalent to tree growth.
//!
//! Every insertion position (gap) in an m-ary search tree carries a
//! color in `1..=2m-2`, and inserting a key into a gap changes the gap
//! population by a fixed integer vector that depends only on the drawn
//! color. Those vectors are the rows of the replacement matrix built
//! here; the coupling is exact, not asymptotic, and
//! [`coupled_insert_delta`] makes it mechanically checkable on any tree.
//!
//! Drawing color `c` applies row `c`:
//!
//! * color 1 (key-full node, one empty slot): the slot fills with a new
//!   single-key leaf; remove the 1 ball, add 2 of color m+1.
//! * color `i` in `2..=m` (key-full node with `i` empty slots, or, at
//!   `i = m`, a full leaf): one slot fills; the node's remaining `i - 1`
//!   gaps recolor from `i` to `i - 1`, and the new leaf brings 2 gaps of
//!   color m+1.
//! * color `m+j` in `m+1..=2m-3` (leaf with `j` keys): the leaf absorbs
//!   the key; its `j + 1` gaps become `j + 2` gaps of color m+j+1.
//! * color 2m-2 (leaf one key short of full): the leaf fills; its
//!   `m - 1` gaps become the `m` gaps of a full leaf (color m).
//!
//! Every row sums to 1, so the ball total grows by exactly one per draw.
//! The binary case m = 2 does not fit the general rules and uses its own
//! 2x2 matrix.

use crate::error::{Error, Result};
use crate::rng::Rng64;
use crate::tree::MaryTree;

/// Integer replacement matrix A for branching factor m. Row `r` is the
/// ball-count change applied when a color-`r` ball is drawn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacementMatrix {
    m: usize,
    rows: Vec<Vec<i64>>,
}

impl ReplacementMatrix {
    /// Build the matrix from the evolution rules above; m = 2 gets the
    /// boundary matrix [[-1, 2], [1, 0]].
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "branching factor must be at least 2, got {m}"
            )));
        }
        if m == 2 {
            return Ok(ReplacementMatrix {
                m,
                rows: vec![vec![-1, 2], vec![1, 0]],
            });
        }
        let size = 2 * m - 2;
        let mut rows = vec![vec![0i64; size]; size];
        // color 1: remove it, add two gaps of color m+1 for the new leaf
        rows[0][0] = -1;
        rows[0][m] = 2;
        // colors 2..=m: i gaps recolor down to i-1, plus the new leaf
        for i in 2..=m {
            rows[i - 1][i - 1] = -(i as i64);
            rows[i - 1][i - 2] = i as i64 - 1;
            rows[i - 1][m] = 2;
        }
        // colors m+1..=2m-3: leaf with j keys grows to j+1 keys
        for j in 1..=m - 3 {
            rows[m + j - 1][m + j - 1] = -(j as i64 + 1);
            rows[m + j - 1][m + j] = j as i64 + 2;
        }
        // color 2m-2: the leaf fills out to a full leaf
        rows[size - 1][size - 1] = -(m as i64 - 1);
        rows[size - 1][m - 1] = m as i64;
        Ok(ReplacementMatrix { m, rows })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of colors, 2m - 2.
    pub fn size(&self) -> usize {
        2 * self.m - 2
    }

    /// Row for a color in `1..=2m-2`.
    pub fn row(&self, color: usize) -> &[i64] {
        &self.rows[color - 1]
    }

    /// Entry `A[r][c]`, colors 1-based.
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.rows[row - 1][col - 1]
    }

    /// Dense transpose as floats, for the eigensolver.
    pub fn transpose_f64(&self) -> Vec<Vec<f64>> {
        let size = self.size();
        (0..size)
            .map(|i| (0..size).map(|j| self.rows[j][i] as f64).collect())
            .collect()
    }
}

/// Ball counts by color plus the number of draws performed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UrnState {
    counts: Vec<u64>,
    drawn: u64,
}

impl UrnState {
    /// Counts indexed from 0; entry `i` is color `i + 1`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn color(&self, color: usize) -> u64 {
        self.counts[color - 1]
    }

    pub fn drawn(&self) -> u64 {
        self.drawn
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Draw one ball of the given color and apply its replacement row.
    /// Fails if the color is absent or the row would drive any count
    /// negative.
    pub fn draw_and_replace(&mut self, matrix: &ReplacementMatrix, color: usize) -> Result<()> {
        if color == 0 || color > matrix.size() {
            return Err(Error::InvalidParameter(format!(
                "color {color} out of range 1..={}",
                matrix.size()
            )));
        }
        if self.counts[color - 1] == 0 {
            return Err(Error::AbsentColor(color));
        }
        let row = matrix.row(color);
        for (i, &d) in row.iter().enumerate() {
            if d < 0 && self.counts[i] < (-d) as u64 {
                return Err(Error::TenabilityViolation {
                    color,
                    affected: i + 1,
                });
            }
        }
        for (i, &d) in row.iter().enumerate() {
            if d < 0 {
                self.counts[i] -= (-d) as u64;
            } else {
                self.counts[i] += d as u64;
            }
        }
        self.drawn += 1;
        Ok(())
    }
}

/// Urn of a one-key tree: two balls of color m+1 (color 2 when m = 2),
/// zero draws.
pub fn initial_state(m: usize) -> Result<UrnState> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "branching factor must be at least 2, got {m}"
        )));
    }
    let mut counts = vec![0u64; 2 * m - 2];
    if m == 2 {
        counts[1] = 2;
    } else {
        counts[m] = 2;
    }
    Ok(UrnState { counts, drawn: 0 })
}

/// Run the urn for `steps` draws from the one-key start state, picking
/// each ball uniformly at random. Deterministic given the seed.
pub fn simulate(m: usize, steps: u64, seed: u64) -> Result<UrnState> {
    let matrix = ReplacementMatrix::new(m)?;
    let mut state = initial_state(m)?;
    let mut rng = Rng64::new(seed);
    let start_total = state.total();
    for step in 0..steps {
        // balance: the total grows by exactly one per draw
        let mut pick = rng.bounded(start_total + step);
        let mut color = 0;
        for (i, &c) in state.counts.iter().enumerate() {
            if pick < c {
                color = i + 1;
                break;
            }
            pick -= c;
        }
        debug_assert!(color > 0);
        state.draw_and_replace(&matrix, color)?;
    }
    Ok(state)
}

/// Color of the `gap_index`-th gap (canonical in-order numbering) and
/// the exact gap-profile change caused by inserting a key there.
///
/// The delta is measured by differencing profiles around a real
/// insertion on a copy of the tree, independently of the replacement
/// matrix; the coupling identity requires it to equal `row(color)`.
pub fn coupled_insert_delta(tree: &MaryTree, gap_index: u64) -> Result<(usize, Vec<i64>)> {
    let before = tree.gap_profile()?;
    let mut grown = tree.clone();
    let color = grown.insert_at_gap(gap_index)?;
    let after = grown.gap_profile()?;
    Ok((color, after.delta_from(&before)))
}
