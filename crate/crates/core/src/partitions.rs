//! Young-diagram combinatorics: rims, p-segments, p-removable cells, the
//! operators `J` and `j`, and the Mullineux bijection on p-restricted
//! partitions.
//!
//! Cells are 1-based `(row, col)` pairs. The rim is walked from the bottom-left
//! corner towards the top-right: by increasing column, and within a column by
//! decreasing row.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("p-segments need p >= 2, got {0}")]
    BadModulus(u32),
    #[error("{parts:?} is not {p}-restricted")]
    NotRestricted { parts: Vec<usize>, p: u32 },
}

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A box of a Young diagram, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// The p-rim of a partition, cut into p-segments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RimDecomposition {
    pub p: u32,
    /// Every rim cell in path order.
    pub rim_cells: Vec<Cell>,
    pub segments: Vec<Vec<Cell>>,
    /// `full_flags[k]` is true when segment `k` has exactly `p` cells.
    pub full_flags: Vec<bool>,
}

impl RimDecomposition {
    /// Union of the segments.
    pub fn p_rim(&self) -> impl Iterator<Item = &Cell> {
        self.segments.iter().flatten()
    }
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// Sorts arbitrary nonnegative integers into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted")
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|mu|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part in 1-based row `row`, zero past the end.
    pub fn row_len(&self, row: usize) -> usize {
        if row == 0 {
            return usize::MAX;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.row_len(cell.row)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i + 1, j)))
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|c| self.parts.iter().take_while(|&&r| r >= c).count())
            .collect();
        Partition { parts }
    }

    /// Consecutive differences (including the last part against zero) are
    /// below `p`. Always true for `p = 0`.
    pub fn is_restricted(&self, p: u32) -> bool {
        if p == 0 {
            return true;
        }
        let p = p as usize;
        self.parts
            .iter()
            .zip(self.parts.iter().skip(1).chain(std::iter::once(&0)))
            .all(|(a, b)| a - b < p)
    }

    /// Part-wise `self + scale * other`, padding the shorter with zeros.
    pub fn add_scaled(&self, other: &Partition, scale: usize) -> Partition {
        let len = self.len().max(other.len());
        let parts = (0..len)
            .map(|i| {
                self.parts.get(i).copied().unwrap_or(0)
                    + scale * other.parts.get(i).copied().unwrap_or(0)
            })
            .collect();
        Partition { parts }
    }

    /// Cells `(i, j)` of the diagram with `(i + 1, j + 1)` outside it, in
    /// path order.
    pub fn rim(&self) -> Vec<Cell> {
        let mut cells: Vec<Cell> = self
            .cells()
            .filter(|c| !self.contains(Cell::new(c.row + 1, c.col + 1)))
            .collect();
        cells.sort_by(|a, b| a.col.cmp(&b.col).then(b.row.cmp(&a.row)));
        cells
    }

    /// Cuts the rim into p-segments: each segment takes up to `p` consecutive
    /// rim cells, and the next one starts at the first rim cell in a column
    /// strictly to the right of the previous segment.
    pub fn p_segments(&self, p: u32) -> Result<RimDecomposition, PartitionError> {
        if p < 2 {
            return Err(PartitionError::BadModulus(p));
        }
        let rim_cells = self.rim();
        let p_len = p as usize;
        let mut segments = Vec::new();
        let mut start = 0;
        while start < rim_cells.len() {
            let end = (start + p_len).min(rim_cells.len());
            let segment = rim_cells[start..end].to_vec();
            let right_edge = segment.iter().map(|c| c.col).max().unwrap_or(0);
            start = end;
            while start < rim_cells.len() && rim_cells[start].col <= right_edge {
                start += 1;
            }
            segments.push(segment);
        }
        let full_flags = segments.iter().map(|s| s.len() == p_len).collect();
        Ok(RimDecomposition {
            p,
            rim_cells,
            segments,
            full_flags,
        })
    }

    /// Row-end cells of the p-rim other than the final cell of a full
    /// p-segment, sorted by `(row, col)`.
    pub fn removable_cells(&self, p: u32) -> Result<Vec<Cell>, PartitionError> {
        let decomposition = self.p_segments(p)?;
        let mut cells: Vec<Cell> = decomposition
            .segments
            .iter()
            .zip(&decomposition.full_flags)
            .flat_map(|(segment, &full)| {
                let last = segment.len() - 1;
                segment
                    .iter()
                    .enumerate()
                    .filter(move |&(k, _)| !(full && k == last))
                    .map(|(_, c)| *c)
            })
            .filter(|c| c.col == self.row_len(c.row))
            .collect();
        cells.sort();
        Ok(cells)
    }

    /// `J(mu)`: the partition left after deleting every p-removable cell.
    pub fn big_j(&self, p: u32) -> Result<Partition, PartitionError> {
        let mut parts = self.parts.clone();
        for cell in self.removable_cells(p)? {
            parts[cell.row - 1] -= 1;
        }
        // each removed cell ends its row, so the result stays decreasing
        Partition::new(parts)
    }

    /// `j(mu) = |mu| - |J(mu)|`.
    pub fn little_j(&self, p: u32) -> Result<usize, PartitionError> {
        Ok(self.size() - self.big_j(p)?.size())
    }

    /// `j` with the characteristic-zero convention: for `p = 0` this is the
    /// length of the partition.
    pub fn little_j_char(&self, p: u32) -> Result<usize, PartitionError> {
        if p == 0 {
            Ok(self.len())
        } else {
            self.little_j(p)
        }
    }

    /// The Mullineux image `(j(mu), j(J mu), j(J^2 mu), ...)`.
    ///
    /// For `p = 0` this is the conjugate partition.
    pub fn mullineux(&self, p: u32) -> Result<Partition, PartitionError> {
        if p == 0 {
            return Ok(self.conjugate());
        }
        if !self.is_restricted(p) {
            return Err(PartitionError::NotRestricted {
                parts: self.parts.clone(),
                p,
            });
        }
        let mut image = Vec::new();
        let mut current = self.clone();
        // a restricted nonempty partition always has a removable cell
        for _ in 0..=self.size() {
            if current.is_empty() {
                break;
            }
            let next = current.big_j(p)?;
            image.push(current.size() - next.size());
            current = next;
        }
        debug_assert!(current.is_empty());
        Partition::new(image)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, part) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{part}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=rest.min(max_part)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
