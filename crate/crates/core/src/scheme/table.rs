use serde::{Deserialize, Serialize};

use crate::error::TableError;

/// Point-level encoding of a candidate scheme: an `n x n` matrix whose cell
/// `(x, y)` names the relation containing the ordered pair `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct RelationTable {
    n: usize,
    rank: usize,
    cells: Vec<u32>,
}

impl RelationTable {
    /// Builds a table from row-major cells with an explicit relation count.
    pub fn new(n: usize, rank: usize, cells: Vec<u32>) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::Empty);
        }
        if cells.len() != n * n {
            let row = cells.len() / n;
            return Err(TableError::NonSquare { row, len: cells.len() % n, n });
        }
        let mut seen = vec![false; rank];
        for (i, &c) in cells.iter().enumerate() {
            let c = c as usize;
            if c >= rank {
                return Err(TableError::IndexOutOfRange { x: i / n, y: i % n, index: c, rank });
            }
            seen[c] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(TableError::EmptyRelation(missing));
        }
        Ok(Self { n, rank, cells })
    }

    /// Builds a table from rows; the relation count is `max index + 1`.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, TableError> {
        let n = rows.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        let mut cells = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(TableError::NonSquare { row, len: r.len(), n });
            }
            cells.extend(r.iter().map(|&c| c as u32));
        }
        let rank = cells.iter().copied().max().unwrap_or(0) as usize + 1;
        Self::new(n, rank, cells)
    }

    /// Builds a table from a closure, with the relation count inferred.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::Empty);
        }
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                cells.push(f(x, y) as u32);
            }
        }
        let rank = cells.iter().copied().max().unwrap_or(0) as usize + 1;
        Self::new(n, rank, cells)
    }

    #[inline]
    pub fn points(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y] as usize
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[u32] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.row(x).iter().map(|&c| c as usize).collect()).collect()
    }

    /// Renames relations: cell value `s` becomes `map[s]`. `map` must be a bijection.
    pub fn relabel_relations(&self, map: &[usize]) -> Self {
        debug_assert_eq!(map.len(), self.rank);
        let cells = self.cells.iter().map(|&c| map[c as usize] as u32).collect();
        Self { n: self.n, rank: self.rank, cells }
    }

    /// Moves point `x` to `perm[x]`: the new table satisfies `new(perm[x], perm[y]) = old(x, y)`.
    pub fn permute_points(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.n);
        let n = self.n;
        let mut cells = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                cells[perm[x] * n + perm[y]] = self.cells[x * n + y];
            }
        }
        Self { n, rank: self.rank, cells }
    }

    /// Per-relation pair counts.
    pub fn sizes(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.rank];
        for &c in &self.cells {
            out[c as usize] += 1;
        }
        out
    }
}

impl TryFrom<Vec<Vec<usize>>> for RelationTable {
    type Error = TableError;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self, Self::Error> {
        Self::from_rows(&rows)
    }
}

impl From<RelationTable> for Vec<Vec<usize>> {
    fn from(t: RelationTable) -> Self {
        t.rows()
    }
}
