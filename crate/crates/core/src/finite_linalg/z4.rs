//! Matrices over Z/4 and their Howell normal form.
//!
//! Row echelon forms over Z/4 are not unique (a pivot of 2 leaves room for
//! hidden elements such as `2 * row`), so membership in a row module is
//! decided against the Howell form instead.

use std::fmt;

use crate::error::{Error, Result};

/// A dense matrix with entries in Z/4, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatZ4 {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl MatZ4 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of residues in `0..4`.
    pub fn from_rows(cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    what: "matrix row",
                    expected: cols,
                    found: row.len(),
                });
            }
            if let Some(&bad) = row.iter().find(|&&e| e > 3) {
                return Err(Error::ResidueOutOfRange {
                    value: bad as u64,
                    modulus: 4,
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        (0..self.rows).map(|r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.rows().map(<[u8]>::to_vec).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }
}

impl fmt::Debug for MatZ4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatZ4 {}x{} {:?}", self.rows, self.cols, self.to_rows())
    }
}

fn sub_multiple(target: &mut [u8], source: &[u8], factor: u8) {
    if factor.is_multiple_of(4) {
        return;
    }
    for (t, &s) in target.iter_mut().zip(source) {
        *t = (*t + 4 * 4 - factor * s % 4) % 4;
    }
}

fn scale(row: &mut [u8], factor: u8) {
    for e in row.iter_mut() {
        *e = *e * factor % 4;
    }
}

/// Howell normal form of the row module of `m`.
///
/// The result has one row per pivot, pivots in strictly increasing columns,
/// every pivot equal to 1 or 2, entries above a unit pivot cleared and
/// entries above a pivot 2 reduced into `{0, 1}`. It also has the Howell
/// property: the rows at or below any pivot span every module element that
/// vanishes to the left of that pivot. Two matrices have the same Howell
/// form exactly when they have the same row module.
pub fn howell_z4(m: &MatZ4) -> MatZ4 {
    let cols = m.cols;
    let mut pool: Vec<Vec<u8>> = m
        .rows()
        .filter(|r| r.iter().any(|&e| e != 0))
        .map(<[u8]>::to_vec)
        .collect();
    let mut pivots: Vec<(usize, Vec<u8>)> = Vec::new();

    for c in 0..cols {
        let choice = pool
            .iter()
            .position(|r| r[c] % 2 == 1)
            .or_else(|| pool.iter().position(|r| r[c] == 2));
        let Some(p) = choice else {
            continue;
        };
        let mut pivot = pool.swap_remove(p);
        if pivot[c] == 3 {
            scale(&mut pivot, 3);
        }
        let unit = pivot[c] == 1;
        for row in pool.iter_mut() {
            let e = row[c];
            if e == 0 {
                continue;
            }
            // without a unit in the column every remaining entry is 0 or 2
            let factor = if unit { e } else { e / 2 };
            sub_multiple(row, &pivot, factor);
        }
        if !unit {
            let mut doubled = pivot.clone();
            scale(&mut doubled, 2);
            pool.push(doubled);
        }
        pool.retain(|r| r.iter().any(|&e| e != 0));
        pivots.push((c, pivot));
    }
    debug_assert!(pool.is_empty(), "every nonzero row must have been absorbed");

    for i in 0..pivots.len() {
        let (c, pivot) = pivots[i].clone();
        let unit = pivot[c] == 1;
        for (_, row) in pivots.iter_mut().take(i) {
            let e = row[c];
            let factor = if unit { e } else { e / 2 };
            sub_multiple(row, &pivot, factor);
        }
    }

    let rows: Vec<Vec<u8>> = pivots.into_iter().map(|(_, r)| r).collect();
    MatZ4 {
        rows: rows.len(),
        cols,
        data: rows.concat(),
    }
}

/// A submodule of `(Z/4)^n`, held in Howell form for exact membership tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowModuleZ4 {
    howell: MatZ4,
}

impl RowModuleZ4 {
    /// The module spanned by the rows of `m`.
    pub fn new(m: &MatZ4) -> Self {
        Self { howell: howell_z4(m) }
    }

    pub fn howell(&self) -> &MatZ4 {
        &self.howell
    }

    pub fn ambient_rank(&self) -> usize {
        self.howell.cols
    }

    /// Reduces `v` against the Howell rows. The remainder is zero exactly
    /// when `v` lies in the module.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.howell.cols, "vector length mismatch");
        let mut rest: Vec<u8> = v.iter().map(|e| e % 4).collect();
        for row in self.howell.rows() {
            let c = row.iter().position(|&e| e != 0).expect("Howell rows are nonzero");
            let e = rest[c];
            if row[c] == 1 {
                sub_multiple(&mut rest, row, e);
            } else if e.is_multiple_of(2) {
                sub_multiple(&mut rest, row, e / 2);
            }
        }
        rest
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        v.len() == self.howell.cols && self.reduce(v).iter().all(|&e| e == 0)
    }
}
