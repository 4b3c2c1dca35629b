//! Dense bit vectors and matrices over GF(2).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VecGF2 {
    len: usize,
    words: Vec<u64>,
}

impl VecGF2 {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Builds a vector from residues; every entry is reduced mod 2.
    pub fn from_residues(entries: &[u8]) -> Self {
        let mut v = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            if e & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools(entries: &[bool]) -> Self {
        let mut v = Self::zeros(entries.len());
        for (i, &b) in entries.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Adds `other` in place (bitwise xor).
    pub fn add_assign(&mut self, other: &VecGF2) {
        assert_eq!(self.len, other.len, "length mismatch in GF(2) addition");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &VecGF2) -> VecGF2 {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Standard dot product over GF(2).
    pub fn dot(&self, other: &VecGF2) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in GF(2) dot product");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Indices of the nonzero entries, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * WORD_BITS + bit)
            })
        })
    }

    /// Lowest index holding a one.
    pub fn leading_index(&self) -> Option<usize> {
        self.ones().next()
    }

    /// Entries as 0/1 bytes.
    pub fn to_residues(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Appends one entry, producing a vector of length `len + 1`.
    pub fn extended(&self, last: bool) -> VecGF2 {
        let mut out = VecGF2::zeros(self.len + 1);
        for i in self.ones() {
            out.set(i, true);
        }
        out.set(self.len, last);
        out
    }
}

/// Lexicographic order with index 0 most significant.
impl Ord for VecGF2 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                if a != b {
                    let low = (a ^ b).trailing_zeros();
                    return if (a >> low) & 1 == 1 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for VecGF2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VecGF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VecGF2({self})")
    }
}

impl fmt::Display for VecGF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense matrix over GF(2) stored by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatGF2 {
    cols: usize,
    rows: Vec<VecGF2>,
}

impl MatGF2 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![VecGF2::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| VecGF2::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from its rows. An empty row list needs the column
    /// count supplied separately, hence the explicit `cols`.
    pub fn from_rows(cols: usize, rows: Vec<VecGF2>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                what: "matrix row",
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Convenience constructor from residue rows; entries are reduced mod 2.
    pub fn from_residue_rows(cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        Self::from_rows(cols, rows.iter().map(|r| VecGF2::from_residues(r)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn row(&self, r: usize) -> &VecGF2 {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[VecGF2] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> VecGF2 {
        let mut out = VecGF2::zeros(self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> MatGF2 {
        MatGF2 {
            cols: self.nrows(),
            rows: (0..self.cols).map(|c| self.column(c)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &VecGF2) -> Result<VecGF2> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                what: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(VecGF2::from_bools(
            &self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>(),
        ))
    }

    /// The augmented matrix `(self | rhs)`.
    pub fn augmented(&self, rhs: &VecGF2) -> Result<MatGF2> {
        if rhs.len() != self.nrows() {
            return Err(Error::DimensionMismatch {
                what: "right-hand side",
                expected: self.nrows(),
                found: rhs.len(),
            });
        }
        Ok(MatGF2 {
            cols: self.cols + 1,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| r.extended(rhs.get(i)))
                .collect(),
        })
    }

    /// The matrix with `extra` appended as a last row.
    pub fn with_row(&self, extra: VecGF2) -> Result<MatGF2> {
        let mut rows = self.rows.clone();
        rows.push(extra);
        MatGF2::from_rows(self.cols, rows)
    }

    pub fn rank(&self) -> usize {
        rref_gf2(self).rank
    }
}

impl fmt::Debug for MatGF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatGF2 {}x{} [", self.nrows(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

/// Output of [`rref_gf2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    /// Reduced row-echelon form; same shape as the input, zero rows last.
    pub reduced: MatGF2,
    pub pivot_cols: Vec<usize>,
}

/// Gauss-Jordan elimination with leftmost pivot selection.
///
/// For each column the first remaining row with a one in it becomes the
/// pivot row, which makes the result depend only on the input matrix.
pub fn rref_gf2(m: &MatGF2) -> Rref {
    let mut rows = m.rows.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.add_assign(&pivot);
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    Rref {
        rank: r,
        reduced: MatGF2 { cols: m.cols, rows },
        pivot_cols,
    }
}

/// Basis of the null space `{v : m v = 0}` in reduced echelon form.
///
/// Each basis vector has a distinct leading index, no other basis vector
/// has a one at that index, and the basis is sorted by leading index.
fn null_space_reduced(rref: &Rref) -> Vec<VecGF2> {
    let cols = rref.reduced.ncols();
    let mut is_pivot = vec![false; cols];
    for &p in &rref.pivot_cols {
        is_pivot[p] = true;
    }
    let raw: Vec<VecGF2> = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = VecGF2::unit(cols, f);
            for (i, &p) in rref.pivot_cols.iter().enumerate() {
                if rref.reduced.get(i, f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();
    canonical_basis(cols, raw)
}

/// Reduced echelon basis (leading index ascending) of the span of `vectors`.
fn canonical_basis(cols: usize, vectors: Vec<VecGF2>) -> Vec<VecGF2> {
    let n = vectors.len();
    let span = MatGF2 { cols, rows: vectors };
    let reduced = rref_gf2(&span);
    debug_assert!(reduced.rank <= n);
    reduced.reduced.rows.into_iter().take(reduced.rank).collect()
}

/// Full solution set `particular + span(kernel_basis)` of `C x = A`.
///
/// The representation is canonical: the kernel basis is in reduced echelon
/// form and `particular` is zero at every leading index of the basis, which
/// makes it the lexicographically smallest solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionGF2 {
    pub particular: VecGF2,
    pub kernel_basis: Vec<VecGF2>,
}

impl AffineSolutionGF2 {
    pub fn dimension(&self) -> usize {
        self.kernel_basis.len()
    }

    /// `2^dimension`, or `None` when it does not fit in a `u128`.
    pub fn count(&self) -> Option<u128> {
        1u128.checked_shl(self.dimension() as u32)
    }

    /// The solution with kernel coefficients given by the bits of `index`,
    /// where basis vector 0 is the most significant coefficient.
    pub fn nth(&self, index: u128) -> VecGF2 {
        let d = self.dimension();
        let mut v = self.particular.clone();
        for (i, k) in self.kernel_basis.iter().enumerate() {
            if (index >> (d - 1 - i)) & 1 == 1 {
                v.add_assign(k);
            }
        }
        v
    }

    /// All solutions in increasing lexicographic order.
    pub fn solutions(&self) -> impl Iterator<Item = VecGF2> + '_ {
        let count = self.count().expect("solution space too large to enumerate");
        (0..count).map(move |i| self.nth(i))
    }

    /// Whether `x` lies in the affine solution space.
    pub fn contains(&self, x: &VecGF2) -> bool {
        if x.len() != self.particular.len() {
            return false;
        }
        let mut d = x.add(&self.particular);
        for k in &self.kernel_basis {
            let lead = k.leading_index().expect("kernel basis vectors are nonzero");
            if d.get(lead) {
                d.add_assign(k);
            }
        }
        d.is_zero()
    }
}

/// Solves `C x = A` over GF(2).
///
/// Returns `Ok(None)` exactly when `rank(C) != rank(C | A)`.
pub fn solve_affine_gf2(c: &MatGF2, a: &VecGF2) -> Result<Option<AffineSolutionGF2>> {
    let aug = c.augmented(a)?;
    let reduced = rref_gf2(&aug);
    let cols = c.ncols();
    if reduced.pivot_cols.last() == Some(&cols) {
        return Ok(None);
    }
    let mut particular = VecGF2::zeros(cols);
    for (i, &p) in reduced.pivot_cols.iter().enumerate() {
        if reduced.reduced.get(i, cols) {
            particular.set(p, true);
        }
    }
    let coefficient_part = Rref {
        rank: reduced.rank,
        reduced: MatGF2::from_rows(
            cols,
            reduced
                .reduced
                .rows
                .iter()
                .map(|r| {
                    let mut v = VecGF2::zeros(cols);
                    for i in r.ones().filter(|&i| i < cols) {
                        v.set(i, true);
                    }
                    v
                })
                .collect(),
        )?,
        pivot_cols: reduced.pivot_cols,
    };
    let kernel_basis = null_space_reduced(&coefficient_part);
    for k in &kernel_basis {
        let lead = k.leading_index().expect("nonzero basis vector");
        if particular.get(lead) {
            particular.add_assign(k);
        }
    }
    Ok(Some(AffineSolutionGF2 {
        particular,
        kernel_basis,
    }))
}

/// Basis of `{v : row . v = 0 for every row}`.
pub fn annihilator_gf2(rows: &MatGF2) -> Vec<VecGF2> {
    null_space_reduced(&rref_gf2(rows))
}

/// For an inconsistent system `C x = A`, a row combination `y` with
/// `y^T C = 0` and `y . A = 1`. The lexicographically smallest such `y` is
/// returned; `None` means the system is solvable.
pub fn inconsistency_witness(c: &MatGF2, a: &VecGF2) -> Result<Option<VecGF2>> {
    if a.len() != c.nrows() {
        return Err(Error::DimensionMismatch {
            what: "right-hand side",
            expected: c.nrows(),
            found: a.len(),
        });
    }
    let system = c.transpose().with_row(a.clone())?;
    let target = VecGF2::unit(c.ncols() + 1, c.ncols());
    Ok(solve_affine_gf2(&system, &target)?.map(|s| s.particular))
}
