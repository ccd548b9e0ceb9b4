//! Exact sparse linear algebra over a [`Field`].
//!
//! Matrices are stored column-major as sorted sparse columns. Everything
//! (rank, kernels, solving, inversion) is driven by one column-echelon
//! reducer, [`Echelon`], which keys each stored vector by its largest
//! nonzero row index.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Sparse vector: strictly increasing indices, no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize, field: Field) -> Self {
        Self {
            entries: vec![(index, field.one())],
        }
    }

    /// Builds from unsorted `(index, value)` pairs, summing duplicates.
    pub fn from_entries(mut pairs: Vec<(usize, Scalar)>, field: Field) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w = field.add(w, &v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !field.is_zero(v));
        Self { entries }
    }

    pub fn from_dense(values: &[Scalar], field: Field) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !field.is_zero(v))
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Largest index carrying a nonzero entry.
    pub fn pivot(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Scalar, other: &SparseVec, field: Field) {
        if field.is_zero(c) || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, w) = b.next().unwrap();
                    out.push((*j, field.mul(c, w)));
                }
                (Some(_), Some(_)) => {
                    let (i, v) = a.next().unwrap();
                    let (_, w) = b.next().unwrap();
                    let s = field.add(&v, &field.mul(c, w));
                    if !field.is_zero(&s) {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, w) = b.next().unwrap();
                    out.push((*j, field.mul(c, w)));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn scaled(&self, c: &Scalar, field: Field) -> SparseVec {
        if field.is_zero(c) {
            return SparseVec::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, field.mul(c, v)))
                .collect(),
        }
    }

    /// Re-indexes entries through `map`; `None` from the map aborts.
    pub fn reindex<F>(&self, mut map: F, field: Field) -> Option<SparseVec>
    where
        F: FnMut(usize) -> Option<usize>,
    {
        let mut pairs = Vec::with_capacity(self.entries.len());
        for (i, v) in &self.entries {
            pairs.push((map(*i)?, v.clone()));
        }
        Some(SparseVec::from_entries(pairs, field))
    }

    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (i + offset, v.clone()))
                .collect(),
        }
    }
}

/// Column-echelon store. Each inserted vector has a distinct pivot; every
/// vector carries a tag vector recording how it was produced.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    by_pivot: HashMap<usize, usize>,
    vectors: Vec<SparseVec>,
    tags: Vec<SparseVec>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Self {
            field,
            by_pivot: HashMap::new(),
            vectors: Vec::new(),
            tags: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Eliminates pivots of `v` against stored vectors, applying the same
    /// operations to `tag`. Returns the residue and the updated tag.
    pub fn reduce(&self, mut v: SparseVec, mut tag: SparseVec) -> (SparseVec, SparseVec) {
        let field = self.field;
        while let Some(p) = v.pivot() {
            let Some(&k) = self.by_pivot.get(&p) else {
                break;
            };
            let w = &self.vectors[k];
            let lead_v = v.get(p).expect("pivot entry present");
            let lead_w = w.get(p).expect("pivot entry present");
            let c = field.neg(
                &field
                    .div(lead_v, lead_w)
                    .expect("pivot entries are nonzero"),
            );
            v.axpy(&c, w, field);
            tag.axpy(&c, &self.tags[k], field);
        }
        (v, tag)
    }

    /// Reduces, then stores the residue if nonzero. Returns `Some(residue_tag)`
    /// when the vector was dependent (residue zero), `None` when inserted.
    pub fn insert(&mut self, v: SparseVec, tag: SparseVec) -> Option<SparseVec> {
        let (r, t) = self.reduce(v, tag);
        match r.pivot() {
            None => Some(t),
            Some(p) => {
                self.by_pivot.insert(p, self.vectors.len());
                self.vectors.push(r);
                self.tags.push(t);
                None
            }
        }
    }

    /// The most recently stored (reduced) vector.
    pub fn last(&self) -> Option<&SparseVec> {
        self.vectors.last()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    columns: Vec<SparseVec>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} over {} ", self.rows, self.cols, self.field)?;
        f.debug_list().entries(self.to_string_rows()).finish()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        Self {
            rows,
            cols,
            field,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        Self {
            rows: n,
            cols: n,
            field,
            columns: (0..n).map(|i| SparseVec::unit(i, field)).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>, field: Field) -> Self {
        debug_assert!(columns.iter().all(|c| c.pivot().is_none_or(|p| p < rows)));
        Self {
            rows,
            cols: columns.len(),
            field,
            columns,
        }
    }

    /// Dense constructor from integer rows; all rows must have equal length.
    pub fn from_i64_rows(rows: &[Vec<i64>], field: Field) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged matrix rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    cols[j].push((i, field.from_i64(v)));
                }
            }
        }
        Self::from_columns(
            nrows,
            cols.into_iter()
                .map(|c| SparseVec::from_entries(c, field))
                .collect(),
            field,
        )
    }

    pub fn from_dense(rows: usize, cols: usize, values: &[Vec<Scalar>], field: Field) -> Self {
        let mut m = Self::zeros(rows, cols, field);
        for (j, col) in m.columns.iter_mut().enumerate() {
            *col = SparseVec::from_entries(
                (0..rows).map(|i| (i, values[i][j].clone())).collect(),
                field,
            );
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.columns[j]
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.rows, self.field) && self.rows == self.cols
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.entries() {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    /// Exact entries as strings, row by row.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.to_dense()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.to_string()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.entries() {
                cols[*i].push((j, v.clone()));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            columns: cols.into_iter().map(|c| SparseVec { entries: c }).collect(),
        }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, x) in v.entries() {
            out.axpy(x, &self.columns[*j], self.field);
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: rhs.rows,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: rhs.cols,
            field: self.field,
            columns: rhs.columns.iter().map(|c| self.mul_vec(c)).collect(),
        })
    }

    fn check_same_shape(&self, other: &Matrix, context: &'static str) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.rows,
                found: other.rows,
            });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.cols,
                found: other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other, "matrix sum")?;
        let one = self.field.one();
        let mut out = self.clone();
        for (c, o) in out.columns.iter_mut().zip(&other.columns) {
            c.axpy(&one, o, self.field);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.scaled(&self.field.from_i64(-1))
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            columns: self
                .columns
                .iter()
                .map(|v| v.scaled(c, self.field))
                .collect(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                context: "horizontal stack",
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(Matrix::from_columns(self.rows, columns, self.field))
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "vertical stack",
                expected: self.cols,
                found: other.cols,
            });
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.entries.extend(b.shifted(self.rows).entries);
                c
            })
            .collect();
        Ok(Matrix::from_columns(
            self.rows + other.rows,
            columns,
            self.field,
        ))
    }

    /// Adds `block` into `self` with its top-left corner at `(row, col)`.
    pub fn add_block(&mut self, row: usize, col: usize, block: &Matrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        let one = self.field.one();
        for (j, c) in block.columns.iter().enumerate() {
            self.columns[col + j].axpy(&one, &c.shifted(row), self.field);
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field);
        self.columns
            .iter()
            .filter(|c| e.insert((*c).clone(), SparseVec::new()).is_none())
            .count()
    }

    /// Columns spanning the kernel, one per non-pivot column, in column order.
    pub fn kernel_basis(&self) -> Matrix {
        let mut e = Echelon::new(self.field);
        let mut kernel = Vec::new();
        for (j, c) in self.columns.iter().enumerate() {
            if let Some(t) = e.insert(c.clone(), SparseVec::unit(j, self.field)) {
                kernel.push(t);
            }
        }
        Matrix::from_columns(self.cols, kernel, self.field)
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.rows - self.rank()
    }

    /// A particular solution of `self * x = b`, or `None` when inconsistent.
    /// Free variables (non-pivot columns) are set to zero.
    pub fn solve(&self, b: &SparseVec) -> Result<Option<SparseVec>> {
        if let Some(p) = b.pivot() {
            if p >= self.rows {
                return Err(Error::DimensionMismatch {
                    context: "solve",
                    expected: self.rows,
                    found: p + 1,
                });
            }
        }
        let mut e = Echelon::new(self.field);
        for (j, c) in self.columns.iter().enumerate() {
            e.insert(c.clone(), SparseVec::unit(j, self.field));
        }
        let (residue, tag) = e.reduce(b.clone(), SparseVec::new());
        if !residue.is_zero() {
            return Ok(None);
        }
        Ok(Some(tag.scaled(&self.field.from_i64(-1), self.field)))
    }

    /// Two-sided inverse of a square invertible matrix.
    pub fn inverse(&self) -> Result<Matrix> {
        let rank = self.rank();
        if self.rows != self.cols || rank != self.rows {
            return Err(Error::NotInvertible {
                context: "matrix inverse".into(),
                rows: self.rows,
                cols: self.cols,
                rank,
            });
        }
        let mut e = Echelon::new(self.field);
        for (j, c) in self.columns.iter().enumerate() {
            e.insert(c.clone(), SparseVec::unit(j, self.field));
        }
        let minus_one = self.field.from_i64(-1);
        let columns = (0..self.rows)
            .map(|i| {
                let (r, t) = e.reduce(SparseVec::unit(i, self.field), SparseVec::new());
                debug_assert!(r.is_zero());
                t.scaled(&minus_one, self.field)
            })
            .collect();
        Ok(Matrix::from_columns(self.rows, columns, self.field))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_examples() {
        let m = Matrix::from_i64_rows(&[vec![1, 0], vec![0, 1], vec![-1, 1]], q());
        assert_eq!(m.rank(), 2);
        assert_eq!(Matrix::zeros(3, 4, q()).rank(), 0);
        let col = Matrix::from_i64_rows(&[vec![-1], vec![-1], vec![1], vec![1]], q());
        assert_eq!(col.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let m = Matrix::from_i64_rows(&[vec![1, 1]], q());
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).unwrap().is_zero());
        assert_eq!(k.get(0, 0), q().from_i64(-1));
        assert_eq!(k.get(1, 0), q().from_i64(1));

        assert_eq!(Matrix::identity(4, q()).kernel_basis().cols(), 0);
        let col = Matrix::from_i64_rows(&[vec![-1], vec![1]], q());
        assert_eq!(col.kernel_basis().cols(), 0);
    }

    #[test]
    fn cokernel_examples() {
        let col = Matrix::from_i64_rows(&[vec![-1], vec![1]], q());
        assert_eq!(col.cokernel_dim(), 1);
        let col = Matrix::from_i64_rows(&[vec![-1], vec![-1], vec![1], vec![1]], q());
        assert_eq!(col.cokernel_dim(), 3);
        assert_eq!(Matrix::identity(5, q()).cokernel_dim(), 0);
    }

    #[test]
    fn solve_examples() {
        let f = q();
        let id = Matrix::identity(3, f);
        let b = SparseVec::from_entries(vec![(0, f.from_i64(2)), (2, f.from_i64(-7))], f);
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));

        let m = Matrix::from_i64_rows(&[vec![1, 1]], f);
        let b = SparseVec::unit(0, f);
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), b);
        // free column set to zero
        assert_eq!(x, SparseVec::unit(0, f));

        let z = Matrix::zeros(1, 1, f);
        assert_eq!(z.solve(&SparseVec::unit(0, f)).unwrap(), None);
        assert!(z.solve(&SparseVec::unit(3, f)).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = q();
        let m = Matrix::from_i64_rows(&[vec![2, 1, 0], vec![1, 1, 0], vec![0, 3, -1]], f);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
        let singular = Matrix::from_i64_rows(&[vec![1, 2], vec![2, 4]], f);
        assert!(matches!(
            singular.inverse(),
            Err(Error::NotInvertible { rank: 1, .. })
        ));
    }

    #[test]
    fn characteristic_two_rank_drop() {
        let m = Matrix::from_i64_rows(&[vec![1, 1], vec![1, -1]], Field::Rational);
        assert_eq!(m.rank(), 2);
        let m2 = Matrix::from_i64_rows(&[vec![1, 1], vec![1, -1]], Field::prime(2).unwrap());
        assert_eq!(m2.rank(), 1);
    }

    #[test]
    fn stacking_and_blocks() {
        let f = q();
        let a = Matrix::from_i64_rows(&[vec![1, 2]], f);
        let b = Matrix::from_i64_rows(&[vec![3, 4]], f);
        let v = a.vstack(&b).unwrap();
        assert_eq!(v, Matrix::from_i64_rows(&[vec![1, 2], vec![3, 4]], f));
        let h = a.hstack(&b).unwrap();
        assert_eq!(h, Matrix::from_i64_rows(&[vec![1, 2, 3, 4]], f));
        let mut z = Matrix::zeros(2, 3, f);
        z.add_block(1, 1, &b);
        assert_eq!(z, Matrix::from_i64_rows(&[vec![0, 0, 0], vec![0, 3, 4]], f));
    }
}
