use std::fmt;
use std::sync::Arc;

use super::field::{Fe, Field};
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field.
#[derive(Clone)]
pub struct Mat {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.field == other.field
            && self.data == other.data
    }
}
impl Eq for Mat {}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over F_{}^{}", self.rows, self.cols, self.field.characteristic(), self.field.degree())?;
        for r in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", &self.row(r)[..self.cols.min(16)])?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: &Arc<Field>, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Fe::ONE;
        }
        m
    }

    pub fn scalar(field: &Arc<Field>, n: usize, c: Fe) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    pub fn from_vec(field: &Arc<Field>, rows: usize, cols: usize, data: Vec<Fe>) -> Mat {
        assert_eq!(rows * cols, data.len());
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds from integer rows, reducing into the prime subfield.
    pub fn from_ints(field: &Arc<Field>, rows: &[Vec<i64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c);
                row.iter().map(|&v| field.from_int(v))
            })
            .collect();
        Mat::from_vec(field, r, c, data)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Fe] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// Re-expresses a matrix with prime-field entries over `target`, which
    /// must have the same characteristic.
    pub fn embed(&self, target: &Arc<Field>) -> Mat {
        assert_eq!(self.field.characteristic(), target.characteristic());
        if Arc::ptr_eq(&self.field, target) || *self.field == **target {
            return Mat { field: target.clone(), ..self.clone() };
        }
        assert_eq!(self.field.degree(), 1, "only prime-field matrices embed");
        Mat {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        }
    }

    fn check_same_field(&self, other: &Mat) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "matrices over different fields"
        );
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.check_same_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.check_same_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { data, ..self.clone() }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: Fe, other: &Mat) {
        self.check_same_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field.clone();
        f.axpy(&mut self.data, c, &other.data);
    }

    pub fn scale(&self, c: Fe) -> Mat {
        let mut out = self.clone();
        out.field.clone().scale(&mut out.data, c);
        out
    }

    pub fn neg(&self) -> Mat {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Mat { data, ..self.clone() }
    }

    /// Matrix product. Zero entries of the left factor are skipped; when the
    /// right factor is much sparser the product is formed transposed.
    pub fn mul(&self, other: &Mat) -> Mat {
        self.check_same_field(other);
        assert_eq!(self.cols, other.rows, "product dimension mismatch");
        let direct = self.nnz() * other.cols;
        let flipped = other.nnz() * self.rows + 2 * (self.data.len() + other.data.len());
        if 2 * flipped < direct {
            return other.transpose().mul_left_sparse(&self.transpose()).transpose();
        }
        self.mul_left_sparse(other)
    }

    fn mul_left_sparse(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(&self.field, self.rows, other.cols);
        let f = &self.field;
        let n = other.cols;
        for i in 0..self.rows {
            let (lo, hi) = (i * n, (i + 1) * n);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                f.axpy(&mut out.data[lo..hi], a, &other.data[k * n..(k + 1) * n]);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Kronecker product with `self` as the outer (slow) index.
    pub fn kron(&self, other: &Mat) -> Mat {
        self.check_same_field(other);
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = Mat::zeros(&self.field, r1 * r2, c1 * c2);
        let f = &self.field;
        for i in 0..r1 {
            for j in 0..c1 {
                let a = self.data[i * c1 + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    let dst = (i * r2 + k) * (c1 * c2) + j * c2;
                    let row = &other.data[k * c2..(k + 1) * c2];
                    f.axpy(&mut out.data[dst..dst + c2], a, row);
                }
            }
        }
        out
    }

    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let field = blocks[0].field.clone();
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(&field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn hstack(parts: &[&Mat]) -> Mat {
        let field = parts[0].field.clone();
        let rows = parts[0].rows;
        let cols = parts.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(&field, rows, cols);
        let mut c0 = 0;
        for b in parts {
            assert_eq!(b.rows, rows);
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Mat]) -> Mat {
        let field = parts[0].field.clone();
        let cols = parts[0].cols;
        let rows = parts.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in parts {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
        }
        Mat::from_vec(&field, rows, cols, data)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for r in 0..b.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(&self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(&self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(&self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.data[i * cols.len() + j] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// In-place Gauss-Jordan elimination to reduced row echelon form.
    /// With `full == false` only rows below each pivot are cleared (enough
    /// for rank). Returns pivot columns.
    fn eliminate(&mut self, full: bool, col_limit: usize) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..col_limit {
            if prow == self.rows {
                break;
            }
            let Some(sel) = (prow..self.rows).find(|&r| !self.data[r * cols + c].is_zero()) else {
                continue;
            };
            if sel != prow {
                for k in 0..cols {
                    self.data.swap(sel * cols + k, prow * cols + k);
                }
            }
            let inv = f.inv(self.data[prow * cols + c]).unwrap();
            f.scale(&mut self.data[prow * cols + c..(prow + 1) * cols], inv);
            let (head, tail) = self.data.split_at_mut(prow * cols);
            let (pivot_row, below) = tail.split_at_mut(cols);
            let pivot_part = &pivot_row[c..];
            for r in 0..(below.len() / cols) {
                let a = below[r * cols + c];
                if !a.is_zero() {
                    f.axpy(&mut below[r * cols + c..(r + 1) * cols], f.neg(a), pivot_part);
                }
            }
            if full {
                for r in 0..prow {
                    let a = head[r * cols + c];
                    if !a.is_zero() {
                        f.axpy(&mut head[r * cols + c..(r + 1) * cols], f.neg(a), pivot_part);
                    }
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminate along the shorter side.
        let mut m = if self.rows > self.cols { self.transpose() } else { self.clone() };
        let limit = m.cols;
        m.eliminate(false, limit).len()
    }

    /// Rank of a square matrix, computed per connected block of its
    /// nonzero pattern. Much cheaper when the matrix is block diagonal up to
    /// a simultaneous permutation of rows and columns.
    pub fn rank_blockwise(&self) -> usize {
        self.block_components()
            .iter()
            .map(|comp| {
                if comp.len() == self.rows {
                    self.rank()
                } else {
                    self.select(comp, comp).rank()
                }
            })
            .sum()
    }

    /// Connected components of the graph on indices joined by nonzero
    /// entries of a square matrix, each sorted; components ordered by their
    /// least index.
    pub fn block_components(&self) -> Vec<Vec<usize>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for r in 0..n {
            for c in 0..n {
                if !self.data[r * n + c].is_zero() {
                    let (a, b) = (find(&mut parent, r), find(&mut parent, c));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut comps: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let root = find(&mut parent, i);
            comps.entry(root).or_default().push(i);
        }
        comps.into_values().collect()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let limit = m.cols;
        let piv = m.eliminate(true, limit);
        (m, piv)
    }

    /// Columns spanning the right kernel (`cols x nullity`).
    pub fn kernel_basis(&self) -> Mat {
        let (r, piv) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &piv {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut k = Mat::zeros(&self.field, n, free.len());
        let f = &self.field;
        for (j, &fc) in free.iter().enumerate() {
            k[(fc, j)] = Fe::ONE;
            for (i, &pc) in piv.iter().enumerate() {
                k[(pc, j)] = f.neg(r[(i, fc)]);
            }
        }
        k
    }

    /// Basis of the column space, as the columns of a `rows x rank` matrix
    /// in reduced form.
    pub fn column_space(&self) -> Mat {
        let (r, piv) = self.transpose().rref();
        r.block(0, 0, piv.len(), r.cols).transpose()
    }

    /// Some `x` with `self * x = b`.
    pub fn solve(&self, b: &Mat) -> Result<Mat> {
        self.check_same_field(b);
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows vs {} rows",
                self.rows, b.rows
            )));
        }
        let aug = Mat::hstack(&[self, b]);
        let mut m = aug;
        let piv = m.eliminate(true, self.cols);
        let rank = piv.len();
        for r in rank..m.rows {
            if m.row(r)[self.cols..].iter().any(|x| !x.is_zero()) {
                return Err(Error::NoSolution);
            }
        }
        let mut x = Mat::zeros(&self.field, self.cols, b.cols);
        for (i, &pc) in piv.iter().enumerate() {
            x.row_mut(pc).copy_from_slice(&m.row(i)[self.cols..]);
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = Mat::hstack(&[self, &Mat::identity(&self.field, n)]);
        let piv = m.eliminate(true, n);
        if piv.len() < n {
            return Err(Error::Singular);
        }
        Ok(m.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Row-major entries as integers (codes).
    pub fn to_codes(&self) -> Vec<u32> {
        self.data.iter().map(|x| x.0).collect()
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Fe;
    fn index(&self, (r, c): (usize, usize)) -> &Fe {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Fe {
        assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Arc<Field> {
        Arc::new(Field::prime(5))
    }

    #[test]
    fn rank_of_identity_and_zero() {
        let f = f5();
        for d in [1, 3, 7] {
            assert_eq!(Mat::identity(&f, d).rank(), d);
            assert_eq!(Mat::zeros(&f, d, d).rank(), 0);
        }
    }

    #[test]
    fn dependent_rows_over_f5() {
        let f = f5();
        let m = Mat::from_ints(&f, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn inverse_and_singular() {
        let f = f5();
        let m = Mat::from_ints(&f, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(&f, 2));
        let s = Mat::from_ints(&f, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = f5();
        let a = Mat::from_ints(&f, &[vec![1, 2], vec![2, 4]]);
        let b = Mat::from_ints(&f, &[vec![3], vec![1]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let bad = Mat::from_ints(&f, &[vec![3], vec![2]]);
        assert_eq!(a.solve(&bad), Err(Error::NoSolution));
    }

    #[test]
    fn blockwise_rank_matches_plain_rank() {
        let f = f5();
        let a = Mat::from_ints(&f, &[vec![1, 2], vec![2, 4]]);
        let b = Mat::from_ints(&f, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let d = Mat::block_diag(&[&a, &b, &a]);
        // Conjugate by a permutation so the blocks interleave.
        let n = d.rows();
        let perm: Vec<usize> = (0..n).map(|i| (i * 3) % n).collect();
        let pd = d.select(&perm, &perm);
        assert_eq!(pd.block_components().len(), 3);
        assert_eq!(pd.rank_blockwise(), 4);
        assert_eq!(pd.rank(), 4);
    }
}
