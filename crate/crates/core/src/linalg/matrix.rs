//! Dense matrices over an exact field.

use std::fmt;

use crate::error::{Error, Result};

use super::scalar::{Field, Scalar};

/// A dense row-major matrix. Vectors are plain `Vec<Scalar>` in column convention,
/// so a matrix of shape `rows x cols` maps `k^cols -> k^rows`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "\n  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from row vectors, checking the field of every entry and the row lengths.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::dim("matrix row", cols, row.len()));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch { left: field, right: x.field() });
                }
                data.push(x);
            }
        }
        Ok(Matrix { field, rows: nrows, cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| if r == c { self[(r, c)].is_one() } else { self[(r, c)].is_zero() }))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field, right: other.field });
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::dim("matrix product", self.cols, other.rows));
        }
        Ok(self.mul(other))
    }

    /// Matrix product. Panics on shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other.data[k * other.cols + c];
                    if !b.is_zero() {
                        let prod = a * b;
                        out.data[r * other.cols + c] += &prod;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let mut out = vec![self.field.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, slot) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    *slot += &(a * x);
                }
            }
        }
        out
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::dim("matrix sum", self.rows * self.cols, other.rows * other.cols));
        }
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Kronecker product `self ⊗ other`, indexed so that row `(i, k)` is `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`, adding to existing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of bounds");
        for r in 0..block.rows {
            for c in 0..block.cols {
                let b = &block[(r, c)];
                if !b.is_zero() {
                    self[(r0 + r, c0 + c)] += b;
                }
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for m in parts {
            out.add_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r0 = 0;
        for m in parts {
            out.add_block(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = eliminate(&mut rows, self.cols, true);
        let data = rows.into_iter().flatten().collect();
        (Matrix { field: self.field, rows: self.rows, cols: self.cols, data }, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        eliminate(&mut rows, self.cols, false).len()
    }

    /// A basis of the null space; its size is `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(k, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Columns of `self` at the pivot positions: a basis of the image drawn from the columns themselves.
    pub fn image_basis(&self) -> Vec<Vec<Scalar>> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|c| self.column(c)).collect()
    }

    /// One solution of `self * x = b` (free variables set to zero), or `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = eliminate(&mut rows, self.cols + 1, true);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = rows[k][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { self.field.one() } else { self.field.zero() }));
                row
            })
            .collect();
        let pivots = eliminate(&mut rows, 2 * n, true);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let data = rows.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Some(Matrix { field: self.field, rows: n, cols: n, data })
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut rows = self.to_rows();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                rows.swap(p, c);
                det = -det;
            }
            det = &det * &rows[c][c];
            let inv = rows[c][c].inverse();
            for r in c + 1..n {
                if rows[r][c].is_zero() {
                    continue;
                }
                let f = &rows[r][c] * &inv;
                for k in c..n {
                    let t = &f * &rows[c][k];
                    rows[r][k] -= &t;
                }
            }
        }
        det
    }
}

/// Gauss-Jordan elimination in place. With `full` the result is reduced (zeros above pivots);
/// otherwise only row echelon form is produced. Returns the pivot columns in order.
pub(crate) fn eliminate(rows: &mut [Vec<Scalar>], ncols: usize, full: bool) -> Vec<usize> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // prefer the lightest nonzero entry to limit coefficient growth
        let mut best: Option<(usize, u64)> = None;
        for (i, row) in rows.iter().enumerate().skip(r) {
            if !row[c].is_zero() {
                let h = row[c].height();
                if best.map_or(true, |(_, bh)| h < bh) {
                    best = Some((i, h));
                    if h <= 2 {
                        break;
                    }
                }
            }
        }
        let Some((p, _)) = best else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inverse();
        let support: Vec<usize> = (c..ncols).filter(|&k| !rows[r][k].is_zero()).collect();
        if !inv.is_one() {
            for &k in &support {
                rows[r][k] = &rows[r][k] * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        let start = if full { 0 } else { r + 1 };
        for (i, row) in rows.iter_mut().enumerate().skip(start) {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &k in &support {
                let t = &f * &pivot_row[k];
                row[k] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        let f = Field::Rational;
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(f, cols, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let f = Field::Rational;
        assert_eq!(Matrix::zeros(f, 2, 2).kernel_basis().len(), 2);
        assert!(Matrix::identity(f, 3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let m = q(&[&[1, 1], &[2, 2]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let f = Field::Rational;
        // proportional to (1, -1)
        assert_eq!(&k[0][0] + &k[0][1], f.zero());
        assert!(!k[0][0].is_zero());
        assert!(m.mul_vec(&k[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_inverse_determinant() {
        let m = q(&[&[2, 1], &[1, 1]]);
        let f = Field::Rational;
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.determinant(), f.one());
        let x = m.solve(&[f.from_i64(3), f.from_i64(2)]).unwrap();
        assert_eq!(x, vec![f.one(), f.one()]);
        let singular = q(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[f.one(), f.zero()]).is_none());
        assert_eq!(singular.determinant(), f.zero());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = q(&[&[1, 2]]);
        let b = q(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert_eq!(k, q(&[&[0, 1, 0, 2], &[1, 0, 2, 0]]));
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = Matrix::identity(Field::Rational, 2);
        let b = Matrix::identity(Field::Prime(5), 2);
        assert!(matches!(a.checked_mul(&b), Err(Error::FieldMismatch { .. })));
    }
}
