//! Cochain complexes, double complexes and their cohomology.

use crate::error::{Error, Result};

use super::matrix::Matrix;
use super::scalar::{sign, Field, Scalar};
use super::subspace::Subspace;

/// A bounded cochain complex `C^lo -> ... -> C^hi`. The differential leaving `C^hi`
/// and everything outside `[lo, hi]` is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    field: Field,
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[k]` is `d^{lo+k}: C^{lo+k} -> C^{lo+k+1}`.
    diffs: Vec<Matrix>,
}

impl CochainComplex {
    pub fn new(field: Field, lo: i64, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<CochainComplex> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::dim("number of differentials", dims.len().saturating_sub(1), diffs.len()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.field() != field {
                return Err(Error::FieldMismatch { left: field, right: d.field() });
            }
            if d.cols() != dims[k] || d.rows() != dims[k + 1] {
                return Err(Error::dim(format!("differential d^{}", lo + k as i64), dims[k] * dims[k + 1], d.rows() * d.cols()));
            }
        }
        Ok(CochainComplex { field, lo, dims, diffs })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d^n`, a zero map when `n` lies at or beyond the top or outside the range.
    pub fn differential(&self, n: i64) -> Matrix {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.field, self.dim(n + 1), self.dim(n))
        }
    }

    pub fn differential_ref(&self, n: i64) -> Option<&Matrix> {
        if n >= self.lo && n < self.hi() {
            Some(&self.diffs[(n - self.lo) as usize])
        } else {
            None
        }
    }

    /// First degree `n` with `d^{n+1} d^n != 0`, if any.
    pub fn d_squared_defect(&self) -> Option<i64> {
        self.diffs.windows(2).position(|w| !w[1].mul(&w[0]).is_zero()).map(|k| self.lo + k as i64)
    }

    pub fn is_complex(&self) -> bool {
        self.d_squared_defect().is_none()
    }

    pub fn cohomology(&self, n: i64) -> Result<Cohomology> {
        let outside = n < self.lo || n > self.hi();
        if outside {
            let adjacent = (n == self.lo - 1 && self.dim(self.lo) > 0) || (n == self.hi() + 1 && self.dim(self.hi()) > 0);
            if adjacent {
                return Err(Error::DegreeOutOfRange { degree: n });
            }
        }
        Ok(Cohomology::compute(self.field, n, self.differential(n - 1), self.differential(n)))
    }

    /// Cohomology dimensions for every degree in range.
    pub fn betti(&self) -> Vec<usize> {
        (self.lo..=self.hi()).map(|n| self.cohomology(n).expect("in range").dim).collect()
    }
}

/// `H^n = ker d^n / im d^{n-1}` with representatives and a class map.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i64,
    pub dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    /// Cocycles whose classes form a basis of `H^n`.
    pub representatives: Vec<Vec<Scalar>>,
    outgoing: Matrix,
    /// Columns: representatives followed by a basis of the coboundaries.
    classifier: Matrix,
    coboundaries: Subspace,
}

impl Cohomology {
    pub fn compute(field: Field, degree: i64, incoming: Matrix, outgoing: Matrix) -> Cohomology {
        let space = outgoing.cols();
        debug_assert_eq!(incoming.rows(), space);
        let coboundaries = Subspace::column_space(&incoming);
        let cocycles = outgoing.kernel_basis();
        let mut span = coboundaries.clone();
        let representatives: Vec<Vec<Scalar>> = cocycles.iter().filter(|z| span.insert(z)).cloned().collect();
        let mut cols = representatives.clone();
        cols.extend(coboundaries.basis().iter().cloned());
        let classifier = Matrix::from_columns(field, space, &cols);
        Cohomology {
            degree,
            dim: representatives.len(),
            cocycle_dim: cocycles.len(),
            coboundary_dim: coboundaries.dim(),
            representatives,
            outgoing,
            classifier,
            coboundaries,
        }
    }

    pub fn space_dim(&self) -> usize {
        self.outgoing.cols()
    }

    pub fn is_cocycle(&self, v: &[Scalar]) -> bool {
        self.outgoing.mul_vec(v).iter().all(Scalar::is_zero)
    }

    pub fn is_coboundary(&self, v: &[Scalar]) -> bool {
        self.coboundaries.contains(v)
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    /// Coordinates of the class of `v` in the representative basis; `None` unless `v` is a cocycle.
    pub fn class_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.is_cocycle(v) {
            return None;
        }
        let x = self.classifier.solve(v).expect("cocycles are spanned by representatives and coboundaries");
        Some(x[..self.dim].to_vec())
    }

    /// Matrix (in representative coordinates) of the map on cohomology induced by a cochain map `f`
    /// from this complex into the complex whose cohomology is `target`.
    pub fn induced_map(&self, f: &Matrix, target: &Cohomology) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self
            .representatives
            .iter()
            .map(|z| target.class_of(&f.mul_vec(z)).expect("cochain maps send cocycles to cocycles"))
            .collect();
        Matrix::from_columns(f.field(), target.dim, &cols)
    }
}

/// A first-quadrant double complex on the rectangle `0..=pmax x 0..=qmax` with commuting
/// differentials `d_h: (p, q) -> (p+1, q)` and `d_v: (p, q) -> (p, q+1)`.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    field: Field,
    dims: Vec<Vec<usize>>,
    horizontal: Vec<Vec<Matrix>>,
    vertical: Vec<Vec<Matrix>>,
}

/// Position of a bidegree block inside a total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub p: usize,
    pub q: usize,
    pub offset: usize,
    pub dim: usize,
}

/// A totalized double complex together with the block layout of each degree.
#[derive(Clone, Debug)]
pub struct Totalization {
    pub complex: CochainComplex,
    /// `layout[n]` lists the blocks of total degree `n` in order.
    pub layout: Vec<Vec<Block>>,
}

impl Totalization {
    pub fn block(&self, n: usize, p: usize, q: usize) -> Option<Block> {
        self.layout.get(n)?.iter().copied().find(|b| b.p == p && b.q == q)
    }

    /// Matrix sending degree-`n` coordinates of `self` to those of `other` by matching blocks;
    /// blocks absent from `other` are dropped, blocks absent from `self` stay zero.
    pub fn transfer(&self, other: &Totalization, n: usize) -> Matrix {
        let field = self.complex.field();
        let mut m = Matrix::zeros(field, other.complex.dim(n as i64), self.complex.dim(n as i64));
        for b in &self.layout[n] {
            if let Some(t) = other.block(n, b.p, b.q) {
                for i in 0..b.dim {
                    m[(t.offset + i, b.offset + i)] = field.one();
                }
            }
        }
        m
    }
}

impl DoubleComplex {
    /// `horizontal[p][q]` for `p < pmax`, `vertical[p][q]` for `q < qmax`.
    pub fn new(field: Field, dims: Vec<Vec<usize>>, horizontal: Vec<Vec<Matrix>>, vertical: Vec<Vec<Matrix>>) -> Result<DoubleComplex> {
        let np = dims.len();
        let nq = dims.first().map_or(0, Vec::len);
        if np == 0 || nq == 0 || dims.iter().any(|row| row.len() != nq) {
            return Err(Error::Invariant("double complex needs a nonempty rectangle of dimensions".into()));
        }
        if horizontal.len() != np - 1 || vertical.len() != np {
            return Err(Error::dim("double complex columns", np, vertical.len()));
        }
        for p in 0..np {
            for q in 0..nq {
                if p + 1 < np {
                    let h = &horizontal[p][q];
                    if h.cols() != dims[p][q] || h.rows() != dims[p + 1][q] {
                        return Err(Error::dim(format!("d_h at ({p},{q})"), dims[p + 1][q] * dims[p][q], h.rows() * h.cols()));
                    }
                }
                if q + 1 < nq {
                    let v = &vertical[p][q];
                    if v.cols() != dims[p][q] || v.rows() != dims[p][q + 1] {
                        return Err(Error::dim(format!("d_v at ({p},{q})"), dims[p][q + 1] * dims[p][q], v.rows() * v.cols()));
                    }
                }
            }
            if vertical[p].len() != nq - 1 || (p + 1 < np && horizontal[p].len() != nq) {
                return Err(Error::dim("double complex rows", nq, vertical[p].len() + 1));
            }
        }
        Ok(DoubleComplex { field, dims, horizontal, vertical })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn pmax(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn qmax(&self) -> usize {
        self.dims[0].len() - 1
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims[p][q]
    }

    pub fn horizontal(&self, p: usize, q: usize) -> &Matrix {
        &self.horizontal[p][q]
    }

    pub fn vertical(&self, p: usize, q: usize) -> &Matrix {
        &self.vertical[p][q]
    }

    /// Checks `d_h^2 = 0`, `d_v^2 = 0` and `d_h d_v = d_v d_h`, naming the first failure.
    pub fn check(&self) -> std::result::Result<(), String> {
        let (pm, qm) = (self.pmax(), self.qmax());
        for p in 0..=pm {
            for q in 0..=qm {
                if p + 2 <= pm && !self.horizontal[p + 1][q].mul(&self.horizontal[p][q]).is_zero() {
                    return Err(format!("d_h^2 != 0 at ({p},{q})"));
                }
                if q + 2 <= qm && !self.vertical[p][q + 1].mul(&self.vertical[p][q]).is_zero() {
                    return Err(format!("d_v^2 != 0 at ({p},{q})"));
                }
                if p < pm && q < qm {
                    let hv = self.horizontal[p][q + 1].mul(&self.vertical[p][q]);
                    let vh = self.vertical[p + 1][q].mul(&self.horizontal[p][q]);
                    if hv != vh {
                        return Err(format!("d_h d_v != d_v d_h at ({p},{q})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Total complex with differential `d_h + (-1)^p d_v` on the `(p, q)` summand.
    pub fn totalize(&self) -> Totalization {
        self.totalize_where(|_, _| true)
    }

    /// Totalization of the blocks selected by `keep`. The selection must be a subcomplex or a
    /// quotient complex (for instance all rows `q >= 1`, or row `0` alone); components of the
    /// differential that leave the selection are dropped.
    pub fn totalize_where(&self, keep: impl Fn(usize, usize) -> bool) -> Totalization {
        let (pm, qm) = (self.pmax(), self.qmax());
        let top = pm + qm;
        let mut layout: Vec<Vec<Block>> = vec![Vec::new(); top + 1];
        for (n, blocks) in layout.iter_mut().enumerate() {
            let mut offset = 0;
            for p in 0..=pm.min(n) {
                let q = n - p;
                if q > qm || !keep(p, q) {
                    continue;
                }
                let dim = self.dims[p][q];
                blocks.push(Block { p, q, offset, dim });
                offset += dim;
            }
        }
        let dims: Vec<usize> = layout.iter().map(|bs| bs.iter().map(|b| b.dim).sum()).collect();
        let mut diffs = Vec::with_capacity(top);
        for n in 0..top {
            let mut d = Matrix::zeros(self.field, dims[n + 1], dims[n]);
            for b in &layout[n] {
                if b.p < pm {
                    if let Some(t) = layout[n + 1].iter().find(|t| t.p == b.p + 1 && t.q == b.q) {
                        d.add_block(t.offset, b.offset, &self.horizontal[b.p][b.q]);
                    }
                }
                if b.q < qm {
                    if let Some(t) = layout[n + 1].iter().find(|t| t.p == b.p && t.q == b.q + 1) {
                        let v = self.vertical[b.p][b.q].scale(&sign(self.field, b.p));
                        d.add_block(t.offset, b.offset, &v);
                    }
                }
            }
            diffs.push(d);
        }
        let complex = CochainComplex::new(self.field, 0, dims, diffs).expect("shapes agree by construction");
        Totalization { complex, layout }
    }
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
    fn single_space() {
        let c = CochainComplex::new(Field::Rational, 0, vec![1], vec![]).unwrap();
        assert_eq!(c.cohomology(0).unwrap().dim, 1);
    }

    #[test]
    fn acyclic_identity() {
        let f = Field::Rational;
        let c = CochainComplex::new(f, 0, vec![1, 1], vec![Matrix::identity(f, 1)]).unwrap();
        assert_eq!(c.betti(), vec![0, 0]);
    }

    #[test]
    fn difference_map() {
        // k^2 --[1,-1]--> k
        let c = CochainComplex::new(Field::Rational, 0, vec![2, 1], vec![q(&[&[1, -1]])]).unwrap();
        assert_eq!(c.cohomology(0).unwrap().dim, 1);
        assert_eq!(c.cohomology(1).unwrap().dim, 0);
    }

    #[test]
    fn out_of_range_degrees() {
        let c = CochainComplex::new(Field::Rational, 0, vec![2, 1], vec![q(&[&[1, -1]])]).unwrap();
        assert!(matches!(c.cohomology(2), Err(Error::DegreeOutOfRange { degree: 2 })));
        assert!(matches!(c.cohomology(-1), Err(Error::DegreeOutOfRange { .. })));
        assert_eq!(c.cohomology(5).unwrap().dim, 0);
    }

    #[test]
    fn class_coordinates() {
        // k --0--> k^2 --[1,1]--> k : H^1 is one-dimensional, spanned by (1,-1)
        let c = CochainComplex::new(Field::Rational, 0, vec![1, 2, 1], vec![q(&[&[0], &[0]]), q(&[&[1, 1]])]).unwrap();
        let h = c.cohomology(1).unwrap();
        assert_eq!(h.dim, 1);
        let f = Field::Rational;
        let v = vec![f.from_i64(2), f.from_i64(-2)];
        let coords = h.class_of(&v).unwrap();
        assert_eq!(&h.representatives[0][0] * &coords[0], f.from_i64(2));
        assert!(h.class_of(&[f.one(), f.zero()]).is_none());
    }

    #[test]
    fn single_entry_double_complex() {
        let f = Field::Rational;
        let dc = DoubleComplex::new(f, vec![vec![3]], vec![], vec![vec![]]).unwrap();
        let tot = dc.totalize();
        assert_eq!(tot.complex.dims(), &[3]);
        assert_eq!(tot.complex.betti(), vec![3]);
    }

    #[test]
    fn strip_totalization_matches_strip_cohomology() {
        // one row: C^{0,0} = k^2 --[1,1]--> C^{1,0} = k
        let f = Field::Rational;
        let dc = DoubleComplex::new(f, vec![vec![2], vec![1]], vec![vec![q(&[&[1, 1]])]], vec![vec![], vec![]]).unwrap();
        let tot = dc.totalize();
        let strip = CochainComplex::new(f, 0, vec![2, 1], vec![q(&[&[1, 1]])]).unwrap();
        assert_eq!(tot.complex.betti(), strip.betti());
    }
}
