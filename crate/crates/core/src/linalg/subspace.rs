use super::matrix::Matrix;
use super::scalar::{Field, Scalar};

/// A subspace of `k^n` kept in reduced row echelon form.
///
/// Two subspaces are equal exactly when their echelon bases are equal, so the derived
/// `PartialEq` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for i in 0..ambient {
            let mut v = vec![field.zero(); ambient];
            v[i] = field.one();
            s.insert(&v);
        }
        s
    }

    pub fn spanned_by<'a>(field: Field, ambient: usize, vectors: impl IntoIterator<Item = &'a Vec<Scalar>>) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn column_space(m: &Matrix) -> Subspace {
        Subspace::spanned_by(m.field(), m.rows(), &m.columns())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis vectors.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Remainder of `v` after clearing every pivot coordinate; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (k, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    let t = &f * x;
                    w[k] -= &t;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the span. Returns `true` when the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inverse();
        for x in w.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (k, x) in w.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    let t = &f * x;
                    row[k] -= &t;
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, w);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s
    }

    /// Matrix whose columns are the echelon basis.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_and_membership() {
        let f = Field::Rational;
        let v = |xs: &[i64]| xs.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let mut s = Subspace::zero(f, 3);
        assert!(s.insert(&v(&[1, 2, 3])));
        assert!(!s.insert(&v(&[2, 4, 6])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[1, 3, 4])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        let t = Subspace::spanned_by(f, 3, &[v(&[1, 3, 4]), v(&[1, 2, 3])]);
        assert_eq!(s, t);
    }
}
