//! Finite-dimensional unital associative algebras, bimodules and homomorphisms.

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// An algebra given by structure constants `e_i e_j = sum_k c_{ij}^k e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    /// Column `i * dim + j` holds `e_i e_j`.
    mult: Matrix,
    unit: Vec<Scalar>,
}

fn basis_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

fn check_vector(field: Field, context: &str, len: usize, v: &[Scalar]) -> Result<()> {
    if v.len() != len {
        return Err(Error::dim(context, len, v.len()));
    }
    if let Some(x) = v.iter().find(|x| x.field() != field) {
        return Err(Error::FieldMismatch { left: field, right: x.field() });
    }
    Ok(())
}

impl Algebra {
    /// Builds and validates an algebra. `products[i * dim + j]` is the coordinate vector of `e_i e_j`.
    pub fn new(field: Field, labels: Vec<String>, products: Vec<Vec<Scalar>>, unit: Vec<Scalar>) -> Result<Algebra> {
        let n = labels.len();
        if products.len() != n * n {
            return Err(Error::dim("structure constant table", n * n, products.len()));
        }
        for p in &products {
            check_vector(field, "product vector", n, p)?;
        }
        check_vector(field, "unit", n, &unit)?;
        let alg = Algebra { field, labels, mult: Matrix::from_columns(field, n, &products), unit };
        alg.validate()?;
        Ok(alg)
    }

    /// Like [`Algebra::new`] but solves for the unit, failing with [`Error::UnitLaw`] if there is none.
    pub fn with_solved_unit(field: Field, labels: Vec<String>, products: Vec<Vec<Scalar>>) -> Result<Algebra> {
        let n = labels.len();
        if products.len() != n * n {
            return Err(Error::dim("structure constant table", n * n, products.len()));
        }
        for p in &products {
            check_vector(field, "product vector", n, p)?;
        }
        let mult = Matrix::from_columns(field, n, &products);
        // u e_j = e_j and e_j u = e_j for all j, linear in u.
        let mut system = Matrix::zeros(field, 2 * n * n, n);
        let mut rhs = vec![field.zero(); 2 * n * n];
        for j in 0..n {
            for k in 0..n {
                for u in 0..n {
                    system[(j * n + k, u)] = mult[(k, u * n + j)].clone();
                    system[(n * n + j * n + k, u)] = mult[(k, j * n + u)].clone();
                }
                if j == k {
                    rhs[j * n + k] = field.one();
                    rhs[n * n + j * n + k] = field.one();
                }
            }
        }
        let unit = system.solve(&rhs).ok_or(Error::UnitLaw { index: 0 })?;
        let alg = Algebra { field, labels, mult, unit };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        let lefts: Vec<Matrix> = (0..n).map(|i| self.left_basis(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j);
                let l_ij = self.left_mult(&ij);
                let l_i_l_j = lefts[i].mul(&lefts[j]);
                if l_ij != l_i_l_j {
                    let k = (0..n).find(|&k| l_ij.column(k) != l_i_l_j.column(k)).unwrap_or(0);
                    return Err(Error::NonAssociative { i, j, k });
                }
            }
        }
        for i in 0..n {
            let e = basis_vector(self.field, n, i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::UnitLaw { index: i });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// The `dim x dim^2` matrix of the multiplication map `A (x) A -> A`.
    pub fn mult_matrix(&self) -> &Matrix {
        &self.mult
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        basis_vector(self.field, self.dim(), i)
    }

    /// Coordinates of `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.mult.column(i * self.dim() + j)
    }

    /// Product table in the layout accepted by [`Algebra::new`].
    pub fn products(&self) -> Vec<Vec<Scalar>> {
        self.mult.columns()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.left_mult(x).mul_vec(y)
    }

    /// Matrix of `y -> e_i y`.
    pub fn left_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(self.field, n, n, |k, j| self.mult[(k, i * n + j)].clone())
    }

    /// Matrix of `y -> y e_i`.
    pub fn right_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(self.field, n, n, |k, j| self.mult[(k, j * n + i)].clone())
    }

    /// Matrix of `y -> x y`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.left_basis(i).scale(c));
            }
        }
        m
    }

    /// Matrix of `y -> y x`.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.right_basis(i).scale(c));
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.mult.column(i * n + j) == self.mult.column(j * n + i)))
    }

    pub fn opposite(&self) -> Algebra {
        let n = self.dim();
        let products = (0..n * n).map(|c| self.mult.column((c % n) * n + c / n)).collect::<Vec<_>>();
        Algebra { field: self.field, labels: self.labels.clone(), mult: Matrix::from_columns(self.field, n, &products), unit: self.unit.clone() }
    }

    /// `A (x) B` with basis `a_i (x) b_j` at index `i * dim(B) + j`.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field, right: other.field });
        }
        let (n, m) = (self.dim(), other.dim());
        let mut labels = Vec::with_capacity(n * m);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}*{b}"));
            }
        }
        let mut products = Vec::with_capacity(n * n * m * m);
        for i in 0..n {
            for j in 0..m {
                for k in 0..n {
                    for l in 0..m {
                        products.push(kron_vec(&self.product(i, k), &other.product(j, l)));
                    }
                }
            }
        }
        let unit = kron_vec(&self.unit, &other.unit);
        Algebra::new(self.field, labels, products, unit)
    }

    /// The enveloping algebra `A (x) A^o`.
    pub fn enveloping(&self) -> Algebra {
        self.tensor(&self.opposite()).expect("same field")
    }

    /// Direct product `A x B` with the basis of `A` first.
    pub fn direct_product(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field, right: other.field });
        }
        let (n, m) = (self.dim(), other.dim());
        let d = n + m;
        let mut products = vec![vec![self.field.zero(); d]; d * d];
        for i in 0..n {
            for j in 0..n {
                products[i * d + j][..n].clone_from_slice(&self.product(i, j));
            }
        }
        for i in 0..m {
            for j in 0..m {
                products[(n + i) * d + n + j][n..].clone_from_slice(&other.product(i, j));
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| format!("{l}'")));
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        Algebra::new(self.field, labels, products, unit)
    }

    /// The same algebra in the basis `f_i = sum_k p[k][i] e_k`. Fails unless `p` is invertible.
    pub fn change_basis(&self, p: &Matrix) -> Result<Algebra> {
        let inv = p.inverse().ok_or_else(|| Error::Precondition("basis change is not invertible".into()))?;
        let n = self.dim();
        let cols = p.columns();
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                products.push(inv.mul_vec(&self.mul(&cols[i], &cols[j])));
            }
        }
        Algebra::new(self.field, self.labels.clone(), products, inv.mul_vec(&self.unit))
    }

    pub fn ground(field: Field) -> Algebra {
        Algebra::new(field, vec!["1".into()], vec![vec![field.one()]], vec![field.one()]).expect("valid")
    }

    /// `k[x]/(x^n)` with basis `1, x, ..., x^{n-1}`.
    pub fn truncated_poly(field: Field, n: usize) -> Algebra {
        assert!(n >= 1, "truncated polynomial ring needs n >= 1");
        let labels = (0..n).map(|i| if i == 0 { "1".to_string() } else { format!("x^{i}") }).collect();
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut v = vec![field.zero(); n];
                if i + j < n {
                    v[i + j] = field.one();
                }
                products.push(v);
            }
        }
        Algebra::new(field, labels, products, basis_vector(field, n, 0)).expect("valid")
    }

    /// The dual numbers `k[x]/(x^2)`.
    pub fn dual_numbers(field: Field) -> Algebra {
        Algebra::truncated_poly(field, 2)
    }

    /// Full matrix algebra with basis `E_{ij}` at index `i * n + j`.
    pub fn matrix(field: Field, n: usize) -> Algebra {
        let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        Algebra::matrix_subalgebra(field, n, &units)
    }

    /// Upper triangular `n x n` matrices with basis `E_{ij}`, `i <= j`, in row-major order.
    pub fn upper_triangular(field: Field, n: usize) -> Algebra {
        let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        Algebra::matrix_subalgebra(field, n, &units)
    }

    fn matrix_subalgebra(field: Field, n: usize, units: &[(usize, usize)]) -> Algebra {
        let d = units.len();
        let pos = |i: usize, j: usize| units.iter().position(|&u| u == (i, j));
        let labels = units.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
        let mut products = Vec::with_capacity(d * d);
        for &(a, b) in units {
            for &(c, e) in units {
                let mut v = vec![field.zero(); d];
                if b == c {
                    v[pos(a, e).expect("closed under products")] = field.one();
                }
                products.push(v);
            }
        }
        let mut unit = vec![field.zero(); d];
        for i in 0..n {
            unit[pos(i, i).expect("contains the diagonal")] = field.one();
        }
        Algebra::new(field, labels, products, unit).expect("valid")
    }

    /// `k^n` with orthogonal idempotent basis.
    pub fn diagonal(field: Field, n: usize) -> Algebra {
        let labels = (0..n).map(|i| format!("p{}", i + 1)).collect();
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut v = vec![field.zero(); n];
                if i == j {
                    v[i] = field.one();
                }
                products.push(v);
            }
        }
        Algebra::new(field, labels, products, vec![field.one(); n]).expect("valid")
    }

    /// `k[x_1, ..., x_r]/(x_1, ..., x_r)^2` with basis `1, x_1, ..., x_r`.
    pub fn square_zero(field: Field, r: usize) -> Algebra {
        let n = r + 1;
        let labels = (0..n).map(|i| if i == 0 { "1".to_string() } else { format!("x{i}") }).collect();
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut v = vec![field.zero(); n];
                if i == 0 {
                    v[j] = field.one();
                } else if j == 0 {
                    v[i] = field.one();
                }
                products.push(v);
            }
        }
        Algebra::new(field, labels, products, basis_vector(field, n, 0)).expect("valid")
    }
}

fn kron_vec(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            v.push(a * b);
        }
    }
    v
}

/// Checks that `m` (shape `dim(target) x dim(source)`) is a unital algebra homomorphism.
pub fn check_algebra_hom(source: &Algebra, target: &Algebra, m: &Matrix) -> Result<()> {
    if m.field() != source.field() || target.field() != source.field() {
        return Err(Error::FieldMismatch { left: source.field(), right: m.field() });
    }
    if m.rows() != target.dim() || m.cols() != source.dim() {
        return Err(Error::dim("homomorphism matrix", target.dim() * source.dim(), m.rows() * m.cols()));
    }
    let images = m.columns();
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            if m.mul_vec(&source.product(i, j)) != target.mul(&images[i], &images[j]) {
                return Err(Error::Invariant(format!("map is not multiplicative on basis pair ({i}, {j})")));
            }
        }
    }
    if m.mul_vec(source.unit()) != target.unit() {
        return Err(Error::Invariant("map does not preserve the unit".into()));
    }
    Ok(())
}

/// A validated unital homomorphism `source -> target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraHom {
    matrix: Matrix,
}

impl AlgebraHom {
    pub fn new(source: &Algebra, target: &Algebra, matrix: Matrix) -> Result<AlgebraHom> {
        check_algebra_hom(source, target, &matrix)?;
        Ok(AlgebraHom { matrix })
    }

    pub fn identity(a: &Algebra) -> AlgebraHom {
        AlgebraHom { matrix: Matrix::identity(a.field(), a.dim()) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `other` after `self`.
    pub fn then(&self, other: &AlgebraHom) -> AlgebraHom {
        AlgebraHom { matrix: other.matrix.mul(&self.matrix) }
    }
}

/// A bimodule over an algebra, stored as left and right action matrices of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    field: Field,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(a: &Algebra, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        let field = a.field();
        let n = a.dim();
        if left.len() != n || right.len() != n {
            return Err(Error::dim("action matrices", n, left.len().min(right.len())));
        }
        for m in left.iter().chain(&right) {
            if m.field() != field {
                return Err(Error::FieldMismatch { left: field, right: m.field() });
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::dim("action matrix", dim * dim, m.rows() * m.cols()));
            }
        }
        let b = Bimodule { field, dim, left, right };
        b.validate(a)?;
        Ok(b)
    }

    fn validate(&self, a: &Algebra) -> Result<()> {
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = a.product(i, j);
                if self.left[i].mul(&self.left[j]) != self.left_action(&ij) {
                    return Err(Error::Invariant(format!("left action is not multiplicative on ({i}, {j})")));
                }
                if self.right[i].mul(&self.right[j]) != self.right_action(&a.product(j, i)) {
                    return Err(Error::Invariant(format!("right action is not anti-multiplicative on ({i}, {j})")));
                }
                if self.left[i].mul(&self.right[j]) != self.right[j].mul(&self.left[i]) {
                    return Err(Error::Invariant(format!("left and right actions do not commute on ({i}, {j})")));
                }
            }
        }
        let id = Matrix::identity(self.field, self.dim);
        if self.left_action(a.unit()) != id || self.right_action(a.unit()) != id {
            return Err(Error::Invariant("unit does not act as the identity".into()));
        }
        Ok(())
    }

    pub fn regular(a: &Algebra) -> Bimodule {
        let n = a.dim();
        Bimodule {
            field: a.field(),
            dim: n,
            left: (0..n).map(|i| a.left_basis(i)).collect(),
            right: (0..n).map(|i| a.right_basis(i)).collect(),
        }
    }

    pub fn zero(a: &Algebra) -> Bimodule {
        let z = Matrix::zeros(a.field(), 0, 0);
        Bimodule { field: a.field(), dim: 0, left: vec![z.clone(); a.dim()], right: vec![z; a.dim()] }
    }

    /// The one-dimensional bimodule `k_{chi,psi}` where `a m = chi(a) m` and `m a = psi(a) m`.
    pub fn characters(a: &Algebra, chi: &[Scalar], psi: &[Scalar]) -> Result<Bimodule> {
        let f = a.field();
        let one = |x: &Scalar| Matrix::from_fn(f, 1, 1, |_, _| x.clone());
        if chi.len() != a.dim() || psi.len() != a.dim() {
            return Err(Error::dim("character", a.dim(), chi.len().min(psi.len())));
        }
        Bimodule::new(a, 1, chi.iter().map(one).collect(), psi.iter().map(one).collect())
    }

    /// The symmetric bimodule `k_chi`.
    pub fn character(a: &Algebra, chi: &[Scalar]) -> Result<Bimodule> {
        Bimodule::characters(a, chi, chi)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base_dim(&self) -> usize {
        self.left.len()
    }

    pub fn left(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    pub fn lefts(&self) -> &[Matrix] {
        &self.left
    }

    pub fn rights(&self) -> &[Matrix] {
        &self.right
    }

    /// Matrix of `m -> x m`.
    pub fn left_action(&self, x: &[Scalar]) -> Matrix {
        combine(self.field, self.dim, &self.left, x)
    }

    /// Matrix of `m -> m x`.
    pub fn right_action(&self, x: &[Scalar]) -> Matrix {
        combine(self.field, self.dim, &self.right, x)
    }

    pub fn is_symmetric(&self) -> bool {
        self.left == self.right
    }

    /// The bimodule over `source` obtained by restricting scalars along `hom: source -> base`.
    pub fn pullback(&self, hom: &Matrix) -> Bimodule {
        assert_eq!(hom.rows(), self.base_dim(), "pullback along a map into the wrong algebra");
        let cols = hom.columns();
        Bimodule {
            field: self.field,
            dim: self.dim,
            left: cols.iter().map(|c| self.left_action(c)).collect(),
            right: cols.iter().map(|c| self.right_action(c)).collect(),
        }
    }

    /// The same bimodule over `a` re-expressed after the basis change `p` of `a` (see
    /// [`Algebra::change_basis`]) and the basis change `q` of the module.
    pub fn change_basis(&self, p: &Matrix, q: &Matrix) -> Result<Bimodule> {
        let qi = q.inverse().ok_or_else(|| Error::Precondition("module basis change is not invertible".into()))?;
        let pulled = self.pullback(p);
        let conj = |m: &Matrix| qi.mul(m).mul(q);
        Ok(Bimodule {
            field: self.field,
            dim: self.dim,
            left: pulled.left.iter().map(conj).collect(),
            right: pulled.right.iter().map(conj).collect(),
        })
    }

    /// Checks the bimodule axioms against `a`.
    pub fn check(&self, a: &Algebra) -> Result<()> {
        if self.base_dim() != a.dim() {
            return Err(Error::dim("bimodule base", a.dim(), self.base_dim()));
        }
        self.validate(a)
    }
}

fn combine(field: Field, dim: usize, mats: &[Matrix], x: &[Scalar]) -> Matrix {
    let mut m = Matrix::zeros(field, dim, dim);
    for (c, a) in x.iter().zip(mats) {
        if !c.is_zero() {
            m = m.add(&a.scale(c));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn opposite_of_commutative_is_identical() {
        let a = Algebra::truncated_poly(Q, 3);
        assert_eq!(a.opposite(), a);
        let t = Algebra::upper_triangular(Q, 2);
        assert_eq!(t.opposite().opposite(), t);
        assert_ne!(t.opposite(), t);
    }

    #[test]
    fn triangular_opposite_is_lower_triangular() {
        // e11, e12, e22 in the opposite multiply like e11, e21, e22 of lower triangular matrices
        let t = Algebra::upper_triangular(Q, 2).opposite();
        let lower_products = {
            // basis l0 = e11, l1 = e21, l2 = e22 ; e21 e11 = e21, e22 e21 = e21
            let mut p = vec![vec![Q.zero(); 3]; 9];
            p[0][0] = Q.one();
            p[8][2] = Q.one();
            p[3][1] = Q.one();
            p[2 * 3 + 1][1] = Q.one();
            p
        };
        let lower = Algebra::new(Q, vec!["e11".into(), "e21".into(), "e22".into()], lower_products, vec![Q.one(), Q.zero(), Q.one()]).unwrap();
        assert_eq!(t.products(), lower.products());
    }

    #[test]
    fn tensor_dimensions_and_units() {
        let k = Algebra::ground(Q);
        let l = Algebra::dual_numbers(Q);
        assert_eq!(k.tensor(&l).unwrap().products(), l.products());
        let e = l.enveloping();
        assert_eq!(e.dim(), 4);
        assert!(e.is_commutative());
        let t = Algebra::upper_triangular(Q, 2);
        assert_eq!(t.tensor(&l).unwrap().dim(), 6);
        assert!(k.tensor(&Algebra::ground(Field::Prime(3))).is_err());
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let l = Algebra::dual_numbers(Q);
        let mut p = l.products();
        p[3] = vec![Q.zero(), Q.one()]; // x * x = x
        assert!(Algebra::new(Q, l.labels().to_vec(), p, l.unit().to_vec()).is_ok());
        let t = Algebra::upper_triangular(Q, 2);
        let mut p = t.products();
        p[4] = vec![Q.one(), Q.zero(), Q.zero()]; // e12 e12 = e11
        assert!(matches!(Algebra::new(Q, t.labels().to_vec(), p, t.unit().to_vec()), Err(Error::NonAssociative { .. })));
    }

    #[test]
    fn regular_bimodules() {
        let k = Algebra::ground(Q);
        let r = Bimodule::regular(&k);
        assert!(r.left(0).is_identity() && r.right(0).is_identity());
        let l = Algebra::dual_numbers(Q);
        let r = Bimodule::regular(&l);
        assert_eq!(r.left(1), r.right(1));
        assert_eq!(r.left(1).rank(), 1);
        assert!(r.is_symmetric());
        let t = Algebra::upper_triangular(Q, 2);
        let r = Bimodule::regular(&t);
        assert!(!r.is_symmetric());
        r.check(&t).unwrap();
        assert!(Bimodule::zero(&t).is_symmetric());
    }

    #[test]
    fn unit_is_solved() {
        let m = Algebra::matrix(Q, 2);
        let solved = Algebra::with_solved_unit(Q, m.labels().to_vec(), m.products()).unwrap();
        assert_eq!(solved.unit(), m.unit());
    }

    #[test]
    fn homomorphisms_are_checked() {
        let l = Algebra::dual_numbers(Q);
        let k = Algebra::ground(Q);
        let aug = Matrix::from_rows(Q, 2, vec![vec![Q.one(), Q.zero()]]).unwrap();
        AlgebraHom::new(&l, &k, aug).unwrap();
        let bad = Matrix::from_rows(Q, 2, vec![vec![Q.one(), Q.one()]]).unwrap();
        assert!(AlgebraHom::new(&l, &k, bad).is_err());
    }
}
