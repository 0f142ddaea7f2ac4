//! Square-zero extensions `0 -> M -> B -> A -> 0` and their Hochschild 2-cocycles.

use crate::algebra::{check_algebra_hom, Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

use super::{cochain1_to_matrix, derivations, eval2, hochschild_differential};

/// An extension of `A` by `M` on the vector space `B = A (+) M`: coordinates `0..dim A` are the
/// `A` part, the rest the `M` part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDatum {
    algebra: Algebra,
    module: Bimodule,
    total: Algebra,
}

impl ExtensionDatum {
    /// Validates that `total` is an extension of `algebra` by `module`.
    pub fn new(algebra: Algebra, module: Bimodule, total: Algebra) -> Result<ExtensionDatum> {
        let (n, m) = (algebra.dim(), module.dim());
        if total.dim() != n + m {
            return Err(Error::dim("extension algebra", n + m, total.dim()));
        }
        module.check(&algebra)?;
        let projection = Matrix::from_fn(algebra.field(), n, n + m, |r, c| if r == c { algebra.field().one() } else { algebra.field().zero() });
        check_algebra_hom(&total, &algebra, &projection)
            .map_err(|e| Error::Invariant(format!("projection onto the algebra is not a homomorphism: {e}")))?;
        for i in 0..n {
            for c in 0..m {
                let lhs = total.product(i, n + c);
                let rhs = total.product(n + c, i);
                let want_l = module.left(i).column(c);
                let want_r = module.right(i).column(c);
                if lhs[n..] != want_l[..] || rhs[n..] != want_r[..] {
                    return Err(Error::Invariant(format!("induced action on the kernel differs from the bimodule at ({i}, {c})")));
                }
            }
        }
        for c in 0..m {
            for d in 0..m {
                if total.product(n + c, n + d).iter().any(|x| !x.is_zero()) {
                    return Err(Error::Invariant("kernel does not square to zero".into()));
                }
            }
        }
        Ok(ExtensionDatum { algebra, module, total })
    }

    /// The trivial extension with `(a, m)(a', m') = (aa', am' + ma')`.
    pub fn split(algebra: &Algebra, module: &Bimodule) -> ExtensionDatum {
        let z = vec![algebra.field().zero(); algebra.dim() * algebra.dim() * module.dim()];
        cocycle_to_extension(algebra, module, &z).expect("zero is a cocycle")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn total(&self) -> &Algebra {
        &self.total
    }

    /// The section `a -> (a, 0)`.
    pub fn canonical_section(&self) -> Matrix {
        let f = self.algebra.field();
        let n = self.algebra.dim();
        Matrix::from_fn(f, n + self.module.dim(), n, |r, c| if r == c { f.one() } else { f.zero() })
    }

    /// `Z_incl` for the canonical section.
    pub fn cocycle(&self) -> Vec<Scalar> {
        extension_to_cocycle(self, &self.canonical_section()).expect("canonical section")
    }
}

/// `Z_s(a, b) = s(ab) - s(a) s(b)`, which takes values in `M`.
pub fn extension_to_cocycle(e: &ExtensionDatum, s: &Matrix) -> Result<Vec<Scalar>> {
    let a = &e.algebra;
    let (n, m) = (a.dim(), e.module.dim());
    if s.rows() != n + m || s.cols() != n {
        return Err(Error::dim("section", (n + m) * n, s.rows() * s.cols()));
    }
    if !s.block(0, 0, n, n).is_identity() {
        return Err(Error::NotSection);
    }
    let images = s.columns();
    let mut z = Vec::with_capacity(n * n * m);
    for i in 0..n {
        for j in 0..n {
            let lhs = s.mul_vec(&a.product(i, j));
            let rhs = e.total.mul(&images[i], &images[j]);
            z.extend((n..n + m).map(|k| &lhs[k] - &rhs[k]));
        }
    }
    Ok(z)
}

/// The extension on `A (+) M` with `(a, m)(a', m') = (aa', am' + ma' - z(a, a'))`, so that the
/// canonical section recovers exactly `z`.
pub fn cocycle_to_extension(a: &Algebra, m: &Bimodule, z: &[Scalar]) -> Result<ExtensionDatum> {
    let f = a.field();
    let (n, md) = (a.dim(), m.dim());
    if z.len() != n * n * md {
        return Err(Error::dim("2-cochain", n * n * md, z.len()));
    }
    let dz = hochschild_differential(a, m, 2).mul_vec(z);
    if dz.iter().any(|x| !x.is_zero()) {
        return Err(Error::NotCocycle("Hochschild coboundary of the 2-cochain is nonzero".into()));
    }
    let d = n + md;
    let mut products = vec![vec![f.zero(); d]; d * d];
    for i in 0..n {
        for j in 0..n {
            let p = &mut products[i * d + j];
            p[..n].clone_from_slice(&a.product(i, j));
            for k in 0..md {
                p[n + k] = -&z[(i * n + j) * md + k];
            }
        }
        for c in 0..md {
            products[i * d + n + c][n..].clone_from_slice(&m.left(i).column(c));
            products[(n + c) * d + i][n..].clone_from_slice(&m.right(i).column(c));
        }
    }
    let mut unit = a.unit().to_vec();
    unit.extend(eval2(z, a.unit(), a.unit(), md));
    let mut labels = a.labels().to_vec();
    labels.extend((0..md).map(|c| format!("m{c}")));
    let total = Algebra::new(f, labels, products, unit)?;
    ExtensionDatum::new(a.clone(), m.clone(), total)
}

/// An algebra section `A -> B` if the extension splits.
///
/// With `s = incl + h`, multiplicativity reads `d^1 h = Z_incl`, a linear system.
pub fn is_split(e: &ExtensionDatum) -> Option<Matrix> {
    let a = &e.algebra;
    let (n, m) = (a.dim(), e.module.dim());
    let z = e.cocycle();
    let d1 = hochschild_differential(a, &e.module, 1);
    let h = d1.solve(&z)?;
    let mut s = e.canonical_section();
    for i in 0..n {
        for c in 0..m {
            s[(n + c, i)] = h[i * m + c].clone();
        }
    }
    Some(s)
}

/// The automorphism `(a, m) -> (a, m + d(a))` of the split extension, for a derivation `d`
/// given as a `dim(M) x dim(A)` matrix. Fails unless it is an algebra automorphism.
pub fn split_automorphism(a: &Algebra, m: &Bimodule, d: &Matrix) -> Result<Matrix> {
    let f = a.field();
    let (n, md) = (a.dim(), m.dim());
    let mut alpha = Matrix::identity(f, n + md);
    alpha.add_block(n, 0, d);
    let split = ExtensionDatum::split(a, m);
    check_algebra_hom(split.total(), split.total(), &alpha)
        .map_err(|_| Error::Precondition("map is not a derivation".into()))?;
    Ok(alpha)
}

/// Automorphisms of the split extension indexed by a basis of `Der(A, M)`.
pub fn split_automorphisms(a: &Algebra, m: &Bimodule) -> Vec<Matrix> {
    derivations(a, m)
        .der
        .iter()
        .map(|v| {
            let d = cochain1_to_matrix(a.field(), v, a.dim(), m.dim());
            split_automorphism(a, m, &d).expect("derivations give automorphisms")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::hh;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    fn dual() -> (Algebra, Bimodule) {
        let l = Algebra::dual_numbers(Q);
        let m = Bimodule::regular(&l);
        (l, m)
    }

    #[test]
    fn split_extension_has_zero_cocycle() {
        let (l, m) = dual();
        let e = ExtensionDatum::split(&l, &m);
        assert!(e.cocycle().iter().all(Scalar::is_zero));
        assert_eq!(is_split(&e).unwrap(), e.canonical_section());
    }

    #[test]
    fn perturbed_section_gives_a_coboundary() {
        let (l, m) = dual();
        let e = ExtensionDatum::split(&l, &m);
        let mut s = e.canonical_section();
        s[(2, 1)] = Q.from_i64(3);
        s[(3, 0)] = Q.from_i64(-1);
        let z = extension_to_cocycle(&e, &s).unwrap();
        let h = hh(&l, &m, 2).unwrap();
        assert!(h.is_cocycle(&z));
        assert!(h.is_coboundary(&z));
    }

    #[test]
    fn nonzero_class_round_trips_and_does_not_split() {
        let (l, m) = dual();
        let h = hh(&l, &m, 2).unwrap();
        let z = h.representatives[0].clone();
        let e = cocycle_to_extension(&l, &m, &z).unwrap();
        assert_eq!(e.cocycle(), z);
        assert!(is_split(&e).is_none());
    }

    #[test]
    fn coboundary_extension_splits_with_a_multiplicative_section() {
        let (l, m) = dual();
        let h1 = vec![Q.from_i64(1), Q.from_i64(2), Q.from_i64(-1), Q.from_i64(5)];
        let z = hochschild_differential(&l, &m, 1).mul_vec(&h1);
        let e = cocycle_to_extension(&l, &m, &z).unwrap();
        let s = is_split(&e).expect("coboundary splits");
        check_algebra_hom(&l, e.total(), &s).unwrap();
    }

    #[test]
    fn non_cocycle_is_refused() {
        let (l, m) = dual();
        let mut z = vec![Q.zero(); 8];
        z[7] = Q.one(); // phi(x, x) = x
        z[2] = Q.one(); // phi(1, x) = 1
        assert!(matches!(cocycle_to_extension(&l, &m, &z), Err(Error::NotCocycle(_))));
    }

    #[test]
    fn non_section_is_refused() {
        let (l, m) = dual();
        let e = ExtensionDatum::split(&l, &m);
        let s = Matrix::zeros(Q, 4, 2);
        assert!(matches!(extension_to_cocycle(&e, &s), Err(Error::NotSection)));
    }

    #[test]
    fn automorphisms_of_split_extensions() {
        let k = Algebra::ground(Q);
        assert!(split_automorphisms(&k, &Bimodule::regular(&k)).is_empty());
        let (l, m) = dual();
        let autos = split_automorphisms(&l, &m);
        assert_eq!(autos.len(), 1);
        let d = Matrix::from_rows(Q, 2, vec![vec![Q.zero(), Q.zero()], vec![Q.zero(), Q.one()]]).unwrap();
        let d2 = d.scale(&Q.from_i64(3));
        let a1 = split_automorphism(&l, &m, &d).unwrap();
        let a2 = split_automorphism(&l, &m, &d2).unwrap();
        assert_eq!(a1.mul(&a2), split_automorphism(&l, &m, &d.add(&d2)).unwrap());
    }
}
