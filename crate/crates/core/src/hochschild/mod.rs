//! The Hochschild cochain complex of an algebra with coefficients in a bimodule.
//!
//! A `q`-cochain `phi: A^{(x)q} -> M` is stored as a coordinate vector of length
//! `dim(A)^q * dim(M)`; the value on the basis tuple `(e_{a_1}, ..., e_{a_q})` occupies the
//! block starting at `tuple * dim(M)`, where `tuple` reads `a_1 ... a_q` in base `dim(A)` with
//! `a_1` most significant.

mod deformation;
mod extension;

pub use deformation::{defn_lift, defn_reduce, triviality, KnAlgebra, Triviality};
pub use extension::{
    cocycle_to_extension, extension_to_cocycle, is_split, split_automorphism, split_automorphisms, ExtensionDatum,
};

use crate::algebra::{Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{sign, CochainComplex, Cohomology, Field, Matrix, Scalar, Subspace};

/// Default cap on the number of coordinates of a single cochain space.
pub const DEFAULT_CAP: usize = 1_000_000;

/// `dim(A)^q * dim(M)`, or [`Error::CapExceeded`] past `cap`.
pub fn cochain_dim(n: usize, m: usize, q: usize, cap: usize) -> Result<usize> {
    let d = (n as u128).checked_pow(q as u32).and_then(|x| x.checked_mul(m as u128));
    match d {
        Some(d) if d <= cap as u128 => Ok(d as usize),
        _ => Err(Error::CapExceeded { what: format!("Hochschild cochains of degree {q}"), needed: d.map_or(usize::MAX, |d| d.min(usize::MAX as u128) as usize), cap }),
    }
}

/// `d^q: C^q(A, M) -> C^{q+1}(A, M)`.
pub fn hochschild_differential(a: &Algebra, m: &Bimodule, q: usize) -> Matrix {
    assert_eq!(a.dim(), m.base_dim(), "bimodule over a different algebra");
    let field = a.field();
    let n = a.dim();
    let md = m.dim();
    let nq = n.pow(q as u32);
    let mut d = Matrix::zeros(field, n * nq * md, nq * md);
    if md == 0 || n == 0 {
        return d;
    }
    let mult = a.mult_matrix();
    let mut digits = vec![0usize; q + 1];
    for out in 0..n * nq {
        let mut x = out;
        for pos in (0..=q).rev() {
            digits[pos] = x % n;
            x /= n;
        }
        let row0 = out * md;
        // a_0 . phi(a_1, ..., a_q)
        let rest = out % nq;
        let l = m.left(digits[0]);
        for c in 0..md {
            for c2 in 0..md {
                let v = &l[(c, c2)];
                if !v.is_zero() {
                    d[(row0 + c, rest * md + c2)] += v;
                }
            }
        }
        // (-1)^{i+1} phi(..., a_i a_{i+1}, ...)
        for i in 0..q {
            let s = sign(field, i + 1);
            let prod_col = digits[i] * n + digits[i + 1];
            let prefix = digits[..i].iter().fold(0, |acc, &x| acc * n + x);
            let suffix = digits[i + 2..].iter().fold(0, |acc, &x| acc * n + x);
            let suffix_len = q - 1 - i;
            for k in 0..n {
                let coef = &mult[(k, prod_col)];
                if coef.is_zero() {
                    continue;
                }
                let input = (prefix * n + k) * n.pow(suffix_len as u32) + suffix;
                let v = &s * coef;
                for c in 0..md {
                    d[(row0 + c, input * md + c)] += &v;
                }
            }
        }
        // (-1)^{q+1} phi(a_0, ..., a_{q-1}) . a_q
        let input = out / n;
        let r = m.right(digits[q]);
        let s = sign(field, q + 1);
        for c in 0..md {
            for c2 in 0..md {
                let v = &r[(c, c2)];
                if !v.is_zero() {
                    d[(row0 + c, input * md + c2)] += &(&s * v);
                }
            }
        }
    }
    d
}

/// The bar cochain complex `C^0 -> ... -> C^qmax`.
pub fn bar_cochain_complex(a: &Algebra, m: &Bimodule, qmax: usize) -> Result<CochainComplex> {
    bar_cochain_complex_capped(a, m, qmax, DEFAULT_CAP)
}

pub fn bar_cochain_complex_capped(a: &Algebra, m: &Bimodule, qmax: usize, cap: usize) -> Result<CochainComplex> {
    check_same_field(a, m)?;
    let dims = (0..=qmax).map(|q| cochain_dim(a.dim(), m.dim(), q, cap)).collect::<Result<Vec<_>>>()?;
    let diffs = (0..qmax).map(|q| hochschild_differential(a, m, q)).collect();
    CochainComplex::new(a.field(), 0, dims, diffs)
}

fn check_same_field(a: &Algebra, m: &Bimodule) -> Result<()> {
    if a.field() != m.field() {
        return Err(Error::FieldMismatch { left: a.field(), right: m.field() });
    }
    if a.dim() != m.base_dim() {
        return Err(Error::dim("bimodule base algebra", a.dim(), m.base_dim()));
    }
    Ok(())
}

/// `HH^q(A, M)` with cocycle representatives.
pub fn hh(a: &Algebra, m: &Bimodule, q: usize) -> Result<Cohomology> {
    hh_capped(a, m, q, DEFAULT_CAP)
}

pub fn hh_capped(a: &Algebra, m: &Bimodule, q: usize, cap: usize) -> Result<Cohomology> {
    check_same_field(a, m)?;
    cochain_dim(a.dim(), m.dim(), q + 1, cap)?;
    let outgoing = hochschild_differential(a, m, q);
    let incoming = if q == 0 { Matrix::zeros(a.field(), m.dim(), 0) } else { hochschild_differential(a, m, q - 1) };
    Ok(Cohomology::compute(a.field(), q as i64, incoming, outgoing))
}

/// `Z(M) = { v : a v = v a for all a }`.
pub fn center(a: &Algebra, m: &Bimodule) -> Subspace {
    let d0 = hochschild_differential(a, m, 0);
    Subspace::spanned_by(a.field(), m.dim(), &d0.kernel_basis())
}

/// Derivations `A -> M`, inner derivations and the outer dimension.
#[derive(Clone, Debug)]
pub struct Derivations {
    /// Basis of `Der(A, M)` as 1-cochains.
    pub der: Vec<Vec<Scalar>>,
    /// Inner derivations `a -> a v - v a`.
    pub inner: Subspace,
    pub outer_dim: usize,
}

pub fn derivations(a: &Algebra, m: &Bimodule) -> Derivations {
    let der = hochschild_differential(a, m, 1).kernel_basis();
    let inner = Subspace::column_space(&hochschild_differential(a, m, 0));
    let outer_dim = der.len() - inner.dim();
    Derivations { der, inner, outer_dim }
}

/// The 1-cochain as a `dim(M) x dim(A)` matrix.
pub fn cochain1_to_matrix(field: Field, v: &[Scalar], n: usize, m: usize) -> Matrix {
    Matrix::from_fn(field, m, n, |c, a| v[a * m + c].clone())
}

pub fn matrix_to_cochain1(h: &Matrix) -> Vec<Scalar> {
    let (m, n) = (h.rows(), h.cols());
    (0..n * m).map(|k| h[(k % m, k / m)].clone()).collect()
}

/// Value of a 2-cochain on `(x, y)`.
pub fn eval2(z: &[Scalar], x: &[Scalar], y: &[Scalar], m: usize) -> Vec<Scalar> {
    let n = x.len();
    let field = z.first().map(Scalar::field);
    let mut out = match field {
        Some(f) => vec![f.zero(); m],
        None => return Vec::new(),
    };
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let c = xi * yj;
            for k in 0..m {
                let v = &z[(i * n + j) * m + k];
                if !v.is_zero() {
                    out[k] += &(&c * v);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn dims(a: &Algebra, m: &Bimodule, top: usize) -> Vec<usize> {
        (0..=top).map(|q| hh(a, m, q).unwrap().dim).collect()
    }

    #[test]
    fn ground_field_is_acyclic_above_zero() {
        let k = Algebra::ground(Q);
        let id = Matrix::identity(Q, 2);
        let m = Bimodule::new(&k, 2, vec![id.clone()], vec![id]).unwrap();
        assert_eq!(dims(&k, &m, 3), vec![2, 0, 0, 0]);
        let c = bar_cochain_complex(&k, &m, 4).unwrap();
        assert_eq!(c.dims(), &[2, 2, 2, 2, 2]);
        assert!(c.is_complex());
    }

    #[test]
    fn dual_numbers_dimensions() {
        let l = Algebra::dual_numbers(Q);
        let m = Bimodule::regular(&l);
        let c = bar_cochain_complex(&l, &m, 3).unwrap();
        assert_eq!(c.dims(), &[2, 4, 8, 16]);
        assert!(c.is_complex());
        assert_eq!(dims(&l, &m, 3), vec![2, 1, 1, 1]);
    }

    #[test]
    fn dual_numbers_in_characteristic_two() {
        // the 2x differential of the periodic resolution vanishes when 2 = 0
        let f = Field::Prime(2);
        let l = Algebra::dual_numbers(f);
        assert_eq!(dims(&l, &Bimodule::regular(&l), 3), vec![2, 2, 2, 2]);
    }

    #[test]
    fn matrix_algebra_is_separable() {
        let m2 = Algebra::matrix(Q, 2);
        let r = Bimodule::regular(&m2);
        assert_eq!(hh(&m2, &r, 1).unwrap().dim, 0);
        assert_eq!(hh(&m2, &r, 2).unwrap().dim, 0);
    }

    #[test]
    fn centers() {
        let l = Algebra::dual_numbers(Q);
        assert_eq!(center(&l, &Bimodule::regular(&l)).dim(), 2);
        let t = Algebra::upper_triangular(Q, 2);
        let z = center(&t, &Bimodule::regular(&t));
        assert_eq!(z.dim(), 1);
        assert!(z.contains(t.unit()));
        assert_eq!(center(&t, &Bimodule::zero(&t)).dim(), 0);
    }

    #[test]
    fn derivation_spaces() {
        let k = Algebra::ground(Q);
        assert!(derivations(&k, &Bimodule::regular(&k)).der.is_empty());
        let l = Algebra::dual_numbers(Q);
        let d = derivations(&l, &Bimodule::regular(&l));
        assert_eq!((d.der.len(), d.inner.dim(), d.outer_dim), (1, 0, 1));
        let t = Algebra::upper_triangular(Q, 2);
        let d = derivations(&t, &Bimodule::regular(&t));
        assert_eq!(d.outer_dim, 0);
        assert_eq!(d.outer_dim, hh(&t, &Bimodule::regular(&t), 1).unwrap().dim);
    }

    #[test]
    fn cap_is_enforced() {
        let m2 = Algebra::matrix(Q, 2);
        let r = Bimodule::regular(&m2);
        assert!(matches!(bar_cochain_complex_capped(&m2, &r, 5, 1000), Err(Error::CapExceeded { .. })));
    }
}
