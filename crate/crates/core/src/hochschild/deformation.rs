//! Algebras over `k_n = k[t]/(t^{n+1})` and the order-`n` deformation tower.
//!
//! A [`KnAlgebra`] of order `n` over a reference algebra `A` of dimension `d` lives on
//! `A (x) k_n` in adapted coordinates: coordinate `s * d + i` is `t^s e_i`. In these coordinates
//! the identification of the associated graded with `A (x) k_n` is the identity.

use crate::algebra::{Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

use super::extension::{is_split, ExtensionDatum};
use super::hh;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnAlgebra {
    order: usize,
    reference: Algebra,
    total: Algebra,
}

impl KnAlgebra {
    /// Validates `total` as a `k_n`-algebra with `t` acting by the coordinate shift and
    /// `total / t total = reference`.
    pub fn new(reference: Algebra, order: usize, total: Algebra) -> Result<KnAlgebra> {
        let d = reference.dim();
        if total.dim() != d * (order + 1) {
            return Err(Error::dim("order-n algebra", d * (order + 1), total.dim()));
        }
        if total.field() != reference.field() {
            return Err(Error::FieldMismatch { left: reference.field(), right: total.field() });
        }
        let b = KnAlgebra { order, reference, total };
        let t = b.t_matrix();
        let big = b.total.dim();
        for i in 0..big {
            for j in 0..big {
                let xy = b.total.product(i, j);
                let txy = t.mul_vec(&xy);
                if b.total.mul(&t.column(i), &b.total.basis_vector(j)) != txy || b.total.mul(&b.total.basis_vector(i), &t.column(j)) != txy {
                    return Err(Error::Invariant(format!("multiplication is not k[t]-bilinear at ({i}, {j})")));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                if b.total.product(i, j)[..d] != b.reference.product(i, j)[..] {
                    return Err(Error::Invariant(format!("reduction mod t differs from the reference algebra at ({i}, {j})")));
                }
            }
        }
        if b.total.unit()[..d] != b.reference.unit()[..] {
            return Err(Error::Invariant("reduction mod t does not preserve the unit".into()));
        }
        Ok(b)
    }

    /// Builds the algebra with `e_i e_j = sum_s t^s mu_s(e_i, e_j)`. `terms[s]` is the product
    /// table of `mu_s` (layout of [`Algebra::new`]); `terms[0]` is the reference product and
    /// missing terms are zero. The unit is solved for.
    pub fn from_terms(reference: &Algebra, order: usize, terms: &[Vec<Vec<Scalar>>]) -> Result<KnAlgebra> {
        let f = reference.field();
        let d = reference.dim();
        if terms.len() > order + 1 {
            return Err(Error::dim("deformation terms", order + 1, terms.len()));
        }
        for t in terms {
            if t.len() != d * d || t.iter().any(|v| v.len() != d) {
                return Err(Error::dim("deformation term table", d * d, t.len()));
            }
        }
        let mut eff: Vec<Vec<Vec<Scalar>>> = terms.to_vec();
        if eff.is_empty() {
            eff.push(reference.products());
        }
        let big = d * (order + 1);
        let mut products = vec![vec![f.zero(); big]; big * big];
        for s in 0..=order {
            for r in 0..=order - s {
                for i in 0..d {
                    for j in 0..d {
                        let p = &mut products[(s * d + i) * big + r * d + j];
                        for (u, term) in eff.iter().enumerate().take(order + 1 - s - r) {
                            for (k, x) in term[i * d + j].iter().enumerate() {
                                p[(s + r + u) * d + k] += x;
                            }
                        }
                    }
                }
            }
        }
        let labels = (0..=order)
            .flat_map(|s| reference.labels().iter().map(move |l| if s == 0 { l.clone() } else { format!("t^{s}*{l}") }))
            .collect();
        let total = Algebra::with_solved_unit(f, labels, products)?;
        KnAlgebra::new(reference.clone(), order, total)
    }

    /// `A (x) k_n`.
    pub fn trivial(reference: &Algebra, order: usize) -> KnAlgebra {
        KnAlgebra::from_terms(reference, order, &[reference.products()]).expect("trivial deformation is valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn reference(&self) -> &Algebra {
        &self.reference
    }

    pub fn total(&self) -> &Algebra {
        &self.total
    }

    /// Action of `t`.
    pub fn t_matrix(&self) -> Matrix {
        let f = self.total.field();
        let d = self.reference.dim();
        let big = self.total.dim();
        Matrix::from_fn(f, big, big, |r, c| if r == c + d { f.one() } else { f.zero() })
    }

    /// The product terms `mu_0, ..., mu_n`.
    pub fn terms(&self) -> Vec<Vec<Vec<Scalar>>> {
        let d = self.reference.dim();
        (0..=self.order)
            .map(|s| {
                (0..d * d)
                    .map(|c| self.total.product(c / d, c % d)[s * d..(s + 1) * d].to_vec())
                    .collect()
            })
            .collect()
    }

    /// Whether the product and unit agree with `A (x) k_n` in these coordinates.
    pub fn is_literally_trivial(&self) -> bool {
        self.total == KnAlgebra::trivial(&self.reference, self.order).total
    }
}

/// The first-order extension attached to an order-`n` algebra whose reduction mod `t^n` is
/// `A (x) k_{n-1}`: the subalgebra `A (+) t^n A`.
pub fn defn_reduce(b: &KnAlgebra) -> Result<ExtensionDatum> {
    let n = b.order;
    if n == 0 {
        return Err(Error::Precondition("order 0 algebras carry no extension".into()));
    }
    let a = &b.reference;
    let d = a.dim();
    let terms = b.terms();
    if terms[1..n].iter().any(|t| t.iter().flatten().any(|x| !x.is_zero())) {
        return Err(Error::Precondition("truncation modulo t^n is not trivial".into()));
    }
    if b.total.unit()[d..n * d].iter().any(|x| !x.is_zero()) {
        return Err(Error::Precondition("unit is not trivial modulo t^n".into()));
    }
    let keep: Vec<usize> = (0..d).chain(n * d..(n + 1) * d).collect();
    let restrict = |v: Vec<Scalar>| keep.iter().map(|&k| v[k].clone()).collect::<Vec<_>>();
    let mut products = Vec::with_capacity(4 * d * d);
    for &i in &keep {
        for &j in &keep {
            products.push(restrict(b.total.product(i, j)));
        }
    }
    let mut labels = a.labels().to_vec();
    labels.extend(a.labels().iter().map(|l| format!("t^{n}*{l}")));
    let total = Algebra::new(a.field(), labels, products, restrict(b.total.unit().to_vec()))?;
    ExtensionDatum::new(a.clone(), Bimodule::regular(a), total)
}

/// The order-`n` algebra with `mu_0 = ` the product of `A`, `mu_n = ` the `M`-part of products
/// in `e`, and all other terms zero. Requires `M = A` as a bimodule.
pub fn defn_lift(e: &ExtensionDatum, n: usize) -> Result<KnAlgebra> {
    let a = e.algebra();
    if *e.module() != Bimodule::regular(a) {
        return Err(Error::Precondition("lifting needs an extension by the regular bimodule".into()));
    }
    if n == 0 {
        return Err(Error::Precondition("lifting needs order at least 1".into()));
    }
    let f = a.field();
    let d = a.dim();
    let mut terms = vec![vec![vec![f.zero(); d]; d * d]; n + 1];
    terms[0] = a.products();
    for i in 0..d {
        for j in 0..d {
            terms[n][i * d + j] = e.total().product(i, j)[d..].to_vec();
        }
    }
    KnAlgebra::from_terms(a, n, &terms)
}

/// What can be decided about triviality of an order-`n` algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    NonTrivial,
    Undecided,
}

/// Decides triviality when `HH^2(A, A) = 0`, or when the algebra is trivial modulo `t^n`.
pub fn triviality(b: &KnAlgebra) -> Result<Triviality> {
    if b.order == 0 {
        return Ok(Triviality::Trivial);
    }
    let a = &b.reference;
    if hh(a, &Bimodule::regular(a), 2)?.dim == 0 {
        return Ok(Triviality::Trivial);
    }
    match defn_reduce(b) {
        Ok(e) => Ok(if is_split(&e).is_some() { Triviality::Trivial } else { Triviality::NonTrivial }),
        Err(Error::Precondition(_)) => Ok(Triviality::Undecided),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::cocycle_to_extension;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn trivial_reduces_to_split() {
        let l = Algebra::dual_numbers(Q);
        for n in 1..=3 {
            let b = KnAlgebra::trivial(&l, n);
            assert!(b.is_literally_trivial());
            let e = defn_reduce(&b).unwrap();
            assert!(is_split(&e).is_some());
            assert_eq!(triviality(&b).unwrap(), Triviality::Trivial);
        }
    }

    #[test]
    fn order_one_is_the_extension_itself() {
        let l = Algebra::dual_numbers(Q);
        let m = Bimodule::regular(&l);
        let z = hh(&l, &m, 2).unwrap().representatives[0].clone();
        let e = cocycle_to_extension(&l, &m, &z).unwrap();
        let b = defn_lift(&e, 1).unwrap();
        assert_eq!(b.total().products(), e.total().products());
        assert_eq!(b.total().unit(), e.total().unit());
        assert_eq!(defn_reduce(&b).unwrap().total().products(), e.total().products());
    }

    #[test]
    fn lift_then_reduce_keeps_the_class() {
        let l = Algebra::dual_numbers(Q);
        let m = Bimodule::regular(&l);
        let h = hh(&l, &m, 2).unwrap();
        let z = h.representatives[0].clone();
        let e = cocycle_to_extension(&l, &m, &z).unwrap();
        for n in 2..=3 {
            let b = defn_lift(&e, n).unwrap();
            let back = defn_reduce(&b).unwrap();
            assert_eq!(back.cocycle(), z);
            assert_eq!(triviality(&b).unwrap(), Triviality::NonTrivial);
        }
    }

    #[test]
    fn nontrivial_middle_terms_are_refused() {
        let l = Algebra::dual_numbers(Q);
        let d = 2;
        let mut mu1 = vec![vec![Q.zero(); d]; d * d];
        mu1[3] = vec![Q.one(), Q.zero()]; // x * x = t
        let b = KnAlgebra::from_terms(&l, 2, &[l.products(), mu1]).unwrap();
        assert!(matches!(defn_reduce(&b), Err(Error::Precondition(_))));
        assert_eq!(triviality(&b).unwrap(), Triviality::Undecided);
    }
}
