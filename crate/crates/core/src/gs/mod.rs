//! The Gerstenhaber–Schack double complex of a presheaf of algebras with coefficients in a
//! presheaf of bimodules.
//!
//! `T^{p,q} = (+)_{U_0 ⊋ ... ⊋ U_p} Hom_k(A(U_0)^{(x)q}, M(U_p))`, where `A(U_0)` acts on
//! `M(U_p)` through the restriction `A(U_0) -> A(U_p)`. Columns carry the Hochschild
//! differential and rows the nerve differential; the face dropping `U_0` precomposes with the
//! restriction `A(U_0) -> A(U_1)` in every argument.

mod extension;
mod les;

pub use extension::{
    cocycle_to_presheaf_extension, exal_presheaf, extension_class_vector, presheaf_extension_to_cocycle, rho, PresheafExtension,
    TwoCochain,
};
pub use les::{les_check, les_check_in, LesNode, LesReport};
pub(crate) use les::les_maps;

use crate::error::{Error, Result};
use crate::hochschild::{cochain_dim, hochschild_differential, DEFAULT_CAP};
use crate::linalg::{sign, Cohomology, DoubleComplex, Matrix, Totalization};
use crate::site::{chain_position, offsets, without, AlgebraPresheaf, BimodulePresheaf, FiniteSite, StrictChain};

/// A built double complex together with the chain layout of each bidegree.
#[derive(Clone, Debug)]
pub struct GsComplex {
    chains: Vec<Vec<StrictChain>>,
    /// `offsets[p][q][c]` is where chain `c` starts inside `T^{p,q}`.
    offsets: Vec<Vec<Vec<usize>>>,
    double: DoubleComplex,
}

fn tensor_power(m: &Matrix, q: usize) -> Matrix {
    let mut out = Matrix::identity(m.field(), 1);
    for _ in 0..q {
        out = out.kron(m);
    }
    out
}

impl GsComplex {
    /// Builds `T^{p,q}` for `p <= pmax` (clamped to the longest chain) and `q <= qmax`.
    pub fn new(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, pmax: usize, qmax: usize) -> Result<GsComplex> {
        GsComplex::new_capped(site, a, m, pmax, qmax, DEFAULT_CAP)
    }

    pub fn new_capped(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, pmax: usize, qmax: usize, cap: usize) -> Result<GsComplex> {
        if a.field() != m.field() {
            return Err(Error::FieldMismatch { left: a.field(), right: m.field() });
        }
        let field = a.field();
        let pmax = pmax.min(site.height());
        let chains: Vec<Vec<StrictChain>> = (0..=pmax).map(|p| site.strict_chains(p)).collect();
        let mut dims = vec![vec![0; qmax + 1]; pmax + 1];
        let mut offs = vec![vec![Vec::new(); qmax + 1]; pmax + 1];
        for p in 0..=pmax {
            for q in 0..=qmax {
                let sizes = chains[p]
                    .iter()
                    .map(|c| cochain_dim(a.algebra(c[0]).dim(), m.module(c[p]).dim(), q, cap))
                    .collect::<Result<Vec<_>>>()?;
                let (o, total) = offsets(sizes.into_iter());
                if total > cap {
                    return Err(Error::CapExceeded { what: format!("double complex entry ({p},{q})"), needed: total, cap });
                }
                dims[p][q] = total;
                offs[p][q] = o;
            }
        }
        // pulled-back bimodules per chain, reused across q
        let pulled: Vec<Vec<_>> = chains
            .iter()
            .enumerate()
            .map(|(p, cs)| cs.iter().map(|c| m.module(c[p]).pullback(a.restriction(c[0], c[p]))).collect())
            .collect();
        let mut vertical = Vec::with_capacity(pmax + 1);
        for p in 0..=pmax {
            let mut col = Vec::with_capacity(qmax);
            for q in 0..qmax {
                let mut d = Matrix::zeros(field, dims[p][q + 1], dims[p][q]);
                for (k, c) in chains[p].iter().enumerate() {
                    let block = hochschild_differential(a.algebra(c[0]), &pulled[p][k], q);
                    d.add_block(offs[p][q + 1][k], offs[p][q][k], &block);
                }
                col.push(d);
            }
            vertical.push(col);
        }
        let mut horizontal = Vec::with_capacity(pmax);
        for p in 0..pmax {
            let mut row = Vec::with_capacity(qmax + 1);
            for q in 0..=qmax {
                let mut d = Matrix::zeros(field, dims[p + 1][q], dims[p][q]);
                for (k, c) in chains[p + 1].iter().enumerate() {
                    let n0 = a.algebra(c[0]).dim();
                    let md = m.module(c[p + 1]).dim();
                    for j in 0..=p + 1 {
                        let face = without(c, j);
                        let f = chain_position(&chains[p], &face);
                        let s = sign(field, p + 1 - j);
                        let block = if j == p + 1 {
                            let id = Matrix::identity(field, n0.pow(q as u32));
                            id.kron(m.restriction(c[p], c[p + 1]))
                        } else if j == 0 {
                            let r = a.restriction(c[0], c[1]).transpose();
                            tensor_power(&r, q).kron(&Matrix::identity(field, md))
                        } else {
                            Matrix::identity(field, n0.pow(q as u32) * md)
                        };
                        d.add_block(offs[p + 1][q][k], offs[p][q][f], &block.scale(&s));
                    }
                }
                row.push(d);
            }
            horizontal.push(row);
        }
        let double = DoubleComplex::new(field, dims, horizontal, vertical)?;
        Ok(GsComplex { chains, offsets: offs, double })
    }

    /// Caps adequate for cohomology in total degrees up to `n`.
    pub fn for_degree(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, n: usize) -> Result<GsComplex> {
        GsComplex::new(site, a, m, n + 1, n + 1)
    }

    pub fn double(&self) -> &DoubleComplex {
        &self.double
    }

    pub fn chains(&self, p: usize) -> &[StrictChain] {
        self.chains.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn block_offset(&self, p: usize, q: usize, chain: usize) -> usize {
        self.offsets[p][q][chain]
    }

    pub fn pmax(&self) -> usize {
        self.double.pmax()
    }

    pub fn qmax(&self) -> usize {
        self.double.qmax()
    }

    /// Whether cohomology in total degree `n` is unaffected by the truncation.
    pub fn covers(&self, n: usize, height: usize) -> bool {
        self.qmax() > n && self.pmax() >= height.min(n + 1)
    }

    pub fn total(&self) -> Totalization {
        self.double.totalize()
    }

    /// The subcomplex `T_a` of rows `q >= 1`.
    pub fn total_a(&self) -> Totalization {
        self.double.totalize_where(|_, q| q >= 1)
    }

    /// The quotient row `q = 0`, the nerve complex.
    pub fn bottom_row(&self) -> Totalization {
        self.double.totalize_where(|_, q| q == 0)
    }
}

fn require_caps(site: &FiniteSite, g: &GsComplex, n: usize) -> Result<()> {
    if !g.covers(n, site.height()) {
        return Err(Error::InsufficientCaps { needed: n + 1, pmax: g.pmax(), qmax: g.qmax() });
    }
    Ok(())
}

/// `Ext^n_{A^e}(A, M)`: cohomology of the total complex.
pub fn gs_ext(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, n: usize) -> Result<Cohomology> {
    let g = GsComplex::for_degree(site, a, m, n)?;
    gs_ext_in(site, &g, n)
}

pub fn gs_ext_in(site: &FiniteSite, g: &GsComplex, n: usize) -> Result<Cohomology> {
    require_caps(site, g, n)?;
    g.total().complex.cohomology(n as i64)
}

/// `H_a^n(A, M)`: cohomology of the totalized rows `q >= 1`.
pub fn h_a(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, n: usize) -> Result<Cohomology> {
    let g = GsComplex::for_degree(site, a, m, n)?;
    h_a_in(site, &g, n)
}

pub fn h_a_in(site: &FiniteSite, g: &GsComplex, n: usize) -> Result<Cohomology> {
    require_caps(site, g, n)?;
    g.total_a().complex.cohomology(n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Bimodule};
    use crate::hochschild::hh;
    use crate::linalg::Field;
    use crate::site::{nerve_complex, LinearPresheaf};

    const Q: Field = Field::Rational;

    fn one_object(a: &Algebra, m: &Bimodule) -> (FiniteSite, AlgebraPresheaf, BimodulePresheaf) {
        let s = FiniteSite::point();
        let ap = AlgebraPresheaf::constant(&s, a);
        let mp = BimodulePresheaf::constant(&s, &ap, m).unwrap();
        (s, ap, mp)
    }

    #[test]
    fn one_object_site_reduces_to_hochschild() {
        let l = Algebra::dual_numbers(Q);
        let r = Bimodule::regular(&l);
        let (s, ap, mp) = one_object(&l, &r);
        let g = GsComplex::for_degree(&s, &ap, &mp, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(gs_ext_in(&s, &g, n).unwrap().dim, hh(&l, &r, n).unwrap().dim);
        }
        for n in 2..=3 {
            assert_eq!(h_a_in(&s, &g, n).unwrap().dim, hh(&l, &r, n).unwrap().dim);
        }
        assert_eq!(h_a_in(&s, &g, 1).unwrap().dim, 1);
        assert_eq!(h_a_in(&s, &g, 0).unwrap().dim, 0);
    }

    #[test]
    fn bottom_row_is_the_nerve_complex() {
        let s = FiniteSite::new(vec!["U".into(), "V".into(), "W".into()], &[(2, 0), (2, 1)]).unwrap();
        let l = Algebra::dual_numbers(Q);
        let ap = AlgebraPresheaf::constant(&s, &l);
        let mp = BimodulePresheaf::regular(&ap);
        let g = GsComplex::new(&s, &ap, &mp, 2, 2).unwrap();
        let nerve = nerve_complex(&s, mp.linear());
        for p in 0..g.pmax() {
            assert_eq!(*g.double().horizontal(p, 0), nerve.differential(p as i64));
        }
        g.double().check().unwrap();
    }

    #[test]
    fn constant_ground_field_gives_nerve_cohomology() {
        let s = FiniteSite::new(vec!["U".into(), "V".into()], &[(1, 0)]).unwrap();
        let k = Algebra::ground(Q);
        let ap = AlgebraPresheaf::constant(&s, &k);
        let mp = BimodulePresheaf::regular(&ap);
        let nerve = nerve_complex(&s, &LinearPresheaf::constant(&s, Q, 1)).betti();
        for n in 0..=2 {
            let e = gs_ext(&s, &ap, &mp, n).unwrap().dim;
            assert_eq!(e, nerve.get(n).copied().unwrap_or(0));
            assert_eq!(h_a(&s, &ap, &mp, n).unwrap().dim, 0);
        }
    }

    #[test]
    fn truncated_caps_are_refused() {
        let l = Algebra::dual_numbers(Q);
        let r = Bimodule::regular(&l);
        let (s, ap, mp) = one_object(&l, &r);
        let g = GsComplex::new(&s, &ap, &mp, 1, 2).unwrap();
        assert!(matches!(gs_ext_in(&s, &g, 2), Err(Error::InsufficientCaps { .. })));
    }

    #[test]
    fn zero_coefficients() {
        let s = FiniteSite::new(vec!["U".into(), "V".into()], &[(1, 0)]).unwrap();
        let l = Algebra::dual_numbers(Q);
        let ap = AlgebraPresheaf::constant(&s, &l);
        let mp = BimodulePresheaf::zero(&s, &ap);
        for n in 0..=2 {
            assert_eq!(gs_ext(&s, &ap, &mp, n).unwrap().dim, 0);
            assert_eq!(h_a(&s, &ap, &mp, n).unwrap().dim, 0);
        }
    }
}
