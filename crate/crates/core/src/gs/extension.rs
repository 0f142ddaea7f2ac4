//! Extensions of presheaves of algebras and their classes in `H_a^2`.

use crate::algebra::check_algebra_hom;
use crate::error::{Error, Result};
use crate::hochschild::{cochain1_to_matrix, cocycle_to_extension, extension_to_cocycle, matrix_to_cochain1, ExtensionDatum};
use crate::linalg::{Matrix, Scalar, Totalization};
use crate::site::{AlgebraPresheaf, BimodulePresheaf, FiniteSite, LinearPresheaf};

use super::{h_a, GsComplex};

/// An extension `0 -> M -> B -> A -> 0` of presheaves, with `B(U) = A(U) (+) M(U)` as spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafExtension {
    exts: Vec<ExtensionDatum>,
    maps: LinearPresheaf,
}

impl PresheafExtension {
    /// `given` lists restrictions `((u, v), r^B_{u,v})`; missing ones are composed.
    pub fn new(
        site: &FiniteSite,
        a: &AlgebraPresheaf,
        m: &BimodulePresheaf,
        exts: Vec<ExtensionDatum>,
        given: Vec<((usize, usize), Matrix)>,
    ) -> Result<PresheafExtension> {
        if exts.len() != site.len() {
            return Err(Error::dim("extension objects", site.len(), exts.len()));
        }
        for (u, e) in exts.iter().enumerate() {
            if e.algebra() != a.algebra(u) || e.module() != m.module(u) {
                return Err(Error::Invariant(format!("extension on {} is not over the given algebra and bimodule", site.name(u))));
            }
        }
        let maps = LinearPresheaf::new(site, a.field(), exts.iter().map(|e| e.total().dim()).collect(), given)?;
        for u in 0..site.len() {
            for v in 0..site.len() {
                if !site.lt(v, u) {
                    continue;
                }
                let r = maps.restriction(u, v);
                let (nu, nv) = (a.algebra(u).dim(), a.algebra(v).dim());
                let (mu, mv) = (m.module(u).dim(), m.module(v).dim());
                let compatible = r.block(0, 0, nv, nu) == *a.restriction(u, v)
                    && r.block(0, nu, nv, mu).is_zero()
                    && r.block(nv, nu, mv, mu) == *m.restriction(u, v);
                if !compatible {
                    return Err(Error::Invariant(format!(
                        "restriction {} -> {} is not compatible with the algebra and bimodule restrictions",
                        site.name(u),
                        site.name(v)
                    )));
                }
                check_algebra_hom(exts[u].total(), exts[v].total(), r).map_err(|e| {
                    Error::Invariant(format!("restriction {} -> {} is not an algebra homomorphism: {e}", site.name(u), site.name(v)))
                })?;
            }
        }
        Ok(PresheafExtension { exts, maps })
    }

    /// The componentwise split extension with plain restrictions.
    pub fn split(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf) -> PresheafExtension {
        let z = vec![a.field().zero(); two_cochain_len(site, a, m)];
        cocycle_to_presheaf_extension(site, a, m, &z).expect("zero is a cocycle")
    }

    pub fn extension(&self, u: usize) -> &ExtensionDatum {
        &self.exts[u]
    }

    pub fn extensions(&self) -> &[ExtensionDatum] {
        &self.exts
    }

    pub fn restriction(&self, u: usize, v: usize) -> &Matrix {
        self.maps.restriction(u, v)
    }

    pub fn linear(&self) -> &LinearPresheaf {
        &self.maps
    }

    /// The part `A(u) -> M(v)` of `r^B_{u,v}`.
    pub fn twist(&self, u: usize, v: usize) -> Matrix {
        let (nu, nv) = (self.exts[u].algebra().dim(), self.exts[v].algebra().dim());
        let mv = self.exts[v].module().dim();
        self.restriction(u, v).block(nv, 0, mv, nu)
    }

    pub fn canonical_sections(&self) -> Vec<Matrix> {
        self.exts.iter().map(ExtensionDatum::canonical_section).collect()
    }
}

fn two_cochain_len(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf) -> usize {
    let z02: usize = (0..site.len()).map(|u| a.algebra(u).dim().pow(2) * m.module(u).dim()).sum();
    let z11: usize = site.strict_chains(1).iter().map(|c| a.algebra(c[0]).dim() * m.module(c[1]).dim()).sum();
    z02 + z11
}

/// A total 2-cochain of `T_a`: a Hochschild 2-cochain per object and a 1-cochain
/// `A(U_0) -> M(U_1)` per strict pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCochain {
    pub z02: Vec<Vec<Scalar>>,
    pub z11: Vec<Vec<Scalar>>,
}

impl TwoCochain {
    /// Coordinates in degree 2 of `tot` (the totalization of `T_a` or of `T`).
    pub fn assemble(&self, g: &GsComplex, tot: &Totalization) -> Vec<Scalar> {
        let field = g.double().field();
        let mut v = vec![field.zero(); tot.complex.dim(2)];
        let put = |v: &mut Vec<Scalar>, p: usize, q: usize, parts: &[Vec<Scalar>]| {
            if let Some(b) = tot.block(2, p, q) {
                for (k, part) in parts.iter().enumerate() {
                    let o = b.offset + g.block_offset(p, q, k);
                    v[o..o + part.len()].clone_from_slice(part);
                }
            }
        };
        put(&mut v, 0, 2, &self.z02);
        put(&mut v, 1, 1, &self.z11);
        v
    }

    pub fn split(g: &GsComplex, tot: &Totalization, v: &[Scalar]) -> TwoCochain {
        let take = |p: usize, q: usize| -> Vec<Vec<Scalar>> {
            let Some(b) = tot.block(2, p, q) else { return Vec::new() };
            let n = g.chains(p).len();
            (0..n)
                .map(|k| {
                    let start = b.offset + g.block_offset(p, q, k);
                    let end = if k + 1 < n { b.offset + g.block_offset(p, q, k + 1) } else { b.offset + b.dim };
                    v[start..end].to_vec()
                })
                .collect()
        };
        TwoCochain { z02: take(0, 2), z11: take(1, 1) }
    }
}

fn gs3(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf) -> Result<GsComplex> {
    GsComplex::new(site, a, m, 3, 3)
}

/// `(Z^{0,2}, Z^{1,1})` with `Z^{0,2}_U(a, b) = s_U(ab) - s_U(a) s_U(b)` and
/// `Z^{1,1}_{U,V}(a) = s_V r^A(a) - r^B s_U(a)`.
pub fn presheaf_extension_to_cocycle(site: &FiniteSite, b: &PresheafExtension, sections: &[Matrix]) -> Result<TwoCochain> {
    if sections.len() != site.len() {
        return Err(Error::dim("sections", site.len(), sections.len()));
    }
    let z02 = b.exts.iter().zip(sections).map(|(e, s)| extension_to_cocycle(e, s)).collect::<Result<Vec<_>>>()?;
    let mut z11 = Vec::new();
    for c in site.strict_chains(1) {
        let (u, v) = (c[0], c[1]);
        let ev = &b.exts[v];
        let nv = ev.algebra().dim();
        let ra = b.exts[u].algebra().dim();
        let lhs = sections[v].mul(&b.restriction(u, v).block(0, 0, nv, ra));
        let rhs = b.restriction(u, v).mul(&sections[u]);
        let diff = lhs.sub(&rhs);
        z11.push(matrix_to_cochain1(&diff.block(nv, 0, ev.module().dim(), ra)));
    }
    Ok(TwoCochain { z02, z11 })
}

/// The presheaf extension with `B(U)` built from `Z^{0,2}_U` as in
/// [`cocycle_to_extension`] and `r^B(a, m) = (r a, r m - Z^{1,1}(a))`, so that canonical
/// sections recover `z` exactly. `z` is given in degree-2 coordinates of `T_a`.
pub fn cocycle_to_presheaf_extension(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, z: &[Scalar]) -> Result<PresheafExtension> {
    let g = gs3(site, a, m)?;
    let ta = g.total_a();
    if z.len() != ta.complex.dim(2) {
        return Err(Error::dim("total 2-cochain", ta.complex.dim(2), z.len()));
    }
    if ta.complex.differential(2).mul_vec(z).iter().any(|x| !x.is_zero()) {
        return Err(Error::NotCocycle("total differential of the 2-cochain is nonzero".into()));
    }
    let parts = TwoCochain::split(&g, &ta, z);
    let exts = (0..site.len())
        .map(|u| cocycle_to_extension(a.algebra(u), m.module(u), &parts.z02[u]))
        .collect::<Result<Vec<_>>>()?;
    let field = a.field();
    let mut given = Vec::new();
    for (k, c) in g.chains(1).iter().enumerate() {
        let (u, v) = (c[0], c[1]);
        let (nu, nv) = (a.algebra(u).dim(), a.algebra(v).dim());
        let (mu, mv) = (m.module(u).dim(), m.module(v).dim());
        let mut r = Matrix::zeros(field, nv + mv, nu + mu);
        r.add_block(0, 0, a.restriction(u, v));
        r.add_block(nv, nu, m.restriction(u, v));
        r.add_block(nv, 0, &cochain1_to_matrix(field, &parts.z11[k], nu, mv).neg());
        given.push(((u, v), r));
    }
    PresheafExtension::new(site, a, m, exts, given)
}

/// Degree-2 coordinates in `T_a` of the cocycle of `b` with canonical sections.
pub fn extension_class_vector(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, b: &PresheafExtension) -> Result<Vec<Scalar>> {
    let g = gs3(site, a, m)?;
    let z = presheaf_extension_to_cocycle(site, b, &b.canonical_sections())?;
    Ok(z.assemble(&g, &g.total_a()))
}

/// `dim exal(A, M) = dim H_a^2(A, M)`.
pub fn exal_presheaf(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf) -> Result<usize> {
    Ok(h_a(site, a, m, 2)?.dim)
}

/// The image of the class of `b` in `Ext^2`, in representative coordinates.
pub fn rho(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, b: &PresheafExtension) -> Result<Vec<Scalar>> {
    let g = gs3(site, a, m)?;
    let t = g.total();
    let z = presheaf_extension_to_cocycle(site, b, &b.canonical_sections())?;
    let v = z.assemble(&g, &t);
    let h = t.complex.cohomology(2)?;
    h.class_of(&v).ok_or_else(|| Error::Invariant("extension cocycle is not closed in the total complex".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Bimodule};
    use crate::hochschild::{hh, is_split};
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    fn vee() -> FiniteSite {
        FiniteSite::new(vec!["U".into(), "V".into(), "W".into()], &[(2, 0), (2, 1)]).unwrap()
    }

    #[test]
    fn split_extension_gives_zero() {
        let s = vee();
        let t = Algebra::upper_triangular(Q, 2);
        let ap = AlgebraPresheaf::constant(&s, &t);
        let mp = BimodulePresheaf::regular(&ap);
        let b = PresheafExtension::split(&s, &ap, &mp);
        let z = presheaf_extension_to_cocycle(&s, &b, &b.canonical_sections()).unwrap();
        assert!(z.z02.iter().chain(&z.z11).flatten().all(Scalar::is_zero));
        assert!(rho(&s, &ap, &mp, &b).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn derivation_twist_round_trips() {
        // Only Z^{1,1} nonzero: the derivation x -> x of the dual numbers on the pair (U, W).
        let s = FiniteSite::new(vec!["U".into(), "W".into()], &[(1, 0)]).unwrap();
        let l = Algebra::dual_numbers(Q);
        let ap = AlgebraPresheaf::constant(&s, &l);
        let mp = BimodulePresheaf::regular(&ap);
        let g = GsComplex::new(&s, &ap, &mp, 3, 3).unwrap();
        let ta = g.total_a();
        let z = TwoCochain {
            z02: vec![vec![Q.zero(); 8], vec![Q.zero(); 8]],
            z11: vec![vec![Q.zero(), Q.zero(), Q.zero(), Q.one()]],
        };
        let v = z.assemble(&g, &ta);
        let b = cocycle_to_presheaf_extension(&s, &ap, &mp, &v).unwrap();
        let back = presheaf_extension_to_cocycle(&s, &b, &b.canonical_sections()).unwrap();
        assert_eq!(back, z);
        assert_eq!(extension_class_vector(&s, &ap, &mp, &b).unwrap(), v);
    }

    #[test]
    fn one_object_site_matches_single_algebra() {
        let s = FiniteSite::point();
        let l = Algebra::dual_numbers(Q);
        let r = Bimodule::regular(&l);
        let ap = AlgebraPresheaf::constant(&s, &l);
        let mp = BimodulePresheaf::constant(&s, &ap, &r).unwrap();
        let z = hh(&l, &r, 2).unwrap().representatives[0].clone();
        let b = cocycle_to_presheaf_extension(&s, &ap, &mp, &z).unwrap();
        assert_eq!(b.extension(0), &cocycle_to_extension(&l, &r, &z).unwrap());
        assert!(is_split(b.extension(0)).is_none());
        assert_eq!(exal_presheaf(&s, &ap, &mp).unwrap(), 1);
    }

    #[test]
    fn non_cocycle_is_refused() {
        let s = FiniteSite::new(vec!["U".into(), "W".into()], &[(1, 0)]).unwrap();
        let l = Algebra::dual_numbers(Q);
        let ap = AlgebraPresheaf::constant(&s, &l);
        let mp = BimodulePresheaf::regular(&ap);
        let g = GsComplex::new(&s, &ap, &mp, 3, 3).unwrap();
        let ta = g.total_a();
        // x -> 1 is not a derivation
        let z = TwoCochain { z02: vec![vec![Q.zero(); 8], vec![Q.zero(); 8]], z11: vec![vec![Q.zero(), Q.zero(), Q.one(), Q.zero()]] };
        assert!(matches!(cocycle_to_presheaf_extension(&s, &ap, &mp, &z.assemble(&g, &ta)), Err(Error::NotCocycle(_))));
    }
}
