use crate::algebra::{check_algebra_hom, Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

use super::FiniteSite;

/// Vector spaces on the objects of a site with restriction maps `r_{u,v}: M(u) -> M(v)` for
/// every `v ⊆ u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPresheaf {
    field: Field,
    dims: Vec<usize>,
    restr: Vec<Vec<Option<Matrix>>>,
}

impl LinearPresheaf {
    /// `given` lists restrictions `((u, v), r_{u,v})`. Identities are implied, missing
    /// restrictions are composed from given ones, and maps into or out of a zero space are zero.
    pub fn new(site: &FiniteSite, field: Field, dims: Vec<usize>, given: Vec<((usize, usize), Matrix)>) -> Result<LinearPresheaf> {
        let n = site.len();
        if dims.len() != n {
            return Err(Error::dim("presheaf objects", n, dims.len()));
        }
        let mut restr: Vec<Vec<Option<Matrix>>> = vec![vec![None; n]; n];
        for (u, row) in restr.iter_mut().enumerate() {
            row[u] = Some(Matrix::identity(field, dims[u]));
        }
        for ((u, v), m) in given {
            if u >= n || v >= n || !site.leq(v, u) {
                return Err(Error::Invariant(format!("restriction ({u}, {v}) does not follow an inclusion")));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch { left: field, right: m.field() });
            }
            if m.rows() != dims[v] || m.cols() != dims[u] {
                return Err(Error::dim(format!("restriction {} -> {}", site.name(u), site.name(v)), dims[v] * dims[u], m.rows() * m.cols()));
            }
            if u == v && !m.is_identity() {
                return Err(Error::Invariant(format!("restriction of {} to itself is not the identity", site.name(u))));
            }
            restr[u][v] = Some(m);
        }
        loop {
            let mut changed = false;
            for u in 0..n {
                for v in 0..n {
                    if !site.lt(v, u) || restr[u][v].is_some() {
                        continue;
                    }
                    let via = (0..n).find(|&w| site.lt(v, w) && site.lt(w, u) && restr[u][w].is_some() && restr[w][v].is_some());
                    if let Some(w) = via {
                        let m = restr[w][v].as_ref().expect("known").mul(restr[u][w].as_ref().expect("known"));
                        restr[u][v] = Some(m);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for u in 0..n {
            for v in 0..n {
                if site.lt(v, u) && restr[u][v].is_none() {
                    if dims[u] == 0 || dims[v] == 0 {
                        restr[u][v] = Some(Matrix::zeros(field, dims[v], dims[u]));
                    } else {
                        return Err(Error::Invariant(format!("missing restriction {} -> {}", site.name(u), site.name(v))));
                    }
                }
            }
        }
        let p = LinearPresheaf { field, dims, restr };
        p.check_functorial(site)?;
        Ok(p)
    }

    fn check_functorial(&self, site: &FiniteSite) -> Result<()> {
        let n = site.len();
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if site.lt(w, v) && site.lt(v, u) && self.restriction(v, w).mul(self.restriction(u, v)) != *self.restriction(u, w) {
                        return Err(Error::Invariant(format!(
                            "restrictions are not functorial along {} ⊇ {} ⊇ {}",
                            site.name(u),
                            site.name(v),
                            site.name(w)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `k^dim` on every object with identity restrictions.
    pub fn constant(site: &FiniteSite, field: Field, dim: usize) -> LinearPresheaf {
        let mut given = Vec::new();
        for (v, u) in site.covering_relations() {
            given.push(((u, v), Matrix::identity(field, dim)));
        }
        LinearPresheaf::new(site, field, vec![dim; site.len()], given).expect("constant presheaf is valid")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, u: usize) -> usize {
        self.dims[u]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `r_{u,v}` for `v ⊆ u`. Panics otherwise.
    pub fn restriction(&self, u: usize, v: usize) -> &Matrix {
        self.restr[u][v].as_ref().expect("restriction along an inclusion")
    }

    /// Restrictions along covering relations, the data needed to rebuild the presheaf.
    pub fn generating_restrictions(&self, site: &FiniteSite) -> Vec<((usize, usize), Matrix)> {
        site.covering_relations().into_iter().map(|(v, u)| ((u, v), self.restriction(u, v).clone())).collect()
    }
}

/// A presheaf of algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresheaf {
    algebras: Vec<Algebra>,
    maps: LinearPresheaf,
}

impl AlgebraPresheaf {
    pub fn new(site: &FiniteSite, algebras: Vec<Algebra>, given: Vec<((usize, usize), Matrix)>) -> Result<AlgebraPresheaf> {
        let field = algebras.first().map_or(Field::Rational, Algebra::field);
        if let Some(a) = algebras.iter().find(|a| a.field() != field) {
            return Err(Error::FieldMismatch { left: field, right: a.field() });
        }
        let maps = LinearPresheaf::new(site, field, algebras.iter().map(Algebra::dim).collect(), given)?;
        for u in 0..site.len() {
            for v in 0..site.len() {
                if site.lt(v, u) {
                    check_algebra_hom(&algebras[u], &algebras[v], maps.restriction(u, v)).map_err(|e| {
                        Error::Invariant(format!("restriction {} -> {} is not an algebra homomorphism: {e}", site.name(u), site.name(v)))
                    })?;
                }
            }
        }
        Ok(AlgebraPresheaf { algebras, maps })
    }

    pub fn constant(site: &FiniteSite, a: &Algebra) -> AlgebraPresheaf {
        let maps = LinearPresheaf::constant(site, a.field(), a.dim());
        AlgebraPresheaf { algebras: vec![a.clone(); site.len()], maps }
    }

    pub fn field(&self) -> Field {
        self.maps.field()
    }

    pub fn algebra(&self, u: usize) -> &Algebra {
        &self.algebras[u]
    }

    pub fn algebras(&self) -> &[Algebra] {
        &self.algebras
    }

    pub fn restriction(&self, u: usize, v: usize) -> &Matrix {
        self.maps.restriction(u, v)
    }

    pub fn linear(&self) -> &LinearPresheaf {
        &self.maps
    }
}

/// A presheaf of bimodules over a presheaf of algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimodulePresheaf {
    modules: Vec<Bimodule>,
    maps: LinearPresheaf,
}

impl BimodulePresheaf {
    pub fn new(site: &FiniteSite, a: &AlgebraPresheaf, modules: Vec<Bimodule>, given: Vec<((usize, usize), Matrix)>) -> Result<BimodulePresheaf> {
        let field = a.field();
        if modules.len() != site.len() {
            return Err(Error::dim("bimodule presheaf objects", site.len(), modules.len()));
        }
        for (u, m) in modules.iter().enumerate() {
            if m.field() != field {
                return Err(Error::FieldMismatch { left: field, right: m.field() });
            }
            m.check(a.algebra(u)).map_err(|e| Error::Invariant(format!("bimodule on {}: {e}", site.name(u))))?;
        }
        let maps = LinearPresheaf::new(site, field, modules.iter().map(Bimodule::dim).collect(), given)?;
        for u in 0..site.len() {
            for v in 0..site.len() {
                if !site.lt(v, u) {
                    continue;
                }
                let r = maps.restriction(u, v);
                let ra = a.restriction(u, v);
                for i in 0..a.algebra(u).dim() {
                    let img = ra.column(i);
                    let left_ok = r.mul(modules[u].left(i)) == modules[v].left_action(&img).mul(r);
                    let right_ok = r.mul(modules[u].right(i)) == modules[v].right_action(&img).mul(r);
                    if !left_ok || !right_ok {
                        return Err(Error::Invariant(format!(
                            "restriction {} -> {} is not bilinear over the algebra restriction",
                            site.name(u),
                            site.name(v)
                        )));
                    }
                }
            }
        }
        Ok(BimodulePresheaf { modules, maps })
    }

    /// The same bimodule on every object with identity restrictions; needs `a` constant.
    pub fn constant(site: &FiniteSite, a: &AlgebraPresheaf, m: &Bimodule) -> Result<BimodulePresheaf> {
        let given = LinearPresheaf::constant(site, a.field(), m.dim()).generating_restrictions(site);
        BimodulePresheaf::new(site, a, vec![m.clone(); site.len()], given)
    }

    /// The regular bimodule presheaf `A`.
    pub fn regular(a: &AlgebraPresheaf) -> BimodulePresheaf {
        let modules = a.algebras().iter().map(Bimodule::regular).collect();
        BimodulePresheaf { modules, maps: a.linear().clone() }
    }

    pub fn zero(site: &FiniteSite, a: &AlgebraPresheaf) -> BimodulePresheaf {
        let modules = a.algebras().iter().map(Bimodule::zero).collect();
        let maps = LinearPresheaf::new(site, a.field(), vec![0; site.len()], vec![]).expect("zero presheaf");
        BimodulePresheaf { modules, maps }
    }

    pub fn field(&self) -> Field {
        self.maps.field()
    }

    pub fn module(&self, u: usize) -> &Bimodule {
        &self.modules[u]
    }

    pub fn modules(&self) -> &[Bimodule] {
        &self.modules
    }

    pub fn restriction(&self, u: usize, v: usize) -> &Matrix {
        self.maps.restriction(u, v)
    }

    pub fn linear(&self) -> &LinearPresheaf {
        &self.maps
    }

    pub fn is_symmetric(&self) -> bool {
        self.modules.iter().all(Bimodule::is_symmetric)
    }

    pub fn is_zero(&self) -> bool {
        self.modules.iter().all(|m| m.dim() == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn restrictions_are_composed() {
        let s = FiniteSite::new(vec!["a".into(), "b".into(), "c".into()], &[(2, 1), (1, 0)]).unwrap();
        let two = Matrix::identity(Q, 1).scale(&Q.from_i64(2));
        let p = LinearPresheaf::new(&s, Q, vec![1, 1, 1], vec![((0, 1), two.clone()), ((1, 2), two)]).unwrap();
        assert_eq!(p.restriction(0, 2)[(0, 0)], Q.from_i64(4));
    }

    #[test]
    fn non_functorial_data_is_rejected() {
        let s = FiniteSite::new(vec!["a".into(), "b".into(), "c".into()], &[(2, 1), (1, 0)]).unwrap();
        let id = Matrix::identity(Q, 1);
        let bad = LinearPresheaf::new(&s, Q, vec![1, 1, 1], vec![((0, 1), id.clone()), ((1, 2), id), ((0, 2), Matrix::zeros(Q, 1, 1))]);
        assert!(bad.is_err());
    }

    #[test]
    fn algebra_restrictions_must_be_homomorphisms() {
        let s = FiniteSite::new(vec!["U".into(), "V".into()], &[(1, 0)]).unwrap();
        let l = Algebra::dual_numbers(Q);
        let k = Algebra::ground(Q);
        let aug = Matrix::from_rows(Q, 2, vec![vec![Q.one(), Q.zero()]]).unwrap();
        let p = AlgebraPresheaf::new(&s, vec![l.clone(), k.clone()], vec![((0, 1), aug)]).unwrap();
        let m = BimodulePresheaf::regular(&p);
        assert_eq!(m.restriction(0, 1).rows(), 1);
        let bad = Matrix::from_rows(Q, 2, vec![vec![Q.one(), Q.one()]]).unwrap();
        assert!(AlgebraPresheaf::new(&s, vec![l, k], vec![((0, 1), bad)]).is_err());
    }
}
