//! Seeded random instances: algebras with characters, bimodules, posets and presheaves.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Algebra, Bimodule};
use crate::hochschild::{cocycle_to_extension, defn_lift, hochschild_differential, KnAlgebra};
use crate::linalg::{Field, Matrix, Scalar};
use crate::site::{AlgebraPresheaf, BimodulePresheaf, FiniteSite};

/// An algebra with some of its characters `A -> k`, as row vectors in its basis.
#[derive(Clone, Debug)]
pub struct AlgebraSample {
    pub name: String,
    pub algebra: Algebra,
    pub characters: Vec<Vec<Scalar>>,
}

impl AlgebraSample {
    /// The same algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> AlgebraSample {
        let algebra = self.algebra.change_basis(p).expect("invertible basis change");
        let characters = self
            .characters
            .iter()
            .map(|chi| p.transpose().mul_vec(chi))
            .collect();
        AlgebraSample { name: self.name.clone(), algebra, characters }
    }
}

fn ints(field: Field, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| field.from_i64(x)).collect()
}

/// `k`, `k x k`, `k[x]/(x^2)`, `k[x]/(x^3)`, `k^3`, `k x k[x]/(x^2)`, upper triangular `2 x 2`
/// and `k[x, y]/(x, y)^2`, in their standard bases.
pub fn pool(field: Field) -> Vec<AlgebraSample> {
    let s = |name: &str, algebra: Algebra, chars: &[&[i64]]| AlgebraSample {
        name: name.into(),
        algebra,
        characters: chars.iter().map(|c| ints(field, c)).collect(),
    };
    let k = Algebra::ground(field);
    let l = Algebra::dual_numbers(field);
    vec![
        s("k", k.clone(), &[&[1]]),
        s("k x k", Algebra::diagonal(field, 2), &[&[1, 0], &[0, 1]]),
        s("dual numbers", l.clone(), &[&[1, 0]]),
        s("k[x]/(x^3)", Algebra::truncated_poly(field, 3), &[&[1, 0, 0]]),
        s("k^3", Algebra::diagonal(field, 3), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        s("k x dual numbers", k.direct_product(&l).expect("same field"), &[&[1, 0, 0], &[0, 1, 0]]),
        s("triangular", Algebra::upper_triangular(field, 2), &[&[1, 0, 0], &[0, 0, 1]]),
        s("k[x,y]/(x,y)^2", Algebra::square_zero(field, 2), &[&[1, 0, 0]]),
    ]
}

pub fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    field.from_i64(rng.gen_range(-2..=2))
}

pub fn random_vector<R: Rng>(field: Field, n: usize, rng: &mut R) -> Vec<Scalar> {
    (0..n).map(|_| random_scalar(field, rng)).collect()
}

pub fn random_invertible<R: Rng>(field: Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = Matrix::from_fn(field, n, n, |_, _| random_scalar(field, rng));
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// A pool algebra of dimension at most `max_dim` in a random basis.
pub fn random_algebra<R: Rng>(field: Field, max_dim: usize, rng: &mut R) -> AlgebraSample {
    let candidates: Vec<AlgebraSample> = pool(field).into_iter().filter(|s| s.algebra.dim() <= max_dim).collect();
    let s = candidates.choose(rng).expect("k has dimension 1").clone();
    let p = random_invertible(field, s.algebra.dim(), rng);
    s.change_basis(&p)
}

/// The regular, zero or a two-character bimodule.
pub fn random_bimodule<R: Rng>(s: &AlgebraSample, rng: &mut R) -> Bimodule {
    match rng.gen_range(0..3) {
        0 => Bimodule::regular(&s.algebra),
        1 => Bimodule::zero(&s.algebra),
        _ => {
            let chi = s.characters.choose(rng).expect("at least one character");
            let psi = s.characters.choose(rng).expect("at least one character");
            Bimodule::characters(&s.algebra, chi, psi).expect("characters are algebra maps")
        }
    }
}

/// A random poset on `n` objects, extending the order `u < v` for `v` listed before `u`;
/// object 0 contains everything when `final_object` is set.
pub fn random_site<R: Rng>(n: usize, final_object: bool, rng: &mut R) -> FiniteSite {
    let names = (0..n).map(|i| format!("U{i}")).collect();
    let mut rel = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (final_object && u == 0) || rng.gen_bool(0.4) {
                rel.push((v, u));
            }
        }
    }
    FiniteSite::new(names, &rel).expect("relations follow a linear order")
}

#[derive(Clone, Debug)]
pub struct PresheafSample {
    pub description: String,
    pub site: FiniteSite,
    pub algebras: AlgebraPresheaf,
    pub modules: BimodulePresheaf,
}

fn closure(site: &FiniteSite, seeds: &[usize], downward: bool) -> Vec<bool> {
    (0..site.len())
        .map(|u| seeds.iter().any(|&s| if downward { site.leq(u, s) } else { site.leq(s, u) }))
        .collect()
}

/// A presheaf of algebras and bimodules on `site`: either a constant algebra with a bimodule
/// supported on a down-set or up-set, or `A x k` on an up-set restricting to `A` below it,
/// with regular coefficients.
pub fn random_presheaf_on<R: Rng>(site: FiniteSite, field: Field, max_dim: usize, rng: &mut R) -> PresheafSample {
    let n = site.len();
    let seeds: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if rng.gen_bool(0.25) && max_dim >= 2 {
        let s = random_algebra(field, max_dim - 1, rng);
        let big = s.algebra.direct_product(&Algebra::ground(field)).expect("same field");
        let up = closure(&site, &seeds, false);
        let algebras: Vec<Algebra> = (0..n).map(|u| if up[u] { big.clone() } else { s.algebra.clone() }).collect();
        let d = s.algebra.dim();
        let proj = Matrix::from_fn(field, d, d + 1, |r, c| if r == c { field.one() } else { field.zero() });
        let given = site
            .covering_relations()
            .into_iter()
            .map(|(v, u)| {
                let m = match (up[u], up[v]) {
                    (true, false) => proj.clone(),
                    (x, _) => Matrix::identity(field, if x { d + 1 } else { d }),
                };
                ((u, v), m)
            })
            .collect();
        let ap = AlgebraPresheaf::new(&site, algebras, given).expect("projections are algebra maps");
        let mp = BimodulePresheaf::regular(&ap);
        let description = format!("{} x k on an up-set over {} objects", s.name, n);
        return PresheafSample { description, site, algebras: ap, modules: mp };
    }
    let s = random_algebra(field, max_dim, rng);
    let ap = AlgebraPresheaf::constant(&site, &s.algebra);
    let m0 = random_bimodule(&s, rng);
    let support = match rng.gen_range(0..3) {
        0 => vec![true; n],
        1 => closure(&site, &seeds, true),
        _ => closure(&site, &seeds, false),
    };
    let zero = Bimodule::zero(&s.algebra);
    let modules: Vec<Bimodule> = support.iter().map(|&x| if x { m0.clone() } else { zero.clone() }).collect();
    let given = site
        .covering_relations()
        .into_iter()
        .filter(|&(v, u)| support[u] && support[v])
        .map(|(v, u)| ((u, v), Matrix::identity(field, m0.dim())))
        .collect();
    let mp = BimodulePresheaf::new(&site, &ap, modules, given).expect("identities on a convex support");
    let description = format!("{} with a {}-dimensional bimodule over {} objects", s.name, m0.dim(), n);
    PresheafSample { description, site, algebras: ap, modules: mp }
}

pub fn random_presheaf<R: Rng>(field: Field, max_objects: usize, max_dim: usize, final_object: bool, rng: &mut R) -> PresheafSample {
    let n = rng.gen_range(1..=max_objects);
    let site = random_site(n, final_object, rng);
    random_presheaf_on(site, field, max_dim, rng)
}

/// A random Hochschild 2-cocycle of `A` with coefficients in `M`.
pub fn random_2_cocycle<R: Rng>(a: &Algebra, m: &Bimodule, rng: &mut R) -> Vec<Scalar> {
    let field = a.field();
    let basis = hochschild_differential(a, m, 2).kernel_basis();
    let mut z = vec![field.zero(); a.dim() * a.dim() * m.dim()];
    for b in &basis {
        let c = random_scalar(field, rng);
        for (x, y) in z.iter_mut().zip(b) {
            *x += &(&c * y);
        }
    }
    z
}

/// The first-order deformation `mu + t z` for a random 2-cocycle `z`.
pub fn random_first_order<R: Rng>(a: &Algebra, rng: &mut R) -> KnAlgebra {
    let r = Bimodule::regular(a);
    let z = random_2_cocycle(a, &r, rng);
    let e = cocycle_to_extension(a, &r, &z).expect("cocycle");
    defn_lift(&e, 1).expect("regular coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_algebra_hom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pool_characters_are_algebra_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [Field::Rational, Field::Prime(3)] {
            for s in pool(field) {
                let p = random_invertible(field, s.algebra.dim(), &mut rng);
                let t = s.change_basis(&p);
                for chi in &t.characters {
                    let m = Matrix::from_rows(field, t.algebra.dim(), vec![chi.clone()]).unwrap();
                    check_algebra_hom(&t.algebra, &Algebra::ground(field), &m).unwrap();
                }
            }
        }
    }

    #[test]
    fn presheaves_build() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let p = random_presheaf(Field::Rational, 4, 3, rng.gen_bool(0.5), &mut rng);
            assert_eq!(p.modules.modules().len(), p.site.len());
        }
    }

    #[test]
    fn first_order_deformations_reduce() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = Algebra::dual_numbers(Field::Rational);
        for _ in 0..5 {
            assert_eq!(random_first_order(&l, &mut rng).order(), 1);
        }
    }
}
