//! Differential operators on finite-dimensional algebras and modules, and the comparison map
//! `γ: gr D(B) -> D(gr B)` for algebras over `k_n`.
//!
//! Operators `M -> N` are `dim(N) x dim(M)` matrices, flattened row-major.

use crate::algebra::{check_algebra_hom, Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::hochschild::{defn_reduce, is_split, KnAlgebra};
use crate::linalg::{Field, Matrix, Scalar, Subspace};

pub fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.to_rows().into_iter().flatten().collect()
}

pub fn unflatten(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
    Matrix::from_fn(field, rows, cols, |r, c| v[r * cols + c].clone())
}

/// Order cap used when none is given: `2 dim(C)^2`.
pub fn default_order_cap(dim: usize) -> usize {
    2 * dim * dim
}

/// `D^0 ⊆ D^1 ⊆ ...` inside an ambient space of operators.
#[derive(Clone, Debug)]
pub struct DiffOpFiltration {
    pub rows: usize,
    pub cols: usize,
    orders: Vec<Subspace>,
    stabilized: bool,
}

impl DiffOpFiltration {
    /// `dim D^m` for each computed order.
    pub fn dims(&self) -> Vec<usize> {
        self.orders.iter().map(Subspace::dim).collect()
    }

    /// `D^m`; past the last computed order this is the last one, exact when stabilized.
    pub fn order(&self, m: usize) -> &Subspace {
        &self.orders[m.min(self.orders.len() - 1)]
    }

    pub fn union(&self) -> &Subspace {
        self.orders.last().expect("at least D^0")
    }

    pub fn is_stabilized(&self) -> bool {
        self.stabilized
    }

    /// First order `m` with `D^m = D^{m+1}`.
    pub fn stabilized_at(&self) -> Option<usize> {
        if !self.stabilized {
            return None;
        }
        Some(self.orders.len().saturating_sub(2))
    }

    /// Least `m` with `op ∈ D^m`.
    pub fn order_of(&self, op: &Matrix) -> Option<usize> {
        let v = flatten(op);
        self.orders.iter().position(|s| s.contains(&v))
    }

    pub fn basis_operators(&self, field: Field) -> Vec<Matrix> {
        self.union().basis().iter().map(|v| unflatten(field, self.rows, self.cols, v)).collect()
    }
}

/// `f -> [f, d] = L_f d - d L_f` on flattened operators `M -> N`.
fn commutator_matrix(on_m: &Matrix, on_n: &Matrix) -> Matrix {
    let field = on_m.field();
    let left = on_n.kron(&Matrix::identity(field, on_m.rows()));
    let right = Matrix::identity(field, on_n.rows()).kron(&on_m.transpose());
    left.sub(&right)
}

/// Linear forms cutting out `s`.
fn annihilator(s: &Subspace) -> Matrix {
    let field = s.field();
    let n = s.ambient();
    if s.dim() == 0 {
        return Matrix::identity(field, n);
    }
    let b = Matrix::from_rows(field, n, s.basis().to_vec()).expect("basis rows");
    let ann = b.kernel_basis();
    Matrix::from_rows(field, n, ann).expect("kernel rows")
}

/// The filtration for actions `acts_m[i]`, `acts_n[i]` of spanning elements `f_i` of `C` on `M`
/// and `N`, inside `ambient`. Stops at stabilization or after `cap` orders.
pub fn diffops_with(acts_m: &[Matrix], acts_n: &[Matrix], ambient: &Subspace, cap: usize) -> DiffOpFiltration {
    assert_eq!(acts_m.len(), acts_n.len(), "one action per generator on each side");
    let field = ambient.field();
    let (rows, cols) = match (acts_n.first(), acts_m.first()) {
        (Some(n), Some(m)) => (n.rows(), m.rows()),
        _ => {
            let side = (ambient.ambient() as f64).sqrt() as usize;
            (side, side)
        }
    };
    let p = Matrix::from_columns(field, ambient.ambient(), ambient.basis());
    let ads: Vec<Matrix> = acts_m.iter().zip(acts_n).map(|(m, n)| commutator_matrix(m, n).mul(&p)).collect();
    let mut orders: Vec<Subspace> = Vec::new();
    let mut prev = Subspace::zero(field, ambient.ambient());
    let mut stabilized = false;
    for _ in 0..=cap {
        let ann = annihilator(&prev);
        let parts: Vec<Matrix> = ads.iter().map(|ad| ann.mul(ad)).collect();
        let stacked = Matrix::vstack(field, p.cols(), &parts.iter().collect::<Vec<_>>());
        let next = if ads.is_empty() {
            ambient.clone()
        } else {
            let ker = stacked.kernel_basis();
            Subspace::spanned_by(field, ambient.ambient(), &ker.iter().map(|x| p.mul_vec(x)).collect::<Vec<_>>())
        };
        let same = orders.last().is_some_and(|l: &Subspace| l.dim() == next.dim());
        prev = next.clone();
        orders.push(next);
        if same {
            stabilized = true;
            break;
        }
    }
    DiffOpFiltration { rows, cols, orders, stabilized }
}

/// `D^m(M, N)` for left `C`-modules given as bimodules (only left actions are used), with all
/// `k`-linear maps as ambient.
pub fn diffops(c: &Algebra, m: &Bimodule, n: &Bimodule, cap: usize) -> DiffOpFiltration {
    let ambient = Subspace::full(c.field(), m.dim() * n.dim());
    diffops_with(m.lefts(), n.lefts(), &ambient, cap)
}

/// `D(C) = D(C, C)` for the left regular module.
pub fn diffops_algebra(c: &Algebra, cap: usize) -> DiffOpFiltration {
    let acts: Vec<Matrix> = (0..c.dim()).map(|i| c.left_basis(i)).collect();
    diffops_with(&acts, &acts, &Subspace::full(c.field(), c.dim() * c.dim()), cap)
}

/// `End_{k_n}(B)`: operators commuting with `t`.
pub fn kn_endomorphisms(b: &KnAlgebra) -> Subspace {
    let t = b.t_matrix();
    let field = t.field();
    let ker = commutator_matrix(&t, &t).kernel_basis();
    Subspace::spanned_by(field, t.rows() * t.rows(), &ker)
}

/// `D(B)` of a `k_n`-algebra, inside `End_{k_n}(B)`.
pub fn diffops_kn(b: &KnAlgebra, cap: usize) -> DiffOpFiltration {
    let c = b.total();
    let acts: Vec<Matrix> = (0..c.dim()).map(|i| c.left_basis(i)).collect();
    diffops_with(&acts, &acts, &kn_endomorphisms(b), cap)
}

/// `dim_k D^m(A (x) k_n)` against `(n + 1) dim_k D^m(A)` order by order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnCompat {
    pub base: Vec<usize>,
    pub lifted: Vec<usize>,
    pub factor: usize,
    pub pass: Vec<bool>,
    pub stabilized: bool,
}

impl KnCompat {
    pub fn ok(&self) -> bool {
        self.stabilized && self.pass.iter().all(|&p| p)
    }
}

pub fn kn_compat_check(a: &Algebra, n: usize, cap: usize) -> KnCompat {
    let base = diffops_algebra(a, cap);
    let lifted = diffops_kn(&KnAlgebra::trivial(a, n), cap);
    let (bd, ld) = (base.dims(), lifted.dims());
    let len = bd.len().max(ld.len());
    let at = |v: &[usize], m: usize| v[m.min(v.len() - 1)];
    let base: Vec<usize> = (0..len).map(|m| at(&bd, m)).collect();
    let lifted_dims: Vec<usize> = (0..len).map(|m| at(&ld, m)).collect();
    let pass = base.iter().zip(&lifted_dims).map(|(x, y)| (n + 1) * x == *y).collect();
    KnCompat { base, lifted: lifted_dims, factor: n + 1, pass, stabilized: lifted.is_stabilized() }
}

/// `γ: gr D(B) -> D(gr B)`, degree by degree in `t`.
#[derive(Clone, Debug)]
pub struct GradedDiffMap {
    pub order: usize,
    /// `dim t^p D(B) / t^{p+1} D(B)`.
    pub source_dims: Vec<usize>,
    /// `dim` of the degree-`p` part of `D(gr B)`.
    pub target_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    /// Whether the image lies in `D(gr B)` in every degree.
    pub lands_in_target: bool,
    pub stabilized: bool,
    /// `D(B)` as flattened `k_n`-linear operators on `B`.
    pub source: Subspace,
    /// `D(A)` as flattened operators on `A`.
    pub base: Subspace,
}

/// The coefficient of `t^p` of a `k_n`-linear operator on `B` in adapted coordinates.
fn leading_block(field: Field, d: usize, big: usize, p: usize, v: &[Scalar]) -> Vec<Scalar> {
    let op = unflatten(field, big, big, v);
    flatten(&op.block(p * d, 0, d, d))
}

/// `g (x) t^p` as an operator on `A (x) k_n`.
fn spread(field: Field, d: usize, n: usize, p: usize, g: &Matrix) -> Matrix {
    let big = d * (n + 1);
    let mut out = Matrix::zeros(field, big, big);
    for r in 0..=n {
        if r + p <= n {
            out.add_block((r + p) * d, r * d, g);
        }
    }
    out
}

pub fn gamma(b: &KnAlgebra, cap: usize) -> GradedDiffMap {
    let field = b.total().field();
    let n = b.order();
    let d = b.reference().dim();
    let big = b.total().dim();
    let t = b.t_matrix();
    let db = diffops_kn(b, cap);
    let gr = diffops_kn(&KnAlgebra::trivial(b.reference(), n), cap);
    let base = diffops_algebra(b.reference(), cap);
    let source = db.union().clone();
    let gr_ann = annihilator(gr.union());
    let tl = t.kron(&Matrix::identity(field, big));
    let mut layers = vec![source.clone()];
    for p in 1..=n + 1 {
        let prev = &layers[p - 1];
        let next: Vec<Vec<Scalar>> = prev.basis().iter().map(|v| tl.mul_vec(v)).collect();
        layers.push(Subspace::spanned_by(field, big * big, &next));
    }
    let mut source_dims = Vec::with_capacity(n + 1);
    let mut target_dims = Vec::with_capacity(n + 1);
    let mut ranks = Vec::with_capacity(n + 1);
    let mut lands = true;
    for p in 0..=n {
        source_dims.push(layers[p].dim() - layers[p + 1].dim());
        let images: Vec<Vec<Scalar>> = layers[p].basis().iter().map(|v| leading_block(field, d, big, p, v)).collect();
        let image = Subspace::spanned_by(field, d * d, &images);
        ranks.push(image.dim());
        let embed: Vec<Vec<Scalar>> = (0..d * d)
            .map(|k| {
                let mut e = vec![field.zero(); d * d];
                e[k] = field.one();
                flatten(&spread(field, d, n, p, &unflatten(field, d, d, &e)))
            })
            .collect();
        let emb = Matrix::from_columns(field, big * big, &embed);
        let target = Subspace::spanned_by(field, d * d, &gr_ann.mul(&emb).kernel_basis());
        target_dims.push(target.dim());
        lands &= target.contains_subspace(&image);
    }
    GradedDiffMap {
        order: n,
        source_dims,
        target_dims,
        ranks,
        lands_in_target: lands,
        stabilized: db.is_stabilized() && gr.is_stabilized() && base.is_stabilized(),
        source,
        base: base.union().clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaClass {
    Iso,
    Neither,
    /// Injective or surjective but not both.
    OneSided { injective: bool, surjective: bool },
    Inconclusive,
}

impl GradedDiffMap {
    pub fn injective(&self) -> bool {
        self.ranks == self.source_dims
    }

    pub fn surjective(&self) -> bool {
        self.ranks == self.target_dims
    }
}

pub fn gamma_iso_check(g: &GradedDiffMap) -> GammaClass {
    if !g.stabilized || !g.lands_in_target {
        return GammaClass::Inconclusive;
    }
    match (g.injective(), g.surjective()) {
        (true, true) => GammaClass::Iso,
        (false, false) => GammaClass::Neither,
        (injective, surjective) => GammaClass::OneSided { injective, surjective },
    }
}

/// `D(B)` as an order-`n` algebra over `D(A)`.
#[derive(Clone, Debug)]
pub struct InducedDeformation {
    pub algebra: KnAlgebra,
    /// Basis of `D(A)` as operators on `A`, matching the reference coordinates.
    pub base_operators: Vec<Matrix>,
    /// Adapted basis `t^s x_j` of `D(B)` as operators on `B`.
    pub operators: Vec<Matrix>,
}

fn operator_algebra(field: Field, ops: &[Matrix], prefix: &str) -> Result<Algebra> {
    let size = ops[0].rows();
    let basis = Matrix::from_columns(field, size * size, &ops.iter().map(flatten).collect::<Vec<_>>());
    let coords = |m: &Matrix| {
        basis.solve(&flatten(m)).ok_or_else(|| Error::Invariant("operator space is not closed under composition".into()))
    };
    let mut products = Vec::with_capacity(ops.len() * ops.len());
    for x in ops {
        for y in ops {
            products.push(coords(&x.mul(y))?);
        }
    }
    let unit = coords(&Matrix::identity(field, size))?;
    let labels = (0..ops.len()).map(|i| format!("{prefix}{i}")).collect();
    Algebra::new(field, labels, products, unit)
}

/// `D(A)` as an abstract algebra with its operator basis.
pub fn diffop_algebra(a: &Algebra, cap: usize) -> Result<(Algebra, Vec<Matrix>)> {
    let f = diffops_algebra(a, cap);
    if !f.is_stabilized() {
        return Err(Error::CapExceeded { what: "differential operator order".into(), needed: cap + 1, cap });
    }
    let ops = f.basis_operators(a.field());
    Ok((operator_algebra(a.field(), &ops, "D")?, ops))
}

pub fn induced_deformation(b: &KnAlgebra, cap: usize) -> Result<InducedDeformation> {
    let g = gamma(b, cap);
    if gamma_iso_check(&g) != GammaClass::Iso {
        return Err(Error::Precondition("B does not induce a deformation".into()));
    }
    let field = b.total().field();
    let n = b.order();
    let d = b.reference().dim();
    let big = b.total().dim();
    let (da, base_ops) = diffop_algebra(b.reference(), cap)?;
    let lead0 = Matrix::from_columns(
        field,
        d * d,
        &g.source.basis().iter().map(|v| leading_block(field, d, big, 0, v)).collect::<Vec<_>>(),
    );
    let src = Matrix::from_columns(field, big * big, g.source.basis());
    let t = b.t_matrix();
    let mut lifts = Vec::with_capacity(base_ops.len());
    for op in &base_ops {
        let x = lead0.solve(&flatten(op)).ok_or_else(|| Error::Invariant("γ is onto but an operator has no lift".into()))?;
        lifts.push(unflatten(field, big, big, &src.mul_vec(&x)));
    }
    let mut ops = Vec::with_capacity((n + 1) * lifts.len());
    let mut tp = Matrix::identity(field, big);
    for _ in 0..=n {
        ops.extend(lifts.iter().map(|x| tp.mul(x)));
        tp = t.mul(&tp);
    }
    let total = operator_algebra(field, &ops, "x")?;
    let labels: Vec<String> = (0..=n)
        .flat_map(|s| (0..lifts.len()).map(move |j| if s == 0 { format!("D{j}") } else { format!("t^{s}*D{j}") }))
        .collect();
    let total = Algebra::new(field, labels, total.products(), total.unit().to_vec())?;
    let algebra = KnAlgebra::new(da, n, total)?;
    Ok(InducedDeformation { algebra, base_operators: base_ops, operators: ops })
}

/// An algebra splitting `D(A) -> D(B)` when one is found without search: the inclusion for a
/// literally trivial induced algebra, or a solved section at order 1.
pub fn splitting(ind: &InducedDeformation) -> Option<Matrix> {
    let kn = &ind.algebra;
    let da = kn.reference().dim();
    let field = kn.total().field();
    if kn.order() == 0 || kn.is_literally_trivial() {
        let mut s = Matrix::zeros(field, kn.total().dim(), da);
        s.add_block(0, 0, &Matrix::identity(field, da));
        return Some(s);
    }
    if kn.order() == 1 {
        return defn_reduce(kn).ok().and_then(|e| is_split(&e));
    }
    None
}

/// Checks of the left `A`-module structure on `B` through a splitting `s`.
#[derive(Clone, Debug)]
pub struct FreenessReport {
    pub splitting_is_hom: bool,
    /// `β(s(a) b) = a β(b)` for the residue `β: B -> A`.
    pub residue_linear: bool,
    /// Columns `t^s α(e_i)` with `α(a) = s(a) 1_B`.
    pub freeness_matrix: Matrix,
    pub determinant: Scalar,
}

impl FreenessReport {
    pub fn free(&self) -> bool {
        self.splitting_is_hom && self.residue_linear && !self.determinant.is_zero()
    }
}

/// `s(L_a)` as operators on `B` for each basis element `a` of `A`.
fn split_actions(b: &KnAlgebra, ind: &InducedDeformation, s: &Matrix) -> Result<Vec<Matrix>> {
    let field = b.total().field();
    let a = b.reference();
    let d = a.dim();
    let big = b.total().dim();
    let base = Matrix::from_columns(field, d * d, &ind.base_operators.iter().map(flatten).collect::<Vec<_>>());
    (0..d)
        .map(|i| {
            let coords = base
                .solve(&flatten(&a.left_basis(i)))
                .ok_or_else(|| Error::Invariant("left multiplication is not a differential operator".into()))?;
            let image = s.mul_vec(&coords);
            let mut op = Matrix::zeros(field, big, big);
            for (c, x) in image.iter().enumerate() {
                if !x.is_zero() {
                    op = op.add(&ind.operators[c].scale(x));
                }
            }
            Ok(op)
        })
        .collect()
}

pub fn freeness_check(b: &KnAlgebra, ind: &InducedDeformation, s: &Matrix) -> Result<FreenessReport> {
    let field = b.total().field();
    let a = b.reference();
    let d = a.dim();
    let n = b.order();
    let big = b.total().dim();
    let da = ind.algebra.reference().dim();
    if s.rows() != ind.algebra.total().dim() || s.cols() != da {
        return Err(Error::dim("splitting", ind.algebra.total().dim() * da, s.rows() * s.cols()));
    }
    let splitting_is_hom = check_algebra_hom(ind.algebra.reference(), ind.algebra.total(), s).is_ok()
        && s.block(0, 0, da, da).is_identity();
    let acts = split_actions(b, ind, s)?;
    let mut residue_linear = true;
    for (i, act) in acts.iter().enumerate() {
        for j in 0..big {
            let lhs = act.column(j)[..d].to_vec();
            let beta = b.total().basis_vector(j)[..d].to_vec();
            residue_linear &= lhs == a.mul(&a.basis_vector(i), &beta);
        }
    }
    let one = b.total().unit().to_vec();
    let t = b.t_matrix();
    let mut cols = Vec::with_capacity(big);
    let mut tp = Matrix::identity(field, big);
    for _ in 0..=n {
        for act in &acts {
            cols.push(tp.mul_vec(&act.mul_vec(&one)));
        }
        tp = t.mul(&tp);
    }
    let freeness_matrix = Matrix::from_columns(field, big, &cols);
    let determinant = freeness_matrix.determinant();
    Ok(FreenessReport { splitting_is_hom, residue_linear, freeness_matrix, determinant })
}

/// `D(_B B)` against `D(_{A (x) k_n} B)` inside `End_{k_n}(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingComparison {
    pub over_b: usize,
    pub over_a: usize,
    pub equal: bool,
    pub stabilized: bool,
}

pub fn diffop_ring_comparison(b: &KnAlgebra, ind: &InducedDeformation, s: &Matrix, cap: usize) -> Result<RingComparison> {
    let ambient = kn_endomorphisms(b);
    let over_b = diffops_kn(b, cap);
    let mut acts = split_actions(b, ind, s)?;
    acts.push(b.t_matrix());
    let over_a = diffops_with(&acts, &acts, &ambient, cap);
    Ok(RingComparison {
        over_b: over_b.union().dim(),
        over_a: over_a.union().dim(),
        equal: over_b.union() == over_a.union(),
        stabilized: over_b.is_stabilized() && over_a.is_stabilized(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::{cocycle_to_extension, defn_lift, hh, triviality, Triviality};

    const Q: Field = Field::Rational;

    #[test]
    fn ground_field_is_order_zero() {
        let k = Algebra::ground(Q);
        let f = diffops_algebra(&k, 4);
        assert_eq!(f.dims(), vec![1, 1]);
        assert_eq!(f.stabilized_at(), Some(0));
    }

    #[test]
    fn dual_numbers_filtration() {
        let l = Algebra::dual_numbers(Q);
        let f = diffops_algebra(&l, default_order_cap(2));
        assert_eq!(f.dims(), vec![2, 3, 4, 4]);
        assert_eq!(f.stabilized_at(), Some(2));
        for i in 0..2 {
            assert_eq!(f.order_of(&l.left_basis(i)), Some(0));
        }
    }

    #[test]
    fn matrix_algebra_is_right_multiplications() {
        // [L_f, -] has left factor in sl_2, which meets 1 (x) M_2 trivially
        let m2 = Algebra::matrix(Q, 2);
        let f = diffops_algebra(&m2, default_order_cap(4));
        assert_eq!(f.dims(), vec![4, 4]);
        for i in 0..4 {
            assert_eq!(f.order_of(&m2.right_basis(i)), Some(0));
        }
        let r = Bimodule::regular(&m2);
        assert_eq!(diffops(&m2, &r, &r, 8).dims(), f.dims());
    }

    #[test]
    fn kn_factor() {
        let k = Algebra::ground(Q);
        assert!(kn_compat_check(&k, 1, 4).ok());
        let l = Algebra::dual_numbers(Q);
        let c = kn_compat_check(&l, 1, 8);
        assert_eq!(&c.lifted[..3], &[4, 6, 8]);
        assert!(c.ok());
        assert!(kn_compat_check(&l, 2, 8).ok());
    }

    #[test]
    fn trivial_deformation_is_iso_and_induces_trivial() {
        let l = Algebra::dual_numbers(Q);
        for n in 0..=2 {
            let b = KnAlgebra::trivial(&l, n);
            let g = gamma(&b, 8);
            assert_eq!(gamma_iso_check(&g), GammaClass::Iso, "n = {n}");
            let ind = induced_deformation(&b, 8).unwrap();
            assert_eq!(ind.algebra.total().dim(), 4 * (n + 1));
            if n >= 1 {
                assert_eq!(triviality(&ind.algebra).unwrap(), Triviality::Trivial);
            }
        }
    }

    #[test]
    fn nontrivial_first_order_deformation_of_dual_numbers() {
        let l = Algebra::dual_numbers(Q);
        let r = Bimodule::regular(&l);
        let z = hh(&l, &r, 2).unwrap().representatives[0].clone();
        let b = defn_lift(&cocycle_to_extension(&l, &r, &z).unwrap(), 1).unwrap();
        let g = gamma(&b, 8);
        assert!(g.lands_in_target);
        assert!(!matches!(gamma_iso_check(&g), GammaClass::OneSided { .. }));
    }

    #[test]
    fn freeness_and_ring_comparison_for_trivial() {
        let l = Algebra::dual_numbers(Q);
        let b = KnAlgebra::trivial(&l, 1);
        let ind = induced_deformation(&b, 8).unwrap();
        let s = splitting(&ind).unwrap();
        let fr = freeness_check(&b, &ind, &s).unwrap();
        assert!(fr.free(), "{fr:?}");
        let rc = diffop_ring_comparison(&b, &ind, &s, 8).unwrap();
        assert!(rc.equal);
    }
}
