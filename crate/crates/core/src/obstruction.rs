//! Čech-side obstruction maps for presheaf extensions: the gluing construction `ε`, and the
//! edge maps `α₁` (local classes), `α₂` (outer derivations on pairwise overlaps) and `α₃`
//! (central Čech 2-cocycles).

use crate::algebra::Bimodule;
use crate::error::{Error, Result};
use crate::gs::{les_maps, presheaf_extension_to_cocycle, GsComplex, PresheafExtension};
use crate::hochschild::{
    center, cochain1_to_matrix, derivations, extension_to_cocycle, hh, hochschild_differential, is_split,
    matrix_to_cochain1, ExtensionDatum,
};
use crate::linalg::{Field, Matrix, Scalar, Subspace};
use crate::site::{AlgebraPresheaf, BimodulePresheaf, FiniteSite};

/// Cover members of `site`, or a precondition error.
pub fn cover_of(site: &FiniteSite) -> Result<Vec<usize>> {
    site.cover().map(<[usize]>::to_vec).ok_or_else(|| Error::Precondition("site has no cover".into()))
}

fn pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect()
}

fn triples(k: usize) -> Vec<(usize, usize, usize)> {
    (0..k).flat_map(|i| (i + 1..k).flat_map(move |j| (j + 1..k).map(move |l| (i, j, l)))).collect()
}

/// Alternating Čech 1-cochain on the cover: `m_{ij} ∈ M(U_i ∩ U_j)` for `i < j`, indexed by
/// positions in the cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCochain {
    cover: Vec<usize>,
    meets: Vec<usize>,
    values: Vec<Vec<Scalar>>,
}

impl CechCochain {
    /// `entries` lists `((i, j), m_ij)` with `i < j`; missing pairs are zero.
    pub fn new(site: &FiniteSite, m: &BimodulePresheaf, entries: Vec<((usize, usize), Vec<Scalar>)>) -> Result<CechCochain> {
        let cover = cover_of(site)?;
        let ps = pairs(cover.len());
        let meets = ps.iter().map(|&(i, j)| site.meet_all(&[cover[i], cover[j]])).collect::<Result<Vec<_>>>()?;
        let mut values: Vec<Vec<Scalar>> = meets.iter().map(|&w| vec![m.field().zero(); m.module(w).dim()]).collect();
        for ((i, j), v) in entries {
            let k = ps
                .iter()
                .position(|&p| p == (i, j))
                .ok_or_else(|| Error::Invariant(format!("cover pair ({i}, {j}) is not increasing or out of range")))?;
            if v.len() != values[k].len() {
                return Err(Error::dim(format!("m_{i}{j}"), values[k].len(), v.len()));
            }
            values[k] = v;
        }
        Ok(CechCochain { cover, meets, values })
    }

    pub fn zero(site: &FiniteSite, m: &BimodulePresheaf) -> Result<CechCochain> {
        CechCochain::new(site, m, Vec::new())
    }

    pub fn cover(&self) -> &[usize] {
        &self.cover
    }

    /// `m_{ij}` restricted to `v ⊆ U_i ∩ U_j`, with `m_{ji} = -m_{ij}` and `m_{ii} = 0`.
    pub fn value_on(&self, m: &BimodulePresheaf, i: usize, j: usize, v: usize) -> Vec<Scalar> {
        let field = m.field();
        if i == j {
            return vec![field.zero(); m.module(v).dim()];
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let k = pairs(self.cover.len()).iter().position(|&p| p == (lo, hi)).expect("pair");
        let r = m.restriction(self.meets[k], v).mul_vec(&self.values[k]);
        if i < j {
            r
        } else {
            r.into_iter().map(|x| -x).collect()
        }
    }

    /// `r(m_jk) - r(m_ik) + r(m_ij)` on each triple intersection.
    pub fn coboundary(&self, site: &FiniteSite, m: &BimodulePresheaf) -> Result<Vec<((usize, usize, usize), usize, Vec<Scalar>)>> {
        let mut out = Vec::new();
        for (i, j, l) in triples(self.cover.len()) {
            let w = site.meet_all(&[self.cover[i], self.cover[j], self.cover[l]])?;
            let mut v = self.value_on(m, j, l, w);
            for (x, y) in v.iter_mut().zip(self.value_on(m, i, l, w)) {
                *x -= &y;
            }
            for (x, y) in v.iter_mut().zip(self.value_on(m, i, j, w)) {
                *x += &y;
            }
            out.push(((i, j, l), w, v));
        }
        Ok(out)
    }

    pub fn is_cocycle(&self, site: &FiniteSite, m: &BimodulePresheaf) -> Result<bool> {
        Ok(self.coboundary(site, m)?.iter().all(|(_, _, v)| v.iter().all(Scalar::is_zero)))
    }
}

/// `ad_v`, the inner derivation `a -> a v - v a`, as a `dim(M) x dim(A)` matrix.
fn inner_matrix(m: &Bimodule, v: &[Scalar]) -> Matrix {
    let field = m.field();
    let cols: Vec<Vec<Scalar>> = (0..m.base_dim())
        .map(|b| {
            let l = m.left(b).mul_vec(v);
            let r = m.right(b).mul_vec(v);
            l.into_iter().zip(r).map(|(x, y)| &x - &y).collect()
        })
        .collect();
    Matrix::from_columns(field, m.dim(), &cols)
}

/// The first cover member containing `u`.
fn chart(site: &FiniteSite, cover: &[usize], u: usize) -> Result<usize> {
    cover
        .iter()
        .position(|&c| site.leq(u, c))
        .ok_or_else(|| Error::Precondition(format!("object {} lies in no cover member", site.name(u))))
}

/// Componentwise split extension whose restriction `U -> V` is
/// `(a, m) -> (r a, r m + D_{U,V}(r a))` for the given twists `D_{U,V}: A(V) -> M(V)`; missing
/// pairs are composed, so twists on covering relations suffice.
pub fn twisted_split(
    site: &FiniteSite,
    a: &AlgebraPresheaf,
    m: &BimodulePresheaf,
    twists: Vec<((usize, usize), Matrix)>,
) -> Result<PresheafExtension> {
    let field = a.field();
    let exts: Vec<ExtensionDatum> = (0..site.len()).map(|u| ExtensionDatum::split(a.algebra(u), m.module(u))).collect();
    let mut given = Vec::new();
    for ((u, v), d) in twists {
        if u >= site.len() || v >= site.len() || !site.lt(v, u) {
            return Err(Error::Invariant(format!("twist ({u}, {v}) does not follow a strict inclusion")));
        }
        let (nu, nv) = (a.algebra(u).dim(), a.algebra(v).dim());
        let (mu, mv) = (m.module(u).dim(), m.module(v).dim());
        if d.rows() != mv || d.cols() != nv {
            return Err(Error::dim("twist", mv * nv, d.rows() * d.cols()));
        }
        let mut r = Matrix::zeros(field, nv + mv, nu + mu);
        r.add_block(0, 0, a.restriction(u, v));
        r.add_block(nv, nu, m.restriction(u, v));
        r.add_block(nv, 0, &d.mul(a.restriction(u, v)));
        given.push(((u, v), r));
    }
    for (u, v) in site.covering_relations().into_iter().map(|(v, u)| (u, v)) {
        if !given.iter().any(|((x, y), _)| (*x, *y) == (u, v)) {
            let (nu, nv) = (a.algebra(u).dim(), a.algebra(v).dim());
            let (mu, mv) = (m.module(u).dim(), m.module(v).dim());
            let mut r = Matrix::zeros(field, nv + mv, nu + mu);
            r.add_block(0, 0, a.restriction(u, v));
            r.add_block(nv, nu, m.restriction(u, v));
            given.push(((u, v), r));
        }
    }
    PresheafExtension::new(site, a, m, exts, given)
}

/// Split extensions on charts glued by the inner twists `[a, m_{c(U) c(V)}]`, where `c(U)` is
/// the first cover member containing `U`. Fails unless the result is a presheaf, which holds
/// when the Čech coboundary of `c` is central.
pub fn glue_inner(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, c: &CechCochain) -> Result<PresheafExtension> {
    let cover = c.cover();
    let mut twists = Vec::new();
    for u in 0..site.len() {
        for v in 0..site.len() {
            if !site.lt(v, u) {
                continue;
            }
            let (i, j) = (chart(site, cover, u)?, chart(site, cover, v)?);
            let mv = c.value_on(m, i, j, v);
            twists.push(((u, v), inner_matrix(m.module(v), &mv)));
        }
    }
    twisted_split(site, a, m, twists)
}

/// `ε(c)`: the locally split extension glued by `φ_ij(m, a) = (m + [a, m_ij], a)`.
pub fn epsilon(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, c: &CechCochain) -> Result<PresheafExtension> {
    if !c.is_cocycle(site, m)? {
        return Err(Error::NotCocycle("Čech 1-cochain has nonzero coboundary".into()));
    }
    glue_inner(site, a, m, c)
}

/// `α₁`: the class of `B(U)` in `HH²(A(U), M(U))` for each cover member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alpha1 {
    pub classes: Vec<Vec<Scalar>>,
}

impl Alpha1 {
    pub fn is_zero(&self) -> bool {
        self.classes.iter().flatten().all(Scalar::is_zero)
    }
}

pub fn alpha1(site: &FiniteSite, b: &PresheafExtension) -> Result<Alpha1> {
    let cover = cover_of(site)?;
    let classes = cover
        .iter()
        .map(|&u| {
            let e = b.extension(u);
            let z = extension_to_cocycle(e, &e.canonical_section())?;
            let h = hh(e.algebra(), e.module(), 2)?;
            h.class_of(&z).ok_or_else(|| Error::Invariant("extension cocycle is not closed".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Alpha1 { classes })
}

/// `α₂`: derivations `δ_ij` on pairwise overlaps from multiplicative local sections, and their
/// class modulo inner derivations and changes of sections.
#[derive(Clone, Debug)]
pub struct Alpha2 {
    pub pairs: Vec<(usize, usize)>,
    /// `δ_ij` as `dim(M) x dim(A)` matrices on `U_i ∩ U_j`.
    pub deltas: Vec<Matrix>,
    /// Multiplicative sections `A(U_i) -> B(U_i)`.
    pub sections: Vec<Matrix>,
    /// Whether each `δ_ij` satisfies the derivation identity.
    pub derivations_ok: bool,
    /// Total dimension of the derivation spaces on the overlaps.
    pub cochain_dim: usize,
    /// Dimension of inner derivations plus section changes.
    pub relations_dim: usize,
    /// Normal form of `δ` modulo the relations; zero iff the class vanishes.
    pub class: Vec<Scalar>,
    /// Section changes as vectors in the overlap coordinates, one per basis derivation of each member.
    section_changes: Vec<Vec<Scalar>>,
    /// Inner derivations `ad(e_c)` per overlap and basis element `e_c` of `M(U_i ∩ U_j)`.
    inner: Vec<Vec<Scalar>>,
    delta_vector: Vec<Scalar>,
}

impl Alpha2 {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(Scalar::is_zero)
    }
}

/// Solves `h r = x` for `h`.
fn solve_right(field: Field, r: &Matrix, x: &Matrix) -> Option<Matrix> {
    let rt = r.transpose();
    let rows = (0..x.rows()).map(|i| rt.solve(x.row(i))).collect::<Option<Vec<_>>>()?;
    Some(Matrix::from_rows(field, r.rows(), rows).expect("consistent rows"))
}

/// The M-part `h` on `w` of a section `a -> (a, g a)` of `B(u)` pushed along `r^B`, so that
/// `r^B (r^A a', g a') = (r^A a', h r^A a')`.
fn descend(site: &FiniteSite, a: &AlgebraPresheaf, b: &PresheafExtension, m: &BimodulePresheaf, u: usize, w: usize, g: &Matrix) -> Result<Matrix> {
    if u == w {
        return Ok(g.clone());
    }
    let x = b.twist(u, w).add(&m.restriction(u, w).mul(g));
    solve_right(a.field(), a.restriction(u, w), &x).ok_or_else(|| {
        Error::Precondition(format!("section over {} does not descend to {}", site.name(u), site.name(w)))
    })
}

pub fn alpha2(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, b: &PresheafExtension) -> Result<Alpha2> {
    let field = a.field();
    let cover = cover_of(site)?;
    let k = cover.len();
    let mut sections = Vec::with_capacity(k);
    let mut gs = Vec::with_capacity(k);
    for &u in &cover {
        let s = is_split(b.extension(u))
            .ok_or_else(|| Error::Precondition(format!("extension is not split on {}", site.name(u))))?;
        let (n, md) = (a.algebra(u).dim(), m.module(u).dim());
        gs.push(s.block(n, 0, md, n));
        sections.push(s);
    }
    let ps = pairs(k);
    let meets = ps.iter().map(|&(i, j)| site.meet_all(&[cover[i], cover[j]])).collect::<Result<Vec<_>>>()?;
    let sizes: Vec<usize> = meets.iter().map(|&w| a.algebra(w).dim() * m.module(w).dim()).collect();
    let offs: Vec<usize> = sizes.iter().scan(0, |acc, &s| {
        let o = *acc;
        *acc += s;
        Some(o)
    }).collect();
    let total: usize = sizes.iter().sum();
    let mut deltas = Vec::with_capacity(ps.len());
    let mut delta_vector = vec![field.zero(); total];
    let mut derivations_ok = true;
    for (p, (&(i, j), &w)) in ps.iter().zip(&meets).enumerate() {
        let hi = descend(site, a, b, m, cover[i], w, &gs[i])?;
        let hj = descend(site, a, b, m, cover[j], w, &gs[j])?;
        let d = hj.sub(&hi);
        let v = matrix_to_cochain1(&d);
        let d1 = hochschild_differential(a.algebra(w), m.module(w), 1);
        derivations_ok &= d1.mul_vec(&v).iter().all(Scalar::is_zero);
        delta_vector[offs[p]..offs[p] + sizes[p]].clone_from_slice(&v);
        deltas.push(d);
    }
    let mut relations = Subspace::zero(field, total);
    let mut inner = Vec::new();
    for (p, &w) in meets.iter().enumerate() {
        let md = m.module(w).dim();
        for c in 0..md {
            let mut e = vec![field.zero(); md];
            e[c] = field.one();
            let mut v = vec![field.zero(); total];
            v[offs[p]..offs[p] + sizes[p]].clone_from_slice(&matrix_to_cochain1(&inner_matrix(m.module(w), &e)));
            relations.insert(&v);
            inner.push(v);
        }
    }
    let mut section_changes = Vec::new();
    for (i, &u) in cover.iter().enumerate() {
        let der = derivations(a.algebra(u), m.module(u)).der;
        for e in der {
            let em = cochain1_to_matrix(field, &e, a.algebra(u).dim(), m.module(u).dim());
            let mut v = vec![field.zero(); total];
            for (p, (&(x, y), &w)) in ps.iter().zip(&meets).enumerate() {
                if x != i && y != i {
                    continue;
                }
                let t = matrix_to_cochain1(&descend_linear(a, m, u, w, &em)?);
                for (slot, val) in v[offs[p]..offs[p] + sizes[p]].iter_mut().zip(t) {
                    // δ_xy = h_y - h_x
                    if y == i {
                        *slot += &val;
                    } else {
                        *slot -= &val;
                    }
                }
            }
            relations.insert(&v);
            section_changes.push(v);
        }
    }
    let cochain_dim = meets.iter().map(|&w| derivations(a.algebra(w), m.module(w)).der.len()).sum();
    let class = relations.reduce(&delta_vector);
    Ok(Alpha2 {
        pairs: ps,
        deltas,
        sections,
        derivations_ok,
        cochain_dim,
        relations_dim: relations.dim(),
        class,
        section_changes,
        inner,
        delta_vector,
    })
}

/// Transport of an M-valued map `e: A(u) -> M(u)` to `w`: the `h` with `h r^A = r^M e`.
fn descend_linear(a: &AlgebraPresheaf, m: &BimodulePresheaf, u: usize, w: usize, e: &Matrix) -> Result<Matrix> {
    if u == w {
        return Ok(e.clone());
    }
    solve_right(a.field(), a.restriction(u, w), &m.restriction(u, w).mul(e))
        .ok_or_else(|| Error::Precondition("derivation does not descend along the restriction of A".into()))
}

/// `α₃`: with `δ_ij` made inner as `[·, m_ij]`, the coboundary `m_ijk` is central; its class
/// modulo coboundaries of central 1-cochains.
#[derive(Clone, Debug)]
pub struct Alpha3 {
    /// Chosen section changes, coefficients over the basis derivations of each member.
    pub section_change: Vec<Scalar>,
    /// `m_ij` on `U_i ∩ U_j`.
    pub m: Vec<((usize, usize), Vec<Scalar>)>,
    /// `m_ijk` on triple intersections.
    pub cocycle: Vec<((usize, usize, usize), Vec<Scalar>)>,
    pub central: bool,
    /// Whether `m_ijk` is a Čech cocycle on quadruple intersections.
    pub closed: bool,
    pub coboundaries_dim: usize,
    /// Normal form of `m_ijk` modulo coboundaries of central 1-cochains.
    pub class: Vec<Scalar>,
}

impl Alpha3 {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(Scalar::is_zero)
    }
}

pub fn alpha3(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, two: &Alpha2) -> Result<Alpha3> {
    if !two.is_zero() {
        return Err(Error::Precondition("α₂ class is nonzero".into()));
    }
    let field = a.field();
    let cover = cover_of(site)?;
    let k = cover.len();
    let ps = &two.pairs;
    let meets = ps.iter().map(|&(i, j)| site.meet_all(&[cover[i], cover[j]])).collect::<Result<Vec<_>>>()?;
    let total = two.delta_vector.len();
    let mut cols: Vec<Vec<Scalar>> = two.section_changes.clone();
    let n_changes = cols.len();
    cols.extend(two.inner.iter().cloned());
    let system = Matrix::from_columns(field, total, &cols);
    let sol = system.solve(&two.delta_vector).ok_or_else(|| Error::Invariant("α₂ vanishes but δ is not inner".into()))?;
    let section_change = sol[..n_changes].to_vec();
    // δ = Σ changes + Σ ad(m_ij), so the inner part gives m_ij
    let mut at = n_changes;
    let mut entries = Vec::new();
    for (p, &w) in meets.iter().enumerate() {
        let md = m.module(w).dim();
        entries.push((ps[p], sol[at..at + md].to_vec()));
        at += md;
    }
    let c = CechCochain::new(site, m, entries.clone())?;
    let cob = c.coboundary(site, m)?;
    let central = cob.iter().all(|(_, w, v)| center(a.algebra(*w), m.module(*w)).contains(v));
    let mut closed = true;
    for q in 0..k {
        for r in q + 1..k {
            for s in r + 1..k {
                for t in s + 1..k {
                    let w = site.meet_all(&[cover[q], cover[r], cover[s], cover[t]])?;
                    let faces = [(r, s, t), (q, s, t), (q, r, t), (q, r, s)];
                    let mut acc = vec![field.zero(); m.module(w).dim()];
                    for (f, face) in faces.iter().enumerate() {
                        let (_, src, v) = cob.iter().find(|(tr, _, _)| tr == face).expect("triple");
                        let rv = m.restriction(*src, w).mul_vec(v);
                        for (x, y) in acc.iter_mut().zip(rv) {
                            if f % 2 == 0 {
                                *x += &y;
                            } else {
                                *x -= &y;
                            }
                        }
                    }
                    closed &= acc.iter().all(Scalar::is_zero);
                }
            }
        }
    }
    let tri_sizes: Vec<usize> = cob.iter().map(|(_, w, _)| m.module(*w).dim()).collect();
    let tri_offs: Vec<usize> = tri_sizes.iter().scan(0, |acc, &s| {
        let o = *acc;
        *acc += s;
        Some(o)
    }).collect();
    let tri_total: usize = tri_sizes.iter().sum();
    let mut vector = vec![field.zero(); tri_total];
    for (t, (_, _, v)) in cob.iter().enumerate() {
        vector[tri_offs[t]..tri_offs[t] + tri_sizes[t]].clone_from_slice(v);
    }
    let mut coboundaries = Subspace::zero(field, tri_total);
    for (p, &w) in meets.iter().enumerate() {
        let (i, j) = ps[p];
        for z in center(a.algebra(w), m.module(w)).basis() {
            let mut v = vec![field.zero(); tri_total];
            for (t, ((x, y, l), tw, _)) in cob.iter().enumerate() {
                let sgn = if (*y, *l) == (i, j) {
                    1
                } else if (*x, *l) == (i, j) {
                    -1
                } else if (*x, *y) == (i, j) {
                    1
                } else {
                    continue;
                };
                let rz = m.restriction(w, *tw).mul_vec(z);
                for (slot, val) in v[tri_offs[t]..tri_offs[t] + tri_sizes[t]].iter_mut().zip(rz) {
                    if sgn > 0 {
                        *slot += &val;
                    } else {
                        *slot -= &val;
                    }
                }
            }
            coboundaries.insert(&v);
        }
    }
    let class = coboundaries.reduce(&vector);
    Ok(Alpha3 {
        section_change,
        m: entries,
        cocycle: cob.into_iter().map(|(t, _, v)| (t, v)).collect(),
        central,
        closed,
        coboundaries_dim: coboundaries.dim(),
        class,
    })
}

/// The furthest stage of the cascade reached by an extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Not locally split: `α₁ ≠ 0`.
    Local,
    /// Locally split with a nonzero outer-derivation class.
    OuterDerivation,
    /// `α₂ = 0` with a nonzero central 2-class.
    Central,
    /// Every extracted class vanishes.
    Vanishing,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub stage: Stage,
    pub alpha1: Alpha1,
    pub alpha2: Option<Alpha2>,
    pub alpha3: Option<Alpha3>,
}

/// Runs `α₁`, then `α₂` when `α₁ = 0`, then `α₃` when `α₂ = 0`.
pub fn obstruct(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, b: &PresheafExtension) -> Result<ObstructionReport> {
    let alpha1 = alpha1(site, b)?;
    if !alpha1.is_zero() {
        return Ok(ObstructionReport { stage: Stage::Local, alpha1, alpha2: None, alpha3: None });
    }
    let two = alpha2(site, a, m, b)?;
    if !two.is_zero() {
        return Ok(ObstructionReport { stage: Stage::OuterDerivation, alpha1, alpha2: Some(two), alpha3: None });
    }
    let three = alpha3(site, a, m, &two)?;
    let stage = if three.is_zero() { Stage::Vanishing } else { Stage::Central };
    Ok(ObstructionReport { stage, alpha1, alpha2: Some(two), alpha3: Some(three) })
}

/// Exactness of `Ext¹ -> H¹ -> exal -> Ext² -> H²` at each of the five terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveTermReport {
    pub dims: [usize; 5],
    pub exact: [bool; 5],
}

impl FiveTermReport {
    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|&e| e)
    }
}

pub fn five_term(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf) -> Result<FiveTermReport> {
    let g = GsComplex::new(site, a, m, 3, 3)?;
    let r = crate::gs::les_check_in(&g, m.is_symmetric(), 2)?;
    let find = |term: &str, n: usize| r.nodes.iter().find(|x| x.term == term && x.degree == n).expect("node");
    let nodes = [find("Ext", 1), find("H", 1), find("H_a", 2), find("Ext", 2), find("H", 2)];
    Ok(FiveTermReport { dims: nodes.map(|x| x.dim), exact: nodes.map(|x| x.defect() == 0) })
}

/// Where the class of `ε(c)` sits in the 5-term sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonPlacement {
    /// Class of `ε(c)` in `H_a²` lies in the image of `H¹(U, M)`.
    pub in_image_of_h1: bool,
    /// `ρ(ε(c)) = 0` in `Ext²`.
    pub rho_zero: bool,
    pub class: Vec<Scalar>,
}

pub fn epsilon_placement(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, c: &CechCochain) -> Result<EpsilonPlacement> {
    let b = epsilon(site, a, m, c)?;
    let g = GsComplex::new(site, a, m, 3, 3)?;
    let maps = les_maps(&g, 2)?;
    let z = presheaf_extension_to_cocycle(site, &b, &b.canonical_sections())?;
    let v = z.assemble(&g, &g.total_a());
    let class = maps.ha[2].class_of(&v).ok_or_else(|| Error::Invariant("ε(c) is not a total cocycle".into()))?;
    let image = Subspace::column_space(&maps.conn[1]);
    let rho = maps.incl[2].mul_vec(&class);
    Ok(EpsilonPlacement { in_image_of_h1: image.contains(&class), rho_zero: rho.iter().all(Scalar::is_zero), class })
}

/// A presheaf extension together with the data it was built from.
#[derive(Clone, Debug)]
pub struct Example {
    pub site: FiniteSite,
    pub algebras: AlgebraPresheaf,
    pub modules: BimodulePresheaf,
    pub cochain: Option<CechCochain>,
    pub extension: PresheafExtension,
}

/// Upper triangular `2 x 2` matrices on the cover `{U0, U1}` with `M = 0` on the members and
/// `M(U0 ∩ U1) = k` with `e11` acting on the left and `e22` on the right, glued by the outer
/// derivation `e12 -> 1`.
pub fn outer_derivation_example(field: Field) -> Example {
    let s = FiniteSite::cech_nerve(2);
    let t = crate::algebra::Algebra::upper_triangular(field, 2);
    let ap = AlgebraPresheaf::constant(&s, &t);
    let int = |v: &[i64]| v.iter().map(|&x| field.from_i64(x)).collect::<Vec<_>>();
    let k12 = Bimodule::characters(&t, &int(&[1, 0, 0]), &int(&[0, 0, 1])).expect("characters");
    let mods = vec![Bimodule::zero(&t), Bimodule::zero(&t), k12];
    let mp = BimodulePresheaf::new(&s, &ap, mods, Vec::new()).expect("zero restrictions");
    let d = Matrix::from_rows(field, 3, vec![int(&[0, 1, 0])]).expect("row");
    let b = twisted_split(&s, &ap, &mp, vec![((1, 2), d)]).expect("derivation twist");
    Example { site: s, algebras: ap, modules: mp, cochain: None, extension: b }
}

/// Upper triangular `2 x 2` matrices on a three-member cover, regular coefficients on members
/// and pairwise overlaps and `T / k e12` on the triple overlap, glued by `[a, e11]` over
/// `U0 ∩ U1`. The values do not form a cocycle, only a central one on the triple overlap.
pub fn central_example(field: Field) -> Example {
    let s = FiniteSite::cech_nerve(3);
    let t = crate::algebra::Algebra::upper_triangular(field, 2);
    let ap = AlgebraPresheaf::constant(&s, &t);
    let quotient = |x: &Matrix| Matrix::from_fn(field, 2, 2, |r, c| x[([0, 2][r], [0, 2][c])].clone());
    let reg = Bimodule::regular(&t);
    let small = Bimodule::new(&t, 2, reg.lefts().iter().map(quotient).collect(), reg.rights().iter().map(quotient).collect())
        .expect("quotient by the ideal k e12");
    let top = FiniteSite::cech_index(0b111);
    let mut mods = vec![reg; 7];
    mods[top] = small;
    let (one, zero) = (field.one(), field.zero());
    let proj = Matrix::from_rows(field, 3, vec![vec![one.clone(), zero.clone(), zero.clone()], vec![zero.clone(), zero.clone(), one.clone()]])
        .expect("rows");
    let given: Vec<_> = s
        .covering_relations()
        .into_iter()
        .map(|(v, u)| ((u, v), if v == top { proj.clone() } else { Matrix::identity(field, 3) }))
        .collect();
    let mp = BimodulePresheaf::new(&s, &ap, mods, given).expect("functorial");
    let c = CechCochain::new(&s, &mp, vec![((0, 1), vec![one, zero.clone(), zero])]).expect("cochain");
    let b = glue_inner(&s, &ap, &mp, &c).expect("coboundary is central");
    Example { site: s, algebras: ap, modules: mp, cochain: Some(c), extension: b }
}

/// A random Čech 1-cocycle with values in a constant coefficient presheaf on a Čech nerve:
/// `m_0j` free and `m_jk = m_0k - m_0j`.
pub fn random_constant_cocycle<R: rand::Rng>(site: &FiniteSite, m: &BimodulePresheaf, rng: &mut R) -> Result<CechCochain> {
    let cover = cover_of(site)?;
    let k = cover.len();
    let d = m.module(cover[0]).dim();
    let field = m.field();
    let m0: Vec<Vec<Scalar>> = (0..k)
        .map(|j| if j == 0 { vec![field.zero(); d] } else { crate::generate::random_vector(field, d, rng) })
        .collect();
    let entries = pairs(k)
        .into_iter()
        .map(|(i, j)| ((i, j), m0[j].iter().zip(&m0[i]).map(|(x, y)| x - y).collect()))
        .collect();
    let c = CechCochain::new(site, m, entries)?;
    if !c.is_cocycle(site, m)? {
        return Err(Error::Precondition("coefficients are not constant".into()));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::gs::rho;

    const Q: Field = Field::Rational;

    fn q(n: i64) -> Scalar {
        Q.from_i64(n)
    }

    fn tri() -> Algebra {
        Algebra::upper_triangular(Q, 2)
    }

    #[test]
    fn epsilon_of_zero_is_split() {
        let s = FiniteSite::cech_nerve(3);
        let ap = AlgebraPresheaf::constant(&s, &tri());
        let mp = BimodulePresheaf::regular(&ap);
        let c = CechCochain::zero(&s, &mp).unwrap();
        let b = epsilon(&s, &ap, &mp, &c).unwrap();
        assert_eq!(b, PresheafExtension::split(&s, &ap, &mp));
        assert_eq!(obstruct(&s, &ap, &mp, &b).unwrap().stage, Stage::Vanishing);
    }

    #[test]
    fn commutative_epsilon_is_split() {
        let s = FiniteSite::cech_nerve(2);
        let l = Algebra::dual_numbers(Q);
        let ap = AlgebraPresheaf::constant(&s, &l);
        let mp = BimodulePresheaf::regular(&ap);
        let c = CechCochain::new(&s, &mp, vec![((0, 1), vec![q(1), q(2)])]).unwrap();
        let b = epsilon(&s, &ap, &mp, &c).unwrap();
        assert_eq!(b, PresheafExtension::split(&s, &ap, &mp));
    }

    #[test]
    fn epsilon_with_non_central_value_is_inner_at_alpha2() {
        let s = FiniteSite::cech_nerve(2);
        let ap = AlgebraPresheaf::constant(&s, &tri());
        let mp = BimodulePresheaf::regular(&ap);
        let c = CechCochain::new(&s, &mp, vec![((0, 1), vec![q(1), q(0), q(0)])]).unwrap();
        let b = epsilon(&s, &ap, &mp, &c).unwrap();
        assert_ne!(b, PresheafExtension::split(&s, &ap, &mp));
        let r = obstruct(&s, &ap, &mp, &b).unwrap();
        assert!(r.alpha1.is_zero());
        let two = r.alpha2.unwrap();
        assert!(two.derivations_ok);
        assert!(two.is_zero());
        assert!(rho(&s, &ap, &mp, &b).unwrap().iter().all(Scalar::is_zero));
        let place = epsilon_placement(&s, &ap, &mp, &c).unwrap();
        assert!(place.in_image_of_h1 && place.rho_zero);
    }

    #[test]
    fn outer_derivation_twist_reaches_alpha2() {
        let ex = outer_derivation_example(Q);
        let r = obstruct(&ex.site, &ex.algebras, &ex.modules, &ex.extension).unwrap();
        assert_eq!(r.stage, Stage::OuterDerivation);
        assert!(r.alpha2.unwrap().derivations_ok);
    }

    #[test]
    fn non_closing_values_reach_alpha3() {
        let ex = central_example(Q);
        let c = ex.cochain.as_ref().unwrap();
        assert!(!c.is_cocycle(&ex.site, &ex.modules).unwrap());
        assert!(matches!(epsilon(&ex.site, &ex.algebras, &ex.modules, c), Err(Error::NotCocycle(_))));
        let r = obstruct(&ex.site, &ex.algebras, &ex.modules, &ex.extension).unwrap();
        assert_eq!(r.stage, Stage::Central);
        let three = r.alpha3.unwrap();
        assert!(three.central && three.closed);
    }

    #[test]
    fn one_member_cover_has_no_pairs() {
        let s = FiniteSite::point().with_cover(vec![0]).unwrap();
        let l = Algebra::dual_numbers(Q);
        let ap = AlgebraPresheaf::constant(&s, &l);
        let mp = BimodulePresheaf::regular(&ap);
        let z = hh(&l, &Bimodule::regular(&l), 2).unwrap().representatives[0].clone();
        let g = GsComplex::new(&s, &ap, &mp, 3, 3).unwrap();
        let v = crate::gs::TwoCochain { z02: vec![z], z11: Vec::new() }.assemble(&g, &g.total_a());
        let b = crate::gs::cocycle_to_presheaf_extension(&s, &ap, &mp, &v).unwrap();
        let r = obstruct(&s, &ap, &mp, &b).unwrap();
        assert_eq!(r.stage, Stage::Local);
        let split = PresheafExtension::split(&s, &ap, &mp);
        let two = alpha2(&s, &ap, &mp, &split).unwrap();
        assert!(two.pairs.is_empty() && two.is_zero());
    }

    #[test]
    fn five_term_is_exact_on_a_vee() {
        let s = FiniteSite::cech_nerve(2);
        let ap = AlgebraPresheaf::constant(&s, &tri());
        let mp = BimodulePresheaf::regular(&ap);
        assert!(five_term(&s, &ap, &mp).unwrap().is_exact());
    }
}
