//! Finite posets of opens, presheaves on them, and their nerve and Čech complexes.

mod presheaf;

pub use presheaf::{AlgebraPresheaf, BimodulePresheaf, LinearPresheaf};

use crate::error::{Error, Result};
use crate::linalg::{sign, CochainComplex, Field, Matrix};

/// A finite poset of opens. `leq(v, u)` reads `v ⊆ u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSite {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    cover: Option<Vec<usize>>,
}

/// A strictly decreasing chain `U_0 ⊋ U_1 ⊋ ... ⊋ U_p`, stored largest first.
pub type StrictChain = Vec<usize>;

impl FiniteSite {
    /// Builds the order generated by `relations`, each `(v, u)` meaning `v ⊆ u`.
    pub fn new(names: Vec<String>, relations: &[(usize, usize)]) -> Result<FiniteSite> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(v, u) in relations {
            if v >= n || u >= n {
                return Err(Error::Invariant(format!("relation ({v}, {u}) names an unknown object")));
            }
            leq[v][u] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Invariant(format!("objects {} and {} include into each other", names[i], names[j])));
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|x| !seen.insert(*x)) {
            return Err(Error::Invariant(format!("duplicate object name {dup}")));
        }
        Ok(FiniteSite { names, leq, cover: None })
    }

    pub fn with_cover(mut self, cover: Vec<usize>) -> Result<FiniteSite> {
        if let Some(&bad) = cover.iter().find(|&&c| c >= self.len()) {
            return Err(Error::Invariant(format!("cover member {bad} is not an object")));
        }
        self.cover = Some(cover);
        Ok(self)
    }

    /// The one-object site.
    pub fn point() -> FiniteSite {
        FiniteSite::new(vec!["X".into()], &[]).expect("valid")
    }

    /// The poset of nonempty subsets `S` of `{0, ..., k-1}`, object `U_S` ordered by
    /// `U_T ⊆ U_S` iff `S ⊆ T`; the singletons form the cover and `U_S ∩ U_T = U_{S ∪ T}`.
    /// Objects are listed by increasing bitmask.
    pub fn cech_nerve(k: usize) -> FiniteSite {
        let masks: Vec<usize> = (1..1usize << k).collect();
        let names = masks
            .iter()
            .map(|&m| format!("U{}", (0..k).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect::<String>()))
            .collect();
        let mut rel = Vec::new();
        for (a, &s) in masks.iter().enumerate() {
            for (b, &t) in masks.iter().enumerate() {
                if a != b && s & t == s {
                    rel.push((b, a));
                }
            }
        }
        let cover = (0..k).map(|i| (1usize << i) - 1).collect();
        FiniteSite::new(names, &rel).expect("valid").with_cover(cover).expect("valid")
    }

    /// Index of the object for the nonempty subset `mask` in [`FiniteSite::cech_nerve`].
    pub fn cech_index(mask: usize) -> usize {
        mask - 1
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, u: usize) -> &str {
        &self.names[u]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn cover(&self) -> Option<&[usize]> {
        self.cover.as_deref()
    }

    /// `v ⊆ u`.
    pub fn leq(&self, v: usize, u: usize) -> bool {
        self.leq[v][u]
    }

    pub fn lt(&self, v: usize, u: usize) -> bool {
        v != u && self.leq[v][u]
    }

    /// Pairs `(v, u)` with `v ⊊ u` and nothing strictly between.
    pub fn covering_relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if self.lt(v, u) && !(0..n).any(|w| self.lt(v, w) && self.lt(w, u)) {
                    out.push((v, u));
                }
            }
        }
        out
    }

    /// Greatest lower bound of `u` and `v`, if it exists.
    pub fn meet(&self, u: usize, v: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&w| self.leq(w, u) && self.leq(w, v)).collect();
        lower.iter().copied().find(|&w| lower.iter().all(|&x| self.leq(x, w)))
    }

    /// Meet of a nonempty list of objects.
    pub fn meet_all(&self, objects: &[usize]) -> Result<usize> {
        let mut acc = objects[0];
        for &o in &objects[1..] {
            acc = self.meet(acc, o).ok_or_else(|| {
                Error::MissingIntersection(objects.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join(" ∩ "))
            })?;
        }
        Ok(acc)
    }

    /// An object containing every object, if any.
    pub fn final_object(&self) -> Option<usize> {
        (0..self.len()).find(|&u| (0..self.len()).all(|v| self.leq(v, u)))
    }

    /// All strict chains of length `p` in lexicographic order of their index sequences.
    pub fn strict_chains(&self, p: usize) -> Vec<StrictChain> {
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(p + 1);
        for u in 0..self.len() {
            chain.push(u);
            self.extend_chains(&mut chain, p, &mut out);
            chain.pop();
        }
        out
    }

    fn extend_chains(&self, chain: &mut Vec<usize>, p: usize, out: &mut Vec<StrictChain>) {
        if chain.len() == p + 1 {
            out.push(chain.clone());
            return;
        }
        let last = *chain.last().expect("nonempty");
        for v in 0..self.len() {
            if self.lt(v, last) {
                chain.push(v);
                self.extend_chains(chain, p, out);
                chain.pop();
            }
        }
    }

    /// Length of the longest strict chain.
    pub fn height(&self) -> usize {
        let mut p = 0;
        while !self.strict_chains(p + 1).is_empty() {
            p += 1;
        }
        p
    }
}

/// Position of a chain inside an ordered list of chains.
pub(crate) fn chain_position(chains: &[StrictChain], c: &[usize]) -> usize {
    chains.binary_search_by(|x| x.as_slice().cmp(c)).expect("face of a chain is a chain")
}

pub(crate) fn without(chain: &[usize], j: usize) -> Vec<usize> {
    let mut f = chain.to_vec();
    f.remove(j);
    f
}

/// Offsets of each chain's block inside `C^p`, for blocks of the given sizes.
pub(crate) fn offsets(sizes: impl Iterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut acc = 0;
    let mut out = Vec::new();
    for s in sizes {
        out.push(acc);
        acc += s;
    }
    (out, acc)
}

/// The nerve differential `C^p -> C^{p+1}` with `C^p = (+)_{U_0 ⊋ ... ⊋ U_p} M(U_p)`.
///
/// Dropping `U_j` from a chain of length `p + 1` carries the sign `(-1)^{p+1-j}`; dropping the
/// smallest object is followed by restriction.
pub fn nerve_differential(site: &FiniteSite, m: &LinearPresheaf, p: usize) -> Matrix {
    let field = m.field();
    let src = site.strict_chains(p);
    let dst = site.strict_chains(p + 1);
    let (so, sd) = offsets(src.iter().map(|c| m.dim(c[p])));
    let (to, td) = offsets(dst.iter().map(|c| m.dim(c[p + 1])));
    let mut d = Matrix::zeros(field, td, sd);
    for (k, c) in dst.iter().enumerate() {
        for j in 0..=p + 1 {
            let face = without(c, j);
            let f = chain_position(&src, &face);
            let s = sign(field, p + 1 - j);
            let block = if j == p + 1 {
                m.restriction(c[p], c[p + 1]).scale(&s)
            } else {
                Matrix::identity(field, m.dim(c[p + 1])).scale(&s)
            };
            d.add_block(to[k], so[f], &block);
        }
    }
    d
}

/// Cochain complex computing `H^i(U, M)`, in degrees `0..=height`.
pub fn nerve_complex(site: &FiniteSite, m: &LinearPresheaf) -> CochainComplex {
    let h = site.height();
    let dims = (0..=h).map(|p| site.strict_chains(p).iter().map(|c| m.dim(c[p])).sum()).collect();
    let diffs = (0..h).map(|p| nerve_differential(site, m, p)).collect();
    CochainComplex::new(m.field(), 0, dims, diffs).expect("shapes agree")
}

/// The cochain map on nerve complexes induced by per-object maps `f[u]: M(u) -> N(u)`.
pub fn nerve_map(site: &FiniteSite, f: &[Matrix], p: usize) -> Matrix {
    let field = f.first().map_or(Field::Rational, Matrix::field);
    let chains = site.strict_chains(p);
    let (so, sd) = offsets(chains.iter().map(|c| f[c[p]].cols()));
    let (to, td) = offsets(chains.iter().map(|c| f[c[p]].rows()));
    let mut out = Matrix::zeros(field, td, sd);
    for (k, c) in chains.iter().enumerate() {
        out.add_block(to[k], so[k], &f[c[p]]);
    }
    out
}

/// Strictly increasing index tuples of length `p + 1` drawn from `0..k`.
pub(crate) fn increasing_tuples(k: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, p + 1, &mut Vec::new(), &mut out);
    out
}

/// Alternating Čech complex of `m` on `cover`, in degrees `0..=pmax` (capped by the cover size).
pub fn cech_complex(site: &FiniteSite, cover: &[usize], m: &LinearPresheaf, pmax: usize) -> Result<CochainComplex> {
    let k = cover.len();
    if k == 0 {
        return CochainComplex::new(m.field(), 0, vec![0], vec![]);
    }
    let top = pmax.min(k - 1);
    let mut objects: Vec<Vec<usize>> = Vec::new();
    let mut tuples_by_degree = Vec::new();
    for p in 0..=top {
        let tuples = increasing_tuples(k, p);
        let objs = tuples
            .iter()
            .map(|t| site.meet_all(&t.iter().map(|&i| cover[i]).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        tuples_by_degree.push(tuples);
        objects.push(objs);
    }
    let dims: Vec<usize> = objects.iter().map(|o| o.iter().map(|&u| m.dim(u)).sum()).collect();
    let field = m.field();
    let mut diffs = Vec::new();
    for p in 0..top {
        let (so, _) = offsets(objects[p].iter().map(|&u| m.dim(u)));
        let (to, _) = offsets(objects[p + 1].iter().map(|&u| m.dim(u)));
        let mut d = Matrix::zeros(field, dims[p + 1], dims[p]);
        for (t, tuple) in tuples_by_degree[p + 1].iter().enumerate() {
            let target = objects[p + 1][t];
            for j in 0..=p + 1 {
                let face = without(tuple, j);
                let f = tuples_by_degree[p].iter().position(|x| *x == face).expect("faces are tuples");
                let r = m.restriction(objects[p][f], target).scale(&sign(field, j));
                d.add_block(to[t], so[f], &r);
            }
        }
        diffs.push(d);
    }
    CochainComplex::new(field, 0, dims, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn vee() -> FiniteSite {
        // W ⊊ U, W ⊊ V
        FiniteSite::new(vec!["U".into(), "V".into(), "W".into()], &[(2, 0), (2, 1)]).unwrap()
    }

    #[test]
    fn chain_counts() {
        assert_eq!(FiniteSite::point().strict_chains(0).len(), 1);
        assert!(FiniteSite::point().strict_chains(1).is_empty());
        assert_eq!(vee().strict_chains(1).len(), 2);
        let total = FiniteSite::new(vec!["a".into(), "b".into(), "c".into()], &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(total.strict_chains(2), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn antisymmetry_is_enforced() {
        assert!(FiniteSite::new(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn nerve_of_an_inclusion() {
        let s = FiniteSite::new(vec!["U".into(), "V".into()], &[(1, 0)]).unwrap();
        let k = LinearPresheaf::constant(&s, Q, 1);
        let c = nerve_complex(&s, &k);
        assert_eq!(c.betti(), vec![1, 0]);
    }

    #[test]
    fn nerve_of_a_vee_with_skyscraper() {
        let s = vee();
        let m = LinearPresheaf::new(&s, Q, vec![0, 0, 1], vec![]).unwrap();
        let c = nerve_complex(&s, &m);
        assert_eq!(c.dims(), &[1, 2]);
        assert_eq!(c.betti(), vec![0, 1]);
        let zero = LinearPresheaf::new(&s, Q, vec![0, 0, 0], vec![]).unwrap();
        assert_eq!(nerve_complex(&s, &zero).betti(), vec![0, 0]);
    }

    #[test]
    fn cech_of_a_two_member_cover() {
        let s = vee().with_cover(vec![0, 1]).unwrap();
        let k = LinearPresheaf::constant(&s, Q, 1);
        let c = cech_complex(&s, &[0, 1], &k, 2).unwrap();
        assert_eq!(c.betti(), vec![1, 0]);
        let m = LinearPresheaf::new(&s, Q, vec![0, 0, 1], vec![]).unwrap();
        let c = cech_complex(&s, &[0, 1], &m, 2).unwrap();
        assert_eq!(c.betti(), vec![0, 1]);
        assert_eq!(nerve_complex(&s, &m).betti(), c.betti());
        let single = cech_complex(&s, &[0], &k, 2).unwrap();
        assert_eq!(single.dims(), &[1]);
    }

    #[test]
    fn missing_intersection_is_reported() {
        let s = FiniteSite::new(vec!["U".into(), "V".into()], &[]).unwrap();
        let k = LinearPresheaf::constant(&s, Q, 1);
        assert!(matches!(cech_complex(&s, &[0, 1], &k, 1), Err(Error::MissingIntersection(_))));
    }

    #[test]
    fn cech_nerve_poset() {
        let s = FiniteSite::cech_nerve(3);
        assert_eq!(s.len(), 7);
        assert_eq!(s.cover().unwrap(), &[0, 1, 3]);
        assert_eq!(s.meet(0, 1), Some(2));
        assert_eq!(s.meet_all(&[0, 1, 3]).unwrap(), 6);
        let k = LinearPresheaf::constant(&s, Q, 1);
        let c = nerve_complex(&s, &k);
        assert!(c.is_complex());
        assert_eq!(c.betti()[0], 1);
        assert!(c.betti()[1..].iter().all(|&b| b == 0));
    }
}
