//! The long exact sequence `... -> H_a^n -> Ext^n -> H^n(U, M) -> H_a^{n+1} -> ...`.

use crate::error::{Error, Result};
use crate::linalg::{Cohomology, Matrix};
use crate::site::{AlgebraPresheaf, BimodulePresheaf, FiniteSite};

use super::GsComplex;

/// Exactness data at one term of the sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesNode {
    /// `"H_a"`, `"Ext"` or `"H"`.
    pub term: &'static str,
    pub degree: usize,
    pub dim: usize,
    /// Dimension of the kernel of the outgoing map.
    pub kernel: usize,
    /// Rank of the incoming map.
    pub image: usize,
    /// Whether outgoing after incoming vanishes.
    pub composite_zero: bool,
}

impl LesNode {
    /// `kernel - image`, or `usize::MAX` when the composite is nonzero.
    pub fn defect(&self) -> usize {
        if self.composite_zero {
            self.kernel - self.image.min(self.kernel)
        } else {
            usize::MAX
        }
    }
}

#[derive(Clone, Debug)]
pub struct LesReport {
    pub nodes: Vec<LesNode>,
    pub ext: Vec<usize>,
    pub h_a: Vec<usize>,
    pub nerve: Vec<usize>,
    /// For symmetric coefficients: whether `dim Ext^n = dim H_a^n + dim H^n` for every `n`.
    pub symmetric_split: Option<bool>,
}

impl LesReport {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(|n| n.defect() == 0)
    }
}

/// Maps of the sequence in representative coordinates, for degrees `0..=nmax`.
///
/// `ha` and `ext` run one degree further. With caps `nmax + 1` those top spaces carry every true
/// cocycle and the exact coboundaries, so ranks of maps into them are still correct.
pub(crate) struct LesMaps {
    pub ha: Vec<Cohomology>,
    pub ext: Vec<Cohomology>,
    pub nerve: Vec<Cohomology>,
    /// `i_*: H_a^n -> Ext^n`.
    pub incl: Vec<Matrix>,
    /// `pi_*: Ext^n -> H^n`.
    pub proj: Vec<Matrix>,
    /// `delta: H^n -> H_a^{n+1}`.
    pub conn: Vec<Matrix>,
}

pub(crate) fn les_maps(g: &GsComplex, nmax: usize) -> Result<LesMaps> {
    let field = g.double().field();
    let t = g.total();
    let ta = g.total_a();
    let b = g.bottom_row();
    let top = nmax + 1;
    let ha = (0..=top).map(|n| ta.complex.cohomology(n as i64)).collect::<Result<Vec<_>>>()?;
    let ext = (0..=top).map(|n| t.complex.cohomology(n as i64)).collect::<Result<Vec<_>>>()?;
    let nerve = (0..=nmax).map(|n| b.complex.cohomology(n as i64)).collect::<Result<Vec<_>>>()?;
    let incl = (0..=nmax).map(|n| ha[n].induced_map(&ta.transfer(&t, n), &ext[n])).collect();
    let proj = (0..=nmax).map(|n| ext[n].induced_map(&t.transfer(&b, n), &nerve[n])).collect();
    let mut conn = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let lift = b.transfer(&t, n);
        let d = t.complex.differential(n as i64);
        let down = t.transfer(&ta, n + 1);
        let cols: Vec<_> = nerve[n]
            .representatives
            .iter()
            .map(|x| {
                let y = down.mul_vec(&d.mul_vec(&lift.mul_vec(x)));
                ha[n + 1].class_of(&y).expect("boundary of a lift is a cocycle of the subcomplex")
            })
            .collect();
        conn.push(Matrix::from_columns(field, ha[n + 1].dim, &cols));
    }
    Ok(LesMaps { ha, ext, nerve, incl, proj, conn })
}

fn node(term: &'static str, degree: usize, dim: usize, incoming: Option<&Matrix>, outgoing: Option<&Matrix>) -> LesNode {
    let kernel = outgoing.map_or(dim, |m| dim - m.rank());
    let image = incoming.map_or(0, Matrix::rank);
    let composite_zero = match (incoming, outgoing) {
        (Some(i), Some(o)) => o.mul(i).is_zero(),
        _ => true,
    };
    LesNode { term, degree, dim, kernel, image, composite_zero }
}

/// Checks rank exactness at every node up to degree `nmax`.
pub fn les_check(site: &FiniteSite, a: &AlgebraPresheaf, m: &BimodulePresheaf, nmax: usize) -> Result<LesReport> {
    let g = GsComplex::new(site, a, m, nmax + 1, nmax + 1)?;
    les_check_in(&g, m.is_symmetric(), nmax)
}

/// As [`les_check`] on a prebuilt complex, whose caps must be at least `nmax + 1`.
pub fn les_check_in(g: &GsComplex, symmetric: bool, nmax: usize) -> Result<LesReport> {
    if g.qmax() <= nmax {
        return Err(Error::InsufficientCaps { needed: nmax + 1, pmax: g.pmax(), qmax: g.qmax() });
    }
    let maps = les_maps(g, nmax)?;
    let mut nodes = Vec::new();
    for n in 0..=nmax {
        let into_ha = if n == 0 { None } else { Some(&maps.conn[n - 1]) };
        nodes.push(node("H_a", n, maps.ha[n].dim, into_ha, Some(&maps.incl[n])));
        nodes.push(node("Ext", n, maps.ext[n].dim, Some(&maps.incl[n]), Some(&maps.proj[n])));
        nodes.push(node("H", n, maps.nerve[n].dim, Some(&maps.proj[n]), Some(&maps.conn[n])));
    }
    let ext: Vec<usize> = maps.ext[..=nmax].iter().map(|c| c.dim).collect();
    let h_a: Vec<usize> = maps.ha[..=nmax].iter().map(|c| c.dim).collect();
    let nerve: Vec<usize> = maps.nerve.iter().map(|c| c.dim).collect();
    let symmetric_split = symmetric.then(|| (0..=nmax).all(|n| ext[n] == h_a[n] + nerve[n]));
    Ok(LesReport { nodes, ext, h_a, nerve, symmetric_split })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn exact_on_a_vee_with_dual_numbers() {
        let s = FiniteSite::new(vec!["U".into(), "V".into(), "W".into()], &[(2, 0), (2, 1)]).unwrap();
        let l = Algebra::dual_numbers(Q);
        let ap = AlgebraPresheaf::constant(&s, &l);
        let mp = BimodulePresheaf::regular(&ap);
        let r = les_check(&s, &ap, &mp, 2).unwrap();
        assert!(r.exact(), "{:?}", r.nodes);
        assert_eq!(r.symmetric_split, Some(true));
    }

    #[test]
    fn exact_for_triangular_algebra() {
        let s = FiniteSite::new(vec!["U".into(), "V".into()], &[(1, 0)]).unwrap();
        let t = Algebra::upper_triangular(Q, 2);
        let ap = AlgebraPresheaf::constant(&s, &t);
        let mp = BimodulePresheaf::regular(&ap);
        let r = les_check(&s, &ap, &mp, 2).unwrap();
        assert!(r.exact(), "{:?}", r.nodes);
        assert_eq!(r.symmetric_split, None);
    }

    #[test]
    fn zero_coefficients_give_zero_spaces() {
        let s = FiniteSite::new(vec!["U".into(), "V".into()], &[(1, 0)]).unwrap();
        let l = Algebra::dual_numbers(Q);
        let ap = AlgebraPresheaf::constant(&s, &l);
        let mp = BimodulePresheaf::zero(&s, &ap);
        let r = les_check(&s, &ap, &mp, 2).unwrap();
        assert!(r.nodes.iter().all(|n| n.dim == 0));
    }
}
