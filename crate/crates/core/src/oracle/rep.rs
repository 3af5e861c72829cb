//! Representations of `(Q, I)` over the rationals: a vector space per vertex
//! and a matrix per arrow. Left `A`-modules are covariant representations.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::One;

use super::linalg::{Matrix, Q};
use crate::error::{Error, Result};
use crate::presentation::{ArrowId, MonomialPresentation, Path, VertexId};

/// Identifies the presentation a representation belongs to.
pub fn fingerprint(pres: &MonomialPresentation) -> u64 {
    let mut h = DefaultHasher::new();
    let q = pres.quiver();
    q.vertex_count().hash(&mut h);
    for a in q.arrows() {
        (a.source, a.target).hash(&mut h);
    }
    for f in pres.minimal_relations() {
        f.composition().hash(&mut h);
    }
    h.finish()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    fingerprint: u64,
    /// `(source, target)` per arrow.
    ends: Arc<[(VertexId, VertexId)]>,
    dims: Vec<usize>,
    /// `maps[a]` is `dims[t(a)] × dims[s(a)]`.
    maps: Vec<Matrix>,
}

impl Representation {
    /// Checks shapes and that every minimal relation acts as zero.
    pub fn new(pres: &MonomialPresentation, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let quiver = pres.quiver();
        if dims.len() != quiver.vertex_count() || maps.len() != quiver.arrow_count() {
            return Err(Error::PresentationMismatch);
        }
        for (a, m) in maps.iter().enumerate() {
            let arrow = quiver.arrow(a);
            if m.rows() != dims[arrow.target] || m.cols() != dims[arrow.source] {
                return Err(Error::InternalInvariantViolation(format!(
                    "matrix for arrow {} has shape {}×{}, expected {}×{}",
                    arrow.name,
                    m.rows(),
                    m.cols(),
                    dims[arrow.target],
                    dims[arrow.source]
                )));
            }
        }
        let rep = Representation {
            fingerprint: fingerprint(pres),
            ends: arrow_ends(pres),
            dims,
            maps,
        };
        for f in pres.minimal_relations() {
            if !rep.path_matrix(f).is_zero() {
                return Err(Error::InternalInvariantViolation(format!(
                    "relation {} does not act as zero",
                    pres.display_path(f)
                )));
            }
        }
        Ok(rep)
    }

    pub fn zero(pres: &MonomialPresentation) -> Self {
        let quiver = pres.quiver();
        Representation {
            fingerprint: fingerprint(pres),
            ends: arrow_ends(pres),
            dims: vec![0; quiver.vertex_count()],
            maps: quiver.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn map(&self, a: ArrowId) -> &Matrix {
        &self.maps[a]
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.maps.len()
    }

    /// The action of a path, `M(αn)⋯M(α1)`; the identity for trivial paths.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dims[p.source()]);
        for a in p.traversal() {
            m = self.maps[a].mul(&m);
        }
        m
    }

    pub fn same_presentation(&self, other: &Representation) -> Result<()> {
        if self.fingerprint == other.fingerprint && self.dims.len() == other.dims.len() {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.same_presentation(other)?;
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| block_diag(a, b))
            .collect();
        Ok(Representation {
            fingerprint: self.fingerprint,
            ends: self.ends.clone(),
            dims,
            maps,
        })
    }

    /// `(source, target)` of an arrow.
    pub fn ends(&self, a: ArrowId) -> (VertexId, VertexId) {
        self.ends[a]
    }

    /// Same quiver and relations as `self`, new spaces and maps; relations not rechecked.
    pub(crate) fn with_parts(&self, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        debug_assert_eq!(dims.len(), self.dims.len());
        debug_assert_eq!(maps.len(), self.maps.len());
        Representation {
            fingerprint: self.fingerprint,
            ends: self.ends.clone(),
            dims,
            maps,
        }
    }
}

fn arrow_ends(pres: &MonomialPresentation) -> Arc<[(VertexId, VertexId)]> {
    pres.quiver().arrows().iter().map(|a| (a.source, a.target)).collect()
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
        }
    }
    m
}

/// A representation whose basis at each vertex is a list of labels, with each
/// arrow sending a label to another label or to zero.
fn monomial_rep(
    pres: &MonomialPresentation,
    labels: &[Vec<Path>],
    act: impl Fn(ArrowId, &Path) -> Option<Path>,
) -> Representation {
    let quiver = pres.quiver();
    let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
    let maps = (0..quiver.arrow_count())
        .map(|a| {
            let arrow = quiver.arrow(a);
            let mut m = Matrix::zeros(dims[arrow.target], dims[arrow.source]);
            for (j, x) in labels[arrow.source].iter().enumerate() {
                if let Some(y) = act(a, x) {
                    let i = labels[arrow.target]
                        .iter()
                        .position(|z| *z == y)
                        .expect("image label present");
                    m.set(i, j, Q::one());
                }
            }
            m
        })
        .collect();
    Representation::new(pres, dims, maps).expect("monomial constructions satisfy the relations")
}

/// `Ap` with basis the nonzero paths `q′∘p`, arrows acting by left concatenation.
pub fn path_module_rep(pres: &MonomialPresentation, p: &Path) -> Result<Representation> {
    let basis = pres.cyclic_module_basis(p)?;
    let mut labels = vec![Vec::new(); pres.quiver().vertex_count()];
    for q in basis.paths {
        labels[q.target()].push(q);
    }
    Ok(monomial_rep(pres, &labels, |a, q| {
        let aq = Path::arrow(pres.quiver(), a).compose(q)?;
        pres.is_nonzero(&aq).then_some(aq)
    }))
}

pub fn projective_rep(pres: &MonomialPresentation, v: VertexId) -> Representation {
    path_module_rep(pres, &Path::trivial(v)).expect("trivial paths are nonzero")
}

/// `I_v = D(e_v A)`: basis `q*` for nonzero `q` ending at `v`, placed at `s(q)`;
/// `α·q* = q′*` when `q = q′∘α`, zero otherwise.
pub fn injective_rep(pres: &MonomialPresentation, v: VertexId) -> Result<Representation> {
    let basis = pres.enumerate_basis()?;
    let quiver = pres.quiver();
    let mut labels = vec![Vec::new(); quiver.vertex_count()];
    for q in basis.into_vertex(v) {
        labels[q.source()].push(q.clone());
    }
    Ok(monomial_rep(pres, &labels, |a, q| {
        let first = q.traversal().next()?;
        (first == a).then(|| q.left_factor(quiver, q.len() - 1))
    }))
}

pub fn simple_rep(pres: &MonomialPresentation, v: VertexId) -> Representation {
    let mut labels = vec![Vec::new(); pres.quiver().vertex_count()];
    labels[v].push(Path::trivial(v));
    monomial_rep(pres, &labels, |_, _| None)
}

/// `A` as a left module: `⊕_v Ae_v`.
pub fn regular_rep(pres: &MonomialPresentation) -> Representation {
    (0..pres.quiver().vertex_count()).fold(Representation::zero(pres), |acc, v| {
        acc.direct_sum(&projective_rep(pres, v)).expect("same presentation")
    })
}

/// `D(A_A) = ⊕_v I_v`.
pub fn dual_regular_rep(pres: &MonomialPresentation) -> Result<Representation> {
    let mut acc = Representation::zero(pres);
    for v in 0..pres.quiver().vertex_count() {
        acc = acc.direct_sum(&injective_rep(pres, v)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load;

    #[test]
    fn path_modules() {
        let z3 = load("z3r2");
        let s2 = path_module_rep(&z3, &z3.path(&["a1"]).unwrap()).unwrap();
        assert_eq!(s2.dims(), &[0, 1, 0]);
        assert_eq!(s2, simple_rep(&z3, 1));

        let z2 = load("z2r3");
        let a = path_module_rep(&z2, &z2.path(&["a"]).unwrap()).unwrap();
        assert_eq!(a.dims(), &[1, 1]);
        let (ia, ib) = (z2.quiver().arrow_id("a").unwrap(), z2.quiver().arrow_id("b").unwrap());
        assert_eq!(a.map(ib), &Matrix::from_i64(1, 1, &[1]));
        assert_eq!(a.map(ia), &Matrix::from_i64(1, 1, &[0]));

        let zero = z2.path(&["a", "b", "a"]).unwrap();
        assert!(matches!(path_module_rep(&z2, &zero), Err(Error::ZeroPath(_))));
        assert_eq!(projective_rep(&z2, 0).dim(), 3);
    }

    #[test]
    fn injectives_and_duals() {
        let lin = load("lin");
        // I_3 = D(e_3 A): paths ending at 3 are e_3, b
        let i3 = injective_rep(&lin, 2).unwrap();
        assert_eq!(i3.dims(), &[0, 1, 1]);
        assert_eq!(dual_regular_rep(&lin).unwrap().dim(), lin.dimension().unwrap());
        assert_eq!(regular_rep(&lin).dim(), lin.dimension().unwrap());
    }

    #[test]
    fn relations_are_enforced() {
        let lin = load("lin");
        let one = Matrix::from_i64(1, 1, &[1]);
        let err = Representation::new(&lin, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
        assert!(matches!(err, Error::InternalInvariantViolation(_)));
    }

    #[test]
    fn mismatched_presentations() {
        let a = simple_rep(&load("lin"), 0);
        let b = simple_rep(&load("z3r2"), 0);
        assert_eq!(a.direct_sum(&b), Err(Error::PresentationMismatch));
    }
}
