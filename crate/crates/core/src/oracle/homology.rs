//! Hom spaces, projective covers and syzygies, and the bookkeeping built on
//! top: splitting modules into path modules, projective dimension, Ext,
//! Gorenstein and Gorenstein-projective tests.
//!
//! Over a monomial algebra every syzygy is a direct sum of path modules `Ap`,
//! so after one step a resolution only ever visits finitely many isomorphism
//! classes. Each class is a node; `Ω` gives its out-edges with multiplicities.
//! Two path modules with the same top are compared by the rank of the pairing
//! `Hom(X,Y) × Hom(Y,X) → End(X)/rad End(X) = k`.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::linalg::{sparse_null_space, Matrix, Q};
use super::rep::{injective_rep, path_module_rep, projective_rep, regular_rep, simple_rep, Representation};
use crate::error::{Error, Result};
use crate::presentation::{MonomialPresentation, Path, Quiver, VertexId};

/// A homomorphism as one matrix per vertex (`N_v × M_v`).
pub type HomMap = Vec<Matrix>;

/// Basis of `Hom(M, N)`: solutions of `N(a) f_s = f_t M(a)` for every arrow.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<HomMap>> {
    m.same_presentation(n)?;
    let nv = m.vertex_count();
    let (dm, dn) = (m.dims(), n.dims());
    let mut off = vec![0usize; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + dn[v] * dm[v];
    }
    let unknowns = off[nv];
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    for a in 0..m.arrow_count() {
        let (s, t) = m.ends(a);
        let (ma, na) = (m.map(a), n.map(a));
        for i in 0..dn[t] {
            for j in 0..dm[s] {
                let mut row = Vec::new();
                for k in 0..dn[s] {
                    let x = na.get(i, k);
                    if !x.is_zero() {
                        row.push((off[s] + k * dm[s] + j, x.clone()));
                    }
                }
                for k in 0..dm[t] {
                    let x = ma.get(k, j);
                    if !x.is_zero() {
                        row.push((off[t] + i * dm[t] + k, -x.clone()));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    Ok(sparse_null_space(rows, unknowns)
        .into_iter()
        .map(|vec| {
            (0..nv)
                .map(|v| {
                    let mut f = Matrix::zeros(dn[v], dm[v]);
                    for i in 0..dn[v] {
                        for j in 0..dm[v] {
                            let x = &vec[off[v] + i * dm[v] + j];
                            if !x.is_zero() {
                                f.set(i, j, x.clone());
                            }
                        }
                    }
                    f
                })
                .collect()
        })
        .collect())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// `dim Hom(M,N)` minus the maps factoring through the projective cover of `N`.
pub fn stable_hom_dim(pres: &MonomialPresentation, m: &Representation, n: &Representation) -> Result<usize> {
    let all = hom_space(m, n)?;
    if all.is_empty() {
        return Ok(0);
    }
    let cover = projective_cover(pres, n)?;
    let through = hom_space(m, &cover.cover)?;
    let flat = |f: &HomMap| -> Vec<Q> {
        f.iter()
            .flat_map(|mat| (0..mat.rows()).flat_map(move |i| mat.row(i).to_vec()))
            .collect()
    };
    let vectors: Vec<Vec<Q>> = through
        .iter()
        .map(|g| {
            let composed: HomMap = g.iter().zip(&cover.map).map(|(gv, pv)| pv.mul(gv)).collect();
            flat(&composed)
        })
        .collect();
    if vectors.is_empty() {
        return Ok(all.len());
    }
    let len = vectors[0].len();
    let factoring = Matrix::from_columns(len, &vectors).rank();
    Ok(all.len() - factoring)
}

/// Dimension of the top `M/rad M` at each vertex.
pub fn top_dims(m: &Representation) -> Vec<usize> {
    (0..m.vertex_count())
        .map(|w| m.dims()[w] - radical_span(m, w).rank())
        .collect()
}

fn radical_span(m: &Representation, w: VertexId) -> Matrix {
    let mut rad = Matrix::zeros(m.dims()[w], 0);
    for a in 0..m.arrow_count() {
        if m.ends(a).1 == w {
            rad = rad.hstack(m.map(a));
        }
    }
    rad
}

/// `π : P → M` with `P = ⊕ Ae_{v_j}` minimal.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Vertex of each summand `Ae_v`.
    pub generators: Vec<VertexId>,
    /// Basis of `P` at each vertex: (summand index, path out of its vertex).
    pub labels: Vec<Vec<(usize, Path)>>,
    pub cover: Representation,
    /// `π_w : P_w → M_w`.
    pub map: Vec<Matrix>,
}

pub fn projective_cover(pres: &MonomialPresentation, m: &Representation) -> Result<ProjectiveCover> {
    let basis = pres.enumerate_basis()?;
    let quiver = pres.quiver();
    let nv = m.vertex_count();
    let mut generators = Vec::new();
    let mut images: Vec<Vec<Q>> = Vec::new();
    for w in 0..nv {
        for idx in radical_span(m, w).complement_basis() {
            let mut g = vec![Q::zero(); m.dims()[w]];
            g[idx] = Q::from_integer(1.into());
            generators.push(w);
            images.push(g);
        }
    }
    let mut labels: Vec<Vec<(usize, Path)>> = vec![Vec::new(); nv];
    for (j, &v) in generators.iter().enumerate() {
        for q in basis.from_vertex(v) {
            labels[q.target()].push((j, q.clone()));
        }
    }
    let index: Vec<HashMap<(usize, Path), usize>> = labels
        .iter()
        .map(|ls| ls.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect())
        .collect();
    let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
    let maps = (0..m.arrow_count())
        .map(|a| {
            let (s, t) = m.ends(a);
            let mut mat = Matrix::zeros(dims[t], dims[s]);
            for (col, (j, q)) in labels[s].iter().enumerate() {
                let aq = Path::arrow(quiver, a).compose(q).expect("composable");
                if let Some(&row) = index[t].get(&(*j, aq)) {
                    mat.set(row, col, Q::from_integer(1.into()));
                }
            }
            mat
        })
        .collect();
    let map = (0..nv)
        .map(|w| {
            let cols: Vec<Vec<Q>> = labels[w]
                .iter()
                .map(|(j, q)| m.path_matrix(q).mul_vec(&images[*j]))
                .collect();
            Matrix::from_columns(m.dims()[w], &cols)
        })
        .collect();
    Ok(ProjectiveCover {
        generators,
        labels,
        cover: m.with_parts(dims, maps),
        map,
    })
}

/// `Ω(M)`, the kernel of the projective cover, with the minimality check
/// that the kernel sits inside the radical of the cover.
pub fn syzygy(pres: &MonomialPresentation, m: &Representation) -> Result<Representation> {
    let cover = projective_cover(pres, m)?;
    let nv = m.vertex_count();
    let kernels: Vec<Matrix> = cover.map.iter().map(Matrix::null_space).collect();
    for w in 0..nv {
        for (row, (_, q)) in cover.labels[w].iter().enumerate() {
            if q.is_trivial() && (0..kernels[w].cols()).any(|c| !kernels[w].get(row, c).is_zero()) {
                return Err(Error::InternalInvariantViolation(
                    "projective cover is not minimal: kernel leaves the radical".into(),
                ));
            }
        }
    }
    let dims: Vec<usize> = kernels.iter().map(Matrix::cols).collect();
    let mut maps = Vec::with_capacity(m.arrow_count());
    for a in 0..m.arrow_count() {
        let (s, t) = m.ends(a);
        let image = cover.cover.map(a).mul(&kernels[s]);
        let induced = kernels[t]
            .solve(&image)
            .ok_or_else(|| Error::InternalInvariantViolation("cover map does not preserve its kernel".into()))?;
        maps.push(induced);
    }
    Ok(m.with_parts(dims, maps))
}

/// Projective or injective dimension: finite, infinite, or undecided within the cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DimStatus {
    Finite(usize),
    CutoffReached(usize),
    Infinite,
}

impl DimStatus {
    pub fn finite(self) -> Option<usize> {
        match self {
            DimStatus::Finite(d) => Some(d),
            _ => None,
        }
    }

    fn succ(self) -> DimStatus {
        match self {
            DimStatus::Finite(d) => DimStatus::Finite(d + 1),
            other => other,
        }
    }
}

impl fmt::Display for DimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimStatus::Finite(d) => write!(f, "{d}"),
            DimStatus::Infinite => f.write_str("infinite"),
            DimStatus::CutoffReached(c) => write!(f, "undecided after {c} steps"),
        }
    }
}

impl Serialize for DimStatus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DimStatus::Finite(d) => s.serialize_u64(*d as u64),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

pub type ClassId = usize;

/// A module as far as the oracle knows it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Module {
    /// `⊕ X_c^{m_c}` over path-module classes, sorted by class.
    Sum(Vec<(ClassId, u128)>),
    /// Did not split into path modules; second syzygies always do.
    Opaque(Representation),
}

impl Module {
    pub fn is_zero(&self) -> bool {
        match self {
            Module::Sum(v) => v.is_empty(),
            Module::Opaque(r) => r.is_zero(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassData {
    /// Least path whose module lies in this class.
    pub generator: Path,
    pub rep: Representation,
}

#[derive(Clone, Copy)]
enum PdState {
    Visiting,
    Done(DimStatus),
}

#[derive(Default)]
struct Cache {
    path_class: HashMap<Path, ClassId>,
    classes: Vec<ClassData>,
    buckets: HashMap<(VertexId, Vec<Vec<usize>>), ClassId>,
    omega: HashMap<ClassId, Vec<(ClassId, u128)>>,
    pd: HashMap<ClassId, PdState>,
    gp: HashMap<ClassId, bool>,
    hom_regular: HashMap<ClassId, usize>,
    profile: Option<InjectiveDimensionProfile>,
}

/// Per-call workspace: memoised path-module classes and their syzygies.
pub struct Oracle<'a> {
    pres: &'a MonomialPresentation,
    regular: Representation,
    cache: RefCell<Cache>,
}

impl<'a> Oracle<'a> {
    pub fn new(pres: &'a MonomialPresentation) -> Result<Self> {
        pres.enumerate_basis()?;
        Ok(Oracle {
            pres,
            regular: regular_rep(pres),
            cache: RefCell::new(Cache::default()),
        })
    }

    pub fn presentation(&self) -> &MonomialPresentation {
        self.pres
    }

    /// Default resolution cutoff: `dim A + |Q_0|`.
    pub fn default_cutoff(&self) -> usize {
        self.pres.dimension().expect("checked in new") + self.pres.quiver().vertex_count()
    }

    pub fn class(&self, c: ClassId) -> ClassData {
        self.cache.borrow().classes[c].clone()
    }

    pub fn class_count(&self) -> usize {
        self.cache.borrow().classes.len()
    }

    /// Isomorphism class of `Ap`. `Ap ≅ Ae_t/U` with `U` the monomial left
    /// ideal of paths killing `p`, and such quotients are isomorphic only when
    /// the ideals agree; so the surviving continuations are a complete key.
    pub fn class_of(&self, p: &Path) -> Result<ClassId> {
        if let Some(&c) = self.cache.borrow().path_class.get(p) {
            return Ok(c);
        }
        let survivors: Vec<Vec<usize>> = self
            .pres
            .cyclic_module_basis(p)?
            .paths
            .iter()
            .map(|q| q.traversal().skip(p.len()).collect())
            .collect();
        let key = (p.target(), survivors);
        let found = self.cache.borrow().buckets.get(&key).copied();
        let c = match found {
            Some(c) => c,
            None => {
                let rep = path_module_rep(self.pres, p)?;
                let mut cache = self.cache.borrow_mut();
                let c = cache.classes.len();
                cache.classes.push(ClassData {
                    generator: p.clone(),
                    rep,
                });
                cache.buckets.insert(key, c);
                c
            }
        };
        self.cache.borrow_mut().path_class.insert(p.clone(), c);
        Ok(c)
    }

    /// Splits `M` into path modules, or returns it opaque.
    ///
    /// For each top vertex `v` the candidates are ordered by their annihilator
    /// sets `U_X` (paths from `v` killing the generator). Elements of `M_v`
    /// killed by `U_X` give maps `X → M`; the ones new modulo the radical and
    /// the larger annihilators count copies of `X`. The chosen maps assemble
    /// to `⊕X → M`, accepted only if it is onto the top and dimensions agree,
    /// i.e. an isomorphism.
    pub fn decompose(&self, m: &Representation) -> Result<Module> {
        let tops = top_dims(m);
        let basis = self.pres.enumerate_basis()?;
        let mut parts = Vec::new();
        let mut covered = vec![0usize; m.vertex_count()];
        for v in (0..tops.len()).filter(|&v| tops[v] > 0) {
            let mut classes = BTreeSet::new();
            for p in basis.into_vertex(v) {
                let dims = self.pres.cyclic_module_basis(p)?.dim_vector;
                if dims.iter().zip(m.dims()).all(|(a, b)| a <= b) {
                    classes.insert(self.class_of(p)?);
                }
            }
            let classes: Vec<ClassId> = classes.into_iter().collect();
            let q = self.pres.quiver();
            let mut actions = PathActions::new(q, m);
            let mut kills = Vec::with_capacity(classes.len());
            let mut kernels = Vec::with_capacity(classes.len());
            for &c in &classes {
                let x = self.class(c).rep;
                let mut x0 = vec![Q::zero(); x.dims()[v]];
                x0[0] = Q::from_integer(1.into());
                let killed: BTreeSet<&Path> = basis
                    .from_vertex(v)
                    .filter(|u| x.path_matrix(u).mul_vec(&x0).iter().all(Zero::is_zero))
                    .collect();
                // U_X is closed under adding arrows on the left; its minimal
                // members lose that property when the last arrow is dropped
                let minimal: Vec<&Path> = killed
                    .iter()
                    .copied()
                    .filter(|u| !u.is_trivial() && !killed.contains(&u.right_factor(q, u.len() - 1)))
                    .collect();
                let mut rows: Vec<Vec<(usize, Q)>> = Vec::new();
                for u in minimal {
                    let a = actions.get(u);
                    for r in 0..a.rows() {
                        let row: Vec<(usize, Q)> = (0..a.cols())
                            .filter(|&j| !a.get(r, j).is_zero())
                            .map(|j| (j, a.get(r, j).clone()))
                            .collect();
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
                kills.push(killed);
                kernels.push(sparse_null_space(rows, m.dims()[v]));
            }
            let rad = radical_span(m, v);
            let rad_rank = rad.rank();
            let mut picked: Vec<Vec<Q>> = Vec::new();
            for i in 0..classes.len() {
                if kernels[i].is_empty() {
                    continue;
                }
                let mut cols: Vec<Vec<Q>> = (0..rad.cols()).map(|j| rad.column(j)).collect();
                for j in 0..classes.len() {
                    if j != i && kills[i].is_subset(&kills[j]) {
                        cols.extend(kernels[j].iter().cloned());
                    }
                }
                let before = cols.len();
                cols.extend(kernels[i].iter().cloned());
                let (_, pivots) = Matrix::from_columns(m.dims()[v], &cols).rref();
                let new: Vec<Vec<Q>> = pivots
                    .into_iter()
                    .filter(|&j| j >= before)
                    .map(|j| cols[j].clone())
                    .collect();
                if new.is_empty() {
                    continue;
                }
                for (acc, d) in covered.iter_mut().zip(self.class(classes[i]).rep.dims()) {
                    *acc += new.len() * d;
                }
                parts.push((classes[i], new.len() as u128));
                picked.extend(new);
            }
            if rad_rank + picked.len() != m.dims()[v] {
                return Ok(Module::Opaque(m.clone()));
            }
            let mut all: Vec<Vec<Q>> = (0..rad.cols()).map(|j| rad.column(j)).collect();
            all.extend(picked);
            if Matrix::from_columns(m.dims()[v], &all).rank() != m.dims()[v] {
                return Ok(Module::Opaque(m.clone()));
            }
        }
        if covered == m.dims() {
            parts.sort();
            Ok(Module::Sum(parts))
        } else {
            Ok(Module::Opaque(m.clone()))
        }
    }

    /// `Ω(X_c)` as a sum of classes.
    pub fn omega_class(&self, c: ClassId) -> Result<Vec<(ClassId, u128)>> {
        if let Some(v) = self.cache.borrow().omega.get(&c) {
            return Ok(v.clone());
        }
        let rep = self.class(c).rep;
        let syz = syzygy(self.pres, &rep)?;
        let parts = match self.decompose(&syz)? {
            Module::Sum(parts) => parts,
            Module::Opaque(_) => {
                return Err(Error::InternalInvariantViolation(format!(
                    "syzygy of {} is not a sum of path modules",
                    self.pres.display_path(&self.class(c).generator)
                )))
            }
        };
        self.cache.borrow_mut().omega.insert(c, parts.clone());
        Ok(parts)
    }

    pub fn is_projective_class(&self, c: ClassId) -> Result<bool> {
        Ok(self.omega_class(c)?.is_empty())
    }

    pub fn omega(&self, m: &Module) -> Result<Module> {
        match m {
            Module::Sum(parts) => {
                let mut acc: BTreeMap<ClassId, u128> = BTreeMap::new();
                for &(c, mult) in parts {
                    for (d, k) in self.omega_class(c)? {
                        let add = mult.checked_mul(k).ok_or(Error::Overflow)?;
                        let e = acc.entry(d).or_insert(0);
                        *e = e.checked_add(add).ok_or(Error::Overflow)?;
                    }
                }
                Ok(Module::Sum(acc.into_iter().collect()))
            }
            Module::Opaque(rep) => self.decompose(&syzygy(self.pres, rep)?),
        }
    }

    /// Projective dimension of a class; a cycle of syzygy classes means infinite.
    pub fn pd_class(&self, c: ClassId) -> Result<DimStatus> {
        match self.cache.borrow().pd.get(&c) {
            Some(PdState::Done(d)) => return Ok(*d),
            Some(PdState::Visiting) => return Ok(DimStatus::Infinite),
            None => {}
        }
        self.cache.borrow_mut().pd.insert(c, PdState::Visiting);
        let children = self.omega_class(c)?;
        let mut best = DimStatus::Finite(0);
        for (d, _) in children {
            best = best.max(self.pd_class(d)?.succ());
        }
        self.cache.borrow_mut().pd.insert(c, PdState::Done(best));
        Ok(best)
    }

    pub fn pd_module(&self, m: &Module, cutoff: usize) -> Result<DimStatus> {
        match m {
            Module::Sum(parts) => {
                let mut best = DimStatus::Finite(0);
                for &(c, _) in parts {
                    best = best.max(self.pd_class(c)?);
                }
                Ok(best)
            }
            Module::Opaque(rep) => {
                if cutoff == 0 {
                    return Ok(DimStatus::CutoffReached(self.default_cutoff()));
                }
                let syz = syzygy(self.pres, rep)?;
                if syz.is_zero() {
                    return Ok(DimStatus::Finite(0));
                }
                Ok(self.pd_module(&self.decompose(&syz)?, cutoff - 1)?.succ())
            }
        }
    }

    pub fn projective_dimension(&self, m: &Representation) -> Result<DimStatus> {
        self.pd_module(&self.decompose(m)?, self.default_cutoff())
    }

    fn hom_class(&self, c: ClassId, n: &Representation) -> Result<usize> {
        let data = self.class(c);
        Ok(homs_from_local(self.pres, &data.rep, data.generator.target(), n)?.len())
    }

    fn hom_class_regular(&self, c: ClassId) -> Result<usize> {
        if let Some(&h) = self.cache.borrow().hom_regular.get(&c) {
            return Ok(h);
        }
        let h = self.hom_class(c, &self.regular)?;
        self.cache.borrow_mut().hom_regular.insert(c, h);
        Ok(h)
    }

    fn hom_module(&self, m: &Module, n: &Representation, regular: bool) -> Result<u128> {
        match m {
            Module::Sum(parts) => {
                let mut total: u128 = 0;
                for &(c, mult) in parts {
                    let h = if regular {
                        self.hom_class_regular(c)?
                    } else {
                        self.hom_class(c, n)?
                    };
                    total = total
                        .checked_add(mult.checked_mul(h as u128).ok_or(Error::Overflow)?)
                        .ok_or(Error::Overflow)?;
                }
                Ok(total)
            }
            Module::Opaque(rep) => Ok(hom_dim(rep, n)? as u128),
        }
    }

    /// `Ext^1(M,N) = hom(ΩM,N) − hom(P(M),N) + hom(M,N)` from the cover sequence.
    fn ext1_module(&self, m: &Module, n: &Representation, regular: bool) -> Result<u128> {
        let tops: Vec<u128> = match m {
            Module::Sum(parts) => {
                let mut t = vec![0u128; n.vertex_count()];
                for &(c, mult) in parts {
                    let v = self.class(c).generator.target();
                    t[v] = t[v].checked_add(mult).ok_or(Error::Overflow)?;
                }
                t
            }
            Module::Opaque(rep) => top_dims(rep).into_iter().map(|x| x as u128).collect(),
        };
        let mut cover_hom: u128 = 0;
        for (v, t) in tops.iter().enumerate() {
            cover_hom = cover_hom
                .checked_add(t.checked_mul(n.dims()[v] as u128).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)?;
        }
        let omega = self.omega(m)?;
        let positive = self
            .hom_module(&omega, n, regular)?
            .checked_add(self.hom_module(m, n, regular)?)
            .ok_or(Error::Overflow)?;
        positive
            .checked_sub(cover_hom)
            .ok_or_else(|| Error::InternalInvariantViolation("negative Ext dimension from the cover sequence".into()))
    }

    /// `Ext^1(M, N)` for a module already split into classes.
    pub fn ext1(&self, m: &Module, n: &Representation) -> Result<u128> {
        self.ext1_module(m, n, false)
    }

    fn ext_module(&self, m: &Module, n: &Representation, k: usize, regular: bool) -> Result<u128> {
        assert!(k >= 1, "Ext degree starts at 1");
        let mut cur = m.clone();
        for _ in 1..k {
            if cur.is_zero() {
                return Ok(0);
            }
            cur = self.omega(&cur)?;
        }
        self.ext1_module(&cur, n, regular)
    }

    pub fn ext_dim(&self, m: &Representation, n: &Representation, k: usize) -> Result<u128> {
        m.same_presentation(n)?;
        let regular = n == &self.regular;
        self.ext_module(&self.decompose(m)?, n, k, regular)
    }

    pub fn ext_class_regular(&self, c: ClassId, k: usize) -> Result<u128> {
        self.ext_module(&Module::Sum(vec![(c, 1)]), &self.regular.clone(), k, true)
    }

    /// `pd D(A)` over `A` and over `A^op`.
    pub fn profile(&self) -> Result<InjectiveDimensionProfile> {
        if let Some(p) = self.cache.borrow().profile {
            return Ok(p);
        }
        let pd_of_dual = self.max_injective_pd()?;
        let op = self.pres.opposite();
        let id_of_regular = Oracle::new(&op)?.max_injective_pd()?;
        let gorenstein = pd_of_dual.finite().is_some() && id_of_regular.finite().is_some();
        let profile = InjectiveDimensionProfile {
            pd_of_dual,
            id_of_regular,
            gorenstein,
            level: match (pd_of_dual, id_of_regular) {
                (DimStatus::Finite(a), DimStatus::Finite(b)) => Some(a.max(b)),
                _ => None,
            },
        };
        self.cache.borrow_mut().profile = Some(profile);
        Ok(profile)
    }

    fn max_injective_pd(&self) -> Result<DimStatus> {
        let mut best = DimStatus::Finite(0);
        for v in 0..self.pres.quiver().vertex_count() {
            best = best.max(self.projective_dimension(&injective_rep(self.pres, v)?)?);
        }
        Ok(best)
    }

    pub fn global_dimension(&self) -> Result<DimStatus> {
        let mut best = DimStatus::Finite(0);
        for v in 0..self.pres.quiver().vertex_count() {
            best = best.max(self.projective_dimension(&simple_rep(self.pres, v))?);
        }
        Ok(best)
    }

    fn require_gorenstein(&self) -> Result<usize> {
        let p = self.profile()?;
        p.level.ok_or(Error::NotGorenstein {
            pd_of_dual: p.pd_of_dual.to_string(),
            id_of_regular: p.id_of_regular.to_string(),
        })
    }

    /// `Ext^k(X_c, A) = 0` for `1 ≤ k ≤ d` and `X_c` torsionless.
    pub fn is_gp_class(&self, c: ClassId) -> Result<bool> {
        let d = self.require_gorenstein()?;
        if let Some(&b) = self.cache.borrow().gp.get(&c) {
            return Ok(b);
        }
        let mut gp = true;
        for k in 1..=d {
            if self.ext_class_regular(c, k)? != 0 {
                gp = false;
                break;
            }
        }
        if gp {
            gp = torsionless(self.pres, &self.class(c).rep)?;
        }
        self.cache.borrow_mut().gp.insert(c, gp);
        Ok(gp)
    }

    pub fn is_gorenstein_projective(&self, m: &Representation) -> Result<bool> {
        let d = self.require_gorenstein()?;
        match self.decompose(m)? {
            Module::Sum(parts) => {
                for (c, _) in parts {
                    if !self.is_gp_class(c)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            opaque => {
                for k in 1..=d {
                    if self.ext_module(&opaque, &self.regular.clone(), k, true)? != 0 {
                        return Ok(false);
                    }
                }
                torsionless(self.pres, m)
            }
        }
    }

    /// Minimal projective resolution of `M`, summarised step by step.
    pub fn resolution_trace(&self, m: &Representation, cutoff: usize) -> Result<ResolutionTrace> {
        let mut cur = self.decompose(m)?;
        let mut steps = Vec::new();
        let mut seen: Vec<BTreeSet<ClassId>> = Vec::new();
        loop {
            if cur.is_zero() {
                let len = steps.len().saturating_sub(1);
                return Ok(ResolutionTrace {
                    steps,
                    status: Termination::Finite(len),
                });
            }
            if let Module::Sum(parts) = &cur {
                let support: BTreeSet<ClassId> = parts.iter().map(|p| p.0).collect();
                if let Some(first) = seen.iter().position(|s| *s == support) {
                    return Ok(ResolutionTrace {
                        steps,
                        status: Termination::PeriodicityDetected {
                            first,
                            repeat: seen.len(),
                        },
                    });
                }
                seen.push(support);
            } else {
                seen.push(BTreeSet::new());
            }
            if steps.len() == cutoff {
                return Ok(ResolutionTrace {
                    steps,
                    status: Termination::CutoffReached(cutoff),
                });
            }
            let (dims, tops) = self.shape(&cur)?;
            steps.push(ResolutionStep {
                module_dims: dims,
                cover_tops: tops,
            });
            cur = self.omega(&cur)?;
        }
    }

    fn shape(&self, m: &Module) -> Result<(Vec<u128>, Vec<u128>)> {
        let nv = self.pres.quiver().vertex_count();
        match m {
            Module::Sum(parts) => {
                let (mut dims, mut tops) = (vec![0u128; nv], vec![0u128; nv]);
                for &(c, mult) in parts {
                    let data = self.class(c);
                    for (acc, d) in dims.iter_mut().zip(data.rep.dims()) {
                        *acc = acc
                            .checked_add(mult.checked_mul(*d as u128).ok_or(Error::Overflow)?)
                            .ok_or(Error::Overflow)?;
                    }
                    let v = data.generator.target();
                    tops[v] = tops[v].checked_add(mult).ok_or(Error::Overflow)?;
                }
                Ok((dims, tops))
            }
            Module::Opaque(rep) => Ok((
                rep.dims().iter().map(|&d| d as u128).collect(),
                top_dims(rep).into_iter().map(|d| d as u128).collect(),
            )),
        }
    }
}

/// `M(u)` for paths `u`, built from cached prefixes.
struct PathActions<'m> {
    quiver: &'m Quiver,
    m: &'m Representation,
    cache: HashMap<Path, Matrix>,
}

impl<'m> PathActions<'m> {
    fn new(quiver: &'m Quiver, m: &'m Representation) -> Self {
        PathActions {
            quiver,
            m,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, u: &Path) -> Matrix {
        if let Some(a) = self.cache.get(u) {
            return a.clone();
        }
        let a = if u.is_trivial() {
            Matrix::identity(self.m.dims()[u.source()])
        } else {
            let last = u.traversal().last().expect("nontrivial");
            let prefix = u.right_factor(self.quiver, u.len() - 1);
            self.m.map(last).mul(&self.get(&prefix))
        };
        self.cache.insert(u.clone(), a.clone());
        a
    }
}

/// Basis of `Hom(X, M)` for a cyclic `X` generated by the first basis vector
/// `x0` of `X_v`, as the images `f(x0) ∈ M_v`: exactly the vectors killed by
/// every element of `A e_v` that kills `x0`.
pub fn homs_from_local(
    pres: &MonomialPresentation,
    x: &Representation,
    v: VertexId,
    m: &Representation,
) -> Result<Vec<Vec<Q>>> {
    x.same_presentation(m)?;
    let basis = pres.enumerate_basis()?;
    let dm = m.dims()[v];
    if dm == 0 {
        return Ok(Vec::new());
    }
    let mut x0 = vec![Q::zero(); x.dims()[v]];
    x0[0] = Q::from_integer(1.into());
    let mut by_target: BTreeMap<VertexId, Vec<&Path>> = BTreeMap::new();
    for q in basis.from_vertex(v) {
        by_target.entry(q.target()).or_default().push(q);
    }
    let mut rows: Vec<Vec<(usize, Q)>> = Vec::new();
    for (w, qs) in by_target {
        let images: Vec<Vec<Q>> = qs.iter().map(|q| x.path_matrix(q).mul_vec(&x0)).collect();
        let relations = Matrix::from_columns(x.dims()[w], &images).null_space();
        if relations.cols() == 0 || m.dims()[w] == 0 {
            continue;
        }
        let actions: Vec<Matrix> = qs.iter().map(|q| m.path_matrix(q)).collect();
        for r in 0..relations.cols() {
            let mut combo = Matrix::zeros(m.dims()[w], dm);
            for (i, act) in actions.iter().enumerate() {
                let coef = relations.get(i, r);
                if coef.is_zero() {
                    continue;
                }
                for a in 0..act.rows() {
                    for b in 0..act.cols() {
                        let y = act.get(a, b);
                        if !y.is_zero() {
                            let cur = combo.get(a, b) + coef * y;
                            combo.set(a, b, cur);
                        }
                    }
                }
            }
            for a in 0..combo.rows() {
                let row: Vec<(usize, Q)> = (0..dm)
                    .filter(|&b| !combo.get(a, b).is_zero())
                    .map(|b| (b, combo.get(a, b).clone()))
                    .collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    Ok(sparse_null_space(rows, dm))
}

/// Multiplicity of the cyclic, simple-topped `X` (generator `x0 ∈ X_v`) as a
/// direct summand of `M`.
pub fn pairing_rank(pres: &MonomialPresentation, x: &Representation, v: VertexId, m: &Representation) -> Result<usize> {
    let into = homs_from_local(pres, x, v, m)?;
    if into.is_empty() {
        return Ok(0);
    }
    let back = hom_space(m, x)?;
    if back.is_empty() {
        return Ok(0);
    }
    let mut pairing = Matrix::zeros(into.len(), back.len());
    for (i, f) in into.iter().enumerate() {
        for (j, g) in back.iter().enumerate() {
            // coefficient of x0 in g(f(x0))
            let row = g[v].row(0);
            let mut acc = Q::zero();
            for (a, b) in row.iter().zip(f) {
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            pairing.set(i, j, acc);
        }
    }
    Ok(pairing.rank())
}

/// `M` embeds into a free module: the maps `M → Ae_v` jointly separate points.
pub fn torsionless(pres: &MonomialPresentation, m: &Representation) -> Result<bool> {
    let nv = m.vertex_count();
    let mut stacks: Vec<Matrix> = (0..nv).map(|w| Matrix::zeros(0, m.dims()[w])).collect();
    for v in 0..nv {
        for f in hom_space(m, &projective_rep(pres, v))? {
            for w in 0..nv {
                stacks[w] = stacks[w].vstack(&f[w]);
            }
        }
    }
    Ok((0..nv).all(|w| stacks[w].rank() == m.dims()[w]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InjectiveDimensionProfile {
    /// `pd_A D(A_A)`.
    pub pd_of_dual: DimStatus,
    /// `id _A A`, computed as `pd` of `D(_A A)` over the opposite algebra.
    pub id_of_regular: DimStatus,
    pub gorenstein: bool,
    pub level: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionStep {
    /// Dimension vector of the module resolved at this step.
    pub module_dims: Vec<u128>,
    /// Multiplicity of each `Ae_v` in its projective cover.
    pub cover_tops: Vec<u128>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Termination {
    /// Projective dimension.
    Finite(usize),
    /// The set of syzygy classes at step `repeat` already occurred at step `first`.
    PeriodicityDetected {
        first: usize,
        repeat: usize,
    },
    CutoffReached(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionTrace {
    pub steps: Vec<ResolutionStep>,
    pub status: Termination,
}
