//! Vertex gluing `S ↦ S_E` along an involution, the bar quiver `Q̄`, and the
//! invariants a singularity equivalence `S ≃ S_E` must preserve.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gorenstein::{is_one_gorenstein, singularity_decomposition};
use crate::oracle::Oracle;
use crate::perfection::perfect_paths;
use crate::presentation::{MonomialPresentation, Path, Quiver, VertexId};

/// `E` on vertex ids with `E ∘ E = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    map: Vec<VertexId>,
}

impl Involution {
    pub fn identity(n: usize) -> Self {
        Involution { map: (0..n).collect() }
    }

    pub fn from_map(map: Vec<VertexId>) -> Result<Self> {
        for (x, &y) in map.iter().enumerate() {
            if y >= map.len() {
                return Err(Error::InvalidInvolution(format!(
                    "vertex {x} sent to unknown vertex {y}"
                )));
            }
            if map[y] != x {
                return Err(Error::InvalidInvolution(format!("E(E({x})) = {} ≠ {x}", map[y])));
            }
        }
        Ok(Involution { map })
    }

    /// Swaps each named pair, fixes the rest.
    pub fn from_pairs(pres: &MonomialPresentation, pairs: &[(&str, &str)]) -> Result<Self> {
        let n = pres.quiver().vertex_count();
        let mut map: Vec<VertexId> = (0..n).collect();
        let mut used = BTreeSet::new();
        for &(a, b) in pairs {
            let lookup = |name: &str| {
                pres.quiver()
                    .vertex_id(name)
                    .ok_or_else(|| Error::InvalidInvolution(format!("unknown vertex `{name}`")))
            };
            let (x, y) = (lookup(a)?, lookup(b)?);
            if x == y {
                return Err(Error::InvalidInvolution(format!("pair ({a}, {b}) is not a swap")));
            }
            for v in [x, y] {
                if !used.insert(v) {
                    return Err(Error::InvalidInvolution(format!(
                        "vertex `{}` appears in two pairs",
                        pres.quiver().vertex_name(v)
                    )));
                }
            }
            map[x] = y;
            map[y] = x;
        }
        Ok(Involution { map })
    }

    /// `"3:6,1:4"`; whitespace or commas separate pairs.
    pub fn parse_pairs(pres: &MonomialPresentation, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
        {
            let (a, b) = item
                .split_once(':')
                .ok_or_else(|| Error::InvalidInvolution(format!("expected `x:y`, got `{item}`")))?;
            pairs.push((a, b));
        }
        Self::from_pairs(pres, &pairs)
    }

    pub fn apply(&self, x: VertexId) -> VertexId {
        self.map[x]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Pairs `(x, E(x))` with `x < E(x)`.
    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.map.len())
            .filter(|&x| x < self.map[x])
            .map(|x| (x, self.map[x]))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.pairs().is_empty()
    }

    fn check(&self, pres: &MonomialPresentation) -> Result<()> {
        if self.map.len() != pres.quiver().vertex_count() {
            return Err(Error::InvalidInvolution(format!(
                "defined on {} vertices, quiver has {}",
                self.map.len(),
                pres.quiver().vertex_count()
            )));
        }
        Ok(())
    }
}

/// Cyclic chain `p_1, …, p_m` of nontrivial nonzero paths with
/// `t(p_i) = E(s(p_{i+1})) ≠ t(p_i)`; its powers never die in `S_E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingChain {
    pub paths: Vec<Path>,
}

impl GluingChain {
    pub fn describe(&self, pres: &MonomialPresentation) -> String {
        let parts: Vec<String> = self.paths.iter().map(|p| pres.display_path(p)).collect();
        format!("[{}]", parts.join(" | "))
    }
}

/// `Ok(None)` when `S_E` is finite-dimensional, else a cyclic chain.
///
/// A path of `Q(E)` splits at the points where it crosses between `x` and
/// `E(x)`; relations never straddle a crossing, so it is nonzero iff every
/// piece is. Infinite dimension means a cycle in the graph on glued vertices
/// with an edge `s(p) → E(t(p))` per nonzero nontrivial piece `p`.
pub fn glue_is_finite_dimensional(pres: &MonomialPresentation, e: &Involution) -> Result<Option<GluingChain>> {
    e.check(pres)?;
    let basis = pres.enumerate_basis()?;
    let glued = |v: VertexId| e.apply(v) != v;
    let mut edges: BTreeMap<VertexId, Vec<(VertexId, Path)>> = BTreeMap::new();
    for p in basis.nontrivial() {
        if glued(p.source()) && glued(p.target()) {
            edges
                .entry(p.source())
                .or_default()
                .push((e.apply(p.target()), p.clone()));
        }
    }
    // iterative DFS with colours; the stack of taken edges is the witness
    let n = pres.quiver().vertex_count();
    let mut colour = vec![0u8; n];
    for root in (0..n).filter(|&v| glued(v)) {
        if colour[root] != 0 {
            continue;
        }
        let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
        let mut taken: Vec<Path> = Vec::new();
        colour[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let out = edges.get(&v).map(Vec::as_slice).unwrap_or(&[]);
            if *next == out.len() {
                colour[v] = 2;
                stack.pop();
                taken.pop();
                continue;
            }
            let (w, p) = &out[*next];
            *next += 1;
            match colour[*w] {
                0 => {
                    colour[*w] = 1;
                    stack.push((*w, 0));
                    taken.push(p.clone());
                }
                1 => {
                    let start = stack.iter().position(|&(u, _)| u == *w).expect("on stack");
                    let mut paths = taken[start..].to_vec();
                    paths.push(p.clone());
                    return Ok(Some(GluingChain { paths }));
                }
                _ => {}
            }
        }
    }
    Ok(None)
}

/// Name of a vertex after gluing: the class `{x, E(x)}` is `~x` for the
/// earlier-declared `x`; fixed vertices keep their names.
fn glued_names(pres: &MonomialPresentation, e: &Involution) -> Vec<Option<String>> {
    let q = pres.quiver();
    (0..q.vertex_count())
        .map(|x| {
            let y = e.apply(x);
            match x.cmp(&y) {
                std::cmp::Ordering::Equal => Some(q.vertex_name(x).to_string()),
                std::cmp::Ordering::Less => Some(format!("~{}", q.vertex_name(x))),
                std::cmp::Ordering::Greater => None,
            }
        })
        .collect()
}

/// `S_E = kQ(E)/I(E)`: arrows and relation generators carried over verbatim.
pub fn glue(pres: &MonomialPresentation, e: &Involution) -> Result<MonomialPresentation> {
    if let Some(chain) = glue_is_finite_dimensional(pres, e)? {
        return Err(Error::InfiniteDimensional {
            witness: format!("gluing chain {}", chain.describe(pres)),
        });
    }
    let out = glue_unchecked(pres, e)?;
    if let Err(err) = out.enumerate_basis() {
        return Err(Error::InternalInvariantViolation(format!(
            "chain search found no obstruction but the glued algebra fails: {err}"
        )));
    }
    Ok(out)
}

/// The glued presentation without the finite-dimensionality check.
pub fn glue_unchecked(pres: &MonomialPresentation, e: &Involution) -> Result<MonomialPresentation> {
    let q = pres.quiver();
    let mut glued = Quiver::new();
    let mut image = vec![0; q.vertex_count()];
    for (x, name) in glued_names(pres, e).into_iter().enumerate() {
        if let Some(name) = name {
            image[x] = glued.add_vertex(&name)?;
        }
    }
    for x in 0..q.vertex_count() {
        image[x] = image[x.min(e.apply(x))];
    }
    for a in q.arrows() {
        glued.add_arrow(&a.name, image[a.source], image[a.target])?;
    }
    let relations = carry_relations(pres, &glued);
    MonomialPresentation::new(glued, relations)
}

/// Same arrow ids in both quivers.
fn carry_relations(pres: &MonomialPresentation, target: &Quiver) -> Vec<Path> {
    pres.minimal_relations()
        .iter()
        .map(|f| {
            let arrows: Vec<usize> = f.traversal().collect();
            Path::from_traversal(target, &arrows).expect("composable in Q stays composable")
        })
        .collect()
}

/// `Q̄`: `Q` plus an arrow `b(x,y): x → E(x)` per pair, `x` declared first.
pub fn bar_presentation(pres: &MonomialPresentation, e: &Involution) -> Result<MonomialPresentation> {
    if let Some(chain) = glue_is_finite_dimensional(pres, e)? {
        return Err(Error::InfiniteDimensional {
            witness: format!("gluing chain {}", chain.describe(pres)),
        });
    }
    let q = pres.quiver();
    let mut bar = Quiver::new();
    for name in q.vertex_names() {
        bar.add_vertex(name)?;
    }
    for a in q.arrows() {
        bar.add_arrow(&a.name, a.source, a.target)?;
    }
    for (x, y) in e.pairs() {
        bar.add_arrow(&format!("b({},{})", q.vertex_name(x), q.vertex_name(y)), x, y)?;
    }
    let relations = carry_relations(pres, &bar);
    MonomialPresentation::new(bar, relations)
}

/// Invariants of one side of a gluing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideReport {
    pub dimension: usize,
    pub perfect_paths: usize,
    pub one_gorenstein: bool,
    /// Sorted orbit descriptors when 1-Gorenstein.
    pub orbit_descriptors: Option<Vec<String>>,
    pub gorenstein: bool,
    pub gorenstein_level: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub orbit_multiset: bool,
    pub gp_count: bool,
    pub gorenstein: bool,
}

impl Agreement {
    pub fn all(&self) -> bool {
        self.orbit_multiset && self.gp_count && self.gorenstein
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingReport {
    pub pairs: Vec<[String; 2]>,
    pub original: SideReport,
    pub glued: SideReport,
    pub agreement: Agreement,
}

fn side_report(pres: &MonomialPresentation) -> Result<SideReport> {
    let one_gorenstein = is_one_gorenstein(pres)?.one_gorenstein;
    let orbit_descriptors = if one_gorenstein {
        let mut d = singularity_decomposition(pres)?;
        d.sort();
        Some(d.iter().map(ToString::to_string).collect())
    } else {
        None
    };
    let profile = Oracle::new(pres)?.profile()?;
    Ok(SideReport {
        dimension: pres.dimension()?,
        perfect_paths: perfect_paths(pres)?.perfect_count(),
        one_gorenstein,
        orbit_descriptors,
        gorenstein: profile.gorenstein,
        gorenstein_level: profile.level,
    })
}

/// Flags are only asserted where an equivalence forces them: descriptor
/// multisets and GP counts when both sides are 1-Gorenstein, Gorenstein-ness always.
pub fn equivalence_report(pres: &MonomialPresentation, e: &Involution) -> Result<GluingReport> {
    let glued_pres = glue(pres, e)?;
    let original = side_report(pres)?;
    let glued = side_report(&glued_pres)?;
    let both = original.one_gorenstein && glued.one_gorenstein;
    let agreement = Agreement {
        orbit_multiset: !both || original.orbit_descriptors == glued.orbit_descriptors,
        gp_count: !both || original.perfect_paths == glued.perfect_paths,
        gorenstein: original.gorenstein == glued.gorenstein,
    };
    let q = pres.quiver();
    Ok(GluingReport {
        pairs: e
            .pairs()
            .into_iter()
            .map(|(x, y)| [q.vertex_name(x).to_string(), q.vertex_name(y).to_string()])
            .collect(),
        original,
        glued,
        agreement,
    })
}

/// Same quiver and relations after renaming vertices and arrows.
pub fn isomorphic(a: &MonomialPresentation, b: &MonomialPresentation) -> bool {
    let (qa, qb) = (a.quiver(), b.quiver());
    if qa.vertex_count() != qb.vertex_count()
        || qa.arrow_count() != qb.arrow_count()
        || a.minimal_relations().len() != b.minimal_relations().len()
    {
        return false;
    }
    let signature = |q: &Quiver, v: VertexId| {
        let loops = q.arrows_from(v).filter(|&x| q.arrow(x).target == v).count();
        (q.arrows_from(v).count(), q.arrows_into(v).count(), loops)
    };
    let sig_a: Vec<_> = (0..qa.vertex_count()).map(|v| signature(qa, v)).collect();
    let sig_b: Vec<_> = (0..qb.vertex_count()).map(|v| signature(qb, v)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return false;
    }
    let relations_b: BTreeSet<Vec<usize>> = b.minimal_relations().iter().map(|f| f.traversal().collect()).collect();

    struct Search<'s> {
        a: &'s MonomialPresentation,
        sig_a: &'s [(usize, usize, usize)],
        sig_b: &'s [(usize, usize, usize)],
        qb: &'s Quiver,
        relations_b: &'s BTreeSet<Vec<usize>>,
        vmap: HashMap<VertexId, VertexId>,
        vused: BTreeSet<VertexId>,
        amap: Vec<usize>,
        aused: Vec<bool>,
    }

    impl Search<'_> {
        fn bind(&mut self, x: VertexId, y: VertexId) -> Option<bool> {
            match self.vmap.get(&x) {
                Some(&z) => (z == y).then_some(false),
                None => {
                    if self.vused.contains(&y) || self.sig_a[x] != self.sig_b[y] {
                        return None;
                    }
                    self.vmap.insert(x, y);
                    self.vused.insert(y);
                    Some(true)
                }
            }
        }

        fn unbind(&mut self, x: VertexId, fresh: bool) {
            if fresh {
                let y = self.vmap.remove(&x).expect("bound");
                self.vused.remove(&y);
            }
        }

        fn run(&mut self, i: usize) -> bool {
            let qa = self.a.quiver();
            if i == qa.arrow_count() {
                return self.a.minimal_relations().iter().all(|f| {
                    let image: Vec<usize> = f.traversal().map(|x| self.amap[x]).collect();
                    self.relations_b.contains(&image)
                });
            }
            let arrow = qa.arrow(i);
            for j in 0..self.qb.arrow_count() {
                if self.aused[j] {
                    continue;
                }
                let target = self.qb.arrow(j);
                let Some(fresh_s) = self.bind(arrow.source, target.source) else {
                    continue;
                };
                let Some(fresh_t) = self.bind(arrow.target, target.target) else {
                    self.unbind(arrow.source, fresh_s);
                    continue;
                };
                self.aused[j] = true;
                self.amap[i] = j;
                if self.run(i + 1) {
                    return true;
                }
                self.aused[j] = false;
                self.unbind(arrow.target, fresh_t);
                self.unbind(arrow.source, fresh_s);
            }
            false
        }
    }

    // isolated vertices are matched by the signature multiset check above
    let mut search = Search {
        a,
        sig_a: &sig_a,
        sig_b: &sig_b,
        qb,
        relations_b: &relations_b,
        vmap: HashMap::new(),
        vused: BTreeSet::new(),
        amap: vec![0; qa.arrow_count()],
        aused: vec![false; qb.arrow_count()],
    };
    search.run(0)
}
