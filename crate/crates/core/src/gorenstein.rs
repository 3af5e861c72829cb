//! The 1-Gorenstein test, relation cycles `C(A)` and the singularity category
//! as a coproduct of orbit categories `D^b(A_{r-1})/[τ^n]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perfection::{perfect_paths, PerfectPairGraph};
use crate::presentation::{ArrowId, MonomialPresentation, Path, Quiver};

/// A factorisation `f = p ∘ q` of a minimal relation with `p` not perfect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailingFactorization {
    pub relation: Path,
    pub left: Path,
    pub right: Path,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneGorensteinVerdict {
    pub one_gorenstein: bool,
    /// For a positive verdict: each left factor of a relation with the index of
    /// the relation cycle carrying it (indices into [`relation_cycles`]).
    pub memberships: Vec<(Path, usize)>,
    pub failure: Option<FailingFactorization>,
}

/// Every left factor `p` of every `f = p ∘ q ∈ F` (both factors nontrivial)
/// must be perfect. The first failure in canonical order is reported.
pub fn is_one_gorenstein(pres: &MonomialPresentation) -> Result<OneGorensteinVerdict> {
    let graph = perfect_paths(pres)?;
    let quiver = pres.quiver();
    let mut factors = BTreeSet::new();
    for f in pres.minimal_relations() {
        for k in 1..f.len() {
            let left = f.left_factor(quiver, k);
            if !graph.is_perfect(&left) {
                return Ok(OneGorensteinVerdict {
                    one_gorenstein: false,
                    memberships: Vec::new(),
                    failure: Some(FailingFactorization {
                        relation: f.clone(),
                        right: f.right_factor(quiver, f.len() - k),
                        left,
                    }),
                });
            }
            factors.insert(left);
        }
    }
    let cycles = build_cycles(pres, &graph)?;
    let memberships = factors
        .into_iter()
        .map(|p| {
            let idx = cycles
                .iter()
                .position(|c| c.members.contains(&p))
                .expect("perfect paths lie on a relation cycle");
            (p, idx)
        })
        .collect();
    Ok(OneGorensteinVerdict {
        one_gorenstein: true,
        memberships,
        failure: None,
    })
}

fn require_one_gorenstein(pres: &MonomialPresentation) -> Result<()> {
    let verdict = is_one_gorenstein(pres)?;
    match verdict.failure {
        None => Ok(()),
        Some(f) => Err(Error::NotOneGorenstein {
            witness: pres.display_path(&f.left),
            relation: pres.display_path(&f.relation),
        }),
    }
}

/// A repetition-free oriented cycle `c` of `Q` together with its relation length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCycle {
    /// Traversal order, rotated to start at the least arrow.
    pub arrows: Vec<ArrowId>,
    pub n: usize,
    pub r: usize,
    /// Perfect paths supported on `c`, canonical order.
    pub members: Vec<Path>,
}

impl RelationCycle {
    pub fn descriptor(&self) -> OrbitCategoryDescriptor {
        OrbitCategoryDescriptor {
            rank: self.r - 1,
            period: self.n,
        }
    }
}

/// `C(A)`, one entry per underlying arrow cycle, sorted by arrow word.
pub fn relation_cycles(pres: &MonomialPresentation) -> Result<Vec<RelationCycle>> {
    require_one_gorenstein(pres)?;
    build_cycles(pres, &perfect_paths(pres)?)
}

/// Groups successor cycles by the oriented cycle their concatenation winds
/// around. The concatenated closed walk may wind several times (for `kZ_2/J^3`
/// the successor cycle has lengths 2,1,2,1 around a 2-cycle), so the cycle is
/// the primitive root of the walk.
fn build_cycles(pres: &MonomialPresentation, graph: &PerfectPairGraph) -> Result<Vec<RelationCycle>> {
    let quiver = pres.quiver();
    let mut grouped: BTreeMap<Vec<ArrowId>, RelationCycle> = BTreeMap::new();
    for cycle in graph.cycles() {
        let k = cycle.len();
        let rs: BTreeSet<usize> = (0..k).map(|i| cycle[i].len() + cycle[(i + 1) % k].len()).collect();
        if rs.len() != 1 {
            return Err(Error::InternalInvariantViolation(format!(
                "relation lengths along the successor cycle starting at {} are not constant: {:?}",
                pres.display_path(&cycle[0]),
                rs
            )));
        }
        let r = *rs.iter().next().expect("nonempty");
        // p_i ∘ p_{i+1} composes, so the traversal walk lists p_k, …, p_1
        let walk: Vec<ArrowId> = cycle.iter().rev().flat_map(|p| p.traversal()).collect();
        let root = canonical_rotation(primitive_root(&walk));
        let distinct: BTreeSet<&ArrowId> = root.iter().collect();
        if distinct.len() != root.len() {
            return Err(Error::InternalInvariantViolation(format!(
                "successor cycle at {} winds around a cycle with repeated arrows",
                pres.display_path(&cycle[0])
            )));
        }
        let entry = grouped.entry(root.clone()).or_insert_with(|| RelationCycle {
            n: root.len(),
            arrows: root,
            r,
            members: Vec::new(),
        });
        if entry.r != r {
            return Err(Error::InternalInvariantViolation(format!(
                "two successor cycles around the same oriented cycle have relation lengths {} and {}",
                entry.r, r
            )));
        }
        entry.members.extend(cycle.iter().cloned());
    }
    let mut out: Vec<RelationCycle> = grouped.into_values().collect();
    let mut owner: BTreeMap<ArrowId, usize> = BTreeMap::new();
    for (idx, c) in out.iter_mut().enumerate() {
        c.members.sort();
        for &a in &c.arrows {
            if let Some(prev) = owner.insert(a, idx) {
                return Err(Error::InternalInvariantViolation(format!(
                    "arrow {} lies on relation cycles {} and {}",
                    quiver.arrow(a).name,
                    prev,
                    idx
                )));
            }
        }
        for j in 0..c.n {
            let window: Vec<ArrowId> = (0..c.r).map(|i| c.arrows[(j + i) % c.n]).collect();
            let path = Path::from_traversal(quiver, &window).expect("windows of a cycle compose");
            if !pres.is_relation(&path) {
                return Err(Error::InternalInvariantViolation(format!(
                    "window {} of length {} along a relation cycle is not a minimal relation",
                    pres.display_path(&path),
                    c.r
                )));
            }
        }
    }
    Ok(out)
}

fn primitive_root(word: &[ArrowId]) -> &[ArrowId] {
    let n = word.len();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| (d..n).all(|i| word[i] == word[i - d]))
        .map(|d| &word[..d])
        .unwrap_or(word)
}

fn canonical_rotation(word: &[ArrowId]) -> Vec<ArrowId> {
    let start = (0..word.len()).min_by_key(|&i| word[i]).unwrap_or(0);
    word[start..].iter().chain(&word[..start]).copied().collect()
}

/// The subalgebra `S_c`: the subquiver spanned by `c` with the relations living on it.
pub fn cycle_subalgebra(pres: &MonomialPresentation, c: &RelationCycle) -> MonomialPresentation {
    let quiver = pres.quiver();
    let arrows: BTreeSet<ArrowId> = c.arrows.iter().copied().collect();
    let mut vertices = BTreeSet::new();
    for &a in &arrows {
        vertices.insert(quiver.arrow(a).source);
        vertices.insert(quiver.arrow(a).target);
    }
    restrict(pres, &vertices, &arrows)
}

/// Full restriction to a vertex set and an arrow set closed under endpoints.
pub(crate) fn restrict(
    pres: &MonomialPresentation,
    vertices: &BTreeSet<usize>,
    arrows: &BTreeSet<ArrowId>,
) -> MonomialPresentation {
    let quiver = pres.quiver();
    let mut sub = Quiver::new();
    let mut vmap = BTreeMap::new();
    for &v in vertices {
        vmap.insert(v, sub.add_vertex(quiver.vertex_name(v)).expect("unique"));
    }
    let mut amap = BTreeMap::new();
    for &a in arrows {
        let arrow = quiver.arrow(a);
        let id = sub
            .add_arrow(&arrow.name, vmap[&arrow.source], vmap[&arrow.target])
            .expect("unique");
        amap.insert(a, id);
    }
    let generators = pres
        .minimal_relations()
        .iter()
        .filter(|f| f.composition().iter().all(|a| arrows.contains(a)))
        .map(|f| {
            Path::from_composition(&sub, f.composition().iter().map(|a| amap[a]).collect())
                .expect("restriction keeps composability")
        })
        .collect();
    MonomialPresentation::new(sub, generators).expect("restriction of a valid presentation")
}

/// `D^b(A_rank)/[τ^period]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitCategoryDescriptor {
    pub rank: usize,
    pub period: usize,
}

impl fmt::Display for OrbitCategoryDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^b(A_{})/[tau^{}]", self.rank, self.period)
    }
}

/// One orbit category per relation cycle; empty means the singularity category vanishes.
pub fn singularity_decomposition(pres: &MonomialPresentation) -> Result<Vec<OrbitCategoryDescriptor>> {
    Ok(relation_cycles(pres)?.iter().map(RelationCycle::descriptor).collect())
}

/// `(n, m)` when `A ≅ kZ_n/J^m`: a single oriented n-cycle with every path of
/// length `m ≥ 2` forbidden.
pub fn detect_self_injective_nakayama(pres: &MonomialPresentation) -> Option<(usize, usize)> {
    let quiver = pres.quiver();
    let n = quiver.vertex_count();
    if n == 0 || quiver.arrow_count() != n {
        return None;
    }
    let mut next = vec![None; n];
    for a in quiver.arrows() {
        if next[a.source].replace(a.target).is_some() {
            return None;
        }
    }
    // out-degree one everywhere; walking from 0 must visit every vertex before returning
    let mut v = 0;
    for step in 1..=n {
        v = next[v]?;
        if v == 0 && step < n {
            return None;
        }
    }
    if v != 0 {
        return None;
    }
    let f = pres.minimal_relations();
    let m = f.first()?.len();
    (f.len() == n && f.iter().all(|p| p.len() == m)).then_some((n, m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GentleVerdict {
    pub is_gentle: bool,
    /// Set for gentle inputs: every relation `βα` has `α, β` on a common cycle of
    /// quadratic relations.
    pub one_gorenstein_criterion: Option<bool>,
}

pub fn gentle_check(pres: &MonomialPresentation) -> GentleVerdict {
    let not_gentle = GentleVerdict {
        is_gentle: false,
        one_gorenstein_criterion: None,
    };
    let quiver = pres.quiver();
    let f = pres.minimal_relations();
    if f.iter().any(|p| p.len() != 2) || !pres.is_finite_dimensional() {
        return not_gentle;
    }
    for v in 0..quiver.vertex_count() {
        if quiver.arrows_from(v).count() > 2 || quiver.arrows_into(v).count() > 2 {
            return not_gentle;
        }
    }
    // relation successor: rs[α] = γ with γ∘α ∈ F
    let mut rs: Vec<Option<ArrowId>> = vec![None; quiver.arrow_count()];
    for a in 0..quiver.arrow_count() {
        let arrow = quiver.arrow(a);
        let (mut zero_after, mut nonzero_after) = (Vec::new(), 0);
        for b in quiver.arrows_from(arrow.target) {
            let ba = Path::from_composition(quiver, vec![b, a]).expect("composable");
            if pres.is_relation(&ba) {
                zero_after.push(b);
            } else {
                nonzero_after += 1;
            }
        }
        let (mut zero_before, mut nonzero_before) = (0, 0);
        for c in quiver.arrows_into(arrow.source) {
            let ac = Path::from_composition(quiver, vec![a, c]).expect("composable");
            if pres.is_relation(&ac) {
                zero_before += 1;
            } else {
                nonzero_before += 1;
            }
        }
        if zero_after.len() > 1 || nonzero_after > 1 || zero_before > 1 || nonzero_before > 1 {
            return not_gentle;
        }
        rs[a] = zero_after.first().copied();
    }
    let on_cycle = |start: ArrowId| {
        let mut cur = start;
        for _ in 0..rs.len() {
            match rs[cur] {
                Some(next) if next == start => return true,
                Some(next) => cur = next,
                None => return false,
            }
        }
        false
    };
    let criterion = f
        .iter()
        .all(|rel| on_cycle(*rel.composition().last().expect("length 2")));
    GentleVerdict {
        is_gentle: true,
        one_gorenstein_criterion: Some(criterion),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinReport {
    pub one_gorenstein: bool,
    pub witness: Option<WitnessEntry>,
    pub cycles: Vec<CycleEntry>,
    pub singularity: Option<Vec<OrbitEntry>>,
    pub nakayama: Option<NakayamaEntry>,
    pub gentle: GentleVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub p: String,
    pub q: String,
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleEntry {
    pub arrows: Vec<String>,
    pub n: usize,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    pub period: usize,
}

impl From<OrbitCategoryDescriptor> for OrbitEntry {
    fn from(d: OrbitCategoryDescriptor) -> Self {
        OrbitEntry {
            kind: "A".into(),
            rank: d.rank,
            period: d.period,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NakayamaEntry {
    pub n: usize,
    pub m: usize,
}

pub fn gorenstein_report(pres: &MonomialPresentation) -> Result<GorensteinReport> {
    let verdict = is_one_gorenstein(pres)?;
    let (cycles, singularity) = if verdict.one_gorenstein {
        let cycles = relation_cycles(pres)?;
        let singularity = cycles.iter().map(|c| c.descriptor().into()).collect();
        let entries = cycles
            .iter()
            .map(|c| CycleEntry {
                arrows: c.arrows.iter().map(|&a| pres.quiver().arrow(a).name.clone()).collect(),
                n: c.n,
                r: c.r,
            })
            .collect();
        (entries, Some(singularity))
    } else {
        (Vec::new(), None)
    };
    Ok(GorensteinReport {
        one_gorenstein: verdict.one_gorenstein,
        witness: verdict.failure.map(|f| WitnessEntry {
            p: pres.display_path(&f.left),
            q: pres.display_path(&f.right),
            relation: pres.display_path(&f.relation),
        }),
        cycles,
        singularity,
        nakayama: detect_self_injective_nakayama(pres).map(|(n, m)| NakayamaEntry { n, m }),
        gentle: gentle_check(pres),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load;

    fn arrow_names(pres: &MonomialPresentation, c: &RelationCycle) -> Vec<String> {
        c.arrows.iter().map(|&a| pres.quiver().arrow(a).name.clone()).collect()
    }

    #[test]
    fn verdicts() {
        assert!(is_one_gorenstein(&load("z3r2")).unwrap().one_gorenstein);
        assert!(is_one_gorenstein(&load("her")).unwrap().one_gorenstein);
        let lin = load("lin");
        let v = is_one_gorenstein(&lin).unwrap();
        assert!(!v.one_gorenstein);
        let f = v.failure.unwrap();
        assert_eq!(lin.display_path(&f.left), "b");
        assert_eq!(lin.display_path(&f.relation), "a·b");
        let err = singularity_decomposition(&lin).unwrap_err();
        assert_eq!(err.to_string(), "not 1-Gorenstein; witness p=b, relation a·b");
    }

    #[test]
    fn cycles_of_fixtures() {
        let z3 = load("z3r2");
        let c = relation_cycles(&z3).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].n, c[0].r), (3, 2));
        assert_eq!(arrow_names(&z3, &c[0]), vec!["a1", "a2", "a3"]);

        let z2 = load("z2r3");
        let c = relation_cycles(&z2).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].n, c[0].r), (2, 3));
        assert_eq!(c[0].members.len(), 4);

        let glu = load("glu");
        let c = relation_cycles(&glu).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].n, c[0].r), (6, 3));
        assert_eq!(c[0].members.len(), 12);
    }

    #[test]
    fn memberships_cover_relation_factors() {
        let z3 = load("z3r2");
        let v = is_one_gorenstein(&z3).unwrap();
        assert_eq!(v.memberships.len(), 3);
        assert!(v.memberships.iter().all(|(_, c)| *c == 0));
    }

    #[test]
    fn decompositions() {
        let show = |name: &str| -> Vec<String> {
            singularity_decomposition(&load(name))
                .unwrap()
                .iter()
                .map(ToString::to_string)
                .collect()
        };
        assert_eq!(show("z3r2"), vec!["D^b(A_1)/[tau^3]"]);
        assert_eq!(show("z2r3"), vec!["D^b(A_2)/[tau^2]"]);
        assert_eq!(show("glu"), vec!["D^b(A_2)/[tau^6]"]);
        assert_eq!(show("z6r3"), vec!["D^b(A_2)/[tau^6]"]);
        assert!(show("her").is_empty());
    }

    #[test]
    fn subalgebras() {
        for name in ["z3r2", "glu", "z2r3"] {
            let pres = load(name);
            let c = relation_cycles(&pres).unwrap();
            let sub = cycle_subalgebra(&pres, &c[0]);
            assert_eq!(sub, pres, "{name}");
        }
        let both = MonomialPresentation::parse(&format!(
            "{}\nvertex x y\narrow a x y\narrow b y x\nrelation a b a\nrelation b a b\n",
            crate::fixtures::text("z3r2").unwrap()
        ))
        .unwrap();
        let c = relation_cycles(&both).unwrap();
        assert_eq!(c.len(), 2);
        let sub = cycle_subalgebra(&both, &c[0]);
        assert_eq!(sub, load("z3r2"));
        let descs: Vec<String> = singularity_decomposition(&both)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(descs, vec!["D^b(A_1)/[tau^3]", "D^b(A_2)/[tau^2]"]);
    }

    #[test]
    fn nakayama_detection() {
        assert_eq!(detect_self_injective_nakayama(&load("z3r2")), Some((3, 2)));
        assert_eq!(detect_self_injective_nakayama(&load("z2r3")), Some((2, 3)));
        assert_eq!(detect_self_injective_nakayama(&load("z6r3")), Some((6, 3)));
        assert_eq!(detect_self_injective_nakayama(&load("lin")), None);
        assert_eq!(detect_self_injective_nakayama(&load("glu")), None);
        let two_loops =
            MonomialPresentation::parse("vertex 1 2\narrow a 1 1\narrow b 2 2\nrelation a a\nrelation b b\n").unwrap();
        assert_eq!(detect_self_injective_nakayama(&two_loops), None);
        let loop1 = MonomialPresentation::parse("vertex 1\narrow a 1 1\nrelation a a a\n").unwrap();
        assert_eq!(detect_self_injective_nakayama(&loop1), Some((1, 3)));
    }

    #[test]
    fn gentle() {
        let g = gentle_check(&load("z3r2"));
        assert_eq!((g.is_gentle, g.one_gorenstein_criterion), (true, Some(true)));
        let g = gentle_check(&load("lin"));
        assert_eq!((g.is_gentle, g.one_gorenstein_criterion), (true, Some(false)));
        assert!(!gentle_check(&load("z2r3")).is_gentle);
        let g = gentle_check(&load("her"));
        assert_eq!(g.one_gorenstein_criterion, Some(true));
    }

    #[test]
    fn report_json_fields() {
        let r = gorenstein_report(&load("z3r2")).unwrap();
        assert_eq!(r.cycles[0].arrows, vec!["a1", "a2", "a3"]);
        assert_eq!(r.singularity.as_ref().unwrap()[0].rank, 1);
        assert_eq!(r.nakayama, Some(NakayamaEntry { n: 3, m: 2 }));
        let lin = gorenstein_report(&load("lin")).unwrap();
        assert_eq!(lin.witness.unwrap().p, "b");
        assert!(lin.singularity.is_none());
    }
}
