//! Annihilator sets `L(p)`, `R(p)`, perfect pairs and perfect paths, and the
//! resulting list of indecomposable non-projective Gorenstein-projectives `Ap`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{MonomialPresentation, Path, VertexCounts};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `L(p)`: paths `q` with `q ∘ p = 0`, minimal among their right factors.
    Left,
    /// `R(p)`: paths `q` with `p ∘ q = 0`, minimal among their left factors.
    Right,
}

/// `L(p)` or `R(p)`, in canonical order.
///
/// A candidate is discarded when one of its proper factors on the side facing
/// `p` is itself a candidate. Because the annihilating property is inherited by
/// longer paths, that happens exactly when dropping the arrow farthest from `p`
/// still annihilates, so only that one factor needs checking.
pub fn annihilator_minimal(pres: &MonomialPresentation, p: &Path, side: Side) -> Result<Vec<Path>> {
    if p.is_trivial() {
        return Err(Error::TrivialPath(pres.display_path(p)));
    }
    if !pres.is_nonzero(p) {
        return Err(Error::ZeroPath(pres.display_path(p)));
    }
    let basis = pres.enumerate_basis()?;
    let quiver = pres.quiver();
    let mut out = Vec::new();
    match side {
        Side::Right => {
            for q in basis.into_vertex(p.source()).filter(|q| !q.is_trivial()) {
                let kills = |x: &Path| !pres.is_nonzero(&p.compose(x).expect("t(x) = s(p)"));
                if kills(q) && !kills(&q.left_factor(quiver, q.len() - 1)) {
                    out.push(q.clone());
                }
            }
        }
        Side::Left => {
            for q in basis.from_vertex(p.target()).filter(|q| !q.is_trivial()) {
                let kills = |x: &Path| !pres.is_nonzero(&x.compose(p).expect("s(x) = t(p)"));
                if kills(q) && !kills(&q.right_factor(quiver, q.len() - 1)) {
                    out.push(q.clone());
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PerfectPair {
    pub left: Path,
    pub right: Path,
}

/// All `(p, q)` with `R(p) = {q}` and `L(q) = {p}`, ordered by `p`.
pub fn perfect_pairs(pres: &MonomialPresentation) -> Result<Vec<PerfectPair>> {
    let basis = pres.enumerate_basis()?;
    let mut pairs = Vec::new();
    for p in basis.nontrivial() {
        let r = annihilator_minimal(pres, p, Side::Right)?;
        if let [q] = &r[..] {
            let l = annihilator_minimal(pres, q, Side::Left)?;
            if l.len() == 1 && &l[0] == p {
                pairs.push(PerfectPair {
                    left: p.clone(),
                    right: q.clone(),
                });
            }
        }
    }
    Ok(pairs)
}

/// The partial injection `p ↦ q` of perfect pairs and its cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectPairGraph {
    successor: BTreeMap<Path, Path>,
    /// Each cycle in successor order, starting at its least member; sorted.
    cycles: Vec<Vec<Path>>,
}

impl PerfectPairGraph {
    pub fn from_pairs(pairs: &[PerfectPair]) -> PerfectPairGraph {
        let mut successor = BTreeMap::new();
        let mut targets = BTreeSet::new();
        for pair in pairs {
            let clash = successor.insert(pair.left.clone(), pair.right.clone());
            assert!(clash.is_none(), "two perfect successors for one path");
            assert!(
                targets.insert(pair.right.clone()),
                "two perfect predecessors for one path"
            );
        }
        let mut on_cycle: BTreeSet<&Path> = BTreeSet::new();
        let mut cycles = Vec::new();
        for start in successor.keys() {
            if on_cycle.contains(start) {
                continue;
            }
            let mut cycle = vec![start.clone()];
            let mut cur = &successor[start];
            while cur != start && cycle.len() <= successor.len() {
                cycle.push(cur.clone());
                match successor.get(cur) {
                    Some(next) => cur = next,
                    None => break,
                }
            }
            if cur == start {
                // keys are visited in canonical order, so `start` is the least member
                for p in &cycle {
                    on_cycle.insert(successor.get_key_value(p).expect("cycle member").0);
                }
                cycles.push(cycle);
            }
        }
        PerfectPairGraph { successor, cycles }
    }

    pub fn successor(&self, p: &Path) -> Option<&Path> {
        self.successor.get(p)
    }

    pub fn cycles(&self) -> &[Vec<Path>] {
        &self.cycles
    }

    pub fn is_perfect(&self, p: &Path) -> bool {
        self.cycles.iter().any(|c| c.contains(p))
    }

    /// Perfect paths in canonical order.
    pub fn perfect_paths(&self) -> Vec<Path> {
        let mut all: Vec<Path> = self.cycles.iter().flatten().cloned().collect();
        all.sort();
        all
    }

    pub fn perfect_count(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }
}

pub fn perfect_paths(pres: &MonomialPresentation) -> Result<PerfectPairGraph> {
    Ok(PerfectPairGraph::from_pairs(&perfect_pairs(pres)?))
}

/// The module `Ap` for a perfect path `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpModuleDescriptor {
    pub generator: Path,
    pub basis: Vec<Path>,
    /// Indexed by vertex id.
    pub dim_vector: Vec<usize>,
    pub projective: bool,
}

impl GpModuleDescriptor {
    /// The top of `Ap` is the simple at this vertex.
    pub fn top(&self) -> usize {
        self.generator.target()
    }
}

/// One descriptor per perfect path, in canonical path order.
pub fn classify_stable_gproj(pres: &MonomialPresentation) -> Result<Vec<GpModuleDescriptor>> {
    let graph = perfect_paths(pres)?;
    graph
        .perfect_paths()
        .into_iter()
        .map(|p| {
            let cyclic = pres.cyclic_module_basis(&p)?;
            let projective = annihilator_minimal(pres, &p, Side::Left)?.is_empty();
            Ok(GpModuleDescriptor {
                generator: p,
                basis: cyclic.paths,
                dim_vector: cyclic.dim_vector,
                projective,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectionReport {
    pub perfect_pairs: Vec<[String; 2]>,
    pub cycles: Vec<Vec<String>>,
    pub gp_modules: Vec<GpModuleEntry>,
    pub cm_type: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GpModuleEntry {
    pub generator: String,
    pub dim_vector: VertexCounts,
}

pub fn perfection_report(pres: &MonomialPresentation) -> Result<PerfectionReport> {
    let pairs = perfect_pairs(pres)?;
    let graph = PerfectPairGraph::from_pairs(&pairs);
    let gp = classify_stable_gproj(pres)?;
    let show = |p: &Path| pres.display_path(p);
    Ok(PerfectionReport {
        perfect_pairs: pairs.iter().map(|pp| [show(&pp.left), show(&pp.right)]).collect(),
        cycles: graph.cycles().iter().map(|c| c.iter().map(show).collect()).collect(),
        cm_type: gp.len(),
        gp_modules: gp
            .iter()
            .map(|d| GpModuleEntry {
                generator: show(&d.generator),
                dim_vector: pres.vertex_counts(&d.dim_vector),
            })
            .collect(),
    })
}
