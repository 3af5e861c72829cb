//! Path-length grading: truncated projectives `A(i)_{≤0}`, the summands of
//! `Ω(T)` for `T = ⊕_i A(i)_{≤0}`, and the type-A quiver `Q^B` whose path
//! algebra describes the graded singularity category in the 1-Gorenstein case.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gorenstein::is_one_gorenstein;
use crate::oracle::{DimStatus, Oracle};
use crate::perfection::{annihilator_minimal, perfect_paths, Side};
use crate::presentation::{MonomialPresentation, Path, VertexId};

/// `(Ae_v)(i)_{≤0}`: paths out of `v` of length `≤ i`, length `d` sitting in degree `d − i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedProjective {
    pub vertex: VertexId,
    pub basis: Vec<(Path, i64)>,
}

pub fn truncation_summands(pres: &MonomialPresentation, i: usize) -> Result<Vec<TruncatedProjective>> {
    let basis = pres.enumerate_basis()?;
    let top = basis.max_length();
    if i > top {
        return Err(Error::DegreeOutOfRange { degree: i, max: top });
    }
    Ok((0..pres.quiver().vertex_count())
        .map(|v| TruncatedProjective {
            vertex: v,
            basis: basis
                .from_vertex(v)
                .filter(|p| p.len() <= i)
                .map(|p| (p.clone(), p.len() as i64 - i as i64))
                .collect(),
        })
        .collect())
}

/// `Ap(shift)`: the generator `p` sits in degree `l(p) − shift`, which is 1
/// for every summand of `Ω(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSummand {
    pub generator: Path,
    pub shift: i64,
    /// `Ap ≅ Ae_{t(p)}`, i.e. `L(p)` is empty.
    pub projective: bool,
}

impl GradedSummand {
    pub fn generator_degree(&self) -> i64 {
        self.generator.len() as i64 - self.shift
    }
}

/// A summand of the basic part of `Ω(T)` and how often it occurred.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicSummand {
    pub generator: Path,
    pub shift: i64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyOfT {
    /// Every summand, by truncation index then path.
    pub summands: Vec<GradedSummand>,
    /// Non-projective summands up to isomorphism.
    pub basic: Vec<BasicSummand>,
}

/// The kernel of `Ae_v(i) ↠ (Ae_v)(i)_{≤0}` is spanned by paths of length
/// `> i`, each factoring uniquely through its length-`(i+1)` initial segment,
/// so it is `⊕ Ap` over the nonzero `p` of length `i + 1` leaving `v`.
pub fn syzygy_of_t(pres: &MonomialPresentation) -> Result<SyzygyOfT> {
    let basis = pres.enumerate_basis()?;
    let mut summands = Vec::new();
    for i in 0..=basis.max_length() {
        for p in basis.of_length(i + 1) {
            let projective = annihilator_minimal(pres, p, Side::Left)?.is_empty();
            summands.push(GradedSummand {
                generator: p.clone(),
                shift: i as i64,
                projective,
            });
        }
    }
    // Ap ≅ Aq (generators both in degree 1) iff same top and same annihilator
    let mut classes: BTreeMap<(VertexId, Vec<Path>), BasicSummand> = BTreeMap::new();
    for s in summands.iter().filter(|s| !s.projective) {
        let key = (
            s.generator.target(),
            annihilator_minimal(pres, &s.generator, Side::Left)?,
        );
        classes
            .entry(key)
            .and_modify(|b| b.multiplicity += 1)
            .or_insert(BasicSummand {
                generator: s.generator.clone(),
                shift: s.shift,
                multiplicity: 1,
            });
    }
    let mut basic: Vec<BasicSummand> = classes.into_values().collect();
    basic.sort_by(|a, b| a.generator.cmp(&b.generator));
    Ok(SyzygyOfT { summands, basic })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Projective,
    Perfect(Path),
}

/// The perfect path `p′` with `Ap ≅ Ap′`: take the least `q ∈ L(p)`; `p′` is
/// the shortest initial segment of `p` (ending at `t(p)`) with `q ∘ p′ = 0`.
pub fn perfect_reduction(pres: &MonomialPresentation, p: &Path) -> Result<Reduction> {
    require_one_gorenstein(pres)?;
    if !pres.is_nonzero(p) {
        return Err(Error::ZeroPath(pres.display_path(p)));
    }
    if p.is_trivial() {
        return Ok(Reduction::Projective);
    }
    let left = annihilator_minimal(pres, p, Side::Left)?;
    let Some(q) = left.first() else {
        return Ok(Reduction::Projective);
    };
    let quiver = pres.quiver();
    let reduced = (1..=p.len())
        .map(|k| p.left_factor(quiver, k))
        .find(|pp| !pres.is_nonzero(&q.compose(pp).expect("s(q) = t(p)")))
        .expect("q ∘ p = 0");
    if !perfect_paths(pres)?.is_perfect(&reduced) {
        return Err(Error::InternalInvariantViolation(format!(
            "reduction of {} gave {}, which is not perfect",
            pres.display_path(p),
            pres.display_path(&reduced)
        )));
    }
    Ok(Reduction::Perfect(reduced))
}

fn require_one_gorenstein(pres: &MonomialPresentation) -> Result<()> {
    match is_one_gorenstein(pres)?.failure {
        None => Ok(()),
        Some(f) => Err(Error::NotOneGorenstein {
            witness: pres.display_path(&f.left),
            relation: pres.display_path(&f.relation),
        }),
    }
}

/// Disjoint union of linearly oriented type-A quivers on the perfect paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeAQuiver {
    /// Each chain `p_1 → p_2 → ⋯` has `p_j = p_i ∘ p_{ij}`; sorted by first member.
    pub chains: Vec<Vec<Path>>,
}

impl TypeAQuiver {
    pub fn vertex_count(&self) -> usize {
        self.chains.iter().map(Vec::len).sum()
    }

    pub fn arrows(&self) -> Vec<(&Path, &Path)> {
        self.chains
            .iter()
            .flat_map(|c| c.windows(2).map(|w| (&w[0], &w[1])))
            .collect()
    }

    /// `A_{n_1} ⊔ A_{n_2} ⊔ ⋯`, or `∅`.
    pub fn type_name(&self) -> String {
        if self.chains.is_empty() {
            return "∅".into();
        }
        self.chains
            .iter()
            .map(|c| format!("A_{}", c.len()))
            .collect::<Vec<_>>()
            .join(" ⊔ ")
    }
}

/// Perfect paths are ordered by `p ≤ p′` when they share a target and `p` is
/// an initial segment of `p′`; `Q^B` is the Hasse diagram. Paths with equal
/// target may be incomparable (two chains meet at a glued vertex), but every
/// component must be linear.
pub fn type_a_quiver(pres: &MonomialPresentation) -> Result<TypeAQuiver> {
    require_one_gorenstein(pres)?;
    let perfect = perfect_paths(pres)?.perfect_paths();
    let below = |i: usize, j: usize| {
        let (p, q) = (&perfect[i], &perfect[j]);
        p.target() == q.target() && p.len() < q.len() && q.has_left_factor(p)
    };
    let n = perfect.len();
    let mut next: Vec<Option<usize>> = vec![None; n];
    let mut has_prev = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            let covers = below(i, j) && !(0..n).any(|k| below(i, k) && below(k, j));
            if !covers {
                continue;
            }
            if let Some(other) = next[i] {
                return Err(Error::NotAChain {
                    first: pres.display_path(&perfect[other]),
                    second: pres.display_path(&perfect[j]),
                });
            }
            if has_prev[j] {
                return Err(Error::NotAChain {
                    first: pres.display_path(&perfect[i]),
                    second: pres.display_path(&perfect[j]),
                });
            }
            next[i] = Some(j);
            has_prev[j] = true;
        }
    }
    let mut chains: Vec<Vec<Path>> = (0..n)
        .filter(|&i| !has_prev[i])
        .map(|mut i| {
            let mut chain = vec![perfect[i].clone()];
            while let Some(j) = next[i] {
                chain.push(perfect[j].clone());
                i = j;
            }
            chain
        })
        .collect();
    chains.sort();
    Ok(TypeAQuiver { chains })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedSingularity {
    /// `D^b(mod B^op)` with `B` the path algebra of `Q^B`; chain lengths listed.
    Tilting {
        components: Vec<usize>,
    },
    /// Finite global dimension.
    Trivial,
    /// Gorenstein beyond level 1: a tilting object exists and the category is
    /// `D^b` of some representation-finite hereditary algebra, not computed.
    HereditaryExists {
        level: usize,
    },
    NotGorenstein,
}

impl fmt::Display for GradedSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradedSingularity::Tilting { components } if components.is_empty() => f.write_str("0"),
            GradedSingularity::Tilting { components } => {
                let b: Vec<String> = components.iter().map(|n| format!("kA_{n}")).collect();
                write!(f, "D^b(mod B^op), B = {}", b.join(" × "))
            }
            GradedSingularity::Trivial => f.write_str("0 (finite global dimension)"),
            GradedSingularity::HereditaryExists { level } => write!(
                f,
                "D^b(mod H) for a representation-finite hereditary H ({level}-Gorenstein; H not computed)"
            ),
            GradedSingularity::NotGorenstein => f.write_str("not Gorenstein; no tilting description"),
        }
    }
}

pub fn graded_singularity_description(pres: &MonomialPresentation) -> Result<GradedSingularity> {
    if is_one_gorenstein(pres)?.one_gorenstein {
        let qb = type_a_quiver(pres)?;
        return Ok(GradedSingularity::Tilting {
            components: qb.chains.iter().map(Vec::len).collect(),
        });
    }
    let oracle = Oracle::new(pres)?;
    if let DimStatus::Finite(_) = oracle.global_dimension()? {
        return Ok(GradedSingularity::Trivial);
    }
    Ok(match oracle.profile()?.level {
        Some(level) => GradedSingularity::HereditaryExists { level },
        None => GradedSingularity::NotGorenstein,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedReport {
    #[serde(rename = "QB")]
    pub qb: Option<QbEntry>,
    pub graded_singularity: String,
    #[serde(rename = "omega_T")]
    pub omega_t: Vec<OmegaEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QbEntry {
    pub chains: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaEntry {
    pub path: String,
    pub shift: i64,
    pub multiplicity: usize,
}

pub fn graded_report(pres: &MonomialPresentation) -> Result<GradedReport> {
    let qb = if is_one_gorenstein(pres)?.one_gorenstein {
        let q = type_a_quiver(pres)?;
        Some(QbEntry {
            chains: q
                .chains
                .iter()
                .map(|c| c.iter().map(|p| pres.display_path(p)).collect())
                .collect(),
        })
    } else {
        None
    };
    Ok(GradedReport {
        qb,
        graded_singularity: graded_singularity_description(pres)?.to_string(),
        omega_t: syzygy_of_t(pres)?
            .basic
            .iter()
            .map(|b| OmegaEntry {
                path: pres.display_path(&b.generator),
                shift: b.shift,
                multiplicity: b.multiplicity,
            })
            .collect(),
    })
}
