//! One-shot entry points over a fresh [`Oracle`], and the cross-check of the
//! perfect-path classification against the homological one.

use serde::Serialize;

use super::homology::{DimStatus, InjectiveDimensionProfile, Oracle};
use super::rep::Representation;
use crate::error::{Error, Result};
use crate::perfection::classify_stable_gproj;
use crate::presentation::{MonomialPresentation, VertexCounts};

pub fn ext_dim(pres: &MonomialPresentation, m: &Representation, n: &Representation, k: usize) -> Result<u128> {
    Oracle::new(pres)?.ext_dim(m, n, k)
}

pub fn injective_dimension_profile(pres: &MonomialPresentation) -> Result<InjectiveDimensionProfile> {
    Oracle::new(pres)?.profile()
}

pub fn global_dimension(pres: &MonomialPresentation) -> Result<DimStatus> {
    Oracle::new(pres)?.global_dimension()
}

pub fn gorenstein_projective_test(pres: &MonomialPresentation, m: &Representation) -> Result<bool> {
    Oracle::new(pres)?.is_gorenstein_projective(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    /// Least path whose module represents the class.
    pub generator: String,
    pub dim_vector: VertexCounts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationCrosscheck {
    /// Non-projective Gorenstein-projective classes among all `Ap`.
    pub oracle: Vec<ClassEntry>,
    /// Modules `Ap` for perfect paths `p`.
    pub perfect: Vec<ClassEntry>,
    pub level: usize,
}

/// Every `Ap` is tested homologically; the non-projective Gorenstein-projective
/// classes must be exactly the classes of `Ap` for perfect `p`, one each.
pub fn crosscheck_classification(pres: &MonomialPresentation) -> Result<ClassificationCrosscheck> {
    let oracle = Oracle::new(pres)?;
    let profile = oracle.profile()?;
    let level = profile.level.ok_or(Error::NotGorenstein {
        pd_of_dual: profile.pd_of_dual.to_string(),
        id_of_regular: profile.id_of_regular.to_string(),
    })?;
    let basis = pres.enumerate_basis()?;
    let mut gp_classes = Vec::new();
    for p in basis.paths() {
        let c = oracle.class_of(p)?;
        if gp_classes.contains(&c) || oracle.is_projective_class(c)? {
            continue;
        }
        if oracle.is_gp_class(c)? {
            gp_classes.push(c);
        }
    }
    gp_classes.sort_by_key(|&c| oracle.class(c).generator);
    let descriptors = classify_stable_gproj(pres)?;
    let mut perfect_classes = Vec::new();
    for d in &descriptors {
        perfect_classes.push(oracle.class_of(&d.generator)?);
    }
    let entry = |c: usize| {
        let data = oracle.class(c);
        ClassEntry {
            generator: pres.display_path(&data.generator),
            dim_vector: pres.vertex_counts(data.rep.dims()),
        }
    };
    let report = ClassificationCrosscheck {
        oracle: gp_classes.iter().map(|&c| entry(c)).collect(),
        perfect: perfect_classes.iter().map(|&c| entry(c)).collect(),
        level,
    };
    let mut sorted_perfect = perfect_classes.clone();
    sorted_perfect.sort();
    sorted_perfect.dedup();
    let mut sorted_gp = gp_classes.clone();
    sorted_gp.sort();
    if sorted_perfect.len() != perfect_classes.len() {
        return Err(Error::MismatchDetected(
            "two perfect paths give isomorphic modules".into(),
        ));
    }
    let mut oracle_dims: Vec<Vec<usize>> = gp_classes
        .iter()
        .map(|&c| oracle.class(c).rep.dims().to_vec())
        .collect();
    let mut perfect_dims: Vec<Vec<usize>> = descriptors.iter().map(|d| d.dim_vector.clone()).collect();
    oracle_dims.sort();
    perfect_dims.sort();
    if oracle_dims != perfect_dims || sorted_perfect != sorted_gp {
        let show = |v: &[ClassEntry]| {
            v.iter()
                .map(|e| format!("{}{}", e.generator, e.dim_vector))
                .collect::<Vec<_>>()
                .join(", ")
        };
        return Err(Error::MismatchDetected(format!(
            "homological classes [{}] vs perfect paths [{}]",
            show(&report.oracle),
            show(&report.perfect)
        )));
    }
    Ok(report)
}
