//! Graded modules as representations of the covering quiver: vertex `v@d`
//! for each degree `d`, arrow `a@d: s(a)@d → t(a)@(d+1)`. A window of degrees
//! is enough as long as every projective cover used stays inside it.

use serde::Serialize;

use super::homology::{Module, Oracle};
use super::rep::Representation;
use crate::error::{Error, Result};
use crate::graded::syzygy_of_t;
use crate::presentation::{MonomialPresentation, Path, Quiver, VertexId};

pub struct Covering {
    pub presentation: MonomialPresentation,
    base_vertices: usize,
    lo: i64,
    hi: i64,
}

impl Covering {
    /// Degrees `lo..=hi`.
    pub fn new(pres: &MonomialPresentation, lo: i64, hi: i64) -> Result<Self> {
        assert!(lo <= hi);
        let base = pres.quiver();
        let mut quiver = Quiver::new();
        for d in lo..=hi {
            for v in 0..base.vertex_count() {
                quiver.add_vertex(&format!("{}@{d}", base.vertex_name(v)))?;
            }
        }
        let n = base.vertex_count();
        let index = |v: usize, d: i64| (d - lo) as usize * n + v;
        for d in lo..hi {
            for a in base.arrows() {
                quiver.add_arrow(&format!("{}@{d}", a.name), index(a.source, d), index(a.target, d + 1))?;
            }
        }
        let m = base.arrow_count();
        let mut relations = Vec::new();
        for f in pres.minimal_relations() {
            for d in lo..=hi - f.len() as i64 {
                let lifted: Vec<usize> = f
                    .traversal()
                    .enumerate()
                    .map(|(i, a)| (d - lo + i as i64) as usize * m + a)
                    .collect();
                relations.push(Path::from_traversal(&quiver, &lifted).expect("lift is composable"));
            }
        }
        Ok(Covering {
            presentation: MonomialPresentation::new(quiver, relations)?,
            base_vertices: n,
            lo,
            hi,
        })
    }

    pub fn degree(&self, v: VertexId) -> i64 {
        self.lo + (v / self.base_vertices) as i64
    }

    pub fn top_degree(&self) -> i64 {
        self.hi
    }

    /// The lift of `p` whose target sits in degree `end`.
    pub fn lift(&self, pres: &MonomialPresentation, p: &Path, end: i64) -> Path {
        let start = end - p.len() as i64;
        assert!(start >= self.lo && end <= self.hi, "lift outside the degree window");
        let m = pres.quiver().arrow_count();
        if p.is_trivial() {
            return Path::trivial((start - self.lo) as usize * self.base_vertices + p.source());
        }
        let arrows: Vec<usize> = p
            .traversal()
            .enumerate()
            .map(|(i, a)| (start - self.lo + i as i64) as usize * m + a)
            .collect();
        Path::from_traversal(self.presentation.quiver(), &arrows).expect("lift is composable")
    }

    fn support(&self, rep: &Representation) -> impl Iterator<Item = i64> + '_ {
        let dims = rep.dims().to_vec();
        (0..dims.len()).filter(move |&v| dims[v] > 0).map(|v| self.degree(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TiltingCheck {
    pub holds: bool,
    /// Generators of the basic non-projective part of `Ω(T)`, tops in degree 1.
    pub summands: Vec<String>,
    /// Syzygies taken before testing, `max(level − 1, 0)`.
    pub reduced_by: usize,
    /// Degrees `i` actually computed; the rest vanish for degree reasons.
    pub computed: usize,
    pub window: usize,
    /// First nonvanishing `(i, dim Ext^i)`.
    pub failure: Option<(usize, u128)>,
}

/// `Hom_{D_sg(mod^Z A)}(ΩT, ΩT[i]) = 0` for `1 ≤ i ≤ window`.
pub fn verify_omega_t_ext_vanishing(pres: &MonomialPresentation, window: usize) -> Result<bool> {
    Ok(tilting_check(pres, window)?.holds)
}

/// Replaces `W = ΩT` by `X = Ω^{d′}W`, which is Gorenstein projective when `A`
/// is `d`-Gorenstein; then `Hom_{D_sg}(W, W[i]) = Ext^i_{mod^Z A}(X, X)`.
pub fn tilting_check(pres: &MonomialPresentation, window: usize) -> Result<TiltingCheck> {
    assert!(window >= 1, "window starts at 1");
    let level = Oracle::new(pres)?.profile()?.level;
    let reduced_by = level.map_or(0, |l| l.saturating_sub(1));
    let basic = syzygy_of_t(pres)?.basic;
    let summands: Vec<String> = basic.iter().map(|b| pres.display_path(&b.generator)).collect();
    let mut report = TiltingCheck {
        holds: true,
        summands,
        reduced_by,
        computed: 0,
        window,
        failure: None,
    };
    if basic.is_empty() {
        return Ok(report);
    }

    let l = pres.max_relation_len().max(1) as i64;
    // supports: W in 1..=l, Ω^j W in (1+j)..=l(1+j)
    let x_top = l * (1 + reduced_by as i64);
    let steps = (x_top - reduced_by as i64).clamp(1, window as i64);
    let cover = Covering::new(pres, 1 - l, x_top + (steps + 1) * l)?;
    let oracle = Oracle::new(&cover.presentation)?;

    let mut w = Vec::new();
    for b in &basic {
        w.push((oracle.class_of(&cover.lift(pres, &b.generator, 1))?, 1));
    }
    let mut x = Module::Sum(w);
    for _ in 0..reduced_by {
        x = oracle.omega(&x)?;
    }
    let Module::Sum(parts) = &x else {
        unreachable!("syzygies of path-module sums are sums")
    };
    let mut target = Representation::zero(&cover.presentation);
    for &(c, _) in parts {
        target = target.direct_sum(&oracle.class(c).rep)?;
    }
    let Some(target_top) = cover.support(&target).max() else {
        return Ok(report);
    };

    let mut cur = x;
    for i in 1..=window {
        let Module::Sum(parts) = &cur else { unreachable!() };
        let Some(low) = parts
            .iter()
            .map(|&(c, _)| cover.degree(oracle.class(c).generator.target()))
            .min()
        else {
            break;
        };
        if low > target_top {
            break;
        }
        let high = parts
            .iter()
            .flat_map(|&(c, _)| cover.support(&oracle.class(c).rep).collect::<Vec<_>>())
            .max()
            .expect("nonzero module");
        if high + l > cover.top_degree() {
            return Err(Error::InternalInvariantViolation(format!(
                "graded window too small: degree {high} + {l} > {}",
                cover.top_degree()
            )));
        }
        report.computed = i;
        let e = oracle.ext1(&cur, &target)?;
        if e != 0 {
            report.holds = false;
            report.failure = Some((i, e));
            break;
        }
        cur = oracle.omega(&cur)?;
    }
    Ok(report)
}
