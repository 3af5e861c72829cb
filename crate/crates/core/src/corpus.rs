//! Seeded generators for test corpora: small random monomial algebras,
//! every monomial quotient of `kZ_n` up to a length bound, gentle algebras,
//! and random involutions.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gluing::{glue_is_finite_dimensional, Involution};
use crate::presentation::{ArrowId, MonomialPresentation, Path, Quiver};

pub const SEED_VAR: &str = "MONO_SING_SEED";

/// `MONO_SING_SEED` if set and numeric, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct RandomParams {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_relation_len: usize,
    /// Rejects larger algebras so the exact oracle stays fast.
    pub max_dimension: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_vertices: 4,
            max_arrows: 6,
            max_relation_len: 3,
            max_dimension: 40,
        }
    }
}

fn numbered_quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    let mut q = Quiver::new();
    for v in 1..=n {
        q.add_vertex(&v.to_string()).expect("fresh names");
    }
    for (i, &(s, t)) in arrows.iter().enumerate() {
        q.add_arrow(&format!("a{}", i + 1), s, t).expect("fresh names");
    }
    q
}

/// A random walk of exactly `len` arrows, if one exists from `start`.
fn random_walk(rng: &mut impl Rng, q: &Quiver, start: usize, len: usize) -> Option<Path> {
    let mut arrows: Vec<ArrowId> = Vec::with_capacity(len);
    let mut at = start;
    for _ in 0..len {
        let out: Vec<ArrowId> = q.arrows_from(at).collect();
        let &a = out.choose(rng)?;
        arrows.push(a);
        at = q.arrow(a).target;
    }
    Path::from_traversal(q, &arrows)
}

/// One draw; may be infinite-dimensional.
pub fn random_presentation(rng: &mut impl Rng, params: &RandomParams) -> MonomialPresentation {
    let n = rng.gen_range(1..=params.max_vertices);
    let m = rng.gen_range(1..=params.max_arrows);
    let arrows: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    let q = numbered_quiver(n, &arrows);
    let count = rng.gen_range(0..=2 * m + 2);
    let mut relations = Vec::new();
    for _ in 0..count {
        let len = rng.gen_range(2..=params.max_relation_len.max(2));
        let start = rng.gen_range(0..n);
        if let Some(p) = random_walk(rng, &q, start, len) {
            relations.push(p);
        }
    }
    MonomialPresentation::new(q, relations).expect("walks have length at least 2")
}

/// `count` finite-dimensional draws within the dimension cap, deterministic in `seed`.
pub fn random_corpus(seed: u64, count: usize, params: &RandomParams) -> Vec<MonomialPresentation> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_presentation(&mut rng, params);
        if p.dimension().is_ok_and(|d| d <= params.max_dimension) {
            out.push(p);
        }
    }
    out
}

/// `kZ_n` with vertices `1..n` and arrows `a_i: i → i+1`.
pub fn cyclic_quiver(n: usize) -> Quiver {
    let arrows: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    numbered_quiver(n, &arrows)
}

/// The path of length `len` starting at vertex `start` of `kZ_n`.
pub fn cyclic_path(q: &Quiver, start: usize, len: usize) -> Path {
    let n = q.vertex_count();
    let arrows: Vec<ArrowId> = (0..len).map(|i| (start + i) % n).collect();
    Path::from_traversal(q, &arrows).expect("consecutive arrows compose")
}

/// `kZ_n/J^m`.
pub fn truncated_cycle(n: usize, m: usize) -> MonomialPresentation {
    let q = cyclic_quiver(n);
    let relations = (0..n).map(|v| cyclic_path(&q, v, m)).collect();
    MonomialPresentation::new(q, relations).expect("m ≥ 2")
}

/// Every finite-dimensional `kZ_n/I` with `I` generated by paths of length
/// `2..=max_len`, one per distinct minimal generating set, for `n ≤ max_n`.
pub fn nakayama_exhaustive(max_n: usize, max_len: usize) -> Vec<MonomialPresentation> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let q = cyclic_quiver(n);
        let candidates: Vec<Path> = (2..=max_len)
            .flat_map(|len| (0..n).map(move |v| (v, len)))
            .map(|(v, len)| cyclic_path(&q, v, len))
            .collect();
        let mut seen: BTreeSet<Vec<Path>> = BTreeSet::new();
        for mask in 1u64..(1 << candidates.len()) {
            let gens: Vec<Path> = (0..candidates.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| candidates[i].clone())
                .collect();
            let p = MonomialPresentation::new(q.clone(), gens).expect("lengths ≥ 2");
            if !p.is_finite_dimensional() {
                continue;
            }
            if seen.insert(p.minimal_relations().to_vec()) {
                out.push(p);
            }
        }
    }
    out
}

/// Relation patterns at one vertex allowed in a gentle algebra: every
/// incoming arrow has at most one outgoing continuation killed and at most
/// one kept, and dually.
fn gentle_patterns(inc: &[ArrowId], out: &[ArrowId]) -> Vec<Vec<(ArrowId, ArrowId)>> {
    let pairs: Vec<(ArrowId, ArrowId)> = inc.iter().flat_map(|&a| out.iter().map(move |&b| (a, b))).collect();
    let mut patterns = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let killed = |i: usize| mask >> i & 1 == 1;
        let ok_in = inc.iter().all(|&a| {
            let idx: Vec<usize> = (0..pairs.len()).filter(|&i| pairs[i].0 == a).collect();
            idx.iter().filter(|&&i| killed(i)).count() <= 1 && idx.iter().filter(|&&i| !killed(i)).count() <= 1
        });
        let ok_out = out.iter().all(|&b| {
            let idx: Vec<usize> = (0..pairs.len()).filter(|&i| pairs[i].1 == b).collect();
            idx.iter().filter(|&&i| killed(i)).count() <= 1 && idx.iter().filter(|&&i| !killed(i)).count() <= 1
        });
        if ok_in && ok_out {
            patterns.push((0..pairs.len()).filter(|&i| killed(i)).map(|i| pairs[i]).collect());
        }
    }
    patterns
}

/// One draw of a gentle presentation; may be infinite-dimensional.
pub fn random_gentle(rng: &mut impl Rng, max_vertices: usize, max_arrows: usize) -> MonomialPresentation {
    let n = rng.gen_range(1..=max_vertices);
    let target = rng.gen_range(1..=max_arrows);
    let (mut outdeg, mut indeg) = (vec![0; n], vec![0; n]);
    let mut arrows = Vec::new();
    for _ in 0..4 * target {
        if arrows.len() == target {
            break;
        }
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if outdeg[s] < 2 && indeg[t] < 2 {
            outdeg[s] += 1;
            indeg[t] += 1;
            arrows.push((s, t));
        }
    }
    let q = numbered_quiver(n, &arrows);
    let mut relations = Vec::new();
    for v in 0..n {
        let inc: Vec<ArrowId> = q.arrows_into(v).collect();
        let out: Vec<ArrowId> = q.arrows_from(v).collect();
        let patterns = gentle_patterns(&inc, &out);
        for (a, b) in patterns.choose(rng).cloned().unwrap_or_default() {
            relations.push(Path::from_traversal(&q, &[a, b]).expect("meet at v"));
        }
    }
    MonomialPresentation::new(q, relations).expect("length 2")
}

/// `count` finite-dimensional gentle presentations with at least one arrow.
pub fn gentle_corpus(seed: u64, count: usize) -> Vec<MonomialPresentation> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_gentle(&mut rng, 5, 7);
        if p.quiver().arrow_count() > 0 && p.dimension().is_ok_and(|d| d <= 60) {
            out.push(p);
        }
    }
    out
}

/// A non-identity involution passing the gluing chain search, if
/// one turns up within `tries` draws.
pub fn random_involution(rng: &mut impl Rng, pres: &MonomialPresentation, tries: usize) -> Option<Involution> {
    let n = pres.quiver().vertex_count();
    if n < 2 {
        return None;
    }
    for _ in 0..tries {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let pairs = rng.gen_range(1..=n / 2);
        let mut map: Vec<usize> = (0..n).collect();
        for k in 0..pairs {
            let (x, y) = (order[2 * k], order[2 * k + 1]);
            map[x] = y;
            map[y] = x;
        }
        let e = Involution::from_map(map).expect("built from disjoint swaps");
        if glue_is_finite_dimensional(pres, &e).is_ok_and(|w| w.is_none()) {
            return Some(e);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gorenstein::gentle_check;

    #[test]
    fn deterministic() {
        let p = RandomParams::default();
        let a: Vec<String> = random_corpus(7, 20, &p).iter().map(|x| x.to_text()).collect();
        let b: Vec<String> = random_corpus(7, 20, &p).iter().map(|x| x.to_text()).collect();
        assert_eq!(a, b);
        assert_ne!(
            a,
            random_corpus(8, 20, &p).iter().map(|x| x.to_text()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn random_respects_bounds() {
        let p = RandomParams::default();
        for x in random_corpus(1, 50, &p) {
            assert!(x.quiver().vertex_count() <= 4 && x.quiver().arrow_count() <= 6);
            assert!(x.max_relation_len() <= 3);
            assert!(x.dimension().unwrap() <= 40);
        }
    }

    #[test]
    fn nakayama_small() {
        let all = nakayama_exhaustive(2, 3);
        // n = 1: x² or x³; n = 2 has more
        assert_eq!(all.iter().filter(|p| p.quiver().vertex_count() == 1).count(), 2);
        assert!(all
            .iter()
            .any(|p| p.minimal_relations() == truncated_cycle(2, 3).minimal_relations()));
    }

    #[test]
    fn gentle_draws_are_gentle() {
        for p in gentle_corpus(3, 20) {
            assert!(gentle_check(&p).is_gentle, "{}", p.to_text());
        }
    }
}
