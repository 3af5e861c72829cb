//! Seeded property checks over random monomial algebras.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::seq::SliceRandom;

use monosing::corpus::{gentle_corpus, random_corpus, random_involution, random_presentation, rng, RandomParams};
use monosing::gluing::{equivalence_report, glue, glue_is_finite_dimensional, glue_unchecked, isomorphic, Involution};
use monosing::gorenstein::{
    cycle_subalgebra, gentle_check, gorenstein_report, is_one_gorenstein, relation_cycles, singularity_decomposition,
    OrbitCategoryDescriptor,
};
use monosing::graded::{graded_report, perfect_reduction, syzygy_of_t, type_a_quiver, Reduction};
use monosing::oracle::{injective_rep, path_module_rep, Module, Oracle, Representation};
use monosing::perfection::{annihilator_minimal, perfect_pairs, perfect_paths, perfection_report, Side};
use monosing::presentation::PresentationEcho;
use monosing::{Error, MonomialPresentation, Path, Quiver};

fn sample(seed: u64) -> MonomialPresentation {
    random_corpus(seed, 1, &RandomParams::default()).pop().unwrap()
}

fn one_gorenstein_sample(seed: u64) -> MonomialPresentation {
    let mut s = seed;
    loop {
        let p = sample(s);
        if is_one_gorenstein(&p).unwrap().one_gorenstein {
            return p;
        }
        s = s.wrapping_add(0x9e37_79b9);
    }
}

/// Every nonzero path by brute force, or `None` once there are more than `limit`.
fn brute_force_paths(pres: &MonomialPresentation, max_len: usize, limit: usize) -> Option<Vec<Path>> {
    let q = pres.quiver();
    let mut all: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_from(p.target()) {
                let ext = Path::arrow(q, a).compose(p).unwrap();
                if pres.is_nonzero(&ext) {
                    next.push(ext);
                }
            }
        }
        all.extend(next.iter().cloned());
        if all.len() > limit {
            return None;
        }
        frontier = next;
    }
    Some(all)
}

fn rebuild(echo: &PresentationEcho) -> MonomialPresentation {
    let mut text = format!("vertex {}\n", echo.vertices.join(" "));
    for a in &echo.arrows {
        text += &format!("arrow {} {} {}\n", a.id, a.src, a.tgt);
    }
    for r in &echo.relations {
        text += &format!("relation {}\n", r.join(" "));
    }
    MonomialPresentation::parse(&text).unwrap()
}

/// `A × B` with `B`'s names primed.
fn disjoint_union(a: &MonomialPresentation, b: &MonomialPresentation) -> MonomialPresentation {
    let mut q = Quiver::new();
    for part in [a, b] {
        let off = q.vertex_count();
        let prime = if off == 0 { "" } else { "'" };
        for name in part.quiver().vertex_names() {
            q.add_vertex(&format!("{name}{prime}")).unwrap();
        }
        for arrow in part.quiver().arrows() {
            q.add_arrow(
                &format!("{}{prime}", arrow.name),
                arrow.source + off,
                arrow.target + off,
            )
            .unwrap();
        }
    }
    let shift = a.quiver().arrow_count();
    let mut relations = a.minimal_relations().to_vec();
    for f in b.minimal_relations() {
        let arrows: Vec<usize> = f.traversal().map(|x| x + shift).collect();
        relations.push(Path::from_traversal(&q, &arrows).unwrap());
    }
    MonomialPresentation::new(q, relations).unwrap()
}

fn sorted(mut v: Vec<OrbitCategoryDescriptor>) -> Vec<OrbitCategoryDescriptor> {
    v.sort();
    v
}

fn round_trip<T>(value: &T)
where
    T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug,
{
    let text = serde_json::to_string(value).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, value);
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_is_subpath_closed(seed in any::<u64>()) {
        let pres = sample(seed);
        let basis = pres.enumerate_basis().unwrap();
        let q = pres.quiver();
        for p in basis.paths() {
            for k in 0..=p.len() {
                for j in 0..=p.len() - k {
                    // arrows j..j+k of the composition
                    let w = p.left_factor(q, j + k).right_factor(q, k);
                    prop_assert!(basis.contains(&w), "{} misses window {}", pres.display_path(p), pres.display_path(&w));
                }
            }
        }
        let by_projectives: usize = (0..q.vertex_count())
            .map(|v| pres.cyclic_module_basis(&Path::trivial(v)).unwrap().dimension())
            .sum();
        prop_assert_eq!(by_projectives, basis.dimension());
    }

    #[test]
    fn automaton_agrees_with_search(seed in any::<u64>()) {
        let pres = random_presentation(&mut rng(seed), &RandomParams::default());
        let states = pres.automaton().state_count();
        let limit = 5000;
        match (pres.enumerate_basis(), brute_force_paths(&pres, states + 1, limit)) {
            (Ok(basis), Some(all)) => {
                prop_assert!(all.iter().all(|p| p.len() <= states));
                prop_assert_eq!(all.len(), basis.dimension());
            }
            (Ok(basis), None) => prop_assert!(false, "finite of dimension {} but > {limit} paths", basis.dimension()),
            (Err(Error::InfiniteDimensional { .. }), found) => {
                prop_assert!(found.is_none_or(|all| all.iter().any(|p| p.len() > states)));
            }
            (Err(e), _) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn minimal_relations_present_the_same_algebra(seed in any::<u64>()) {
        let pres = sample(seed);
        let reduced = MonomialPresentation::new(pres.quiver().clone(), pres.minimal_relations().to_vec()).unwrap();
        let paths = brute_force_paths(&MonomialPresentation::new(pres.quiver().clone(), Vec::new()).unwrap(), 4, 20_000).unwrap_or_default();
        for p in &paths {
            prop_assert_eq!(pres.is_nonzero(p), reduced.is_nonzero(p));
        }
        prop_assert_eq!(pres.enumerate_basis().unwrap().paths(), reduced.enumerate_basis().unwrap().paths());
    }

    #[test]
    fn perfect_pairs_are_partial_bijections(seed in any::<u64>()) {
        let pres = sample(seed);
        let pairs = perfect_pairs(&pres).unwrap();
        let lefts: BTreeSet<&Path> = pairs.iter().map(|x| &x.left).collect();
        let rights: BTreeSet<&Path> = pairs.iter().map(|x| &x.right).collect();
        prop_assert_eq!(lefts.len(), pairs.len());
        prop_assert_eq!(rights.len(), pairs.len());
        for pair in &pairs {
            prop_assert_eq!(annihilator_minimal(&pres, &pair.left, Side::Right).unwrap(), vec![pair.right.clone()]);
            prop_assert_eq!(annihilator_minimal(&pres, &pair.right, Side::Left).unwrap(), vec![pair.left.clone()]);
        }
        // and every certified pair is found
        for p in pres.enumerate_basis().unwrap().nontrivial() {
            if let [q] = annihilator_minimal(&pres, p, Side::Right).unwrap().as_slice() {
                if annihilator_minimal(&pres, q, Side::Left).unwrap() == [p.clone()] {
                    prop_assert!(lefts.contains(p));
                }
            }
        }
    }

    #[test]
    fn gentle_criterion_matches(seed in any::<u64>()) {
        for p in gentle_corpus(seed, 3) {
            let g = gentle_check(&p);
            prop_assert!(g.is_gentle);
            prop_assert_eq!(g.one_gorenstein_criterion, Some(is_one_gorenstein(&p).unwrap().one_gorenstein));
        }
    }

    #[test]
    fn cycles_account_for_every_perfect_path(seed in any::<u64>()) {
        let pres = one_gorenstein_sample(seed);
        let cycles = relation_cycles(&pres).unwrap();
        let on_cycles: usize = cycles.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(on_cycles, perfect_paths(&pres).unwrap().perfect_count());
        for c in &cycles {
            let sub = cycle_subalgebra(&pres, c);
            prop_assert_eq!(singularity_decomposition(&sub).unwrap(), vec![c.descriptor()]);
        }
    }

    #[test]
    fn decomposition_is_additive(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (one_gorenstein_sample(a), one_gorenstein_sample(b));
        let union = disjoint_union(&x, &y);
        let mut parts = singularity_decomposition(&x).unwrap();
        parts.extend(singularity_decomposition(&y).unwrap());
        prop_assert_eq!(sorted(singularity_decomposition(&union).unwrap()), sorted(parts));
    }

    #[test]
    fn qb_is_a_union_of_chains(seed in any::<u64>()) {
        let pres = one_gorenstein_sample(seed);
        let qb = type_a_quiver(&pres).unwrap();
        let perfect = perfect_paths(&pres).unwrap().perfect_paths();
        prop_assert_eq!(qb.vertex_count(), perfect.len());
        let arrows = qb.arrows();
        let mut out: BTreeMap<&Path, usize> = BTreeMap::new();
        let mut inc: BTreeMap<&Path, usize> = BTreeMap::new();
        for (s, t) in &arrows {
            *out.entry(*s).or_default() += 1;
            *inc.entry(*t).or_default() += 1;
            prop_assert!(t.has_left_factor(s) && t.target() == s.target());
        }
        prop_assert!(out.values().chain(inc.values()).all(|&d| d == 1));
        // a forest of paths has one fewer arrow than vertices per chain
        prop_assert_eq!(arrows.len() + qb.chains.len(), perfect.len());
    }

    #[test]
    fn omega_t_generators_sit_in_positive_degree(seed in any::<u64>()) {
        let pres = one_gorenstein_sample(seed);
        let omega = syzygy_of_t(&pres).unwrap();
        prop_assert!(omega.summands.iter().all(|s| s.generator_degree() > 0));
        let reductions: BTreeSet<Path> = omega
            .summands
            .iter()
            .filter_map(|s| match perfect_reduction(&pres, &s.generator).unwrap() {
                Reduction::Perfect(p) => Some(p),
                Reduction::Projective => None,
            })
            .collect();
        let perfect: BTreeSet<Path> = perfect_paths(&pres).unwrap().perfect_paths().into_iter().collect();
        prop_assert_eq!(reductions, perfect);
    }

    #[test]
    fn sums_of_path_modules_split_back(seed in any::<u64>(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let pres = sample(seed);
        let oracle = Oracle::new(&pres).unwrap();
        let basis = pres.enumerate_basis().unwrap().paths().to_vec();
        let mut m = Representation::zero(&pres);
        let mut want: BTreeMap<usize, u128> = BTreeMap::new();
        for i in &picks {
            let p = i.get(&basis);
            m = m.direct_sum(&path_module_rep(&pres, p).unwrap()).unwrap();
            *want.entry(oracle.class_of(p).unwrap()).or_default() += 1;
        }
        match oracle.decompose(&m).unwrap() {
            Module::Sum(parts) => prop_assert_eq!(parts, want.into_iter().collect::<Vec<_>>()),
            Module::Opaque(_) => prop_assert!(false, "a sum of path modules came back opaque"),
        }
    }

    #[test]
    fn chain_search_agrees_with_automaton(seed in any::<u64>()) {
        let pres = sample(seed);
        let n = pres.quiver().vertex_count();
        prop_assume!(n >= 2);
        let mut r = rng(seed);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut r);
        let mut map: Vec<usize> = (0..n).collect();
        for k in 0..n / 2 {
            map[order[2 * k]] = order[2 * k + 1];
            map[order[2 * k + 1]] = order[2 * k];
        }
        let e = Involution::from_map(map).unwrap();
        let chain = glue_is_finite_dimensional(&pres, &e).unwrap();
        let glued = glue_unchecked(&pres, &e).unwrap();
        prop_assert_eq!(chain.is_none(), glued.is_finite_dimensional());
    }

    #[test]
    fn gluing_pair_by_pair_is_the_same(seed in any::<u64>()) {
        let pres = sample(seed);
        let mut r = rng(seed ^ 1);
        let Some(e) = random_involution(&mut r, &pres, 20) else {
            return Ok(());
        };
        let at_once = glue(&pres, &e).unwrap();
        let mut pairs: Vec<(String, String)> = e
            .pairs()
            .into_iter()
            .map(|(x, y)| (pres.quiver().vertex_name(x).to_string(), pres.quiver().vertex_name(y).to_string()))
            .collect();
        pairs.shuffle(&mut r);
        let mut cur = MonomialPresentation::parse(&pres.to_text()).unwrap();
        for (x, y) in &pairs {
            let step = Involution::from_pairs(&cur, &[(x.as_str(), y.as_str())]).unwrap();
            cur = glue(&cur, &step).unwrap();
        }
        prop_assert!(isomorphic(&at_once, &cur));
    }

    #[test]
    fn reports_round_trip_through_json(seed in any::<u64>()) {
        let pres = sample(seed);
        let echo = pres.echo();
        round_trip(&echo);
        prop_assert_eq!(rebuild(&echo).to_text(), pres.to_text());
        round_trip(&perfection_report(&pres).unwrap());
        round_trip(&gorenstein_report(&pres).unwrap());
        round_trip(&graded_report(&pres).unwrap());
        if let Some(e) = random_involution(&mut rng(seed), &pres, 10) {
            round_trip(&equivalence_report(&pres, &e).unwrap());
        }
    }
}

#[test]
fn non_split_injective_stays_opaque() {
    // 1 → 3 ← 2: the injective at 3 has a two-dimensional top
    let pres = MonomialPresentation::parse("vertex 1 2 3\narrow a 1 3\narrow b 2 3\n").unwrap();
    let oracle = Oracle::new(&pres).unwrap();
    let i3 = injective_rep(&pres, 2).unwrap();
    assert_eq!(i3.dims(), [1, 1, 1]);
    assert!(matches!(oracle.decompose(&i3).unwrap(), Module::Opaque(_)));
}
