use super::homology::{top_dims, Termination};
use super::*;
use crate::fixtures::load;
use crate::perfection::perfect_pairs;
use crate::presentation::Path;

#[test]
fn hom_dimensions() {
    let z3 = load("z3r2");
    let s2 = simple_rep(&z3, 1);
    assert_eq!(hom_dim(&s2, &s2).unwrap(), 1);

    let z2 = load("z2r3");
    let a = path_module_rep(&z2, &z2.path(&["a"]).unwrap()).unwrap();
    // a∘b, i.e. traversal b·a: the chain arrow out of Aa
    let ab = path_module_rep(&z2, &z2.path(&["b", "a"]).unwrap()).unwrap();
    let homs = hom_space(&a, &ab).unwrap();
    assert_eq!(homs.len(), 1);
    let f = &homs[0];
    assert!((0..2).all(|v| f[v].rank() == ab.dims()[v]), "surjective");
    // b∘a lives at vertex 1 while Aa's top is at 2
    let ba = path_module_rep(&z2, &z2.path(&["a", "b"]).unwrap()).unwrap();
    assert_eq!(hom_dim(&a, &ba).unwrap(), 0);
}

#[test]
fn stable_homs_vanish_from_projectives() {
    for name in ["z3r2", "z2r3", "lin", "glu"] {
        let pres = load(name);
        let n = pres.quiver().vertex_count();
        for v in 0..n {
            let p = projective_rep(&pres, v);
            for w in 0..n {
                let s = simple_rep(&pres, w);
                assert_eq!(stable_hom_dim(&pres, &p, &s).unwrap(), 0, "{name}");
                let i = injective_rep(&pres, w).unwrap();
                assert_eq!(stable_hom_dim(&pres, &p, &i).unwrap(), 0, "{name}");
            }
        }
    }
    let z3 = load("z3r2");
    let s = simple_rep(&z3, 0);
    assert_eq!(stable_hom_dim(&z3, &s, &s).unwrap(), 1);
}

#[test]
fn mismatch_is_reported() {
    let a = simple_rep(&load("lin"), 0);
    let b = simple_rep(&load("z3r2"), 0);
    assert!(matches!(hom_dim(&a, &b), Err(crate::Error::PresentationMismatch)));
}

#[test]
fn syzygies() {
    let lin = load("lin");
    let s1 = simple_rep(&lin, 0);
    let cover = projective_cover(&lin, &s1).unwrap();
    assert_eq!(cover.generators, vec![0]);
    let omega = syzygy(&lin, &s1).unwrap();
    assert_eq!(omega, simple_rep(&lin, 1));
    assert!(syzygy(&lin, &projective_rep(&lin, 0)).unwrap().is_zero());
    assert_eq!(top_dims(&regular_rep(&lin)), vec![1, 1, 1]);
}

#[test]
fn ext_values() {
    let z3 = load("z3r2");
    let a1 = path_module_rep(&z3, &z3.path(&["a1"]).unwrap()).unwrap();
    let reg = regular_rep(&z3);
    for k in 1..=6 {
        assert_eq!(ext_dim(&z3, &a1, &reg, k).unwrap(), 0);
    }
    // but the simples extend each other around the cycle
    assert_eq!(ext_dim(&z3, &simple_rep(&z3, 0), &simple_rep(&z3, 1), 1).unwrap(), 1);

    let lin = load("lin");
    assert_eq!(ext_dim(&lin, &simple_rep(&lin, 2), &regular_rep(&lin), 1).unwrap(), 0);
    assert_eq!(ext_dim(&lin, &simple_rep(&lin, 0), &simple_rep(&lin, 2), 2).unwrap(), 1);

    let her = load("her");
    let mods = [
        simple_rep(&her, 0),
        simple_rep(&her, 1),
        regular_rep(&her),
        injective_rep(&her, 1).unwrap(),
    ];
    for m in &mods {
        for n in &mods {
            assert_eq!(ext_dim(&her, m, n, 2).unwrap(), 0);
        }
    }
    assert_eq!(ext_dim(&her, &simple_rep(&her, 0), &simple_rep(&her, 1), 1).unwrap(), 1);
}

#[test]
fn profiles() {
    let z3 = injective_dimension_profile(&load("z3r2")).unwrap();
    assert!(z3.gorenstein);
    assert_eq!(z3.level, Some(0));
    let lin = injective_dimension_profile(&load("lin")).unwrap();
    assert!(lin.gorenstein && lin.level.unwrap() <= 2);
    let her = injective_dimension_profile(&load("her")).unwrap();
    assert!(her.gorenstein && her.level.unwrap() <= 1);
    assert_eq!(global_dimension(&load("lin")).unwrap(), DimStatus::Finite(2));
    assert_eq!(global_dimension(&load("z3r2")).unwrap(), DimStatus::Infinite);
}

#[test]
fn non_gorenstein_is_detected() {
    // a loop with a² = 0 feeding an arrow: the classic non-Gorenstein example
    let pres = crate::MonomialPresentation::parse("vertex 1 2\narrow x 1 1\narrow a 1 2\nrelation x x\nrelation x a\n")
        .unwrap();
    let profile = injective_dimension_profile(&pres).unwrap();
    assert!(!profile.gorenstein);
    assert!(matches!(
        gorenstein_projective_test(&pres, &simple_rep(&pres, 0)),
        Err(crate::Error::NotGorenstein { .. })
    ));
}

#[test]
fn gp_tests() {
    let z3 = load("z3r2");
    let a1 = path_module_rep(&z3, &z3.path(&["a1"]).unwrap()).unwrap();
    assert!(gorenstein_projective_test(&z3, &a1).unwrap());
    let lin = load("lin");
    assert!(!gorenstein_projective_test(&lin, &simple_rep(&lin, 1)).unwrap());
    for name in ["lin", "z2r3", "glu"] {
        let pres = load(name);
        assert!(gorenstein_projective_test(&pres, &regular_rep(&pres)).unwrap());
    }
}

#[test]
fn crosscheck_fixtures() {
    for (name, count) in [
        ("z3r2", 3),
        ("z2r3", 4),
        ("her", 0),
        ("lin", 0),
        ("glu", 12),
        ("z6r3", 12),
    ] {
        let report = crosscheck_classification(&load(name)).unwrap();
        assert_eq!(report.oracle.len(), count, "{name}");
    }
}

#[test]
fn syzygy_law_on_perfect_pairs() {
    for name in ["z3r2", "z2r3", "glu", "lin"] {
        let pres = load(name);
        let oracle = Oracle::new(&pres).unwrap();
        for pair in perfect_pairs(&pres).unwrap() {
            let q = oracle.class_of(&pair.right).unwrap();
            let p = oracle.class_of(&pair.left).unwrap();
            assert_eq!(oracle.omega_class(q).unwrap(), vec![(p, 1)], "{name}");
        }
    }
}

#[test]
fn traces() {
    let lin = load("lin");
    let oracle = Oracle::new(&lin).unwrap();
    let t = oracle.resolution_trace(&simple_rep(&lin, 0), 10).unwrap();
    assert_eq!(t.status, Termination::Finite(2));
    assert_eq!(t.steps.len(), 3);

    let z3 = load("z3r2");
    let oracle = Oracle::new(&z3).unwrap();
    let t = oracle.resolution_trace(&simple_rep(&z3, 0), 10).unwrap();
    assert_eq!(t.status, Termination::PeriodicityDetected { first: 0, repeat: 3 });
    let t = oracle.resolution_trace(&simple_rep(&z3, 0), 1).unwrap();
    assert_eq!(t.status, Termination::CutoffReached(1));
}

#[test]
fn path_modules_match_their_classes() {
    let z2 = load("z2r3");
    let oracle = Oracle::new(&z2).unwrap();
    let reg = regular_rep(&z2);
    match oracle.decompose(&reg).unwrap() {
        Module::Sum(parts) => {
            assert_eq!(parts.len(), 2);
            assert!(parts.iter().all(|&(_, m)| m == 1));
        }
        Module::Opaque(_) => panic!("the regular module splits"),
    }
    let e = oracle.class_of(&Path::trivial(0)).unwrap();
    assert!(oracle.is_projective_class(e).unwrap());
}
