//! End-to-end acceptance: fixture values, oracle sweeps over seeded corpora,
//! and byte-for-byte determinism of the binary. One line per criterion.

use std::io::Write;
use std::process::Command;
use std::thread;

use monosing::corpus::{
    gentle_corpus, nakayama_exhaustive, random_corpus, random_involution, rng, seed_from_env, RandomParams,
};
use monosing::fixtures::{self, load};
use monosing::gluing::{equivalence_report, glue, glue_is_finite_dimensional, Involution};
use monosing::gorenstein::{
    detect_self_injective_nakayama, gentle_check, is_one_gorenstein, relation_cycles, singularity_decomposition,
    OrbitCategoryDescriptor,
};
use monosing::graded::type_a_quiver;
use monosing::oracle::{
    crosscheck_classification, global_dimension, injective_dimension_profile, tilting_check, DimStatus,
};
use monosing::perfection::perfect_paths;
use monosing::MonomialPresentation;

const DEFAULT_SEED: u64 = 20_240_917;

type Verdict = Result<String, String>;
type Criterion = Box<dyn FnOnce() -> Verdict + Send>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn descriptors(pres: &MonomialPresentation) -> Vec<String> {
    singularity_decomposition(pres)
        .unwrap()
        .iter()
        .map(ToString::to_string)
        .collect()
}

fn perfect_names(pres: &MonomialPresentation) -> Vec<String> {
    perfect_paths(pres)
        .unwrap()
        .perfect_paths()
        .iter()
        .map(|p| pres.display_path(p))
        .collect()
}

fn criterion_1() -> Verdict {
    let z3 = load("z3r2");
    check(z3.dimension().unwrap() == 6, "dimension")?;
    check(perfect_names(&z3) == ["a1", "a2", "a3"], "perfect paths")?;
    check(is_one_gorenstein(&z3).unwrap().one_gorenstein, "1-Gorenstein")?;
    let cycles = relation_cycles(&z3).unwrap();
    check(cycles.len() == 1 && cycles[0].n == 3 && cycles[0].r == 2, "C(A)")?;
    check(descriptors(&z3) == ["D^b(A_1)/[tau^3]"], "singcat")?;
    check(type_a_quiver(&z3).unwrap().type_name() == "A_1 ⊔ A_1 ⊔ A_1", "Q^B")?;
    check(
        injective_dimension_profile(&z3).unwrap().level == Some(0),
        "oracle level",
    )?;
    Ok("dim 6, {a1,a2,a3}, (n=3,r=2), D^b(A_1)/[tau^3], A_1⊔A_1⊔A_1, level 0".into())
}

fn criterion_2() -> Verdict {
    let z2 = load("z2r3");
    check(perfect_names(&z2).len() == 4, "perfect count")?;
    let cycles = relation_cycles(&z2).unwrap();
    check(cycles.len() == 1 && cycles[0].n == 2 && cycles[0].r == 3, "C(A)")?;
    check(descriptors(&z2) == ["D^b(A_2)/[tau^2]"], "singcat")?;
    check(type_a_quiver(&z2).unwrap().type_name() == "A_2 ⊔ A_2", "Q^B")?;
    Ok("4 perfect paths, (n=2,r=3), D^b(A_2)/[tau^2], A_2⊔A_2".into())
}

fn criterion_3() -> Verdict {
    let lin = load("lin");
    let v = is_one_gorenstein(&lin).unwrap();
    let f = v.failure.ok_or("LIN reported 1-Gorenstein")?;
    check(
        lin.display_path(&f.left) == "b",
        format!("witness {}", lin.display_path(&f.left)),
    )?;
    check(perfect_names(&lin).is_empty(), "perfect paths")?;
    check(global_dimension(&lin).unwrap() == DimStatus::Finite(2), "gldim")?;
    Ok("not 1-Gorenstein (p=b), no perfect paths, gldim 2".into())
}

fn criterion_4() -> Verdict {
    let z6 = load("z6r3");
    let e = Involution::parse_pairs(&z6, "3:6").unwrap();
    check(glue_is_finite_dimensional(&z6, &e).unwrap().is_none(), "chain search")?;
    let glued = glue(&z6, &e).unwrap();
    check(
        monosing::gluing::isomorphic(&glued, &load("glu")),
        "S_E differs from the two-triangle quiver",
    )?;
    let r = equivalence_report(&z6, &e).unwrap();
    let want = Some(vec!["D^b(A_2)/[tau^6]".to_string()]);
    check(
        r.original.perfect_paths == 12 && r.glued.perfect_paths == 12,
        "perfect counts",
    )?;
    check(r.original.one_gorenstein && r.glued.one_gorenstein, "1-Gorenstein")?;
    check(
        r.original.orbit_descriptors == want && r.glued.orbit_descriptors == want,
        "descriptors",
    )?;
    check(r.agreement.all(), "agreement flags")?;
    Ok("12 = 12 perfect paths, D^b(A_2)/[tau^6] on both sides, flags agree".into())
}

/// Gorenstein instances of the random corpus, at least `want`.
fn gorenstein_corpus(seed: u64, want: usize) -> Vec<MonomialPresentation> {
    let params = RandomParams::default();
    let mut out = Vec::new();
    let mut batch = 0;
    while out.len() < want {
        for p in random_corpus(seed.wrapping_add(batch), 50, &params) {
            if injective_dimension_profile(&p).unwrap().gorenstein {
                out.push(p);
            }
        }
        batch += 1;
        assert!(batch < 100, "corpus too thin");
    }
    out
}

fn interesting(pres: &MonomialPresentation) -> bool {
    perfect_paths(pres).unwrap().perfect_count() > 0
}

fn criterion_5(seed: u64) -> Verdict {
    let corpus = gorenstein_corpus(seed, 100);
    let mut with_gp = 0;
    for p in &corpus {
        if let Err(e) = crosscheck_classification(p) {
            return Err(format!("{e}\n{}", p.to_text()));
        }
        with_gp += interesting(p) as usize;
    }
    Ok(format!(
        "{} Gorenstein instances ({with_gp} with non-projective GP), 0 mismatches",
        corpus.len()
    ))
}

fn criterion_6(seed: u64) -> Verdict {
    let corpus = gorenstein_corpus(seed, 100);
    let mut computed = 0;
    for p in &corpus {
        let window = 2 * p.dimension().unwrap();
        let r = tilting_check(p, window).map_err(|e| format!("{e}\n{}", p.to_text()))?;
        if !r.holds {
            return Err(format!("{:?}\n{}", r.failure, p.to_text()));
        }
        computed += r.computed;
    }
    Ok(format!(
        "{} instances, window 2·dim A, {computed} Ext degrees computed, all vanish",
        corpus.len()
    ))
}

fn criterion_7(seed: u64) -> Verdict {
    let mut r = rng(seed ^ 0x5eed);
    let mut checked = 0;
    let mut batch = 0;
    while checked < 50 {
        for p in random_corpus(seed.wrapping_add(1000 + batch), 50, &RandomParams::default()) {
            let Some(e) = random_involution(&mut r, &p, 20) else {
                continue;
            };
            let Ok(report) = equivalence_report(&p, &e) else {
                return Err(format!("gluing failed\n{}", p.to_text()));
            };
            if !report.agreement.gorenstein {
                return Err(format!("Gorenstein verdicts differ\n{}", p.to_text()));
            }
            checked += 1;
        }
        batch += 1;
        if batch > 50 {
            return Err(format!("only {checked} gluable instances"));
        }
    }
    Ok(format!("{checked} glued instances, Gorenstein verdicts agree"))
}

fn criterion_8(seed: u64) -> Verdict {
    let corpus = gentle_corpus(seed, 40);
    let mut yes = 0;
    for p in &corpus {
        let g = gentle_check(p);
        let one = is_one_gorenstein(p).unwrap().one_gorenstein;
        if g.one_gorenstein_criterion != Some(one) {
            return Err(format!(
                "criterion {:?} vs 1-Gorenstein {one}\n{}",
                g.one_gorenstein_criterion,
                p.to_text()
            ));
        }
        yes += one as usize;
    }
    Ok(format!(
        "{} gentle instances ({yes} 1-Gorenstein), criterion agrees",
        corpus.len()
    ))
}

fn criterion_9() -> Verdict {
    let all = nakayama_exhaustive(4, 4);
    let mut self_injective = 0;
    for p in &all {
        let one = is_one_gorenstein(p).unwrap().one_gorenstein;
        let nak = detect_self_injective_nakayama(p);
        if one != nak.is_some() {
            return Err(format!("1-Gorenstein {one} but J^m detection {nak:?}\n{}", p.to_text()));
        }
        if let Some((n, m)) = nak {
            let want = vec![OrbitCategoryDescriptor { rank: m - 1, period: n }];
            if singularity_decomposition(p).unwrap() != want {
                return Err(format!("wrong singcat for kZ_{n}/J^{m}"));
            }
            self_injective += 1;
        }
    }
    Ok(format!(
        "{} quotients of kZ_n (n ≤ 4), {self_injective} of the form J^m, law holds",
        all.len()
    ))
}

fn criterion_10() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_monosing");
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures");
    let commands: &[&[&str]] = &[
        &["info"],
        &["basis"],
        &["perfect"],
        &["gproj"],
        &["gorenstein"],
        &["singcat"],
        &["graded"],
        &["oracle", "--check", "gorenstein", "--trace"],
        &["oracle", "--check", "classification"],
        &["oracle", "--check", "tilting"],
    ];
    let mut runs = 0;
    for name in fixtures::names() {
        let file = format!("{dir}/{name}.quiver");
        for cmd in commands {
            for json in [false, true] {
                let mut outputs = Vec::new();
                for _ in 0..3 {
                    let mut c = Command::new(bin);
                    c.args(*cmd).arg(&file);
                    if json {
                        c.arg("--json");
                    }
                    let out = c.output().map_err(|e| e.to_string())?;
                    outputs.push((out.status.code(), out.stdout, out.stderr));
                }
                if outputs.windows(2).any(|w| w[0] != w[1]) {
                    return Err(format!("{} {name} differs between runs", cmd.join(" ")));
                }
                runs += 3;
            }
        }
    }
    Ok(format!(
        "{runs} runs over {} fixtures, byte-identical",
        fixtures::names().count()
    ))
}

#[test]
fn acceptance() {
    let seed = seed_from_env(DEFAULT_SEED);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("fixture Z3R2", Box::new(criterion_1)),
        ("fixture Z2R3", Box::new(criterion_2)),
        ("fixture LIN", Box::new(criterion_3)),
        ("gluing example", Box::new(criterion_4)),
        ("oracle classification sweep", Box::new(move || criterion_5(seed))),
        ("tilting vanishing sweep", Box::new(move || criterion_6(seed))),
        ("Gorenstein preservation sweep", Box::new(move || criterion_7(seed))),
        ("gentle agreement sweep", Box::new(move || criterion_8(seed))),
        ("Nakayama law", Box::new(criterion_9)),
        ("determinism", Box::new(criterion_10)),
    ];
    let results: Vec<(&str, Verdict)> = thread::scope(|s| {
        let handles: Vec<_> = criteria.into_iter().map(|(name, f)| (name, s.spawn(f))).collect();
        handles
            .into_iter()
            .map(|(name, h)| (name, h.join().unwrap_or_else(|_| Err("panicked".into()))))
            .collect()
    });
    // straight to the process stdout: the harness would otherwise swallow the report
    let mut out = std::io::stdout().lock();
    writeln!(out, "seed {seed}").unwrap();
    let mut failed = 0;
    for (i, (name, verdict)) in results.iter().enumerate() {
        match verdict {
            Ok(detail) => writeln!(out, "criterion {:>2} PASS  {name}: {detail}", i + 1).unwrap(),
            Err(why) => {
                failed += 1;
                writeln!(out, "criterion {:>2} FAIL  {name}: {why}", i + 1).unwrap();
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
