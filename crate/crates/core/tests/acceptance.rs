use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tridend_core::axioms::{check_axioms, check_commutative, ets_equivalence_probe, TripleSource};
use tridend_core::coeff::int;
use tridend_core::free::{tree_axiom_scan, FreeTridend};
use tridend_core::omega::{builtin, builtin_table, check_ets, Builtin};
use tridend_core::operad::{
    assoc_on_trees, assoc_verdicts, koszul_dual, listed_dual_relations, relation_space,
    sample_combos, Reading,
};
use tridend_core::rota_baxter::{check_rb, induced_tridend, OmegaRbAlgebra};
use tridend_core::tensor::{freeness_probe, generation_probe, phi_properties, Collapsed, Tagged};
use tridend_core::tree::{enumerate, Tree};
use tridend_core::words::{
    free_matching_truncated, quasi_shuffle_term_count, words_of_length, MatchingAlgebra, TypedWord,
    TypedWords, UniversalMorphism,
};
use tridend_core::{LinComb, OmegaTable, TriOp, Tridendriform};

struct Outcome {
    pass: bool,
    detail: String,
    supplementary: Vec<String>,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
        supplementary: Vec::new(),
    }
}

fn z2() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 0]]
}

/// Builtin ETS tables with |Ω| ≤ 2 that the constructors accept.
fn small_builtins() -> Vec<(String, OmegaTable)> {
    vec![
        (
            "trivial(1)".into(),
            builtin(Builtin::Trivial, 1, None, None).unwrap(),
        ),
        (
            "trivial(2)".into(),
            builtin(Builtin::Trivial, 2, None, None).unwrap(),
        ),
        (
            "matching(1)".into(),
            builtin(Builtin::Matching, 1, None, None).unwrap(),
        ),
        (
            "matching(2)".into(),
            builtin(Builtin::Matching, 2, None, None).unwrap(),
        ),
        (
            "family(Z/2)".into(),
            builtin(Builtin::Family, 2, Some(&z2()), None).unwrap(),
        ),
    ]
}

fn criterion1() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 1..=4 {
        let mut tables = vec![
            (
                "projections_A",
                builtin_table(Builtin::ProjectionsA, n, None, None).unwrap(),
            ),
            (
                "projections_B",
                builtin_table(Builtin::ProjectionsB, n, None, None).unwrap(),
            ),
            (
                "matching",
                builtin_table(Builtin::Matching, n, None, None).unwrap(),
            ),
        ];
        if n == 1 {
            tables.push((
                "trivial",
                builtin_table(Builtin::Trivial, 1, None, None).unwrap(),
            ));
        }
        for (name, t) in tables {
            checked += 1;
            let r = check_ets(&t);
            if !r.passed() {
                failures.push(format!("{name}({n}) fails {}", r.failed_axioms().join(",")));
            }
        }
    }
    let all_left = OmegaTable::from_fn(2, |_, a, _| a).unwrap();
    let r = check_ets(&all_left);
    let w = r.first_violation("T1");
    let left_ok = w.is_some_and(|v| v.witness.starts_with("(0,1,0)"));
    let witness = w.map(|v| v.witness.clone()).unwrap_or_default();
    let pass = failures.is_empty() && left_ok;
    outcome(
        pass,
        format!(
            "{}/{checked} builtin tables pass; all-left fails T1 at {witness}{}",
            checked - failures.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!("; {}", failures.join("; "))
            }
        ),
    )
}

/// Σ_k C(n,k) C(n,k−1)/n · 2^(k−1).
fn little_schroeder(n: usize) -> BigUint {
    fn binom(n: usize, k: usize) -> BigUint {
        (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
    }
    (1..=n)
        .map(|k| binom(n, k) * binom(n, k - 1) / n * BigUint::from(2u32).pow(k as u32 - 1))
        .sum()
}

fn criterion2() -> Outcome {
    let want = [1u32, 3, 11, 45];
    let mut ok = true;
    let mut got = Vec::new();
    for (i, w) in want.iter().enumerate() {
        let n = i + 1;
        let c = enumerate(n, &["x"], 1).unwrap().len();
        ok &= BigUint::from(c) == little_schroeder(n) && c == *w as usize;
        got.push(c.to_string());
    }
    for xs in [vec!["x"], vec!["x", "y"], vec!["x", "y", "z"]] {
        for om in 1..=3 {
            ok &= enumerate(2, &xs, om).unwrap().len() == 3 * xs.len() * xs.len() * om;
        }
    }
    let listing: Vec<String> = enumerate(2, &["x"], 1)
        .unwrap()
        .iter()
        .map(Tree::render)
        .collect();
    ok &= listing == ["((| x |:0) x |)", "(| x (|:0 x |))", "(| x |:0 x |)"];
    outcome(
        ok,
        format!(
            "|T_n| = {} for n = 1..4; |T_2(X,Ω)| = 3|X|²|Ω| for |X|,|Ω| ≤ 3",
            got.join(", ")
        ),
    )
}

fn criterion3() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, t) in small_builtins() {
        let alg = FreeTridend::new(t).unwrap();
        let r = tree_axiom_scan(&alg, &["x"], 8, 8);
        ok &= r.passed();
        parts.push(format!("{name}: {} instances", r.instances));
    }
    outcome(
        ok,
        format!("tri1-tri7 at total leaves ≤ 8: {}", parts.join(", ")),
    )
}

fn criterion4() -> Outcome {
    let tables: Vec<OmegaTable> = {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        (0..1000).map(|_| OmegaTable::random(2, &mut rng)).collect()
    };
    let mismatches = |bound| {
        tables
            .iter()
            .filter(|t| {
                let p = ets_equivalence_probe(t, bound);
                p.ets_ok != p.axioms_ok
            })
            .count()
    };
    let ets = tables.iter().filter(|t| check_ets(t).passed()).count();
    let m6 = mismatches(6);
    let mut o = outcome(
        m6 == 0,
        format!(
            "leaf bound 6: ets_ok = axioms_ok on {}/1000 seeded tables ({ets} are ETS)",
            1000 - m6
        ),
    );
    let m7 = mismatches(7);
    o.supplementary.push(format!(
        "leaf bound 7: ets_ok = axioms_ok on {}/1000 seeded tables",
        1000 - m7
    ));
    o
}

fn criterion5() -> Outcome {
    let mut ok = true;
    let (alg, _) = free_matching_truncated(4, 1, 2);
    let one = builtin(Builtin::Trivial, 1, None, None).unwrap();
    let sh = TypedWords::new(one, alg).unwrap();
    let mut counts = Vec::new();
    for (m, n, d) in [(1usize, 1usize, 3u32), (2, 1, 5), (2, 2, 13)] {
        let a = TypedWord::new((0..m).collect(), vec![0; m - 1]).unwrap();
        let b = TypedWord::new((m..m + n).collect(), vec![0; n - 1]).unwrap();
        let mut total = LinComb::zero();
        for op in TriOp::ALL {
            total += sh.basis_product(op, 0, &a, &b);
        }
        ok &= total.len() == d as usize && quasi_shuffle_term_count(m, n) == BigUint::from(d);
        counts.push(format!("D({m},{n}) = {}", total.len()));
    }

    let matching = builtin(Builtin::Matching, 2, None, None).unwrap();
    let sh = TypedWords::new(matching, MatchingAlgebra::pointwise(2, &[int(1), int(2)])).unwrap();
    let basis: Vec<TypedWord> = (1..=3).flat_map(|l| words_of_length(2, 2, l)).collect();
    let r = check_axioms(&sh, &TripleSource::exhaustive(&basis, TypedWord::len, 5));
    ok &= r.passed();

    let fam = builtin(Builtin::Family, 2, Some(&z2()), None).unwrap();
    let comm_table = fam.is_commutative();
    let sh = TypedWords::new(fam, MatchingAlgebra::pointwise(2, &[int(1), int(3)])).unwrap();
    let pairs: Vec<[LinComb<TypedWord>; 2]> = basis
        .iter()
        .flat_map(|a| {
            basis
                .iter()
                .map(move |b| [LinComb::basis(a.clone()), LinComb::basis(b.clone())])
        })
        .filter(|[a, b]| a.keys().next().unwrap().len() + b.keys().next().unwrap().len() <= 5)
        .collect();
    let c = check_commutative(&sh, &pairs);
    ok &= comm_table && c.passed();
    outcome(
        ok,
        format!(
            "{}; axioms on matching(2) words with lengths ≤ 5: {} instances; commutativity on family(Z/2): {} instances",
            counts.join(", "),
            r.instances,
            c.instances
        ),
    )
}

fn criterion6() -> Outcome {
    let fam = builtin(Builtin::Family, 2, Some(&z2()), None).unwrap();
    let alg = MatchingAlgebra::pointwise(2, &[int(1), int(3)]);
    let sh = TypedWords::new(fam.clone(), alg.clone()).unwrap();
    let phi = (0..2)
        .map(|i| LinComb::basis(TypedWord::letter(i)))
        .collect();
    let m = UniversalMorphism::new(&alg, phi, &sh).unwrap();
    let mut ok = true;
    let mut words = 0;
    for l in 1..=3 {
        for v in words_of_length(2, 2, l) {
            words += 1;
            ok &= m.apply_word(&v) == LinComb::basis(v.clone());
        }
    }
    let short: Vec<TypedWord> = (1..=2).flat_map(|l| words_of_length(2, 2, l)).collect();
    let mut pairs = 0;
    for u in &short {
        for v in &short {
            let (cu, cv) = (LinComb::basis(u.clone()), LinComb::basis(v.clone()));
            for op in TriOp::ALL {
                for w in fam.elements() {
                    pairs += 1;
                    let lhs = m.apply(&sh.product(op, w, &cu, &cv));
                    let rhs = sh.product(op, w, &m.apply(&cu), &m.apply(&cv));
                    ok &= lhs == rhs;
                }
            }
        }
    }
    outcome(
        ok,
        format!(
            "Φ = id on {words} words of length ≤ 3; morphism on {pairs} (pair, op, ω) instances"
        ),
    )
}

fn criterion7() -> Outcome {
    let one = builtin(Builtin::Trivial, 1, None, None).unwrap();
    let shift = vec![vec![int(0), int(0)], vec![int(1), int(0)]];
    let alg = OmegaRbAlgebra::pointwise(2, vec![shift.clone()], vec![int(1)]).unwrap();
    let rb = check_rb(&alg, &one).unwrap();
    let td = induced_tridend(&alg, &one, false).unwrap();
    let ax = check_axioms(&td, &TripleSource::sampled_combos(&[0usize, 1], 512, 3, 0));
    let heavy = OmegaRbAlgebra::pointwise(2, vec![shift], vec![int(2)]).unwrap();
    let heavy_fails = !check_rb(&heavy, &one).unwrap().passed();

    let m2 = builtin(Builtin::Matching, 2, None, None).unwrap();
    let zero = vec![vec![int(0); 2]; 2];
    let z = OmegaRbAlgebra::pointwise(2, vec![zero.clone(), zero], vec![int(1), int(1)]).unwrap();
    let zr = check_rb(&z, &m2).unwrap();
    let zt = induced_tridend(&z, &m2, false).unwrap();
    let zax = check_axioms(&zt, &TripleSource::exhaustive(&[0usize, 1], |_| 1, 3));
    let ok = rb.passed()
        && ax.passed()
        && ax.instances > 0
        && heavy_fails
        && zr.passed()
        && zax.passed();
    outcome(
        ok,
        format!(
            "weight-1 shift: check_rb {}, induced axioms on 512 seeded triples {}; weight 2 rejected: {heavy_fails}; zero operators {}",
            verdict(rb.passed()),
            verdict(ax.passed()),
            verdict(zr.passed() && zax.passed())
        ),
    )
}

fn criterion8() -> Outcome {
    let m2 = builtin(Builtin::Matching, 2, None, None).unwrap();
    let alg = FreeTridend::new(m2.clone()).unwrap();
    let coll = Collapsed::new(&alg);
    let gens: Vec<Tagged<Tree>> = (0..2)
        .flat_map(|w| {
            ["x", "y"].map(|x| Tagged {
                omega: w,
                elem: Tree::corolla(x),
            })
        })
        .collect();
    let r = check_axioms(&coll, &TripleSource::exhaustive(&gens, |_| 1, 3));
    let mut ok = r.passed();

    let mut tables = small_builtins();
    tables.push((
        "projections_A(2) raw".into(),
        builtin_table(Builtin::ProjectionsA, 2, None, None).unwrap(),
    ));
    tables.push((
        "projections_B(2) raw".into(),
        builtin_table(Builtin::ProjectionsB, 2, None, None).unwrap(),
    ));
    let mut parts = Vec::new();
    for (name, t) in &tables {
        let phi = phi_properties(t);
        let surj = phi.iter().all(|p| p.surjective);
        let inj = phi.iter().all(|p| p.injective);
        let g = generation_probe(t, &["x"], 3).unwrap();
        let f = freeness_probe(t, &["x"], 3).unwrap();
        ok &= g.holds == surj && f.holds == inj;
        parts.push(format!("{name} {}/{}", g.holds, f.holds));
    }
    let pa = builtin_table(Builtin::ProjectionsA, 2, None, None).unwrap();
    let g = generation_probe(&pa, &["x"], 3).unwrap();
    let pa_deg2 = !g.holds && g.degrees.last().map(|d| d.degree) == Some(2);
    ok &= pa_deg2;
    outcome(
        ok,
        format!(
            "collapsed classical axioms on matching(2) generators: {} instances; generation/freeness vs φ: {}; projections_A fails generation at degree 2: {pa_deg2}",
            r.instances,
            parts.join(", ")
        ),
    )
}

fn criterion9() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut corrected_ok = true;
    for (name, t) in small_builtins() {
        let n = t.size();
        let r = relation_space(&t);
        let k = koszul_dual(&t);
        let printed = listed_dual_relations(&t, Reading::Printed);
        let dims = r.rank == 7 * n * n && k.space.rank == 11 * n * n && k.validated;
        let span = printed.same_span(&k.space);
        corrected_ok &= listed_dual_relations(&t, Reading::Corrected).same_span(&k.space);
        let alg = FreeTridend::new(t.clone()).unwrap();
        let mut agree = 0;
        let combos = sample_combos(n, 200, 0);
        for co in &combos {
            let v = assoc_verdicts(&t, co);
            if v.agree() && assoc_on_trees(&alg, co) == v.conditions {
                agree += 1;
            }
        }
        let part_ok = dims && span && agree == combos.len();
        ok &= part_ok;
        parts.push(format!(
            "{name}: dims {}, printed span = dual {span}, assoc agree {agree}/200",
            if dims { "ok" } else { "wrong" }
        ));
    }
    let one = builtin(Builtin::Trivial, 1, None, None).unwrap();
    let emitted = listed_dual_relations(&one, Reading::Printed);
    ok &= emitted.rows.len() == 11 && emitted.rank == 11;
    let mut o = outcome(ok, parts.join("; "));
    o.supplementary.push(format!(
        "corrected ⊢-family reading spans the Koszul dual on every table: {corrected_ok}"
    ));
    o
}

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("ETS builtins", Duration::from_secs(1), criterion1),
        ("enumeration counts", Duration::from_secs(5), criterion2),
        ("free algebra axioms", Duration::from_secs(120), criterion3),
        (
            "ETS equivalence probe",
            Duration::from_secs(600),
            criterion4,
        ),
        ("typed words", Duration::from_secs(60), criterion5),
        ("universal morphism", Duration::from_secs(30), criterion6),
        ("Rota-Baxter", Duration::from_secs(10), criterion7),
        ("tensor collapse", Duration::from_secs(120), criterion8),
        ("operad", Duration::from_secs(120), criterion9),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let pass = o.pass && took < *limit;
        failed += usize::from(!pass);
        println!(
            "criterion {} ({name}): {} in {:.2}s (limit {}s): {}",
            i + 1,
            verdict(pass),
            took.as_secs_f64(),
            limit.as_secs(),
            o.detail
        );
        for s in o.supplementary {
            println!("  supplementary: {s}");
        }
    }
    println!("{}/9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
