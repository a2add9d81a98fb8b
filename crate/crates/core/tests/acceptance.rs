//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints its verdict; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use permfree_core::builtin;
use permfree_core::codec::{complete, words_containing, PartialWord};
use permfree_core::conjugacy::{conjugate_tables, pairwise_common, relabel, Relabeling};
use permfree_core::error_model::{
    detect_with, full_report, report_for, structural_check, FullReport,
};
use permfree_core::generator::{
    build_model, check_assignment, random_latin_square, solve, solve_parallel, Family, SearchConfig,
};
use permfree_core::oracle::brute_undetected_with;
use permfree_core::triples::{combination_index, to_triples};
use permfree_core::{CheckTable, ErrorClass, PhoneticRange, Position, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const PINNED: &str = include_str!("fixtures/pinned_counts.json");

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn pinned(table: &str, key: &str) -> usize {
    let v: Value = serde_json::from_str(PINNED).expect("fixture parses");
    v[table][key].as_u64().expect("pinned count") as usize
}

/// Every class count, in both phonetic ranges, against the frozen oracle counts.
fn matches_pinned(name: &str, table: &CheckTable) -> Result<(), String> {
    for range in [PhoneticRange::Full, PhoneticRange::Literal] {
        let report = report_for(table, &ErrorClass::ALL, range);
        for r in &report.classes {
            let phonetic = matches!(
                r.class,
                ErrorClass::PhoneticRight | ErrorClass::PhoneticLeft
            );
            let key = match range {
                PhoneticRange::Literal if phonetic => format!("{}@literal", r.class.name()),
                PhoneticRange::Literal => continue,
                PhoneticRange::Full => r.class.name().to_string(),
            };
            let want = pinned(name, &key);
            ensure!(
                r.pair_count == want,
                "{name} {key}: {} != pinned {want}",
                r.pair_count
            );
        }
    }
    Ok(())
}

/// The headline suite: every class but triple errors is undetected-free,
/// and triple errors do slip through.
fn headline(table: &CheckTable) -> Result<(), String> {
    let report = full_report(table);
    for r in &report.classes {
        if r.class == ErrorClass::TripleError {
            ensure!(
                !r.is_clean(),
                "{}: triple errors all detected",
                label(table)
            );
        } else {
            ensure!(
                r.is_clean(),
                "{}: {} has {} undetected, first {:?}",
                label(table),
                r.class,
                r.pair_count,
                r.undetected.first()
            );
        }
    }
    Ok(())
}

fn label(table: &CheckTable) -> &str {
    table.name().unwrap_or("table")
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn table1() -> Outcome {
    let t = builtin::verhoeff_regular();
    let report = full_report(&t);
    for class in [
        ErrorClass::Single,
        ErrorClass::AdjacentTransposition,
        ErrorClass::Twin,
        ErrorClass::JumpTwin,
        ErrorClass::JumpTransposition,
    ] {
        ensure!(report.get(class).is_clean(), "{class} not clean");
    }
    let right = report.get(ErrorClass::PhoneticRight);
    let left = report.get(ErrorClass::PhoneticLeft);
    let cyclic = report.get(ErrorClass::Cyclic);
    ensure!(right.contains(w("302"), w("132")), "(302)<->(132) missing");
    ensure!(left.contains(w("230"), w("213")), "(230)<->(213) missing");
    ensure!(!cyclic.is_clean(), "cyclic errors all detected");
    matches_pinned(builtin::VERHOEFF_REGULAR, &t)?;
    Ok(format!(
        "phonetic right/left {}/{}, cyclic {}",
        right.pair_count, left.pair_count, cyclic.pair_count
    ))
}

fn table2() -> Outcome {
    let t = builtin::verhoeff_irregular();
    let report = full_report(&t);
    ensure!(
        report.get(ErrorClass::PhoneticRight).is_clean(),
        "phonetic-right"
    );
    ensure!(
        report.get(ErrorClass::PhoneticLeft).is_clean(),
        "phonetic-left"
    );
    let cyclic = report.get(ErrorClass::Cyclic).pair_count;
    ensure!(
        cyclic == 16,
        "cyclic undetected {cyclic}, expected 16 unordered pairs"
    );
    matches_pinned(builtin::VERHOEFF_IRREGULAR, &t)?;
    Ok(format!("cyclic {cyclic} unordered pairs"))
}

fn table3() -> Outcome {
    let t = builtin::dunning_t3();
    headline(&t)?;
    let literal = report_for(
        &t,
        &[ErrorClass::PhoneticRight, ErrorClass::PhoneticLeft],
        PhoneticRange::Literal,
    );
    ensure!(
        literal.classes.iter().all(|r| r.is_clean()),
        "literal phonetic"
    );
    matches_pinned(builtin::DUNNING_T3, &t)?;
    let triple = full_report(&t).get(ErrorClass::TripleError).pair_count;
    Ok(format!(
        "9 classes clean, {triple} undetected triple errors"
    ))
}

fn triple_system() -> Outcome {
    let sys = to_triples(&builtin::dunning_t3());
    let n: Vec<Word> = sys.non_diagonal().collect();
    ensure!(n.len() == 90, "|N| = {}", n.len());
    ensure!(sys.degenerate().count() == 0, "degenerate triples present");
    let idx = combination_index(&sys);
    ensure!(idx.len() == 120, "{} subsets", idx.len());
    ensure!(idx.is_unique(), "a 3-subset is realised twice");
    ensure!(idx.occupied() == 90, "{} subsets realised", idx.occupied());
    Ok("|N| = 90, 90 of 120 subsets, each once".into())
}

fn conjugacy() -> Outcome {
    let t = builtin::dunning_t3().with_name("dunning-t3");
    let conjugates = conjugate_tables(&t).map_err(|e| e.to_string())?;
    ensure!(conjugates.len() == 6, "{} conjugates", conjugates.len());
    for c in &conjugates {
        headline(c)?;
    }
    let diagonal: BTreeSet<Word> = (0..10).map(|i| Word::new(i, i, i)).collect();
    let systems: Vec<_> = conjugates.iter().map(to_triples).collect();
    let mut pairs = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            let common = pairwise_common(&systems[i], &systems[j]).map_err(|e| e.to_string())?;
            ensure!(
                common == diagonal,
                "t{i} and t{j} share {} triples",
                common.len()
            );
            pairs += 1;
        }
    }
    Ok(format!(
        "6 conjugates pass, {pairs} pairs meet in the diagonal"
    ))
}

fn relabelings() -> Outcome {
    let t = builtin::dunning_t3();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut swapped = 0;
    for k in 0..1000 {
        let p = Relabeling::random(10, &mut rng);
        if p.apply(0) == 1 {
            swapped += 1;
        }
        let image = relabel(&t, &p)
            .map_err(|e| e.to_string())?
            .with_name(format!("relabel#{k}"));
        headline(&image).map_err(|e| format!("{e} (images {:?})", p.images()))?;
    }
    Ok(format!("1000 relabelings pass ({swapped} swap 0 and 1)"))
}

fn oracle_equivalence() -> Outcome {
    let mut tables = builtin::all();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for k in 0..20 {
        tables.push(random_latin_square(10, &mut rng).with_name(format!("latin#{k}")));
    }
    let mut checks = 0;
    for t in &tables {
        for class in ErrorClass::ALL {
            for range in [PhoneticRange::Full, PhoneticRange::Literal] {
                let fast = detect_with(t, class, range).undetected;
                let brute = brute_undetected_with(t, class, range);
                ensure!(
                    fast == brute,
                    "{} {class} {range}: detect != brute force",
                    label(t)
                );
                checks += 1;
            }
            if class.has_structural_shortcut() {
                let verdict = structural_check(t, class).map_err(|e| e.to_string())?;
                let brute_clean = brute_undetected_with(t, class, PhoneticRange::Full).is_empty();
                ensure!(
                    verdict.passed == brute_clean,
                    "{} {class}: structural {} vs brute {}",
                    label(t),
                    verdict.passed,
                    brute_clean
                );
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{} tables, {checks} comparisons agree",
        tables.len()
    ))
}

fn codec() -> Outcome {
    let t = builtin::dunning_t3();
    let pairs = [
        (Position::First, Position::Second),
        (Position::First, Position::Third),
        (Position::Second, Position::Third),
    ];
    let mut completed = 0;
    for word in t.words() {
        for (a, b) in pairs {
            let partial =
                PartialWord::new((a, word.at(a)), (b, word.at(b))).map_err(|e| e.to_string())?;
            let got = complete(&t, &partial).map_err(|e| e.to_string())?;
            ensure!(got == word, "completing {word} from {a:?},{b:?} gave {got}");
            completed += 1;
        }
    }
    let mut multisets = 0;
    for word in t.words() {
        let found = words_containing(&t, &word.digits());
        ensure!(found == [word], "digits of {word} match {found:?}");
        multisets += 1;
    }
    Ok(format!(
        "{completed} completions, {multisets} multisets unique"
    ))
}

fn generation() -> Outcome {
    let started = Instant::now();
    let config = SearchConfig {
        time_budget: Duration::from_secs(600),
        phonetic_range: PhoneticRange::Full,
        ..SearchConfig::default()
    };
    let model = build_model(10, &config).map_err(|e| e.to_string())?;
    let seeds: Vec<u64> = (1..=8).collect();
    let (seed, table) = solve_parallel(&model, &config, &seeds)
        .map_err(|nf| format!("full phonetic range: {nf}"))?;
    let table = table.with_name(format!("generated-seed-{seed}"));
    ensure!(
        check_assignment(&model, &table)
            .map_err(|e| e.to_string())?
            .satisfied(),
        "generated table violates the model"
    );
    headline(&table)?;

    ensure!(
        check_assignment(&model, &builtin::dunning_t3())
            .map_err(|e| e.to_string())?
            .satisfied(),
        "dunning-t3 violates the model"
    );
    let regular =
        check_assignment(&model, &builtin::verhoeff_regular()).map_err(|e| e.to_string())?;
    ensure!(!regular.satisfied(), "verhoeff-regular satisfies the model");
    let phonetic_hit = regular.violations.iter().any(|c| {
        c.family() == Family::Phonetic(permfree_core::conjugacy::RolePermutation::IDENTITY)
            && c.to_string().contains("302")
    });
    ensure!(
        phonetic_hit,
        "no phonetic witness citing 302 for verhoeff-regular"
    );
    let irregular =
        check_assignment(&model, &builtin::verhoeff_irregular()).map_err(|e| e.to_string())?;
    ensure!(
        irregular.violates(Family::ThreeSubsetUnique),
        "verhoeff-irregular: no repeated 3-subset witness"
    );
    Ok(format!(
        "seed {seed} solved in {:.2}s (full range); verhoeff witnesses: {} / {}",
        started.elapsed().as_secs_f64(),
        regular.violations[0],
        irregular.violations[0]
    ))
}

fn determinism() -> Outcome {
    for t in builtin::all() {
        let a: FullReport = full_report(&t);
        ensure!(
            a.to_json() == full_report(&t).to_json(),
            "{} report differs",
            label(&t)
        );
    }
    let config = SearchConfig {
        seed: 42,
        ..SearchConfig::default()
    };
    let model = build_model(10, &config).map_err(|e| e.to_string())?;
    let a = solve(&model, &config).map_err(|e| e.to_string())?;
    let b = solve(&model, &config).map_err(|e| e.to_string())?;
    ensure!(
        a.to_canonical_string() == b.to_canonical_string(),
        "seed 42 produced two different tables"
    );
    Ok("reports and the seed-42 table repeat byte for byte".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 verhoeff-regular reproduction", table1),
        ("2 verhoeff-irregular reproduction", table2),
        ("3 dunning-t3 detects all but triple errors", table3),
        ("4 triple-system structure", triple_system),
        ("5 conjugates pass and meet in the diagonal", conjugacy),
        ("6 1000 admissible relabelings", relabelings),
        ("7 oracle equivalence", oracle_equivalence),
        ("8 codec round trip", codec),
        ("9 generation", generation),
        ("10 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{secs:.2}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
