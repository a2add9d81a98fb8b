//! Evaluates the exported LP text directly, independent of the model's own
//! satisfaction check.

use std::collections::BTreeMap;

use permfree_core::builtin;
use permfree_core::generator::{build_model, check_assignment, export_model, solve, SearchConfig};
use permfree_core::{CheckTable, PhoneticRange};

struct Row {
    name: String,
    vars: Vec<String>,
    rel: String,
    rhs: i64,
}

fn parse_rows(lp: &str) -> (Vec<Row>, Vec<String>) {
    let body = lp.split("Subject To\n").nth(1).unwrap();
    let (rows, binaries) = body.split_once("Binary\n").unwrap();
    let rows = rows
        .lines()
        .map(|line| {
            let (name, expr) = line.trim().split_once(": ").unwrap();
            let tokens: Vec<&str> = expr.split_whitespace().collect();
            let (rel, rhs) = (tokens[tokens.len() - 2], tokens[tokens.len() - 1]);
            let vars = tokens[..tokens.len() - 2]
                .iter()
                .filter(|t| **t != "+")
                .map(|t| t.to_string())
                .collect();
            Row {
                name: name.to_string(),
                vars,
                rel: rel.to_string(),
                rhs: rhs.parse().unwrap(),
            }
        })
        .collect();
    let binaries = binaries
        .split_whitespace()
        .take_while(|t| *t != "End")
        .map(str::to_string)
        .collect();
    (rows, binaries)
}

fn indicator(table: &CheckTable) -> BTreeMap<String, i64> {
    let n = table.base();
    let mut x = BTreeMap::new();
    for r in 0..n {
        for c in 0..n {
            for s in 0..n {
                x.insert(format!("x_{r}_{c}_{s}"), i64::from(table.cell(r, c) == s));
            }
        }
    }
    x
}

fn violated(lp: &str, table: &CheckTable) -> Vec<String> {
    let (rows, _) = parse_rows(lp);
    let x = indicator(table);
    rows.iter()
        .filter(|row| {
            let lhs: i64 = row.vars.iter().map(|v| x[v]).sum();
            match row.rel.as_str() {
                "=" => lhs != row.rhs,
                "<=" => lhs > row.rhs,
                other => panic!("unexpected relation {other}"),
            }
        })
        .map(|row| row.name.clone())
        .collect()
}

fn lp_text(range: PhoneticRange) -> String {
    let config = SearchConfig {
        phonetic_range: range,
        ..SearchConfig::default()
    };
    export_model(&build_model(10, &config).unwrap())
}

#[test]
fn declares_1000_binaries() {
    let lp = lp_text(PhoneticRange::Full);
    let (_, binaries) = parse_rows(&lp);
    assert_eq!(binaries.len(), 1000);
    assert!(lp.starts_with("\\ "));
    assert!(lp.ends_with("End\n"));
}

#[test]
fn row_counts() {
    let (rows, _) = parse_rows(&lp_text(PhoneticRange::Full));
    let count = |prefix: &str| rows.iter().filter(|r| r.name.starts_with(prefix)).count();
    assert_eq!(count("cell_"), 100);
    assert_eq!(count("row_"), 100);
    assert_eq!(count("col_"), 100);
    assert_eq!(count("diag_"), 10);
    assert_eq!(count("offdiag_"), 90);
    assert_eq!(count("subset_"), 120);
    assert_eq!(count("phon_"), 6 * 80);
    let (literal, _) = parse_rows(&lp_text(PhoneticRange::Literal));
    assert_eq!(
        literal
            .iter()
            .filter(|r| r.name.starts_with("phon_"))
            .count(),
        6 * 64
    );
}

#[test]
fn table3_is_a_feasible_point() {
    for range in [PhoneticRange::Full, PhoneticRange::Literal] {
        assert_eq!(
            violated(&lp_text(range), &builtin::dunning_t3()),
            Vec::<String>::new()
        );
    }
}

#[test]
fn verhoeff_tables_are_infeasible_points() {
    let lp = lp_text(PhoneticRange::Full);
    let regular = violated(&lp, &builtin::verhoeff_regular());
    assert!(regular.iter().any(|n| n.starts_with("phon_t0_")));
    assert!(regular.iter().any(|n| n.starts_with("subset_")));
    let irregular = violated(&lp, &builtin::verhoeff_irregular());
    assert!(irregular.iter().any(|n| n.starts_with("subset_")));
}

#[test]
fn lp_agrees_with_check_assignment_on_generated_tables() {
    let config = SearchConfig::default();
    let model = build_model(10, &config).unwrap();
    let lp = export_model(&model);
    for seed in 1..=3 {
        let table = solve(
            &model,
            &SearchConfig {
                seed,
                ..config.clone()
            },
        )
        .unwrap();
        assert!(check_assignment(&model, &table).unwrap().satisfied());
        assert!(violated(&lp, &table).is_empty(), "seed {seed}");
    }
}
