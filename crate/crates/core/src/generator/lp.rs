//! CPLEX LP text export with binary indicators `x_r_c_s` (`cell(r, c) = s`).

use std::fmt::Write;

use super::model::{Constraint, ConstraintModel};
use crate::table::Triple;

fn var(t: Triple) -> String {
    format!("x_{}_{}_{}", t.r(), t.c(), t.s())
}

fn cell_var(r: u8, c: u8, s: u8) -> String {
    format!("x_{r}_{c}_{s}")
}

fn row(out: &mut String, name: &str, terms: &[String], rel: &str, rhs: u8) {
    writeln!(out, " {name}: {} {rel} {rhs}", terms.join(" + ")).unwrap();
}

/// Emits the model as a feasibility MILP. Every cell gets exactly one symbol;
/// each constraint family is linearised over the indicators.
pub fn export_model(model: &ConstraintModel) -> String {
    let n = model.base();
    let mut out = String::new();
    writeln!(out, "\\ check table construction model, base {n}").unwrap();
    writeln!(out, "\\ phonetic range: {}", model.phonetic_range()).unwrap();
    writeln!(
        out,
        "\\ variables: {} binary indicators x_r_c_s (cell(r,c) = s)",
        u32::from(n).pow(3)
    )
    .unwrap();
    for (family, count) in model.family_counts() {
        writeln!(out, "\\ {family}: {count}").unwrap();
    }
    out.push_str("Minimize\n obj: 0 x_0_0_0\nSubject To\n");

    for r in 0..n {
        for c in 0..n {
            let terms: Vec<String> = (0..n).map(|s| cell_var(r, c, s)).collect();
            row(&mut out, &format!("cell_{r}_{c}"), &terms, "=", 1);
        }
    }

    let mut phonetic_seq = 0usize;
    for constraint in model.constraints() {
        match *constraint {
            Constraint::RowAllDifferent { row: r } => {
                for s in 0..n {
                    let terms: Vec<String> = (0..n).map(|c| cell_var(r, c, s)).collect();
                    row(&mut out, &format!("row_{r}_sym_{s}"), &terms, "=", 1);
                }
            }
            Constraint::ColumnAllDifferent { column: c } => {
                for s in 0..n {
                    let terms: Vec<String> = (0..n).map(|r| cell_var(r, c, s)).collect();
                    row(&mut out, &format!("col_{c}_sym_{s}"), &terms, "=", 1);
                }
            }
            Constraint::DiagonalIdentity { index: i } => {
                row(&mut out, &format!("diag_{i}"), &[cell_var(i, i, i)], "=", 1);
            }
            Constraint::OffDiagonalThreeDistinct { row: r, column: c } => {
                let terms = [cell_var(r, c, r), cell_var(r, c, c)];
                row(&mut out, &format!("offdiag_{r}_{c}"), &terms, "=", 0);
            }
            Constraint::ThreeSubsetUnique { subset } => {
                let terms: Vec<String> = Constraint::subset_placements(subset)
                    .iter()
                    .map(|&t| var(t))
                    .collect();
                let [a, b, c] = subset;
                row(&mut out, &format!("subset_{a}_{b}_{c}"), &terms, "<=", 1);
            }
            Constraint::Phonetic { role, pair } => {
                let terms = [var(pair[0]), var(pair[1])];
                let name = format!("phon_t{}_{phonetic_seq}", role.index());
                phonetic_seq += 1;
                row(&mut out, &name, &terms, "<=", 1);
            }
        }
    }

    out.push_str("Binary\n");
    for r in 0..n {
        for c in 0..n {
            let vars: Vec<String> = (0..n).map(|s| cell_var(r, c, s)).collect();
            writeln!(out, " {}", vars.join(" ")).unwrap();
        }
    }
    out.push_str("End\n");
    out
}
