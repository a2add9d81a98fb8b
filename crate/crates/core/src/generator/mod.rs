//! Search for permutation-free, phonetic-free tables.
//!
//! [`build_model`] lists the construction constraints as ground constraints,
//! [`solve`] searches for a table satisfying them, and [`export_model`]
//! writes the same model as a 0/1 linear program for external solvers.

mod lp;
mod model;
mod search;

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use rand::Rng;

use crate::error_model::PhoneticRange;
use crate::table::CheckTable;

pub use lp::export_model;
pub use model::{
    build_model, check_assignment, AssignmentCheck, Constraint, ConstraintModel, Family,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    /// Decision budget; `0` fails immediately.
    pub max_steps: u64,
    /// Restart after this many failed decisions.
    pub restart_interval: u64,
    pub time_budget: Duration,
    pub phonetic_range: PhoneticRange,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            max_steps: 200_000_000,
            restart_interval: 5_000,
            time_budget: Duration::from_secs(600),
            phonetic_range: PhoneticRange::Full,
        }
    }
}

/// Search ended without a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotFound {
    /// Decisions taken.
    pub steps: u64,
    /// Most cells fixed at once.
    pub deepest: usize,
    pub restarts: u64,
    /// The whole space was refuted, rather than the budget running out.
    pub exhausted: bool,
    pub elapsed: Duration,
}

impl fmt::Display for NotFound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let why = if self.exhausted {
            "search space exhausted (no table exists)"
        } else {
            "budget exhausted"
        };
        write!(
            f,
            "not found: {why}; steps={} deepest={} restarts={} elapsed={:.3}s",
            self.steps,
            self.deepest,
            self.restarts,
            self.elapsed.as_secs_f64()
        )
    }
}

impl std::error::Error for NotFound {}

/// Single-threaded search; the result is a function of `(model, config)`
/// unless the time budget cuts it short.
pub fn solve(model: &ConstraintModel, config: &SearchConfig) -> Result<CheckTable, NotFound> {
    search::run(model, config, None)
}

/// Runs one search per seed on separate threads and returns the first table
/// found, together with its seed. Each seed's result matches [`solve`].
pub fn solve_parallel(
    model: &ConstraintModel,
    config: &SearchConfig,
    seeds: &[u64],
) -> Result<(u64, CheckTable), NotFound> {
    let cancel = AtomicBool::new(false);
    let winner: Mutex<Option<(u64, CheckTable)>> = Mutex::new(None);
    let failures: Mutex<Vec<NotFound>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for &seed in seeds {
            let cfg = SearchConfig {
                seed,
                ..config.clone()
            };
            let (cancel, winner, failures) = (&cancel, &winner, &failures);
            scope.spawn(move || match search::run(model, &cfg, Some(cancel)) {
                Ok(table) => {
                    let mut slot = winner.lock().expect("winner lock");
                    if slot.is_none() {
                        *slot = Some((seed, table));
                        cancel.store(true, Ordering::Relaxed);
                    }
                }
                Err(nf) => failures.lock().expect("failure lock").push(nf),
            });
        }
    });
    if let Some(found) = winner.into_inner().expect("winner lock") {
        return Ok(found);
    }
    let failures = failures.into_inner().expect("failure lock");
    Err(NotFound {
        steps: failures.iter().map(|f| f.steps).sum(),
        deepest: failures.iter().map(|f| f.deepest).max().unwrap_or(0),
        restarts: failures.iter().map(|f| f.restarts).sum(),
        exhausted: !failures.is_empty() && failures.iter().all(|f| f.exhausted),
        elapsed: failures.iter().map(|f| f.elapsed).max().unwrap_or_default(),
    })
}

/// A random latin square (no diagonal or subset requirements).
pub fn random_latin_square<R: Rng + ?Sized>(base: usize, rng: &mut R) -> CheckTable {
    let model = ConstraintModel::latin_only(base).expect("supported base");
    let config = SearchConfig {
        seed: rng.gen(),
        ..SearchConfig::default()
    };
    solve(&model, &config).expect("latin squares exist for every base")
}
