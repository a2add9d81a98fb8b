//! Backtracking search with forward checking over cell domains.
//!
//! Every ground constraint is compiled into binary conflicts between
//! candidate assignments `(r, c) = s` ("literals"). All-different rows and
//! columns additionally contribute hidden-single groups: a symbol missing
//! from a row must land in one of the cells that still allow it.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::model::{Constraint, ConstraintModel, Family};
use super::{NotFound, SearchConfig};
use crate::table::{CheckTable, Triple};

type Lit = u16;

struct Compiled {
    n: usize,
    initial: Vec<u16>,
    conflicts: Vec<Vec<Lit>>,
    /// Each group must contain exactly one chosen literal.
    groups: Vec<Vec<Lit>>,
}

impl Compiled {
    fn lit(&self, r: usize, c: usize, s: usize) -> Lit {
        ((r * self.n + c) * self.n + s) as Lit
    }

    fn triple_lit(&self, t: Triple) -> Option<Lit> {
        let n = self.n;
        let [r, s, c] = t.0.map(usize::from);
        (r < n && s < n && c < n).then(|| self.lit(r, c, s))
    }

    fn new(model: &ConstraintModel) -> Self {
        let n = model.base() as usize;
        let full = (1u16 << n) - 1;
        let mut this = Compiled {
            n,
            initial: vec![full; n * n],
            conflicts: vec![Vec::new(); n * n * n],
            groups: Vec::new(),
        };
        let add = |this: &mut Compiled, a: Lit, b: Lit| {
            this.conflicts[a as usize].push(b);
            this.conflicts[b as usize].push(a);
        };
        for constraint in model.constraints() {
            match *constraint {
                Constraint::RowAllDifferent { row } => {
                    let r = row as usize;
                    for s in 0..n {
                        let group: Vec<Lit> = (0..n).map(|c| this.lit(r, c, s)).collect();
                        for i in 0..n {
                            for j in i + 1..n {
                                add(&mut this, group[i], group[j]);
                            }
                        }
                        this.groups.push(group);
                    }
                }
                Constraint::ColumnAllDifferent { column } => {
                    let c = column as usize;
                    for s in 0..n {
                        let group: Vec<Lit> = (0..n).map(|r| this.lit(r, c, s)).collect();
                        for i in 0..n {
                            for j in i + 1..n {
                                add(&mut this, group[i], group[j]);
                            }
                        }
                        this.groups.push(group);
                    }
                }
                Constraint::DiagonalIdentity { index } => {
                    let i = index as usize;
                    this.initial[i * n + i] &= 1 << i;
                }
                Constraint::OffDiagonalThreeDistinct { row, column } => {
                    this.initial[row as usize * n + column as usize] &=
                        !((1 << row) | (1 << column));
                }
                Constraint::ThreeSubsetUnique { subset } => {
                    let lits: Vec<Lit> = Constraint::subset_placements(subset)
                        .iter()
                        .filter_map(|&t| this.triple_lit(t))
                        .collect();
                    for i in 0..lits.len() {
                        for j in i + 1..lits.len() {
                            add(&mut this, lits[i], lits[j]);
                        }
                    }
                }
                Constraint::Phonetic { pair, .. } => {
                    if let (Some(a), Some(b)) = (this.triple_lit(pair[0]), this.triple_lit(pair[1]))
                    {
                        if a != b {
                            add(&mut this, a, b);
                        }
                    }
                }
            }
        }
        for list in &mut this.conflicts {
            list.sort_unstable();
            list.dedup();
        }
        this
    }

    fn propagate(&self, state: &mut State, first: Lit) -> bool {
        let n = self.n;
        let mut queue = vec![first];
        loop {
            while let Some(lit) = queue.pop() {
                let cell = lit as usize / n;
                let s = lit as usize % n;
                if state.dom[cell] & (1 << s) == 0 {
                    return false;
                }
                if state.assigned[cell] {
                    continue;
                }
                state.dom[cell] = 1 << s;
                state.assigned[cell] = true;
                state.remaining -= 1;
                for &other in &self.conflicts[lit as usize] {
                    let oc = other as usize / n;
                    let bit = 1u16 << (other as usize % n);
                    if state.dom[oc] & bit == 0 {
                        continue;
                    }
                    if state.assigned[oc] {
                        return false;
                    }
                    state.dom[oc] &= !bit;
                    match state.dom[oc].count_ones() {
                        0 => return false,
                        1 => queue.push((oc * n + state.dom[oc].trailing_zeros() as usize) as Lit),
                        _ => {}
                    }
                }
            }
            // hidden singles
            for group in &self.groups {
                let mut open = None;
                let mut count = 0;
                let mut placed = false;
                for &lit in group {
                    let cell = lit as usize / n;
                    if state.dom[cell] & (1 << (lit as usize % n)) != 0 {
                        if state.assigned[cell] {
                            placed = true;
                            break;
                        }
                        count += 1;
                        open = Some(lit);
                    }
                }
                if placed {
                    continue;
                }
                match count {
                    0 => return false,
                    1 => queue.push(open.expect("counted")),
                    _ => {}
                }
            }
            if queue.is_empty() {
                return true;
            }
        }
    }
}

#[derive(Clone)]
struct State {
    dom: Vec<u16>,
    assigned: Vec<bool>,
    remaining: usize,
}

struct Limits<'a> {
    max_steps: u64,
    deadline: Instant,
    cancel: Option<&'a AtomicBool>,
}

enum Outcome {
    Solved(State),
    Failed,
    Restart,
    OutOfBudget,
}

struct Search<'a> {
    model: &'a Compiled,
    rng: ChaCha8Rng,
    limits: Limits<'a>,
    restart_interval: u64,
    steps: u64,
    failures_since_restart: u64,
    restarts: u64,
    deepest: usize,
}

impl Search<'_> {
    fn out_of_budget(&self) -> bool {
        if self.steps >= self.limits.max_steps {
            return true;
        }
        if self.steps.is_multiple_of(256) {
            if Instant::now() >= self.limits.deadline {
                return true;
            }
            if let Some(flag) = self.limits.cancel {
                return flag.load(Ordering::Relaxed);
            }
        }
        false
    }

    fn choose_cell(&self, state: &State) -> Option<usize> {
        (0..state.dom.len())
            .filter(|&c| !state.assigned[c])
            .min_by_key(|&c| (state.dom[c].count_ones(), c))
    }

    fn descend(&mut self, state: State) -> Outcome {
        self.deepest = self
            .deepest
            .max(self.model.n * self.model.n - state.remaining);
        let Some(cell) = self.choose_cell(&state) else {
            return Outcome::Solved(state);
        };
        let n = self.model.n;
        let mut values: Vec<usize> = (0..n)
            .filter(|&s| state.dom[cell] & (1 << s) != 0)
            .collect();
        values.shuffle(&mut self.rng);
        for s in values {
            if self.out_of_budget() {
                return Outcome::OutOfBudget;
            }
            self.steps += 1;
            let mut child = state.clone();
            if self.model.propagate(&mut child, (cell * n + s) as Lit) {
                match self.descend(child) {
                    Outcome::Failed => {}
                    other => return other,
                }
            }
            self.failures_since_restart += 1;
            if self.failures_since_restart >= self.restart_interval {
                return Outcome::Restart;
            }
        }
        Outcome::Failed
    }
}

fn initial_state(model: &Compiled) -> Option<State> {
    let n = model.n;
    let mut state = State {
        dom: model.initial.clone(),
        assigned: vec![false; n * n],
        remaining: n * n,
    };
    for cell in 0..n * n {
        if state.assigned[cell] {
            continue;
        }
        match state.dom[cell].count_ones() {
            0 => return None,
            1 => {
                let lit = (cell * n + state.dom[cell].trailing_zeros() as usize) as Lit;
                if !model.propagate(&mut state, lit) {
                    return None;
                }
            }
            _ => {}
        }
    }
    Some(state)
}

/// Pigeonhole bound: off-diagonal cells each consume a distinct 3-subset.
fn trivially_infeasible(model: &ConstraintModel) -> bool {
    let n = model.base() as usize;
    model.has(Family::OffDiagonalThreeDistinct)
        && model.count(Family::ThreeSubsetUnique) < n * (n - 1)
}

pub(super) fn run(
    model: &ConstraintModel,
    config: &SearchConfig,
    cancel: Option<&AtomicBool>,
) -> Result<CheckTable, NotFound> {
    let started = Instant::now();
    let compiled = Compiled::new(model);
    let n = compiled.n;
    let not_found = |steps, deepest, restarts, exhausted| NotFound {
        steps,
        deepest,
        restarts,
        exhausted,
        elapsed: started.elapsed(),
    };
    if trivially_infeasible(model) {
        return Err(not_found(0, 0, 0, true));
    }
    let Some(root) = initial_state(&compiled) else {
        return Err(not_found(0, 0, 0, true));
    };

    let mut search = Search {
        model: &compiled,
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        limits: Limits {
            max_steps: config.max_steps,
            deadline: started + config.time_budget,
            cancel,
        },
        restart_interval: config.restart_interval.max(1),
        steps: 0,
        failures_since_restart: 0,
        restarts: 0,
        deepest: n * n - root.remaining,
    };
    loop {
        match search.descend(root.clone()) {
            Outcome::Solved(state) => {
                let cells = state.dom.iter().map(|d| d.trailing_zeros() as u8).collect();
                return Ok(CheckTable::new(n, cells).expect("solver output is in range"));
            }
            Outcome::Failed => {
                return Err(not_found(
                    search.steps,
                    search.deepest,
                    search.restarts,
                    true,
                ))
            }
            Outcome::OutOfBudget => {
                return Err(not_found(
                    search.steps,
                    search.deepest,
                    search.restarts,
                    false,
                ))
            }
            Outcome::Restart => {
                search.restarts += 1;
                search.failures_since_restart = 0;
            }
        }
    }
}
