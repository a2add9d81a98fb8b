use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context};
use permfree_core::builtin::builtin_table;
use permfree_core::codec::{self, CategoryRegistry, Issued, PartialWord};
use permfree_core::conjugacy::{self, Relabeling};
use permfree_core::error_model::{report_for, FullReport};
use permfree_core::generator::{self, SearchConfig};
use permfree_core::profile::structural_profile;
use permfree_core::triples::to_triples;
use permfree_core::{parse_table, CheckTable, Digit, ErrorClass, PhoneticRange, Position};

use crate::{Format, TableSource};

pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

const DETECT_FAILURE: u8 = 1;
const INPUT_ERROR: u8 = 2;
const SEARCH_EXHAUSTED: u8 = 3;

fn input(error: anyhow::Error) -> Failure {
    Failure {
        code: INPUT_ERROR,
        error,
    }
}

trait InputContext<T> {
    fn or_input(self) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> InputContext<T> for Result<T, E> {
    fn or_input(self) -> Result<T, Failure> {
        self.map_err(|e| input(e.into()))
    }
}

pub struct Status(u8);

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s.0)
    }
}

macro_rules! emitln {
    ($($arg:tt)*) => {
        emit(&format!("{}\n", format_args!($($arg)*)))?
    };
}

const OK: Status = Status(0);

type CmdResult = Result<Status, Failure>;

fn load_file(path: &Path) -> anyhow::Result<CheckTable> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let table = parse_table(&text).with_context(|| format!("cannot parse {}", path.display()))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "table".to_string());
    Ok(table.with_name(name))
}

fn load(source: &TableSource) -> Result<CheckTable, Failure> {
    match (&source.table, &source.builtin) {
        (_, Some(name)) => builtin_table(name).or_input(),
        (Some(path), None) => load_file(path).or_input(),
        (None, None) => Err(input(anyhow!("give a table file or --builtin NAME"))),
    }
}

/// Splits `[TABLE] R C` style positionals.
fn load_with_coords(
    builtin: Option<&str>,
    args: &[String],
) -> Result<(CheckTable, Digit, Digit), Failure> {
    let (table, coords) = match (builtin, args) {
        (Some(name), [r, c]) => (builtin_table(name).or_input()?, [r, c]),
        (None, [path, r, c]) => (load_file(Path::new(path)).or_input()?, [r, c]),
        (Some(_), _) => return Err(input(anyhow!("expected R C after --builtin"))),
        (None, _) => return Err(input(anyhow!("expected TABLE R C"))),
    };
    let parse = |s: &String| -> Result<Digit, Failure> {
        s.parse::<Digit>()
            .with_context(|| format!("not a digit: {s:?}"))
            .or_input()
    };
    Ok((table, parse(coords[0])?, parse(coords[1])?))
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(input(e.into())),
        _ => Ok(()),
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))
            .or_input(),
        None => emit(text),
    }
}

fn parse_classes(list: &str) -> Result<Vec<ErrorClass>, Failure> {
    if list.trim() == "all" {
        return Ok(ErrorClass::ALL.to_vec());
    }
    list.split(',')
        .map(|s| s.parse::<ErrorClass>().map_err(|e| input(anyhow!(e))))
        .collect()
}

const SHOWN_PAIRS: usize = 20;

fn render_text(report: &FullReport, all_pairs: bool) -> String {
    let mut out = String::new();
    writeln!(out, "table: {} (base {})", report.table_name, report.base).unwrap();
    for r in &report.classes {
        let verdict = if r.is_clean() { "pass" } else { "FAIL" };
        let structural = match r.structural_equivalent_passed {
            Some(true) => "structural: pass",
            Some(false) => "structural: fail",
            None => "structural: n/a",
        };
        writeln!(
            out,
            "{:<24}{verdict}  {:>6} undetected  [{structural}]",
            r.class.name(),
            r.pair_count
        )
        .unwrap();
        let limit = if all_pairs { usize::MAX } else { SHOWN_PAIRS };
        for (w, v) in r.undetected.iter().take(limit) {
            writeln!(out, "    {w} <-> {v}").unwrap();
        }
        if r.undetected.len() > limit {
            writeln!(out, "    ... and {} more", r.undetected.len() - limit).unwrap();
        }
    }
    out
}

pub fn verify(
    source: &TableSource,
    classes: &str,
    format: Format,
    range: PhoneticRange,
    fail_on_triple: bool,
    all_pairs: bool,
) -> CmdResult {
    let table = load(source)?;
    let classes = parse_classes(classes)?;
    let report = report_for(&table, &classes, range);
    match format {
        Format::Json => emit(&report.to_json())?,
        Format::Text => emit(&render_text(&report, all_pairs))?,
    }
    let failed = report
        .classes
        .iter()
        .any(|r| !r.is_clean() && (fail_on_triple || r.class != ErrorClass::TripleError));
    Ok(if failed { Status(DETECT_FAILURE) } else { OK })
}

pub fn report(source: &TableSource, format: Format, range: PhoneticRange) -> CmdResult {
    let table = load(source)?;
    let report = report_for(&table, &ErrorClass::ALL, range);
    match format {
        Format::Json => emit(&report.to_json())?,
        Format::Text => emit(&render_text(&report, false))?,
    }
    Ok(OK)
}

pub fn profile(source: &TableSource) -> CmdResult {
    let table = load(source)?;
    let json = serde_json::to_string_pretty(&structural_profile(&table)).expect("serialisable");
    emitln!("{json}");
    Ok(OK)
}

pub struct GenerateArgs {
    pub base: usize,
    pub seed: u64,
    pub time_budget: u64,
    pub max_steps: Option<u64>,
    pub restart_interval: Option<u64>,
    pub phonetic_range: PhoneticRange,
    pub threads: u64,
    pub export_model: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

pub fn generate(args: GenerateArgs) -> CmdResult {
    let defaults = SearchConfig::default();
    let config = SearchConfig {
        seed: args.seed,
        max_steps: args.max_steps.unwrap_or(defaults.max_steps),
        restart_interval: args.restart_interval.unwrap_or(defaults.restart_interval),
        time_budget: Duration::from_secs(args.time_budget),
        phonetic_range: args.phonetic_range,
    };
    let model = generator::build_model(args.base, &config).or_input()?;
    if let Some(path) = &args.export_model {
        fs::write(path, generator::export_model(&model))
            .with_context(|| format!("cannot write {}", path.display()))
            .or_input()?;
    }

    let started = Instant::now();
    let outcome = if args.threads > 1 {
        let seeds: Vec<u64> = (0..args.threads)
            .map(|k| args.seed.wrapping_add(k))
            .collect();
        generator::solve_parallel(&model, &config, &seeds)
    } else {
        generator::solve(&model, &config).map(|t| (args.seed, t))
    };
    let (seed, table) = match outcome {
        Ok(found) => found,
        Err(nf) => {
            return Err(Failure {
                code: SEARCH_EXHAUSTED,
                error: anyhow!("base {}: {nf}", args.base),
            })
        }
    };

    let check = generator::check_assignment(&model, &table).or_input()?;
    let suite = report_for(&table, &ErrorClass::ALL, args.phonetic_range);
    if !check.satisfied() || !suite.passes() {
        return Err(Failure {
            code: DETECT_FAILURE,
            error: anyhow!("generated table failed verification; not written"),
        });
    }
    eprintln!(
        "found base-{} table with seed {seed} in {:.3}s ({} phonetic range); verified",
        args.base,
        started.elapsed().as_secs_f64(),
        args.phonetic_range
    );
    write_output(args.out.as_deref(), &table.to_canonical_string())?;
    Ok(OK)
}

pub fn conjugates(
    source: &TableSource,
    check_disjoint: bool,
    out_prefix: Option<&str>,
) -> CmdResult {
    let table = load(source)?;
    let tables = conjugacy::conjugate_tables(&table).or_input()?;
    let systems: Vec<_> = tables.iter().map(to_triples).collect();
    let diagonal: std::collections::BTreeSet<_> = to_triples(&table).diagonal().collect();

    for (k, (t, role)) in tables
        .iter()
        .zip(conjugacy::RolePermutation::ALL)
        .enumerate()
    {
        let path = out_prefix.map(|p| format!("{p}_t{k}.tbl"));
        if let Some(path) = &path {
            fs::write(path, t.to_canonical_string())
                .with_context(|| format!("cannot write {path}"))
                .or_input()?;
        }
        emitln!("t{k} {role} {}", path.as_deref().unwrap_or("-"));
    }

    if check_disjoint {
        let mut ok = true;
        for i in 0..systems.len() {
            for j in i + 1..systems.len() {
                let common = conjugacy::pairwise_common(&systems[i], &systems[j]).or_input()?;
                let extra: Vec<String> = common
                    .difference(&diagonal)
                    .map(|w| w.to_string())
                    .collect();
                if common != diagonal {
                    ok = false;
                    emitln!(
                        "t{i} ∩ t{j}: {} common triples, beyond the diagonal: {}",
                        common.len(),
                        extra.join(" ")
                    );
                }
            }
        }
        if !ok {
            return Ok(Status(DETECT_FAILURE));
        }
        emitln!(
            "disjoint: all 15 pairs share exactly the {} diagonal triples",
            diagonal.len()
        );
    }
    Ok(OK)
}

fn parse_relabeling(p01: &str, p29: &str, base: u8) -> anyhow::Result<Relabeling> {
    let swap = match p01.trim() {
        "identity" | "01" | "01|01" => false,
        "10" | "01|10" | "swap" => true,
        other => bail!("bad --p01 {other:?} (expected identity, 01 or 10)"),
    };
    let high: Vec<Digit> = match p29.trim() {
        "identity" => (2..base).collect(),
        digits => digits
            .chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as Digit)
                    .ok_or_else(|| anyhow!("bad digit {ch:?} in --p29"))
            })
            .collect::<anyhow::Result<_>>()?,
    };
    Ok(Relabeling::from_parts(swap, &high, base)?)
}

pub fn relabel(source: &TableSource, p01: &str, p29: &str, out: Option<&Path>) -> CmdResult {
    let table = load(source)?;
    let p = parse_relabeling(p01, p29, table.base()).or_input()?;
    let relabeled = conjugacy::relabel(&table, &p).or_input()?;
    write_output(out, &relabeled.to_canonical_string())?;
    Ok(OK)
}

pub fn encode(builtin: Option<&str>, args: &[String]) -> CmdResult {
    let (table, r, c) = load_with_coords(builtin, args)?;
    let w = codec::encode(&table, r, c).or_input()?;
    emitln!("{w}");
    Ok(OK)
}

pub fn complete(source: &TableSource, positions: [Option<u8>; 3]) -> CmdResult {
    let table = load(source)?;
    let known: Vec<(Position, Digit)> = positions
        .iter()
        .enumerate()
        .filter_map(|(i, d)| d.map(|d| (Position::ALL[i], d)))
        .collect();
    let [a, b] = known[..] else {
        return Err(input(anyhow!("give exactly two of --pos1, --pos2, --pos3")));
    };
    let partial = PartialWord::new(a, b).or_input()?;
    let w = codec::complete(&table, &partial).or_input()?;
    emitln!("{w}");
    Ok(OK)
}

pub fn containing(source: &TableSource, digits: &str) -> CmdResult {
    let table = load(source)?;
    let digits: Vec<Digit> = digits
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|ch| {
            ch.to_digit(10)
                .map(|d| d as Digit)
                .ok_or_else(|| input(anyhow!("bad digit {ch:?}")))
        })
        .collect::<Result<_, _>>()?;
    for w in codec::words_containing(&table, &digits) {
        emitln!("{w}");
    }
    Ok(OK)
}

pub fn issue(builtin: Option<&str>, log: &Path, category: usize, args: &[String]) -> CmdResult {
    let (table, r, c) = load_with_coords(builtin, args)?;
    let mut registry = CategoryRegistry::open(&table, log).or_input()?;
    match registry.issue(category, r, c).or_input()? {
        Issued::New(w) => emitln!("{w}"),
        Issued::Duplicate(w) => emitln!("{w} duplicate"),
    }
    Ok(OK)
}
