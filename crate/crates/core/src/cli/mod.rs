//! Command-line surface.

mod record;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::catalog::tables::{self, Format, OutputTable, TABLE_NUMBERS};
use crate::catalog::{Catalog, CatalogError};
use crate::chevalley::{self, ChevalleyError, JacobiPolicy};
use crate::classify::{
    self, construct_witness, enumerate_diagonal_pairs, ClassifyError, GradingRecord, WITNESS_ROWS,
};
use crate::grading::{split, verify_grading};
use crate::rootsys::{RootError, RootSystem, SimpleType};

pub use record::{GradingJson, KJson, PieceDims};

/// Seed for sampled Jacobi checks unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("unknown row `{row}`; available rows:\n  {}", rows.join("\n  "))]
    UnknownRow { row: String, rows: Vec<String> },
    #[error("no table {0}; available: 1, 3, 4, 5, 6")]
    UnknownTable(u8),
    #[error("{path}: {msg}")]
    BadExpected { path: PathBuf, msg: String },
    #[error("thread pool: {0}")]
    Pool(String),
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Parser, Debug)]
#[command(name = "z2z2", version, about = "Z2xZ2-gradings on exceptional Lie algebras and so8")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Algebras to process (repeatable); default is all of them.
    #[arg(long = "algebra", global = true)]
    pub algebras: Vec<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Directory for structure-constant cache files.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Directory holding `table{N}.md` references; the bundled copies otherwise.
    #[arg(long, global = true)]
    pub expected_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value = "md")]
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            algebras: Vec::new(),
            seed: DEFAULT_SEED,
            jobs: 0,
            cache_dir: None,
            expected_dir: None,
            format: Format::Markdown,
        }
    }
}

impl RunConfig {
    fn selected(&self, defaults: &[&'static str]) -> Vec<String> {
        if self.algebras.is_empty() {
            defaults.iter().map(|s| s.to_string()).collect()
        } else {
            self.algebras.iter().map(|s| s.to_lowercase()).collect()
        }
    }

    fn expected(&self, n: u8) -> Result<OutputTable, CliError> {
        match &self.expected_dir {
            None => tables::expected(n).ok_or(CliError::UnknownTable(n)),
            Some(dir) => {
                let path = dir.join(format!("table{n}.md"));
                let text = fs::read_to_string(&path).map_err(io(&path))?;
                OutputTable::parse_markdown(&text, tables::kinds(n)).map_err(|msg| CliError::BadExpected { path, msg })
            }
        }
    }

    fn preload(&self, names: &[String]) -> Result<(), CliError> {
        if let Some(dir) = &self.cache_dir {
            for n in names {
                chevalley::preload(classify::simple_type(n)?, dir)?;
            }
        }
        Ok(())
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Root count, highest root and extended diagram of a root system.
    Roots { ty: String },
    /// Regenerate a table and diff it against the reference.
    Tables { which: u8 },
    /// Replay the witness for a classification row, e.g. `e6:EI-II-IV`.
    Witness { row: String },
    /// Full pipeline with all checks; writes artifacts to `--out`.
    VerifyAll {
        #[arg(long, default_value = "artifacts")]
        out: PathBuf,
    },
}

/// Text for stdout, diagnostics for stderr, and the exit status.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn main() -> i32 {
    let cli = Cli::parse();
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => Output {
            stderr: format!("error: {e}\n"),
            code: 2,
            ..Default::default()
        },
    };
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.config.jobs)
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))?;
    pool.install(|| match &cli.command {
        Command::Roots { ty } => cmd_roots(ty),
        Command::Tables { which } => cmd_tables(*which, &cli.config),
        Command::Witness { row } => cmd_witness(row, &cli.config),
        Command::VerifyAll { out } => cmd_verify_all(&cli.config, out),
    })
}

pub fn cmd_roots(ty: &str) -> Result<Output, CliError> {
    let ty: SimpleType = ty.parse()?;
    let rs = RootSystem::new(ty);
    let mut s = String::new();
    let _ = writeln!(s, "type {ty}");
    let _ = writeln!(s, "roots {}", rs.num_roots());
    let _ = writeln!(s, "positive roots {}", rs.num_positive());
    let _ = writeln!(s, "highest root {:?}", rs.root(rs.highest_root()));
    let _ = writeln!(s, "extended diagram");
    s.push_str(&rs.extended_diagram().ascii());
    if !s.ends_with('\n') {
        s.push('\n');
    }
    Ok(Output {
        stdout: s,
        ..Default::default()
    })
}

fn generate(n: u8, cfg: &RunConfig) -> Result<(OutputTable, Vec<String>), CliError> {
    let cat = Catalog::builtin();
    let expected = cfg.expected(n)?;
    Ok(match n {
        1 => {
            let names = cfg.selected(&classify::EXCEPTIONAL);
            cfg.preload(&names)?;
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let bundle = classify::run(&refs)?;
            let diff = bundle.table1_diff(&expected);
            (bundle.table1(), diff)
        }
        3 | 4 | 5 | 6 => {
            let t = match n {
                3 => tables::table3(cat)?,
                4 => tables::table4(cat)?,
                5 => tables::table5(cat)?,
                _ => tables::table6(cat)?,
            };
            let diff = t.diff(&expected);
            (t, diff)
        }
        other => return Err(CliError::UnknownTable(other)),
    })
}

pub fn cmd_tables(which: u8, cfg: &RunConfig) -> Result<Output, CliError> {
    let (t, diff) = generate(which, cfg)?;
    let mut stderr = String::new();
    if diff.is_empty() {
        let _ = writeln!(stderr, "table {which}: {} rows, no differences", t.rows.len());
    } else {
        let _ = writeln!(stderr, "table {which}: {} differing rows", diff.len());
        for d in &diff {
            let _ = writeln!(stderr, "{d}");
        }
    }
    Ok(Output {
        stdout: t.render(cfg.format),
        stderr,
        code: i32::from(!diff.is_empty()),
    })
}

fn row_key(algebra: &str, type_name: &str) -> String {
    format!("{algebra}:{}", type_name.replace(' ', ""))
}

/// Row identifiers accepted by `witness`.
pub fn witness_rows() -> Vec<String> {
    let mut rows = Vec::new();
    for r in tables::expected(1).expect("bundled table 1").rows {
        let k = row_key(&r[1], &r[0]);
        if !rows.contains(&k) {
            rows.push(k);
        }
    }
    rows
}

/// Records for one classification row (two for a row realized with two `k`).
pub fn witness_records(row: &str) -> Result<Vec<GradingRecord>, CliError> {
    let wanted = row.replace(' ', "");
    let unknown = || CliError::UnknownRow {
        row: row.to_string(),
        rows: witness_rows(),
    };
    let (algebra, _) = wanted.split_once(':').ok_or_else(unknown)?;
    let algebra = algebra.to_lowercase();
    let wanted = format!("{algebra}:{}", &wanted[algebra.len() + 1..]);
    if !witness_rows().contains(&wanted) {
        return Err(unknown());
    }
    if let Some((g, t)) = WITNESS_ROWS.iter().find(|(g, t)| row_key(g, t) == wanted) {
        return Ok(vec![construct_witness(g, t)?]);
    }
    let diag = enumerate_diagonal_pairs(classify::simple_type(&algebra)?)?;
    Ok(diag
        .records
        .into_iter()
        .filter(|r| row_key(&r.algebra, &r.type_name) == wanted)
        .collect())
}

pub fn cmd_witness(row: &str, cfg: &RunConfig) -> Result<Output, CliError> {
    let records = witness_records(row)?;
    if let Some(r) = records.first() {
        cfg.preload(std::slice::from_ref(&r.algebra))?;
    }
    let mut s = String::new();
    let json: Vec<GradingJson> = records.iter().map(GradingJson::from).collect();
    if cfg.format == Format::Json {
        s = serde_json::to_string_pretty(&json)? + "\n";
    } else {
        for r in &records {
            let (sigma, tau) = r.witness.replay().map_err(ClassifyError::from)?;
            let g = split(&sigma, &tau).map_err(ClassifyError::from)?;
            let report = verify_grading(&g);
            let [k, a, b, c] = r.dims;
            let _ = writeln!(s, "{} in {}: k = {}", r.type_name, r.algebra, r.k.compact_name());
            let _ = writeln!(s, "witness: {}", r.witness.describe());
            let _ = writeln!(s, "pieces (1, sigma, tau, sigma tau): {:?}", r.dims);
            let _ = writeln!(s, "fixed dims (sigma, tau, sigma tau, k): ({}, {}, {}, {k})", k + a, k + b, k + c);
            let _ = writeln!(
                s,
                "dimension identity: {} + {} + {} = {} + 2*{k}",
                k + a,
                k + b,
                k + c,
                k + a + b + c
            );
            let _ = writeln!(
                s,
                "verification: {} bracket pairs, {} violations",
                report.bracket_pairs,
                report.violations.len()
            );
            let _ = writeln!(s, "identified by: {:?}", r.decided_by);
            let _ = writeln!(s);
        }
    }
    Ok(Output {
        stdout: s,
        ..Default::default()
    })
}

fn jacobi_check(names: &[String], seed: u64) -> Result<Vec<String>, CliError> {
    let mut lines = Vec::new();
    let mut types: Vec<SimpleType> = Vec::new();
    for n in names {
        types.push(if n == "so8" { "D4".parse()? } else { classify::simple_type(n)? });
    }
    for ty in types {
        let alg = chevalley::algebra(ty);
        let policy = match JacobiPolicy::default_for(alg.dim()) {
            JacobiPolicy::Sampled { triples, .. } => JacobiPolicy::Sampled { triples, seed },
            p => p,
        };
        let checked = alg.verify_jacobi(policy)?;
        lines.push(format!("jacobi {ty}: {checked} triples, all zero"));
    }
    Ok(lines)
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::write(&path, text).map_err(io(&path))
}

/// Runs every stage, writes artifacts, and reports PASS/FAIL per check.
pub fn cmd_verify_all(cfg: &RunConfig, out: &Path) -> Result<Output, CliError> {
    let names = cfg.selected(&["e6", "e7", "e8", "f4", "g2", "so8"]);
    let exceptional: Vec<String> = names.iter().filter(|n| *n != "so8").cloned().collect();
    cfg.preload(&exceptional)?;
    let mut s = String::new();
    let mut failed = false;
    let mut check = |s: &mut String, name: &str, ok: bool, detail: &[String]| {
        let _ = writeln!(s, "{} {name}", if ok { "PASS" } else { "FAIL" });
        for d in detail {
            let _ = writeln!(s, "  {d}");
        }
        failed |= !ok;
    };

    let jacobi = jacobi_check(&names, cfg.seed)?;
    check(&mut s, "jacobi", true, &jacobi);

    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let bundle = classify::run(&refs)?;
    fs::create_dir_all(out).map_err(io(out))?;

    let mut tables_out = Vec::new();
    if !exceptional.is_empty() {
        let diff = bundle.table1_diff(&cfg.expected(1)?);
        check(&mut s, "table 1", diff.is_empty(), &diff);
        tables_out.push((1, bundle.table1()));
    }
    let cat = Catalog::builtin();
    for n in TABLE_NUMBERS.into_iter().filter(|n| *n != 1) {
        let t = match n {
            3 => tables::table3(cat)?,
            4 => tables::table4(cat)?,
            5 => tables::table5(cat)?,
            _ => tables::table6(cat)?,
        };
        let diff = t.diff(&cfg.expected(n)?);
        check(&mut s, &format!("table {n}"), diff.is_empty(), &diff);
        tables_out.push((n, t));
    }
    for (n, t) in &tables_out {
        write(out, &format!("table{n}.md"), &t.to_markdown())?;
    }

    let excluded: Vec<String> = bundle
        .exclusions
        .iter()
        .map(|e| format!("{} {}", e.algebra, e.type_name))
        .collect();
    check(&mut s, &format!("exclusions ({} triples)", excluded.len()), true, &excluded);
    if let Some(so8) = &bundle.so8 {
        let mut detail: Vec<String> = so8.missing.iter().map(|l| format!("missing {l}")).collect();
        detail.extend(so8.outside.iter().map(|l| format!("outside {l}")));
        check(&mut s, "so8 families", so8.matches_families(), &detail);
        let oracle = crate::so8matrix::oracle_pairs();
        let bad: Vec<String> = oracle
            .iter()
            .filter(|p| {
                !p.is_valid()
                    || p.invariants() != crate::so8matrix::label_invariants(&p.expected)
                    || !so8.labels.contains(&p.expected.compact_name())
            })
            .map(|p| p.name.clone())
            .collect();
        check(&mut s, "so8 matrix oracle", bad.is_empty(), &bad);
        write(out, "so8.json", &(serde_json::to_string_pretty(so8)? + "\n"))?;
    }
    if let Some(a5) = &bundle.a5 {
        let ok = a5.distinguishes() && a5.weyl_invariant && a5.record_class == Some("double-prime");
        check(
            &mut s,
            "A5 classes in e7",
            ok,
            &[format!(
                "orthogonal subsystems {} / {}; u6+R record: {:?}",
                a5.prime_orthogonal, a5.double_prime_orthogonal, a5.record_class
            )],
        );
        write(out, "a5.json", &(serde_json::to_string_pretty(a5)? + "\n"))?;
    }

    let json: Vec<GradingJson> = bundle.records.iter().map(GradingJson::from).collect();
    write(out, "records.json", &(serde_json::to_string_pretty(&json)? + "\n"))?;
    write(out, "exclusions.json", &(serde_json::to_string_pretty(&bundle.exclusions)? + "\n"))?;
    write(out, "diagonal.json", &(serde_json::to_string_pretty(&bundle.diagonal)? + "\n"))?;
    let _ = writeln!(
        s,
        "{} records, {} exclusions, artifacts in {}",
        bundle.records.len(),
        bundle.exclusions.len(),
        out.display()
    );
    Ok(Output {
        stdout: s,
        code: i32::from(failed),
        ..Default::default()
    })
}
