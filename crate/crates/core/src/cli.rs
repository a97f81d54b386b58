//! Command-line front end. `main` parses [`Cli`] and hands it to [`run`].

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::GStarAlgebra;
use crate::catalog::{self, CatalogParams, ENTRIES};
use crate::freepoly::{parse_generators, ElementNames};
use crate::group::FiniteAbelianGroup;
use crate::invariants::{
    cocharacter_table, codim_total, tables_to_csv, tables_to_json, tables_to_text, variety_contains_upto,
    verify_generating_set, Limits,
};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SEMANTIC: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gstar", version, about = "Polynomial-identity invariants of finite-dimensional (G,*)-algebras")]
pub struct Cli {
    /// Worker threads for frame-level parallelism (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the algebra axioms.
    Validate(AlgebraArgs),
    /// Total codimension c_n for each n.
    Codim(RunArgs),
    /// Colength l_n for each n.
    Colength(RunArgs),
    /// Full cocharacter tables.
    Cocharacter(RunArgs),
    /// Check that a generating set spans all multilinear identities of
    /// degree 1 up to the top of --n.
    VerifyBasis {
        #[command(flatten)]
        run: RunArgs,
        /// Generators file: optional `elems:` header, one polynomial per line.
        #[arg(long)]
        generators: PathBuf,
    },
    /// Check that --sub lies in the variety of --super up to --max-n.
    Member {
        #[command(flatten)]
        params: ParamArgs,
        /// Catalog name or algebra JSON file.
        #[arg(long = "sub")]
        sub: String,
        /// Catalog name or algebra JSON file.
        #[arg(long = "super")]
        sup: String,
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
    /// List catalog entries or export one as JSON.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Export {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Group as comma-separated cyclic orders, e.g. `4` or `2,2` (default trivial).
    #[arg(long, default_value = "1")]
    pub group: String,
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long)]
    pub h: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Element names, e.g. `g=(1); h=(0,1)`.
    #[arg(long)]
    pub elems: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub catalog: Option<String>,
    /// Algebra JSON file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Degree `k` or inclusive range `a..b`.
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value_t = 6)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Maps a library error to a process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap { .. } => EXIT_CAP,
        Error::NotAnIdentity { .. } | Error::Consistency(_) => EXIT_SEMANTIC,
        _ => EXIT_INPUT,
    }
}

/// Parses `k` or `a..b` (inclusive).
pub fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad degree {t:?} in --n {s:?}")));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let k = num(s)?;
            (k, k)
        }
    };
    if a == 0 || a > b {
        return Err(Error::Parse(format!("empty or zero degree range {s:?}")));
    }
    Ok(a..=b)
}

struct Loaded {
    algebra: GStarAlgebra,
    names: ElementNames,
}

fn resolve_params(p: &ParamArgs, group: FiniteAbelianGroup) -> Result<(CatalogParams, ElementNames)> {
    let mut names = match &p.elems {
        Some(t) => ElementNames::parse(t, &group)?,
        None => ElementNames::default(),
    };
    let mut params = CatalogParams::new(group.clone());
    for (flag, value) in [("g", &p.g), ("h", &p.h)] {
        if let Some(v) = value {
            let e = names.resolve(v, &group)?;
            if names.get(flag).is_none() && !group.is_identity(&e) && names.name_of(&e).starts_with('(') {
                names.bind(flag, e.clone());
            }
            params = if flag == "g" { params.g(e) } else { params.h(e) };
        }
    }
    if let Some(k) = p.k {
        params = params.k(k);
    }
    Ok((params, names))
}

fn load_named(spec: &str, p: &ParamArgs) -> Result<Loaded> {
    let path = Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        return load(&AlgebraArgs { catalog: None, file: Some(path.to_path_buf()), params: p.clone() }, true);
    }
    load(&AlgebraArgs { catalog: Some(spec.to_string()), file: None, params: p.clone() }, true)
}

fn load(args: &AlgebraArgs, validate: bool) -> Result<Loaded> {
    if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path)?;
        let algebra = GStarAlgebra::from_json(&text)?;
        let (_, names) = resolve_params(&args.params, algebra.group().clone())?;
        let algebra = if validate { algebra.validated()? } else { algebra };
        return Ok(Loaded { algebra, names });
    }
    let name = args.catalog.as_deref().ok_or_else(|| Error::Parse("need --catalog or --file".into()))?;
    let group = FiniteAbelianGroup::parse(&args.params.group)?;
    let (params, names) = resolve_params(&args.params, group)?;
    Ok(Loaded { algebra: catalog::build(name, &params)?, names })
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct SeriesRow {
    n: usize,
    value: u64,
}

#[derive(Serialize)]
struct Series<'a> {
    algebra: &'a str,
    group: String,
    quantity: &'a str,
    values: Vec<SeriesRow>,
}

fn render_series(a: &GStarAlgebra, quantity: &str, values: &[(usize, u64)], format: Format) -> String {
    match format {
        Format::Table => {
            let v: Vec<String> = values.iter().map(|(_, x)| x.to_string()).collect();
            format!("{}\n", v.join(" "))
        }
        Format::Csv => {
            let mut s = format!("n,{quantity}\n");
            for (n, x) in values {
                let _ = writeln!(s, "{n},{x}");
            }
            s
        }
        Format::Json => {
            let series = Series {
                algebra: a.name(),
                group: a.group().to_string(),
                quantity,
                values: values.iter().map(|&(n, value)| SeriesRow { n, value }).collect(),
            };
            serde_json::to_string_pretty(&series).expect("series serialises") + "\n"
        }
    }
}

/// Executes a parsed command, writing results to `stdout` and diagnostics
/// to `stderr`; returns the exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    if let Some(j) = cli.jobs {
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Validate(args) => {
            let Loaded { algebra, .. } = load(&args, false)?;
            let report = algebra.validate();
            if report.is_ok() {
                writeln!(stdout, "ok")?;
                return Ok(EXIT_OK);
            }
            for v in &report.violations {
                writeln!(stdout, "violation: {v}")?;
            }
            Ok(EXIT_SEMANTIC)
        }
        Command::Codim(run) => {
            let Loaded { algebra, .. } = load(&run.algebra, true)?;
            let limits = Limits::with_cap(run.cap);
            let values = parse_range(&run.n)?
                .map(|n| Ok((n, codim_total(&algebra, n, &limits)?)))
                .collect::<Result<Vec<_>>>()?;
            emit(&run.out, &render_series(&algebra, "c_n_sharp", &values, run.format), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Colength(run) => {
            let Loaded { algebra, .. } = load(&run.algebra, true)?;
            let limits = Limits::with_cap(run.cap);
            let values = parse_range(&run.n)?
                .map(|n| Ok((n, cocharacter_table(&algebra, n, &limits)?.colength)))
                .collect::<Result<Vec<_>>>()?;
            emit(&run.out, &render_series(&algebra, "l_n_sharp", &values, run.format), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Cocharacter(run) => {
            let Loaded { algebra, names } = load(&run.algebra, true)?;
            let limits = Limits::with_cap(run.cap);
            let tables =
                parse_range(&run.n)?.map(|n| cocharacter_table(&algebra, n, &limits)).collect::<Result<Vec<_>>>()?;
            let text = match run.format {
                Format::Table => tables_to_text(&tables, &names),
                Format::Csv => tables_to_csv(&tables, &names),
                Format::Json => tables_to_json(algebra.name(), &tables, &names),
            };
            emit(&run.out, &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::VerifyBasis { run, generators } => {
            let Loaded { algebra, names } = load(&run.algebra, true)?;
            let limits = Limits::with_cap(run.cap);
            let text = std::fs::read_to_string(&generators)?;
            let (names, gens) = parse_generators(&text, algebra.group(), &names)?;
            let range = parse_range(&run.n)?;
            let report = verify_generating_set(&algebra, &gens, *range.end(), &limits)?;
            let mut s = String::new();
            for d in &report.degrees {
                if d.incomplete.is_empty() {
                    let _ = writeln!(s, "n = {}: complete ({} frames)", d.n, d.frames_checked);
                } else {
                    let _ =
                        writeln!(s, "n = {}: incomplete at {} of {} frames", d.n, d.incomplete.len(), d.frames_checked);
                    for v in &d.incomplete {
                        let blocks: Vec<String> = v
                            .multidegree
                            .counts()
                            .iter()
                            .enumerate()
                            .filter(|(_, &c)| c > 0)
                            .map(|(b, c)| format!("{c} x {}", names.block_name(algebra.group(), b)))
                            .collect();
                        let _ = writeln!(
                            s,
                            "  {} [{}]: identities {}, consequences {}",
                            v.multidegree,
                            blocks.join(", "),
                            v.kernel_dim,
                            v.consequence_rank
                        );
                    }
                }
            }
            emit(&run.out, &s, stdout)?;
            Ok(if report.is_complete() { EXIT_OK } else { EXIT_SEMANTIC })
        }
        Command::Member { params, sub, sup, max_n, cap } => {
            let small = load_named(&sub, &params)?.algebra;
            let big = load_named(&sup, &params)?.algebra;
            let verdicts = variety_contains_upto(&big, &small, max_n, &Limits::with_cap(cap))?;
            let mut ok = true;
            for v in &verdicts {
                match &v.counterexample {
                    None => writeln!(stdout, "n = {}: contained", v.n)?,
                    Some(md) => {
                        ok = false;
                        writeln!(stdout, "n = {}: not contained (first failing multidegree {md})", v.n)?;
                    }
                }
            }
            if !ok {
                writeln!(stderr, "{} is not in the variety of {}", small.name(), big.name())?;
            }
            Ok(if ok { EXIT_OK } else { EXIT_SEMANTIC })
        }
        Command::Catalog { action: CatalogAction::List } => {
            for e in ENTRIES {
                writeln!(stdout, "{:<24} {:<10} {:<36} {}", e.name, e.params, e.constraints, e.description)?;
            }
            Ok(EXIT_OK)
        }
        Command::Catalog { action: CatalogAction::Export { algebra, out } } => {
            let Loaded { algebra, .. } = load(&algebra, true)?;
            emit(&out, &(algebra.to_json() + "\n"), stdout)?;
            Ok(EXIT_OK)
        }
    }
}
