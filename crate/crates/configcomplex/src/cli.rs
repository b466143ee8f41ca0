//! Command-line interface of the `configcomplex` binary.
//!
//! Commands read and write the plain-text formats of [`crate::formats`].
//! Converters print the produced object to stdout, or write it to `-o FILE`
//! and print a report instead.  Reports render as text or JSON (`--format`).
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage, I/O, and parse errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::FiniteAbelianGroup;
use crate::complex::{
    cross_check_with_lattice, default_face_cap, quotient_complex,
    reference_color_independence, QuotientComplex, SimplicialComplex,
};
use crate::config::ValidationReport;
use crate::constructions::{
    config_from_difference_set, config_from_semifield, search_difference_sets,
    search_sidon_sets, semifield_from_field, singer_difference_set, translation_action,
    Semifield,
};
use crate::correspondence::{
    code_to_config, code_to_sidon, config_to_code, recover_difference_set,
    roundtrip_config, sidon_to_code, SidonSet,
};
use crate::error::Result;
use crate::formats;
use crate::lattice::LinearCode;
use crate::report::Report;

#[derive(Parser)]
#[command(
    name = "configcomplex",
    version,
    about = "Colored configurations, quotient complexes, and perfect codes",
    after_help = "The face cap guarding homology and face enumeration defaults to \
                  1000000 and can be overridden with CONFIGCOMPLEX_FACE_CAP."
)]
struct Cli {
    /// Report output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build classical objects.
    #[command(subcommand)]
    Construct(Construct),
    /// Validate an object file, listing every violation.
    Validate {
        #[arg(value_enum)]
        kind: Kind,
        file: PathBuf,
    },
    /// Quotient complexes: construction, homology, invariant checks.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Move between configurations, codes, Sidon sets, and difference sets.
    #[command(subcommand)]
    Correspond(Correspond),
    /// Exhaustive searches in small groups.
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Config,
    Diffset,
    Sidon,
    Semifield,
    Code,
}

#[derive(Subcommand)]
enum Construct {
    /// Planar difference set of the projective plane over GF(q).
    Singer {
        #[arg(long)]
        q: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Addition and multiplication tables of the field GF(q).
    FieldTable {
        #[arg(long)]
        q: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Affine configuration of a commutative semifield.
    Semifield {
        /// Use the field GF(q) as the semifield.
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        field: Option<u64>,
        /// Read the semifield from a table file.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Projective configuration of a planar difference set.
    FromDiffset {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Quotient complex of a configuration.
    Build {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write plain facets without provenance tags.
        #[arg(long)]
        generic: bool,
    },
    /// Simplicial homology of a complex (or of a configuration's quotient).
    Homology {
        file: PathBuf,
        /// Highest homology degree to compute (default: the dimension).
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Validate a configuration and check its quotient complex invariants.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum Correspond {
    /// Lattice code of a Sidon set.
    SidonToCode {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Sidon set induced by a radius-1 code.
    CodeToSidon {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Colored configuration on the quotient of a radius-1 code.
    CodeToConfig {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Stabilizer code of a configuration's lattice action.
    ConfigToCode {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Send a configuration through its code and back, checking isomorphism.
    Roundtrip { file: PathBuf },
    /// Recover a planar difference set from a projective configuration.
    RecoverDiffset {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// All planar difference sets in Z_n, up to translation.
    Diffsets {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        size: usize,
    },
    /// All Sidon sets of a given size in a group, up to translation.
    Sidon {
        /// Group as cycle orders joined by `x`, e.g. `7` or `3x3`.
        #[arg(long)]
        group: String,
        #[arg(long)]
        size: usize,
    },
}

/// Entry point for the `configcomplex` binary.
pub fn run(args: &[String]) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let format = cli.format;
    match dispatch(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            if format == Format::Json {
                let payload = serde_json::json!({ "error": e.to_string() });
                eprintln!("{payload}");
            } else {
                eprintln!("error: {e}");
            }
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool> {
    let format = cli.format;
    match cli.command {
        Command::Construct(cmd) => construct(cmd, format),
        Command::Validate { kind, file } => validate(kind, &file, format),
        Command::Complex(cmd) => complex(cmd, format),
        Command::Correspond(cmd) => correspond(cmd, format),
        Command::Search(cmd) => search(cmd, format),
    }
}

/// Prints a report in the requested format; true when every check passed.
fn emit(report: &Report, format: Format) -> bool {
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.to_json()).expect("report serializes")
        ),
    }
    report.passed()
}

/// Converter output: the object text goes to stdout, or to `out` with the
/// report (build facts) printed instead.
fn deliver(text: String, out: Option<&Path>, report: Report, format: Format) -> Result<bool> {
    match out {
        Some(path) => {
            fs::write(path, text)?;
            let mut report = report;
            report.info("wrote", path.display());
            Ok(emit(&report, format))
        }
        None => {
            print!("{text}");
            Ok(report.passed())
        }
    }
}

fn load(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn parse_group_spec(spec: &str) -> Result<FiniteAbelianGroup> {
    let moduli: Result<Vec<u64>> = spec
        .split('x')
        .map(|tok| {
            tok.trim().parse::<u64>().map_err(|_| {
                crate::Error::invalid(format!("invalid group spec `{spec}`: bad order `{tok}`"))
            })
        })
        .collect();
    FiniteAbelianGroup::from_moduli(&moduli?)
}

fn format_element_set(group: &FiniteAbelianGroup, elements: &[crate::algebra::GroupElement]) -> String {
    let inner: Vec<String> = elements
        .iter()
        .map(|e| {
            let s = group.format_element(e);
            if s.contains(',') {
                format!("({s})")
            } else {
                s
            }
        })
        .collect();
    format!("{{{}}}", inner.join(", "))
}

/// Folds a validation report into checks: one passing row when clean, one
/// failing row per violation otherwise.
fn fold_validation(report: &mut Report, label: &str, validation: &ValidationReport) {
    if validation.ok() {
        report.check(label, "ok", true);
    } else {
        for v in &validation.violations {
            report.check(format!("{label}/{}", v.rule), &v.witness, false);
        }
    }
}

fn describe_code(report: &mut Report, code: &LinearCode) -> Result<()> {
    report.info("rank", code.k());
    report.info("index", code.index());
    let (group, _) = code.quotient()?;
    report.info("quotient", group.name());
    report.info("radius-1", code.is_radius_one()?);
    report.info("perfect", code.is_perfect()?);
    Ok(())
}

fn construct(cmd: Construct, format: Format) -> Result<bool> {
    match cmd {
        Construct::Singer { q, out } => {
            let ds = singer_difference_set(q)?;
            let mut report = Report::new("singer difference set");
            report.info("group", ds.group().name());
            report.info("elements", format_element_set(ds.group(), ds.elements()));
            deliver(formats::write_difference_set(&ds), out.as_deref(), report, format)
        }
        Construct::FieldTable { q, out } => {
            let s = semifield_from_field(q)?;
            let report = Report::new("field tables");
            deliver(formats::write_semifield(&s), out.as_deref(), report, format)
        }
        Construct::Semifield { field, table, out } => {
            let s: Semifield = match (field, table) {
                (Some(q), None) => semifield_from_field(q)?,
                (None, Some(path)) => formats::read_semifield(&load(&path)?)?,
                _ => unreachable!("clap enforces exactly one source"),
            };
            let config = config_from_semifield(&s)?;
            let mut report = Report::new("semifield configuration");
            report.info("order", s.q());
            report.info("points", config.num_points());
            report.info("lines", config.num_lines());
            report.info("colors", config.k());
            deliver(formats::write_config(&config, None), out.as_deref(), report, format)
        }
        Construct::FromDiffset { file, out } => {
            let ds = formats::read_difference_set(&load(&file)?)?;
            let (config, action) = config_from_difference_set(&ds)?;
            let mut report = Report::new("difference set configuration");
            report.info("points", config.num_points());
            report.info("colors", config.k());
            deliver(
                formats::write_config(&config, Some(&action.group)),
                out.as_deref(),
                report,
                format,
            )
        }
    }
}

fn validate(kind: Kind, file: &Path, format: Format) -> Result<bool> {
    let text = load(file)?;
    let mut report = Report::new("validation");
    match kind {
        Kind::Config => {
            let (config, group) = formats::read_config(&text)?;
            report.info("points", config.num_points());
            report.info("lines", config.num_lines());
            report.info("colors", config.k());
            let structure = config.validate_configuration();
            fold_validation(&mut report, "configuration", &structure);
            if structure.ok() {
                fold_validation(&mut report, "coloring", &config.validate_coloring());
            }
            if let Some(group) = group {
                let action = translation_action(&group, config.k())?;
                fold_validation(
                    &mut report,
                    "translation-action",
                    &action.verify_free_action(&config),
                );
            }
        }
        Kind::Diffset => {
            let ds = formats::read_difference_set(&text)?;
            report.info("group", ds.group().name());
            report.info("elements", format_element_set(ds.group(), ds.elements()));
            fold_validation(&mut report, "difference-set", &ds.validate());
        }
        Kind::Sidon => {
            let set = formats::read_sidon_set(&text)?;
            report.info("group", set.group().name());
            report.info("elements", format_element_set(set.group(), set.elements()));
            fold_validation(&mut report, "sidon-set", &set.validate());
        }
        Kind::Semifield => {
            let s = formats::read_semifield(&text)?;
            report.info("order", s.q());
            fold_validation(&mut report, "semifield", &s.validate());
        }
        Kind::Code => {
            let code = formats::read_code(&text)?;
            describe_code(&mut report, &code)?;
            report.check("canonical-basis", "full rank, hermite form", true);
        }
    }
    Ok(emit(&report, format))
}

/// Reads a complex file directly, or a configuration file through the
/// quotient construction.
fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    let text = load(path)?;
    let first = text
        .lines()
        .map(|raw| raw.split('#').next().unwrap_or("").trim())
        .find(|line| !line.is_empty())
        .unwrap_or("");
    if first == "configuration" {
        let (config, _) = formats::read_config(&text)?;
        Ok(quotient_complex(&config)?.complex().clone())
    } else {
        formats::read_complex(&text)
    }
}

fn describe_quotient(report: &mut Report, qc: &QuotientComplex) {
    report.info("vertices", qc.complex().num_vertices());
    report.info("facets", qc.complex().facets().len());
    report.info("provenance facets", qc.provenance_facets());
    report.info("dimension", qc.complex().dimension());
    report.info("degenerate", qc.is_degenerate());
}

fn complex(cmd: ComplexCmd, format: Format) -> Result<bool> {
    match cmd {
        ComplexCmd::Build { file, out, generic } => {
            let (config, _) = formats::read_config(&load(&file)?)?;
            let qc = quotient_complex(&config)?;
            let mut report = Report::new("quotient complex");
            describe_quotient(&mut report, &qc);
            let text = if generic {
                formats::write_complex(qc.complex())
            } else {
                formats::write_quotient_complex(&qc)
            };
            deliver(text, out.as_deref(), report, format)
        }
        ComplexCmd::Homology { file, max_dim } => {
            let complex = load_complex(&file)?;
            let cap = default_face_cap();
            let dim = complex.dimension();
            let top = max_dim.unwrap_or(dim);
            let groups = complex.homology(top, cap)?;
            let mut report = Report::new("homology");
            report.info("vertices", complex.num_vertices());
            report.info("facets", complex.facets().len());
            report.info("dimension", dim);
            for (d, h) in groups.iter().enumerate() {
                report.info(format!("H_{d}"), h);
            }
            let euler = complex.euler_characteristic(cap)?;
            report.info("euler characteristic", euler);
            if top >= dim {
                let alternating: i64 = groups
                    .iter()
                    .enumerate()
                    .map(|(d, h)| {
                        let sign = if d % 2 == 0 { 1 } else { -1 };
                        sign * h.free_rank as i64
                    })
                    .sum();
                report.check(
                    "euler equals alternating rank sum",
                    format!("{euler} = {alternating}"),
                    euler == alternating,
                );
            }
            Ok(emit(&report, format))
        }
        ComplexCmd::Check { file } => {
            let (config, group) = formats::read_config(&load(&file)?)?;
            let mut report = Report::new("configuration check");
            report.info("points", config.num_points());
            report.info("lines", config.num_lines());
            report.info("colors", config.k());
            let structure = config.validate_configuration();
            fold_validation(&mut report, "configuration", &structure);
            let coloring_ok = if structure.ok() {
                let coloring = config.validate_coloring();
                fold_validation(&mut report, "coloring", &coloring);
                coloring.ok()
            } else {
                false
            };
            if !(structure.ok() && coloring_ok) {
                return Ok(emit(&report, format));
            }
            let qc = quotient_complex(&config)?;
            describe_quotient(&mut report, &qc);
            report.info("2-neighborly", qc.complex().is_two_neighborly());
            report.check(
                "reference color independence",
                "negative family is the same for every reference color",
                reference_color_independence(&config)?,
            );
            report.check(
                "lattice cross-check",
                "facet families match the labeled lattice quotient",
                cross_check_with_lattice(&config)?,
            );
            if let Some(group) = group {
                let action = translation_action(&group, config.k())?;
                fold_validation(
                    &mut report,
                    "group-action",
                    &qc.verify_action(&config, &action),
                );
            }
            let cap = default_face_cap();
            let groups = qc.complex().homology(qc.complex().dimension(), cap)?;
            for (d, h) in groups.iter().enumerate() {
                report.info(format!("H_{d}"), h);
            }
            let euler = qc.complex().euler_characteristic(cap)?;
            let alternating: i64 = groups
                .iter()
                .enumerate()
                .map(|(d, h)| {
                    let sign = if d % 2 == 0 { 1 } else { -1 };
                    sign * h.free_rank as i64
                })
                .sum();
            report.check(
                "euler characteristic",
                format!("{euler} (alternating rank sum {alternating})"),
                euler == alternating,
            );
            Ok(emit(&report, format))
        }
    }
}

fn correspond(cmd: Correspond, format: Format) -> Result<bool> {
    match cmd {
        Correspond::SidonToCode { file, out } => {
            let set = formats::read_sidon_set(&load(&file)?)?;
            let code = sidon_to_code(&set)?;
            let mut report = Report::new("code of the sidon set");
            describe_code(&mut report, &code)?;
            deliver(formats::write_code(&code), out.as_deref(), report, format)
        }
        Correspond::CodeToSidon { file, out } => {
            let code = formats::read_code(&load(&file)?)?;
            let set = code_to_sidon(&code)?;
            let mut report = Report::new("sidon set of the code");
            report.info("group", set.group().name());
            report.info("elements", format_element_set(set.group(), set.elements()));
            deliver(formats::write_sidon_set(&set), out.as_deref(), report, format)
        }
        Correspond::CodeToConfig { file, out } => {
            let code = formats::read_code(&load(&file)?)?;
            let config = code_to_config(&code)?;
            let (group, _) = code.quotient()?;
            let mut report = Report::new("configuration of the code");
            report.info("points", config.num_points());
            report.info("colors", config.k());
            deliver(
                formats::write_config(&config, Some(&group)),
                out.as_deref(),
                report,
                format,
            )
        }
        Correspond::ConfigToCode { file, out } => {
            let (config, _) = formats::read_config(&load(&file)?)?;
            let code = config_to_code(&config)?;
            let mut report = Report::new("stabilizer code");
            describe_code(&mut report, &code)?;
            deliver(formats::write_code(&code), out.as_deref(), report, format)
        }
        Correspond::Roundtrip { file } => {
            let (config, _) = formats::read_config(&load(&file)?)?;
            let result = roundtrip_config(&config)?;
            let mut report = Report::new("roundtrip");
            describe_code(&mut report, &result.code)?;
            let outcome = match (result.isomorphic, result.identity_colors) {
                (true, true) => "isomorphic (identity color map)",
                (true, false) => "isomorphic (permuted colors)",
                (false, _) => "not isomorphic",
            };
            report.check("configuration is recovered", outcome, result.isomorphic);
            Ok(emit(&report, format))
        }
        Correspond::RecoverDiffset { file, out } => {
            let (config, _) = formats::read_config(&load(&file)?)?;
            let ds = recover_difference_set(&config)?;
            let mut report = Report::new("recovered difference set");
            report.info("group", ds.group().name());
            report.info("elements", format_element_set(ds.group(), ds.elements()));
            deliver(formats::write_difference_set(&ds), out.as_deref(), report, format)
        }
    }
}

fn search(cmd: SearchCmd, format: Format) -> Result<bool> {
    match cmd {
        SearchCmd::Diffsets { n, size } => {
            let sets = search_difference_sets(n, size)?;
            let mut report = Report::new("difference set search");
            report.info("group", format!("Z_{n}"));
            report.info("size", size);
            report.info("found", sets.len());
            for (i, ds) in sets.iter().enumerate() {
                report.info(
                    format!("set {i}"),
                    format_element_set(ds.group(), ds.elements()),
                );
            }
            Ok(emit(&report, format))
        }
        SearchCmd::Sidon { group, size } => {
            let group = parse_group_spec(&group)?;
            let sets: Vec<SidonSet> = search_sidon_sets(&group, size)?;
            let mut report = Report::new("sidon set search");
            report.info("group", group.name());
            report.info("size", size);
            report.info("found", sets.len());
            for (i, set) in sets.iter().enumerate() {
                report.info(
                    format!("set {i}"),
                    format_element_set(set.group(), set.elements()),
                );
            }
            Ok(emit(&report, format))
        }
    }
}
