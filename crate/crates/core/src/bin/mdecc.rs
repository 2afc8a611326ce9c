//! `mdecc`: build, export, verify, inject into and decode multidimensional
//! cluster-error-correcting codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use mdecc::array::{parse_list, parse_pattern, pattern_to_text, BitArray};
use mdecc::config::{CodeConfig, Construction, Descriptor, SchemeOptions};
use mdecc::export::export_h;
use mdecc::lattice::enumerate_patterns;
use mdecc::pipeline::{redundancy_report, AnyCode, Relation};
use mdecc::verify::verify;
use mdecc::{Correction, DecodeError, LinearCode};

const EXIT_USAGE: u8 = 1;
const EXIT_UNCORRECTABLE: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "mdecc", version, about = "Multidimensional cluster-error-correcting codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code and write its JSON descriptor.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        /// Descriptor output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the parity-check export to this path.
        #[arg(long)]
        export_h: Option<PathBuf>,
    },
    /// Write the parity-check matrix, one column per cell.
    ExportH {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check injectivity and decoding over the correctable class.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        /// Enumerate the full class (the only supported mode).
        #[arg(long, default_value_t = true)]
        exhaustive: bool,
        /// Worker threads (0 or unset: all cores).
        #[arg(long, env = "MDECC_JOBS")]
        jobs: Option<usize>,
        /// Report output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate redundancy against the stated bounds over a parameter grid.
    RedundancyTable {
        /// Comma-separated construction tags.
        #[arg(long, default_value = "A,B,C,D,E,coloring-semicross,coloring-cross")]
        constructions: String,
        /// Comma-separated dimensions D.
        #[arg(long, default_value = "2,3,4")]
        ranks: String,
        /// Comma-separated edge lengths n (arrays are n^D cubes).
        #[arg(long, default_value = "4,8")]
        edges: String,
        /// Comma-separated arm lengths for Construction D.
        #[arg(long, default_value = "1,2")]
        arms: String,
        /// Enumerate each class for the event-counting lower bound.
        #[arg(long)]
        count_class: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Flip a given or randomly sampled correctable pattern in an array.
    Inject {
        #[command(flatten)]
        code: CodeArgs,
        /// Input array (all-zero array if omitted).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Pattern as `i1,..,iD;j1,..,jD` with 0-based coordinates.
        #[arg(long, conflicts_with = "seed")]
        pattern: Option<String>,
        /// Sample a pattern uniformly from the correctable class.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode an array; prints the recovered pattern and corrected array.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        input: PathBuf,
        /// Corrected array output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// Descriptor written by `build`.
    #[arg(long, conflicts_with_all = ["construction", "dims"])]
    code: Option<PathBuf>,
    /// A, B, C, D, E, coloring-semicross or coloring-cross.
    #[arg(long, requires = "dims")]
    construction: Option<Construction>,
    /// Comma-separated edge lengths.
    #[arg(long)]
    dims: Option<String>,
    /// Field degree.
    #[arg(long, conflicts_with = "auto_m")]
    m: Option<u32>,
    /// Smallest m with 2^m - 1 >= N (the default).
    #[arg(long)]
    auto_m: bool,
    /// Arm length R for Construction D.
    #[arg(long)]
    arm: Option<usize>,
    /// Primitive polynomial override, decimal or 0x-hex.
    #[arg(long, value_parser = parse_poly)]
    poly: Option<u32>,
    /// Modular semi-cross coloring.
    #[arg(long)]
    modular: bool,
    /// Reject parameters outside the proven range.
    #[arg(long)]
    strict: bool,
}

fn parse_poly(s: &str) -> Result<u32, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u32::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("{s:?}: {e}"))
}

/// A failure carrying its exit code.
struct Fail {
    code: u8,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Fail {
        Fail { code: EXIT_USAGE, message: e.to_string() }
    }
}

type CliResult = Result<u8, Fail>;

impl CodeArgs {
    fn config(&self) -> Result<CodeConfig, Fail> {
        if let Some(path) = &self.code {
            let text = read(path)?;
            let desc: Descriptor = serde_json::from_str(&text)?;
            return Ok(desc.config);
        }
        let (Some(construction), Some(dims)) = (self.construction, &self.dims) else {
            return Err("either --code or --construction with --dims is required".into());
        };
        Ok(CodeConfig {
            construction,
            dims: parse_list(dims)?,
            m: if self.auto_m { None } else { self.m },
            arm: self.arm,
            poly: self.poly,
            scheme: SchemeOptions { modular: self.modular, strict: self.strict },
        })
    }

    fn build(&self) -> Result<(CodeConfig, AnyCode), Fail> {
        let config = self.config()?;
        let built = config.build()?;
        for w in &built.warnings {
            eprintln!("warning: {w}");
        }
        Ok((config, built.code))
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Fail> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Fail { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Fail> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn load_array(code: &AnyCode, input: Option<&Path>) -> Result<BitArray, Fail> {
    let array = match input {
        Some(path) => BitArray::parse(&read(path)?)?,
        None => BitArray::zeros(code.dims()),
    };
    if array.dims() != code.dims() {
        return Err(Fail {
            code: EXIT_USAGE,
            message: format!("array dims {} do not match code dims {}", array.dims(), code.dims()),
        });
    }
    Ok(array)
}

fn cmd_build(args: &CodeArgs, out: Option<&Path>, export: Option<&Path>) -> CliResult {
    let (config, code) = args.build()?;
    let desc = Descriptor::new(&config, &code);
    if let Some(path) = export {
        emit(Some(path), &export_h(&code, &desc.config))?;
    }
    emit(out, &to_json(&desc)?)?;
    Ok(0)
}

fn cmd_export_h(args: &CodeArgs, out: Option<&Path>) -> CliResult {
    let (config, code) = args.build()?;
    emit(out, &export_h(&code, &config))?;
    Ok(0)
}

fn cmd_verify(args: &CodeArgs, jobs: Option<usize>, out: Option<&Path>) -> CliResult {
    let (_, code) = args.build()?;
    let report = verify(&code, jobs);
    emit(out, &to_json(&report)?)?;
    eprintln!(
        "{}: {} patterns, {} failures, injective {}",
        report.code, report.patterns_tested, report.failure_count, report.injective
    );
    Ok(if report.passed() { 0 } else { EXIT_VERIFY_FAILED })
}

struct Row {
    construction: String,
    dims: String,
    arm: String,
    r: usize,
    ceil_log_n: u32,
    excess: i64,
    construction_excess: String,
    bound: String,
    bound_holds: bool,
    lower_bound: String,
    slack: String,
    flag: String,
}

const HEADER: &str =
    "construction\tdims\tarm\tr\tceil_log_n\texcess\tconstruction_excess\tbound\tbound_holds\tlower_bound\tslack\tflag";

fn table_row(config: &CodeConfig, code: &AnyCode, count_class: bool) -> Row {
    let rep = redundancy_report(code, count_class);
    let bound = rep
        .checks
        .iter()
        .map(|c| {
            let rel = match c.relation {
                Relation::AtMost => "<=",
                Relation::Equal => "==",
            };
            format!("{}: {} {rel} {}", c.description, c.value, c.limit)
        })
        .collect::<Vec<_>>()
        .join("; ");
    let lower = rep.event_lower_bound.or(rep.closed_form_lower_bound.as_ref().map(|(_, v)| *v));
    let flag = if rep.notes.iter().any(|n| n.starts_with("discrepancy")) {
        "discrepancy"
    } else if !rep.all_hold() {
        "bound-not-met"
    } else {
        ""
    };
    Row {
        construction: config.construction.tag().to_string(),
        dims: code.dims().to_string(),
        arm: config.arm.map(|a| a.to_string()).unwrap_or_default(),
        r: rep.r,
        ceil_log_n: rep.ceil_log_n,
        excess: rep.excess,
        construction_excess: rep.construction_excess.map(|e| e.to_string()).unwrap_or_default(),
        bound,
        bound_holds: rep.all_hold(),
        lower_bound: lower.map(|v| v.to_string()).unwrap_or_default(),
        slack: lower.map(|v| (rep.r as i64 - v as i64).to_string()).unwrap_or_default(),
        flag: flag.to_string(),
    }
}

fn cmd_redundancy_table(
    constructions: &str,
    ranks: &str,
    edges: &str,
    arms: &str,
    count_class: bool,
    out: Option<&Path>,
) -> CliResult {
    let constructions: Vec<Construction> =
        constructions.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>()?;
    let ranks = parse_list(ranks)?;
    let edges = parse_list(edges)?;
    let arms = parse_list(arms)?;
    let mut text = String::from(HEADER);
    text.push('\n');
    for &construction in &constructions {
        for &d in &ranks {
            for &n in &edges {
                let arm_values: Vec<Option<usize>> = if construction == Construction::D {
                    arms.iter().map(|&a| Some(a)).collect()
                } else {
                    vec![None]
                };
                for arm in arm_values {
                    let mut config = CodeConfig::new(construction, vec![n; d]);
                    config.arm = arm;
                    config.scheme.strict = construction.is_coloring();
                    match config.build() {
                        Ok(built) => {
                            let row = table_row(&config, &built.code, count_class);
                            text.push_str(&format!(
                                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                                row.construction,
                                row.dims,
                                row.arm,
                                row.r,
                                row.ceil_log_n,
                                row.excess,
                                row.construction_excess,
                                row.bound,
                                row.bound_holds,
                                row.lower_bound,
                                row.slack,
                                row.flag
                            ));
                        }
                        Err(e) => eprintln!("skip {construction} dims {n}^{d}: {e}"),
                    }
                }
            }
        }
    }
    emit(out, &text)?;
    Ok(0)
}

fn cmd_inject(
    args: &CodeArgs,
    input: Option<&Path>,
    pattern: Option<&str>,
    seed: Option<u64>,
    out: Option<&Path>,
) -> CliResult {
    let (_, code) = args.build()?;
    let mut array = load_array(&code, input)?;
    let pattern = match (pattern, seed) {
        (Some(text), _) => parse_pattern(code.dims(), text)?,
        (None, Some(seed)) => {
            let class = enumerate_patterns(code.dims(), &code.shape());
            if class.is_empty() {
                return Err("the correctable class is empty".into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            class[rng.gen_range(0..class.len())].clone()
        }
        (None, None) => return Err("either --pattern or --seed is required".into()),
    };
    array.apply(&pattern);
    eprintln!("injected {}", pattern_to_text(code.dims(), &pattern));
    emit(out, &array.to_text())?;
    Ok(0)
}

#[derive(Serialize)]
struct DecodeOutput {
    status: &'static str,
    pattern: Option<String>,
    cells: Vec<usize>,
    error: Option<String>,
    corrected: Option<String>,
}

fn cmd_decode(args: &CodeArgs, input: &Path, out: Option<&Path>) -> CliResult {
    let (_, code) = args.build()?;
    let mut array = load_array(&code, Some(input))?;
    let result = code.decode_syndrome(&code.syndrome_of_array(&array));
    let (output, exit) = match result {
        Ok(correction) => {
            let (status, pattern, cells) = match &correction {
                Correction::NoError => ("no-error", None, Vec::new()),
                Correction::Pattern(p) => {
                    array.apply(p);
                    ("corrected", Some(pattern_to_text(code.dims(), p)), p.cells().to_vec())
                }
            };
            if let Some(path) = out {
                emit(Some(path), &array.to_text())?;
            }
            (DecodeOutput { status, pattern, cells, error: None, corrected: Some(array.to_text()) }, 0)
        }
        Err(e) => {
            let status = match e {
                DecodeError::Ambiguous(_) => "ambiguous",
                _ => "uncorrectable",
            };
            let output =
                DecodeOutput { status, pattern: None, cells: Vec::new(), error: Some(e.to_string()), corrected: None };
            (output, EXIT_UNCORRECTABLE)
        }
    };
    print!("{}", to_json(&output)?);
    Ok(exit)
}

fn run(cli: Cli) -> CliResult {
    match &cli.command {
        Command::Build { code, out, export_h } => cmd_build(code, out.as_deref(), export_h.as_deref()),
        Command::ExportH { code, out } => cmd_export_h(code, out.as_deref()),
        Command::Verify { code, exhaustive: _, jobs, out } => cmd_verify(code, *jobs, out.as_deref()),
        Command::RedundancyTable { constructions, ranks, edges, arms, count_class, out } => {
            cmd_redundancy_table(constructions, ranks, edges, arms, *count_class, out.as_deref())
        }
        Command::Inject { code, input, pattern, seed, out } => {
            cmd_inject(code, input.as_deref(), pattern.as_deref(), *seed, out.as_deref())
        }
        Command::Decode { code, input, out } => cmd_decode(code, input, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(fail) => {
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}
