mod cache;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use qaffine::algebra::{defining_relations, verify_sc_presentation, ScMutation};
use qaffine::cartan::{
    catalog_all, catalog_by_name, integrability_violation, validate, weight_from_labels, AlgebraData, AlgebraSpec,
    CatalogId,
};
use qaffine::report::VerificationReport;
use qaffine::scalars::QParam;
use qaffine::transmutation::{specialized_relations_report, verify_twist, TwistSigns};
use qaffine::verma::{
    classical_action_check, contents_to_depth, rank_oracle, verify_module_relations,
    verify_relations, Coproduct, HighestWeightModule, TensorModule,
};

use cache::Cache;

#[derive(Parser)]
#[command(name = "qaffine", version, about = "Quantum affine superalgebras: catalog, characters and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog, or export one entry as an algebra spec.
    Catalog {
        #[arg(long)]
        export: Option<String>,
    },
    /// Check the structural conditions on Cartan data.
    Validate {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Weight multiplicities of the irreducible highest-weight module.
    Character {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Cache directory; defaults to $QAFFINE_CACHE_DIR when set.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long, hide = true)]
        column_limit: Option<usize>,
    },
    /// Classify labels by the integrability conditions.
    Integrable {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Run one verification suite and print its report.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        args: VerifyArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    /// Every defining relation, including both Serre families, on the module.
    Serre,
    /// The S/C presentation as rational-function identities.
    Presentation,
    /// Defining relations on a tensor product of two modules.
    Tensor,
    /// Generic characters against the v = 1 action.
    Classical,
    /// The sign-twisted partner module against the superalgebra.
    Twist,
    /// The q = -1 limit of the S/C relations against the reference list.
    Specialized,
    /// Gram ranks at random rational points against the exact rank.
    Oracle,
}

#[derive(Args, Clone, Default)]
struct AlgebraArgs {
    /// Catalog name such as B1_0_1, A2_0_3, C2_2, A4_0_2.
    #[arg(long)]
    algebra: Option<String>,
    /// Path to a JSON algebra spec.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Super family letter (B, A, C, A4), used with --n.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct WeightArgs {
    /// Dynkin labels, one per node, comma separated; zero when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    labels: Option<Vec<String>>,
    /// Λ0 coefficient; must agree with the value forced by the labels.
    #[arg(long, allow_hyphen_values = true)]
    lambda0: Option<String>,
    #[arg(long)]
    allow_nonintegrable: bool,
}

#[derive(Args, Clone)]
struct VerifyArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[command(flatten)]
    weight: WeightArgs,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Labels of the second tensor factor; the first factor's when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    right_labels: Option<Vec<String>>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    samples: usize,
    /// Report elapsed_ms as 0 so that output is reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
    #[arg(long, hide = true)]
    mutate_signs: bool,
    #[arg(long, hide = true)]
    uncorrected_coproduct: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

fn usage<E: ToString>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn family_name(family: &str, n: usize) -> Result<String, CliError> {
    Ok(match family {
        "B" => format!("B1_0_{n}"),
        "A" => format!("A2_0_{}", 2 * n - 1),
        "C" => format!("C2_{}", n + 1),
        "A4" => format!("A4_0_{}", 2 * n),
        other => return Err(CliError::Usage(format!("unknown family '{other}'; expected B, A, C or A4"))),
    })
}

fn load_algebra(args: &AlgebraArgs) -> Result<AlgebraData, CliError> {
    match (&args.algebra, &args.spec, &args.family) {
        (Some(name), None, None) => catalog_by_name(name).map_err(usage),
        (None, Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            AlgebraSpec::from_json(&text).and_then(AlgebraSpec::into_data).map_err(usage)
        }
        (None, None, Some(family)) => {
            let n = args.n.ok_or_else(|| usage("--family needs --n"))?;
            catalog_by_name(&family_name(family, n)?).map_err(usage)
        }
        _ => Err(usage("give exactly one of --algebra, --spec or --family/--n")),
    }
}

fn parse_labels(data: &AlgebraData, raw: &Option<Vec<String>>) -> Result<Vec<BigRational>, CliError> {
    let Some(raw) = raw else {
        return Ok(vec![BigRational::from_integer(0.into()); data.size()]);
    };
    let labels = raw
        .iter()
        .map(|s| s.trim().parse::<BigRational>().map_err(|_| usage(format!("bad label '{s}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    if labels.len() != data.size() {
        return Err(usage(format!("{} has {} nodes, got {} labels", data.name, data.size(), labels.len())));
    }
    Ok(labels)
}

fn parse_lambda0(raw: &Option<String>) -> Result<Option<BigRational>, CliError> {
    raw.as_ref().map(|s| s.trim().parse::<BigRational>().map_err(|_| usage(format!("bad --lambda0 '{s}'")))).transpose()
}

fn require_integrable(data: &AlgebraData, labels: &[BigRational], allow: bool) -> Result<(), CliError> {
    match integrability_violation(data, labels) {
        Some(msg) if !allow => Err(usage(format!("{msg}; pass --allow-nonintegrable to proceed"))),
        _ => Ok(()),
    }
}

/// Writes to stdout, tolerating a reader that has gone away.
fn emit(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn print_json<T: Serialize>(value: &T) {
    emit(&serde_json::to_string_pretty(value).expect("output serializes"));
}

fn cmd_catalog(export: Option<String>) -> Result<ExitCode, CliError> {
    if let Some(name) = export {
        emit(&catalog_by_name(&name).map_err(usage)?.export_json());
        return Ok(ExitCode::SUCCESS);
    }
    let rows: Vec<_> = catalog_all()
        .iter()
        .map(|d| {
            let id = d.id.expect("catalog entries carry an id");
            let partner = id.partner().ok().map(|p: CatalogId| p.name());
            json!({
                "name": d.name,
                "family": id.family.display_name(),
                "n": id.n,
                "super": id.family.is_super(),
                "partner": partner,
            })
        })
        .collect();
    print_json(&rows);
    Ok(ExitCode::SUCCESS)
}

fn finish(report: VerificationReport, no_timing: bool) -> ExitCode {
    let mut report = report;
    if no_timing {
        report.elapsed_ms = 0;
    }
    print_json(&report);
    let status = if report.passed() { "PASS" } else { "FAIL" };
    eprintln!("{status}: {} on {}", report.check, report.algebra);
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[derive(Serialize)]
struct CharacterEntry {
    alpha_coords: Vec<usize>,
    multiplicity: usize,
}

#[derive(Serialize)]
struct CharacterTable {
    algebra: String,
    highest_weight_labels: Vec<String>,
    lambda0_coeff: String,
    depth: usize,
    complete: bool,
    entries: Vec<CharacterEntry>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_character(
    algebra: AlgebraArgs,
    weight: WeightArgs,
    depth: usize,
    format: Format,
    cache_dir: Option<PathBuf>,
    column_limit: Option<usize>,
) -> Result<ExitCode, CliError> {
    let data = load_algebra(&algebra)?;
    let labels = parse_labels(&data, &weight.labels)?;
    let lambda0 = parse_lambda0(&weight.lambda0)?;
    require_integrable(&data, &labels, weight.allow_nonintegrable)?;
    let hw = weight_from_labels(&data, &labels, lambda0.as_ref()).map_err(usage)?;

    let cache = cache_dir.or_else(|| std::env::var_os("QAFFINE_CACHE_DIR").map(PathBuf::from)).map(Cache::new);
    let key = Cache::key(&data.export_json(), &hw.to_string());
    let cached = cache.as_ref().and_then(|c| c.load(&key, depth));
    let (entries, complete) = match cached {
        Some(entries) => (entries, true),
        None => {
            let mut module = HighestWeightModule::with_weight(&data, hw.clone(), QParam::generic()).map_err(usage)?;
            if let Some(limit) = column_limit {
                module.set_column_limit(limit);
            }
            let ch = module.character(depth);
            if ch.complete {
                if let Some(c) = &cache {
                    c.store(&key, depth, &ch.entries).map_err(|e| CliError::Failed(format!("cache write: {e}")))?;
                }
            }
            (ch.entries, ch.complete)
        }
    };

    let table = CharacterTable {
        algebra: data.name.clone(),
        highest_weight_labels: labels.iter().map(ToString::to_string).collect(),
        lambda0_coeff: hw.level_coeff().to_string(),
        depth,
        complete,
        entries: entries.into_iter().map(|(alpha_coords, multiplicity)| CharacterEntry { alpha_coords, multiplicity }).collect(),
    };
    match format {
        Format::Json => print_json(&table),
        Format::Csv => {
            let header: Vec<String> = (0..data.size()).map(|i| format!("c{i}")).collect();
            let mut text = format!("{},multiplicity", header.join(","));
            for e in &table.entries {
                let coords: Vec<String> = e.alpha_coords.iter().map(ToString::to_string).collect();
                text.push_str(&format!("\n{},{}", coords.join(","), e.multiplicity));
            }
            emit(&text);
        }
    }
    if complete {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("resource limit reached; the table is partial");
        Ok(ExitCode::from(3))
    }
}

fn cmd_integrable(algebra: AlgebraArgs, weight: WeightArgs) -> Result<ExitCode, CliError> {
    let data = load_algebra(&algebra)?;
    let labels = parse_labels(&data, &weight.labels)?;
    let violation = integrability_violation(&data, &labels);
    print_json(&json!({
        "algebra": data.name,
        "labels": labels.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "integrable": violation.is_none(),
        "violation": violation,
    }));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(check: Check, a: VerifyArgs) -> Result<ExitCode, CliError> {
    let data = load_algebra(&a.algebra)?;
    let labels = parse_labels(&data, &a.weight.labels)?;
    let lambda0 = parse_lambda0(&a.weight.lambda0)?;
    let report = match check {
        Check::Serre => {
            verify_module_relations(&data, &labels, lambda0.as_ref(), QParam::generic(), a.depth).map_err(usage)?
        }
        Check::Presentation => {
            let mutation = if a.mutate_signs { ScMutation::FlipSe } else { ScMutation::None };
            verify_sc_presentation(&data, &QParam::generic(), mutation)
        }
        Check::Tensor => {
            let right = match &a.right_labels {
                Some(_) => parse_labels(&data, &a.right_labels)?,
                None => labels.clone(),
            };
            let q = QParam::generic();
            let left = HighestWeightModule::new(&data, &labels, None, q.clone()).map_err(usage)?;
            let right_module = HighestWeightModule::new(&data, &right, None, q.clone()).map_err(usage)?;
            let coproduct = if a.uncorrected_coproduct { Coproduct::Uncorrected } else { Coproduct::Corrected };
            let mut t = TensorModule::new(left, right_module, coproduct).map_err(usage)?;
            let start = std::time::Instant::now();
            let mut report = VerificationReport::new("tensor", &data.name).with_labels(&labels).with_depth(a.depth);
            let relations = defining_relations(&data, &q).map_err(usage)?;
            let pairs = t.pairs_to_depth(a.depth);
            verify_relations(&mut t, &relations, &pairs, &mut report).map_err(usage)?;
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            report
        }
        Check::Classical => classical_action_check(&data, &labels, lambda0.as_ref(), a.depth).map_err(usage)?,
        Check::Twist => {
            let signs = match (&data.id, a.mutate_signs) {
                (Some(id), true) if id.family == qaffine::cartan::Family::B1Super => {
                    TwistSigns::b_family_uncorrected(id.n)
                }
                (_, true) => return Err(usage("--mutate-signs applies to the B family only")),
                _ => TwistSigns::for_data(&data).map_err(usage)?,
            };
            verify_twist(&data, &labels, a.depth, signs).map_err(usage)?
        }
        Check::Specialized => specialized_relations_report(&data).map_err(usage)?,
        Check::Oracle => {
            let start = std::time::Instant::now();
            let mut report = VerificationReport::new("oracle", &data.name).with_labels(&labels).with_depth(a.depth);
            let mut module = HighestWeightModule::new(&data, &labels, lambda0.as_ref(), QParam::generic()).map_err(usage)?;
            for content in contents_to_depth(data.size(), a.depth) {
                let oracle = rank_oracle(&module, &content, a.seed, a.samples).map_err(usage)?;
                let dim = module.dim(&content).map_err(usage)?;
                if !oracle.agrees() || oracle.generic != dim {
                    report.fail(json!({
                        "alpha_coords": content, "gram_rank": oracle.generic,
                        "sampled_ranks": oracle.sampled, "quotient_dim": dim,
                    }));
                    break;
                }
            }
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            report
        }
    };
    Ok(finish(report, a.no_timing))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Catalog { export } => cmd_catalog(export),
        Command::Validate { algebra } => {
            let data = load_algebra(&algebra)?;
            Ok(finish(validate(&data), true))
        }
        Command::Character { algebra, weight, depth, format, cache_dir, column_limit } => {
            cmd_character(algebra, weight, depth, format, cache_dir, column_limit)
        }
        Command::Integrable { algebra, weight } => cmd_integrable(algebra, weight),
        Command::Verify { check, args } => cmd_verify(check, args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
