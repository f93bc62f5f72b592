//! `flab`: construct finite p-groups, inspect their structure, compute
//! fusion classes, classify transitive linear actions, and run the
//! verification suites.
//!
//! Exit codes: 0 success (or suite pass), 1 suite failure, 2 usage or input
//! error, 3 enumeration cap exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flab_core::construct;
use flab_core::error::Error;
use flab_core::fusion;
use flab_core::group::{FiniteGroup, SubgroupHandle, DEFAULT_CAP};
use flab_core::jsonio;
use flab_core::linear;
use flab_core::report::CheckReport;
use flab_core::structure::{self, ExponentMode};
use flab_core::suites;
use flab_core::sylow;

#[derive(Parser)]
#[command(name = "flab", version, about = "Finite p-group and fusion toolkit")]
struct Cli {
    /// Element-store bound. Overrides the FLAB_CAP environment variable;
    /// defaults to 5000000.
    #[arg(long, global = true)]
    cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named group and print its JSON description.
    Construct {
        /// Write the JSON to a file instead of stdout.
        #[arg(long, global = true)]
        out: Option<std::path::PathBuf>,
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Print a structural fact about a group.
    Inspect {
        /// Group JSON file.
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_enum)]
        what: InspectWhat,
    },
    /// Fusion report for a subgroup inside an ambient group.
    Fusion(FusionArgs),
    /// Signature-based classification of a matrix group acting on nonzero
    /// vectors over a prime field.
    Classify {
        /// Group JSON file (matrix kind).
        #[arg(long)]
        group: PathBuf,
    },
    /// Run a verification suite and print its report.
    Check(CheckArgs),
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Cyclic group of order p^r.
    Cyclic {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Elementary abelian group of rank r.
    ElementaryAbelian {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
    },
    /// Iterated wreath product of C_p, `depth` levels deep. With --r the
    /// tower starts from the cyclic base C_{p^r} instead of C_p.
    Wreath {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Sylow p-subgroup of the symmetric group S_n.
    SylowSymmetric {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Extraspecial group of order p^3 and exponent p (p odd).
    Extraspecial {
        #[arg(long)]
        p: u64,
    },
    /// Monomial Sylow p-subgroup of SL_p(q), for odd p dividing q - 1.
    MonomialSylow {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Direct product of the groups in the given JSON files.
    DirectProduct {
        #[arg(long, value_delimiter = ',', required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Wreath product (input group) wr C_p in the imprimitive action.
    WreathOf {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// GF(p)^n extended by the matrices in the given group file, as
    /// permutations of the vectors.
    Semidirect {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mats: PathBuf,
    },
    /// The quaternion group of order 8 as matrices in SL_2(3).
    Q8Matrices,
    /// Symmetric group S_n in its natural action.
    Symmetric {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InspectWhat {
    Order,
    Exponent,
    Center,
    Derived,
    Frattini,
    Classes,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("subject").required(true).args(["group", "sylow"]))]
struct FusionArgs {
    /// Ambient group JSON file.
    #[arg(long)]
    ambient: PathBuf,
    /// Subgroup JSON file; its generators must lie in the ambient group.
    #[arg(long)]
    group: Option<PathBuf>,
    /// Take the Sylow subgroup of the ambient group for this prime.
    #[arg(long)]
    sylow: Option<u64>,
    /// Seed for the Sylow search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    #[value(name = "prop2_1")]
    Prop21,
    #[value(name = "prop2_3")]
    Prop23,
    #[value(name = "lemma5_1")]
    Lemma51,
    Symmetric,
    #[value(name = "fusion_examples")]
    FusionExamples,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    suite: SuiteName,
    #[arg(long, default_value_t = 3)]
    p: u64,
    /// Prime power for the monomial suite (required there).
    #[arg(long)]
    q: Option<u64>,
    /// Comma-separated n values for the symmetric suite.
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
    /// Matrix group JSON whose generators span the six-dimensional
    /// SL_2(13) module over GF(3).
    #[arg(long)]
    sl213_gens: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = match resolve_cap(cli.cap) {
        Ok(cap) => cap,
        Err(message) => {
            eprintln!("flab: {message}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, cap) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("flab: {err}");
            match err {
                Error::CapExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn resolve_cap(flag: Option<u64>) -> Result<u64, String> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("FLAB_CAP") {
        Ok(raw) => raw
            .parse::<u64>()
            .map_err(|_| format!("FLAB_CAP must be a nonnegative integer, got {raw:?}")),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn load_group(path: &Path, cap: u64) -> Result<FiniteGroup, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput {
        path: path.display().to_string(),
        message: format!("cannot read file: {e}"),
    })?;
    jsonio::parse_group(&text, cap)
}

/// Write to stdout, tolerating a closed pipe (e.g. `flab ... | head`).
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn print_value(value: &Value) {
    emit(&serde_json::to_string_pretty(value).expect("value serializes"));
    emit("\n");
}

fn run(command: Command, cap: u64) -> Result<ExitCode, Error> {
    match command {
        Command::Construct { out, what } => {
            let group = build(what, cap)?;
            let value = jsonio::emit_group(&group);
            match out {
                Some(path) => {
                    let mut text =
                        serde_json::to_string_pretty(&value).expect("value serializes");
                    text.push('\n');
                    std::fs::write(&path, text).map_err(|e| Error::InvalidInput {
                        path: path.display().to_string(),
                        message: format!("cannot write output file: {e}"),
                    })?;
                }
                None => print_value(&value),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Inspect { group, what } => {
            let group = load_group(&group, cap)?;
            print_value(&inspect(&group, what)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Fusion(args) => {
            let ambient = load_group(&args.ambient, cap)?;
            let handle = match (&args.group, args.sylow) {
                (Some(path), None) => {
                    let sub = load_group(path, cap)?;
                    SubgroupHandle::new(&ambient, sub.generators().to_vec())?
                }
                (None, Some(p)) => sylow::sylow_p_seeded(&ambient, p, args.seed)?.subgroup,
                _ => unreachable!("clap enforces exactly one of --group/--sylow"),
            };
            let report = fusion::is_transitive_fusion(&handle)?;
            print_value(&serde_json::to_value(&report).expect("report serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { group } => {
            let group = load_group(&group, cap)?;
            let verdict = linear::hering_classify(&group)?;
            print_value(&serde_json::to_value(&verdict).expect("verdict serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Check(args) => {
            let report = run_suite(&args, cap)?;
            let rendered = match args.format {
                Format::Text => report.render_text(),
                Format::Json => report.to_json_string(),
            };
            match &args.out {
                Some(path) => std::fs::write(path, rendered).map_err(|e| {
                    Error::InvalidInput {
                        path: path.display().to_string(),
                        message: format!("cannot write report: {e}"),
                    }
                })?,
                None => emit(&rendered),
            }
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn build(what: ConstructCmd, cap: u64) -> Result<FiniteGroup, Error> {
    match what {
        ConstructCmd::Cyclic { p, r } => {
            let order = checked_power(p, r)?;
            construct::cyclic(order, cap)
        }
        ConstructCmd::ElementaryAbelian { p, r } => {
            construct::elementary_abelian(p, r as usize, cap)
        }
        ConstructCmd::Wreath { p, depth, r } => match r {
            None => construct::iterated_wreath(p, depth, cap),
            Some(r) => {
                let mut group = construct::cyclic(checked_power(p, r)?, cap)?;
                for _ in 0..depth {
                    group = construct::wreath_cyclic(&group, p, cap)?;
                }
                Ok(group)
            }
        },
        ConstructCmd::SylowSymmetric { n, p } => construct::sylow_symmetric(n, p, cap),
        ConstructCmd::Extraspecial { p } => construct::extraspecial_p3(p, cap),
        ConstructCmd::MonomialSylow { p, q } => construct::monomial_sylow_slp(p, q, cap),
        ConstructCmd::DirectProduct { inputs } => {
            let mut parts = Vec::with_capacity(inputs.len());
            for path in &inputs {
                parts.push(load_group(path, cap)?);
            }
            construct::direct_product(&parts, cap)
        }
        ConstructCmd::WreathOf { input, p } => {
            let base = load_group(&input, cap)?;
            construct::wreath_cyclic(&base, p, cap)
        }
        ConstructCmd::Semidirect { p, n, mats } => {
            let text = std::fs::read_to_string(&mats).map_err(|e| Error::InvalidInput {
                path: mats.display().to_string(),
                message: format!("cannot read file: {e}"),
            })?;
            let mats = jsonio::parse_matrix_generators(&text, cap)?;
            construct::semidirect_vector(p, n, &mats, cap)
        }
        ConstructCmd::Q8Matrices => {
            let (x, y) = construct::q8_generators_sl2_3()?;
            flab_core::group::make_group(
                vec![
                    flab_core::element::GroupElement::Matrix(x),
                    flab_core::element::GroupElement::Matrix(y),
                ],
                cap,
            )
        }
        ConstructCmd::Symmetric { n } => construct::symmetric(n, cap),
    }
}

fn checked_power(p: u64, r: u32) -> Result<usize, Error> {
    let value = (p as u128).checked_pow(r).unwrap_or(u128::MAX);
    if value > construct::MAX_PERM_POINTS as u128 {
        return Err(Error::InvalidInput {
            path: "r".into(),
            message: format!("p^r = {value} exceeds the permutation degree bound"),
        });
    }
    Ok(value as usize)
}

fn subgroup_facts(handle: &SubgroupHandle) -> Result<Value, Error> {
    let invariants = if handle.group().is_abelian() {
        Some(flab_core::decompose::abelian_invariants(handle.group())?)
    } else {
        None
    };
    Ok(json!({ "order": handle.order()?, "abelian_invariants": invariants }))
}

fn inspect(group: &FiniteGroup, what: InspectWhat) -> Result<Value, Error> {
    match what {
        InspectWhat::Order => Ok(json!({ "order": group.order()? })),
        InspectWhat::Exponent => {
            let e = structure::exponent(group, ExponentMode::Full)?;
            Ok(json!({ "exponent": e.value, "exact": e.exact }))
        }
        InspectWhat::Center => subgroup_facts(&structure::center(group)?),
        InspectWhat::Derived => subgroup_facts(&structure::derived_subgroup(group)?),
        InspectWhat::Frattini => {
            let p = fusion::defining_prime(group.order()?)?;
            subgroup_facts(&structure::frattini_pgroup(group, p)?)
        }
        InspectWhat::Classes => {
            let classes = group.conjugacy_classes()?;
            let sizes: Vec<u64> = classes.sizes();
            Ok(json!({ "count": sizes.len(), "sizes": sizes }))
        }
    }
}

fn run_suite(args: &CheckArgs, cap: u64) -> Result<CheckReport, Error> {
    match args.suite {
        SuiteName::Prop21 => {
            let mats = match &args.sl213_gens {
                None => None,
                Some(path) => {
                    let text =
                        std::fs::read_to_string(path).map_err(|e| Error::InvalidInput {
                            path: path.display().to_string(),
                            message: format!("cannot read file: {e}"),
                        })?;
                    Some(jsonio::parse_matrix_generators(&text, cap)?)
                }
            };
            suites::suite_prop2_1(args.p, mats.as_deref(), cap, args.seed)
        }
        SuiteName::Prop23 => suites::suite_prop2_3(args.p, cap, args.seed),
        SuiteName::Lemma51 => {
            let q = args.q.ok_or_else(|| Error::InvalidInput {
                path: "--q".into(),
                message: "the monomial suite needs a prime power q".into(),
            })?;
            suites::suite_lemma5_1(args.p, q, cap, args.seed)
        }
        SuiteName::Symmetric => {
            let default: Vec<usize> = (3..=12).collect();
            let n_list = args.n_list.clone().unwrap_or(default);
            suites::suite_symmetric(&n_list, args.p, cap, args.seed)
        }
        SuiteName::FusionExamples => suites::suite_fusion_examples(cap, args.seed),
    }
}
