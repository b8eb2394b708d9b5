//! `randset`: mass-function generation, transforms, combination, distances,
//! conflict degrees and the experiment harness over the JSON wire formats.
//!
//! Exit codes: 0 success, 1 domain error (validation, frame mismatch),
//! 2 usage error, 3 assertion failure in a suite.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::OnceLock;

use clap::{Args, Parser, Subcommand, ValueEnum};

use randset_core::alpha::{from_alpha, to_alpha, Alpha, AlphaFamily};
use randset_core::conflict::{self, DegreeSpec};
use randset_core::error::Error;
use randset_core::experiments::{
    conflict_property_suite, counterexample_suite, exhaustive_check, lipschitz_claimed,
    run_alpha_consistency, run_consistency_table, AlphaConsistencyConfig, ConflictSuiteConfig,
    ExhaustiveCorpus, ExperimentConfig, Rule,
};
use randset_core::frame::Frame;
use randset_core::fusion::CombineMode;
use randset_core::io::{MassDocument, ParsedFamily, SetFunctionDocument};
use randset_core::mass::MassFunction;
use randset_core::metrics::{distance, DistanceFamily, DistanceSpec, NormOrder};
use randset_core::randgen::{make_rng, random_mass, GenKind, GenSpec, RNG_ALGORITHM};
use randset_core::transforms::{mass_of, to_set_function, SetFamily};

type Mass = MassFunction<f64>;

fn version_string() -> &'static str {
    static VERSION: OnceLock<String> = OnceLock::new();
    VERSION.get_or_init(|| format!("{} (rng: {})", env!("CARGO_PKG_VERSION"), RNG_ALGORITHM))
}

#[derive(Parser)]
#[command(name = "randset", version = version_string(), about = "Belief-function / finite random-set toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw seeded random mass functions and emit them as a JSON array
    Generate(GenerateArgs),
    /// Map a mass function to a set function, or back with --inverse
    Transform(TransformArgs),
    /// Combine mass functions under a combination rule
    Combine(CombineArgs),
    /// Distance between two mass functions
    Distance(DistanceArgs),
    /// Conflict degrees and consistency measures
    Conflict(ConflictArgs),
    /// Monte Carlo and exhaustive verification harness
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Categorical,
    Simple,
    General,
}

#[derive(Args)]
struct GenerateArgs {
    /// Generator kind
    #[arg(long, value_enum, default_value = "simple")]
    kind: KindArg,
    /// Frame size; labels are a, b, c, ...
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Cap on the number of focal sets (general kind only)
    #[arg(long)]
    max_focal: Option<usize>,
    /// Admit the empty set as a focal candidate
    #[arg(long, default_value_t = false)]
    allow_empty_focal: bool,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Human-readable table instead of JSON
    #[arg(long, default_value_t = false)]
    pretty: bool,
}

#[derive(Args)]
struct TransformArgs {
    /// Target family: q, pl, bel, b, aq or ab
    #[arg(long, default_value = "q")]
    family: String,
    /// Interpolation parameter for the aq/ab families
    #[arg(long)]
    alpha: Option<f64>,
    /// Input is a set-function document; recover the mass function
    #[arg(long, default_value_t = false)]
    inverse: bool,
    /// Input path or - for stdin
    input: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Rescale inputs whose mass total is off by at most 1e-3
    #[arg(long, default_value_t = false)]
    renormalize: bool,
    #[arg(long, default_value_t = false)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Conj,
    Disj,
    Aconj,
    Adisj,
}

#[derive(Args)]
struct CombineArgs {
    #[arg(long, value_enum, default_value = "conj")]
    rule: RuleArg,
    /// Interpolation parameter for the aconj/adisj rules
    #[arg(long)]
    alpha: Option<f64>,
    /// Two or more mass-function documents (path or -)
    #[arg(num_args = 2.., required = true)]
    inputs: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = false)]
    renormalize: bool,
    #[arg(long, default_value_t = false)]
    pretty: bool,
}

#[derive(Args)]
struct DistanceArgs {
    /// q, pl, bel, b, spe or jousselme
    #[arg(long)]
    family: String,
    /// Norm order: a positive integer or "inf" (ignored for jousselme)
    #[arg(long, default_value = "2")]
    k: String,
    file1: String,
    file2: String,
    #[arg(long, default_value_t = false)]
    renormalize: bool,
}

#[derive(Args)]
struct ConflictArgs {
    /// kappa, K, phi, Phi or C
    #[arg(long)]
    degree: String,
    /// Distance family for degree C
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value = "inf")]
    k: String,
    file1: String,
    file2: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = false)]
    renormalize: bool,
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Consistency rates for a batch of distances under one rule
    Table(TableArgs),
    /// Rebuild the worked counter-examples and verify every pinned value
    Counterexamples,
    /// Property checks for the conflict degree spanned by a distance
    Conflict(ExperimentConflictArgs),
    /// Exhaustive small-frame check of the non-expansiveness inequality
    Exhaustive(ExhaustiveArgs),
    /// Non-expansiveness of the interpolated rules for α-set-function norms
    Alpha(AlphaArgs),
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum, default_value = "conj")]
    rule: RuleArg,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Frame sizes drawn per trial, e.g. 3,4,5,6
    #[arg(long, value_delimiter = ',', default_value = "3,4,5,6")]
    n_mix: Vec<u8>,
    #[arg(long, value_enum, default_value = "simple")]
    generator: KindArg,
    #[arg(long)]
    max_focal: Option<usize>,
    #[arg(long, default_value_t = 1e-12)]
    slack: f64,
    /// Worker threads for the trial fan-out
    #[arg(long)]
    jobs: Option<usize>,
    /// CSV output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the full JSON report
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also write a gnuplot-ready data file
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentConflictArgs {
    #[arg(long)]
    family: String,
    #[arg(long, default_value = "inf")]
    k: String,
    #[arg(long, default_value_t = 2_000)]
    trials: u64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    n: u8,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusArg {
    Categorical,
    Grid,
}

#[derive(Args)]
struct ExhaustiveArgs {
    #[arg(long)]
    family: String,
    #[arg(long, default_value = "1")]
    k: String,
    #[arg(long, value_enum, default_value = "conj")]
    rule: RuleArg,
    #[arg(long, value_enum, default_value = "categorical")]
    corpus: CorpusArg,
    /// Weight grid step for the grid corpus
    #[arg(long, default_value_t = 0.25)]
    step: f64,
    #[arg(long, default_value_t = 3)]
    n: u8,
}

#[derive(Args)]
struct AlphaArgs {
    /// conj or disj side of the interpolated family
    #[arg(long, value_enum, default_value = "conj")]
    mode: RuleArg,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 1_000)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn read_mass(path: &str, renormalize: bool) -> Result<Mass, Error> {
    let mut doc = MassDocument::from_json(&read_input(path)?)?;
    if renormalize {
        doc = doc.renormalized(1e-3)?;
    }
    doc.to_mass()
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

/// Human-readable mass table using the first-element-leftmost bit strings.
fn pretty_mass(m: &Mass) -> String {
    let frame = m.frame();
    let mut out = format!("frame: {} (n={})\n", frame.labels().join(" "), frame.len());
    out.push_str("bits");
    out.push_str(&" ".repeat(frame.len().saturating_sub(3)));
    out.push_str(" subset  mass\n");
    for s in frame.subsets() {
        let v = m.value(s);
        if v != 0.0 {
            out.push_str(&format!(
                "{}  {{{}}}  {}\n",
                frame.subset_bits(s),
                frame.subset_labels(s).join(","),
                v
            ));
        }
    }
    out
}

fn gen_spec(kind: KindArg, allow_empty_focal: bool, max_focal: Option<usize>) -> GenSpec {
    GenSpec {
        kind: match kind {
            KindArg::Categorical => GenKind::Categorical,
            KindArg::Simple => GenKind::Simple,
            KindArg::General => GenKind::General,
        },
        allow_empty_focal,
        max_focal,
    }
}

fn rule_of(rule: RuleArg, alpha: Option<f64>) -> Result<Rule, Error> {
    match (rule, alpha) {
        (RuleArg::Conj, None) => Ok(Rule::Conjunctive),
        (RuleArg::Disj, None) => Ok(Rule::Disjunctive),
        (RuleArg::Aconj, Some(a)) => Ok(Rule::AlphaConjunctive(a)),
        (RuleArg::Adisj, Some(a)) => Ok(Rule::AlphaDisjunctive(a)),
        (RuleArg::Aconj | RuleArg::Adisj, None) => Err(Error::InvalidSpec(
            "the interpolated rules need --alpha".into(),
        )),
        (_, Some(_)) => Err(Error::InvalidSpec(
            "--alpha only applies to aconj/adisj".into(),
        )),
    }
}

fn distance_spec(family: &str, k: &str) -> Result<DistanceSpec, Error> {
    let family = DistanceFamily::parse(family)?;
    let k = match family {
        DistanceFamily::Jousselme => NormOrder::Finite(2),
        _ => NormOrder::parse(k)?,
    };
    Ok(DistanceSpec::new(family, k))
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Generate(args) => {
            let frame = Frame::letters(args.n)?;
            let spec = gen_spec(args.kind, args.allow_empty_focal, args.max_focal);
            let mut rng = make_rng(args.seed);
            let mut docs = Vec::with_capacity(args.count);
            let mut pretty = String::new();
            for _ in 0..args.count {
                let m: Mass = random_mass(&frame, &mut rng, &spec)?;
                if args.pretty {
                    pretty.push_str(&pretty_mass(&m));
                    pretty.push('\n');
                }
                docs.push(MassDocument::from_mass(&m));
            }
            if args.pretty {
                emit(args.out.as_deref(), &pretty)?;
            } else {
                let json = serde_json::to_string_pretty(&docs)?;
                emit(args.out.as_deref(), &format!("{json}\n"))?;
            }
            Ok(0)
        }
        Command::Transform(args) => {
            if args.inverse {
                let doc = SetFunctionDocument::from_json(&read_input(&args.input)?)?;
                let m = match doc.family_kind()? {
                    ParsedFamily::Plain(_) => mass_of(&doc.to_set_function::<f64>()?)?,
                    ParsedFamily::Alpha(_) => from_alpha(&doc.to_alpha_set_function::<f64>()?)?,
                };
                let content = if args.pretty {
                    pretty_mass(&m)
                } else {
                    format!("{}\n", MassDocument::from_mass(&m).to_json())
                };
                emit(args.out.as_deref(), &content)?;
                return Ok(0);
            }
            let m = read_mass(&args.input, args.renormalize)?;
            let doc = match (args.family.as_str(), args.alpha) {
                ("aq", Some(a)) => SetFunctionDocument::from_alpha_set_function(&to_alpha(
                    &m,
                    Alpha::new(a)?,
                    AlphaFamily::Q,
                )),
                ("ab", Some(a)) => SetFunctionDocument::from_alpha_set_function(&to_alpha(
                    &m,
                    Alpha::new(a)?,
                    AlphaFamily::B,
                )),
                ("aq" | "ab", None) => {
                    return Err(Error::InvalidSpec("families aq/ab need --alpha".into()))
                }
                (name, None) => {
                    let family = match name {
                        "bel" => SetFamily::Bel,
                        "pl" => SetFamily::Pl,
                        "q" => SetFamily::Q,
                        "b" => SetFamily::B,
                        other => return Err(Error::UnsupportedFamily(other.to_string())),
                    };
                    SetFunctionDocument::from_set_function(&to_set_function(&m, family))
                }
                (_, Some(_)) => {
                    return Err(Error::InvalidSpec("--alpha only applies to aq/ab".into()))
                }
            };
            emit(args.out.as_deref(), &format!("{}\n", doc.to_json()))?;
            Ok(0)
        }
        Command::Combine(args) => {
            let rule = rule_of(args.rule, args.alpha)?;
            let masses: Vec<Mass> = args
                .inputs
                .iter()
                .map(|p| read_mass(p, args.renormalize))
                .collect::<Result<_, _>>()?;
            let mut acc = masses[0].clone();
            for m in &masses[1..] {
                acc = rule.combine(&acc, m)?;
            }
            let content = if args.pretty {
                pretty_mass(&acc)
            } else {
                format!("{}\n", MassDocument::from_mass(&acc).to_json())
            };
            emit(args.out.as_deref(), &content)?;
            Ok(0)
        }
        Command::Distance(args) => {
            let spec = distance_spec(&args.family, &args.k)?;
            let m1 = read_mass(&args.file1, args.renormalize)?;
            let m2 = read_mass(&args.file2, args.renormalize)?;
            let d = distance(&m1, &m2, &spec)?;
            println!("{d}");
            Ok(0)
        }
        Command::Conflict(args) => {
            let degree = match args.degree.as_str() {
                "kappa" => DegreeSpec::Kappa,
                "K" => DegreeSpec::Strong,
                "phi" => DegreeSpec::Phi,
                "Phi" => DegreeSpec::StrongPhi,
                "C" => {
                    let family = args
                        .family
                        .as_deref()
                        .ok_or_else(|| Error::InvalidSpec("degree C needs --family".into()))?;
                    DegreeSpec::Distance {
                        spec: distance_spec(family, &args.k)?,
                    }
                }
                other => {
                    return Err(Error::InvalidSpec(format!(
                        "unknown degree `{other}` (expected kappa, K, phi, Phi or C)"
                    )))
                }
            };
            let m1 = read_mass(&args.file1, args.renormalize)?;
            let m2 = match &args.file2 {
                Some(path) => Some(read_mass(path, args.renormalize)?),
                None => None,
            };
            let mut inputs = vec![args.file1.clone()];
            inputs.extend(args.file2.iter().cloned());
            let report = conflict::evaluate(degree, &m1, m2.as_ref(), inputs)?;
            let json = serde_json::to_string_pretty(&report)?;
            emit(args.out.as_deref(), &format!("{json}\n"))?;
            Ok(0)
        }
        Command::Experiment(cmd) => run_experiment(cmd),
    }
}

fn run_experiment(cmd: ExperimentCommand) -> Result<u8, Error> {
    match cmd {
        ExperimentCommand::Table(args) => {
            let cfg = ExperimentConfig {
                rule: rule_of(args.rule, args.alpha)?,
                trials: args.trials,
                seed: args.seed,
                n_mix: args.n_mix,
                distances: ExperimentConfig::table_distances(),
                generator: gen_spec(args.generator, false, args.max_focal),
                slack: args.slack,
                jobs: args.jobs,
            };
            let report = run_consistency_table::<f64>(&cfg)?;
            if let Some(path) = &args.json {
                fs::write(path, report.to_json())?;
            }
            if let Some(path) = &args.gnuplot {
                fs::write(path, report.to_gnuplot())?;
            }
            emit(args.out.as_deref(), &report.to_csv())?;
            // violations of claimed pairs are hard failures
            let broken = report
                .rows
                .iter()
                .any(|row| lipschitz_claimed(&row.spec, cfg.rule) && row.successes != row.trials);
            Ok(if broken { 3 } else { 0 })
        }
        ExperimentCommand::Counterexamples => {
            let report = counterexample_suite::<f64>()?;
            print!("{}", report.to_text());
            Ok(if report.passed() { 0 } else { 3 })
        }
        ExperimentCommand::Conflict(args) => {
            let spec = distance_spec(&args.family, &args.k)?;
            let cfg = ConflictSuiteConfig {
                trials: args.trials,
                seed: args.seed,
                n: args.n,
                ..Default::default()
            };
            let report = conflict_property_suite::<f64>(&spec, &cfg)?;
            print!("{}", report.to_text());
            if let Some(path) = &args.json {
                fs::write(path, report.to_json())?;
            }
            Ok(if report.passed() { 0 } else { 3 })
        }
        ExperimentCommand::Exhaustive(args) => {
            let spec = distance_spec(&args.family, &args.k)?;
            let rule = rule_of(args.rule, None)?;
            let corpus = match args.corpus {
                CorpusArg::Categorical => ExhaustiveCorpus::CategoricalTriplets,
                CorpusArg::Grid => ExhaustiveCorpus::SimpleGrid { step: args.step },
            };
            let report = exhaustive_check::<f64>(&spec, rule, corpus, args.n)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            let hard_failure = report.violations > 0 && lipschitz_claimed(&spec, rule);
            Ok(if hard_failure { 3 } else { 0 })
        }
        ExperimentCommand::Alpha(args) => {
            let mode = match args.mode {
                RuleArg::Conj | RuleArg::Aconj => CombineMode::Intersection,
                RuleArg::Disj | RuleArg::Adisj => CombineMode::Union,
            };
            let mut cfg = AlphaConsistencyConfig::new(mode, args.alpha, args.seed);
            cfg.trials = args.trials;
            let report = run_alpha_consistency::<f64>(&cfg)?;
            emit(args.out.as_deref(), &report.to_csv())?;
            let broken = report.rows.iter().any(|row| row.successes != row.trials);
            Ok(if broken { 3 } else { 0 })
        }
    }
}
