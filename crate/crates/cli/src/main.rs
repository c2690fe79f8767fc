//! `entropy-lab`: compute entropies and divergences, check continuity bounds,
//! run the randomized property suites and export scan tables.
//!
//! Exit codes: 0 success (or bound not applicable), 1 bound violated or
//! suite found violations, 2 usage, parse or config error, 3 domain error.

mod input;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use entropy_lab::bounds::{
    fano_bound, fannes_bound, pinsker_lower_bound, pinsker_series_bound, renyi_pinsker_bound, upper_bound_thm3,
    yanagi_comparison_bound, BoundReport, Evaluator, Verdict, BOUND_TOL,
};
use entropy_lab::classical::{
    conditional_tsallis_entropy, error_probability, joint_tsallis_entropy, relative_entropy, renyi_entropy,
    renyi_rel_entropy, trace_distance_classical, tsallis_entropy, tsallis_rel_entropy,
};
use entropy_lab::harness::{
    alpha_limit_scan, brute_force_thm3_oracle, default_tau_grid, extremal_thm3_instance, fannes_comparison_scan,
    pinsker_tightness_scan, property, run_properties, thm3_oracle_without_extremes, LimitQuantity, SamplerConfig,
    ScanInput, Table, REGISTRY,
};
use entropy_lab::io::render_f64;
use entropy_lab::operator::trace_distance_quantum;
use entropy_lab::quantum::{
    quantum_relative_entropy, quantum_renyi_entropy, quantum_renyi_rel_entropy, quantum_tsallis_entropy,
    quantum_tsallis_rel_entropy,
};
use entropy_lab::{Error, ExtendedValue, Order};

use input::Input;

#[derive(Parser)]
#[command(name = "entropy-lab", version, about = "Tsallis and Rényi entropies, quantum divergences and their continuity bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one quantity, e.g. `compute tsallis-rel --alpha 2 P.json Q.json`.
    Compute(ComputeArgs),
    /// Evaluate a bound on inputs, or on bare parameters when no inputs are given.
    Check(CheckArgs),
    /// Run the randomized property suites.
    Fuzz(FuzzArgs),
    /// Export a scan table.
    Scan(ScanArgs),
    /// Brute-force maximum of the minimal-probability bound's reduced problem.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Tsallis,
    Renyi,
    TsallisRel,
    RenyiRel,
    Kl,
    TraceDistance,
    JointTsallis,
    ConditionalTsallis,
    ErrorProbability,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ComputeArgs {
    quantity: Quantity,
    /// JSON distribution {"alphabet","probs"}, joint {"alphabet","joint"},
    /// operator {"dim","re","im"}, or a CSV row of probabilities.
    inputs: Vec<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundId {
    Pinsker,
    PinskerSeries,
    RenyiPinsker,
    Thm3Upper,
    Fano,
    Fannes,
    Yanagi,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CheckArgs {
    bound: BoundId,
    inputs: Vec<PathBuf>,
    #[arg(long)]
    alpha: f64,
    /// Trace distance, for bound-only evaluation.
    #[arg(long)]
    tau: Option<f64>,
    /// Common trace of the pair (Pinsker bounds).
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    /// Number of series terms.
    #[arg(long, default_value_t = 4)]
    terms: usize,
    /// Minimal probability on the support of P, for bound-only evaluation.
    #[arg(long)]
    q0: Option<f64>,
    /// Error probability, for bound-only evaluation.
    #[arg(long)]
    pe: Option<f64>,
    /// Alphabet size (Fano) or Hilbert-space dimension (Fannes, Yanagi).
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value_t = BOUND_TOL)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct FuzzArgs {
    /// TOML file with keys seed, dims, alphas, trials, tolerance.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, env = "ENTROPY_LAB_SEED")]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Restrict to these property ids (repeatable).
    #[arg(long = "property")]
    properties: Vec<String>,
    /// Write violation records as CSV.
    #[arg(long)]
    violations: Option<PathBuf>,
    /// Print the property ids and exit.
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanId {
    FannesComparison,
    AlphaLimit,
    PinskerTightness,
}

/// Tables:
///   fannes-comparison: tau,fannes,yanagi,relative_difference
///   alpha-limit:       k,delta,below,above,limit,error,ratio,order
///   pinsker-tightness: tau,bound,min_divergence,ratio
#[derive(Args)]
#[command(verbatim_doc_comment, allow_negative_numbers = true)]
struct ScanArgs {
    scan: ScanId,
    /// Inputs of the alpha-limit scan.
    inputs: Vec<PathBuf>,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Comma-separated τ values; an empty string gives an empty table.
    #[arg(long)]
    tau_grid: Option<String>,
    /// tsallis, renyi, tsallis-rel or renyi-rel.
    #[arg(long, default_value = "tsallis-rel")]
    quantity: String,
    #[arg(long, default_value_t = 1)]
    k_min: u32,
    #[arg(long, default_value_t = 6)]
    k_max: u32,
    /// Points per τ in the pinsker-tightness search.
    #[arg(long, default_value_t = 400)]
    resolution: usize,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct OracleArgs {
    #[arg(long)]
    q0: f64,
    #[arg(long)]
    tau: f64,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 200)]
    steps: usize,
}

/// An error together with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse(_)) { 2 } else { 3 };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Input problems are parse errors whatever the library reported.
fn load_all(paths: &[PathBuf]) -> Result<Vec<Input>, Failure> {
    paths
        .iter()
        .map(|p| input::load(p).map_err(|e| usage(e.to_string())))
        .collect()
}

fn exactly<const N: usize>(inputs: Vec<Input>, what: &str) -> Result<[Input; N], Failure> {
    let n = inputs.len();
    inputs.try_into().map_err(|_| usage(format!("{what} takes {N} input file(s), got {n}")))
}

fn order_of(alpha: Option<f64>) -> Result<Order, Failure> {
    let a = alpha.ok_or_else(|| usage("--alpha is required for this quantity"))?;
    Order::new(a).map_err(|e| usage(e.to_string()))
}

fn compute(args: ComputeArgs) -> Result<u8, Failure> {
    let inputs = load_all(&args.inputs)?;
    let value: ExtendedValue = match args.quantity {
        Quantity::Tsallis | Quantity::Renyi => {
            let o = order_of(args.alpha)?;
            let [x] = exactly(inputs, "this quantity")?;
            let renyi = matches!(args.quantity, Quantity::Renyi);
            let v = match &x {
                Input::Distribution(p) if renyi => renyi_entropy(p, o),
                Input::Distribution(p) => tsallis_entropy(p, o),
                _ if renyi => quantum_renyi_entropy(&x.density().map_err(|e| usage(e.to_string()))?, o),
                _ => quantum_tsallis_entropy(&x.density().map_err(|e| usage(e.to_string()))?, o),
            };
            ExtendedValue::Finite(v)
        }
        Quantity::TsallisRel | Quantity::RenyiRel | Quantity::Kl | Quantity::TraceDistance => {
            let [a, b] = exactly(inputs, "this quantity")?;
            match (&a, &b) {
                (Input::Distribution(p), Input::Distribution(q)) => match args.quantity {
                    Quantity::TsallisRel => tsallis_rel_entropy(&p.to_weights(), &q.to_weights(), order_of(args.alpha)?)?,
                    Quantity::RenyiRel => renyi_rel_entropy(p, q, order_of(args.alpha)?)?,
                    Quantity::Kl => relative_entropy(p, q)?,
                    _ => ExtendedValue::Finite(trace_distance_classical(p, q)?),
                },
                _ => {
                    let rho = a.density().map_err(|e| usage(e.to_string()))?;
                    let sigma = b.density().map_err(|e| usage(e.to_string()))?;
                    match args.quantity {
                        Quantity::TsallisRel => quantum_tsallis_rel_entropy(&rho, &sigma, order_of(args.alpha)?)?,
                        Quantity::RenyiRel => quantum_renyi_rel_entropy(&rho, &sigma, order_of(args.alpha)?)?,
                        Quantity::Kl => quantum_relative_entropy(&rho, &sigma)?,
                        _ => ExtendedValue::Finite(trace_distance_quantum(&rho, &sigma)?),
                    }
                }
            }
        }
        Quantity::JointTsallis | Quantity::ConditionalTsallis | Quantity::ErrorProbability => {
            let [x] = exactly(inputs, "this quantity")?;
            let j = x.joint().map_err(|e| usage(e.to_string()))?;
            ExtendedValue::Finite(match args.quantity {
                Quantity::JointTsallis => joint_tsallis_entropy(j, order_of(args.alpha)?),
                Quantity::ConditionalTsallis => conditional_tsallis_entropy(j, order_of(args.alpha)?),
                _ => error_probability(j),
            })
        }
    };
    println!("{value}");
    Ok(0)
}

fn print_report(r: &BoundReport, format: Format) {
    match format {
        Format::Table => println!("{r}"),
        Format::Csv => println!("{}\n{}", BoundReport::CSV_HEADER, r.to_csv_row()),
        Format::Json => println!("{}", serde_json::to_string_pretty(r).expect("plain data")),
    }
}

fn check(args: CheckArgs) -> Result<u8, Failure> {
    let o = Order::new(args.alpha).map_err(|e| usage(e.to_string()))?;
    if args.inputs.is_empty() {
        return check_bound_only(&args, o);
    }
    let inputs = load_all(&args.inputs)?;
    let eval = Evaluator::default();
    let tol = args.tolerance;
    let bad = |e: Error| usage(e.to_string());
    let report = match args.bound {
        BoundId::Fano => {
            let [x] = exactly(inputs, "fano")?;
            eval.check_fano(x.joint().map_err(bad)?, o, tol)?
        }
        BoundId::Thm3Upper => {
            let [p, q] = exactly(inputs, "thm3-upper")?;
            eval.check_thm3(p.distribution().map_err(bad)?, q.distribution().map_err(bad)?, o, tol)?
        }
        BoundId::Pinsker | BoundId::PinskerSeries => {
            let [a, b] = exactly(inputs, "pinsker")?;
            let (a, b) = (a.positive(args.theta).map_err(bad)?, b.positive(args.theta).map_err(bad)?);
            match args.bound {
                BoundId::Pinsker => eval.check_pinsker(&a, &b, o, tol)?,
                _ => eval.check_pinsker_series(&a, &b, o, args.terms, tol)?,
            }
        }
        BoundId::RenyiPinsker | BoundId::Fannes | BoundId::Yanagi => {
            let [a, b] = exactly(inputs, "this bound")?;
            let (rho, sigma) = (a.density().map_err(bad)?, b.density().map_err(bad)?);
            match args.bound {
                BoundId::RenyiPinsker => eval.check_renyi_pinsker(&rho, &sigma, o, tol)?,
                BoundId::Fannes => eval.check_fannes(&rho, &sigma, o, tol)?,
                _ => eval.check_yanagi(&rho, &sigma, o, tol)?,
            }
        }
    };
    print_report(&report, args.format);
    Ok(if report.verdict == Verdict::Violated { 1 } else { 0 })
}

fn need(value: Option<f64>, flag: &str) -> Result<f64, Failure> {
    value.ok_or_else(|| usage(format!("{flag} is required when no inputs are given")))
}

fn need_dim(value: Option<usize>) -> Result<usize, Failure> {
    value.ok_or_else(|| usage("--dim is required when no inputs are given"))
}

/// Bound value alone. Range restrictions of the Fannes, comparison and
/// minimal-probability bounds are reported as `in_domain: false`.
fn check_bound_only(args: &CheckArgs, o: Order) -> Result<u8, Failure> {
    let mut params: Vec<(&str, f64)> = Vec::new();
    let bound: Result<Option<ExtendedValue>, Error> = match args.bound {
        BoundId::Pinsker | BoundId::PinskerSeries | BoundId::RenyiPinsker => {
            let tau = need(args.tau, "--tau")?;
            params.push(("tau", tau));
            let b = match args.bound {
                BoundId::Pinsker => {
                    params.push(("theta", args.theta));
                    ExtendedValue::Finite(pinsker_lower_bound(args.theta, tau, o)?)
                }
                BoundId::PinskerSeries => {
                    params.extend([("theta", args.theta), ("terms", args.terms as f64)]);
                    ExtendedValue::Finite(pinsker_series_bound(args.theta, tau, o, args.terms)?)
                }
                _ => renyi_pinsker_bound(tau, o)?,
            };
            Ok(Some(b))
        }
        BoundId::Thm3Upper => {
            let (q0, tau) = (need(args.q0, "--q0")?, need(args.tau, "--tau")?);
            params.extend([("q0", q0), ("tau", tau)]);
            if o.above_one() && q0 > 0.0 && tau <= 1.0 - q0 {
                upper_bound_thm3(q0, tau, o).map(|b| Some(ExtendedValue::Finite(b)))
            } else {
                Ok(None)
            }
        }
        BoundId::Fano => {
            let (pe, n) = (need(args.pe, "--pe")?, need_dim(args.dim)?);
            params.extend([("pe", pe), ("n", n as f64)]);
            fano_bound(pe, n, o).map(|b| Some(ExtendedValue::Finite(b)))
        }
        BoundId::Fannes => {
            let (tau, d) = (need(args.tau, "--tau")?, need_dim(args.dim)?);
            params.extend([("tau", tau), ("dim", d as f64)]);
            match fannes_bound(tau, d, o) {
                Ok(b) => Ok(Some(ExtendedValue::Finite(b))),
                Err(Error::Domain(msg)) if d >= 2 => {
                    eprintln!("{msg}");
                    Ok(None)
                }
                Err(e) => Err(e),
            }
        }
        BoundId::Yanagi => {
            let (tau, d) = (need(args.tau, "--tau")?, need_dim(args.dim)?);
            params.extend([("tau", tau), ("dim", d as f64)]);
            if o.below_one() && !o.near_one() {
                yanagi_comparison_bound(tau, d, o).map(|b| b.map(ExtendedValue::Finite))
            } else {
                Ok(None)
            }
        }
    };
    let bound = bound?;
    let kind = args.bound.to_possible_value().expect("no skipped variants").get_name().to_string();
    let shown = bound.map_or("n/a".to_string(), |b| b.to_string());
    let in_domain = bound.is_some();
    match args.format {
        Format::Table => {
            println!("kind: {kind}");
            println!("alpha: {}", render_f64(o.alpha()));
            for (k, v) in &params {
                println!("{k}: {}", render_f64(*v));
            }
            println!("bound: {shown}");
            println!("in_domain: {in_domain}");
        }
        Format::Csv => {
            let p: Vec<String> = params.iter().map(|(k, v)| format!("{k}={}", render_f64(*v))).collect();
            println!("{}", BoundReport::CSV_HEADER);
            println!("{kind},{},{},,{shown},,{in_domain}", render_f64(o.alpha()), p.join(";"));
        }
        Format::Json => {
            let p: serde_json::Map<String, serde_json::Value> = params.iter().map(|(k, v)| (k.to_string(), (*v).into())).collect();
            let v = serde_json::json!({ "kind": kind, "alpha": o.alpha(), "params": p, "bound": bound, "in_domain": in_domain });
            println!("{}", serde_json::to_string_pretty(&v).expect("plain data"));
        }
    }
    Ok(0)
}

fn fuzz(args: FuzzArgs) -> Result<u8, Failure> {
    if args.list {
        for p in REGISTRY {
            println!("{}\t{}", p.id, p.summary);
        }
        return Ok(0);
    }
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            SamplerConfig::from_toml_str(&text)?
        }
        None => SamplerConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(t) = args.trials {
        cfg.trials_per_cell = t;
    }
    if let Some(d) = args.dims {
        cfg.dim_list = d;
    }
    if let Some(a) = args.alphas {
        cfg.alpha_grid = a;
    }
    if let Some(t) = args.tolerance {
        cfg.tolerance = t;
    }
    cfg.validate()?;
    let props = if args.properties.is_empty() {
        REGISTRY.iter().collect::<Vec<_>>()
    } else {
        args.properties
            .iter()
            .map(|id| property(id).ok_or_else(|| usage(format!("unknown property '{id}' (see fuzz --list)"))))
            .collect::<Result<Vec<_>, _>>()?
    };
    let report = run_properties(&cfg, &props, &Evaluator::default())?;
    match args.format {
        Format::Json => println!("{}", report.to_json()),
        _ => print!("{}", report.summary_csv()),
    }
    if let Some(path) = &args.violations {
        write_file(path, &report.violations_csv())?;
    }
    let n = report.total_violations();
    if n > 0 {
        eprintln!("{n} violations");
        Ok(1)
    } else {
        Ok(0)
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure { code: 3, message: format!("{}: {e}", path.display()) })
}

fn tau_grid(spec: &Option<String>) -> Result<Vec<f64>, Failure> {
    match spec {
        None => Ok(default_tau_grid()),
        Some(s) => s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>().map_err(|_| usage(format!("bad τ value {t:?}"))))
            .collect(),
    }
}

fn scan(args: ScanArgs) -> Result<u8, Failure> {
    let table: Table = match args.scan {
        ScanId::FannesComparison => {
            let o = Order::new(args.alpha).map_err(|e| usage(e.to_string()))?;
            fannes_comparison_scan(args.dim, o, &tau_grid(&args.tau_grid)?)?
        }
        ScanId::PinskerTightness => {
            let o = Order::new(args.alpha).map_err(|e| usage(e.to_string()))?;
            pinsker_tightness_scan(o, &tau_grid(&args.tau_grid)?, args.resolution)?
        }
        ScanId::AlphaLimit => {
            let q: LimitQuantity = args.quantity.parse()?;
            let inputs = load_all(&args.inputs)?;
            let want = if q.is_relative() { 2 } else { 1 };
            if inputs.len() != want {
                return Err(usage(format!("alpha-limit {} takes {want} input file(s), got {}", args.quantity, inputs.len())));
            }
            let bad = |e: Error| usage(e.to_string());
            let scan_input = match &inputs[0] {
                Input::Distribution(p) => {
                    let q = inputs.get(1).map(|x| x.distribution().cloned()).transpose().map_err(bad)?;
                    ScanInput::Classical(p.clone(), q)
                }
                first => {
                    let s = inputs.get(1).map(|x| x.density()).transpose().map_err(bad)?;
                    ScanInput::Quantum(first.density().map_err(bad)?, s)
                }
            };
            if args.k_min > args.k_max {
                return Err(usage("--k-min must not exceed --k-max"));
            }
            alpha_limit_scan(q, &scan_input, args.k_min..=args.k_max)?
        }
    };
    let text = match args.format {
        Format::Json => table.to_json() + "\n",
        _ => table.to_csv(),
    };
    match &args.output {
        Some(path) => write_file(path, &text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure { code: 3, message: e.to_string() })?;
        }
    }
    Ok(0)
}

fn oracle(args: OracleArgs) -> Result<u8, Failure> {
    let o = Order::new(args.alpha).map_err(|e| usage(e.to_string()))?;
    let value = brute_force_thm3_oracle(args.q0, args.tau, o, args.n, args.steps)?;
    let interior = thm3_oracle_without_extremes(args.q0, args.tau, o, args.n, args.steps)?;
    let bound = upper_bound_thm3(args.q0, args.tau, o)?;
    let e = extremal_thm3_instance(args.q0, args.tau, o, args.n)?;
    println!("oracle: {}", render_f64(value));
    println!("oracle_without_extremes: {}", render_f64(interior));
    println!("bound: {}", render_f64(bound));
    println!("gap: {}", render_f64(bound - value));
    println!("extremal_p: {}", e.p_extremal.to_csv_row());
    println!("extremal_q: {}", e.q_base.to_csv_row());
    println!("extremal_measured: {}", render_f64(e.measured));
    println!("extremal_attains: {}", e.attains);
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Check(a) => check(a),
        Command::Fuzz(a) => fuzz(a),
        Command::Scan(a) => scan(a),
        Command::Oracle(a) => oracle(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
