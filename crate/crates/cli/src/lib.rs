//! `cebit` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse error, 3 numeric or
//! validation failure. Results go to the output stream, diagnostics to the
//! error stream.

pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use cebit_core::compiler::{
    compile_circuit, decompose_multiport, decompose_su2_mz, decompose_su2_waveplates, max_cebits,
    mz_error, resource_report, waveplate_error, ResourceReport,
};
use cebit_core::dsl::{parse_source, to_circuit, ParseError};
use cebit_core::linalg::{self, Matrix, Unitary2, C64};
use cebit_core::scenarios::{
    error_correction_round, ghz_experiment, simulate_circuit, teleport, ErrorCorrectionReport,
    FlipTarget, PauliBasis, TeleportOutcome,
};
use cebit_core::{BasisLabel, CebitError, GateCircuit};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use output::{complex, fmt, jones, netlist_text, num, num_exact, round_tree};

/// Input files larger than this are rejected.
pub const MAX_INPUT_BYTES: u64 = 1 << 20;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cebit", version, about = "Compile and simulate cebit circuits as linear optics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower a .cbt program to an optical netlist.
    Compile {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Netlist)]
        emit: Emit,
    },
    /// Simulate a .cbt program from |0…0) and report detector signals.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Report::Intensities)]
        report: Report,
    },
    /// Run one of the worked experiments.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
    /// Beam, detector and power counts for a register size or beam budget.
    Resources(ResourcesArgs),
    /// Synthesize optics for a unitary read from a JSON matrix file.
    Decompose {
        #[arg(long, value_enum)]
        method: Method,
        matrix: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Netlist,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Report {
    Intensities,
    Expectations,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Waveplates,
    Mz,
    Multiport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ErrorArg {
    None,
    Pol,
    Mid,
    Msc,
}

impl From<ErrorArg> for FlipTarget {
    fn from(e: ErrorArg) -> Self {
        match e {
            ErrorArg::None => FlipTarget::None,
            ErrorArg::Pol => FlipTarget::Pol,
            ErrorArg::Mid => FlipTarget::Mid,
            ErrorArg::Msc => FlipTarget::Msc,
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ResourcesArgs {
    #[arg(long)]
    pub cebits: Option<usize>,
    /// Beam budget, e.g. 1e64.
    #[arg(long)]
    pub beams: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Run K random inputs instead of the given one.
    #[arg(long, value_name = "K")]
    pub sweep: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Demo {
    /// GHZ correlations for one x/y setting.
    Ghz {
        #[arg(long, default_value = "xyy")]
        setting: String,
    },
    /// Teleport a position cebit into the polarization of four beams.
    Teleport {
        #[arg(long, default_value = "0.6", value_parser = parse_complex, allow_hyphen_values = true)]
        c0: C64,
        #[arg(long, default_value = "0.8i", value_parser = parse_complex, allow_hyphen_values = true)]
        c1: C64,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Three-cebit repetition code with an injected flip.
    Errcorr {
        #[arg(long, value_enum, default_value_t = ErrorArg::None)]
        error: ErrorArg,
        /// Correct a σz error with the Hadamard-conjugated network.
        #[arg(long)]
        phase_variant: bool,
        #[arg(long, default_value = "0.6", value_parser = parse_complex, allow_hyphen_values = true)]
        c0: C64,
        #[arg(long, default_value = "0.8", value_parser = parse_complex, allow_hyphen_values = true)]
        c1: C64,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

/// `re`, `re,im`, or num-complex syntax such as `0.6-0.8i`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let s = s.trim();
    let z = if let Some((re, im)) = s.split_once(',') {
        let re = re.trim().trim_start_matches('(').trim();
        let im = im.trim().trim_end_matches(')').trim();
        re.parse::<f64>()
            .and_then(|r| im.parse::<f64>().map(|i| C64::new(r, i)))
            .map_err(|e| format!("invalid complex number {s:?}: {e}"))?
    } else {
        s.parse::<C64>()
            .map_err(|_| format!("invalid complex number {s:?}"))?
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("complex number {s:?} is not finite"))
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Numeric(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Numeric(_) => EXIT_NUMERIC,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Numeric(m) => m,
        }
    }
}

impl From<CebitError> for Failure {
    fn from(e: CebitError) -> Self {
        Failure::Numeric(e.to_string())
    }
}

fn parse_failure(path: &Path, e: &ParseError) -> Failure {
    Failure::Parse(format!("{}:{e}", path.display()))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let meta = std::fs::metadata(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    if meta.len() > MAX_INPUT_BYTES {
        return Err(Failure::Usage(format!(
            "{} is {} bytes; inputs are limited to {MAX_INPUT_BYTES} bytes",
            path.display(),
            meta.len()
        )));
    }
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> Result<GateCircuit, Failure> {
    let source = read_input(path)?;
    let ast = parse_source(&source).map_err(|e| parse_failure(path, &e))?;
    Ok(to_circuit(&ast)?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Integer fields that may exceed u64 fall back to a rounded float.
fn big_uint(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| num_exact(v as f64), Value::from)
}

fn report_json(r: &ResourceReport) -> Value {
    json!({
        "n": r.n_cebits,
        "beams": big_uint(r.beams),
        "detectors": big_uint(r.detectors),
        "components": r.component_counts,
        "power_fraction_min": num_exact(r.power_fraction_min),
    })
}

fn compile(file: &Path, emit: Emit) -> Result<String, Failure> {
    let circuit = load_circuit(file)?;
    let netlist = compile_circuit(&circuit)?;
    Ok(match emit {
        Emit::Netlist => netlist_text(&netlist),
        Emit::Json => {
            let components = round_tree(
                serde_json::to_value(netlist.components()).expect("components serialize"),
            );
            let report = resource_report(circuit.n_cebits(), Some(&netlist))?;
            pretty(&json!({
                "n": circuit.n_cebits(),
                "components": components,
                "resources": report_json(&report),
            }))
        }
    })
}

fn run(file: &Path, report: Report) -> Result<String, Failure> {
    let circuit = load_circuit(file)?;
    let n = circuit.n_cebits();
    let result = simulate_circuit(&circuit)?;
    let intensities = result.intensities();
    Ok(match report {
        Report::Intensities => intensities
            .iter()
            .enumerate()
            .map(|(b, &w)| format!("{} {}\n", BasisLabel::from_index(b, n), fmt(w)))
            .collect(),
        Report::Expectations => result
            .expectations
            .iter()
            .map(|e| format!("{} {}\n", e.basis, fmt(e.value)))
            .collect(),
        Report::Json => pretty(&json!({
            "n": n,
            "intensities": intensities.iter().map(|&w| num(w)).collect::<Vec<_>>(),
            "expectations": result.expectations.iter().map(|e| json!({
                "index": e.index,
                "basis": e.basis.to_string(),
                "value": num(e.value),
            })).collect::<Vec<_>>(),
        })),
    })
}

fn ghz_json(setting: &str) -> Result<Value, Failure> {
    let basis: PauliBasis = setting
        .parse()
        .map_err(|e: CebitError| Failure::Usage(e.to_string()))?;
    if basis.len() != 3 || basis.letters().iter().any(|p| p.letter() == 'i' || p.letter() == 'z') {
        return Err(Failure::Usage(format!(
            "setting must be three letters from x and y, got {setting:?}"
        )));
    }
    let out = ghz_experiment(&basis)?;
    Ok(json!({
        "setting": out.setting.to_string(),
        "expectation": num(out.expectation),
        "intensities": out.intensities.iter().map(|&w| num(w)).collect::<Vec<_>>(),
        "dark_ports": out.dark_ports,
        "bright_ports": out.bright_ports,
    }))
}

fn teleport_json(out: &TeleportOutcome) -> Value {
    json!({
        "c0": complex(out.input[0]),
        "c1": complex(out.input[1]),
        "beams": out.beams.iter().map(|&b| jones(b)).collect::<Vec<_>>(),
        "recovered": jones(out.recovered),
        "fidelity": num(out.fidelity),
    })
}

fn errcorr_json(r: &ErrorCorrectionReport) -> Value {
    json!({
        "error": r.error.to_string(),
        "phase_variant": r.phase_variant,
        "exit_beam": r.exit_beam,
        "recovered": jones(r.recovered),
        "fidelity": num(r.fidelity),
    })
}

fn random_cebit(rng: &mut ChaCha8Rng) -> (C64, C64) {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let (c0, c1) = (C64::new(v[0], v[1]), C64::new(v[2], v[3]));
        if c0.norm_sqr() + c1.norm_sqr() > 1e-6 {
            return (c0, c1);
        }
    }
}

/// Run `job` on every input across worker threads; results keep input order.
fn parallel_map<T: Sync, R: Send>(
    inputs: &[T],
    job: impl Fn(&T) -> Result<R, CebitError> + Sync,
) -> Result<Vec<R>, CebitError> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(inputs.len().max(1));
    let chunk = inputs.len().div_ceil(workers).max(1);
    let job = &job;
    let parts: Vec<Result<Vec<R>, CebitError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = inputs
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(job).collect()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(inputs.len());
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

fn sweep_json(k: usize, seed: u64, runs: Vec<Value>, fidelities: &[f64]) -> Value {
    json!({
        "sweep": k,
        "seed": seed,
        "min_fidelity": num(fidelities.iter().copied().fold(1.0, f64::min)),
        "runs": runs,
    })
}

fn demo(d: &Demo) -> Result<String, Failure> {
    let value = match d {
        Demo::Ghz { setting } => ghz_json(setting)?,
        Demo::Teleport { c0, c1, sweep } => match sweep.sweep {
            None => teleport_json(&teleport(*c0, *c1)?),
            Some(k) => {
                let mut rng = ChaCha8Rng::seed_from_u64(sweep.seed);
                let inputs: Vec<(C64, C64)> = (0..k).map(|_| random_cebit(&mut rng)).collect();
                let outs = parallel_map(&inputs, |&(a, b)| teleport(a, b))?;
                let fids: Vec<f64> = outs.iter().map(|o| o.fidelity).collect();
                sweep_json(k, sweep.seed, outs.iter().map(teleport_json).collect(), &fids)
            }
        },
        Demo::Errcorr {
            error,
            phase_variant,
            c0,
            c1,
            sweep,
        } => {
            let target = FlipTarget::from(*error);
            match sweep.sweep {
                None => errcorr_json(&error_correction_round(*c0, *c1, target, *phase_variant)?),
                Some(k) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(sweep.seed);
                    let inputs: Vec<(C64, C64)> = (0..k).map(|_| random_cebit(&mut rng)).collect();
                    let outs = parallel_map(&inputs, |&(a, b)| {
                        error_correction_round(a, b, target, *phase_variant)
                    })?;
                    let fids: Vec<f64> = outs.iter().map(|o| o.fidelity).collect();
                    sweep_json(k, sweep.seed, outs.iter().map(errcorr_json).collect(), &fids)
                }
            }
        }
    };
    Ok(pretty(&value))
}

fn resources(args: &ResourcesArgs) -> Result<String, Failure> {
    let value = match (args.cebits, args.beams) {
        (Some(n), _) => report_json(&resource_report(n, None)?),
        (None, Some(budget)) => {
            let m = max_cebits(budget)?;
            json!({ "beam_budget": num_exact(budget), "max_cebits": m })
        }
        (None, None) => return Err(Failure::Usage("give --cebits or --beams".into())),
    };
    Ok(pretty(&value))
}

/// Row-major matrix of `[re, im]` pairs (plain numbers are real).
fn read_matrix(path: &Path) -> Result<Matrix, Failure> {
    let text = read_input(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| {
        Failure::Parse(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
    })?;
    let shape = |m: &str| Failure::Numeric(format!("{}: {m}", path.display()));
    let rows = value
        .as_array()
        .ok_or_else(|| shape("expected an array of rows"))?;
    let n = rows.len();
    if n == 0 {
        return Err(shape("matrix is empty"));
    }
    let mut entries = Vec::with_capacity(n * n);
    for row in rows {
        let row = row.as_array().ok_or_else(|| shape("each row must be an array"))?;
        if row.len() != n {
            return Err(shape(&format!("matrix is not square ({n} rows, a row of {})", row.len())));
        }
        for entry in row {
            let z = match entry {
                Value::Number(x) => x.as_f64().map(|re| C64::new(re, 0.0)),
                Value::Array(pair) if pair.len() == 2 => pair[0]
                    .as_f64()
                    .zip(pair[1].as_f64())
                    .map(|(re, im)| C64::new(re, im)),
                _ => None,
            }
            .ok_or_else(|| shape("entries must be numbers or [re, im] pairs"))?;
            entries.push(z);
        }
    }
    Ok(Matrix::from_shape_vec((n, n), entries).expect("n*n entries"))
}

fn decompose(method: Method, path: &Path) -> Result<String, Failure> {
    let m = read_matrix(path)?;
    let two_by_two = || -> Result<Unitary2, Failure> { Ok(Unitary2::from_matrix(&m)?) };
    let value = match method {
        Method::Waveplates => {
            let u = two_by_two()?;
            let a = decompose_su2_waveplates(&u)?;
            json!({
                "method": "waveplates",
                "qwp_in": num(a.qwp_in),
                "hwp": num(a.hwp),
                "qwp_out": num(a.qwp_out),
                "error": num(waveplate_error(&u, &a)),
            })
        }
        Method::Mz => {
            let u = two_by_two()?;
            let p = decompose_su2_mz(&u)?;
            json!({
                "method": "mz",
                "phi_in": num(p.phi_in),
                "phi_arm": num(p.phi_arm),
                "phi_out": num(p.phi_out),
                "error": num(mz_error(&u, &p)),
            })
        }
        Method::Multiport => {
            let mesh = decompose_multiport(&m)?;
            let rebuilt = mesh.matrix()?;
            json!({
                "method": "multiport",
                "n_modes": mesh.n_modes,
                "mixers": mesh.mixer_count(),
                "components": round_tree(serde_json::to_value(&mesh.components).expect("components serialize")),
                "error": num(linalg::distance(&rebuilt, &m)),
            })
        }
    };
    Ok(pretty(&value))
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Compile { file, emit } => compile(file, *emit),
        Command::Run { file, report } => run(file, *report),
        Command::Demo { demo: d } => demo(d),
        Command::Resources(args) => resources(args),
        Command::Decompose { method, matrix } => decompose(*method, matrix),
    }
}

/// Parse `args` (program name first), run the command, and return the exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
