use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cohere_core::channels::{apply_channel, channel_from_str, ChannelPreset};
use cohere_core::correlations::{
    discord_fixed_basis, one_way_deficit, qi_relative_entropy, ree_pure, verify_coherence_chain, BipartiteState,
    IncoherentOp,
};
use cohere_core::error::{Error, Result};
use cohere_core::gates::{build_gate, gate_from_str, GateSpec};
use cohere_core::io::{load_state, preset_state, resolve_basis, StateInput};
use cohere_core::measures::{
    binary_entropy, coherence_l1, coherence_rel_entropy, dephased_entropy, von_neumann_entropy,
};
use cohere_core::powers::{
    cohering_power, cohering_power_between, cohering_power_zyz, decohering_power, sup_cohering_power,
    MaxCoherentSet, PowerResult,
};
use cohere_core::states::{maximally_coherent, PhaseMode, ReferenceBasis};
use cohere_core::verify::{run_suite, SuiteConfig, DEFAULT_SEED};

/// Default directory for report and CSV files when `--output` is not given.
const OUT_DIR_ENV: &str = "COHERE_OUT_DIR";

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "cohere", version, about = "Coherence measures, cohering and decohering powers, and their verification")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Relative entropy and l1 coherence of a state.
    Measure {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value = "computational")]
        basis: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Cohering power of a unitary.
    CoheringPower {
        /// Gate spec, e.g. `H`, `ZYZ:0,0.3,1.1,0.2`, `controlled:2:H`.
        #[arg(long)]
        gate: String,
        /// Reference basis (computational, bell, hadamard, or a basis file).
        #[arg(long, default_value = "computational")]
        basis: String,
        /// Basis of the input vectors, if different from `--basis`.
        #[arg(long)]
        input_basis: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Decohering power of a channel.
    DecoheringPower {
        /// Channel spec, e.g. `bit_flip:0.25`, `amplitude_damping:0.5`, `dilate:U_adc:0.36:2`.
        #[arg(long)]
        channel: String,
        #[arg(long, default_value = "computational")]
        basis: String,
        #[command(flatten)]
        set: SetArgs<true>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sup-cohering power of a system-ancilla unitary (system first).
    SupCoheringPower {
        #[arg(long)]
        gate: String,
        #[arg(long, default_value_t = 2)]
        ancilla_dim: usize,
        #[command(flatten)]
        set: SetArgs<false>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Bipartite coherence and correlation quantities, or the coherence
    /// chain of a single-system state under an incoherent interaction.
    Correlations {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value = "computational")]
        basis_a: String,
        #[arg(long, default_value = "computational")]
        basis_b: String,
        /// `CNOT` or `GCNOT:d`: evaluate the chain for the state as system A.
        #[arg(long)]
        chain: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        /// cohering, decohering, dilation, chain, deficit or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Canonical)]
        mset: Mode,
        /// Record wall-clock time in the report (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sweep a parameter and write CSV.
    Scan {
        /// zyz-power, adc-cohering, adc-supcohering, adc-tradeoff or <channel>-decohering.
        #[arg(long)]
        target: String,
        /// `start:stop:step`, stop inclusive.
        #[arg(long)]
        range: String,
        #[command(flatten)]
        set: SetArgs<false>,
        /// Output CSV path; defaults to stdout, or a file in $COHERE_OUT_DIR.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct StateArgs {
    /// JSON state file.
    #[arg(long)]
    state: Option<PathBuf>,
    /// plus, minus, zero, one, bell, maxcoh:d or maxmixed:d.
    #[arg(long)]
    preset: Option<String>,
}

/// Maximally coherent set options. `FREE` selects the default mode.
#[derive(Args, Debug)]
struct SetArgs<const FREE: bool> {
    #[arg(long, value_enum)]
    mset: Option<Mode>,
    /// Grid points per phase in free mode.
    #[arg(long)]
    grid: Option<usize>,
}

impl<const FREE: bool> SetArgs<FREE> {
    fn mode(&self) -> PhaseMode {
        match self.mset {
            Some(m) => m.into(),
            None if FREE => PhaseMode::Free,
            None => PhaseMode::Canonical,
        }
    }

    fn build(&self, d: usize) -> MaxCoherentSet {
        match (self.mode(), self.grid) {
            (PhaseMode::Free, Some(n)) => MaxCoherentSet::free_with_grid(d, n.max(1)),
            (mode, _) => MaxCoherentSet::new(mode, d),
        }
    }
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the JSON result to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Canonical,
    Free,
}

impl From<Mode> for PhaseMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Canonical => PhaseMode::Canonical,
            Mode::Free => PhaseMode::Free,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BadRange(_) | Error::UnknownSuite(_) | Error::UnknownPreset(_) => ExitCode::from(EXIT_USAGE),
                _ => ExitCode::from(EXIT_INPUT),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.verb {
        Verb::Measure { state, basis, out } => {
            let rho = read_state(&state)?.density();
            let basis = resolve_basis(&basis, rho.dim())?;
            let v = json!({
                "dims": rho.dims(),
                "basis": basis.label(),
                "C_re": coherence_rel_entropy(&rho, &basis)?.bits(),
                "C_l1": coherence_l1(&rho, &basis)?,
                "S": von_neumann_entropy(&rho)?.bits(),
                "S_dephased": dephased_entropy(&rho, &basis)?.bits(),
            });
            emit(&v, &out)?;
        }
        Verb::CoheringPower { gate, basis, input_basis, out } => {
            let u = gate_from_str(&gate)?;
            let output = resolve_basis(&basis, u.dim())?;
            let r = match &input_basis {
                Some(b) => cohering_power_between(&u, &resolve_basis(b, u.dim())?, &output)?,
                None => cohering_power(&u, &output)?,
            };
            let mut v = power_json(&r);
            v["gate"] = json!(u.spec().to_string());
            v["basis"] = json!(output.label());
            if let Some(b) = input_basis {
                v["input_basis"] = json!(b);
            }
            emit(&v, &out)?;
        }
        Verb::DecoheringPower { channel, basis, set, out } => {
            let e = channel_from_str(&channel)?;
            let basis = resolve_basis(&basis, e.dim())?;
            let r = decohering_power(&e, &set.build(e.dim()), &basis)?;
            let mut v = power_json(&r);
            v["channel"] = json!(e.tag());
            v["basis"] = json!(basis.label());
            emit(&v, &out)?;
        }
        Verb::SupCoheringPower { gate, ancilla_dim, set, out } => {
            let u = gate_from_str(&gate)?;
            if ancilla_dim == 0 || u.dim() % ancilla_dim != 0 {
                return Err(Error::DimensionMismatch(format!(
                    "gate of dimension {} does not split with ancilla dimension {ancilla_dim}",
                    u.dim()
                )));
            }
            let r = sup_cohering_power(&u, &set.build(u.dim() / ancilla_dim), ancilla_dim)?;
            let mut v = power_json(&r);
            v["gate"] = json!(u.spec().to_string());
            v["ancilla_dim"] = json!(ancilla_dim);
            emit(&v, &out)?;
        }
        Verb::Correlations { state, basis_a, basis_b, chain, out } => {
            let input = read_state(&state)?;
            let v = match chain {
                Some(op) => {
                    let report = verify_coherence_chain(&input.density(), IncoherentOp::from_spec(&op)?)?;
                    let mut v = serde_json::to_value(&report).map_err(|e| Error::Parse(e.to_string()))?;
                    v["operation"] = json!(op);
                    v
                }
                None => correlations_json(&input, &basis_a, &basis_b)?,
            };
            emit(&v, &out)?;
        }
        Verb::Verify { suite, seed, mset, timing, out } => {
            let start = Instant::now();
            let mut report = run_suite(&suite, &SuiteConfig { seed, mode: mset.into() })?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            if timing {
                report.wall_clock_ms = Some(elapsed);
            }
            eprintln!("{} checks in {:.0} ms", report.checks.len(), elapsed);
            let text = report.to_json()?;
            match out.format {
                Format::Json => println!("{text}"),
                Format::Table => print!("{}", report.to_table()),
            }
            let default_name = format!("verify-{suite}-seed{seed}.json");
            if let Some(path) = out.output.clone().or_else(|| default_out(&default_name)) {
                write_file(&path, &format!("{text}\n"))?;
            }
            if !report.all_passed() {
                return Ok(ExitCode::from(EXIT_CHECK_FAILED));
            }
        }
        Verb::Scan { target, range, set, output } => {
            let params = parse_range(&range)?;
            let csv = scan(&target, &params, &set)?;
            match output.or_else(|| default_out(&format!("scan-{target}.csv"))) {
                Some(path) => write_file(&path, &csv)?,
                None => print!("{csv}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn default_out(name: &str) -> Option<PathBuf> {
    std::env::var_os(OUT_DIR_ENV).filter(|d| !d.is_empty()).map(|d| Path::new(&d).join(name))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn emit(v: &Value, out: &OutArgs) -> Result<()> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Error::Parse(e.to_string()))?;
    match out.format {
        Format::Json => println!("{text}"),
        Format::Table => print!("{}", table(v)),
    }
    if let Some(path) = &out.output {
        write_file(path, &format!("{text}\n"))?;
    }
    Ok(())
}

/// Two aligned columns of flattened keys and values.
fn table(v: &Value) -> String {
    fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    flatten(&key, x, rows);
                }
            }
            Value::String(s) => rows.push((prefix.to_string(), s.clone())),
            other => rows.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, x)| format!("{k:<width$}  {x}\n")).collect()
}

fn power_json(r: &PowerResult) -> Value {
    serde_json::to_value(r).expect("power results serialize")
}

fn read_state(args: &StateArgs) -> Result<StateInput> {
    match (&args.state, &args.preset) {
        (Some(path), _) => load_state(path),
        (None, Some(name)) => preset_state(name),
        (None, None) => Err(Error::BadParameter("give --state or --preset".into())),
    }
}

fn correlations_json(input: &StateInput, basis_a: &str, basis_b: &str) -> Result<Value> {
    let rho = input.density();
    let dims = rho.dims().to_vec();
    if dims.len() != 2 {
        return Err(Error::NotBipartite(format!(
            "state has subsystem dimensions {dims:?}; give a bipartite state or use --chain"
        )));
    }
    let bs = BipartiteState::new(rho, resolve_basis(basis_a, dims[0])?, resolve_basis(basis_b, dims[1])?)?;
    let c_a = coherence_rel_entropy(&bs.reduced_a()?, bs.basis_a())?.bits();
    let c_ab = coherence_rel_entropy(bs.state(), &bs.product_basis())?.bits();
    let mut v = json!({
        "dims": dims,
        "C_A": c_a,
        "C_AB": c_ab,
        "qi_relative_entropy": qi_relative_entropy(&bs)?.bits(),
        "discord_fixed_basis": discord_fixed_basis(&bs)?.bits(),
    });
    if dims[0] == 2 {
        let d = one_way_deficit(&bs)?;
        v["one_way_deficit"] = json!({ "value": d.value, "theta": d.theta, "phi": d.phi, "evaluations": d.evaluations });
    }
    if let StateInput::Pure(psi) = input {
        v["ree_pure"] = json!(ree_pure(psi)?.bits());
    }
    Ok(v)
}

/// `start:stop:step` with `step > 0` and `stop >= start`; the stop value is
/// included when it lies on the grid up to rounding.
fn parse_range(s: &str) -> Result<Vec<f64>> {
    let bad = |why: &str| Error::BadRange(format!("`{s}`: {why}"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected start:stop:step"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad(&format!("`{p}` is not a number"))))
        .collect::<Result<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(bad("values must be finite"));
    }
    if step <= 0.0 {
        return Err(bad("step must be positive"));
    }
    if stop < start {
        return Err(bad("stop is below start"));
    }
    let n = ((stop - start) / step * (1.0 + 1e-12) + 1e-9).floor();
    if n > 1e6 {
        return Err(bad("more than a million points"));
    }
    Ok((0..=n as usize).map(|k| start + k as f64 * step).collect())
}

/// Shortest decimal with 12 significant digits.
fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{x:.11e}");
    let v: f64 = s.parse().expect("formatted float parses");
    let plain = format!("{v}");
    if plain.len() <= 20 {
        plain
    } else {
        let (mant, exp) = s.split_once('e').expect("exponent form");
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        format!("{mant}e{exp}")
    }
}

fn normalize(name: &str) -> String {
    name.chars().filter(char::is_ascii_alphanumeric).collect::<String>().to_ascii_lowercase()
}

fn scan(target: &str, params: &[f64], set: &SetArgs<false>) -> Result<String> {
    let comp2 = ReferenceBasis::computational(2);
    let comp4 = ReferenceBasis::computational(4);
    let plus = maximally_coherent(2, &[0.0], PhaseMode::Canonical)?.density();
    let mut header = vec!["param"];
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(params.len());
    match target {
        "zyz-power" => {
            header.extend(["cohering_power", "closed_form"]);
            for &g in params {
                let u = build_gate(&GateSpec::Zyz { alpha: 0.0, beta: 0.0, gamma: g, delta: 0.0 })?;
                rows.push(vec![g, cohering_power(&u, &comp2)?.value, cohering_power_zyz(g)]);
            }
        }
        "adc-cohering" => {
            header.extend(["cohering_power", "binary_entropy"]);
            for &eta in params {
                let u = build_gate(&GateSpec::Uadc(eta))?;
                rows.push(vec![eta, cohering_power(&u, &comp4)?.value, binary_entropy(eta)]);
            }
        }
        "adc-supcohering" => {
            header.extend(["sup_cohering_power", "closed_form"]);
            let mset = set.build(2);
            for &eta in params {
                let u = build_gate(&GateSpec::Uadc(eta))?;
                rows.push(vec![eta, sup_cohering_power(&u, &mset, 2)?.value, 1.0 + 0.5 * binary_entropy(eta)]);
            }
        }
        "adc-tradeoff" => {
            header.extend(["decohering_power", "sup_cohering_power", "sum"]);
            let mset = set.build(2);
            for &eta in params {
                let u = build_gate(&GateSpec::Uadc(eta))?;
                let d = decohering_power(&cohere_core::channels::dilate(&u, 2)?, &mset, &comp2)?.value;
                let s = sup_cohering_power(&u, &mset, 2)?.value;
                rows.push(vec![eta, d, s, d + s]);
            }
        }
        t => {
            let preset = t
                .strip_suffix("-decohering")
                .and_then(|name| ChannelPreset::ALL.into_iter().find(|p| normalize(p.name()) == normalize(name)))
                .ok_or_else(|| Error::BadParameter(format!("unknown scan target `{t}`")))?;
            header.extend(["decohering_power", "coherence_of_plus", "sum"]);
            let mset = set.build(2);
            for &p in params {
                let e = preset.build(p)?;
                let d = decohering_power(&e, &mset, &comp2)?.value;
                let c = coherence_rel_entropy(&apply_channel(&e, &plus)?, &comp2)?.bits();
                rows.push(vec![p, d, c, d + c]);
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(&header).map_err(io_err)?;
    for row in rows {
        w.write_record(row.iter().map(|x| sig12(*x))).map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = String::from_utf8(bytes).expect("csv output is utf-8");
    if !out.ends_with('\n') {
        out.push('\n');
    }
    Ok(out)
}
