// Copyright (c) The dualosc Contributors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dualosc::census::{census_scaled, census_unscaled, ScaledComparison, SweepParams};
use dualosc::codec::{decode_a, decode_b, encode, Encoded};
use dualosc::decode::{generate_cancel_sop, generate_perm_sop, minimize};
use dualosc::gates::{i_shift_table, tables_csv};
use dualosc::sim::{Circuit, Matrix2};
use dualosc::{CurveLayout64, DeviceSpec64, Error, Result};

/// Directory searched for `<name>.toml` device profiles.
const DEVICE_DIR_ENV: &str = "DUALOSC_DEVICE_DIR";

#[derive(Parser)]
#[command(name = "dualosc", version, about = "Dual-oscillator qubit emulator")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count distinguishable states over a sweep of curves.
    Census(CensusArgs),
    /// Phases of one state.
    Encode(EncodeArgs),
    /// Recover a state from its phases.
    Decode(DecodeArgs),
    /// Group-state tables for the two-qubit gates.
    Gates(GatesArgs),
    /// Build and minimise the decode-stage sum-of-products logic.
    Synth(SynthArgs),
    /// Run a circuit file.
    Sim(SimArgs),
    /// Place chief curves and surface groups along g.
    Layout(LayoutArgs),
}

#[derive(Args)]
struct DeviceArg {
    /// Built-in profile name or path to a profile file.
    #[arg(long, default_value = "ax7maf1")]
    device: String,
}

#[derive(Args)]
struct CensusArgs {
    #[command(flatten)]
    device: DeviceArg,
    #[arg(long, default_value_t = 0.01)]
    dg: f64,
    /// Compare frequencies after scaling by the device coefficient.
    #[arg(long)]
    scaled: bool,
    /// Scaled sweep only: advance the comparison frequency and escalate dg on collapse.
    #[arg(long, requires = "scaled")]
    advancing: bool,
    /// Per-curve CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    device: DeviceArg,
    #[arg(long)]
    a: u64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    b: f64,
    #[arg(long)]
    g: f64,
    #[arg(long)]
    scaled: bool,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    phi: f64,
    #[arg(long)]
    g: f64,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Largest index searched.
    #[arg(long, default_value_t = 100_000)]
    a_max: u64,
}

#[derive(Args)]
struct GatesArgs {
    /// Print the `i` phase-shift table instead.
    #[arg(long)]
    shifts: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthKind {
    Perm,
    Cancel,
}

#[derive(Args)]
struct SynthArgs {
    kind: SynthKind,
    /// Write subscripts in LaTeX form.
    #[arg(long)]
    latex: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimArgs {
    circuit: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rerun with seeds `seed..seed+N` and tabulate outcomes.
    #[arg(long)]
    trials: Option<u64>,
    /// Print the reduced density matrix of this qubit (repeatable).
    #[arg(long)]
    density: Vec<usize>,
    /// Print peak resource use.
    #[arg(long)]
    resources: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LayoutArgs {
    #[arg(long, default_value_t = 2)]
    qubits: u32,
    /// Curves available to the layout.
    #[arg(long, default_value_t = 239_600)]
    curves: u64,
    /// g of curve zero.
    #[arg(long, default_value_t = 1.0)]
    g0: f64,
    #[arg(long, default_value_t = 1e-4)]
    dg: f64,
    /// Locate this curve.
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn resolve_device(name: &str) -> Result<DeviceSpec64> {
    if let Some(d) = DeviceSpec64::builtin(name) {
        return Ok(d);
    }
    let path = Path::new(name);
    if path.is_file() {
        return DeviceSpec64::from_config_file(path);
    }
    if let Some(dir) = std::env::var_os(DEVICE_DIR_ENV) {
        let p = Path::new(&dir).join(format!("{name}.toml"));
        if p.is_file() {
            return DeviceSpec64::from_config_file(p);
        }
    }
    Err(Error::Config(format!(
        "unknown device {name:?}: not a built-in profile ({}) or a profile file",
        dualosc::device::BUILTIN_PROFILES.join(", ")
    )))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn census(args: CensusArgs) -> Result<()> {
    let device = resolve_device(&args.device.device)?;
    let mut params = SweepParams::new(args.dg);
    params.keep_rows = args.out.is_some();
    let report = if args.scaled {
        let cmp = if args.advancing { ScaledComparison::Advancing } else { ScaledComparison::Frozen };
        census_scaled(&device, params, cmp)?
    } else {
        census_unscaled(&device, params)?
    };
    if let Some(p) = &args.out {
        report.emit_csv(p)?;
    }
    print!("{}", report.summary(args.scaled, device.omega_max));
    Ok(())
}

fn encode_cmd(args: EncodeArgs) -> Result<()> {
    let device = resolve_device(&args.device.device)?;
    match encode(args.a, args.b, args.g)? {
        Encoded::Angles { phi, theta } => {
            println!("phi: {phi}");
            println!("theta: {theta}");
            let omega = if args.scaled { phi * device.cd } else { phi };
            println!("omega: {omega}");
            println!("d omega: {}", device.d_omega(omega)?);
        }
        Encoded::Unencodable => println!("unencodable"),
    }
    Ok(())
}

fn decode_cmd(args: DecodeArgs) -> Result<()> {
    println!("a: {}", decode_a(args.phi, args.g, args.a_max)?);
    if let Some(t) = args.theta {
        println!("b: {}", decode_b(t)?);
    }
    Ok(())
}

fn gates(args: GatesArgs) -> Result<()> {
    let text = if args.shifts {
        let mut s = String::from("negative_flags,shift,component\n");
        for r in i_shift_table() {
            writeln!(s, "{:04b},{},{}", r.negative_flags, r.shift, r.component).unwrap();
        }
        s
    } else {
        tables_csv()
    };
    emit(&text, args.out.as_deref())
}

fn synth(args: SynthArgs) -> Result<()> {
    let sop = match args.kind {
        SynthKind::Perm => generate_perm_sop(),
        SynthKind::Cancel => generate_cancel_sop(),
    };
    let m = minimize(&sop);
    let mut text = String::new();
    for k in m.sop.nonempty_outputs() {
        let line = if args.latex { m.sop.latex_line(k) } else { m.sop.line(k) };
        writeln!(text, "{line}").unwrap();
    }
    emit(&text, args.out.as_deref())?;
    println!("removed {} terms", m.removed);
    Ok(())
}

fn fmt_matrix(q: usize, rho: &Matrix2<f64>) -> String {
    let head = format!("rho[{q}] = [");
    let mut s = String::new();
    for (i, row) in rho.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|z| format!("{:.15}{:+.15}i", z.re, z.im)).collect();
        let lead = if i == 0 { head.clone() } else { " ".repeat(head.chars().count()) };
        let tail = if i == 0 { "," } else { "]" };
        writeln!(s, "{lead}[{}]{tail}", cells.join(", ")).unwrap();
    }
    s
}

fn sim(args: SimArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.circuit)?;
    let circuit = Circuit::parse(&text)?;
    let mut out = String::new();
    match args.trials {
        None => {
            let r = circuit.run::<f64>(args.seed)?;
            for (name, b) in &r.bits {
                writeln!(out, "{name} = {b}").unwrap();
            }
            for &q in &args.density {
                out.push_str(&fmt_matrix(q, &r.ensemble.get_density_matrix(q)?));
            }
            if args.resources {
                write!(out, "{}", r.ensemble.report_max_requirements()?).unwrap();
            }
        }
        Some(0) => return Err(Error::Domain("trials must be >= 1".into())),
        Some(n) => {
            let mut tally = std::collections::BTreeMap::<String, u64>::new();
            let mut names = Vec::new();
            for seed in args.seed..args.seed + n {
                let r = circuit.run::<f64>(seed)?;
                if names.is_empty() {
                    names = r.bits.iter().map(|(n, _)| n.clone()).collect();
                }
                *tally.entry(r.outcome()).or_default() += 1;
            }
            writeln!(out, "outcome ({}),count,frequency", names.join(" ")).unwrap();
            for (o, c) in &tally {
                writeln!(out, "{o},{c},{}", *c as f64 / n as f64).unwrap();
            }
        }
    }
    print!("{out}");
    if let Some(p) = &args.out {
        std::fs::write(p, &out)?;
    }
    Ok(())
}

fn layout(args: LayoutArgs) -> Result<()> {
    let l = CurveLayout64::build_with_step(args.qubits, args.curves, args.g0, args.dg)?;
    if let Some(g) = args.g {
        let loc = l.locate(g)?;
        println!(
            "vertex: {:0w$b}, surface: {}, offset: {}",
            loc.vertex_group,
            loc.surface_group,
            loc.offset,
            w = args.qubits as usize
        );
        return Ok(());
    }
    print!("{}", l.chiefs_csv());
    emit(&l.groups_csv(), args.out.as_deref())
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Command::Census(a) => census(a),
        Command::Encode(a) => encode_cmd(a),
        Command::Decode(a) => decode_cmd(a),
        Command::Gates(a) => gates(a),
        Command::Synth(a) => synth(a),
        Command::Sim(a) => sim(a),
        Command::Layout(a) => layout(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
