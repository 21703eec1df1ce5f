//! `alphafid`: state and channel α-fidelities plus the curve data behind the
//! four probing protocols.

mod output;
mod parse;

use std::f64::consts::TAU;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use alphafid::channels::channel_alpha_fidelity;
use alphafid::fidelity::{alpha_fidelity_qubit, tilde_fidelity};
use alphafid::models::{dephasing_map, jc_map};
use alphafid::protocols::{
    dimension_cut, exclusion_rhs_curve, exclusion_verdict, frequency_crossover,
    hillery_reference_thresholds, limiting_temperature, loschmidt_panel, pauli_dimension_bound,
    reference_min_dimension, thermometry_bounds,
};
use alphafid::{Alpha, BlochVector, Error, IsingChain, OptimizerConfig, OscillatorBath, TimeGrid};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use output::{significant, Table};
use parse::Grid;

#[derive(Parser)]
#[command(name = "alphafid", version, about = "α-fidelities of qubit states and channels, and probing-protocol curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// α-fidelity of two qubit states given as Bloch vectors.
    StateFid(StateFid),
    /// α-fidelity of two qubit channels, minimized over input states.
    ChanFid(ChanFid),
    /// Program-register dimension bounds against depolarizing noise.
    Fig2(Fig2),
    /// Exclusion of hypothesized bath frequencies from two dephasing dynamics.
    Fig3(Fig3),
    /// Temperature bounds from Jaynes–Cummings dynamics.
    Fig4(Fig4),
    /// Loschmidt-echo bounds and revival verdict for the transverse Ising chain.
    Fig5(Fig5),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Serialize)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    #[serde(skip)]
    output: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct OptimizerArgs {
    /// Quasi-random starts per optimization.
    #[arg(long, default_value_t = 32)]
    starts: usize,
    /// Seed for the start shift.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            starts: self.starts,
            seed: self.seed,
            ..OptimizerConfig::default()
        }
    }
}

#[derive(Args, Serialize)]
struct StateFid {
    /// First state as x,y,z.
    #[arg(long, value_parser = parse::bloch, allow_hyphen_values = true)]
    rho1: BlochVector,
    /// Second state as x,y,z.
    #[arg(long, value_parser = parse::bloch, allow_hyphen_values = true)]
    rho2: BlochVector,
    #[arg(long)]
    alpha: f64,
    /// Use tr[ρ₁^α ρ₂^{1−α}] instead of the sandwiched form.
    #[arg(long)]
    tilde: bool,
    /// Emit a JSON record with the resolved configuration instead of the bare value.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Serialize)]
struct ChanFid {
    /// First channel, e.g. `dephasing:0.7` or `noisy_unitary:1:0.2`.
    #[arg(long)]
    chan1: String,
    #[arg(long)]
    chan2: String,
    #[arg(long)]
    alpha: f64,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    #[arg(long)]
    #[serde(skip)]
    output: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct Fig2 {
    /// Noise levels ε as lo:hi:n.
    #[arg(long, value_parser = parse::grid, default_value = "0:1:201")]
    eps_grid: Grid,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Serialize)]
struct Fig3 {
    /// Temperature of the first environment, in units of ħω/k_B.
    #[arg(long = "T1", default_value_t = 0.25)]
    t1: f64,
    #[arg(long = "T2", default_value_t = 0.75)]
    t2: f64,
    /// Coupling of the single bath mode.
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    /// Hypothesized frequencies ω′/ω scanned for the crossover.
    #[arg(long, value_parser = parse::grid, default_value = "1:5:41")]
    omega_scan: Grid,
    #[arg(long, value_parser = parse::grid, default_value = "0.05:0.8:16")]
    alpha_grid: Grid,
    /// Hypotheses reported column by column.
    #[arg(long, value_delimiter = ',', default_value = "3,3.1,3.25")]
    hypotheses: Vec<f64>,
    /// Time samples over one period of the true mode.
    #[arg(long, default_value_t = 401)]
    time_points: usize,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Serialize)]
struct Fig4 {
    /// True temperatures kT/ħω as lo:hi:n.
    #[arg(long = "T-grid", value_parser = parse::grid, default_value = "0.075:1.5:20")]
    t_grid: Grid,
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    /// Highest photon number kept in the thermal field.
    #[arg(long, default_value_t = 10)]
    ntrunc: usize,
    #[arg(long, default_value_t = 30.0)]
    t_max: f64,
    #[arg(long, default_value_t = 601)]
    time_points: usize,
    #[arg(long, value_parser = parse::grid, default_value = "0.05:0.95:19")]
    alpha_grid: Grid,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Serialize)]
struct Fig5 {
    /// Transverse field λ.
    #[arg(long)]
    lambda: f64,
    /// Lower bound on F_{1/2} between the ground state and the unknown state.
    #[arg(long = "F")]
    f: f64,
    #[arg(long = "J", default_value_t = 1.0)]
    j: f64,
    /// Field quench λ → λ + δ.
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    /// Number of spins (even).
    #[arg(long = "N", default_value_t = 4000)]
    n: usize,
    #[arg(long, value_parser = parse::grid, default_value = "0:5:501")]
    t_grid: Grid,
    #[command(flatten)]
    out: OutputArgs,
}

/// Failure with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotBracketed { .. }
            | Error::EmptyInterval
            | Error::Infeasible
            | Error::Singular(_)
            | Error::TooLarge(_) => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn alphas(grid: &Grid) -> Result<Vec<Alpha>, Failure> {
    grid.values()
        .into_iter()
        .map(|a| Alpha::new(a).map_err(Failure::from))
        .collect()
}

fn emit(text: &str, path: &Option<PathBuf>) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure {
            code: 1,
            message: format!("cannot write {}: {e}", p.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_table(table: &Table, out: &OutputArgs) -> Result<(), Failure> {
    let text = match out.format {
        Format::Csv => table.csv(),
        Format::Json => table.json(),
    };
    emit(&text, &out.output)
}

fn state_fid(args: &StateFid) -> Result<(), Failure> {
    let a = Alpha::new(args.alpha)?;
    let value = if args.tilde {
        tilde_fidelity(&args.rho1.to_density(), &args.rho2.to_density(), a)?
    } else {
        alpha_fidelity_qubit(args.rho1, args.rho2, a)
    };
    let line = significant(value, 12);
    if args.json {
        let doc = json!({
            "tool": format!("alphafid {}", env!("CARGO_PKG_VERSION")),
            "command": "state-fid",
            "config": args,
            "fidelity": value,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json serializes"));
    } else {
        println!("{line}");
    }
    Ok(())
}

fn chan_fid(args: &ChanFid) -> Result<(), Failure> {
    let e1 = parse::channel(&args.chan1).map_err(usage)?;
    let e2 = parse::channel(&args.chan2).map_err(usage)?;
    let r = channel_alpha_fidelity(&e1, &e2, Alpha::new(args.alpha)?, &args.optimizer.config())?;
    let doc = json!({
        "tool": format!("alphafid {}", env!("CARGO_PKG_VERSION")),
        "command": "chan-fid",
        "config": args,
        "value": r.value,
        "argmin_1": r.argmin_1,
        "argmin_2": r.argmin_2,
        "purity_1": r.purity_1(),
        "purity_2": r.purity_2(),
        "argmin_is_pure": r.argmin_is_pure(),
        "evaluations": r.evaluations,
        "converged": r.converged,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("json serializes");
    text.push('\n');
    emit(&text, &args.output)
}

fn fig2(args: &Fig2) -> Result<(), Failure> {
    let mut t = Table::new("fig2", args, &["epsilon", "min_dim", "min_dim_reference"]);
    let [r4, r3] = hillery_reference_thresholds();
    t.note("cut_4_to_3", dimension_cut(4)?);
    t.note("cut_3_to_2", dimension_cut(3)?);
    t.note("reference_cut_4_to_3", r4);
    t.note("reference_cut_3_to_2", r3);
    for eps in args.eps_grid.values() {
        let b = pauli_dimension_bound(eps)?;
        t.rows.push(vec![json!(eps), json!(b.min_dim), json!(reference_min_dimension(eps))]);
    }
    emit_table(&t, &args.out)
}

fn fig3(args: &Fig3) -> Result<(), Failure> {
    if !(args.t1 > 0.0 && args.t2 > 0.0) {
        return Err(usage("temperatures must be positive"));
    }
    let bath = OscillatorBath::single(1.0, args.g)?;
    let m1 = dephasing_map(&bath, args.t1)?;
    let m2 = dephasing_map(&bath, args.t2)?;
    let alphas = alphas(&args.alpha_grid)?;
    let grid = TimeGrid::new(TAU, args.time_points)?;
    let rhs = exclusion_rhs_curve(&m1, &m2, &alphas, &grid, &args.optimizer.config())?;
    let (b1, b2) = (1.0 / args.t1, 1.0 / args.t2);

    let mut columns = vec!["alpha".to_string()];
    columns.extend(args.hypotheses.iter().map(|w| format!("lhs_{w}")));
    columns.push("rhs".into());
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut t = Table::new("fig3", args, &column_refs);

    let verdicts = args
        .hypotheses
        .iter()
        .map(|&w| exclusion_verdict(w, b1, b2, &alphas, &rhs))
        .collect::<Result<Vec<_>, _>>()?;
    for (i, a) in alphas.iter().enumerate() {
        let mut row = vec![json!(a.value())];
        row.extend(verdicts.iter().map(|v| json!(v.lhs_curve[i])));
        row.push(json!(rhs[i]));
        t.rows.push(row);
    }
    let compatibility: serde_json::Map<String, Value> = verdicts
        .iter()
        .map(|v| (v.omega_hypothesis.to_string(), json!(v.compatible)))
        .collect();
    t.note("compatible", compatibility);
    let crossover = frequency_crossover(b1, b2, &args.omega_scan.values(), &alphas, &rhs)?
        .ok_or(Error::NotBracketed {
            lo: args.omega_scan.lo,
            hi: args.omega_scan.hi,
        })?;
    t.note("crossover", crossover);
    emit_table(&t, &args.out)
}

fn fig4(args: &Fig4) -> Result<(), Failure> {
    let map0 = jc_map(args.g, 1.0, 0.0, args.ntrunc)?;
    let alphas = alphas(&args.alpha_grid)?;
    let grid = TimeGrid::new(args.t_max, args.time_points)?;
    let cfg = args.optimizer.config();
    let mut t = Table::new("fig4", args, &["temperature", "lower", "upper", "upper_valid"]);
    t.note("limiting_temperature", limiting_temperature());
    for temp in args.t_grid.values() {
        let map_t = jc_map(args.g, 1.0, temp, args.ntrunc)?;
        let b = thermometry_bounds(&map0, &map_t, &alphas, &grid, &cfg, Some(temp))?;
        let upper = if b.upper_valid { json!(b.upper) } else { Value::Null };
        t.rows.push(vec![json!(temp), json!(b.lower), upper, json!(b.upper_valid)]);
    }
    emit_table(&t, &args.out)
}

fn fig5(args: &Fig5) -> Result<(), Failure> {
    let chain = IsingChain::new(args.j, args.lambda, args.delta, args.n)?;
    let times = args.t_grid.values();
    let p = loschmidt_panel(&chain, args.f, &times)?;
    let mut t = Table::new("fig5", args, &["t", "L_ground", "L_lo", "L_hi"]);
    let v = &p.verdict;
    t.note("revival", v.revival);
    t.note("minimum_time", v.minimum_index.map(|i| times[i]));
    t.note("minimum_level", v.minimum_level);
    t.note("crossing_time", v.crossing_index.map(|i| times[i]));
    for i in 0..times.len() {
        t.rows.push(vec![json!(times[i]), json!(p.ground[i]), json!(p.lower[i]), json!(p.upper[i])]);
    }
    emit_table(&t, &args.out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::StateFid(a) => state_fid(a),
        Command::ChanFid(a) => chan_fid(a),
        Command::Fig2(a) => fig2(a),
        Command::Fig3(a) => fig3(a),
        Command::Fig4(a) => fig4(a),
        Command::Fig5(a) => fig5(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
