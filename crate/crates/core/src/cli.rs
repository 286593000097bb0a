//! Command-line front end.
//!
//! `optlattice <trap|kappa|gate|budget|assay|sweep> [flags]`. A
//! `--config <path>` file of `key = value` lines (with `#` comments) supplies
//! defaults for the subcommand's flags; flags on the command line win.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::assay::{estimate_error, expected_counts, simulate, AssayConfig, AssayRecord};
use crate::budget::{
    closed_form_detuning, closed_form_min_error, gamma_lattice, optimize_detuning, p_catalysis,
    p_lattice, p_rate_sum, p_total, BudgetInput,
};
use crate::error::Error;
use crate::fom::{
    kappa_ellipsoid, kappa_quadrature, kappa_separated_wells, kappa_swap, optimize_aspect_ratio,
    optimize_separation, FomResult, QuadratureOptions,
};
use crate::gates::{cphase_gate, sqrt_swap_gate, InternalState};
use crate::motional::PacketPair;
use crate::units::{derive_trap, AtomSpecies, LatticeConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "optlattice",
    version,
    about = "Dipole-dipole gate design for atoms in optical lattices",
    after_help = "Any subcommand accepts --config <path>: a file of `key = value` lines naming its long flags."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Harmonic-well parameters and node scattering rate of a blue-detuned lattice.
    Trap(TrapArgs),
    /// Figure of merit κ = <V_dd>/<ħΓ_tot> for a gate geometry.
    Kappa(KappaArgs),
    /// √SWAP or CPHASE unitary, timing and success probability.
    Gate(GateArgs),
    /// Scattering error budget and the optimal lattice detuning.
    Budget(BudgetArgs),
    /// Ensemble CNOT-and-flush error assay.
    Assay(AssayArgs),
    /// Sweep one input of another subcommand over a grid (CSV by default).
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output format [default: table, or csv for sweeps]
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write results to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Table,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct TrapArgs {
    /// Atomic species: cs, rb87 or na23.
    #[arg(long, default_value = "cs")]
    species: String,
    /// Single-beam intensity in units of the saturation intensity (I_1/I_0).
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e5)]
    intensity: f64,
    /// Lattice detuning in units of Γ (positive = blue).
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e4)]
    detuning: f64,
    /// Well depth U_0 in recoil energies; overrides the intensity-derived depth.
    #[arg(long, allow_negative_numbers = true)]
    depth: Option<f64>,
    /// Sweep one flag: <var>=<start>:<stop>:<step>, inclusive.
    #[arg(long, value_name = "SPEC")]
    sweep: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ProtocolKind {
    Ellipsoid,
    SeparatedWells,
    Swap,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MethodKind {
    ClosedForm,
    Quadrature,
    NearField,
}

#[derive(Args, Debug, Clone)]
struct KappaArgs {
    /// Gate geometry.
    #[arg(long, value_enum, default_value = "separated-wells")]
    protocol: ProtocolKind,
    /// Lamb-Dicke parameter η = k_L x_0 (separated-wells, swap).
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.05)]
    eta: f64,
    /// Transverse Lamb-Dicke parameter (ellipsoid).
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.05)]
    eta_perp: f64,
    /// Axial Lamb-Dicke parameter (ellipsoid).
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.1)]
    eta_par: f64,
    /// Well separation in units of the packet width x_0 (separated-wells).
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.5)]
    dz: f64,
    /// Evaluation method; quadrature integrates the full kernel, near-field only its (kr)^-3 term.
    #[arg(long, value_enum, default_value = "closed-form")]
    method: MethodKind,
    /// Catalysis polarization q in {-1, 0, 1} (quadrature only).
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    q: i32,
    /// Maximize |κ| over the aspect ratio (ellipsoid) or separation (separated-wells).
    #[arg(long)]
    optimize: bool,
    /// Sweep one flag: <var>=<start>:<stop>:<step>, inclusive.
    #[arg(long, value_name = "SPEC")]
    sweep: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum GateKind {
    SqrtSwap,
    Cphase,
}

#[derive(Args, Debug, Clone)]
struct GateArgs {
    #[arg(long, value_enum, default_value = "sqrt-swap")]
    kind: GateKind,
    /// Interaction scale χ in units of Γ.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    chi: f64,
    /// Lamb-Dicke parameter used for the figure of merit.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.05)]
    eta: f64,
    /// Well separation in units of x_0 for the CPHASE figure of merit.
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.5)]
    dz: f64,
    /// Figure of merit to use directly instead of the closed form.
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Atomic species: cs, rb87 or na23.
    #[arg(long, default_value = "cs")]
    species: String,
    /// Protocol prefactor c_κ in κ = c_κ η^-3.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.015)]
    ckappa: f64,
    /// Gate duration in trap periods.
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    n: f64,
    /// Single-beam intensity I_1/I_0.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e5)]
    intensity: f64,
    /// Evaluate at this lattice detuning (units Γ) instead of optimizing.
    #[arg(long, allow_negative_numbers = true)]
    detuning: Option<f64>,
    /// Sweep one flag: <var>=<start>:<stop>:<step>, inclusive.
    #[arg(long, value_name = "SPEC")]
    sweep: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct AssayArgs {
    /// Initial number of pairs N.
    #[arg(long, default_value_t = 100_000)]
    pairs: u64,
    /// True gate error probability P.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.1)]
    error: f64,
    /// Fraction of errors losing only the control atom.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.5)]
    alpha: f64,
    /// Number of CNOT-and-flush cycles.
    #[arg(long, default_value_t = 5)]
    cycles: usize,
    /// Fraction of unpaired targets surviving each flush.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    flip: f64,
    /// PRNG seed; when given, the run is stochastic instead of the mean recursion.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(subcommand)]
    target: SweepTarget,
}

#[derive(Subcommand, Debug)]
enum SweepTarget {
    Trap(TrapArgs),
    Kappa(KappaArgs),
    Budget(BudgetArgs),
}

// ---------------------------------------------------------------------------
// Tables and number formatting

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_float(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    notes: Vec<String>,
}

impl Table {
    fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Csv => {
                s.push_str(&self.columns.join(","));
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::render).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
            }
            Format::Table => {
                let rendered: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(Cell::render).collect())
                    .collect();
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|i| {
                        rendered
                            .iter()
                            .map(|r| r[i].chars().count())
                            .chain([self.columns[i].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string()
                };
                s.push_str(&line(self.columns.clone()));
                s.push('\n');
                for r in &rendered {
                    s.push_str(&line(r.iter().map(String::as_str).collect()));
                    s.push('\n');
                }
                for note in &self.notes {
                    let _ = writeln!(s, "{note}");
                }
            }
        }
        s
    }
}

/// Shortest round-trip text, switching to exponent form outside `[1e-4, 1e15)`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

// ---------------------------------------------------------------------------
// Sweeps

/// Parsed `<var>=<start>:<stop>:<step>`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub var: String,
    pub values: Vec<f64>,
}

const MAX_SWEEP_POINTS: usize = 1_000_000;

pub fn parse_sweep(spec: &str) -> std::result::Result<SweepSpec, String> {
    let (var, range) = spec
        .split_once('=')
        .ok_or_else(|| format!("sweep `{spec}` must look like var=start:stop:step"))?;
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("sweep range `{range}` must be start:stop:step"));
    }
    let mut nums = [0.0; 3];
    for (slot, p) in nums.iter_mut().zip(&parts) {
        *slot = p
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("`{p}` in sweep `{spec}` is not a number"))?;
    }
    let [start, stop, step] = nums;
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(format!(
            "sweep `{spec}` needs finite start <= stop and step > 0"
        ));
    }
    let count = ((stop - start) / step * (1.0 + 1e-12)).floor() as usize + 1;
    if count > MAX_SWEEP_POINTS {
        return Err(format!(
            "sweep `{spec}` has more than {MAX_SWEEP_POINTS} points"
        ));
    }
    let values = (0..count).map(|i| start + step * i as f64).collect();
    Ok(SweepSpec {
        var: var.trim().replace('_', "-"),
        values,
    })
}

trait Sweepable: Clone + Send + Sync {
    fn set(&mut self, var: &str, value: f64) -> std::result::Result<(), String>;
    fn table(&self, parameter: Option<f64>) -> Result<Table, Error>;
}

fn unknown_var(var: &str, allowed: &str) -> String {
    format!("cannot sweep `{var}`; choose one of {allowed}")
}

impl Sweepable for TrapArgs {
    fn set(&mut self, var: &str, value: f64) -> std::result::Result<(), String> {
        match var {
            "intensity" => self.intensity = value,
            "detuning" => self.detuning = value,
            "depth" => self.depth = Some(value),
            _ => return Err(unknown_var(var, "intensity, detuning, depth")),
        }
        Ok(())
    }

    fn table(&self, parameter: Option<f64>) -> Result<Table, Error> {
        trap_table(self, parameter)
    }
}

impl Sweepable for KappaArgs {
    fn set(&mut self, var: &str, value: f64) -> std::result::Result<(), String> {
        match var {
            "eta" => self.eta = value,
            "eta-perp" => self.eta_perp = value,
            "eta-par" => self.eta_par = value,
            "dz" => self.dz = value,
            _ => return Err(unknown_var(var, "eta, eta-perp, eta-par, dz")),
        }
        Ok(())
    }

    fn table(&self, parameter: Option<f64>) -> Result<Table, Error> {
        kappa_table(self, parameter)
    }
}

impl Sweepable for BudgetArgs {
    fn set(&mut self, var: &str, value: f64) -> std::result::Result<(), String> {
        match var {
            "ckappa" => self.ckappa = value,
            "n" => self.n = value,
            "intensity" => self.intensity = value,
            "detuning" => self.detuning = Some(value),
            _ => return Err(unknown_var(var, "ckappa, n, intensity, detuning")),
        }
        Ok(())
    }

    fn table(&self, parameter: Option<f64>) -> Result<Table, Error> {
        budget_table(self, parameter)
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Runs `args` at every grid point in parallel and stacks the rows in grid order.
fn run_sweep<A: Sweepable>(args: &A, spec: &str) -> std::result::Result<Table, Failure> {
    let spec = parse_sweep(spec).map_err(Failure::Usage)?;
    let mut probe = args.clone();
    probe
        .set(&spec.var, spec.values[0])
        .map_err(Failure::Usage)?;
    let tables: Vec<Result<Table, Error>> = spec
        .values
        .par_iter()
        .map(|&v| {
            let mut point = args.clone();
            point.set(&spec.var, v).expect("variable checked above");
            point.table(Some(v))
        })
        .collect();
    let mut combined: Option<Table> = None;
    for t in tables {
        let t = t?;
        match combined.as_mut() {
            None => {
                combined = Some(Table {
                    notes: Vec::new(),
                    ..t
                })
            }
            Some(c) => c.rows.extend(t.rows),
        }
    }
    Ok(combined.expect("sweep has at least one point"))
}

// ---------------------------------------------------------------------------
// Subcommand bodies

fn species(symbol: &str) -> Result<AtomSpecies, Error> {
    AtomSpecies::builtin(symbol).ok_or(Error::Undefined("species (use cs, rb87 or na23)"))
}

fn trap_table(a: &TrapArgs, parameter: Option<f64>) -> Result<Table, Error> {
    let sp = species(&a.species)?;
    let mut lattice = LatticeConfig::new(a.intensity, a.detuning)?;
    if let Some(d) = a.depth {
        lattice = lattice.with_well_depth(d);
    }
    let trap = derive_trap(&sp, &lattice)?;
    let mut t = Table::new(vec![
        "parameter",
        "well_depth_er",
        "omega_osc_er",
        "lamb_dicke",
        "scatter_rate_gamma",
        "scatter_rate_per_s",
        "oscillation_hz",
        "oscillations_per_scatter",
    ]);
    t.rows.push(vec![
        parameter.into(),
        trap.well_depth.into(),
        trap.omega_osc.into(),
        trap.lamb_dicke.into(),
        trap.scatter_rate.into(),
        trap.scatter_rate_si().into(),
        trap.oscillation_frequency_hz().into(),
        trap.oscillations_per_scatter().into(),
    ]);
    Ok(t)
}

fn kappa_result(a: &KappaArgs) -> Result<(f64, FomResult), Error> {
    let quadrature = |pair: PacketPair| {
        let opts = match a.method {
            MethodKind::NearField => QuadratureOptions::near_field(),
            _ => QuadratureOptions::default(),
        };
        kappa_quadrature(&pair, a.q, &opts)
    };
    let closed = a.method == MethodKind::ClosedForm;
    match a.protocol {
        ProtocolKind::Ellipsoid => {
            if a.optimize {
                let best = optimize_aspect_ratio(a.eta_perp)?;
                return Ok((best.argument, best.fom));
            }
            let ratio = a.eta_par / a.eta_perp;
            let r = if closed {
                kappa_ellipsoid(a.eta_perp, a.eta_par)?
            } else {
                quadrature(PacketPair::ellipsoid(a.eta_perp, a.eta_par)?)?
            };
            Ok((ratio, r))
        }
        ProtocolKind::SeparatedWells => {
            if a.optimize {
                let best = optimize_separation(a.eta)?;
                return Ok((best.argument, best.fom));
            }
            let r = if closed {
                kappa_separated_wells(a.eta, a.dz)?
            } else {
                quadrature(PacketPair::separated(a.eta, a.dz)?)?
            };
            Ok((a.dz, r))
        }
        ProtocolKind::Swap => {
            if !closed {
                return Err(Error::Undefined(
                    "quadrature for the stretched-state density",
                ));
            }
            if a.optimize {
                return Err(Error::Undefined(
                    "optimization of the swap protocol (no free geometry)",
                ));
            }
            Ok((a.eta, kappa_swap(a.eta)?))
        }
    }
}

fn kappa_table(a: &KappaArgs, parameter: Option<f64>) -> Result<Table, Error> {
    let (natural, r) = kappa_result(a)?;
    let mut t = Table::new(vec!["parameter", "kappa", "mean_f", "mean_g", "method"]);
    t.rows.push(vec![
        parameter.unwrap_or(natural).into(),
        r.kappa.into(),
        r.mean_f.into(),
        r.mean_g.into(),
        r.method.as_str().into(),
    ]);
    let name = match a.protocol {
        ProtocolKind::Ellipsoid => "eta_par/eta_perp",
        ProtocolKind::SeparatedWells => "dz/x0",
        ProtocolKind::Swap => "eta",
    };
    t.notes.push(format!("parameter: {name}"));
    if a.optimize {
        t.notes
            .push(format!("optimum {name} = {}", format_float(natural)));
    }
    if let Some(c) = r.c_kappa {
        t.notes
            .push(format!("c_kappa = kappa*eta^3 = {}", format_float(c)));
    }
    if let Some(q) = r.quadrature {
        t.notes.push(format!(
            "quadrature: {} refinements, |dkappa| = {}",
            q.levels,
            format_float(q.error_estimate)
        ));
    }
    Ok(t)
}

fn budget_table(a: &BudgetArgs, parameter: Option<f64>) -> Result<Table, Error> {
    let input = BudgetInput::new(a.ckappa, a.n, species(&a.species)?, a.intensity)?;
    let mut t = Table::new(vec![
        "parameter",
        "detuning",
        "p_catalysis",
        "p_lattice",
        "p_total",
        "p_rate_sum",
        "gamma_lattice",
        "closed_form_detuning",
        "closed_form_p",
    ]);
    let row = match a.detuning {
        Some(d) => vec![
            parameter.into(),
            d.into(),
            p_catalysis(&input, d)?.into(),
            p_lattice(&input, d)?.into(),
            p_total(&input, d)?.into(),
            p_rate_sum(&input, d)?.into(),
            gamma_lattice(&input, d).into(),
            closed_form_detuning(&input).into(),
            closed_form_min_error(&input).into(),
        ],
        None => {
            let r = optimize_detuning(&input)?;
            vec![
                parameter.into(),
                r.optimal_detuning.into(),
                r.p_catalysis.into(),
                r.p_lattice.into(),
                r.p_total.into(),
                r.p_rate_sum.into(),
                r.gamma_lattice.into(),
                r.closed_form_detuning.into(),
                r.closed_form_p.into(),
            ]
        }
    };
    t.rows.push(row);
    Ok(t)
}

fn assay_table(a: &AssayArgs) -> Result<Table, Error> {
    let mut config =
        AssayConfig::new(a.pairs, a.error, a.alpha, a.cycles)?.with_flip_probability(a.flip);
    config.validate()?;
    let record: AssayRecord = match a.seed {
        Some(seed) => simulate(&config.with_seed(seed))?,
        None => {
            config.seed = 0;
            expected_counts(&config)?
        }
    };
    let mut t = Table::new(vec![
        "cycle",
        "paired",
        "new_unpaired",
        "unpaired",
        "both_lost",
        "wrong_state",
        "total",
    ]);
    for c in &record.cycles {
        t.rows.push(vec![
            Cell::Int(c.cycle as u64),
            c.paired.into(),
            c.new_unpaired.into(),
            c.unpaired.into(),
            c.both_lost.into(),
            c.wrong_state.into(),
            c.total.into(),
        ]);
    }
    if record.cycles.len() >= 2 {
        t.notes.push(format!(
            "estimated error = {}",
            format_float(estimate_error(&record)?)
        ));
    }
    Ok(t)
}

fn gate_table(a: &GateArgs) -> Result<Table, Error> {
    let mut t = Table::new(vec!["quantity", "value"]);
    let mut push = |name: String, v: f64| t.rows.push(vec![Cell::Text(name), v.into()]);
    let (unitary, dim): (Vec<Complex64>, usize) = match a.kind {
        GateKind::SqrtSwap => {
            let g = sqrt_swap_gate(a.chi, InternalState::new(4, 4)?)?;
            let kappa = match a.kappa {
                Some(k) => k,
                None => kappa_swap(a.eta)?.kappa,
            };
            push("tau".into(), g.tau);
            push(
                "success_probability".into(),
                (-std::f64::consts::PI / kappa.abs()).exp(),
            );
            push("leakage".into(), g.leakage);
            push("unitarity_error".into(), g.unitarity_error);
            push("phase_11_re".into(), g.phase_11.re);
            push("phase_11_im".into(), g.phase_11.im);
            (g.logical.iter().copied().collect(), 4)
        }
        GateKind::Cphase => {
            let fom = match a.kappa {
                Some(k) => FomResult::from_means(-2.0 * k, 0.0, crate::fom::FomMethod::ClosedForm),
                None => kappa_separated_wells(a.eta, a.dz)?,
            };
            let g = cphase_gate(&fom, a.chi)?;
            push("tau".into(), g.tau);
            push("success_probability".into(), g.success_probability);
            push("gamma_tot".into(), g.gamma_tot);
            push("leakage".into(), 0.0);
            (g.unitary().iter().copied().collect(), 4)
        }
    };
    // nalgebra stores column-major
    for col in 0..dim {
        for row in 0..dim {
            let z = unitary[col * dim + row];
            push(format!("u{row}{col}_re"), z.re);
            push(format!("u{row}{col}_im"), z.im);
        }
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Config files and entry point

/// Reads `key = value` lines; `#` starts a comment.
pub fn read_config(path: &Path) -> std::result::Result<Vec<(String, String)>, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_config(text: &str) -> std::result::Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() {
            return Err(format!("line {}: empty key", i + 1));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Pulls `--config <path>` / `--config=<path>` out of the argument list.
fn take_config(args: &mut Vec<String>) -> std::result::Result<Option<PathBuf>, String> {
    let mut found = None;
    let mut i = 0;
    while i < args.len() {
        if args[i] == "--config" {
            if i + 1 >= args.len() {
                return Err("--config needs a path".into());
            }
            found = Some(PathBuf::from(args.remove(i + 1)));
            args.remove(i);
        } else if let Some(p) = args[i].strip_prefix("--config=") {
            found = Some(PathBuf::from(p));
            args.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(found)
}

/// Inserts config entries as flags right after the subcommand path, skipping
/// keys that are also given on the command line.
fn splice_config(
    args: &mut Vec<String>,
    entries: &[(String, String)],
) -> std::result::Result<(), String> {
    let mut cmd = Cli::command();
    let mut at = 1;
    while at < args.len() {
        let Some(sub) = cmd.find_subcommand(&args[at]).cloned() else {
            break;
        };
        cmd = sub;
        at += 1;
    }
    if at == 1 {
        return Err("--config needs a subcommand".into());
    }
    let given = |key: &str| {
        let flag = format!("--{key}");
        args[at..]
            .iter()
            .any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
    };
    let mut tokens = Vec::new();
    for (key, value) in entries {
        let arg = cmd
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()))
            .ok_or_else(|| format!("unknown config key `{key}` for `{}`", cmd.get_name()))?;
        if given(key) {
            continue;
        }
        if arg.get_action().takes_values() {
            tokens.push(format!("--{key}={value}"));
        } else {
            match value.as_str() {
                "true" | "yes" | "1" => tokens.push(format!("--{key}")),
                "false" | "no" | "0" => {}
                _ => return Err(format!("config key `{key}` expects true or false")),
            }
        }
    }
    args.splice(at..at, tokens);
    Ok(())
}

fn emit(
    table: &Table,
    out_args: &OutputArgs,
    default: Format,
    stdout: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let text = table.render(out_args.format.unwrap_or(default));
    match &out_args.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Domain(format!("cannot write output: {e}"))),
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    fn single_or_sweep<A: Sweepable>(
        a: &A,
        sweep: &Option<String>,
    ) -> std::result::Result<Table, Failure> {
        match sweep {
            Some(spec) => run_sweep(a, spec),
            None => Ok(a.table(None)?),
        }
    }
    match command {
        Command::Trap(a) => emit(
            &single_or_sweep(&a, &a.sweep)?,
            &a.out,
            Format::Table,
            stdout,
        ),
        Command::Kappa(a) => emit(
            &single_or_sweep(&a, &a.sweep)?,
            &a.out,
            Format::Table,
            stdout,
        ),
        Command::Budget(a) => emit(
            &single_or_sweep(&a, &a.sweep)?,
            &a.out,
            Format::Table,
            stdout,
        ),
        Command::Gate(a) => emit(&gate_table(&a)?, &a.out, Format::Table, stdout),
        Command::Assay(a) => emit(&assay_table(&a)?, &a.out, Format::Table, stdout),
        Command::Sweep(s) => {
            let missing =
                || Failure::Usage("sweep requires --sweep <var>=<start>:<stop>:<step>".into());
            match s.target {
                SweepTarget::Trap(a) => emit(
                    &run_sweep(&a, a.sweep.as_ref().ok_or_else(missing)?)?,
                    &a.out,
                    Format::Csv,
                    stdout,
                ),
                SweepTarget::Kappa(a) => emit(
                    &run_sweep(&a, a.sweep.as_ref().ok_or_else(missing)?)?,
                    &a.out,
                    Format::Csv,
                    stdout,
                ),
                SweepTarget::Budget(a) => emit(
                    &run_sweep(&a, a.sweep.as_ref().ok_or_else(missing)?)?,
                    &a.out,
                    Format::Csv,
                    stdout,
                ),
            }
        }
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// exit code: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut args: Vec<String> = argv.into_iter().map(Into::into).collect();
    if args.is_empty() {
        args.push("optlattice".into());
    }
    let usage = |stderr: &mut dyn Write, msg: &str| {
        let _ = writeln!(stderr, "error: {msg}");
        EXIT_USAGE
    };
    match take_config(&mut args) {
        Ok(Some(path)) => {
            let entries = match read_config(&path) {
                Ok(e) => e,
                Err(msg) => return usage(stderr, &msg),
            };
            if let Err(msg) = splice_config(&mut args, &entries) {
                return usage(stderr, &msg);
            }
        }
        Ok(None) => {}
        Err(msg) => return usage(stderr, &msg),
    }
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => usage(stderr, &msg),
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {}", msg.replace('\n', " "));
            EXIT_DOMAIN
        }
    }
}
