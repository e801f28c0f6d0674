//! Command-line front end: build models, run exact spectra and VQD/CPVQD
//! experiments, sweep parameters, and emit CSV/JSON artifacts.
//!
//! All result CSVs share the header
//! `model,mode,n_qubits,charge,state,energy,converged,qc_seconds,cc_seconds,seed`;
//! sweep CSVs append `sweep_var,sweep_value` columns. Exit codes: 0 ok,
//! 1 convergence failure, 2 usage error, 3 I/O error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermion::{build_electronic_hamiltonian, jordan_wigner, parse_fcidump, z_charge_operator};
use crate::lattice::{dirac_pbc_hamiltonian, schwinger_hamiltonian, z2_parity_operator, Boundary, LatticeParams};
use crate::oracle::{eigensolve, labeled_spectrum};
use crate::pauli::PauliSum;
use crate::sector::{enumerate_charge_parity_sector, enumerate_charge_sector, project_hamiltonian};
use crate::vqd::{run_cpvqd_penalty, run_cpvqd_reduced, run_vqd, PenaltyAudit, VqdConfig, VqdMode, VqdResult};

pub const CSV_HEADER: &str =
    "model,mode,n_qubits,charge,state,energy,converged,qc_seconds,cc_seconds,seed";

/// Environment variable naming the FCIDUMP fixture directory.
pub const FIXTURE_DIR_ENV: &str = "CPVQD_FIXTURE_DIR";

#[derive(Parser, Debug)]
#[command(name = "cpvqd", version, about = "Charge-preserving VQD experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact (sector-labeled) spectrum of a model Hamiltonian
    Spectrum(SpectrumArgs),
    /// Run VQD / CPVQD and persist the result
    Vqd(VqdArgs),
    /// Sweep a model parameter, one run per value
    Sweep(SweepArgs),
    /// Tabulate QC/CC timing from result JSON files
    ReportTiming(ReportTimingArgs),
    /// Emit the projected sector Hamiltonian and metadata as JSON
    Reduce(ReduceArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Model: h2, hehp, dirac, schwinger, or file
    #[arg(long)]
    pub model: String,

    /// FCIDUMP path for molecular models (searched in the fixture directory
    /// if not found as given)
    #[arg(long)]
    pub fcidump: Option<PathBuf>,

    /// Bond length label; resolves `<model>_<bond>.fcidump` in the fixture
    /// directory
    #[arg(long)]
    pub bond: Option<String>,

    /// Number of lattice sites (even)
    #[arg(long)]
    pub n: Option<usize>,

    /// Fermion mass in units of 1/a
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,

    /// Gauge coupling in units of 1/a
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,

    /// Lattice spacing
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,

    /// Boundary condition for the Schwinger model: open or periodic
    #[arg(long)]
    pub boundary: Option<String>,

    /// Fixture directory (defaults to $CPVQD_FIXTURE_DIR, then `fixtures`)
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
}

pub struct BuiltModel {
    pub name: String,
    pub hamiltonian: PauliSum,
}

fn fixture_dir(args: &ModelArgs) -> PathBuf {
    if let Some(dir) = &args.fixtures {
        return dir.clone();
    }
    if let Ok(dir) = std::env::var(FIXTURE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    PathBuf::from("fixtures")
}

fn resolve_fcidump(args: &ModelArgs) -> Result<PathBuf> {
    if let Some(path) = &args.fcidump {
        if path.exists() {
            return Ok(path.clone());
        }
        let fallback = fixture_dir(args).join(path);
        if fallback.exists() {
            return Ok(fallback);
        }
        return Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("FCIDUMP file not found: {}", path.display()),
        )));
    }
    if let Some(bond) = &args.bond {
        let path = fixture_dir(args).join(format!("{}_{}.fcidump", args.model, bond));
        if path.exists() {
            return Ok(path);
        }
        return Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("no fixture for bond length {bond}: {}", path.display()),
        )));
    }
    Err(Error::Usage(format!("model '{}' needs --fcidump or --bond", args.model)))
}

fn molecular_hamiltonian(args: &ModelArgs) -> Result<PauliSum> {
    let path = resolve_fcidump(args)?;
    let file = fs::File::open(&path)?;
    let integrals = parse_fcidump(std::io::BufReader::new(file))?;
    let fermionic = build_electronic_hamiltonian(&integrals);
    jordan_wigner(&fermionic, integrals.n_modes())
}

fn lattice_params(args: &ModelArgs, default_boundary: Boundary) -> Result<LatticeParams> {
    let n = args
        .n
        .ok_or_else(|| Error::Usage(format!("model '{}' needs --n", args.model)))?;
    let boundary = match args.boundary.as_deref() {
        None => default_boundary,
        Some("open") => Boundary::Open,
        Some("periodic") => Boundary::Periodic,
        Some(other) => return Err(Error::Usage(format!("unknown boundary '{other}'"))),
    };
    Ok(LatticeParams { n_sites: n, mass: args.m, coupling: args.g, spacing: args.a, boundary })
}

pub fn build_model(args: &ModelArgs) -> Result<BuiltModel> {
    let hamiltonian = match args.model.as_str() {
        "h2" | "hehp" | "file" => molecular_hamiltonian(args)?,
        "dirac" => {
            let mut p = lattice_params(args, Boundary::Periodic)?;
            if args.boundary.is_none() {
                p.boundary = Boundary::Periodic;
            }
            dirac_pbc_hamiltonian(&p)?
        }
        "schwinger" => schwinger_hamiltonian(&lattice_params(args, Boundary::Open)?)?,
        other => return Err(Error::Usage(format!("unknown model '{other}'"))),
    };
    Ok(BuiltModel { name: args.model.clone(), hamiltonian })
}

/// Parse `q=0` or `q=0,p=+1` sector selectors.
fn parse_sector(text: &str) -> Result<(Option<f64>, Option<i8>)> {
    let mut q = None;
    let mut parity = None;
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("bad sector component '{part}'")))?;
        match key.trim() {
            "q" => {
                q = Some(value.trim().parse::<f64>().map_err(|_| {
                    Error::Usage(format!("bad charge value '{value}'"))
                })?);
            }
            "p" | "parity" => {
                parity = Some(match value.trim() {
                    "+1" | "1" | "+" => 1i8,
                    "-1" | "-" => -1i8,
                    other => return Err(Error::Usage(format!("bad parity value '{other}'"))),
                });
            }
            other => return Err(Error::Usage(format!("unknown sector key '{other}'"))),
        }
    }
    Ok((q, parity))
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.12e}")
}

#[derive(Debug, Clone)]
struct CsvRow {
    model: String,
    mode: String,
    n_qubits: usize,
    charge: Option<f64>,
    state: usize,
    energy: f64,
    converged: bool,
    qc_seconds: f64,
    cc_seconds: f64,
    seed: u64,
}

impl CsvRow {
    fn to_line(&self) -> String {
        let charge = self.charge.map(|q| format!("{q}")).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{:.6},{:.6},{}",
            self.model,
            self.mode,
            self.n_qubits,
            charge,
            self.state,
            fmt_f64(self.energy),
            self.converged,
            self.qc_seconds,
            self.cc_seconds,
            self.seed
        )
    }
}

fn write_text_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_text_atomic(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn csv_document(rows: &[CsvRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_line());
        out.push('\n');
    }
    out
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Restrict to a sector, e.g. `q=0` or `q=0,p=+1`; omitted = full
    /// spectrum with charge labels
    #[arg(long)]
    pub sector: Option<String>,

    /// Output CSV path (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn sector_basis(n: usize, q: f64, parity: Option<i8>) -> Result<crate::sector::SectorBasis> {
    match parity {
        Some(p) => {
            if q != 0.0 {
                return Err(Error::Domain("parity refinement applies to the charge-0 sector".into()));
            }
            enumerate_charge_parity_sector(n, p)
        }
        None => enumerate_charge_sector(n, q),
    }
}

pub fn run_spectrum(args: &SpectrumArgs) -> Result<()> {
    let built = build_model(&args.model)?;
    let h = &built.hamiltonian;
    let n = h.width();
    let mut rows = Vec::new();
    match &args.sector {
        Some(text) => {
            let (q, parity) = parse_sector(text)?;
            let q = q.ok_or_else(|| Error::Usage("sector selector needs q=<charge>".into()))?;
            let basis = sector_basis(n, q, parity)?;
            let reduced = project_hamiltonian(h, &basis)?;
            let (values, _) = eigensolve(reduced.matrix())?;
            for (state, energy) in values.iter().enumerate() {
                rows.push(CsvRow {
                    model: built.name.clone(),
                    mode: "exact".into(),
                    n_qubits: n,
                    charge: Some(q),
                    state,
                    energy: *energy,
                    converged: true,
                    qc_seconds: 0.0,
                    cc_seconds: 0.0,
                    seed: 0,
                });
            }
        }
        None => {
            let labeled = labeled_spectrum(h, &z_charge_operator(n))?;
            for (state, (energy, label)) in labeled.iter().enumerate() {
                rows.push(CsvRow {
                    model: built.name.clone(),
                    mode: "exact".into(),
                    n_qubits: n,
                    charge: Some(*label),
                    state,
                    energy: *energy,
                    converged: true,
                    qc_seconds: 0.0,
                    cc_seconds: 0.0,
                    seed: 0,
                });
            }
        }
    }
    emit(args.out.as_ref(), &csv_document(&rows))
}

#[derive(Args, Debug)]
pub struct VqdArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Engine mode: full, penalty, or reduced
    #[arg(long, default_value = "full")]
    pub mode: String,

    /// Charge sector (reduced mode target, or penalty target with --sym charge)
    #[arg(long)]
    pub q: Option<f64>,

    /// Reflection parity refinement for reduced mode (+1 or -1)
    #[arg(long)]
    pub parity: Option<i8>,

    /// Penalized symmetry: charge or parity
    #[arg(long, default_value = "charge")]
    pub sym: String,

    /// Penalty weight: `auto` (2 sum |c|) or a number
    #[arg(long)]
    pub alpha: Option<String>,

    /// Penalty target eigenvalue (defaults to --q for charge, +1 for parity)
    #[arg(long)]
    pub target: Option<f64>,

    /// Number of eigenstates to extract
    #[arg(long, default_value_t = 1)]
    pub k: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Deflation weight: `auto` or a number
    #[arg(long)]
    pub beta: Option<String>,

    #[arg(long, default_value_t = 4)]
    pub layers: usize,

    /// Optimizer evaluation budget per state (default 625 * N)
    #[arg(long)]
    pub max_iters: Option<usize>,

    /// Optimizer stop tolerance (disabled by default)
    #[arg(long)]
    pub ftol: Option<f64>,

    /// Fresh random restarts per state (default: 1 ground, 2 excited)
    #[arg(long)]
    pub restarts: Option<usize>,

    /// Result JSON path (stdout if omitted)
    #[arg(long)]
    pub json_out: Option<PathBuf>,

    /// Per-state CSV path
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
}

fn parse_auto(text: &Option<String>, what: &str) -> Result<Option<f64>> {
    match text.as_deref() {
        None | Some("auto") => Ok(None),
        Some(v) => v
            .parse::<f64>()
            .map(Some)
            .map_err(|_| Error::Usage(format!("bad {what} value '{v}'"))),
    }
}

/// Persisted form of one VQD run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub model: String,
    pub mode: VqdMode,
    pub n_qubits: usize,
    pub q: Option<f64>,
    pub parity: Option<i8>,
    pub k: usize,
    pub seed: u64,
    pub energies: Vec<f64>,
    pub overlaps: Vec<Vec<f64>>,
    pub iterations: Vec<usize>,
    pub qc_seconds: f64,
    pub cc_seconds: f64,
    pub state_qc_seconds: Vec<f64>,
    pub state_cc_seconds: Vec<f64>,
    pub converged: Vec<bool>,
    pub flags: Vec<String>,
    pub ansatz_qubits: usize,
    pub reduced_dim: Option<usize>,
    pub pad_value: Option<f64>,
    pub beta: f64,
    pub penalty_audit: Option<Vec<PenaltyAudit>>,
    pub params: Vec<Vec<f64>>,
}

impl RunRecord {
    fn new(model: &str, n_qubits: usize, q: Option<f64>, parity: Option<i8>, seed: u64, result: &VqdResult) -> RunRecord {
        RunRecord {
            model: model.to_string(),
            mode: result.mode,
            n_qubits,
            q,
            parity,
            k: result.energies.len(),
            seed,
            energies: result.energies.clone(),
            overlaps: result.overlaps.clone(),
            iterations: result.iterations.clone(),
            qc_seconds: result.qc_total(),
            cc_seconds: result.cc_total(),
            state_qc_seconds: result.timing.iter().map(|t| t.qc_seconds).collect(),
            state_cc_seconds: result.timing.iter().map(|t| t.cc_seconds).collect(),
            converged: result.converged.clone(),
            flags: result.flags.clone(),
            ansatz_qubits: result.n_qubits,
            reduced_dim: result.reduced_dim,
            pad_value: result.pad_value,
            beta: result.beta,
            penalty_audit: result.penalty_audit.clone(),
            params: result.params.clone(),
        }
    }

    fn csv_rows(&self) -> Vec<CsvRow> {
        self.energies
            .iter()
            .enumerate()
            .map(|(state, &energy)| CsvRow {
                model: self.model.clone(),
                mode: self.mode.to_string(),
                n_qubits: self.n_qubits,
                charge: self.q,
                state,
                energy,
                converged: self.converged[state],
                qc_seconds: self.state_qc_seconds[state],
                cc_seconds: self.state_cc_seconds[state],
                seed: self.seed,
            })
            .collect()
    }
}

fn vqd_config_from(args: &VqdArgs) -> Result<VqdConfig> {
    Ok(VqdConfig {
        k_max: args.k,
        beta: parse_auto(&args.beta, "beta")?,
        layers: args.layers,
        rhobeg: 0.5,
        max_iters: args.max_iters,
        ftol: args.ftol,
        seed: args.seed,
        restarts: args.restarts,
        overlap_threshold: 1e-2,
    })
}

fn execute_vqd(args: &VqdArgs, built: &BuiltModel) -> Result<(Option<f64>, VqdResult)> {
    let h = &built.hamiltonian;
    let n = h.width();
    let cfg = vqd_config_from(args)?;
    match args.mode.as_str() {
        "full" => Ok((args.q, run_vqd(h, &cfg)?)),
        "reduced" => {
            let q = args.q.ok_or_else(|| Error::Usage("reduced mode needs --q".into()))?;
            Ok((Some(q), run_cpvqd_reduced(h, q, args.parity, &cfg)?))
        }
        "penalty" => {
            let alpha = parse_auto(&args.alpha, "alpha")?;
            let (s, target) = match args.sym.as_str() {
                "charge" => {
                    let target = args.target.or(args.q).ok_or_else(|| {
                        Error::Usage("charge penalty needs --q or --target".into())
                    })?;
                    (z_charge_operator(n), target)
                }
                "parity" => (z2_parity_operator(n), args.target.unwrap_or(1.0)),
                other => return Err(Error::Usage(format!("unknown symmetry '{other}'"))),
            };
            Ok((Some(target), run_cpvqd_penalty(h, &s, target, alpha, &cfg)?))
        }
        other => Err(Error::Usage(format!("unknown mode '{other}'"))),
    }
}

pub fn run_vqd_cmd(args: &VqdArgs) -> Result<()> {
    let built = build_model(&args.model)?;
    let n = built.hamiltonian.width();
    let (q, result) = execute_vqd(args, &built)?;
    let record = RunRecord::new(&built.name, n, q, args.parity, args.seed, &result);

    let json = serde_json::to_string_pretty(&record)?;
    emit(args.json_out.as_ref(), &format!("{json}\n"))?;
    if let Some(csv_path) = &args.csv_out {
        write_text_atomic(csv_path, &csv_document(&record.csv_rows()))?;
    }
    if !result.all_converged() {
        return Err(Error::Convergence(result.flags.join("; ")));
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub vqd: VqdArgs,

    /// Sweep variable: bond, m, or n
    #[arg(long)]
    pub var: String,

    /// Comma-separated sweep values (empty list = header-only CSV)
    #[arg(long, default_value = "")]
    pub values: String,

    /// Run with the exact oracle instead of VQD
    #[arg(long, default_value = "vqd")]
    pub engine: String,

    /// Worker pool size
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,

    /// Output CSV path
    #[arg(long)]
    pub out: PathBuf,
}

fn sweep_point_args(base: &VqdArgs, var: &str, value: &str, seed: u64) -> Result<VqdArgs> {
    let mut point = VqdArgs {
        model: base.model.clone(),
        mode: base.mode.clone(),
        q: base.q,
        parity: base.parity,
        sym: base.sym.clone(),
        alpha: base.alpha.clone(),
        target: base.target,
        k: base.k,
        seed,
        beta: base.beta.clone(),
        layers: base.layers,
        max_iters: base.max_iters,
        ftol: base.ftol,
        restarts: base.restarts,
        json_out: None,
        csv_out: None,
    };
    match var {
        "bond" => {
            if !matches!(point.model.model.as_str(), "h2" | "hehp" | "file") {
                return Err(Error::Usage("bond sweeps apply to molecular models".into()));
            }
            point.model.bond = Some(value.to_string());
            point.model.fcidump = None;
        }
        "m" => {
            point.model.m = value
                .parse()
                .map_err(|_| Error::Usage(format!("bad mass value '{value}'")))?;
        }
        "n" => {
            point.model.n = Some(
                value
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad size value '{value}'")))?,
            );
        }
        other => return Err(Error::Usage(format!("unknown sweep variable '{other}'"))),
    }
    Ok(point)
}

fn run_sweep_point(args: &VqdArgs, engine: &str) -> Result<Vec<CsvRow>> {
    let built = build_model(&args.model)?;
    match engine {
        "vqd" => {
            let n = built.hamiltonian.width();
            let (q, result) = execute_vqd(args, &built)?;
            Ok(RunRecord::new(&built.name, n, q, args.parity, args.seed, &result).csv_rows())
        }
        "exact" => {
            let h = &built.hamiltonian;
            let n = h.width();
            let mut rows = Vec::new();
            match args.q {
                Some(q) => {
                    let basis = sector_basis(n, q, args.parity)?;
                    let reduced = project_hamiltonian(h, &basis)?;
                    let (values, _) = eigensolve(reduced.matrix())?;
                    for (state, energy) in values.into_iter().enumerate() {
                        rows.push(CsvRow {
                            model: built.name.clone(),
                            mode: "exact".into(),
                            n_qubits: n,
                            charge: Some(q),
                            state,
                            energy,
                            converged: true,
                            qc_seconds: 0.0,
                            cc_seconds: 0.0,
                            seed: args.seed,
                        });
                    }
                }
                None => {
                    for (state, (energy, label)) in
                        labeled_spectrum(h, &z_charge_operator(n))?.into_iter().enumerate()
                    {
                        rows.push(CsvRow {
                            model: built.name.clone(),
                            mode: "exact".into(),
                            n_qubits: n,
                            charge: Some(label),
                            state,
                            energy,
                            converged: true,
                            qc_seconds: 0.0,
                            cc_seconds: 0.0,
                            seed: args.seed,
                        });
                    }
                }
            }
            Ok(rows)
        }
        other => Err(Error::Usage(format!("unknown engine '{other}'"))),
    }
}

pub fn run_sweep(args: &SweepArgs) -> Result<()> {
    let values: Vec<String> = args
        .values
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect();
    if args.jobs == 0 {
        return Err(Error::Usage("--jobs must be at least 1".into()));
    }

    let points: Vec<(usize, VqdArgs)> = values
        .iter()
        .enumerate()
        .map(|(i, v)| sweep_point_args(&args.vqd, &args.var, v, args.vqd.seed + i as u64).map(|p| (i, p)))
        .collect::<Result<_>>()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Error::Usage(format!("cannot build worker pool: {e}")))?;
    let results: Vec<Result<Vec<CsvRow>>> = pool.install(|| {
        use rayon::prelude::*;
        points
            .par_iter()
            .map(|(_, p)| run_sweep_point(p, &args.engine))
            .collect()
    });

    let mut out = String::from(CSV_HEADER);
    out.push_str(",sweep_var,sweep_value\n");
    for (value, rows) in values.iter().zip(results) {
        for row in rows? {
            out.push_str(&row.to_line());
            out.push_str(&format!(",{},{}\n", args.var, value));
        }
    }
    write_text_atomic(&args.out, &out)
}

#[derive(Args, Debug)]
pub struct ReportTimingArgs {
    /// Result JSON files produced by `vqd`
    pub files: Vec<PathBuf>,

    /// Output path (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Render the QC/CC timing table: one GS/ES column pair per result file.
pub fn run_report_timing(args: &ReportTimingArgs) -> Result<()> {
    if args.files.is_empty() {
        return Err(Error::Usage("report-timing needs at least one result file".into()));
    }
    struct Column {
        label: String,
        gs: (f64, f64),
        es: Option<(f64, f64)>,
    }
    let mut columns = Vec::new();
    for path in &args.files {
        let text = fs::read_to_string(path)?;
        let record: RunRecord = serde_json::from_str(&text)
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        if record.state_qc_seconds.is_empty() {
            return Err(Error::Format(format!("{}: no states recorded", path.display())));
        }
        let gs = (record.state_qc_seconds[0], record.state_cc_seconds[0]);
        let es = if record.state_qc_seconds.len() > 1 {
            Some((
                record.state_qc_seconds[1..].iter().sum(),
                record.state_cc_seconds[1..].iter().sum(),
            ))
        } else {
            None
        };
        columns.push(Column { label: format!("N={}", record.n_qubits), gs, es });
    }

    let mut cells: Vec<(String, Vec<String>)> = Vec::new();
    let mut header1 = vec![String::from("N (qubits)")];
    let mut header2 = vec![String::new()];
    for col in &columns {
        header1.push(col.label.clone());
        header2.push("GS".into());
        if col.es.is_some() {
            header1.push(String::new());
            header2.push("ES".into());
        }
    }
    let rows = ["QC (sec)", "CC (sec)", "Total (sec)", "QC/Total (%)", "CC/Total (%)"];
    for (r, name) in rows.iter().enumerate() {
        let mut line = Vec::new();
        for col in &columns {
            let mut pairs = vec![col.gs];
            if let Some(es) = col.es {
                pairs.push(es);
            }
            for (qc, cc) in pairs {
                let total = qc + cc;
                let value = match r {
                    0 => qc,
                    1 => cc,
                    2 => total,
                    3 => {
                        if total > 0.0 {
                            100.0 * qc / total
                        } else {
                            0.0
                        }
                    }
                    _ => {
                        if total > 0.0 {
                            100.0 * cc / total
                        } else {
                            0.0
                        }
                    }
                };
                line.push(format!("{value:.2}"));
            }
        }
        cells.push((name.to_string(), line));
    }

    let ncols = header2.len();
    let mut widths = vec![0usize; ncols];
    let all_rows: Vec<Vec<String>> = std::iter::once(header1)
        .chain(std::iter::once(header2))
        .chain(cells.iter().map(|(name, line)| {
            let mut v = vec![name.clone()];
            v.extend(line.iter().cloned());
            v
        }))
        .collect();
    for row in &all_rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut text = String::new();
    for row in &all_rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, cell)| format!("{:>width$}", cell, width = widths[i]))
            .collect();
        text.push_str(&line.join("  "));
        text.push('\n');
    }
    emit(args.out.as_ref(), &text)
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Charge sector
    #[arg(long)]
    pub q: f64,

    /// Reflection parity refinement (+1 or -1, charge-0 only)
    #[arg(long)]
    pub parity: Option<i8>,

    /// Output JSON path (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct ReducedJson<'a> {
    model: &'a str,
    n_qubits: usize,
    charge: f64,
    parity: Option<i8>,
    dim: usize,
    n_star: usize,
    pad_value: f64,
    basis: &'a [crate::sector::BasisElement],
    matrix_re: Vec<Vec<f64>>,
    matrix_im: Vec<Vec<f64>>,
}

pub fn run_reduce(args: &ReduceArgs) -> Result<()> {
    let built = build_model(&args.model)?;
    let h = &built.hamiltonian;
    let basis = sector_basis(h.width(), args.q, args.parity)?;
    let reduced = project_hamiltonian(h, &basis)?;
    let d = reduced.dim();
    let m = reduced.matrix();
    let matrix_re: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| m[(i, j)].re).collect()).collect();
    let matrix_im: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| m[(i, j)].im).collect()).collect();
    let doc = ReducedJson {
        model: &built.name,
        n_qubits: h.width(),
        charge: args.q,
        parity: args.parity,
        dim: d,
        n_star: reduced.n_star(),
        pad_value: reduced.pad_value(),
        basis: reduced.basis().elements(),
        matrix_re,
        matrix_im,
    };
    let json = serde_json::to_string_pretty(&doc)?;
    emit(args.out.as_ref(), &format!("{json}\n"))
}

/// Map an error to the documented process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Convergence(_) => 1,
        Error::Io(_) => 3,
        _ => 2,
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Spectrum(args) => run_spectrum(&args),
        Command::Vqd(args) => run_vqd_cmd(&args),
        Command::Sweep(args) => run_sweep(&args),
        Command::ReportTiming(args) => run_report_timing(&args),
        Command::Reduce(args) => run_reduce(&args),
    }
}
