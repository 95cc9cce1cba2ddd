//! Command-line front end. Every command returns a human-readable table and a JSON summary.

use crate::error::{Error, Result};
use crate::kernel::{darboux_kernel, vekua_residual, FitDomain, FitMethod, FitOptions, KernelApproximation, ReferenceKernel, TriangleMesh, VekuaMesh};
use crate::potential::{Builtin, KnownKernel, Potential};
use crate::spectral::{find_eigenvalues, read_potential_csv, read_reference_csv, ExtensionMode, SearchOptions, SpectralProblem};
use crate::validate::{self, Suite};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

/// Environment variable holding the worker thread count.
pub const THREADS_VAR: &str = "TRANSMUTATION_THREADS";

#[derive(Debug, Parser)]
#[command(name = "transmutation", version, about = "Transmutation kernels and Sturm-Liouville eigenvalues")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the JSON summary instead of the table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON summary to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build phi_k and psi_k for a potential.
    Basis(BasisArgs),
    /// Kernel from the generalized Taylor coefficients.
    KernelTaylor(KernelArgs),
    /// Kernel from a fit of its Goursat data.
    KernelGoursat(GoursatArgs),
    /// Kernel of the Darboux-associated potential.
    Darboux(DarbouxArgs),
    /// Dirichlet eigenvalues on [0, b].
    Eigen(EigenArgs),
    /// Recompute the reference tables.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    /// `builtin:zero|const:c|exp|sech|model` or a CSV file of `x,re[,im]` rows.
    #[arg(long)]
    pub potential: String,
    /// Half-length of the interval; accepts `pi`, `2pi`, ... Required for builtins.
    #[arg(long, value_parser = parse_b)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = validate::N_POINTS)]
    pub n_points: usize,
    /// How a file sampled on [0, b] is extended to [-b, b].
    #[arg(long, default_value = "even")]
    pub extension: String,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    /// CSV with columns x, phi_k, psi_k (real parts).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[arg(long = "N")]
    pub n: usize,
    /// Points per side of the error mesh.
    #[arg(long, default_value_t = 100)]
    pub mesh: usize,
    /// Kernel values on the mesh as CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Coefficients as JSON.
    #[arg(long)]
    pub save: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GoursatArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[arg(long, value_enum, default_value_t = FitMethodArg::Remez)]
    pub method: FitMethodArg,
    /// Candidate points of the minimax fit.
    #[arg(long)]
    pub candidates: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FitMethodArg {
    LeastSquares,
    Remez,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KernelMethodArg {
    Taylor,
    LeastSquares,
    Remez,
}

#[derive(Debug, Args)]
pub struct DarbouxArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[arg(long, value_enum, default_value_t = KernelMethodArg::Remez)]
    pub method: KernelMethodArg,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[command(flatten)]
    pub pot: PotentialArgs,
    #[arg(long = "N", default_value_t = 30)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = KernelMethodArg::Remez)]
    pub method: KernelMethodArg,
    /// CSV of `n,omega_sq` reference values.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub omega_max: Option<f64>,
    #[arg(long)]
    pub scan_step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// s-table, sech-coefficients, kernel-taylor, kernel-goursat, eigen or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
}

/// Result of one command.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub summary: serde_json::Value,
    /// 0, or 1 when a validation item failed.
    pub status: i32,
}

pub fn parse_b(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let v = if let Some(m) = s.strip_suffix("pi") {
        let m = m.trim_end_matches('*');
        if m.is_empty() {
            std::f64::consts::PI
        } else {
            m.parse::<f64>().map_err(|e| e.to_string())? * std::f64::consts::PI
        }
    } else {
        s.parse::<f64>().map_err(|e| e.to_string())?
    };
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("b must be positive, got {s}"))
    }
}

fn load_potential(args: &PotentialArgs, jet_len: usize) -> Result<Potential> {
    let arg = args.potential.as_str();
    let is_file = !arg.starts_with("builtin:") && Path::new(arg).is_file();
    if !is_file {
        let which = Builtin::parse(arg)?;
        let b = args.b.ok_or_else(|| Error::InvalidInput("--b is required for builtin potentials".into()))?;
        return Potential::builtin(which, b, args.n_points, jet_len);
    }
    let mode = ExtensionMode::parse(&args.extension)?;
    let q = read_potential_csv(File::open(arg)?, &mode)?;
    if let Some(b) = args.b {
        if (b - q.b).abs() > 1e-9 * b {
            return Err(Error::InvalidInput(format!("--b {b} does not match the file's interval [-{0}, {0}]", q.b)));
        }
    }
    Potential::sampled(arg, q)
}

fn build_kernel(pot: &Potential, n: usize, method: KernelMethodArg, candidates: Option<usize>, domain: FitDomain) -> Result<KernelApproximation> {
    let fam = pot.family(n)?;
    let k = match method {
        KernelMethodArg::Taylor => pot.taylor_kernel(fam, n)?,
        KernelMethodArg::LeastSquares | KernelMethodArg::Remez => {
            let m = if matches!(method, KernelMethodArg::Remez) { FitMethod::Remez } else { FitMethod::LeastSquares };
            let base = match domain {
                FitDomain::Symmetric => FitOptions::with_method(m),
                FitDomain::NonNegative => FitOptions::dirichlet(m),
            };
            let opts = FitOptions { candidates, ..base };
            pot.goursat_kernel(fam, n, &opts)?
        }
    };
    if k.fallback {
        log::warn!("minimax fit did not converge; least-squares coefficients are used");
    }
    Ok(k)
}

fn write_file(path: &Path, f: impl FnOnce(BufWriter<File>) -> Result<()>) -> Result<()> {
    f(BufWriter::new(File::create(path)?))
}

fn method_name(m: KernelMethodArg) -> &'static str {
    match m {
        KernelMethodArg::Taylor => "taylor",
        KernelMethodArg::LeastSquares => "least-squares",
        KernelMethodArg::Remez => "remez",
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Basis(a) => basis(a),
        Command::KernelTaylor(a) => kernel(a, KernelMethodArg::Taylor, None),
        Command::KernelGoursat(a) => {
            let m = match a.method {
                FitMethodArg::LeastSquares => KernelMethodArg::LeastSquares,
                FitMethodArg::Remez => KernelMethodArg::Remez,
            };
            kernel(&a.kernel, m, a.candidates)
        }
        Command::Darboux(a) => darboux(a),
        Command::Eigen(a) => eigen(a),
        Command::Validate(a) => validate_cmd(a),
    }
}

fn basis(a: &BasisArgs) -> Result<Outcome> {
    let pot = load_potential(&a.pot, 2)?;
    let fam = pot.family(a.order)?;
    let b = pot.b();
    if let Some(path) = &a.out {
        write_file(path, |w| {
            let mut wr = csv::Writer::from_writer(w);
            let mut header = vec!["x".to_string()];
            header.extend((0..=a.order).map(|k| format!("phi_{k}")));
            header.extend((0..=a.order).map(|k| format!("psi_{k}")));
            wr.write_record(&header)?;
            for i in 0..fam.n_points() {
                let mut row = vec![format!("{:.17e}", fam.f.node(i))];
                row.extend(fam.phi.iter().chain(&fam.psi).map(|g| format!("{:.17e}", g.values[i].re)));
                wr.write_record(&row)?;
            }
            wr.flush()?;
            Ok(())
        })?;
    }
    let phi = fam.phi_at(b);
    let psi = fam.psi_at(b);
    let mut text = format!("potential {}  b = {b}  h = {}\n  k            phi_k(b)            psi_k(b)\n", pot.label, fam.h.re);
    for k in 0..=a.order {
        let _ = writeln!(text, "{k:>3} {:>19.12e} {:>19.12e}", phi[k].re, psi[k].re);
    }
    let summary = json!({
        "command": "basis", "potential": pot.label, "b": b, "h": [fam.h.re, fam.h.im], "order": a.order,
        "fingerprint": fam.fingerprint(),
        "phi_at_b": phi.iter().map(|v| v.re).collect::<Vec<_>>(),
        "psi_at_b": psi.iter().map(|v| v.re).collect::<Vec<_>>(),
    });
    Ok(Outcome { text, summary, status: 0 })
}

fn kernel(a: &KernelArgs, method: KernelMethodArg, candidates: Option<usize>) -> Result<Outcome> {
    let pot = load_potential(&a.pot, a.n + 2)?;
    let k = build_kernel(&pot, a.n, method, candidates, FitDomain::Symmetric)?;
    let mesh = TriangleMesh::new(pot.b(), a.mesh);
    let error = pot.known.as_ref().map(|kk| mesh.max_difference(&k, kk.kernel().as_ref()));
    if let Some(path) = &a.out {
        write_file(path, |w| mesh.write_csv(&k, w))?;
    }
    if let Some(path) = &a.save {
        std::fs::write(path, k.to_json()?)?;
    }
    let mut text = format!("kernel {}  potential {}  b = {}  N = {}\n", method_name(method), pot.label, pot.b(), a.n);
    match error {
        Some(e) => {
            let _ = writeln!(text, "mesh error     {e:.4e}");
        }
        None => text.push_str("mesh error     (no closed-form kernel)\n"),
    }
    if let Some((e1, e2)) = k.trace_errors {
        let _ = writeln!(text, "trace errors   {e1:.4e} {e2:.4e}");
    }
    if k.fallback {
        text.push_str("warning: minimax fit fell back to least squares\n");
    }
    let summary = json!({
        "command": if matches!(method, KernelMethodArg::Taylor) { "kernel-taylor" } else { "kernel-goursat" },
        "method": method_name(method), "potential": pot.label, "b": pot.b(), "N": a.n, "mesh": a.mesh,
        "mesh_error": error, "trace_errors": k.trace_errors, "fallback": k.fallback,
        "c": k.c.iter().map(|v| v.re).collect::<Vec<_>>(),
        "b_coefficients": k.b.iter().map(|v| v.re).collect::<Vec<_>>(),
    });
    Ok(Outcome { text, summary, status: 0 })
}

/// Closed-form kernel of the potential `q_{1/f}` for the builtins that have one.
fn partner_kernel(pot: &Potential) -> Option<KnownKernel> {
    match pot.known.as_ref()? {
        KnownKernel::Zero => Some(KnownKernel::Zero),
        KnownKernel::Constant(c) if *c == 1.0 => Some(KnownKernel::Named(ReferenceKernel::Sech)),
        KnownKernel::Named(ReferenceKernel::Sech) => Some(KnownKernel::Constant(1.0)),
        KnownKernel::Named(ReferenceKernel::ModelF) => Some(KnownKernel::Named(ReferenceKernel::ModelInv)),
        _ => None,
    }
}

fn darboux(a: &DarbouxArgs) -> Result<Outcome> {
    let ka = &a.kernel;
    let pot = load_potential(&ka.pot, ka.n + 2)?;
    let k = build_kernel(&pot, ka.n, a.method, None, FitDomain::Symmetric)?;
    let fam = k.family.clone();
    let partner = darboux_kernel(&k, fam.clone());
    let b = pot.b();
    let mesh = TriangleMesh::new(b, ka.mesh);
    let error = partner_kernel(&pot).map(|p| mesh.max_difference(&partner, p.kernel().as_ref()));
    let step = 1e-3 * b;
    let residual = vekua_residual(&k, &partner, &fam, &VekuaMesh::new(b, 20.min(ka.mesh).max(3), step));
    if let Some(path) = &ka.out {
        write_file(path, |w| mesh.write_csv(&partner, w))?;
    }
    let mut text = format!("Darboux partner of the {} kernel  potential {}  b = {b}  N = {}\n", method_name(a.method), pot.label, ka.n);
    match error {
        Some(e) => {
            let _ = writeln!(text, "partner mesh error   {e:.4e}");
        }
        None => text.push_str("partner mesh error   (no closed-form kernel)\n"),
    }
    let _ = writeln!(text, "Vekua residual       {residual:.4e} (fd step {step:e})");
    let summary = json!({
        "command": "darboux", "method": method_name(a.method), "potential": pot.label, "b": b, "N": ka.n,
        "mesh": ka.mesh, "partner_mesh_error": error, "vekua_residual": residual, "fd_step": step,
    });
    Ok(Outcome { text, summary, status: 0 })
}

fn eigen(a: &EigenArgs) -> Result<Outcome> {
    let pot = load_potential(&a.pot, a.n + 2)?;
    // only 0 <= x <= b enters the Dirichlet problem
    let k = build_kernel(&pot, a.n, a.method, None, FitDomain::NonNegative)?;
    let search = SearchOptions { omega_max: a.omega_max, scan_step: a.scan_step, ..Default::default() };
    let prob = SpectralProblem::new(pot.q.clone(), k, search)?;
    let report = find_eigenvalues(&prob, a.count)?;
    let reference = match &a.reference {
        Some(p) => Some(read_reference_csv(File::open(p)?)?),
        None => None,
    };
    let mut csv_out = Vec::new();
    report.write_csv(&mut csv_out, reference.as_deref())?;
    if let Some(path) = &a.out {
        std::fs::write(path, &csv_out)?;
    }
    if report.partial {
        log::warn!("only {} of {} eigenvalues below omega = {}", report.eigenvalues.len(), a.count, report.omega_max);
    }
    let mut summary = report.to_json(reference.as_deref());
    summary["command"] = "eigen".into();
    summary["potential"] = pot.label.clone().into();
    summary["b"] = pot.b().into();
    summary["N"] = a.n.into();
    summary["method"] = method_name(a.method).into();
    let text = String::from_utf8(csv_out).map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(Outcome { text, summary, status: 0 })
}

fn validate_cmd(a: &ValidateArgs) -> Result<Outcome> {
    let suite = Suite::parse(&a.suite)?;
    let checks = validate::run(suite)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(
            text,
            "{} {:<16} {:<28} expected {:<24} got {:<24} delta {:.3e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.suite,
            c.item,
            c.expected,
            c.got,
            c.delta
        );
    }
    let _ = writeln!(text, "{} of {} items passed", checks.len() - failed, checks.len());
    let summary = json!({ "command": "validate", "suite": suite.name(), "passed": checks.len() - failed, "failed": failed, "items": checks });
    Ok(Outcome { text, summary, status: if failed == 0 { 0 } else { 1 } })
}

/// Sets up logging and threads, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: {THREADS_VAR} must be a positive integer, got {v:?}");
                return 2;
            }
        }
    }
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.summary {
                let s = serde_json::to_string_pretty(&out.summary).unwrap_or_default();
                if let Err(e) = std::fs::write(path, s + "\n") {
                    eprintln!("error: cannot write summary: {e}");
                    return 2;
                }
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.summary).unwrap_or_default());
            } else {
                print!("{}", out.text);
            }
            out.status
        }
        Err(e) => {
            let kind = if e.is_config() { "configuration" } else { "numerical" };
            eprintln!("error ({kind}): {e}");
            if e.is_config() {
                2
            } else {
                3
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_lengths() {
        assert_eq!(parse_b("pi").unwrap(), std::f64::consts::PI);
        assert_eq!(parse_b("2pi").unwrap(), 2.0 * std::f64::consts::PI);
        assert_eq!(parse_b("0.5*pi").unwrap(), 0.5 * std::f64::consts::PI);
        assert_eq!(parse_b("2").unwrap(), 2.0);
        assert!(parse_b("-1").is_err());
        assert!(parse_b("tau").is_err());
    }

    #[test]
    fn parses_subcommands() {
        let cli = Cli::try_parse_from(["transmutation", "eigen", "--potential", "builtin:exp", "--b", "pi", "--N", "30", "--count", "1000"]).unwrap();
        match cli.command {
            Command::Eigen(a) => {
                assert_eq!(a.n, 30);
                assert_eq!(a.count, 1000);
                assert_eq!(a.pot.b, Some(std::f64::consts::PI));
            }
            _ => panic!("wrong command"),
        }
        assert!(Cli::try_parse_from(["transmutation", "kernel-goursat", "--potential", "sech", "--b", "2", "--N", "13", "--method", "simplex"]).is_err());
    }

    #[test]
    fn config_errors_exit_with_two() {
        assert_eq!(main_with_args(["transmutation", "eigen", "--potential", "builtin:cos", "--b", "1"]), 2);
        assert_eq!(main_with_args(["transmutation", "eigen", "--potential", "exp"]), 2);
        assert_eq!(main_with_args(["transmutation", "frobnicate"]), 2);
    }
}
