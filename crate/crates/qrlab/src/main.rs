//! qrlab command-line interface: batch verification scans, table
//! generation and single-prime inspection.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed,
//! 2 usage or configuration error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use qrlab::bigcomplex::dec;
use qrlab::scan::{self, CheckKind, ScanConfig};
use qrlab::table::{generate_table, TableKind};
use qrlab::{classfield, cyclotomic, modcore, quartic, report, verify};

#[derive(Parser)]
#[command(
    name = "qrlab",
    version,
    about = "Verify quadratic-residue product identities over prime ranges"
)]
struct Cli {
    /// Optional key=value config file (precision, jobs, out_dir).
    /// Defaults to ./qrlab.conf when that file exists.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run named checks over all primes in [min, max].
    Verify(VerifyOpts),
    /// Emit a data table (mp, h1, h2 or invariants).
    Table {
        #[arg(long)]
        name: String,
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the full record for a single prime.
    Inspect {
        #[arg(short = 'p', long)]
        prime: u64,
        #[arg(long)]
        precision: Option<u32>,
    },
}

#[derive(clap::Args)]
struct VerifyOpts {
    /// Comma-separated check names (e.g. thm1,thm2,stickelberger).
    #[arg(long, value_delimiter = ',', required = true)]
    check: Vec<String>,
    #[arg(long)]
    min: u64,
    #[arg(long)]
    max: u64,
    /// Worker threads; 0 = all cores. Reports are identical either way.
    #[arg(long)]
    jobs: Option<usize>,
    /// Working precision in bits for the analytic checks.
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stickelberger: sweep every r in [0, p-2] instead of the
    /// default set {0, 1, 2, (p-1)/4, (p-1)/2}.
    #[arg(long)]
    all_r: bool,
}

#[derive(Default)]
struct FileConfig {
    precision: Option<u32>,
    jobs: Option<usize>,
    out_dir: Option<PathBuf>,
}

fn load_config(explicit: Option<&Path>) -> Result<FileConfig, String> {
    let path = match explicit {
        Some(p) => p.to_path_buf(),
        None => {
            let default = PathBuf::from("qrlab.conf");
            if !default.exists() {
                return Ok(FileConfig::default());
            }
            default
        }
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut cfg = FileConfig::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), lineno + 1))?;
        match key.trim() {
            "precision" => {
                cfg.precision = Some(value.trim().parse().map_err(|e| {
                    format!("{}:{}: bad precision: {e}", path.display(), lineno + 1)
                })?)
            }
            "jobs" => {
                cfg.jobs = Some(
                    value
                        .trim()
                        .parse()
                        .map_err(|e| format!("{}:{}: bad jobs: {e}", path.display(), lineno + 1))?,
                )
            }
            "out_dir" => cfg.out_dir = Some(PathBuf::from(value.trim())),
            other => {
                return Err(format!(
                    "{}:{}: unknown config key '{other}'",
                    path.display(),
                    lineno + 1
                ))
            }
        }
    }
    Ok(cfg)
}

fn resolve_out(out: Option<PathBuf>, out_dir: Option<&Path>) -> Option<PathBuf> {
    match (out, out_dir) {
        (Some(path), Some(dir)) if path.is_relative() => Some(dir.join(path)),
        (out, _) => out,
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_verify(file_cfg: &FileConfig, opts: VerifyOpts) -> Result<u8, String> {
    let mut kinds = Vec::new();
    for name in &opts.check {
        kinds.push(CheckKind::parse(name).map_err(|e| e.to_string())?);
    }
    let cfg = ScanConfig {
        checks: kinds,
        min: opts.min,
        max: opts.max,
        jobs: opts.jobs.or(file_cfg.jobs).unwrap_or(0),
        precision: opts
            .precision
            .or(file_cfg.precision)
            .unwrap_or(scan::DEFAULT_PRECISION),
        all_r: opts.all_r,
    };
    let started = Instant::now();
    let outcome = scan::run_scan(&cfg).map_err(|e| e.to_string())?;
    let text = match opts.format {
        Format::Json => report::render_json(&outcome.reports),
        Format::Csv => report::render_csv(&outcome.reports),
    };
    emit(
        &text,
        resolve_out(opts.out, file_cfg.out_dir.as_deref()).as_deref(),
    )?;
    eprintln!(
        "qrlab verify: {} primes, {} checks, {} failed, {:.2?}",
        outcome.reports.len(),
        outcome.checks_run,
        outcome.checks_failed,
        started.elapsed()
    );
    Ok(if outcome.all_pass() { 0 } else { 1 })
}

fn cmd_table(
    file_cfg: &FileConfig,
    name: &str,
    max: u64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<u8, String> {
    let kind = TableKind::parse(name).map_err(|e| e.to_string())?;
    let table = generate_table(kind, max).map_err(|e| e.to_string())?;
    let text = match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json_lines(),
    };
    emit(
        &text,
        resolve_out(out, file_cfg.out_dir.as_deref()).as_deref(),
    )?;
    Ok(0)
}

fn cmd_inspect(file_cfg: &FileConfig, p: u64, precision: Option<u32>) -> Result<u8, String> {
    let prec = precision
        .or(file_cfg.precision)
        .unwrap_or(scan::DEFAULT_PRECISION);
    let ctx = modcore::PrimeContext::new(p).map_err(|e| e.to_string())?;
    println!("p = {p}  (p mod 8 = {})", ctx.residue_class);
    println!("g = {} (smallest primitive root)", ctx.g);
    if let Some(i) = ctx.i_image {
        println!("i_image = {i}  (g^((p-1)/4), square root of -1)");
    }

    let sums = classfield::residue_sums(p).map_err(|e| e.to_string())?;
    println!(
        "A_p = {}  B_p = {}  (A+B = (p^2-1)/8 = {})",
        sums.a,
        sums.b,
        (p * p - 1) / 8
    );
    println!(
        "M_p mod p = {}",
        verify::brute_mp(p).map_err(|e| e.to_string())?.value
    );
    for n in [1u32, 2] {
        let h = verify::harmonic_sum(p, n).map_err(|e| e.to_string())?;
        println!("H^({n})_R mod p = {}", h.value.value);
    }

    if p % 4 == 1 {
        let unit = classfield::fundamental_unit(p).map_err(|e| e.to_string())?;
        println!("eps_p = ({} + {} sqrt({p}))/2", unit.u, unit.v);
        println!(
            "norm(eps_p) = {}",
            if unit.norm_sign() == 1 { "+1" } else { "-1" }
        );
        println!("h({p}) = {}", unit.h);
        println!("regulator = {}", dec(&unit.regulator));
        let l = classfield::l_minus_one(p).map_err(|e| e.to_string())?;
        println!("B_2,chi = {}  L(-1,chi) = {}", l.b2chi, l.l_minus1);
        println!(
            "r (4th powers in (0,p/2)) = {}",
            modcore::count_fourth_power_residues_half(p).map_err(|e| e.to_string())?
        );
    } else if p > 3 {
        let imag = classfield::class_number_imag(p).map_err(|e| e.to_string())?;
        println!("h(-{p}) = {}", imag.h);
    }

    if p % 8 == 1 {
        let d = quartic::decompose(p).map_err(|e| e.to_string())?;
        println!("p = a^2 + 16 b^2 with a = {}, |b| = {}", d.a, d.b_abs);
        let j = quartic::jacobi_sum(&ctx).map_err(|e| e.to_string())?;
        println!("J(chi,chi) = {j}");
        println!("C_p = {:+}", quartic::c_sign(p).map_err(|e| e.to_string())?);
        let thm2 = verify::verify_thm2(p).map_err(|e| e.to_string())?;
        println!("beta_p = {}  sigma = {:+}", thm2.beta_p, thm2.sigma);
    }

    println!("-- checks (precision {prec}) --");
    let cfg = ScanConfig {
        checks: CheckKind::ALL.to_vec(),
        min: p,
        max: p,
        jobs: 1,
        precision: prec,
        all_r: false,
    };
    let outcome = scan::run_scan(&cfg).map_err(|e| e.to_string())?;
    let mut failed = false;
    for rep in &outcome.reports {
        for c in &rep.checks {
            println!(
                "{:14} {}  computed={}  expected={}",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.computed,
                c.expected
            );
            failed |= !c.pass;
        }
    }
    if p % 8 == 1 {
        // show the default Stickelberger r-set explicitly
        let rs = cyclotomic::default_r_set(p);
        println!("stickelberger r-set: {rs:?}");
    }
    Ok(if failed { 1 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file_cfg = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qrlab: {e}");
            return ExitCode::from(2);
        }
    };
    let run = match cli.cmd {
        Cmd::Verify(opts) => cmd_verify(&file_cfg, opts),
        Cmd::Table {
            name,
            max,
            format,
            out,
        } => cmd_table(&file_cfg, &name, max, format, out),
        Cmd::Inspect { prime, precision } => cmd_inspect(&file_cfg, prime, precision),
    };
    match run {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qrlab: {e}");
            ExitCode::from(2)
        }
    }
}
