//! Command-line driver: single runs, parameter sweeps, the four reference
//! figures, and the symbolic consistency reports.
//!
//! Exit codes: 0 success, 2 numerical instability, 3 pressure-solver
//! failure, 4 bad configuration.

use clap::{Parser, Subcommand};
use consistency_analyzer::{compact_principal_contents_coincide, full_report, render_text};
use exact_solution::ExactSolution;
use experiment_harness::{
    error_field, figure_configs, run, run_with_state, sweep, write_csv, write_field_csv,
    write_field_svg, ErrorReport, ExperimentConfig, RunError,
};
use pressure_solver::SolveError;
use schemes::SchemeId;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nsfd",
    about = "Finite-difference Navier-Stokes experiments and symbolic consistency analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and print its error report
    Solve {
        /// Scheme number (1, 2, or 3)
        #[arg(long, value_parser = parse_scheme)]
        fda: SchemeId,
        /// Interior grid points per direction
        #[arg(long)]
        m: usize,
        /// Number of time steps
        #[arg(long)]
        steps: usize,
        /// Final time
        #[arg(long)]
        tf: f64,
        /// Reynolds number
        #[arg(long)]
        re: f64,
        /// Override the derived time step (t_f is re-derived as steps·tau)
        #[arg(long)]
        tau: Option<f64>,
        /// Write the report as a one-row CSV
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a scheme × resolution grid of experiments into a CSV table
    Sweep {
        /// Scheme numbers, comma-separated
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_scheme)]
        fda: Vec<SchemeId>,
        /// Resolutions, comma-separated
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        tf: f64,
        #[arg(long)]
        re: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reproduce one of the reference figures into a directory
    Figure {
        /// Figure number
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
    /// Symbolic consistency report for one scheme
    Consistency {
        #[arg(long, value_parser = parse_scheme)]
        fda: SchemeId,
        /// Also write the report as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn parse_scheme(s: &str) -> Result<SchemeId, String> {
    s.parse::<u8>()
        .ok()
        .and_then(SchemeId::from_number)
        .ok_or_else(|| format!("invalid scheme number `{s}` (expected 1, 2, or 3)"))
}

const EXIT_INSTABILITY: u8 = 2;
const EXIT_SOLVER: u8 = 3;
const EXIT_BAD_CONFIG: u8 = 4;

fn exit_for(err: &RunError) -> ExitCode {
    ExitCode::from(match err {
        RunError::Grid(_) => EXIT_BAD_CONFIG,
        RunError::Scheme(_) => EXIT_INSTABILITY,
        // A non-finite pressure system means the velocities blew up; the
        // solver is only the messenger.
        RunError::Solver {
            source: SolveError::NonFinite,
            ..
        } => EXIT_INSTABILITY,
        RunError::Solver { .. } => EXIT_SOLVER,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_BAD_CONFIG);
        }
    };
    match cli.command {
        Command::Solve {
            fda,
            m,
            steps,
            tf,
            re,
            tau,
            out,
        } => {
            let mut config = ExperimentConfig::new(fda, m, steps, tf, re);
            config.tau_override = tau;
            cmd_solve(&config, out.as_deref())
        }
        Command::Sweep {
            fda,
            m,
            steps,
            tf,
            re,
            out,
        } => {
            let mut configs = Vec::new();
            for &m in &m {
                for &scheme in &fda {
                    configs.push(ExperimentConfig::new(scheme, m, steps, tf, re));
                }
            }
            cmd_sweep(&configs, &out)
        }
        Command::Figure { which, out } => cmd_figure(which, &out),
        Command::Consistency { fda, report } => cmd_consistency(fda, report.as_deref()),
    }
}

fn print_report(r: &ErrorReport) {
    println!(
        "{}  m={} N={} tau={:.6e} Re={} t_f={}",
        r.scheme, r.m, r.n_steps, r.tau, r.re, r.t_f
    );
    println!(
        "  err_u {:.6e}   err_v {:.6e}   err_p {:.6e}",
        r.err_u, r.err_v, r.err_p
    );
    println!("  continuity residual {:.6e}", r.res_e1);
    println!(
        "  pressure solves: max {} iterations, max residual {:.3e}",
        r.solver_max_iterations(),
        r.solver_max_residual()
    );
    println!("  runtime {:.3} s", r.runtime_s);
    if r.advisories.any() {
        eprintln!("note: tau exceeds a stability advisory for this grid (results may blow up)");
    }
}

fn write_reports_csv(reports: &[&ErrorReport], path: &Path) -> Result<usize, ExitCode> {
    let file = File::create(path).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        ExitCode::from(EXIT_BAD_CONFIG)
    })?;
    write_csv(reports.iter().copied(), file).map_err(|e| {
        eprintln!("error: csv write failed: {e}");
        ExitCode::from(EXIT_BAD_CONFIG)
    })
}

fn cmd_solve(config: &ExperimentConfig, out: Option<&Path>) -> ExitCode {
    match run(config) {
        Ok(report) => {
            print_report(&report);
            if let Some(path) = out {
                if let Err(code) = write_reports_csv(&[&report], path) {
                    return code;
                }
                println!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit_for(&err)
        }
    }
}

fn cmd_sweep(configs: &[ExperimentConfig], out: &Path) -> ExitCode {
    if configs.is_empty() {
        eprintln!("error: empty sweep");
        return ExitCode::from(EXIT_BAD_CONFIG);
    }
    let results = sweep(configs);
    let mut ok_rows = Vec::new();
    let mut first_failure = None;
    for (config, result) in configs.iter().zip(&results) {
        match result {
            Ok(report) => ok_rows.push(report),
            Err(err) => {
                eprintln!("row failed ({} m={}): {err}", config.scheme, config.m);
                first_failure.get_or_insert_with(|| exit_for(err));
            }
        }
    }
    match write_reports_csv(&ok_rows, out) {
        Ok(rows) => println!("wrote {rows} rows to {}", out.display()),
        Err(code) => return code,
    }
    first_failure.unwrap_or(ExitCode::SUCCESS)
}

fn cmd_figure(which: u8, dir: &Path) -> ExitCode {
    let configs = figure_configs(which).expect("clap keeps the number in 1..=4");
    if let Err(e) = std::fs::create_dir_all(dir) {
        eprintln!("error: cannot create {}: {e}", dir.display());
        return ExitCode::from(EXIT_BAD_CONFIG);
    }
    let code = cmd_sweep(&configs, &dir.join(format!("figure{which}.csv")));
    if which != 4 || code != ExitCode::SUCCESS {
        return code;
    }

    // Figure 4 additionally renders the pointwise relative-error fields of
    // the single configured run.
    let (_, state) = match run_with_state(&configs[0]) {
        Ok(pair) => pair,
        Err(err) => {
            eprintln!("error: {err}");
            return exit_for(&err);
        }
    };
    let sol = ExactSolution::new(configs[0].re);
    let fields = error_field(&state, &sol);
    for (field, name) in fields.iter().zip(["u", "v", "p"]) {
        let csv_path = dir.join(format!("figure4_error_{name}.csv"));
        let svg_path = dir.join(format!("figure4_error_{name}.svg"));
        let write = (|| -> std::io::Result<()> {
            write_field_csv(field, &state.spec, File::create(&csv_path)?)
                .map_err(std::io::Error::other)?;
            write_field_svg(
                field,
                &state.spec,
                &format!("relative error in {name}"),
                File::create(&svg_path)?,
            )
        })();
        if let Err(e) = write {
            eprintln!("error: cannot write error fields: {e}");
            return ExitCode::from(EXIT_BAD_CONFIG);
        }
        println!("wrote {} and {}", csv_path.display(), svg_path.display());
    }
    ExitCode::SUCCESS
}

fn cmd_consistency(fda: SchemeId, report_path: Option<&Path>) -> ExitCode {
    let report = match full_report(fda) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::FAILURE;
        }
    };
    print!("{}", render_text(&report));
    if fda != SchemeId::Fda1 {
        match compact_principal_contents_coincide() {
            Ok(coincide) => println!(
                "  principal residue contents of FDA 2 and FDA 3 coincide: {coincide}"
            ),
            Err(err) => {
                eprintln!("error: {err}");
                return ExitCode::FAILURE;
            }
        }
    }
    if let Some(path) = report_path {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        let write = File::create(path).and_then(|mut f| f.write_all(json.as_bytes()));
        if let Err(e) = write {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_BAD_CONFIG);
        }
        println!("wrote {}", path.display());
    }
    ExitCode::SUCCESS
}
