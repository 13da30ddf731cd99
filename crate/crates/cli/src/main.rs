use std::path::PathBuf;
use std::process::ExitCode;

use bergman_cli::output::write_outputs;
use bergman_cli::{catalog, exit_code, run_experiment, CliError, ExperimentConfig, OutputFormat};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bergman-lab", version, about = "Hankel and Toeplitz operator experiments on Reinhardt domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config.
    Run {
        config: PathBuf,
        /// Output directory (overrides output.path; default `out`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Largest truncation; smaller configured truncations are kept.
        #[arg(long)]
        truncation: Option<u32>,
        #[arg(long = "m-max")]
        m_max: Option<u32>,
        /// Relative tolerance of moment quadrature.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// List domains, presets, symbol shortcuts and experiments.
    List,
}

fn apply_overrides(cfg: &mut ExperimentConfig, truncation: Option<u32>, m_max: Option<u32>, tol: Option<f64>) {
    let p = &mut cfg.parameters;
    if let Some(n) = truncation {
        let mut t: Vec<u32> = p
            .truncations
            .clone()
            .unwrap_or_else(|| bergman_cli::run::DEFAULT_TRUNCATIONS.to_vec())
            .into_iter()
            .filter(|&k| k < n)
            .collect();
        t.push(n);
        p.truncations = Some(t);
    }
    if m_max.is_some() {
        p.m_max = m_max;
    }
    if tol.is_some() {
        p.tol = tol;
    }
}

fn run(
    path: PathBuf,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    truncation: Option<u32>,
    m_max: Option<u32>,
    tol: Option<f64>,
    format: Option<OutputFormat>,
) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut cfg = ExperimentConfig::from_json(&text)?;
    apply_overrides(&mut cfg, truncation, m_max, tol);
    cfg.validate()?;
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| CliError::Config(format!("--jobs: {e}")))?;
    }
    let spec = cfg.output.clone().unwrap_or(bergman_cli::config::OutputSpec { path: None, format: None });
    let dir = out.or(spec.path.map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("out"));
    let format = format.or(spec.format).unwrap_or_default();

    let report = run_experiment(&cfg)?;
    let code = exit_code(&report);
    let files = write_outputs(&dir, format, &cfg, &report, code)?;
    println!("experiment: {}", report.experiment);
    if let Some(v) = report.verdict {
        println!("verdict: {v:?}");
    }
    if let Some(p) = report.prediction {
        println!("prediction: {p:?}");
    }
    if let Some(a) = report.agreement {
        println!("agreement: {a}");
    }
    if let Some(p) = report.pass {
        println!("pass: {p}");
    }
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::List => {
            print!("{}", catalog::catalog());
            0
        }
        Command::Run {
            config,
            out,
            jobs,
            truncation,
            m_max,
            tol,
            format,
        } => match run(config, out, jobs, truncation, m_max, tol, format) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
    };
    ExitCode::from(code as u8)
}
