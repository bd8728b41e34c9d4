use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use oam_shift::commands::{self, CommandError, SweepSpec};
use oam_shift::config::RunConfig;
use oam_shift::gamma::GammaSet;

const EXIT_INVARIANT: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "oam-shift", version, about = "Magnetic shifts of free-electron spin and orbital angular momentum")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Subcommand)]
enum Command {
    /// Run the invariant suite; exit status 1 if any check fails.
    Verify {
        /// Test hook: corrupt part of the computation to exercise failure reporting.
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<Fault>,
    },
    /// Closed-form spin shift for the configured field and apparatus.
    Estimate,
    /// Tabulate the shifts over one parameter.
    Sweep {
        #[arg(long)]
        sweep_axis: String,
        #[arg(long, allow_negative_numbers = true)]
        sweep_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        sweep_max: f64,
        #[arg(long)]
        sweep_steps: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    Gamma,
}

#[derive(Args)]
struct Overrides {
    /// key = value configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output CSV path
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    grid_n: Option<String>,
    /// physical | unit
    #[arg(long, global = true)]
    charge: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    field_tesla: Option<String>,
    #[arg(long, global = true)]
    apparatus_m: Option<String>,
    #[arg(long = "k-momentum-ev", global = true)]
    k_momentum_ev: Option<String>,
    #[arg(long = "k-transverse-ev", global = true, allow_negative_numbers = true)]
    k_transverse_ev: Option<String>,
    #[arg(long, global = true)]
    lambda_plus_mag: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    lambda_plus_phase: Option<String>,
    #[arg(long, global = true)]
    lambda_minus_mag: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    lambda_minus_phase: Option<String>,
    /// analytic | stencil | direct
    #[arg(long, global = true)]
    l_path: Option<String>,
    #[arg(long, global = true)]
    threads: Option<String>,
    /// Any configuration key, as key=value (repeatable)
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl Overrides {
    fn build(&self) -> Result<RunConfig, CommandError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CommandError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                RunConfig::from_text(&text)?
            }
            None => RunConfig::default(),
        };
        for kv in &self.set {
            let (k, v) = kv.split_once('=').ok_or_else(|| {
                oam_shift::config::ConfigError::Syntax { line: 0, text: kv.clone() }
            })?;
            cfg.set(k.trim(), v.trim())?;
        }
        let flags = [
            ("grid_n", &self.grid_n),
            ("charge_convention", &self.charge),
            ("field_tesla", &self.field_tesla),
            ("apparatus_m", &self.apparatus_m),
            ("k_momentum_eV", &self.k_momentum_ev),
            ("k_transverse_eV", &self.k_transverse_ev),
            ("lambda_plus_mag", &self.lambda_plus_mag),
            ("lambda_plus_phase", &self.lambda_plus_phase),
            ("lambda_minus_mag", &self.lambda_minus_mag),
            ("lambda_minus_phase", &self.lambda_minus_phase),
            ("l_path", &self.l_path),
            ("threads", &self.threads),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        if let Some(out) = &self.out {
            cfg.output_path = out.clone();
        }
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<u8, CommandError> {
    let cfg = cli.overrides.build()?;
    if cfg.threads > 0 {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global();
    }
    match cli.command {
        Command::Verify { inject_fault } => {
            let gamma = match inject_fault {
                None => GammaSet::dirac(),
                Some(Fault::Gamma) => {
                    let mut m = *GammaSet::dirac().matrices();
                    m[1] = m[1].scale(Complex64::new(1.0 + 1e-6, 0.0));
                    GammaSet::from_matrices(m)
                }
            };
            let report = commands::verify_with_gamma(&cfg, &gamma)?;
            println!("{report}");
            Ok(if report.all_passed() { 0 } else { EXIT_INVARIANT })
        }
        Command::Estimate => {
            let sc = commands::Scenario::from_config(&cfg)?;
            sc.warnings.iter().for_each(|w| eprintln!("warning: {w}"));
            let report = commands::estimate(&cfg)?;
            println!("{report}");
            commands::write_output(&cfg.output_path, &report.csv())?;
            println!("wrote {}", cfg.output_path.display());
            Ok(0)
        }
        Command::Sweep { sweep_axis, sweep_min, sweep_max, sweep_steps } => {
            let spec = SweepSpec {
                axis: sweep_axis.parse()?,
                min: sweep_min,
                max: sweep_max,
                steps: sweep_steps,
            };
            let sc = commands::Scenario::from_config(&cfg)?;
            sc.warnings.iter().for_each(|w| eprintln!("warning: {w}"));
            let csv = commands::sweep(&cfg, &spec)?;
            commands::write_output(&cfg.output_path, &csv)?;
            println!("wrote {} rows to {}", spec.steps, cfg.output_path.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CommandError::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVARIANT)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
