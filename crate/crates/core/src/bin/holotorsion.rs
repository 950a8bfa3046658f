use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use holotorsion::reports::{run, split_list, Command, Format, RunConfig};

#[derive(Parser)]
#[command(name = "holotorsion", version, about = "Holomorphic torsion, weight classification and weighted dbar spectra")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Torsion, torsion form and holomorphy verdicts per family.
    TorsionReport(Common),
    /// Classification fixtures against their expectations.
    WeightScan(Common),
    /// Spectra of the Laplacian on each graded piece and the first eigenvalue.
    Spectrum(Common),
    /// The two-dimensional example: spectrum, membership grid, norms.
    C2(Common),
    /// Canonical solution of d f = eta and the L2 estimate.
    SolveDbar(Common),
    /// Every built-in fixture.
    AllFixtures(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Csv,
    Table,
}

#[derive(Args)]
struct Common {
    /// Catalog family name.
    #[arg(long)]
    family: Option<String>,
    /// Classification result to scan, e.g. `ball_log_weight`.
    #[arg(long)]
    theorem: Option<String>,
    /// JSON file with a family spec (or list) or a fixture list.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Comma separated dimensions.
    #[arg(long, default_value = "2")]
    n: String,
    /// Comma separated weight exponents as p/q.
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    alpha: String,
    /// Comma separated beta values for `beta_family`.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, default_value_t = 6)]
    m_max: u32,
    #[arg(long, default_value_t = 10)]
    value_max: u32,
    /// Right-hand side such as `2*z1*dz1`.
    #[arg(long)]
    eta: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Fmt,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0x5EED)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

fn config(command: Command, c: Common) -> Result<RunConfig, String> {
    let n = split_list(&c.n).iter().map(|x| x.parse::<usize>().map_err(|_| format!("bad dimension `{x}`"))).collect::<Result<_, _>>()?;
    Ok(RunConfig {
        command,
        family: c.family,
        theorem: c.theorem,
        spec: c.spec,
        n,
        alpha: split_list(&c.alpha),
        beta: c.beta.as_deref().map(split_list).unwrap_or_default(),
        m_max: c.m_max,
        value_max: c.value_max,
        eta: c.eta,
        format: match c.format {
            Fmt::Json => Format::Json,
            Fmt::Csv => Format::Csv,
            Fmt::Table => Format::Table,
        },
        out: c.out,
        seed: c.seed,
        tol: c.tol,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Cmd::TorsionReport(c) => (Command::TorsionReport, c),
        Cmd::WeightScan(c) => (Command::WeightScan, c),
        Cmd::Spectrum(c) => (Command::Spectrum, c),
        Cmd::C2(c) => (Command::C2, c),
        Cmd::SolveDbar(c) => (Command::SolveDbar, c),
        Cmd::AllFixtures(c) => (Command::AllFixtures, c),
    };
    let cfg = match config(command, common) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match report.render(cfg.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &cfg.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
